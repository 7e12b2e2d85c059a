from fractions import Fraction

import pytest

from logcavity.errors import (
    InvalidMarks,
    InvalidPoset,
    NotAChain,
    TooLarge,
    ZeroAtIndex,
)
from logcavity.posets import (
    MarkedPoset,
    Poset,
    extension_extremes,
    kahn_saks_extremal_classify,
    kahn_saks_positivity,
    kahn_saks_sequence,
    midway_check,
    normalize,
    region_partition,
    stanley_chain_counts,
    stanley_equality_classify,
    stanley_sequence,
)
from logcavity.zoo import random_marks, random_poset, ratio_two_witness_poset

CHAIN3 = Poset.chain(["a", "b", "c"])
ANTI3 = Poset.antichain(["x", "y", "z"])


def gap_counts_raw(p, x, y, upper):
    """Oracle: gap histogram over raw extensions with f(x) < f(y)."""
    xi, yi = p.index(x), p.index(y)
    counts = [0] * (upper + 1)
    for order in p.extensions():
        gap = order.index(yi) - order.index(xi)
        if gap > 0:
            counts[gap] += 1
    return counts[1:]


class TestPosetBasics:
    def test_cycle_rejected(self):
        with pytest.raises(InvalidPoset):
            Poset.from_relations([1, 2, 3], [(1, 2), (2, 3), (3, 1)])

    def test_duplicate_labels(self):
        with pytest.raises(InvalidPoset):
            Poset.from_relations([1, 1], [])

    def test_transitive_closure(self):
        p = Poset.from_relations([1, 2, 3], [(1, 2), (2, 3)])
        assert p.leq(1, 3)

    def test_chain_single_extension(self):
        assert CHAIN3.count_extensions() == 1

    def test_antichain_all_permutations(self):
        assert ANTI3.count_extensions() == 6

    def test_order_polytope_volume_identity(self):
        # volume of the order polytope of the 2-antichain is the unit square
        p = Poset.antichain(["a", "b"])
        e = p.count_extensions()
        assert e == 2
        assert Fraction(e, 2) == 1  # e(P)/n! = Vol([0,1]^2)

    def test_extension_cap(self):
        with pytest.raises(TooLarge):
            Poset.antichain(range(6)).count_extensions(cap=100)

    def test_covers_regenerate(self):
        p = Poset.from_relations([1, 2, 3, 4], [(1, 2), (2, 4), (1, 3)])
        covers = {(p.labels[i], p.labels[j]) for i, j in p.covers()}
        assert covers == {(1, 2), (2, 4), (1, 3)}
        again = Poset.from_relations(p.labels, covers)
        assert all(again.up[i] == p.up[i] for i in range(p.n))


class TestStanleySequence:
    def test_antichain(self):
        assert stanley_sequence(ANTI3, "x") == [2, 2, 2]

    def test_chain_middle(self):
        assert stanley_sequence(CHAIN3, "b") == [0, 1, 0]

    def test_sum_is_extension_count(self, rng):
        for _ in range(20):
            p = random_poset(rng, rng.randint(2, 6))
            seq = stanley_sequence(p, p.labels[0])
            assert sum(seq) == p.count_extensions()

    def test_log_concavity_random(self, rng):
        for _ in range(60):
            p = random_poset(rng, rng.randint(3, 8))
            for x in p.labels:
                seq = stanley_sequence(p, x)
                for k in range(1, len(seq) - 1):
                    assert seq[k] ** 2 >= seq[k - 1] * seq[k + 1]


class TestStanleyChain:
    def test_reduces_to_sequence(self):
        seq = stanley_sequence(ANTI3, "x")
        for i in range(1, 4):
            assert stanley_chain_counts(ANTI3, ["x"], [i]) == seq[i - 1]

    def test_incompatible_positions_zero(self):
        p = Poset.from_relations([1, 2, 3], [(1, 2)])
        assert stanley_chain_counts(p, [1, 2], [2, 2]) == 0
        assert stanley_chain_counts(p, [1, 2], [3, 1]) == 0

    def test_not_a_chain(self):
        with pytest.raises(NotAChain):
            stanley_chain_counts(ANTI3, ["x", "y"], [1, 2])

    def test_general_log_concavity(self, rng):
        for _ in range(25):
            p = random_poset(rng, rng.randint(4, 7))
            n = p.n
            chains = [
                (a, b)
                for a in p.labels
                for b in p.labels
                if a != b and p.lt(a, b)
            ]
            if not chains:
                continue
            a, b = rng.choice(chains)
            table = {}
            for order in p.extensions():
                pa = order.index(p.index(a)) + 1
                pb = order.index(p.index(b)) + 1
                table[(pa, pb)] = table.get((pa, pb), 0) + 1
            for (i1, i2), count in table.items():
                # interior wiggle of the first coordinate
                if 0 + 1 < i1 < i2 - 1:
                    lo = table.get((i1 - 1, i2), 0)
                    hi = table.get((i1 + 1, i2), 0)
                    assert count * count >= lo * hi


class TestStanleyEquality:
    def test_antichain_all_hold(self):
        v = stanley_equality_classify(ANTI3, "x", 2)
        assert v.holds_a and v.holds_b and v.holds_c and v.holds_d

    def test_boundary_all_false(self):
        v = stanley_equality_classify(CHAIN3, "a", 1)
        assert not (v.holds_a or v.holds_b or v.holds_c or v.holds_d)

    def test_zero_at_index(self):
        with pytest.raises(ZeroAtIndex):
            stanley_equality_classify(CHAIN3, "b", 1)

    def test_positivity_criterion(self, rng):
        # N_i = 0 iff |P<x| > i-1 or |P>x| > n-i
        for _ in range(40):
            p = random_poset(rng, rng.randint(2, 7))
            n = p.n
            for x in p.labels:
                seq = stanley_sequence(p, x)
                xi = p.index(x)
                below = bin(p.strict_down_mask(xi)).count("1")
                above = bin(p.strict_up_mask(xi)).count("1")
                for i in range(1, n + 1):
                    predicted_zero = below > i - 1 or above > n - i
                    assert predicted_zero == (seq[i - 1] == 0)

    def test_equivalence_random(self, rng):
        checked = 0
        while checked < 120:
            p = random_poset(rng, rng.randint(3, 8))
            n = p.n
            for x in p.labels:
                seq = stanley_sequence(p, x)
                for i in range(2, n):
                    if seq[i - 1] == 0:
                        continue
                    v = stanley_equality_classify(p, x, i)
                    assert v.holds_a == v.holds_b == v.holds_c == v.holds_d
                    checked += 1


class TestNormalize:
    def test_antichain_two(self):
        p = Poset.antichain(["x", "y"])
        nm = normalize(MarkedPoset(p, "x", "y"))
        assert nm.poset.n == 4
        assert nm.poset.lt("x", "y")
        assert nm.poset.has_bounds()

    def test_idempotent(self):
        nm = normalize(MarkedPoset(ANTI3, "x", "y"))
        again = normalize(nm)
        assert again.poset.labels == nm.poset.labels
        assert again.poset.up == nm.poset.up

    def test_invalid_marks(self):
        with pytest.raises(InvalidMarks):
            MarkedPoset(CHAIN3, "b", "a")
        with pytest.raises(InvalidMarks):
            MarkedPoset(CHAIN3, "a", "a")

    def test_sequence_invariance(self, rng):
        for _ in range(40):
            p = random_poset(rng, rng.randint(2, 7))
            x, y = random_marks(rng, p)
            mp = MarkedPoset(p, x, y)
            raw = gap_counts_raw(p, x, y, p.n)
            normalized = kahn_saks_sequence(mp)
            assert normalized == raw[: len(normalized)]
            assert all(v == 0 for v in raw[len(normalized):])


class TestKahnSaks:
    def test_antichain(self):
        assert kahn_saks_sequence(MarkedPoset(ANTI3, "x", "y")) == [2, 1]

    def test_covering_chain(self):
        mp = MarkedPoset(Poset.chain(["x", "y"]), "x", "y")
        assert kahn_saks_sequence(mp) == [1]

    def test_witness_sequence(self):
        assert kahn_saks_sequence(ratio_two_witness_poset())[:3] == [1, 2, 4]

    def test_positivity_examples(self):
        mp = MarkedPoset(ANTI3, "x", "y")
        assert kahn_saks_positivity(mp, 1) == (False, "positive")
        zero, reason = kahn_saks_positivity(mp, 3)
        assert zero

    def test_positivity_matches_enumeration(self, rng):
        for _ in range(40):
            p = random_poset(rng, rng.randint(2, 7))
            x, y = random_marks(rng, p)
            mp = MarkedPoset(p, x, y)
            seq = kahn_saks_sequence(mp)
            for k in range(1, len(seq) + 1):
                zero, _ = kahn_saks_positivity(mp, k)
                assert zero == (seq[k - 1] == 0)

    def test_log_concave_random(self, rng):
        for _ in range(40):
            p = random_poset(rng, rng.randint(2, 7))
            x, y = random_marks(rng, p)
            seq = kahn_saks_sequence(MarkedPoset(p, x, y))
            for k in range(1, len(seq) - 1):
                assert seq[k] ** 2 >= seq[k - 1] * seq[k + 1]

    def test_sum_counts_below_extensions(self, rng):
        for _ in range(20):
            p = random_poset(rng, rng.randint(2, 6))
            x, y = random_marks(rng, p)
            seq = kahn_saks_sequence(MarkedPoset(p, x, y))
            xi, yi = p.index(x), p.index(y)
            below = sum(
                1
                for order in p.extensions()
                if order.index(xi) < order.index(yi)
            )
            assert sum(seq) == below


class TestMidway:
    def test_vacuous_first_bullet(self):
        # the only element above x is y itself, so the first midway bullet
        # quantifies over an empty range and only the z < x bullet matters
        p = Poset.from_relations(["x", "y", "w"], [("x", "y"), ("w", "y")])
        mp = MarkedPoset(p, "x", "y")
        assert midway_check(mp, 1)["midway"]
        seq = kahn_saks_sequence(mp)
        assert seq[0] == seq[1] > 0  # consistent with the equality theorem

    def test_chain_dual_fails_at_k1(self):
        mp = MarkedPoset(Poset.chain(["b", "x", "y", "t"]), "x", "y")
        verdict = midway_check(mp, 1)
        assert not verdict["dual_midway"]

    def test_flat_run_biconditional_random(self, rng):
        checked = 0
        while checked < 80:
            p = random_poset(rng, rng.randint(2, 7))
            x, y = random_marks(rng, p)
            mp = MarkedPoset(p, x, y)
            seq = kahn_saks_sequence(mp)
            for k in range(2, len(seq)):
                if seq[k - 1] == 0:
                    continue
                equal_flat = seq[k - 2] == seq[k - 1] == seq[k]
                verdict = midway_check(mp, k)
                assert equal_flat == (
                    verdict["midway"] or verdict["dual_midway"]
                )
                checked += 1


class TestExtremalClassify:
    def test_witness_ratio_two(self):
        v = kahn_saks_extremal_classify(ratio_two_witness_poset(), 2)
        assert v.equality and v.ratio == 2 and all(v.ratio_two_conditions)

    def test_flat_family_ratio_one(self):
        # 2-antichain marks: N = [2, 1]; build a poset with a flat stretch
        p = Poset.from_relations(
            ["x", "y", "a", "b"], [("x", "y")]
        )
        mp = MarkedPoset(p, "x", "y")
        seq = kahn_saks_sequence(mp)
        for k in range(2, len(seq)):
            if seq[k - 1] and seq[k - 2] == seq[k - 1] == seq[k]:
                v = kahn_saks_extremal_classify(mp, k)
                assert v.ratio == 1

    def test_zero_raises(self):
        mp = MarkedPoset(Poset.chain(["b", "x", "y", "t"]), "x", "y")
        with pytest.raises(ZeroAtIndex):
            kahn_saks_extremal_classify(mp, 2)

    def test_ratio_dichotomy_random(self, rng):
        checked = 0
        while checked < 60:
            p = random_poset(rng, rng.randint(2, 7))
            x, y = random_marks(rng, p)
            mp = MarkedPoset(p, x, y)
            seq = kahn_saks_sequence(mp)
            for k in range(2, len(seq)):
                if seq[k - 1] == 0:
                    continue
                v = kahn_saks_extremal_classify(mp, k)
                if v.equality:
                    assert v.ratio in (1, 2)
                ratio_two = (
                    seq[k] == 2 * seq[k - 1] and seq[k - 1] == 2 * seq[k - 2]
                )
                assert ratio_two == all(v.ratio_two_conditions)
                checked += 1


class TestExtremes:
    def test_chain(self):
        mp = MarkedPoset(Poset.chain(["b", "x", "m", "y", "t"]), "x", "y")
        out = extension_extremes(mp)
        assert out["min_gap"] == out["narrow_target"] == 2

    def test_antichain(self):
        out = extension_extremes(MarkedPoset(ANTI3, "x", "y"))
        assert out["min_gap"] == 1 and out["wide_exists"]

    def test_random_identities(self, rng):
        for _ in range(30):
            p = random_poset(rng, rng.randint(2, 7))
            x, y = random_marks(rng, p)
            out = extension_extremes(MarkedPoset(p, x, y))
            assert out["min_gap"] == out["narrow_target"]
            assert out["wide_exists"]


class TestRegions:
    def test_chain_mid(self):
        mp = MarkedPoset(Poset.chain(["b", "x", "m", "y", "t"]), "x", "y")
        r = region_partition(mp)
        assert r.mid == {"m"}
        assert r.end_x == {"b"} and r.end_y == {"t"}
        assert not (r.mid_x or r.mid_y or r.incomparable_both)

    def test_mid_x_membership(self):
        p = Poset.from_relations(["x", "y", "w"], [("x", "y"), ("x", "w")])
        r = region_partition(MarkedPoset(p, "x", "y"))
        assert "w" in r.mid_x

    def test_partition_covers(self, rng):
        for _ in range(30):
            p = random_poset(rng, rng.randint(2, 7))
            x, y = random_marks(rng, p)
            mp = MarkedPoset(p, x, y)
            nm = normalize(mp)
            r = region_partition(mp)
            parts = [
                r.end_x,
                r.end_y,
                r.mid,
                r.mid_x,
                r.mid_y,
                r.incomparable_both,
            ]
            union = set().union(*parts) | {x, y}
            assert union == set(nm.poset.labels)
            total = sum(len(s) for s in parts)
            assert total == nm.poset.n - 2
