"""Stanley's matroid inequality pipelines: basis counting sequences,
ultra-log-concavity, equality characterizations, zonotope mixed-volume
cross-checks, and the truncated-sum construction behind Mason's inequality.

Direct basis enumeration is the ground truth; the mixed-volume and
polynomial-substitution routes are cross-checks.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    BadMultiplicities,
    DegenerateEnds,
    DimensionMismatch,
    LoopPresent,
    RankDeficient,
    TooLarge,
    UnknownElement,
)
from .linalg import Graph, QMatrix, det
from .matroids import Matroid, _bits, _popcount


@dataclass(frozen=True)
class BasisCountSpec:
    matroid: Matroid
    tuple_spec: tuple  # ((subset, multiplicity), ...)


@dataclass(frozen=True)
class StanleySequence:
    counts: tuple  # N_0..N_r
    normalized: tuple  # N_k / C(r, k)

    @property
    def total(self):
        return sum(self.counts)

    def log_concave(self):
        n = self.normalized
        return all(
            n[k] * n[k] >= n[k - 1] * n[k + 1] for k in range(1, len(n) - 1)
        )

    def equality_indices(self):
        n = self.normalized
        return [
            k
            for k in range(1, len(n) - 1)
            if n[k] * n[k] == n[k - 1] * n[k + 1]
        ]


def B_count(m: Matroid, tuple_spec) -> int:
    """Number of ordered tuples (y_1, ..., y_r), the i-th block drawn from its
    subset, whose underlying set is a basis.

    Counted per basis: ways to split the basis into blocks of the prescribed
    sizes inside the prescribed subsets, times the product of block factorials."""
    spec = [(m._mask(subset), int(mult)) for subset, mult in tuple_spec]
    total_mult = sum(mult for _, mult in spec)
    if total_mult != m.rank:
        raise BadMultiplicities(
            f"multiplicities sum to {total_mult}, rank is {m.rank}"
        )
    factor = 1
    for _, mult in spec:
        factor *= math.factorial(mult)
    total = 0
    for b in m.bases:
        total += _assignments(list(_bits(b)), spec)
    return total * factor


def _assignments(elements, spec):
    """Ways to assign each element to one block, respecting membership masks
    and exact block capacities."""
    k = len(spec)

    def rec(pos, caps):
        if pos == len(elements):
            return 1 if all(c == 0 for c in caps) else 0
        e = elements[pos]
        total = 0
        for i in range(k):
            if caps[i] > 0 and spec[i][0] >> e & 1:
                caps[i] -= 1
                total += rec(pos + 1, caps)
                caps[i] += 1
        return total

    return rec(0, [mult for _, mult in spec])


def stanley_matroid_sequence(m: Matroid, R) -> StanleySequence:
    """N_k = number of bases meeting R in exactly k elements, k = 0..rank."""
    r_mask = m._mask(R)
    r = m.rank
    counts = [0] * (r + 1)
    for b in m.bases:
        counts[_popcount(b & r_mask)] += 1
    normalized = tuple(
        Fraction(counts[k], math.comb(r, k)) for k in range(r + 1)
    )
    return StanleySequence(tuple(counts), normalized)


@dataclass(frozen=True)
class RatioVerdict:
    holds: bool
    ratio: object  # Fraction q/r when holds, else None


def ratio_condition_check(m: Matroid, R) -> RatioVerdict:
    """True iff |class ∩ R| / |class ∩ Q| is one positive rational across all
    parallel classes; that constant is the expected step ratio of the
    normalized sequence."""
    if m.loops():
        raise LoopPresent("ratio condition is stated for loopless matroids")
    r_set = frozenset(R)
    ratio = None
    for cls in m.parallel_data().classes:
        in_r = len(cls & r_set)
        in_q = len(cls) - in_r
        if in_r == 0 or in_q == 0:
            return RatioVerdict(False, None)
        current = Fraction(in_r, in_q)
        if ratio is None:
            ratio = current
        elif ratio != current:
            return RatioVerdict(False, None)
    return RatioVerdict(True, ratio)


@dataclass(frozen=True)
class GraphicEqualityVerdict:
    a_holds: bool  # equality at some k
    b_holds: bool  # equality at all k
    c_holds: bool  # constant R:Q edge-multiplicity ratio across adjacent pairs
    ratio: object


def graphic_equality_check(graph: Graph, R_indices) -> GraphicEqualityVerdict:
    """Equality trichotomy for the spanning-tree counting sequence of a
    connected multigraph under an edge bipartition."""
    if graph.has_loop:
        raise LoopPresent("graphic equality check needs a loopless graph")
    m = Matroid.graphic(graph)
    r_set = frozenset(R_indices)
    q_set = frozenset(range(len(graph.edges))) - r_set
    if m.rank_of(r_set) != m.rank or m.rank_of(q_set) != m.rank:
        raise RankDeficient("both edge classes must contain a spanning tree")
    seq = stanley_matroid_sequence(m, r_set)
    eq = seq.equality_indices()
    a_holds = bool(eq)
    b_holds = len(eq) == max(len(seq.normalized) - 2, 0)

    pair_counts = {}
    for idx, (u, v) in enumerate(graph.edges):
        key = (min(u, v), max(u, v))
        r_cnt, q_cnt = pair_counts.get(key, (0, 0))
        if idx in r_set:
            r_cnt += 1
        else:
            q_cnt += 1
        pair_counts[key] = (r_cnt, q_cnt)
    ratio = None
    c_holds = True
    for r_cnt, q_cnt in pair_counts.values():
        if r_cnt == 0 or q_cnt == 0:
            c_holds = False
            break
        current = Fraction(r_cnt, q_cnt)
        if ratio is None:
            ratio = current
        elif ratio != current:
            c_holds = False
            break
    if not c_holds:
        ratio = None
    return GraphicEqualityVerdict(a_holds, b_holds, c_holds, ratio)


def zonotope_volume(vectors) -> Fraction:
    """Volume of the zonotope spanned by the segments [0, v_i]: the sum of
    absolute determinants over n-subsets (duplicates contribute by
    multiplicity products)."""
    vectors = [tuple(Fraction(x) for x in v) for v in vectors]
    if not vectors:
        return Fraction(0)
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("all vectors must have the same dimension")
    mult = {}
    for v in vectors:
        mult[v] = mult.get(v, 0) + 1
    distinct = sorted(mult)
    total = Fraction(0)
    for combo in combinations(distinct, n):
        weight = 1
        for v in combo:
            weight *= mult[v]
        d = det(QMatrix(zip(*combo)))
        total += weight * abs(d)
    return total


def mixed_volume_zonotopes(lists) -> Fraction:
    """Mixed volume V_r(Z(T_1), ..., Z(T_r)) by the inversion formula over
    volumes of Minkowski sums (a sum of zonotopes is the zonotope on the
    concatenated generators)."""
    lists = [tuple(tuple(Fraction(x) for x in v) for v in t) for t in lists]
    r = len(lists)
    for t in lists:
        for v in t:
            if len(v) != r:
                raise DimensionMismatch(
                    "ambient dimension must equal the number of zonotopes"
                )
    total = Fraction(0)
    for size in range(r + 1):
        sign = (-1) ** (r - size)
        for subset in combinations(range(r), size):
            gens = [v for i in subset for v in lists[i]]
            total += sign * zonotope_volume(gens) if gens else 0
    return total / math.factorial(r)


@dataclass(frozen=True)
class MasonReport:
    independent_counts: tuple  # I_0..I_r
    log_concave: bool
    construction_identity: bool  # f_k of T^n(B_n (+) M) equals I_k C(n, n-k)


def mason_sequence(m: Matroid, element_cap=12) -> MasonReport:
    """Independent-set counts with the truncated-sum cross-check."""
    if m.n > element_cap:
        raise TooLarge(f"mason check capped at {element_cap} elements")
    r = m.rank
    counts = tuple(m.independent_count(k) for k in range(r + 1))
    lc = all(
        counts[k] * counts[k] >= counts[k - 1] * counts[k + 1]
        for k in range(1, r)
    )
    boolean = _fresh_boolean(m, r)
    summed = boolean.direct_sum(m)
    trunc = summed
    for _ in range(r):
        trunc = trunc.truncate()
    m_labels = frozenset(m.ground)
    f = [0] * (r + 1)
    for b in trunc.bases:
        shared = len(trunc._labels(b) & m_labels)
        f[shared] += 1
    identity = all(
        f[k] == counts[k] * math.comb(r, r - k) for k in range(r + 1)
    )
    return MasonReport(counts, lc, identity)


def _fresh_boolean(m: Matroid, size):
    labels = []
    i = 0
    existing = set(m.ground)
    while len(labels) < size:
        cand = f"aux{i}"
        if cand not in existing:
            labels.append(cand)
        i += 1
    full = (1 << size) - 1
    return Matroid(tuple(labels), [full])


def minkowski_route_check(m: Matroid, R) -> bool:
    """Checks the equivalence: Minkowski-style end equality <=> equality at
    some k <=> equality at all k, for the normalized sequence with positive
    ends. Returns True when the three statements agree."""
    seq = stanley_matroid_sequence(m, R)
    nt = seq.normalized
    r = len(nt) - 1
    if nt[0] == 0 or nt[r] == 0:
        raise DegenerateEnds("both sequence ends must be positive")
    minkowski = nt[1] ** r == nt[0] ** (r - 1) * nt[r]
    eq = seq.equality_indices()
    some = bool(eq)
    everywhere = len(eq) == r - 1
    return minkowski == some == everywhere


def parallel_replicate(m: Matroid, r_copies, q_copies):
    """Parallel extension giving every element r_copies R-clones and q_copies
    Q-clones; returns (matroid, R) realizing the constant-ratio condition."""
    if r_copies < 1 or q_copies < 1:
        raise BadMultiplicities("each class needs at least one copy per side")
    per = r_copies + q_copies
    ground = []
    r_labels = []
    for e in m.ground:
        for i in range(per):
            lab = f"{e}#{i}"
            ground.append(lab)
            if i < r_copies:
                r_labels.append(lab)
    masks = set()
    offsets = {e: per * idx for idx, e in enumerate(m.ground)}

    def expand(mask_bits, acc, picked):
        if not mask_bits:
            masks.add(picked)
            return
        e = mask_bits[0]
        base = offsets[m.ground[e]]
        for i in range(per):
            expand(mask_bits[1:], acc, picked | 1 << (base + i))

    for b in m.bases:
        expand(list(_bits(b)), 0, 0)
    return Matroid(tuple(ground), sorted(masks)), frozenset(r_labels)


def g_polynomial(m: Matroid, subsets):
    """The substituted basis generating polynomial over one variable per
    subset: x_e -> sum of y_i over subsets containing e."""
    from .polynomials import basis_generating_poly

    cols = len(subsets)
    masks = [m._mask(s) for s in subsets]
    a = QMatrix(
        [
            [Fraction(1) if masks[j] >> i & 1 else Fraction(0) for j in range(cols)]
            for i in range(m.n)
        ]
    )
    return basis_generating_poly(m).substitute_linear(a)
