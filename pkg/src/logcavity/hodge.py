"""The Gorenstein quotient of the basis generating polynomial: graded
dimensions, annihilator kernels, Hodge-Riemann forms, HL/HRR certification,
socle checks, the graded Moebius algebra pairing, and open-question probes.

Degree-k classes are represented on independent squarefree k-subsets; because
the basis generating polynomial is multilinear, every evaluation matrix is
0/1 and ranks, kernels, and forms stay in exact rational arithmetic.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    ColoopElement,
    DegreeTooHigh,
    DimensionMismatch,
    NonpositiveValue,
    RankBoundViolated,
    RankTooLow,
)
from .linalg import (
    Inertia,
    QMatrix,
    inertia,
    kernel_basis,
    rank_of_matrix,
    row_space_basis_indices,
    solve,
)
from .matroids import FlatLattice, Matroid, _bits, _popcount
from .polynomials import MPoly, basis_generating_poly


def _subset_masks(n, k):
    for combo in combinations(range(n), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        yield mask


@dataclass(frozen=True)
class GradedEvaluation:
    """Evaluation pairing of degree k against degree r-k.

    rows: squarefree k-subsets (independent ones by default); cols:
    independent (r-k)-subsets; entry 1 iff the disjoint union is a basis.
    The degree-k graded piece has dimension = rank, with the selected rows
    as a working basis."""

    k: int
    row_masks: tuple
    col_masks: tuple
    matrix: QMatrix
    basis_positions: tuple  # indices into row_masks giving a row-space basis

    @property
    def dimension(self):
        return len(self.basis_positions)


def graded_evaluation(m: Matroid, k, rows="independent") -> GradedEvaluation:
    if not 0 <= k <= m.rank:
        raise DegreeTooHigh(f"degree {k} outside 0..rank")
    if rows == "independent":
        row_masks = tuple(m.independent_subsets(k))
    elif rows == "squarefree":
        row_masks = tuple(_subset_masks(m.n, k))
    else:
        raise DimensionMismatch(f"unknown row mode {rows!r}")
    col_masks = tuple(m.independent_subsets(m.rank - k))
    base_set = set(m.bases)
    mat = QMatrix(
        [
            Fraction(1)
            if (a & c) == 0 and (a | c) in base_set
            else Fraction(0)
            for c in col_masks
        ]
        for a in row_masks
    )
    basis_positions = tuple(row_space_basis_indices(mat))
    return GradedEvaluation(k, row_masks, col_masks, mat, basis_positions)


def graded_dims(m: Matroid):
    """dim A^0 .. dim A^rank; palindromic by Poincare duality."""
    return [graded_evaluation(m, k).dimension for k in range(m.rank + 1)]


@dataclass(frozen=True)
class KernelReport:
    k: int
    row_subsets: tuple  # label frozensets indexing coordinates
    vectors: tuple  # tuples of Fractions spanning the degree-k annihilator


def annihilator_kernel(m: Matroid, k, rows="squarefree") -> KernelReport:
    """Basis of the degree-k annihilator over squarefree monomial coordinates
    (dependent monomials and parallel differences land here)."""
    ev = graded_evaluation(m, k, rows=rows)
    vectors = kernel_basis(ev.matrix.T)
    return KernelReport(
        k,
        tuple(m._labels(mask) for mask in ev.row_masks),
        tuple(vectors),
    )


def in_annihilator(m: Matroid, coeffs) -> bool:
    """Whether sum of coeff * X^S (squarefree S of one common size) kills the
    basis generating polynomial. coeffs: {frozenset of labels: rational}."""
    items = [(m._mask(s), Fraction(c)) for s, c in coeffs.items()]
    sizes = {_popcount(mask) for mask, _ in items}
    if len(sizes) != 1:
        raise DimensionMismatch("mixed degrees in annihilator test")
    k = sizes.pop()
    base_set = set(m.bases)
    for gamma in m.independent_subsets(m.rank - k):
        total = Fraction(0)
        for mask, c in items:
            if mask & gamma == 0 and (mask | gamma) in base_set:
                total += c
        if total != 0:
            return False
    return True


class _RingCache:
    """Per-matroid cache of the generating polynomial, its derivatives, and
    evaluation data."""

    def __init__(self, m: Matroid):
        self.m = m
        self.f = basis_generating_poly(m)
        self._partials = {0: self.f}
        self._evals = {}

    def partial(self, mask) -> MPoly:
        cached = self._partials.get(mask)
        if cached is None:
            low = mask & -mask
            i = low.bit_length() - 1
            cached = self.partial(mask & ~low).partial(i)
            self._partials[mask] = cached
        return cached

    def evaluation(self, k) -> GradedEvaluation:
        if k not in self._evals:
            self._evals[k] = graded_evaluation(self.m, k)
        return self._evals[k]


def _pair_value(cache: _RingCache, a_mask, b_mask, power, point):
    """deg(d^a d^b l^power) = power! * (d^(a|b) f)(point) for disjoint a, b."""
    if a_mask & b_mask:
        return Fraction(0)
    g = cache.partial(a_mask | b_mask)
    if g.is_zero():
        return Fraction(0)
    return math.factorial(power) * g.evaluate(point)


@dataclass(frozen=True)
class HRFormMatrix:
    k: int
    point: tuple
    basis: tuple  # label frozensets for the chosen degree-k basis
    matrix: QMatrix  # Q^k on that basis


def hr_form(m: Matroid, k, point, cache=None) -> HRFormMatrix:
    """Hodge-Riemann form Q^k(x1, x2) = (-1)^k deg(x1 x2 l^(r-2k)) on the
    selected basis of the degree-k piece."""
    if 2 * k > m.rank:
        raise DegreeTooHigh(f"need 2k <= rank, got k={k}, rank={m.rank}")
    point = tuple(Fraction(x) for x in point)
    if len(point) != m.n:
        raise DimensionMismatch("point length must equal ground size")
    cache = cache or _RingCache(m)
    ev = cache.evaluation(k)
    basis_masks = [ev.row_masks[i] for i in ev.basis_positions]
    power = m.rank - 2 * k
    sign = (-1) ** k
    rows = []
    for a in basis_masks:
        rows.append(
            [sign * _pair_value(cache, a, b, power, point) for b in basis_masks]
        )
    return HRFormMatrix(
        k, point, tuple(m._labels(mask) for mask in basis_masks), QMatrix(rows)
    )


def _primitive_basis(m: Matroid, k, point, cache):
    """Kernel of multiplication by l^(r-2k+1) from degree k into degree
    r-k+1, detected through the pairing against degree k-1."""
    ev_k = cache.evaluation(k)
    basis_k = [ev_k.row_masks[i] for i in ev_k.basis_positions]
    if k == 0:
        rows = [[Fraction(0)] for _ in basis_k]
        power = m.rank + 1
        u = QMatrix(rows)  # A^{r+1} = 0, so everything is primitive
        return basis_k, kernel_basis(u.T)
    ev_prev = cache.evaluation(k - 1)
    basis_prev = [ev_prev.row_masks[i] for i in ev_prev.basis_positions]
    power = m.rank - 2 * k + 1
    u = QMatrix(
        [
            [_pair_value(cache, a, b, power, point) for b in basis_prev]
            for a in basis_k
        ]
    )
    return basis_k, kernel_basis(u.T)


def hl_check(m: Matroid, k, point) -> bool:
    """Hard Lefschetz in degree k at the point: the Lefschetz map has full
    rank, equivalently the Hodge-Riemann form is non-degenerate (its matrix
    is the Lefschetz map written through the Poincare pairing)."""
    cache = _RingCache(m)
    point = tuple(Fraction(x) for x in point)
    if cache.f.evaluate(point) <= 0:
        raise NonpositiveValue("criteria require f(point) > 0")
    q = hr_form(m, k, point, cache)
    return inertia(q.matrix).n_zero == 0


def hrr_check(m: Matroid, k, point) -> bool:
    """Hodge-Riemann relations in degree k at the point: Q^k positive
    definite on the primitive subspace."""
    cache = _RingCache(m)
    point = tuple(Fraction(x) for x in point)
    if cache.f.evaluate(point) <= 0:
        raise NonpositiveValue("criteria require f(point) > 0")
    return _hrr_verdict(m, k, point, cache)


def _hrr_verdict(m: Matroid, k, point, cache) -> bool:
    if 2 * k > m.rank:
        raise DegreeTooHigh(f"need 2k <= rank, got k={k}")
    q = hr_form(m, k, point, cache)
    basis_k, primitive = _primitive_basis(m, k, point, cache)
    if not primitive:
        return True
    kmat = QMatrix(zip(*primitive))  # columns = primitive basis vectors
    restricted = kmat.T * q.matrix * kmat
    iner = inertia(restricted)
    return iner.n_pos == len(primitive) and iner.n_neg == 0 and iner.n_zero == 0


def hrr_signature_route(m: Matroid, point) -> bool:
    """Degree-1 shortcut: with f(point) > 0, HRR_1 holds iff -Q^1 has
    signature (+, -, ..., -)."""
    cache = _RingCache(m)
    point = tuple(Fraction(x) for x in point)
    if cache.f.evaluate(point) <= 0:
        raise NonpositiveValue("signature criterion requires f(point) > 0")
    q = hr_form(m, 1, point, cache)
    neg = q.matrix.scale(-1)
    return inertia(neg) == Inertia(1, neg.rows - 1, 0)


@dataclass(frozen=True)
class FacetElementReport:
    element: object
    coloop: bool
    hrr_at_ones: bool
    hrr_at_pencil: bool
    matches_theorem: bool


@dataclass(frozen=True)
class FacetScanReport:
    elements: tuple
    subset_checks: tuple  # (labels, hrr) pairs for low-rank coloop-free subsets
    degenerate_subsets: tuple  # coloop-free low-rank S met by every basis
    inverse_hessian_nonzero: tuple  # (element, ok) pairs where applicable
    all_consistent: bool


def facet_point(m: Matroid, zero_labels, pencil=False):
    """Deterministic point on the relative interior of the facet x_S = 0:
    zero on S, 1 elsewhere (or the 1 + i/10 pencil)."""
    zeros = {m._index[e] for e in zero_labels}
    out = []
    live = 0
    for i in range(m.n):
        if i in zeros:
            out.append(Fraction(0))
        else:
            out.append(Fraction(10 + live, 10) if pencil else Fraction(1))
            live += 1
    return tuple(out)


def facet_theorem_scan(m: Matroid, subset_size_cap=2) -> FacetScanReport:
    """HRR_1 on facet points versus coloop status, plus coloop-free low-rank
    subset facets and the inverse-Hessian determinant identity."""
    if m.rank < 2:
        raise RankTooLow("facet scan needs rank >= 2")
    cache = _RingCache(m)
    coloops = m.coloops()
    per_element = []
    for e in m.ground:
        verdicts = []
        for pencil in (False, True):
            point = facet_point(m, [e], pencil)
            verdicts.append(_hrr_verdict(m, 1, point, cache))
        is_coloop = e in coloops
        per_element.append(
            FacetElementReport(
                e,
                is_coloop,
                verdicts[0],
                verdicts[1],
                verdicts[0] == verdicts[1] == (not is_coloop),
            )
        )
    # HRR_1 holds on relint H_S exactly when some basis avoids S; a
    # coloop-free low-rank S met by every basis makes f vanish on the face
    # and kills the form, so those are separated out as degenerate.
    subset_checks = []
    degenerate = []
    for size in range(2, subset_size_cap + 1):
        for combo in combinations(m.ground, size):
            if set(combo) & coloops:
                continue
            if m.rank_of(combo) > m.rank - 2:
                continue
            point = facet_point(m, combo)
            complement = [e for e in m.ground if e not in combo]
            if m.rank_of(complement) < m.rank:
                degenerate.append((combo, _hrr_verdict(m, 1, point, cache)))
                continue
            subset_checks.append((combo, _hrr_verdict(m, 1, point, cache)))
    inverse_hessian = []
    simple = not m.loops() and all(
        len(c) == 1 for c in m.parallel_data().classes
    )
    if simple:
        for e in m.ground:
            if e in coloops:
                continue
            point = facet_point(m, [e])
            if cache.f.evaluate(point) <= 0:
                continue
            idx = m._index[e]
            keep = [i for i in range(m.n) if i != idx]
            contracted = cache.partial(1 << idx)
            grad = [contracted.partial(i).evaluate(point) for i in keep]
            deleted_hessian_full = (cache.f - MPoly.variable(m.n, idx) * contracted).hessian_at(point)
            sub = deleted_hessian_full.submatrix(keep, keep)
            try:
                x = solve(sub, grad)
            except Exception:
                inverse_hessian.append((e, False))
                continue
            value = sum(g * xi for g, xi in zip(grad, x))
            inverse_hessian.append((e, value != 0))
    consistent = (
        all(r.matches_theorem for r in per_element)
        and all(ok for _, ok in subset_checks)
        and all(not ok for _, ok in degenerate)
        and all(ok for _, ok in inverse_hessian)
    )
    return FacetScanReport(
        tuple(per_element),
        tuple(subset_checks),
        tuple(degenerate),
        tuple(inverse_hessian),
        consistent,
    )


def socle_check(m: Matroid, k, S) -> bool:
    """Triviality of {x in degree k : x kills every contraction derivative
    away from S}; requires rank(S) <= rank - k - 1."""
    s_mask = m._mask(S)
    if m._rank_mask(s_mask) > m.rank - k - 1:
        raise RankBoundViolated(
            "socle statement needs rank(S) <= rank(M) - k - 1"
        )
    alphas = m.independent_subsets(k)
    gammas = m.independent_subsets(m.rank - k - 1)
    base_set = set(m.bases)
    rows = []
    for e in range(m.n):
        if s_mask >> e & 1:
            continue
        e_bit = 1 << e
        for gamma in gammas:
            if gamma & e_bit:
                continue
            row = [
                Fraction(1)
                if a & (gamma | e_bit) == 0 and (a | gamma | e_bit) in base_set
                else Fraction(0)
                for a in alphas
            ]
            rows.append(row)
    constraint = QMatrix(rows) if rows else QMatrix.zero(0, len(alphas))
    ev = graded_evaluation(m, k)
    for v in kernel_basis(constraint):
        image = ev.matrix.T.apply(v)
        if any(x != 0 for x in image):
            return False
    return True


def simplification_isomorphism_check(m: Matroid, points=None) -> bool:
    """Graded dimensions agree with the simplification, and degree-1 HRR
    verdicts transfer along the class-summing map on linear forms."""
    simple, fiber = m.simplify()
    if graded_dims(m) != graded_dims(simple):
        return False
    if points is None:
        points = [tuple(Fraction(1) for _ in range(m.n))]
        points.append(tuple(Fraction(10 + i, 10) for i in range(m.n)))
    for point in points:
        mapped = [Fraction(0)] * simple.n
        for i, e in enumerate(m.ground):
            if e in fiber:
                mapped[simple._index[fiber[e]]] += point[i]
        if hrr_check(m, 1, point) != hrr_check(simple, 1, tuple(mapped)):
            return False
    return True


class MobiusAlgebra:
    """Graded Moebius algebra on the lattice of flats: y_F y_G = y_{F join G}
    when ranks add, else zero."""

    def __init__(self, m: Matroid):
        self.matroid = m
        self.lattice = FlatLattice.of(m)

    def flats_of_rank(self, k):
        levels = self.lattice.flats_by_rank
        return levels[k] if k < len(levels) else ()

    def product(self, F, G):
        m = self.matroid
        join = m.closure_of(set(F) | set(G))
        if m.rank_of(join) == m.rank_of(F) + m.rank_of(G):
            return join
        return None

    def theta_image(self, F):
        """A basis of the flat F (greedy), the image monomial of y_F."""
        m = self.matroid
        mask = 0
        r = 0
        for e in F:
            cand = mask | 1 << m._index[e]
            if m._rank_mask(cand) > r:
                mask = cand
                r += 1
        return m._labels(mask)


def mobius_pairing(m: Matroid, k):
    """(number of rank-k flats, inertia of the top-degree pairing matrix).

    Entry (F, G) is 1 iff rank(F join G) = 2k = rank(M); the union-of-bases
    formulation is asserted to coincide."""
    if 2 * k > m.rank:
        raise DegreeTooHigh("pairing needs 2k <= rank")
    alg = MobiusAlgebra(m)
    flats = alg.flats_of_rank(k)
    base_set = set(m.bases)
    n = len(flats)
    rows = []
    for F in flats:
        bf = m._mask(alg.theta_image(F))
        row = []
        for G in flats:
            joined = alg.product(F, G)
            rank_route = (
                joined is not None and m.rank_of(joined) == m.rank
            )
            bg = m._mask(alg.theta_image(G))
            union_route = bf & bg == 0 and (bf | bg) in base_set
            if rank_route != union_route:
                raise AssertionError(
                    "pairing formulations disagree on "
                    f"{sorted(F)} vs {sorted(G)}"
                )
            row.append(Fraction(1 if rank_route else 0))
        rows.append(row)
    matrix = QMatrix(rows) if rows else QMatrix.zero(0, 0)
    return n, inertia(matrix)


def mobius_pairing_zero_count_identity(m: Matroid, k) -> bool:
    """Zero eigenvalues of the pairing = (number of rank-k flats) - (rank in
    the Gorenstein quotient of the flat-basis monomials)."""
    count, iner = mobius_pairing(m, k)
    alg = MobiusAlgebra(m)
    ev = graded_evaluation(m, k)
    pos = {mask: idx for idx, mask in enumerate(ev.row_masks)}
    rows = []
    for F in alg.flats_of_rank(k):
        mask = m._mask(alg.theta_image(F))
        rows.append(ev.matrix[pos[mask]])
    theta_rank = rank_of_matrix(QMatrix(rows)) if rows else 0
    return iner.n_zero == count - theta_rank


@dataclass(frozen=True)
class ContainmentProbe:
    element: object
    contained: bool
    counterexample: object  # (degree, labels tuple, coefficients) or None


def annihilator_containment_probe(m: Matroid, e) -> ContainmentProbe:
    """Whether the annihilator of the deletion embeds into that of the
    contraction (open question; reported, never asserted)."""
    if e in m.coloops():
        raise ColoopElement("the question is posed for non-coloops")
    deleted = m.delete([e])
    contracted = m.contract([e])
    base_set = set(contracted.bases)
    for k in range(1, deleted.rank + 1):
        report = annihilator_kernel(deleted, k, rows="independent")
        if contracted.rank - k < 0:
            continue
        gammas = contracted.independent_subsets(contracted.rank - k)
        for vec in report.vectors:
            for gamma in gammas:
                total = Fraction(0)
                for coeff, labels in zip(vec, report.row_subsets):
                    if coeff == 0:
                        continue
                    mask = contracted._mask(labels)
                    if mask & gamma == 0 and (mask | gamma) in base_set:
                        total += coeff
                if total != 0:
                    return ContainmentProbe(
                        e, False, (k, report.row_subsets, vec)
                    )
    return ContainmentProbe(e, True, None)


def theta_consistency_check(m: Matroid) -> bool:
    """The flat-to-monomial map is basis-independent: any two bases of a flat
    give the same Gorenstein class."""
    lattice = FlatLattice.of(m)
    for level in lattice.flats_by_rank:
        for F in level:
            bases_of_f = _bases_of_flat(m, F)
            if len(bases_of_f) < 2:
                continue
            first = bases_of_f[0]
            k = len(first)
            for other in bases_of_f[1:]:
                if not in_annihilator(
                    m, {frozenset(first): 1, frozenset(other): -1}
                ):
                    return False
    return True


def _bases_of_flat(m: Matroid, F):
    members = sorted(F, key=lambda e: m._index[e])
    r = m.rank_of(F)
    out = []
    for combo in combinations(members, r):
        if m.is_independent(combo):
            out.append(combo)
    return out


def signature_formula_check(m: Matroid, k, point):
    """When HL_i and HRR_i hold for i <= k, the net signature of (-1)^k Q^k
    equals the alternating sum of graded dimension increments.

    Returns (hypotheses_hold, formula_holds)."""
    cache = _RingCache(m)
    point = tuple(Fraction(x) for x in point)
    if cache.f.evaluate(point) <= 0:
        raise NonpositiveValue("requires f(point) > 0")
    for i in range(1, k + 1):
        q = hr_form(m, i, point, cache)
        if inertia(q.matrix).n_zero != 0:
            return False, False
        if not _hrr_verdict(m, i, point, cache):
            return False, False
    q = hr_form(m, k, point, cache)
    signed = q.matrix.scale((-1) ** k) if k % 2 else q.matrix
    sigma = inertia(signed).net_signature
    dims = graded_dims(m)
    expect = 0
    for i in range(k + 1):
        prev = dims[i - 1] if i >= 1 else 0
        expect += (-1) ** i * (dims[i] - prev)
    return True, sigma == expect
