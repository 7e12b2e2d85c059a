"""Matroids given by explicit basis lists, with derived structure and minors.

The canonical representation is the sorted list of bases (as index bitmasks
over the ground tuple); every derived quantity is computed from it.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    EmptyBases,
    ExchangeViolation,
    DimensionMismatch,
    TooLarge,
    UnequalSizes,
    UnknownElement,
)
from .linalg import Graph, QMatrix, det, rank_of_matrix

DEFAULT_ELEMENT_CAP = 16


def _popcount(x):
    return bin(x).count("1")


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask &= mask - 1


class Matroid:
    __slots__ = ("ground", "_index", "bases", "rank", "_rank_cache")

    def __init__(self, ground, basis_masks):
        object.__setattr__(self, "ground", tuple(ground))
        index = {lab: i for i, lab in enumerate(self.ground)}
        if len(index) != len(self.ground):
            raise UnknownElement("duplicate ground set labels")
        object.__setattr__(self, "_index", index)
        masks = tuple(sorted(set(basis_masks)))
        if not masks:
            raise EmptyBases("a matroid must have at least one basis")
        object.__setattr__(self, "bases", masks)
        object.__setattr__(self, "rank", _popcount(masks[0]))
        object.__setattr__(self, "_rank_cache", {})

    def __setattr__(self, *a):
        raise AttributeError("Matroid is immutable")

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and sorted(map(str, self.ground)) == sorted(map(str, other.ground))
            and self.basis_label_sets() == other.basis_label_sets()
        )

    def __hash__(self):
        return hash((self.ground, self.bases))

    @property
    def n(self):
        return len(self.ground)

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_bases(ground, bases, validate=True):
        ground = tuple(ground)
        index = {lab: i for i, lab in enumerate(ground)}
        masks = []
        for b in bases:
            mask = 0
            for e in b:
                if e not in index:
                    raise UnknownElement(f"basis element {e!r} not in ground set")
                mask |= 1 << index[e]
            if _popcount(mask) != len(tuple(b)):
                raise UnknownElement(f"basis {b!r} repeats an element")
            masks.append(mask)
        if not masks:
            raise EmptyBases("no bases given")
        sizes = {_popcount(m) for m in masks}
        if len(sizes) != 1:
            raise UnequalSizes(f"bases of different sizes: {sorted(sizes)}")
        m = Matroid(ground, masks)
        if validate:
            m._check_exchange()
        return m

    def _check_exchange(self):
        """Basis exchange: for x in B1\\B2 some y in B2\\B1 has B1-x+y a basis."""
        bases = set(self.bases)
        for b1 in self.bases:
            for b2 in self.bases:
                if b1 == b2:
                    continue
                for x in _bits(b1 & ~b2):
                    if not any(
                        (b1 & ~(1 << x)) | (1 << y) in bases
                        for y in _bits(b2 & ~b1)
                    ):
                        raise ExchangeViolation(
                            "exchange fails for bases "
                            f"{sorted(self._labels(b1))} and {sorted(self._labels(b2))}"
                        )

    @staticmethod
    def uniform(k, n):
        if not 0 <= k <= n:
            raise DimensionMismatch("uniform matroid needs 0 <= k <= n")
        if n > DEFAULT_ELEMENT_CAP:
            raise TooLarge(f"ground set larger than {DEFAULT_ELEMENT_CAP}")
        ground = tuple(range(n))
        masks = []
        for combo in combinations(range(n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            masks.append(mask)
        return Matroid(ground, masks)

    @staticmethod
    def graphic(graph: Graph):
        """Cycle matroid of a multigraph; loop edges become matroid loops."""
        m = len(graph.edges)
        if m > DEFAULT_ELEMENT_CAP:
            raise TooLarge(f"more than {DEFAULT_ELEMENT_CAP} edges")
        nonloops = [i for i, (u, v) in enumerate(graph.edges) if u != v]
        rank = _forest_rank(graph, nonloops)
        masks = []
        for combo in combinations(nonloops, rank):
            if _is_forest(graph, combo):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                masks.append(mask)
        return Matroid(tuple(range(m)), masks)

    @staticmethod
    def linear(matrix: QMatrix, ground=None):
        """Column matroid of a rational matrix."""
        cols = matrix.cols
        if ground is None:
            ground = tuple(range(cols))
        if len(ground) != cols:
            raise DimensionMismatch("ground labels must match column count")
        if cols > DEFAULT_ELEMENT_CAP:
            raise TooLarge(f"more than {DEFAULT_ELEMENT_CAP} columns")
        r = rank_of_matrix(matrix)
        if r == 0:
            return Matroid(ground, [0])
        rows = range(matrix.rows)
        masks = []
        for combo in combinations(range(cols), r):
            if rank_of_matrix(matrix.submatrix(rows, combo)) == r:
                mask = 0
                for i in combo:
                    mask |= 1 << i
                masks.append(mask)
        return Matroid(ground, masks)

    # -- queries -----------------------------------------------------------

    def _labels(self, mask):
        return frozenset(self.ground[i] for i in _bits(mask))

    def _mask(self, labels):
        mask = 0
        for e in labels:
            if e not in self._index:
                raise UnknownElement(f"unknown element {e!r}")
            mask |= 1 << self._index[e]
        return mask

    def basis_label_sets(self):
        return frozenset(self._labels(b) for b in self.bases)

    def is_independent(self, S):
        mask = self._mask(S)
        return any(mask & ~b == 0 for b in self.bases)

    def _rank_mask(self, mask):
        cached = self._rank_cache.get(mask)
        if cached is None:
            cached = max(_popcount(mask & b) for b in self.bases)
            self._rank_cache[mask] = cached
        return cached

    def rank_of(self, S):
        return self._rank_mask(self._mask(S))

    def _closure_mask(self, mask):
        r = self._rank_mask(mask)
        out = mask
        for e in range(self.n):
            if not mask >> e & 1 and self._rank_mask(mask | 1 << e) == r:
                out |= 1 << e
        return out

    def closure_of(self, S):
        return self._labels(self._closure_mask(self._mask(S)))

    def independent_subsets(self, k):
        """All independent k-subsets as bitmasks, sorted."""
        seen = set()
        for b in self.bases:
            idx = list(_bits(b))
            for combo in combinations(idx, k):
                mask = 0
                for i in combo:
                    mask |= 1 << i
                seen.add(mask)
        return sorted(seen)

    def independent_count(self, k):
        return len(self.independent_subsets(k))

    def loops(self):
        covered = 0
        for b in self.bases:
            covered |= b
        return self._labels(((1 << self.n) - 1) & ~covered)

    def coloops(self):
        common = (1 << self.n) - 1
        for b in self.bases:
            common &= b
        return self._labels(common)

    def flats(self):
        return FlatLattice.of(self)

    def parallel_data(self):
        loops_mask = self._mask(self.loops())
        classes = []
        assigned = 0
        for e in range(self.n):
            if loops_mask >> e & 1 or assigned >> e & 1:
                continue
            cls = 1 << e
            for f in range(e + 1, self.n):
                if loops_mask >> f & 1:
                    continue
                if self._rank_mask((1 << e) | (1 << f)) == 1:
                    cls |= 1 << f
            assigned |= cls
            classes.append(self._labels(cls))
        return ParallelData(self._labels(loops_mask), tuple(classes))

    def simplify(self):
        """(simple matroid on parallel-class representatives, fiber map).

        The representative of each class is its smallest-index member; the
        fiber map sends every non-loop to its representative."""
        data = self.parallel_data()
        reps = []
        fiber = {}
        for cls in sorted(
            data.classes, key=lambda c: min(self._index[e] for e in c)
        ):
            rep = min(cls, key=lambda e: self._index[e])
            reps.append(rep)
            for e in cls:
                fiber[e] = rep
        rep_mask_index = {self._index[rep]: i for i, rep in enumerate(reps)}
        masks = set()
        for b in self.bases:
            mask = 0
            for i in _bits(b):
                rep = fiber[self.ground[i]]
                mask |= 1 << reps.index(rep)
            masks.add(mask)
        return Matroid(tuple(reps), sorted(masks)), fiber

    # -- operations --------------------------------------------------------

    def restrict(self, T):
        t_mask = self._mask(T)
        keep = [i for i in _bits(t_mask)]
        r = self._rank_mask(t_mask)
        pos = {old: new for new, old in enumerate(keep)}
        masks = set()
        for combo in combinations(keep, r):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if any(mask & ~b == 0 for b in self.bases):
                new = 0
                for i in combo:
                    new |= 1 << pos[i]
                masks.add(new)
        return Matroid(tuple(self.ground[i] for i in keep), sorted(masks))

    def delete(self, T):
        t_mask = self._mask(T)
        keep = [self.ground[i] for i in range(self.n) if not t_mask >> i & 1]
        return self.restrict(keep)

    def contract(self, T, basis_of_T=None):
        """Contraction by T, computed over a basis B_T of the restriction."""
        t_mask = self._mask(T)
        if basis_of_T is None:
            bt = 0
            r = 0
            for i in _bits(t_mask):
                if self._rank_mask(bt | 1 << i) > r:
                    bt |= 1 << i
                    r += 1
        else:
            bt = self._mask(basis_of_T)
        keep = [i for i in range(self.n) if not t_mask >> i & 1]
        pos = {old: new for new, old in enumerate(keep)}
        masks = set()
        for b in self.bases:
            if b & t_mask == bt:
                new = 0
                for i in _bits(b & ~t_mask):
                    new |= 1 << pos[i]
                masks.add(new)
        if not masks:
            # rank(B_T) < rank(T) cannot happen; empty means T spans everything
            masks = {0}
        return Matroid(tuple(self.ground[i] for i in keep), sorted(masks))

    def truncate(self):
        if self.rank == 0:
            raise UnequalSizes("cannot truncate a rank-0 matroid")
        masks = set()
        for b in self.bases:
            for i in _bits(b):
                masks.add(b & ~(1 << i))
        return Matroid(self.ground, sorted(masks))

    def direct_sum(self, other):
        if set(self.ground) & set(other.ground):
            raise UnknownElement("direct sum requires disjoint ground sets")
        ground = self.ground + other.ground
        shift = self.n
        masks = [
            b1 | (b2 << shift) for b1 in self.bases for b2 in other.bases
        ]
        return Matroid(ground, masks)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "type": "bases",
            "ground": list(self.ground),
            "bases": sorted(sorted(map(str, b)) for b in self.basis_label_sets()),
        }

    @staticmethod
    def from_json(obj):
        kind = obj.get("type", "bases")
        if kind == "uniform":
            return Matroid.uniform(obj["k"], obj["n"])
        if kind == "graphic":
            return Matroid.graphic(Graph.from_json(obj["graph"]))
        if kind == "linear":
            return Matroid.linear(
                QMatrix.from_json(obj["matrix"]), obj.get("ground")
            )
        if kind == "bases":
            ground = obj["ground"]
            index = {str(g): g for g in ground}
            bases = [[index.get(str(e), e) for e in b] for b in obj["bases"]]
            return Matroid.from_bases(ground, bases)
        raise UnknownElement(f"unknown matroid type {kind!r}")


@dataclass(frozen=True)
class ParallelData:
    loops: frozenset
    classes: tuple


@dataclass(frozen=True)
class FlatLattice:
    """Flats grouped by rank, with lattice meet and join."""

    matroid: Matroid
    flats_by_rank: tuple

    @staticmethod
    def of(matroid: Matroid):
        if matroid.n > DEFAULT_ELEMENT_CAP:
            raise TooLarge("ground set too large for flat enumeration")
        by_rank = []
        current = {matroid._closure_mask(0)}
        by_rank.append(tuple(sorted(current)))
        while True:
            nxt = set()
            for f in current:
                for e in range(matroid.n):
                    if not f >> e & 1:
                        nxt.add(matroid._closure_mask(f | 1 << e))
            if not nxt:
                break
            current = nxt
            by_rank.append(tuple(sorted(current)))
        return FlatLattice(
            matroid,
            tuple(
                tuple(matroid._labels(m) for m in level) for level in by_rank
            ),
        )

    def all_flats(self):
        return [f for level in self.flats_by_rank for f in level]

    def rank_counts(self):
        return [len(level) for level in self.flats_by_rank]

    def join(self, F, G):
        return self.matroid.closure_of(set(F) | set(G))

    def meet(self, F, G):
        return frozenset(F) & frozenset(G)

    @property
    def atoms(self):
        return self.flats_by_rank[1] if len(self.flats_by_rank) > 1 else ()


def _is_forest(graph: Graph, edge_indices):
    parent = list(range(graph.vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in edge_indices:
        u, v = graph.edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _forest_rank(graph: Graph, nonloops):
    parent = list(range(graph.vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for i in nonloops:
        u, v = graph.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            rank += 1
    return rank


def loops_and_coloops(m: Matroid):
    """(loops, coloops): elements in no basis, elements in every basis."""
    return m.loops(), m.coloops()


def unimodular_coordinatization_check(m: Matroid, matrix: QMatrix) -> bool:
    """True iff every square submatrix has determinant in {0, +-1} and the
    column matroid of the matrix has exactly the bases of m."""
    if matrix.cols != m.n or matrix.rows != m.rank:
        raise DimensionMismatch(
            "matrix must have one column per element and rank(m) rows"
        )
    for k in range(1, min(matrix.rows, matrix.cols) + 1):
        for rows in combinations(range(matrix.rows), k):
            for cols in combinations(range(matrix.cols), k):
                if det(matrix.submatrix(rows, cols)) not in (-1, 0, 1):
                    return False
    return Matroid.linear(matrix, m.ground) == m
