"""Exact rational matrices: determinants, inertia, kernels, graph Laplacians.

All arithmetic is over fractions.Fraction; nothing here touches floating point.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import Disconnected, DimensionMismatch, LoopEdge, NonSquare, NotSymmetric


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class QMatrix:
    """Immutable dense matrix with Fraction entries, row-major."""

    __slots__ = ("m", "rows", "cols")

    def __init__(self, rows_of_entries):
        m = tuple(tuple(_q(x) for x in row) for row in rows_of_entries)
        if m and any(len(r) != len(m[0]) for r in m):
            raise DimensionMismatch("rows of unequal length")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "rows", len(m))
        object.__setattr__(self, "cols", len(m[0]) if m else 0)

    def __setattr__(self, *a):
        raise AttributeError("QMatrix is immutable")

    def __getitem__(self, i):
        return self.m[i]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return "QMatrix(%s)" % "; ".join(" ".join(str(x) for x in r) for r in self.m)

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_symmetric(self):
        return self.is_square and all(
            self.m[i][j] == self.m[j][i] for i in range(self.rows) for j in range(i)
        )

    @property
    def T(self):
        return QMatrix(zip(*self.m)) if self.m else QMatrix([])

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shape mismatch in addition")
        return QMatrix(
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.m, other.m)
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, QMatrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions do not match")
        cols = list(zip(*other.m))
        return QMatrix(
            [sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
            for row in self.m
        )

    def scale(self, s):
        s = _q(s)
        return QMatrix([x * s for x in row] for row in self.m)

    def apply(self, vector):
        """Matrix-vector product, returning a tuple of Fractions."""
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        return tuple(
            sum((a * _q(b) for a, b in zip(row, vector)), Fraction(0))
            for row in self.m
        )

    def submatrix(self, row_idx, col_idx):
        return QMatrix([self.m[i][j] for j in col_idx] for i in row_idx)

    def column(self, j):
        return tuple(row[j] for row in self.m)

    @staticmethod
    def identity(n):
        return QMatrix(
            [Fraction(int(i == j)) for j in range(n)] for i in range(n)
        )

    @staticmethod
    def zero(rows, cols):
        return QMatrix([Fraction(0)] * cols for _ in range(rows))

    @staticmethod
    def diagonal(entries):
        entries = [_q(x) for x in entries]
        n = len(entries)
        return QMatrix(
            [entries[i] if i == j else Fraction(0) for j in range(n)]
            for i in range(n)
        )

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [str(x) for row in self.m for x in row],
        }

    @staticmethod
    def from_json(obj):
        r, c = obj["rows"], obj["cols"]
        flat = [Fraction(str(x)) for x in obj["entries"]]
        if len(flat) != r * c:
            raise DimensionMismatch("entry count does not match rows*cols")
        return QMatrix(flat[i * c : (i + 1) * c] for i in range(r))


@dataclass(frozen=True)
class Inertia:
    """Counts of positive, negative and zero eigenvalues of a symmetric matrix."""

    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dimension(self):
        return self.n_pos + self.n_neg + self.n_zero

    @property
    def net_signature(self):
        return self.n_pos - self.n_neg

    def as_tuple(self):
        return (self.n_pos, self.n_neg, self.n_zero)


def det(m: QMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination on a cleared-
    denominator integer copy."""
    if not m.is_square:
        raise NonSquare("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = []
    scale = 1
    for row in m.m:
        d = math.lcm(*(x.denominator for x in row))
        scale *= d
        a.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def inertia(m: QMatrix) -> Inertia:
    """Exact inertia via congruence diagonalization (Sylvester's law).

    Symmetric Gaussian elimination; a zero diagonal pivot with a nonzero
    off-diagonal entry is resolved by the row+column addition congruence.
    """
    if not m.is_symmetric:
        raise NotSymmetric("inertia requires a symmetric matrix")
    n = m.rows
    a = [list(row) for row in m.m]
    active = list(range(n))
    n_pos = n_neg = n_zero = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            off = None
            for idx, i in enumerate(active):
                for j in active[idx + 1 :]:
                    if a[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                n_zero += len(active)
                break
            i, j = off
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            n_pos += 1
        else:
            n_neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f == 0:
                continue
            for j in active:
                a[i][j] -= f * a[piv][j]
        for i in active:
            a[i][piv] = Fraction(0)
            a[piv][i] = Fraction(0)
    return Inertia(n_pos, n_neg, n_zero)


def count_eigs_below(m: QMatrix, t) -> int:
    """Number of eigenvalues strictly below the rational probe t."""
    if not m.is_symmetric:
        raise NotSymmetric("eigenvalue counting requires a symmetric matrix")
    shifted = m - QMatrix.identity(m.rows).scale(_q(t))
    return inertia(shifted).n_neg


def rank_of_matrix(m: QMatrix) -> int:
    a = [list(row) for row in m.m]
    rank = 0
    col = 0
    rows, cols = m.rows, m.cols
    while rank < rows and col < cols:
        piv = next((i for i in range(rank, rows) if a[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, rows):
            f = a[i][col] / p
            if f:
                for j in range(col, cols):
                    a[i][j] -= f * a[rank][j]
        rank += 1
        col += 1
    return rank


def rref(m: QMatrix):
    """Reduced row echelon form; returns (rows as lists, pivot column list)."""
    a = [list(row) for row in m.m]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def kernel_basis(m: QMatrix):
    """Basis of the right null space {v : m v = 0}, as tuples of Fractions."""
    a, pivots = rref(m)
    cols = m.cols
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(tuple(v))
    return basis


def row_space_basis_indices(m: QMatrix):
    """Indices of a maximal independent set of rows, greedy in row order."""
    reduced = []
    chosen = []
    for idx in range(m.rows):
        v = list(m.m[idx])
        for lead, pivot_row in reduced:
            if v[lead] != 0:
                f = v[lead]
                v = [x - f * y for x, y in zip(v, pivot_row)]
        lead = next((j for j, x in enumerate(v) if x != 0), None)
        if lead is None:
            continue
        p = v[lead]
        v = [x / p for x in v]
        reduced.append((lead, v))
        chosen.append(idx)
    return chosen


def solve(m: QMatrix, b):
    """Solve m x = b exactly for square nonsingular m."""
    if not m.is_square:
        raise NonSquare("solve requires a square matrix")
    n = m.rows
    a = [list(row) + [_q(x)] for row, x in zip(m.m, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise DimensionMismatch("singular system")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices 0..n-1; parallel edges allowed, loops allowed
    at construction (rejected by operations whose contract requires looplessness)."""

    vertices: int
    edges: tuple

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise DimensionMismatch("edge endpoint out of range")
        object.__setattr__(self, "edges", edges)

    @property
    def has_loop(self):
        return any(u == v for u, v in self.edges)

    def is_connected(self):
        if self.vertices <= 1:
            return True
        parent = list(range(self.vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        root = find(0)
        return all(find(v) == root for v in range(self.vertices))

    def to_json(self):
        return {"vertices": self.vertices, "edges": [list(e) for e in self.edges]}

    @staticmethod
    def from_json(obj):
        return Graph(obj["vertices"], tuple(tuple(e) for e in obj["edges"]))


def laplacian(graph: Graph) -> QMatrix:
    """Graph Laplacian: degrees on the diagonal, minus edge multiplicity off it."""
    if graph.has_loop:
        raise LoopEdge("Laplacian is defined for loopless graphs")
    n = graph.vertices
    a = [[0] * n for _ in range(n)]
    for u, v in graph.edges:
        a[u][u] += 1
        a[v][v] += 1
        a[u][v] -= 1
        a[v][u] -= 1
    return QMatrix(a)


def incidence_matrix(graph: Graph) -> QMatrix:
    """Signed incidence matrix: +1 at the smaller endpoint, -1 at the larger."""
    if graph.has_loop:
        raise LoopEdge("incidence matrix requires a loopless graph")
    n = graph.vertices
    cols = []
    for u, v in graph.edges:
        lo, hi = (u, v) if u < v else (v, u)
        col = [0] * n
        col[lo] = 1
        col[hi] = -1
        cols.append(col)
    return QMatrix(zip(*cols)) if cols else QMatrix.zero(n, 0)


def reduced_incidence_matrix(graph: Graph) -> QMatrix:
    """Incidence matrix with the last vertex row removed."""
    b = incidence_matrix(graph)
    return b.submatrix(range(b.rows - 1), range(b.cols))


def spanning_tree_count(graph: Graph) -> int:
    """Matrix-tree count: determinant of the reduced Laplacian."""
    if graph.has_loop:
        raise LoopEdge("spanning tree counting requires a loopless graph")
    if not graph.is_connected():
        raise Disconnected("graph is not connected")
    if graph.vertices == 1:
        return 1
    lap = laplacian(graph)
    reduced = lap.submatrix(range(lap.rows - 1), range(lap.cols - 1))
    value = det(reduced)
    assert value.denominator == 1
    return int(value)
