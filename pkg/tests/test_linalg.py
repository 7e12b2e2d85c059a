from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from logcavity.errors import Disconnected, LoopEdge, NonSquare, NotSymmetric
from logcavity.linalg import (
    Graph,
    Inertia,
    QMatrix,
    count_eigs_below,
    det,
    incidence_matrix,
    inertia,
    kernel_basis,
    laplacian,
    rank_of_matrix,
    reduced_incidence_matrix,
    spanning_tree_count,
)

K3 = Graph(3, ((0, 1), (0, 2), (1, 2)))
K4 = Graph(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)))
K4_ADJ = QMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])


def brute_force_spanning_trees(graph):
    n = graph.vertices
    count = 0
    for combo in combinations(range(len(graph.edges)), n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for i in combo:
            u, v = graph.edges[i]
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            count += 1
    return count


class TestDet:
    def test_identity(self):
        assert det(QMatrix.identity(3)) == 1

    def test_2x2(self):
        assert det(QMatrix([[2, 1], [1, 3]])) == 5

    def test_reduced_laplacian_k3_vs_enumeration(self):
        lap = laplacian(K3)
        reduced = lap.submatrix([0, 1], [0, 1])
        assert det(reduced) == brute_force_spanning_trees(K3) == 3

    def test_rational_entries(self):
        m = QMatrix([[Fraction(1, 2), 1], [1, Fraction(4, 3)]])
        assert det(m) == Fraction(1, 2) * Fraction(4, 3) - 1

    def test_non_square(self):
        with pytest.raises(NonSquare):
            det(QMatrix([[1, 2, 3], [4, 5, 6]]))

    def test_singular(self):
        assert det(QMatrix([[1, 2], [2, 4]])) == 0


class TestInertia:
    def test_diagonal(self):
        assert inertia(QMatrix.diagonal([1, -2, 0])) == Inertia(1, 1, 1)

    def test_k4_adjacency(self):
        # eigenvalues 3, -1, -1, -1
        assert inertia(K4_ADJ) == Inertia(1, 3, 0)

    def test_rank2_hessian(self):
        h = QMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        assert inertia(h) == Inertia(1, 2, 0)

    def test_zero_diagonal_block(self):
        assert inertia(QMatrix([[0, 1], [1, 0]])) == Inertia(1, 1, 0)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            inertia(QMatrix([[0, 1], [2, 0]]))

    def test_det_sign_consistency(self, rng):
        for _ in range(40):
            n = rng.randint(1, 5)
            m = QMatrix(
                [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            )
            m = m + m.T
            iner = inertia(m)
            d = det(m)
            if iner.n_zero:
                assert d == 0
            else:
                assert (d > 0) == (iner.n_neg % 2 == 0)


@st.composite
def congruence_instances(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = draw(st.integers(min_value=-5, max_value=5))
            entries[i][j] = v
            entries[j][i] = v
    p = [
        [draw(st.integers(min_value=-3, max_value=3)) for _ in range(n)]
        for _ in range(n)
    ]
    return QMatrix(entries), QMatrix(p)


class TestSylvester:
    @settings(max_examples=80, deadline=None)
    @given(congruence_instances())
    def test_congruence_invariance(self, pair):
        m, p = pair
        assume(det(p) != 0)
        assert inertia(p.T * m * p) == inertia(m)


class TestEigCounts:
    def test_diagonal_probe(self):
        assert count_eigs_below(QMatrix.diagonal([0, 1, 2]), Fraction(3, 2)) == 2

    def test_k4_at_zero(self):
        assert count_eigs_below(K4_ADJ, 0) == 3

    def test_hand_computed_2x2(self):
        # eigenvalues of [[2,1],[1,3]] are (5 +- sqrt 5)/2, one below 2
        assert count_eigs_below(QMatrix([[2, 1], [1, 3]]), 2) == 1

    def test_cauchy_interlacing(self, rng):
        for _ in range(25):
            n = rng.randint(2, 5)
            m = QMatrix(
                [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            )
            m = m + m.T
            drop = rng.randrange(n)
            keep = [i for i in range(n) if i != drop]
            sub = m.submatrix(keep, keep)
            probes = [Fraction(t, 2) for t in range(-25, 26)]
            for t in probes:
                big = count_eigs_below(m, t)
                small = count_eigs_below(sub, t)
                assert big - 1 <= small <= big


class TestLaplacian:
    def test_k3(self):
        assert laplacian(K3) == QMatrix(
            [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
        )

    def test_doubled_edge(self):
        g = Graph(2, ((0, 1), (0, 1)))
        assert laplacian(g) == QMatrix([[2, -2], [-2, 2]])

    def test_loop_rejected(self):
        with pytest.raises(LoopEdge):
            laplacian(Graph(2, ((0, 0),)))

    def test_equals_bbt(self, rng):
        for _ in range(15):
            n = rng.randint(2, 6)
            edges = []
            for _ in range(rng.randint(1, 9)):
                u = rng.randrange(n)
                v = rng.randrange(n)
                if u != v:
                    edges.append((u, v))
            if not edges:
                continue
            g = Graph(n, tuple(edges))
            b = incidence_matrix(g)
            assert b * b.T == laplacian(g)


class TestSpanningTrees:
    def test_k3(self):
        assert spanning_tree_count(K3) == 3

    def test_tree(self):
        assert spanning_tree_count(Graph(4, ((0, 1), (1, 2), (2, 3)))) == 1

    def test_k4_vs_enumeration(self):
        assert spanning_tree_count(K4) == brute_force_spanning_trees(K4) == 16

    def test_multigraph(self):
        g = Graph(2, ((0, 1), (0, 1), (0, 1)))
        assert spanning_tree_count(g) == 3

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            spanning_tree_count(Graph(4, ((0, 1), (2, 3))))


class TestKernels:
    def test_kernel_solves(self, rng):
        for _ in range(20):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 5)
            m = QMatrix(
                [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
            )
            basis = kernel_basis(m)
            assert len(basis) == cols - rank_of_matrix(m)
            for v in basis:
                assert all(x == 0 for x in m.apply(v))

    def test_reduced_incidence_columns(self):
        ri = reduced_incidence_matrix(K3)
        assert ri.rows == 2 and ri.cols == 3
