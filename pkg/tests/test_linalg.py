import random
from fractions import Fraction

import pytest

from rackkit.coalgebra import reduce as reduce_coalgebra
from rackkit.linalg import (
    SparseMat,
    SparseVec,
    Span,
    image_basis,
    kernel_basis,
    rref,
    solve_coordinates,
)
from rackkit.rack import builtin_nc5
from rackkit.scalars import DualScalar

from .oracles import dense_rank, span_growth_ranks

F = Fraction


def dense(m: SparseMat):
    return [[m.entry(i, j) for j in range(m.ncols)] for i in range(m.nrows)]


def rand_mat(rng, nrows, ncols, density=0.5):
    rows = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < density:
                rows.setdefault(i, {})[j] = F(rng.randint(-5, 5))
    return SparseMat(nrows, ncols, rows)


def test_rref_identity():
    m = SparseMat.identity(2)
    red, pivots, rank = rref(m)
    assert rank == 2 and pivots == (0, 1)
    assert red == m


def test_rref_proportional_rows():
    m = SparseMat.from_entries(2, 2, [(0, 0, F(1)), (0, 1, F(2)), (1, 0, F(2)), (1, 1, F(4))])
    _, _, rank = rref(m)
    assert rank == 1


def test_rref_nc5_reduced_coproduct_rank_vs_span_growth():
    # columns of the reduced coproduct, rank checked against an
    # independent column-by-column span-growth oracle
    red = reduce_coalgebra(builtin_nc5().coalgebra)
    dim = red.dim
    cols = []
    for k in range(dim):
        col = [F(0)] * (dim * dim)
        for (i, j), v in red.comul[k].items():
            col[i * dim + j] += v
        cols.append(col)
    m = SparseMat.from_columns(
        dim * dim,
        [SparseVec(dim * dim, {i: v for i, v in enumerate(c) if v}) for c in cols],
    )
    _, _, rank = rref(m)
    growth = span_growth_ranks(cols)
    assert rank == growth[-1] == 1


def test_rref_idempotent_and_rank_transpose():
    rng = random.Random(5)
    for _ in range(25):
        m = rand_mat(rng, rng.randint(1, 6), rng.randint(1, 6))
        red, _, rank = rref(m)
        red2, _, rank2 = rref(red)
        assert red2 == red and rank2 == rank
        assert rref(m.transpose())[2] == rank


def test_rref_rejects_dual_numbers():
    m = SparseMat(1, 1, {0: {0: DualScalar(1, 1)}})
    with pytest.raises(TypeError):
        rref(m)


def test_kernel_and_image():
    rng = random.Random(11)
    for _ in range(25):
        m = rand_mat(rng, rng.randint(1, 5), rng.randint(1, 5))
        ker = kernel_basis(m)
        _, _, rank = rref(m)
        assert len(ker) == m.ncols - rank
        for v in ker:
            assert m.apply(v).is_zero()
        img = image_basis(m)
        assert len(img) == rank


def test_span_trivial_intersection():
    e1 = SparseVec.unit(2, 0)
    e2 = SparseVec.unit(2, 1)
    assert Span(2, [e1]).intersect(Span(2, [e2])).dim == 0


def test_span_sum_and_membership():
    # span{e1+e2, e1-e2} = k^2 in characteristic 0
    v1 = SparseVec(2, {0: F(1), 1: F(1)})
    v2 = SparseVec(2, {0: F(1), 1: F(-1)})
    s = Span(2, [v1, v2])
    assert s.dim == 2
    assert s.contains(SparseVec.unit(2, 0))


def test_membership_iff_rank_growth():
    rng = random.Random(17)
    for _ in range(30):
        dim = rng.randint(2, 5)
        gens = [rand_mat(rng, dim, 1).column(0) for _ in range(rng.randint(1, 4))]
        s = Span(dim, gens)
        v = rand_mat(rng, dim, 1).column(0)
        dense_gens = [[g.get(i) for i in range(dim)] for g in gens]
        grown = dense_rank(dense_gens + [[v.get(i) for i in range(dim)]])
        assert s.contains(v) == (grown == s.dim)


def test_span_dimension_mismatch():
    with pytest.raises(ValueError):
        Span(2, [SparseVec.unit(2, 0)]).intersect(Span(3, [SparseVec.unit(3, 0)]))


def test_intersection_nontrivial():
    a = Span(3, [SparseVec(3, {0: F(1)}), SparseVec(3, {1: F(1)})])
    b = Span(3, [SparseVec(3, {1: F(1)}), SparseVec(3, {2: F(1)})])
    inter = a.intersect(b)
    assert inter.dim == 1
    assert inter.contains(SparseVec(3, {1: F(1)}))


def test_solve_coordinates():
    cols = [SparseVec(2, {0: F(1), 1: F(1)}), SparseVec(2, {0: F(1), 1: F(-1)})]
    coords = solve_coordinates(cols, SparseVec(2, {0: F(1)}))
    assert coords == [F(1, 2), F(1, 2)]
    assert solve_coordinates([cols[0]], SparseVec(2, {0: F(1)})) is None


def test_vector_invariants():
    with pytest.raises(ValueError):
        SparseVec.from_pairs(3, [(1, F(1)), (1, F(2))])
    with pytest.raises(ValueError):
        SparseVec.from_pairs(3, [(0, F(0))])
    v = SparseVec(3, {0: F(1), 2: F(0)})
    assert v.entries == {0: F(1)}
