from fractions import Fraction
from itertools import permutations, product

import pytest

from rackkit.coalgebra import check_coassociative
from rackkit.errors import StructureError, TruncationOverflow
from rackkit.hopf import (
    adjoint_action,
    check_filtered_bialgebra,
    closure_under_adjoint,
    cyclic_group_algebra,
    group_algebra,
    polynomial_hopf,
    polynomial_hopf_k3,
    rack_from_hopf,
    symmetric_group_algebra,
)
from rackkit.rack import check_rack_bialgebra, report_ok
from rackkit.tensors import unit_vec, vadd, vsub

from .oracles import conjugate

F = Fraction
ONE = F(1)


def all_ok(report):
    return all(v.ok for v in report.values())


def test_trivial_group():
    h = group_algebra(["e"], {(0, 0): 0})
    assert h.dim == 1
    assert h.antipode[0] == unit_vec(0)
    assert all_ok(check_filtered_bialgebra(h))


def test_z2_antipode_is_identity():
    h = cyclic_group_algebra(2)
    assert [h.antipode[i] for i in range(2)] == [unit_vec(0), unit_vec(1)]
    assert all_ok(check_filtered_bialgebra(h))


def test_s3_antipode_inverse_table():
    h = symmetric_group_algebra(3)
    assert all_ok(check_filtered_bialgebra(h))
    # table-lookup oracle: S(g) is the group inverse
    perms = sorted(permutations(range(3)))
    for i, p in enumerate(perms):
        inv = tuple(sorted(range(3), key=lambda k: p[k]))
        j = perms.index(inv)
        assert h.antipode[i] == unit_vec(j)


def test_group_algebra_rejects_non_groups():
    # total but unit-free table
    with pytest.raises(StructureError, match="unit"):
        group_algebra(["a", "b"], {(i, j): 0 for i in range(2) for j in range(2)})
    # not associative
    tbl = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    with pytest.raises(StructureError):
        group_algebra(["e", "a"], tbl)
    # missing entries
    with pytest.raises(StructureError, match="total"):
        group_algebra(["e", "a"], {(0, 0): 0})


def test_group_algebras_always_cocommutative_commutative_iff_abelian():
    # group-like coproducts are symmetric for any group; it is the
    # product table that distinguishes the abelian case
    z2 = cyclic_group_algebra(2)
    s3 = symmetric_group_algebra(3)
    assert z2.is_cocommutative() and s3.is_cocommutative()
    assert all(
        z2.mul_basis(i, j) == z2.mul_basis(j, i) for i, j in product(range(2), repeat=2)
    )
    assert any(
        s3.mul_basis(i, j) != s3.mul_basis(j, i) for i, j in product(range(6), repeat=2)
    )


def test_adjoint_group_conjugation():
    h = symmetric_group_algebra(3)
    act = adjoint_action(h)
    perms = sorted(permutations(range(3)))
    for i, j in product(range(6), repeat=2):
        got = act(unit_vec(i), unit_vec(j))
        expected = perms.index(conjugate(perms[i], perms[j]))
        assert got == unit_vec(expected)
        # counit multiplicativity of the action on basis elements
        assert h.eps(got) == h.counit[i] * h.counit[j]


def test_adjoint_abelian_trivial():
    h = cyclic_group_algebra(4)
    act = adjoint_action(h)
    for i, j in product(range(4), repeat=2):
        assert act(unit_vec(i), unit_vec(j)) == unit_vec(i)


def test_adjoint_truncated_polynomial_counit_trivial():
    h = polynomial_hopf(("x",), 4)
    act = adjoint_action(h)
    for i in range(h.dim):
        for j in range(h.dim):
            if h.degrees[i] + h.degrees[j] <= h.trunc:
                want = unit_vec(i) if h.counit[j] else {}
                assert act(unit_vec(i), unit_vec(j)) == want


def test_rack_from_hopf_z2():
    h = cyclic_group_algebra(2)
    r = rack_from_hopf(h, [vsub(unit_vec(1), unit_vec(0))])
    assert r.dim == 2
    assert report_ok(check_rack_bialgebra(r))
    assert r.shelf_basis(1, 1) == {}  # trivial since the group is abelian


def test_rack_from_hopf_s3_conjugacy_class():
    h = symmetric_group_algebra(3)
    perms = sorted(permutations(range(3)))
    tr = perms.index((1, 0, 2))
    r = rack_from_hopf(h, [vsub(unit_vec(tr), unit_vec(0))])
    # closure = transpositions shifted by -1, so dim = 1 + 3
    assert r.dim == 4
    assert report_ok(check_rack_bialgebra(r))
    # group-likes 1 + (tau - 1) conjugate exactly like the permutations
    transpositions = [p for p in perms if sorted(p) == [0, 1, 2] and sum(p[i] != i for i in range(3)) == 2]
    label_of = {}
    for idx in range(1, 4):
        label_of[r.labels[idx]] = idx
    for p in transpositions:
        for q in transpositions:
            gi = label_of[h.labels[perms.index(p)]]
            gj = label_of[h.labels[perms.index(q)]]
            got = r.shelf(vadd(unit_vec(0), unit_vec(gi)), vadd(unit_vec(0), unit_vec(gj)))
            conj = conjugate(p, q)
            expected = vadd(unit_vec(0), unit_vec(label_of[h.labels[perms.index(conj)]]))
            assert got == expected


def test_rack_from_hopf_degree2_filtration():
    # seed span{x, x^2} inside truncated k[x]: the shelf product is
    # counit-trivial on the closure
    h = polynomial_hopf(("x",), 4)
    r = rack_from_hopf(h, [unit_vec(1), unit_vec(2)])
    assert r.dim == 3
    assert report_ok(check_rack_bialgebra(r))
    for i in range(1, 3):
        for j in range(1, 3):
            assert r.shelf_basis(i, j) == {}
    assert r.coalgebra.comul[2] == {(0, 2): ONE, (1, 1): F(2), (2, 0): ONE}


def test_rack_from_hopf_requires_cocommutative():
    h = polynomial_hopf_k3(2)
    with pytest.raises(StructureError, match="cocommutative"):
        rack_from_hopf(h, [unit_vec(h.labels.index("Y"))])


def test_closure_requires_ker_eps():
    h = cyclic_group_algebra(2)
    with pytest.raises(StructureError, match="ker eps"):
        closure_under_adjoint(h, [unit_vec(1)])


def test_polynomial_hopf_k3_structure():
    h = polynomial_hopf_k3(3)
    ix, iy, iz = (h.labels.index(v) for v in ("X", "Y", "Z"))
    assert h.comul[iy] == {(h.unit_index, iy): ONE, (iy, h.unit_index): ONE}
    assert h.comul[ix][(iy, iz)] == ONE
    yz = h.labels.index("Y*Z")
    assert h.antipode[ix] == {(ix,): -ONE, (yz,): ONE}
    assert not h.is_cocommutative()


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_polynomial_hopf_k3_coassociative(d):
    ok, _ = check_coassociative(polynomial_hopf_k3(d).coalgebra())
    assert ok


def test_filtered_checks_pass_on_k3():
    rep = check_filtered_bialgebra(polynomial_hopf_k3(3))
    assert all_ok(rep)
    assert rep["assoc"].skipped > 0  # overflowing triples are counted


def test_truncation_overflow_and_zero_mode():
    h = polynomial_hopf(("x",), 2)
    with pytest.raises(TruncationOverflow):
        h.mul_basis(2, 1)  # x^2 * x
    hz = polynomial_hopf(("x",), 2, overflow="zero")
    assert hz.mul_basis(2, 1) == {}
    with pytest.raises(TruncationOverflow):
        hz.mul_basis(2, 1, strict=True)  # lossy pairs stay off-limits strictly


def test_filtration_degrees():
    h = polynomial_hopf(("x", "y"), 3)
    assert h.degree_of(unit_vec(h.labels.index("x*y"))) == 2
    v = vadd(unit_vec(h.unit_index), unit_vec(h.labels.index("x")))
    assert h.degree_of(v) == 1
