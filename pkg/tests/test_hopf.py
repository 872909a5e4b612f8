import numpy as np
import pytest

from blockscope.ff import Field
from blockscope.hopf import (
    GroupTable,
    cyclic_group,
    dihedral8,
    elementary_abelian,
    group_algebra,
    product_hopf,
    quaternion8,
    symmetric3,
    truncated_poly,
    u_sl2,
    validate_hopf,
)

F2 = Field(2)
F3 = Field(3)
F4 = Field(2, 2)
F5 = Field(5)


def brute_conjugacy_count(g: GroupTable) -> int:
    """Oracle: count conjugacy classes directly from the table."""
    n = g.order
    seen = set()
    count = 0
    for i in range(n):
        if i in seen:
            continue
        orb = {int(g.table[x, g.table[i, g.inverse[x]]]) for x in range(n)}
        seen |= orb
        count += 1
    return count


def test_group_tables_valid():
    for g in [cyclic_group(2), cyclic_group(4), dihedral8(), quaternion8(), symmetric3()]:
        assert g.table.shape == (g.order, g.order)
    assert symmetric3().is_abelian() is False
    assert cyclic_group(6).is_abelian() is True
    assert dihedral8().element_order(1) == 4


def test_group_table_rejects_bad_row():
    T = cyclic_group(3).table.copy()
    T[1, 1] = 1  # break associativity/latin property
    with pytest.raises(ValueError):
        GroupTable(T)


def test_group_algebra_axioms():
    for g, F in [
        (cyclic_group(2), F2),
        (dihedral8(), F2),
        (symmetric3(), F2),
        (symmetric3(), F3),
        (quaternion8(), F2),
    ]:
        a = group_algebra(g, F)
        v = validate_hopf(a)
        assert v.ok, v.failed()


def test_group_algebra_z2_dim_and_maps():
    a = group_algebra(cyclic_group(2), F2)
    assert a.dim == 2
    assert validate_hopf(a).ok
    # s^2 = id for group algebras
    s3 = group_algebra(symmetric3(), F2)
    S = s3.antipode
    assert np.array_equal(F2.matmul(S, S), F2.eye(6))


def test_d8_center_dimension_matches_class_count():
    g = dihedral8()
    a = group_algebra(g, F2)
    # center of kG has dimension = number of conjugacy classes
    from blockscope.blocks import center

    Z = center(a)
    assert Z.shape[0] == brute_conjugacy_count(g) == 5


def test_truncated_poly():
    for p, F in [(2, F2), (3, F3), (5, F5)]:
        a = truncated_poly(p, F)
        assert a.dim == p
        assert validate_hopf(a).ok, validate_hopf(a).failed()
    a3 = truncated_poly(3, F3)
    # t * t^2 = 0
    t = a3.basis_vec(1)
    t2 = a3.basis_vec(2)
    assert not np.any(a3.elt_mul(t, t2))


def test_truncated_poly_p2_isomorphic_to_kz2():
    a = truncated_poly(2, F2)
    b = group_algebra(cyclic_group(2), F2)
    # t -> 1 + g is an algebra isomorphism
    phi = np.array([[1, 1], [0, 1]])  # columns: images of 1, t
    for i in range(2):
        for j in range(2):
            lhs = F2.matmul(phi, a.elt_mul(a.basis_vec(i), a.basis_vec(j))[:, None])[:, 0]
            rhs = b.elt_mul(phi[:, i], phi[:, j])
            assert np.array_equal(lhs, rhs)


def test_product_hopf():
    a = group_algebra(cyclic_group(2), F4)
    b = group_algebra(cyclic_group(3), F4)
    ab = product_hopf(a, b)
    assert ab.dim == 6
    assert validate_hopf(ab).ok
    # product with the trivial algebra is the same algebra up to relabeling
    triv = group_algebra(cyclic_group(1), F4)
    at = product_hopf(a, triv)
    assert at.dim == a.dim
    assert np.array_equal(at.mult, a.mult)


def test_product_field_mismatch():
    a = group_algebra(cyclic_group(2), F2)
    b = group_algebra(cyclic_group(3), F4)
    with pytest.raises(ValueError):
        product_hopf(a, b)


def test_u_sl2_dim_and_axioms():
    a = u_sl2(F3)
    assert a.dim == 27
    v = validate_hopf(a)
    assert v.ok, v.failed()


def test_u_sl2_relations():
    a = u_sl2(F3)
    e = a.basis_vec(9)  # (1,0,0)
    h = a.basis_vec(3)  # (0,1,0)
    f = a.basis_vec(1)  # (0,0,1)
    assert a.labels[9] == "e" and a.labels[3] == "h" and a.labels[1] == "f"
    ef = a.elt_mul(e, f)
    fe = a.elt_mul(f, e)
    assert np.array_equal(F3.sub(ef, fe), h)
    he = a.elt_mul(h, e)
    eh = a.elt_mul(e, h)
    assert np.array_equal(F3.sub(he, eh), F3.mul(2, e))
    # restricted relations
    e3 = a.elt_mul(a.elt_mul(e, e), e)
    assert not np.any(e3)
    h3 = a.elt_mul(a.elt_mul(h, h), h)
    assert np.array_equal(h3, h)


def test_u_sl2_wrong_characteristic():
    with pytest.raises(ValueError):
        u_sl2(F2)


def test_fault_injection_mult():
    a = group_algebra(symmetric3(), F2)
    bad = a.mult.copy()
    bad[1, 2, 3] ^= 1
    from blockscope.hopf import HopfAlgebraData

    b = HopfAlgebraData(F2, bad, a.unit, a.comult, a.counit, a.antipode)
    v = validate_hopf(b)
    names = [c.name for c in v.failed()]
    assert "associativity" in names or "comult-multiplicative" in names
    assoc = [c for c in v.checks if c.name == "associativity"][0]
    if not assoc.ok:
        assert assoc.witness is not None


def test_fault_injection_comult_zero():
    a = group_algebra(cyclic_group(2), F2)
    from blockscope.hopf import HopfAlgebraData

    b = HopfAlgebraData(F2, a.mult, a.unit, np.zeros_like(a.comult), a.counit, a.antipode)
    v = validate_hopf(b)
    assert not v.ok
    assert any("counit" in c.name for c in v.failed())


def test_commutativity_iff_abelian():
    for g, expect in [(cyclic_group(4), True), (dihedral8(), False), (symmetric3(), False)]:
        a = group_algebra(g, F2)
        comm = np.array_equal(a.mult, np.swapaxes(a.mult, 0, 1))
        assert comm == expect == g.is_abelian()


def test_subgroups_of_small_groups():
    assert len(dihedral8().subgroups()) == 10
    assert len(quaternion8().subgroups()) == 6
    assert len(symmetric3().subgroups()) == 6
    e4 = elementary_abelian(2, 2)
    assert len(e4.subgroups()) == 5


def test_quotient_group():
    g = symmetric3()
    n = next(H for H in g.subgroups() if len(H) == 3)
    assert g.is_normal(n)
    q = g.quotient(n)
    assert q.order == 2
