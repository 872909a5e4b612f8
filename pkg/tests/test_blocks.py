import itertools

import numpy as np
import pytest

from blockscope.ff import Field, rank
from blockscope.hopf import (
    cyclic_group,
    dihedral8,
    group_algebra,
    quaternion8,
    symmetric3,
    u_sl2,
)
from blockscope.blocks import (
    block_decompose,
    center_basis,
    is_linearly_reductive,
    lies_in_block,
    local_principal_structure,
    subgroup_table,
)
from blockscope.modrep import AlgebraOps, radical as algebra_radical

F2 = Field(2)
F3 = Field(3)
F4 = Field(2, 2)


def brute_force_primitive_idempotents(alg, Z):
    """Oracle: enumerate the (small) center and find its primitive idempotents."""
    F = alg.field
    d = Z.shape[0]
    assert d <= 6
    idems = []
    for coeffs in itertools.product(range(F.q), repeat=d):
        v = np.zeros(alg.dim, dtype=np.int64)
        for c, row in zip(coeffs, Z):
            v = F.add(v, F.mul(c, row))
        if not np.any(v):
            continue
        if np.array_equal(alg.elt_mul(v, v), v):
            idems.append(v)
    prims = []
    for e in idems:
        smaller = [
            f for f in idems
            if not np.array_equal(f, e) and np.array_equal(alg.elt_mul(e, f), f)
        ]
        if not smaller:
            prims.append(e)
    return prims


def test_ks3_p2_two_blocks():
    a = group_algebra(symmetric3(), F2)
    d = block_decompose(a)
    dims = sorted(b.dim for b in d.blocks)
    assert dims == [2, 4]
    assert d.blocks[d.principal_index].dim == 2
    # oracle agreement
    Z = center_basis(a)
    prims = brute_force_primitive_idempotents(a, Z)
    got = sorted(tuple(int(x) for x in e) for e in d.idempotents)
    want = sorted(tuple(int(x) for x in e) for e in prims)
    assert got == want
    # 4-dim block is a simple algebra: zero radical
    b4 = next(b for b in d.blocks if b.dim == 4)
    assert algebra_radical(b4).shape[0] == 0
    assert center_basis(b4).shape[0] == 1


def test_ks3_p3_single_block():
    a = group_algebra(symmetric3(), F3)
    d = block_decompose(a)
    assert len(d.blocks) == 1 and d.blocks[0].dim == 6
    Z = center_basis(a)
    prims = brute_force_primitive_idempotents(a, Z)
    assert len(prims) == 1


def test_kz4_single_block():
    a = group_algebra(cyclic_group(4), F2)
    d = block_decompose(a)
    assert len(d.blocks) == 1 and d.blocks[0].dim == 4


def test_usl2_blocks():
    a = u_sl2(F3)
    d = block_decompose(a)
    dims = sorted(b.dim for b in d.blocks)
    assert dims == [9, 18]
    b9 = next(b for b in d.blocks if b.dim == 9)
    assert algebra_radical(b9).shape[0] == 0  # simple algebra
    assert center_basis(b9).shape[0] == 1
    assert d.blocks[d.principal_index].dim == 18


def test_kz6_needs_f4():
    g = cyclic_group(2).product(cyclic_group(3))
    a2 = group_algebra(g, F2)
    d = block_decompose(a2)
    assert d.extended and d.algebra.field.q == 4
    assert sorted(b.dim for b in d.blocks) == [2, 2, 2]
    a4 = group_algebra(g, F4)
    d4 = block_decompose(a4)
    assert not d4.extended
    assert sorted(b.dim for b in d4.blocks) == [2, 2, 2]
    assert d4.blocks[d4.principal_index].dim == 2


def test_lies_in_block():
    a = group_algebra(symmetric3(), F2)
    d = block_decompose(a)
    ops = AlgebraOps(a)
    triv = ops.simples[ops.triv_index]
    assert lies_in_block(triv, d, d.principal_index)
    other = 1 - d.principal_index
    assert not lies_in_block(triv, d, other)
    s2 = next(s for s in ops.simples if s.dim == 2)
    four = next(i for i, b in enumerate(d.blocks) if b.dim == 4)
    assert lies_in_block(s2, d, four)


def test_linearly_reductive():
    assert is_linearly_reductive(group_algebra(cyclic_group(3), F2))
    assert not is_linearly_reductive(group_algebra(cyclic_group(2), F2))
    assert is_linearly_reductive(group_algebra(cyclic_group(1), F2))


def test_local_principal_structure_z6():
    g = cyclic_group(2).product(cyclic_group(3))
    rep = local_principal_structure(g, F4)
    assert rep.ok
    assert len(rep.normal_subgroup) == 3
    assert rep.quotient_order == 2


def test_local_principal_structure_s3():
    rep = local_principal_structure(symmetric3(), F2)
    assert rep.ok
    assert len(rep.normal_subgroup) == 3  # the 3-cycle subgroup
    assert rep.principal_dim == 2


def test_local_principal_structure_p_group():
    rep = local_principal_structure(dihedral8(), F2)
    assert rep.ok
    assert rep.normal_subgroup == [0]
    assert rep.principal_dim == 8 and rep.quotient_order == 8


def test_local_principal_structure_rejects_nonlocal():
    # kS3 at p=3 has two simples in its single block
    with pytest.raises(ValueError):
        local_principal_structure(symmetric3(), F3)


def test_center_dims():
    assert center_basis(group_algebra(dihedral8(), F2)).shape[0] == 5
    assert center_basis(group_algebra(quaternion8(), F2)).shape[0] == 5
    a = group_algebra(cyclic_group(4), F2)
    assert center_basis(a).shape[0] == 4  # commutative


def test_simples_and_radical():
    a = group_algebra(symmetric3(), F2)
    ops = AlgebraOps(a)
    assert sorted(s.dim for s in ops.simples) == [1, 2]
    assert ops.radical.shape[0] == 1  # dim kG - dim(k x M_2) = 6 - 5
    a3 = group_algebra(symmetric3(), F3)
    ops3 = AlgebraOps(a3)
    assert sorted(s.dim for s in ops3.simples) == [1, 1]
    # p-group: only the trivial simple
    opsd = AlgebraOps(group_algebra(dihedral8(), F2))
    assert [s.dim for s in opsd.simples] == [1]
    assert opsd.radical.shape[0] == 7


def test_pims():
    a = group_algebra(symmetric3(), F2)
    ops = AlgebraOps(a)
    dims = sorted(p.dim for p in ops.pims)
    assert dims == [2, 2]  # P(k) = principal block, P(S2) = S2
    assert sum(p.dim * s.dim for p, s in zip(ops.pims, ops.simples)) == 6
    au = u_sl2(F3)
    opsu = AlgebraOps(au)
    assert sorted(s.dim for s in opsu.simples) == [1, 2, 3]
    pdims = {s.dim: p.dim for s, p in zip(opsu.simples, opsu.pims)}
    assert pdims == {1: 6, 2: 6, 3: 3}
