import numpy as np
import pytest

from blockscope.ff import Field
from blockscope.hopf import (
    cyclic_group,
    dihedral8,
    elementary_abelian,
    group_algebra,
    quaternion8,
    symmetric3,
    truncated_poly,
    u_sl2,
)
from blockscope.pipoints import (
    FlatMap,
    Unsupported,
    block_pi_support,
    equivalent,
    example_xN,
    flat_points_of_block,
    flat_test,
    flatness_criteria_sample,
    induced_kernel,
    is_p_point,
    jordan_type,
    p_point_classes,
    rho_star,
    verify_defect,
    verify_equiv,
    verify_homeo_local,
    verify_injective,
    verify_kernel_lemma,
    verify_xN,
)
from blockscope.workspace import Workspace

F2 = Field(2)
F3 = Field(3)
F4 = Field(2, 2)

_WS = {}


def ws_of(name):
    if name not in _WS:
        builders = {
            "kZ2": lambda: Workspace(group_algebra(cyclic_group(2), F2), cap=8),
            "kZ4": lambda: Workspace(group_algebra(cyclic_group(4), F2), cap=8),
            "E4": lambda: Workspace(group_algebra(elementary_abelian(2, 2), F2), cap=8),
            "kD8": lambda: Workspace(group_algebra(dihedral8(), F2), cap=8),
            "kQ8": lambda: Workspace(group_algebra(quaternion8(), F2), cap=8),
            "kS3p2": lambda: Workspace(group_algebra(symmetric3(), F2), cap=10),
            "kS3p3": lambda: Workspace(group_algebra(symmetric3(), F3), cap=10),
        }
        _WS[name] = builders[name]()
    return _WS[name]


def test_flat_test_truncated_poly():
    a = truncated_poly(3, F3)
    t = a.basis_vec(1)
    fm = flat_test(a, t)
    assert fm.flat and fm.jordan == (3,)
    zero = flat_test(a, np.zeros(3, dtype=np.int64))
    assert not zero.flat and zero.jordan == (1, 1, 1)


def test_flat_test_kz4():
    a = group_algebra(cyclic_group(4), F2)
    u = np.array([1, 0, 1, 0])  # 1 + g^2
    fm = flat_test(a, u)
    assert fm.flat and fm.jordan == (2, 2)
    with pytest.raises(ValueError):
        flat_test(a, np.array([0, 1, 0, 0]))  # g is not 2-nilpotent


def test_example_xN_d8_q8():
    for g in (dihedral8(), quaternion8()):
        rep = verify_xN(g, F2)
        assert rep["status"] == "pass", rep
        assert rep["jordan_type"] == [2, 2, 2, 2]
        assert not rep["in_some_proper_subgroup"]
        assert not rep["is_p_point"]
    d8 = dihedral8()
    assert example_xN(d8, F2)["proper_subgroups"] == 9
    with pytest.raises(Unsupported):
        example_xN(cyclic_group(4), F2)


def test_is_p_point_central_involution():
    a = group_algebra(dihedral8(), F2)
    g = a.group
    z = [x for x in g.center_elements() if g.element_order(x) == 2][0]
    u = np.zeros(8, dtype=np.int64)
    u[g.identity] = 1
    u[z] = 1
    fm = flat_test(a, u)
    assert fm.flat
    rep = is_p_point(fm)
    assert rep["is_p_point"]
    assert set(rep["witness"]) >= {0, z}


def test_abelian_targets_flat_implies_p_point():
    ws = ws_of("E4")
    a = ws.algebra
    for u, _ in [(np.array([1, 1, 0, 0]), 1), (np.array([1, 0, 1, 0]), 1), (np.array([1, 1, 1, 1]), 1)]:
        fm = flat_test(a, u)
        if fm.flat:
            assert is_p_point(fm)["is_p_point"]


def test_induced_kernel_kz2_zero():
    ws = ws_of("kZ2")
    a = ws.algebra
    fm = flat_test(a, np.array([1, 1]))
    data = induced_kernel(ws, fm)
    assert data["lemma_kernel"]
    assert data["ideal"].gens == []  # restriction is injective


def test_induced_kernels_e4():
    ws = ws_of("E4")
    a = ws.algebra
    # flat classes at q = 2: kernels (x), (y), (x+y)
    classes, exhausted = __import__(
        "blockscope.pipoints", fromlist=["flat_map_classes"]
    ).flat_map_classes(ws)
    assert exhausted
    ideals = sorted(str(g) for _, fm, _ in classes for g in induced_kernel(ws, fm)["ideal"].gens)
    assert len(classes) == 3
    assert sorted(ideals) == sorted(["x", "y", "x+y"]) or sorted(ideals) == sorted(
        ["x", "y", "x + y"]
    )


def test_kernel_lemma_sweep():
    for name in ["kZ2", "E4", "kD8"]:
        rep = verify_kernel_lemma(ws_of(name))
        assert rep["status"] == "pass", (name, rep)


def test_equivalence_same_map():
    ws = ws_of("E4")
    a = ws.algebra
    fm = flat_test(a, np.array([1, 1, 0, 0]))
    v = equivalent(ws, fm, fm)
    assert v.equivalent_on_family and v.kernels_equal


def test_equivalence_distinguishes_generators():
    ws = ws_of("E4")
    a = ws.algebra
    fa = flat_test(a, np.array([1, 1, 0, 0]))
    fb = flat_test(a, np.array([1, 0, 1, 0]))
    v = equivalent(ws, fa, fb)
    assert not v.equivalent_on_family
    assert v.kernels_equal is False
    # a Carlson module separates them
    carlson_names = [n for n in v.family if n.startswith("carlson")]
    assert any(
        va != vb
        for n, va, vb in zip(v.family, v.verdicts_a, v.verdicts_b)
        if n.startswith("carlson")
    )


def test_verify_equiv_xN_d8():
    ws = ws_of("kD8")
    rep = example_xN(ws.algebra.group, F2)
    fm = flat_test(ws.algebra, rep["flat_map"].u)
    out = verify_equiv(ws, fm)
    assert out["status"] == "pass", out
    assert out["equivalent_on_family"]


def test_verify_equiv_xN_q8():
    ws = ws_of("kQ8")
    rep = example_xN(ws.algebra.group, F2)
    fm = flat_test(ws.algebra, rep["flat_map"].u)
    out = verify_equiv(ws, fm, check_mechanism=False)
    assert out["status"] == "pass", out


def test_verify_equiv_kz2_and_diagonal():
    ws = ws_of("kZ2")
    fm = flat_test(ws.algebra, np.array([1, 1]))
    out = verify_equiv(ws, fm)
    assert out["status"] == "pass"
    wsE = ws_of("E4")
    diag = flat_test(wsE.algebra, np.array([1, 0, 0, 1]))  # through the diagonal
    out2 = verify_equiv(wsE, diag, check_mechanism=False)
    assert out2["status"] == "pass"


def test_verify_equiv_rejects_non_unipotent():
    ws = ws_of("kS3p2")
    u = np.zeros(6, dtype=np.int64)
    u[0] = 1
    u[3] = 1
    fm = flat_test(ws.algebra, u)
    with pytest.raises(Unsupported):
        verify_equiv(ws, fm)


def test_block_pi_support_ks3():
    ws = ws_of("kS3p2")
    four = next(i for i, b in enumerate(ws.blocks) if b.dim == 4)
    s4 = block_pi_support(ws, four)
    assert len(s4.classes) == 0  # projective simple: empty support
    s0 = block_pi_support(ws, ws.principal_index)
    assert len(s0.classes) == 1


def test_p_group_all_classes_hit():
    ws = ws_of("kZ4")
    s = block_pi_support(ws, 0)
    classes, _ = p_point_classes(ws)
    assert len(s.classes) == len(classes) >= 1


def test_flat_points_of_steinberg_block_empty():
    ws = Workspace(u_sl2(F3), cap=6, budget=4000)
    nine = next(i for i, b in enumerate(ws.blocks) if b.dim == 9)
    f = flat_points_of_block(ws, nine)
    assert len(f.classes) == 0


def test_homeo_local_ks3():
    ws = ws_of("kS3p2")
    rep = verify_homeo_local(ws)
    assert rep["status"] == "pass", rep
    assert rep["p_point_classes"] == 1 and rep["flat_point_classes"] == 1


def test_homeo_local_e4():
    ws = ws_of("E4")
    rep = verify_homeo_local(ws)
    assert rep["status"] == "pass", rep
    assert rep["p_point_classes"] == 3 and rep["flat_point_classes"] == 3


def test_rho_star_p_group_identity():
    ws = ws_of("kZ4")
    fm = flat_test(ws.algebra, np.array([1, 0, 1, 0]))
    rho = rho_star(ws, fm, 0)
    assert rho.flat and rho.jordan == fm.jordan


def test_verify_injective():
    for name in ["kS3p2", "E4", "kD8"]:
        ws = ws_of(name)
        for i in range(len(ws.blocks)):
            rep = verify_injective(ws, i)
            assert rep["status"] == "pass", (name, i, rep)


def test_verify_defect_s3_both_primes():
    ws = ws_of("kS3p2")
    for i in range(len(ws.blocks)):
        rep = verify_defect(ws, i)
        assert rep["status"] == "pass", (i, rep)
    ws3 = ws_of("kS3p3")
    rep3 = verify_defect(ws3, 0)
    assert rep3["status"] == "pass", rep3
    assert rep3["defect_order"] == 3 and rep3["support_classes"] == 1


def test_flatness_criteria_sampling():
    for name in ["kZ4", "kD8", "kS3p3"]:
        rep = flatness_criteria_sample(ws_of(name), 300)
        assert rep["sampled"] == 300 and rep["criteria_agree"]
