import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blockscope import ff
from blockscope.ff import (
    Field,
    LinSolver,
    extend_field,
    factor_poly,
    find_irreducible,
    fp_eval,
    fp_mul,
    kernel_basis,
    minpoly_matrix,
    poly_roots,
    rank,
    rref,
)

F2 = Field(2)
F3 = Field(3)
F4 = Field(2, 2)
F9 = Field(3, 2)

FIELDS = [F2, F3, Field(5), F4, F9]


def naive_rref(F, a):
    """Reference row reduction, textbook row ops only."""
    R = np.array(a, dtype=np.int64)
    m, n = R.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        rows = [i for i in range(r, m) if R[i, c] != 0]
        if not rows:
            continue
        i = rows[0]
        R[[r, i]] = R[[i, r]]
        R[r] = F.mul(R[r], F.inv_s(int(R[r, c])))
        for j in range(m):
            if j != r and R[j, c]:
                R[j] = F.sub(R[j], F.mul(int(R[j, c]), R[r]))
        pivots.append(c)
        r += 1
    return R, r, pivots


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_rref_matches_naive(data):
    F = data.draw(st.sampled_from(FIELDS))
    m = data.draw(st.integers(1, 7))
    n = data.draw(st.integers(1, 7))
    entries = data.draw(
        st.lists(st.integers(0, F.q - 1), min_size=m * n, max_size=m * n)
    )
    a = np.array(entries, dtype=np.int64).reshape(m, n)
    R, rk, piv = rref(F, a)[:3]
    Rn, rkn, pivn = naive_rref(F, a)
    assert rk == rkn and piv == pivn
    assert np.array_equal(R, Rn)


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_rref_idempotent_and_rank_nullity(data):
    F = data.draw(st.sampled_from(FIELDS))
    m = data.draw(st.integers(1, 8))
    n = data.draw(st.integers(1, 8))
    entries = data.draw(st.lists(st.integers(0, F.q - 1), min_size=m * n, max_size=m * n))
    a = np.array(entries, dtype=np.int64).reshape(m, n)
    R, rk, _ = rref(F, a)[:3]
    R2, rk2, _ = rref(F, R)[:3]
    assert np.array_equal(R, R2) and rk == rk2
    K = kernel_basis(F, a)
    assert K.shape[0] == n - rk
    if K.shape[0]:
        assert not np.any(F.matmul(a, K.T))
        assert rank(F, K) == K.shape[0]


def test_rref_blocked_agrees_on_large():
    rng = np.random.default_rng(7)
    for F in (F2, F3):
        a = F.random_codes(rng, (150, 170))
        # force a little rank deficiency
        a[10] = a[3]
        a[:, 40] = a[:, 2]
        big = ff._rref_blocked(F, a, False)
        small = ff._rref_plain(F, a, False)
        assert big[1] == small[1]
        assert big[2] == small[2]
        assert np.array_equal(big[0], small[0])
        Rb, rkb, pivb, Eb = ff._rref_blocked(F, a, True)
        assert np.array_equal(F.matmul(Eb, a), Rb)


def test_rref_trivial_examples():
    # over F_2, equal rows collapse
    R, rk, piv = rref(F2, np.array([[1, 1], [1, 1]]))[:3]
    assert rk == 1 and piv == [0]
    R, rk, piv = rref(F2, np.zeros((2, 2), dtype=np.int64))[:3]
    assert rk == 0
    R, rk, piv = rref(F3, np.eye(3, dtype=np.int64))[:3]
    assert rk == 3 and np.array_equal(R, np.eye(3, dtype=np.int64))


def test_kernel_trivial_examples():
    assert kernel_basis(F2, np.zeros((2, 2), dtype=np.int64)).shape[0] == 2
    assert kernel_basis(F2, np.eye(2, dtype=np.int64)).shape[0] == 0
    K = kernel_basis(F2, np.array([[1, 1]]))
    assert K.shape == (1, 2) and np.array_equal(K[0] % 2, [1, 1])


def test_kron_rank_multiplicative():
    rng = np.random.default_rng(0)
    for F in (F2, F3, F4):
        a = F.random_codes(rng, (4, 5))
        b = F.random_codes(rng, (3, 4))
        k = F.kron(a, b)
        assert k.shape == (12, 20)
        assert rank(F, k) == rank(F, a) * rank(F, b)
    # identity and scalar cases
    a = F3.random_codes(rng, (3, 3))
    assert np.array_equal(F3.kron(a, np.array([[1]])), a)
    c = 2
    assert np.array_equal(F3.kron(np.array([[c]]), a), F3.mul(c, a))


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_field_axioms_random_triples(data):
    F = data.draw(st.sampled_from(FIELDS))
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    c = data.draw(st.integers(0, F.q - 1))
    assert int(F.mul(F.mul(a, b), c)) == int(F.mul(a, F.mul(b, c)))
    assert int(F.mul(a, F.add(b, c))) == int(F.add(F.mul(a, b), F.mul(a, c)))
    if a != 0:
        assert int(F.mul(a, F.inv_s(a))) == 1


def test_matmul_matches_einsum():
    rng = np.random.default_rng(3)
    for F in FIELDS:
        a = F.random_codes(rng, (6, 4))
        b = F.random_codes(rng, (4, 5))
        m1 = F.matmul(a, b)
        m2 = F.einsum("ij,jk->ik", a, b)
        naive = np.zeros((6, 5), dtype=np.int64)
        for i in range(6):
            for k in range(5):
                acc = 0
                for j in range(4):
                    acc = int(F.add(acc, F.mul(int(a[i, j]), int(b[j, k]))))
                naive[i, k] = acc
        assert np.array_equal(m1, naive)
        assert np.array_equal(m2, naive)


def test_extend_field_f2_to_f4():
    F, emb = extend_field(F2, 2)
    assert F.q == 4
    assert F.modulus == (1, 1, 1)  # t^2 + t + 1, the unique choice
    assert np.array_equal(emb.code_map, [0, 1])


def test_extend_field_identity():
    F, emb = extend_field(F4, 1)
    assert F is F4
    assert np.array_equal(emb.code_map, np.arange(4))


def test_extend_field_f3_splits_x2_plus_1():
    F, emb = extend_field(F3, 2)
    assert F.q == 9
    # oracle: exhaustive root search for x^2 + 1 over the constructed field
    roots = [c for c in range(9) if int(F.add(F.mul(c, c), 1)) == 0]
    assert len(roots) == 2


def test_embedding_preserves_products():
    F9b, emb = extend_field(F3, 2)
    for a in range(3):
        for b in range(3):
            assert int(emb.code_map[int(F3.mul(a, b))]) == int(
                F9b.mul(int(emb.code_map[a]), int(emb.code_map[b]))
            )


def test_solver_and_solve():
    rng = np.random.default_rng(11)
    for F in (F2, F3, F4):
        A = F.random_codes(rng, (6, 4))
        x = F.random_codes(rng, (4,))
        b = F.matmul(A, x[:, None])[:, 0]
        s = LinSolver(F, A)
        y = s.solve(b)
        assert y is not None
        assert np.array_equal(F.matmul(A, y[:, None])[:, 0], b)
        # inconsistent system detected
        if rank(F, A) < 6:
            bad = b.copy()
            R, rk, piv, E = rref(F, A, transform=True)
            # perturb in a direction outside the column space
            K = kernel_basis(F, A.T)
            if K.shape[0]:
                bad = F.add(bad, K[0])
                assert s.solve(bad) is None


def test_factor_poly_and_roots():
    rng = np.random.default_rng(5)
    # (x-1)^2 (x^2+x+1) over F_2: x^2+x+1 irreducible
    f = fp_mul(F2, fp_mul(F2, [1, 1], [1, 1]), [1, 1, 1])
    fac = factor_poly(F2, f, rng)
    assert sorted((tuple(g), m) for g, m in fac) == [((1, 1), 2), ((1, 1, 1), 1)]
    # over F_4 the quadratic splits
    f4 = [1, 1, 1]
    fac4 = factor_poly(F4, f4, rng)
    assert all(len(g) == 2 for g, _ in fac4) and len(fac4) == 2
    assert sorted(poly_roots(F4, f4)) == sorted(
        [int(r[0] and F4.neg(r[0])) or int(F4.neg(r[0])) for r, _ in fac4]
    )


def test_minpoly_matrix():
    A = np.array([[0, 1], [0, 0]])
    assert minpoly_matrix(F2, A) == [0, 0, 1]  # x^2
    assert minpoly_matrix(F3, np.eye(2, dtype=np.int64)) == [2, 1]  # x - 1
    # companion matrix of x^2+x+1 over F_2
    C = np.array([[0, 1], [1, 1]])
    assert minpoly_matrix(F2, C) == [1, 1, 1]


def test_find_irreducible_deterministic():
    assert find_irreducible(2, 2) == (1, 1, 1)
    assert find_irreducible(2, 3) in [(1, 1, 0, 1), (1, 0, 1, 1)]
    f = find_irreducible(3, 2)
    # no roots over F_3
    assert all(fp_eval(F3, list(f), c) != 0 for c in range(3))


def test_intersect_row_spaces():
    U = np.array([[1, 0, 0], [0, 1, 0]])
    V = np.array([[0, 1, 0], [0, 0, 1]])
    W = ff.intersect_row_spaces(F2, U, V)
    assert W.shape[0] == 1 and np.array_equal(W[0], [0, 1, 0])
