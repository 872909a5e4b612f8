"""Exact dense linear algebra over GF(p^e), p <= 31.

Field elements are integer codes in [0, q), q = p^e.  The base-p digits of
a code are the coefficients (low degree first) of the representing
polynomial modulo the field's defining polynomial.  Matrices and vectors
are plain numpy int64 arrays of codes; every function here takes the Field
as explicit first argument.

For e = 1 all array arithmetic is straight mod-p numpy.  For e > 1 the
field precomputes q x q addition/multiplication tables (q is capped at
4096, far beyond anything the corpus needs) and matrix products run on
base-p digit stacks so the inner loops stay vectorized.

Large mod-p matrix products and row reductions are routed through float64
BLAS; all intermediate values stay below 2**53 so the results are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

_FLOAT_EXACT = 2.0**53


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Prime p, extension degree e, and defining polynomial (low-to-high)."""

    p: int
    e: int
    modulus: tuple[int, ...]


class Field:
    """Arithmetic context for GF(p^e) acting on numpy code arrays."""

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p) or not (2 <= p <= 31):
            raise ValueError(f"characteristic must be a prime in [2, 31], got {p}")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if self.q > 4096:
            raise ValueError(f"field size {self.q} unsupported (cap 4096)")
        if modulus is None:
            modulus = (0, 1) if e == 1 else find_irreducible(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if e > 1 and not _is_irreducible_prime_poly(p, modulus):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self.spec = FieldSpec(p, e, modulus)
        if e > 1:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        codes = np.arange(q)
        dig = np.zeros((q, e), dtype=np.int64)
        c = codes.copy()
        for i in range(e):
            dig[:, i] = c % p
            c //= p
        self._dig = dig
        self._pow_p = p ** np.arange(e)
        # reduction rows: digits of x^k mod modulus for k in [e, 2e-2]
        red = np.zeros((max(e - 1, 1), e), dtype=np.int64)
        cur = [0] * e
        cur_full = list(self.modulus[:-1])
        top = [(-c) % p for c in cur_full]  # x^e = -(lower part)
        red_rows = [top]
        for _ in range(e - 2):
            nxt = [0] + red_rows[-1][:-1]
            carry = red_rows[-1][-1]
            nxt = [(nxt[i] + carry * top[i]) % p for i in range(e)]
            red_rows.append(nxt)
        for k, row in enumerate(red_rows[: max(e - 1, 0)]):
            red[k] = row
        self._red = red
        # q x q multiply table via digit convolution
        A = dig[:, None, :]
        B = dig[None, :, :]
        conv = np.zeros((q, q, 2 * e - 1), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                conv[:, :, i + j] += A[:, :, i] * B[:, :, j]
        conv %= p
        out = conv[:, :, :e].copy()
        for k in range(e, 2 * e - 1):
            out += conv[:, :, k : k + 1] * red[k - e][None, None, :]
        out %= p
        self._mul_table = (out @ self._pow_p).astype(np.int64)
        add = (dig[:, None, :] + dig[None, :, :]) % p
        self._add_table = (add @ self._pow_p).astype(np.int64)
        neg = (-dig) % p
        self._neg_table = (neg @ self._pow_p).astype(np.int64)
        inv = np.zeros(q, dtype=np.int64)
        eq1 = np.argwhere(self._mul_table == 1)
        inv[eq1[:, 0]] = eq1[:, 1]
        self._inv_table = inv

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    # -- scalar / elementwise ops ---------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self._add_table[np.asarray(a), np.asarray(b)]

    def sub(self, a, b):
        if self.e == 1:
            return (np.asarray(a) - np.asarray(b)) % self.p
        return self._add_table[np.asarray(a), self._neg_table[np.asarray(b)]]

    def neg(self, a):
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        return self._neg_table[np.asarray(a)]

    def mul(self, a, b):
        if self.e == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        return self._mul_table[np.asarray(a), np.asarray(b)]

    def inv(self, a):
        arr = np.asarray(a)
        if np.any(arr == 0):
            raise ZeroDivisionError("zero has no inverse")
        if self.e == 1:
            return np.vectorize(lambda x: pow(int(x), self.p - 2, self.p))(arr)
        return self._inv_table[arr]

    def inv_s(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.e == 1:
            return pow(int(a), self.p - 2, self.p)
        return int(self._inv_table[a])

    def pow_s(self, a: int, n: int) -> int:
        r, b = 1, int(a)
        while n:
            if n & 1:
                r = int(self.mul(r, b))
            b = int(self.mul(b, b))
            n >>= 1
        return r

    # -- digit stacks -----------------------------------------------------

    def to_digits(self, arr):
        """Code array -> digit stack of shape (e,) + arr.shape."""
        arr = np.asarray(arr)
        if self.e == 1:
            return arr[None, ...] % self.p
        return np.moveaxis(self._dig[arr], -1, 0)

    def from_digits(self, dig):
        if self.e == 1:
            return dig[0] % self.p
        return np.tensordot(self._pow_p, np.asarray(dig) % self.p, axes=(0, 0)).astype(
            np.int64
        )

    def _reduce_digit_stack(self, acc):
        """Reduce a digit stack of degree <= 2e-2 down to e digits, mod p."""
        p, e = self.p, self.e
        acc = [a % p for a in acc]
        for k in range(len(acc) - 1, e - 1, -1):
            top = acc.pop()
            row = self._red[k - e]
            for m in range(e):
                acc[m] = (acc[m] + top * row[m]) % p
        return acc

    # -- linear algebra ---------------------------------------------------

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def matmul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self.e == 1:
            return _matmul_mod(a, b, self.p)
        da = self.to_digits(a)
        db = self.to_digits(b)
        e = self.e
        acc = [None] * (2 * e - 1)
        for i in range(e):
            for j in range(e):
                prod = _matmul_mod(da[i], db[j], self.p)
                k = i + j
                acc[k] = prod if acc[k] is None else (acc[k] + prod)
        acc = [x if x is not None else np.zeros(prod.shape, dtype=np.int64) for x in acc]
        acc = self._reduce_digit_stack(acc)
        return self.from_digits(np.stack(acc))

    def einsum(self, spec, *ops):
        ops = [np.asarray(o) for o in ops]
        if self.e == 1:
            return np.einsum(spec, *ops, optimize=True) % self.p
        e = self.e
        digs = [self.to_digits(o) for o in ops]
        t = len(ops)
        out_shape = None
        acc: dict[int, np.ndarray] = {}
        for combo in itertools.product(range(e), repeat=t):
            term = np.einsum(spec, *[digs[i][combo[i]] for i in range(t)], optimize=True) % self.p
            d = sum(combo)
            acc[d] = term if d not in acc else (acc[d] + term) % self.p
            out_shape = term.shape
        maxd = t * (e - 1)
        stack = [acc.get(d, np.zeros(out_shape, dtype=np.int64)) for d in range(maxd + 1)]
        # reduce from the top one degree at a time using x^e row
        top_row = self._red[0] if e > 1 else None
        while len(stack) > e:
            top = stack.pop()
            k = len(stack)  # degree of popped term was k
            # x^k = x^(k-e) * x^e -> distribute x^e = top_row over digits
            for m in range(e):
                if top_row[m]:
                    stack[k - e + m] = (stack[k - e + m] + top * top_row[m]) % self.p
        return self.from_digits(np.stack(stack))

    def kron(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        ra, ca = a.shape
        rb, cb = b.shape
        out = self.mul(a[:, None, :, None], b[None, :, None, :])
        return out.reshape(ra * rb, ca * cb)

    def random_codes(self, rng, shape):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def elements(self):
        return range(self.q)

    def fmt(self, code: int) -> str:
        """Code -> polynomial string over the prime subfield (generator 'a')."""
        code = int(code)
        if self.e == 1:
            return str(code % self.p)
        terms = []
        c = code
        for i in range(self.e):
            d = c % self.p
            c //= self.p
            if d == 0:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                v = "a" if i == 1 else f"a^{i}"
                terms.append(v if d == 1 else f"{d}*{v}")
        return "+".join(terms) if terms else "0"


def _matmul_mod(a, b, p):
    """Exact (a @ b) mod p, using float64 BLAS when profitable."""
    if a.ndim != 2 or b.ndim != 2:
        return (a @ b) % p
    m, k = a.shape
    k2, n = b.shape
    assert k == k2
    if k == 0:
        return np.zeros((m, n), dtype=np.int64)
    if min(m, n) >= 24 and m * k * n >= 200_000:
        if k * (p - 1) ** 2 < _FLOAT_EXACT:
            c = np.matmul(a.astype(np.float64), b.astype(np.float64))
            return c.astype(np.int64) % p
    return (a @ b) % p


# -- polynomials over a Field (dense coefficient lists, low-to-high) -------


def fp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def fp_deg(c):
    return len(c) - 1


def fp_add(F, a, b):
    n = max(len(a), len(b))
    return fp_trim([int(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)) for i in range(n)])


def fp_scale(F, a, s):
    return fp_trim([int(F.mul(x, s)) for x in a])


def fp_mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = int(F.add(out[i + j], F.mul(x, y)))
    return fp_trim(out)


def fp_divmod(F, a, b):
    b = fp_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    binv = F.inv_s(b[-1])
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(fp_trim(a)) >= len(b):
        a = fp_trim(a)
        d = len(a) - len(b)
        c = int(F.mul(a[-1], binv))
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = int(F.sub(a[d + i], F.mul(c, y)))
    return fp_trim(q), fp_trim(a)


def fp_mod(F, a, b):
    return fp_divmod(F, a, b)[1]


def fp_gcd(F, a, b):
    a, b = fp_trim(a), fp_trim(b)
    while b:
        a, b = b, fp_mod(F, a, b)
    if a:
        a = fp_scale(F, a, F.inv_s(a[-1]))
    return a


def fp_ext_gcd(F, a, b):
    """(g, x, y) with x*a + y*b = g, g monic."""
    a, b = fp_trim(a), fp_trim(b)
    r0, r1 = a, b
    x0, x1 = [1], []
    y0, y1 = [], [1]
    while r1:
        q, r = fp_divmod(F, r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, fp_add(F, x0, fp_scale(F, fp_mul(F, q, x1), F.p - 1))
        y0, y1 = y1, fp_add(F, y0, fp_scale(F, fp_mul(F, q, y1), F.p - 1))
    if r0:
        s = F.inv_s(r0[-1])
        r0 = fp_scale(F, r0, s)
        x0 = fp_scale(F, x0, s)
        y0 = fp_scale(F, y0, s)
    return r0, x0, y0


def fp_invmod(F, a, m):
    g, x, _ = fp_ext_gcd(F, a, m)
    if fp_deg(g) != 0:
        raise ValueError("element not invertible modulo m")
    return fp_mod(F, x, m)


def fp_monic(F, a):
    a = fp_trim(a)
    return fp_scale(F, a, F.inv_s(a[-1])) if a else a


def fp_pow_mod(F, a, n, m):
    r = [1]
    a = fp_mod(F, a, m)
    while n:
        if n & 1:
            r = fp_mod(F, fp_mul(F, r, a), m)
        a = fp_mod(F, fp_mul(F, a, a), m)
        n >>= 1
    return r


def fp_eval(F, a, x):
    r = 0
    for c in reversed(a):
        r = int(F.add(F.mul(r, x), c))
    return r


def fp_deriv(F, a):
    out = []
    for i in range(1, len(a)):
        coeff = int(F.mul(a[i], i % F.p))
        out.append(coeff)
    return fp_trim(out)


def _is_irreducible_prime_poly(p, modulus):
    F = Field(p, 1)
    f = fp_trim(list(modulus))
    n = fp_deg(f)
    if n <= 0:
        return False
    x = [0, 1]
    # f irreducible iff x^(p^n) == x mod f and gcd(x^(p^m) - x, f) = 1 for m <= n/2
    xp = fp_pow_mod(F, x, p**n, f)
    if fp_trim(fp_add(F, xp, fp_scale(F, x, p - 1))) != []:
        return False
    for m in range(1, n // 2 + 1):
        xm = fp_pow_mod(F, x, p**m, f)
        g = fp_gcd(F, fp_add(F, xm, fp_scale(F, x, p - 1)), f)
        if fp_deg(g) > 0:
            return False
    return True


def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n over F_p in lexicographic scan.

    The scan order is over the low coefficient tuple (c_0, ..., c_{n-1})
    read as a base-p counter, so the result is reproducible.
    """
    if n == 1:
        return (0, 1)
    for low in range(p**n):
        coeffs = []
        c = low
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        cand = tuple(coeffs) + (1,)
        if _is_irreducible_prime_poly(p, cand):
            return cand
    raise RuntimeError(f"no irreducible of degree {n} over F_{p} found")


@dataclass
class FieldEmbedding:
    src: Field
    dst: Field
    matrix: np.ndarray  # (dst.e, src.e) over F_p, columns = digits of images
    code_map: np.ndarray  # (src.q,) codes in dst

    def apply(self, arr):
        return self.code_map[np.asarray(arr)]


def extend_field(F: Field, d: int) -> tuple[Field, FieldEmbedding]:
    """Return GF(q^d) together with the embedding of GF(q).

    The new field is presented over the prime field by the lexicographically
    first irreducible of degree e*d; the embedding sends the old generator
    to the first root (in code order) of the old modulus.
    """
    if d < 1:
        raise ValueError("extension degree must be >= 1")
    if d == 1:
        ident = FieldEmbedding(F, F, np.eye(F.e, dtype=np.int64), np.arange(F.q))
        return F, ident
    F2 = Field(F.p, F.e * d)
    root = None
    old_mod = [int(c) for c in F.modulus]  # prime-field coefficients = codes in F2
    for cand in range(F2.q):
        if fp_eval(F2, old_mod, cand) == 0:
            root = cand
            break
    assert root is not None, "old modulus must split in the extension"
    powers = [1]
    for _ in range(F.e - 1):
        powers.append(int(F2.mul(powers[-1], root)))
    mat = np.zeros((F2.e, F.e), dtype=np.int64)
    for i, pw in enumerate(powers):
        mat[:, i] = F2.to_digits(np.asarray(pw))[..., 0] if F2.e == 1 else F2._dig[pw]
    code_map = np.zeros(F.q, dtype=np.int64)
    for code in range(F.q):
        digs = [code % F.p] if F.e == 1 else list(F._dig[code])
        acc = 0
        for i in range(F.e):
            acc = int(F2.add(acc, F2.mul(int(digs[i]), powers[i])))
        code_map[code] = acc
    emb = FieldEmbedding(F, F2, mat, code_map)
    _check_embedding(F, F2, code_map)
    return F2, emb


def _check_embedding(F, F2, code_map):
    basis = [F.p**i for i in range(F.e)] if F.e > 1 else [1]
    for a in basis:
        for b in basis:
            lhs = code_map[int(F.mul(a, b))]
            rhs = int(F2.mul(code_map[a], code_map[b]))
            if lhs != rhs:
                raise AssertionError("field embedding is not multiplicative")


# -- row reduction ----------------------------------------------------------


def rref(F: Field, a, transform: bool = False):
    """Reduced row echelon form.

    Returns (R, rank, pivots) or (R, rank, pivots, E) with E @ a = R.
    The RREF is the unique one; row order is pivot-column ascending.
    """
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = a.shape
    if F.e == 1 and m * n >= 250_000 and min(m, n) >= 64:
        return _rref_blocked(F, a, transform)
    return _rref_plain(F, a, transform)


def _rref_plain(F, a, transform):
    m, n = a.shape
    R = a.copy() % F.p if F.e == 1 else a.copy()
    E = F.eye(m) if transform else None
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        col = R[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
            if E is not None:
                E[[r, i]] = E[[i, r]]
        s = F.inv_s(int(R[r, c]))
        if s != 1:
            R[r] = F.mul(R[r], s)
            if E is not None:
                E[r] = F.mul(E[r], s)
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = F.sub(R[rows], F.mul(col[rows, None], R[r][None, :]))
            if E is not None:
                E[rows] = F.sub(E[rows], F.mul(col[rows, None], E[r][None, :]))
        pivots.append(c)
        r += 1
    if transform:
        return R, r, pivots, E
    return R, r, pivots


def _rref_blocked(F, a, transform, panel=96):
    """Panel-blocked Gauss-Jordan over F_p routing bulk updates through BLAS.

    Within a window of `panel` columns a plain Jordan elimination picks the
    pivots; the trailing columns are then updated with two matrix products.
    Pivot rows are chosen in place (no swaps) and the rows are permuted to
    canonical order at the end.
    """
    p = F.p
    m, n0 = a.shape
    R = a.copy() % p
    if transform:
        R = np.hstack([R, np.eye(m, dtype=np.int64)])
    n = R.shape[1]
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    is_pivot_row = np.zeros(m, dtype=bool)
    c = 0
    while c < n0 and len(pivot_rows) < m:
        c_hi = min(n0, c + panel)
        W_old = R[:, c:c_hi].copy()
        W = W_old.copy()
        local_rows: list[int] = []
        local_cols: list[int] = []
        for j in range(c_hi - c):
            colv = W[:, j].copy()
            colv[is_pivot_row] = 0
            for lr in local_rows:
                colv[lr] = 0
            nz = np.nonzero(colv)[0]
            if nz.size == 0:
                continue
            r = int(nz[0])
            s = pow(int(W[r, j]), p - 2, p)
            if s != 1:
                W[r] = W[r] * s % p
            col = W[:, j].copy()
            col[r] = 0
            rows = np.nonzero(col)[0]
            if rows.size:
                W[rows] = (W[rows] - np.outer(col[rows], W[r])) % p
            local_rows.append(r)
            local_cols.append(j + c)
        k = len(local_rows)
        if k:
            lr = np.array(local_rows)
            lc_local = np.array([cc - c for cc in local_cols])
            # beta = inv(W_old[piv, pivcols]); final pivot rows = beta @ old rows
            sub = W_old[np.ix_(lr, lc_local)]
            _, rk, _, beta = _rref_plain(F, sub, True)
            assert rk == k
            trail = R[:, c_hi:]
            if trail.shape[1]:
                piv_trail = _matmul_mod(beta, trail[lr], p)
                other = np.ones(m, dtype=bool)
                other[lr] = False
                alpha = W_old[:, lc_local][other]
                upd = _matmul_mod(alpha, piv_trail, p)
                trail_other = (trail[other] - upd) % p
                trail[lr] = piv_trail
                trail[other] = trail_other
            R[:, c:c_hi] = W
            is_pivot_row[lr] = True
            pivot_rows.extend(local_rows)
            pivot_cols.extend(local_cols)
        c = c_hi
    order = np.argsort(pivot_cols, kind="stable")
    rank = len(pivot_rows)
    out = np.zeros_like(R)
    out[:rank] = R[np.array(pivot_rows, dtype=np.int64)[order]]
    rest = np.nonzero(~is_pivot_row)[0]
    out[rank:] = R[rest]
    pivots = [int(pivot_cols[i]) for i in order]
    if transform:
        return out[:, :n0], rank, pivots, out[:, n0:]
    return out, rank, pivots


def rank(F, a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return rref(F, a)[1]


def kernel_basis(F, a):
    """Rows form a basis of the right null space of a (canonical RREF rows)."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    R, rk, pivots = rref(F, a)[:3]
    free = [c for c in range(n) if c not in set(pivots)]
    K = F.zeros((len(free), n))
    for idx, fcol in enumerate(free):
        K[idx, fcol] = 1
        if rk:
            K[idx, pivots] = F.neg(R[:rk, fcol])
    if K.shape[0]:
        K = rref(F, K)[0][: K.shape[0]]
    return K


class LinSolver:
    """Reusable solver for A x = b with fixed A and many right-hand sides."""

    def __init__(self, F, A):
        A = np.asarray(A, dtype=np.int64)
        self.F = F
        self.m, self.n = A.shape
        R, rk, piv, E = rref(F, A, transform=True)
        self.rank = rk
        self.pivots = list(piv)
        self.E = E
        self.R = R

    def solve(self, b):
        """One solution of A x = b, or None if inconsistent. b: (m,) or (m, k)."""
        F = self.F
        b = np.asarray(b, dtype=np.int64)
        single = b.ndim == 1
        B = b[:, None] if single else b
        y = F.matmul(self.E, B)
        if self.rank < self.m and np.any(y[self.rank :]):
            return None
        x = F.zeros((self.n, B.shape[1]))
        if self.rank:
            x[self.pivots] = y[: self.rank]
        return x[:, 0] if single else x


def solve(F, A, b):
    return LinSolver(F, A).solve(b)


def row_space(F, rows):
    """Canonical (RREF) basis of the row space; zero rows dropped."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return rows.reshape(0, rows.shape[-1] if rows.ndim == 2 else 0)
    R, rk, _ = rref(F, rows)[:3]
    return R[:rk]


def in_row_space(F, v, basis) -> bool:
    basis = np.asarray(basis)
    v = np.asarray(v)
    if basis.size == 0:
        return not np.any(v)
    stacked = np.vstack([basis, v[None, :]])
    return rank(F, stacked) == rank(F, basis)


def intersect_row_spaces(F, U, V):
    """Canonical basis of rowspace(U) meet rowspace(V)."""
    U = row_space(F, U)
    V = row_space(F, V)
    if U.shape[0] == 0 or V.shape[0] == 0:
        return F.zeros((0, U.shape[1] if U.size else V.shape[1]))
    stacked = np.vstack([U, V])  # (a+b, n)
    K = kernel_basis(F, stacked.T)  # rows (alpha, beta) with alpha U + beta V = 0
    a = U.shape[0]
    W = F.matmul(K[:, :a], U)
    return row_space(F, W)


class NeedsExtension(Exception):
    """A computation requires a field extension of the given degree."""

    def __init__(self, degree: int, why: str = ""):
        super().__init__(f"field extension of degree {degree} needed: {why}")
        self.degree = degree


# -- factoring over F_q (small degrees) -------------------------------------


def squarefree_decomposition(F, f):
    """List of (g, m) with f = prod g^m, the g squarefree and pairwise coprime."""
    out: dict[tuple, int] = {}

    def walk(g, outer):
        g = fp_monic(F, g)
        if fp_deg(g) <= 0:
            return
        d = fp_deriv(F, g)
        if not d:
            # g = h(x^p); coefficients have unique p-th roots c^(q/p)
            p = F.p
            h = [F.pow_s(g[i], F.q // p) for i in range(0, len(g), p)]
            walk(fp_trim(h), outer * p)
            return
        t = fp_gcd(F, g, d)
        v = fp_divmod(F, g, t)[0]
        i = 1
        while fp_deg(v) > 0:
            w = fp_gcd(F, t, v)
            layer = fp_divmod(F, v, w)[0]
            if fp_deg(layer) > 0:
                key = tuple(fp_monic(F, layer))
                out[key] = out.get(key, 0) + i * outer
            v = w
            t = fp_divmod(F, t, w)[0]
            i += 1
        if fp_deg(t) > 0:
            p = F.p
            h = [F.pow_s(t[j], F.q // p) for j in range(0, len(t), p)]
            walk(fp_trim(h), outer * p)

    walk(f, 1)
    return [(list(k), v) for k, v in sorted(out.items())]


def factor_squarefree(F, f, rng):
    """Irreducible factors of a squarefree monic f (distinct-degree + CZ)."""
    f = fp_monic(F, f)
    n = fp_deg(f)
    if n <= 0:
        return []
    out = []
    x = [0, 1]
    rem = f
    d = 1
    xq = x
    while fp_deg(rem) >= 2 * d:
        xq = fp_pow_mod(F, xq, F.q, rem)
        g = fp_gcd(F, fp_add(F, xq, fp_scale(F, x, F.p - 1)), rem)
        if fp_deg(g) > 0:
            out.extend(_equal_degree(F, g, d, rng))
            rem = fp_divmod(F, rem, g)[0]
            xq = fp_mod(F, xq, rem)
        d += 1
    if fp_deg(rem) > 0:
        out.append(rem)
    return sorted(out)


def _equal_degree(F, f, d, rng):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    n = fp_deg(f)
    if n == d:
        return [fp_monic(F, f)]
    while True:
        a = [int(F.random_codes(rng, ())) for _ in range(n)]
        a = fp_trim(a)
        if fp_deg(a) < 1:
            continue
        g = fp_gcd(F, a, f)
        if 0 < fp_deg(g) < n:
            return _equal_degree(F, g, d, rng) + _equal_degree(F, fp_divmod(F, f, g)[0], d, rng)
        if F.p == 2:
            # trace map sum a^(2^i), i < d*e
            t = a
            acc = a
            for _ in range(d * F.e - 1):
                acc = fp_mod(F, fp_mul(F, acc, acc), f)
                t = fp_add(F, t, acc)
            g = fp_gcd(F, t, f)
        else:
            b = fp_pow_mod(F, a, (F.q**d - 1) // 2, f)
            g = fp_gcd(F, fp_add(F, b, [F.p - 1]), f)
        if 0 < fp_deg(g) < n:
            return _equal_degree(F, g, d, rng) + _equal_degree(F, fp_divmod(F, f, g)[0], d, rng)


def factor_poly(F, f, rng):
    """Full factorization: list of (irreducible, multiplicity), sorted."""
    pairs = squarefree_decomposition(F, f)
    out: dict[tuple, int] = {}
    for sqf, mult in pairs:
        for irr in factor_squarefree(F, sqf, rng):
            out[tuple(irr)] = out.get(tuple(irr), 0) + mult
    return [(list(k), v) for k, v in sorted(out.items())]


def poly_roots(F, f):
    """Roots in F (by scan; q <= 4096)."""
    return [c for c in range(F.q) if fp_eval(F, f, c) == 0]


def minpoly_matrix(F, A):
    """Minimal polynomial of a square matrix over F (monic, low-to-high)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n == 0:
        return [1]
    flat = [F.eye(n).reshape(-1)]
    cur = F.eye(n)
    for deg in range(1, n + 1):
        cur = F.matmul(cur, A)
        flat.append(cur.reshape(-1))
        M = np.stack(flat)  # (deg+1, n*n)
        K = kernel_basis(F, M.T)
        if K.shape[0] > 0:
            v = K[0]
            lead = F.inv_s(int(v[deg]))
            coeffs = [int(F.mul(int(c), lead)) for c in v[: deg + 1]]
            return fp_trim(coeffs)
    raise AssertionError("minimal polynomial not found")
