"""Modules over the corpus algebras: MeatAxe splitting, radicals, simples,
primitive idempotents and projective indecomposables.

A module is a stack of action matrices, one per algebra basis element, in
the column convention: ``action[i] @ v`` is ``b_i . v``.  Everything here
is exact over the algebra's field.

The simple-module search splits the regular representation with seeded
random elements and certifies irreducibility by the standard singular
element criterion (kernel vectors and their transposes must spin to the
whole module when the nullity equals the factor degree).  Outputs are
canonicalized, so the seed only affects the running time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ff import (
    Field,
    LinSolver,
    NeedsExtension,
    factor_poly,
    fp_deg,
    fp_divmod,
    fp_monic,
    fp_mul,
    fp_trim,
    kernel_basis,
    minpoly_matrix,
    rank,
    row_space,
    rref,
)


# -- module type -------------------------------------------------------------


class ModuleRep:
    """Finite-dimensional left module: one action matrix per algebra basis."""

    def __init__(self, algebra, action, check: bool = False):
        self.algebra = algebra
        self.action = np.asarray(action, dtype=np.int64)
        self.dim = self.action.shape[1] if self.action.ndim == 3 else 0
        if self.action.ndim != 3 or self.action.shape[0] != algebra.dim:
            raise ValueError("action must have shape (dim_A, m, m)")
        self._fp = None
        if check:
            v = self.validate()
            if not v:
                raise ValueError("action does not respect the structure constants")

    def validate(self) -> bool:
        F = self.algebra.field
        c = self.algebra.mult
        lhs = F.einsum("aij,bjk->abik", self.action, self.action)
        rhs = F.einsum("abm,mik->abik", c, self.action)
        if not np.array_equal(lhs, rhs):
            return False
        one = self.act(self.algebra.unit)
        return np.array_equal(one, F.eye(self.dim))

    def act(self, coords):
        """Action matrix of the algebra element with the given coordinates."""
        return self.algebra.field.einsum("a,aij->ij", np.asarray(coords), self.action)

    def sort_key(self):
        """Isomorphism-invariant, basis-independent ordering key."""
        F = self.algebra.field
        polys = tuple(
            tuple(minpoly_matrix(F, self.action[i])) for i in range(self.algebra.dim)
        )
        traces = tuple(int(_field_trace(F, self.action[i])) for i in range(self.algebra.dim))
        return (self.dim, polys, traces)

    def fingerprint(self) -> str:
        if self._fp is None:
            import hashlib

            h = hashlib.sha256()
            h.update(self.algebra.fingerprint().encode())
            h.update(repr(self.sort_key()).encode())
            self._fp = h.hexdigest()[:16]
        return self._fp


def _field_trace(F, mat):
    t = 0
    for i in range(mat.shape[0]):
        t = int(F.add(t, int(mat[i, i])))
    return t


class PlainAlgebra:
    """Associative unital algebra by structure constants (no coalgebra)."""

    def __init__(self, F: Field, mult, unit, labels=None, name: str = ""):
        self.field = F
        self.mult = np.asarray(mult, dtype=np.int64)
        self.dim = self.mult.shape[0]
        self.unit = np.asarray(unit, dtype=np.int64)
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]
        self.name = name
        self._left = None
        self._right = None
        self._fp = None

    @property
    def left_mats(self):
        if self._left is None:
            self._left = np.ascontiguousarray(np.swapaxes(self.mult, 1, 2))
        return self._left

    @property
    def right_mats(self):
        if self._right is None:
            self._right = np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))
        return self._right

    def lmul_elt(self, u):
        return self.field.einsum("i,ijk->kj", np.asarray(u), self.mult)

    def rmul_elt(self, u):
        return self.field.einsum("j,ijk->ki", np.asarray(u), self.mult)

    def elt_mul(self, u, v):
        return self.field.einsum("i,j,ijk->k", np.asarray(u), np.asarray(v), self.mult)

    def basis_vec(self, i):
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def fingerprint(self) -> str:
        if self._fp is None:
            import hashlib

            h = hashlib.sha256()
            h.update(repr(self.field.spec).encode())
            h.update(self.mult.tobytes())
            h.update(self.unit.tobytes())
            self._fp = h.hexdigest()[:16]
        return self._fp

    def fmt_element(self, coords) -> str:
        F = self.field
        terms = []
        for i, c in enumerate(np.asarray(coords)):
            c = int(c)
            if c == 0:
                continue
            cs = F.fmt(c)
            lab = self.labels[i]
            if cs == "1":
                terms.append(lab)
            elif "+" in cs:
                terms.append(f"({cs})*{lab}")
            else:
                terms.append(f"{cs}*{lab}")
        return " + ".join(terms) if terms else "0"


def regular_module(a) -> ModuleRep:
    return ModuleRep(a, a.left_mats)


def trivial_module(a) -> ModuleRep:
    eps = a.counit
    act = np.asarray(eps, dtype=np.int64).reshape(a.dim, 1, 1)
    return ModuleRep(a, act)


def module_from_vectors(a, parent: ModuleRep, rows) -> ModuleRep:
    """Submodule of `parent` spanned by the given row vectors (must be invariant)."""
    F = a.field
    B = row_space(F, rows)
    piv = rref(F, B)[2]
    act = np.zeros((a.dim, B.shape[0], B.shape[0]), dtype=np.int64)
    for i in range(a.dim):
        img = F.matmul(parent.action[i], B.T)  # columns
        act[i] = img[piv, :]
        if not np.array_equal(F.matmul(B.T, act[i]), img):
            raise ValueError("rows do not span an invariant subspace")
    return ModuleRep(a, act)


def quotient_module(a, parent: ModuleRep, rows) -> ModuleRep:
    """Quotient of `parent` by the invariant subspace spanned by `rows`."""
    F = a.field
    W = row_space(F, rows)
    m = parent.dim
    piv = rref(F, W)[2]
    nonpiv = [c for c in range(m) if c not in set(piv)]
    k = len(nonpiv)
    act = np.zeros((a.dim, k, k), dtype=np.int64)
    for i in range(a.dim):
        cols = parent.action[i][:, nonpiv]  # images of quotient basis reps
        rep = F.sub(cols, F.matmul(W.T, cols[piv, :]))
        act[i] = rep[nonpiv, :]
    return ModuleRep(a, act)


def dual_module(m: ModuleRep) -> ModuleRep:
    """Left module on the dual space via the antipode twist."""
    a = m.algebra
    F = a.field
    S = a.antipode
    act = F.einsum("xa,xij->aji", S, m.action)
    return ModuleRep(a, act)


def tensor_diagonal(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    """m (x) n with the comultiplication action."""
    a = m.algebra
    if n.algebra is not a and n.algebra.fingerprint() != a.fingerprint():
        raise ValueError("modules must share the algebra")
    F = a.field
    D = a.comult
    act = F.einsum("tab,aij,bkl->tikjl", D, m.action, n.action)
    mn = m.dim * n.dim
    return ModuleRep(a, act.reshape(a.dim, mn, mn))


def hom_module(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    """Hom_k(m, n) as a left module, realized as n (x) m^*."""
    return tensor_diagonal(n, dual_module(m))


def restrict(m: ModuleRep, phi, source) -> ModuleRep:
    """Pull back along an algebra map source -> m.algebra given by matrix phi.

    phi columns are the images of the source basis; multiplicativity and
    unitality are verified.
    """
    a = m.algebra
    F = a.field
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (a.dim, source.dim):
        raise ValueError("phi must map source basis into the target algebra")
    img_unit = F.matmul(phi, source.unit[:, None])[:, 0]
    if not np.array_equal(img_unit, a.unit):
        raise ValueError("phi does not preserve the unit")
    prod_img = F.einsum("ijk,ka->ija", source.mult, phi.T)  # phi(b_i b_j)
    img_prod = F.einsum("ai,bj,abk->ijk", phi, phi, a.mult)
    if not np.array_equal(prod_img, img_prod):
        raise ValueError("phi is not multiplicative")
    act = F.einsum("ai,ajk->ijk", phi, m.action)
    return ModuleRep(source, act)


# -- spinning and the MeatAxe ------------------------------------------------


def spin(F, action, vecs):
    """Row basis of the submodule generated by the given row vectors."""
    B = row_space(F, np.atleast_2d(np.asarray(vecs)))
    if B.shape[0] == 0:
        return B
    while True:
        imgs = F.einsum("aij,bj->abi", action, B).reshape(-1, B.shape[1])
        B2 = row_space(F, np.vstack([B, imgs]))
        if B2.shape[0] == B.shape[0]:
            return B2
        B = B2


def _poly_at_matrix(F, poly, M):
    out = F.zeros(M.shape)
    P = F.eye(M.shape[0])
    for c in poly:
        if c:
            out = F.add(out, F.mul(c, P))
        P = F.matmul(P, M)
    return out


def _split_once(F, action, rng, max_attempts=400):
    """A proper invariant subspace (row basis), or None if certified simple."""
    m = action.shape[1]
    if m <= 1:
        return None
    dimA = action.shape[0]
    for attempt in range(max_attempts):
        if attempt < dimA:
            coeffs = np.zeros(dimA, dtype=np.int64)
            coeffs[attempt] = 1
        else:
            coeffs = F.random_codes(rng, dimA)
        th = F.einsum("a,aij->ij", coeffs, action)
        mp = minpoly_matrix(F, th)
        if fp_deg(mp) < 1:
            continue
        certifier = None
        for f, _ in factor_poly(F, mp, rng):
            thf = _poly_at_matrix(F, f, th)
            K = kernel_basis(F, thf)
            if K.shape[0] == 0:
                continue
            for v in K:
                W = spin(F, action, v)
                if W.shape[0] < m:
                    return W
            if K.shape[0] == fp_deg(f):
                certifier = thf
        if certifier is not None:
            Kt = kernel_basis(F, certifier.T)
            actT = np.ascontiguousarray(np.swapaxes(action, 1, 2))
            Wt = spin(F, actT, Kt[0])
            if Wt.shape[0] < m:
                comp = kernel_basis(F, Wt)  # annihilator of Wt, a submodule
                Wc = spin(F, action, comp)
                if Wc.shape[0] < m:
                    return Wc
                raise AssertionError("transpose split produced no submodule")
            return None
    raise RuntimeError("MeatAxe failed to decide irreducibility")


def composition_factors(a, module: ModuleRep, rng) -> list[ModuleRep]:
    F = a.field
    if module.dim == 0:
        return []
    W = _split_once(F, module.action, rng)
    if W is None:
        return [module]
    sub = module_from_vectors(a, module, W)
    quo = quotient_module(a, module, W)
    return composition_factors(a, sub, rng) + composition_factors(a, quo, rng)


def module_homs(m: ModuleRep, n: ModuleRep):
    """Basis of Hom_A(m, n) as a list of (n.dim, m.dim) matrices."""
    F = m.algebra.field
    dimA = m.algebra.dim
    rows = []
    for i in range(dimA):
        # X act_m(b_i) - act_n(b_i) X = 0, unknowns X (n.dim x m.dim) flattened
        A1 = F.kron(F.eye(n.dim), m.action[i].T)
        A2 = F.kron(n.action[i], F.eye(m.dim))
        rows.append(F.sub(A1, A2))
    M = np.vstack(rows)
    K = kernel_basis(F, M)
    return [k.reshape(n.dim, m.dim) for k in K]


def modules_isomorphic(m: ModuleRep, n: ModuleRep) -> bool:
    if m.dim != n.dim:
        return False
    F = m.algebra.field
    for X in module_homs(m, n):
        if rank(F, X) == m.dim:
            return True
    return False


# -- semisimple structure ----------------------------------------------------


@dataclass
class Pim:
    """Projective indecomposable A e, basis adapted so top lifts come first."""

    index: int
    basis: np.ndarray  # (dim_A, d) columns, basis[:, 0] = the idempotent
    action: np.ndarray  # (dim_A, d, d)
    gen_coords: np.ndarray  # coordinates of the idempotent in the basis
    top_dim: int

    @property
    def dim(self):
        return self.basis.shape[1]


class AlgebraOps:
    """Radical, simples, primitive idempotents and PIMs of a small algebra."""

    def __init__(self, algebra, seed: int = 0xB10C, require_split: bool = True):
        self.algebra = algebra
        self.F = algebra.field
        self.seed = seed
        rng = np.random.default_rng(seed)
        F = self.F
        a = algebra
        reg = regular_module(a)
        factors = composition_factors(a, reg, rng)
        simples: list[ModuleRep] = []
        for f in factors:
            if not any(modules_isomorphic(f, s) for s in simples):
                simples.append(f)
        simples.sort(key=lambda s: s.sort_key())
        keys = [s.sort_key() for s in simples]
        if len(set(keys)) != len(keys):
            raise AssertionError("canonical sort key collision among simples")
        self.simples = simples
        # radical = joint kernel of all simple representations
        cols = [s.action.reshape(a.dim, -1) for s in simples]
        M = np.concatenate(cols, axis=1)  # (dim_A, sum dims^2)
        self.radical = kernel_basis(F, M.T)  # rows = basis of J
        self._certify_radical()
        end_dims = [len(module_homs(s, s)) for s in simples]
        if require_split and any(d > 1 for d in end_dims):
            deg = 1
            for d in end_dims:
                deg = deg * d // np.gcd(deg, d)
            raise NeedsExtension(int(deg), "non-split simple module")
        sq = 0
        for s, d in zip(simples, end_dims):
            if (s.dim * s.dim) % d:
                raise AssertionError("endomorphism field does not divide dim^2")
            sq += s.dim * s.dim // d
        if sq != a.dim - self.radical.shape[0]:
            raise AssertionError("semisimple quotient dimension mismatch")
        self.end_dims = end_dims
        self._idempotents = None
        self._pims = None
        self._right_pims = None
        self._triv = None
        self._rng = rng

    # -- radical ---------------------------------------------------------

    def _certify_radical(self):
        F, a = self.F, self.algebra
        J = self.radical
        cur = J
        self.nilpotency_degree = 1
        while cur.shape[0]:
            prods = F.einsum("ri,sj,ijk->rsk", cur, J, a.mult).reshape(-1, a.dim)
            cur = row_space(F, prods)
            self.nilpotency_degree += 1
            if self.nilpotency_degree > a.dim + 1:
                raise AssertionError("radical candidate is not nilpotent")
        # closure under multiplication by A on both sides (two-sided ideal)
        if J.shape[0]:
            left = F.einsum("aij,rj->ari", a.left_mats, J).reshape(-1, a.dim)
            if rank(F, np.vstack([J, left])) != J.shape[0]:
                raise AssertionError("radical candidate is not a left ideal")

    def radical_of_module(self, m: ModuleRep):
        """Row basis of J.m inside m."""
        F = self.F
        J = self.radical
        if J.shape[0] == 0 or m.dim == 0:
            return np.zeros((0, m.dim), dtype=np.int64)
        imgs = F.einsum("ra,aij->rji", J, m.action).reshape(-1, m.dim)
        return row_space(F, imgs)

    @property
    def triv_index(self) -> int:
        """Index of the trivial module among the simples (Hopf data only)."""
        if self._triv is None:
            eps = getattr(self.algebra, "counit", None)
            if eps is None:
                raise ValueError("algebra carries no counit")
            for i, s in enumerate(self.simples):
                if s.dim == 1 and all(
                    int(s.action[j, 0, 0]) == int(eps[j]) for j in range(self.algebra.dim)
                ):
                    self._triv = i
                    break
            else:
                raise AssertionError("trivial module not found among simples")
        return self._triv

    # -- semisimple quotient and idempotents ------------------------------

    def _bar_data(self):
        F, a = self.F, self.algebra
        J = self.radical  # rref rows
        piv = rref(F, J)[2] if J.shape[0] else []
        nonpiv = [c for c in range(a.dim) if c not in set(piv)]
        self._bar_piv = piv
        self._bar_nonpiv = nonpiv

        def project(vecs):
            """A-coords (cols) -> bar coords (cols)."""
            V = np.atleast_2d(np.asarray(vecs, dtype=np.int64))
            if V.ndim == 1:
                V = V[:, None]
            if J.shape[0]:
                V = F.sub(V, F.matmul(J.T, V[piv, :]))
            return V[nonpiv, :]

        def section(vecs):
            V = np.atleast_2d(np.asarray(vecs, dtype=np.int64))
            out = np.zeros((a.dim, V.shape[1]), dtype=np.int64)
            out[nonpiv, :] = V
            return out

        d = len(nonpiv)
        mult_bar = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                prod = a.elt_mul(section(np.eye(d, dtype=np.int64)[:, [i]])[:, 0],
                                 section(np.eye(d, dtype=np.int64)[:, [j]])[:, 0])
                mult_bar[i, j] = project(prod[:, None])[:, 0]
        unit_bar = project(a.unit[:, None])[:, 0]
        bar = PlainAlgebra(F, mult_bar, unit_bar, name="bar")
        return bar, project, section

    def _compute_idempotents(self):
        from .blocks import split_commutative, center_basis

        F, a = self.F, self.algebra
        bar, project, section = self._bar_data()
        Z = center_basis(bar)
        cents, _cert = split_commutative(bar, Z, np.random.default_rng(self.seed + 1))
        # match each central idempotent to its simple; find a primitive one inside
        idems = [None] * len(self.simples)
        for fbar in cents:
            lift0 = section(fbar[:, None])[:, 0]
            acting = [i for i, s in enumerate(self.simples)
                      if np.array_equal(s.act(lift0), F.eye(s.dim))]
            if len(acting) != 1:
                raise AssertionError("central idempotent matches no unique simple")
            i = acting[0]
            s = self.simples[i]
            # block basis: rows span fbar * bar = bar * fbar (fbar is central)
            prods = F.einsum("i,ijk->jk", fbar, bar.mult)
            blk = row_space(F, prods)
            cols = []
            for r in range(blk.shape[0]):
                lifted = section(blk[r][:, None])[:, 0]
                cols.append(s.act(lifted).reshape(-1))
            M = np.stack(cols, axis=1)  # (dimS^2, blk_rows)
            target = np.zeros((s.dim, s.dim), dtype=np.int64)
            target[0, 0] = 1
            sol = LinSolver(F, M).solve(target.reshape(-1))
            if sol is None:
                raise AssertionError("matrix unit not hit; field not split?")
            ebar = F.einsum("r,ri->i", sol, blk)
            e = self._lift_idempotent(section(ebar[:, None])[:, 0])
            idems[i] = e
        if any(x is None for x in idems):
            raise AssertionError("some simple got no idempotent")
        self._idempotents = idems

    def _lift_idempotent(self, e):
        F, a = self.F, self.algebra
        for _ in range(2 * a.dim + 4):
            e2 = a.elt_mul(e, e)
            if np.array_equal(e2, e):
                return e
            e3 = a.elt_mul(e2, e)
            e = F.sub(F.mul(3 % F.p, e2), F.mul(2 % F.p, e3))
        raise AssertionError("idempotent lifting did not converge")

    @property
    def idempotents(self):
        if self._idempotents is None:
            self._compute_idempotents()
        return self._idempotents

    @property
    def pims(self) -> list[Pim]:
        if self._pims is None:
            F, a = self.F, self.algebra
            out = []
            for i, e in enumerate(self.idempotents):
                R = a.rmul_elt(e)  # x -> x e
                cols = row_space(F, R.T)  # rows span A e
                # adapted basis: idempotent first, then complement lifts, then J*P
                JPe = self._jp_basis(cols, e)
                basis = _adapted_basis(F, e, cols, JPe)
                d = basis.shape[1]
                act = np.zeros((a.dim, d, d), dtype=np.int64)
                solver = LinSolver(F, basis)
                for t in range(a.dim):
                    img = F.matmul(a.left_mats[t], basis)
                    sol = solver.solve(img)
                    if sol is None:
                        raise AssertionError("PIM not invariant")
                    act[t] = sol
                gen = solver.solve(e)
                out.append(Pim(i, basis, act, gen, top_dim=self.simples[i].dim))
            total = sum(p.dim * s.dim for p, s in zip(out, self.simples))
            if total != a.dim:
                raise AssertionError("sum dim S_i * dim P_i != dim A")
            self._pims = out
        return self._pims

    def _jp_basis(self, cols, e):
        """Row basis of J * (A e), inside A coordinates."""
        F, a = self.F, self.algebra
        J = self.radical
        if J.shape[0] == 0:
            return np.zeros((0, a.dim), dtype=np.int64)
        prods = F.einsum("ra,si,aik->rsk", J, cols, a.mult)
        return row_space(F, prods.reshape(-1, a.dim))

    @property
    def right_pims(self):
        """Right projective indecomposables e A with right-action tensors."""
        if self._right_pims is None:
            F, a = self.F, self.algebra
            out = []
            for i, e in enumerate(self.idempotents):
                L = a.lmul_elt(e)  # x -> e x
                cols = row_space(F, L.T)
                basis = _adapted_right_basis(F, e, cols, self._pj_basis(cols, e))
                d = basis.shape[1]
                act = np.zeros((a.dim, d, d), dtype=np.int64)
                solver = LinSolver(F, basis)
                for t in range(a.dim):
                    img = F.matmul(a.right_mats[t], basis)  # columns x -> x b_t
                    sol = solver.solve(img)
                    if sol is None:
                        raise AssertionError("right PIM not invariant")
                    act[t] = sol
                gen = solver.solve(e)
                out.append(Pim(i, basis, act, gen, top_dim=self.simples[i].dim))
            self._right_pims = out
        return self._right_pims

    def _pj_basis(self, cols, e):
        """Row basis of (e A) * J."""
        F, a = self.F, self.algebra
        J = self.radical
        if J.shape[0] == 0:
            return np.zeros((0, a.dim), dtype=np.int64)
        prods = F.einsum("si,ra,iak->rsk", cols, J, a.mult)
        return row_space(F, prods.reshape(-1, a.dim))


def _adapted_basis(F, e, cols, jp_rows):
    """Columns [e | complement lifts | basis of JP] for P = A e."""
    d = cols.shape[0]
    stack = [e]
    cur = row_space(F, np.vstack([jp_rows, np.asarray(e)[None, :]]) if jp_rows.shape[0] else np.asarray(e)[None, :])
    for r in range(d):
        cand = cols[r]
        test = row_space(F, np.vstack([cur, cand[None, :]]))
        if test.shape[0] > cur.shape[0]:
            stack.append(cand)
            cur = test
        if len(stack) + jp_rows.shape[0] == d:
            break
    for r in range(jp_rows.shape[0]):
        stack.append(jp_rows[r])
    basis = np.stack(stack, axis=1)
    if basis.shape[1] != d or rank(F, basis.T) != d:
        raise AssertionError("adapted PIM basis is not a basis")
    return basis


_adapted_right_basis = _adapted_basis


def intersect_rows(F, U, V):
    from .ff import intersect_row_spaces

    return intersect_row_spaces(F, U, V)


# -- public spec operations ---------------------------------------------------


def radical(a, seed: int = 0xB10C):
    """Row basis of the Jacobson radical (largest nilpotent ideal)."""
    return AlgebraOps(a, seed=seed, require_split=False).radical


def simple_modules(a, seed: int = 0xB10C):
    """Complete list of simple modules up to isomorphism, canonically sorted."""
    return AlgebraOps(a, seed=seed).simples
