"""Minimal projective resolutions, Ext spaces, chain lifts and products.

Left resolutions work over an AlgebraOps context.  Terms are direct sums
of projective indecomposables, stored structurally (a tuple of PIM
indices); differentials are plain matrices on underlying coordinates.
Covers are built from honest top computations: complement of J.V inside
V, split into isotypic pieces by the primitive idempotents.

Bimodule resolutions (for Hochschild cohomology) use pairs P_i (x) e_j A.
Their covers are sized by multiplicity counts supplied by the caller and
verified by a surjectivity rank check, with an honest two-sided top
computation as fallback; either way the complex is exact by construction
and Ext is read off the Hom complex, so the sizing hints can never change
a computed dimension.

Degree conventions: diffs[n] : P_n -> P_{n-1} for n >= 1, aug : P_0 -> M.
kernel(n) is a row basis of ker(aug) for n = 0 and ker(d_n) for n >= 1,
so Omega^{n+1}(M) = kernel(n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ff import LinSolver, kernel_basis, rank, row_space, rref
from .modrep import AlgebraOps, ModuleRep, Pim, module_from_vectors


class Term:
    """Direct sum of projective indecomposables, referenced by kind index."""

    def __init__(self, dims_of_kind, kinds):
        self.kinds = tuple(int(k) for k in kinds)
        self.sizes = [int(dims_of_kind[k]) for k in self.kinds]
        self.offsets = np.concatenate([[0], np.cumsum(self.sizes)]).astype(int)
        self.dim = int(self.offsets[-1])

    def part(self, X, alpha):
        return X[self.offsets[alpha] : self.offsets[alpha + 1]]


def _coordinatize(F, Vrref, piv, X):
    """Coordinates of columns X in the row-rref basis Vrref; asserts membership."""
    C = X[piv, :]
    if not np.array_equal(F.matmul(Vrref.T, C), X):
        raise AssertionError("vector not in the expected subspace")
    return C


class LeftResolution:
    """Minimal resolution of a module by sums of PIMs."""

    def __init__(self, ops: AlgebraOps, module: ModuleRep):
        self.ops = ops
        self.F = ops.F
        self.module = module
        self.terms: list[Term] = []
        self.diffs: list[np.ndarray] = []  # diffs[n]: P_n -> P_{n-1} (n >= 1)
        self.aug: np.ndarray | None = None
        self._kernels: list[np.ndarray] = []
        self._col_actions = {}  # (kind_src, kind_tgt) -> (d_src, d_tgt, d_tgt)
        self._col_actions_mod = {}  # id(N) -> per kind tensors
        self._esub = {}  # (level, simple) -> (basis cols, solver-ready)
        self._lift_solvers = {}

    # -- structured application ------------------------------------------

    def pim(self, k) -> Pim:
        return self.ops.pims[k]

    def apply_term(self, n, elt, X):
        """Action of the algebra element on term-n vectors (columns)."""
        F = self.F
        term = self.terms[n]
        out = np.zeros_like(np.asarray(X))
        for alpha, k in enumerate(term.kinds):
            act = F.einsum("a,aij->ij", elt, self.pim(k).action)
            sl = slice(term.offsets[alpha], term.offsets[alpha + 1])
            out[sl] = F.matmul(act, X[sl])
        return out

    def col_actions(self, kind_src, kind_tgt):
        """Action of each basis column of PIM kind_src on PIM kind_tgt coords."""
        key = (kind_src, kind_tgt)
        if key not in self._col_actions:
            F = self.F
            self._col_actions[key] = F.einsum(
                "ac,aij->cij", self.pim(kind_src).basis, self.pim(kind_tgt).action
            )
        return self._col_actions[key]

    def col_actions_on(self, N: ModuleRep, kind_src):
        key = (id(N), kind_src)
        if key not in self._col_actions_mod:
            F = self.F
            self._col_actions_mod[key] = F.einsum(
                "ac,aij->cij", self.pim(kind_src).basis, N.action
            )
        return self._col_actions_mod[key]

    # -- construction ------------------------------------------------------

    def extend_to(self, n: int):
        while len(self.terms) <= n:
            self._step()

    def _step(self):
        F = self.F
        ops = self.ops
        if not self.terms:
            m = self.module.dim
            V = F.eye(m)
            piv = list(range(m))
            JV = ops.radical_of_module(self.module)
            gens = self._top_generators(V, piv, JV, self._apply_M0)
            term = Term([p.dim for p in ops.pims], [k for k, _ in gens])
            D = np.zeros((m, term.dim), dtype=np.int64)
            for alpha, (k, g) in enumerate(gens):
                cols = F.einsum("cij,j->ic", self.col_actions_mod_M0(k), g)
                D[:, term.offsets[alpha] : term.offsets[alpha + 1]] = cols
            if rank(F, D) != m:
                raise AssertionError("cover of the module is not surjective")
            self.terms.append(term)
            self.aug = D
            self._kernels.append(kernel_basis(F, D))
            return
        n = len(self.terms)
        K = self._kernels[n - 1]  # rows, in P_{n-1} coordinates
        prev = self.terms[n - 1]
        if K.shape[0] == 0:
            term = Term([p.dim for p in self.ops.pims], [])
            self.terms.append(term)
            self.diffs.append(np.zeros((prev.dim, 0), dtype=np.int64))
            self._kernels.append(np.zeros((0, 0), dtype=np.int64))
            return
        piv = rref(F, K)[2]
        JV = self._radical_of_subspace(n - 1, K)
        apply_fn = lambda elt, X: self.apply_term(n - 1, elt, X)
        gens = self._top_generators(K, piv, JV, apply_fn)
        term = Term([p.dim for p in self.ops.pims], [k for k, _ in gens])
        D = np.zeros((prev.dim, term.dim), dtype=np.int64)
        for alpha, (k, g) in enumerate(gens):
            acts = self.col_actions_term(k, n - 1)
            cols = F.einsum("cij,j->ic", acts, g)
            D[:, term.offsets[alpha] : term.offsets[alpha + 1]] = cols
        if rank(F, D) != K.shape[0]:
            raise AssertionError("cover of the syzygy is not surjective")
        self.terms.append(term)
        self.diffs.append(D)
        self._kernels.append(kernel_basis(F, D))

    def col_actions_mod_M0(self, kind_src):
        return self.col_actions_on(self.module, kind_src)

    def col_actions_term(self, kind_src, n_tgt):
        """Per-column action of PIM kind_src basis on term-n_tgt vectors."""
        F = self.F
        term = self.terms[n_tgt]
        d_src = self.pim(kind_src).dim
        out = np.zeros((d_src, term.dim, term.dim), dtype=np.int64)
        for alpha, k in enumerate(term.kinds):
            sl = slice(term.offsets[alpha], term.offsets[alpha + 1])
            out[:, sl, sl] = self.col_actions(kind_src, k)
        return out

    def _apply_M0(self, elt, X):
        return self.F.matmul(self.module.act(elt), X)

    def _radical_of_subspace(self, level, V):
        """Row basis of J.V for V given by rows in term-`level` coordinates."""
        F = self.F
        J = self.ops.radical
        if J.shape[0] == 0 or V.shape[0] == 0:
            return np.zeros((0, V.shape[1]), dtype=np.int64)
        chunks = [self.apply_term(level, j, V.T).T for j in J]
        return row_space(F, np.vstack(chunks))

    def _top_generators(self, V, piv, JV, apply_fn):
        """[(simple index, ambient generator vector)] for a minimal cover of V."""
        F = self.F
        v = V.shape[0]
        JVv = _coordinatize(F, V, piv, JV.T).T if JV.shape[0] else np.zeros((0, v), dtype=np.int64)
        JVv = row_space(F, JVv)
        piv2 = rref(F, JVv)[2] if JVv.shape[0] else []
        nonpiv2 = [c for c in range(v) if c not in set(piv2)]
        t = len(nonpiv2)

        def topclass(Xv):
            if JVv.shape[0]:
                Xv = F.sub(Xv, F.matmul(JVv.T, Xv[piv2, :]))
            return Xv[nonpiv2, :]

        lifts = V[nonpiv2].T  # ambient columns, top-class representatives
        gens = []
        total = 0
        for i, s in enumerate(self.ops.simples):
            e = self.ops.idempotents[i]
            W = apply_fn(e, lifts)
            Wv = _coordinatize(F, V, piv, W)
            E = topclass(Wv)
            R, rk, pcols = rref(F, E)[:3]
            total += rk * s.dim
            for c in pcols:
                gens.append((i, W[:, c]))
        if total != t:
            raise AssertionError("isotypic generator count mismatch")
        return gens

    # -- inspection --------------------------------------------------------

    def dim(self, n):
        self.extend_to(n)
        return self.terms[n].dim

    def diff(self, n):
        self.extend_to(n)
        return self.aug if n == 0 else self.diffs[n - 1]

    def kernel(self, n):
        """Row basis of ker(d_n) in P_n coordinates; Omega^{n+1} of the module."""
        self.extend_to(n)
        return self._kernels[n]

    def multiplicity(self, n, simple_index):
        self.extend_to(n)
        return sum(1 for k in self.terms[n].kinds if k == simple_index)

    def term_module(self, n) -> ModuleRep:
        """Term n as a dense module (for inspection and tests)."""
        F = self.F
        self.extend_to(n)
        term = self.terms[n]
        a = self.ops.algebra
        act = np.zeros((a.dim, term.dim, term.dim), dtype=np.int64)
        for alpha, k in enumerate(term.kinds):
            sl = slice(term.offsets[alpha], term.offsets[alpha + 1])
            act[:, sl, sl] = self.pim(k).action
        return ModuleRep(a, act)

    def syzygy_rows(self, n):
        """Omega^n as rows inside term n-1 (n >= 1); Omega^0 is the module."""
        assert n >= 1
        return self.kernel(n - 1)

    def syzygy_module(self, n) -> ModuleRep:
        if n == 0:
            return self.module
        rows = self.syzygy_rows(n)
        parent = self.term_module(n - 1)
        return module_from_vectors(self.ops.algebra, parent, rows)

    def gen_vector(self, n, alpha):
        """The generator of summand alpha of P_n, as an ambient vector."""
        term = self.terms[n]
        k = term.kinds[alpha]
        out = np.zeros(term.dim, dtype=np.int64)
        out[term.offsets[alpha] : term.offsets[alpha + 1]] = self.pim(k).gen_coords
        return out

    def verify(self, upto):
        """d.d = 0, exactness, and minimality through the given degree."""
        F = self.F
        self.extend_to(upto)
        ok = True
        aug = self.aug
        for n in range(1, upto + 1):
            d = self.diff(n)
            prev = self.diff(n - 1)
            comp = F.matmul(prev, d)
            ok &= not np.any(comp)
            ok &= rank(F, d) == self._kernels[n - 1].shape[0]
            ok &= self._diff_minimal(n)
        return ok

    def _diff_minimal(self, n):
        """Columns of d_n lie in rad(P_{n-1}): top coordinates vanish."""
        term = self.terms[n - 1]
        d = self.diff(n)
        for alpha, k in enumerate(term.kinds):
            t = self.pim(k).top_dim
            sl = slice(term.offsets[alpha], term.offsets[alpha] + t)
            if np.any(d[sl, :]):
                return False
        return True


# -- Hom complexes and Ext ----------------------------------------------------


class ExtSpace:
    """Ext^*(M, N) from the resolution of M and the coefficient module N."""

    def __init__(self, res: LeftResolution, N: ModuleRep):
        self.res = res
        self.N = N
        self.F = res.F
        self._e_sub = {}
        self._dstar = {}
        self._deg_data = {}

    def e_subspace(self, i):
        """Row basis of e'_i N."""
        if i not in self._e_sub:
            F = self.F
            e = self.res.ops.idempotents[i]
            P = self.N.act(e)
            rows = row_space(F, P.T)
            piv = rref(F, rows)[2] if rows.shape[0] else []
            self._e_sub[i] = (rows, piv)
        return self._e_sub[i]

    def hom_dim(self, n):
        self.res.extend_to(n)
        term = self.res.terms[n]
        return sum(self.e_subspace(k)[0].shape[0] for k in term.kinds)

    def hom_offsets(self, n):
        term = self.res.terms[n]
        sizes = [self.e_subspace(k)[0].shape[0] for k in term.kinds]
        return np.concatenate([[0], np.cumsum(sizes)]).astype(int)

    def evaluate(self, n, phi, X):
        """Value columns of the hom with coordinates phi at term-n columns X."""
        F = self.F
        term = self.res.terms[n]
        offs = self.hom_offsets(n)
        out = np.zeros((self.N.dim, X.shape[1]), dtype=np.int64)
        for alpha, k in enumerate(term.kinds):
            rows, _ = self.e_subspace(k)
            h = offs[alpha + 1] - offs[alpha]
            if h == 0:
                continue
            w = F.einsum("h,hm->m", phi[offs[alpha] : offs[alpha + 1]], rows)
            acts = self.res.col_actions_on(self.N, k)  # (d_k, N, N)
            Xa = term.part(X, alpha)
            vals = F.einsum("cnm,m,cx->nx", acts, w, Xa)
            out = F.add(out, vals)
        return out

    def dstar(self, n):
        """Hom(P_{n-1}, N) -> Hom(P_n, N), precomposition with d_n."""
        if n in self._dstar:
            return self._dstar[n]
        F = self.F
        self.res.extend_to(n)
        term_n = self.res.terms[n]
        offs_n = self.hom_offsets(n)
        dim_prev = self.hom_dim(n - 1)
        dim_n = self.hom_dim(n)
        D = np.zeros((dim_n, dim_prev), dtype=np.int64)
        d = self.res.diff(n)
        gen_images = np.stack(
            [F.matmul(d, self.res.gen_vector(n, alpha)[:, None])[:, 0]
             for alpha in range(len(term_n.kinds))],
            axis=1,
        ) if term_n.kinds else np.zeros((d.shape[0], 0), dtype=np.int64)
        for j in range(dim_prev):
            phi = np.zeros(dim_prev, dtype=np.int64)
            phi[j] = 1
            vals = self.evaluate(n - 1, phi, gen_images)  # (N.dim, #summands)
            col = np.zeros(dim_n, dtype=np.int64)
            for alpha, k in enumerate(term_n.kinds):
                rows, piv = self.e_subspace(k)
                h = offs_n[alpha + 1] - offs_n[alpha]
                if h == 0:
                    if np.any(vals[:, alpha]):
                        raise AssertionError("hom value escapes the e-subspace")
                    continue
                col[offs_n[alpha] : offs_n[alpha + 1]] = _coordinatize(
                    F, rows, piv, vals[:, [alpha]]
                )[:, 0]
            D[:, j] = col
        self._dstar[n] = D
        return D

    def _degree(self, n):
        if n in self._deg_data:
            return self._deg_data[n]
        F = self.F
        Z = kernel_basis(F, self.dstar(n + 1)) if self.hom_dim(n) else np.zeros((0, 0), dtype=np.int64)
        if n == 0:
            B = np.zeros((0, self.hom_dim(0)), dtype=np.int64)
        else:
            B = row_space(F, self.dstar(n).T)
        # class representatives: kernel rows independent from the boundaries
        reps = []
        cur = B
        for z in Z:
            test = row_space(F, np.vstack([cur, z[None, :]]) if cur.shape[0] else z[None, :])
            if test.shape[0] > cur.shape[0]:
                reps.append(z)
                cur = test
        reps = np.array(reps, dtype=np.int64).reshape(len(reps), self.hom_dim(n))
        basis = np.vstack([B, reps]) if B.shape[0] else reps
        solver = LinSolver(F, basis.T) if basis.shape[0] else None
        data = {"dim": len(reps), "reps": reps, "bound": B, "solver": solver}
        self._deg_data[n] = data
        return data

    def dim(self, n):
        return self._degree(n)["dim"]

    def classes(self, n):
        """Basis of Ext^n as cocycle coordinate vectors."""
        return self._degree(n)["reps"]

    def class_coords(self, n, phi):
        """Coordinates of the class of the cocycle phi in the chosen basis."""
        data = self._degree(n)
        if data["dim"] == 0:
            return np.zeros(0, dtype=np.int64)
        sol = data["solver"].solve(np.asarray(phi))
        if sol is None:
            raise AssertionError("vector is not a cocycle combination")
        nb = data["bound"].shape[0]
        return sol[nb:]

    def is_cocycle(self, n, phi):
        D = self.dstar(n + 1)
        return not np.any(self.F.matmul(D, np.asarray(phi)[:, None]))


@dataclass
class ExtClass:
    """A cohomology class: cocycle coordinates on Hom(P_deg, N)."""

    ext: ExtSpace
    degree: int
    phi: np.ndarray

    @property
    def source(self) -> ModuleRep:
        return self.ext.res.module

    @property
    def target(self) -> ModuleRep:
        return self.ext.N

    def coords(self):
        return self.ext.class_coords(self.degree, self.phi)

    def is_zero(self):
        return not np.any(self.coords())


# -- chain lifting and Yoneda products ---------------------------------------


class ChainLift:
    """Stages of a lift of a cocycle P^src_deg -> M through the resolution
    of M: stage s is a module map P^src_{deg+s} -> P^tgt_s recorded by
    generator images."""

    def __init__(self, src: LeftResolution, tgt: LeftResolution, cls: ExtClass):
        assert cls.ext.res is src
        self.src = src
        self.tgt = tgt
        self.cls = cls
        self.F = src.F
        self.stages = []  # stage s: (tgt_ambient_dim x num_summands(P_{deg+s}))

    def _esub_cols(self, level, i):
        """Columns spanning e'_i P_level in the target resolution."""
        tgt = self.tgt
        F = self.F
        key = ("ecols", level, i)
        if key not in tgt._esub:
            term = tgt.terms[level]
            e = tgt.ops.idempotents[i]
            blocks = []
            for alpha, k in enumerate(term.kinds):
                mat = F.einsum("a,aij->ij", e, tgt.pim(k).action)
                loc = row_space(F, mat.T)  # rows within the pim coords
                blk = np.zeros((term.dim, loc.shape[0]), dtype=np.int64)
                blk[term.offsets[alpha] : term.offsets[alpha + 1], :] = loc.T
                blocks.append(blk)
            cols = np.concatenate(blocks, axis=1) if blocks else np.zeros((term.dim, 0), dtype=np.int64)
            tgt._esub[key] = cols
        return tgt._esub[key]

    def _solver(self, level, i):
        key = (level, i)
        if key not in self.tgt._lift_solvers:
            F = self.F
            cols = self._esub_cols(level, i)
            D = self.tgt.diff(level) if level > 0 else self.tgt.aug
            self.tgt._lift_solvers[key] = (LinSolver(F, F.matmul(D, cols)), cols)
        return self.tgt._lift_solvers[key]

    def stage(self, s):
        while len(self.stages) <= s:
            self._extend()
        return self.stages[s]

    def _extend(self):
        F = self.F
        s = len(self.stages)
        deg = self.cls.degree
        self.src.extend_to(deg + s)
        self.tgt.extend_to(s)
        term = self.src.terms[deg + s]
        n_sum = len(term.kinds)
        out = np.zeros((self.tgt.terms[s].dim, n_sum), dtype=np.int64)
        for alpha in range(n_sum):
            i = term.kinds[alpha]
            g = self.src.gen_vector(deg + s, alpha)
            if s == 0:
                w = self.cls.ext.evaluate(deg, self.cls.phi, g[:, None])[:, 0]
            else:
                dg = F.matmul(self.src.diff(deg + s), g[:, None])
                w = self.eval_stage(s - 1, dg)[:, 0]
            solver, cols = self._solver(s, i)
            sol = solver.solve(w)
            if sol is None:
                raise AssertionError("chain lift system inconsistent")
            out[:, alpha] = F.matmul(cols, sol[:, None])[:, 0]
        self.stages.append(out)

    def eval_stage(self, s, X):
        """Evaluate stage-s map at term-(deg+s) columns X."""
        F = self.F
        self.stage(s)
        term = self.src.terms[self.cls.degree + s]
        vals = self.stages[s]
        out = np.zeros((vals.shape[0], X.shape[1]), dtype=np.int64)
        for alpha, k in enumerate(term.kinds):
            Xa = term.part(X, alpha)
            # value = sum_c (X_alpha)_c * (elt_c . v_alpha) on the target term
            v = vals[:, alpha]
            cols = self._col_apply(s, k, v)
            out = F.add(out, F.matmul(cols, Xa))
        return out

    def _col_apply(self, s, kind_src, v):
        """Matrix whose column c is (basis elt c of PIM kind_src) . v."""
        F = self.F
        tgt_term = self.tgt.terms[s]
        out = np.zeros((tgt_term.dim, self.src.pim(kind_src).dim), dtype=np.int64)
        for beta, kt in enumerate(tgt_term.kinds):
            sl = slice(tgt_term.offsets[beta], tgt_term.offsets[beta + 1])
            acts = self.tgt.col_actions(kind_src, kt)  # (d_src, d_t, d_t)
            out[sl, :] = F.einsum("cij,j->ic", acts, v[sl])
        return out


def yoneda(x: ExtClass, y: ExtClass, lift_cache=None) -> ExtClass:
    """Composition product: x in Ext^a(M', M''), y in Ext^b(M, M')."""
    if y.target is not x.source:
        if y.target.fingerprint() != x.source.fingerprint():
            raise ValueError("composition mismatch: target(y) != source(x)")
    res_m = y.ext.res
    res_mp = x.ext.res
    key = None
    if lift_cache is not None:
        key = (id(y.ext), y.degree, y.phi.tobytes(), id(res_mp))
    if key is not None and key in lift_cache:
        lift = lift_cache[key]
    else:
        lift = ChainLift(res_m, res_mp, y)
        if key is not None:
            lift_cache[key] = lift
    a, b = x.degree, y.degree
    F = res_m.F
    res_m.extend_to(a + b)
    term = res_m.terms[a + b]
    # evaluate x at the stage-a generator images of the lift of y
    lift.stage(a)
    vals = lift.stages[a]  # (dim P^{M'}_a, #summands of P^M_{a+b})
    xvals = x.ext.evaluate(a, x.phi, vals)  # (M''.dim, #summands)
    out_ext = _ext_space_for(res_m, x.target)
    offs = out_ext.hom_offsets(a + b)
    phi = np.zeros(out_ext.hom_dim(a + b), dtype=np.int64)
    for alpha, k in enumerate(term.kinds):
        rows, piv = out_ext.e_subspace(k)
        h = offs[alpha + 1] - offs[alpha]
        if h == 0:
            if np.any(xvals[:, alpha]):
                raise AssertionError("composite value escapes e-subspace")
            continue
        phi[offs[alpha] : offs[alpha + 1]] = _coordinatize(F, rows, piv, xvals[:, [alpha]])[:, 0]
    return ExtClass(out_ext, a + b, phi)


_EXT_CACHE: dict = {}


def _ext_space_for(res: LeftResolution, N: ModuleRep) -> ExtSpace:
    key = (id(res), id(N))
    if key not in _EXT_CACHE:
        _EXT_CACHE[key] = ExtSpace(res, N)
    return _EXT_CACHE[key]


def ext_space(res: LeftResolution, N: ModuleRep, deg: int):
    """(dimension, list of ExtClass) for Ext^deg(module of res, N)."""
    es = _ext_space_for(res, N)
    res.extend_to(deg + 1)
    reps = es.classes(deg)
    return es.dim(deg), [ExtClass(es, deg, r.copy()) for r in reps]


def projective_cover(ops: AlgebraOps, m: ModuleRep):
    """(P, cover matrix P -> m) with kernel inside rad P."""
    res = LeftResolution(ops, m)
    res.extend_to(0)
    return res.term_module(0), res.aug


def carlson_module(res_k: LeftResolution, z: ExtClass) -> ModuleRep:
    """Kernel of the induced surjection Omega^deg(k) -> k for z != 0."""
    if z.is_zero():
        raise ValueError("Carlson module of the zero class")
    deg = z.degree
    F = res_k.F
    if deg < 1:
        raise ValueError("positive degree required")
    res_k.extend_to(deg)
    W = res_k.kernel(deg - 1)  # Omega^deg rows inside P_{deg-1}
    d = res_k.diff(deg)
    solver = LinSolver(F, d)
    vals = np.zeros(W.shape[0], dtype=np.int64)
    for r in range(W.shape[0]):
        x = solver.solve(W[r])
        if x is None:
            raise AssertionError("syzygy vector not in the image of d")
        vals[r] = z.ext.evaluate(deg, z.phi, x[:, None])[0, 0]
    L_rows_coords = kernel_basis(F, vals[None, :])  # rows in W-coordinates
    parent = res_k.term_module(deg - 1)
    ambient_rows = F.matmul(L_rows_coords, W)
    syz = module_from_vectors(res_k.ops.algebra, parent, W)
    inner = _coordinatize(F, row_space(F, W), rref(F, row_space(F, W))[2], ambient_rows.T).T
    return module_from_vectors(res_k.ops.algebra, syz, inner)


def coinduced_module(a, u) -> ModuleRep:
    """Hom over the image of t -> u from the algebra to k, as a left module."""
    F = a.field
    Lu = a.lmul_elt(u)
    K = kernel_basis(F, Lu.T)  # covectors killing u.x
    piv = rref(F, K)[2]
    act = np.zeros((a.dim, K.shape[0], K.shape[0]), dtype=np.int64)
    for t in range(a.dim):
        R = a.right_mats[t]
        rows = F.matmul(K, R)  # f -> f(. b_t)
        act[t] = _coordinatize(F, K, piv, rows.T)
    return ModuleRep(a, act)
