"""Hochschild cohomology via explicit bimodule resolutions.

A bimodule over the algebra A is resolved by direct sums of the projective
bimodules P_i (x) (e_j A).  Terms are structural (pair indices); vectors
carry (c1, c2)-flattened coordinates per summand.  Cover sizes can be
supplied as multiplicity hints (for Hopf algebras these come from the
one-sided cohomology of the diagonal restrictions); every cover is
verified surjective by a rank computation and falls back to an honest
two-sided top computation, so hints affect speed only, never the computed
dimensions: HH is read off the Hom complex of an exact complex either way.
"""

from __future__ import annotations

import numpy as np

from .ff import LinSolver, kernel_basis, rank, row_space, rref
from .modrep import AlgebraOps
from .resolution import _coordinatize


class EnvContext:
    """Pairs of left and right projective indecomposables over one algebra."""

    def __init__(self, ops: AlgebraOps):
        self.ops = ops
        self.F = ops.F
        self.algebra = ops.algebra
        ns = len(ops.simples)
        self.pairs = [(i, j) for i in range(ns) for j in range(ns)]
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        self._pair_dims = [
            ops.pims[i].dim * ops.right_pims[j].dim for (i, j) in self.pairs
        ]
        self._corner = {}
        self._eval_tensors = {}

    def pair_dim(self, k):
        return self._pair_dims[k]

    def pair_top_positions(self, k):
        """Coordinate positions of the two-sided top inside pair k."""
        i, j = self.pairs[k]
        d1 = self.ops.pims[i].dim
        d2 = self.ops.right_pims[j].dim
        t1 = self.ops.pims[i].top_dim
        t2 = self.ops.right_pims[j].top_dim
        pos = []
        for c1 in range(t1):
            for c2 in range(t2):
                pos.append(c1 * d2 + c2)
        return pos

    def gen_coords(self, k):
        i, j = self.pairs[k]
        g1 = self.ops.pims[i].gen_coords
        g2 = self.ops.right_pims[j].gen_coords
        return self.F.mul(g1[:, None], g2[None, :]).reshape(-1)


class EnvTerm:
    def __init__(self, ctx: EnvContext, kinds):
        self.kinds = tuple(int(k) for k in kinds)
        self.sizes = [ctx.pair_dim(k) for k in self.kinds]
        self.offsets = np.concatenate([[0], np.cumsum(self.sizes)]).astype(int)
        self.dim = int(self.offsets[-1])

    def part(self, X, alpha):
        return X[self.offsets[alpha] : self.offsets[alpha + 1]]


class EnvResolution:
    """Resolution of a bimodule M0 (given by lmul/rmul callables) over A^e."""

    def __init__(self, ctx: EnvContext, m0_dim, m0_left, m0_right, hints=None, seed=0xB10C):
        self.ctx = ctx
        self.F = ctx.F
        self.m0_dim = m0_dim
        self.m0_left = m0_left  # (elt, X) -> columns
        self.m0_right = m0_right
        self.hints = hints  # callable (n, i, j) -> int, or None
        self.rng = np.random.default_rng(seed)
        self.terms: list[EnvTerm] = []
        self.diffs: list[np.ndarray] = []
        self.aug = None
        self._kernels: list[tuple] = []  # (rows, pivot columns)
        self.used_fallback = False

    # -- actions -----------------------------------------------------------

    def apply_left(self, n, elt, X):
        F = self.F
        term = self.terms[n]
        out = np.zeros_like(np.asarray(X))
        for alpha, k in enumerate(term.kinds):
            i, j = self.ctx.pairs[k]
            d1 = self.ctx.ops.pims[i].dim
            d2 = self.ctx.ops.right_pims[j].dim
            L = F.einsum("a,aij->ij", elt, self.ctx.ops.pims[i].action)
            Xa = term.part(X, alpha).reshape(d1, d2 * X.shape[1])
            out[term.offsets[alpha] : term.offsets[alpha + 1]] = F.matmul(L, Xa).reshape(
                d1 * d2, X.shape[1]
            )
        return out

    def apply_right(self, n, elt, X):
        F = self.F
        term = self.terms[n]
        out = np.zeros_like(np.asarray(X))
        for alpha, k in enumerate(term.kinds):
            i, j = self.ctx.pairs[k]
            d1 = self.ctx.ops.pims[i].dim
            d2 = self.ctx.ops.right_pims[j].dim
            R = F.einsum("a,aij->ij", elt, self.ctx.ops.right_pims[j].action)
            Xa = term.part(X, alpha).reshape(d1, d2, X.shape[1])
            val = F.einsum("kj,ijl->ikl", R, Xa)
            out[term.offsets[alpha] : term.offsets[alpha + 1]] = val.reshape(
                d1 * d2, X.shape[1]
            )
        return out

    # -- construction --------------------------------------------------------

    def extend_to(self, n):
        while len(self.terms) <= n:
            self._step()

    def _ambient_apply(self, n_or_none, side, elt, X):
        if n_or_none is None:
            return (self.m0_left if side == "l" else self.m0_right)(elt, X)
        return (self.apply_left if side == "l" else self.apply_right)(n_or_none, elt, X)

    def _step(self):
        F = self.F
        n = len(self.terms)
        if n == 0:
            V = F.eye(self.m0_dim)
            piv = list(range(self.m0_dim))
            level = None
            target_rank = self.m0_dim
        else:
            K, piv = self._kernels[n - 1]
            V = K
            level = n - 1
            target_rank = K.shape[0]
            if target_rank == 0:
                term = EnvTerm(self.ctx, [])
                self.terms.append(term)
                self.diffs.append(np.zeros((self.terms[n - 1].dim, 0), dtype=np.int64))
                self._kernels.append((np.zeros((0, 0), dtype=np.int64), []))
                return
        top_bound = None
        if self.hints is not None:
            top_bound = 0
            for (i, j) in self.ctx.pairs:
                s1 = self.ctx.ops.simples[i].dim
                s2 = self.ctx.ops.simples[j].dim
                top_bound += int(self.hints(n, i, j)) * s1 * s2
        gens = self._gens_honest(n, V, piv, level, top_bound=top_bound)
        term = EnvTerm(self.ctx, [k for k, _ in gens])
        D = self._assemble_diff(level, term, gens)
        R, rk, pivots = rref(F, D)[:3]
        if rk != target_rank:
            if top_bound is not None:
                # the early-exit bound was wrong; redo without it
                self.used_fallback = True
                gens = self._gens_honest(n, V, piv, level, top_bound=None)
                term = EnvTerm(self.ctx, [k for k, _ in gens])
                D = self._assemble_diff(level, term, gens)
                R, rk, pivots = rref(F, D)[:3]
            if rk != target_rank:
                raise AssertionError("bimodule cover is not surjective")
        self.terms.append(term)
        if n == 0:
            self.aug = D
        else:
            self.diffs.append(D)
        self._kernels.append(self._kernel_from_rref(R, rk, pivots, D.shape[1]))

    def _kernel_from_rref(self, R, rk, pivots, ncols):
        F = self.F
        free = [c for c in range(ncols) if c not in set(pivots)]
        K = F.zeros((len(free), ncols))
        for idx, fcol in enumerate(free):
            K[idx, fcol] = 1
            if rk:
                K[idx, pivots] = F.neg(R[:rk, fcol])
        return K, free

    def _gens_honest(self, n, V, piv, level, top_bound=None):
        """Two-sided top of V: complement of J.V + V.J, split into corners.

        With a top_bound (expected top dimension) the radical-span
        accumulation stops as soon as the complement reaches that size;
        the subsequent surjectivity rank check keeps this honest.
        """
        F = self.F
        J = self.ctx.ops.radical
        v = V.shape[0]
        want = None if top_bound is None else v - top_bound
        JVv = np.zeros((0, v), dtype=np.int64)
        for jj in J:
            for side in ("l", "r"):
                chunk = self._ambient_apply(level, side, jj, V.T).T
                Cv = _coordinatize(F, V, piv, chunk.T).T
                JVv = row_space(F, np.vstack([JVv, Cv]) if JVv.shape[0] else Cv)
                if want is not None and JVv.shape[0] >= want:
                    break
            if want is not None and JVv.shape[0] >= want:
                break
        if want is not None and JVv.shape[0] > want:
            raise AssertionError("radical span exceeds the hinted bound")
        piv2 = rref(F, JVv)[2] if JVv.shape[0] else []
        nonpiv2 = [c for c in range(v) if c not in set(piv2)]

        def topclass(Xv):
            if JVv.shape[0]:
                Xv = F.sub(Xv, F.matmul(JVv.T, Xv[piv2, :]))
            return Xv[nonpiv2, :]

        lifts = V[nonpiv2].T
        gens = []
        total = 0
        t = len(nonpiv2)
        for k, (i, j) in enumerate(self.ctx.pairs):
            ei = self.ctx.ops.idempotents[i]
            ej = self.ctx.ops.idempotents[j]
            W = self._ambient_apply(level, "l", ei, self._ambient_apply(level, "r", ej, lifts))
            Wv = _coordinatize(F, V, piv, W)
            E = topclass(Wv)
            R, rk, pcols = rref(F, E)[:3]
            s1 = self.ctx.ops.simples[i].dim
            s2 = self.ctx.ops.simples[j].dim
            total += rk * s1 * s2
            for c in pcols:
                gens.append((k, W[:, c]))
        if total != t:
            raise AssertionError("two-sided isotypic count mismatch")
        return gens

    def _assemble_diff(self, level, term: EnvTerm, gens):
        F = self.F
        amb = self.m0_dim if level is None else self.terms[level].dim
        D = np.zeros((amb, term.dim), dtype=np.int64)
        for alpha, (k, g) in enumerate(gens):
            i, j = self.ctx.pairs[k]
            lb = self.ctx.ops.pims[i].basis  # (dimA, d1) columns are elements
            rb = self.ctx.ops.right_pims[j].basis
            d1, d2 = lb.shape[1], rb.shape[1]
            gr = np.stack(
                [self._ambient_apply(level, "r", rb[:, c2], g[:, None])[:, 0] for c2 in range(d2)],
                axis=1,
            )
            cols = np.zeros((amb, d1 * d2), dtype=np.int64)
            for c1 in range(d1):
                block = self._ambient_apply(level, "l", lb[:, c1], gr)
                cols[:, c1 * d2 : (c1 + 1) * d2] = block
            D[:, term.offsets[alpha] : term.offsets[alpha + 1]] = cols
        return D

    def gen_vector(self, n, alpha):
        term = self.terms[n]
        k = term.kinds[alpha]
        out = np.zeros(term.dim, dtype=np.int64)
        out[term.offsets[alpha] : term.offsets[alpha + 1]] = self.ctx.gen_coords(k)
        return out

    def verify(self, upto):
        F = self.F
        self.extend_to(upto)
        ok = True
        for n in range(1, upto + 1):
            prev = self.aug if n == 1 else self.diffs[n - 2]
            comp = F.matmul(prev, self.diffs[n - 1])
            ok &= not np.any(comp)
            ok &= rank(F, self.diffs[n - 1]) == self._kernels[n - 1][0].shape[0]
        return ok

    def is_minimal_through(self, upto):
        """Differentials land in the radical: top coordinates vanish."""
        self.extend_to(upto)
        for n in range(1, upto + 1):
            term = self.terms[n - 1]
            d = self.diffs[n - 1]
            for alpha, k in enumerate(term.kinds):
                pos = [term.offsets[alpha] + p for p in self.ctx.pair_top_positions(k)]
                if np.any(d[pos, :]):
                    return False
        return True


class HochschildExt:
    """HH^*(A) = Ext over A^e with coefficients in the algebra itself."""

    def __init__(self, res: EnvResolution, alg):
        self.res = res
        self.alg = alg  # coefficient algebra (same as the resolved bimodule)
        self.F = res.F
        self._corner = {}
        self._dstar = {}
        self._deg = {}

    def corner(self, k):
        """Row basis of e_i A e_j for pair k."""
        if k not in self._corner:
            F = self.F
            i, j = self.res.ctx.pairs[k]
            ei = self.res.ctx.ops.idempotents[i]
            ej = self.res.ctx.ops.idempotents[j]
            M = F.matmul(self.alg.lmul_elt(ei), self.alg.rmul_elt(ej))
            rows = row_space(F, M.T)
            piv = rref(F, rows)[2] if rows.shape[0] else []
            self._corner[k] = (rows, piv)
        return self._corner[k]

    def hom_dim(self, n):
        self.res.extend_to(n)
        return sum(self.corner(k)[0].shape[0] for k in self.res.terms[n].kinds)

    def hom_offsets(self, n):
        term = self.res.terms[n]
        sizes = [self.corner(k)[0].shape[0] for k in term.kinds]
        return np.concatenate([[0], np.cumsum(sizes)]).astype(int)

    def pair_eval_tensor(self, k):
        """T[:, (c1,c2), h] = elt_c1 . (corner basis h) . elt_c2, values in A."""
        key = ("T", k)
        if key not in self._corner:
            F = self.F
            rows, _ = self.corner(k)
            i, j = self.res.ctx.pairs[k]
            lb = self.res.ctx.ops.pims[i].basis
            rb = self.res.ctx.ops.right_pims[j].basis
            d1, d2 = lb.shape[1], rb.shape[1]
            h = rows.shape[0]
            T = np.zeros((self.alg.dim, d1 * d2, h), dtype=np.int64)
            for hh in range(h):
                w = rows[hh]
                wr = np.stack(
                    [F.matmul(self.alg.rmul_elt(rb[:, c2]), w[:, None])[:, 0] for c2 in range(d2)],
                    axis=1,
                )
                for c1 in range(d1):
                    T[:, c1 * d2 : (c1 + 1) * d2, hh] = F.matmul(
                        self.alg.lmul_elt(lb[:, c1]), wr
                    )
            self._corner[key] = T
        return self._corner[key]

    def evaluate(self, n, phi, X):
        """Values (in A) of the hom with coordinates phi at term-n columns X."""
        F = self.F
        term = self.res.terms[n]
        offs = self.hom_offsets(n)
        out = np.zeros((self.alg.dim, X.shape[1]), dtype=np.int64)
        for alpha, k in enumerate(term.kinds):
            h = offs[alpha + 1] - offs[alpha]
            if h == 0:
                continue
            T = self.pair_eval_tensor(k)
            Xa = term.part(X, alpha)
            vals = F.einsum("nch,h,cx->nx", T, phi[offs[alpha] : offs[alpha + 1]], Xa)
            out = F.add(out, vals)
        return out

    def dstar(self, n):
        if n in self._dstar:
            return self._dstar[n]
        F = self.F
        self.res.extend_to(n)
        term_n = self.res.terms[n]
        offs_n = self.hom_offsets(n)
        dim_prev = self.hom_dim(n - 1)
        dim_n = self.hom_dim(n)
        D = np.zeros((dim_n, dim_prev), dtype=np.int64)
        d = self.res.diffs[n - 1]
        if term_n.kinds:
            gen_images = np.stack(
                [F.matmul(d, self.res.gen_vector(n, a)[:, None])[:, 0] for a in range(len(term_n.kinds))],
                axis=1,
            )
        else:
            gen_images = np.zeros((d.shape[0], 0), dtype=np.int64)
        for col in range(dim_prev):
            phi = np.zeros(dim_prev, dtype=np.int64)
            phi[col] = 1
            vals = self.evaluate(n - 1, phi, gen_images)
            out = np.zeros(dim_n, dtype=np.int64)
            for alpha, k in enumerate(term_n.kinds):
                h = offs_n[alpha + 1] - offs_n[alpha]
                rows, piv = self.corner(k)
                if h == 0:
                    if np.any(vals[:, alpha]):
                        raise AssertionError("hom value escapes the corner")
                    continue
                out[offs_n[alpha] : offs_n[alpha + 1]] = _coordinatize(
                    F, rows, piv, vals[:, [alpha]]
                )[:, 0]
            D[:, col] = out
        self._dstar[n] = D
        return D

    def dim(self, n):
        if n in self._deg:
            return self._deg[n]
        F = self.F
        self.res.extend_to(n + 1)
        if self.hom_dim(n) == 0:
            self._deg[n] = 0
            return 0
        Z = kernel_basis(F, self.dstar(n + 1))
        b = 0 if n == 0 else rank(F, self.dstar(n))
        self._deg[n] = Z.shape[0] - b
        return self._deg[n]


def env_resolution_for_algebra(alg, ops=None, hints=None, seed=0xB10C) -> EnvResolution:
    """The algebra as a bimodule over itself, ready for HH computations."""
    if ops is None:
        ops = AlgebraOps(alg, seed=seed)
    ctx = EnvContext(ops)
    m0_left = lambda elt, X: ctx.F.matmul(alg.lmul_elt(elt), X)
    m0_right = lambda elt, X: ctx.F.matmul(alg.rmul_elt(elt), X)
    return EnvResolution(ctx, alg.dim, m0_left, m0_right, hints=hints, seed=seed)


def hochschild_dims(alg, cap, ops=None, hints=None, seed=0xB10C):
    """[dim HH^n(alg) for n <= cap] by explicit bimodule resolution."""
    res = env_resolution_for_algebra(alg, ops=ops, hints=hints, seed=seed)
    hh = HochschildExt(res, alg)
    return [hh.dim(n) for n in range(cap + 1)], res
