"""Truncated cohomology rings, annihilator ideals and support varieties.

The ring of a Hopf algebra is presented up to a degree cap: generators are
picked greedily (new indecomposables per degree, canonical representatives)
and relations are the per-degree kernels of the monomial evaluation map.
In odd characteristic only the even part is presented; at p = 2 the whole
ring is used.  Every variety verdict is relative to the cap it was
computed at.

Annihilator ideals I(M, N) are computed from the Yoneda module structure
of Ext^*(k, Hom_k(M, N)) over the cohomology ring, which matches the
defining annihilator of Ext^*(M, N).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ff import kernel_basis, rank, row_space, rref, intersect_row_spaces
from .modrep import ModuleRep, dual_module, hom_module, tensor_diagonal, trivial_module
from .poly import Poly, PolyIdeal, PolyRing, groebner, ideal_dim, linear_subspaces, radical_equal
from .resolution import ChainLift, ExtClass, LeftResolution, _ext_space_for, yoneda

_DEG1_NAMES = ["x", "y", "z"]
_HIGH_NAMES = ["w", "u", "v"]


class TruncatedGradedRing:
    """The (even, for odd p) cohomology ring presented up to a degree cap."""

    def __init__(self, res_k: LeftResolution, cap: int):
        self.res = res_k
        self.cap = cap
        self.F = res_k.F
        a = res_k.ops.algebra
        self.algebra = a
        p = self.F.p
        self.ring_degrees = list(range(0, cap + 1)) if p == 2 else list(range(0, cap + 1, 2))
        self.ext = _ext_space_for(res_k, trivial_module(a))
        res_k.extend_to(cap + 1)
        self.piece_dims = [self.ext.dim(d) for d in self.ring_degrees]
        self.generators = []  # (degree, name, ExtClass)
        self.relations = []  # Poly over poly_model
        self.poly_model = None
        self.lift_cache = {}
        self._mono = {}
        self._built = False
        self._build()

    # -- construction -------------------------------------------------------

    def _name_for(self, degree, idx_deg1, idx_high):
        if degree == 1:
            pool = _DEG1_NAMES
            i = idx_deg1
        else:
            pool = _HIGH_NAMES
            i = idx_high
        return pool[i] if i < len(pool) else f"g{len(self.generators) + 1}"

    def _model(self):
        names = tuple(n for _, n, _ in self.generators)
        weights = tuple(d for d, _, _ in self.generators)
        return PolyRing(self.F, names, weights)

    def _build(self):
        F = self.F
        n_deg1 = 0
        n_high = 0
        for d in self.ring_degrees:
            if d == 0:
                continue
            dim_d = self.ext.dim(d)
            model = self._model()
            monos = model.monomials_of_degree(d) if self.generators else []
            span = np.zeros((0, dim_d), dtype=np.int64)
            rows = []
            for m in monos:
                rows.append(self.mono_coords(m, model))
            if rows:
                span = row_space(F, np.stack(rows))
                M = np.stack(rows)
                K = kernel_basis(F, M.T)  # relation coefficient vectors
                old_span = self._old_relation_span(d, model, monos)
                new_rel = _complement_rows(F, old_span, K)
                for v in new_rel:
                    self.relations.append(
                        Poly.from_terms(model, [(m, int(c)) for m, c in zip(monos, v) if c])
                    )
            r = span.shape[0]
            if r < dim_d:
                reps = self.ext.classes(d)
                cur = span
                for i in range(dim_d):
                    e = np.zeros(dim_d, dtype=np.int64)
                    e[i] = 1
                    test = row_space(F, np.vstack([cur, e[None, :]]) if cur.shape[0] else e[None, :])
                    if test.shape[0] > cur.shape[0]:
                        name = self._name_for(d, n_deg1, n_high)
                        if d == 1:
                            n_deg1 += 1
                        else:
                            n_high += 1
                        self.generators.append((d, name, ExtClass(self.ext, d, reps[i].copy())))
                        cur = test
                if cur.shape[0] != dim_d:
                    raise AssertionError("generator completion failed")
                # relations involving the new generators first appear in
                # higher degrees; re-deriving this degree is not needed
        self.poly_model = self._model()
        # re-home relations into the final model (same names, more vars)
        rel = []
        for rpoly in self.relations:
            terms = {}
            for m, c in rpoly.terms.items():
                mm = tuple(list(m) + [0] * (self.poly_model.nvars - len(m)))
                terms[mm] = c
            rel.append(Poly.from_terms(self.poly_model, list(terms.items())))
        self.relations = rel
        self._mono = {}
        self._verify_presentation()
        self._built = True

    def _old_relation_span(self, d, model, monos):
        F = self.F
        idx = {m: i for i, m in enumerate(monos)}
        rows = []
        for rpoly in self.relations:
            rdeg = rpoly.wdeg()
            pad = model.nvars - (len(next(iter(rpoly.terms))) if rpoly.terms else 0)
            for m2 in model.monomials_of_degree(d - rdeg):
                prod = {}
                for m, c in rpoly.terms.items():
                    mm = tuple(a + b for a, b in zip(tuple(list(m) + [0] * pad), m2))
                    prod[mm] = int(F.add(prod.get(mm, 0), c))
                v = np.zeros(len(monos), dtype=np.int64)
                for mm, c in prod.items():
                    if c:
                        v[idx[mm]] = c
                rows.append(v)
        if not rows:
            return np.zeros((0, len(monos)), dtype=np.int64)
        return row_space(F, np.stack(rows))

    def _verify_presentation(self):
        """Evaluation surjective per degree and relations exact by rank count."""
        F = self.F
        for j, d in enumerate(self.ring_degrees):
            if d == 0:
                continue
            monos = self.poly_model.monomials_of_degree(d)
            if not monos and self.piece_dims[j]:
                raise AssertionError("no monomials in a nonzero degree")
            if not monos:
                continue
            rows = np.stack([self.mono_coords(m, self.poly_model) for m in monos])
            if rank(F, rows) != self.piece_dims[j]:
                raise AssertionError("evaluation not surjective at degree %d" % d)
            relspan = self._old_relation_span(d, self.poly_model, monos)
            if len(monos) - relspan.shape[0] != self.piece_dims[j]:
                raise AssertionError("relations incomplete at degree %d" % d)

    # -- monomial evaluation -------------------------------------------------

    def gen_class(self, i) -> ExtClass:
        return self.generators[i][2]

    def unit_class(self) -> ExtClass:
        """The class of the augmentation: the unit of Ext^0(k, k)."""
        F = self.F
        term = self.res.terms[0]
        offs = self.ext.hom_offsets(0)
        phi = np.zeros(self.ext.hom_dim(0), dtype=np.int64)
        for alpha, k in enumerate(term.kinds):
            rows, piv = self.ext.e_subspace(k)
            if offs[alpha + 1] == offs[alpha]:
                continue
            val = F.matmul(self.res.aug, self.res.gen_vector(0, alpha)[:, None])
            from .resolution import _coordinatize

            phi[offs[alpha] : offs[alpha + 1]] = _coordinatize(F, rows, piv, val)[:, 0]
        return ExtClass(self.ext, 0, phi)

    def mono_class(self, mono) -> ExtClass:
        """The Ext class of a monomial in the generators."""
        mono = tuple(mono)
        if mono in self._mono:
            return self._mono[mono]
        total = sum(mono)
        if total == 0:
            cls = self.unit_class()
        else:
            k = max(i for i, e in enumerate(mono) if e)
            sub = list(mono)
            sub[k] -= 1
            subcls = self.mono_class(tuple(sub))
            cls = yoneda(subcls, self.gen_class(k), lift_cache=self.lift_cache)
        self._mono[mono] = cls
        return cls

    def mono_coords(self, mono, model=None):
        mono = tuple(mono)
        cls = self.mono_class(mono)
        return cls.coords()

    def poly_class_coords(self, poly: Poly):
        F = self.F
        d = poly.wdeg()
        out = None
        for m, c in poly.terms.items():
            v = F.mul(c, self.mono_coords(m))
            out = v if out is None else F.add(out, v)
        return out

    # -- module actions --------------------------------------------------

    def coefficient_ext(self, W: ModuleRep):
        return _ext_space_for(self.res, W)

    def gen_action_matrix(self, gen_idx, b, W: ModuleRep):
        """Matrix of the Yoneda action of generator gen_idx on Ext^b(k, W)."""
        F = self.F
        d, _, g = self.generators[gen_idx]
        ew = self.coefficient_ext(W)
        self.res.extend_to(b + d + 1)
        src = ew.classes(b)
        out = np.zeros((ew.dim(b + d), ew.dim(b)), dtype=np.int64)
        for j, rep in enumerate(src):
            xi = ExtClass(ew, b, rep.copy())
            prod = yoneda(xi, g, lift_cache=self.lift_cache)
            out[:, j] = prod.coords()
        return out


def cohomology_ring(res_k: LeftResolution, cap: int) -> TruncatedGradedRing:
    if cap < 2:
        raise ValueError("cap must be at least 2")
    return TruncatedGradedRing(res_k, cap)


def _complement_rows(F, old_rows, all_rows):
    """Rows of all_rows extending the span of old_rows, canonically."""
    out = []
    cur = row_space(F, old_rows) if old_rows.shape[0] else old_rows
    for v in all_rows:
        test = row_space(F, np.vstack([cur, v[None, :]]) if cur.shape[0] else v[None, :])
        if test.shape[0] > cur.shape[0]:
            out.append(v)
            cur = test
    return out


# -- annihilator ideals ------------------------------------------------------


class AnnihilatorData:
    """Per-degree kernels of the action of the ring on Ext^*(k, W)."""

    def __init__(self, ring: TruncatedGradedRing, W: ModuleRep, amax=None):
        self.ring = ring
        self.W = W
        F = ring.F
        cap = ring.cap
        self.amax = (
            amax
            if amax is not None
            else max((d for d in ring.ring_degrees if d <= cap - 2), default=0)
        )
        ring.res.extend_to(cap + 1)
        self._gen_mats = {}
        self.kernels = {}
        for d in ring.ring_degrees:
            if d == 0 or d > self.amax:
                continue
            monos = ring.poly_model.monomials_of_degree(d)
            if not monos:
                self.kernels[d] = np.zeros((0, 0), dtype=np.int64)
                continue
            cols = []
            for m in monos:
                cols.append(self._mono_action_vector(m, d))
            M = np.stack(cols, axis=1)
            self.kernels[d] = kernel_basis(F, M)

    def _gen_matrix(self, k, b):
        key = (k, b)
        if key not in self._gen_mats:
            self._gen_mats[key] = self.ring.gen_action_matrix(k, b, self.W)
        return self._gen_mats[key]

    def _mono_action_vector(self, mono, d):
        """Stacked entries of the action of the monomial on all tested pieces."""
        F = self.ring.F
        ew = self.ring.coefficient_ext(self.W)
        cap = self.ring.cap
        chunks = []
        for b in range(0, cap - d + 1):
            nb = ew.dim(b)
            if nb == 0:
                continue
            M = np.eye(nb, dtype=np.int64)
            cur = b
            for k, e in enumerate(mono):
                for _ in range(e):
                    M = F.matmul(self._gen_matrix(k, cur), M)
                    cur += self.ring.generators[k][0]
            chunks.append(M.reshape(-1))
        if not chunks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(chunks)

    def ideal(self) -> PolyIdeal:
        return extract_ideal(self.ring, self.kernels)


def extract_ideal(ring: TruncatedGradedRing, kernels: dict) -> PolyIdeal:
    """Minimal generators of the ideal with the given per-degree kernels."""
    F = ring.F
    model = ring.poly_model
    gens = []
    for d in sorted(kernels):
        monos = model.monomials_of_degree(d)
        K = kernels[d]
        if K.shape[0] == 0 or not monos:
            continue
        lower = []
        idx = {m: i for i, m in enumerate(monos)}
        for gpoly in gens:
            for m2 in model.monomials_of_degree(d - gpoly.wdeg()):
                prod = gpoly.mul_mono(m2)
                v = np.zeros(len(monos), dtype=np.int64)
                for mm, c in prod.terms.items():
                    v[idx[mm]] = c
                lower.append(v)
        lower_rows = row_space(F, np.stack(lower)) if lower else np.zeros((0, len(monos)), dtype=np.int64)
        if lower_rows.shape[0]:
            # lower multiples must annihilate too
            joined = row_space(F, np.vstack([K, lower_rows]))
            if joined.shape[0] != row_space(F, K).shape[0]:
                raise AssertionError("lower ideal multiples escape the kernel")
        for v in _complement_rows(F, lower_rows, K):
            gens.append(Poly.from_terms(model, [(m, int(c)) for m, c in zip(monos, v) if c]))
    return PolyIdeal(model, gens)


def annihilator_ideal(ring: TruncatedGradedRing, m: ModuleRep, n: ModuleRep, amax=None) -> PolyIdeal:
    """I(M, N): annihilator of Ext^*(M, N) in the truncated ring."""
    W = hom_module(m, n)
    return AnnihilatorData(ring, W, amax=amax).ideal()


def annihilator_kernels(ring: TruncatedGradedRing, m: ModuleRep, n: ModuleRep, amax=None):
    W = hom_module(m, n)
    return AnnihilatorData(ring, W, amax=amax).kernels


# -- support varieties --------------------------------------------------------


@dataclass
class SupportVariety:
    ideal: PolyIdeal
    dim: int
    components: list | None  # list of (subspace rows, PolyIdeal) when split

    def fmt(self):
        return {
            "ideal": self.ideal.fmt(),
            "dim": self.dim,
            "components": None
            if self.components is None
            else [i.fmt() for _, i in self.components],
        }


def support_variety(ideal: PolyIdeal) -> SupportVariety:
    return SupportVariety(ideal, ideal_dim(ideal), find_components(ideal))


def module_support(ring: TruncatedGradedRing, m: ModuleRep, amax=None) -> SupportVariety:
    return support_variety(annihilator_ideal(ring, m, m, amax=amax))


def block_support(ring: TruncatedGradedRing, simples_in_block, amax=None) -> SupportVariety:
    """Union of the supports of the simples: intersect annihilator kernels."""
    F = ring.F
    per = [annihilator_kernels(ring, s, s, amax=amax) for s in simples_in_block]
    degs = sorted(set().union(*[set(k) for k in per])) if per else []
    inter = {}
    for d in degs:
        cur = None
        for k in per:
            K = k.get(d)
            if K is None:
                continue
            cur = K if cur is None else intersect_row_spaces(F, cur, K)
        inter[d] = cur if cur is not None else np.zeros((0, 0), dtype=np.int64)
    return support_variety(extract_ideal(ring, inter))


def find_components(ideal: PolyIdeal, max_vars: int = 4):
    """Write the radical as an intersection of linear primes, if possible.

    Exhaustive search over weight-graded linear subspaces in <= max_vars
    variables; returns None ("unsupported") rather than guessing when the
    shape is not a union of such subspaces or there are too many variables.
    """
    from .poly import linear_subspaces_graded

    ring = ideal.ring
    F = ring.field
    n = ring.nvars
    if n == 0:
        return []
    if n > max_vars or F.q > 5:
        return None
    cands = []
    for B, row_w in linear_subspaces_graded(F, ring.weights):
        param = PolyRing(F, tuple(f"s{i}" for i in range(len(row_w))), row_w)
        ok = True
        for g in ideal.gens:
            sub = g.substitute_linear(B.T, param)
            if not sub.is_zero():
                ok = False
                break
        if ok:
            cands.append((B, row_w))
    # keep the maximal subspaces
    maximal = []
    for B, row_w in cands:
        strictly_inside = False
        for C, _ in cands:
            if C.shape[0] > B.shape[0] and rank(F, np.vstack([C, B])) == C.shape[0]:
                strictly_inside = True
                break
        if not strictly_inside:
            maximal.append((B, row_w))
    if not maximal and ideal.gens:
        # the variety may be just the origin (irrelevant radical): components empty
        if ideal.is_irrelevant():
            return []
        return None
    comps = []
    for B, row_w in maximal:
        forms = kernel_basis(F, B)
        gens = []
        for f in forms:
            pairs = []
            for i in range(n):
                c = int(f[i])
                if c:
                    pairs.append((tuple(1 if j == i else 0 for j in range(n)), c))
            gens.append(Poly.from_terms(ring, pairs))
        comps.append((B, PolyIdeal(ring, gens)))
    # verify: the intersection of the component ideals has the same radical
    D = max([g.wdeg() for g in ideal.gens], default=1)
    D = max(D, 2)
    inter_gens = _intersection_up_to_degree(ring, maximal, D)
    if not radical_equal(ideal, PolyIdeal(ring, inter_gens)):
        return None
    return comps


def _intersection_up_to_degree(ring: PolyRing, subspaces, D):
    """Generators (degree <= D) of the polynomials vanishing on all subspaces."""
    F = ring.field
    gens = []
    for d in range(1, D + 1):
        monos = ring.monomials_of_degree(d)
        if not monos:
            continue
        rows = []
        for B, row_w in subspaces:
            param = PolyRing(F, tuple(f"s{i}" for i in range(len(row_w))), row_w)
            pm = param.monomials_of_degree(d)
            pidx = {m: i for i, m in enumerate(pm)}
            block = np.zeros((len(pm), len(monos)), dtype=np.int64)
            for j, m in enumerate(monos):
                g = Poly.from_terms(ring, [(m, 1)]).substitute_linear(B.T, param)
                for mm, c in g.terms.items():
                    block[pidx[mm], j] = c
            rows.append(block)
        M = np.vstack(rows) if rows else np.zeros((0, len(monos)), dtype=np.int64)
        K = kernel_basis(F, M)
        idx = {m: i for i, m in enumerate(monos)}
        lower = []
        for gp in gens:
            for m2 in ring.monomials_of_degree(d - gp.wdeg()):
                prod = gp.mul_mono(m2)
                v = np.zeros(len(monos), dtype=np.int64)
                for mm, c in prod.terms.items():
                    v[idx[mm]] = c
                lower.append(v)
        lower_rows = row_space(F, np.stack(lower)) if lower else np.zeros((0, len(monos)), dtype=np.int64)
        for v in _complement_rows(F, lower_rows, K):
            gens.append(Poly.from_terms(ring, [(m, int(c)) for m, c in zip(monos, v) if c]))
    return gens


def proj_connected(v: SupportVariety) -> str:
    """'connected' | 'disconnected' | 'unsupported' for Proj of the variety."""
    if v.components is None:
        return "unsupported"
    comps = v.components
    if len(comps) <= 1:
        return "connected"
    F = comps[0][1].ring.field
    parent = list(range(len(comps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            inter = intersect_row_spaces(F, comps[i][0], comps[j][0])
            if inter.shape[0] >= 1:
                pi, pj = find(i), find(j)
                parent[pi] = pj
    roots = {find(i) for i in range(len(comps))}
    return "connected" if len(roots) == 1 else "disconnected"


def rep_type_classify(v: SupportVariety) -> str:
    d = v.dim
    if d <= 0:
        return "simple_algebra"
    if d == 1:
        return "unknown_small"
    if d == 2:
        return "infinite_type"
    return "wild"
