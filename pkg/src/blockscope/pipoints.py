"""Flat maps from k[t]/(t^p), p-points, induced kernels and block support.

A flat map is a p-nilpotent element u whose left multiplication has Jordan
type (p, p, ..., p); both the rank criterion and the full Jordan type are
computed and compared on every test.  Kernels of the induced restriction
maps on cohomology classify p-points up to equivalence on unipotent
targets; block-level flat points are classified by projectivity verdict
vectors over a fixed module family, and support spaces carry one
representative per class.

Class discovery is exhaustive when the coordinate space has at most 2^20
points and seeded sampling with a stabilization window otherwise; outputs
are canonicalized so the seed does not change the class sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .blocks import subgroup_table
from .ff import LinSolver, kernel_basis, rank, row_space, rref
from .hopf import GroupTable, group_algebra, truncated_poly
from .modrep import AlgebraOps, ModuleRep, module_from_vectors, tensor_diagonal, trivial_module
from .poly import Poly, PolyIdeal
from .resolution import ExtClass, LeftResolution, carlson_module, coinduced_module, _coordinatize, _ext_space_for
from .varieties import extract_ideal
from .workspace import Workspace


class Unsupported(Exception):
    """Operation undefined for this input class (maps to CLI exit 3)."""


def jordan_type(F, mat, p):
    """Partition of Jordan block sizes of a p-nilpotent matrix (sizes <= p)."""
    n = mat.shape[0]
    ranks = [n]
    cur = F.eye(n)
    for _ in range(p):
        cur = F.matmul(cur, mat)
        ranks.append(rank(F, cur))
    if ranks[-1] != 0:
        raise ValueError("matrix is not p-nilpotent")
    blocks = []
    # number of blocks of size >= s is ranks[s-1] - ranks[s]
    for s in range(1, p + 1):
        ge_s = ranks[s - 1] - ranks[s]
        ge_s1 = ranks[s] - ranks[s + 1] if s + 1 <= p else 0
        blocks.extend([s] * (ge_s - ge_s1))
    return tuple(sorted(blocks, reverse=True))


@dataclass
class FlatMap:
    target: object  # algebra carrying the element
    u: np.ndarray
    jordan: tuple
    flat: bool
    criteria_agree: bool

    def label(self):
        return self.target.fmt_element(self.u)


def flat_test(target, u) -> FlatMap:
    """Jordan type of left multiplication; flatness by both criteria."""
    F = target.field
    p = F.p
    u = np.asarray(u, dtype=np.int64)
    L = target.lmul_elt(u)
    # p-nilpotency
    cur = F.eye(target.dim)
    for _ in range(p):
        cur = F.matmul(cur, L)
    if np.any(cur):
        raise ValueError("element is not p-nilpotent")
    jt = jordan_type(F, L, p)
    flat_by_type = all(b == p for b in jt) and target.dim % p == 0
    flat_by_rank = (
        target.dim % p == 0 and rank(F, L) == target.dim * (p - 1) // p
    )
    power = F.eye(target.dim)
    for _ in range(p - 1):
        power = F.matmul(power, L)
    flat_by_corank = target.dim % p == 0 and rank(F, power) == target.dim // p
    agree = flat_by_type == flat_by_rank == flat_by_corank
    if not agree:
        raise AssertionError("flatness criteria disagree")
    return FlatMap(target, u, jt, flat_by_type, agree)


def restriction_matrix(m: ModuleRep, fm: FlatMap):
    return m.act(fm.u)


def restriction_projective(m: ModuleRep, fm: FlatMap) -> bool:
    """alpha^*(m) projective over k[t]/(t^p): the action has all-p type."""
    F = m.algebra.field
    p = F.p
    if m.dim % p != 0:
        return False
    mat = m.act(fm.u)
    cur = F.eye(m.dim)
    for _ in range(p):
        cur = F.matmul(cur, mat)
    if np.any(cur):
        raise ValueError("action of a p-nilpotent element is not p-nilpotent")
    return rank(F, mat) == m.dim * (p - 1) // p


def algebra_map_from_flat(fm: FlatMap):
    """Matrix of k[t]/(t^p) -> target, t -> u (columns are images of t^i)."""
    F = fm.target.field
    p = F.p
    cols = [fm.target.unit]
    cur = fm.target.unit
    for _ in range(p - 1):
        cur = fm.target.elt_mul(cur, fm.u)
        cols.append(cur)
    return np.stack(cols, axis=1)


# -- the x + N example ---------------------------------------------------------


def example_xN(g: GroupTable, F) -> dict:
    """x = 1 - g1 (central of order p) plus the sum of all group elements:
    flat, but supported in no proper subgroup algebra."""
    p = F.p
    if g.is_abelian():
        raise Unsupported("the construction needs a nonabelian p-group")
    n = g.order
    if not _is_p_power(n, p):
        raise Unsupported("the construction needs a p-group")
    central = [z for z in g.center_elements() if g.element_order(z) == p]
    if not central:
        raise Unsupported("no central element of order p")
    g1 = central[0]
    a = group_algebra(g, F)
    u = np.ones(n, dtype=np.int64)  # N = sum of all elements
    u[g.identity] = int(F.add(u[g.identity], 1))
    u[g1] = int(F.sub(u[g1], 1))
    fm = flat_test(a, u)
    subs = g.subgroups()
    proper = [H for H in subs if len(H) < n]
    support = set(int(i) for i in np.nonzero(u)[0])
    memberships = []
    for H in proper:
        memberships.append(support <= set(H))
    return {
        "flat_map": fm,
        "algebra": a,
        "central_element": int(g1),
        "jordan_type": list(fm.jordan),
        "flat": fm.flat,
        "proper_subgroups": len(proper),
        "in_some_proper_subgroup": any(memberships),
    }


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def is_p_point(fm: FlatMap) -> dict:
    """Flat and supported in the group algebra of an abelian p-subgroup."""
    a = fm.target
    g = getattr(a, "group", None)
    if g is None:
        raise Unsupported("p-point factorization is only decided for group algebras")
    if not fm.flat:
        return {"is_p_point": False, "witness": None, "reason": "not flat"}
    F = a.field
    p = F.p
    support = set(int(i) for i in np.nonzero(fm.u)[0])
    for H in g.subgroups():
        if not _is_p_power(len(H), p):
            continue
        Hs = sorted(H)
        abelian = all(
            g.table[x, y] == g.table[y, x] for x in Hs for y in Hs
        )
        if not abelian:
            continue
        if support <= set(H):
            return {"is_p_point": True, "witness": [int(x) for x in Hs]}
    return {"is_p_point": False, "witness": None}


# -- induced maps on cohomology -------------------------------------------------


class RestrictionData:
    """Comparison lift of the periodic k[t]/(t^p)-resolution into the
    resolution of k, and the induced per-degree restriction functionals."""

    def __init__(self, ws: Workspace, fm: FlatMap, cap=None):
        if fm.target is not ws.algebra and fm.target.fingerprint() != ws.algebra.fingerprint():
            raise ValueError("flat map must land in the workspace algebra")
        if not fm.flat:
            raise ValueError("restriction data needs a flat map")
        self.ws = ws
        self.fm = fm
        self.cap = ws.cap if cap is None else cap
        F = ws.F
        res = ws.res_k
        res.extend_to(self.cap + 1)
        p = F.p
        vs = []
        v0 = ws.cache(("aug-solver",), lambda: LinSolver(F, res.aug)).solve(
            np.ones(1, dtype=np.int64)
        )
        vs.append(v0)
        for s in range(1, self.cap + 1):
            power = 1 if s % 2 == 1 else p - 1
            w = vs[s - 1][:, None]
            for _ in range(power):
                w = res.apply_term(s - 1, fm.u, w)
            solver = ws.cache(("diff-solver", s), lambda: LinSolver(F, res.diff(s)))
            v = solver.solve(w[:, 0])
            if v is None:
                raise AssertionError("comparison lift inconsistent")
            vs.append(v)
        self.vectors = vs

    def functional(self, d):
        """Values of the restriction on the chosen basis of Ext^d(k, k)."""
        ext = self.ws.ring.ext
        reps = ext.classes(d)
        vals = np.zeros(len(reps), dtype=np.int64)
        for i, rep in enumerate(reps):
            vals[i] = int(ext.evaluate(d, rep, self.vectors[d][:, None])[0, 0])
        return vals

    def kernel_subspaces(self):
        """Per-ring-degree kernels of the induced map, in monomial coordinates."""
        ws = self.ws
        F = ws.F
        ring = ws.ring
        out = {}
        self._nonzero_positive = False
        for d in ring.ring_degrees:
            if d == 0 or d > self.cap:
                continue
            monos = ring.poly_model.monomials_of_degree(d)
            if not monos:
                out[d] = np.zeros((0, 0), dtype=np.int64)
                continue
            f = self.functional(d)
            if np.any(f):
                self._nonzero_positive = True
            row = np.zeros((1, len(monos)), dtype=np.int64)
            for j, m in enumerate(monos):
                coords = ring.mono_coords(m)
                row[0, j] = int(F.einsum("i,i->", f, coords).reshape(()))
            out[d] = kernel_basis(F, row)
        return out

    def kernel_ideal(self):
        subs = self.kernel_subspaces()
        return extract_ideal(self.ws.ring, subs)

    def lemma_kernel_holds(self):
        """The image is not contained in degree 0."""
        if not hasattr(self, "_nonzero_positive"):
            self.kernel_subspaces()
        return bool(self._nonzero_positive)


def induced_kernel(ws: Workspace, fm: FlatMap, cap=None):
    rd = RestrictionData(ws, fm, cap=cap)
    subs = rd.kernel_subspaces()
    return {
        "ideal": extract_ideal(ws.ring, subs),
        "subspaces": subs,
        "lemma_kernel": rd.lemma_kernel_holds(),
    }


def kernel_signature(subs):
    """Canonical byte signature of per-degree kernel subspaces."""
    parts = []
    for d in sorted(subs):
        parts.append((d, subs[d].shape, subs[d].tobytes()))
    return tuple(parts)


def kernels_equal(s1, s2) -> bool:
    return kernel_signature(s1) == kernel_signature(s2)


# -- equivalence over a module family -------------------------------------------


def default_family(ws: Workspace, maps=()):
    """Simples, their syzygies to degree 4, small-degree Carlson modules,
    the projective indecomposables, and the coinduced modules of the maps."""

    def build():
        fam = []
        for s in ws.ops.simples:
            fam.append(("simple", s))
        for s in ws.ops.simples:
            res = ws.resolution(s)
            for n in range(1, 5):
                fam.append((f"syzygy{n}", res.syzygy_module(n)))
        ring = ws.ring
        for d, name, cls in ring.generators:
            if d > 2:
                continue
            if ws.F.p != 2 and d % 2 == 1:
                continue
            L = carlson_module(ws.res_k, cls)
            if L.dim:
                fam.append((f"carlson_{name}", L))
        for i, pim in enumerate(ws.ops.pims):
            fam.append((f"pim{i}", ModuleRep(ws.algebra, pim.action)))
        return fam

    fam = list(ws.cache(("family",), build))
    for j, fm in enumerate(maps):
        fam.append((f"coinduced{j}", coinduced_module(ws.algebra, fm.u)))
    return fam


@dataclass
class EquivalenceVerdict:
    family: list
    verdicts_a: list
    verdicts_b: list
    equivalent_on_family: bool
    kernels_equal: bool | None


def equivalent(ws: Workspace, a: FlatMap, b: FlatMap, family=None) -> EquivalenceVerdict:
    if family is None:
        family = default_family(ws, (a, b))
    va = [restriction_projective(m, a) for _, m in family]
    vb = [restriction_projective(m, b) for _, m in family]
    keq = None
    if a.target is ws.algebra or a.target.fingerprint() == ws.algebra.fingerprint():
        sa = induced_kernel(ws, a)["subspaces"]
        sb = induced_kernel(ws, b)["subspaces"]
        keq = kernels_equal(sa, sb)
    return EquivalenceVerdict(
        family=[name for name, _ in family],
        verdicts_a=va,
        verdicts_b=vb,
        equivalent_on_family=va == vb,
        kernels_equal=keq,
    )


# -- class discovery -------------------------------------------------------------


def _candidate_vectors(ws: Workspace, dim, exhaustive_bound=2**20):
    """Deterministic candidate stream: exhaustive or seeded sampling."""
    F = ws.F
    q = F.q
    if q**dim <= exhaustive_bound:
        for codes in itertools.product(range(q), repeat=dim):
            if any(codes):
                yield np.array(codes, dtype=np.int64), True
        return
    rng = np.random.default_rng(ws.seed)
    for _ in range(ws.budget):
        yield F.random_codes(rng, dim), False


def _is_p_nilpotent(alg, u):
    F = alg.field
    L = alg.lmul_elt(u)
    cur = F.eye(alg.dim)
    for _ in range(F.p):
        cur = F.matmul(cur, L)
    return not np.any(cur)


def p_point_classes(ws: Workspace):
    """Kernel-equality classes of p-points of the algebra (group algebras
    and commutative Hopf corpus members only)."""

    def build():
        a = ws.algebra
        g = getattr(a, "group", None)
        if g is None:
            raise Unsupported("p-point enumeration needs a constant group")
        classes = []  # (signature, FlatMap, kernel ideal)
        exhausted = True
        for u, exh in _candidate_vectors(ws, a.dim):
            exhausted &= exh
            if not _is_p_nilpotent(a, u):
                continue
            fm0 = flat_test(a, u)
            if not fm0.flat:
                continue
            pp = is_p_point(fm0)
            if not pp["is_p_point"]:
                continue
            data = induced_kernel(ws, fm0)
            sig = kernel_signature(data["subspaces"])
            if all(sig != s for s, _, _, _ in classes):
                classes.append((sig, fm0, data["ideal"], pp["witness"]))
        return classes, exhausted

    return ws.cache(("p-point-classes",), build)


@dataclass
class PiSupportSample:
    classes: list  # (FlatMap, PolyIdeal, witness subgroup)
    hits: list  # per class: dict module -> nonprojective?
    in_support: list  # per class: bool
    exhaustive: bool


def block_pi_support(ws: Workspace, i: int) -> PiSupportSample:
    """P(G) classes detecting some simple of block i."""

    def build():
        classes, exhausted = p_point_classes(ws)
        simples = ws.simples_in_block(i)
        hits = []
        in_support = []
        for sig, fm, ideal, witness in classes:
            verd = {}
            for j, s in enumerate(simples):
                verd[f"simple{j}"] = not restriction_projective(s, fm)
            hits.append(verd)
            in_support.append(any(verd.values()))
        keep = [
            (fm, ideal, witness)
            for (sig, fm, ideal, witness), ok in zip(classes, in_support)
            if ok
        ]
        keep_hits = [h for h, ok in zip(hits, in_support) if ok]
        return PiSupportSample(keep, keep_hits, [True] * len(keep), exhausted)

    return ws.cache(("block-pi-support", i), build)


def block_module_family(ws: Workspace, i: int):
    """Witness family of modules over the block algebra: the simples, their
    syzygies, the projective indecomposables, and the block truncations
    e.(L_z (x) M) of the small-degree Carlson modules."""

    def build():
        bops = ws.block_ops(i)
        blk = ws.blocks[i]
        fam = [("simple%d" % j, s) for j, s in enumerate(bops.simples)]
        for j, s in enumerate(bops.simples):
            res = LeftResolution(bops, s)
            for n in range(1, 5):
                m = res.syzygy_module(n)
                if m.dim:
                    fam.append((f"syzygy{n}_of_{j}", m))
        for j, pim in enumerate(bops.pims):
            fam.append((f"pim{j}", ModuleRep(blk, pim.action)))
        F = ws.F
        M = _direct_sum(ws, ws.simples_in_block(i))
        for d, name, cls in ws.ring.generators:
            if d > 2 or (F.p != 2 and d % 2 == 1):
                continue
            L = carlson_module(ws.res_k, cls)
            if L.dim == 0:
                continue
            t = tensor_diagonal(L, M)
            rows = row_space(F, t.act(blk.idempotent).T)
            if rows.shape[0] == 0:
                continue
            w = module_from_vectors(ws.algebra, t, rows)
            fam.append((f"carlson_{name}", blk.module_over_block(w)))
        return fam

    return ws.cache(("block-family", i), build)


def flat_points_of_block(ws: Workspace, i: int) -> PiSupportSample:
    """F(B): verdict-vector classes of flat points of the block that detect
    some non-projective block module."""

    def build():
        blk = ws.blocks[i]
        fam = block_module_family(ws, i)
        classes = {}
        order = []
        exhausted = True
        streak = 0
        for u, exh in _candidate_vectors(ws, blk.dim):
            exhausted &= exh
            if not exh and streak >= 200:
                break
            if not _is_p_nilpotent(blk, u):
                continue
            fm0 = flat_test(blk, u)
            if not fm0.flat:
                continue
            vec = tuple(restriction_projective(m, fm0) for _, m in fam)
            if vec in classes:
                streak += 1
                continue
            classes[vec] = fm0
            streak = 0
        keep = []
        hits = []
        for vec, fm0 in sorted(classes.items()):
            if all(vec):
                continue  # detects nothing: excluded from F(B)
            keep.append((fm0, None, None))
            hits.append({name: not v for (name, _), v in zip(fam, vec)})
        return PiSupportSample(keep, hits, [True] * len(keep), exhausted)

    return ws.cache(("flat-points", i), build)


def rho_star(ws: Workspace, fm: FlatMap, i: int) -> FlatMap:
    """Compose with the block projection and re-run the flat test inside."""
    blk = ws.blocks[i]
    proj = ws.algebra.elt_mul(blk.idempotent, fm.u)
    ub = blk.from_parent(proj)
    out = flat_test(blk, ub)
    if not out.flat:
        raise AssertionError("projection of a flat map is not flat on the block")
    return out


def block_verdict_vector(ws: Workspace, i: int, fm_on_block: FlatMap):
    fam = block_module_family(ws, i)
    return tuple(restriction_projective(m, fm_on_block) for _, m in fam)


# -- verification drivers --------------------------------------------------------


def flat_map_classes(ws: Workspace):
    """Kernel-equality classes of ALL flat maps into the algebra (no
    factorization requirement); used for the kernel lemma sweep."""

    def build():
        a = ws.algebra
        classes = []
        exhausted = True
        for u, exh in _candidate_vectors(ws, a.dim):
            exhausted &= exh
            if not _is_p_nilpotent(a, u):
                continue
            fm0 = flat_test(a, u)
            if not fm0.flat:
                continue
            data = induced_kernel(ws, fm0)
            sig = kernel_signature(data["subspaces"])
            if all(sig != s for s, _, _ in classes):
                classes.append((sig, fm0, data["lemma_kernel"]))
        return classes, exhausted

    return ws.cache(("flat-classes",), build)


def verify_kernel_lemma(ws: Workspace):
    """Image of the induced map never lies in degree 0, for every flat class."""
    classes, exhausted = flat_map_classes(ws)
    per = [
        {"element": fm.label(), "lemma_kernel": bool(ok)} for _, fm, ok in classes
    ]
    status = "pass" if per and all(r["lemma_kernel"] for r in per) else (
        "inconclusive" if not per else "fail"
    )
    return {"status": status, "classes": per, "exhaustive": exhausted}


def verify_xN(g: GroupTable, F):
    rep = example_xN(g, F)
    ok = rep["flat"] and all(b == F.p for b in rep["jordan_type"]) and not rep[
        "in_some_proper_subgroup"
    ]
    pp = is_p_point(rep["flat_map"])
    return {
        "status": "pass" if ok and not pp["is_p_point"] else "fail",
        "jordan_type": rep["jordan_type"],
        "proper_subgroups_checked": rep["proper_subgroups"],
        "in_some_proper_subgroup": rep["in_some_proper_subgroup"],
        "is_p_point": pp["is_p_point"],
        "element": rep["flat_map"].label(),
    }


def _unipotent(ws: Workspace) -> bool:
    return len(ws.ops.simples) == 1 and ws.ops.simples[0].dim == 1


def _search_matching_ppoint(ws: Workspace, subs):
    """A p-point through an abelian p-subgroup with the given kernel."""
    a = ws.algebra
    g = getattr(a, "group", None)
    if g is None:
        raise Unsupported("p-point search needs a constant group")
    F = ws.F
    p = F.p
    abelian_ps = []
    for H in g.subgroups():
        if not _is_p_power(len(H), p) or len(H) == 1:
            continue
        Hs = sorted(H)
        if all(g.table[x, y] == g.table[y, x] for x in Hs for y in Hs):
            abelian_ps.append(Hs)
    for Hs in abelian_ps:
        for codes in itertools.product(range(F.q), repeat=len(Hs)):
            if not any(codes):
                continue
            u = np.zeros(a.dim, dtype=np.int64)
            for c, h in zip(codes, Hs):
                u[h] = c
            if not _is_p_nilpotent(a, u):
                continue
            fm = flat_test(a, u)
            if not fm.flat:
                continue
            data = induced_kernel(ws, fm)
            if kernels_equal(data["subspaces"], subs):
                return fm, Hs
    return None, None


def verify_equiv(ws: Workspace, fm: FlatMap, check_mechanism: bool = True):
    """Every flat map on a unipotent algebra is equivalent to a p-point with
    the same induced kernel."""
    if not _unipotent(ws):
        raise Unsupported("equivalence search is run on unipotent targets")
    data = induced_kernel(ws, fm)
    beta, witness = _search_matching_ppoint(ws, data["subspaces"])
    extended = False
    if beta is None:
        return {
            "status": "fail",
            "reason": "no matching p-point at the current field",
            "extension_attempted": extended,
        }
    verdict = equivalent(ws, fm, beta)
    mech = None
    if check_mechanism:
        from .poly import radical_equal
        from .varieties import annihilator_ideal

        co = coinduced_module(ws.algebra, fm.u)
        I_co = annihilator_ideal(ws.ring, co, co)
        mech = radical_equal(I_co, data["ideal"])
    ok = verdict.equivalent_on_family and (verdict.kernels_equal is not False)
    if check_mechanism:
        ok = ok and bool(mech)
    return {
        "status": "pass" if ok else "fail",
        "matched_through": [int(x) for x in witness],
        "family": verdict.family,
        "equivalent_on_family": verdict.equivalent_on_family,
        "kernels_equal": verdict.kernels_equal,
        "coinduced_support_matches_kernel": mech,
        "element": fm.label(),
        "p_point": beta.label(),
    }


def _direct_sum(ws: Workspace, mods):
    a = ws.algebra
    total = sum(m.dim for m in mods)
    act = np.zeros((a.dim, total, total), dtype=np.int64)
    off = 0
    for m in mods:
        act[:, off : off + m.dim, off : off + m.dim] = m.action
        off += m.dim
    return ModuleRep(a, act)


def injectivity_witness(ws: Workspace, i: int, subs_a, subs_b):
    """A block module separating two kernel-inequivalent p-point classes,
    built as e.(L_z (x) M) for z in one kernel but not the other."""
    F = ws.F
    ring = ws.ring
    degs = sorted(set(subs_a) | set(subs_b))
    for d in degs:
        Ka = subs_a.get(d)
        Kb = subs_b.get(d)
        if Ka is None or Kb is None or Ka.shape == Kb.shape and np.array_equal(Ka, Kb):
            continue
        for source, other in ((Ka, Kb), (Kb, Ka)):
            for v in source:
                if other.shape[0] and rank(F, np.vstack([other, v[None, :]])) == other.shape[0]:
                    continue  # also in the other kernel
                monos = ring.poly_model.monomials_of_degree(d)
                coords = None
                for m, c in zip(monos, v):
                    if c:
                        term = F.mul(int(c), ring.mono_coords(m))
                        coords = term if coords is None else F.add(coords, term)
                if coords is None or not np.any(coords):
                    continue
                reps = ring.ext.classes(d)
                phi = np.zeros(ring.ext.hom_dim(d), dtype=np.int64)
                for c, rep in zip(coords, reps):
                    if c:
                        phi = F.add(phi, F.mul(int(c), rep))
                z = ExtClass(ring.ext, d, phi)
                L = carlson_module(ws.res_k, z)
                if L.dim == 0:
                    continue
                M = _direct_sum(ws, ws.simples_in_block(i))
                t = tensor_diagonal(L, M)
                e = ws.blocks[i].idempotent
                rows = row_space(F, t.act(e).T)
                if rows.shape[0] == 0:
                    continue
                w = module_from_vectors(ws.algebra, t, rows)
                return w, d
    return None, None


def verify_injective(ws: Workspace, i: int):
    """Distinct support classes of the block stay distinct among the block's
    flat points: exhibit separating block-module witnesses."""
    sample = block_pi_support(ws, i)
    classes = sample.classes
    pairs = []
    ok = True
    for x in range(len(classes)):
        for y in range(x + 1, len(classes)):
            fa, fb = classes[x][0], classes[y][0]
            sa = induced_kernel(ws, fa)["subspaces"]
            sb = induced_kernel(ws, fb)["subspaces"]
            w, deg = injectivity_witness(ws, i, sa, sb)
            if w is None:
                ok = False
                pairs.append({"pair": [x, y], "separated": False})
                continue
            va = restriction_projective(w, fa)
            vb = restriction_projective(w, fb)
            pairs.append(
                {"pair": [x, y], "separated": va != vb, "witness_degree": deg,
                 "witness_dim": w.dim}
            )
            ok &= va != vb
    return {
        "status": "pass" if ok else "fail",
        "classes": len(classes),
        "pairs": pairs,
        "exhaustive": sample.exhaustive,
    }


def verify_homeo_local(ws: Workspace):
    """For a local principal block: the block projection matches the p-point
    classes with the flat-point classes one to one, preserving the
    closed-set membership vectors of the tested family."""
    i0 = ws.principal_index
    simples0 = ws.simples_in_block(i0)
    if not (len(simples0) == 1 and simples0[0].dim == 1):
        raise Unsupported("the principal block is not local")
    psample = block_pi_support(ws, i0)
    fsample = flat_points_of_block(ws, i0)
    fam = block_module_family(ws, i0)
    fvecs = []
    for fm, _, _ in fsample.classes:
        fvecs.append(block_verdict_vector(ws, i0, fm))
    mapping = []
    used = set()
    ok = True
    for fm, _, _ in psample.classes:
        rho = rho_star(ws, fm, i0)
        vec = block_verdict_vector(ws, i0, rho)
        matches = [j for j, fv in enumerate(fvecs) if fv == vec]
        if len(matches) != 1:
            ok = False
            mapping.append(None)
            continue
        mapping.append(matches[0])
        used.add(matches[0])
    bijective = ok and len(used) == len(fsample.classes) and len(
        psample.classes
    ) == len(fsample.classes)
    # closed-set membership transfers exactly along the projection: the
    # pulled-back module restricted along the p-point agrees with the block
    # module restricted along the projected map
    transfer_ok = True
    for fm, _, _ in psample.classes:
        rho = rho_star(ws, fm, i0)
        for name, m in fam:
            pulled = _pullback_to_parent(ws, i0, m)
            left = restriction_projective(pulled, fm)
            right = restriction_projective(m, rho)
            transfer_ok &= left == right
    status = "pass" if bijective and transfer_ok else "fail"
    return {
        "status": status,
        "p_point_classes": len(psample.classes),
        "flat_point_classes": len(fsample.classes),
        "bijective": bijective,
        "closed_sets_match": bool(transfer_ok),
        "exhaustive": psample.exhaustive and fsample.exhaustive,
    }


def _pullback_to_parent(ws: Workspace, i: int, m: ModuleRep) -> ModuleRep:
    """A block module as a module over the whole algebra via the projection."""
    F = ws.F
    blk = ws.blocks[i]
    a = ws.algebra
    act = np.zeros((a.dim, m.dim, m.dim), dtype=np.int64)
    for t in range(a.dim):
        proj = blk.from_parent(a.elt_mul(blk.idempotent, a.basis_vec(t)))
        act[t] = m.act(proj)
    return ModuleRep(a, act)


def sylow_subgroup(g: GroupTable, p: int):
    best = None
    for H in g.subgroups():
        if _is_p_power(len(H), p) and (best is None or len(H) > len(best)):
            best = H
    return sorted(best)


def verify_defect(ws: Workspace, i: int):
    """Support classes of the block coincide with the image of the defect
    group's p-points (principal: Sylow; simple algebra block: trivial)."""
    a = ws.algebra
    g = getattr(a, "group", None)
    if g is None:
        raise Unsupported("defect comparison needs a constant group")
    F = ws.F
    p = F.p
    bops = ws.block_ops(i)
    principal = i == ws.principal_index
    simple_block = bops.radical.shape[0] == 0
    if not principal and not simple_block:
        raise Unsupported("only principal or simple-algebra blocks are supported")
    if principal:
        D = sylow_subgroup(g, p)
    else:
        D = [g.identity]
    sigs_d = set()
    reps_d = []
    if len(D) > 1:
        kd = group_algebra(subgroup_table(g, D), F)
        for codes in itertools.product(range(F.q), repeat=len(D)):
            if not any(codes):
                continue
            ud = np.array(codes, dtype=np.int64)
            if not _is_p_nilpotent(kd, ud):
                continue
            fmd = flat_test(kd, ud)
            if not fmd.flat:
                continue
            u = np.zeros(a.dim, dtype=np.int64)
            for c, h in zip(codes, D):
                u[h] = c
            fm = flat_test(a, u)
            if not fm.flat:
                raise AssertionError("included flat map fails to stay flat")
            sig = kernel_signature(induced_kernel(ws, fm)["subspaces"])
            if sig not in sigs_d:
                sigs_d.add(sig)
                reps_d.append(fm)
    sample = block_pi_support(ws, i)
    sigs_b = set()
    for fm, _, _ in sample.classes:
        sigs_b.add(kernel_signature(induced_kernel(ws, fm)["subspaces"]))
    ok = sigs_d == sigs_b
    return {
        "status": "pass" if ok else "fail",
        "defect_order": len(D),
        "defect_classes": len(sigs_d),
        "support_classes": len(sigs_b),
    }


def flatness_criteria_sample(ws: Workspace, count: int = 1000):
    """Seeded sample of p-nilpotent elements; the flat test itself asserts
    that the Jordan-type and both rank criteria agree."""
    F = ws.F
    J = ws.ops.radical
    rng = np.random.default_rng(ws.seed + 17)
    accepted = 0
    flats = 0
    guard = 0
    while accepted < count:
        guard += 1
        if guard > 200 * count:
            raise AssertionError("sampling p-nilpotents stalled")
        if J.shape[0]:
            coeffs = F.random_codes(rng, J.shape[0])
            u = F.einsum("r,ri->i", coeffs, J)
        else:
            u = np.zeros(ws.algebra.dim, dtype=np.int64)
        if not _is_p_nilpotent(ws.algebra, u):
            continue
        fm = flat_test(ws.algebra, u)
        accepted += 1
        flats += int(fm.flat)
    return {"sampled": accepted, "flat": flats, "criteria_agree": True}
