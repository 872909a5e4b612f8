"""Centers, central idempotent splitting and block decompositions.

Blocks are found by splitting the center: pick a non-scalar central
element, compute its minimal polynomial, and either cut along the CRT
projections of its distinct linear factors or request a field extension
when an irreducible factor is nonlinear.  Pieces in which every element
has a linear-power minimal polynomial are local, hence primitive over any
extension; the splitting tree is kept as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ff import (
    NeedsExtension,
    LinSolver,
    factor_poly,
    fp_deg,
    fp_divmod,
    fp_invmod,
    fp_mod,
    fp_mul,
    fp_trim,
    kernel_basis,
    rank,
    row_space,
    rref,
)
from .hopf import GroupTable, HopfAlgebraData, group_algebra
from .modrep import AlgebraOps, ModuleRep, PlainAlgebra, radical as algebra_radical


def center_basis(a):
    """Row basis of the center {z : zb = bz for all basis b}."""
    F = a.field
    diffs = F.sub(a.left_mats, a.right_mats)  # stack over basis elements
    M = diffs.reshape(-1, a.dim)
    return kernel_basis(F, M)


def center(a):
    return center_basis(a)


def _elt_minpoly(alg, e_unit, z):
    """Minimal polynomial of z in the unital piece with unit e_unit."""
    from .ff import minpoly_matrix  # local import to avoid cycle noise

    F = alg.field
    vecs = [np.asarray(e_unit, dtype=np.int64)]
    cur = vecs[0]
    for deg in range(1, alg.dim + 2):
        cur = alg.elt_mul(cur, z)
        vecs.append(cur)
        V = np.stack(vecs)
        K = kernel_basis(F, V.T)
        if K.shape[0]:
            v = K[0]
            lead = F.inv_s(int(v[deg]))
            return fp_trim([int(F.mul(int(c), lead)) for c in v[: deg + 1]])
    raise AssertionError("element minimal polynomial not found")


def _eval_poly_at_elt(alg, poly, e_unit, z):
    F = alg.field
    out = np.zeros(alg.dim, dtype=np.int64)
    pw = np.asarray(e_unit, dtype=np.int64)
    for c in poly:
        if c:
            out = F.add(out, F.mul(int(c), pw))
        pw = alg.elt_mul(pw, z)
    return out


def split_commutative(alg, span_rows, rng):
    """Primitive idempotents of the commutative subalgebra spanned by the rows.

    The span must contain the unit and be multiplicatively closed.  Raises
    NeedsExtension when a minimal polynomial has a nonlinear irreducible
    factor.  Returns (idempotents, certificate tree).
    """
    F = alg.field
    span = row_space(F, span_rows)

    def piece_basis(e):
        prods = F.einsum("ri,j,ijk->rk", span, e, alg.mult)
        return row_space(F, prods)

    out = []

    def walk(e, B):
        node = {"dim": int(B.shape[0])}
        if B.shape[0] == 1:
            out.append(e)
            node["status"] = "primitive"
            return node
        for r in range(B.shape[0]):
            z = B[r]
            mp = _elt_minpoly(alg, e, z)
            if fp_deg(mp) <= 1:
                continue
            facs = factor_poly(F, mp, rng)
            nonlin = [fp_deg(f) for f, _ in facs if fp_deg(f) > 1]
            if nonlin:
                deg = 1
                for d in nonlin:
                    deg = deg * d // int(np.gcd(deg, d))
                raise NeedsExtension(deg, "nonlinear factor of a central minimal polynomial")
            if len(facs) == 1:
                continue  # (x - lam)^m: scalar plus nilpotent, no split here
            # CRT projections of the distinct linear factors
            node["status"] = "split"
            node["minpoly"] = [int(c) for c in mp]
            node["children"] = []
            kids = []
            for f, m in facs:
                fm = [1]
                for _ in range(m):
                    fm = fp_mul(F, fm, f)
                g = fp_divmod(F, mp, fm)[0]
                h = fp_invmod(F, fp_mod(F, g, fm), fm)
                proj = fp_mod(F, fp_mul(F, g, h), mp)
                ei = _eval_poly_at_elt(alg, proj, e, z)
                kids.append(ei)
            total = np.zeros(alg.dim, dtype=np.int64)
            for ei in kids:
                if not np.array_equal(alg.elt_mul(ei, ei), ei):
                    raise AssertionError("CRT projection is not idempotent")
                total = F.add(total, ei)
            if not np.array_equal(total, e):
                raise AssertionError("CRT idempotents do not sum to the piece unit")
            for ei in kids:
                node["children"].append(walk(ei, piece_basis(ei)))
            return node
        out.append(e)
        node["status"] = "primitive-local"
        return node

    cert = walk(np.asarray(alg.unit, dtype=np.int64), span)
    out_sorted = sorted(out, key=lambda v: tuple(int(x) for x in v))
    return out_sorted, cert


class Block(PlainAlgebra):
    """A block A e as an algebra, with its embedding into the parent."""

    def __init__(self, parent, e, index: int):
        F = parent.field
        Re = parent.rmul_elt(e)
        rows = row_space(F, Re.T)
        basis = rows.T  # (dim_A, d) columns
        d = basis.shape[1]
        solver = LinSolver(F, basis)
        mult = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            prod = F.einsum("a,jb,abk->jk", basis[:, i], basis.T, parent.mult)
            sol = solver.solve(prod.T)
            if sol is None:
                raise AssertionError("block not closed under multiplication")
            mult[i] = sol.T
        unit = solver.solve(e)
        labels = [f"c{j}" for j in range(d)]
        super().__init__(F, mult, unit, labels=labels, name=f"B{index}")
        self.parent = parent
        self.idempotent = np.asarray(e, dtype=np.int64)
        self.inclusion = basis  # columns: block basis as parent elements
        self.index = index
        self._solver = solver

    def to_parent(self, coords):
        return self.field.matmul(self.inclusion, np.asarray(coords)[:, None])[:, 0]

    def from_parent(self, vec):
        sol = self._solver.solve(np.asarray(vec))
        if sol is None:
            raise ValueError("vector not in the block")
        return sol

    def module_over_block(self, m: ModuleRep) -> ModuleRep:
        """A module lying in this block, as a module over the block algebra."""
        F = self.field
        act = np.zeros((self.dim, m.dim, m.dim), dtype=np.int64)
        for i in range(self.dim):
            act[i] = m.act(self.inclusion[:, i])
        return ModuleRep(self, act)


@dataclass
class BlockDecomposition:
    algebra: HopfAlgebraData
    blocks: list
    principal_index: int
    certificate: dict
    extended: bool = False

    @property
    def idempotents(self):
        return [b.idempotent for b in self.blocks]


def block_decompose(a: HopfAlgebraData, seed: int = 0xB10C) -> BlockDecomposition:
    """Finest central idempotent decomposition, extending the field on demand."""
    rng = np.random.default_rng(seed)
    alg = a
    extended = False
    while True:
        try:
            Z = center_basis(alg)
            idems, cert = split_commutative(alg, Z, rng)
            break
        except NeedsExtension as ex:
            alg = alg.extended(ex.degree)
            extended = True
    F = alg.field
    _assert_block_system(alg, idems)
    blocks = [Block(alg, e, i) for i, e in enumerate(idems)]
    principal = None
    for i, b in enumerate(blocks):
        val = F.einsum("k,k->", alg.counit, b.idempotent)
        if int(val) == 1:
            if principal is not None:
                raise AssertionError("two principal blocks")
            principal = i
    if principal is None:
        raise AssertionError("no principal block")
    return BlockDecomposition(alg, blocks, principal, cert, extended)


def _assert_block_system(alg, idems):
    F = alg.field
    total = np.zeros(alg.dim, dtype=np.int64)
    Z = center_basis(alg)
    for i, e in enumerate(idems):
        if not np.array_equal(alg.elt_mul(e, e), e):
            raise AssertionError("block idempotent not idempotent")
        if not _in_rows(F, e, Z):
            raise AssertionError("block idempotent not central")
        total = F.add(total, e)
        for j in range(i + 1, len(idems)):
            if np.any(alg.elt_mul(e, idems[j])):
                raise AssertionError("block idempotents not orthogonal")
    if not np.array_equal(total, alg.unit):
        raise AssertionError("block idempotents do not sum to 1")
    if sum(rank(F, alg.rmul_elt(e).T) for e in idems) != alg.dim:
        raise AssertionError("block dimensions do not add up")


def _in_rows(F, v, rows):
    if rows.shape[0] == 0:
        return not np.any(v)
    return rank(F, np.vstack([rows, v[None, :]])) == rank(F, rows)


def lies_in_block(m: ModuleRep, d: BlockDecomposition, i: int) -> bool:
    F = d.algebra.field
    return np.array_equal(m.act(d.blocks[i].idempotent), F.eye(m.dim))


def is_linearly_reductive(a, seed: int = 0xB10C) -> bool:
    """True iff the algebra is semisimple (zero radical)."""
    return algebra_radical(a, seed=seed).shape[0] == 0


def subgroup_table(g: GroupTable, H) -> GroupTable:
    """The subgroup on the given element set as its own Cayley table."""
    Hs = sorted(H)
    pos = {h: i for i, h in enumerate(Hs)}
    n = len(Hs)
    T = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(Hs):
        for j, y in enumerate(Hs):
            T[i, j] = pos[int(g.table[x, y])]
    return GroupTable(T, pos[g.identity], [g.labels[h] for h in Hs], name="H")


@dataclass
class LocalBlockReport:
    normal_subgroup: list
    quotient_unipotent: bool
    kN_semisimple: bool
    iso_check: bool
    kernel_containment: bool
    principal_dim: int
    quotient_order: int

    @property
    def ok(self):
        return (
            self.quotient_unipotent
            and self.kN_semisimple
            and self.iso_check
            and self.kernel_containment
            and self.principal_dim == self.quotient_order
        )


def local_principal_structure(g: GroupTable, F, seed: int = 0xB10C) -> LocalBlockReport:
    """For a local principal block of kG: exhibit the normal complement.

    Finds the largest normal subgroup N of order prime to p, checks kN is
    semisimple and G/N is a p-group, and verifies that the canonical
    projection restricts to an algebra isomorphism from the principal
    block onto k(G/N).
    """
    p = F.p
    a = group_algebra(g, F)
    d = block_decompose(a, seed=seed)
    alg = d.algebra
    ops = AlgebraOps(alg, seed=seed)
    b0 = d.blocks[d.principal_index]
    in_b0 = [s for s in ops.simples if lies_in_block(s, d, d.principal_index)]
    if len(in_b0) != 1 or in_b0[0].dim != 1:
        raise ValueError("principal block is not local; precondition violated")

    normal_ps = [
        H
        for H in g.subgroups()
        if g.is_normal(H) and len(H) % p != 0
    ]
    N = max(normal_ps, key=len)
    biggest = [H for H in normal_ps if len(H) == len(N)]
    if len(biggest) != 1 or not all(set(H) <= set(N) for H in normal_ps):
        raise AssertionError("largest normal p'-subgroup is not unique")

    kN = group_algebra(subgroup_table(g, N), F)
    kN_ss = is_linearly_reductive(kN, seed=seed)

    q = g.quotient(N)
    quot_unipotent = _is_p_power(q.order, p)

    # projection kG -> k(G/N)
    Fq = alg.field
    proj = np.zeros((q.order, g.order), dtype=np.int64)
    for x in range(g.order):
        proj[q.coset_of[x], x] = 1
    kQ = group_algebra(q, Fq)
    B = b0.inclusion  # (dim_A, d)
    img = Fq.matmul(proj, B)
    iso = rank(Fq, img) == b0.dim == q.order
    if iso:
        for i in range(b0.dim):
            for j in range(b0.dim):
                lhs = Fq.matmul(proj, alg.elt_mul(B[:, i], B[:, j])[:, None])[:, 0]
                rhs = kQ.elt_mul(img[:, i], img[:, j])
                if not np.array_equal(lhs, rhs):
                    iso = False
                    break
            if not iso:
                break

    # augmentation ideal of kN sits inside the sum of non-principal blocks
    others = [blk.inclusion for k, blk in enumerate(d.blocks) if k != d.principal_index]
    span = (
        row_space(Fq, np.concatenate(others, axis=1).T)
        if others
        else np.zeros((0, alg.dim), dtype=np.int64)
    )
    contain = True
    for n in sorted(N):
        if n == g.identity:
            continue
        v = np.zeros(alg.dim, dtype=np.int64)
        v[n] = 1
        v[g.identity] = int(Fq.neg(1))
        if not _in_rows(Fq, v, span):
            contain = False
    return LocalBlockReport(
        normal_subgroup=sorted(int(x) for x in N),
        quotient_unipotent=quot_unipotent,
        kN_semisimple=kN_ss,
        iso_check=bool(iso),
        kernel_containment=contain,
        principal_dim=b0.dim,
        quotient_order=q.order,
    )


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1
