"""Finite-dimensional cocommutative Hopf algebras by structure constants.

Conventions (fixed throughout the package):

  mult tensor   c[i,j,k]  :  b_i b_j = sum_k c[i,j,k] b_k
  comult tensor D[i,a,b]  :  Delta(b_i) = sum_{a,b} D[i,a,b] b_a (x) b_b
  counit        eps[i]
  antipode      S[x,a]    :  s(b_a) = sum_x S[x,a] b_x   (column convention)
  unit          u[k]      :  1 = sum_k u[k] b_k

All arrays hold field codes (see ff).  Linear maps act on column vectors.
The corpus: group algebras of explicit small groups, k[t]/(t^p) with t
primitive, products, and the restricted enveloping algebra of sl2 at p=3.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .ff import Field, FieldEmbedding, extend_field


# -- group tables ------------------------------------------------------------


class GroupTable:
    """A finite group as a Cayley table of element indices.

    The table is validated on construction: row/column bijectivity, the
    identity, associativity on all triples, and existence of inverses.
    """

    def __init__(self, table, identity: int = 0, labels=None, name: str = ""):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("Cayley table must be square")
        self.order = n
        self.table = table
        self.identity = identity
        self.labels = list(labels) if labels else [f"g{i}" for i in range(n)]
        self.name = name
        self._validate()
        inv = np.zeros(n, dtype=np.int64)
        for i in range(n):
            js = np.nonzero(table[i] == identity)[0]
            inv[i] = js[0]
        self.inverse = inv

    def _validate(self):
        T = self.table
        n = self.order
        e = self.identity
        if not np.array_equal(T[e], np.arange(n)) or not np.array_equal(T[:, e], np.arange(n)):
            raise ValueError("identity row/column malformed")
        A = T[T, :]  # A[i,j,k] = T[T[i,j], k]
        B = T[:, T]  # B[i,j,k] = T[i, T[j,k]]
        if not np.array_equal(A, B):
            bad = np.argwhere(A != B)[0]
            raise ValueError(f"associativity fails at triple {tuple(int(x) for x in bad)}")
        for i in range(n):
            if e not in T[i]:
                raise ValueError(f"element {i} has no inverse")

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = int(self.table[x, i])
            k += 1
        return k

    def conjugacy_classes(self):
        n = self.order
        seen = np.zeros(n, dtype=bool)
        classes = []
        for i in range(n):
            if seen[i]:
                continue
            orbit = sorted({int(self.table[g, self.table[i, self.inverse[g]]]) for g in range(n)})
            for x in orbit:
                seen[x] = True
            classes.append(orbit)
        return classes

    def center_elements(self):
        T = self.table
        return [i for i in range(self.order) if np.array_equal(T[i], T[:, i])]

    def subgroup_closure(self, gens):
        cur = set(gens) | {self.identity}
        changed = True
        while changed:
            changed = False
            for a in list(cur):
                for b in list(cur):
                    x = int(self.table[a, b])
                    if x not in cur:
                        cur.add(x)
                        changed = True
        return frozenset(cur)

    def subgroups(self):
        """All subgroups (frozensets of indices), by closure BFS; order <= 27."""
        found = {frozenset([self.identity])}
        frontier = [frozenset([self.identity])]
        while frontier:
            nxt = []
            for H in frontier:
                for g in range(self.order):
                    if g in H:
                        continue
                    H2 = self.subgroup_closure(set(H) | {g})
                    if H2 not in found:
                        found.add(H2)
                        nxt.append(H2)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_normal(self, H) -> bool:
        Hs = set(H)
        for g in range(self.order):
            for h in Hs:
                if int(self.table[g, self.table[h, self.inverse[g]]]) not in Hs:
                    return False
        return True

    def quotient(self, N):
        """Quotient group table by a normal subgroup (as element-index cosets)."""
        assert self.is_normal(N)
        Ns = sorted(N)
        cosets = []
        seen = set()
        rep_of = {}
        for g in range(self.order):
            if g in seen:
                continue
            cos = frozenset(int(self.table[g, n]) for n in Ns)
            for x in cos:
                seen.add(x)
                rep_of[x] = len(cosets)
            cosets.append(cos)
        m = len(cosets)
        T = np.zeros((m, m), dtype=np.int64)
        reps = [min(c) for c in cosets]
        for a in range(m):
            for b in range(m):
                T[a, b] = rep_of[int(self.table[reps[a], reps[b]])]
        labels = ["[" + self.labels[r] + "]" for r in reps]
        q = GroupTable(T, identity=rep_of[self.identity], labels=labels, name=self.name + "/N")
        q.coset_reps = reps
        q.coset_of = rep_of
        return q

    def product(self, other: "GroupTable") -> "GroupTable":
        n1, n2 = self.order, other.order
        T = np.zeros((n1 * n2, n1 * n2), dtype=np.int64)
        for a1 in range(n1):
            for b1 in range(n2):
                for a2 in range(n1):
                    for b2 in range(n2):
                        T[a1 * n2 + b1, a2 * n2 + b2] = (
                            self.table[a1, a2] * n2 + other.table[b1, b2]
                        )
        labels = [
            f"({self.labels[a]},{other.labels[b]})" for a in range(n1) for b in range(n2)
        ]
        return GroupTable(
            T,
            identity=self.identity * n2 + other.identity,
            labels=labels,
            name=f"{self.name}x{other.name}",
        )


def cyclic_group(n: int) -> GroupTable:
    T = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return GroupTable(T, 0, labels, name=f"Z{n}")


def elementary_abelian(p: int, r: int) -> GroupTable:
    g = cyclic_group(p)
    out = g
    for _ in range(r - 1):
        out = out.product(cyclic_group(p))
    out.name = f"E{p}^{r}"
    return out


def dihedral8() -> GroupTable:
    """Symmetries of the square: [1, r, r2, r3, s, rs, r2s, r3s]."""
    import itertools

    r = (1, 2, 3, 0)
    s = (3, 2, 1, 0)
    perms = {}

    def compose(a, b):
        return tuple(a[b[i]] for i in range(4))

    elems = [(0, 1, 2, 3)]
    cur = (0, 1, 2, 3)
    for _ in range(3):
        cur = compose(r, cur)
        elems.append(cur)
    for i in range(4):
        elems.append(compose(elems[i], s))
    idx = {e: i for i, e in enumerate(elems)}
    T = np.zeros((8, 8), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            T[i, j] = idx[compose(a, b)]
    labels = ["1", "r", "r^2", "r^3", "s", "rs", "r^2s", "r^3s"]
    return GroupTable(T, 0, labels, name="D8")


def quaternion8() -> GroupTable:
    """Q8 on [1, -1, i, -i, j, -j, k, -k]."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # represent as (sign, axis), axis in {1, i, j, k}
    def unpack(n):
        sign = 1 if n % 2 == 0 else -1
        axis = "1ijk"[n // 2]
        return sign, axis

    mul_axis = {
        ("1", "1"): (1, "1"),
        ("1", "i"): (1, "i"),
        ("1", "j"): (1, "j"),
        ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"),
        ("j", "1"): (1, "j"),
        ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"),
        ("j", "j"): (-1, "1"),
        ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"),
        ("j", "k"): (1, "i"),
        ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"),
        ("k", "j"): (-1, "i"),
        ("i", "k"): (-1, "j"),
    }
    def pack(sign, axis):
        return "1ijk".index(axis) * 2 + (0 if sign == 1 else 1)

    T = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            s1, x1 = unpack(a)
            s2, x2 = unpack(b)
            s3, x3 = mul_axis[(x1, x2)]
            T[a, b] = pack(s1 * s2 * s3, x3)
    return GroupTable(T, 0, names, name="Q8")


def symmetric3() -> GroupTable:
    """S3 on [e, (123), (132), (12), (13), (23)] acting on 3 points."""
    perms = [
        (0, 1, 2),
        (1, 2, 0),
        (2, 0, 1),
        (1, 0, 2),
        (2, 1, 0),
        (0, 2, 1),
    ]
    idx = {p: i for i, p in enumerate(perms)}

    def compose(a, b):  # a after b
        return tuple(a[b[i]] for i in range(3))

    T = np.zeros((6, 6), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            T[i, j] = idx[compose(a, b)]
    labels = ["e", "(123)", "(132)", "(12)", "(13)", "(23)"]
    return GroupTable(T, 0, labels, name="S3")


# -- Hopf algebra data -------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: tuple | None = None


@dataclass
class Verdict:
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.ok]


class HopfAlgebraData:
    """Structure constants plus coalgebra maps; the ambient universe."""

    def __init__(self, F: Field, mult, unit, comult, counit, antipode, labels=None,
                 name: str = "", group: GroupTable | None = None):
        self.field = F
        self.mult = np.asarray(mult, dtype=np.int64)
        self.dim = self.mult.shape[0]
        self.unit = np.asarray(unit, dtype=np.int64)
        self.comult = np.asarray(comult, dtype=np.int64)
        self.counit = np.asarray(counit, dtype=np.int64)
        self.antipode = np.asarray(antipode, dtype=np.int64)
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]
        self.name = name
        self.group = group
        self._left = None
        self._right = None
        self._fp = None

    # multiplication as linear maps
    @property
    def left_mats(self):
        """left_mats[i] = matrix of left multiplication by b_i."""
        if self._left is None:
            self._left = np.ascontiguousarray(np.swapaxes(self.mult, 1, 2))
        return self._left

    @property
    def right_mats(self):
        """right_mats[j] = matrix of right multiplication by b_j."""
        if self._right is None:
            self._right = np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))
        return self._right

    def lmul_elt(self, u):
        """Matrix of left multiplication by the element with coords u."""
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
            h = hashlib.sha256()
            h.update(repr(self.field.spec).encode())
            for arr in (self.mult, self.unit, self.comult, self.counit, self.antipode):
                h.update(arr.tobytes())
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

    def change_field(self, emb: FieldEmbedding) -> "HopfAlgebraData":
        m = emb.apply
        out = HopfAlgebraData(
            emb.dst, m(self.mult), m(self.unit), m(self.comult), m(self.counit),
            m(self.antipode), self.labels, self.name, self.group,
        )
        return out

    def extended(self, degree: int) -> "HopfAlgebraData":
        F2, emb = extend_field(self.field, degree)
        return self.change_field(emb)


def validate_hopf(a: HopfAlgebraData) -> Verdict:
    """Check every Hopf axiom exactly; report first failing basis triple."""
    F = a.field
    c, D, eps, S, u = a.mult, a.comult, a.counit, a.antipode, a.unit
    n = a.dim
    checks = []

    def record(name, lhs, rhs):
        same = np.array_equal(lhs, rhs)
        wit = None
        if not same:
            wit = tuple(int(x) for x in np.argwhere(lhs != rhs)[0])
        checks.append(CheckResult(name, same, wit))

    t1 = F.einsum("ijm,mkl->ijkl", c, c)
    t2 = F.einsum("jkm,iml->ijkl", c, c)
    record("associativity", t1, t2)

    I = F.eye(n)
    record("unit-left", F.einsum("i,ijk->kj", u, c), I)
    record("unit-right", F.einsum("j,ijk->ki", u, c), I)

    u1 = F.einsum("iaw,auv->iuvw", D, D)
    u2 = F.einsum("iub,bvw->iuvw", D, D)
    record("coassociativity", u1, u2)

    record("counit-left", F.einsum("a,iab->bi", eps, D), I)
    record("counit-right", F.einsum("b,iab->ai", eps, D), I)

    ue = F.einsum("i,l->il", eps, u)
    record("antipode-left", F.einsum("iab,xa,xbl->il", D, S, c), ue)
    record("antipode-right", F.einsum("iab,yb,ayl->il", D, S, c), ue)

    record("counit-multiplicative", F.einsum("ijk,k->ij", c, eps), F.einsum("i,j->ij", eps, eps))
    record("counit-unit", F.einsum("k,k->", eps, u).reshape(()), np.int64(1))
    record("comult-unit", F.einsum("i,iab->ab", u, D), F.einsum("a,b->ab", u, u))

    record("cocommutativity", D, np.swapaxes(D, 1, 2))

    # comultiplication is an algebra map; per-basis loop keeps memory small
    ok = True
    wit = None
    for i in range(n):
        lhs = F.einsum("jk,kuv->juv", c[i], D)
        s1 = F.einsum("ab,axu->xub", D[i], c)
        s2 = F.einsum("xub,jxy->juyb", s1, D)
        rhs = F.einsum("juyb,byv->juv", s2, c)
        if not np.array_equal(lhs, rhs):
            ok = False
            j = tuple(int(x) for x in np.argwhere(lhs != rhs)[0])
            wit = (i,) + j
            break
    checks.append(CheckResult("comult-multiplicative", ok, wit))
    return Verdict(checks)


# -- constructors ------------------------------------------------------------


def group_algebra(g: GroupTable, F: Field) -> HopfAlgebraData:
    """kG with Delta(g) = g (x) g, eps(g) = 1, s(g) = g^{-1}."""
    n = g.order
    c = np.zeros((n, n, n), dtype=np.int64)
    c[np.arange(n)[:, None], np.arange(n)[None, :], g.table] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[g.identity] = 1
    D = np.zeros((n, n, n), dtype=np.int64)
    D[np.arange(n), np.arange(n), np.arange(n)] = 1
    eps = np.ones(n, dtype=np.int64)
    S = np.zeros((n, n), dtype=np.int64)
    S[g.inverse, np.arange(n)] = 1
    name = f"k[{g.name}]" if g.name else "k[G]"
    return HopfAlgebraData(F, c, unit, D, eps, S, labels=g.labels, name=name, group=g)


def truncated_poly(p: int, F: Field) -> HopfAlgebraData:
    """k[t]/(t^p) with t primitive; the source algebra of every flat map."""
    if F.p != p:
        raise ValueError("field characteristic must equal p")
    c = np.zeros((p, p, p), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            if i + j < p:
                c[i, j, i + j] = 1
    unit = np.zeros(p, dtype=np.int64)
    unit[0] = 1
    D = np.zeros((p, p, p), dtype=np.int64)
    for m in range(p):
        for j in range(m + 1):
            D[m, j, m - j] = comb(m, j) % p
    eps = np.zeros(p, dtype=np.int64)
    eps[0] = 1
    S = np.zeros((p, p), dtype=np.int64)
    for m in range(p):
        S[m, m] = pow(p - 1, m, p)
    labels = ["1", "t"] + [f"t^{i}" for i in range(2, p)]
    return HopfAlgebraData(F, c, unit, D, eps, S, labels=labels, name=f"k[t]/(t^{p})")


def product_hopf(a: HopfAlgebraData, b: HopfAlgebraData) -> HopfAlgebraData:
    """Tensor product algebra and coalgebra; basis index (i,j) -> i*dim_b + j."""
    if a.field != b.field:
        raise ValueError("factors must share the field")
    F = a.field
    da, db = a.dim, b.dim
    c = F.einsum("ikm,jln->ijklmn", a.mult, b.mult).reshape(da * db, da * db, da * db)
    D = F.einsum("iax,jby->ijabxy", a.comult, b.comult).reshape(da * db, da * db, da * db)
    unit = F.einsum("i,j->ij", a.unit, b.unit).reshape(-1)
    eps = F.einsum("i,j->ij", a.counit, b.counit).reshape(-1)
    S = F.kron(a.antipode, b.antipode)
    labels = [f"{la}*{lb}" for la in a.labels for lb in b.labels]
    grp = None
    if a.group is not None and b.group is not None:
        grp = a.group.product(b.group)
    return HopfAlgebraData(F, c, unit, D, eps, S, labels=labels,
                           name=f"{a.name}(x){b.name}", group=grp)


def _usl2_ops(p):
    """Left multiplication by e, h, f on the PBW basis e^a h^b f^c, p = 3."""
    dim = p**3

    def idx(a, b, c):
        return a * p * p + b * p + c

    Le = np.zeros((dim, dim), dtype=np.int64)
    Lh = np.zeros((dim, dim), dtype=np.int64)
    Lf = np.zeros((dim, dim), dtype=np.int64)

    def hpow_reduce(b):
        # h^b with h^p = h: exponents stay in [0, p)
        return b if b < p else (b - p + 1)

    for a in range(p):
        for b in range(p):
            for c in range(p):
                j = idx(a, b, c)
                if a + 1 < p:
                    Le[idx(a + 1, b, c), j] += 1
                Lh[idx(a, hpow_reduce(b + 1), c), j] += 1
                Lh[idx(a, b, c), j] += 2 * a
                # f e^a h^b f^c = e^a (h+2)^b f^{c+1} - a e^{a-1} h^{b+1} f^c
                #                 - a(a-1) e^{a-1} h^b f^c
                if c + 1 < p:
                    coeffs = [1]
                    for _ in range(b):  # multiply by (h + 2)
                        nxt = [0] * (len(coeffs) + 1)
                        for k, co in enumerate(coeffs):
                            nxt[k + 1] += co
                            nxt[k] += 2 * co
                        coeffs = nxt
                    red = [0] * p
                    for k, co in enumerate(coeffs):
                        red[hpow_reduce(k) if k else 0] += co
                    for k, co in enumerate(red):
                        if co % p:
                            Lf[idx(a, k, c + 1), j] += co
                if a >= 1:
                    Lf[idx(a - 1, hpow_reduce(b + 1), c), j] += -a
                    Lf[idx(a - 1, b, c), j] += -(a * (a - 1))
    return Le % p, Lh % p, Lf % p


def u_sl2(F: Field) -> HopfAlgebraData:
    """Restricted enveloping algebra of sl2 at p = 3, dim 27, PBW basis."""
    p = 3
    if F.p != p:
        raise ValueError("u(sl2) corpus member requires characteristic 3")
    dim = p**3
    Le, Lh, Lf = _usl2_ops(p)

    def idx(a, b, c):
        return a * p * p + b * p + c

    ops = {}
    I = np.eye(dim, dtype=np.int64)
    for a in range(p):
        for b in range(p):
            for c in range(p):
                M = I
                for _ in range(c):
                    M = Lf @ M % p
                for _ in range(b):
                    M = Lh @ M % p
                for _ in range(a):
                    M = Le @ M % p
                ops[(a, b, c)] = M

    cten = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in range(p):
        for b in range(p):
            for c in range(p):
                i = idx(a, b, c)
                cten[i] = ops[(a, b, c)].T  # row j = product monomial_i * basis_j
    unit = np.zeros(dim, dtype=np.int64)
    unit[0] = 1
    D = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in range(p):
        for b in range(p):
            for c in range(p):
                i = idx(a, b, c)
                for ia in range(a + 1):
                    for jb in range(b + 1):
                        for kc in range(c + 1):
                            co = comb(a, ia) * comb(b, jb) * comb(c, kc) % p
                            if co:
                                D[i, idx(ia, jb, kc), idx(a - ia, b - jb, c - kc)] = co
    eps = np.zeros(dim, dtype=np.int64)
    eps[0] = 1
    S = np.zeros((dim, dim), dtype=np.int64)
    e0 = np.zeros(dim, dtype=np.int64)
    e0[0] = 1
    for a in range(p):
        for b in range(p):
            for c in range(p):
                M = I
                for _ in range(a):
                    M = Le @ M % p
                for _ in range(b):
                    M = Lh @ M % p
                for _ in range(c):
                    M = Lf @ M % p
                vec = (M @ e0) % p  # f^c h^b e^a in PBW coordinates
                sign = pow(p - 1, a + b + c, p)
                S[:, idx(a, b, c)] = vec * sign % p

    def lab(a, b, c):
        parts = []
        for s, m in (("e", a), ("h", b), ("f", c)):
            if m == 1:
                parts.append(s)
            elif m > 1:
                parts.append(f"{s}^{m}")
        return "*".join(parts) if parts else "1"

    labels = [lab(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    return HopfAlgebraData(F, cten, unit, D, eps, S, labels=labels, name="u(sl2)")
