"""Graded multivariate polynomials over GF(q) and a small Buchberger engine.

Monomials are exponent tuples; variables carry (cohomological) weights, so
"degree" always means weighted degree.  The term order is graded reverse
lexicographic with variables ordered by (weight, creation index).  Systems
here are tiny (at most ~5 variables, degree <= 12), so the implementation
favors clarity over Buchberger heuristics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .ff import Field


@dataclass(frozen=True)
class PolyRing:
    field: Field
    names: tuple[str, ...]
    weights: tuple[int, ...]

    @property
    def nvars(self) -> int:
        return len(self.names)

    def wdeg(self, mono) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def order_key(self, mono):
        """Key increasing in the grevlex order."""
        return (self.wdeg(mono), tuple(-e for e in reversed(mono)))

    def monomials_of_degree(self, d):
        """All exponent tuples of weighted degree exactly d, order-descending."""
        out = []

        def rec(i, rem, cur):
            if i == self.nvars:
                if rem == 0:
                    out.append(tuple(cur))
                return
            w = self.weights[i]
            top = rem // w
            for e in range(top + 1):
                rec(i + 1, rem - e * w, cur + [e])

        rec(0, d, [])
        out.sort(key=self.order_key, reverse=True)
        return out

    def extended(self, name="y_", weight=1) -> "PolyRing":
        return PolyRing(self.field, self.names + (name,), self.weights + (weight,))


class Poly:
    """Sparse polynomial: dict exponent-tuple -> nonzero field code."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            F = ring.field
            for m, c in terms.items():
                c = int(c)
                if F.e == 1:
                    c %= F.p
                if c:
                    self.terms[tuple(m)] = c

    @classmethod
    def from_terms(cls, ring, pairs):
        p = cls(ring)
        F = ring.field
        for m, c in pairs:
            c = int(c)
            cur = p.terms.get(tuple(m), 0)
            s = int(F.add(cur, c))
            if s:
                p.terms[tuple(m)] = s
            else:
                p.terms.pop(tuple(m), None)
        return p

    def is_zero(self):
        return not self.terms

    def copy(self):
        out = Poly(self.ring)
        out.terms = dict(self.terms)
        return out

    def wdeg(self):
        return max((self.ring.wdeg(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {self.ring.wdeg(m) for m in self.terms}
        return len(degs) <= 1

    def lead(self):
        m = max(self.terms, key=self.ring.order_key)
        return m, self.terms[m]

    def monic(self):
        if self.is_zero():
            return self
        F = self.ring.field
        _, c = self.lead()
        inv = F.inv_s(c)
        return Poly.from_terms(self.ring, [(m, int(F.mul(cc, inv))) for m, cc in self.terms.items()])

    def add(self, other):
        return Poly.from_terms(self.ring, list(self.terms.items()) + list(other.terms.items()))

    def neg(self):
        F = self.ring.field
        return Poly.from_terms(self.ring, [(m, int(F.neg(c))) for m, c in self.terms.items()])

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        F = self.ring.field
        return Poly.from_terms(self.ring, [(m, int(F.mul(cc, c))) for m, cc in self.terms.items()])

    def mul(self, other):
        F = self.ring.field
        pairs = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                pairs.append((m, int(F.mul(c1, c2))))
        return Poly.from_terms(self.ring, pairs)

    def mul_mono(self, mono, coeff=1):
        F = self.ring.field
        return Poly.from_terms(
            self.ring,
            [(tuple(a + b for a, b in zip(m, mono)), int(F.mul(c, coeff))) for m, c in self.terms.items()],
        )

    def eval_point(self, point):
        """Evaluate at field codes (one per variable)."""
        F = self.ring.field
        total = 0
        for m, c in self.terms.items():
            v = c
            for e, x in zip(m, point):
                for _ in range(e):
                    v = int(F.mul(v, x))
            total = int(F.add(total, v))
        return total

    def substitute_linear(self, mat, target: PolyRing) -> "Poly":
        """Substitute x_i -> sum_j mat[i][j] * t_j (new variables t of target)."""
        F = self.ring.field
        lin = []
        for i in range(self.ring.nvars):
            t = {}
            for j in range(target.nvars):
                c = int(mat[i][j])
                if c:
                    mono = tuple(1 if k == j else 0 for k in range(target.nvars))
                    t[mono] = c
            lin.append(Poly.from_terms(target, list(t.items())))
        out = Poly(target)
        for m, c in self.terms.items():
            term = Poly.from_terms(target, [(tuple(0 for _ in range(target.nvars)), c)])
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term.mul(lin[i])
            out = out.add(term)
        return out

    def __str__(self):
        if self.is_zero():
            return "0"
        F = self.ring.field
        items = sorted(self.terms.items(), key=lambda mc: self.ring.order_key(mc[0]), reverse=True)
        parts = []
        for m, c in items:
            vs = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    vs.append(name)
                elif e > 1:
                    vs.append(f"{name}^{e}")
            body = "*".join(vs)
            cs = F.fmt(c)
            if not body:
                parts.append(cs if "+" not in cs else f"({cs})")
            elif cs == "1":
                parts.append(body)
            elif "+" in cs:
                parts.append(f"({cs})*{body}")
            else:
                parts.append(f"{cs}*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f: Poly, basis: list[Poly]) -> Poly:
    """Full reduction of f modulo the list (leading terms assumed monic)."""
    ring = f.ring
    F = ring.field
    rem = Poly(ring)
    work = f.copy()
    lts = [g.lead()[0] for g in basis]
    while not work.is_zero():
        m, c = work.lead()
        hit = None
        for i, lt in enumerate(lts):
            if _mono_divides(lt, m):
                hit = i
                break
        if hit is None:
            rem = rem.add(Poly.from_terms(ring, [(m, c)]))
            work.terms.pop(m)
        else:
            work = work.sub(basis[hit].mul_mono(_mono_div(m, lt := lts[hit]), c))
    return rem


def groebner(ring: PolyRing, gens: list[Poly]) -> list[Poly]:
    """Reduced Groebner basis (canonical) of the ideal generated by gens."""
    G = [g.monic() for g in gens if not g.is_zero()]
    G = _interreduce(G)
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    F = ring.field
    while pairs:
        pairs.sort(key=lambda ij: (ring.wdeg(_mono_lcm(G[ij[0]].lead()[0], G[ij[1]].lead()[0])), ij))
        i, j = pairs.pop(0)
        lti, ltj = G[i].lead()[0], G[j].lead()[0]
        lcm = _mono_lcm(lti, ltj)
        if lcm == tuple(a + b for a, b in zip(lti, ltj)):
            continue  # coprime leading terms
        s = G[i].mul_mono(_mono_div(lcm, lti)).sub(G[j].mul_mono(_mono_div(lcm, ltj)))
        r = normal_form(s, G)
        if not r.is_zero():
            G.append(r.monic())
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    return _interreduce(G)


def _interreduce(G: list[Poly]) -> list[Poly]:
    G = [g.monic() for g in G if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            others = G[:i] + G[i + 1 :]
            if not others:
                continue
            r = normal_form(G[i], others)
            if r.is_zero():
                G.pop(i)
                changed = True
                break
            if r.terms != G[i].terms:
                G[i] = r.monic()
                changed = True
                break
    G.sort(key=lambda g: g.ring.order_key(g.lead()[0]))
    return G


@dataclass
class PolyIdeal:
    ring: PolyRing
    gens: list
    _gb: list = field(default=None, repr=False)

    def groebner_basis(self):
        if self._gb is None:
            self._gb = groebner(self.ring, list(self.gens))
        return self._gb

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self.groebner_basis()).is_zero()

    def radical_contains(self, f: Poly) -> bool:
        """Rabinowitsch: f in sqrt(I) iff 1 in I + (1 - y f) in R[y]."""
        if f.is_zero():
            return True
        ringy = self.ring.extended()
        lift = lambda g: Poly.from_terms(ringy, [(m + (0,), c) for m, c in g.terms.items()])
        gens = [lift(g) for g in self.gens]
        yf = lift(f).mul_mono(tuple([0] * self.ring.nvars + [1]))
        one = Poly.from_terms(ringy, [(tuple([0] * ringy.nvars), 1)])
        gens.append(one.sub(yf))
        gb = groebner(ringy, gens)
        return any(g.lead()[0] == tuple([0] * ringy.nvars) for g in gb)

    def is_irrelevant(self) -> bool:
        """Radical equals the ideal of all positive-degree elements."""
        ring = self.ring
        for i in range(ring.nvars):
            v = Poly.from_terms(ring, [(tuple(1 if j == i else 0 for j in range(ring.nvars)), 1)])
            if not self.radical_contains(v):
                return False
        return True

    def fmt(self):
        return [str(g) for g in self.groebner_basis()]


def radical_equal(i1: PolyIdeal, i2: PolyIdeal) -> bool:
    return all(i2.radical_contains(g) for g in i1.gens) and all(
        i1.radical_contains(g) for g in i2.gens
    )


def ideal_dim(ideal: PolyIdeal) -> int:
    """Krull dimension of R/I via independent variable sets mod leading terms."""
    ring = ideal.ring
    gb = ideal.groebner_basis()
    lts = [g.lead()[0] for g in gb]
    if any(all(e == 0 for e in m) for m in lts):
        return -1  # unit ideal
    n = ring.nvars
    best = 0
    for r in range(n, 0, -1):
        for S in itertools.combinations(range(n), r):
            Sset = set(S)
            if not any(all((e == 0 or i in Sset) for i, e in enumerate(m)) for m in lts):
                return r
        # no independent set of size r found; try smaller
    return 0


def linear_subspaces(F: Field, n: int):
    """All nonzero linear subspaces of F^n as row-rref bases (n <= 4, small q)."""
    out = []
    # enumerate rref matrices by pivot columns and free entries
    for d in range(1, n + 1):
        for pivots in itertools.combinations(range(n), d):
            free_positions = []
            for r, pc in enumerate(pivots):
                for c in range(n):
                    if c > pc and c not in pivots:
                        free_positions.append((r, c))
            for vals in itertools.product(range(F.q), repeat=len(free_positions)):
                B = np.zeros((d, n), dtype=np.int64)
                for r, pc in enumerate(pivots):
                    B[r, pc] = 1
                for (r, c), v in zip(free_positions, vals):
                    B[r, c] = v
                out.append(B)
    return out


def linear_subspaces_graded(F: Field, weights):
    """Weight-graded subspaces of the coordinate space, as (rows, row_weights).

    Rows only mix coordinates of equal weight, so the subspace is a cone for
    the grading; the zero subspace is excluded.
    """
    n = len(weights)
    groups = {}
    for i, w in enumerate(weights):
        groups.setdefault(w, []).append(i)
    per_group = []
    keys = sorted(groups)
    for w in keys:
        idx = groups[w]
        local = [None] + linear_subspaces(F, len(idx))  # None = zero subspace
        per_group.append((w, idx, local))
    out = []
    for combo in itertools.product(*[range(len(loc)) for _, _, loc in per_group]):
        rows = []
        row_w = []
        for (w, idx, local), pick in zip(per_group, combo):
            B = local[pick]
            if B is None:
                continue
            for r in range(B.shape[0]):
                full = np.zeros(n, dtype=np.int64)
                full[idx] = B[r]
                rows.append(full)
                row_w.append(w)
        if rows:
            out.append((np.stack(rows), tuple(row_w)))
    return out
