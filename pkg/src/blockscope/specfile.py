"""The algebra-spec input grammar and its parser.

A spec file is line based; '#' starts a comment.  It opens with a header

    p=<prime> e=<extension degree>

optionally followed by ``modulus=<e+1 integers low-to-high>`` when e > 1,
then ``kind=group|constants|builtin`` and the payload:

  kind=builtin      name=<corpus name>
  kind=group        order=, identity=, table= (order x order index rows)
  kind=constants    dim=, mult= (dim^3 codes, c[i][j][k] row-major),
                    unit= (dim codes), comult= (dim^3 codes, D[i][a][b]),
                    counit= (dim codes), antipode= (dim^2 codes S[x][a],
                    meaning s(b_a) = sum_x S[x][a] b_x)

Numeric payloads may span lines; every parse error carries the line it was
detected on, and constructed algebras are rejected with the first failing
axiom and basis triple.
"""

from __future__ import annotations

import numpy as np

from .corpus import build as build_corpus
from .ff import Field
from .hopf import GroupTable, HopfAlgebraData, group_algebra, validate_hopf


class SpecError(Exception):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class _Reader:
    def __init__(self, text: str):
        self.items = []  # (line_no, token)
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            for tok in body.split():
                self.items.append((no, tok))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (0, None)

    def next(self):
        if self.pos >= len(self.items):
            raise SpecError(self.items[-1][0] if self.items else 1, "unexpected end of file")
        out = self.items[self.pos]
        self.pos += 1
        return out

    def expect_kv(self, key):
        line, tok = self.next()
        if tok is None or not tok.startswith(key + "="):
            raise SpecError(line, f"expected {key}=..., found {tok!r}")
        return line, tok[len(key) + 1 :]

    def read_ints(self, count, what):
        vals = []
        buffered = None
        while len(vals) < count:
            line, tok = self.next()
            try:
                vals.append(int(tok))
            except ValueError:
                raise SpecError(line, f"expected an integer for {what}, found {tok!r}")
        return vals


def parse_spec_text(text: str, field_override: Field | None = None) -> HopfAlgebraData:
    r = _Reader(text)
    line, pval = r.expect_kv("p")
    try:
        p = int(pval)
    except ValueError:
        raise SpecError(line, f"p must be an integer, found {pval!r}")
    line, eval_ = r.expect_kv("e")
    try:
        e = int(eval_)
    except ValueError:
        raise SpecError(line, f"e must be an integer, found {eval_!r}")
    modulus = None
    nline, ntok = r.peek()
    if ntok is not None and ntok.startswith("modulus="):
        r.next()
        first = ntok.split("=", 1)[1]
        vals = [int(first)] if first else []
        vals += r.read_ints(e + 1 - len(vals), "modulus")
        modulus = tuple(vals)
    try:
        F = field_override or Field(p, e, modulus)
    except ValueError as exc:
        raise SpecError(line, str(exc))
    line, kind = r.expect_kv("kind")
    if kind == "builtin":
        line, name = r.expect_kv("name")
        try:
            return build_corpus(name, None if field_override is None else field_override)
        except KeyError as exc:
            raise SpecError(line, str(exc))
    if kind == "group":
        line, oval = r.expect_kv("order")
        order = int(oval)
        line, ival = r.expect_kv("identity")
        identity = int(ival)
        tline, tok = r.next()
        if tok != "table=":
            raise SpecError(tline, f"expected table=, found {tok!r}")
        vals = r.read_ints(order * order, "table entries")
        table = np.array(vals, dtype=np.int64).reshape(order, order)
        if np.any(table < 0) or np.any(table >= order):
            raise SpecError(tline, "table entries must be element indices")
        try:
            g = GroupTable(table, identity)
        except ValueError as exc:
            raise SpecError(tline, f"not a group table: {exc}")
        return group_algebra(g, F)
    if kind == "constants":
        line, dval = r.expect_kv("dim")
        dim = int(dval)

        def block(key, count):
            bl, tok = r.next()
            if tok != key + "=":
                raise SpecError(bl, f"expected {key}=, found {tok!r}")
            vals = r.read_ints(count, key)
            if any(v < 0 or v >= F.q for v in vals):
                raise SpecError(bl, f"{key} entries must be field codes in [0, {F.q})")
            return np.array(vals, dtype=np.int64)

        mult = block("mult", dim**3).reshape(dim, dim, dim)
        unit = block("unit", dim)
        comult = block("comult", dim**3).reshape(dim, dim, dim)
        counit = block("counit", dim)
        antipode = block("antipode", dim * dim).reshape(dim, dim)
        a = HopfAlgebraData(F, mult, unit, comult, counit, antipode, name="spec-file")
        v = validate_hopf(a)
        if not v.ok:
            bad = v.failed()[0]
            raise SpecError(
                1, f"axiom {bad.name!r} fails at basis indices {bad.witness}"
            )
        return a
    raise SpecError(line, f"unknown kind {kind!r}")


def parse_spec(path: str, field_override: Field | None = None) -> HopfAlgebraData:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec_text(fh.read(), field_override)
