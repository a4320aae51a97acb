"""Parsing and printing of polynomials, algebra files, module files and resolutions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraSpec, OrderingSpec, Polynomial, unit_vector
from .errors import ParseError, ValidationError
from .module import FreeModuleSpec, ModuleElement, ModuleOrderingSpec
from .scalars import format_rational

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\S))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r}")
            out.append((sym, sym))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser for polynomial and module expressions."""

    def __init__(self, algebra: AlgebraSpec, text: str, rank: int | None = None):
        self.alg = algebra
        self.toks = _tokenize(text)
        self.pos = 0
        self.rank = rank
        if not self.toks:
            raise ParseError("empty expression")

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        if self.pos >= len(self.toks):
            raise ParseError("unexpected end of expression")
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def done(self):
        if self.pos != len(self.toks):
            raise ParseError(f"unexpected token {self.toks[self.pos][1]!r}")

    def basis_index(self, name: str):
        if self.rank is None or name in self.alg._index:
            return None
        m = re.fullmatch(r"e(\d+)", name)
        if not m:
            return None
        k = int(m.group(1))
        if not 1 <= k <= self.rank:
            raise ParseError(f"basis vector {name} outside rank {self.rank}")
        return k - 1

    # sum := term (('+'|'-') term)*
    def parse_sum(self):
        terms = [self.parse_term()]
        while self.peek() in ("+", "-"):
            terms.append(self.parse_term())
        return terms

    # term := sign? factor ('*' factor)*  -> (Polynomial, component or None)
    def parse_term(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        coeff = Fraction(sign)
        poly = None  # accumulated polynomial factors
        mono = [0] * self.alg.n
        last_gen = -1
        comp = None
        while True:
            kind = self.peek()
            if kind == "num":
                num = self.take()[1]
                den = 1
                if self.peek() == "/":
                    self.take()
                    den = self.take("num")[1]
                    if den == 0:
                        raise ParseError("zero denominator")
                coeff *= Fraction(num, den)
            elif kind == "name":
                name = self.take()[1]
                k = self.basis_index(name)
                if k is not None:
                    if comp is not None:
                        raise ParseError("more than one basis vector in a term")
                    comp = k
                elif name in self.alg._index:
                    if comp is not None:
                        raise ParseError("generators must precede the basis vector")
                    g = self.alg._index[name]
                    e = 1
                    if self.peek() == "^":
                        self.take()
                        e = self.take("num")[1]
                    if poly is not None:
                        poly = poly * self.alg.monomial(unit_vector(self.alg.n, g, e))
                    else:
                        if g < last_gen:
                            raise ParseError(f"generator {name} out of PBW order in a monomial")
                        mono[g] += e
                        last_gen = g
                else:
                    raise ParseError(f"unknown generator {name!r}")
            elif kind == "(":
                self.take()
                inner = self.parse_sum()
                self.take(")")
                sub = self.alg.poly()
                for p, c in inner:
                    if c is not None:
                        raise ParseError("basis vector inside parentheses")
                    sub = sub + p
                base = poly if poly is not None else self.alg.monomial(tuple(mono))
                poly = base * sub
            else:
                raise ParseError(f"unexpected token {self.toks[self.pos][1]!r}" if kind else "unexpected end of expression")
            if self.peek() == "*":
                self.take()
                continue
            break
        if poly is None:
            poly = self.alg.monomial(tuple(mono))
        return poly.scale(coeff), comp


def parse_polynomial(algebra: AlgebraSpec, text: str) -> Polynomial:
    p = _Parser(algebra, text)
    out = algebra.poly()
    for poly, _ in p.parse_sum():
        out = out + poly
    p.done()
    return out


def parse_module_element(module: FreeModuleSpec, text: str) -> ModuleElement:
    p = _Parser(module.algebra, text, rank=module.rank)
    terms: dict = {}
    for poly, comp in p.parse_sum():
        if comp is None:
            if poly:
                raise ParseError("module term without a basis vector e<i>")
            continue
        for a, c in poly._terms.items():
            v = terms.get((a, comp), 0) + c
            if v:
                terms[(a, comp)] = v
            else:
                terms.pop((a, comp), None)
    p.done()
    return ModuleElement(module, terms)


# -- printing -----------------------------------------------------------------

def format_monomial(algebra: AlgebraSpec, alpha) -> str:
    parts = []
    for g, e in zip(algebra.gens, alpha):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


def _signed_terms(algebra, terms) -> list:
    out = []
    for c, m in terms:
        mono = format_monomial(algebra, m)
        mag = abs(c)
        if mono == "1":
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        out.append((c < 0, body))
    return out


def _join(signed) -> str:
    if not signed:
        return "0"
    neg, body = signed[0]
    s = ("-" if neg else "") + body
    for neg, body in signed[1:]:
        s += (" - " if neg else " + ") + body
    return s


def format_polynomial(f: Polynomial) -> str:
    return _join(_signed_terms(f.algebra, f.terms))


def format_module_element(xi: ModuleElement) -> str:
    alg = xi.module.algebra
    groups = []
    for i in range(xi.module.rank):
        f = xi.component(i)
        if not f:
            continue
        terms = f.terms
        e = f"e{i + 1}"
        if len(terms) == 1:
            neg, body = _signed_terms(alg, terms)[0]
            groups.append((neg, e if body == "1" else f"{body}*{e}"))
        else:
            groups.append((False, f"({format_polynomial(f)})*{e}"))
    return _join(groups)


# -- line-oriented files ------------------------------------------------------

def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_algebra_file(text: str) -> AlgebraSpec:
    name = gens = weights = None
    order = None
    rels = []
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "algebra":
            if not rest or " " in rest:
                raise ParseError("expected 'algebra <name>'", no)
            name = rest
        elif head == "gens":
            gens = rest.split()
            if not gens:
                raise ParseError("no generators", no)
        elif head == "weights":
            try:
                weights = [int(w) for w in rest.split()]
            except ValueError:
                raise ParseError("weights must be integers", no) from None
        elif head == "order":
            order = (no, rest.split())
        elif head == "rel":
            rels.append((no, rest))
        else:
            raise ParseError(f"unknown directive {head!r}", no)
    if name is None or gens is None:
        raise ParseError("algebra file needs 'algebra' and 'gens' lines")
    if len(set(gens)) != len(gens):
        raise ParseError("duplicate generator names")
    n = len(gens)
    if weights is None:
        weights = [1] * n
    if len(weights) != n:
        raise ParseError(f"expected {n} weights, got {len(weights)}")
    index = {g: k for k, g in enumerate(gens)}
    ordering = OrderingSpec()
    if order is not None:
        no, words = order
        if not words or words[0] not in ("lex", "grlex", "grevlex"):
            raise ParseError("order must be lex, grlex or grevlex", no)
        kind = words[0]
        priority = None
        weighted = True
        tail = False
        k = 1
        while k < len(words):
            w = words[k]
            if w == "priority":
                k += 1
                priority = []
                while k < len(words) and words[k] in index:
                    priority.append(index[words[k]])
                    k += 1
                continue
            if w == "unweighted":
                weighted = False
            elif w == "tail":
                tail = True
            else:
                raise ParseError(f"unexpected word {w!r} in order line", no)
            k += 1
        core = n - 1 if tail else n
        if priority is not None and sorted(priority) != list(range(core)):
            raise ParseError("priority must list every generator exactly once", no)
        ordering = OrderingSpec(kind, tuple(priority) if priority else None, weighted, tail)
    draft = AlgebraSpec(name, gens, weights, ordering, {}, validate=False)
    relations = {}
    for no, text_rel in rels:
        lhs, eq, rhs = text_rel.partition("=")
        if not eq:
            raise ParseError("relation needs '='", no)
        m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9']*)\s*\*\s*([A-Za-z_][A-Za-z_0-9']*)\s*", lhs)
        if not m:
            raise ParseError("relation left side must be <gj>*<gi>", no)
        gj, gi = m.groups()
        for g in (gj, gi):
            if g not in index:
                raise ParseError(f"unknown generator {g!r}", no)
        j, i = index[gj], index[gi]
        if j <= i:
            raise ParseError(f"relation {gj}*{gi} must have the later generator first", no)
        if (j, i) in relations:
            raise ParseError(f"duplicate relation for {gj}*{gi}", no)
        try:
            f = parse_polynomial(draft, rhs)
        except ParseError as exc:
            raise ParseError(str(exc), no) from None
        target = tuple(x + y for x, y in zip(unit_vector(n, i), unit_vector(n, j)))
        terms = f.as_dict()
        lam = terms.pop(target, Fraction(0))
        relations[(j, i)] = (lam, terms)
    return AlgebraSpec(name, gens, weights, ordering, relations)


def format_algebra(spec: AlgebraSpec) -> str:
    lines = [f"algebra {spec.name}", "gens " + " ".join(spec.gens), "weights " + " ".join(map(str, spec.weights))]
    o = spec.ordering
    words = ["order", o.kind]
    if o.priority is not None:
        words += ["priority"] + [spec.gens[k] for k in o.priority]
    if not o.weighted:
        words.append("unweighted")
    if o.tail:
        words.append("tail")
    lines.append(" ".join(words))
    for (j, i) in sorted(spec.relations):
        rel = spec.relations[(j, i)]
        if rel.lam == 1 and not rel.lower:
            continue
        target = tuple(x + y for x, y in zip(unit_vector(spec.n, i), unit_vector(spec.n, j)))
        rhs = Polynomial(spec, dict(rel.lower))
        rhs = rhs + spec.monomial(target, rel.lam)
        lines.append(f"rel {spec.gens[j]}*{spec.gens[i]} = {rhs}")
    return "\n".join(lines) + "\n"


@dataclass
class ModuleFile:
    name: str
    algebra_name: str
    module: FreeModuleSpec
    gen_names: list
    gens: list


def _parse_modorder(words, rank, no):
    if not words or words[0] not in ("top", "pot", "schreyer"):
        raise ParseError("modorder must be top, pot or schreyer", no)
    kind = words[0]
    if kind == "schreyer":
        raise ParseError("a schreyer ordering needs images and can only arise inside a resolution", no)
    graded = False
    prio = None
    k = 1
    while k < len(words):
        w = words[k]
        if w == "graded":
            graded = True
            k += 1
        elif w == "priority":
            k += 1
            comps = []
            while k < len(words) and re.fullmatch(r"e\d+", words[k]):
                comps.append(int(words[k][1:]) - 1)
                k += 1
            if sorted(comps) != list(range(rank)):
                raise ParseError("component priority must list every e<i> once", no)
            prio = tuple(reversed(comps))
        else:
            raise ParseError(f"unexpected word {w!r} in modorder line", no)
    return ModuleOrderingSpec(kind, graded, prio)


def _format_modorder(o: ModuleOrderingSpec) -> str:
    words = ["modorder", o.kind]
    if o.graded:
        words.append("graded")
    if o.component_priority is not None:
        words += ["priority"] + [f"e{c + 1}" for c in reversed(o.component_priority)]
    return " ".join(words)


def parse_module_file(text: str, algebra: AlgebraSpec) -> ModuleFile:
    name = alg_name = None
    rank = None
    shifts = None
    order = None
    gens = []
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "module":
            m = re.fullmatch(r"(\S+)\s+over\s+(\S+)", rest)
            if not m:
                raise ParseError("expected 'module <name> over <algebra>'", no)
            name, alg_name = m.groups()
            if alg_name != algebra.name:
                raise ParseError(f"module is over {alg_name!r}, algebra file defines {algebra.name!r}", no)
        elif head == "rank":
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError("rank must be a positive integer", no)
            rank = int(rest)
        elif head == "shifts":
            try:
                shifts = [int(b) for b in rest.split()]
            except ValueError:
                raise ParseError("shifts must be integers", no) from None
        elif head == "modorder":
            order = (no, rest.split())
        elif head == "gen":
            m = re.fullmatch(r"(\S+)\s*=\s*(.+)", rest)
            if not m:
                raise ParseError("expected 'gen <name> = <element>'", no)
            gens.append((no, m.group(1), m.group(2)))
        else:
            raise ParseError(f"unknown directive {head!r}", no)
    if name is None or rank is None:
        raise ParseError("module file needs 'module' and 'rank' lines")
    if shifts is None:
        shifts = [0] * rank
    if len(shifts) != rank:
        raise ParseError(f"expected {rank} shifts, got {len(shifts)}")
    ordering = _parse_modorder(order[1], rank, order[0]) if order else ModuleOrderingSpec("top", True)
    try:
        module = FreeModuleSpec(algebra, rank, shifts, ordering, name)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
    names, elems = [], []
    for no, gname, body in gens:
        try:
            elems.append(parse_module_element(module, body))
        except ParseError as exc:
            raise ParseError(str(exc), no) from None
        names.append(gname)
    return ModuleFile(name, alg_name, module, names, elems)


def format_module_file(mf: ModuleFile) -> str:
    m = mf.module
    lines = [
        f"module {mf.name} over {mf.algebra_name}",
        f"rank {m.rank}",
        "shifts " + " ".join(map(str, m.shifts)),
        _format_modorder(m.ordering),
    ]
    for gname, g in zip(mf.gen_names, mf.gens):
        lines.append(f"gen {gname} = {g}")
    return "\n".join(lines) + "\n"


def format_matrix_rows(rows: Sequence[Sequence[Polynomial]]) -> list:
    return [f"  row {k}: " + " | ".join(str(p) for p in row) for k, row in enumerate(rows, 1)]


# -- resolutions ----------------------------------------------------------------

def format_resolution(R, algebra_name: str | None = None) -> str:
    lines = [f"resolution over {algebra_name or R.algebra.name} of {R.module_name}"]
    base = R.base
    lines.append(f"step 0: rank {base.rank} shifts {' '.join(map(str, base.shifts))}".rstrip())
    lines.append(_format_modorder(base.ordering))
    for i, st in enumerate(R.steps, 1):
        lines.append(f"map {i}: {st.source.rank} x {st.target.rank} matrix")
        lines.extend(format_matrix_rows(st.matrix))
        lines.append(f"step {i}: rank {st.source.rank} shifts {' '.join(map(str, st.source.shifts))}".rstrip())
    return "\n".join(lines) + "\n"


def parse_resolution(text: str, algebra: AlgebraSpec):
    from .resolution import Resolution

    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty resolution file")
    no, head = lines[0]
    m = re.fullmatch(r"resolution over (\S+) of (\S+)", head)
    if not m:
        raise ParseError("expected 'resolution over <algebra> of <module>'", no)
    if m.group(1) != algebra.name:
        raise ParseError(f"resolution is over {m.group(1)!r}, algebra file defines {algebra.name!r}", no)
    module_name = m.group(2)
    k = 1
    step_re = re.compile(r"step (\d+): rank (\d+) shifts((?:\s+\d+)*)")

    def read_step(expected):
        nonlocal k
        if k >= len(lines):
            raise ParseError(f"missing 'step {expected}' line")
        no, line = lines[k]
        sm = step_re.fullmatch(line)
        if not sm or int(sm.group(1)) != expected:
            raise ParseError(f"expected 'step {expected}: rank <r> shifts ...'", no)
        rank = int(sm.group(2))
        shifts = [int(b) for b in sm.group(3).split()]
        if len(shifts) != rank:
            raise ParseError(f"step {expected} declares rank {rank} but {len(shifts)} shifts", no)
        k += 1
        return rank, shifts

    rank0, shifts0 = read_step(0)
    ordering = ModuleOrderingSpec("top", True)
    if k < len(lines) and lines[k][1].startswith("modorder"):
        no, line = lines[k]
        ordering = _parse_modorder(line.split()[1:], rank0, no)
        k += 1
    base = FreeModuleSpec(algebra, rank0, shifts0, ordering, "L0")
    matrices, shifts = [], []
    cols = rank0
    idx = 1
    while k < len(lines):
        no, line = lines[k]
        mm = re.fullmatch(r"map (\d+): (\d+) x (\d+) matrix", line)
        if not mm or int(mm.group(1)) != idx:
            raise ParseError(f"expected 'map {idx}: <t> x <m> matrix'", no)
        rows_n = int(mm.group(2))
        if int(mm.group(3)) != cols:
            raise ParseError(f"map {idx} has {mm.group(3)} columns but the target has rank {cols}", no)
        k += 1
        rows = []
        for r in range(1, rows_n + 1):
            if k >= len(lines):
                raise ParseError(f"map {idx} is missing row {r}")
            no, line = lines[k]
            rm = re.fullmatch(r"row (\d+):(.*)", line)
            if not rm or int(rm.group(1)) != r:
                raise ParseError(f"expected 'row {r}: ...'", no)
            cells = [c.strip() for c in rm.group(2).split("|")] if cols else []
            if len(cells) != cols:
                raise ParseError(f"row {r} has {len(cells)} entries, expected {cols}", no)
            try:
                rows.append([parse_polynomial(algebra, c) for c in cells])
            except ParseError as exc:
                raise ParseError(str(exc), no) from None
            k += 1
        rank, sh = read_step(idx)
        if rank != rows_n:
            raise ParseError(f"step {idx} rank {rank} does not match map {idx} with {rows_n} rows", lines[k - 1][0])
        matrices.append(rows)
        shifts.append(sh)
        cols = rows_n
        idx += 1
    try:
        return Resolution.from_matrices(algebra, base, matrices, shifts, None, module_name)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
