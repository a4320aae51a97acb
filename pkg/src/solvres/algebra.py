"""Solvable polynomial algebras with a PBW basis.

An algebra ``K[a_1, ..., a_n]`` is described by its generators, positive
integer weights, a monomial ordering and a table of commutation relations

    a_j a_i = lambda_ji * a_i a_j + f_ji        (j > i)

where every monomial of ``f_ji`` is smaller than ``a_i a_j``.  Monomials are
exponent tuples ``alpha`` standing for ``a_1^alpha_1 ... a_n^alpha_n``.
Pairs missing from the table commute.
"""

from __future__ import annotations

import functools
import sys
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .errors import StepCapExceeded, ValidationError, ZeroElementError
from .scalars import ONE

Monomial = tuple  # tuple[int, ...]

ORDER_KINDS = ("lex", "grlex", "grevlex")

MUL_STEP_CAP = 2_000_000


def mono_add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def unit_vector(n: int, k: int, e: int = 1) -> Monomial:
    v = [0] * n
    v[k] = e
    return tuple(v)


@dataclass(frozen=True)
class OrderingSpec:
    """A built-in monomial ordering.

    ``priority`` lists generator indices from most to least significant for
    the lexicographic part; ``None`` means ``a_1 > a_2 > ... > a_n``.  When
    ``weighted`` is false the degree comparison ignores the algebra weights.
    With ``tail`` set the last generator is excluded from the comparison and
    only breaks ties (a smaller exponent comes first); this is the ordering
    of a Rees algebra, where the last generator is the homogenizing element.
    """

    kind: str = "grlex"
    priority: tuple | None = None
    weighted: bool = True
    tail: bool = False

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown ordering kind {self.kind!r}")
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(self.priority))

    def core_size(self, n: int) -> int:
        return n - 1 if self.tail else n

    def resolved_priority(self, n: int) -> tuple:
        m = self.core_size(n)
        return self.priority if self.priority is not None else tuple(range(m))

    def key_function(self, weights: tuple):
        """Return ``key(alpha)`` such that larger keys are larger monomials."""
        n = len(weights)
        m = self.core_size(n)
        prio = self.resolved_priority(n)
        rev = tuple(reversed(prio))
        w = weights[:m] if self.weighted else (1,) * m
        kind = self.kind

        def core(alpha):
            if kind == "lex":
                return tuple(alpha[p] for p in prio)
            deg = sum(a * b for a, b in zip(w, alpha))
            if kind == "grlex":
                return (deg,) + tuple(alpha[p] for p in prio)
            return (deg,) + tuple(-alpha[p] for p in rev)

        if self.tail:
            return lambda alpha: (core(alpha), alpha[m])
        return core

    def is_graded(self, weights: tuple) -> bool:
        """Whether the ordering refines the weighted degree."""
        if self.tail or self.kind == "lex":
            return False
        return self.weighted or len(set(weights)) <= 1


class Relation(NamedTuple):
    lam: Fraction
    lower: Mapping  # monomial -> Fraction


class AlgebraSpec:
    """An immutable description of a solvable polynomial algebra.

    ``relations`` maps 0-based pairs ``(j, i)`` with ``j > i`` to
    ``(lambda_ji, lower)`` where ``lower`` is a ``{monomial: coefficient}``
    dict.  Multiplication results are memoized per instance.
    """

    def __init__(
        self,
        name: str,
        gens: Iterable[str],
        weights: Iterable[int] | None = None,
        ordering: OrderingSpec | None = None,
        relations: Mapping | None = None,
        *,
        validate: bool = True,
    ):
        self.name = name
        self.gens = tuple(gens)
        self.n = len(self.gens)
        self.weights = tuple(weights) if weights is not None else (1,) * self.n
        self.ordering = ordering or OrderingSpec()
        rels = {}
        for (j, i), rel in (relations or {}).items():
            lam, lower = rel
            lower = {tuple(m): Fraction(c) for m, c in dict(lower).items() if c != 0}
            rels[(j, i)] = Relation(Fraction(lam), lower)
        self.relations = rels
        self._index = {g: k for k, g in enumerate(self.gens)}
        self.key = functools.lru_cache(maxsize=None)(
            self.ordering.key_function(self.weights)
        )
        self._lock = threading.Lock()
        self._mono_cache: dict = {}
        self._pair_cache: dict = {}
        # per-thread recursion bookkeeping for the step guard
        self._state = threading.local()
        self.commutative = all(
            r.lam == 1 and not r.lower for r in self.relations.values()
        )
        if validate:
            violations = validate_algebra(self)
            if violations:
                raise ValidationError(violations)

    # -- structural identity ------------------------------------------------
    def _signature(self):
        rels = tuple(
            sorted(
                (k, r.lam, tuple(sorted(r.lower.items())))
                for k, r in self.relations.items()
                if not (r.lam == 1 and not r.lower)
            )
        )
        return (self.name, self.gens, self.weights, self.ordering, rels)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        return hash((self.name, self.gens, self.weights))

    def __repr__(self):
        return f"AlgebraSpec({self.name!r}, gens={self.gens}, weights={self.weights})"

    # -- basic helpers ------------------------------------------------------
    def index(self, gen: str) -> int:
        return self._index[gen]

    def one(self) -> Monomial:
        return (0,) * self.n

    def degree_of(self, alpha: Monomial) -> int:
        return sum(w * a for w, a in zip(self.weights, alpha))

    def relation(self, j: int, i: int) -> Relation:
        return self.relations.get((j, i), Relation(ONE, {}))

    def gen(self, name_or_index) -> "Polynomial":
        k = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial(self, {unit_vector(self.n, k): ONE})

    def poly(self, terms: Mapping | None = None) -> "Polynomial":
        return Polynomial(self, terms or {})

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {self.one(): Fraction(c)})

    def monomial(self, alpha, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(alpha): Fraction(coeff)})

    # -- multiplication -----------------------------------------------------
    def mul_mono_raw(self, a: Monomial, b: Monomial) -> dict:
        """Normal form of ``a^alpha * a^beta`` as a read-only dict."""
        if self.commutative:
            return {mono_add(a, b): ONE}
        hit = self._mono_cache.get((a, b))
        if hit is not None:
            return hit
        st = self._state
        if not getattr(st, "depth", 0):
            st.depth = 0
            st.steps = 0
            st.top = (a, b)
        st.depth += 1
        try:
            res = self._compute(a, b)
        except RecursionError:
            raise StepCapExceeded(
                f"monomial product {st.top[0]} * {st.top[1]} did not terminate (recursion depth)"
            ) from None
        finally:
            st.depth -= 1
        with self._lock:
            self._mono_cache[(a, b)] = res
        return res

    def _tick(self, a, b):
        st = self._state
        st.steps += 1
        if st.steps > MUL_STEP_CAP:
            ta, tb = st.top
            raise StepCapExceeded(
                f"monomial product {ta} * {tb} exceeded the step cap (stuck at {a} * {b})"
            )

    def _compute(self, a: Monomial, b: Monomial) -> dict:
        self._tick(a, b)
        n = self.n
        j = -1
        for k in range(n - 1, -1, -1):
            if a[k]:
                j = k
                break
        i = n
        for k in range(n):
            if b[k]:
                i = k
                break
        if j <= i:
            return {mono_add(a, b): ONE}
        s, t = a[j], b[i]
        a1 = a[:j] + (0,) + a[j + 1:]
        b1 = b[:i] + (0,) + b[i + 1:]
        a1_one = not any(a1)
        b1_one = not any(b1)
        out: dict = {}
        for g, c in self._pow_pair(j, s, i, t).items():
            right = {g: ONE} if b1_one else self.mul_mono_raw(g, b1)
            for h, c2 in right.items():
                left = {h: ONE} if a1_one else self.mul_mono_raw(a1, h)
                cc = c * c2
                for m, c3 in left.items():
                    v = out.get(m, 0) + cc * c3
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def _pow_pair(self, j: int, s: int, i: int, t: int) -> dict:
        """Normal form of ``a_j^s * a_i^t`` for ``j > i``."""
        key = (j, s, i, t)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        n = self.n
        rel = self.relation(j, i)
        mono = list(self.one())
        mono[i] = t
        mono[j] = s
        mono = tuple(mono)
        if not rel.lower:
            res = {mono: rel.lam ** (s * t)}
        elif s == 1 and t == 1:
            res = dict(rel.lower)
            res[mono] = res.get(mono, 0) + rel.lam
        elif t > 1:
            ei = unit_vector(n, i)
            res = {}
            for g, c in self._pow_pair(j, s, i, t - 1).items():
                for m, c2 in self.mul_mono_raw(g, ei).items():
                    v = res.get(m, 0) + c * c2
                    if v:
                        res[m] = v
                    else:
                        res.pop(m, None)
        else:
            ej = unit_vector(n, j)
            res = {}
            for g, c in self._pow_pair(j, s - 1, i, 1).items():
                for m, c2 in self.mul_mono_raw(ej, g).items():
                    v = res.get(m, 0) + c * c2
                    if v:
                        res[m] = v
                    else:
                        res.pop(m, None)
        with self._lock:
            self._pair_cache[key] = res
        return res

    def mul_mono(self, a: Monomial, b: Monomial) -> "Polynomial":
        a, b = tuple(a), tuple(b)
        if len(a) != self.n or len(b) != self.n:
            raise ValueError("exponent vector size mismatch")
        return Polynomial(self, dict(self.mul_mono_raw(a, b)))

    def mul_raw(self, f: Mapping, g: Mapping) -> dict:
        out: dict = {}
        for a, c in f.items():
            for b, d in g.items():
                cd = c * d
                for m, e in self.mul_mono_raw(a, b).items():
                    v = out.get(m, 0) + cd * e
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return out

    def mul(self, f: "Polynomial", g: "Polynomial") -> "Polynomial":
        return Polynomial(self, self.mul_raw(f._terms, g._terms))

    # -- independent rewriting ----------------------------------------------
    def word_of(self, alpha: Monomial) -> tuple:
        return tuple(k for k in range(self.n) for _ in range(alpha[k]))

    def rewrite_word(self, word: Iterable[int], strategy: str = "leftmost", cap: int = 1_000_000) -> "Polynomial":
        """Bring a word in the generators to PBW normal form by rewriting.

        Every adjacent inversion ``a_j a_i`` (``j > i``) is replaced using the
        relation table; ``strategy`` picks the leftmost or rightmost inversion.
        This does not share code with :meth:`mul_mono_raw` and serves as a
        cross-check of it.
        """
        pending = {tuple(word): ONE}
        done: dict = {}
        steps = 0
        while pending:
            w, c = pending.popitem()
            inv = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
            if not inv:
                alpha = [0] * self.n
                for g in w:
                    alpha[g] += 1
                alpha = tuple(alpha)
                v = done.get(alpha, 0) + c
                if v:
                    done[alpha] = v
                else:
                    done.pop(alpha, None)
                continue
            steps += 1
            if steps > cap:
                raise StepCapExceeded(f"rewriting of word {word} exceeded the step cap")
            k = inv[0] if strategy == "leftmost" else inv[-1]
            j, i = w[k], w[k + 1]
            rel = self.relation(j, i)
            head, tail = w[:k], w[k + 2:]
            repl = [((i, j), rel.lam)] + [(self.word_of(m), mc) for m, mc in rel.lower.items()]
            for mid, mc in repl:
                nw = head + mid + tail
                v = pending.get(nw, 0) + c * mc
                if v:
                    pending[nw] = v
                else:
                    pending.pop(nw, None)
        return Polynomial(self, done)


class Polynomial:
    """An element of a solvable polynomial algebra.

    Stored sparsely as ``{monomial: coefficient}``; :attr:`terms` lists the
    terms in strictly descending order.
    """

    __slots__ = ("algebra", "_terms", "_lead")

    def __init__(self, algebra: AlgebraSpec, terms: Mapping | None = None):
        self.algebra = algebra
        self._terms = {tuple(m): Fraction(c) for m, c in (terms or {}).items() if c != 0}
        self._lead = None

    @property
    def terms(self) -> list:
        key = self.algebra.key
        return [(c, m) for m, c in sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)]

    def as_dict(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading(self) -> tuple:
        """``(LC, LM)`` of a nonzero polynomial."""
        if not self._terms:
            raise ZeroElementError("zero polynomial has no leading term")
        if self._lead is None:
            m = max(self._terms, key=self.algebra.key)
            self._lead = (self._terms[m], m)
        return self._lead

    @property
    def lm(self) -> Monomial:
        return self.leading()[1]

    @property
    def lc(self) -> Fraction:
        return self.leading()[0]

    def degree(self) -> int:
        return weighted_degree(self.algebra, self)

    def is_constant(self) -> bool:
        return len(self._terms) == 1 and not any(next(iter(self._terms)))

    def coefficient(self, alpha) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def monic(self) -> "Polynomial":
        return self.scale(1 / self.lc)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial(self.algebra)
        return Polynomial(self.algebra, {m: v * c for m, v in self._terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.algebra.constant(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.algebra, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.algebra.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        out = self.algebra.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms and (
            self.algebra is other.algebra or self.algebra.gens == other.algebra.gens
        )

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        from .textio import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


# -- module-level operations ---------------------------------------------------

def compare_monomials(spec: AlgebraSpec, a, b) -> int:
    """Three-way comparison: -1, 0 or 1 for a < b, a == b, a > b."""
    a, b = tuple(a), tuple(b)
    if len(a) != spec.n or len(b) != spec.n:
        raise ValueError("exponent vector size mismatch")
    ka, kb = spec.key(a), spec.key(b)
    return (ka > kb) - (ka < kb)


def weighted_degree(spec: AlgebraSpec, f: Polynomial) -> int:
    if not f._terms:
        raise ZeroElementError("the zero polynomial has no degree")
    return max(spec.degree_of(m) for m in f._terms)


def leading_data(spec: AlgebraSpec, f: Polynomial) -> tuple:
    return f.leading()


def mul_mono(spec: AlgebraSpec, a, b) -> Polynomial:
    return spec.mul_mono(a, b)


def mul(spec: AlgebraSpec, f: Polynomial, g: Polynomial) -> Polynomial:
    return spec.mul(f, g)


def validate_algebra(spec: AlgebraSpec) -> list:
    """Return the list of violated conditions; empty means accepted."""
    out = []
    n = spec.n
    if len(set(spec.gens)) != n:
        out.append("generator names are not distinct")
    if len(spec.weights) != n:
        out.append(f"expected {n} weights, got {len(spec.weights)}")
        return out
    for g, w in zip(spec.gens, spec.weights):
        if w < 1:
            out.append(f"weight of {g} must be a positive integer, got {w}")
    prio = spec.ordering.resolved_priority(n)
    if sorted(prio) != list(range(spec.ordering.core_size(n))):
        out.append("ordering priority is not a permutation of the generators")
        return out
    for (j, i), rel in sorted(spec.relations.items()):
        if not (0 <= i < j < n):
            out.append(f"relation index pair ({j}, {i}) must satisfy n > j > i >= 0")
            continue
        name = f"{spec.gens[j]}*{spec.gens[i]}"
        if rel.lam == 0:
            out.append(f"relation {name}: lambda must be nonzero")
        bad_len = [m for m in rel.lower if len(m) != n or min(m) < 0]
        if bad_len:
            out.append(f"relation {name}: malformed exponent vector {bad_len[0]}")
            continue
        target = unit_vector(n, i)
        target = tuple(x + y for x, y in zip(target, unit_vector(n, j)))
        if rel.lower:
            lm = max(rel.lower, key=spec.key)
            if not spec.key(lm) < spec.key(target):
                out.append(
                    f"relation {name}: leading monomial of lower part {lm} is not below {target}"
                )
            d = max(spec.degree_of(m) for m in rel.lower)
            bound = spec.weights[i] + spec.weights[j]
            if d > bound:
                out.append(
                    f"relation {name}: lower part has degree {d} > {bound} (not filtered)"
                )
    if out:
        return out
    try:
        for k in range(n):
            for j in range(k + 1):
                for i in range(j + 1):
                    ak, aj, ai = spec.gen(k), spec.gen(j), spec.gen(i)
                    left = (ak * aj) * ai
                    right = ak * (aj * ai)
                    if left != right:
                        out.append(
                            f"associativity fails on ({spec.gens[k]}*{spec.gens[j]})*{spec.gens[i]}"
                        )
    except StepCapExceeded as exc:
        out.append(f"multiplication does not terminate: {exc}")
    return out


def is_homogeneous_algebra(spec: AlgebraSpec) -> bool:
    """True when every relation is homogeneous for the weighted degree."""
    for (j, i), rel in spec.relations.items():
        target = spec.weights[i] + spec.weights[j]
        if any(spec.degree_of(m) != target for m in rel.lower):
            return False
    return True


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
