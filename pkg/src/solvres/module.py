"""Free left modules ``L = A e_1 + ... + A e_s`` over a solvable algebra.

Module monomials are pairs ``(alpha, i)`` standing for ``a^alpha e_i`` with a
0-based component index ``i``.  Elements are sparse dicts of such pairs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import AlgebraSpec, Polynomial, mono_add, mono_divides, mono_sub
from .errors import ValidationError, ZeroElementError
from .scalars import ONE

MODULE_KINDS = ("top", "pot", "schreyer")


@dataclass(frozen=True)
class ModuleOrderingSpec:
    """A module monomial ordering.

    ``component_priority`` lists component indices from smallest to largest
    (default ``e_1 < e_2 < ...``).  For the Schreyer kind ``images`` holds the
    leading monomials ``(alpha_k, p_k)`` of the inducing elements and
    ``ambient`` the free module they live in; ``a^alpha eps_k`` is then
    compared through ``a^(alpha + alpha_k) e_(p_k)`` in the ambient ordering,
    ties broken by ``k``.  ``graded`` puts ``d(a^alpha) + b_i`` first.  With
    ``tail`` set the algebra's last generator is ignored except as a final
    tie-break (used for modules over a Rees algebra).
    """

    kind: str = "top"
    graded: bool = True
    component_priority: tuple | None = None
    images: tuple | None = None
    ambient: "FreeModuleSpec | None" = None
    tail: bool = False

    def __post_init__(self):
        if self.kind not in MODULE_KINDS:
            raise ValueError(f"unknown module ordering kind {self.kind!r}")
        if self.kind == "schreyer":
            if self.images is None or self.ambient is None:
                raise ValidationError(["Schreyer ordering needs nonzero images and their ambient module"])
            object.__setattr__(self, "images", tuple((tuple(a), p) for a, p in self.images))
        if self.component_priority is not None:
            object.__setattr__(self, "component_priority", tuple(self.component_priority))

    def with_tail(self) -> "ModuleOrderingSpec":
        return ModuleOrderingSpec(self.kind, self.graded, self.component_priority, self.images, self.ambient, True)

    def restrict(self, components: Sequence[int]) -> "ModuleOrderingSpec":
        """Ordering on the free module spanned by ``components`` (renumbered)."""
        comps = list(components)
        prio = None
        if self.component_priority is not None:
            pos = {c: k for k, c in enumerate(comps)}
            prio = tuple(pos[c] for c in self.component_priority if c in pos)
        images = tuple(self.images[c] for c in comps) if self.images is not None else None
        return ModuleOrderingSpec(self.kind, self.graded, prio, images, self.ambient, self.tail)

    def key_function(self, module: "FreeModuleSpec"):
        algebra = module.algebra
        n = algebra.n
        core_n = n - 1 if self.tail else n
        akey = algebra.key
        shifts = module.shifts
        weights = algebra.weights[:core_n]
        if self.component_priority is None:
            ckey = lambda i: i
        else:
            rank = {c: k for k, c in enumerate(self.component_priority)}
            ckey = rank.__getitem__
        kind = self.kind
        if kind == "schreyer":
            amb_key = self.ambient.key
            images = self.images

            def inner(alpha, i):
                lm, p = images[i]
                return (amb_key((mono_add(alpha, lm), p)), i)
        elif kind == "top":
            def inner(alpha, i):
                return (akey(alpha), ckey(i))
        else:
            def inner(alpha, i):
                return (ckey(i), akey(alpha))

        if self.tail:
            src = algebra.ordering
            core_key = functools.lru_cache(maxsize=None)(
                type(src)(src.kind, src.priority, src.weighted).key_function(weights)
            )
            graded = self.graded

            def keyed(alpha, i):
                a = alpha[:core_n]
                if kind == "schreyer":
                    k = inner(a, i)
                elif kind == "top":
                    k = (core_key(a), ckey(i))
                else:
                    k = (ckey(i), core_key(a))
                if graded:
                    k = (sum(w * x for w, x in zip(weights, a)) + shifts[i],) + k
                return (k, alpha[core_n])

            return keyed

        if self.graded:
            def keyed(alpha, i):
                deg = sum(w * x for w, x in zip(weights, alpha)) + shifts[i]
                return (deg,) + inner(alpha, i)

            return keyed
        return inner

    def is_graded(self) -> bool:
        return self.graded and not self.tail


class FreeModuleSpec:
    """A filtered free module of finite rank with a module ordering."""

    def __init__(
        self,
        algebra: AlgebraSpec,
        rank: int,
        shifts: Sequence[int] | None = None,
        ordering: ModuleOrderingSpec | None = None,
        name: str = "L",
    ):
        if rank < 0:
            raise ValidationError([f"rank must be nonnegative, got {rank}"])
        self.algebra = algebra
        self.rank = rank
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        if len(self.shifts) != rank:
            raise ValidationError([f"expected {rank} shifts, got {len(self.shifts)}"])
        if any(b < 0 for b in self.shifts):
            raise ValidationError(["shifts must be nonnegative"])
        self.ordering = ordering or ModuleOrderingSpec()
        if self.ordering.kind == "schreyer" and len(self.ordering.images) != rank:
            raise ValidationError(["Schreyer ordering needs one image per component"])
        if self.ordering.component_priority is not None and sorted(self.ordering.component_priority) != list(range(rank)):
            raise ValidationError(["component priority is not a permutation of the components"])
        self.name = name
        kf = self.ordering.key_function(self)
        self._key = functools.lru_cache(maxsize=None)(kf)

    def key(self, mono) -> tuple:
        return self._key(mono[0], mono[1])

    def __repr__(self):
        return f"FreeModuleSpec(rank={self.rank}, shifts={self.shifts}, ordering={self.ordering.kind})"

    def basis_vector(self, i: int) -> "ModuleElement":
        return ModuleElement(self, {(self.algebra.one(), i): ONE})

    def zero(self) -> "ModuleElement":
        return ModuleElement(self)

    def element(self, components: Sequence) -> "ModuleElement":
        """Build ``sum_i components[i] * e_i`` from polynomials."""
        if len(components) != self.rank:
            raise ValueError(f"expected {self.rank} components, got {len(components)}")
        terms = {}
        for i, f in enumerate(components):
            if isinstance(f, Polynomial):
                items = f._terms.items()
            else:
                items = [(self.algebra.one(), Fraction(f))] if f else []
            for m, c in items:
                terms[(m, i)] = c
        return ModuleElement(self, terms)

    def restrict(self, components: Sequence[int], name: str | None = None) -> "FreeModuleSpec":
        comps = list(components)
        return FreeModuleSpec(
            self.algebra,
            len(comps),
            [self.shifts[c] for c in comps],
            self.ordering.restrict(comps),
            name or self.name,
        )

    def degree_of(self, mono) -> int:
        return self.algebra.degree_of(mono[0]) + self.shifts[mono[1]]


class ModuleElement:
    """An element of a free module, stored as ``{(alpha, i): coefficient}``."""

    __slots__ = ("module", "_terms", "_lead")

    def __init__(self, module: FreeModuleSpec, terms: Mapping | None = None):
        self.module = module
        self._terms = {(tuple(a), i): Fraction(c) for (a, i), c in (terms or {}).items() if c != 0}
        self._lead = None

    @classmethod
    def _raw(cls, module, terms):
        obj = cls.__new__(cls)
        obj.module = module
        obj._terms = terms
        obj._lead = None
        return obj

    @property
    def terms(self) -> list:
        key = self.module.key
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
        """``(LC, (alpha, i))`` of a nonzero element."""
        if not self._terms:
            raise ZeroElementError("zero module element has no leading term")
        if self._lead is None:
            m = max(self._terms, key=self.module.key)
            self._lead = (self._terms[m], m)
        return self._lead

    @property
    def lm(self):
        return self.leading()[1]

    @property
    def lc(self) -> Fraction:
        return self.leading()[0]

    def filtered_degree(self) -> int:
        return filtered_degree(self.module, self)

    def component(self, i: int) -> Polynomial:
        return Polynomial(self.module.algebra, {a: c for (a, k), c in self._terms.items() if k == i})

    def components(self) -> list:
        return [self.component(i) for i in range(self.module.rank)]

    def support(self) -> set:
        return {i for _, i in self._terms}

    def scale(self, c) -> "ModuleElement":
        c = Fraction(c)
        if c == 0:
            return ModuleElement._raw(self.module, {})
        return ModuleElement._raw(self.module, {m: v * c for m, v in self._terms.items()})

    def monic(self) -> "ModuleElement":
        return self.scale(1 / self.lc)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms, ONE)
        return ModuleElement._raw(self.module, out)

    def __sub__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms, -ONE)
        return ModuleElement._raw(self.module, out)

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return left_multiply(other, self)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        from .textio import format_module_element

        return format_module_element(self)

    def __repr__(self):
        return f"ModuleElement({self})"


def _accumulate(out: dict, terms: Mapping, factor) -> None:
    for m, c in terms.items():
        v = out.get(m, 0) + factor * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)


def mono_times_raw(algebra: AlgebraSpec, coeff, beta, terms: Mapping) -> dict:
    """``coeff * a^beta * xi`` on raw term dicts."""
    out: dict = {}
    mm = algebra.mul_mono_raw
    for (a, i), c in terms.items():
        cc = coeff * c
        for m, d in mm(beta, a).items():
            key = (m, i)
            v = out.get(key, 0) + cc * d
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def left_multiply(f: Polynomial, xi: ModuleElement) -> ModuleElement:
    out: dict = {}
    alg = xi.module.algebra
    for b, c in f._terms.items():
        _accumulate(out, mono_times_raw(alg, c, b, xi._terms), ONE)
    return ModuleElement._raw(xi.module, out)


def combine(module: FreeModuleSpec, coeffs: Sequence[Polynomial], elems: Sequence[ModuleElement]) -> ModuleElement:
    """``sum_k coeffs[k] * elems[k]``."""
    out: dict = {}
    for f, xi in zip(coeffs, elems):
        if f:
            _accumulate(out, left_multiply(f, xi)._terms, ONE)
    return ModuleElement._raw(module, out)


def compare_module_monomials(spec: FreeModuleSpec, t1, t2) -> int:
    k1, k2 = spec.key((tuple(t1[0]), t1[1])), spec.key((tuple(t2[0]), t2[1]))
    return (k1 > k2) - (k1 < k2)


def filtered_degree(spec: FreeModuleSpec, xi: ModuleElement) -> int:
    if not xi._terms:
        raise ZeroElementError("the zero element has no filtered degree")
    deg = spec.algebra.degree_of
    return max(deg(a) + spec.shifts[i] for a, i in xi._terms)


def monomial_divides(t1, t2):
    """Quotient exponent ``beta - alpha`` if ``a^alpha e_i`` divides ``a^beta e_j``."""
    (a, i), (b, j) = t1, t2
    if i != j or not mono_divides(a, b):
        return None
    return mono_sub(b, a)


def divide(spec: FreeModuleSpec, xi: ModuleElement, divisors: Sequence[ModuleElement]):
    """Left division with least-index divisor selection.

    Returns ``(quotients, remainder)`` with ``xi = sum q_j * divisors[j] + remainder``.
    """
    quots, rem = _divide_raw(spec, xi._terms, divisors)
    alg = spec.algebra
    return [Polynomial(alg, q) for q in quots], ModuleElement._raw(spec, rem)


def _divide_raw(spec: FreeModuleSpec, terms: Mapping, divisors: Sequence[ModuleElement], track: bool = True):
    alg = spec.algebra
    key = spec.key
    leads = []
    for d in divisors:
        if not d._terms:
            raise ZeroElementError("division by the zero element")
        c, (a, i) = d.leading()
        leads.append((a, i, c))
    by_comp: dict = {}
    for k, (a, i, c) in enumerate(leads):
        by_comp.setdefault(i, []).append(k)
    p = dict(terms)
    rem: dict = {}
    quots = [dict() for _ in divisors] if track else None
    mm = alg.mul_mono_raw
    while p:
        m = max(p, key=key)
        c = p[m]
        beta, i = m
        hit = None
        for k in by_comp.get(i, ()):
            a = leads[k][0]
            if mono_divides(a, beta):
                hit = k
                break
        if hit is None:
            rem[m] = c
            del p[m]
            continue
        a, _, lc = leads[hit]
        q = mono_sub(beta, a)
        lam = mm(q, a)[beta]
        factor = c / (lam * lc)
        for (ga, gi), gc in divisors[hit]._terms.items():
            cc = factor * gc
            for mono, d in mm(q, ga).items():
                kk = (mono, gi)
                v = p.get(kk, 0) - cc * d
                if v:
                    p[kk] = v
                else:
                    p.pop(kk, None)
        p.pop(m, None)
        if track:
            qd = quots[hit]
            v = qd.get(q, 0) + factor
            if v:
                qd[q] = v
            else:
                qd.pop(q, None)
    return quots, rem
