"""Associated graded and Rees algebras, symbol and homogenization maps.

``G(A)`` keeps the top-degree part of each commutation relation.  The Rees
algebra appends a central generator ``Z`` of weight 1 and pads each relation
term with the power of ``Z`` that makes it homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgebraSpec, OrderingSpec, Polynomial
from .errors import ValidationError, ZeroElementError
from .groebner import buchberger, groebner_violations, normal_form
from .module import FreeModuleSpec, ModuleElement, filtered_degree


def assoc_graded_algebra(spec: AlgebraSpec) -> AlgebraSpec:
    rels = {}
    for (j, i), rel in spec.relations.items():
        target = spec.weights[i] + spec.weights[j]
        lower = {m: c for m, c in rel.lower.items() if spec.degree_of(m) == target}
        rels[(j, i)] = (rel.lam, lower)
    return AlgebraSpec(f"{spec.name}_gr", spec.gens, spec.weights, spec.ordering, rels)


def _fresh_name(gens, base="Z"):
    name, k = base, 0
    while name in gens:
        k += 1
        name = f"{base}{k}"
    return name


def rees_algebra(spec: AlgebraSpec) -> AlgebraSpec:
    if spec.ordering.tail:
        raise ValidationError(["algebra is already a Rees algebra"])
    gens = spec.gens + (_fresh_name(spec.gens),)
    weights = spec.weights + (1,)
    o = spec.ordering
    ordering = OrderingSpec(o.kind, o.priority, o.weighted, tail=True)
    rels = {}
    for (j, i), rel in spec.relations.items():
        target = spec.weights[i] + spec.weights[j]
        lower = {m + (target - spec.degree_of(m),): c for m, c in rel.lower.items()}
        rels[(j, i)] = (rel.lam, lower)
    return AlgebraSpec(f"{spec.name}_rees", gens, weights, ordering, rels)


@dataclass
class GradedContext:
    source: AlgebraSpec
    graded: AlgebraSpec = field(init=False)
    rees: AlgebraSpec = field(init=False)

    def __post_init__(self):
        self.graded = assoc_graded_algebra(self.source)
        self.rees = rees_algebra(self.source)
        self._gmods: dict = {}
        self._rmods: dict = {}

    def graded_module(self, L: FreeModuleSpec) -> FreeModuleSpec:
        hit = self._gmods.get(id(L))
        if hit is None or hit[0] is not L:
            gl = FreeModuleSpec(self.graded, L.rank, L.shifts, L.ordering, f"gr_{L.name}")
            hit = (L, gl)
            self._gmods[id(L)] = hit
        return hit[1]

    def rees_module(self, L: FreeModuleSpec) -> FreeModuleSpec:
        hit = self._rmods.get(id(L))
        if hit is None or hit[0] is not L:
            rl = FreeModuleSpec(self.rees, L.rank, L.shifts, L.ordering.with_tail(), f"rees_{L.name}")
            hit = (L, rl)
            self._rmods[id(L)] = hit
        return hit[1]


def sigma_poly(ctx: GradedContext, f: Polynomial) -> Polynomial:
    """Top-degree part of ``f`` as an element of G(A)."""
    if not f:
        raise ZeroElementError("the zero polynomial has no symbol")
    d = f.degree()
    return Polynomial(ctx.graded, {m: c for m, c in f._terms.items() if ctx.source.degree_of(m) == d})


def homogenize_poly(ctx: GradedContext, f: Polynomial, q: int | None = None) -> Polynomial:
    """``f`` homogenized to degree ``q`` (default ``d(f)``) in the Rees algebra."""
    if not f:
        raise ZeroElementError("cannot homogenize the zero polynomial")
    d = f.degree()
    q = d if q is None else q
    if q < d:
        raise ValueError(f"target degree {q} is below the degree {d}")
    deg = ctx.source.degree_of
    return Polynomial(ctx.rees, {m + (q - deg(m),): c for m, c in f._terms.items()})


def dehomogenize_poly(ctx: GradedContext, H: Polynomial) -> Polynomial:
    out: dict = {}
    for m, c in H._terms.items():
        out[m[:-1]] = out.get(m[:-1], 0) + c
    return Polynomial(ctx.source, out)


def sigma_element(ctx: GradedContext, L: FreeModuleSpec, xi: ModuleElement) -> ModuleElement:
    """Principal symbol: the terms of top filtered degree, as an element of G(L)."""
    if not xi:
        raise ZeroElementError("the zero element has no symbol")
    q = filtered_degree(L, xi)
    return ModuleElement(
        ctx.graded_module(L),
        {m: c for m, c in xi._terms.items() if L.degree_of(m) == q},
    )


def rees_element(ctx: GradedContext, L: FreeModuleSpec, xi: ModuleElement, q: int | None = None) -> ModuleElement:
    """Homogenize ``xi`` to degree ``q`` (default: its filtered degree) in the Rees module."""
    if not xi:
        raise ZeroElementError("cannot homogenize the zero element")
    d = filtered_degree(L, xi)
    if q is None:
        q = d
    if q < d:
        raise ValueError(f"target degree {q} is below the filtered degree {d}")
    return ModuleElement(
        ctx.rees_module(L),
        {(a + (q - L.degree_of((a, i)),), i): c for (a, i), c in xi._terms.items()},
    )


def dehomogenize(ctx: GradedContext, L: FreeModuleSpec, H: ModuleElement) -> ModuleElement:
    """Set ``Z = 1``; ``L`` is the filtered module the result lives in."""
    out: dict = {}
    for (a, i), c in H._terms.items():
        key = (a[:-1], i)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return ModuleElement(L, out)


def is_homogeneous(L: FreeModuleSpec, xi: ModuleElement) -> bool:
    return len({L.degree_of(m) for m in xi._terms}) <= 1


def minimal_homogeneous_generators(L: FreeModuleSpec, gens: Sequence[ModuleElement]) -> list:
    """Indices of a minimal subset generating the same graded submodule.

    Generators are visited by ascending degree (input order on ties); one is
    kept when it is not in the submodule spanned by those already kept.
    """
    gens = list(gens)
    for k, g in enumerate(gens):
        if not g:
            raise ZeroElementError(f"generator {k + 1} is zero")
        if not is_homogeneous(L, g):
            raise ValidationError([f"generator {k + 1} is not homogeneous"])
    order = sorted(range(len(gens)), key=lambda k: (filtered_degree(L, gens[k]), k))
    kept: list = []
    basis: list = []
    for k in order:
        g = gens[k]
        if basis and not normal_form(L, g, basis):
            continue
        kept.append(k)
        basis = buchberger(L, [gens[t] for t in kept], track=False).reduced_basis
    return sorted(kept)


@dataclass
class TransferReport:
    passed: bool
    groebner: bool
    generates: bool
    details: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _transfer_check(L, image_mod, images, ref_images, G, ref_rec):
    details = []
    bad = groebner_violations(image_mod, images)
    if bad:
        details.append(f"S-pairs not reducing to zero: {[(i + 1, j + 1) for i, j in bad]}")
    gen_ok = True
    for k, r in enumerate(ref_images):
        if normal_form(image_mod, r, images):
            gen_ok = False
            details.append(f"reference element {k + 1} is not generated by the transferred basis")
            break
    for k, g in enumerate(G):
        if normal_form(L, g, ref_rec):
            gen_ok = False
            details.append(f"basis element {k + 1} does not lie in the submodule")
            break
    return TransferReport(not bad and gen_ok, not bad, gen_ok, details)


def check_transfer_sigma(ctx: GradedContext, L: FreeModuleSpec, G: Sequence[ModuleElement], N_gens: Sequence[ModuleElement]) -> TransferReport:
    """Check that the symbols of ``G`` form a Groebner basis of the graded submodule."""
    G = [g for g in G if g]
    ref = buchberger(L, list(N_gens), track=False)
    GL = ctx.graded_module(L)
    images = [sigma_element(ctx, L, g) for g in G]
    ref_images = [sigma_element(ctx, L, g) for g in ref.reduced_basis]
    return _transfer_check(L, GL, images, ref_images, G, ref)


def check_transfer_rees(ctx: GradedContext, L: FreeModuleSpec, G: Sequence[ModuleElement], N_gens: Sequence[ModuleElement]) -> TransferReport:
    """Check that the homogenizations of ``G`` form a Groebner basis of the Rees submodule."""
    G = [g for g in G if g]
    ref = buchberger(L, list(N_gens), track=False)
    RL = ctx.rees_module(L)
    images = [rees_element(ctx, L, g) for g in G]
    ref_images = [rees_element(ctx, L, g) for g in ref.reduced_basis]
    return _transfer_check(L, RL, images, ref_images, G, ref)
