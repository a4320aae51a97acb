"""Minimal F-bases of quotient modules and minimal standard bases of submodules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError, ZeroElementError
from .groebner import DEFAULT_STEP_CAP, buchberger
from .module import FreeModuleSpec, ModuleElement, filtered_degree, left_multiply
from .transfer import GradedContext, minimal_homogeneous_generators, sigma_element


@dataclass
class QuotientPresentation:
    """``M = L0 / N`` after eliminating redundant basis vectors.

    ``retained_components`` are 0-based indices into ``ambient``;
    ``reduced_relations`` still live in ``ambient`` but only involve retained
    components.  :meth:`restricted` renumbers them into the smaller module.
    """

    ambient: FreeModuleSpec
    relations: list
    retained_components: list
    reduced_relations: list

    def restricted_module(self) -> FreeModuleSpec:
        return self.ambient.restrict(self.retained_components)

    def restricted(self) -> tuple:
        L = self.restricted_module()
        pos = {c: k for k, c in enumerate(self.retained_components)}
        rels = [
            ModuleElement(L, {(a, pos[i]): c for (a, i), c in v._terms.items()})
            for v in self.reduced_relations
        ]
        return L, rels


def _qualifying_unit(L: FreeModuleSpec, v: ModuleElement, comp: int):
    """Coefficient of a constant term ``c e_comp`` sitting at the filtered degree of ``v``."""
    c = v._terms.get((L.algebra.one(), comp))
    if c is None:
        return None
    return c if L.shifts[comp] == filtered_degree(L, v) else None


def minimize_presentation(L0: FreeModuleSpec, W: Sequence[ModuleElement]) -> QuotientPresentation:
    """Eliminate basis vectors that appear with a unit coefficient at top degree.

    ``W`` must be a standard basis of ``N``.  The least such component is
    eliminated first, using the least-index relation that exhibits it.
    """
    W = list(W)
    for k, w in enumerate(W):
        if not w:
            raise ZeroElementError(f"relation {k + 1} is zero")
    rels = list(W)
    retained = list(range(L0.rank))
    while True:
        pick = None
        for i in retained:
            for j, v in enumerate(rels):
                c = _qualifying_unit(L0, v, i)
                if c is not None:
                    pick = (i, j, c)
                    break
            if pick:
                break
        if pick is None:
            break
        i, j, c = pick
        vj = rels[j]
        new = []
        for l, v in enumerate(rels):
            if l == j:
                continue
            f = v.component(i)
            if f:
                v = v - left_multiply(f.scale(1 / c), vj)
            if v:
                new.append(v)
        rels = new
        retained.remove(i)
    return QuotientPresentation(L0, W, retained, rels)


def minimal_standard_basis(L: FreeModuleSpec, theta: Sequence[ModuleElement], step_cap: int = DEFAULT_STEP_CAP, ctx: GradedContext | None = None) -> list:
    """Select a minimal standard basis from a Groebner basis of ``theta``.

    Requires a graded module ordering.
    """
    if not L.ordering.is_graded():
        raise ValidationError(["a minimal standard basis needs a graded module ordering"])
    ctx = ctx or GradedContext(L.algebra)
    U = buchberger(L, list(theta), step_cap=step_cap, track=False).reduced_basis
    GL = ctx.graded_module(L)
    symbols = [sigma_element(ctx, L, u) for u in U]
    keep = minimal_homogeneous_generators(GL, symbols)
    return [U[k] for k in keep]


def degree_profile(L: FreeModuleSpec, basis: Sequence[ModuleElement]) -> tuple:
    return (len(basis), tuple(sorted(filtered_degree(L, b) for b in basis)))


def check_basis_multiset_invariance(L: FreeModuleSpec, runs: Sequence[Sequence[ModuleElement]]) -> bool:
    """All runs share cardinality and the multiset of filtered degrees."""
    return len({degree_profile(L, r) for r in runs}) <= 1
