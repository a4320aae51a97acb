"""Left S-polynomials, Buchberger completion with representation tracking."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .algebra import Polynomial, mono_lcm, mono_sub
from .errors import StepCapExceeded, ZeroElementError
from .module import FreeModuleSpec, ModuleElement, _accumulate, _divide_raw, mono_times_raw
from .scalars import ONE

DEFAULT_STEP_CAP = 100_000


@dataclass(frozen=True)
class SyzygySeed:
    """One treated S-pair ``(i, j)`` with ``S(g_i, g_j) = sum_k quotients[k] * g_k``.

    ``coeff_i`` and ``coeff_j`` are the scalars with
    ``S = coeff_i a^(gamma - alpha_i) g_i - coeff_j a^(gamma - alpha_j) g_j``.
    ``quotients`` may be shorter than the final basis; missing entries are 0.
    """

    i: int
    j: int
    gamma: tuple
    coeff_i: Fraction
    coeff_j: Fraction
    quotients: tuple


@dataclass
class GroebnerRecord:
    module: FreeModuleSpec
    inputs: list
    basis: list
    U_matrix: list | None
    V_matrix: list | None
    syzygy_seeds: list = field(default_factory=list)
    pairs_treated: int = 0

    @property
    def tracked(self) -> bool:
        return self.V_matrix is not None

    @cached_property
    def reduced_basis(self) -> list:
        return interreduce(self.module, self.basis)


def _pair_multipliers(module: FreeModuleSpec, gi: ModuleElement, gj: ModuleElement):
    """``(gamma, q_i, q_j, c_i, c_j)`` or ``None`` when the leading components differ."""
    mm = module.algebra.mul_mono_raw
    lci, (ai, pi) = gi.leading()
    lcj, (aj, pj) = gj.leading()
    if pi != pj:
        return None
    gamma = mono_lcm(ai, aj)
    qi, qj = mono_sub(gamma, ai), mono_sub(gamma, aj)
    ci = ONE / (mm(qi, ai)[gamma] * lci)
    cj = ONE / (mm(qj, aj)[gamma] * lcj)
    return gamma, qi, qj, ci, cj


def s_poly(spec: FreeModuleSpec, xi: ModuleElement, xj: ModuleElement) -> ModuleElement:
    if not xi or not xj:
        raise ZeroElementError("S-polynomial of a zero element")
    data = _pair_multipliers(spec, xi, xj)
    if data is None:
        return ModuleElement._raw(spec, {})
    _, qi, qj, ci, cj = data
    alg = spec.algebra
    out = mono_times_raw(alg, ci, qi, xi._terms)
    _accumulate(out, mono_times_raw(alg, cj, qj, xj._terms), -ONE)
    return ModuleElement._raw(spec, out)


def _poly_row_combine(alg, rows_and_factors, width):
    """``sum factor * row`` where ``factor`` is ``(coeff, mono)`` or a Polynomial dict."""
    out = [dict() for _ in range(width)]
    mm = alg.mul_mono_raw
    for factor, row in rows_and_factors:
        for l in range(width):
            entry = row[l]
            if not entry:
                continue
            acc = out[l]
            for b, fc in factor.items():
                for a, c in entry.items():
                    fcc = fc * c
                    for m, d in mm(b, a).items():
                        v = acc.get(m, 0) + fcc * d
                        if v:
                            acc[m] = v
                        else:
                            acc.pop(m, None)
    return out


def buchberger(
    spec: FreeModuleSpec,
    inputs: Sequence[ModuleElement],
    step_cap: int = DEFAULT_STEP_CAP,
    track: bool = True,
) -> GroebnerRecord:
    """Complete ``inputs`` to a monic left Groebner basis.

    Pairs are treated smallest lcm first (ties by index pair); only pairs whose
    leading monomials share a component are formed.  With ``track`` the
    record carries ``U``/``V`` matrices and the reduction of every S-pair.
    """
    inputs = list(inputs)
    if not inputs:
        raise ValueError("buchberger needs at least one generator")
    for k, x in enumerate(inputs):
        if not x:
            raise ZeroElementError(f"input {k + 1} is zero")
    alg = spec.algebra
    m = len(inputs)
    basis: list = []
    V: list = []  # rows of raw polynomial dicts, one per input
    heap: list = []

    def add(elem: ModuleElement, vrow):
        idx = len(basis)
        lc = elem.lc
        g = elem.scale(1 / lc)
        basis.append(g)
        if track:
            inv = 1 / lc
            V.append([{a: c * inv for a, c in e.items()} for e in vrow])
        _, (a, p) = g.leading()
        for k, h in enumerate(basis[:-1]):
            _, (b, q) = h.leading()
            if p == q:
                gamma = mono_lcm(a, b)
                heapq.heappush(heap, (spec.key((gamma, p)), k, idx))

    one = alg.one()
    for k, x in enumerate(inputs):
        row = [dict() for _ in range(m)]
        row[k] = {one: ONE}
        add(x, row)

    seeds: list = []
    treated = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        treated += 1
        if treated > step_cap:
            raise StepCapExceeded(f"Buchberger exceeded the step cap of {step_cap} pair treatments")
        gi, gj = basis[i], basis[j]
        gamma, qi, qj, ci, cj = _pair_multipliers(spec, gi, gj)
        s = mono_times_raw(alg, ci, qi, gi._terms)
        _accumulate(s, mono_times_raw(alg, cj, qj, gj._terms), -ONE)
        quots, rem = _divide_raw(spec, s, basis, track=True)
        quots = [q for q in quots]
        if rem:
            eta = ModuleElement._raw(spec, rem)
            vrow = None
            if track:
                combo = [({qi: ci}, V[i]), ({qj: -cj}, V[j])]
                combo += [({b: -c for b, c in q.items()}, V[k]) for k, q in enumerate(quots) if q]
                vrow = _poly_row_combine(alg, combo, m)
            lc_eta = eta.lc
            quots.append({one: lc_eta})
            add(eta, vrow)
        seeds.append(
            SyzygySeed(i, j, gamma, ci, cj, tuple(Polynomial(alg, q) for q in quots))
        )

    U = None
    Vm = None
    if track:
        U = []
        for x in inputs:
            q, r = _divide_raw(spec, x._terms, basis)
            if r:
                raise AssertionError("input does not reduce to zero by its own Groebner basis")
            U.append([Polynomial(alg, e) for e in q])
        Vm = [[Polynomial(alg, e) for e in row] for row in V]
    return GroebnerRecord(spec, inputs, basis, U, Vm, seeds if track else [], treated)


def interreduce(spec: FreeModuleSpec, G: Sequence[ModuleElement]) -> list:
    """Drop elements with a divisible leading monomial, reduce, make monic."""
    kept = []
    leads = [g.lm for g in G]
    for k, g in enumerate(G):
        a, i = leads[k]
        redundant = False
        for l, (b, j) in enumerate(leads):
            if l == k or j != i or not all(x <= y for x, y in zip(b, a)):
                continue
            if b != a or l < k:
                redundant = True
                break
        if not redundant:
            kept.append(g)
    out = []
    for k, g in enumerate(kept):
        others = kept[:k] + kept[k + 1:]
        _, r = _divide_raw(spec, g._terms, others, track=False)
        e = ModuleElement._raw(spec, r)
        out.append(e.monic())
    out.sort(key=lambda e: spec.key(e.lm))
    return out


def normal_form(spec: FreeModuleSpec, xi: ModuleElement, rec) -> ModuleElement:
    basis = rec.basis if isinstance(rec, GroebnerRecord) else list(rec)
    if not basis:
        return xi
    _, r = _divide_raw(spec, xi._terms, basis, track=False)
    return ModuleElement._raw(spec, r)


def is_member(spec: FreeModuleSpec, xi: ModuleElement, rec) -> bool:
    return not normal_form(spec, xi, rec)


def groebner_violations(spec: FreeModuleSpec, G: Sequence[ModuleElement]) -> list:
    """Index pairs whose S-polynomial does not reduce to zero."""
    G = list(G)
    bad = []
    for j in range(len(G)):
        for i in range(j):
            s = s_poly(spec, G[i], G[j])
            if s and normal_form(spec, s, G):
                bad.append((i, j))
    return bad


def check_groebner(spec: FreeModuleSpec, G: Sequence[ModuleElement]) -> bool:
    return not groebner_violations(spec, G)
