"""End-to-end acceptance checks. Each test prints one ``criterion N: PASS|FAIL`` line."""

import random
import time

import pytest

from corpus import SUBMODULES, algebra, case_id, module, random_element, random_poly, submodule
from mutations import truncated, with_redundant_generator
from oracle import leading_monomials
from solvres.algebra import AlgebraSpec, mul_mono, weighted_degree
from solvres.groebner import buchberger, check_groebner
from solvres.minimal import check_basis_multiset_invariance, degree_profile, minimal_standard_basis
from solvres.module import FreeModuleSpec, ModuleOrderingSpec, combine, divide, filtered_degree
from solvres.resolution import minimal_filtered_resolution, verify_resolution
from solvres.textio import parse_module_element
from solvres.transfer import (
    GradedContext,
    check_transfer_rees,
    check_transfer_sigma,
    homogenize_poly,
    rees_element,
    sigma_element,
    sigma_poly,
)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return emit


def _random_commutative_case(rng):
    n = rng.choice([2, 3])
    rank = rng.choice([1, 1, 2])
    A = algebra("kxy" if n == 2 else "kxyz")
    L = module(A.name, rank)
    gens = []
    while len(gens) < rng.randint(1, 4):
        g = random_element(L, rng, max_deg=3, max_terms=3)
        gens.append(g)
    return L, gens


def test_commutative_oracle(report):
    rng = random.Random(2024)
    start = time.perf_counter()
    mismatches = []
    for k in range(30):
        L, gens = _random_commutative_case(rng)
        ours = {g.lm for g in buchberger(L, gens, track=False).reduced_basis}
        oracle = leading_monomials([g.as_dict() for g in gens], L.algebra.weights)
        if ours != oracle:
            mismatches.append(k)
    elapsed = time.perf_counter() - start
    report(1, not mismatches and elapsed < 30, f"30 cases, {len(mismatches)} mismatches, {elapsed:.2f}s")


def test_groebner_certification(report):
    failing = [case_id(c) for c in SUBMODULES if not check_groebner(submodule(c)[0], buchberger(*submodule(c)).basis)]
    names = {c[0] for c in SUBMODULES}
    report(2, not failing and {"kxy", "weyl1", "weyl2", "ex3"} <= names, f"{len(SUBMODULES)} cases, failing {failing}")


def test_filtered_graded_transfer(report):
    bad = []
    for case in SUBMODULES:
        L, gens = submodule(case)
        assert L.ordering.is_graded()
        ctx = GradedContext(L.algebra)
        G = buchberger(L, gens, track=False).reduced_basis
        if not (check_transfer_sigma(ctx, L, G, gens) and check_transfer_rees(ctx, L, G, gens)):
            bad.append(case_id(case))
        for k in range(len(G)):
            dropped = G[:k] + G[k + 1:]
            if check_transfer_sigma(ctx, L, dropped, gens) or check_transfer_rees(ctx, L, dropped, gens):
                bad.append(f"{case_id(case)} drop {k}")
    report(3, not bad, f"failing {bad}")


def test_standard_basis_bridge(report):
    violations = 0
    samples = 0
    for case in SUBMODULES:
        L, gens = submodule(case)
        G = buchberger(L, gens, track=False).reduced_basis
        rng = random.Random("bridge" + case_id(case))
        drawn = 0
        while drawn < 50:
            xi = combine(L, [random_poly(L.algebra, rng, 2, 3) for _ in gens], gens)
            if not xi:
                continue
            drawn += 1
            samples += 1
            q, r = divide(L, xi, G)
            top = filtered_degree(L, xi)
            violations += bool(r)
            for f, g in zip(q, G):
                for _, m in f.terms:
                    violations += L.algebra.degree_of(m) + filtered_degree(L, g) > top
    report(4, violations == 0, f"{samples} elements, {violations} violations")


def test_minimal_basis_invariance(report):
    bad = []
    for case in SUBMODULES:
        L, gens = submodule(case)
        rng = random.Random("perm" + case_id(case))
        runs = [minimal_standard_basis(L, gens)]
        for _ in range(5):
            perm = gens[:]
            rng.shuffle(perm)
            runs.append(minimal_standard_basis(L, perm))
        if not check_basis_multiset_invariance(L, runs):
            bad.append((case_id(case), [degree_profile(L, r) for r in runs]))
    report(5, not bad, f"{len(SUBMODULES)} cases x 6 orders, violations {bad}")


def test_koszul(report):
    expected = {
        2: ([1, 2, 1], [[0], [1, 1], [2]]),
        3: ([1, 3, 3, 1], [[0], [1, 1, 1], [2, 2, 2], [3]]),
    }
    details, ok = [], True
    for n, (ranks, shifts) in expected.items():
        L = module("kxy" if n == 2 else "kxyz")
        gens = [L.element([L.algebra.gen(g)]) for g in L.algebra.gens]
        start = time.perf_counter()
        R = minimal_filtered_resolution(L, gens)
        elapsed = time.perf_counter() - start
        ok &= R.ranks == ranks and R.shifts == shifts and R.length == n and elapsed < 5 and R.report.passed
        details.append(f"n={n} ranks {R.ranks} in {elapsed:.2f}s")
    report(6, ok, "; ".join(details))


def test_length_bound_and_mutations(report):
    bad = []
    for case in SUBMODULES:
        L, gens = submodule(case)
        R = minimal_filtered_resolution(L, gens)
        if R.length > L.algebra.n or not R.report.passed:
            bad.append(case_id(case))
        if R.steps:
            if verify_resolution(with_redundant_generator(R)).passed:
                bad.append(case_id(case) + " redundant")
            if verify_resolution(truncated(R)).passed:
                bad.append(case_id(case) + " truncated")
    report(7, not bad, f"failing {bad}")


def test_weyl_smoke(report):
    W = module("weyl1")
    E = lambda t: parse_module_element(W, t)
    rec = buchberger(W, [E("x*e1"), E("d*e1")])
    has_unit = any(g.lm == ((0, 0), 0) for g in rec.basis)
    R = minimal_filtered_resolution(W, [E("d*e1")])
    report(8, has_unit and R.length == 1 and R.ranks == [1, 1] and R.report.passed, f"ranks {R.ranks}")


IDENTITY_ALGEBRAS = ["weyl1", "weyl2", "ex3", "sl2", "kxyz"]
TRIALS = 500


def _instances(tag):
    rng = random.Random(tag)
    for k in range(TRIALS):
        yield rng, algebra(IDENTITY_ALGEBRAS[k % len(IDENTITY_ALGEBRAS)])


def _module_for(A, rng):
    rank = rng.randint(1, 2)
    shifts = [rng.randint(0, 2) for _ in range(rank)]
    return FreeModuleSpec(A, rank, shifts, ModuleOrderingSpec(rng.choice(["top", "pot"]), True))


def test_algebraic_identities(report):
    failures = {}

    def tally(name, ok):
        failures.setdefault(name, 0)
        failures[name] += not ok

    for rng, A in _instances("ring"):
        f, g = random_poly(A, rng, 3, 3), random_poly(A, rng, 3, 3)
        fg = f * g
        tally("leading monomial of products", fg.lm == mul_mono(A, f.lm, g.lm).lm)
        tally("degree additivity", weighted_degree(A, fg) == weighted_degree(A, f) + weighted_degree(A, g))
        ctx = GradedContext(A)
        tally("symbol multiplicativity", sigma_poly(ctx, f) * sigma_poly(ctx, g) == sigma_poly(ctx, fg))
        tally("homogenization multiplicativity", homogenize_poly(ctx, f) * homogenize_poly(ctx, g) == homogenize_poly(ctx, fg))

    for rng, A in _instances("module"):
        L = _module_for(A, rng)
        ctx = GradedContext(A)
        f, xi = random_poly(A, rng, 2, 3), random_element(L, rng, 2)
        fx = f * xi
        lead = L.element([A.monomial(xi.lm[0]) if k == xi.lm[1] else 0 for k in range(L.rank)])
        tally("leading monomial of module products", fx.lm == (A.monomial(f.lm) * lead).lm)
        tally("filtered degree additivity", filtered_degree(L, fx) == weighted_degree(A, f) + filtered_degree(L, xi))
        tally("module symbol multiplicativity", sigma_poly(ctx, f) * sigma_element(ctx, L, xi) == sigma_element(ctx, L, fx))
        tally("module homogenization multiplicativity", homogenize_poly(ctx, f) * rees_element(ctx, L, xi) == rees_element(ctx, L, fx))

    bad = {k: v for k, v in failures.items() if v}
    report(9, not bad, f"{len(failures)} identities x {TRIALS} instances, failures {bad}")
