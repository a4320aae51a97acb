import random

import pytest

from corpus import SUBMODULES, algebra, case_id, module, submodule
from solvres.errors import ValidationError, ZeroElementError
from solvres.groebner import buchberger, check_groebner, normal_form
from solvres.minimal import (
    check_basis_multiset_invariance,
    degree_profile,
    minimal_standard_basis,
    minimize_presentation,
)
from solvres.module import FreeModuleSpec, filtered_degree
from solvres.textio import parse_module_element
from solvres.transfer import GradedContext, minimal_homogeneous_generators, sigma_element


def E(L, text):
    return parse_module_element(L, text)


def test_eliminates_unit_component():
    L = FreeModuleSpec(algebra("kxy"), 2, [1, 0])
    pres = minimize_presentation(L, [E(L, "e1 + x*e2")])
    assert pres.retained_components == [1]
    assert pres.reduced_relations == []


def test_nothing_to_eliminate():
    L = module("kxy")
    W = [E(L, "x*e1"), E(L, "y*e1")]
    pres = minimize_presentation(L, W)
    assert pres.retained_components == [0]
    assert pres.reduced_relations == W


def test_everything_eliminated():
    L = module("kxy", 2)
    pres = minimize_presentation(L, [L.basis_vector(0), L.basis_vector(1)])
    assert pres.retained_components == []
    assert pres.restricted_module().rank == 0


def test_constant_below_top_degree_is_kept():
    # e1 appears with a unit but below the filtered degree of the relation
    L = FreeModuleSpec(algebra("kxy"), 2, [0, 0])
    pres = minimize_presentation(L, [E(L, "e1 + x*e2")])
    assert pres.retained_components == [0, 1]


def test_zero_relation_rejected():
    L = module("kxy")
    with pytest.raises(ZeroElementError):
        minimize_presentation(L, [L.zero()])


def test_weyl_elimination_updates_other_relations():
    L = FreeModuleSpec(algebra("weyl1"), 2, [1, 0])
    W = buchberger(L, [E(L, "e1 + x*e2"), E(L, "d*e2")], track=False).reduced_basis
    pres = minimize_presentation(L, W)
    assert pres.retained_components == [1]
    L1, rels = pres.restricted()
    assert buchberger(L1, rels, track=False).reduced_basis == [E(L1, "d*e1")]


@pytest.mark.parametrize("case", SUBMODULES, ids=case_id)
def test_presentation_loop_exhausted(case):
    L, gens = submodule(case)
    W = buchberger(L, gens, track=False).reduced_basis
    pres = minimize_presentation(L, W)
    one = L.algebra.one()
    for v in pres.reduced_relations:
        assert v.support() <= set(pres.retained_components)
        for i in pres.retained_components:
            c = v.as_dict().get((one, i))
            assert c is None or L.shifts[i] < filtered_degree(L, v)
    # the surviving relations are a standard basis of N': their symbols
    # generate the same graded module as those of a fresh Groebner basis
    L1, rels = pres.restricted()
    if rels:
        ctx = GradedContext(L.algebra)
        ref = buchberger(L1, rels, track=False).reduced_basis
        GL = ctx.graded_module(L1)
        sym = [sigma_element(ctx, L1, r) for r in rels]
        gb = buchberger(GL, sym, track=False)
        assert all(not normal_form(GL, sigma_element(ctx, L1, g), gb) for g in ref)


def test_minimal_standard_basis_examples():
    L = module("kxy")
    W = minimal_standard_basis(L, [E(L, "x*e1"), E(L, "y*e1"), E(L, "(x + y)*e1")])
    assert len(W) == 2
    W = minimal_standard_basis(L, [E(L, "x*e1"), E(L, "x^2*e1")])
    assert W == [E(L, "x*e1")]
    W = minimal_standard_basis(L, [E(L, "3*x*e1"), E(L, "y*e1")])
    assert sorted(map(str, W)) == ["x*e1", "y*e1"]


def test_minimal_standard_basis_needs_graded_ordering():
    L = module("kxy", graded=False)
    with pytest.raises(ValidationError):
        minimal_standard_basis(L, [E(L, "x*e1")])


@pytest.mark.parametrize("case", SUBMODULES, ids=case_id)
def test_minimal_standard_basis_properties(case):
    L, gens = submodule(case)
    W = minimal_standard_basis(L, gens)
    rec = buchberger(L, gens, track=False)
    # generates the same submodule
    assert all(not normal_form(L, w, rec) for w in W)
    recW = buchberger(L, W, track=False)
    assert all(not normal_form(L, g, recW) for g in gens)
    # symbols are a minimal generating set
    ctx = GradedContext(L.algebra)
    sym = [sigma_element(ctx, L, w) for w in W]
    assert minimal_homogeneous_generators(ctx.graded_module(L), sym) == list(range(len(W)))
    # invariance under permutation
    rng = random.Random(case_id(case))
    runs = [W]
    for _ in range(5):
        perm = gens[:]
        rng.shuffle(perm)
        runs.append(minimal_standard_basis(L, perm))
    assert check_basis_multiset_invariance(L, runs)


def test_multiset_invariance_detects_redundancy():
    L = module("kxy")
    W = minimal_standard_basis(L, [E(L, "x*e1"), E(L, "y*e1")])
    assert check_basis_multiset_invariance(L, [W])
    assert not check_basis_multiset_invariance(L, [W, W + [E(L, "x*y*e1")]])
    assert degree_profile(L, W) == (2, (1, 1))
