import random

import pytest

from corpus import SUBMODULES, algebra, case_id, module, submodule
from mutations import truncated, with_redundant_generator
from solvres.errors import LengthExceeded, MissingTrackingData
from solvres.groebner import buchberger, check_groebner
from solvres.module import combine
from solvres.resolution import (
    minimal_filtered_resolution,
    schreyer_syzygies,
    syzygy_generators,
    verify_resolution,
)
from solvres.textio import parse_module_element


def E(L, text):
    return parse_module_element(L, text)


def test_koszul_syzygy():
    L = module("kxy")
    rec = buchberger(L, [E(L, "x*e1"), E(L, "y*e1")])
    (s,) = schreyer_syzygies(rec)
    assert str(s) == "y*e1 - x*e2"
    assert not combine(L, s.components(), rec.basis)


def test_no_pairs_no_syzygies():
    L = module("kxy", 2)
    rec = buchberger(L, [E(L, "x*e1"), E(L, "y*e2")])
    assert schreyer_syzygies(rec) == []
    assert syzygy_generators(rec) == []


def test_schreyer_leading_monomial():
    L = module("kxy")
    rec = buchberger(L, [E(L, "x^2*y*e1"), E(L, "x*y^2*e1")])
    s = schreyer_syzygies(rec)[0]
    assert s.lm == ((1, 0), 1)


def test_missing_tracking():
    L = module("kxy")
    rec = buchberger(L, [E(L, "x*e1")], track=False)
    with pytest.raises(MissingTrackingData):
        schreyer_syzygies(rec)
    with pytest.raises(MissingTrackingData):
        syzygy_generators(rec)


def test_duplicate_inputs_give_trivial_syzygy():
    L = module("kxy")
    gens = [E(L, "x*e1"), E(L, "x*e1")]
    syz = syzygy_generators(buchberger(L, gens))
    assert any(s.as_dict() == {((0, 0), 0): 1, ((0, 0), 1): -1} or s.as_dict() == {((0, 0), 0): -1, ((0, 0), 1): 1} for s in syz)


@pytest.mark.parametrize("case", SUBMODULES, ids=case_id)
def test_syzygies_annihilate_and_schreyer_is_groebner(case):
    L, gens = submodule(case)
    rec = buchberger(L, gens)
    S = schreyer_syzygies(rec)
    for s in S:
        assert not combine(L, s.components(), rec.basis)
    if S:
        assert check_groebner(S[0].module, S)
    for seed, s in zip(rec.syzygy_seeds, S):
        gamma_minus = tuple(g - a for g, a in zip(seed.gamma, rec.basis[seed.j].lm[0]))
        assert s.lm == (gamma_minus, seed.j)
    for h in syzygy_generators(rec):
        assert not combine(L, h.components(), gens)


def test_weyl_syzygies_annihilate():
    W = module("weyl1")
    gens = [E(W, "x*e1"), E(W, "d*e1")]
    syz = syzygy_generators(buchberger(W, gens))
    assert syz
    for h in syz:
        assert not combine(W, h.components(), gens)


def test_koszul_resolutions():
    for gens, ranks, shifts in [
        (["x", "y"], [1, 2, 1], [[0], [1, 1], [2]]),
        (["x", "y", "z"], [1, 3, 3, 1], [[0], [1, 1, 1], [2, 2, 2], [3]]),
    ]:
        L = module("kxy" if len(gens) == 2 else "kxyz")
        R = minimal_filtered_resolution(L, [E(L, f"{g}*e1") for g in gens])
        assert R.ranks == ranks and R.shifts == shifts and R.report.passed


def test_weyl_cyclic_module():
    W = module("weyl1")
    R = minimal_filtered_resolution(W, [E(W, "d*e1")])
    assert R.ranks == [1, 1] and R.shifts == [[0], [1]] and R.length == 1


def test_zero_quotient():
    W = module("weyl1")
    R = minimal_filtered_resolution(W, [E(W, "x*e1"), E(W, "d*e1")])
    assert R.base.rank == 0 and R.steps == [] and R.report.passed


def test_free_quotient():
    L = module("kxy", 2, [1, 0])
    R = minimal_filtered_resolution(L, [E(L, "e1 + x*e2")])
    assert R.ranks == [1] and R.report.passed


def test_max_length_exceeded():
    L = module("kxyz")
    with pytest.raises(LengthExceeded):
        minimal_filtered_resolution(L, [E(L, f"{g}*e1") for g in "xyz"], max_length=2)


@pytest.mark.parametrize("case", SUBMODULES, ids=case_id)
def test_corpus_resolutions(case):
    L, gens = submodule(case)
    R = minimal_filtered_resolution(L, gens)
    assert R.report.passed, R.report.failing()
    assert R.length <= L.algebra.n
    if R.steps:
        assert "minimality" in verify_resolution(with_redundant_generator(R)).failing()
        assert "exactness" in verify_resolution(truncated(R)).failing()
    rng = random.Random(case_id(case))
    for _ in range(3):
        perm = gens[:]
        rng.shuffle(perm)
        R2 = minimal_filtered_resolution(L, perm, verify=False)
        assert R2.ranks == R.ranks
        assert [sorted(s) for s in R2.shifts] == [sorted(s) for s in R.shifts]


def test_redundant_generator_deeper_step():
    L = module("kxyz")
    R = minimal_filtered_resolution(L, [E(L, f"{g}*e1") for g in "xyz"])
    for step in range(R.length):
        report = verify_resolution(with_redundant_generator(R, step))
        assert "minimality" in report.failing(), (step, report.failing())


def test_unit_entry_flagged():
    from solvres.resolution import Resolution

    L = module("kxy", 2, [1, 0])
    R = Resolution.from_matrices(L.algebra, L, [[[L.algebra.constant(1), L.algebra.gen("x")]]])
    assert "minimality" in verify_resolution(R).failing()


def test_shift_mismatch_flagged():
    from solvres.resolution import Resolution

    L = module("kxy")
    R = Resolution.from_matrices(L.algebra, L, [[[L.algebra.gen("x")]]], shifts=[[2]])
    assert "shifts" in verify_resolution(R).failing()
