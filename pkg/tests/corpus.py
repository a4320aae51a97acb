"""Shared algebras and submodules used across the test suite."""

from __future__ import annotations

import functools
import random
from fractions import Fraction

from solvres.module import FreeModuleSpec, ModuleOrderingSpec
from solvres.textio import parse_algebra_file, parse_module_element

ALGEBRA_TEXT = {
    "kxy": "algebra kxy\ngens x y\nweights 1 1\norder grlex\n",
    "kxyz": "algebra kxyz\ngens x y z\nweights 1 1 1\norder grlex\n",
    "weyl1": "algebra weyl1\ngens x d\nweights 1 1\norder grlex\nrel d*x = x*d + 1\n",
    "weyl2": (
        "algebra weyl2\ngens x1 x2 d1 d2\nweights 1 1 1 1\norder grlex\n"
        "rel d1*x1 = x1*d1 + 1\nrel d2*x2 = x2*d2 + 1\n"
    ),
    # three generators of weights 2, 1, 4 with a3 a1 = a1 a3 + a2^2 a3 + a2
    "ex3": (
        "algebra ex3\ngens a1 a2 a3\nweights 2 1 4\norder grlex\n"
        "rel a3*a1 = a1*a3 + a2^2*a3 + a2\n"
    ),
    "sl2": (
        "algebra sl2\ngens e h f\nweights 1 1 1\norder grlex\n"
        "rel h*e = e*h + 2*e\nrel f*e = e*f - h\nrel f*h = h*f + 2*f\n"
    ),
}


@functools.lru_cache(maxsize=None)
def algebra(name: str):
    return parse_algebra_file(ALGEBRA_TEXT[name])


def module(alg_name: str, rank: int = 1, shifts=None, kind: str = "top", graded: bool = True):
    A = algebra(alg_name)
    return FreeModuleSpec(A, rank, shifts or [0] * rank, ModuleOrderingSpec(kind, graded))


# (algebra, rank, shifts, generators)
SUBMODULES = [
    ("kxy", 1, [0], ["(x^2 - y)*e1", "(x*y - x)*e1"]),
    ("kxy", 1, [0], ["x*e1", "y*e1"]),
    ("kxy", 2, [0, 1], ["x*e1 + y*e2", "y^2*e1 - x*e2"]),
    ("kxyz", 1, [0], ["(x*y - z^2)*e1", "(y*z - x^2)*e1"]),
    ("kxyz", 1, [0], ["x*e1", "y*e1", "z*e1"]),
    ("weyl1", 1, [0], ["x*e1", "d*e1"]),
    ("weyl1", 1, [0], ["(d^2 - x)*e1"]),
    ("weyl1", 1, [0], ["(x*d + 2)*e1", "x^2*e1"]),
    ("weyl1", 2, [1, 0], ["e1 + x*e2", "d*e2"]),
    ("weyl2", 1, [0], ["d1*e1", "d2*e1"]),
    ("weyl2", 1, [0], ["(x1*d1 + x2*d2)*e1", "(d1^2 - d2)*e1"]),
    ("ex3", 1, [0], ["a1*e1", "a3*e1"]),
    ("ex3", 1, [0], ["(a1^2 + a3)*e1", "a1*a2*e1"]),
    ("sl2", 1, [0], ["e*e1", "f^2*e1"]),
]


def submodule(case):
    alg_name, rank, shifts, gens = case
    L = module(alg_name, rank, shifts)
    return L, [parse_module_element(L, g) for g in gens]


def case_id(case) -> str:
    return f"{case[0]}:" + ",".join(case[3])


def random_poly(A, rng: random.Random, max_deg: int = 3, max_terms: int = 4, nonzero: bool = True):
    """Random polynomial with small integer coefficients and monomials of
    standard degree at most ``max_deg``."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            total = rng.randint(0, max_deg)
            alpha = [0] * A.n
            for _ in range(total):
                alpha[rng.randrange(A.n)] += 1
            terms[tuple(alpha)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        f = A.poly(terms)
        if f or not nonzero:
            return f


def random_element(L, rng: random.Random, max_deg: int = 2, max_terms: int = 3):
    while True:
        comps = [random_poly(L.algebra, rng, max_deg, max_terms, nonzero=False) if rng.random() < 0.7 else 0 for _ in range(L.rank)]
        x = L.element(comps)
        if x:
            return x
