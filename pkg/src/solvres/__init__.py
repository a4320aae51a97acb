"""Groebner bases, standard bases and minimal filtered free resolutions over
weighted filtered solvable polynomial algebras with exact rational coefficients."""

from .algebra import AlgebraSpec, OrderingSpec, Polynomial, compare_monomials, mul, mul_mono, validate_algebra, weighted_degree
from .errors import (
    LengthExceeded,
    MissingTrackingData,
    ParseError,
    SolvresError,
    StepCapExceeded,
    ValidationError,
    ZeroElementError,
)
from .groebner import GroebnerRecord, buchberger, check_groebner, normal_form, s_poly
from .minimal import QuotientPresentation, minimal_standard_basis, minimize_presentation
from .module import FreeModuleSpec, ModuleElement, ModuleOrderingSpec, divide, filtered_degree
from .resolution import Resolution, minimal_filtered_resolution, schreyer_syzygies, syzygy_generators, verify_resolution
from .transfer import GradedContext, assoc_graded_algebra, rees_algebra

__all__ = [name for name in dir() if not name.startswith("_")]
