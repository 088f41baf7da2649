"""Complex continued fractions over Euclidean imaginary-quadratic rings."""

from .algorithms import AlgorithmSpec, parse_algorithm
from .approximation import badly_approximable_assess, best_approx_oracle, certify_bad_circle, is_norm, verify_app_pr
from .arithmetic.surd import QuadraticSurd, surd_from_poly
from .errors import ComplexCFError, PrecisionExhausted
from .expansion import ExpansionTrace, check_condition_H, check_monotone, neat_subset, run, verify_identities
from .forms import SigmaForm, hermitian_roots, orbit_along, quotient_bound_from_orbit
from .rings import E, G, RINGS, Z_I_SQRT2, Z_SQRT7, Z_SQRT11, RingDescriptor, RingElement, ring_by_name

__version__ = "0.1.0"

__all__ = [
    "E",
    "G",
    "RINGS",
    "Z_I_SQRT2",
    "Z_SQRT7",
    "Z_SQRT11",
    "AlgorithmSpec",
    "ComplexCFError",
    "ExpansionTrace",
    "PrecisionExhausted",
    "QuadraticSurd",
    "RingDescriptor",
    "RingElement",
    "SigmaForm",
    "badly_approximable_assess",
    "best_approx_oracle",
    "certify_bad_circle",
    "check_condition_H",
    "check_monotone",
    "hermitian_roots",
    "is_norm",
    "neat_subset",
    "orbit_along",
    "parse_algorithm",
    "quotient_bound_from_orbit",
    "ring_by_name",
    "run",
    "surd_from_poly",
    "verify_app_pr",
    "verify_identities",
]
