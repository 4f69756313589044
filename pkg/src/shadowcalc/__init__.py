"""shadowcalc: convex polytopes, shadow projections, and executable
verification of the classical surface-area formula

    S(K) = (1 / kappa_{n-1}) * integral over S^{n-1} of area(K | u_perp) du

together with its boundary-moment analogue, in dimensions 2 through 5.

Layout
------
``polytope``     hulls, exact volume / surface area / first moments, JSON
``bodies``       built-in generators (cube, simplex, cross-polytope, random)
``minkowski``    Minkowski sums, directional derivatives, mixed volumes,
                 inscribed ball approximants
``shadow``       orthogonal shadows (two independent methods) and
                 illuminated boundaries
``quadrature``   sphere rules: trapezoid (n=2), Fibonacci (n=3), seeded
                 Monte Carlo (n=4,5); the constants kappa_n
``verify``       the checkers, report types, and batch runner
``kernels``      hot loops: compiled extension with a NumPy fallback,
                 selected at import (env SHADOWCALC_KERNELS)
``cli``          the ``shadowcalc`` command-line tool
"""

from .errors import (DegenerateInput, DimensionMismatch, DimensionOutOfRange,
                     IllConditionedGrid, KindDimensionMismatch, MissingSeed,
                     NonFiniteSample, ShadowcalcError)
from .polytope import (Facet, Moment, Polytope, boundary_moment, hull,
                       polytope_from_dict, polytope_to_dict, surface_area,
                       validate, volume, volume_moment)
from .bodies import cross_polytope, cube, random_polytope, simplex
from .minkowski import (BallApprox, MixedVolumeTable, Segment, ball_approx,
                        dir_derivative_moment, dir_derivative_volume,
                        minkowski_sum, mixed_volume_fit)
from .shadow import (Direction, IlluminatedBoundary, direction, illuminated,
                     illuminated_moments, project, shadow_area, shadow_areas)
from .quadrature import (QuadratureRule, integrate_scalar, integrate_vector,
                         kappa, make_rule, sphere_surface)
from .verify import (Config, VerificationReport, mc_volume, resolve_seed,
                     verify_all, verify_cauchy, verify_lemma_linearity,
                     verify_lemma_projection, verify_mixed_volume,
                     verify_moment, verify_surface_eq2)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "ShadowcalcError", "DegenerateInput", "DimensionMismatch",
    "DimensionOutOfRange", "IllConditionedGrid", "KindDimensionMismatch",
    "MissingSeed", "NonFiniteSample",
    # polytope
    "Polytope", "Facet", "Moment", "hull", "volume", "surface_area",
    "volume_moment", "boundary_moment", "validate", "polytope_to_dict",
    "polytope_from_dict",
    # bodies
    "cube", "simplex", "cross_polytope", "random_polytope",
    # minkowski
    "Segment", "BallApprox", "MixedVolumeTable", "ball_approx",
    "minkowski_sum", "dir_derivative_volume", "dir_derivative_moment",
    "mixed_volume_fit",
    # shadow
    "Direction", "IlluminatedBoundary", "direction", "project",
    "shadow_area", "shadow_areas", "illuminated", "illuminated_moments",
    # quadrature
    "QuadratureRule", "make_rule", "integrate_scalar", "integrate_vector",
    "kappa", "sphere_surface",
    # verify
    "Config", "VerificationReport", "resolve_seed", "mc_volume",
    "verify_cauchy", "verify_moment", "verify_surface_eq2",
    "verify_lemma_projection", "verify_lemma_linearity",
    "verify_mixed_volume", "verify_all",
]
