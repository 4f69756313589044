"""Exception hierarchy shared by all shadowcalc modules.

Every domain error carries a stable machine-readable ``code`` so the CLI can
emit ``{"error": code, "detail": ...}`` payloads without string matching.
"""


class ShadowcalcError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class DegenerateInput(ShadowcalcError):
    """Input point set is not full-dimensional (affine hull too small)."""

    code = "degenerate-input"


class DimensionOutOfRange(ShadowcalcError):
    """Requested ambient dimension outside the supported range 2..5."""

    code = "dimension-out-of-range"


class DimensionMismatch(ShadowcalcError):
    """Operands live in different ambient dimensions."""

    code = "dimension-mismatch"


class IllConditionedGrid(ShadowcalcError):
    """Mixed-volume design matrix is numerically rank deficient."""

    code = "ill-conditioned-grid"


class KindDimensionMismatch(ShadowcalcError):
    """Quadrature rule kind is not available in the requested dimension."""

    code = "kind-dimension-mismatch"


class MissingSeed(ShadowcalcError):
    """Monte Carlo rule requested without a seed."""

    code = "missing-seed"


class NonFiniteSample(ShadowcalcError):
    """Integrand returned NaN or infinity at a quadrature node."""

    code = "non-finite-sample"
