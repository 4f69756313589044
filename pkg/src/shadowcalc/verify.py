"""Verification harness: executable certification of the surface-area and
moment identities, plus the supporting lemma property suites.

Each checker produces a :class:`VerificationReport` with both sides of the
identity it certifies:

- ``cauchy``: surface area against the normalized sphere integral of shadow
  areas, ``S(K) = (1/kappa_{n-1}) * integral of shadow_area(K, u) du``;
- ``moment``: boundary first moment against the integral of cosine-weighted
  illuminated-boundary moments (the report also carries the unweighted
  integrand's value, which overshoots by a known factor — see the shadow
  module);
- ``lemma-projection``: exact linearity of the swept volume,
  ``vol(K + eps[0,u]) - vol(K) = eps * shadow_area(K, u)``, plus agreement
  of the two independent shadow-area methods;
- ``lemma-linearity``: additivity of the volume derivative over Minkowski
  combinations of segments;
- ``mixed-volume``: residual, diagonal, and nonnegativity checks of the
  fitted mixed-volume table;
- ``surface-eq2``: surface area as the volume derivative along ball
  approximants, with the monotone level trend.

Deterministic rules (n = 2, 3) get fixed tolerances; Monte Carlo rules
(n = 4, 5) pass when the discrepancy is within four reported standard
errors. Reports serialize to a JSON array and to CSV with a frozen column
order; ``runtime_ms`` is measured but excluded from the canonical JSON so
that repeated runs with one seed are byte-identical.
"""

from __future__ import annotations

import io
import json
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import bodies
from .errors import (DegenerateInput, DimensionMismatch, ShadowcalcError)
from .minkowski import (Segment, ball_approx, dir_derivative_volume,
                        minkowski_sum, mixed_volume_fit)
from .polytope import (PREDICATE_RTOL, Polytope, boundary_moment,
                       polytope_from_dict, surface_area, volume)
from .quadrature import (QuadratureRule, integrate_scalar, integrate_vector,
                         kappa, make_rule)
from .shadow import illuminated_moments, shadow_area, shadow_areas
from . import kernels

#: Report order and the full set of checker names.
THEOREMS = ("cauchy", "moment", "lemma-projection", "lemma-linearity",
            "mixed-volume", "surface-eq2")

#: Denominator floor of every relative error in this module.
REL_FLOOR = 1e-12

#: Pass thresholds for deterministic rules, per theorem and dimension.
#: Monte Carlo dimensions (4, 5) instead pass within 4 standard errors.
DEFAULT_TOLERANCES = {
    "cauchy": {2: 1e-6, 3: 1e-3},
    "moment": {2: 1e-6, 3: 1e-2},
    "surface-eq2": {2: 1e-4, 3: 1e-2, 4: 2e-2, 5: 5e-2},
    "lemma-projection": 1e-8,
    "lemma-linearity": 1e-8,
    "mixed-volume": 1e-8,
}

#: Epsilon grid of the swept-volume exactness check.
PROJECTION_EPS = (1e-3, 1e-1, 1.0)

#: Segment scale factors of the linearity check.
LINEARITY_ALPHAS = (0.3, 1.0, 2.5)

_DEFAULT_RULE_SIZES = {2: 3600, 3: 10_000, 4: 100_000, 5: 100_000}
_RANDOM_POINTS = {2: 12, 3: 16, 4: 24, 5: 28}


def resolve_seed(seed: int | None = None) -> int:
    """Seed precedence: explicit argument, then SHADOWCALC_SEED, then 42."""
    if seed is not None:
        return int(seed)
    env = os.environ.get("SHADOWCALC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise DegenerateInput(
                f"SHADOWCALC_SEED={env!r} is not an integer") from None
    return 42


def body_digest(poly: Polytope, label: str | None = None) -> str:
    """Compact deterministic description of a body for reports."""
    name = label or "body"
    return (f"{name}[dim={poly.dim} v={poly.n_vertices} f={poly.n_facets} "
            f"vol={volume(poly):.9g}]")


@dataclass
class VerificationReport:
    """One checker's outcome: both sides, errors, and the pass verdict.

    ``rel_error`` is ``|lhs - rhs| / max(|lhs|, 1e-12)``; vector-valued
    comparisons use the max-norm in both numerator and denominator. For
    property-suite checkers (the lemma and mixed-volume reports) ``lhs``
    and ``rhs`` are the worst observed pair and ``rel_error`` the worst
    relative discrepancy across the suite; per-family maxima live in
    ``extra``. ``passed`` is exactly ``rel_error <= tolerance``.
    """

    theorem: str
    dim: int
    body: str
    lhs: object
    rhs: object
    abs_error: float | None
    rel_error: float | None
    tolerance: float | None
    passed: bool
    nodes: int
    seed: int | None
    runtime_ms: int
    rule: dict | None
    extra: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "dim": self.dim,
            "body": self.body,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "nodes": self.nodes,
            "seed": self.seed,
            "rule": self.rule,
            "extra": self.extra,
        }
        if timings:
            out["runtime_ms"] = self.runtime_ms
        return out


def _as_jsonable(value):
    if isinstance(value, np.ndarray):
        return [float(x) for x in value]
    if isinstance(value, (np.floating, float)):
        return float(value)
    return value


def _errors(lhs, rhs) -> tuple[float, float]:
    a = np.atleast_1d(np.asarray(lhs, dtype=float))
    b = np.atleast_1d(np.asarray(rhs, dtype=float))
    abs_err = float(np.max(np.abs(a - b)))
    return abs_err, abs_err / max(float(np.max(np.abs(a))), REL_FLOOR)


def _elapsed_ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000.0))


def _check_rule(poly: Polytope, rule: QuadratureRule) -> None:
    if rule.dim != poly.dim:
        raise DimensionMismatch(f"rule on S^{rule.dim - 1} does not match "
                                f"body in R^{poly.dim}")


def _mc_tolerance(lhs, stderr) -> float:
    """Four standard errors, expressed as a relative tolerance on lhs."""
    scale = max(float(np.max(np.abs(np.atleast_1d(lhs)))), REL_FLOOR)
    return 4.0 * float(np.max(np.atleast_1d(stderr))) / scale


def _resolve_tolerance(theorem: str, dim: int, tol, rule, lhs, stderr):
    if tol is not None:
        return float(tol)
    default = DEFAULT_TOLERANCES[theorem]
    if isinstance(default, dict):
        if dim in default:
            return default[dim]
        if rule is not None and rule.kind == "monte-carlo":
            return _mc_tolerance(lhs, stderr)
        raise DegenerateInput(f"no default tolerance for {theorem} in "
                              f"dimension {dim}")
    return default


def verify_cauchy(poly: Polytope, rule: QuadratureRule,
                  tol: float | None = None,
                  label: str | None = None) -> VerificationReport:
    """Certify the surface-area formula on one body with one rule.

    lhs is the exact facet-sum surface area; rhs is the normalized sphere
    integral of shadow areas computed by the half-sum identity. With a
    Monte Carlo rule and no explicit ``tol``, the tolerance recorded in
    the report is four standard errors of the estimate.
    """
    _check_rule(poly, rule)
    t0 = time.perf_counter()
    lhs = surface_area(poly)
    integral, stderr = integrate_scalar(
        rule, batch=lambda dirs: shadow_areas(poly, dirs),
        return_stderr=True)
    c = kappa(poly.dim - 1)
    rhs = integral / c
    stderr_n = stderr / c
    abs_err, rel_err = _errors(lhs, rhs)
    tolerance = _resolve_tolerance("cauchy", poly.dim, tol, rule, lhs,
                                   stderr_n)
    extra = {"mean_shadow": integral / float(np.sum(rule.weights))}
    if rule.kind == "monte-carlo":
        extra["stderr"] = float(stderr_n)
    return VerificationReport(
        "cauchy", poly.dim, body_digest(poly, label), float(lhs), float(rhs),
        abs_err, rel_err, tolerance, rel_err <= tolerance, rule.size,
        rule.seed, _elapsed_ms(t0), rule.to_dict(), extra)


def verify_moment(poly: Polytope, rule: QuadratureRule,
                  tol: float | None = None,
                  label: str | None = None) -> VerificationReport:
    """Certify the moment analogue of the surface-area formula.

    lhs is the exact boundary first moment; rhs integrates the
    cosine-weighted illuminated-boundary moment. The unweighted variant of
    the integrand is evaluated alongside and recorded under
    ``extra["unweighted_rhs"]`` — on centrally asymmetric bodies it
    overshoots, which is the documented interpretation gap between the two
    readings of the boundary-moment integrand.
    """
    _check_rule(poly, rule)
    t0 = time.perf_counter()
    lhs = boundary_moment(poly).first_moment
    c = kappa(poly.dim - 1)
    integral, stderr = integrate_vector(
        rule, batch=lambda dirs: illuminated_moments(poly, dirs),
        return_stderr=True)
    rhs = integral / c
    stderr_n = stderr / c
    unweighted = integrate_vector(
        rule, batch=lambda dirs: illuminated_moments(poly, dirs,
                                                     weighted=False)) / c
    abs_err, rel_err = _errors(lhs, rhs)
    tolerance = _resolve_tolerance("moment", poly.dim, tol, rule, lhs,
                                   stderr_n)
    extra = {"unweighted_rhs": _as_jsonable(unweighted)}
    if rule.kind == "monte-carlo":
        extra["stderr"] = _as_jsonable(stderr_n)
    return VerificationReport(
        "moment", poly.dim, body_digest(poly, label), _as_jsonable(lhs),
        _as_jsonable(rhs), abs_err, rel_err, tolerance,
        rel_err <= tolerance, rule.size, rule.seed, _elapsed_ms(t0),
        rule.to_dict(), extra)


def verify_surface_eq2(poly: Polytope, levels=None, eps_ladder=None,
                       tol: float | None = None,
                       label: str | None = None) -> VerificationReport:
    """Certify surface area as the volume derivative along ball approximants.

    rhs is ``dir_derivative_volume(poly, ball_approx(n, max(levels)))``;
    the per-level values are recorded in ``extra["rhs_by_level"]`` together
    with the monotone-trend flag (inscribed approximants grow with level,
    so the derivative estimates must be nondecreasing).
    """
    t0 = time.perf_counter()
    n = poly.dim
    if levels is None:
        levels = (1, 2, 3) if n >= 4 else (1, 2, 3, 4)
    levels = sorted(int(level) for level in levels)
    if not levels:
        raise DegenerateInput("surface-eq2 needs at least one level")
    lhs = surface_area(poly)
    rhs_by_level = []
    max_vertices = 0
    for level in levels:
        ball = ball_approx(n, level)
        max_vertices = max(max_vertices, ball.n_vertices)
        rhs_by_level.append(dir_derivative_volume(poly, ball,
                                                  eps_ladder=eps_ladder))
    rhs = rhs_by_level[-1]
    monotone = all(rhs_by_level[i] <= rhs_by_level[i + 1] + REL_FLOOR * lhs
                   for i in range(len(rhs_by_level) - 1))
    abs_err, rel_err = _errors(lhs, rhs)
    tolerance = _resolve_tolerance("surface-eq2", n, tol, None, lhs, None)
    extra = {"levels": levels, "rhs_by_level": [float(v) for v in
                                               rhs_by_level],
             "monotone": monotone}
    return VerificationReport(
        "surface-eq2", n, body_digest(poly, label), float(lhs), float(rhs),
        abs_err, rel_err, tolerance, rel_err <= tolerance, max_vertices,
        None, _elapsed_ms(t0), None, extra)


def _unit(rng: np.random.Generator, n: int) -> np.ndarray:
    vec = rng.standard_normal(n)
    return vec / np.linalg.norm(vec)


def verify_lemma_projection(poly: Polytope, trials: int = 100,
                            seed: int | None = None,
                            tol: float | None = None,
                            label: str | None = None) -> VerificationReport:
    """Property suite: swept-volume exactness and two-method shadows.

    Runs ``trials`` (body, direction) pairs — the given body first, then
    seeded random hulls of its dimension — checking that
    ``vol(K + eps[0,u]) - vol(K)`` equals ``eps * shadow_area(K, u)`` for
    eps in :data:`PROJECTION_EPS`, and that the half-sum and hull shadow
    areas agree. ``lhs``/``rhs`` report the worst identity pair;
    ``extra`` carries the per-family maxima.
    """
    t0 = time.perf_counter()
    seed = resolve_seed(seed)
    n = poly.dim
    tolerance = _resolve_tolerance("lemma-projection", n, tol, None, None,
                                   None)
    worst = (-1.0, 0.0, 0.0)
    agreement_max = 0.0
    for trial in range(trials):
        if trial == 0:
            body = poly
        else:
            body = bodies.random_polytope(n, _RANDOM_POINTS[n],
                                          seed=[seed, 7, trial])
        rng = np.random.default_rng([seed, 8, trial])
        u = _unit(rng, n)
        area = shadow_area(body, u, method="halfsum")
        area_hull = shadow_area(body, u, method="hull")
        agreement_max = max(agreement_max,
                            abs(area - area_hull) / max(area, REL_FLOOR))
        base = volume(body)
        for eps in PROJECTION_EPS:
            swept = volume(minkowski_sum(body, Segment(np.zeros(n), eps * u)))
            lhs_val = swept - base
            rhs_val = eps * area
            rel = abs(lhs_val - rhs_val) / max(abs(rhs_val), REL_FLOOR)
            if rel > worst[0]:
                worst = (rel, lhs_val, rhs_val)
    rel_err = max(worst[0], agreement_max)
    abs_err = abs(worst[1] - worst[2])
    return VerificationReport(
        "lemma-projection", n, body_digest(poly, label), worst[1], worst[2],
        abs_err, rel_err, tolerance, rel_err <= tolerance, trials, seed,
        _elapsed_ms(t0), None,
        {"identity_max": worst[0], "agreement_max": agreement_max,
         "eps": list(PROJECTION_EPS)})


def verify_lemma_linearity(poly: Polytope, trials: int = 20,
                           seed: int | None = None,
                           tol: float | None = None,
                           label: str | None = None) -> VerificationReport:
    """Property suite: derivative additivity over segment combinations.

    For each trial body and directions u, v, checks that the derivative
    along the zonotope ``alpha [0,u] + beta [0,v]`` equals
    ``alpha D_u + beta D_v`` for all alpha, beta in
    :data:`LINEARITY_ALPHAS`.
    """
    t0 = time.perf_counter()
    seed = resolve_seed(seed)
    n = poly.dim
    tolerance = _resolve_tolerance("lemma-linearity", n, tol, None, None,
                                   None)
    worst = (-1.0, 0.0, 0.0)
    for trial in range(trials):
        if trial == 0:
            body = poly
        else:
            body = bodies.random_polytope(n, _RANDOM_POINTS[n],
                                          seed=[seed, 11, trial])
        rng = np.random.default_rng([seed, 12, trial])
        u = _unit(rng, n)
        v = _unit(rng, n)
        d_u = dir_derivative_volume(body, Segment(np.zeros(n), u))
        d_v = dir_derivative_volume(body, Segment(np.zeros(n), v))
        for alpha in LINEARITY_ALPHAS:
            for beta in LINEARITY_ALPHAS:
                combined = dir_derivative_volume(
                    body, [Segment(np.zeros(n), alpha * u),
                           Segment(np.zeros(n), beta * v)])
                expected = alpha * d_u + beta * d_v
                rel = abs(combined - expected) / max(abs(expected), REL_FLOOR)
                if rel > worst[0]:
                    worst = (rel, combined, expected)
    abs_err = abs(worst[1] - worst[2])
    return VerificationReport(
        "lemma-linearity", n, body_digest(poly, label), worst[1], worst[2],
        abs_err, worst[0], tolerance, worst[0] <= tolerance, trials, seed,
        _elapsed_ms(t0), None, {"alphas": list(LINEARITY_ALPHAS)})


def verify_mixed_volume(poly: Polytope, partner: Polytope | None = None,
                        lambda_grid=None, tol: float | None = None,
                        label: str | None = None) -> VerificationReport:
    """Property suite: mixed-volume table consistency for (poly, partner).

    Fits the table for the pair (partner defaults to the cross-polytope of
    the body's dimension) and checks the absolute fit residual, the
    diagonal entries against independently computed volumes, and
    coefficient nonnegativity. ``lhs``/``rhs`` are the two diagonal pairs.
    """
    t0 = time.perf_counter()
    n = poly.dim
    if partner is None:
        partner = bodies.cross_polytope(n)
    tolerance = _resolve_tolerance("mixed-volume", n, tol, None, None, None)
    table = mixed_volume_fit([poly, partner], lambda_grid)
    diag = [table.value((0,) * n), table.value((1,) * n)]
    vols = [volume(poly), volume(partner)]
    diag_rel = max(abs(diag[i] - vols[i]) / max(abs(vols[i]), REL_FLOOR)
                   for i in range(2))
    min_coeff = min(table.rows.values())
    negativity = max(0.0, -min_coeff)
    rel_err = max(table.fit_residual, diag_rel, negativity)
    return VerificationReport(
        "mixed-volume", n, body_digest(poly, label), vols, diag,
        max(abs(diag[i] - vols[i]) for i in range(2)), rel_err, tolerance,
        rel_err <= tolerance, len(table.rows), None, _elapsed_ms(t0), None,
        {"fit_residual": table.fit_residual, "diagonal_rel": diag_rel,
         "min_coefficient": min_coeff,
         "rows": [{"multiset": list(k), "value": v}
                  for k, v in sorted(table.rows.items())]})


def mc_volume(poly: Polytope, samples: int, seed: int) -> tuple[float, float]:
    """Monte Carlo volume oracle: rejection sampling in the bounding box.

    Returns ``(estimate, stderr)`` with the binomial standard error of the
    hit rate scaled by the box volume. Deterministic under
    ``(seed, samples)``.
    """
    samples = int(samples)
    if samples < 1000:
        raise DegenerateInput(f"mc_volume needs at least 1000 samples, "
                              f"got {samples}")
    lo = poly.vertices.min(axis=0)
    hi = poly.vertices.max(axis=0)
    box = float(np.prod(hi - lo))
    rng = np.random.default_rng(int(seed))
    points = lo + rng.random((samples, poly.dim)) * (hi - lo)
    hits = kernels.contains_batch(points, poly.facet_normals(),
                                  poly.facet_offsets(),
                                  PREDICATE_RTOL * max(poly.scale, 1.0))
    rate = float(np.mean(hits))
    estimate = box * rate
    stderr = box * float(np.sqrt(rate * (1.0 - rate) / samples))
    return estimate, stderr


@dataclass
class Config:
    """Harness configuration, shared by :func:`verify_all` and the CLI.

    ``quadrature`` maps a dimension to a rule spec dict
    ``{"kind":..., "size":..., "seed":...}``; missing dimensions fall back
    to the defaults (trapezoid 3600 for n=2, Fibonacci 10^4 for n=3, Monte
    Carlo 10^5 otherwise). ``tolerances`` maps theorem names to overrides.
    ``seed`` feeds every seeded component unless a rule spec pins its own.
    """

    quadrature: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    seed: int | None = None
    output: str = "json"
    eps_ladder: list | None = None
    ball_level: int = 4
    timings: bool = False

    def __post_init__(self):
        if self.output not in ("json", "csv", "pretty"):
            raise DegenerateInput(f"unknown output mode {self.output!r}")
        for name, value in self.tolerances.items():
            if name not in THEOREMS:
                raise DegenerateInput(f"unknown theorem {name!r} in "
                                      f"tolerances")
            if not (float(value) > 0.0):
                raise DegenerateInput(f"tolerance for {name} must be "
                                      f"positive")
        if int(self.ball_level) < 1:
            raise DegenerateInput("ball_level must be at least 1")

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        known = {"quadrature", "tolerances", "seed", "output", "eps_ladder",
                 "ball_level", "timings"}
        unknown = set(data) - known
        if unknown:
            raise DegenerateInput(f"unknown config fields: "
                                  f"{', '.join(sorted(unknown))}")
        quadrature = {int(k): dict(v)
                      for k, v in data.get("quadrature", {}).items()}
        return cls(quadrature=quadrature,
                   tolerances=dict(data.get("tolerances", {})),
                   seed=data.get("seed"),
                   output=data.get("output", "json"),
                   eps_ladder=data.get("eps_ladder"),
                   ball_level=int(data.get("ball_level", 4)),
                   timings=bool(data.get("timings", False)))

    def resolved_seed(self) -> int:
        return resolve_seed(self.seed)

    def rule_for(self, dim: int) -> QuadratureRule:
        spec = self.quadrature.get(dim)
        if spec is None:
            kind = {2: "angular-trapezoid", 3: "fibonacci-sphere"}.get(
                dim, "monte-carlo")
            size = _DEFAULT_RULE_SIZES[dim]
            seed = self.resolved_seed() if kind == "monte-carlo" else None
        else:
            kind = spec.get("kind")
            size = int(spec.get("size", _DEFAULT_RULE_SIZES[dim]))
            seed = spec.get("seed")
            if kind is None:
                raise DegenerateInput(f'rule spec for dimension {dim} '
                                      f'needs a "kind"')
            if kind == "monte-carlo" and seed is None:
                seed = self.resolved_seed()
        return make_rule(dim, kind, size, seed)

    def eq2_levels(self, dim: int) -> list[int]:
        # Dimensions 4 and 5 cap the ladder at level 3: the level-4 sum
        # hulls there cost tens of seconds without moving the estimate
        # inside tolerance any further.
        top = min(self.ball_level, 3) if dim >= 4 else self.ball_level
        return list(range(1, top + 1))


def resolve_body(body_spec, dim: int | None = None):
    """Turn a body spec into ``(label, Polytope)``.

    Accepts an existing polytope, a polytope/ball JSON dict, or a builtin
    name: ``cube``, ``simplex``, ``cross``, ``ball:<level>``,
    ``random:<points>,<seed>`` (builtins need ``dim``).
    """
    if isinstance(body_spec, Polytope):
        return "input", body_spec
    if isinstance(body_spec, dict):
        if "ball" in body_spec:
            spec = body_spec["ball"]
            ball = ball_approx(int(spec["dim"]), int(spec["level"]))
            return f"ball:{ball.level}", ball
        return "input", polytope_from_dict(body_spec)
    if isinstance(body_spec, str):
        name = body_spec.strip()
        if dim is None:
            raise DegenerateInput(f"builtin body {name!r} needs a dimension")
        if name == "cube":
            return "cube", bodies.cube(dim)
        if name == "simplex":
            return "simplex", bodies.simplex(dim)
        if name == "cross":
            return "cross", bodies.cross_polytope(dim)
        if name.startswith("ball:"):
            level = int(name.split(":", 1)[1])
            return name, ball_approx(dim, level)
        if name.startswith("random:"):
            args = name.split(":", 1)[1]
            count, _, seed = args.partition(",")
            seed = int(seed) if seed else resolve_seed(None)
            return name, bodies.random_polytope(dim, int(count), int(seed))
        raise DegenerateInput(f"unknown builtin body {name!r}")
    raise DegenerateInput(f"cannot interpret body spec of type "
                          f"{type(body_spec).__name__}")


def _error_report(theorem: str, dim: int, body: str,
                  exc: ShadowcalcError) -> VerificationReport:
    return VerificationReport(
        theorem, dim, body, None, None, None, None, None, False, 0, None, 0,
        None, {"error": exc.code, "detail": str(exc)})


def verify_all(body_spec, config: Config | None = None,
               theorems=THEOREMS,
               dim: int | None = None) -> list[VerificationReport]:
    """Run the configured checkers on one body; never aborts mid-batch.

    Returns one report per requested theorem in declaration order. A
    checker that raises records an error report (``"pass": false`` with
    the machine-readable error code in ``extra``) and the batch continues.
    ``dim`` is only needed when ``body_spec`` is a builtin name.
    """
    config = config or Config()
    seed = config.resolved_seed()
    reports = []
    for theorem in theorems:
        if theorem not in THEOREMS:
            raise DegenerateInput(f"unknown theorem {theorem!r}")
        tol = config.tolerances.get(theorem)
        try:
            label, poly = resolve_body(body_spec, dim)
            dim = poly.dim
            if theorem == "cauchy":
                report = verify_cauchy(poly, config.rule_for(dim), tol,
                                       label)
            elif theorem == "moment":
                report = verify_moment(poly, config.rule_for(dim), tol,
                                       label)
            elif theorem == "lemma-projection":
                report = verify_lemma_projection(poly, seed=seed, tol=tol,
                                                 label=label)
            elif theorem == "lemma-linearity":
                report = verify_lemma_linearity(poly, seed=seed, tol=tol,
                                                label=label)
            elif theorem == "mixed-volume":
                report = verify_mixed_volume(poly, tol=tol, label=label)
            else:
                report = verify_surface_eq2(
                    poly, config.eq2_levels(poly.dim),
                    eps_ladder=config.eps_ladder, tol=tol, label=label)
        except ShadowcalcError as exc:
            body_desc = body_spec if isinstance(body_spec, str) else "input"
            report = _error_report(theorem, 0, body_desc, exc)
        reports.append(report)
    return reports


def reports_to_json(reports, timings: bool = False) -> str:
    """Canonical JSON array of reports; byte-stable for a fixed seed.

    ``runtime_ms`` is included only when ``timings`` is set, since wall
    times differ between otherwise identical runs.
    """
    return json.dumps([r.to_dict(timings=timings) for r in reports],
                      indent=2)


CSV_COLUMNS = ("theorem", "dim", "body", "lhs", "rhs", "rel_error", "nodes",
               "seed", "runtime_ms", "pass")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ";".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def reports_to_csv(reports) -> str:
    """CSV rendering with the frozen column order of :data:`CSV_COLUMNS`.

    Vector lhs/rhs cells join components with semicolons. Unlike the JSON
    form, rows include ``runtime_ms`` and are therefore not byte-stable
    across runs.
    """
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for r in reports:
        row = (r.theorem, r.dim, r.body, r.lhs, r.rhs, r.rel_error, r.nodes,
               r.seed, r.runtime_ms, r.passed)
        out.write(",".join(_csv_cell(v) for v in row) + "\n")
    return out.getvalue()


def reports_to_pretty(reports, timings: bool = False) -> str:
    """Human-oriented one-line-per-report rendering."""
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        if r.rel_error is None:
            detail = f"error={r.extra.get('error')} ({r.extra.get('detail')})"
        else:
            detail = (f"rel_error={r.rel_error:.3e} "
                      f"tolerance={r.tolerance:.3e}")
        suffix = f" [{r.runtime_ms} ms]" if timings else ""
        lines.append(f"{status}  {r.theorem:<17s} dim={r.dim} {detail} "
                     f"body={r.body}{suffix}")
    return "\n".join(lines) + "\n"
