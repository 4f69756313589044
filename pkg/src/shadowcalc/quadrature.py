"""Quadrature rules on the unit sphere S^(n-1) for n = 2..5.

Three rule families, one per dimensional regime:

- ``angular-trapezoid`` (n = 2): equally spaced angles on the circle. The
  periodic trapezoid rule is spectrally accurate on smooth integrands and
  O(1/N^2) on the piecewise-smooth support-type integrands that arise from
  polytopes.
- ``fibonacci-sphere`` (n = 3): the golden-spiral point set with equal
  weights, the standard low-discrepancy construction on S^2.
- ``monte-carlo`` (n = 2..5, intended for n = 4, 5): uniform sphere samples
  with equal weights. Each node draws from an independently keyed stream
  ``default_rng([seed, i])``, so node i is reproducible in isolation and
  the rule is invariant under batch splitting.

All weights sum to the total surface measure of S^(n-1), so integrating the
constant 1 is exact. ``kappa(n)`` is the unit-ball volume; dividing sphere
integrals of shadow areas by ``kappa(n-1)`` is the normalization used
throughout the verification harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateInput, DimensionOutOfRange,
                     KindDimensionMismatch, MissingSeed, NonFiniteSample)
from .polytope import DIM_MAX, DIM_MIN

KINDS = ("angular-trapezoid", "fibonacci-sphere", "monte-carlo")

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def kappa(n: int) -> float:
    """Volume of the unit ball in R^n (kappa_0 = 1, kappa_1 = 2,
    kappa_2 = pi, kappa_3 = 4 pi / 3, ...)."""
    if n < 0:
        raise DimensionOutOfRange(f"kappa undefined for n = {n}")
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def sphere_surface(n: int) -> float:
    """Total surface measure of S^(n-1) in R^n: n * kappa_n."""
    if n < 1:
        raise DimensionOutOfRange(f"sphere surface undefined for n = {n}")
    return n * kappa(n)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes on S^(dim-1) with weights summing to the sphere's measure."""

    kind: str
    dim: int
    nodes: np.ndarray
    weights: np.ndarray
    seed: int | None = None

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "dim": self.dim, "size": self.size}
        if self.seed is not None:
            out["seed"] = int(self.seed)
        return out


def _trapezoid_nodes(size: int) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(size) / size
    return np.column_stack([np.cos(theta), np.sin(theta)])


def _fibonacci_nodes(size: int) -> np.ndarray:
    i = np.arange(size, dtype=float)
    polar = np.arccos(1.0 - 2.0 * (i + 0.5) / size)
    azimuth = 2.0 * np.pi * i / _GOLDEN
    sin_polar = np.sin(polar)
    return np.column_stack([sin_polar * np.cos(azimuth),
                            sin_polar * np.sin(azimuth),
                            np.cos(polar)])


def _monte_carlo_nodes(dim: int, size: int, seed: int) -> np.ndarray:
    nodes = np.empty((size, dim))
    for i in range(size):
        z = np.random.default_rng([seed, i]).standard_normal(dim)
        nodes[i] = z / np.linalg.norm(z)
    return nodes


def make_rule(dim: int, kind: str, size: int,
              seed: int | None = None) -> QuadratureRule:
    """Build a quadrature rule on S^(dim-1).

    Parameters
    ----------
    dim : int
        Ambient dimension n, 2..5.
    kind : {"angular-trapezoid", "fibonacci-sphere", "monte-carlo"}
        The trapezoid rule requires dim = 2 and the Fibonacci sphere
        dim = 3; Monte Carlo accepts any supported dimension.
    size : int
        Number of nodes, >= 4.
    seed : int, optional
        Required for (and only used by) Monte Carlo rules.

    Raises
    ------
    KindDimensionMismatch
        If the rule family does not exist in dimension ``dim``.
    MissingSeed
        If a Monte Carlo rule is requested without a seed.
    """
    dim = int(dim)
    size = int(size)
    if not (DIM_MIN <= dim <= DIM_MAX):
        raise DimensionOutOfRange(f"dimension {dim} outside supported range "
                                  f"{DIM_MIN}..{DIM_MAX}")
    if size < 4:
        raise DegenerateInput(f"rule size must be at least 4, got {size}")
    if kind == "angular-trapezoid":
        if dim != 2:
            raise KindDimensionMismatch(
                f"angular-trapezoid is a circle rule (dim 2), got dim {dim}")
        nodes = _trapezoid_nodes(size)
        seed = None
    elif kind == "fibonacci-sphere":
        if dim != 3:
            raise KindDimensionMismatch(
                f"fibonacci-sphere is an S^2 rule (dim 3), got dim {dim}")
        nodes = _fibonacci_nodes(size)
        seed = None
    elif kind == "monte-carlo":
        if seed is None:
            raise MissingSeed("monte-carlo rules require an explicit seed")
        seed = int(seed)
        nodes = _monte_carlo_nodes(dim, size, seed)
    else:
        raise DegenerateInput(f"unknown rule kind {kind!r}; expected one of "
                              f"{', '.join(KINDS)}")
    weights = np.full(size, sphere_surface(dim) / size)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(kind, dim, nodes, weights, seed)


def default_rule(dim: int, seed: int, sizes: dict | None = None) -> QuadratureRule:
    """The harness's preferred rule per dimension.

    Trapezoid (3600 nodes) for n = 2, Fibonacci sphere (10^4) for n = 3,
    Monte Carlo (10^5) for n = 4 and 5. ``sizes`` may override the node
    count per dimension.
    """
    defaults = {2: 3600, 3: 10_000, 4: 100_000, 5: 100_000}
    size = (sizes or {}).get(dim, defaults[int(dim)])
    if dim == 2:
        return make_rule(2, "angular-trapezoid", size)
    if dim == 3:
        return make_rule(3, "fibonacci-sphere", size)
    return make_rule(dim, "monte-carlo", size, seed=seed)


def _evaluate(rule: QuadratureRule, f, batch):
    if batch is not None:
        values = np.asarray(batch(rule.nodes), dtype=float)
    else:
        values = np.asarray([f(x) for x in rule.nodes], dtype=float)
    if values.shape[0] != rule.size:
        raise DegenerateInput("integrand returned a batch of wrong length")
    if not np.all(np.isfinite(values)):
        bad = int(np.argwhere(~np.all(np.isfinite(
            values.reshape(rule.size, -1)), axis=1))[0][0])
        raise NonFiniteSample(f"integrand non-finite at node {bad}")
    return values


def _stderr(rule: QuadratureRule, values: np.ndarray):
    """Standard error of the weighted sum; zero for deterministic rules."""
    if rule.kind != "monte-carlo":
        return np.zeros(values.shape[1:])
    if rule.size < 2:
        return np.full(values.shape[1:], np.inf)
    sigma = sphere_surface(rule.dim)
    return sigma * np.std(values, axis=0, ddof=1) / math.sqrt(rule.size)


def integrate_scalar(rule: QuadratureRule, f=None, batch=None,
                     return_stderr: bool = False):
    """Integrate a scalar field over the sphere.

    Parameters
    ----------
    rule : QuadratureRule
    f : callable, optional
        Maps one node (length-n array) to a float. Ignored when ``batch``
        is given.
    batch : callable, optional
        Maps the full (N, n) node array to an (N,) value array; preferred
        on hot paths.
    return_stderr : bool
        When true, also return the standard error of the estimate (zero
        for deterministic rules).

    Returns
    -------
    float or (float, float)
    """
    if f is None and batch is None:
        raise DegenerateInput("integrate_scalar needs f or batch")
    values = _evaluate(rule, f, batch)
    if values.ndim != 1:
        raise DegenerateInput("scalar integrand returned non-scalar values")
    integral = float(rule.weights @ values)
    if not return_stderr:
        return integral
    return integral, float(_stderr(rule, values))


def integrate_vector(rule: QuadratureRule, f=None, batch=None,
                     return_stderr: bool = False):
    """Integrate a vector field over the sphere; see
    :func:`integrate_scalar`. Values are (N, d); the result has length d and
    the standard error is reported per component."""
    if f is None and batch is None:
        raise DegenerateInput("integrate_vector needs f or batch")
    values = _evaluate(rule, f, batch)
    if values.ndim != 2:
        raise DegenerateInput("vector integrand returned non-vector values")
    integral = rule.weights @ values
    if not return_stderr:
        return integral
    return integral, _stderr(rule, values)
