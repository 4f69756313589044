"""Command-line front end: polytope I/O, geometry queries, verification runs.

Every command reads JSON (a file path or ``-`` for stdin) and writes JSON to
stdout; built-in generators (``--builtin cube|simplex|cross|ball:<level>|
random:<m>,<seed>``) make runs self-contained without asset files.

Exit codes: 0 success, 1 internal error, 2 input/precondition error,
3 verification failed tolerance. Input errors emit
``{"error": <code>, "detail": ...}`` so scripts can branch on the code.
Identical inputs, config, and seed produce byte-identical stdout.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from .errors import DegenerateInput, ShadowcalcError
from .minkowski import Segment, minkowski_sum
from .polytope import (boundary_moment, hull, polytope_from_dict,
                       polytope_to_dict, surface_area, volume,
                       volume_moment)
from .shadow import direction, illuminated, shadow_area
from .verify import (Config, THEOREMS, reports_to_csv, reports_to_json,
                     reports_to_pretty, resolve_body, verify_all)

_EXIT_PASS = 0
_EXIT_INTERNAL = 1
_EXIT_INPUT = 2
_EXIT_TOLERANCE = 3


def _emit(payload: dict) -> None:
    click.echo(json.dumps(payload, indent=2))


def _fail(code: str, detail: str, exit_code: int) -> None:
    _emit({"error": code, "detail": detail})
    sys.exit(exit_code)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise DegenerateInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DegenerateInput(f"invalid JSON in {path}: {exc}") from exc


def _points_from(data) -> np.ndarray:
    if isinstance(data, list):
        return np.asarray(data, dtype=float)
    if isinstance(data, dict):
        for key in ("points", "vertices"):
            if key in data:
                return np.asarray(data[key], dtype=float)
    raise DegenerateInput('expected a point array or an object with a '
                          '"points" or "vertices" field')


def _body_from(in_file: str | None, builtin: str | None, dim: int | None):
    """Resolve the body argument of a command to a Polytope."""
    if builtin is not None:
        return resolve_body(builtin, dim)[1]
    if in_file is None:
        raise DegenerateInput("provide an input file or --builtin")
    data = _load_json(in_file)
    if isinstance(data, dict) and "ball" in data:
        return resolve_body(data)[1]
    if isinstance(data, dict) and "facets" in data:
        return polytope_from_dict(data)
    return hull(_points_from(data))


def _summand_from(path: str):
    """Auto-detect the second minkowski operand by its JSON keys."""
    data = _load_json(path)
    if isinstance(data, dict):
        if "ball" in data:
            return resolve_body(data)[1]
        if "a" in data and "b" in data:
            return Segment.from_dict(data)
        if "facets" in data:
            return polytope_from_dict(data)
    return hull(_points_from(data))


def _parse_direction(text: str) -> np.ndarray:
    try:
        parts = [float(piece) for piece in text.split(",")]
    except ValueError:
        raise DegenerateInput(f"--dir expects comma-separated reals, got "
                              f"{text!r}") from None
    return np.asarray(parts, dtype=float)


def _guarded(fn):
    try:
        fn()
    except SystemExit:
        raise
    except ShadowcalcError as exc:
        _fail(exc.code, str(exc), _EXIT_INPUT)
    except Exception as exc:  # internal invariant violation
        _fail("internal", f"{type(exc).__name__}: {exc}", _EXIT_INTERNAL)


def _body_args(fn):
    for decorator in (
        click.option("--dim", type=int, default=None,
                     help="Dimension for --builtin bodies (2-5)."),
        click.option("--builtin", default=None,
                     help="Generate the body: cube, simplex, cross, "
                          "ball:<level>, random:<m>,<seed>."),
        click.argument("in_file", required=False),
    ):
        fn = decorator(fn)
    return fn


@click.group()
def main():
    """Convex polytopes, shadows, and surface-area verification."""


@main.command("hull")
@_body_args
def cmd_hull(in_file, builtin, dim):
    """Convex hull of a point cloud; emits the full polytope JSON."""
    _guarded(lambda: _emit(polytope_to_dict(
        _body_from(in_file, builtin, dim))))


@main.command("volume")
@_body_args
def cmd_volume(in_file, builtin, dim):
    """Exact volume of a polytope."""
    _guarded(lambda: _emit(
        {"volume": volume(_body_from(in_file, builtin, dim))}))


@main.command("surface")
@_body_args
def cmd_surface(in_file, builtin, dim):
    """Exact surface area (sum of facet measures)."""
    _guarded(lambda: _emit(
        {"surface_area": surface_area(_body_from(in_file, builtin, dim))}))


@main.command("project")
@_body_args
@click.option("--dir", "dir_text", required=True,
              help="View direction as comma-separated reals; normalized.")
def cmd_project(in_file, builtin, dim, dir_text):
    """Shadow area and illuminated boundary along a direction."""
    def run():
        poly = _body_from(in_file, builtin, dim)
        u = _parse_direction(dir_text)
        d = direction(u)
        area = shadow_area(poly, u, method="halfsum")
        area_hull = shadow_area(poly, u, method="hull")
        lit = illuminated(poly, u)
        _emit({
            "direction": [float(x) for x in d.vector],
            "area": area,
            "method_agreement": abs(area - area_hull),
            "illuminated": lit.to_dict(),
        })
    _guarded(run)


@main.command("minkowski")
@click.argument("a_file")
@click.argument("b_file")
def cmd_minkowski(a_file, b_file):
    """Minkowski sum; the second operand may be a polytope, a segment
    {"a": [...], "b": [...]}, or a ball spec {"ball": {"dim", "level"}}."""
    def run():
        poly = _body_from(a_file, None, None)
        summand = _summand_from(b_file)
        _emit(polytope_to_dict(minkowski_sum(poly, summand)))
    _guarded(run)


@main.command("moment")
@_body_args
@click.option("--boundary", "which", flag_value="boundary",
              help="First moment of the boundary (facet measures).")
@click.option("--volume", "which", flag_value="volume", default=True,
              help="First moment of the solid body (default).")
def cmd_moment(in_file, builtin, dim, which):
    """First moment (integral of the position vector) of a body."""
    def run():
        poly = _body_from(in_file, builtin, dim)
        moment = (boundary_moment(poly) if which == "boundary"
                  else volume_moment(poly))
        payload = moment.to_dict()
        if moment.measure > 0.0:
            payload["centroid"] = [float(x) for x in moment.centroid]
        _emit(payload)
    _guarded(run)


@main.command("verify")
@_body_args
@click.option("--theorem", default="all",
              type=click.Choice(THEOREMS + ("all",)),
              help="Which checker to run (default: all six).")
@click.option("--config", "config_path", default=None,
              help="JSON config file (quadrature, tolerances, seed, ...).")
@click.option("--seed", type=int, default=None,
              help="Seed override (else SHADOWCALC_SEED, else 42).")
@click.option("--output", type=click.Choice(("json", "csv", "pretty")),
              default=None, help="Report format override.")
@click.option("--timings", is_flag=True,
              help="Include runtime_ms in JSON/pretty output.")
def cmd_verify(in_file, builtin, dim, theorem, config_path, seed, output,
               timings):
    """Run verification checkers; exit 0 only if every report passes."""
    def run():
        if config_path is not None:
            config = Config.from_dict(_load_json(config_path))
        else:
            config = Config()
        if seed is not None:
            config.seed = seed
        if output is not None:
            config.output = output
        if timings:
            config.timings = True
        if builtin is not None:
            body_spec: object = builtin
        elif in_file is not None:
            body_spec = _load_json(in_file)
        else:
            raise DegenerateInput("provide an input file or --builtin")
        names = THEOREMS if theorem == "all" else (theorem,)
        reports = verify_all(body_spec, config, names, dim)
        if config.output == "csv":
            click.echo(reports_to_csv(reports), nl=False)
        elif config.output == "pretty":
            click.echo(reports_to_pretty(reports, config.timings),
                       nl=False)
        else:
            click.echo(reports_to_json(reports, config.timings))
        if any("error" in r.extra for r in reports):
            sys.exit(_EXIT_INPUT)
        if not all(r.passed for r in reports):
            sys.exit(_EXIT_TOLERANCE)
    _guarded(run)


def entry():
    main()


if __name__ == "__main__":
    entry()
