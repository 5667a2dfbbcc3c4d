"""Command line front end: ``boltzmann {simulate,cayley,scan,fomenko,verify}``.

Numeric flags accept ``p/q`` and integers (exact) or decimals (floating).
Exit codes: 0 success / periodic, 1 not periodic (verify), 2 invalid or
singular input, 3 internal numeric failure.
"""
from __future__ import annotations

import csv
import json
import math
import sys
from fractions import Fraction
from functools import wraps

import click

from . import __version__
from .cayley import (cayley_coefficients, cayley_determinant, closed_form_condition,
                     divisor_contamination)
from .errors import (AdmissibleSampleNotFound, BoltzmannError, NoSignChange, OutsideRegion,
                     UnboundedMotion)
from .fomenko import fomenko_graph
from .geometry import caustics
from .kepler import (ParameterTag, WallState, classify_parameters, make_params, orbit,
                     state_from_angle)
from .numeric import QuadExt, get_tolerances, is_exact, parse_number
from .render import RenderSpec, render_svg
from .search import ScanGrid, scan_periodicity, verify_poncelet

EXIT_OK, EXIT_NOT_PERIODIC, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3

CSV_FIXED_COLUMNS = ("E", "D", "in_region")


class NumberType(click.ParamType):
    name = "number"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_number(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


NUMBER = NumberType()


def fmt(v) -> str:
    """Exact values as ``p/q`` or ``a + b*sqrt(r)``, floats via repr."""
    if isinstance(v, (Fraction, QuadExt, int)):
        return str(v)
    return repr(float(v))


def mode_of(*values) -> str:
    return "exact" if is_exact(*values) else "float"


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def handles_errors(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (NoSignChange, AdmissibleSampleNotFound, ArithmeticError) as exc:
            _fail(EXIT_NUMERIC, str(exc))
        except BoltzmannError as exc:
            _fail(EXIT_INVALID, str(exc))
        except ValueError as exc:
            _fail(EXIT_INVALID, str(exc))
    return wrapper


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, allow_nan=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _parse_pair(text: str) -> tuple[float, float]:
    parts = [float(parse_number(t)) for t in text.split(",")]
    if len(parts) != 2:
        raise click.BadParameter(f"expected 'lo,hi', got {text!r}")
    return parts[0], parts[1]


@click.group()
@click.version_option(__version__)
def main():
    """Boltzmann billiard: Kepler arcs reflecting off a straight wall."""


def _start_state(p, x, a1, a2, angle, branch):
    if x is not None or a1 is not None or a2 is not None:
        if None in (x, a1, a2):
            raise click.UsageError("--x, --A1 and --A2 must be given together")
        return WallState(float(x), float(a1), float(a2))
    pf = p.as_float()
    if angle is not None:
        s = state_from_angle(pf, float(angle), branch)
        if s is None:
            raise BoltzmannError(f"no admissible wall state at LRL angle {angle}")
        return s
    # symmetric start first, then sweep the circle deterministically
    for k in range(720):
        offset = (k + 1) // 2 * (math.pi / 360) * (1 if k % 2 else -1)
        s = state_from_angle(pf, math.pi / 2 + offset, branch)
        if s is not None:
            return s
    raise BoltzmannError("no admissible wall state on this level set")


@main.command()
@click.option("-E", "energy", type=NUMBER, required=True, help="energy E < 0")
@click.option("-D", "second", type=NUMBER, required=True, help="second integral D")
@click.option("--steps", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--start-angle", type=float, default=None,
              help="angle of the LRL vector on its circle (default: symmetric start)")
@click.option("--branch", type=click.IntRange(0, 1), default=0, show_default=True,
              help="which wall crossing to start from")
@click.option("--x", "x0", type=NUMBER, default=None)
@click.option("--A1", "a1", type=NUMBER, default=None)
@click.option("--A2", "a2", type=NUMBER, default=None)
@click.option("--caustics/--no-caustics", "show_caustics", default=False)
@click.option("--circle/--no-circle", "show_circle", default=True)
@click.option("--samples", type=click.IntRange(min=2), default=64, show_default=True)
@click.option("--viewport", default=None, help="xmin,xmax,ymin,ymax")
@click.option("--svg", "svg_path", default="orbit.svg", show_default=True)
@click.option("--log", "log_path", default="orbit.json", show_default=True)
@handles_errors
def simulate(energy, second, steps, start_angle, branch, x0, a1, a2, show_caustics,
             show_circle, samples, viewport, svg_path, log_path):
    """Iterate the reflection map, write an SVG picture and a JSON orbit log."""
    p = make_params(energy, second)
    p.require_regular()
    if float(p.E) >= 0:
        raise UnboundedMotion("E must be negative (bounded motion)")
    if classify_parameters(p).tag is ParameterTag.OUTSIDE_REGION:
        raise OutsideRegion(f"(E, D) = ({p.E}, {p.D}) is outside the bounded-motion region")
    vp = None
    if viewport:
        vp = tuple(float(parse_number(t)) for t in viewport.split(","))
        if len(vp) != 4:
            raise click.BadParameter("viewport needs four numbers")
    spec = RenderSpec(viewport=vp, samples_per_arc=samples, output=svg_path)
    pf = p.as_float()
    s0 = _start_state(p, x0, a1, a2, start_angle, branch)
    states = orbit(s0, pf, steps)
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(pf, states, spec, show_caustics, show_circle))
    log = {
        "schema": "boltzmann.orbit/1",
        "E": fmt(p.E), "D": fmt(p.D),
        "parameter_mode": mode_of(p.E, p.D), "mode": "float",
        "classification": classify_parameters(p).tag.value,
        "steps": steps,
        "states": [{
            "k": k, "x": s.x, "A1": s.A1, "A2": s.A2,
            "L2": s.l_squared(pf),
            "circle_residual": s.circle_residual(pf),
            "wall_residual": s.wall_residual(pf),
        } for k, s in enumerate(states)],
        "caustics": [{
            "branch": b, "kind": c.kind.value,
            "semi_axis_horizontal_sq": float(c.semi_axis_horizontal_sq),
            "semi_axis_vertical_sq": float(c.semi_axis_vertical_sq),
        } for b, c in zip((1, -1), caustics(pf))],
        "svg": svg_path,
    }
    _emit_json(log, log_path)
    click.echo(f"wrote {svg_path} and {log_path} ({steps} steps)")


@main.command()
@click.option("-E", "energy", type=NUMBER, required=True)
@click.option("-D", "second", type=NUMBER, required=True)
@click.option("--n-max", type=click.IntRange(min=3), default=6, show_default=True)
@click.option("--zero-tol", type=float, default=1e-9, show_default=True,
              help="zero threshold in floating mode")
@click.option("--out", default=None, help="write JSON here instead of stdout")
@handles_errors
def cayley(energy, second, n_max, zero_tol, out):
    """B-coefficients and periodicity determinants for n = 3..n_max."""
    p = make_params(energy, second)
    p.require_regular()
    exact = p.exact
    B = cayley_coefficients(p, n_max - 1)

    def is_zero(v):
        return v == 0 if exact else abs(float(v)) < zero_tol

    dets = []
    for n in range(3, n_max + 1):
        value = cayley_determinant(p, n, coefficients=B)
        closed = closed_form_condition(n, p) if n <= 6 else None
        dets.append({
            "n": n, "value": fmt(value), "float": float(value), "zero": is_zero(value),
            "closed_form": None if closed is None else fmt(closed),
            "closed_form_zero": None if closed is None else is_zero(closed),
            "contaminated_by": divisor_contamination(p, n, zero_tol) if is_zero(value) else [],
        })
    payload = {
        "schema": "boltzmann.cayley/1",
        "E": fmt(p.E), "D": fmt(p.D), "mode": mode_of(p.E, p.D),
        "R_squared": fmt(p.r_squared),
        "coefficients": [{"k": k, "value": fmt(b), "float": float(b)} for k, b in enumerate(B)],
        "determinants": dets,
    }
    _emit_json(payload, out)


@main.command()
@click.option("--e-range", required=True, help="lo,hi")
@click.option("--d-range", required=True, help="lo,hi")
@click.option("--resolution", type=click.IntRange(min=2), default=50, show_default=True)
@click.option("--d-resolution", type=click.IntRange(min=2), default=None,
              help="resolution along D (defaults to --resolution)")
@click.option("--n-max", type=click.IntRange(min=3), default=6, show_default=True)
@click.option("--zero-tol", type=float, default=1e-9, show_default=True)
@click.option("--include-outside", is_flag=True, help="also emit cells outside the region")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--out", required=True, help="CSV output path")
@handles_errors
def scan(e_range, d_range, resolution, d_resolution, n_max, zero_tol, include_outside,
         workers, out):
    """Tabulate signed determinants over a grid of the (E, D)-plane."""
    grid = ScanGrid(_parse_pair(e_range), _parse_pair(d_range), resolution,
                    d_resolution or resolution)
    rows = scan_periodicity(grid, n_max, zero_tol, include_outside, workers)
    header = [*CSV_FIXED_COLUMNS, *(f"det{n}" for n in range(3, n_max + 1)), "flags"]
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            dets = ["" if r.determinants[n] is None else repr(r.determinants[n])
                    for n in range(3, n_max + 1)]
            w.writerow([repr(r.E), repr(r.D), int(r.in_region), *dets, ";".join(r.flags)])
    click.echo(f"wrote {len(rows)} rows to {out}")


@main.command()
@click.option("-E", "energy", type=NUMBER, required=True)
@click.option("--text", "text_only", is_flag=True, help="print only the text rendering")
@handles_errors
def fomenko(energy, text_only):
    """Fomenko graph of the isoenergy manifold at energy E."""
    graph = fomenko_graph(energy)
    if text_only:
        click.echo(graph.to_text())
        return
    _emit_json({"schema": "boltzmann.fomenko/1", "E": fmt(energy),
                "graph": graph.to_dict(), "text": graph.to_text()}, None)


@main.command()
@click.option("-E", "energy", type=NUMBER, required=True)
@click.option("-D", "second", type=NUMBER, required=True)
@click.option("-n", "period", type=click.IntRange(min=1), required=True)
@click.option("--starts", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", default=None)
@handles_errors
def verify(energy, second, period, starts, seed, out):
    """Numerical closure check from random starts; exit 0 iff periodic."""
    p = make_params(energy, second)
    report = verify_poncelet(p, period, starts, seed, get_tolerances())
    payload = {"schema": "boltzmann.closure/1", "parameter_mode": mode_of(p.E, p.D),
               "mode": "float", **report.to_dict()}
    _emit_json(payload, out)
    sys.exit(EXIT_OK if report.periodic else EXIT_NOT_PERIODIC)


if __name__ == "__main__":  # pragma: no cover
    main()
