"""Command-line front end.

    kanterbound bound-conc X1.json X2.json --t 1
    kanterbound bound-tv P1.json P2.json --format csv
    kanterbound dist stpc 1/2 1/3
    kanterbound table-g --lambda-min 0 --lambda-max 10 --step 1/2
    kanterbound verify all

Exit codes: 0 success, 1 a verification check failed, 2 usage or input
parse error, 3 domain error (inputs parse but violate a precondition).
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import click

from . import bessel
from ._scalar import ModeError, format_float, format_scalar, parse_scalar
from .bounds import DiscreteRV, conc_bound_pipeline, tv_smoothness_bound
from .lattice import LatticePMF, binom, berc, delta, radc, stpc, sympois_truncated
from .quadrature import DEFAULT_TOL, QuadratureError
from .suites import SUITES, run_suite

__all__ = ["cli", "main"]

EXIT_FAIL = 1
EXIT_DOMAIN = 3


class DomainError(click.ClickException):
    exit_code = EXIT_DOMAIN


class InputError(click.UsageError):
    """Unreadable or malformed input; exits like a usage error."""


def _rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: cannot parse {text!r} as a number") from exc


def _scalar(text: str, what: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: cannot parse {text!r} as a number") from exc


def _load(paths, loader, kind: str) -> list:
    out = []
    for path in paths:
        try:
            out.append(loader(Path(path).read_text()))
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: not a valid {kind} file ({exc})") from exc
    return out


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return format_scalar(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _domain(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValueError, ModeError, QuadratureError) as exc:
        raise DomainError(str(exc)) from exc


format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default=None, help="Output format."
)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to PATH instead of stdout.")


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Sharp concentration bounds for sums of independent lattice variables."""


@cli.command("bound-conc")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--t", "t", required=True, help="Window length t >= 0 (rational or decimal).")
@format_option
@out_option
def bound_conc(files, t, fmt, out):
    """Concentration bound for the sum of the variables in FILES."""
    t = _rational(t, "--t")
    Xs = _load(files, DiscreteRV.from_json, "DiscreteRV")
    report = _domain(conc_bound_pipeline, Xs, t)
    _emit(report.to_csv() if fmt == "csv" else report.to_json(), out)


@cli.command("bound-tv")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@format_option
@out_option
def bound_tv(files, fmt, out):
    """Unit-shift total variation bound for the sum of the lattice laws in FILES."""
    Ps = _load(files, LatticePMF.from_json, "LatticePMF")
    report = _domain(tv_smoothness_bound, Ps)
    _emit(report.to_csv() if fmt == "csv" else report.to_json(), out)


def _build_dist(name: str, params: tuple, tail: float) -> LatticePMF:
    if name in ("stpc", "berc"):
        ps = [_scalar(x, name) for x in params]
        if not ps:
            return delta(0)
        return _domain(stpc if name == "stpc" else berc, ps)
    if name == "radc":
        if len(params) != 1:
            raise InputError("radc takes exactly one argument N")
        n = _rational(params[0], "radc N")
        if n.denominator != 1:
            raise DomainError(f"radc needs an integer N, got {n}")
        return _domain(radc, int(n))
    if name == "binom":
        if len(params) != 2:
            raise InputError("binom takes N and ALPHA")
        n = _rational(params[0], "binom N")
        if n.denominator != 1:
            raise DomainError(f"binom needs an integer N, got {n}")
        return _domain(binom, int(n), _scalar(params[1], "binom ALPHA"))
    if len(params) != 1:
        raise InputError("sympois takes exactly one argument LAMBDA")
    return _domain(sympois_truncated, float(_scalar(params[0], "sympois LAMBDA")), tail)


def _dist_dict(P: LatticePMF) -> dict:
    d = P.to_dict()
    if P.mode == "float":
        d["weights"] = [format_float(w) for w in P.weights]
    if "tail_mass" in d:
        d["tail_mass"] = format_float(d["tail_mass"])
    return d


@cli.command("dist", context_settings={"ignore_unknown_options": True})
@click.argument("name", type=click.Choice(["stpc", "berc", "radc", "binom", "sympois"]))
@click.argument("params", nargs=-1, type=click.UNPROCESSED)
@click.option("--tail", type=float, default=1e-15, show_default=True, help="Tail-mass tolerance for sympois.")
@format_option
@out_option
def dist(name, params, tail, fmt, out):
    """Print a named lattice distribution.

    \b
    stpc P1 P2 ...   symmetric three-point convolution
    berc P1 P2 ...   Bernoulli convolution
    radc N           Rademacher convolution
    binom N ALPHA    binomial law
    sympois LAMBDA   symmetrized Poisson, truncated at --tail
    """
    if not tail > 0:
        raise DomainError("--tail must be positive")
    P = _build_dist(name, params, tail)
    if fmt == "csv":
        _emit(_csv([["k", "mass"]] + [[k, format_scalar(w) if P.mode == "exact" else format_float(w)]
                                      for k, w in zip(P.support, P.weights)]), out)
    else:
        _emit(json.dumps(_dist_dict(P), sort_keys=True), out)


def _table_rows(lo: Fraction, hi: Fraction, step: Fraction) -> list[list]:
    rows = []
    i = 0
    while lo + i * step <= hi:
        lam = float(lo + i * step)
        g = bessel.g_value(lam).value
        sqrt_b = bessel.g_bound_sqrt(lam) if lam > 0 else math.inf
        # the quarter bound is finite at 0; evaluate it by its formula there
        quarter = bessel.g_bound_quarter(lam) if lam > 0 else math.sqrt((2.0 / math.pi) / 0.25)
        rows.append([lam, g, sqrt_b, quarter, bessel.g_bound_h(lam)])
        i += 1
    return rows


@cli.command("table-g")
@click.option("--lambda-min", "lo", default="0", show_default=True)
@click.option("--lambda-max", "hi", default="10", show_default=True)
@click.option("--step", default="1/2", show_default=True)
@format_option
@out_option
def table_g(lo, hi, step, fmt, out):
    """Tabulate G and its three closed-form upper bounds."""
    lo, hi, step = _rational(lo, "--lambda-min"), _rational(hi, "--lambda-max"), _rational(step, "--step")
    if lo < 0:
        raise DomainError("--lambda-min must be nonnegative")
    if not lo < hi:
        raise DomainError("--lambda-min must be below --lambda-max")
    if not step > 0:
        raise DomainError("--step must be positive")
    if (hi - lo) / step > 1_000_000:
        raise DomainError("table would exceed 10^6 rows")
    rows = _table_rows(lo, hi, step)
    header = ["lambda", "G", "bound_sqrt", "bound_quarter", "bound_h"]
    if fmt == "json":
        _emit(json.dumps([dict(zip(header, map(format_float, r))) for r in rows], indent=2), out)
    else:
        _emit(_csv([header] + [[format_float(x) for x in r] for r in rows]), out)


@cli.command("verify")
@click.argument("suite", type=click.Choice(SUITES), default="all")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True, help="Quadrature tolerance.")
@click.option("--grid-step", default="1/20", show_default=True, help="Rational grid step for the Kanter sweep.")
@click.option("--max-n", type=int, default=6, show_default=True, help="Largest vector length in the Kanter sweep.")
@click.option("--no-timing", is_flag=True, help="Report runtime_ms as 0 for byte-stable output.")
@format_option
@out_option
def verify(suite, tol, grid_step, max_n, no_timing, fmt, out):
    """Run a verification suite; exit 1 if any check fails."""
    if not tol > 0:
        raise DomainError("--tol must be positive")
    step = _rational(grid_step, "--grid-step")
    if not 0 < step <= 1:
        raise DomainError("--grid-step must lie in (0, 1]")
    if max_n < 1:
        raise DomainError("--max-n must be at least 1")
    outcomes = _domain(run_suite, suite, tol=tol, max_n=max_n, grid_step=step)
    records = [
        {
            "name": o.name,
            "passed": o.passed,
            "margin": _jsonable(o.margin),
            "witnesses": _jsonable(o.witnesses),
            "details": _jsonable(o.details),
            "runtime_ms": 0.0 if no_timing else round(o.runtime_ms, 3),
        }
        for o in outcomes
    ]
    if fmt == "csv":
        rows = [["name", "passed", "margin", "runtime_ms"]]
        rows += [[r["name"], r["passed"], r["margin"], r["runtime_ms"]] for r in records]
        _emit(_csv(rows), out)
    else:
        _emit(json.dumps(records, sort_keys=True, indent=2), out)
    if not all(o.passed for o in outcomes):
        raise SystemExit(EXIT_FAIL)


def main(argv=None) -> None:
    cli.main(args=argv, prog_name="kanterbound")


if __name__ == "__main__":
    main()
