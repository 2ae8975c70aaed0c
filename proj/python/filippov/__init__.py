"""Filippov planar systems: Sigma classification, regularization, slow manifolds and sweeps."""

import csv
import io
import json

from . import _filippov
from ._filippov import (
    ArgumentError,
    DomainError,
    NumericalError,
    PreconditionError,
    System,
    normal_form,
    normal_form_kinds,
    region,
    render_svg,
    sliding_field,
)

__all__ = [
    "ArgumentError",
    "DomainError",
    "NumericalError",
    "PreconditionError",
    "System",
    "classify",
    "cli",
    "normal_form",
    "normal_form_kinds",
    "region",
    "render_svg",
    "return_map",
    "simulate",
    "sliding_field",
    "slow_manifold",
    "sweep",
]


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def classify(system, y, tol=1e-9):
    return json.loads(_filippov.classify(system, y, tol))


def slow_manifold(system, transition="cubic", **options):
    """Returns (summary dict, CSV text)."""
    summary, table = _filippov.slow_manifold(system, transition, **options)
    return json.loads(summary), table


def simulate(system, x0, y0, t_max, eps=None, transition="cubic", max_step=0.05):
    """Filippov orbit, or the eps-regularized one. Returns (rows, events, CSV text)."""
    table, events = _filippov.simulate(system, x0, y0, t_max, eps, transition, max_step)
    return _rows(table), json.loads(events)["events"], table


def return_map(lambda_, y0, eps_unfold=0.0, numeric=False):
    y_out, t_upper, t_lower, ok = _filippov.return_map(lambda_, eps_unfold, y0, numeric)
    return {"y_out": y_out, "t_upper": t_upper, "t_lower": t_lower, "domain_ok": ok}


def sweep(kind, lambdas):
    return json.loads(_filippov.sweep(kind, list(lambdas)))


def cli(*args):
    """Runs the command-line tool in-process; returns (exit code, stdout, stderr)."""
    return _filippov.run_cli([str(a) for a in args])
