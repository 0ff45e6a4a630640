"""Canonical heights, adelic volume growth and entropy of sequential actions.

Each report function returns the same document as the matching command-line
subcommand, decoded into Python objects. Big integers and rationals are
strings; reals carry 12 significant digits.
"""

import json

from ._adelent import (
    ComputationError,
    ParseError,
    RunConfig,
    arcsine_integral,
    chebyshev_closed_form,
    jensen_quadrature,
    periodic_count,
    run,
)
from ._adelent import execute as _execute

__all__ = [
    "ComputationError",
    "ParseError",
    "arcsine_integral",
    "chebyshev_closed_form",
    "eds",
    "entropy",
    "height",
    "jensen_quadrature",
    "julia",
    "morphic",
    "periodic_count",
    "run",
    "solenoid",
]


def _curve(curve):
    return curve if isinstance(curve, str) else ",".join(str(c) for c in curve)


def _point(point):
    return point if isinstance(point, str) else ";".join(str(c) for c in point)


def _report(subcommand, **fields):
    config = RunConfig()
    config.subcommand = subcommand
    for key, value in fields.items():
        if value is not None:
            setattr(config, key, value)
    return json.loads(_execute(config))


def solenoid(a, b, n=3, panels=1 << 16):
    return _report("solenoid", a=str(a), b=str(b), n=n, panels=panels)


def eds(curve, point, N=12):
    return _report("eds", curve=_curve(curve), point=_point(point), n=N)


def height(curve, point, depth=10, psi_n=200, tate=None):
    supplied = None if tate is None else [f"{p}={v!r}" for p, v in tate.items()]
    return _report("height", curve=_curve(curve), point=_point(point), depth=depth,
                   psi_n=psi_n, supplied=supplied)


def entropy(action, horizon=10, rate=None, place_filter=None, curve=None, point=None,
            psi_n=200):
    return _report("entropy", action=action, horizon=horizon, rate=rate,
                   place_filter=place_filter,
                   curve=None if curve is None else _curve(curve),
                   point=None if point is None else _point(point), psi_n=psi_n)


def morphic(poly, q, depth=10, place=None):
    return _report("morphic", poly=_curve(poly), q=str(q), depth=depth, place=place)


def julia(poly, q, level=8, tol=1e-8):
    if isinstance(q, complex):
        q = f"{q.real!r}{q.imag:+}i"
    return _report("julia", poly=_curve(poly), q=str(q), level=level, tol=tol)
