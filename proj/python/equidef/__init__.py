"""Betweenness, midpoint and inequality defined from equidistance alone.

Points are ``(x, y)`` pairs; coordinates may be ints, ``fractions.Fraction``
or strings such as ``"3/2"`` on the exact backend, floats on the float backend.
"""

import json

from . import _equidef
from ._equidef import EvalError, FormatError, GeometryError, RelationError

__all__ = [
    "EvalError",
    "FormatError",
    "GeometryError",
    "RelationError",
    "oracle",
    "distance",
    "evaluate",
    "roundtrip",
    "expand",
    "closure",
    "verify_layer",
    "check_axioms",
    "vogt",
]

__version__ = "0.1.0"


def _coord(v):
    return v if isinstance(v, float) else str(v)


def _point(p):
    x, y = p
    return {"x": _coord(x), "y": _coord(y)}


def _points(pts):
    return json.dumps([_point(p) for p in pts])


def _trunc(trunc):
    return json.dumps(trunc) if trunc else ""


def oracle(relation, points, norm="l2", backend="exact", tolerance=1e-9):
    """Closed-form truth of ``relation`` (e.g. ``"B"``, ``"PSI:2,1"``) on ``points``."""
    return _equidef.oracle(relation, _points(points), norm, backend, tolerance)


def distance(a, b, norm="l2", backend="exact", tolerance=1e-9):
    """Distance as text; exact L2 lengths print as ``sqrt(q)``."""
    return _equidef.distance(_points([a, b]), norm, backend, tolerance)


def evaluate(formula, bindings, impl=None, universe=None, norm="l2", backend="exact", tolerance=1e-9, trunc=None):
    """Bounded evaluation of a formula.

    ``bindings`` maps free variables to points. Without ``universe`` the
    quantifiers range over the inputs plus the closures of the formula's
    relation references. Returns ``(value, trace, complete)``.
    """
    b = json.dumps({k: _point(v) for k, v in bindings.items()})
    u = json.dumps(universe) if universe is not None else ""
    value, trace, complete = _equidef.eval_formula(
        formula, b, u, dict(impl or {}), norm, backend, tolerance, _trunc(trunc)
    )
    return value, json.loads(trace), complete


def roundtrip(text):
    """Canonical printed form of a parsed formula."""
    return _equidef.parse_print(text)


def expand(relation, trunc=None):
    return _equidef.expand(relation, _trunc(trunc))


def closure(relation, points, norm="l2", backend="exact", tolerance=1e-9, trunc=None):
    return json.loads(_equidef.closure(relation, _points(points), norm, backend, tolerance, _trunc(trunc)))


def verify_layer(relation, samples=1000, seed=0, norm="l2", backend="auto", tolerance=1e-9, trunc=None):
    return json.loads(_equidef.verify_layer(relation, norm, backend, tolerance, samples, seed, _trunc(trunc)))


def check_axioms(axioms="abcdefghi", samples=1000, seed=0, norm="l2", backend="exact", tolerance=1e-9, chain_cap=64):
    return json.loads(_equidef.check_axioms(axioms, norm, backend, tolerance, samples, seed, chain_cap))


def vogt(config):
    """Runs a preservation experiment; ``config`` as in the CLI's --maps file."""
    return json.loads(_equidef.vogt(json.dumps(config)))
