"""JSON envelopes for objects, morphisms and modules.

    Mon object      {"omega": s, "f": M}
    Mon morphism    {"omega": s, "source": M, "target": M, "psi1": M, "psi0": M}
    pair            {"omega": s, "rho1": M, "rho0": M}
    pair morphism   {"omega": s, "source": {"rho1", "rho0"}, "target": {...}, "psi1": M, "psi0": M}
    R-module        {"n": int, "exponents": [int]}

s is scalar text and M matrix text.  An optional "field" key ("rational" or
"fp:p") overrides the field supplied by the caller.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .linalg import parse_matrix
from .moncat import MonMorphism, MonObject, mon_make, mon_morphism
from .paircat import PairMorphism, PairObject, pair_make, pair_morphism
from .ring import QQ, FieldSpec, omega_make, parse_scalar
from .singcat import RModuleObject


def _text(env, key):
    if key not in env:
        raise ParseError(f"missing key {key!r}")
    value = env[key]
    if not isinstance(value, str):
        raise ParseError(f"key {key!r} must hold a string")
    return value


def _field(env, field):
    if "field" in env:
        return FieldSpec.parse(_text(env, "field"))
    return field


def _omega(env, field):
    return omega_make(parse_scalar(_text(env, "omega"), field))


def _pair_from(env, w, field):
    if not isinstance(env, dict):
        raise ParseError("pair envelope must be an object")
    return pair_make(parse_matrix(_text(env, "rho1"), field), parse_matrix(_text(env, "rho0"), field), w)


def decode(env, field=QQ):
    """Build the value described by a decoded JSON envelope."""
    if not isinstance(env, dict):
        raise ParseError("top-level JSON value must be an object")
    field = _field(env, field)
    if "exponents" in env:
        n, exps = env.get("n"), env["exponents"]
        if not isinstance(n, int) or not isinstance(exps, list) or not all(isinstance(a, int) for a in exps):
            raise ParseError("module envelope needs an integer n and a list of integer exponents")
        try:
            return RModuleObject(n, tuple(exps))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    w = _omega(env, field)
    if "psi1" in env or "psi0" in env:
        psi1 = parse_matrix(_text(env, "psi1"), field)
        psi0 = parse_matrix(_text(env, "psi0"), field)
        if isinstance(env.get("source"), dict):
            src = _pair_from(env["source"], w, field)
            tgt = _pair_from(env.get("target"), w, field)
            return pair_morphism(src, tgt, psi1, psi0)
        src = mon_make(parse_matrix(_text(env, "source"), field), w)
        tgt = mon_make(parse_matrix(_text(env, "target"), field), w)
        return mon_morphism(src, tgt, psi1, psi0)
    if "rho1" in env:
        return _pair_from(env, w, field)
    return mon_make(parse_matrix(_text(env, "f"), field), w)


def parse_input(text, field=QQ):
    try:
        env = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return decode(env, field)


def encode(value):
    """The envelope of a value; decode(encode(v)) == v."""
    if isinstance(value, RModuleObject):
        return {"n": value.n, "exponents": list(value.exponents)}
    if isinstance(value, MonObject):
        return {"field": str(value.field), "omega": str(value.omega.omega), "f": str(value.f)}
    if isinstance(value, PairObject):
        return {
            "field": str(value.field),
            "omega": str(value.omega.omega),
            "rho1": str(value.rho1),
            "rho0": str(value.rho0),
        }
    if isinstance(value, MonMorphism):
        return {
            "field": str(value.source.field),
            "omega": str(value.source.omega.omega),
            "source": str(value.source.f),
            "target": str(value.target.f),
            "psi1": str(value.psi1),
            "psi0": str(value.psi0),
        }
    if isinstance(value, PairMorphism):
        return {
            "field": str(value.source.field),
            "omega": str(value.source.omega.omega),
            "source": {"rho1": str(value.source.rho1), "rho0": str(value.source.rho0)},
            "target": {"rho1": str(value.target.rho1), "rho0": str(value.target.rho0)},
            "psi1": str(value.psi1),
            "psi0": str(value.psi0),
        }
    raise TypeError(f"cannot serialize {type(value).__name__}")


def to_text(value):
    return json.dumps(encode(value), sort_keys=True)
