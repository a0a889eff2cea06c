"""Command-line front end.

Every command except ``demo`` prints one JSON object
``{"status", "payload", "diagnostics"}``.  Exit codes: 0 ok, 1 invalid input,
2 parse error, 3 violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field as dc_field

from . import moncat, paircat, singcat
from .axioms import axiom_suite
from .errors import MatfacError, ParseError, UnknownCommand
from .generators import random_object
from .linalg import cokernel_exponents
from .moncat import MonMorphism, MonObject
from .paircat import PairMorphism, PairObject
from .ring import FieldSpec, LocalScalar, omega_make, parse_scalar
from .serialize import decode, encode
from .singcat import RModuleObject

EXIT = {"ok": 0, "invalid-input": 1, "parse-error": 2, "violation": 3}

COMMANDS = (
    "validate", "sigma", "pair-of", "invert-pair", "shift", "cone", "decompose", "coker",
    "stable-hom", "is-projective", "is-nullhomotopic", "pushout", "pullback", "kernel",
    "present-proj", "present-inj", "density-preimage", "check-t", "axioms", "demo",
)


@dataclass(frozen=True)
class SessionConfig:
    field: FieldSpec
    omega: str | None
    seed: int
    trials: int
    size_bound: int
    n: int | None = None


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list = dc_field(default_factory=list)
    exit_code: int = 0
    text: str | None = None  # demo prints a table instead of JSON


# ---------------------------------------------------------------------------
# input


def _read_inputs(cfg, paths, stdin):
    texts = []
    if not paths:
        texts.append(("<stdin>", stdin.read()))
    for p in paths:
        if p == "-":
            texts.append(("<stdin>", stdin.read()))
        else:
            with open(p, encoding="utf-8") as fh:
                texts.append((p, fh.read()))
    values = []
    for name, text in texts:
        try:
            env = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{name}: {exc.msg}", exc.lineno, exc.colno) from None
        for item in env if isinstance(env, list) else [env]:
            if isinstance(item, dict) and "omega" not in item and "exponents" not in item and cfg.omega:
                item = dict(item, omega=cfg.omega)
            values.append(decode(item, cfg.field))
    return values


def _need(values, count, *kinds):
    if len(values) != count:
        raise _Invalid(f"expected {count} input value(s), got {len(values)}")
    for v in values:
        if not isinstance(v, kinds):
            names = " or ".join(k.__name__ for k in kinds)
            raise _Invalid(f"expected {names}, got {type(v).__name__}")
    return values


class _Invalid(MatfacError):
    pass


def _omega(cfg, default_n=2):
    text = cfg.omega if cfg.omega else f"x^{default_n}"
    return omega_make(parse_scalar(text, cfg.field))


# ---------------------------------------------------------------------------
# commands


def _as_mon(v):
    return paircat.functor_F_inverse(v) if isinstance(v, PairObject) else v


def _as_mon_morphism(m):
    return paircat.functor_F_inverse_morphism(m) if isinstance(m, PairMorphism) else m


def _conflation(c):
    return {
        "left": encode(c.left),
        "middle": encode(c.middle),
        "right": encode(c.right),
        "inflation": encode(c.inflation),
        "deflation": encode(c.deflation),
    }


def cmd_validate(cfg, vals):
    (v,) = _need(vals, 1, MonObject, PairObject, MonMorphism, PairMorphism, RModuleObject)
    payload = {"kind": type(v).__name__, "valid": True}
    if isinstance(v, MonObject):
        payload["exponents"] = list(v.exponents)
    return payload


def cmd_sigma(cfg, vals):
    (X,) = _need(vals, 1, MonObject)
    return str(moncat.sigma(X))


def cmd_pair_of(cfg, vals):
    (X,) = _need(vals, 1, MonObject)
    return encode(paircat.functor_F(X))


def cmd_invert_pair(cfg, vals):
    (P,) = _need(vals, 1, PairObject)
    X = moncat.mon_make(P.rho1, P.omega)
    return encode(X)


def cmd_shift(cfg, vals):
    (v,) = _need(vals, 1, MonObject, PairObject, MonMorphism, PairMorphism)
    if isinstance(v, MonObject):
        return encode(moncat.shift(v))
    if isinstance(v, PairObject):
        return encode(paircat.pair_shift(v))
    if isinstance(v, MonMorphism):
        return encode(moncat.shift_morphism(v))
    return encode(paircat.pair_shift_morphism(v))


def cmd_cone(cfg, vals):
    (m,) = _need(vals, 1, MonMorphism, PairMorphism)
    tri = paircat.pair_cone(m) if isinstance(m, PairMorphism) else moncat.cone(m)
    return {"cone": encode(tri.cone), "to_cone": encode(tri.to_cone), "from_cone": encode(tri.from_cone)}


def cmd_decompose(cfg, vals):
    (v,) = _need(vals, 1, MonObject, PairObject)
    P = paircat.functor_F(v) if isinstance(v, MonObject) else v
    exps = paircat.pair_decompose(P)
    n = P.omega.n
    return {
        "exponents": list(exps),
        "atoms": [a for a in exps if 0 < a < n],
        "contractible": [a for a in exps if a in (0, n)],
    }


def cmd_coker(cfg, vals):
    (X,) = _need(vals, 1, MonObject)
    return {"exponents": list(cokernel_exponents(X.f)), "module": encode(singcat.functor_T(X))}


def cmd_stable_hom(cfg, vals):
    X, Y = _need(vals, 2, MonObject, PairObject, RModuleObject)
    if isinstance(X, RModuleObject) or isinstance(Y, RModuleObject):
        X, Y = _need(vals, 2, RModuleObject)
        return {"dimension": singcat.rmod_stable_hom_dimension(X, Y)}
    if isinstance(X, PairObject) and isinstance(Y, PairObject):
        return {"dimension": paircat.pair_stable_hom_dimension(X, Y)}
    return {"dimension": moncat.stable_hom_dimension(_as_mon(X), _as_mon(Y))}


def cmd_is_projective(cfg, vals):
    (v,) = _need(vals, 1, MonObject, PairObject)
    X = _as_mon(v)
    return {"projective": moncat.is_projective_object(X), "exponents": list(X.exponents)}


def cmd_is_nullhomotopic(cfg, vals):
    (m,) = _need(vals, 1, MonMorphism, PairMorphism)
    if isinstance(m, PairMorphism):
        wit = paircat.pair_is_null_homotopic(m)
    else:
        wit = moncat.is_null_homotopic(m)
    if wit is None:
        return {"null_homotopic": False}
    if isinstance(m, PairMorphism):
        return {"null_homotopic": True, "s0": str(wit.s0), "s1": str(wit.s1)}
    return {"null_homotopic": True, "s1": str(wit.s1), "s0": str(wit.s0)}


def cmd_pushout(cfg, vals):
    phi, theta = _need(vals, 2, MonMorphism, PairMorphism)
    po = moncat.pushout_inflation(_as_mon_morphism(phi), _as_mon_morphism(theta))
    return {"E": encode(po.E), "from_y": encode(po.from_y), "from_z": encode(po.from_z)}


def cmd_pullback(cfg, vals):
    phi, theta = _need(vals, 2, MonMorphism, PairMorphism)
    pb = moncat.pullback_deflation(_as_mon_morphism(phi), _as_mon_morphism(theta))
    return {"E": encode(pb.E), "to_y": encode(pb.to_y), "to_w": encode(pb.to_w)}


def cmd_kernel(cfg, vals):
    (d,) = _need(vals, 1, MonMorphism, PairMorphism)
    K, k = moncat.kernel_of_deflation(_as_mon_morphism(d))
    return {"kernel": encode(K), "inclusion": encode(k)}


def cmd_present_proj(cfg, vals):
    (v,) = _need(vals, 1, MonObject, PairObject)
    return _conflation(moncat.projective_presentation(_as_mon(v)))


def cmd_present_inj(cfg, vals):
    (v,) = _need(vals, 1, MonObject, PairObject)
    return _conflation(moncat.injective_presentation(_as_mon(v)))


def cmd_density_preimage(cfg, vals):
    (M,) = _need(vals, 1, RModuleObject)
    w = _omega(cfg, M.n) if cfg.omega else None
    return encode(singcat.density_preimage(M, w))


def _report_row(X, Y):
    r = singcat.check_T_full_faithful(X, Y)
    return {
        "source": list(X.exponents),
        "target": list(Y.exponents),
        "dim_mon_side": r.dim_mon_side,
        "dim_module_side": r.dim_module_side,
        "agree": r.agree,
    }


def cmd_check_t(cfg, vals):
    if vals:
        X, Y = _need(vals, 2, MonObject, PairObject)
        return {"rows": [_report_row(_as_mon(X), _as_mon(Y))]}
    w = _omega(cfg)
    rng = random.Random(cfg.seed)
    rows = []
    for _ in range(cfg.trials):
        X = random_object(rng, w, cfg.size_bound)
        Y = random_object(rng, w, cfg.size_bound)
        rows.append(_report_row(X, Y))
    return {"omega": str(w.omega), "rows": rows, "all_agree": all(r["agree"] for r in rows)}


def run_axioms(cfg):
    w = _omega(cfg)
    report = axiom_suite(cfg.seed, cfg.trials, w, cfg.size_bound)
    payload = dict(report.as_dict(), omega=str(w.omega), field=str(cfg.field))
    if report.violations:
        return CommandResult("violation", payload, list(report.violations), EXIT["violation"])
    return CommandResult("ok", payload)


def demo_table(n, field=None):
    """Indecomposables (x^a, x^(n-a)) and their stable Hom dimensions."""
    field = field or FieldSpec(0)
    w = omega_make(LocalScalar.x_power(field, n))
    atoms = [paircat.atom(a, w) for a in range(1, n)]
    dims = [[paircat.pair_stable_hom_dimension(P, Q) for Q in atoms] for P in atoms]
    lines = [f"indecomposable matrix factorizations of omega = {w.omega} over {field}"]
    for a, P in enumerate(atoms, 1):
        lines.append(f"  a = {a}: rho1 = {P.rho1}, rho0 = {P.rho0}")
    lines.append("stable Hom dimensions (row a, column b):")
    width = max(3, len(str(n)) + 2)
    lines.append(" " * 8 + "".join(f"b={b}".rjust(width + 1) for b in range(1, n)))
    for a, row in enumerate(dims, 1):
        lines.append(f"  a={a}".ljust(8) + "".join(str(d).rjust(width + 1) for d in row))
    lines.append("matrix: " + json.dumps(dims, separators=(",", ":")))
    return "\n".join(lines) + "\n", dims


_DISPATCH = {
    "validate": cmd_validate,
    "sigma": cmd_sigma,
    "pair-of": cmd_pair_of,
    "invert-pair": cmd_invert_pair,
    "shift": cmd_shift,
    "cone": cmd_cone,
    "decompose": cmd_decompose,
    "coker": cmd_coker,
    "stable-hom": cmd_stable_hom,
    "is-projective": cmd_is_projective,
    "is-nullhomotopic": cmd_is_nullhomotopic,
    "pushout": cmd_pushout,
    "pullback": cmd_pullback,
    "kernel": cmd_kernel,
    "present-proj": cmd_present_proj,
    "present-inj": cmd_present_inj,
    "density-preimage": cmd_density_preimage,
    "check-t": cmd_check_t,
}

# commands that may run without any input
_NO_INPUT = {"axioms", "demo", "check-t"}


def run_command(cfg, command, paths=(), stdin=None):
    stdin = stdin if stdin is not None else sys.stdin
    try:
        if command not in COMMANDS:
            raise UnknownCommand(f"unknown command {command!r}")
        if command == "demo":
            n = cfg.n or 4
            if n < 2:
                raise _Invalid("demo needs n >= 2")
            text, dims = demo_table(n, cfg.field)
            return CommandResult("ok", {"n": n, "dimensions": dims}, text=text)
        if command == "axioms":
            return run_axioms(cfg)
        vals = [] if (command in _NO_INPUT and not paths) else _read_inputs(cfg, paths, stdin)
        return CommandResult("ok", _DISPATCH[command](cfg, vals))
    except ParseError as exc:
        return CommandResult("invalid-input", None, [f"ParseError: {exc}"], EXIT["parse-error"])
    except (MatfacError, OSError, ValueError) as exc:
        return CommandResult("invalid-input", None, [f"{type(exc).__name__}: {exc}"], EXIT["invalid-input"])


def render(result):
    if result.text is not None:
        return result.text
    doc = {"status": result.status, "payload": result.payload, "diagnostics": result.diagnostics}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="matfac", description="Matrix factorizations over k[x] localized at (x).")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("inputs", nargs="*", help="JSON input files ('-' or none for stdin)")
    p.add_argument("--field", default="rational", help="rational | fp:<p> (default rational)")
    p.add_argument("--omega", default=None, help="scalar text for omega (default x^2, or x^n for modules)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--size-bound", type=int, default=2)
    p.add_argument("--n", type=int, default=None, help="n for demo (default 4)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        field = FieldSpec.parse(args.field)
    except (ParseError, ValueError) as exc:
        result = CommandResult("invalid-input", None, [f"{type(exc).__name__}: {exc}"], EXIT["parse-error"])
    else:
        if args.trials < 1 or args.size_bound < 1:
            result = CommandResult("invalid-input", None, ["trials and size-bound must be positive"], EXIT["invalid-input"])
        else:
            cfg = SessionConfig(field, args.omega, args.seed, args.trials, args.size_bound, args.n)
            result = run_command(cfg, args.command, args.inputs)
    sys.stdout.write(render(result))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
