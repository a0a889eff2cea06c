"""Randomized checks of the exact and Frobenius structure of Mon(omega, P).

Each trial draws its own generator from (seed, trial index), so reports do
not depend on how many checks earlier trials ran.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import MatfacError
from .generators import (
    random_conflation,
    random_deflation,
    random_inflation,
    random_morphism,
    random_object,
)
from .moncat import (
    compose,
    conflation_from_deflation,
    conflation_from_inflation,
    check_conflation,
    find_retraction,
    identity,
    injective_presentation,
    is_null_homotopic,
    is_projective_object,
    projective_presentation,
    pullback_deflation,
    pushout_inflation,
    scalar_morphism,
)

CHECKS = ("E0", "E0op", "E1", "E1op", "E2", "E2op", "extension", "split", "frobenius")


@dataclass
class AxiomReport:
    seed: int
    trials: int
    checks_run: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def as_dict(self):
        return {
            "seed": self.seed,
            "trials": self.trials,
            "checks_run": self.checks_run,
            "violations": list(self.violations),
        }


def _check_E0(rng, w, bound):
    X = random_object(rng, w, bound, min_size=0)
    c = conflation_from_inflation(identity(X))
    problems = check_conflation(c)
    if c.right.size != 0:
        problems.append("cokernel of an identity is not zero")
    return problems


def _check_E0op(rng, w, bound):
    X = random_object(rng, w, bound, min_size=0)
    c = conflation_from_deflation(identity(X))
    problems = check_conflation(c)
    if c.left.size != 0:
        problems.append("kernel of an identity is not zero")
    return problems


def _half(bound):
    # composites double sizes twice; keep the final middle term near the bound
    return max(1, bound // 2)


def _check_E1(rng, w, bound):
    X = random_object(rng, w, _half(bound))
    a = random_inflation(rng, X, 1)
    b = random_inflation(rng, a.target, 1)
    # Coker of the composite must again be an object
    return check_conflation(conflation_from_inflation(compose(b, a)))


def _check_E1op(rng, w, bound):
    X = random_object(rng, w, _half(bound))
    a = random_deflation(rng, X, 1)
    b = random_deflation(rng, a.source, 1)
    return check_conflation(conflation_from_deflation(compose(a, b)))


def _check_E2(rng, w, bound):
    X = random_object(rng, w, bound)
    phi = random_inflation(rng, X, bound)
    Z = random_object(rng, w, bound, min_size=0)
    theta = random_morphism(rng, X, Z)
    po = pushout_inflation(phi, theta)
    problems = check_conflation(conflation_from_inflation(po.from_z))
    old = conflation_from_inflation(phi).right
    new = conflation_from_inflation(po.from_z).right
    if old.exponents != new.exponents:
        problems.append(f"pushout changed the cokernel: {old.exponents} vs {new.exponents}")
    for comp in ("psi1", "psi0"):
        lhs = getattr(po.from_y, comp) @ getattr(phi, comp)
        rhs = getattr(po.from_z, comp) @ getattr(theta, comp)
        if lhs != rhs:
            problems.append(f"pushout square does not commute in {comp}")
    return problems


def _check_E2op(rng, w, bound):
    Z = random_object(rng, w, bound)
    d = random_deflation(rng, Z, bound)
    W = random_object(rng, w, bound, min_size=0)
    theta = random_morphism(rng, W, Z)
    pb = pullback_deflation(d, theta)
    problems = check_conflation(conflation_from_deflation(pb.to_w))
    for comp in ("psi1", "psi0"):
        lhs = getattr(d, comp) @ getattr(pb.to_y, comp)
        rhs = getattr(theta, comp) @ getattr(pb.to_w, comp)
        if lhs != rhs:
            problems.append(f"pullback square does not commute in {comp}")
    old = conflation_from_deflation(d).left
    new = conflation_from_deflation(pb.to_w).left
    if old.exponents != new.exponents:
        problems.append(f"pullback changed the kernel: {old.exponents} vs {new.exponents}")
    return problems


def _check_extension(rng, w, bound):
    return check_conflation(random_conflation(rng, w, bound))


def _check_split(rng, w, bound):
    c = random_conflation(rng, w, bound)
    X = c.left
    po = pushout_inflation(c.inflation, scalar_morphism(X, w.omega))
    r = find_retraction(po.from_z)
    if r is None:
        return ["pushout along omega * id does not split"]
    back = compose(r, po.from_z)
    if back.psi1 != identity(X).psi1 or back.psi0 != identity(X).psi0:
        return ["retraction does not compose to the identity"]
    return []


def _check_frobenius(rng, w, bound):
    X = random_object(rng, w, bound, min_size=0)
    problems = []
    for name, c in (("projective", projective_presentation(X)), ("injective", injective_presentation(X))):
        problems += [f"{name} presentation: {p}" for p in check_conflation(c)]
        if not is_projective_object(c.middle):
            problems.append(f"{name} presentation middle has exponents {c.middle.exponents}")
    by_exponents = all(a in (0, w.n) for a in X.exponents)
    contractible = is_null_homotopic(identity(X)) is not None
    if not (is_projective_object(X) == by_exponents == contractible):
        problems.append(
            f"projectivity tests disagree on {X}: "
            f"is_projective={is_projective_object(X)}, exponents={by_exponents}, contractible={contractible}"
        )
    return problems


_RUNNERS = {
    "E0": _check_E0,
    "E0op": _check_E0op,
    "E1": _check_E1,
    "E1op": _check_E1op,
    "E2": _check_E2,
    "E2op": _check_E2op,
    "extension": _check_extension,
    "split": _check_split,
    "frobenius": _check_frobenius,
}


def axiom_suite(seed, trials, w, size_bound, checks=CHECKS):
    """Run `trials` trials; trial i runs check checks[i % len(checks)].

    Every trial gets a fresh generator seeded from (seed, i), so a violation
    can be replayed on its own.
    """
    if trials < 1 or size_bound < 1:
        raise ValueError("trials and size_bound must be positive")
    report = AxiomReport(seed, trials)
    for i in range(trials):
        name = checks[i % len(checks)]
        rng = random.Random(f"{seed}/{i}")
        try:
            problems = _RUNNERS[name](rng, w, size_bound)
        except MatfacError as exc:
            problems = [f"{type(exc).__name__}: {exc}"]
        report.checks_run += 1
        report.violations += [f"trial {i} [{name}]: {p}" for p in problems]
    return report
