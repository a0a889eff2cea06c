"""Modules over R = S/(omega) in stable-MCM form, and the cokernel functor T.

R is the artinian ring k[x]/(x^n), so a finitely generated R-module is a sum
of cyclic modules R/x^a with 1 <= a <= n; summands with a = n are free, hence
zero in the stable category (which models the singularity category of R).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import OmegaMismatch, RankMismatch
from .linalg import LocalMatrix, cokernel_exponents
from .moncat import mon_make, stable_hom_dimension
from .ring import QQ, LocalScalar, omega_make


@dataclass(frozen=True)
class RModuleObject:
    n: int
    exponents: tuple

    def __post_init__(self):
        exps = tuple(sorted(self.exponents))
        if any(not 1 <= a <= self.n for a in exps):
            raise ValueError(f"exponents must lie in [1, {self.n}], got {exps}")
        object.__setattr__(self, "exponents", exps)

    def stable_part(self):
        return RModuleObject(self.n, tuple(a for a in self.exponents if a != self.n))


@dataclass(frozen=True)
class StableHomReport:
    dim_mon_side: int
    dim_module_side: int

    @property
    def agree(self):
        return self.dim_mon_side == self.dim_module_side


def functor_T(X):
    """Coker f as an R-module."""
    return RModuleObject(X.omega.n, cokernel_exponents(X.f))


def rmod_syzygy(M, direction="omega-inverse"):
    """Omega and its inverse agree here: R/x^a |-> R/x^(n-a), free summands vanish."""
    if direction not in ("omega", "omega-inverse"):
        raise ValueError(f"unknown direction {direction!r}")
    return RModuleObject(M.n, tuple(M.n - a for a in M.exponents if a != M.n))


# ---------------------------------------------------------------------------
# stable Hom between cyclic modules


def _mulmod(u, t, n, p):
    out = [0] * n
    for i, ui in enumerate(u):
        if ui:
            for j in range(n - i):
                out[i + j] = (out[i + j] + ui * t[j]) % p
    return tuple(out)


def _span_size(vectors, p):
    span = {tuple([0] * len(next(iter(vectors))))} if vectors else set()
    for v in vectors:
        if v in span:
            continue
        span = {tuple((a + c * b) % p for a, b in zip(s, v)) for s in span for c in range(p)}
    return len(span)


@lru_cache(maxsize=None)
def stable_hom_oracle(a, b, n, p=2):
    """Brute-force dim_k of stable Hom_R(R/x^a, R/x^b) over F_p.

    Enumerates every R-linear map (the image u of 1, with x^a u = 0 in R/x^b)
    and every composite R/x^a -> R -> R/x^b, then counts cosets.
    """
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError("need 1 <= a, b <= n")
    words = list(itertools.product(range(p), repeat=n))
    xa = tuple(1 if i == a else 0 for i in range(n))

    def in_quotient(v, m):
        return tuple(v[i] if i < m else 0 for i in range(n))

    homs = [u for u in words if all(u[i] == 0 for i in range(b, n))]
    homs = [u for u in homs if not any(in_quotient(_mulmod(xa, u, n, p), b))]
    to_free = [r for r in words if not any(_mulmod(xa, r, n, p))]
    through_free = {in_quotient(_mulmod(r, t, n, p), b) for r in to_free for t in words}
    hom_count = len(homs)
    null_count = _span_size(sorted(through_free), p)
    dim = 0
    while p ** (dim + 1) * null_count <= hom_count:
        dim += 1
    if p**dim * null_count != hom_count:
        raise ArithmeticError("coset count is not a power of p")
    return dim


def stable_hom_closed_form(a, b, n):
    return min(a, b, n - a, n - b)


@lru_cache(maxsize=None)
def _closed_form_validated(n):
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if stable_hom_closed_form(a, b, n) != stable_hom_oracle(a, b, n):
                raise AssertionError(f"closed form disagrees with the oracle at a={a}, b={b}, n={n}")
    return True


def rmod_stable_hom_dimension(M, N, use_oracle=False):
    if M.n != N.n:
        raise RankMismatch(f"modules over k[x]/x^{M.n} and k[x]/x^{N.n}")
    n = M.n
    if use_oracle:
        d = stable_hom_oracle
    else:
        _closed_form_validated(n)
        d = stable_hom_closed_form
    return sum(d(a, b, n) for a in M.exponents for b in N.exponents)


# ---------------------------------------------------------------------------
# density and full faithfulness


def density_preimage(M, w=None):
    """diag(x^a_i) over omega (default omega = x^n); T of it is M."""
    if w is None:
        w = omega_make(LocalScalar.x_power(QQ, M.n))
    elif w.n != M.n:
        raise RankMismatch(f"omega has n = {w.n}, module has n = {M.n}")
    field = w.field
    f = LocalMatrix.diag(field, [LocalScalar.x_power(field, a) for a in M.exponents])
    return mon_make(f, w)


def check_T_full_faithful(X, Y):
    if X.omega != Y.omega:
        raise OmegaMismatch("objects over different omega")
    return StableHomReport(
        stable_hom_dimension(X, Y),
        rmod_stable_hom_dimension(functor_T(X), functor_T(Y)),
    )
