"""Matrix factorizations Pair(omega) and their homotopy category DB(omega).

DB(omega) is not a separate type: its objects are PairObjects and its Hom
spaces are the stable Homs computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, OmegaMismatch, ProductNotOmega, SquareNotCommuting
from .linalg import LocalMatrix, direct_sum, free_kernel, hstack, kron, snf, solve_linear, unvec, vec, vstack
from . import moncat
from .ring import LocalScalar


@dataclass(frozen=True)
class PairObject:
    rho1: LocalMatrix
    rho0: LocalMatrix
    omega: object  # OmegaSpec

    @property
    def size(self):
        return self.rho1.rows

    @property
    def field(self):
        return self.rho1.field


@dataclass(frozen=True)
class PairMorphism:
    source: PairObject
    target: PairObject
    psi1: LocalMatrix
    psi0: LocalMatrix


@dataclass(frozen=True)
class PairHomotopyWitness:
    s0: LocalMatrix
    s1: LocalMatrix


def pair_make(rho1, rho0, w):
    if not (rho1.is_square() and rho0.is_square() and rho1.shape == rho0.shape):
        raise DimensionMismatch(f"factors must be square of equal size, got {rho1.shape} and {rho0.shape}")
    target = LocalMatrix.scalar(rho1.field, w.omega, rho1.rows)
    for name, prod in (("rho1 rho0", rho1 @ rho0), ("rho0 rho1", rho0 @ rho1)):
        if prod != target:
            residual = prod - target
            raise ProductNotOmega(f"{name} - omega I = {residual}", residual)
    return PairObject(rho1, rho0, w)


def pair_morphism(source, target, psi1, psi0):
    shape = (target.size, source.size)
    if psi1.shape != shape or psi0.shape != shape:
        raise DimensionMismatch(f"morphism components must be {shape}")
    r1 = target.rho1 @ psi1 - psi0 @ source.rho1
    r0 = psi1 @ source.rho0 - target.rho0 @ psi0
    if not (r1.is_zero() and r0.is_zero()):
        raise SquareNotCommuting("q1 psi1 != psi0 rho1 or psi1 rho0 != q0 psi0", (r1, r0))
    return PairMorphism(source, target, psi1, psi0)


def pair_identity(P):
    I = LocalMatrix.identity(P.field, P.size)
    return PairMorphism(P, P, I, I)


def pair_direct_sum(P, Q):
    if P.omega != Q.omega:
        raise OmegaMismatch("pairs over different omega")
    return PairObject(direct_sum(P.rho1, Q.rho1), direct_sum(P.rho0, Q.rho0), P.omega)


# ---------------------------------------------------------------------------
# the equivalence F: Mon(omega, P) -> Pair(omega)


def functor_F(X):
    return PairObject(X.f, moncat.sigma(X), X.omega)


def functor_F_morphism(m):
    return PairMorphism(functor_F(m.source), functor_F(m.target), m.psi1, m.psi0)


def functor_F_inverse(P):
    X = moncat.MonObject(P.rho1, P.omega)
    X.__dict__["sigma"] = P.rho0
    return X


def functor_F_inverse_morphism(m):
    return moncat.MonMorphism(functor_F_inverse(m.source), functor_F_inverse(m.target), m.psi1, m.psi0)


# ---------------------------------------------------------------------------
# homotopy


def _homotopy_operator(P, Q):
    """Matrix of (s0, s1) |-> (q1 s0 + s1 rho0, s0 rho1 + q0 s1) on vec coordinates."""
    field = P.field
    Ip, Iq = LocalMatrix.identity(field, P.size), LocalMatrix.identity(field, Q.size)
    top = hstack(kron(Ip, Q.rho1), kron(P.rho0.T, Iq))
    bottom = hstack(kron(P.rho1.T, Iq), kron(Ip, Q.rho0))
    return vstack(top, bottom)


def pair_is_null_homotopic(m):
    """Witness (s0, s1) with psi0 = q1 s0 + s1 rho0 and psi1 = s0 rho1 + q0 s1, or None."""
    P, Q = m.source, m.target
    k = P.size * Q.size
    sol = solve_linear(_homotopy_operator(P, Q), vstack(vec(m.psi0), vec(m.psi1)))
    if sol is None:
        return None
    s0 = unvec(sol.row_block(0, k), Q.size, P.size)
    s1 = unvec(sol.row_block(k, 2 * k), Q.size, P.size)
    return PairHomotopyWitness(s0, s1)


def pair_stable_hom_dimension(P, Q):
    """Length of H^0 of the Hom complex Hom(P, Q), computed over S.

    Z = ker(psi |-> (q1 psi1 - psi0 rho1, psi1 rho0 - q0 psi0)) is free; the
    null-homotopic morphisms B form a full-rank submodule and the answer is
    the sum of the Smith exponents of B written in a basis of Z.
    """
    if P.omega != Q.omega:
        raise OmegaMismatch("pairs over different omega")
    if P.size == 0 or Q.size == 0:
        return 0
    field = P.field
    Ip, Iq = LocalMatrix.identity(field, P.size), LocalMatrix.identity(field, Q.size)
    # coordinates (vec psi1, vec psi0)
    d0 = vstack(
        hstack(kron(Ip, Q.rho1), -kron(P.rho1.T, Iq)),
        hstack(kron(P.rho0.T, Iq), -kron(Ip, Q.rho0)),
    )
    Z = free_kernel(d0)
    H = _homotopy_operator(P, Q)
    k = P.size * Q.size
    # reorder homotopy images from (psi0, psi1) to (psi1, psi0)
    B = vstack(H.row_block(k, 2 * k), H.row_block(0, k))
    coords = solve_linear(Z, B)
    return sum(snf(coords).exponents)


# ---------------------------------------------------------------------------
# triangulated structure


def pair_shift(P):
    return PairObject(-P.rho0, -P.rho1, P.omega)


def pair_shift_morphism(m):
    return PairMorphism(pair_shift(m.source), pair_shift(m.target), m.psi0, m.psi1)


@dataclass(frozen=True)
class PairTriangle:
    cone: PairObject
    to_cone: PairMorphism
    from_cone: PairMorphism


def pair_cone(m):
    """Cone transported from Mon: F(cone(F^-1 m))."""
    tri = moncat.cone(functor_F_inverse_morphism(m))
    C = functor_F(tri.cone)
    g = PairMorphism(m.target, C, tri.to_cone.psi1, tri.to_cone.psi0)
    h = PairMorphism(C, pair_shift(m.source), tri.from_cone.psi1, tri.from_cone.psi0)
    return PairTriangle(C, g, h)


def pair_decompose(P):
    """Exponents a_i with P isomorphic to the sum of (x^a_i, unit x^(n - a_i))."""
    return tuple(sorted(snf(P.rho1).exponents))


def atom(a, w):
    """The rank-one factorization (x^a, u x^(n-a)) with omega = u x^n."""
    field = w.field
    r1 = LocalMatrix.scalar(field, LocalScalar.x_power(field, a), 1)
    r0 = LocalMatrix.scalar(field, w.unit_part * LocalScalar.x_power(field, w.n - a), 1)
    return pair_make(r1, r0, w)
