"""The Frobenius category Mon(omega, P) of monomorphisms with omega-torsion cokernel.

An object is a square matrix f over S, read as a map P -> Q of free modules,
with det f != 0 and omega * Coker f = 0.  Over the DVR backend Gorenstein
projective S-modules are free, so the same type also models Mon(omega, G).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .errors import (
    CokerNotAnnihilated,
    DimensionMismatch,
    NotDeflation,
    NotInflation,
    NotInjective,
    NotSquare,
    OmegaMismatch,
    SquareNotCommuting,
)
from .linalg import (
    LocalMatrix,
    direct_sum as mat_direct_sum,
    field_rank,
    flatten,
    free_cokernel,
    free_kernel,
    hstack,
    is_split_injective,
    is_surjective,
    kron,
    snf,
    solve_linear,
    solve_mod_omega,
    truncate_matrix,
    truncated_matmul,
    unit_tmatrix,
    unvec,
    vec,
    vstack,
)
from .ring import LocalScalar


@dataclass(frozen=True, eq=False)
class MonObject:
    f: LocalMatrix
    omega: object  # OmegaSpec
    gorenstein: bool = dc_field(default=False, compare=False)

    @property
    def size(self):
        return self.f.rows

    @property
    def field(self):
        return self.f.field

    @cached_property
    def exponents(self):
        """All SNF exponents of f (zeros included), ascending."""
        return snf(self.f).exponents

    def __eq__(self, other):
        if not isinstance(other, MonObject):
            return NotImplemented
        return self.f == other.f and self.omega == other.omega

    def __hash__(self):
        return hash((self.f, self.omega.omega))

    def __str__(self):
        return f"Mon({self.f}; omega = {self.omega.omega})"


@dataclass(frozen=True)
class MonMorphism:
    source: MonObject
    target: MonObject
    psi1: LocalMatrix
    psi0: LocalMatrix

    def __matmul__(self, other):
        """Composition self o other."""
        return compose(self, other)


@dataclass(frozen=True)
class HomotopyWitness:
    s1: LocalMatrix
    s0: LocalMatrix


@dataclass(frozen=True)
class Conflation:
    left: MonObject
    middle: MonObject
    right: MonObject
    inflation: MonMorphism
    deflation: MonMorphism


# ---------------------------------------------------------------------------
# objects and morphisms


def mon_make(f, w, gorenstein=False):
    """Validate f as an object of Mon(omega, P)."""
    if not f.is_square():
        raise NotSquare(f"object matrix must be square, got {f.rows}x{f.cols}")
    res = snf(f)
    if res.rank < f.rows:
        raise NotInjective("object matrix is singular")
    for a in res.exponents:
        if a > w.n:
            raise CokerNotAnnihilated(a, w.n)
    X = MonObject(f, w, gorenstein)
    X.__dict__["exponents"] = res.exponents
    return X


def empty_object(w):
    return MonObject(LocalMatrix.zeros(w.field, 0, 0), w)


def sigma(X):
    """The unique f_sigma with f @ f_sigma == f_sigma @ f == omega * I."""
    if "sigma" in X.__dict__:
        return X.__dict__["sigma"]
    field = X.field
    s = solve_linear(X.f, LocalMatrix.scalar(field, X.omega.omega, X.size))
    if s is None:
        raise CokerNotAnnihilated(max(X.exponents), X.omega.n)
    X.__dict__["sigma"] = s
    return s


def _require_same_omega(*objs):
    w = objs[0].omega
    for o in objs[1:]:
        if o.omega != w:
            raise OmegaMismatch(f"omega {o.omega.omega} vs {w.omega}")
    return w


def mon_morphism(source, target, psi1, psi0):
    if psi1.shape != (target.size, source.size) or psi0.shape != (target.size, source.size):
        raise DimensionMismatch(
            f"morphism components must be {target.size}x{source.size}, got {psi1.shape} and {psi0.shape}"
        )
    residual = psi0 @ source.f - target.f @ psi1
    if not residual.is_zero():
        raise SquareNotCommuting(f"psi0 f - f' psi1 = {residual} is not zero", residual)
    return MonMorphism(source, target, psi1, psi0)


def identity(X):
    I = LocalMatrix.identity(X.field, X.size)
    return MonMorphism(X, X, I, I)


def zero_morphism(X, Y):
    Z = LocalMatrix.zeros(X.field, Y.size, X.size)
    return MonMorphism(X, Y, Z, Z)


def scalar_morphism(X, s):
    """Multiplication by the scalar s on X (e.g. s = omega)."""
    M = LocalMatrix.scalar(X.field, s, X.size)
    return MonMorphism(X, X, M, M)


def compose(g, h):
    """g o h, for h: X -> Y and g: Y -> Z."""
    if h.target != g.source:
        raise DimensionMismatch("morphisms are not composable")
    return MonMorphism(h.source, g.target, g.psi1 @ h.psi1, g.psi0 @ h.psi0)


def add_morphisms(g, h):
    return MonMorphism(g.source, g.target, g.psi1 + h.psi1, g.psi0 + h.psi0)


def direct_sum(X, Y):
    w = _require_same_omega(X, Y)
    return MonObject(mat_direct_sum(X.f, Y.f), w)


def injections(X, Y):
    S = direct_sum(X, Y)
    field = X.field
    i = vstack(LocalMatrix.identity(field, X.size), LocalMatrix.zeros(field, Y.size, X.size))
    j = vstack(LocalMatrix.zeros(field, X.size, Y.size), LocalMatrix.identity(field, Y.size))
    return MonMorphism(X, S, i, i), MonMorphism(Y, S, j, j)


def projections(X, Y):
    S = direct_sum(X, Y)
    field = X.field
    p = hstack(LocalMatrix.identity(field, X.size), LocalMatrix.zeros(field, X.size, Y.size))
    q = hstack(LocalMatrix.zeros(field, Y.size, X.size), LocalMatrix.identity(field, Y.size))
    return MonMorphism(S, X, p, p), MonMorphism(S, Y, q, q)


def standard_projective(rank_id, rank_omega, w):
    """(S^a -id-> S^a) + (S^b -omega-> S^b) as one block-diagonal object."""
    field = w.field
    one = LocalScalar.one(field)
    f = LocalMatrix.diag(field, [one] * rank_id + [w.omega] * rank_omega)
    return mon_make(f, w)


# ---------------------------------------------------------------------------
# homotopy and projectivity


def is_null_homotopic(m):
    """A witness (s1, s0) with psi0 f - f' s0 f == omega s1, or None."""
    f, fp = m.source.f, m.target.f
    w = m.source.omega
    A = kron(f.T, fp)
    B = vec(m.psi0 @ f)
    sol = solve_mod_omega(A, B, w)
    if sol is None:
        return None
    s0 = unvec(sol[0], m.target.size, m.source.size)
    s1 = (m.psi0 @ f - fp @ s0 @ f).divide_exact(w.omega)
    return HomotopyWitness(s1, s0)


def is_projective_object(X):
    """Direct summand of a standard projective: every exponent is 0 or n."""
    return all(a in (0, X.omega.n) for a in X.exponents)


# ---------------------------------------------------------------------------
# exact structure


def check_conflation(c):
    """Problems with c as a conflation (empty list when it is one)."""
    problems = []
    i, d = c.inflation, c.deflation
    if i.source != c.left or i.target != c.middle or d.source != c.middle or d.target != c.right:
        problems.append("maps do not match the objects")
        return problems
    for name, m in (("inflation", i), ("deflation", d)):
        r = m.psi0 @ m.source.f - m.target.f @ m.psi1
        if not r.is_zero():
            problems.append(f"{name} square does not commute")
    if c.middle.size != c.left.size + c.right.size:
        problems.append("ranks do not add up")
    for comp in ("psi1", "psi0"):
        if not is_split_injective(getattr(i, comp)):
            problems.append(f"inflation {comp} is not split injective")
        if not is_surjective(getattr(d, comp)):
            problems.append(f"deflation {comp} is not surjective")
        if not (getattr(d, comp) @ getattr(i, comp)).is_zero():
            problems.append(f"deflation o inflation != 0 in {comp}")
    for obj in (c.left, c.middle, c.right):
        if any(a > obj.omega.n for a in obj.exponents):
            problems.append(f"{obj} is not in Mon(omega, P)")
    return problems


def cokernel_of_inflation(phi):
    """(C, phi -> C) for an inflation phi: X -> Y."""
    Y = phi.target
    w = Y.omega
    if not (is_split_injective(phi.psi1) and is_split_injective(phi.psi0)):
        raise NotInflation("components are not split injective")
    p1, s1 = free_cokernel(phi.psi1)
    p0, _ = free_cokernel(phi.psi0)
    c = p0 @ Y.f @ s1
    try:
        C = mon_make(c, w)
    except (NotInjective, CokerNotAnnihilated) as exc:
        raise NotInflation(f"cokernel is not in Mon(omega, P): {exc}") from None
    return C, MonMorphism(Y, C, p1, p0)


def kernel_of_deflation(d):
    """(K, K -> Y) for a deflation d: Y -> Z (both components surjective)."""
    Y = d.source
    if not (is_surjective(d.psi1) and is_surjective(d.psi0)):
        raise NotDeflation("components are not surjective over S")
    k1 = free_kernel(d.psi1)
    k0 = free_kernel(d.psi0)
    l = solve_linear(k0, Y.f @ k1)
    if l is None:
        raise NotDeflation("kernel map does not restrict")
    try:
        K = mon_make(l, Y.omega)
    except (NotInjective, CokerNotAnnihilated) as exc:
        raise NotDeflation(f"kernel is not in Mon(omega, P): {exc}") from None
    return K, MonMorphism(K, Y, k1, k0)


def conflation_from_inflation(phi):
    C, p = cokernel_of_inflation(phi)
    return Conflation(phi.source, phi.target, C, phi, p)


def conflation_from_deflation(d):
    K, k = kernel_of_deflation(d)
    return Conflation(K, d.source, d.target, k, d)


def projective_presentation(X):
    """Conflation K -> (X + X, id + omega) -> X with deflation ([1, f_sigma], [f, 1])."""
    w = X.omega
    field = X.field
    m = X.size
    I = LocalMatrix.identity(field, m)
    P = standard_projective(m, m, w)
    phi1 = hstack(I, sigma(X))
    phi0 = hstack(X.f, I)
    return conflation_from_deflation(MonMorphism(P, X, phi1, phi0))


def injective_presentation(X):
    """Conflation X -> (X + X, omega + id) -> shift(X).

    Inflation ([1; f], [f_sigma; 1]); deflation ([-f, 1], [1, -f_sigma]).
    """
    w = X.omega
    field = X.field
    m = X.size
    I = LocalMatrix.identity(field, m)
    fs = sigma(X)
    mid = mon_make(mat_direct_sum(LocalMatrix.scalar(field, w.omega, m), I), w)
    C = shift(X)
    infl = MonMorphism(X, mid, vstack(I, X.f), vstack(fs, I))
    defl = MonMorphism(mid, C, hstack(-X.f, I), hstack(I, -fs))
    return Conflation(X, mid, C, infl, defl)


@dataclass(frozen=True)
class Pushout:
    E: MonObject
    from_y: MonMorphism
    from_z: MonMorphism
    sections: tuple  # (section1, section0) of the cokernel projections


def pushout_inflation(phi, theta):
    """Pushout of the inflation phi: X -> Y along theta: X -> Z."""
    cokernel_of_inflation(phi)
    Y, Z = phi.target, theta.target
    w = _require_same_omega(Y, Z)
    y = Y.size
    comps = []
    for a, b in ((phi.psi1, theta.psi1), (phi.psi0, theta.psi0)):
        comps.append(free_cokernel(vstack(a, -b)))
    (p1, s1), (p0, s0) = comps
    e = p0 @ mat_direct_sum(Y.f, Z.f) @ s1
    E = mon_make(e, w)
    from_y = MonMorphism(Y, E, p1.col_block(0, y), p0.col_block(0, y))
    from_z = MonMorphism(Z, E, p1.col_block(y, p1.cols), p0.col_block(y, p0.cols))
    return Pushout(E, from_y, from_z, (s1, s0))


@dataclass(frozen=True)
class Pullback:
    E: MonObject
    to_y: MonMorphism
    to_w: MonMorphism


def pullback_deflation(phi, theta):
    """Pullback of the deflation phi: Y -> Z along theta: W -> Z."""
    if not (is_surjective(phi.psi1) and is_surjective(phi.psi0)):
        raise NotDeflation("components are not surjective over S")
    Y, W = phi.source, theta.source
    w = _require_same_omega(Y, W)
    y = Y.size
    k1 = free_kernel(hstack(phi.psi1, -theta.psi1))
    k0 = free_kernel(hstack(phi.psi0, -theta.psi0))
    e = solve_linear(k0, mat_direct_sum(Y.f, W.f) @ k1)
    E = mon_make(e, w)
    to_y = MonMorphism(E, Y, k1.row_block(0, y), k0.row_block(0, y))
    to_w = MonMorphism(E, W, k1.row_block(y, k1.rows), k0.row_block(y, k0.rows))
    return Pullback(E, to_y, to_w)


def find_retraction(m):
    """r with r o m == id_source (a morphism of Mon), or None."""
    X, E = m.source, m.target
    field = X.field
    a, b = X.size, E.size
    # unknowns vec(r1), vec(r0), each a x b
    Ia, Ib = LocalMatrix.identity(field, a), LocalMatrix.identity(field, b)
    # r0 e - f r1 = 0 ; r1 m1 = I ; r0 m0 = I
    row_sq = hstack(-kron(Ib, X.f), kron(E.f.T, Ia))
    row_1 = hstack(kron(m.psi1.T, Ia), LocalMatrix.zeros(field, a * a, a * b))
    row_0 = hstack(LocalMatrix.zeros(field, a * a, a * b), kron(m.psi0.T, Ia))
    A = vstack(row_sq, row_1, row_0)
    rhs = vstack(LocalMatrix.zeros(field, a * b, 1), vec(Ia), vec(Ia))
    sol = solve_linear(A, rhs)
    if sol is None:
        return None
    r1 = unvec(sol.row_block(0, a * b), a, b)
    r0 = unvec(sol.row_block(a * b, 2 * a * b), a, b)
    return MonMorphism(E, X, r1, r0)


# ---------------------------------------------------------------------------
# triangulated structure


def shift(X):
    """Cosyzygy: (P -f-> Q) |-> (Q -(-f_sigma)-> P)."""
    return mon_make(-sigma(X), X.omega)


def shift_morphism(m):
    """Shift of (psi1, psi0) is (psi0, psi1) between the shifted objects."""
    return MonMorphism(shift(m.source), shift(m.target), m.psi0, m.psi1)


@dataclass(frozen=True)
class Triangle:
    cone: MonObject
    to_cone: MonMorphism
    from_cone: MonMorphism


def cone(m):
    """Standard triangle X -> Y -> C -> shift(X) via the pushout of X -> I(X) along m."""
    X = m.source
    inj = injective_presentation(X)
    po = pushout_inflation(inj.inflation, m)
    s1, s0 = po.sections
    pi1, pi0 = inj.deflation.psi1, inj.deflation.psi0
    zero_part = LocalMatrix.zeros(X.field, X.size, m.target.size)
    h1 = hstack(pi1, zero_part) @ s1
    h0 = hstack(pi0, zero_part) @ s0
    return Triangle(po.E, po.from_z, MonMorphism(po.E, inj.right, h1, h0))


def stable_hom_dimension(X, Y):
    """dim_k of Hom(X, Y) modulo null-homotopic morphisms.

    Works in k[x]/(x^n): psi0 (mod omega) gives a morphism iff
    f_sigma' psi0 f == 0 (mod omega), and it is null-homotopic iff it lies in
    f' Mat + Mat f_sigma, a subspace containing omega * Mat.
    """
    w = _require_same_omega(X, Y)
    n = w.n
    field = X.field
    zero = field.zero
    a, b = X.size, Y.size
    if a == 0 or b == 0:
        return 0
    f = truncate_matrix(X.f, n)
    fs = truncate_matrix(sigma(X), n)
    fp = truncate_matrix(Y.f, n)
    fsp = truncate_matrix(sigma(Y), n)
    images = []
    null = []
    for i in range(b):
        for j in range(a):
            for d in range(n):
                E = unit_tmatrix(field, b, a, n, i, j, d)
                images.append(flatten(truncated_matmul(truncated_matmul(fsp, E, n, zero), f, n, zero)))
    hom_dim = a * b * n - field_rank(images, field)
    for i in range(b):
        for j in range(a):
            for d in range(n):
                E = unit_tmatrix(field, b, a, n, i, j, d)
                null.append(flatten(truncated_matmul(fp, E, n, zero)))
                null.append(flatten(truncated_matmul(E, fs, n, zero)))
    return hom_dim - field_rank(null, field)


def factor_through_projective(m, witness):
    """Factor a null-homotopic m: X -> Y through the injective hull I(X).

    Returns (u, v) with v o u == m; u is the inflation of
    injective_presentation(X), and v = ([psi1 - s0 f, s0], [s1, f' s0]).
    """
    X, Y = m.source, m.target
    s0, s1 = witness.s0, witness.s1
    inj = injective_presentation(X)
    v1 = hstack(m.psi1 - s0 @ X.f, s0)
    v0 = hstack(s1, Y.f @ s0)
    return inj.inflation, MonMorphism(inj.middle, Y, v1, v0)
