"""Seeded random objects, morphisms and conflations.

Objects are diag(x^a_i) conjugated by unit matrices, so validity holds by
construction; inflations and deflations are built from split sequences and
presentations, conjugated by automorphisms of the middle term.
"""

from __future__ import annotations

from .linalg import (
    LocalMatrix,
    field_kernel,
    flatten,
    invert,
    lift_tmatrix,
    truncate_matrix,
    truncated_matmul,
    unit_tmatrix,
)
from .moncat import (
    MonMorphism,
    conflation_from_deflation,
    conflation_from_inflation,
    injections,
    injective_presentation,
    mon_make,
    projections,
    projective_presentation,
    pullback_deflation,
    pushout_inflation,
    sigma,
)
from .ring import LocalScalar, scalar_normalize


def random_coeff(rng, field, lo=-2, hi=2):
    return field(rng.randint(lo, hi))


def random_scalar(rng, field, max_deg=1, fraction_prob=0.1):
    num = [random_coeff(rng, field) for _ in range(max_deg + 1)]
    if rng.random() < fraction_prob:
        c = random_coeff(rng, field)
        den = [field.one, c if c else field.one]
        return scalar_normalize(num, den, field)
    return LocalScalar.poly(field, num)


def random_unit_constant(rng, field):
    while True:
        c = random_coeff(rng, field, -3, 3)
        if c:
            return LocalScalar.const(field, c)


def random_unit_matrix(rng, field, m, max_deg=1):
    """Permutation x unipotent lower x unipotent upper x constant diagonal."""
    zero = LocalScalar.zero(field)
    one = LocalScalar.one(field)
    L = [[one if i == j else (random_scalar(rng, field, max_deg) if i > j else zero) for j in range(m)] for i in range(m)]
    U = [[one if i == j else (random_scalar(rng, field, max_deg) if i < j else zero) for j in range(m)] for i in range(m)]
    perm = list(range(m))
    rng.shuffle(perm)
    P = [[one if perm[i] == j else zero for j in range(m)] for i in range(m)]
    D = LocalMatrix.diag(field, [random_unit_constant(rng, field) for _ in range(m)])
    return LocalMatrix(field, P, m, m) @ LocalMatrix(field, L, m, m) @ LocalMatrix(field, U, m, m) @ D


def random_exponents(rng, n, size):
    return sorted(rng.randint(0, n) for _ in range(size))


def object_from_exponents(w, exps):
    field = w.field
    return mon_make(LocalMatrix.diag(field, [LocalScalar.x_power(field, a) for a in exps]), w)


def random_object(rng, w, size_bound, min_size=1, exponents=None):
    field = w.field
    if exponents is None:
        size = rng.randint(min_size, size_bound)
        exponents = random_exponents(rng, w.n, size)
    size = len(exponents)
    D = LocalMatrix.diag(field, [LocalScalar.x_power(field, a) for a in exponents])
    if size == 0:
        return mon_make(D, w)
    f = random_unit_matrix(rng, field, size) @ D @ random_unit_matrix(rng, field, size)
    return mon_make(f, w)


def hom_basis(X, Y):
    """k-basis (as truncated psi0 matrices) of Hom(X, Y) modulo omega."""
    n = X.omega.n
    field = X.field
    zero = field.zero
    f = truncate_matrix(X.f, n)
    fsp = truncate_matrix(sigma(Y), n)
    units = []
    images = []
    for i in range(Y.size):
        for j in range(X.size):
            for d in range(n):
                E = unit_tmatrix(field, Y.size, X.size, n, i, j, d)
                units.append(E)
                images.append(flatten(truncated_matmul(truncated_matmul(fsp, E, n, zero), f, n, zero)))
    basis = []
    for coeffs in field_kernel(images, field):
        blank = [[[zero] * n for _ in range(X.size)] for _ in range(Y.size)]
        for c, E in zip(coeffs, units):
            if c:
                for i in range(Y.size):
                    for j in range(X.size):
                        for d in range(n):
                            if E[i][j][d]:
                                blank[i][j][d] = blank[i][j][d] + c * E[i][j][d]
        basis.append([[tuple(e) for e in row] for row in blank])
    return basis


def random_morphism(rng, X, Y, basis=None):
    """A random element of Hom(X, Y): psi0 random in the k-span plus omega * R."""
    field = X.field
    w = X.omega
    if X.size == 0 or Y.size == 0:
        Z = LocalMatrix.zeros(field, Y.size, X.size)
        return MonMorphism(X, Y, Z, Z)
    if basis is None:
        basis = hom_basis(X, Y)
    zero = field.zero
    n = w.n
    acc = [[[zero] * n for _ in range(X.size)] for _ in range(Y.size)]
    for B in basis:
        c = random_coeff(rng, field)
        if c:
            for i in range(Y.size):
                for j in range(X.size):
                    for d in range(n):
                        acc[i][j][d] = acc[i][j][d] + c * B[i][j][d]
    psi0 = lift_tmatrix(field, acc)
    if rng.random() < 0.5:
        R = LocalMatrix(field, [[random_scalar(rng, field) for _ in range(X.size)] for _ in range(Y.size)])
        psi0 = psi0 + R.scale(w.omega)
    psi1 = (sigma(Y) @ psi0 @ X.f).divide_exact(w.omega)
    return MonMorphism(X, Y, psi1, psi0)


def conjugate_middle(rng, m, into=True):
    """Transport m through a random automorphism (A1, A0) of its middle term.

    For into=True m ends in the middle term, otherwise it starts there.
    """
    M = m.target if into else m.source
    field = M.field
    A1 = random_unit_matrix(rng, field, M.size)
    A0 = random_unit_matrix(rng, field, M.size)
    g = A0 @ M.f @ invert(A1)
    N = mon_make(g, M.omega)
    if into:
        return MonMorphism(m.source, N, A1 @ m.psi1, A0 @ m.psi0)
    return MonMorphism(N, m.target, m.psi1 @ invert(A1), m.psi0 @ invert(A0))


def random_inflation(rng, X, size_bound):
    kind = rng.choice(("split", "injective", "split"))
    w = X.omega
    if kind == "split":
        W = random_object(rng, w, size_bound, min_size=0)
        phi = injections(X, W)[0]
    else:
        phi = injective_presentation(X).inflation
    return conjugate_middle(rng, phi, into=True)


def random_deflation(rng, X, size_bound):
    kind = rng.choice(("split", "projective", "split"))
    w = X.omega
    if kind == "split":
        W = random_object(rng, w, size_bound, min_size=0)
        d = projections(X, W)[0]
    else:
        d = projective_presentation(X).deflation
    return conjugate_middle(rng, d, into=False)


def random_conflation(rng, w, size_bound):
    kind = rng.choice(("inflation", "deflation", "pushout", "pullback"))
    if kind == "inflation":
        X = random_object(rng, w, size_bound)
        return conflation_from_inflation(random_inflation(rng, X, size_bound))
    if kind == "deflation":
        X = random_object(rng, w, size_bound)
        return conflation_from_deflation(random_deflation(rng, X, size_bound))
    if kind == "pushout":
        Z = random_object(rng, w, size_bound)
        Y = random_object(rng, w, size_bound)
        po = pushout_inflation(injective_presentation(Z).inflation, random_morphism(rng, Z, Y))
        return conflation_from_inflation(po.from_z)
    Z = random_object(rng, w, size_bound)
    W = random_object(rng, w, size_bound)
    pb = pullback_deflation(projective_presentation(Z).deflation, random_morphism(rng, W, Z))
    return conflation_from_deflation(pb.to_w)

