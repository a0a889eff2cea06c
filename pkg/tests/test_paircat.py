import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import M, W, config_omegas
from matfac import moncat
from matfac.errors import OmegaMismatch, ProductNotOmega, SquareNotCommuting
from matfac.generators import random_conflation, random_morphism, random_object, random_unit_matrix
from matfac.linalg import LocalMatrix
from matfac.paircat import (
    atom,
    functor_F,
    functor_F_inverse,
    functor_F_morphism,
    pair_cone,
    pair_decompose,
    pair_direct_sum,
    pair_identity,
    pair_is_null_homotopic,
    pair_make,
    pair_morphism,
    pair_shift,
    pair_shift_morphism,
    pair_stable_hom_dimension,
)
from matfac.ring import QQ, LocalScalar


def P(r1, r0, w):
    return pair_make(M(r1), M(r0), W(w))


def test_pair_make_examples():
    P("[[x]]", "[[x]]", "x^2")
    P("[[1]]", "[[x^2]]", "x^2")
    with pytest.raises(ProductNotOmega) as e:
        P("[[x]]", "[[x]]", "x^3")
    assert e.value.residual == M("[[x^2 - x^3]]")


def test_functor_F_examples():
    w = W("x^2")
    assert functor_F(moncat.mon_make(M("[[1]]"), w)) == P("[[1]]", "[[x^2]]", "x^2")
    assert functor_F(moncat.mon_make(M("[[x^2]]"), w)) == P("[[x^2]]", "[[1]]", "x^2")
    assert functor_F(moncat.mon_make(M("[[x]]"), w)) == P("[[x]]", "[[x]]", "x^2")
    assert functor_F_inverse(P("[[x]]", "[[x]]", "x^2")).f == M("[[x]]")
    assert functor_F_inverse(P("[[1]]", "[[x^2]]", "x^2")).f == M("[[1]]")


def test_pair_null_homotopy_examples():
    Q = P("[[x, 1], [0, x]]", "[[x, -1], [0, x]]", "x^2")
    w = Q.omega.omega
    m = pair_morphism(Q, Q, LocalMatrix.scalar(QQ, w, 2), LocalMatrix.scalar(QQ, w, 2))
    wit = pair_is_null_homotopic(m)
    assert wit is not None
    assert m.psi0 == Q.rho1 @ wit.s0 + wit.s1 @ Q.rho0
    assert m.psi1 == wit.s0 @ Q.rho1 + Q.rho0 @ wit.s1
    assert pair_is_null_homotopic(pair_identity(P("[[1]]", "[[x^2]]", "x^2"))) is not None
    assert pair_is_null_homotopic(pair_identity(P("[[x]]", "[[x]]", "x^2"))) is None


def test_pair_morphism_validation():
    A = P("[[x]]", "[[x^2]]", "x^3")
    B = P("[[x^2]]", "[[x]]", "x^3")
    with pytest.raises(SquareNotCommuting):
        pair_morphism(A, B, M("[[1]]"), M("[[1]]"))
    pair_morphism(A, B, M("[[1]]"), M("[[x]]"))


def test_shift_examples():
    A = P("[[x]]", "[[x]]", "x^2")
    assert pair_shift(A) == P("[[-x]]", "[[-x]]", "x^2")
    assert pair_shift(pair_shift(A)) == A
    assert functor_F(moncat.shift(functor_F_inverse(A))) == pair_shift(A)


def test_decompose_examples():
    assert pair_decompose(P("[[x, 0], [0, x^2]]", "[[x^2, 0], [0, x]]", "x^3")) == (1, 2)
    assert pair_decompose(functor_F(moncat.mon_make(M("[[x, 1], [0, x^2]]"), W("x^3")))) == (0, 3)
    assert pair_decompose(functor_F(moncat.standard_projective(2, 1, W("x^2")))) == (0, 0, 2)


def test_stable_hom_examples():
    A = P("[[x]]", "[[x]]", "x^2")
    assert pair_stable_hom_dimension(A, A) == 1
    assert pair_stable_hom_dimension(A, P("[[1]]", "[[x^2]]", "x^2")) == 0
    assert pair_stable_hom_dimension(P("[[x]]", "[[x^2]]", "x^3"), P("[[x^2]]", "[[x]]", "x^3")) == 1
    with pytest.raises(OmegaMismatch):
        pair_stable_hom_dimension(A, P("[[x]]", "[[x^2]]", "x^3"))


def test_cone_examples():
    A = P("[[x]]", "[[x]]", "x^2")
    assert pair_decompose(pair_cone(pair_identity(A)).cone) == (0, 2)
    zero = pair_morphism(A, A, M("[[0]]"), M("[[0]]"))
    C = pair_cone(zero).cone
    D = pair_direct_sum(A, pair_shift(A))
    assert pair_stable_hom_dimension(C, C) == pair_stable_hom_dimension(D, D) == 4
    # multiplication by x on (x, x) over x^2 is null-homotopic, so its cone is split
    mx = pair_morphism(A, A, M("[[x]]"), M("[[x]]"))
    assert pair_is_null_homotopic(mx) is not None
    Cx = pair_cone(mx).cone
    assert pair_stable_hom_dimension(Cx, Cx) == pair_stable_hom_dimension(D, D)


def test_atoms():
    w = W("x^4 + x^5")
    for a in range(5):
        At = atom(a, w)
        assert At.rho1 @ At.rho0 == LocalMatrix.scalar(QQ, w.omega, 1)


# -- properties -------------------------------------------------------------


def _pair_objects(seed, count=2, bound=3):
    rng = random.Random(seed)
    w = config_omegas()[seed % 4]
    return rng, [functor_F(random_object(rng, w, bound)) for _ in range(count)]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_validation_equivalence(seed):
    _, (A,) = _pair_objects(seed, 1)
    X = functor_F_inverse(A)
    assert moncat.sigma(moncat.mon_make(A.rho1, A.omega)) == A.rho0
    assert functor_F(X) == A
    with pytest.raises(ProductNotOmega):
        pair_make(A.rho1, A.rho0 + LocalMatrix.identity(A.field, A.size), A.omega)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_F_fully_faithful_on_stable_homs(seed):
    _, (A, B) = _pair_objects(seed)
    X, Y = functor_F_inverse(A), functor_F_inverse(B)
    assert moncat.stable_hom_dimension(X, Y) == pair_stable_hom_dimension(A, B)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_F_transports_null_homotopy(seed):
    rng, (A, B) = _pair_objects(seed, 2, 2)
    X, Y = functor_F_inverse(A), functor_F_inverse(B)
    m = random_morphism(rng, X, Y)
    pm = functor_F_morphism(m)
    pair_morphism(pm.source, pm.target, pm.psi1, pm.psi0)  # validates both squares
    assert (moncat.is_null_homotopic(m) is None) == (pair_is_null_homotopic(pm) is None)
    sm = pair_shift_morphism(pm)
    pair_morphism(sm.source, sm.target, sm.psi1, sm.psi0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_F_is_exact(seed):
    rng = random.Random(seed)
    w = config_omegas()[seed % 4]
    c = random_conflation(rng, w, 2)
    for m in (c.inflation, c.deflation):
        pm = functor_F_morphism(m)
        pair_morphism(pm.source, pm.target, pm.psi1, pm.psi0)
    assert (c.deflation.psi0 @ c.inflation.psi0).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_krull_schmidt(seed, exps):
    rng = random.Random(seed)
    w = W("x^4")
    exps = sorted(exps)
    D = LocalMatrix.diag(QQ, [LocalScalar.x_power(QQ, a) for a in exps])
    U, V = random_unit_matrix(rng, QQ, len(exps)), random_unit_matrix(rng, QQ, len(exps))
    A = functor_F(moncat.mon_make(U @ D @ V, w))
    assert pair_decompose(A) == tuple(exps)
    B = atom(rng.randint(0, 4), w)
    assert pair_decompose(pair_direct_sum(A, B)) == tuple(sorted(exps + list(pair_decompose(B))))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_pair_cone_triangle(seed):
    rng, (A, B) = _pair_objects(seed, 2, 2)
    m = functor_F_morphism(random_morphism(rng, functor_F_inverse(A), functor_F_inverse(B)))
    tri = pair_cone(m)
    for g in (tri.to_cone, tri.from_cone):
        pair_morphism(g.source, g.target, g.psi1, g.psi0)
    assert tri.from_cone.target == pair_shift(A)
