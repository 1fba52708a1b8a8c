"""Conjugate-linear perturbation: component formulas, adjoint, defect, examples."""

import random

import pytest

from cldirac import (
    ANTISYMMETRIC,
    ChiralityError,
    DegreeError,
    EVEN,
    FiberContext,
    GENERAL,
    ODD,
    PhiMap,
    SYMMETRIC,
    Spinor,
    apply_A,
    apply_A_adjoint,
    concentrating_defect,
    example_phi,
    matched_class,
    monomial,
    opposite_class,
    random_covector,
    random_phi,
    random_spinor,
    scalar_form,
    singular_verdict,
)
from cldirac.fiber import random_nonzero_covector
from cldirac.perturbation import random_nonzero_phi
from cldirac.scalars import ExactComplex, is_zero


def test_phimap_symmetry_validation():
    ctx = FiberContext(1)
    one = ExactComplex(1)
    with pytest.raises(ValueError):
        PhiMap(ctx, 2, ((0, one), (one, 0)), declared_class=ANTISYMMETRIC)
    with pytest.raises(ValueError):
        PhiMap(ctx, 2, ((0, one), (-one, one)), declared_class=SYMMETRIC)
    with pytest.raises(ValueError):
        PhiMap(ctx, 1, ((one,),), eta_scalar=ExactComplex(2))


def test_apply_A_component_formula():
    # n=1, r=1: A(u * 1 (x) e) = -conj(w u) thb1 (x) e
    ctx = FiberContext(1)
    w = ExactComplex(2, 1)
    u = ExactComplex(1, 3)
    phi = PhiMap(ctx, 1, ((w,),), declared_class=SYMMETRIC)
    out = apply_A(phi, Spinor(ctx, [scalar_form(ctx, u)]))
    assert out.chirality == ODD
    assert out.parts[0] == monomial(ctx, (), (1,), -(w * u).conjugate())


def test_apply_A_zero_map():
    ctx = FiberContext(3)
    phi = PhiMap(ctx, 2, ((0, 0), (0, 0)), declared_class=SYMMETRIC)
    z = random_spinor(ctx, 2, EVEN, seed=5)
    assert apply_A(phi, z).is_zero()


def test_apply_A_isometry_unit_rank_one():
    # |w| = 1, r = 1: <A z, A z> = <z, z>, and A(A(z)) = -z via tau^2 = -1
    from fractions import Fraction
    ctx = FiberContext(1)
    w = ExactComplex(Fraction(3, 5), Fraction(4, 5))
    phi = PhiMap(ctx, 1, ((w,),), declared_class=SYMMETRIC)
    z = Spinor(ctx, [scalar_form(ctx, ExactComplex(1))])
    az = apply_A(phi, z)
    assert az.norm_sq() == z.norm_sq()
    assert (apply_A(phi, az) + z).is_zero()


def test_apply_A_rejects_even_dimension():
    ctx = FiberContext(2)
    phi = PhiMap(ctx, 1, ((ExactComplex(1),),), declared_class=SYMMETRIC)
    with pytest.raises(DegreeError):
        apply_A(phi, Spinor(ctx, [scalar_form(ctx, 1)]))


def test_apply_A_rejects_mixed_chirality():
    ctx = FiberContext(1)
    phi = PhiMap(ctx, 1, ((ExactComplex(1),),), declared_class=SYMMETRIC)
    mixed = Spinor(ctx, [scalar_form(ctx, 1) + monomial(ctx, (), (1,))])
    with pytest.raises(ChiralityError):
        apply_A(phi, mixed)


def test_apply_A_adjoint_component_formula():
    # n=1, r=1: A*(v thb1 (x) e) = -conj(w v) 1 (x) e
    ctx = FiberContext(1)
    w = ExactComplex(-1, 2)
    v = ExactComplex(3, 1)
    phi = PhiMap(ctx, 1, ((w,),), declared_class=SYMMETRIC)
    out = apply_A_adjoint(phi, Spinor(ctx, [monomial(ctx, (), (1,), v)]))
    assert out.chirality == EVEN
    assert out.parts[0] == scalar_form(ctx, -(w * v).conjugate())


def test_adjoint_relation_exact():
    rng = random.Random(61)
    for n in (1, 3):
        ctx = FiberContext(n)
        for r in (1, 2, 3):
            for _ in range(15):
                phi = random_phi(ctx, r, GENERAL, rng)
                x = random_spinor(ctx, r, EVEN, rng)
                y = random_spinor(ctx, r, ODD, rng)
                assert apply_A(phi, x).real_inner(y) == x.real_inner(apply_A_adjoint(phi, y))


def test_chirality_exchange_odd_dimension():
    for n in (1, 3):
        ctx = FiberContext(n)
        phi = random_phi(ctx, 2, matched_class(n), seed=1)
        z = random_spinor(ctx, 2, EVEN, seed=2)
        assert apply_A(phi, z).chirality == ODD
        zo = random_spinor(ctx, 2, ODD, seed=3)
        assert apply_A(phi, zo).chirality == EVEN


def test_defect_zero_for_matched_class():
    rng = random.Random(67)
    for n in (1, 3):
        ctx = FiberContext(n)
        cls = matched_class(n)
        for r in (1, 2, 3):
            for _ in range(10):
                phi = random_phi(ctx, r, cls, rng)
                g = random_covector(ctx, rng)
                assert concentrating_defect(phi, g) == 0.0


def test_defect_nonzero_for_wrong_class():
    rng = random.Random(71)
    for n in (1, 3):
        ctx = FiberContext(n)
        cls = opposite_class(n)
        r0 = 2 if cls == ANTISYMMETRIC else 1
        for _ in range(20):
            phi = random_nonzero_phi(ctx, r0 + (_ % 2), cls, rng)
            g = random_nonzero_covector(ctx, rng)
            assert concentrating_defect(phi, g) > 0.0


def test_defect_rejects_even_dimension():
    ctx = FiberContext(2)
    phi = PhiMap(ctx, 1, ((ExactComplex(1),),))
    with pytest.raises(DegreeError):
        concentrating_defect(phi, random_covector(ctx, 1))


def test_singular_verdict_odd_antisymmetric():
    rng = random.Random(73)
    ctx = FiberContext(1)
    for r in (1, 3, 5):
        for _ in range(10):
            phi = random_phi(ctx, r, ANTISYMMETRIC, rng)
            assert singular_verdict(phi).is_singular


def test_singular_verdict_unit():
    ctx = FiberContext(1)
    verdict = singular_verdict(PhiMap(ctx, 1, ((ExactComplex(1),),)))
    assert verdict.det_value == 1 and not verdict.is_singular


def test_singular_verdict_2x2_antisymmetric():
    ctx = FiberContext(1)
    c = ExactComplex(2, -1)
    phi = PhiMap(ctx, 2, ((0, c), (-c, 0)), declared_class=ANTISYMMETRIC)
    verdict = singular_verdict(phi)
    assert verdict.det_value == c * c
    assert not verdict.is_singular
    zero = PhiMap(ctx, 2, ((0, 0), (0, 0)), declared_class=ANTISYMMETRIC)
    assert singular_verdict(zero).is_singular


def test_singular_verdict_float_mode():
    ctx = FiberContext(1, "float")
    phi = PhiMap(ctx, 2, ((1 + 0j, 2 + 0j), (2 + 0j, 4 + 0j)),
                 declared_class=SYMMETRIC)
    assert singular_verdict(phi).is_singular
    phi2 = PhiMap(ctx, 2, ((1 + 0j, 0j), (0j, 1 + 0j)), declared_class=SYMMETRIC)
    assert not singular_verdict(phi2).is_singular


def test_example_trace_pairing():
    ctx = FiberContext(1)
    phi = example_phi(ctx, "trace_pairing", 2)
    assert phi.r == 4 and phi.declared_class == SYMMETRIC
    # tr(E_ab E_cd) = delta_bc delta_ad in the row-major elementary basis
    expected = {(0, 0), (1, 2), (2, 1), (3, 3)}
    nonzero = {(i, j) for i in range(4) for j in range(4)
               if not is_zero(phi.entries[i][j])}
    assert nonzero == expected
    assert not singular_verdict(phi).is_singular


def test_example_symplectic_double():
    ctx = FiberContext(3)
    phi = example_phi(ctx, "symplectic_double", 1)
    assert phi.r == 2 and phi.declared_class == ANTISYMMETRIC
    assert phi.entries[0][1] == 1 and phi.entries[1][0] == -1
    assert singular_verdict(phi).det_value == 1


def test_example_metric_gc():
    ctx = FiberContext(2)
    phi = example_phi(ctx, "metric_gc")
    assert phi.r == 4 and phi.declared_class == SYMMETRIC
    for a in range(2):
        assert phi.entries[a][2 + a] == 1 and phi.entries[2 + a][a] == 1
    assert not singular_verdict(phi).is_singular


def test_example_omega_c():
    ctx = FiberContext(3)
    phi = example_phi(ctx, "omega_c")
    assert phi.r == 6 and phi.declared_class == ANTISYMMETRIC
    assert not singular_verdict(phi).is_singular
    # matched class for n = 3: the example satisfies the cancellation
    g = random_covector(ctx, 5)
    assert concentrating_defect(phi, g) == 0.0


def test_example_invalid_rank():
    ctx = FiberContext(1)
    with pytest.raises(ValueError):
        example_phi(ctx, "trace_pairing", 0)
    with pytest.raises(ValueError):
        example_phi(ctx, "unknown_kind")


def test_random_eta_scalar_invariance():
    # identities are invariant under the unit framing scalar
    rng = random.Random(79)
    ctx = FiberContext(1)
    for _ in range(10):
        phi = random_phi(ctx, 2, SYMMETRIC, rng, random_eta=True)
        g = random_covector(ctx, rng)
        assert concentrating_defect(phi, g) == 0.0
