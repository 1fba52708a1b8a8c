"""Exterior fiber algebra: wedge, contraction, inner product, randomness."""

import random

import pytest

from cldirac import (
    ContextMismatchError,
    Covector,
    DegreeError,
    FiberContext,
    contract,
    inner,
    monomial,
    random_covector,
    random_form,
    scalar_form,
    wedge,
)
from cldirac.fiber import random_unit_scalar
from cldirac.scalars import ExactComplex, is_zero


@pytest.fixture
def ctx2():
    return FiberContext(2)


def test_wedge_basis_product():
    ctx = FiberContext(1)
    th = monomial(ctx, (1,), ())
    thb = monomial(ctx, (), (1,))
    assert wedge(th, thb) == monomial(ctx, (1,), (1,))
    assert wedge(thb, th) == monomial(ctx, (1,), (1,), -1)


def test_wedge_bilinear_expansion(ctx2):
    t1 = monomial(ctx2, (1,), ())
    t2 = monomial(ctx2, (2,), ())
    assert wedge(t1 + t2, t1 - t2) == monomial(ctx2, (1, 2), (), -2)


def test_wedge_context_mismatch():
    a = scalar_form(FiberContext(2), 1)
    b = scalar_form(FiberContext(3), 1)
    with pytest.raises(ContextMismatchError):
        wedge(a, b)
    with pytest.raises(ContextMismatchError):
        wedge(scalar_form(FiberContext(2), 1),
              scalar_form(FiberContext(2, "float"), 1))


def test_graded_anticommutativity_random():
    rng = random.Random(5)
    for n in (1, 2, 3, 4):
        ctx = FiberContext(n)
        for _ in range(40):
            px, qx = rng.randint(0, n), rng.randint(0, n)
            py, qy = rng.randint(0, n), rng.randint(0, n)
            x = random_form(ctx, px, qx, rng)
            y = random_form(ctx, py, qy, rng)
            sign = -1 if ((px + qx) * (py + qy)) % 2 else 1
            assert (wedge(x, y) - wedge(y, x).scale(sign)).is_zero()


def test_contract_single_index():
    ctx = FiberContext(1)
    g = Covector(ctx, (1,))
    assert contract(g, monomial(ctx, (), (1,))) == scalar_form(ctx, 1)


def test_contract_scalar_annihilation(ctx2):
    g = random_covector(ctx2, 3)
    assert contract(g, scalar_form(ctx2, 5)).is_zero()


def test_contract_antiderivation_sign(ctx2):
    g = Covector(ctx2, (0, 1))
    x = monomial(ctx2, (), (1, 2))
    assert contract(g, x) == monomial(ctx2, (), (1,), -1)


def test_contract_conjugate_linear_in_covector():
    ctx = FiberContext(1)
    g = Covector(ctx, (ExactComplex(0, 1),))  # a = i
    # contraction uses conj(a), so the result is -i
    assert contract(g, monomial(ctx, (), (1,))) == scalar_form(ctx, ExactComplex(0, -1))


def test_contract_passes_theta_block():
    ctx = FiberContext(1)
    g = Covector(ctx, (1,))
    x = monomial(ctx, (1,), (1,))
    assert contract(g, x) == monomial(ctx, (1,), (), -1)


def test_double_contraction_zero():
    rng = random.Random(11)
    ctx = FiberContext(3)
    for _ in range(30):
        g = random_covector(ctx, rng)
        x = random_form(ctx, rng.randint(0, 3), rng.randint(0, 3), rng)
        assert contract(g, contract(g, x)).is_zero()


def test_inner_orthonormal_basis(ctx2):
    b = monomial(ctx2, (1,), (2,))
    assert inner(b, b) == 1
    th = monomial(ctx2, (1,), ())
    thb = monomial(ctx2, (), (1,))
    assert is_zero(inner(th, thb))


def test_inner_sesquilinear(ctx2):
    x = monomial(ctx2, (1,), ())
    c = ExactComplex(2, 1)
    assert inner(x.scale(c), x) == c
    assert inner(x, x.scale(c)) == c.conjugate()


def test_adjunction_random_triples():
    rng = random.Random(7)
    for n in (1, 2, 3):
        ctx = FiberContext(n)
        for _ in range(50):
            p = rng.randint(0, n - 1)
            a = random_form(ctx, 0, p, rng)
            b = random_form(ctx, 0, p + 1, rng)
            g = random_covector(ctx, rng)
            assert inner(wedge(g.part01(), a), b) == inner(a, contract(g, b))


def test_covector_norm():
    ctx = FiberContext(2)
    g = Covector(ctx, (ExactComplex(1), ExactComplex(0, 1)))
    assert g.norm_sq() == 4  # 2 * (1 + 1)
    # matches the hermitian norm of the two parts
    total = inner(g.part01(), g.part01()) + inner(g.part10(), g.part10())
    assert g.norm_sq() == total


def test_random_form_deterministic():
    ctx = FiberContext(2)
    assert random_form(ctx, 0, 1, seed=7) == random_form(ctx, 0, 1, seed=7)


def test_random_form_range_error():
    ctx = FiberContext(2)
    with pytest.raises(DegreeError):
        random_form(ctx, 3, 0, seed=1)


def test_random_form_term_bound():
    f = random_form(FiberContext(3), 0, 2, seed=1)
    assert f.num_terms() <= 3  # C(3, 2)


def test_random_unit_scalar_exact():
    ctx = FiberContext(2)
    for seed in range(10):
        u = random_unit_scalar(ctx, seed)
        assert u * u.conjugate() == 1


def test_form_purity_queries():
    ctx = FiberContext(2)
    pure = monomial(ctx, (1,), (2,))
    assert pure.bidegree() == (1, 1)
    mixed = pure + scalar_form(ctx, 1)
    assert not mixed.is_pure()
    with pytest.raises(DegreeError):
        mixed.bidegree()


def test_form_conjugate_involution():
    rng = random.Random(2)
    ctx = FiberContext(3)
    for _ in range(20):
        x = random_form(ctx, rng.randint(0, 3), rng.randint(0, 3), rng)
        assert x.conjugate().conjugate() == x


def test_float_mode_smoke():
    ctx = FiberContext(2, "float")
    x = random_form(ctx, 0, 1, seed=4)
    y = random_form(ctx, 0, 1, seed=5)
    g = random_covector(ctx, 6)
    lhs = inner(wedge(g.part01(), x), y)
    rhs = inner(x, contract(g, y))
    assert abs(lhs - rhs) < 1e-12


def test_exact_mode_rejects_floats():
    ctx = FiberContext(1)
    with pytest.raises(TypeError):
        scalar_form(ctx, 0.5)
