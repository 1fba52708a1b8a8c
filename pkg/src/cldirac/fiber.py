"""Exterior algebra of the model fiber C^n in a fixed unitary coframe.

A form is a sparse sum of basis monomials th^I ^ thb^J, where I and J are
strictly increasing subsets of {1..n}, th^1..th^n is a unitary coframe of
the (1,0) part and thb^i its conjugate.  The basis monomials are orthonormal
for the hermitian inner product <x, y> (conjugate-linear in y).

A real covector gamma is stored through the coefficients a_i of its (0,1)
part gamma^{0,1} = sum a_i thb^i; the (1,0) part sum conj(a_i) th^i is forced
by conjugation and never stored.

Everything here is an immutable value and every operation is a pure
function, so trial sweeps can share objects freely across threads.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .scalars import (
    EC_I,
    EC_ONE,
    EC_SQRT2,
    EC_ZERO,
    ExactComplex,
    SQRT2_FLOAT,
    conj,
    is_zero,
    scalar_text,
)

EXACT = "exact"
FLOAT = "float"


class ContextMismatchError(ValueError):
    """Operands built under different fiber contexts."""


class DegreeError(ValueError):
    """Bidegree out of range, impure input, or mismatched degrees."""


class ChiralityError(ValueError):
    """Spinor chirality missing, inconsistent, or incompatible."""


@dataclass(frozen=True)
class FiberContext:
    """Model fiber C^n with a declared scalar mode ('exact' or 'float')."""

    n: int
    mode: str = EXACT

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"complex dimension must be >= 1, got {self.n}")
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown scalar mode {self.mode!r}")

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    # -- scalar factory -----------------------------------------------------

    def coerce(self, x):
        if self.is_exact:
            if isinstance(x, ExactComplex):
                return x
            if isinstance(x, (int, Fraction)):
                return ExactComplex(x)
            raise TypeError(
                f"exact-mode scalars must be rational, got {type(x).__name__}")
        if isinstance(x, ExactComplex):
            return x.to_complex()
        if isinstance(x, (int, float, complex, Fraction)):
            return complex(x)
        raise TypeError(f"cannot use {type(x).__name__} as a scalar")

    @property
    def zero(self):
        return EC_ZERO if self.is_exact else 0j

    @property
    def one(self):
        return EC_ONE if self.is_exact else 1 + 0j

    @property
    def i(self):
        return EC_I if self.is_exact else 1j

    @property
    def sqrt2(self):
        return EC_SQRT2 if self.is_exact else complex(SQRT2_FLOAT)

    def rational(self, num, den=1):
        if self.is_exact:
            return ExactComplex(Fraction(num, den))
        return complex(num / den)

    def cnum(self, re, im=0):
        """Complex scalar with rational (or float-mode float) parts."""
        if self.is_exact:
            return ExactComplex(_as_frac(re), _as_frac(im))
        return complex(re, im)

    def ipow(self, e: int):
        """i**e as a context scalar."""
        e %= 4
        if self.is_exact:
            return (EC_ONE, EC_I, -EC_ONE, -EC_I)[e]
        return (1 + 0j, 1j, -1 - 0j, -1j)[e]


def _as_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


def _same_ctx(a: FiberContext, b: FiberContext):
    if a != b:
        raise ContextMismatchError(f"context mismatch: {a} vs {b}")


def _check_index_tuple(t, n):
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise ValueError(f"index tuple {t} not strictly increasing")
    if t and (t[0] < 1 or t[-1] > n):
        raise ValueError(f"index tuple {t} out of range 1..{n}")


def _merge(a: tuple, b: tuple):
    """Merge two strictly increasing tuples; returns (inversions, merged)
    or None when they overlap."""
    if not a:
        return 0, b
    if not b:
        return 0, a
    i = j = inv = 0
    la, lb = len(a), len(b)
    out = []
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            return None
        if x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
            inv += la - i
    out.extend(a[i:])
    out.extend(b[j:])
    return inv, tuple(out)


def _term_sort_key(key):
    (ti, tj) = key
    return (len(ti), ti, len(tj), tj)


class Form:
    """Sparse element of the complexified exterior algebra of the fiber."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: FiberContext, terms=None):
        canon = {}
        if terms:
            n = ctx.n
            for (ti, tj), c in terms.items():
                _check_index_tuple(ti, n)
                _check_index_tuple(tj, n)
                c = ctx.coerce(c)
                if not is_zero(c):
                    canon[(tuple(ti), tuple(tj))] = c
        self.ctx = ctx
        self._terms = canon

    # -- inspection ---------------------------------------------------------

    def items(self):
        """Deterministically ordered (key, coefficient) pairs."""
        return sorted(self._terms.items(), key=lambda kv: _term_sort_key(kv[0]))

    def coeff(self, ti, tj):
        return self._terms.get((tuple(ti), tuple(tj)), self.ctx.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def num_terms(self) -> int:
        return len(self._terms)

    def is_pure(self) -> bool:
        degs = {(len(ti), len(tj)) for ti, tj in self._terms}
        return len(degs) <= 1

    def bidegree(self):
        """(p, q) of a pure nonzero form."""
        degs = {(len(ti), len(tj)) for ti, tj in self._terms}
        if len(degs) != 1:
            raise DegreeError("form is zero or of mixed bidegree")
        return degs.pop()

    def total_degree(self) -> int:
        degs = {len(ti) + len(tj) for ti, tj in self._terms}
        if len(degs) != 1:
            raise DegreeError("form is zero or of mixed total degree")
        return degs.pop()

    def bidegree_components(self):
        out = {}
        for key, c in self._terms.items():
            deg = (len(key[0]), len(key[1]))
            out.setdefault(deg, {})[key] = c
        return {deg: Form(self.ctx, t) for deg, t in sorted(out.items())}

    def degree_components(self):
        out = {}
        for key, c in self._terms.items():
            out.setdefault(len(key[0]) + len(key[1]), {})[key] = c
        return {k: Form(self.ctx, t) for k, t in sorted(out.items())}

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        _same_ctx(self.ctx, other.ctx)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            acc = terms.get(key)
            terms[key] = c if acc is None else acc + c
        return Form(self.ctx, terms)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Form(self.ctx, {k: -c for k, c in self._terms.items()})

    def scale(self, c):
        c = self.ctx.coerce(c)
        return Form(self.ctx, {k: v * c for k, v in self._terms.items()})

    def __rmul__(self, other):
        if isinstance(other, Form):
            return NotImplemented
        return self.scale(other)

    def conjugate(self):
        """Structural conjugation th <-> thb with conjugated coefficients."""
        terms = {}
        for (ti, tj), c in self._terms.items():
            sign = (len(ti) * len(tj)) % 2
            val = conj(c)
            terms[(tj, ti)] = -val if sign else val
        return Form(self.ctx, terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    __hash__ = None

    # -- display ------------------------------------------------------------

    @staticmethod
    def _key_text(key):
        ti, tj = key
        parts = [f"th{i}" for i in ti] + [f"thb{j}" for j in tj]
        return "^".join(parts) if parts else "1"

    def text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({scalar_text(c)})*{self._key_text(k)}"
                          for k, c in self.items())

    def __repr__(self):
        return f"Form({self.text()})"


def zero_form(ctx: FiberContext) -> Form:
    return Form(ctx, {})


def monomial(ctx: FiberContext, ti, tj, coeff=1) -> Form:
    return Form(ctx, {(tuple(ti), tuple(tj)): coeff})


def scalar_form(ctx: FiberContext, c) -> Form:
    return Form(ctx, {((), ()): c})


def subsets_increasing(n: int, k: int):
    return itertools.combinations(range(1, n + 1), k)


def basis_forms(ctx: FiberContext, p: int, q: int):
    """All basis monomials of bidegree (p, q), in index order."""
    _check_bidegree(ctx, p, q)
    return [monomial(ctx, ti, tj, 1)
            for ti in subsets_increasing(ctx.n, p)
            for tj in subsets_increasing(ctx.n, q)]


def _check_bidegree(ctx, p, q):
    if not (0 <= p <= ctx.n and 0 <= q <= ctx.n):
        raise DegreeError(f"bidegree ({p}, {q}) out of range for n = {ctx.n}")


@dataclass(frozen=True)
class Covector:
    """Real covector gamma stored via its (0,1) coefficients."""

    ctx: FiberContext
    a: tuple

    def __post_init__(self):
        if len(self.a) != self.ctx.n:
            raise ValueError(f"need {self.ctx.n} coefficients, got {len(self.a)}")
        object.__setattr__(self, "a", tuple(self.ctx.coerce(x) for x in self.a))

    def part01(self) -> Form:
        return Form(self.ctx, {((), (i,)): c for i, c in enumerate(self.a, 1)})

    def part10(self) -> Form:
        return Form(self.ctx, {((i,), ()): conj(c) for i, c in enumerate(self.a, 1)})

    def as_form(self) -> Form:
        return self.part10() + self.part01()

    def norm_sq(self):
        """|gamma|^2 = 2 sum |a_i|^2 for the real covector."""
        acc = self.ctx.zero
        for c in self.a:
            acc = acc + c * conj(c)
        return acc + acc

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.a)

    def __add__(self, other):
        if not isinstance(other, Covector):
            return NotImplemented
        _same_ctx(self.ctx, other.ctx)
        return Covector(self.ctx, tuple(x + y for x, y in zip(self.a, other.a)))

    def scale_real(self, t):
        """Scaling by a real number keeps the covector real."""
        t = self.ctx.coerce(t)
        return Covector(self.ctx, tuple(x * t for x in self.a))


def wedge(x: Form, y: Form) -> Form:
    """Exterior product; bilinear, graded-anticommutative, associative."""
    _same_ctx(x.ctx, y.ctx)
    out = {}
    for (ti, tj), c in x._terms.items():
        qx = len(tj)
        for (tk, tl), d in y._terms.items():
            m1 = _merge(ti, tk)
            if m1 is None:
                continue
            m2 = _merge(tj, tl)
            if m2 is None:
                continue
            inv1, mi = m1
            inv2, mj = m2
            val = c * d
            if (qx * len(tk) + inv1 + inv2) % 2:
                val = -val
            key = (mi, mj)
            acc = out.get(key)
            out[key] = val if acc is None else acc + val
    return Form(x.ctx, out)


def contract(g: Covector, x: Form) -> Form:
    """Contraction by the metric dual of gamma^{1,0}.

    Conjugate-linear in g, complex-linear in x; an antiderivation that
    removes thb indices only (q drops by 1, p is unchanged).
    """
    _same_ctx(g.ctx, x.ctx)
    abar = [conj(c) for c in g.a]
    out = {}
    for (ti, tj), c in x._terms.items():
        if not tj:
            continue
        base = -c if len(ti) % 2 else c
        for k, j in enumerate(tj):
            aj = abar[j - 1]
            if is_zero(aj):
                continue
            val = base * aj
            if k % 2:
                val = -val
            key = (ti, tj[:k] + tj[k + 1:])
            acc = out.get(key)
            out[key] = val if acc is None else acc + val
    return Form(x.ctx, out)


def inner(x: Form, y: Form):
    """Hermitian inner product; the monomial basis is orthonormal and the
    second slot is conjugate-linear."""
    _same_ctx(x.ctx, y.ctx)
    if len(y._terms) < len(x._terms):
        acc = x.ctx.zero
        for key, d in y.items():
            c = x._terms.get(key)
            if c is not None:
                acc = acc + c * conj(d)
        return acc
    acc = x.ctx.zero
    for key, c in x.items():
        d = y._terms.get(key)
        if d is not None:
            acc = acc + c * conj(d)
    return acc


def real_inner(x: Form, y: Form):
    from .scalars import real_part
    return real_part(inner(x, y))


# -- randomized inputs -------------------------------------------------------
#
# Exact mode draws coefficients with numerator in [-3, 3] and denominator in
# {1, 2, 3} per real/imaginary part (small rationals keep Fraction growth
# negligible across long identity chains); floating mode draws from the unit
# box.  Everything is deterministic in the seed.

def _rng(seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3)))


def random_scalar(ctx: FiberContext, rng: random.Random):
    if ctx.is_exact:
        return ExactComplex(random_rational(rng), random_rational(rng))
    return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))


def random_unit_scalar(ctx: FiberContext, seed):
    """Unit-modulus scalar; exact mode uses z^2/|z|^2 for a Gaussian
    integer z, which has modulus exactly 1 in Q(i)."""
    rng = _rng(seed)
    if not ctx.is_exact:
        phase = rng.uniform(0.0, 2.0 * 3.141592653589793)
        import cmath
        return cmath.exp(1j * phase)
    while True:
        a = rng.randint(-3, 3)
        b = rng.randint(-3, 3)
        if a or b:
            break
    d = a * a + b * b
    return ExactComplex(Fraction(a * a - b * b, d), Fraction(2 * a * b, d))


def random_form(ctx: FiberContext, p: int, q: int, seed) -> Form:
    """Random pure (p, q) form; deterministic in seed; zero coefficients are
    dropped, so the term count is at most C(n,p)*C(n,q)."""
    _check_bidegree(ctx, p, q)
    rng = _rng(seed)
    terms = {}
    for ti in subsets_increasing(ctx.n, p):
        for tj in subsets_increasing(ctx.n, q):
            terms[(ti, tj)] = random_scalar(ctx, rng)
    return Form(ctx, terms)


def random_nonzero_form(ctx: FiberContext, p: int, q: int, rng) -> Form:
    rng = _rng(rng)
    while True:
        f = random_form(ctx, p, q, rng)
        if not f.is_zero():
            return f


def random_covector(ctx: FiberContext, seed) -> Covector:
    rng = _rng(seed)
    return Covector(ctx, tuple(random_scalar(ctx, rng) for _ in range(ctx.n)))


def random_nonzero_covector(ctx: FiberContext, rng) -> Covector:
    rng = _rng(rng)
    while True:
        g = random_covector(ctx, rng)
        if not g.is_zero():
            return g
