"""Conjugate-linear perturbation of the twisted Dirac symbol data.

A bundle map phi: E -> K (x) E^*, constant on the model fiber, is stored as
its matrix (phi_ij) in unitary frames together with a unit scalar framing
the canonical line K = Lambda^{n,0}.  The induced conjugate-linear map on
spinors is, componentwise,

    (A_phi z)_i = sum_j conj(phi_ij) tau(eta ^ beta_j),

with beta_j the j-th form part of z and eta the framed top (n, 0) form; tau
conjugates coefficients, so A_phi is conjugate-linear.  Its adjoint for the
real part of the hermitian metric strips eta back off after applying tau and
transposes the conjugated matrix.

When n is odd these maps exchange the chiral halves, and the symbol-level
cancellation

    symbol_D_star(gamma) o A_phi + A_phi^* o symbol_D(gamma) = 0

holds exactly for symmetric phi when n = 1 mod 4 and antisymmetric phi when
n = 3 mod 4.  `concentrating_defect` measures the worst basis-vector norm of
that sum, exactly in exact mode.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import EVEN, ODD, Spinor, _flip, spinor_basis, symbol
from .fiber import (
    ChiralityError,
    Covector,
    DegreeError,
    FiberContext,
    Form,
    _rng,
    _same_ctx,
    monomial,
    random_scalar,
    random_unit_scalar,
    wedge,
    zero_form,
)
from .hodge import tau_graded
from .scalars import ExactComplex, conj, is_zero, real_to_float, to_complex

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
GENERAL = "general"


@dataclass(frozen=True)
class PhiMap:
    """Matrix of phi: E -> K (x) E^* in unitary frames, with a declared
    symmetry class and a unit scalar framing K."""

    ctx: FiberContext
    r: int
    entries: tuple
    eta_scalar: object = 1
    declared_class: str = GENERAL

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank must be >= 1")
        if self.declared_class not in (SYMMETRIC, ANTISYMMETRIC, GENERAL):
            raise ValueError(f"unknown symmetry class {self.declared_class!r}")
        rows = tuple(tuple(self.ctx.coerce(x) for x in row) for row in self.entries)
        if len(rows) != self.r or any(len(row) != self.r for row in rows):
            raise ValueError(f"entries must be {self.r}x{self.r}")
        object.__setattr__(self, "entries", rows)
        u = self.ctx.coerce(self.eta_scalar)
        object.__setattr__(self, "eta_scalar", u)
        uu = u * conj(u)
        if self.ctx.is_exact:
            if uu != 1:
                raise ValueError("eta scalar must have modulus exactly 1")
        elif abs(to_complex(uu) - 1.0) > 1e-12:
            raise ValueError("eta scalar must have modulus 1")
        for i in range(self.r):
            for j in range(i, self.r):
                a, b = rows[i][j], rows[j][i]
                if self.declared_class == SYMMETRIC and a != b:
                    raise ValueError(f"not symmetric at ({i}, {j})")
                if self.declared_class == ANTISYMMETRIC and a != -b:
                    raise ValueError(f"not antisymmetric at ({i}, {j})")

    def is_zero(self) -> bool:
        return all(is_zero(x) for row in self.entries for x in row)

    def eta(self) -> Form:
        """The framed top (n, 0) form."""
        top = tuple(range(1, self.ctx.n + 1))
        return monomial(self.ctx, top, (), self.eta_scalar)


@dataclass(frozen=True)
class SingularVerdict:
    det_value: object
    is_singular: bool


def _require_odd(ctx: FiberContext):
    if ctx.n % 2 == 0:
        raise DegreeError(
            "chirality exchange needs odd complex dimension "
            "(real dimension 2 or 6 mod 8)")


def _check_spinor(phi: PhiMap, z: Spinor):
    _same_ctx(phi.ctx, z.ctx)
    if z.rank != phi.r:
        raise ValueError(f"rank mismatch: phi {phi.r}, spinor {z.rank}")
    if z.chirality not in (EVEN, ODD):
        raise ChiralityError("perturbation needs a pure-chirality spinor")


def apply_A(phi: PhiMap, z: Spinor) -> Spinor:
    """Conjugate-linear perturbation; exchanges the chiral halves."""
    _require_odd(phi.ctx)
    _check_spinor(phi, z)
    eta = phi.eta()
    images = [tau_graded(wedge(eta, f)) for f in z.parts]
    out = []
    for i in range(phi.r):
        acc = zero_form(phi.ctx)
        for j in range(phi.r):
            c = phi.entries[i][j]
            if not is_zero(c):
                acc = acc + images[j].scale(conj(c))
        out.append(acc)
    return Spinor(phi.ctx, out, chirality=_flip(z.chirality))


def _strip_top(f: Form) -> Form:
    """Divide a (n, q)-supported form by th^1^..^th^n on the left."""
    ctx = f.ctx
    top = tuple(range(1, ctx.n + 1))
    out = {}
    for (ti, tj), c in f._terms.items():
        if ti != top:
            raise DegreeError("expected a form divisible by the top (n,0) frame")
        out[((), tj)] = c
    return Form(ctx, out)


def apply_A_adjoint(phi: PhiMap, z: Spinor) -> Spinor:
    """Adjoint of apply_A for the real part of the hermitian metric:
    Re<A x, y> = Re<x, A* y> for all opposite-chirality pairs."""
    _require_odd(phi.ctx)
    _check_spinor(phi, z)
    ctx = phi.ctx
    ubar = conj(phi.eta_scalar)
    if ctx.n % 2:
        ubar = -ubar  # (-1)^n factor from the adjoint of tau
    stripped = [_strip_top(tau_graded(f)).scale(ubar) for f in z.parts]
    out = []
    for i in range(phi.r):
        acc = zero_form(ctx)
        for k in range(phi.r):
            c = phi.entries[k][i]
            if not is_zero(c):
                acc = acc + stripped[k].scale(conj(c))
        out.append(acc)
    return Spinor(ctx, out, chirality=_flip(z.chirality))


def concentrating_defect(phi: PhiMap, g: Covector) -> float:
    """Worst basis-vector norm of symbol_D_star(gamma) A + A* symbol_D(gamma)
    over the standard basis of S+ (x) E.

    Exactly 0.0 when the class matches the dimension (symmetric for
    n = 1 mod 4, antisymmetric for n = 3 mod 4); the zero test is exact in
    exact mode."""
    _require_odd(phi.ctx)
    _same_ctx(phi.ctx, g.ctx)
    sig_d = symbol(g, phi.r, "D")
    sig_dstar = symbol(g, phi.r, "D_star")
    all_zero = True
    worst = 0.0
    for z in spinor_basis(phi.ctx, phi.r, EVEN):
        image = sig_dstar(apply_A(phi, z)) + apply_A_adjoint(phi, sig_d(z))
        nsq = image.norm_sq()
        if not is_zero(nsq):
            all_zero = False
            worst = max(worst, real_to_float(nsq))
    return 0.0 if all_zero else worst ** 0.5


def _exact_det(rows):
    """Fraction-exact determinant by Gaussian elimination over Q(i, sqrt2)."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = ExactComplex(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not is_zero(m[r][col])), None)
        if pivot is None:
            return ExactComplex(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if is_zero(factor):
                continue
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return det


def singular_verdict(phi: PhiMap) -> SingularVerdict:
    """det(phi_ij) and whether the fiber map is singular; exact mode decides
    exactly, floating mode at 1e-12 of the matrix norm scale."""
    if phi.ctx.is_exact:
        det = _exact_det(phi.entries)
        return SingularVerdict(det, is_zero(det))
    import numpy as np
    mat = np.array([[to_complex(x) for x in row] for row in phi.entries])
    det = complex(np.linalg.det(mat))
    scale = max(float(np.linalg.norm(mat)), 1.0) ** phi.r
    return SingularVerdict(det, abs(det) < 1e-12 * scale)


def random_phi(ctx: FiberContext, r: int, symmetry: str, seed,
               random_eta: bool = True) -> PhiMap:
    """Random PhiMap of the declared class; entries are small rationals in
    exact mode, unit-box complexes otherwise."""
    rng = _rng(seed)
    entries = [[ctx.zero for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            c = random_scalar(ctx, rng)
            if symmetry == SYMMETRIC:
                entries[i][j] = c
                entries[j][i] = c
            elif symmetry == ANTISYMMETRIC:
                if i == j:
                    continue
                entries[i][j] = c
                entries[j][i] = -c
            else:
                entries[i][j] = c
                if i != j:
                    entries[j][i] = random_scalar(ctx, rng)
    eta = random_unit_scalar(ctx, rng) if random_eta else ctx.one
    return PhiMap(ctx, r, tuple(tuple(row) for row in entries),
                  eta_scalar=eta, declared_class=symmetry)


def random_nonzero_phi(ctx: FiberContext, r: int, symmetry: str, rng,
                       random_eta: bool = True) -> PhiMap:
    rng = _rng(rng)
    if symmetry == ANTISYMMETRIC and r == 1:
        raise ValueError("antisymmetric 1x1 maps are identically zero")
    while True:
        phi = random_phi(ctx, r, symmetry, rng, random_eta=random_eta)
        if not phi.is_zero():
            return phi


def matched_class(n: int) -> str:
    """Symmetry class that cancels the defect in complex dimension n."""
    if n % 2 == 0:
        raise DegreeError("no chirality exchange in even complex dimension")
    return SYMMETRIC if n % 4 == 1 else ANTISYMMETRIC


def opposite_class(n: int) -> str:
    return ANTISYMMETRIC if matched_class(n) == SYMMETRIC else SYMMETRIC


def example_phi(ctx: FiberContext, kind: str, w: int | None = None) -> PhiMap:
    """Standard nondegenerate pairings as PhiMaps.

    trace_pairing(w):     (A, B) -> tr(AB) on End(C^w); symmetric, r = w^2.
    symplectic_double(w): canonical pairing on W (+) W^*; antisymmetric, r = 2w.
    metric_gc:            complex-bilinear metric on the complexified tangent
                          fiber in the unitary frame; symmetric, r = 2n.
    omega_c:              g_C(u, Jv) on the same frame; antisymmetric, r = 2n.
    """
    one, zero, i = ctx.one, ctx.zero, ctx.i
    if kind == "trace_pairing":
        if w is None or w < 1:
            raise ValueError("trace_pairing needs a rank parameter w >= 1")
        r = w * w
        idx = [(a, b) for a in range(w) for b in range(w)]
        entries = tuple(
            tuple(one if (b == c and a == d) else zero for (c, d) in idx)
            for (a, b) in idx)
        return PhiMap(ctx, r, entries, declared_class=SYMMETRIC)
    if kind == "symplectic_double":
        if w is None or w < 1:
            raise ValueError("symplectic_double needs a rank parameter w >= 1")
        r = 2 * w
        entries = [[zero] * r for _ in range(r)]
        for a in range(w):
            entries[a][w + a] = one
            entries[w + a][a] = -one
        return PhiMap(ctx, r, tuple(tuple(row) for row in entries),
                      declared_class=ANTISYMMETRIC)
    if kind == "metric_gc":
        if w is not None:
            raise ValueError("metric_gc takes its rank from the context")
        n = ctx.n
        r = 2 * n
        entries = [[zero] * r for _ in range(r)]
        for a in range(n):
            entries[a][n + a] = one
            entries[n + a][a] = one
        return PhiMap(ctx, r, tuple(tuple(row) for row in entries),
                      declared_class=SYMMETRIC)
    if kind == "omega_c":
        if w is not None:
            raise ValueError("omega_c takes its rank from the context")
        n = ctx.n
        r = 2 * n
        entries = [[zero] * r for _ in range(r)]
        for a in range(n):
            entries[a][n + a] = -i
            entries[n + a][a] = i
        return PhiMap(ctx, r, tuple(tuple(row) for row in entries),
                      declared_class=ANTISYMMETRIC)
    raise ValueError(f"unknown example kind {kind!r}")
