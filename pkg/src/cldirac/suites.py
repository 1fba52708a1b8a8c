"""Randomized and exhaustive identity suites over the exact fiber calculus.

Every suite evaluates a proven operator identity on random exact inputs and
demands a literally zero defect; a failure carries a serialized
counterexample (exact rational text), so any regression is reproducible
from the report alone.  Records are keyed (identity, n, p): p is the
degree-like loop parameter of the identity family (the antiholomorphic
degree for the star-shift and Clifford families, the total degree for the
tau adjoint family, the twisting rank for symbol composition).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .clifford import EVEN, clifford, spinor_basis, symbol
from .fiber import (
    FiberContext,
    Form,
    basis_forms,
    contract,
    inner,
    monomial,
    random_covector,
    random_form,
    random_unit_scalar,
    wedge,
    zero_form,
)
from .hodge import (
    bar_star,
    epsilon_shift_identity,
    tau,
    tau_adjoint_defect,
    tau_graded,
    volume_form,
)
from .perturbation import (
    concentrating_defect,
    matched_class,
    opposite_class,
    random_nonzero_phi,
    random_phi,
    singular_verdict,
)
from .fiber import random_nonzero_covector
from .scalars import is_zero, real_to_float


@dataclass
class IdentityRecord:
    identity: str
    n: int
    p: int
    trials: int
    failures: int
    max_defect: float
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "failures": self.failures,
            "max_defect": self.max_defect,
            "counterexample": self.counterexample,
        }


def _form_defect(f: Form) -> float:
    if f.is_zero():
        return 0.0
    acc = f.ctx.zero
    for _key, c in f.items():
        acc = acc + c * c.conjugate()
    return real_to_float(acc) ** 0.5


def _run(identity, n, p, trials, seed, check) -> IdentityRecord:
    """check(rng) returns (defect_float, counterexample_text or None)."""
    rng = random.Random((hash((identity, n, p)) ^ seed) & 0x7FFFFFFF)
    failures = 0
    worst = 0.0
    example = None
    for _ in range(trials):
        defect, text = check(rng)
        if defect != 0.0:
            failures += 1
            if defect > worst:
                worst = defect
                example = text
    return IdentityRecord(identity, n, p, trials, failures, worst, example)


def _eta(ctx, rng):
    top = tuple(range(1, ctx.n + 1))
    return monomial(ctx, top, (), random_unit_scalar(ctx, rng))


def _describe(**kwargs) -> str:
    return "; ".join(f"{key}={val.text() if hasattr(val, 'text') else val}"
                     for key, val in kwargs.items())


# -- individual identity families -------------------------------------------

def _wedge_anticommute(ctx, p, rng):
    qx = rng.randint(0, ctx.n)
    py, qy = rng.randint(0, ctx.n), rng.randint(0, ctx.n)
    x = random_form(ctx, p, qx, rng)
    y = random_form(ctx, py, qy, rng)
    sign = -1 if ((p + qx) * (py + qy)) % 2 else 1
    diff = wedge(x, y) - wedge(y, x).scale(sign)
    return _form_defect(diff), _describe(x=x, y=y)


def _wedge_associative(ctx, p, rng):
    x = random_form(ctx, rng.randint(0, 1), p, rng)
    y = random_form(ctx, 0, rng.randint(0, ctx.n), rng)
    z = random_form(ctx, rng.randint(0, 1), rng.randint(0, ctx.n), rng)
    diff = wedge(wedge(x, y), z) - wedge(x, wedge(y, z))
    return _form_defect(diff), _describe(x=x, y=y, z=z)


def _adjunction(ctx, p, rng):
    a = random_form(ctx, 0, p, rng)
    b = random_form(ctx, 0, p + 1, rng) if p < ctx.n else zero_form(ctx)
    g = random_covector(ctx, rng)
    defect = inner(wedge(g.part01(), a), b) - inner(a, contract(g, b))
    return (0.0 if is_zero(defect) else abs(defect.to_complex())), \
        _describe(alpha=a, beta=b, gamma=g.part01())


def _contract_antiderivation(ctx, p, rng):
    px = rng.randint(0, ctx.n)
    x = random_form(ctx, px, p, rng)
    y = random_form(ctx, rng.randint(0, ctx.n), rng.randint(0, ctx.n), rng)
    g = random_covector(ctx, rng)
    sign = -1 if (px + p) % 2 else 1
    diff = (contract(g, wedge(x, y)) - wedge(contract(g, x), y)
            - wedge(x, contract(g, y)).scale(sign))
    return _form_defect(diff), _describe(x=x, y=y, gamma=g.part01())


def _contract_twice(ctx, p, rng):
    x = random_form(ctx, rng.randint(0, ctx.n), p, rng)
    g = random_covector(ctx, rng)
    return _form_defect(contract(g, contract(g, x))), _describe(x=x, gamma=g.part01())


def _star_defining_exhaustive(ctx, p) -> tuple[int, int, float, str | None]:
    """alpha ^ star(beta) = <alpha, beta> dv over all same-bidegree basis
    pairs; returns (pairs, failures, worst, example)."""
    dv = volume_form(ctx)
    pairs = failures = 0
    worst, example = 0.0, None
    for q in range(ctx.n + 1):
        basis = basis_forms(ctx, p, q)
        stars = [bar_star(b) for b in basis]
        for a in basis:
            for b, sb in zip(basis, stars):
                pairs += 1
                diff = wedge(a, sb) - dv.scale(inner(a, b))
                d = _form_defect(diff)
                if d != 0.0:
                    failures += 1
                    if d > worst:
                        worst, example = d, _describe(alpha=a, beta=b)
    return pairs, failures, worst, example


def _star_square(ctx, p, rng):
    q = rng.randint(0, ctx.n)
    x = random_form(ctx, p, q, rng)
    sign = -1 if (p + q) % 2 else 1
    diff = bar_star(bar_star(x)) - x.scale(sign) if not x.is_zero() else zero_form(ctx)
    return _form_defect(diff), _describe(x=x)


def _tau_square(ctx, p, rng):
    q = rng.randint(0, ctx.n)
    x = random_form(ctx, p, q, rng)
    sign = -1 if ctx.n % 2 else 1
    diff = tau(tau(x)) - x.scale(sign) if not x.is_zero() else zero_form(ctx)
    return _form_defect(diff), _describe(x=x)


def _tau_isometry(ctx, p, rng):
    q = rng.randint(0, ctx.n)
    x = random_form(ctx, p, q, rng)
    defect = inner(tau(x), tau(x)) - inner(x, x)
    return (0.0 if is_zero(defect) else abs(defect.to_complex())), _describe(x=x)


def _star_wedge_shift(ctx, p, rng):
    # star(gamma01 ^ beta) against eta ^ contract(gamma10, star(eta ^ beta))
    beta = random_form(ctx, 0, p, rng)
    g = random_covector(ctx, rng)
    eta = _eta(ctx, rng)
    n = ctx.n
    lhs = bar_star(wedge(g.part01(), beta)) if p < n else zero_form(ctx)
    rhs = wedge(eta, contract(g, bar_star(wedge(eta, beta))))
    sign = -1 if (n * (p + 1) + p) % 2 else 1
    return _form_defect(lhs - rhs.scale(sign)), \
        _describe(beta=beta, gamma=g.part01(), eta=eta)


def _star_contract_shift(ctx, p, rng):
    # star(contract(gamma10, beta)) against eta ^ gamma01 ^ star(eta ^ beta)
    beta = random_form(ctx, 0, p, rng)
    g = random_covector(ctx, rng)
    eta = _eta(ctx, rng)
    n = ctx.n
    lhs = bar_star(contract(g, beta))
    rhs = wedge(eta, wedge(g.part01(), bar_star(wedge(eta, beta))))
    sign = -1 if ((n + 1) * (p - 1)) % 2 else 1
    return _form_defect(lhs - rhs.scale(sign)), \
        _describe(beta=beta, gamma=g.part01(), eta=eta)


def _star_clifford_commutation(ctx, p, rng):
    # tau(c(gamma) beta) against eta ^ c(gamma) tau(eta ^ beta),
    # sign (-1)^(n(n+1)/2 + 1)
    beta = random_form(ctx, 0, p, rng)
    g = random_covector(ctx, rng)
    eta = _eta(ctx, rng)
    n = ctx.n
    lhs = tau_graded(clifford(g, beta))
    rhs = wedge(eta, clifford(g, tau(wedge(eta, beta)))) \
        if not beta.is_zero() else zero_form(ctx)
    sign = -1 if (n * (n + 1) // 2 + 1) % 2 else 1
    return _form_defect(lhs - rhs.scale(sign)), \
        _describe(beta=beta, gamma=g.part01(), eta=eta)


def _tau_real_adjoint(ctx, k, rng):
    n = ctx.n
    p1 = rng.randint(max(0, k - n), min(n, k))
    x = random_form(ctx, p1, k - p1, rng)
    k2 = 2 * n - k
    p2 = rng.randint(max(0, k2 - n), min(n, k2))
    y = random_form(ctx, p2, k2 - p2, rng)
    defect = tau_adjoint_defect(x, y)
    return (0.0 if is_zero(defect) else abs(real_to_float(defect))), \
        _describe(x=x, y=y)


def _clifford_square(ctx, p, rng):
    x = random_form(ctx, 0, p, rng)
    g = random_covector(ctx, rng)
    diff = clifford(g, clifford(g, x)) + x.scale(g.norm_sq())
    return _form_defect(diff), _describe(x=x, gamma=g.part01())


def _clifford_skew(ctx, p, rng):
    a = random_form(ctx, 0, p, rng)
    b = zero_form(ctx)
    if p + 1 <= ctx.n:
        b = b + random_form(ctx, 0, p + 1, rng)
    if p - 1 >= 0:
        b = b + random_form(ctx, 0, p - 1, rng)
    g = random_covector(ctx, rng)
    defect = inner(clifford(g, a), b) + inner(a, clifford(g, b))
    return (0.0 if is_zero(defect) else abs(defect.to_complex())), \
        _describe(alpha=a, beta=b, gamma=g.part01())


def _clifford_parity(ctx, p, rng):
    x = random_form(ctx, 0, p, rng)
    g = random_covector(ctx, rng)
    image = clifford(g, x)
    bad = [key for key, _c in image.items() if len(key[1]) % 2 == p % 2]
    return (0.0 if not bad else 1.0), _describe(x=x, gamma=g.part01())


def _clifford_real_linear(ctx, p, rng):
    x = random_form(ctx, 0, p, rng)
    g1 = random_covector(ctx, rng)
    g2 = random_covector(ctx, rng)
    from .fiber import random_rational
    t = random_rational(rng)
    d1 = clifford(g1 + g2, x) - clifford(g1, x) - clifford(g2, x)
    d2 = clifford(g1.scale_real(t), x) - clifford(g1, x).scale(ctx.rational(t))
    return max(_form_defect(d1), _form_defect(d2)), \
        _describe(x=x, g1=g1.part01(), g2=g2.part01())


def _symbol_clifford_relation(ctx, r, rng):
    g = random_covector(ctx, rng)
    comp = symbol(g, r, "D_star").compose(symbol(g, r, "D"))
    worst = 0.0
    for z in spinor_basis(ctx, r, EVEN):
        image = comp(z) + z.scale(g.norm_sq())
        nsq = image.norm_sq()
        if not is_zero(nsq):
            worst = max(worst, real_to_float(nsq) ** 0.5)
    return worst, _describe(gamma=g.part01(), r=r)


def verify_suite(n_max: int, trials: int, seed: int,
                 include_epsilon: bool = True) -> list[IdentityRecord]:
    """All exterior / Hodge / Clifford identity suites up to n_max."""
    if not 1 <= n_max <= 8:
        raise ValueError("n_max must be in 1..8")
    records = []
    for n in range(1, n_max + 1):
        ctx = FiberContext(n)
        for p in range(n + 1):
            records.append(_run("wedge_anticommute", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _wedge_anticommute(c, q, rng)))
            records.append(_run("wedge_associative", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _wedge_associative(c, q, rng)))
            records.append(_run("contract_antiderivation", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _contract_antiderivation(c, q, rng)))
            records.append(_run("contract_twice_zero", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _contract_twice(c, q, rng)))
            records.append(_run("star_square", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _star_square(c, q, rng)))
            records.append(_run("tau_square", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _tau_square(c, q, rng)))
            records.append(_run("tau_isometry", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _tau_isometry(c, q, rng)))
            records.append(_run("star_wedge_shift", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _star_wedge_shift(c, q, rng)))
            records.append(_run("star_contract_shift", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _star_contract_shift(c, q, rng)))
            records.append(_run("star_clifford_commutation", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _star_clifford_commutation(c, q, rng)))
            records.append(_run("clifford_square", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _clifford_square(c, q, rng)))
            records.append(_run("clifford_skew_adjoint", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _clifford_skew(c, q, rng)))
            records.append(_run("clifford_parity_flip", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _clifford_parity(c, q, rng)))
            records.append(_run("clifford_real_linear", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _clifford_real_linear(c, q, rng)))
        for p in range(n + 1):
            records.append(_run("adjunction", n, p, trials, seed,
                                lambda rng, c=ctx, q=p: _adjunction(c, q, rng)))
        for k in range(2 * n + 1):
            records.append(_run("tau_real_adjoint", n, k, trials, seed,
                                lambda rng, c=ctx, q=k: _tau_real_adjoint(c, q, rng)))
        # exhaustive basis check of the defining property (auto-limited: all
        # basis pairs through n = 5, the n <= n_max loop otherwise)
        if n <= 5:
            for p in range(n + 1):
                pairs, failures, worst, example = _star_defining_exhaustive(ctx, p)
                records.append(IdentityRecord("star_defining", n, p, pairs,
                                              failures, worst, example))
        for r in (1, 2, 3, 4):
            records.append(_run("symbol_clifford_relation", n, r,
                                max(1, trials // 10), seed,
                                lambda rng, c=ctx, q=r: _symbol_clifford_relation(c, q, rng)))
    if include_epsilon:
        for n in range(1, 9):
            for p in range(n + 1):
                ok = epsilon_shift_identity(n, p)
                records.append(IdentityRecord(
                    "epsilon_shift", n, p, 1, 0 if ok else 1,
                    0.0 if ok else 1.0, None if ok else f"n={n}, p={p}"))
    return records


# -- concentrating-condition suite -------------------------------------------

@dataclass
class ConditionReport:
    correct: list
    wrong: list
    odd_rank: list

    @property
    def passed(self) -> bool:
        return (all(rec["max_defect"] == 0.0 for rec in self.correct)
                and all(rec["nonzero_rate"] >= 0.95 for rec in self.wrong)
                and all(rec["all_singular"] for rec in self.odd_rank))

    def to_dict(self) -> dict:
        return {"correct_class": self.correct, "wrong_class": self.wrong,
                "odd_rank_det": self.odd_rank, "passed": self.passed}


def condition_suite(n_list, r_list, trials: int, seed: int,
                    wrong_trials: int = 200) -> ConditionReport:
    """Zero-defect matrix for matched classes, nonzero-rate statistics for
    the opposite class, and odd-rank antisymmetric determinant checks."""
    for n in n_list:
        if n % 2 == 0 or n > 7:
            raise ValueError(
                f"n = {n}: the perturbation exchanges chirality only in odd "
                "complex dimension (real dimension 2 or 6 mod 8), and exact "
                "suites stop at n = 7")
    correct, wrong, odd_rank = [], [], []
    for n in n_list:
        ctx = FiberContext(n)
        cls = matched_class(n)
        for r in r_list:
            rng = random.Random((hash(("correct", n, r)) ^ seed) & 0x7FFFFFFF)
            worst = 0.0
            failures = 0
            for _ in range(trials):
                phi = random_phi(ctx, r, cls, rng)
                g = random_covector(ctx, rng)
                d = concentrating_defect(phi, g)
                if d != 0.0:
                    failures += 1
                    worst = max(worst, d)
            correct.append({"n": n, "r": r, "phi_class": cls, "trials": trials,
                            "failures": failures, "max_defect": worst})
        # opposite class: rate of nonzero defect over nondegenerate draws
        # (zero phi or gamma resampled; r = 1 skipped for antisymmetric,
        # which is identically zero)
        ocls = opposite_class(n)
        usable_r = [r for r in r_list if not (ocls == "antisymmetric" and r == 1)]
        if usable_r:
            rng = random.Random((hash(("wrong", n)) ^ seed) & 0x7FFFFFFF)
            nonzero = 0
            for t in range(wrong_trials):
                r = usable_r[t % len(usable_r)]
                phi = random_nonzero_phi(ctx, r, ocls, rng)
                g = random_nonzero_covector(ctx, rng)
                if concentrating_defect(phi, g) > 0.0:
                    nonzero += 1
            wrong.append({"n": n, "phi_class": ocls, "r_values": usable_r,
                          "trials": wrong_trials,
                          "nonzero_rate": nonzero / wrong_trials})
        for r in [r for r in r_list if r % 2 == 1]:
            rng = random.Random((hash(("oddrank", n, r)) ^ seed) & 0x7FFFFFFF)
            singular = all(
                singular_verdict(random_phi(ctx, r, "antisymmetric", rng)).is_singular
                for _ in range(trials))
            odd_rank.append({"n": n, "r": r, "trials": trials,
                             "all_singular": singular})
    return ConditionReport(correct, wrong, odd_rank)
