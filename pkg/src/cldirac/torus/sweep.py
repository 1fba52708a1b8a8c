"""Deformation sweep: eigenmodes, localization mass, and report assembly.

For each deformation strength s the sweep solves for the low eigenpairs of
D_s^T D_s, measures the L2 mass of the lowest eigenvector outside the
delta-neighborhood of the singular set, and records the smallest singular
value sigma_min = sqrt(lambda_min).  Concentration shows up as outside-mass
decreasing in s with s * mass bounded; for presets with empty singular set
the interesting column is sigma_min instead (and outside-mass is 1 by
definition).  Reports are plain dicts keyed by a versioned schema, with CSV
as a derived view.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .config import TWO_PI, SimConfig, phi_field, zero_locations
from .eigensolve import EigenResult, normal_eigenpairs
from .operators import LatticeField, TorusOperator, assemble, flat_to_complex

SCHEMA_VERSION = 1


def torus_distance_sq(x, y, zx, zy):
    dx = np.abs(x - zx)
    dx = np.minimum(dx, TWO_PI - dx)
    dy = np.abs(y - zy)
    dy = np.minimum(dy, TWO_PI - dy)
    return dx * dx + dy * dy


def outside_mass(zeta: LatticeField, config: SimConfig,
                 zeros=None) -> float:
    """Fraction of L2 mass outside the union of delta-disks around the zeros
    of the perturbation field; 1.0 when the singular set is empty.

    The field must have unit L2 norm (renormalized when within 1e-6)."""
    nrm = zeta.l2_norm()
    if abs(nrm - 1.0) > 1e-6:
        raise ValueError(f"field norm {nrm} is not 1 (tolerance 1e-6)")
    density = zeta.density() / nrm ** 2
    if zeros is None:
        zeros = zero_locations(config)
    if not zeros:
        return 1.0
    N = zeta.N
    h = TWO_PI / N
    ax = np.arange(N) * h
    x = ax[:, None]
    y = ax[None, :]
    inside = np.zeros((N, N), dtype=bool)
    dsq = config.delta ** 2
    for (zx, zy) in zeros:
        inside |= torus_distance_sq(x, y, zx, zy) <= dsq
    total = float(np.sum(density))
    return float(np.sum(density[~inside]) / total)


def fit_loglog(s_values, masses):
    """Least-squares slope/intercept of log(mass) against log(s)."""
    s = np.asarray(s_values, float)
    m = np.asarray(masses, float)
    keep = m > 0
    if np.sum(keep) < 2:
        return None
    slope, intercept = np.polyfit(np.log(s[keep]), np.log(m[keep]), 1)
    return {"slope": float(slope), "intercept": float(intercept)}


@dataclass
class SweepRow:
    s: float
    eigenvalues: list
    outside_mass: float
    sigma_min: float
    residual_max: float
    converged: bool
    iterations: int
    seconds: float


@dataclass
class SpectralReport:
    config: dict
    zeros: list
    rows: list
    fit: dict | None
    backend: str
    seconds: float
    notes: list = field(default_factory=list)

    @property
    def all_converged(self) -> bool:
        return all(r.converged for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "discretization": {
                "scheme": "centered-differences-order-4",
                "box": "2pi x 2pi periodic",
                "spacing": TWO_PI / self.config["N"],
                "cell_weight": (TWO_PI / self.config["N"]) ** 2,
            },
            "zeros": [[zx, zy] for (zx, zy) in self.zeros],
            "results": [{
                "s": r.s,
                "eigenvalues": r.eigenvalues,
                "outside_mass": r.outside_mass,
                "sigma_min": r.sigma_min,
                "residual_max": r.residual_max,
                "converged": r.converged,
                "iterations": r.iterations,
                "seconds": r.seconds,
            } for r in self.rows],
            "fit": self.fit,
            "backend": self.backend,
            "seconds": self.seconds,
            "notes": self.notes,
        }

    def write_csv(self, path):
        k = max(len(r.eigenvalues) for r in self.rows)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["s"] + [f"eig_{i + 1}" for i in range(k)]
                            + ["outside_mass", "sigma_min"])
            for r in self.rows:
                writer.writerow([r.s] + [f"{v:.12g}" for v in r.eigenvalues]
                                + [f"{r.outside_mass:.12g}", f"{r.sigma_min:.12g}"])


def lowest_field(op: TorusOperator, result: EigenResult) -> LatticeField:
    u = flat_to_complex(result.vectors[:, 0], op.N)
    return LatticeField.from_complex(u=u)


def run_sweep(config: SimConfig) -> SpectralReport:
    """Assemble, solve, and measure for every s in the config."""
    t0 = time.monotonic()
    w = phi_field(config)
    zeros = zero_locations(config, w)
    rows = []
    fields = []
    for s in config.s_values:
        ts = time.monotonic()
        op = assemble(config, s)
        result = normal_eigenpairs(op, config)
        zeta = lowest_field(op, result)
        mass = outside_mass(zeta.normalized(), config, zeros)
        rows.append(SweepRow(
            s=float(s),
            eigenvalues=[float(v) for v in result.values],
            outside_mass=mass,
            sigma_min=float(math.sqrt(max(result.values[0], 0.0))),
            residual_max=float(np.max(result.residuals)),
            converged=result.all_converged,
            iterations=result.iterations,
            seconds=time.monotonic() - ts,
        ))
        fields.append(zeta)
    fit = fit_loglog([r.s for r in rows], [r.outside_mass for r in rows]) \
        if zeros else None
    report = SpectralReport(
        config=config.echo(),
        zeros=zeros,
        rows=rows,
        fit=fit,
        backend=kernels.BACKEND,
        seconds=time.monotonic() - t0,
    )
    report.fields = fields  # kept for heatmap rendering; not serialized
    return report
