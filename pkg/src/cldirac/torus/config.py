"""Simulation configuration and the phi field on the grid.

Config files are plain ``key = value`` lines (``#`` comments).  Keys:

    N               grid points per axis; power of two, >= 16
    s_values        comma-separated deformation strengths, strictly increasing
    phi_preset      sin_zeros | constant(<complex>) | custom
    fourier_coeffs  for custom: "mx,my,re,im; mx,my,re,im; ..." giving
                    w = sum c * exp(i(mx*x + my*y))
    delta           exclusion radius around the singular set (radians)
    eig_count       number of low eigenpairs to compute
    eig_tol         relative residual tolerance for the eigensolver
    seed            RNG seed for the solver's start block
    max_iterations  eigensolver iteration cap

The torus is [0, 2pi)^2 with spacing h = 2pi/N.  The sin_zeros preset is
w = sin x + i sin y, whose zeros (0,0), (pi,0), (0,pi), (pi,pi) are exact
and nondegenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """Bad simulation configuration or config file."""


@dataclass(frozen=True)
class SimConfig:
    N: int = 64
    s_values: tuple = (8.0, 16.0, 32.0, 64.0)
    phi_preset: str = "sin_zeros"
    fourier_coeffs: tuple = ()
    delta: float = 0.5
    eig_count: int = 6
    eig_tol: float = 1e-9
    seed: int = 1
    max_iterations: int = 800

    def __post_init__(self):
        object.__setattr__(self, "s_values", tuple(float(s) for s in self.s_values))
        if self.N < 16:
            raise ConfigError(f"N must be >= 16, got {self.N}")
        if self.N & (self.N - 1):
            raise ConfigError(f"N must be a power of two, got {self.N}")
        if not self.s_values:
            raise ConfigError("need at least one s value")
        if any(s <= 0 for s in self.s_values):
            raise ConfigError("s values must be positive")
        if any(b <= a for a, b in zip(self.s_values, self.s_values[1:])):
            raise ConfigError("s values must be strictly increasing")
        if self.delta <= self.spacing:
            raise ConfigError(
                f"delta = {self.delta} must exceed the grid spacing "
                f"{self.spacing:.4f}")
        if self.eig_count < 1:
            raise ConfigError("eig_count must be >= 1")
        if self.eig_tol <= 0:
            raise ConfigError("eig_tol must be positive")
        kind = self.preset_kind
        if kind == "constant":
            if self.constant_value == 0:
                raise ConfigError("constant preset needs a nonzero value")
        elif kind == "custom":
            if not self.fourier_coeffs:
                raise ConfigError("custom preset needs fourier_coeffs")
        elif kind != "sin_zeros":
            raise ConfigError(f"unknown phi preset {self.phi_preset!r}")

    @property
    def spacing(self) -> float:
        return TWO_PI / self.N

    @property
    def preset_kind(self) -> str:
        return self.phi_preset.split("(", 1)[0].strip()

    @property
    def constant_value(self) -> complex:
        if self.preset_kind != "constant":
            raise ConfigError("not a constant preset")
        inside = self.phi_preset.split("(", 1)[1].rstrip(") ")
        try:
            return complex(inside.replace(" ", ""))
        except ValueError as exc:
            raise ConfigError(f"bad constant value {inside!r}") from exc

    def echo(self) -> dict:
        return {
            "N": self.N,
            "s_values": list(self.s_values),
            "phi_preset": self.phi_preset,
            "fourier_coeffs": [[mx, my, c.real, c.imag]
                               for (mx, my, c) in self.fourier_coeffs],
            "delta": self.delta,
            "eig_count": self.eig_count,
            "eig_tol": self.eig_tol,
            "seed": self.seed,
            "max_iterations": self.max_iterations,
        }


_KEYS = {"N", "s_values", "phi_preset", "fourier_coeffs", "delta",
         "eig_count", "eig_tol", "seed", "max_iterations"}


def parse_config_text(text: str) -> SimConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = val
    kwargs = {}
    if "N" in values:
        kwargs["N"] = int(values["N"])
    if "s_values" in values:
        kwargs["s_values"] = tuple(float(tok) for tok in values["s_values"].split(","))
    if "phi_preset" in values:
        kwargs["phi_preset"] = values["phi_preset"]
    if "fourier_coeffs" in values:
        coeffs = []
        for chunk in values["fourier_coeffs"].split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            toks = [t.strip() for t in chunk.split(",")]
            if len(toks) != 4:
                raise ConfigError("fourier_coeffs entries are mx,my,re,im")
            coeffs.append((int(toks[0]), int(toks[1]),
                           complex(float(toks[2]), float(toks[3]))))
        kwargs["fourier_coeffs"] = tuple(coeffs)
    for key, cast in (("delta", float), ("eig_count", int), ("eig_tol", float),
                      ("seed", int), ("max_iterations", int)):
        if key in values:
            kwargs[key] = cast(values[key])
    return SimConfig(**kwargs)


def load_config(path) -> SimConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def preset_path(name: str):
    """Path of a bundled preset config (``sin_zeros.cfg``, ``constant.cfg``)."""
    return resources.files("cldirac.torus") / "presets" / name


def grid_axes(config: SimConfig):
    x = np.arange(config.N) * config.spacing
    return x, x


def phi_field(config: SimConfig) -> np.ndarray:
    """The perturbation coefficient w sampled on the grid, shape (N, N)
    complex with axis 0 = x and axis 1 = y."""
    x, y = grid_axes(config)
    xx = x[:, None]
    yy = y[None, :]
    kind = config.preset_kind
    if kind == "sin_zeros":
        return np.sin(xx) + 1j * np.sin(yy) + np.zeros((config.N, config.N), complex)
    if kind == "constant":
        return np.full((config.N, config.N), config.constant_value, complex)
    w = np.zeros((config.N, config.N), complex)
    for (mx, my, c) in config.fourier_coeffs:
        w += c * np.exp(1j * (mx * xx + my * yy))
    return w


def zero_locations(config: SimConfig, w: np.ndarray | None = None):
    """Zeros of w as (x, y) pairs.

    Presets with exact zeros report them exactly; the custom preset brackets
    sign changes of Re w and Im w across grid plaquettes and reports cell
    centers, which is adequate for delta well above the spacing."""
    kind = config.preset_kind
    if kind == "sin_zeros":
        pi = math.pi
        return [(0.0, 0.0), (pi, 0.0), (0.0, pi), (pi, pi)]
    if kind == "constant":
        return []
    if w is None:
        w = phi_field(config)
    re, im = w.real, w.imag

    def _bracket(a):
        b = np.roll(a, -1, 0)
        c = np.roll(a, -1, 1)
        d = np.roll(np.roll(a, -1, 0), -1, 1)
        lo = np.minimum(np.minimum(a, b), np.minimum(c, d))
        hi = np.maximum(np.maximum(a, b), np.maximum(c, d))
        return (lo <= 0) & (hi >= 0)
    cells = _bracket(re) & _bracket(im)
    h = config.spacing
    n = config.N
    # group marked cells into periodic connected components and report the
    # circular mean of each component (plain averaging breaks at the seam)
    remaining = {(int(ix), int(iy)) for ix, iy in zip(*np.nonzero(cells))}
    zeros = []
    while remaining:
        stack = [remaining.pop()]
        component = []
        while stack:
            cx, cy = stack.pop()
            component.append((cx, cy))
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    nb = ((cx + dx) % n, (cy + dy) % n)
                    if nb in remaining:
                        remaining.discard(nb)
                        stack.append(nb)

        def _circular_mean(vals):
            ang = np.array(vals) * h + 0.5 * h
            mean = math.atan2(np.mean(np.sin(ang)), np.mean(np.cos(ang)))
            return mean % TWO_PI
        zeros.append((_circular_mean([c[0] for c in component]),
                      _circular_mean([c[1] for c in component])))
    return sorted(zeros)
