"""Rotationally invariant continuum model: per-J widths and ground-state J.

A real rotation-invariant kernel on the sphere depends only on the
relative angle between its two arguments, so its angular-momentum
blocks are Legendre projections of the kernel.  When the kernel is a
random matrix-valued function with elementwise variance sigma-bar^2,
the elements of the J block have variance proportional to

    w_J = integral_0^pi  P_J(cos w)^2 sin^2 w  dw,

a universal, J-decreasing factor (the 4 pi^2 sigma-bar^2 prefactor is
left off throughout, matching how the table of w_J values is usually
quoted: 1.571, 0.393, 0.245, 0.178, 0.139 for J = 0..4).

In a finite many-body space where N_J states carry angular momentum J,
the J subspace is modeled as N_J independent Gaussian energies of
standard deviation sqrt(N_J) * sigma * sqrt(w_J).  Tallying which J
produces the global minimum over many trials gives the predicted
ground-state distribution f_RM, to be compared against the share of
the space itself, f_space = N_J / N_tot.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import InvalidInputError
from .rng import EnsembleConfig, run_trials, substream

__all__ = [
    "legendre",
    "sigma_j_sq",
    "effective_width",
    "DimensionTable",
    "WidthTable",
    "width_table",
    "GsDistribution",
    "f_space",
    "gs_distribution",
    "example_dimension_table",
    "write_width_csv",
    "write_distribution_csv",
]

DEFAULT_QUAD_POINTS = 512


def legendre(j: int, x):
    """Legendre polynomial P_j evaluated by the three-term recurrence.

    Accepts scalars or arrays with entries in [-1, 1]; |P_j| <= 1 there.
    """
    if j < 0:
        raise InvalidInputError("degree must be >= 0")
    arr = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(arr) > 1.0):
        raise InvalidInputError("Legendre argument must lie in [-1, 1]")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    prev = np.ones_like(arr)
    if j == 0:
        return float(prev[0]) if scalar else prev
    cur = arr.copy()
    for k in range(1, j):
        prev, cur = cur, ((2 * k + 1) * arr * cur - k * prev) / (k + 1)
    return float(cur[0]) if scalar else cur


@functools.lru_cache(maxsize=32)
def _angular_grid(quad_points: int):
    # Gauss-Legendre nodes mapped from [-1, 1] to the angle range [0, pi];
    # the integrands are trigonometric polynomials, so convergence is
    # far faster than any tolerance used here
    x, w = leggauss(quad_points)
    theta = 0.5 * math.pi * (x + 1.0)
    weights = 0.5 * math.pi * w
    theta.flags.writeable = False
    weights.flags.writeable = False
    return theta, weights


def _check_quad_points(quad_points: int):
    if quad_points < 64:
        raise InvalidInputError("quad_points must be >= 64")


def sigma_j_sq(j: int, quad_points: int = DEFAULT_QUAD_POINTS) -> float:
    """The universal width factor ``integral_0^pi P_j(cos w)^2 sin^2 w dw``.

    Quoted without the 4 pi^2 sigma-bar^2 prefactor.  Exact values for
    the first few degrees: pi/2, pi/8, 5 pi/64, 29 pi/512, 727 pi/16384.
    """
    _check_quad_points(quad_points)
    theta, weights = _angular_grid(quad_points)
    p = legendre(j, np.cos(theta))
    s = np.sin(theta)
    return float(np.sum(weights * p * p * s * s))


def legendre_pair_integral(j1: int, j2: int, quad_points: int = DEFAULT_QUAD_POINTS) -> float:
    """``integral_0^pi P_j1(cos w) P_j2(cos w) sin w dw`` (orthogonality check)."""
    _check_quad_points(quad_points)
    theta, weights = _angular_grid(quad_points)
    c = np.cos(theta)
    return float(np.sum(weights * legendre(j1, c) * legendre(j2, c) * np.sin(theta)))


def effective_width(
    two_j: int,
    n_j: int,
    sigma_scale: float = 1.0,
    quad_points: int = DEFAULT_QUAD_POINTS,
    width_factor: float | None = None,
) -> float:
    """Spectral width ``sqrt(N_J) * sigma * sqrt(w_J)`` of the J subspace.

    ``width_factor`` overrides the computed ``w_J`` (needed for odd
    ``two_j``, where the Legendre-polynomial integral does not apply).
    """
    if n_j < 1:
        raise InvalidInputError("subspace dimension must be >= 1")
    if width_factor is None:
        if two_j % 2 != 0:
            raise InvalidInputError(
                "half-integer J has no polynomial width integral; "
                "pass width_factor explicitly"
            )
        width_factor = sigma_j_sq(two_j // 2, quad_points)
    return math.sqrt(n_j) * sigma_scale * math.sqrt(width_factor)


@dataclass(frozen=True)
class DimensionTable:
    """Map from angular momentum (stored as 2J) to subspace dimension."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise InvalidInputError("dimension table must not be empty")
        seen = set()
        norm = []
        for two_j, dim in self.entries:
            two_j, dim = int(two_j), int(dim)
            if two_j < 0:
                raise InvalidInputError("two_j must be >= 0")
            if dim < 1:
                raise InvalidInputError("subspace dimensions must be >= 1")
            if two_j in seen:
                raise InvalidInputError(f"duplicate two_j value {two_j}")
            seen.add(two_j)
            norm.append((two_j, dim))
        norm.sort()
        object.__setattr__(self, "entries", tuple(norm))

    @property
    def n_tot(self) -> int:
        return sum(dim for _, dim in self.entries)

    def dim_of(self, two_j: int) -> int:
        for tj, dim in self.entries:
            if tj == two_j:
                return dim
        raise KeyError(two_j)

    @classmethod
    def from_csv(cls, path) -> "DimensionTable":
        entries = []
        with open(path, "r", encoding="ascii") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = [p.strip() for p in line.split(",")]
                if parts == ["twoJ", "dim"]:
                    continue
                if len(parts) != 2:
                    raise InvalidInputError(f"{path}:{lineno}: expected twoJ,dim")
                try:
                    entries.append((int(parts[0]), int(parts[1])))
                except ValueError as exc:
                    raise InvalidInputError(
                        f"{path}:{lineno}: twoJ and dim must be integers"
                    ) from exc
        if not entries:
            raise InvalidInputError(f"{path}: no dimension rows found")
        return cls(tuple(entries))

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write("twoJ,dim\n")
            for two_j, dim in self.entries:
                fh.write(f"{two_j},{dim}\n")


def example_dimension_table() -> DimensionTable:
    """The bundled illustrative table (shaped like a mid-size shell-model
    space: dimensions rise to J ~ 2 and then fall off, with J = 0 a small
    fraction of the total)."""
    ref = resources.files("irreplab").joinpath("data/example_dims.csv")
    with resources.as_file(ref) as path:
        return DimensionTable.from_csv(path)


@dataclass(frozen=True)
class WidthTable:
    """Universal width factors w_J keyed by 2J."""

    entries: tuple[tuple[int, float], ...]

    def factor(self, two_j: int) -> float:
        for tj, val in self.entries:
            if tj == two_j:
                return val
        raise KeyError(two_j)

    def as_dict(self) -> dict[int, float]:
        return dict(self.entries)


def width_table(j_max: int, quad_points: int = DEFAULT_QUAD_POINTS) -> WidthTable:
    """Width factors for integer J = 0..j_max."""
    if j_max < 0:
        raise InvalidInputError("j_max must be >= 0")
    return WidthTable(
        tuple((2 * j, sigma_j_sq(j, quad_points)) for j in range(j_max + 1))
    )


def f_space(dims: DimensionTable) -> list[tuple[int, float]]:
    """Native share of the space per J: N_J / N_tot."""
    total = dims.n_tot
    return [(two_j, dim / total) for two_j, dim in dims.entries]


@dataclass(frozen=True)
class GsDistribution:
    """Monte Carlo ground-state-J distribution.

    ``counts`` holds one (two_j, ground-state count) pair per table
    entry; counts sum to ``trials`` exactly.
    """

    counts: tuple[tuple[int, int], ...]
    trials: int
    tie_count: int

    @property
    def entries(self) -> tuple[tuple[int, float], ...]:
        return tuple((two_j, c / self.trials) for two_j, c in self.counts)

    def fraction(self, two_j: int) -> float:
        for tj, c in self.counts:
            if tj == two_j:
                return c / self.trials
        raise KeyError(two_j)

    def modal_two_j(self) -> int:
        best = max(self.counts, key=lambda e: (e[1], -e[0]))
        return best[0]


def _resolve_widths(dims: DimensionTable, quad_points: int, widths) -> np.ndarray:
    if widths is None:
        factors = {}
    elif isinstance(widths, WidthTable):
        factors = widths.as_dict()
    else:
        factors = dict(widths)
    out = np.empty(len(dims.entries))
    for i, (two_j, _) in enumerate(dims.entries):
        if two_j in factors:
            out[i] = float(factors[two_j])
        elif two_j % 2 == 0:
            out[i] = sigma_j_sq(two_j // 2, quad_points)
        else:
            raise InvalidInputError(
                f"two_j={two_j} is half-integer; provide its width factor "
                "explicitly via `widths`"
            )
        if not out[i] > 0.0:
            raise InvalidInputError("width factors must be positive")
    return out


def gs_distribution(
    dims: DimensionTable,
    cfg: EnsembleConfig,
    quad_points: int = DEFAULT_QUAD_POINTS,
    widths=None,
    threads: int = 1,
) -> GsDistribution:
    """Distribution of the ground-state angular momentum over an ensemble.

    Per trial, each table entry (two_j, N_J) contributes N_J
    independent normal(0, eff_J^2) energies with
    ``eff_J = sqrt(N_J) * cfg.sigma0 * sqrt(w_J)``; the trial's ground
    state is the entry owning the smallest energy drawn.  Entry i of
    the (2J-ascending) table uses stream tag i, so the result is a pure
    function of ``cfg``.  Rescaling ``cfg.sigma0`` rescales every
    energy alike and cannot change any trial's winner.

    ``widths`` optionally overrides the computed width factors w_J
    (mapping two_j -> factor, or a WidthTable); required for
    half-integer J entries.
    """
    factors = _resolve_widths(dims, quad_points, widths)
    eff = np.array(
        [math.sqrt(dim) * cfg.sigma0 * math.sqrt(factors[i])
         for i, (_, dim) in enumerate(dims.entries)]
    )
    entry_dims = [dim for _, dim in dims.entries]

    def worker(trial):
        minima = np.empty(len(entry_dims))
        for tag, dim in enumerate(entry_dims):
            stream = substream(cfg.master_seed, trial, tag)
            minima[tag] = eff[tag] * float(np.min(stream.normals(dim)))
        winner = int(np.argmin(minima))
        tie = int(np.count_nonzero(minima == minima[winner]) > 1)
        return winner, tie

    outcomes = run_trials(worker, cfg.trials, threads)
    counts = np.zeros(len(entry_dims), dtype=np.int64)
    ties = 0
    for winner, tie in outcomes:
        counts[winner] += 1
        ties += tie
    return GsDistribution(
        tuple((two_j, int(counts[i])) for i, (two_j, _) in enumerate(dims.entries)),
        cfg.trials,
        ties,
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_width_csv(table: WidthTable, destination) -> None:
    """CSV with columns twoJ, sigmaJ_sq."""

    def _write(fh):
        fh.write("twoJ,sigmaJ_sq\n")
        for two_j, val in table.entries:
            fh.write(f"{two_j},{_fmt(val)}\n")

    if isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__"):
        with open(destination, "w", encoding="ascii", newline="") as fh:
            _write(fh)
    else:
        _write(destination)


def write_distribution_csv(dist: GsDistribution, dims: DimensionTable, destination) -> None:
    """CSV with columns twoJ, f_space, f_RM."""
    space = dict(f_space(dims))

    def _write(fh):
        fh.write("twoJ,f_space,f_RM\n")
        for two_j, frac in dist.entries:
            fh.write(f"{two_j},{_fmt(space[two_j])},{_fmt(frac)}\n")

    if isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__"):
        with open(destination, "w", encoding="ascii", newline="") as fh:
            _write(fh)
    else:
        _write(destination)
