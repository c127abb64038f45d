"""Block decomposition of invariant random matrices, and the ground-state census.

A group-invariant matrix built from per-orbit random blocks is
orthogonally equivalent to a direct sum of small combination blocks,
one per irreducible representation of the site action.  Each
combination is a signed integer (polyhedra) or cosine-weighted (cyclic)
sum of the orbit blocks, so its element variance is the sum of squared
coefficients times the per-element variance of the inputs.  That single
number per irrep is what makes the ground-state statistics predictable:
wider blocks reach lower.

The master consistency check, used throughout the tests: the sorted
eigenvalues of the dense invariant matrix equal the multiset union of
the combination-block eigenvalues, each repeated by its multiplicity.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidInputError
from .groups import (
    PairOrbitStructure,
    PointGroup,
    build_group,
    build_invariant,
    pair_orbits,
)
from .linalg import EigenOptions, Spectrum, SymMatrix, eigensolve
from .rng import EnsembleConfig, draw_label_blocks, run_trials

__all__ = [
    "IrrepBlockSpec",
    "decompose_polyhedral",
    "decompose_cyclic",
    "decompose",
    "CnBlockSet",
    "cn_blocks",
    "cn_variance_factors",
    "block_spectra",
    "sample_invariant",
    "CensusRow",
    "CensusResult",
    "ground_state_irrep_census",
    "write_census_csv",
]


@dataclass(frozen=True)
class IrrepBlockSpec:
    """One block of the block-diagonal form.

    ``coefficients`` maps orbit labels to the weights of the
    combination block; ``copies`` is how many times the block repeats
    in the block-diagonal form.  The predicted per-element variance of
    the block, in units of the input element variance, is the sum of
    squared coefficients (independent inputs of equal variance).
    """

    label: str
    copies: int
    coefficients: dict[str, float]

    @property
    def variance_factor(self) -> float:
        return float(sum(c * c for c in self.coefficients.values()))

    def combination(self, blocks: Mapping[str, np.ndarray]) -> np.ndarray:
        out = None
        for lab, c in self.coefficients.items():
            term = c * np.asarray(blocks[lab], dtype=np.float64)
            out = term if out is None else out + term
        return out


def _classify_cube_offdiagonal(structure: PairOrbitStructure):
    """Split the cube's off-diagonal orbits into edge / face / body classes.

    The body-diagonal orbit has 4 pairs.  The two 12-pair orbits are
    told apart structurally: the edge orbit forms a connected graph on
    the 8 vertices (the cube skeleton), the face-diagonal orbit splits
    into two components (the two inscribed tetrahedra).
    """
    sizes = structure.orbit_sizes()
    off = [lab for lab in structure.labels if lab != structure.diagonal_label]
    body = [lab for lab in off if sizes[lab] == 4]
    twelves = [lab for lab in off if sizes[lab] == 12]
    if len(body) != 1 or len(twelves) != 2:
        raise InvalidInputError("unexpected cube orbit structure")

    def components(label):
        pairs = structure.pairs_of(label)
        parent = list(range(structure.sites))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            parent[find(a)] = find(b)
        return len({find(v) for v in range(structure.sites)})

    first, second = twelves
    edge, face = (first, second) if components(first) == 1 else (second, first)
    if components(edge) != 1 or components(face) != 2:
        raise InvalidInputError("unexpected cube orbit structure")
    return edge, face, body[0]


def decompose_polyhedral(group: PointGroup) -> list[IrrepBlockSpec]:
    """Block-diagonal structure of a polyhedral invariant matrix.

    Returned in canonical order (ties in the census break toward the
    earlier entry):

    * tetra: (diag + 3 off) x1, (diag - off) x3; variance factors 10, 2.
    * octa: with A diagonal, B adjacent, C antipodal:
      (A+4B+C) x1, (A-2B+C) x2, (A-C) x3; factors 18, 6, 2.
    * cube: with B edges, C face diagonals, D body diagonals:
      (A+3B+3C+D) x1, (A-3B+3C-D) x1, (A-C+B-D) x3, (A-C-B+D) x3;
      factors 20, 20, 4, 4.

    The label classes are identified from the orbit structure itself,
    so any relabeling of the sites decomposes identically.
    """
    structure = pair_orbits(group)
    diag = structure.diagonal_label
    sizes = structure.orbit_sizes()
    off = [lab for lab in structure.labels if lab != diag]
    if group.kind == "tetra":
        (b,) = off
        return [
            IrrepBlockSpec("1dim", 1, {diag: 1.0, b: 3.0}),
            IrrepBlockSpec("3dim", 3, {diag: 1.0, b: -1.0}),
        ]
    if group.kind == "octa":
        anti = [lab for lab in off if sizes[lab] == group.sites // 2]
        adj = [lab for lab in off if sizes[lab] != group.sites // 2]
        if len(anti) != 1 or len(adj) != 1:
            raise InvalidInputError("unexpected octahedron orbit structure")
        b, c = adj[0], anti[0]
        return [
            IrrepBlockSpec("1dim", 1, {diag: 1.0, b: 4.0, c: 1.0}),
            IrrepBlockSpec("2dim", 2, {diag: 1.0, b: -2.0, c: 1.0}),
            IrrepBlockSpec("3dim", 3, {diag: 1.0, c: -1.0}),
        ]
    if group.kind == "cube":
        b, c, d = _classify_cube_offdiagonal(structure)
        return [
            IrrepBlockSpec("1dim+", 1, {diag: 1.0, b: 3.0, c: 3.0, d: 1.0}),
            IrrepBlockSpec("1dim-", 1, {diag: 1.0, b: -3.0, c: 3.0, d: -1.0}),
            IrrepBlockSpec("3dim+", 3, {diag: 1.0, b: 1.0, c: -1.0, d: -1.0}),
            IrrepBlockSpec("3dim-", 3, {diag: 1.0, b: -1.0, c: -1.0, d: 1.0}),
        ]
    raise InvalidInputError(
        f"no polyhedral decomposition for group {group.name!r}; "
        "use the cyclic Fourier path for cyclic groups"
    )


def _zeta(j: int, n: int) -> float:
    """Double-counting weight of distance j in the C_n Fourier sum."""
    return 1.0 if (n % 2 == 0 and j == n // 2) else 2.0


def _cos_angle(k: int, j: int, n: int) -> float:
    # canonical reduction of cos(2*pi*k*j/n) so that the k and n-k
    # blocks come out bitwise identical; quarter-period multiples are
    # snapped to their exact values
    r = (k * j) % n
    r = min(r, n - r)
    if r == 0:
        return 1.0
    if 2 * r == n:
        return -1.0
    if 4 * r == n:
        return 0.0
    return math.cos(2.0 * math.pi * r / n)


def decompose_cyclic(n: int) -> list[IrrepBlockSpec]:
    """Fourier block structure of a C_n invariant matrix.

    Block k (k = 0..floor(n/2)) combines the distance blocks F_0..F_d
    (orbit labels A, B, ... in distance order) with weights
    ``zeta_{j,n} cos(2 pi k j / n)``; blocks with 0 < k < n/2 occur
    twice (the k and n-k Fourier modes coincide).
    """
    if n < 2:
        raise InvalidInputError("cyclic group needs n >= 2")
    half = n // 2
    labels = [chr(ord("A") + j) for j in range(half + 1)]
    specs = []
    for k in range(half + 1):
        coeff = {labels[0]: 1.0}
        for j in range(1, half + 1):
            coeff[labels[j]] = _zeta(j, n) * _cos_angle(k, j, n)
        copies = 1 if k == 0 or (n % 2 == 0 and k == half) else 2
        specs.append(IrrepBlockSpec(f"k={k}", copies, coeff))
    return specs


def decompose(group: PointGroup) -> list[IrrepBlockSpec]:
    """Block specs for any supported group, keyed by its own orbit labels."""
    if group.kind == "cyclic":
        specs = decompose_cyclic(group.sites)
        structure = pair_orbits(group)
        # walk the generator to find which orbit label carries each
        # cyclic distance (identity mapping for the canonical numbering,
        # but correct for any relabeling)
        gen = group.generators[0]
        site = 0
        by_distance = [structure.diagonal_label]
        for _ in range(group.sites // 2):
            site = gen[site]
            by_distance.append(structure.label(0, site))
        remap = {chr(ord("A") + j): lab for j, lab in enumerate(by_distance)}
        return [
            IrrepBlockSpec(s.label, s.copies,
                           {remap[lab]: c for lab, c in s.coefficients.items()})
            for s in specs
        ]
    return decompose_polyhedral(group)


@dataclass(frozen=True)
class CnBlockSet:
    """All n Fourier blocks h_0..h_{n-1} of a C_n invariant matrix."""

    n: int
    blocks: tuple[SymMatrix, ...]
    zeta: tuple[float, ...]


def cn_blocks(n: int, distance_blocks: Sequence) -> CnBlockSet:
    """Fourier blocks of the C_n invariant built from distance blocks.

    ``distance_blocks`` lists F_0..F_{floor(n/2)} (scalars allowed);
    block k is ``F_0 + sum_j zeta_{j,n} cos(2 pi k j / n) F_j``.  The
    cosine argument is reduced to [0, pi] before evaluation, which
    makes ``blocks[k]`` and ``blocks[n-k]`` bitwise equal.
    """
    if n < 2:
        raise InvalidInputError("n must be >= 2")
    half = n // 2
    if len(distance_blocks) != half + 1:
        raise InvalidInputError(
            f"expected {half + 1} distance blocks for n={n}, got {len(distance_blocks)}"
        )
    fs = []
    m = None
    for f in distance_blocks:
        arr = np.asarray(f, dtype=np.float64)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        if m is not None and arr.shape != (m, m):
            raise InvalidInputError("distance blocks must share one size")
        m = arr.shape[0]
        fs.append(SymMatrix(arr).values)
    blocks = []
    for k in range(n):
        hk = fs[0].copy()
        for j in range(1, half + 1):
            hk += (_zeta(j, n) * _cos_angle(k, j, n)) * fs[j]
        blocks.append(SymMatrix.symmetrized(hk))
    zeta = tuple(_zeta(j, n) for j in range(1, half + 1))
    return CnBlockSet(n, tuple(blocks), zeta)


def cn_variance_factors(n: int) -> np.ndarray:
    """Predicted Var/sigma0^2 of each Fourier block's elements, k = 0..n-1.

    ``factor_k = 1 + sum_j zeta_{j,n}^2 cos^2(2 pi k j / n)``.  The
    k = 0 block always attains the maximum; for even n the k = n/2
    block ties it exactly (every cosine is +-1 there), which is why the
    deepest ground states of an even cycle live in one of those two
    blocks.
    """
    if n < 2:
        raise InvalidInputError("n must be >= 2")
    half = n // 2
    out = np.empty(n, dtype=np.float64)
    for k in range(n):
        acc = 1.0
        for j in range(1, half + 1):
            c = _cos_angle(k, j, n)
            acc += (_zeta(j, n) ** 2) * c * c
        out[k] = acc
    return out


def block_spectra(
    group: PointGroup,
    blocks: Mapping[str, np.ndarray],
    options: EigenOptions | None = None,
) -> Spectrum:
    """Spectrum of the invariant matrix computed block by block.

    Concatenates the eigenvalues of every combination block, repeated
    by multiplicity, and sorts: equal (to 1e-8 and usually much better)
    to the dense spectrum of ``build_invariant(group, blocks)``.
    """
    values = []
    for spec in decompose(group):
        ev = eigensolve(SymMatrix.symmetrized(spec.combination(blocks)), options=options).eigenvalues
        for _ in range(spec.copies):
            values.append(ev)
    return Spectrum(np.sort(np.concatenate(values)))


def sample_invariant(group: PointGroup, cfg: EnsembleConfig, trial_index: int = 0):
    """Draw one invariant matrix; returns (matrix, blocks used)."""
    structure = pair_orbits(group)
    blocks = draw_label_blocks(
        structure.labels, cfg.m, cfg.master_seed, trial_index, cfg.sigma0
    )
    return build_invariant(group, blocks), blocks


@dataclass(frozen=True)
class CensusRow:
    label: str
    copies: int
    block_dim: int
    variance_factor: float
    gs_count: int
    trials: int
    sites: int

    @property
    def gs_fraction(self) -> float:
        return self.gs_count / self.trials

    @property
    def dimensional_fraction(self) -> float:
        return self.copies / self.sites


@dataclass(frozen=True)
class CensusResult:
    """Which irrep block holds the ground state, tallied over an ensemble."""

    rows: tuple[CensusRow, ...]
    trials: int
    tie_count: int
    config: EnsembleConfig

    def fraction(self, label: str) -> float:
        for row in self.rows:
            if row.label == label:
                return row.gs_fraction
        raise KeyError(label)


def _census_from_specs(
    specs: Sequence[IrrepBlockSpec],
    labels: Sequence[str],
    sites: int,
    cfg: EnsembleConfig,
    threads: int = 1,
) -> CensusResult:
    m = cfg.m

    def worker(trial):
        blocks = draw_label_blocks(labels, m, cfg.master_seed, trial, cfg.sigma0)
        minima = np.empty(len(specs))
        for i, spec in enumerate(specs):
            combo = spec.combination(blocks)
            minima[i] = combo[0, 0] if m == 1 else np.linalg.eigvalsh(combo)[0]
        winner = int(np.argmin(minima))
        tie = int(np.count_nonzero(minima == minima[winner]) > 1)
        return winner, tie

    outcomes = run_trials(worker, cfg.trials, threads)
    counts = np.zeros(len(specs), dtype=np.int64)
    ties = 0
    for winner, tie in outcomes:
        counts[winner] += 1
        ties += tie
    rows = tuple(
        CensusRow(spec.label, spec.copies, m, spec.variance_factor,
                  int(counts[i]), cfg.trials, sites)
        for i, spec in enumerate(specs)
    )
    return CensusResult(rows, cfg.trials, ties, cfg)


def ground_state_irrep_census(cfg: EnsembleConfig, threads: int = 1) -> CensusResult:
    """Fraction of ensemble ground states landing in each irrep block.

    For each of ``cfg.trials`` trials, draws one symmetric random block
    per orbit label (trial- and label-private streams), forms every
    combination block, and records which block attains the global
    minimum eigenvalue.  Exact ties are counted toward the earlier
    block in canonical order and tallied in ``tie_count`` (they have
    probability zero, so a nonzero tally flags a construction bug).
    """
    if cfg.group is None:
        raise InvalidInputError("EnsembleConfig.group must be set for a census")
    group = build_group(cfg.group, cfg.n)
    structure = pair_orbits(group)
    specs = decompose(group)
    return _census_from_specs(specs, structure.labels, group.sites, cfg, threads)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_census_csv(result: CensusResult, destination) -> None:
    """Write a census as CSV.

    Columns: irrep_label, copies, block_dim, predicted_variance_factor,
    gs_fraction, dimensional_fraction.
    """

    def _write(fh):
        fh.write(
            "irrep_label,copies,block_dim,predicted_variance_factor,"
            "gs_fraction,dimensional_fraction\n"
        )
        for row in result.rows:
            fh.write(
                f"{row.label},{row.copies},{row.block_dim},"
                f"{_fmt(row.variance_factor)},{_fmt(row.gs_fraction)},"
                f"{_fmt(row.dimensional_fraction)}\n"
            )

    if isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__"):
        with open(destination, "w", encoding="ascii", newline="") as fh:
            _write(fh)
    else:
        _write(destination)


def census_csv_text(result: CensusResult) -> str:
    buf = io.StringIO()
    write_census_csv(result, buf)
    return buf.getvalue()
