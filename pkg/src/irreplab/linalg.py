"""Dense real symmetric matrices and their eigendecomposition.

`SymMatrix` is the numeric carrier used everywhere else in the package;
it enforces exact (bitwise) symmetry at construction.  `eigensolve`
provides two interchangeable engines: LAPACK (`numpy.linalg.eigh`, the
default) and a self-contained cyclic Jacobi sweep used to cross-check
the LAPACK results in the test suite.

A plain text matrix format is defined for interchange: first line the
dimension, then one row of space-separated decimals per line.  The
parser symmetrizes what it reads and reports the largest asymmetry it
had to repair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NumericFailureError

__all__ = [
    "SymMatrix",
    "Spectrum",
    "EigenOptions",
    "eigensolve",
    "similarity",
    "multiset_deviation",
    "spectrum_multiset_equal",
    "write_matrix_text",
    "read_matrix_text",
]


class SymMatrix:
    """A dense real symmetric matrix with immutable storage.

    Parameters
    ----------
    values : array_like
        Square matrix, symmetric to the bit.  Use :meth:`symmetrized`
        when the data carries floating-point asymmetry.
    """

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.array(values, dtype=np.float64, copy=True)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidInputError(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise InvalidInputError("matrix dimension must be >= 1")
        if not np.array_equal(arr, arr.T):
            raise InvalidInputError(
                "matrix is not exactly symmetric; use SymMatrix.symmetrized()"
            )
        arr.flags.writeable = False
        self._values = arr

    @classmethod
    def symmetrized(cls, values):
        """Build from possibly asymmetric data via (M + M^T)/2."""
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidInputError(f"expected a square matrix, got shape {arr.shape}")
        return cls(0.5 * (arr + arr.T))

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def dim(self) -> int:
        return self._values.shape[0]

    def __getitem__(self, key):
        return self._values[key]

    def max_abs(self) -> float:
        """Largest entry magnitude, ||H||_max."""
        return float(np.max(np.abs(self._values)))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self._values))

    def __repr__(self):
        return f"SymMatrix(dim={self.dim})"


def _as_sym(h) -> SymMatrix:
    return h if isinstance(h, SymMatrix) else SymMatrix(h)


@dataclass(frozen=True)
class EigenOptions:
    """Tunable tolerances for `eigensolve`.

    engine : "lapack" uses numpy.linalg.eigh; "jacobi" runs cyclic
    Jacobi sweeps until the off-diagonal Frobenius norm drops below
    ``jacobi_tol * ||H||_F`` (the Frobenius norm is rotation invariant,
    so the threshold is fixed once per matrix).
    """

    engine: str = "lapack"
    jacobi_tol: float = 1e-12
    max_sweeps: int = 100
    verify: bool = True
    residual_scale: float = 1e-8

    def __post_init__(self):
        if self.engine not in ("lapack", "jacobi"):
            raise InvalidInputError(f"unknown eigensolver engine {self.engine!r}")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order, optionally with eigenvectors.

    When present, ``eigenvectors`` holds one orthonormal eigenvector per
    column, aligned with ``eigenvalues``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=np.float64)
        if ev.ndim != 1:
            raise InvalidInputError("eigenvalues must be a 1-d sequence")
        if np.any(np.diff(ev) < 0):
            raise InvalidInputError("eigenvalues must be sorted ascending")
        ev = ev.copy()
        ev.flags.writeable = False
        object.__setattr__(self, "eigenvalues", ev)
        if self.eigenvectors is not None:
            vec = np.array(self.eigenvectors, dtype=np.float64)
            if vec.shape != (ev.size, ev.size):
                raise InvalidInputError("eigenvector matrix has wrong shape")
            vec.flags.writeable = False
            object.__setattr__(self, "eigenvectors", vec)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def _jacobi_rotate(a, v, p, q):
    apq = a[p, q]
    gap = a[q, q] - a[p, p]
    if abs(gap) + 100.0 * abs(apq) == abs(gap):
        # pivot negligible next to the diagonal gap; the small-angle
        # limit avoids overflow in theta**2
        t = apq / gap
    else:
        theta = 0.5 * gap / apq
        t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    if v is not None:
        v_p = v[:, p].copy()
        v[:, p] = c * v_p - s * v[:, q]
        v[:, q] = s * v_p + c * v[:, q]


def _jacobi_eigensolve(h: SymMatrix, want_vectors: bool, options: EigenOptions):
    a = h.values.copy()
    n = a.shape[0]
    v = np.eye(n) if want_vectors else None
    fro = np.linalg.norm(a)
    threshold = options.jacobi_tol * fro
    sweeps = 0
    while True:
        off = math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, 1)))
        if off <= threshold:
            break
        if sweeps >= options.max_sweeps:
            raise NumericFailureError(
                f"Jacobi eigensolver did not converge after {sweeps} sweeps "
                f"(off-diagonal norm {off:.3e}, threshold {threshold:.3e})",
                sweeps=sweeps,
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _jacobi_rotate(a, v, p, q)
        sweeps += 1
    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    if want_vectors:
        return eigenvalues, v[:, order]
    return eigenvalues, None


def eigensolve(h, want_vectors: bool = False, options: EigenOptions | None = None) -> Spectrum:
    """Full eigendecomposition of a symmetric matrix.

    Parameters
    ----------
    h : SymMatrix or array_like
        Matrix to decompose; arrays must be exactly symmetric.
    want_vectors : bool
        Also return the orthogonal eigenvector matrix (one per column).
    options : EigenOptions
        Engine and tolerance configuration.

    Raises
    ------
    InvalidInputError
        Non-finite entries.
    NumericFailureError
        Engine failed to converge, or (with ``options.verify``) the
        reconstruction ``V diag(w) V^T`` misses ``h`` by more than
        ``residual_scale * dim * ||h||_max``.
    """
    h = _as_sym(h)
    options = options or EigenOptions()
    if not np.all(np.isfinite(h.values)):
        raise InvalidInputError("matrix entries must be finite")
    if options.engine == "jacobi":
        eigenvalues, vectors = _jacobi_eigensolve(h, want_vectors, options)
    else:
        try:
            if want_vectors:
                eigenvalues, vectors = np.linalg.eigh(h.values)
            else:
                eigenvalues, vectors = np.linalg.eigvalsh(h.values), None
        except np.linalg.LinAlgError as exc:
            raise NumericFailureError(f"LAPACK eigensolver failed: {exc}") from exc
    if want_vectors and options.verify:
        resid = np.max(np.abs((vectors * eigenvalues) @ vectors.T - h.values))
        bound = options.residual_scale * h.dim * max(1.0, h.max_abs())
        if resid > bound:
            raise NumericFailureError(
                f"eigendecomposition residual {resid:.3e} exceeds bound {bound:.3e}"
            )
    return Spectrum(eigenvalues, vectors)


def similarity(h, p, ortho_tol: float = 1e-10) -> SymMatrix:
    """Orthogonal similarity transform ``P^T H P``.

    ``p`` must be orthogonal: ``||P^T P - I||_max <= ortho_tol``.
    The spectrum of the result equals the spectrum of ``h``.
    """
    h = _as_sym(h)
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (h.dim, h.dim):
        raise InvalidInputError("transform shape does not match matrix")
    defect = np.max(np.abs(p.T @ p - np.eye(h.dim)))
    if defect > ortho_tol:
        raise InvalidInputError(
            f"matrix is not orthogonal (||P^T P - I||_max = {defect:.3e})"
        )
    return SymMatrix.symmetrized(p.T @ h.values @ p)


def multiset_deviation(a, b) -> float:
    """Largest elementwise gap between two ascending eigenvalue lists."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size != b.size:
        raise InvalidInputError(
            f"spectra have different sizes ({a.size} vs {b.size})"
        )
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def spectrum_multiset_equal(a, b, tol: float) -> bool:
    """True iff the two ascending lists agree elementwise within ``tol``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size != b.size:
        return False
    return bool(a.size == 0 or np.max(np.abs(a - b)) <= tol)


def write_matrix_text(h, path, digits: int = 17) -> None:
    """Write a matrix in the text interchange format."""
    h = _as_sym(h)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{h.dim}\n")
        for row in h.values:
            fh.write(" ".join(f"{x:.{digits}g}" for x in row))
            fh.write("\n")


def read_matrix_text(path) -> tuple[SymMatrix, float]:
    """Read the text format; returns (matrix, max asymmetry repaired)."""
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln for ln in (line.strip() for line in fh) if ln]
    if not lines:
        raise InvalidInputError(f"{path}: empty matrix file")
    try:
        dim = int(lines[0])
    except ValueError as exc:
        raise InvalidInputError(f"{path}: first line must be the dimension") from exc
    if dim < 1:
        raise InvalidInputError(f"{path}: dimension must be >= 1")
    if len(lines) - 1 != dim:
        raise InvalidInputError(
            f"{path}: expected {dim} rows, found {len(lines) - 1}"
        )
    rows = []
    for ln in lines[1:]:
        try:
            row = [float(tok) for tok in ln.split()]
        except ValueError as exc:
            raise InvalidInputError(f"{path}: malformed number in row") from exc
        if len(row) != dim:
            raise InvalidInputError(f"{path}: row of length {len(row)}, expected {dim}")
        rows.append(row)
    m = np.array(rows, dtype=np.float64)
    asym = float(np.max(np.abs(m - m.T))) if dim > 0 else 0.0
    return SymMatrix.symmetrized(m), asym
