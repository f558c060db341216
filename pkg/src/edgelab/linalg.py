"""Complex dense linear algebra primitives.

Everything operates on plain ``numpy`` complex arrays.  Block operators on a
tensor product of two factors are carried by :class:`BipartiteOperator`, which
fixes the index convention used throughout the package: the composite row
index is ``(i, k) -> i * n + k`` with ``i`` in the first (m-dimensional)
factor and ``k`` in the second (n-dimensional) one.  Equivalently, a block
operator is a grid of m x m blocks of size n x n, and ``numpy.kron`` realizes
the tensor product in exactly this layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError, NotPSDError

# Default tolerances.  Ranks use a relative singular-value threshold; PSD
# checks use an absolute floor on the smallest eigenvalue so that boundary
# families (which are PSD by construction but accumulate rounding) pass.
RANK_RTOL = 1e-9
PSD_ATOL = 1e-10
HERM_RTOL = 1e-10


def _as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


@dataclass(frozen=True)
class BipartiteOperator:
    """A square matrix on an (m x n)-dimensional tensor-product space.

    ``mat[(i, k), (j, l)]`` with composite indices ``i*n + k`` and ``j*n + l``
    is the ``(k, l)`` entry of the n x n block ``B_ij``.
    """

    m: int
    n: int
    mat: np.ndarray

    def __post_init__(self):
        d = self.m * self.n
        object.__setattr__(self, "mat", _as_complex(self.mat))
        if self.m <= 0 or self.n <= 0:
            raise DimensionMismatchError("local dimensions must be positive")
        if self.mat.shape != (d, d):
            raise DimensionMismatchError(
                f"matrix shape {self.mat.shape} does not match local dims ({self.m}, {self.n})"
            )
        if not np.all(np.isfinite(self.mat)):
            raise ValueError("matrix entries must be finite")

    @property
    def dim(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class Subspace:
    """An orthonormal basis (columns) for a kernel or range.

    ``basis`` has shape ``(ambient_dim, dim)``; a zero-dimensional subspace is
    represented by a basis with zero columns.
    """

    ambient_dim: int
    basis: np.ndarray
    tol: float = RANK_RTOL

    def __post_init__(self):
        object.__setattr__(self, "basis", _as_complex(self.basis))
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise DimensionMismatchError("basis must have ambient_dim rows")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def residual(self, v: np.ndarray) -> float:
        """Distance of the unit-normalized vector from the subspace."""
        v = _as_complex(v).ravel()
        nrm = np.linalg.norm(v)
        if nrm == 0:
            return 0.0
        v = v / nrm
        return float(np.linalg.norm(v - self.basis @ (self.basis.conj().T @ v)))


def tensor(a, b) -> np.ndarray:
    """Kronecker product in the composite-index convention above."""
    return np.kron(_as_complex(a), _as_complex(b))


def partial_transpose(s: BipartiteOperator) -> BipartiteOperator:
    """Transpose the first tensor factor only.

    The output entry at ``((i, k), (j, l))`` is the input entry at
    ``((j, k), (i, l))``; applied twice it is the identity, exactly.
    """
    m, n = s.m, s.n
    t = s.mat.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)
    return BipartiteOperator(m, n, t)


def _check_hermitian(m: np.ndarray, rtol: float = HERM_RTOL) -> np.ndarray:
    """Validate near-Hermiticity and return the symmetrized matrix."""
    m = _as_complex(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    scale = np.linalg.norm(m)
    asym = np.linalg.norm(m - m.conj().T)
    if asym > rtol * max(scale, 1.0):
        raise NotHermitianError(
            f"not Hermitian: relative asymmetry {asym / max(scale, 1.0):.3e} exceeds {rtol:.1e}"
        )
    return (m + m.conj().T) / 2


def hermitian_eig(m: np.ndarray, rtol: float = HERM_RTOL):
    """Eigendecomposition of a (nearly) Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    orthonormal eigenvector columns.  Raises :class:`NotHermitianError` if the
    relative asymmetry exceeds ``rtol``; otherwise the symmetrized matrix
    ``(m + m^H)/2`` is decomposed.
    """
    h = _check_hermitian(m, rtol)
    vals, vecs = np.linalg.eigh(h)
    return vals, vecs


def numerical_rank(m: np.ndarray, rel_tol: float = RANK_RTOL) -> int:
    """Number of singular values above ``rel_tol`` times the largest one."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    s = np.linalg.svd(_as_complex(m), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def kernel_basis(m: np.ndarray, rel_tol: float = RANK_RTOL) -> Subspace:
    """Orthonormal basis of the (right) null space."""
    m = _as_complex(m)
    _, s, vh = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    r = int(np.count_nonzero(s > rel_tol * smax)) if smax > 0 else 0
    return Subspace(m.shape[1], vh[r:].conj().T, rel_tol)


def range_basis(m: np.ndarray, rel_tol: float = RANK_RTOL) -> Subspace:
    """Orthonormal basis of the column space."""
    m = _as_complex(m)
    u, s, _ = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    r = int(np.count_nonzero(s > rel_tol * smax)) if smax > 0 else 0
    return Subspace(m.shape[0], u[:, :r], rel_tol)


def is_psd(m: np.ndarray, abs_tol: float = PSD_ATOL) -> bool:
    """True iff the symmetrized matrix has min eigenvalue >= -abs_tol * max(1, ||m||_2)."""
    h = _check_hermitian(m)
    vals = np.linalg.eigvalsh(h)
    scale = max(1.0, float(np.max(np.abs(vals))) if vals.size else 0.0)
    return bool(vals[0] >= -abs_tol * scale)


def projector(s: Subspace) -> np.ndarray:
    """Orthogonal projector onto the subspace (zero matrix if empty)."""
    if s.dim == 0:
        return np.zeros((s.ambient_dim, s.ambient_dim), dtype=complex)
    return s.basis @ s.basis.conj().T


def proj(v) -> np.ndarray:
    """Rank-one projector ``v v^H`` onto a (not necessarily unit) vector."""
    v = _as_complex(v).reshape(-1, 1)
    return v @ v.conj().T


def hadamard(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise product of two same-shaped matrices."""
    a, b = _as_complex(a), _as_complex(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return a * b


def gram_realization(g: np.ndarray, rel_tol: float = RANK_RTOL) -> np.ndarray:
    """Realize a PSD Gram matrix ``g`` as ``V V^H``.

    Row ``i`` of the returned ``V`` is a concrete coordinate vector for the
    i-th abstract vector; the number of columns equals ``numerical_rank(g)``.
    """
    h = _check_hermitian(g)
    if not is_psd(h):
        raise NotPSDError("gram matrix has a negative eigenvalue beyond tolerance")
    r = numerical_rank(h, rel_tol)
    vals, vecs = np.linalg.eigh(h)
    top_vals = np.clip(vals[::-1][:r], 0.0, None)
    top_vecs = vecs[:, ::-1][:, :r]
    return top_vecs * np.sqrt(top_vals)


def trace_normalized(s: BipartiteOperator) -> BipartiteOperator:
    """Scale to unit trace (families are constructed unnormalized)."""
    tr = np.trace(s.mat).real
    if tr <= 0:
        raise NotPSDError("cannot trace-normalize a matrix with nonpositive trace")
    return BipartiteOperator(s.m, s.n, s.mat / tr)
