"""Constructors for the parameterized bi-qutrit state families.

All constructors return matrices exactly as parameterized (unnormalized);
use :func:`edgelab.linalg.trace_normalized` for a density matrix.  The 9x9
layout follows the block convention of :class:`~edgelab.linalg.BipartiteOperator`:
composite index ``(i, k) -> 3*i + k``.

The phase-coupled entries of every family live on the principal submatrix
with indices ``{0, 4, 8}`` (the "diagonal" product-basis vectors), while the
remaining six coordinates pair up as ``{1, 3}``, ``{2, 6}`` and ``{5, 7}``.
Ranks and kernels of the families decompose accordingly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    GramNotPSDError,
    InvalidParamError,
    OffdiagTooLargeError,
)
from .linalg import BipartiteOperator, is_psd, tensor

# Coordinates coupled by phases, and the coordinate pairs carrying the
# off-diagonal inner products of the face family (state side / transpose side).
DIAGONAL_TRIPLE = (0, 4, 8)
FACE_COUPLINGS = ((3, 1), (7, 5), (2, 6))

OFFDIAG_SLACK = 1e-12


def edge_condition_holds(b: float, theta: float) -> bool:
    """Strict parameter condition of the edge family: b > 0, 0 < |theta| < pi/3."""
    return b > 0 and 0 < abs(theta) < math.pi / 3


def phase_circulant(theta: float) -> np.ndarray:
    """3x3 Hermitian circulant with diagonal 2cos(theta) and off-diagonals -e^{+-i theta}.

    Annihilates (1, 1, 1); PSD exactly for |theta| <= pi/3, with rank two in
    the open interval and rank one at the endpoints.
    """
    e = cmath.exp(1j * theta)
    d = 2 * math.cos(theta)
    return np.array(
        [
            [d, -e, -e.conjugate()],
            [-e.conjugate(), d, -e],
            [-e, -e.conjugate(), d],
        ]
    )


def min_psd_diagonal(theta: float) -> float:
    """Smallest constant diagonal making the phase-circulant pattern PSD.

    The circulant eigenvalues are ``d - 2cos(theta + 2k*pi/3)``, so the
    minimum is the largest of the three shifted cosines.
    """
    third = 2 * math.pi / 3
    return max(2 * math.cos(theta - third), 2 * math.cos(theta), 2 * math.cos(theta + third))


def _coupled_core(b: float, diagonal: float, theta: float) -> np.ndarray:
    if b <= 0:
        raise InvalidParamError(f"b must be positive, got {b}")
    a = np.zeros((9, 9), dtype=complex)
    core = phase_circulant(theta)
    np.fill_diagonal(core, diagonal)
    a[np.ix_(DIAGONAL_TRIPLE, DIAGONAL_TRIPLE)] = core
    for idx, val in ((1, 1 / b), (2, b), (3, b), (5, 1 / b), (6, 1 / b), (7, b)):
        a[idx, idx] = val
    return a


def edge_state(b: float, theta: float) -> BipartiteOperator:
    """The phase-parameterized 9x9 family with ranks (8, 6).

    Diagonal ``(2cos(theta), 1/b, b, b, 2cos(theta), 1/b, 1/b, b, 2cos(theta))``
    with the phase circulant on coordinates ``{0, 4, 8}``.  PPT whenever
    |theta| <= pi/3; an entangled edge state under the strict condition
    (see :func:`edge_condition_holds`).
    """
    return BipartiteOperator(3, 3, _coupled_core(b, 2 * math.cos(theta), theta))


def generalized_edge_state(b: float, theta: float) -> BipartiteOperator:
    """Edge-family variant that stays PPT for every theta.

    The three phase-coupled diagonal entries are raised to the smallest value
    keeping that block PSD; for |theta| <= pi/3 this coincides with
    :func:`edge_state`.
    """
    return BipartiteOperator(3, 3, _coupled_core(b, min_psd_diagonal(theta), theta))


def corner_state(b: float) -> BipartiteOperator:
    """The all-ones-corner family of ranks (7, 6).

    Same diagonal pattern as the edge family with the phase entries replaced
    by +1 couplings and unit phase-diagonal; an edge state exactly when b != 1.
    """
    if b <= 0:
        raise InvalidParamError(f"b must be positive, got {b}")
    a = np.zeros((9, 9), dtype=complex)
    a[np.ix_(DIAGONAL_TRIPLE, DIAGONAL_TRIPLE)] = np.ones((3, 3))
    for idx, val in ((1, 1 / b), (2, b), (3, b), (5, 1 / b), (6, 1 / b), (7, b)):
        a[idx, idx] = val
    return BipartiteOperator(3, 3, a)


def cyclic_map_apply(a: float, b: float, c: float, x: np.ndarray) -> np.ndarray:
    """Apply the cyclically-weighted reduction map to a 3x3 matrix.

    Diagonal output entries are the cyclic weighted sums of the input
    diagonal; off-diagonal entries are negated.
    """
    if min(a, b, c) < 0:
        raise InvalidParamError("weights must be nonnegative")
    x = np.asarray(x, dtype=complex)
    if x.shape != (3, 3):
        raise DimensionMismatchError(f"expected a 3x3 matrix, got shape {x.shape}")
    d = np.diag(x)
    out = -x.copy()
    weights = np.array([[a, b, c], [c, a, b], [b, c, a]])
    np.fill_diagonal(out, weights @ d)
    return out


def choi_matrix(a: float, b: float, c: float) -> BipartiteOperator:
    """Choi matrix of the cyclically-weighted map: blocks are its values on e_ij.

    PPT if and only if ``a >= 2`` and ``b * c >= 1``.
    """
    mat = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            unit = np.zeros((3, 3), dtype=complex)
            unit[i, j] = 1.0
            mat[3 * i : 3 * i + 3, 3 * j : 3 * j + 3] = cyclic_map_apply(a, b, c, unit)
    return BipartiteOperator(3, 3, mat)


def separable_decomposition(b: float):
    """The nine product-vector pairs reconstructing the theta = 0 edge state.

    Returns ``[(x, y), ...]`` such that ``sum proj(x (x) y) / (3 b)`` equals
    ``edge_state(b, 0)``; the phases run over the third roots of unity.
    """
    if b <= 0:
        raise InvalidParamError(f"b must be positive, got {b}")
    sb = math.sqrt(b)
    roots = [cmath.exp(2j * math.pi * k / 3) for k in (0, 1, -1)]
    pairs = []
    for factors in (
        lambda w: ((0, 1, sb * w), (0, sb, -w.conjugate())),
        lambda w: ((sb * w, 0, 1), (-w.conjugate(), 0, sb)),
        lambda w: ((1, sb * w, 0), (sb, -w.conjugate(), 0)),
    ):
        for w in roots:
            x, y = factors(w)
            pairs.append((np.array(x, dtype=complex), np.array(y, dtype=complex)))
    return pairs


def offdiag_gram(theta: float, rho: complex, sigma: complex, tau: complex) -> np.ndarray:
    """3x3 Hermitian matrix with diagonal 2cos(theta) and prescribed off-diagonals.

    Row/column order matches the three abstract vectors of the face family;
    ``rho``, ``sigma``, ``tau`` sit at positions (0,1), (1,2) and (2,0).
    With all three equal to ``-e^{i theta}`` this is :func:`phase_circulant`.
    """
    d = 2 * math.cos(theta)
    rho, sigma, tau = complex(rho), complex(sigma), complex(tau)
    return np.array(
        [
            [d, rho, tau.conjugate()],
            [rho.conjugate(), d, sigma],
            [tau, sigma.conjugate(), d],
        ]
    )


@dataclass(frozen=True)
class GramSpec:
    """Off-diagonal inner products (and phase) defining a face-family state.

    ``xi_eta``, ``eta_zeta`` and ``zeta_xi`` are the pairwise inner products
    of three abstract vectors whose common squared norm is ``2cos(theta)``.
    """

    theta: float
    xi_eta: complex = 0j
    eta_zeta: complex = 0j
    zeta_xi: complex = 0j

    def offdiagonals(self) -> tuple[complex, complex, complex]:
        return (complex(self.xi_eta), complex(self.eta_zeta), complex(self.zeta_xi))

    def gram(self) -> np.ndarray:
        """The implied 3x3 Gram matrix."""
        return offdiag_gram(self.theta, *self.offdiagonals())


def face_state(b: float, g: GramSpec) -> BipartiteOperator:
    """State in the face spanned by the edge family, with prescribed couplings.

    Equals ``edge_state(b, g.theta)`` plus the three inner products (and their
    conjugates) on the coordinate pairs {1,3}, {5,7}, {2,6}.  The rank of the
    result is ``2 + sum(rank of the three 2x2 coupling blocks)``; the rank of
    its partial transpose is ``3 + rank(g.gram())``.
    """
    offdiags = g.offdiagonals()
    for val in offdiags:
        if abs(val) > 1 + OFFDIAG_SLACK:
            raise OffdiagTooLargeError(f"|{val}| > 1")
    if not is_psd(g.gram()):
        raise GramNotPSDError("implied Gram matrix is not PSD")
    x = edge_state(b, g.theta).mat
    for (row, col), val in zip(FACE_COUPLINGS, offdiags):
        x[row, col] = val
        x[col, row] = val.conjugate()
    return BipartiteOperator(3, 3, x)


def singular_gram_offdiags(theta: float, target_p: int) -> tuple[complex, complex, complex]:
    """Off-diagonals making the Gram matrix singular (rank two).

    The face state built from them has partial-transpose rank 5 and rank
    ``target_p``; the choice pins ``8 - target_p`` entries to absolute value
    one.  Valid for theta satisfying the strict edge condition.
    """
    if not edge_condition_holds(1.0, theta):
        raise InvalidParamError("theta must satisfy 0 < |theta| < pi/3")
    ct = math.cos(theta)
    if target_p == 8:
        out = (-ct, -ct, -ct)
    elif target_p == 7:
        r = math.sqrt(2 * ct * ct - ct)
        out = (r, -r, 1.0)
    elif target_p == 6:
        r = -math.cos(2 * theta) / ct
        out = (1.0, 1.0, r)
    elif target_p == 5:
        e = -cmath.exp(1j * theta)
        out = (e, e, e)
    else:
        raise InvalidParamError(f"target_p must be in 5..8, got {target_p}")
    if any(abs(v) > 1 + OFFDIAG_SLACK for v in out):
        raise InvalidParamError("computed off-diagonal left the closed unit disk")
    return tuple(complex(v) for v in out)


def product_vector(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Convenience wrapper: the composite vector of a factor pair."""
    return tensor(np.asarray(x, dtype=complex).ravel(), np.asarray(y, dtype=complex).ravel())
