"""Verdicts: PSD/PPT checks, (p, q) types, rank-bound admissibility,
range-criterion checks, separable reconstruction, and the analytic edge
certificate for the phase-parameterized family.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from .errors import ConditionViolatedError, InvalidParamError
from .linalg import (
    PSD_ATOL,
    RANK_RTOL,
    BipartiteOperator,
    _check_hermitian,
    is_psd,
    numerical_rank,
    partial_transpose,
    proj,
    range_basis,
)
from .states import edge_condition_holds, edge_state, product_vector, separable_decomposition


class Admissibility(Enum):
    """Where a type (p, q) sits relative to the rank bounds for edge states."""

    BELOW_LOWER_BOUND = "BelowLowerBound"
    ADMISSIBLE = "Admissible"
    FORCES_PRODUCT_VECTOR = "ForcesProductVector"


@dataclass(frozen=True)
class Classification:
    is_psd: bool
    is_ppt: bool
    type: tuple[int, int]
    kernel_dims: tuple[int, int]
    admissibility: Admissibility
    rel_tol: float
    abs_tol: float


def alternating_binomial_sum(k: int, ell: int, m: int) -> int:
    """sum over r + s = m - 1 of (-1)^r C(k, r) C(ell, s)."""
    return sum((-1) ** r * comb(k, r) * comb(ell, m - 1 - r) for r in range(m))


def rank_bounds(m: int, n: int, p: int, q: int) -> Admissibility:
    """Admissibility of a type (p, q) for an m x n edge state.

    Ranks at or below max(m, n) force separability; a pair of range/partial
    range dimensions that is too large forces the existence of a product
    vector in the ranges (outright above ``2mn - m - n + 2``, and on that
    boundary whenever the alternating binomial sum is nonzero).
    """
    mn = m * n
    if m < 1 or n < 1:
        raise InvalidParamError("local dimensions must be positive")
    if not (1 <= p <= mn and 1 <= q <= mn):
        raise InvalidParamError(f"ranks must lie in 1..{mn}, got ({p}, {q})")
    if p <= max(m, n) or q <= max(m, n):
        return Admissibility.BELOW_LOWER_BOUND
    boundary = 2 * mn - m - n + 2
    if p + q > boundary:
        return Admissibility.FORCES_PRODUCT_VECTOR
    if p + q == boundary and alternating_binomial_sum(mn - p, mn - q, m) != 0:
        return Admissibility.FORCES_PRODUCT_VECTOR
    return Admissibility.ADMISSIBLE


def classify(
    s: BipartiteOperator, rel_tol: float = RANK_RTOL, abs_tol: float = PSD_ATOL
) -> Classification:
    """PSD/PPT flags, (rank, partial-transpose rank) type, and admissibility."""
    _check_hermitian(s.mat)
    tau = partial_transpose(s)
    psd = is_psd(s.mat, abs_tol)
    ppt = psd and is_psd(tau.mat, abs_tol)
    p = numerical_rank(s.mat, rel_tol)
    q = numerical_rank(tau.mat, rel_tol)
    if p == 0 or q == 0:
        adm = Admissibility.BELOW_LOWER_BOUND
    else:
        adm = rank_bounds(s.m, s.n, p, q)
    return Classification(
        is_psd=psd,
        is_ppt=ppt,
        type=(p, q),
        kernel_dims=(s.dim - p, s.dim - q),
        admissibility=adm,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
    )


@dataclass(frozen=True)
class RangeCriterionCheck:
    holds: bool
    span_dims: tuple[int, int]
    max_residual: float


def check_range_criterion(
    s: BipartiteOperator,
    pairs,
    residual_tol: float = 1e-9,
    rel_tol: float = RANK_RTOL,
) -> RangeCriterionCheck:
    """Do the product vectors witness the range criterion for ``s``?

    Holds iff every ``x (x) y`` lies in the range of ``s`` and every
    ``conj(x) (x) y`` in the range of its partial transpose (residuals at most
    ``residual_tol``), and the two spans fill those ranges completely.
    """
    pairs = list(pairs)
    tau = partial_transpose(s)
    if not pairs:
        return RangeCriterionCheck(False, (0, 0), math.inf)
    r_s = range_basis(s.mat, rel_tol)
    r_t = range_basis(tau.mat, rel_tol)
    direct, conjugated = [], []
    worst = 0.0
    for x, y in pairs:
        v = product_vector(x, y)
        w = product_vector(np.conj(x), y)
        worst = max(worst, r_s.residual(v), r_t.residual(w))
        direct.append(v / np.linalg.norm(v))
        conjugated.append(w / np.linalg.norm(w))
    span_d = numerical_rank(np.column_stack(direct), rel_tol)
    span_e = numerical_rank(np.column_stack(conjugated), rel_tol)
    holds = worst <= residual_tol and (span_d, span_e) == (r_s.dim, r_t.dim)
    return RangeCriterionCheck(holds, (span_d, span_e), worst)


def reconstruct_separable(b: float) -> float:
    """Max-norm error of the product-vector reconstruction of the theta=0 state."""
    target = edge_state(b, 0.0).mat
    total = np.zeros_like(target)
    for x, y in separable_decomposition(b):
        total += proj(product_vector(x, y))
    return float(np.max(np.abs(total / (3 * b) - target)))


def choi_ppt_region(a: float, b: float, c: float) -> bool:
    """Exact PPT region of the cyclically-weighted map: a >= 2 and b*c >= 1."""
    if min(a, b, c) < 0:
        raise InvalidParamError("weights must be nonnegative")
    return a >= 2 and b * c >= 1


class EdgeCertificate(Enum):
    EDGE_CERTIFIED = "EdgeCertified"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class CertificateStep:
    description: str
    margin: float
    ok: bool


@dataclass(frozen=True)
class CertificateTrace:
    b: float
    theta: float
    steps: tuple[CertificateStep, ...]
    verdict: EdgeCertificate


def verify_edge_analytic(b: float, theta: float, margin_tol: float = 1e-12) -> CertificateTrace:
    """Certify the edge property of ``edge_state(b, theta)`` by case analysis.

    A product vector in both ranges must satisfy one orthogonality relation
    against the kernel of the state and three against the kernel of its
    partial transpose.  Multiplying the latter three forces a vanishing
    coordinate (the two sides differ by the factor ``-b^3 e^{3 i theta}``,
    never one for valid parameters), vanishing coordinates pair up between
    the factors, and each of the three remaining cases collapses because
    ``e^{-i theta} / b`` is not a nonnegative real.  Valid only under the
    strict condition; raises :class:`ConditionViolatedError` otherwise.
    """
    if not edge_condition_holds(b, theta):
        raise ConditionViolatedError(
            f"(b, theta) = ({b}, {theta}) must satisfy b > 0 and 0 < |theta| < pi/3"
        )
    product_margin = abs(b**3 + cmath.exp(-3j * theta))
    collapse_margin = abs(math.sin(theta)) / b
    steps = [
        CertificateStep(
            "product of the three coupling relations forces a vanishing coordinate",
            product_margin,
            product_margin > margin_tol,
        ),
        CertificateStep(
            "a vanishing coordinate propagates between the two factors",
            float(b),
            b > 0,
        ),
    ]
    for i in (1, 2, 3):
        steps.append(
            CertificateStep(
                f"case x_{i} = y_{i} = 0 collapses to the zero product vector",
                collapse_margin,
                collapse_margin > margin_tol,
            )
        )
    certified = all(step.ok for step in steps)
    return CertificateTrace(
        b=b,
        theta=theta,
        steps=tuple(steps),
        verdict=EdgeCertificate.EDGE_CERTIFIED if certified else EdgeCertificate.NOT_APPLICABLE,
    )
