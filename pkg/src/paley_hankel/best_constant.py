"""Sharp constant sqrt(2) for strongly lacunary Paley-Hankel operators.

``forward_v`` maps ``c = (c_0, ..., c_J)`` to ``v^{(J)}(c)``: at stage ``J``
append ``c_J`` and scale the earlier entries by ``1 - |c_J|^2``. With
``|c_j| <= 1`` the operator ``A_{v(c)}`` has norm at most 1, certified by the
fold vector built from ``c``; with ``c_0 = 1`` the norm is exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .folding import fold_u, product_vector
from .hankel import make_paley_hankel, matvec, op_norm_oracle, truncate
from .schur import SchurCertificate, verify_certificate
from .sequences import LacunarySet, SetLike, as_set, is_strongly_lacunary

HALF_SQRT2 = 1 / math.sqrt(2)


class CertificateError(AssertionError):
    """A construction that must verify did not; this is a bug, not bad input."""


def forward_v(c) -> np.ndarray:
    c = np.asarray(c, dtype=np.result_type(np.asarray(c).dtype, float))
    if c.ndim != 1 or c.size == 0:
        raise ValueError("c must be a non-empty sequence")
    if np.any(np.abs(c[1:]) >= 1):
        raise ValueError("need |c_j| < 1 for j >= 1")
    v = c[:1].copy()
    for cj in c[1:]:
        v = np.append(v * (1 - abs(cj) ** 2), cj)
    return v


def inverse_c(v, check_norm: bool = True, atol: float = 1e-12) -> np.ndarray:
    """Peel ``v = v^{(J)}(c)`` back to ``c`` with ``J = len(v) - 1``.

    With ``check_norm`` the input must satisfy ``|v|_2 <= 1/sqrt 2``, which
    guarantees ``0 <= c_j <= 1/sqrt 2`` for nonnegative ``v``. Without it the
    peeling still works as long as every peeled entry has modulus below 1.
    """
    v = np.asarray(v, dtype=np.result_type(np.asarray(v).dtype, float))
    if v.ndim != 1 or v.size == 0:
        raise ValueError("v must be a non-empty sequence")
    if check_norm and np.linalg.norm(v) > HALF_SQRT2 + atol:
        raise ValueError(f"|v|_2 = {np.linalg.norm(v)} exceeds 1/sqrt(2)")
    c = np.zeros_like(v)
    rest = v.copy()
    for J in range(v.size - 1, 0, -1):
        if abs(rest[J]) >= 1:
            raise ValueError(f"stage {J} entry {rest[J]} has modulus >= 1; v is not in the range of the transform")
        c[J] = rest[J]
        rest = rest[:J] / (1 - abs(rest[J]) ** 2)
    c[0] = rest[0]
    return c


def epsilon_step(vJ, eps_prev: float) -> float:
    """``|v|^2 - 1/2`` after appending ``vJ`` given its value ``eps_prev`` before."""
    s = abs(vJ) ** 2
    return 0.5 * s * s + (1 - s) ** 2 * eps_prev


def sharpness_c(J: int) -> np.ndarray:
    return 1 / np.sqrt(np.arange(J + 1) + 1.0)


def sharpness_l2_closed_form(J: int) -> float:
    return math.sqrt((J + 2) / (2 * J + 2))


def _check_set(K: LacunarySet, c):
    if not is_strongly_lacunary(K):
        raise ValueError(f"set {K.to_list()} is not strongly lacunary")
    if not K.contains_zero:
        raise ValueError("K must contain 0; see embed_without_zero for sets that do not")
    if len(c) != len(K):
        raise ValueError(f"need one c per set element: |K|={len(K)}, len(c)={len(c)}")


def certified_norm_leq_one(K: SetLike, c) -> SchurCertificate:
    """Schur certificate ``A_{v(c)} u <= u`` with ``u`` the fold of ``c``.

    Needs ``0 < c_j < 1`` for ``j >= 1``; ``c_0`` only enters through ``v``.
    Failure to verify raises :class:`CertificateError`.
    """
    K = as_set(K)
    c = np.asarray(c, dtype=float)
    _check_set(K, c)
    if np.any(c <= 0) or np.any(c[1:] >= 1) or c[0] > 1:
        raise ValueError("need 0 < c_j < 1 (c_0 <= 1); use boundary_sweep for the closed range")
    u = fold_u(K, c, "mirror").u
    A = make_paley_hankel(K, forward_v(c))
    cert = SchurCertificate(u, u, 1.0, K.max + 1)
    report = verify_certificate(A, cert)
    if not report.ok:
        raise CertificateError(f"fold certificate failed at row {report.worst_row} (ratio {report.worst_row_ratio})")
    return cert


def boundary_sweep(K: SetLike, c, deltas=(1e-2, 1e-4, 1e-6, 1e-8)) -> list:
    """Certificates for ``c`` clamped into ``[delta, 1 - delta]``.

    Returns ``(delta, worst_row_ratio, norm)`` rows; the norm of ``A_{v(c)}``
    depends continuously on ``c`` so the limit covers the closed range.
    """
    K = as_set(K)
    c = np.asarray(c, dtype=float)
    rows = []
    for d in deltas:
        cd = np.clip(c, d, 1 - d)
        cert = certified_norm_leq_one(K, cd)
        A = make_paley_hankel(K, forward_v(cd))
        rep = verify_certificate(A, cert)
        rows.append((d, rep.worst_row_ratio, op_norm_oracle(truncate(A, K.max + 1))))
    return rows


def exact_eigenvector(K: SetLike, c) -> np.ndarray:
    """Product-formula vector in ``c`` on the fold set, zero elsewhere.

    With ``c_0 = 1`` it is fixed by ``A_{v(c)}``, so that operator has norm 1.
    """
    K = as_set(K)
    c = np.asarray(c, dtype=float)
    _check_set(K, c)
    if c[0] != 1:
        raise ValueError("the eigenvector needs c_0 = 1")
    return product_vector(K, c, K.max + 1)


def eigen_residual(K: SetLike, c) -> float:
    K = as_set(K)
    u = exact_eigenvector(K, c)
    A = make_paley_hankel(K, forward_v(c))
    return float(np.max(np.abs(matvec(A, u, u.size) - u)))


@dataclass(frozen=True)
class StageComparison:
    """Per-row comparison of ``c_J (P_J u)(m)`` with ``c_J^2 u(m)`` / ``u(m)``."""

    lhs: np.ndarray
    rhs: np.ndarray
    equal: np.ndarray
    strict: np.ndarray
    ok: bool


def last_stage_comparison(K: SetLike, c, u=None, rtol: float = 1e-12) -> StageComparison:
    """Check the inductive step of the fold certificate at the last stage ``J``.

    ``P_J`` reverses ``[0, k_J]``. The right side is ``c_J^2 u(m)`` for
    ``m <= k_{J-1}`` and ``u(m)`` otherwise; equality is expected on
    ``m <= k_{J-1}`` and on ``k_J/2 < m <= k_J``, strict inequality on the
    first half of the gap.
    """
    K = as_set(K)
    c = np.asarray(c, dtype=float)
    _check_set(K, c)
    if len(K) < 2:
        raise ValueError("need at least two stages")
    if u is None:
        u = fold_u(K, c, "mirror").u
    kJ, kP, cJ = K[-1], K[-2], c[-1]
    lhs = cJ * u[kJ::-1]
    m = np.arange(kJ + 1)
    rhs = np.where(m <= kP, cJ**2 * u, u)
    close = np.abs(lhs - rhs) <= rtol * np.maximum(np.abs(rhs), 1e-300)
    expect_eq = (m <= kP) | (2 * m > kJ)
    ok = bool(np.all(close[expect_eq]) and np.all(lhs[~expect_eq] < rhs[~expect_eq]))
    return StageComparison(lhs, rhs, close, lhs < rhs * (1 - rtol), ok)


def embed_without_zero(K: SetLike, v):
    """For K without 0: add 0 with coefficient 0; ``A_v`` is unchanged."""
    K = as_set(K)
    v = np.asarray(v, dtype=float)
    if K.contains_zero:
        return K, v
    return K.with_zero(), np.concatenate([[0.0], v])


@dataclass(frozen=True)
class SharpnessRow:
    J: int
    l2: float
    l2_closed_form: float
    norm: float
    ratio: float
    norm_verified: bool
    eigen_residual: Optional[float] = None


def sharpness_row(J: int, verify: bool = True) -> SharpnessRow:
    """Row ``J`` of the sharpness family on ``K = {2^j - 1 : j <= J}``.

    The norm is 1 for every ``J``; with ``verify`` it is recomputed from the
    dense truncation of size ``2^J`` and the eigenvector residual is reported.
    """
    c = sharpness_c(J)
    v = forward_v(c)
    l2 = float(np.linalg.norm(v))
    norm = 1.0
    residual = None
    if verify:
        K = LacunarySet(tuple(2**j - 1 for j in range(J + 1)))
        residual = eigen_residual(K, c)
        norm = op_norm_oracle(truncate(make_paley_hankel(K, v), K.max + 1))
    return SharpnessRow(J, l2, sharpness_l2_closed_form(J), norm, norm / l2, verify, residual)


def sharpness_table(J_max: int, verify_jmax: int = 10) -> list:
    """Rows ``J = 0..J_max``; norms are recomputed densely for ``J <= verify_jmax``."""
    if J_max < 0:
        raise ValueError("J_max must be nonnegative")
    return [sharpness_row(J, verify=J <= verify_jmax) for J in range(J_max + 1)]
