"""Schur-test certificates and factorizations for nonnegative Hankel operators.

A certificate ``(u, w, T)`` with strictly positive ``u, w`` and
``A u <= T w``, ``A* w <= T u`` bounds the operator norm by ``T``. A
factorization ``A * A = B * C`` (entrywise) with row sums of ``B`` and column
sums of ``C`` at most ``T`` does the same. Operators with signed or complex
symbols are checked through their modulus, whose norm dominates theirs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hankel import HankelOperator, matvec, op_norm_power, truncate
from .sequences import SetLike, as_set, dyadic_count_bound, is_strongly_lacunary

RTOL = 1e-12


class DivergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SchurCertificate:
    u: np.ndarray
    w: np.ndarray
    T: float
    N: int

    def to_json(self, report: Optional["CertificateReport"] = None) -> dict:
        out = {"u": np.asarray(self.u).tolist(), "w": np.asarray(self.w).tolist(), "T": float(self.T), "N": int(self.N)}
        if report is not None:
            out.update(ok=report.ok, worst_row_ratio=report.worst_row_ratio, rtol=report.rtol)
        return out


@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    worst_row_ratio: float
    worst_row: int
    rtol: float = RTOL

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class FactorizationPair:
    B: np.ndarray
    C: np.ndarray
    T: float


@dataclass(frozen=True)
class FactorizationReport:
    ok: bool
    max_row_B: float
    max_col_C: float
    product_error: float
    bad_entry: Optional[tuple] = None
    messages: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _positive(x, N, name):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < N:
        raise ValueError(f"{name} must cover the range [0, {N})")
    x = x[:N]
    if not np.all(x > 0):
        raise ValueError(f"{name} must be strictly positive on [0, {N})")
    return x


def _abs_op(H: HankelOperator) -> HankelOperator:
    return H if H.is_nonnegative else H.modulus()


def verify_certificate(H: HankelOperator, cert: SchurCertificate, rtol: float = RTOL) -> CertificateReport:
    """Check ``Hu <= T w`` and ``H* w <= T u`` on ``[0, N)``.

    Rows at or beyond ``effective_size`` vanish, so ``N >= effective_size``
    makes the finite check cover the whole operator. ``rtol`` absorbs rounding
    in rows where the inequality is an equality.
    """
    N = int(cert.N)
    if N < H.effective_size:
        raise ValueError(f"range N={N} is smaller than the effective size {H.effective_size}")
    if cert.T <= 0:
        raise ValueError("T must be positive")
    u = _positive(cert.u, N, "u")
    w = _positive(cert.w, N, "w")
    A = _abs_op(H)
    ratios = np.concatenate([matvec(A, u, N) / (cert.T * w), matvec(A, w, N) / (cert.T * u)])
    worst = int(np.argmax(ratios))
    worst_ratio = float(ratios[worst])
    return CertificateReport(worst_ratio <= 1 + rtol, worst_ratio, worst % N, rtol)


def rank_one_factors(H: HankelOperator, u, w, N: int) -> FactorizationPair:
    """``B = A * (u(n)/w(m))`` and ``C = A * (w(m)/u(n))`` so that ``B * C = A * A``."""
    u = _positive(u, N, "u")
    w = _positive(w, N, "w")
    A = truncate(_abs_op(H), N)
    B = A * (u[None, :] / w[:, None])
    C = A * (w[:, None] / u[None, :])
    T = max(B.sum(axis=1).max(), C.sum(axis=0).max())
    return FactorizationPair(B, C, float(T))


def verify_factorization(H: HankelOperator, pair: FactorizationPair, N: Optional[int] = None, rtol: float = RTOL) -> FactorizationReport:
    B = np.asarray(pair.B, dtype=float)
    C = np.asarray(pair.C, dtype=float)
    if N is None:
        N = B.shape[0]
    if B.shape != (N, N) or C.shape != (N, N):
        raise ValueError(f"factors must be {N} x {N}")
    if np.any(B < 0) or np.any(C < 0):
        raise ValueError("factors must have nonnegative entries")
    A = truncate(_abs_op(H), N)
    diff = np.abs(A * A - B * C)
    scale = np.maximum(A * A, 1.0)
    rel = diff / scale
    messages = []
    bad = None
    prod_ok = bool(np.all(rel <= 1e-12))
    if not prod_ok:
        bad = tuple(int(i) for i in np.unravel_index(np.argmax(rel), rel.shape))
        messages.append(f"A*A != B*C at entry {bad}")
    row = float(B.sum(axis=1).max())
    col = float(C.sum(axis=0).max())
    T = pair.T
    if row > T * (1 + rtol):
        messages.append(f"row sum of B {row} exceeds T={T}")
    if col > T * (1 + rtol):
        messages.append(f"column sum of C {col} exceeds T={T}")
    ok = not messages
    return FactorizationReport(ok, row, col, float(diff.max()), bad, messages)


def _series(apply, d, T, max_iter, stall=50):
    # sum_k (M/T)^k d, term by term
    u = d.copy()
    term = d.copy()
    prev = np.inf
    rising = 0
    for _ in range(max_iter):
        term = apply(term) / T
        size = np.max(np.abs(term))
        u += term
        if size < 1e-14 * np.max(np.abs(u)):
            return u
        rising = rising + 1 if size >= prev else 0
        if rising >= stall or not np.isfinite(size):
            raise DivergenceError("geometric series is not converging; T must exceed the operator norm")
        prev = size
    raise DivergenceError(f"geometric series did not settle within {max_iter} terms")


def _series_doubling(M, d, T, max_steps=64):
    # S_{2n} = S_n + P^n S_n with P^{2n} = (P^n)^2: the same partial sums in log many steps.
    # Below the norm the increments settle; above it P^n overflows within a few squarings.
    P = M / T
    u = d.copy()
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_steps):
            inc = P @ u
            size = np.max(np.abs(inc))
            if not np.isfinite(size):
                raise DivergenceError("geometric series is not converging; T must exceed the operator norm")
            u = u + inc
            if size < 1e-14 * np.max(np.abs(u)):
                return u
            P = P @ P
    raise DivergenceError("geometric series did not settle")


def _check_level(H, T, N, check_norm):
    if check_norm:
        s = op_norm_power(H, N).value
        if T <= s:
            raise DivergenceError(f"T={T} does not exceed the operator norm {s}")


def geometric_u(
    H: HankelOperator,
    d=None,
    T: float = 1.0,
    N: Optional[int] = None,
    method: str = "auto",
    max_iter: int = 1_000_000,
    check_norm: bool = True,
) -> np.ndarray:
    """Sum ``d + Hd/T + H^2 d/T^2 + ...``; the result satisfies ``Hu <= Tu``.

    ``method="terms"`` adds one power at a time through the structured matvec;
    ``"doubling"`` forms the same partial sums by repeated squaring of the dense
    truncation, which is far cheaper when ``T`` is close to the norm.
    """
    if N is None:
        N = H.effective_size
    d = np.ones(N) if d is None else _positive(d, N, "d")
    A = _abs_op(H)
    _check_level(A, T, N, check_norm)
    if method == "auto":
        method = "doubling" if N <= 2048 else "terms"
    if method == "doubling":
        return _series_doubling(truncate(A, N), d, T)
    if method == "terms":
        return _series(lambda x: matvec(A, x, N), d, T, max_iter)
    raise ValueError(f"unknown method {method!r}")


def geometric_certificate(H: HankelOperator, T: float, N: Optional[int] = None, d=None, **kw) -> SchurCertificate:
    if N is None:
        N = H.effective_size
    u = geometric_u(H, d, T, N, **kw)
    return SchurCertificate(u, u, float(T), N)


def asymmetric_uw(H: HankelOperator, T: float, N: Optional[int] = None, d=None, check_norm: bool = True):
    """Vectors ``u = T uh + A* uc`` and ``w = A uh + T uc``.

    ``uh`` and ``uc`` come from the geometric series for ``A*A`` and ``AA*``
    at level ``T^2``; the pair is verified before it is returned.
    """
    if N is None:
        N = H.effective_size
    d = np.ones(N) if d is None else _positive(d, N, "d")
    A_op = _abs_op(H)
    _check_level(A_op, T, N, check_norm)
    A = truncate(A_op, N)
    uh = _series_doubling(A.T @ A, d, T * T)
    uc = _series_doubling(A @ A.T, d, T * T)
    u = T * uh + A.T @ uc
    w = A @ uh + T * uc
    report = verify_certificate(H, SchurCertificate(u, w, T, N))
    if not report.ok:
        raise DivergenceError(f"asymmetric construction failed verification (ratio {report.worst_row_ratio})")
    return u, w


def symmetrize(cert: SchurCertificate) -> SchurCertificate:
    """``(u + w, u + w, T)``: valid whenever ``(u, w, T)`` is, for symmetric nonnegative A."""
    s = np.asarray(cert.u) + np.asarray(cert.w)
    return SchurCertificate(s, s, cert.T, cert.N)


def paley_factorization(K: SetLike, v, N: Optional[int] = None) -> FactorizationPair:
    """Factors matching ``A_v`` on the diagonal.

    Above the diagonal ``B`` holds ``A_v^2``; below it ``B`` is 1 on the
    antidiagonals ``m + n`` in K and 0 elsewhere. ``C = B^T``.
    """
    K = as_set(K)
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise ValueError("v must be nonnegative")
    if N is None:
        N = K.max + 1
    a = np.zeros(2 * N - 1)
    ind = np.zeros(2 * N - 1)
    for k, vj in zip(K, v):
        if k < 2 * N - 1:
            a[k] = vj
            ind[k] = 1.0
    i = np.arange(N)
    S = i[:, None] + i[None, :]
    upper = i[None, :] > i[:, None]
    lower = i[None, :] < i[:, None]
    B = np.where(upper, a[S] ** 2, np.where(lower, ind[S], a[S]))
    # the bound for T is attained by construction; report the largest row sum
    T = float(B.sum(axis=1).max())
    return FactorizationPair(B, B.T.copy(), T)


def paley_row_bound(K: SetLike, v) -> float:
    """Row-sum bound ``M + |v| + |v|^2`` for the factorization above.

    Strongly lacunary sets get ``max(1, |v|) + |v|^2``: a row with a member of
    K in ``[m, 2m)`` has a zero diagonal entry.
    """
    K = as_set(K)
    l2 = float(np.linalg.norm(np.asarray(v, dtype=float)))
    if is_strongly_lacunary(K):
        return max(1.0, l2) + l2**2
    return dyadic_count_bound(K) + l2 + l2**2


def paley_certificate_pair(K: SetLike, v, N: Optional[int] = None) -> FactorizationPair:
    """:func:`paley_factorization` carrying ``T = paley_row_bound``."""
    pair = paley_factorization(K, v, N)
    return FactorizationPair(pair.B, pair.C, paley_row_bound(K, v))
