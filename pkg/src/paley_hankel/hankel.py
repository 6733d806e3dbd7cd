"""Hankel operators ``H_a(m, n) = a(m + n)`` with finitely supported symbols."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.signal import fftconvolve

from .sequences import SetLike, as_set


class NotConvergedError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


def _trim(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 1:
        raise ValueError("coefficient sequence must be one-dimensional")
    if not np.iscomplexobj(a):
        a = a.astype(float)
    if not np.all(np.isfinite(a)):
        raise ValueError("coefficients must be finite")
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1].copy() if nz.size else a[:0].copy()


@dataclass(frozen=True, eq=False)
class HankelOperator:
    """Lazy Hankel operator; entries are never stored densely.

    ``a`` is kept with trailing zeros stripped, so ``a[-1]`` is the last nonzero
    coefficient and every row/column at or beyond ``effective_size`` vanishes.
    """

    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _trim(self.a))
        self.a.setflags(write=False)

    @property
    def support_max(self) -> int:
        return self.a.size - 1

    @property
    def effective_size(self) -> int:
        return max(self.a.size, 1)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.a)

    @property
    def is_nonnegative(self) -> bool:
        return not np.iscomplexobj(self.a) and bool(np.all(self.a >= 0))

    def entry(self, m: int, n: int):
        s = m + n
        return self.a[s] if 0 <= s < self.a.size else 0.0

    def modulus(self) -> "HankelOperator":
        """Operator with entries ``|a(m+n)|``; its norm dominates this one's."""
        return HankelOperator(np.abs(self.a))

    def matvec(self, x, n_out: Optional[int] = None, method: str = "auto") -> np.ndarray:
        return matvec(self, x, n_out, method)

    def truncate(self, N: int) -> np.ndarray:
        return truncate(self, N)

    def to_json(self) -> dict:
        if np.iscomplexobj(self.a):
            return {"a": [[z.real, z.imag] for z in self.a]}
        return {"a": self.a.tolist()}


def make_hankel(a) -> HankelOperator:
    return HankelOperator(np.asarray(a))


def paley_symbol(K: SetLike, v) -> np.ndarray:
    """The sequence ``a_v`` with ``a_v(k_j) = v_j`` and zero off K."""
    K = as_set(K)
    v = np.asarray(v)
    if v.shape != (len(K),):
        raise ValueError(f"need one coefficient per set element: |K|={len(K)}, len(v)={v.size}")
    a = np.zeros(K.max + 1, dtype=complex if np.iscomplexobj(v) else float)
    a[list(K)] = v
    return a


def make_paley_hankel(K: SetLike, v) -> HankelOperator:
    return HankelOperator(paley_symbol(K, v))


def matvec(H: HankelOperator, x, n_out: Optional[int] = None, method: str = "auto") -> np.ndarray:
    """``y(m) = sum_n a(m+n) x(n)`` for ``0 <= m < n_out``.

    ``method="sparse"`` walks the antidiagonals in the support of ``a``
    (cost ``nnz(a) * len(x)``); ``"fft"`` correlates ``a`` with ``x``.
    """
    x = np.asarray(x)
    if n_out is None:
        n_out = x.size
    a = H.a
    dtype = np.result_type(a.dtype, x.dtype, float)
    y = np.zeros(n_out, dtype=dtype)
    if a.size == 0 or x.size == 0 or n_out == 0:
        return y
    support = np.flatnonzero(a)
    if method == "auto":
        method = "sparse" if support.size * 8 < a.size or support.size < 32 else "fft"
    if method == "sparse":
        nx = x.size
        xr = x[::-1]
        for s in support:
            # rows m with 0 <= s - m < nx
            lo = max(0, s - nx + 1)
            hi = min(n_out - 1, s)
            if lo > hi:
                continue
            # x[s - m] for m = lo..hi is xr[nx-1-s+m]
            y[lo : hi + 1] += a[s] * xr[nx - 1 - s + lo : nx - s + hi]
        return y
    if method == "fft":
        full = fftconvolve(a, x[::-1]) if a.size * x.size > 4096 else np.convolve(a, x[::-1])
        # y(m) sits at offset m + len(x) - 1 of the full convolution
        seg = full[x.size - 1 : x.size - 1 + n_out]
        y[: seg.size] = seg
        return y
    raise ValueError(f"unknown matvec method {method!r}")


def bilinear(H: HankelOperator, g, h):
    """``sum_{m,n} a(m+n) g(m) h(n)``."""
    g = np.asarray(g)
    return np.dot(g, matvec(H, h, g.size))


def truncate(H: HankelOperator, N: int) -> np.ndarray:
    """Dense ``N x N`` block; exact for the whole operator once ``N >= effective_size``."""
    if N < 1:
        raise ValueError("N must be positive")
    padded = np.zeros(2 * N - 1, dtype=H.a.dtype)
    m = min(H.a.size, 2 * N - 1)
    padded[:m] = H.a[:m]
    i = np.arange(N)
    return padded[i[:, None] + i[None, :]]


@dataclass(frozen=True)
class NormEstimate:
    value: float
    residual: float
    iterations: int
    tol: float

    def __float__(self):
        return float(self.value)


def op_norm_power(
    H: HankelOperator,
    N: Optional[int] = None,
    tol: float = 1e-10,
    max_iter: Optional[int] = None,
    block: int = 4,
    seed: int = 0,
    max_block: int = 64,
) -> NormEstimate:
    """Spectral norm of the ``N x N`` truncation by power iteration on ``H* H``.

    Iterating the Gram operator instead of ``H`` avoids the sign oscillation
    of a symmetric matrix whose extreme eigenvalues are ``+s`` and ``-s``.
    ``block > 1`` iterates a small subspace and extracts the top Ritz pair,
    which keeps nearly tied top singular values from stalling convergence.
    When the residual falls by less than a factor 10 over 100 steps the block
    is doubled, up to ``max_block``, since a cluster wider than the block
    converges only at the rate of the gap to the next singular value.
    ``block=1`` is the plain method and never grows. Convergence means the
    Rayleigh residual ``|H*Hx - s^2 x|`` of the top Ritz vector is at most
    ``tol * s^2``.
    """
    if N is None:
        N = H.effective_size
    if max_iter is None:
        max_iter = 100 * N
    if H.a.size == 0:
        return NormEstimate(0.0, 0.0, 0, tol)
    p = max(1, min(block, N))
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((N, p))
    X[:, 0] = 1.0 + 1e-3 * X[:, 0]
    X, _ = np.linalg.qr(X)
    conj = np.iscomplexobj(H.a)

    def gram(x):
        y = matvec(H, x, N)
        return matvec(H, y.conj(), N).conj() if conj else matvec(H, y, N)

    grow_to = min(max_block, N) if p > 1 else 1
    residual = np.inf
    checkpoint = np.inf
    for it in range(1, max_iter + 1):
        Z = np.column_stack([gram(X[:, k]) for k in range(p)])
        S = X.conj().T @ Z
        theta, W = np.linalg.eigh((S + S.conj().T) / 2)
        lam = theta[-1]
        if lam <= 0:
            # the block sits in the kernel; the truncation is zero
            return NormEstimate(0.0, float(np.linalg.norm(Z)), it, tol)
        y = X @ W[:, -1]
        gy = Z @ W[:, -1]
        residual = np.linalg.norm(gy - lam * y) / lam
        if residual <= tol:
            return NormEstimate(float(np.sqrt(lam)), float(residual), it, tol)
        X, _ = np.linalg.qr(Z @ W[:, ::-1])
        if it % 100 == 0:
            if residual > 0.1 * checkpoint and p < grow_to:
                extra = min(p, grow_to - p)
                X, _ = np.linalg.qr(np.column_stack([X, rng.standard_normal((N, extra))]))
                p += extra
            checkpoint = residual
    raise NotConvergedError(f"power iteration did not converge in {max_iter} steps (residual {residual:.3e})", residual)


def op_norm_oracle(M) -> float:
    """Spectral norm of a dense matrix through LAPACK.

    Symmetric real input uses the eigenvalue routine; anything else the SVD.
    Shares no code with :func:`op_norm_power`.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("oracle expects a square matrix")
    if M.size == 0:
        return 0.0
    if not np.iscomplexobj(M) and np.array_equal(M, M.T):
        return float(np.max(np.abs(np.linalg.eigvalsh(M))))
    return float(np.linalg.svd(M, compute_uv=False)[0])


def op_norm(H: HankelOperator, N: Optional[int] = None) -> float:
    """Exact-size operator norm via the oracle on the effective truncation."""
    return op_norm_oracle(truncate(H, N or H.effective_size))
