"""Dyadic summability conditions on Hankel symbols and the Kothe factorization.

Dyadic blocks are ``[2^j, 2^{j+1})`` for ``j >= 0``; ``a(0)`` lies in no block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .schur import FactorizationPair


def _abs(a) -> np.ndarray:
    return np.abs(np.asarray(a)).astype(float)


def dyadic_block_sums(a, power: int = 1) -> np.ndarray:
    """``sum_{2^j <= n < 2^{j+1}} |a(n)|^power`` for each block touching the sequence."""
    x = _abs(a) ** power
    if x.size <= 1:
        return np.zeros(0)
    nblocks = int(x.size - 1).bit_length()
    return np.array([x[2**j : 2 ** (j + 1)].sum() for j in range(nblocks)])


def cond_supsum2(a) -> float:
    """``sup_j sum_{block j} |a(n)|^2``."""
    s = dyadic_block_sums(a, 2)
    return float(s.max()) if s.size else 0.0


def cond_sumsquaresum(a) -> float:
    """``sum_j (sum_{block j} |a(n)|)^2``."""
    return float(np.sum(dyadic_block_sums(a, 1) ** 2))


def supdouble_profile(a, M_max=None) -> np.ndarray:
    """``sum_{j >= 1} (sum_{jM <= n < (j+1)M} |a(n)|)^2`` for ``M = 1..M_max`` (index 0 unused)."""
    x = _abs(a)
    nz = np.flatnonzero(x)
    top = int(nz[-1]) if nz.size else 0
    if M_max is None:
        # for M > top the first block [M, 2M) already lies past the support
        M_max = max(top, 1)
    csum = np.concatenate([[0.0], np.cumsum(x)])
    out = np.zeros(M_max + 1)
    for M in range(1, M_max + 1):
        edges = np.arange(M, top + M + 1, M)
        edges = np.minimum(edges, x.size)
        blocks = np.diff(csum[edges])
        out[M] = np.sum(blocks**2)
    return out


def cond_supdouble(a, M_max=None) -> float:
    """``sup_{1 <= M <= M_max}`` of the block sums with block length ``M``.

    The default ``M_max`` is the largest index in the support: any larger ``M``
    gives a sum of zero, so the supremum over all ``M`` is attained below it.
    """
    prof = supdouble_profile(a, M_max)
    return float(prof[1:].max()) if prof.size > 1 else 0.0


def regularize(a, eps: float, length: int) -> np.ndarray:
    """``a + eps 2^{-n}`` on ``[0, length)``: strictly positive, arbitrarily close to ``a``."""
    out = np.zeros(length)
    x = _abs(a)[:length]
    out[: x.size] = x
    return out + eps * 2.0 ** -np.arange(length)


def upper_column_sums(a, N: int) -> np.ndarray:
    """``s(n) = sum_{n <= r < 2n} a(r)``, the column sums of ``H_a`` above the diagonal."""
    x = _abs(a)
    # direct sums: differences of a running sum can cancel tiny entries to 0
    return np.array([x[n : 2 * n].sum() for n in range(N)])


def kothe_factorization(a, N: int) -> FactorizationPair:
    """Factors of ``H_a * H_a`` on the ``N x N`` truncation.

    Above the diagonal the ``n``-th column of ``H_a`` is multiplied by
    ``s(n)``; left of the diagonal the ``n``-th row is divided by ``s(n)``.
    Rows with ``s(n) = 0`` have no nonzero entries left of the diagonal, so
    those entries stay 0. ``T`` is the largest row sum of ``B``.
    """
    x = np.asarray(a)
    if np.iscomplexobj(x) or np.any(x < 0):
        raise ValueError("kothe_factorization needs a nonnegative sequence")
    x = x.astype(float)
    s = upper_column_sums(x, N)
    padded = np.zeros(2 * N - 1)
    m = min(x.size, 2 * N - 1)
    padded[:m] = x[:m]
    i = np.arange(N)
    H = padded[i[:, None] + i[None, :]]
    upper = i[None, :] > i[:, None]
    lower = i[None, :] < i[:, None]
    safe = np.where(s > 0, s, 1.0)
    below = np.divide(H, safe[:, None], out=np.zeros_like(H), where=lower)
    B = np.where(upper, H * s[None, :], np.where(lower, below, H))
    if np.any(lower & (H > 0) & (s[:, None] == 0)):  # pragma: no cover
        raise ValueError("zero column sum next to a nonzero entry")
    return FactorizationPair(B, B.T.copy(), float(B.sum(axis=1).max()))


def kothe_majorant(a) -> float:
    """``sum_{j >= 0} (sum_{2^{j-1} < i < 2^{j+2}} a(i))^2``."""
    x = _abs(a)
    if x.size <= 1:
        return 0.0
    total = 0.0
    j = 0
    # windows run while their first index 2^{j-1} + 1 (or 1 for j = 0) is inside the sequence
    while (2 ** (j - 1) + 1 if j >= 1 else 1) < x.size:
        lo = 2 ** (j - 1) + 1 if j >= 1 else 1
        total += x[lo : 2 ** (j + 2)].sum() ** 2
        j += 1
    return float(total)


def kothe_row_bound(a) -> float:
    """``1 + |a|_2 + kothe_majorant(a)``: bounds every row sum of the Kothe ``B``."""
    return 1.0 + float(np.linalg.norm(_abs(a))) + kothe_majorant(a)


def block_product_sum(b, c) -> float:
    """``sum_j (sum_{block j} |b(n)| |c(n)|)^2``."""
    b, c = _abs(b), _abs(c)
    n = max(b.size, c.size)
    bb = np.zeros(n)
    cc = np.zeros(n)
    bb[: b.size] = b
    cc[: c.size] = c
    return cond_sumsquaresum(bb * cc)


def multiplier_product_check(b, c) -> float:
    """``block_product_sum(b, c) / (cond_supsum2(b) |c|_2^2)``; at most 1 by Cauchy-Schwarz."""
    num = block_product_sum(b, c)
    den = cond_supsum2(b) * float(np.sum(_abs(c) ** 2))
    if den == 0:
        return 0.0
    return num / den


@dataclass(frozen=True)
class ConditionSummary:
    supsum2: float
    sumsquaresum: float
    supdouble: float
    a0: float
    blocks: int
    kothe_bound: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def summarize(a, M_max=None) -> ConditionSummary:
    x = _abs(a)
    return ConditionSummary(
        cond_supsum2(x),
        cond_sumsquaresum(x),
        cond_supdouble(x, M_max),
        float(x[0]) if x.size else 0.0,
        int(np.count_nonzero(dyadic_block_sums(x))),
        kothe_row_bound(x),
    )
