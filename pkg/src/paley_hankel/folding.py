"""Fold constructions of Schur-test vectors over strongly lacunary sets.

For ``K = {0 = k_0 < k_1 < ...}`` with ``k_{j+1} > 2 k_j`` write
``L_j = [0, k_j]`` and ``R_j = [k_{j+1} - k_j, k_{j+1}]``. The fold builds
``u`` on ``L_{j+1}`` from its values on ``L_j``: ``R_j`` receives the reversed
values times ``v_{j+1}``, and the gap between ``L_j`` and ``R_j`` is filled
with free positive values on its first half and a reflected copy on its second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .sequences import LacunarySet, SetLike, alternating_representation, as_set, is_strongly_lacunary

GapFill = Union[float, Callable[[int], float]]


def _with_zero(K: LacunarySet, v, pad=1.0):
    v = np.asarray(v)
    if v.shape != (len(K),):
        raise ValueError(f"need one coefficient per set element: |K|={len(K)}, len(v)={v.size}")
    if K.contains_zero:
        return K, v
    return K.with_zero(), np.concatenate([[pad], v])


def _require_strong(K):
    if not is_strongly_lacunary(K):
        raise ValueError(f"set {K.to_list()} is not strongly lacunary (need k[j+1] > 2 k[j])")


@dataclass(frozen=True)
class FoldProfile:
    u: np.ndarray
    K: LacunarySet
    v: np.ndarray
    gap_strategy: str = "mirror"
    gap_value: Optional[float] = 1.0

    def to_json(self) -> dict:
        return {
            "K": self.K.to_list(),
            "v": np.asarray(self.v, dtype=float).tolist(),
            "u": np.asarray(self.u, dtype=float).tolist(),
            "gap_strategy": self.gap_strategy,
            "gap_value": self.gap_value,
        }


def fold_u(K: SetLike, v, strategy: str = "mirror", gap_value: GapFill = 1.0) -> FoldProfile:
    """Fold a positive vector ``u`` on ``[0, k_J]`` with ``u(0) = 1``.

    If 0 is not in K it is added with coefficient 1. ``strategy="mirror"``
    fills the first half ``(k_j, k_{j+1}/2]`` of each gap with ``gap_value`` and
    reflects it (times ``v_{j+1}``) onto the second half; ``"constant"`` puts
    ``gap_value`` on the whole gap. ``"zero"`` leaves gaps empty, which gives
    a vector supported on the fold set and is not a valid Schur vector.
    ``gap_value`` may be a callable of the position.
    """
    K = as_set(K)
    _require_strong(K)
    K, v = _with_zero(K, v)
    v = np.asarray(v, dtype=float)
    if strategy not in ("mirror", "constant", "zero"):
        raise ValueError(f"unknown gap strategy {strategy!r}")
    if np.any(v[1:] <= 0) and strategy != "zero":
        raise ValueError("fold needs strictly positive coefficients")
    fill = gap_value if callable(gap_value) else (lambda m, g=float(gap_value): g)
    if strategy != "zero" and not callable(gap_value) and float(gap_value) <= 0:
        raise ValueError("gap_value must be positive")

    u = np.zeros(K.max + 1)
    u[0] = 1.0
    for j in range(len(K) - 1):
        kj, kn, vn = K[j], K[j + 1], v[j + 1]
        # R_j: reversed L_j times v_{j+1}
        u[kn - kj : kn + 1] = vn * u[kj::-1]
        lo, hi = kj + 1, kn - kj - 1  # the gap, inclusive
        if lo > hi or strategy == "zero":
            continue
        if strategy == "constant":
            for m in range(lo, hi + 1):
                u[m] = fill(m)
            continue
        half = kn // 2  # last free position: the midpoint when k_{j+1} is even
        for m in range(lo, half + 1):
            u[m] = fill(m)
        for m in range(half + 1, hi + 1):
            u[m] = vn * u[kn - m]
    if strategy != "zero" and not np.all(u > 0):
        raise ValueError("gap values must be positive")
    gv = None if callable(gap_value) else float(gap_value)
    return FoldProfile(u, K, v, strategy, gv)


def product_formula_u(K: SetLike, v, k: int) -> Optional[float]:
    """``v_{j1} v_{j2} ... v_{jr}`` over the alternating representation of ``k``."""
    K = as_set(K)
    rep = alternating_representation(k, K)
    if rep is None:
        return None
    v = np.asarray(v)
    # empty product is 1
    return np.prod([v[j] for j in rep.positions])


def product_vector(K: SetLike, v, length: Optional[int] = None) -> np.ndarray:
    """Product-formula values on the fold set, zero elsewhere."""
    K = as_set(K)
    if length is None:
        length = max(K.max, 0) + 1
    v = np.asarray(v)
    out = np.zeros(length, dtype=np.result_type(v.dtype, float))
    for k in range(length):
        p = product_formula_u(K, v, k)
        if p is not None:
            out[k] = p
    return out


def _antidiagonal_apply(x, k, vk, length):
    # (A^{(j)} x)(m) = v_j x(k_j - m) for 0 <= m <= k_j
    y = np.zeros(length, dtype=np.result_type(x.dtype, np.asarray(vk).dtype))
    m = np.arange(0, k + 1)
    src = k - m
    ok = (src < x.size) & (m < length)
    y[m[ok]] = vk * x[src[ok]]
    return y


def partial_product_summands(K: SetLike, v, J: Optional[int] = None) -> list:
    """Vectors ``A^{(j)} (I + A^{(j-1)}) ... (I + A^{(1)}) e_0`` for ``j = 0..J``.

    Entry 0 is ``e_0`` itself; their sum is :func:`partial_product_u`.
    """
    K = as_set(K)
    _require_strong(K)
    K, v = _with_zero(K, v)
    if J is None:
        J = len(K) - 1
    length = K[J] + 1
    x = np.zeros(length, dtype=np.result_type(np.asarray(v).dtype, float))
    x[0] = 1.0
    out = [x.copy()]
    for j in range(1, J + 1):
        term = _antidiagonal_apply(x, K[j], v[j], length)
        out.append(term)
        x = x + term
    return out


def partial_product_u(K: SetLike, v, J: Optional[int] = None) -> np.ndarray:
    """``(I + A^{(J)}) ... (I + A^{(1)}) e_0`` where ``A^{(j)}`` keeps only antidiagonal ``k_j``."""
    return np.sum(partial_product_summands(K, v, J), axis=0)


@dataclass
class TrigPolynomial:
    """Finite sum ``sum_f c_f e^{i f t}`` stored as ``{frequency: coefficient}``."""

    coefficients: dict = field(default_factory=dict)

    @classmethod
    def constant(cls, c) -> "TrigPolynomial":
        return cls({0: complex(c)} if c != 0 else {})

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        out = dict(self.coefficients)
        for f, c in other.coefficients.items():
            out[f] = out.get(f, 0) + c
        return TrigPolynomial({f: c for f, c in out.items() if c != 0})

    def shifted(self, k: int, factor) -> "TrigPolynomial":
        """Multiply by ``factor * e^{i k t}``."""
        if factor == 0:
            return TrigPolynomial()
        return TrigPolynomial({f + k: factor * c for f, c in self.coefficients.items() if factor * c != 0})

    def reflected(self) -> "TrigPolynomial":
        """``t -> -t``."""
        return TrigPolynomial({-f: c for f, c in self.coefficients.items()})

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return sum(c * np.exp(1j * f * t) for f, c in self.coefficients.items()) + 0 * t

    def __getitem__(self, f):
        return self.coefficients.get(f, 0)

    def to_list(self) -> list:
        return [[int(f), float(np.real(c)), float(np.imag(c))] for f, c in sorted(self.coefficients.items())]


def refold(K: SetLike, v, J: Optional[int] = None, sign: str = "plus"):
    """Trigonometric polynomials ``(U_e, U_o)`` after ``J`` refold steps.

    ``U_e <- U_e + s conj(v_j e^{i k_j t}) U_o`` and ``U_o <- U_o + v_j e^{i k_j t} U_e``
    starting from ``(1, 0)``, with ``s = +1`` or ``-1`` by ``sign``. If 0 is
    not in K it is prepended (with coefficient 1) so that step ``j`` uses
    ``k_j`` of the augmented set.
    """
    K = as_set(K)
    K, v = _with_zero(K, v)
    v = np.asarray(v, dtype=complex)
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    s = 1 if sign == "plus" else -1
    if J is None:
        J = len(K) - 1
    if J > len(K) - 1:
        raise ValueError(f"J={J} exceeds the number of refold steps {len(K) - 1}")
    Ue, Uo = TrigPolynomial.constant(1), TrigPolynomial()
    for j in range(1, J + 1):
        Ue, Uo = Ue + Uo.shifted(-K[j], s * np.conj(v[j])), Uo + Ue.shifted(K[j], v[j])
    return Ue, Uo


@dataclass(frozen=True)
class RefoldReport:
    ok: bool
    max_error: float
    mismatches: list
    stray_frequencies: list


def refold_coefficient_check(K: SetLike, v, J: Optional[int] = None, atol: float = 1e-12) -> RefoldReport:
    """Compare the coefficients of ``U_e(-t) + U_o(t)`` with the product formula.

    They must agree on the fold set within ``[0, k_J]`` and vanish elsewhere.
    """
    K = as_set(K)
    _require_strong(K)
    Kz, vz = _with_zero(K, v)
    if J is None:
        J = len(Kz) - 1
    Ue, Uo = refold(Kz, vz, J)
    total = Ue.reflected() + Uo
    top = Kz[J]
    expected = product_vector(Kz[: J + 1], vz[: J + 1], top + 1)
    mismatches = []
    err = 0.0
    for k in range(top + 1):
        e = abs(total[k] - expected[k])
        err = max(err, e)
        if e > atol:
            mismatches.append(k)
    stray = sorted(f for f in total.coefficients if not 0 <= f <= top and abs(total[f]) > atol)
    return RefoldReport(not mismatches and not stray, float(err), mismatches, stray)
