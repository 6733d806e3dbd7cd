"""Lacunary index sets: validation, decomposition, dyadic counts and folds."""

from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Union


@dataclass(frozen=True)
class LacunarySet:
    """Finite strictly increasing set of nonnegative integers ``k_0 < k_1 < ...``."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(k) for k in self.indices)
        for k in idx:
            if k < 0:
                raise ValueError(f"negative index {k} in lacunary set")
        for a, b in zip(idx, idx[1:]):
            if b <= a:
                raise ValueError(f"indices must be strictly increasing, got {a} then {b}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_rule(cls, rule: str, terms: int) -> "LacunarySet":
        """Build ``{rule(j) : 0 <= j < terms}`` for rules like ``"2^j-1"`` or ``"3^j"``."""
        m = re.fullmatch(r"\s*(\d+)\s*\^\s*j\s*(?:([+-])\s*(\d+))?\s*", rule)
        if m is None:
            raise ValueError(f"unsupported set rule {rule!r}; expected e.g. '2^j-1'")
        base = int(m.group(1))
        shift = int(m.group(3) or 0) * (-1 if m.group(2) == "-" else 1)
        if base < 2:
            raise ValueError("rule base must be at least 2")
        return cls(tuple(base**j + shift for j in range(terms)))

    @property
    def contains_zero(self) -> bool:
        return bool(self.indices) and self.indices[0] == 0

    @property
    def max(self) -> int:
        return self.indices[-1] if self.indices else -1

    def with_zero(self) -> "LacunarySet":
        """Return the set augmented with 0 (unchanged if already present)."""
        if self.contains_zero:
            return self
        return LacunarySet((0,) + self.indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, j):
        return self.indices[j]

    def __contains__(self, k):
        i = bisect.bisect_left(self.indices, k)
        return i < len(self.indices) and self.indices[i] == k

    def index(self, k: int) -> int:
        i = bisect.bisect_left(self.indices, k)
        if i < len(self.indices) and self.indices[i] == k:
            return i
        raise ValueError(f"{k} not in set")

    def to_list(self) -> list:
        return list(self.indices)


SetLike = Union[LacunarySet, Iterable[int]]


def as_set(K: SetLike) -> LacunarySet:
    return K if isinstance(K, LacunarySet) else LacunarySet(tuple(K))


@dataclass(frozen=True)
class AlternatingRep:
    """``value = k[p_1] - k[p_2] + k[p_3] - ...`` with strictly decreasing positions."""

    positions: tuple
    value: int

    def __len__(self):
        return len(self.positions)


def is_hadamard(K: SetLike, eps: float) -> bool:
    if eps <= 0:
        raise ValueError("eps must be positive")
    k = as_set(K).indices
    return all(b > (1 + eps) * a for a, b in zip(k, k[1:]))


def is_strongly_lacunary(K: SetLike) -> bool:
    k = as_set(K).indices
    return all(b > 2 * a for a, b in zip(k, k[1:]))


def hadamard_ratio(K: SetLike) -> float:
    """Smallest ratio ``k_{j+1}/k_j`` over pairs with ``k_j > 0`` (inf if none)."""
    k = as_set(K).indices
    ratios = [b / a for a, b in zip(k, k[1:]) if a > 0]
    return min(ratios) if ratios else math.inf


def dyadic_count_bound(K: SetLike) -> int:
    """Largest number of members of K in any window ``[m, 2m)`` with ``m >= 1``."""
    k = as_set(K).indices
    best = 0
    # the max is attained with m at a member of K: raising m to the next member
    # keeps every counted element and only widens the window on the right
    for i, m in enumerate(k):
        if m == 0:
            continue
        best = max(best, bisect.bisect_left(k, 2 * m) - i)
    return best


def max_strong_parts(eps: float) -> int:
    """Upper bound on the greedy part count for a set that is Hadamard with ``eps``."""
    if math.isinf(eps):
        return 1
    return math.ceil(math.log(2) / math.log1p(eps)) + 1


def decompose_strongly_lacunary(K: SetLike, eps: Optional[float] = None) -> list:
    """Split K greedily into strongly lacunary parts.

    Each element goes to the first part whose last element ``l`` has ``k > 2l``.
    With ``eps`` given the set must be Hadamard for it; otherwise the largest
    valid ratio is detected from the data.
    """
    K = as_set(K)
    if eps is None:
        eps = hadamard_ratio(K) - 1
        if eps <= 0:  # pragma: no cover - strictly increasing sets have ratio > 1
            raise ValueError("set is not Hadamard")
        # the detected eps is attained at the tightest pair; any smaller eps is valid
        bound = max_strong_parts(eps / (1 + 1e-12)) if math.isfinite(eps) else 1
    else:
        if not is_hadamard(K, eps):
            raise ValueError(f"set is not Hadamard with eps={eps}")
        bound = max_strong_parts(eps)
    parts: list = []
    for k in K:
        for part in parts:
            if k > 2 * part[-1]:
                part.append(k)
                break
        else:
            parts.append([k])
            if len(parts) > bound:
                raise ValueError(f"greedy split needs more than {bound} parts; set is not Hadamard at this scale")
    return [LacunarySet(tuple(p)) for p in parts]


def _require_strong(K: LacunarySet):
    if not is_strongly_lacunary(K):
        raise ValueError(f"set {K.to_list()} is not strongly lacunary (need k[j+1] > 2 k[j])")


def alternating_representation(k: int, K: SetLike) -> Optional[AlternatingRep]:
    """Canonical representation ``k = k_{j1} - k_{j2} + ...`` (``j1 > j2 > ...``), or None.

    A zero element of K never appears in the representation.
    """
    K = as_set(K)
    _require_strong(K)
    if k < 0:
        return None
    target = int(k)
    positions = []
    limit = len(K)
    while k > 0:
        # the top position j is the unique one with k_j - k_{j-1} <= k <= k_j
        j = bisect.bisect_left(K.indices, k, 0, limit)
        if j == limit:
            return None
        prev = K[j - 1] if j > 0 else 0
        if k < K[j] - prev:
            return None
        positions.append(j)
        k = K[j] - k
        limit = j
    return AlternatingRep(tuple(positions), target)


def fold_set(K: SetLike, k_max: int) -> set:
    """All ``0 <= k <= k_max`` with an alternating representation over K."""
    K = as_set(K)
    _require_strong(K)
    upper = min(k_max, max(K.max, 0))
    return {k for k in range(upper + 1) if alternating_representation(k, K) is not None}

