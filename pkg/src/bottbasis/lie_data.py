"""Type A_{n-1} combinatorics for SL(n).

Weights are integer vectors in Z^n taken modulo the all-ones vector, so
``e_a`` is the a-th coordinate vector, ``alpha_i = e_i - e_{i+1}`` and the
fundamental weight ``varpi_i = e_1 + ... + e_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, Sequence, Tuple

from .errors import UsageError

Word = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Weight:
    """An SL(n) weight, stored as its representative with minimum coordinate 0."""

    coords: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        if not c:
            raise UsageError("a weight needs at least one coordinate")
        lo = min(c)
        object.__setattr__(self, "coords", tuple(x - lo for x in c))

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def e(cls, n: int, a: int) -> "Weight":
        """Coordinate weight ``e_a`` (1-based)."""
        if not 1 <= a <= n:
            raise UsageError(f"index {a} out of range for n={n}")
        return cls(tuple(1 if k == a - 1 else 0 for k in range(n)))

    @classmethod
    def fundamental(cls, n: int, i: int) -> "Weight":
        if not 1 <= i <= n - 1:
            raise UsageError(f"fundamental weight index {i} out of range for n={n}")
        return cls(tuple(1 if k < i else 0 for k in range(n)))

    @classmethod
    def simple_root(cls, n: int, i: int) -> "Weight":
        if not 1 <= i <= n - 1:
            raise UsageError(f"simple root index {i} out of range for n={n}")
        return cls(tuple(1 if k == i - 1 else (-1 if k == i else 0) for k in range(n)))

    @classmethod
    def from_fundamental(cls, n: int, coeffs: Sequence[int]) -> "Weight":
        """``sum_i coeffs[i-1] * varpi_i``."""
        coeffs = tuple(coeffs)
        if len(coeffs) != n - 1:
            raise UsageError(f"expected {n - 1} fundamental-weight coefficients, got {len(coeffs)}")
        return cls(tuple(sum(coeffs[i:]) for i in range(n - 1)) + (0,))

    def to_fundamental(self) -> Tuple[int, ...]:
        return tuple(self.pairing(i) for i in range(1, self.n))

    def pairing(self, i: int) -> int:
        """``<self, alpha_i^vee>``."""
        return self.coords[i - 1] - self.coords[i]

    def is_dominant(self) -> bool:
        return all(self.pairing(i) >= 0 for i in range(1, self.n))

    def __add__(self, other: "Weight") -> "Weight":
        if other.n != self.n:
            raise UsageError("weights of different rank")
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class OneParamSubgroup:
    """``S(t) = diag(t**a_1, ..., t**a_n)`` with ``a_i - a_{i+1} = q`` for every i."""

    q: int
    a: Tuple[int, ...]

    def __post_init__(self):
        if self.q <= 0:
            raise UsageError("q must be positive")
        if sum(self.a) != 0:
            raise UsageError("a must sum to zero")
        if any(self.a[i] - self.a[i + 1] != self.q for i in range(len(self.a) - 1)):
            raise UsageError("every simple root must pair with a to give q")

    @property
    def n(self) -> int:
        return len(self.a)


def check_word(word: Sequence[int], n: int) -> Word:
    word = tuple(int(x) for x in word)
    if n < 2:
        raise UsageError("n must be at least 2")
    bad = [x for x in word if not 1 <= x <= n - 1]
    if bad:
        raise UsageError(f"word letters must lie in 1..{n - 1}; got {bad}")
    return word


def word_permutation(word: Sequence[int], n: int) -> Tuple[int, ...]:
    """One-line notation of ``s_{i_1} ... s_{i_N}``."""
    perm = list(range(1, n + 1))
    for i in reversed(word):
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def is_reduced_w0(word: Sequence[int], n: int) -> bool:
    word = check_word(word, n)
    if len(word) != n * (n - 1) // 2:
        return False
    return word_permutation(word, n) == tuple(range(n, 0, -1))


def default_word(n: int) -> Word:
    """The reduced word (1, 2,1, 3,2,1, ...) of the longest element."""
    word = []
    for k in range(1, n):
        word.extend(range(k, 0, -1))
    return check_word(word, n)


def one_param_subgroup(n: int) -> OneParamSubgroup:
    if n < 2:
        raise UsageError("n must be at least 2")
    # a_i = a_1 - (i-1)q and sum(a) = 0 force a_1 = q(n-1)/2
    q = 1 if (n - 1) % 2 == 0 else 2
    a1 = q * (n - 1) // 2
    return OneParamSubgroup(q, tuple(a1 - k * q for k in range(n)))


def mu_from_lambda(word: Sequence[int], lam: Weight) -> Tuple[int, ...]:
    """m-vector realizing V_lam: m_k = <lam, alpha_{i_k}^vee> at the last occurrence of i_k."""
    word = check_word(word, lam.n)
    if not lam.is_dominant():
        raise UsageError(f"weight {lam} is not dominant")
    last = {}
    for k, i in enumerate(word):
        last[i] = k
    m = [0] * len(word)
    for i, k in last.items():
        m[k] = lam.pairing(i)
    return tuple(m)


def _as_partition(n: int, lam: Weight) -> Tuple[int, ...]:
    if lam.n != n:
        raise UsageError(f"weight {lam} does not belong to SL({n})")
    if not lam.is_dominant():
        raise UsageError(f"weight {lam} is not dominant")
    return lam.coords


def weyl_dim(n: int, lam: Weight) -> int:
    part = _as_partition(n, lam)
    num = prod(part[i] - part[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def _dominated(mu_sorted, part) -> bool:
    s = t = 0
    for a, b in zip(mu_sorted, part):
        s += a
        t += b
        if s > t:
            return False
    return True


@lru_cache(maxsize=None)
def _freudenthal(part: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
    n = len(part)
    total = sum(part)
    dominant = [mu for mu in _partitions_in_box(total, n) if _dominated(mu, part)]
    rho = tuple(n - 1 - k for k in range(n))

    def norm2(v):
        return sum(x * x for x in v)

    lam_rho = norm2(tuple(a + b for a, b in zip(part, rho)))
    dom_set = set(dominant)
    mult: Dict[Tuple[int, ...], int] = {part: 1}

    def m_of(v):
        if min(v) < 0:
            return 0
        key = tuple(sorted(v, reverse=True))
        if key not in dom_set:
            return 0
        return mult[key]

    # decreasing dominance order: process by height of part - mu
    def height(mu):
        return sum(sum(part[:k]) - sum(mu[:k]) for k in range(1, n))

    for mu in sorted(dominant, key=height):
        if mu == part:
            continue
        acc = 0
        for i in range(n):
            for j in range(i + 1, n):
                k = 1
                while True:
                    v = list(mu)
                    v[i] += k
                    v[j] -= k
                    if min(v) < 0 or tuple(sorted(v, reverse=True)) not in dom_set:
                        break
                    acc += m_of(v) * (v[i] - v[j])
                    k += 1
        den = lam_rho - norm2(tuple(a + b for a, b in zip(mu, rho)))
        val = Fraction(2 * acc, den)
        if val.denominator != 1:
            raise ArithmeticError("Freudenthal recursion produced a non-integer multiplicity")
        mult[mu] = int(val)
    return mult


def _partitions_in_box(total: int, n: int):
    """Weakly decreasing non-negative n-tuples with the given sum."""
    def rec(remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(remaining, cap), -1, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest
    return list(rec(total, n, total))


def weight_multiplicities(n: int, lam: Weight) -> Dict[Weight, int]:
    """Full weight multiset of V_lam via Freudenthal's recursion."""
    part = _as_partition(n, lam)
    dom = _freudenthal(part)
    out: Dict[Weight, int] = {}
    for mu, m in dom.items():
        if not m:
            continue
        for perm in set(itertools.permutations(mu)):
            out[Weight(perm)] = m
    return out
