"""Partitions, the torus trace c(lambda; t1, t2), and symmetric group characters."""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from math import factorial, prod

from .exact import RatFunc

__all__ = [
    "Partition", "enumerate_partitions", "zmu", "c_lambda", "character",
    "CharacterTable", "character_table", "dimension",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def boxes(self):
        """Cells (i, j), 1-based row i and column j."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def add_part(self, k: int) -> "Partition":
        return Partition(self + (k,))

    def remove_part(self, k: int) -> "Partition":
        parts = list(self)
        parts.remove(k)
        return Partition(parts)

    def __str__(self):
        return json.dumps(list(self), separators=(",", ":"))

    def __repr__(self):
        return f"Partition({list(self)})"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        parts = json.loads(text)
        if not isinstance(parts, list) or list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"not a descending partition: {text!r}")
        return cls(parts)


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(Partition(p) for p in gen(n, n))


def zmu(mu) -> int:
    """|Aut(mu)| * prod(mu_i)."""
    return prod(factorial(m) for m in Counter(mu).values()) * prod(mu)


def c_lambda(lam) -> RatFunc:
    """sum over boxes (i, j) of (j - 1) t1 + (i - 1) t2."""
    a = sum(j - 1 for _, j in Partition(lam).boxes())
    b = sum(i - 1 for i, _ in Partition(lam).boxes())
    return RatFunc.from_terms({(1, 0, 0): a, (0, 1, 0): b})


# Murnaghan-Nakayama on beta-sets: removing a rim hook of length r moves one
# bead from position b to an empty position b - r; the sign counts the beads
# jumped over.

def _beta(lam) -> tuple[int, ...]:
    k = len(lam)
    return tuple(p + k - 1 - i for i, p in enumerate(lam))


def _from_beta(beta) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    k = len(beta)
    return tuple(p for p in (b - (k - 1 - i) for i, b in enumerate(beta)) if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = set(_beta(lam))
    total = 0
    for b in beta:
        if b - r >= 0 and b - r not in beta:
            jumped = sum(1 for x in beta if b - r < x < b)
            new = _from_beta((beta - {b}) | {b - r})
            total += (-1) ** jumped * _mn(new, rest)
    return total


def character(lam, mu) -> int:
    """chi^lambda evaluated on the conjugacy class of cycle type mu."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    return _mn(tuple(lam), tuple(mu))


def dimension(lam) -> int:
    lam = Partition(lam)
    return character(lam, (1,) * lam.size)


class CharacterTable:
    """Read-only table of chi^lambda_mu for all partitions of n."""

    def __init__(self, n: int):
        self.n = n
        self.partitions = enumerate_partitions(n)
        self.values = {(lam, mu): character(lam, mu)
                       for lam in self.partitions for mu in self.partitions}

    def __getitem__(self, key) -> int:
        lam, mu = key
        return self.values[Partition(lam), Partition(mu)]


@lru_cache(maxsize=None)
def character_table(n: int) -> CharacterTable:
    return CharacterTable(n)
