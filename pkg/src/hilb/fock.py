"""
Fock space model of the equivariant cohomology of Hilb_n(C^2).

Vectors are stored in the basis

    |mu> = 1/z(mu) * prod_i alpha_{-mu_i} v_0,

so ``alpha_{-k}|mu> = k (m_k(mu) + 1) |mu + k>`` and ``alpha_k |mu> = |mu - k>``
(zero when mu has no part k).
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Mapping

from .exact import ONE, ZERO, RatFunc, T1, T2, as_ratfunc, parse
from .partitions import Partition, enumerate_partitions, zmu

__all__ = [
    "FockVector", "basis_vector", "vacuum", "alpha_apply", "alpha_word",
    "norm", "gram_data", "gram_pair", "divisor_class", "identity_class",
    "nakajima_at_origin", "energy_apply",
]


class FockVector:
    """Finite combination of |mu>, |mu| = n, with RatFunc coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping | None = None):
        self.n = n
        clean = {}
        for mu, c in (coeffs or {}).items():
            mu = Partition(mu)
            if mu.size != n:
                raise ValueError(f"{mu} is not a partition of {n}")
            c = as_ratfunc(c)
            if not c.is_zero():
                clean[mu] = c
        self.coeffs = clean

    def __getitem__(self, mu) -> RatFunc:
        return self.coeffs.get(Partition(mu), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"energy mismatch: {self.n} != {other.n}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.coeffs)
        for mu, c in other.coeffs.items():
            out[mu] = out.get(mu, ZERO) + c
        return FockVector(self.n, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __neg__(self):
        return FockVector(self.n, {mu: -c for mu, c in self.coeffs.items()})

    def __mul__(self, scalar) -> "FockVector":
        scalar = as_ratfunc(scalar)
        return FockVector(self.n, {mu: c * scalar for mu, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def map_coeffs(self, fn) -> "FockVector":
        return FockVector(self.n, {mu: fn(c) for mu, c in self.coeffs.items()})

    def to_list(self, basis=None) -> list[RatFunc]:
        basis = basis or enumerate_partitions(self.n)
        return [self[mu] for mu in basis]

    @classmethod
    def from_list(cls, n: int, values, basis=None) -> "FockVector":
        basis = basis or enumerate_partitions(n)
        return cls(n, dict(zip(basis, values)))

    def to_json(self) -> str:
        return json.dumps({"n": self.n,
                           "coeffs": {str(mu): str(c) for mu, c in self.coeffs.items()}})

    @classmethod
    def from_json(cls, text: str) -> "FockVector":
        data = json.loads(text)
        return cls(data["n"], {Partition.parse(k): parse(v)
                               for k, v in data["coeffs"].items()})

    def __repr__(self):
        body = " + ".join(f"({c})|{mu}>" for mu, c in self.coeffs.items()) or "0"
        return f"FockVector(n={self.n}: {body})"


def basis_vector(mu) -> FockVector:
    mu = Partition(mu)
    return FockVector(mu.size, {mu: ONE})


def vacuum() -> FockVector:
    return FockVector(0, {Partition(): ONE})


def alpha_apply(k: int, v: FockVector) -> FockVector:
    """Apply alpha_k (k != 0); the energy changes by -k."""
    if k == 0:
        raise ValueError("alpha_0 is not defined here")
    out: dict = {}
    if k < 0:
        m = -k
        for mu, c in v.coeffs.items():
            new = mu.add_part(m)
            out[new] = out.get(new, ZERO) + c * (m * (mu.multiplicities()[m] + 1))
    else:
        for mu, c in v.coeffs.items():
            if k in mu:
                new = mu.remove_part(k)
                out[new] = out.get(new, ZERO) + c
    return FockVector(v.n - k, out)


def alpha_word(ks, v: FockVector) -> FockVector:
    """Apply alpha_{k_1} alpha_{k_2} ... alpha_{k_r}: rightmost factor first."""
    for k in reversed(list(ks)):
        v = alpha_apply(k, v)
    return v


def energy_apply(v: FockVector) -> FockVector:
    """sum_{k>0} alpha_{-k} alpha_k."""
    out = FockVector(v.n)
    for k in range(1, v.n + 1):
        out = out + alpha_apply(-k, alpha_apply(k, v))
    return out


@lru_cache(maxsize=None)
def norm(mu) -> RatFunc:
    """<mu|mu> = (-1)^(|mu| - l(mu)) / ((t1 t2)^l(mu) z(mu))."""
    mu = Partition(mu)
    sign = (-1) ** (mu.size - mu.length)
    return RatFunc(sign) / ((T1 * T2) ** mu.length * zmu(mu))


def gram_data(n: int) -> dict[Partition, RatFunc]:
    """Diagonal of the inner product on the energy-n subspace."""
    return {mu: norm(mu) for mu in enumerate_partitions(n)}


def gram_pair(a: FockVector, b: FockVector) -> RatFunc:
    """Bilinear (not sesquilinear) pairing sum_mu a_mu b_mu <mu|mu>."""
    if a.n != b.n:
        raise ValueError(f"energy mismatch: {a.n} != {b.n}")
    acc = ZERO
    for mu, c in a.coeffs.items():
        d = b.coeffs.get(mu)
        if d is not None:
            acc = acc + c * d * norm(mu)
    return acc


def identity_class(n: int) -> FockVector:
    """|1^n>, the unit of H_T(Hilb_n)."""
    return basis_vector((1,) * n)


def divisor_class(n: int) -> FockVector:
    """D = -|2, 1^(n-2)>; zero for n < 2."""
    if n < 2:
        return FockVector(n)
    return -basis_vector((2,) + (1,) * (n - 2))


def nakajima_at_origin(mu) -> FockVector:
    """(t1 t2)^l(mu) |mu>."""
    mu = Partition(mu)
    return basis_vector(mu) * (T1 * T2) ** mu.length
