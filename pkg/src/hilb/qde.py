"""
The quantum differential equation q dpsi/dq = M_D psi.

Exact part: the formal fundamental solution Psi = Y(q) q^{M_D(0)} at q = 0 and
the list of singular points read off from the denominators of M_D.
Numerical part: monodromy matrices obtained by integrating the system along
closed loops in the q-plane.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp

from ._factored import FactorBase, FFrac, ffsum
from .exact import CTX, ONE, ZERO, series_expand
from .jack import jack_vector
from .linalg import matmul, solve
from .operators import build_MD
from .partitions import c_lambda, enumerate_partitions

__all__ = [
    "ResonanceError", "MonodromyError", "FundamentalSolution", "formal_solution",
    "ode_residual", "similarity_check", "Singularity", "singularities", "Loop", "parse_loop",
    "circle", "lasso", "MonodromyReport", "monodromy_probe", "transport",
    "numeric_operator", "residue_eigenvalues", "invariance_probe", "commutator_probe",
]


class ResonanceError(ArithmeticError):
    """d + lambda_j - lambda_i vanished while solving for Y_d."""


class MonodromyError(RuntimeError):
    """The numerical integration did not converge."""


# ---------------------------------------------------------------------------
# Formal solution at q = 0
# ---------------------------------------------------------------------------

class FundamentalSolution:
    """Psi = Y(q) q^{M_D(0)} with Y = I + sum_d Y_d q^d.

    The solver works in the basis of Jack vectors, Y_d = P Z_d P^-1; the
    matrices Y_d in the Nakajima basis are assembled on first access.
    """

    def __init__(self, n, order, basis, residue, eigenvalues, P, Pinv, Z, base):
        self.n = n
        self.order = order
        self.basis = basis
        self.residue = residue
        self.eigenvalues = eigenvalues
        self.P = P
        self.Pinv = Pinv
        self._Z = Z
        self._base = base
        self._Y: dict = {}

    def Z(self, d: int):
        """Y_d in the Jack basis."""
        return tuple(tuple(a.to_ratfunc() for a in row) for row in self._Z[d])

    def Y_at(self, d: int):
        if d not in self._Y:
            Pf = [[FFrac.from_ratfunc(a, self._base) for a in row] for row in self.P]
            Pinvf = [[FFrac.from_ratfunc(a, self._base) for a in row] for row in self.Pinv]
            Yd = _ffmatmul(_ffmatmul(Pf, self._Z[d], self._base, reduce=False),
                           Pinvf, self._base)
            self._Y[d] = tuple(tuple(a.to_ratfunc() for a in row) for row in Yd)
        return self._Y[d]

    @property
    def Y(self):
        return tuple(self.Y_at(d) for d in range(self.order + 1))


def _specialized_MD(n, t1, t2):
    MD = build_MD(n)
    if t1 is None and t2 is None:
        return MD
    return MD.map(lambda a: a.specialize(t1=t1, t2=t2))


def _q_coefficients(MD, order):
    """[M_0, M_1, ..., M_order] with exact entries in Q(t1, t2)."""
    N = MD.dim
    series = [[series_expand(a, order) for a in row] for row in MD.entries]
    return [[[series[i][j][e] for j in range(N)] for i in range(N)]
            for e in range(order + 1)]


def _eigenbasis(n, t1, t2):
    """Columns: Jack vectors, with eigenvalues -c(lambda)."""
    basis = enumerate_partitions(n)
    cols, evs = [], []
    for lam in basis:
        jv = jack_vector(lam)
        vec = jv.vector.to_list(basis)
        ev = jv.eigenvalue
        if t1 is not None or t2 is not None:
            vec = [a.specialize(t1=t1, t2=t2) for a in vec]
            ev = ev.specialize(t1=t1, t2=t2)
        cols.append(vec)
        evs.append(ev)
    P = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    return P, evs


def _inverse(P):
    N = len(P)
    cols = [solve(P, [ONE if i == j else ZERO for i in range(N)]) for j in range(N)]
    return [[cols[j][i] for j in range(N)] for i in range(N)]


def _ffmatmul(A, B, base, reduce=True):
    N, K, M = len(A), len(B), len(B[0])
    out = []
    for i in range(N):
        row = []
        for j in range(M):
            x = ffsum([A[i][l] * B[l][j] for l in range(K)], base)
            row.append(x.reduce() if reduce else x)
        out.append(row)
    return out


def _window(MD):
    """Pi(q) = lcm of the entry denominators (Pi(0) = 1) and the q-coefficients
    C_r of the polynomial matrix Pi(q) M_D(q)."""
    Pi = ONE
    for row in MD.entries:
        for a in row:
            Pi = Pi * (a.den / a.den.gcd(Pi.num))
    Pi = Pi / Pi.at_q(0)
    PM = [[a * Pi for a in row] for row in MD.entries]
    R = max(max(a.num.degrees()[2] for row in PM for a in row), Pi.num.degrees()[2])
    pis = list(series_expand(Pi, R))
    C = _q_coefficients(MD.map(lambda a: a * Pi), R)
    return pis, C


def formal_solution(n: int, order: int, t1=None, t2=None) -> FundamentalSolution:
    """Solve d Y_d + Y_d M_D(0) - M_D(0) Y_d = sum_{e=1}^d M_e Y_{d-e}, Y_0 = I.

    The entries of M_D have denominators dividing a polynomial Pi(q) with
    Pi(0) = 1, so multiplying the equation by Pi turns the right side into a
    recursion of bounded length.  The Sylvester equations are diagonal in the
    basis of Jack vectors, where the solution is
    Z_ij = R_ij / (d + lambda_j - lambda_i).  Denominators are products of such
    linear forms and are carried in factored form.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if order < 0:
        raise ValueError("order must be >= 0")
    MD = _specialized_MD(n, t1, t2)
    N = MD.dim
    pis, C = _window(MD)
    P, evs = _eigenbasis(n, t1, t2)
    Pinv = _inverse(P)
    base = FactorBase()
    ff = lambda m: [[FFrac.from_ratfunc(a, base) for a in row] for row in m]
    Ct = [ff(matmul(matmul(Pinv, M), P)) for M in C]
    evf = [FFrac.from_ratfunc(ev, base) for ev in evs]
    pif = [FFrac.from_ratfunc(pi, base) for pi in pis]
    Pf, Pinvf = ff(P), ff(Pinv)
    Z = [ff([[ONE if i == j else ZERO for j in range(N)] for i in range(N)])]
    for d in range(1, order + 1):
        Zd = []
        for i in range(N):
            row = []
            for j in range(N):
                terms = []
                for r in range(1, min(d, len(C) - 1) + 1):
                    prev = Z[d - r]
                    terms += [Ct[r][i][l] * prev[l][j] for l in range(N)]
                    if not pif[r].is_zero() and not prev[i][j].is_zero():
                        # pi_r (d - r + lambda_j) Z_{d-r}
                        w = ffsum([evf[j], FFrac.from_ratfunc(ONE * (d - r), base)], base)
                        terms.append((pif[r] * w * prev[i][j]).scale(-1))
                den = evs[j] - evs[i] + d
                if den.is_zero():
                    raise ResonanceError(
                        f"d={d}: eigenvalues {evs[i]} and {evs[j]} differ by {d}")
                z = ffsum(terms, base).divide_by(den.num)
                if not den.den.is_one():
                    z = FFrac(z.num * den.den, z.den, z.dint, base)
                row.append(z.reduce())
            Zd.append(row)
        Z.append(Zd)
    return FundamentalSolution(n, order, MD.basis, tuple(tuple(r) for r in MD.at_q0().entries),
                               evs, P, Pinv, Z, base)


def ode_residual(sol: FundamentalSolution, frame: str = "nakajima", t1=None, t2=None) -> list:
    """q^d coefficients, d <= order, of the residual of the ODE identity.

    frame="nakajima": q Y' + Y M_D(0) - M_D(q) Y with the q-expansion of M_D
    taken directly, so nothing from the solver's recursion is reused.
    frame="eigen": Pi(q) (q Z' + Z Lambda - P^-1 M_D(q) P Z) in the Jack basis.
    Both vanish to the truncation order exactly when the other does, because
    P is constant and invertible and Pi(0) = 1.  Entries are returned unreduced
    as FFrac values; test them with is_zero().
    """
    MD = _specialized_MD(sol.n, t1, t2)
    N = MD.dim
    base = sol._base
    ff = lambda m: [[FFrac.from_ratfunc(a, base) for a in row] for row in m]
    out = []
    if frame == "nakajima":
        Ms = [ff(M) for M in _q_coefficients(MD, sol.order)]
        Yf = [ff(sol.Y_at(d)) for d in range(sol.order + 1)]
        for d in range(sol.order + 1):
            res = []
            for i in range(N):
                row = []
                for j in range(N):
                    terms = [Yf[d][i][j].scale(d)]
                    terms += [Yf[d][i][l] * Ms[0][l][j] for l in range(N)]
                    terms += [(Ms[e][i][l] * Yf[d - e][l][j]).scale(-1)
                              for e in range(d + 1) for l in range(N)]
                    row.append(ffsum(terms, base))
                res.append(row)
            out.append(res)
        return out
    if frame != "eigen":
        raise ValueError(f"unknown frame {frame!r}")
    pis, C = _window(MD)
    Ct = [ff(matmul(matmul(sol.Pinv, M), sol.P)) for M in C]
    pif = [FFrac.from_ratfunc(pi, base) for pi in pis]
    evf = [FFrac.from_ratfunc(ev, base) for ev in sol.eigenvalues]
    Z = sol._Z
    for d in range(sol.order + 1):
        res = []
        for i in range(N):
            row = []
            for j in range(N):
                terms = []
                for r in range(min(d, len(C) - 1) + 1):
                    prev = Z[d - r]
                    if not pif[r].is_zero() and not prev[i][j].is_zero():
                        w = ffsum([evf[j], FFrac.from_ratfunc(ONE * (d - r), base)], base)
                        terms.append(pif[r] * w * prev[i][j])
                    terms += [(Ct[r][i][l] * prev[l][j]).scale(-1) for l in range(N)]
                row.append(ffsum(terms, base))
            res.append(row)
        out.append(res)
    return out


def similarity_check(sol: FundamentalSolution) -> bool:
    """P P^-1 = I and M_D(0) P = P Lambda exactly."""
    N = len(sol.P)
    ident = matmul(sol.P, sol.Pinv)
    if any(ident[i][j] != (ONE if i == j else ZERO) for i in range(N) for j in range(N)):
        return False
    AP = matmul([list(r) for r in sol.residue], sol.P)
    return all(AP[i][j] == sol.P[i][j] * sol.eigenvalues[j] for i in range(N) for j in range(N))


# ---------------------------------------------------------------------------
# Singular points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Singularity:
    label: str
    value: complex | None   # None for infinity
    k: int = 0              # (-q)^k = 1 with k minimal, 0 for 0 and infinity

    def to_dict(self):
        out = {"point": self.label, "k": self.k}
        if self.value is not None:
            out["re"] = round(self.value.real, 15) + 0.0
            out["im"] = round(self.value.imag, 15) + 0.0
        return out


@lru_cache(maxsize=None)
def _cyclotomic(k: int):
    """Phi_k(-q) as an element of CTX."""
    # Phi_k(x) = prod_{d | k} (x^d - 1)^mu(k/d)
    num = CTX.constant(1)
    den = CTX.constant(1)
    q = CTX.gen(2)
    for d in range(1, k + 1):
        if k % d:
            continue
        m = _moebius(k // d)
        f = (-q) ** d - 1
        if m == 1:
            num *= f
        elif m == -1:
            den *= f
    return num / den


def _moebius(m: int) -> int:
    out, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def singularities(n: int) -> list[Singularity]:
    """{0, oo} together with the roots of unity (-q)^k = 1, k <= n, at which
    some entry of M_D actually has a pole."""
    if n < 1:
        raise ValueError("need n >= 1")
    out = [Singularity("0", 0j), Singularity("inf", None)]
    dens = [a.den for row in build_MD(n).entries for a in row if not a.den.is_one()]
    for k in range(1, n + 1):
        phi = _cyclotomic(k)
        if not any(not den.gcd(phi).is_constant() for den in dens):
            continue
        for j in range(k):
            if math.gcd(j, k) != 1:
                continue
            val = -cmath.exp(2j * math.pi * j / k)
            label = {1: "-1", 2: "1"}.get(k, f"-exp(2*pi*i*{j}/{k})")
            out.append(Singularity(label, complex(round(val.real, 15), round(val.imag, 15)), k))
    return out


# ---------------------------------------------------------------------------
# Numerical monodromy
# ---------------------------------------------------------------------------

class _NumericEntries:
    """M_D(q)/q at fixed rational (t1, t2) as vectorized polynomial ratios."""

    def __init__(self, n, t1, t2):
        MD = build_MD(n)
        self.dim = MD.dim
        nums, dens = [], []
        for row in MD.entries:
            for a in row:
                b = a.specialize(t1=Fraction(t1), t2=Fraction(t2))
                nums.append(_q_coeffs(b.num))
                dens.append(_q_coeffs(b.den))
        width = max(max(len(c) for c in nums), max(len(c) for c in dens))
        self.num = np.array([[0.0] * (width - len(c)) + c for c in nums])
        self.den = np.array([[0.0] * (width - len(c)) + c for c in dens])

    def __call__(self, q: complex) -> np.ndarray:
        pn = np.zeros(self.num.shape[0], dtype=complex)
        pd = np.zeros(self.den.shape[0], dtype=complex)
        for k in range(self.num.shape[1]):
            pn = pn * q + self.num[:, k]
            pd = pd * q + self.den[:, k]
        return (pn / pd).reshape(self.dim, self.dim) / q


def _q_coeffs(p) -> list[float]:
    """Coefficients of a t-free polynomial in q, highest power first."""
    deg = 0
    coeffs = {}
    for exps, c in p.to_dict().items():
        if exps[0] or exps[1]:
            raise ValueError("expected a polynomial in q only")
        e = int(exps[2])
        coeffs[e] = float(int(c))
        deg = max(deg, e)
    return [coeffs.get(e, 0.0) for e in range(deg, -1, -1)]


@lru_cache(maxsize=64)
def numeric_operator(n: int, t1, t2) -> _NumericEntries:
    return _NumericEntries(n, Fraction(t1), Fraction(t2))


@dataclass(frozen=True)
class Loop:
    """Closed path made of pieces; each piece maps s in [0, 1] to (q, dq/ds)."""
    description: dict
    pieces: tuple = field(repr=False)

    @property
    def basepoint(self) -> complex:
        return self.pieces[0](0.0)[0]


def _segment(a: complex, b: complex):
    return lambda s: (a + (b - a) * s, b - a)


def _arc(center: complex, radius: float, start: float, sweep: float):
    def piece(s):
        z = radius * cmath.exp(1j * (start + sweep * s))
        return center + z, 1j * sweep * z
    return piece


def circle(center: complex, radius: float, orientation: int = 1, start: float = 0.0) -> Loop:
    """Circle starting at center + radius * exp(i start)."""
    desc = {"type": "circle", "center": [center.real, center.imag], "radius": radius,
            "basepoint": [(center + radius * cmath.exp(1j * start)).real,
                          (center + radius * cmath.exp(1j * start)).imag],
            "orientation": "ccw" if orientation > 0 else "cw"}
    return Loop(desc, (_arc(center, radius, start, 2 * math.pi * orientation),))


def lasso(center: complex, radius: float, basepoint: complex, orientation: int = 1) -> Loop:
    """Segment from basepoint to the small circle around center, the circle, and back."""
    u = (basepoint - center) / abs(basepoint - center)
    a = center + radius * u
    start = cmath.phase(u)
    desc = {"type": "lasso", "center": [center.real, center.imag], "radius": radius,
            "basepoint": [basepoint.real, basepoint.imag],
            "orientation": "ccw" if orientation > 0 else "cw"}
    return Loop(desc, (_segment(basepoint, a), _arc(center, radius, start, 2 * math.pi * orientation),
                       _segment(a, basepoint)))


_NUM = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?"


def _parse_complex(text: str) -> complex:
    text = text.strip().replace(" ", "").replace("i", "j")
    if re.fullmatch(_NUM, text):
        return complex(float(text))
    return complex(text)


def parse_loop(text: str) -> Loop:
    """Parse "center=-1,radius=0.2[,basepoint=...][,orientation=ccw|cw]".

    Without a basepoint the loop is a circle starting on the ray from the
    center in the positive real direction; with one it is a lasso.
    """
    fields = {}
    for part in text.split(","):
        if "=" not in part:
            raise ValueError(f"bad loop field {part!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    unknown = set(fields) - {"center", "radius", "basepoint", "orientation"}
    if unknown:
        raise ValueError(f"unknown loop fields: {sorted(unknown)}")
    if "center" not in fields or "radius" not in fields:
        raise ValueError("loop needs center and radius")
    center = _parse_complex(fields["center"])
    radius = float(fields["radius"])
    if radius <= 0:
        raise ValueError("radius must be positive")
    orient = {"ccw": 1, "cw": -1}.get(fields.get("orientation", "ccw"))
    if orient is None:
        raise ValueError("orientation must be ccw or cw")
    if "basepoint" in fields:
        return lasso(center, radius, _parse_complex(fields["basepoint"]), orient)
    return circle(center, radius, orient)


def transport(n: int, t1, t2, loop: Loop, rtol: float) -> np.ndarray:
    """Matrix T with psi(end) = T psi(start) along the loop."""
    F = numeric_operator(n, Fraction(t1), Fraction(t2))
    N = F.dim
    T = np.eye(N, dtype=complex)
    for piece in loop.pieces:
        def rhs(s, y, piece=piece):
            q, dq = piece(s)
            return (dq * F(q) @ y.reshape(N, N)).reshape(-1)
        res = solve_ivp(rhs, (0.0, 1.0), np.eye(N, dtype=complex).reshape(-1),
                        method="DOP853", rtol=rtol, atol=rtol * 1e-3)
        if not res.success:
            raise MonodromyError(f"integration failed on {loop.description}: {res.message}")
        T = res.y[:, -1].reshape(N, N) @ T
    return T


@dataclass(frozen=True)
class MonodromyReport:
    loop: dict
    matrix: np.ndarray
    charpoly: np.ndarray
    est_error: float
    converged: bool

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.matrix)

    def to_dict(self, digits: int = 12) -> dict:
        def cx(z):
            return [round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0]
        return {
            "loop": self.loop,
            "matrix": [[cx(z) for z in row] for row in self.matrix],
            "charpoly": [cx(z) for z in self.charpoly],
            "est_error": float(f"{self.est_error:.3e}"),
            "converged": self.converged,
        }


def monodromy_probe(n: int, t1, t2, loop: Loop | str, tol: float = 1e-9) -> MonodromyReport:
    """Integrate around the loop at tolerances tol and tol/100.

    est_error is the largest entry of the difference; the report is marked
    unconverged when it exceeds 10 * tol.
    """
    if isinstance(loop, str):
        loop = parse_loop(loop)
    coarse = transport(n, t1, t2, loop, tol)
    fine = transport(n, t1, t2, loop, tol / 100)
    err = float(np.max(np.abs(fine - coarse)))
    scale = max(1.0, float(np.max(np.abs(fine))))
    if not np.isfinite(err) or abs(np.linalg.det(fine)) < 1e-300:
        raise MonodromyError(f"degenerate transport on {loop.description}")
    return MonodromyReport(loop.description, fine, np.poly(fine), err,
                           err <= 10 * tol * scale)


def residue_eigenvalues(n: int, t1, t2) -> np.ndarray:
    """exp(-2 pi i c(lambda)) at the given parameters."""
    out = []
    for lam in enumerate_partitions(n):
        c = c_lambda(lam).specialize(t1=Fraction(t1), t2=Fraction(t2))
        val = float(c.to_fraction())
        out.append(cmath.exp(-2j * math.pi * val))
    return np.array(out)


def invariance_probe(n: int, t1, t2, loop: Loop | str, tol: float = 1e-9):
    """Compare charpolys of the monodromy at (t1, t2) and (t1 - 1, t2).

    Returns (max coefficient difference, report, shifted report).
    """
    a = monodromy_probe(n, t1, t2, loop, tol)
    b = monodromy_probe(n, Fraction(t1) - 1, t2, loop, tol)
    return float(np.max(np.abs(a.charpoly - b.charpoly))), a, b


def commutator_probe(n: int, t1, t2, loops, tol: float = 1e-9) -> float:
    """Largest ||AB - BA|| over pairs of monodromies of loops sharing a basepoint."""
    mats = [monodromy_probe(n, t1, t2, lp, tol).matrix for lp in loops]
    worst = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            worst = max(worst, float(np.max(np.abs(mats[i] @ mats[j] - mats[j] @ mats[i]))))
    return worst
