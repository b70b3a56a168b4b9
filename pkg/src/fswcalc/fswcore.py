"""Families Seiberg-Witten invariants of Kähler families with ``b_1 = 0``.

The invariant is assembled as

    FSW_n = sum_{m=0}^{M} c_{M-m}(H^{2,0}) Gamma_{m,n},    M = h1 - h2 + rho_g,

with ``Gamma_{m,n}`` homogeneous of degree ``2 delta``, ``delta = m + n - h0 + 1``.
``Gamma`` is available through three independent evaluations:

``closed``
    the contracted double sum over ``(i, j)``;
``triple``
    the uncontracted triple sum over ``(p, j, i')``;
``pushforward``
    symbolic: expand the obstruction factor in ``B[x]``, multiply by
    ``(-x)^n`` and integrate over the fibres of ``P(V0)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, NamedTuple, Optional

from ._binom import gbinom
from .charclass import BundleClass, _twist_chern, _twist_segre, segre_of, trivial
from .ring import GradedClass, Ring

__all__ = [
    "gbinom",
    "Route",
    "KahlerFamilyData",
    "GammaResult",
    "SWValue",
    "gamma",
    "gamma_closed",
    "gamma_triple_sum",
    "gamma_pushforward",
    "pushforward_power",
    "fsw_general",
    "fsw_terms",
    "recursion_residual",
    "sw_unparametrised",
    "sw_rewritten",
]


class Route(enum.Enum):
    CLOSED = "closed"
    TRIPLE_SUM = "triple"
    PUSHFORWARD = "pushforward"


@dataclass(frozen=True)
class KahlerFamilyData:
    """Cohomology bundles ``V^i`` (ranks ``h^i``) and ``H^{2,0}`` over the base ring."""

    ring: Ring
    h0: int
    h1: int
    h2: int
    rho_g: int
    V0: BundleClass
    V1: BundleClass
    V2: BundleClass
    H20: BundleClass

    def __post_init__(self):
        for name in ("h0", "h1", "h2", "rho_g"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name, rank in (("V0", self.h0), ("V1", self.h1), ("V2", self.h2), ("H20", self.rho_g)):
            B = getattr(self, name)
            if B.ring != self.ring:
                raise ValueError(f"{name} lives over a different ring")
            if B.rank != rank:
                raise ValueError(f"{name} has rank {B.rank}, expected {rank}")

    @classmethod
    def trivial(cls, ring: Ring, h0: int, h1: int, h2: int, rho_g: int, **bundles):
        """Data with every bundle trivial unless given in ``bundles``."""
        ranks = {"V0": h0, "V1": h1, "V2": h2, "H20": rho_g}
        full = {k: bundles.get(k) or trivial(ring, r) for k, r in ranks.items()}
        return cls(ring, h0, h1, h2, rho_g, **full)

    @property
    def obstruction_rank(self) -> int:
        return self.h1 - self.h2 + self.rho_g

    @property
    def chi(self) -> int:
        return self.h0 - self.h1 + self.h2

    def delta(self, m: int, n: int) -> int:
        return m + n - self.h0 + 1


@dataclass(frozen=True)
class GammaResult:
    value: GradedClass
    delta: int
    route: Route


def _vanishes(data: KahlerFamilyData, delta: int) -> bool:
    # empty moduli space, negative degree, or degree beyond the base dimension
    return data.h0 == 0 or delta < 0 or 2 * delta > data.ring.truncation_degree


def _check_mn(m: int, n: int):
    if m < 0 or n < 0:
        raise ValueError(f"m and n must be non-negative, got m={m}, n={n}")


def gamma_closed(data: KahlerFamilyData, m: int, n: int) -> GammaResult:
    _check_mn(m, n)
    ring = data.ring
    delta = data.delta(m, n)
    if _vanishes(data, delta):
        return GammaResult(ring.zero, delta, Route.CLOSED)
    s0 = segre_of(data.V0)
    s2 = segre_of(data.V2)
    a = data.h1 - data.h2
    total = ring.zero
    for i in range(max(delta - m, 0), delta + 1):
        c1 = data.V1.c(delta - i)
        if c1.is_zero():
            continue
        for j in range(0, min(i, m - delta + i) + 1):
            b = gbinom(a - delta + i - j, m - delta + i - j)
            if b:
                total = total + b * (s2[j] * c1 * s0[i - j])
    return GammaResult((-1) ** n * total, delta, Route.CLOSED)


def gamma_triple_sum(data: KahlerFamilyData, m: int, n: int) -> GammaResult:
    _check_mn(m, n)
    ring = data.ring
    delta = data.delta(m, n)
    if _vanishes(data, delta):
        return GammaResult(ring.zero, delta, Route.TRIPLE_SUM)
    s0 = segre_of(data.V0)
    s2 = segre_of(data.V2)
    h0, h1, h2 = data.h0, data.h1, data.h2
    total = ring.zero
    for p in range(m + 1):
        for j in range(p + 1):
            b1 = gbinom(h2 + p - 1, p - j)
            if not b1:
                continue
            for ip in range(m - p + 1):
                q = p + ip + n - j - h0 + 1
                if q < 0:
                    continue
                b2 = gbinom(h1 - m + p + ip, ip)
                if not b2:
                    continue
                sign = (-1) ** (n + p - j)
                total = total + (sign * b1 * b2) * (s2[j] * data.V1.c(m - p - ip) * s0[q])
    return GammaResult(total, delta, Route.TRIPLE_SUM)


def pushforward_power(V0: BundleClass, k: int) -> GradedClass:
    """Fibre integral of ``x^k`` over ``P(V0)``, ``x = c_1(O(1))``."""
    h0 = V0.rank
    if h0 == 0:
        raise ValueError("projectivisation of a rank-0 bundle is empty")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k < h0 - 1:
        return V0.ring.zero
    return segre_of(V0)[k - h0 + 1]


class _XPoly:
    """Polynomials in the fibre class ``x`` with coefficients in the base ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Dict[int, GradedClass]):
        self.ring = ring
        self.coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}

    @classmethod
    def const(cls, c: GradedClass) -> "_XPoly":
        return cls(c.ring, {0: c})

    @classmethod
    def x(cls, ring: Ring) -> "_XPoly":
        return cls(ring, {1: ring.one})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return _XPoly(self.ring, out)

    def __neg__(self):
        return _XPoly(self.ring, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return _XPoly(self.ring, {k: other * c for k, c in self.coeffs.items()})
        out: Dict[int, GradedClass] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                p = c1 * c2
                if not p.is_zero():
                    out[k1 + k2] = out[k1 + k2] + p if k1 + k2 in out else p
        return _XPoly(self.ring, out)

    __rmul__ = __mul__

    def graded_piece(self, half_degree: int) -> "_XPoly":
        """Part of total degree ``2 * half_degree`` (base degree plus ``2 * x``-power)."""
        return _XPoly(self.ring, {k: c.component(2 * (half_degree - k))
                                  for k, c in self.coeffs.items() if k <= half_degree})


def _phi(data: KahlerFamilyData, m: int) -> _XPoly:
    """Degree-2m part of ``c(V1 ⊗ O(1)) s(V2 ⊗ O(1))`` over ``B[x]``."""
    ring = data.ring
    one = _XPoly.const(ring.one)
    x = _XPoly.x(ring)
    V1c = lambda i: _XPoly.const(data.V1.c(i))  # noqa: E731
    s2 = segre_of(data.V2)
    V2s = lambda i: _XPoly.const(s2[i])  # noqa: E731
    c_tw = _twist_chern(V1c, data.h1, x, one, m)
    s_tw = _twist_segre(V2s, data.h2, x, one, m)
    zero = 0 * one
    prod = zero
    for a in range(m + 1):
        ca = c_tw[a] if a < len(c_tw) else zero
        prod = prod + ca * s_tw[m - a]
    return prod.graded_piece(m)


def gamma_pushforward(data: KahlerFamilyData, m: int, n: int) -> GammaResult:
    _check_mn(m, n)
    ring = data.ring
    delta = data.delta(m, n)
    if data.h0 == 0:
        return GammaResult(ring.zero, delta, Route.PUSHFORWARD)
    phi = _phi(data, m)
    total = ring.zero
    for k, coeff in phi.coeffs.items():
        total = total + coeff * pushforward_power(data.V0, k + n)
    # y = -x
    return GammaResult((-1) ** n * total, delta, Route.PUSHFORWARD)


_ROUTES = {
    Route.CLOSED: gamma_closed,
    Route.TRIPLE_SUM: gamma_triple_sum,
    Route.PUSHFORWARD: gamma_pushforward,
}


def gamma(data: KahlerFamilyData, m: int, n: int, route=Route.CLOSED) -> GammaResult:
    return _ROUTES[Route(route)](data, m, n)


def fsw_terms(data: KahlerFamilyData, n: int, route=Route.CLOSED):
    """The ``m``-decomposition: list of ``(m, c_{M-m}(H^{2,0}), Gamma_{m,n})``."""
    M = data.obstruction_rank
    out = []
    for m in range(0, max(M, -1) + 1):
        out.append((m, data.H20.c(M - m), gamma(data, m, n, route)))
    return out


def fsw_general(data: KahlerFamilyData, n: int, route=Route.CLOSED) -> GradedClass:
    if n < 0:
        raise ValueError("n must be non-negative")
    total = data.ring.zero
    for _, c, g in fsw_terms(data, n, route):
        if not c.is_zero() and not g.value.is_zero():
            total = total + c * g.value
    return total


def recursion_residual(data: KahlerFamilyData, m: int, n: int, route=Route.CLOSED) -> GradedClass:
    """``Gamma_{m,n+h0} - c_1(V0) Gamma_{m,n+h0-1} + ... + (-1)^{h0} c_{h0}(V0) Gamma_{m,n}``."""
    h0 = data.h0
    total = data.ring.zero
    for j in range(h0 + 1):
        cj = data.V0.c(j)
        if cj.is_zero():
            continue
        total = total + (-1) ** j * (cj * gamma(data, m, n + h0 - j, route).value)
    return total


class SWValue(NamedTuple):
    value: int
    kahler_chamber: bool  # True when the value is the Kähler-chamber invariant SW^+


def sw_unparametrised(h0: int, h1: int, h2: int, rho_g: int, chi: Optional[int] = None) -> SWValue:
    """Seiberg-Witten invariant of a Kähler surface with ``b_1 = 0``."""
    if min(h0, h1, h2, rho_g) < 0:
        raise ValueError("dimensions must be non-negative")
    if chi is None:
        chi = h0 - h1 + h2
    elif chi != h0 - h1 + h2:
        raise ValueError(f"chi={chi} disagrees with h0 - h1 + h2 = {h0 - h1 + h2}")
    if rho_g > 0 and h0 > 0:
        a = h1 - h2
        return SWValue(gbinom(a, a + rho_g), False)
    if rho_g == 0 and chi >= 1:
        return SWValue(1, True)
    return SWValue(0, rho_g == 0)


def sw_rewritten(h0: int, rho_g: int) -> int:
    """Alternative closed form valid when ``chi = rho_g + 1`` and ``h1 - h2 < 0 < h0``."""
    return (-1) ** (h0 - 1) * gbinom(rho_g - 1, h0 - 1)
