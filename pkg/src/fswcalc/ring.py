"""Truncated graded-commutative cohomology rings with exact integer coefficients.

Three presentations are supported:

* ``POINT`` -- the cohomology of a point, ``H^* = Z`` in degree 0.
* ``TRUNCATED_POLYNOMIAL`` -- ``Z[g_1, ..., g_r]`` modulo ``g_i^{k_i} = 0`` and
  everything of degree above the truncation degree.
* ``SURFACE_FORM`` -- degree-2 generators of a compact surface with a symmetric
  intersection matrix ``q``: ``g_i g_j = q_ij vol`` and ``vol`` kills every
  positive-degree class.

Monomials are exponent tuples over the declared generators (plus a trailing
``vol`` slot for surfaces).  They are ordered graded-lexicographically, lowest
degree first, so that printed classes are byte-stable.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "Backend",
    "RingSpec",
    "RingSpecError",
    "Ring",
    "GradedClass",
    "make_ring",
    "mul",
    "graded_component",
    "point_ring",
    "projective_space",
    "surface_ring",
    "truncated_polynomial_ring",
]

Monomial = Tuple[int, ...]

VOL = "vol"


class RingSpecError(ValueError):
    """Raised when a ring presentation violates its invariants."""


class Backend(enum.Enum):
    POINT = "point"
    TRUNCATED_POLYNOMIAL = "truncated_polynomial"
    SURFACE_FORM = "surface"


@dataclass(frozen=True)
class RingSpec:
    backend: Backend
    generators: Tuple[Tuple[str, int], ...] = ()
    truncation_degree: int = 0
    power_relations: Optional[Tuple[Optional[int], ...]] = None
    intersection_matrix: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        # normalise list inputs so a RingSpec stays hashable
        object.__setattr__(self, "generators",
                           tuple((str(n), int(d)) for n, d in self.generators))
        if self.power_relations is not None:
            object.__setattr__(self, "power_relations",
                               tuple(None if k is None else int(k) for k in self.power_relations))
        if self.intersection_matrix is not None:
            object.__setattr__(self, "intersection_matrix",
                               tuple(tuple(int(x) for x in row) for row in self.intersection_matrix))
        self.validate()

    def validate(self) -> None:
        names = [n for n, _ in self.generators]
        seen = set()
        for n in names:
            if n in seen:
                raise RingSpecError(f"generators: duplicate generator name {n!r}")
            seen.add(n)
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise RingSpecError(f"generators: invalid generator name {n!r}")
        if self.truncation_degree < 0 or self.truncation_degree % 2:
            raise RingSpecError(
                f"truncation_degree: must be a non-negative even integer, got {self.truncation_degree}")
        for n, d in self.generators:
            if d <= 0 or d % 2:
                raise RingSpecError(f"generators: generator {n!r} has odd or non-positive degree {d}")
            if d > self.truncation_degree:
                raise RingSpecError(
                    f"generators: generator {n!r} has degree {d} above truncation_degree "
                    f"{self.truncation_degree}")

        if self.backend is Backend.POINT:
            if self.generators or self.truncation_degree != 0:
                raise RingSpecError("backend: point ring takes no generators and truncation_degree 0")
        elif self.backend is Backend.TRUNCATED_POLYNOMIAL:
            if self.intersection_matrix is not None:
                raise RingSpecError("intersection_matrix: only valid for the surface backend")
            if self.power_relations is not None:
                if len(self.power_relations) != len(self.generators):
                    raise RingSpecError("power_relations: need one entry per generator")
                for (n, _), k in zip(self.generators, self.power_relations):
                    if k is not None and k < 1:
                        raise RingSpecError(f"power_relations: exponent for {n!r} must be >= 1")
        elif self.backend is Backend.SURFACE_FORM:
            if self.truncation_degree != 4:
                raise RingSpecError("truncation_degree: surface rings have truncation_degree 4")
            if self.power_relations is not None:
                raise RingSpecError("power_relations: not valid for the surface backend")
            if VOL in names:
                raise RingSpecError(f"generators: {VOL!r} is reserved in surface rings")
            for n, d in self.generators:
                if d != 2:
                    raise RingSpecError(f"generators: surface generator {n!r} must have degree 2")
            q = self.intersection_matrix
            r = len(self.generators)
            if q is None or len(q) != r or any(len(row) != r for row in q):
                raise RingSpecError(f"intersection_matrix: expected a {r}x{r} integer matrix")
            for i in range(r):
                for j in range(i + 1, r):
                    if q[i][j] != q[j][i]:
                        raise RingSpecError(
                            f"intersection_matrix: not symmetric at ({i}, {j})")
        else:  # pragma: no cover
            raise RingSpecError(f"backend: unknown backend {self.backend!r}")


class Ring:
    """A handle on a finitely presented truncated ring.

    Rings compare equal when their presentations are equal; classes from
    different rings cannot be combined.
    """

    def __init__(self, spec: RingSpec):
        spec.validate()
        self.spec = spec
        self.backend = spec.backend
        self.names = tuple(n for n, _ in spec.generators)
        self.degrees = tuple(d for _, d in spec.generators)
        self.truncation_degree = spec.truncation_degree
        self.top = spec.truncation_degree // 2
        nslots = len(self.names) + (1 if self.backend is Backend.SURFACE_FORM else 0)
        self._nslots = nslots
        self._unit: Monomial = (0,) * nslots
        self._mul_cache: dict = {}

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        if self.backend is Backend.POINT:
            return "Ring(point)"
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"Ring({self.backend.value}; {gens}; trunc={self.truncation_degree})"

    # -- monomials ----------------------------------------------------------
    def monomial_degree(self, mono: Monomial) -> int:
        deg = sum(e * d for e, d in zip(mono, self.degrees))
        if self.backend is Backend.SURFACE_FORM:
            deg += 4 * mono[-1]
        return deg

    def _reduce(self, exps: Monomial):
        """Return ``(coefficient, normal monomial)`` or ``None`` if the monomial vanishes."""
        if self.monomial_degree(exps) > self.truncation_degree:
            return None
        if self.backend is Backend.SURFACE_FORM:
            gens = exps[:-1]
            total = sum(gens)
            if exps[-1]:
                return (1, exps) if total == 0 and exps[-1] == 1 else None
            if total < 2:
                return 1, exps
            idx = [i for i, e in enumerate(gens) for _ in range(e)]
            coeff = self.spec.intersection_matrix[idx[0]][idx[1]]
            if coeff == 0:
                return None
            return coeff, (0,) * len(gens) + (1,)
        if self.spec.power_relations is not None:
            for e, k in zip(exps, self.spec.power_relations):
                if k is not None and e >= k:
                    return None
        return 1, exps

    def sort_key(self, mono: Monomial):
        return (self.monomial_degree(mono), tuple(-e for e in mono))

    def _mul_monomials(self, a: Monomial, b: Monomial):
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is None and key not in self._mul_cache:
            hit = self._reduce(tuple(x + y for x, y in zip(a, b)))
            self._mul_cache[key] = hit
        return hit

    def normal_form(self, terms: Mapping[Monomial, int]) -> "GradedClass":
        """Reduce an arbitrary exponent-tuple map to a class in normal form."""
        out: dict = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != self._nslots:
                raise ValueError(f"monomial {mono} has wrong length for {self!r}")
            red = self._reduce(mono)
            if red is None or not c:
                continue
            k, m = red
            out[m] = out.get(m, 0) + k * c
        return GradedClass(self, {m: c for m, c in out.items() if c})

    def format_monomial(self, mono: Monomial) -> str:
        if self.backend is Backend.SURFACE_FORM and mono[-1]:
            return VOL
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse_monomial(self, text: str) -> "GradedClass":
        """Parse ``"1"``, ``"t"``, ``"t^2*h"`` or ``"vol"`` into a class."""
        text = text.replace(" ", "")
        if text in ("", "1"):
            return self.one
        exps = [0] * self._nslots
        for factor in text.split("*"):
            name, _, power = factor.partition("^")
            e = int(power) if power else 1
            if e < 0:
                raise ValueError(f"negative exponent in monomial {text!r}")
            if self.backend is Backend.SURFACE_FORM and name == VOL:
                exps[-1] += e
                continue
            if name not in self.names:
                raise ValueError(f"unknown generator {name!r} in monomial {text!r}")
            exps[self.names.index(name)] += e
        return self.normal_form({tuple(exps): 1})

    # -- classes ------------------------------------------------------------
    @property
    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    @property
    def one(self) -> "GradedClass":
        return GradedClass(self, {self._unit: 1})

    def __call__(self, value: Union[int, "GradedClass"]) -> "GradedClass":
        if isinstance(value, GradedClass):
            if value.ring != self:
                raise ValueError("class belongs to a different ring")
            return value
        return GradedClass(self, {self._unit: int(value)} if value else {})

    def gen(self, name: str) -> "GradedClass":
        if self.backend is Backend.SURFACE_FORM and name == VOL:
            return self.vol
        if name not in self.names:
            raise KeyError(f"no generator named {name!r}")
        exps = [0] * self._nslots
        exps[self.names.index(name)] = 1
        return self.normal_form({tuple(exps): 1})

    @property
    def gens(self) -> Tuple["GradedClass", ...]:
        return tuple(self.gen(n) for n in self.names)

    @property
    def vol(self) -> "GradedClass":
        if self.backend is not Backend.SURFACE_FORM:
            raise AttributeError("only surface rings have a distinguished vol class")
        return GradedClass(self, {(0,) * len(self.names) + (1,): 1})

    def basis(self, degree: int) -> Tuple["GradedClass", ...]:
        """Normal-form monomials of the given degree, in output order."""
        if degree < 0 or degree % 2 or degree > self.truncation_degree:
            return ()
        if self.backend is Backend.SURFACE_FORM:
            if degree == 0:
                return (self.one,)
            if degree == 2:
                return self.gens
            return (self.vol,)
        monos = []

        def rec(i, remaining, acc):
            if i == len(self.degrees):
                if remaining == 0:
                    monos.append(tuple(acc))
                return
            e = 0
            while e * self.degrees[i] <= remaining:
                rec(i + 1, remaining - e * self.degrees[i], acc + [e])
                e += 1

        rec(0, degree, [])
        out = []
        for m in monos:
            red = self._reduce(m)
            if red is not None:
                out.append(GradedClass(self, {m: 1}))
        out.sort(key=lambda g: self.sort_key(next(iter(g.terms))))
        return tuple(out)


class GradedClass:
    """An immutable element of a :class:`Ring` in normal form."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, int]):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            if other.ring != self.ring:
                raise ValueError(f"cannot combine classes from {self.ring!r} and {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GradedClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return GradedClass(self.ring, {})
            return GradedClass(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        ring = self.ring
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                red = ring._mul_monomials(m1, m2)
                if red is None:
                    continue
                k, m = red
                out[m] = out.get(m, 0) + k * c1 * c2
        return GradedClass(ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading ------------------------------------------------------------
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({self.ring.monomial_degree(m) for m in self.terms}))

    def component(self, degree: int) -> "GradedClass":
        return GradedClass(self.ring, {m: c for m, c in self.terms.items()
                                       if self.ring.monomial_degree(m) == degree})

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs[0] == degree)

    def constant(self) -> int:
        return self.terms.get(self.ring._unit, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: self.ring.sort_key(mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            name = self.ring.format_monomial(mono)
            mag = abs(c)
            body = str(mag) if name == "1" else (name if mag == 1 else f"{mag}*{name}")
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"GradedClass({self})"


def make_ring(spec: RingSpec) -> Ring:
    return Ring(spec)


def mul(a: GradedClass, b: GradedClass) -> GradedClass:
    """Cup product in normal form; rejects operands from different rings."""
    if a.ring != b.ring:
        raise ValueError(f"cannot multiply classes from {a.ring!r} and {b.ring!r}")
    return a * b


def graded_component(a: GradedClass, degree: int) -> GradedClass:
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return a.component(degree)


# -- standard presentations --------------------------------------------------

def point_ring() -> Ring:
    return Ring(RingSpec(Backend.POINT))


def projective_space(n: int, name: str = "t") -> Ring:
    """``H^*(CP^n) = Z[t]/(t^{n+1})`` with ``t`` in degree 2."""
    if n < 0:
        raise RingSpecError("projective space dimension must be non-negative")
    if n == 0:
        return point_ring()
    return Ring(RingSpec(Backend.TRUNCATED_POLYNOMIAL, ((name, 2),), 2 * n, (n + 1,)))


def surface_ring(matrix: Sequence[Sequence[int]], names: Optional[Iterable[str]] = None) -> Ring:
    r = len(matrix)
    if names is None:
        names = ("h",) if r == 1 else tuple(f"h{i + 1}" for i in range(r))
    names = tuple(names)
    return Ring(RingSpec(Backend.SURFACE_FORM, tuple((n, 2) for n in names), 4,
                         intersection_matrix=tuple(tuple(row) for row in matrix)))


def truncated_polynomial_ring(generators: Sequence[Tuple[str, int]], truncation_degree: int,
                              nilpotence: Optional[Sequence[Optional[int]]] = None) -> Ring:
    return Ring(RingSpec(Backend.TRUNCATED_POLYNOMIAL, tuple(generators), truncation_degree,
                         None if nilpotence is None else tuple(nilpotence)))
