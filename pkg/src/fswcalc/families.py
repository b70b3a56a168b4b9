"""Worked families: projectivisation, fibre product of projectivisations, universal blowup.

Each family has a closed-form invariant and can also be lowered to
:class:`~fswcalc.fswcore.KahlerFamilyData` and fed to the general formula;
:func:`family_cross_check` compares the two.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Union

from ._binom import gbinom
from .charclass import (
    BundleClass,
    bundle_from_total,
    dual,
    jet_total_class,
    segre_of,
    sym_power,
    sym_tensor,
    tensor_line_chern,
    tensor_line_segre,
    trivial,
)
from .fswcore import KahlerFamilyData, Route, fsw_general
from .ring import Backend, GradedClass, Ring

__all__ = [
    "ProjectivisationSpec",
    "FibreProductSpec",
    "BlowupMode",
    "BlowupSpec",
    "BlowupBundleData",
    "CrossCheckRow",
    "projectivisation_fsw",
    "projectivisation_fsw_expanded",
    "fibre_product_fsw",
    "blowup_bundle_data",
    "blowup_fsw_delta",
    "blowup_fsw_specialised",
    "kahler_data",
    "family_form",
    "family_cross_check",
]


def _check_line(L: BundleClass, ring: Ring, name: str):
    if L.ring != ring:
        raise ValueError(f"{name} lives over a different ring")
    if L.rank != 1:
        raise ValueError(f"{name} must be a line bundle, got rank {L.rank}")


# -- projectivisation ------------------------------------------------------------

@dataclass(frozen=True)
class ProjectivisationSpec:
    """``P(V) -> B`` for a rank-3 bundle ``V``, twisted by ``O_V(k) ⊗ π*L``."""

    ring: Ring
    V: BundleClass
    k: int
    L: BundleClass

    def __post_init__(self):
        if self.V.ring != self.ring:
            raise ValueError("V lives over a different ring")
        if self.V.rank != 3:
            raise ValueError(f"V must have rank 3, got {self.V.rank}")
        _check_line(self.L, self.ring, "L")

    @property
    def h0(self) -> int:
        return (self.k + 1) * (self.k + 2) // 2 if self.k >= 0 else 0

    def sections(self) -> BundleClass:
        """``S^k(V*) ⊗ L``, the bundle of fibrewise sections (``k >= 0``)."""
        return tensor_line_chern(sym_power(dual(self.V), self.k), self.L.c(1))


def projectivisation_fsw(spec: ProjectivisationSpec, n: int) -> GradedClass:
    """``(-1)^n s_{n-h0+1}(S^k(V*) ⊗ L)``, zero for ``k < 0``."""
    ring = spec.ring
    if spec.k < 0:
        return ring.zero
    S = sym_power(dual(spec.V), spec.k)
    s = tensor_line_segre(S, spec.L.c(1))
    return (-1) ** n * s[n - spec.h0 + 1]


def projectivisation_fsw_expanded(spec: ProjectivisationSpec, n: int) -> GradedClass:
    """The same invariant with the twist by ``L`` written out as a binomial sum."""
    ring = spec.ring
    if spec.k < 0:
        return ring.zero
    h0 = spec.h0
    s = segre_of(sym_power(dual(spec.V), spec.k))
    ell = spec.L.c(1)
    total = ring.zero
    for i in range(0, n - h0 + 2):
        b = gbinom(n, h0 - 1 + i)
        if b:
            total = total + ((-1) ** (h0 - 1 + i) * b) * (s[i] * ell ** (n - h0 + 1 - i))
    return total


# -- fibre product ---------------------------------------------------------------

@dataclass(frozen=True)
class FibreProductSpec:
    """``P(V1) x_B P(V2)`` for rank-2 bundles, twisted by ``O(k, l) ⊗ π*L``."""

    ring: Ring
    V1: BundleClass
    V2: BundleClass
    k: int
    l: int  # noqa: E741
    L: BundleClass

    def __post_init__(self):
        for name in ("V1", "V2"):
            B = getattr(self, name)
            if B.ring != self.ring:
                raise ValueError(f"{name} lives over a different ring")
            if B.rank != 2:
                raise ValueError(f"{name} must have rank 2, got {B.rank}")
        _check_line(self.L, self.ring, "L")

    @property
    def h0(self) -> int:
        if self.k < 0 or self.l < 0:
            return 0
        return (1 + self.k) * (1 + self.l)

    def sections(self) -> BundleClass:
        """``S^k(V1*) ⊗ S^l(V2*) ⊗ L`` by joint formal roots of ``V1`` and ``V2``."""
        S = sym_tensor([self.V1, self.V2], [self.k, self.l], duals=(True, True))
        return tensor_line_chern(S, self.L.c(1))


def fibre_product_fsw(spec: FibreProductSpec, n: int) -> GradedClass:
    ring = spec.ring
    if spec.k < 0 or spec.l < 0:
        return ring.zero
    S = sym_tensor([spec.V1, spec.V2], [spec.k, spec.l], duals=(True, True))
    s = tensor_line_segre(S, spec.L.c(1))
    return (-1) ** n * s[n - spec.h0 + 1]


# -- universal blowup ------------------------------------------------------------

class BlowupMode(enum.Enum):
    """How the fibre line bundle ``p*L2 ⊗ O(±kE)`` restricts, and what is assumed."""

    ZERO = "zero"  # k = 0
    MINUS_E_BASEPOINT_FREE = "minus_e_basepoint_free"  # O(-E), L2 basepoint free
    MINUS_KE_SURJECTIVE = "minus_ke_surjective"  # O(-kE), k >= 1, jet evaluation onto
    PLUS_E = "plus_e"  # O(E)
    PLUS_KE_SURJECTIVE = "plus_ke_surjective"  # O(kE), k >= 2, dual jet evaluation onto


_FIXED_K = {
    BlowupMode.ZERO: 0,
    BlowupMode.MINUS_E_BASEPOINT_FREE: 1,
    BlowupMode.PLUS_E: 1,
}
_MIN_K = {BlowupMode.MINUS_KE_SURJECTIVE: 1, BlowupMode.PLUS_KE_SURJECTIVE: 2}


@dataclass(frozen=True)
class BlowupSpec:
    """Universal blowup ``Z -> X`` with line bundle ``π*L1 ⊗ p*L2 ⊗ O(±kE)``.

    ``L1`` is given by its first Chern class, ``L2`` as a line bundle.
    ``p0, p1, p2`` are the dimensions of ``H^i(X, L2)``.  ``cotangent`` is
    needed whenever a jet bundle of positive order appears; ``canonical``
    defaults to ``c_1`` of the cotangent bundle.
    """

    ring: Ring
    L1: GradedClass
    L2: BundleClass
    p0: int
    p1: int
    p2: int
    rho_g: int
    mode: BlowupMode
    k: Optional[int] = None
    cotangent: Optional[BundleClass] = None
    canonical: Optional[GradedClass] = None

    def __post_init__(self):
        ring = self.ring
        if ring.spec.backend is not Backend.SURFACE_FORM:
            raise ValueError("the universal blowup needs a surface base ring")
        object.__setattr__(self, "mode", BlowupMode(self.mode))
        if self.L1.ring != ring or not self.L1.is_homogeneous(2):
            raise ValueError("L1 must be a degree-2 class of the base ring")
        _check_line(self.L2, ring, "L2")
        for name in ("p0", "p1", "p2", "rho_g"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        mode = self.mode
        if mode in _FIXED_K:
            if self.k is None:
                object.__setattr__(self, "k", _FIXED_K[mode])
            elif self.k != _FIXED_K[mode]:
                raise ValueError(f"mode {mode.value} requires k = {_FIXED_K[mode]}, got {self.k}")
        else:
            if self.k is None or self.k < _MIN_K[mode]:
                raise ValueError(f"mode {mode.value} requires k >= {_MIN_K[mode]}, got {self.k}")
        if self.cotangent is not None:
            if self.cotangent.ring != ring or self.cotangent.rank != 2:
                raise ValueError("cotangent must be a rank-2 bundle over the base ring")
            if self.canonical is None:
                object.__setattr__(self, "canonical", self.cotangent.c(1))
            elif self.canonical != self.cotangent.c(1):
                raise ValueError("canonical class disagrees with c_1 of the cotangent bundle")
        if self.canonical is not None:
            if self.canonical.ring != ring or not self.canonical.is_homogeneous(2):
                raise ValueError("canonical must be a degree-2 class of the base ring")

    def _require_cotangent(self, what: str) -> BundleClass:
        if self.cotangent is None:
            raise ValueError(f"{what} needs the cotangent bundle of the base")
        return self.cotangent


@dataclass(frozen=True)
class BlowupBundleData:
    """Cohomology bundles ``W^i`` of the fibres before twisting by ``L1``."""

    h0: int
    h1: int
    h2: int
    W0: BundleClass
    W1: BundleClass
    W2: BundleClass

    def __post_init__(self):
        for i in range(3):
            h = getattr(self, f"h{i}")
            W = getattr(self, f"W{i}")
            if h < 0:
                raise ValueError(f"h{i} = {h} is negative")
            if W.rank != h:
                raise ValueError(f"W{i} has rank {W.rank}, expected h{i} = {h}")


def _sub_bundle_from_quotient(ring: Ring, rank: int, quotient: BundleClass, what: str) -> BundleClass:
    # 0 -> W -> trivial -> Q -> 0 forces c(W) = s(Q)
    if rank < 0:
        raise ValueError(what)
    try:
        return bundle_from_total(rank, segre_of(quotient).total())
    except ValueError as exc:
        raise ValueError(f"W0 of rank {rank} cannot have total class s(Q): {exc}") from None


def blowup_bundle_data(spec: BlowupSpec) -> BlowupBundleData:
    ring = spec.ring
    mode, k = spec.mode, spec.k
    p0, p1, p2 = spec.p0, spec.p1, spec.p2
    if mode in (BlowupMode.ZERO, BlowupMode.PLUS_E):
        return BlowupBundleData(p0, p1, p2, trivial(ring, p0), trivial(ring, p1), trivial(ring, p2))
    if mode in (BlowupMode.MINUS_E_BASEPOINT_FREE, BlowupMode.MINUS_KE_SURJECTIVE):
        if k == 1:
            J = spec.L2
        else:
            J = jet_total_class(spec._require_cotangent(f"mode {mode.value} with k = {k}"), spec.L2, k - 1)
        h0 = p0 - k * (k + 1) // 2
        W0 = _sub_bundle_from_quotient(
            ring, h0, J,
            f"rank relation h0 = p0 - k(k+1)/2 gives h0 = {h0} < 0 (p0 = {p0}, k = {k})")
        return BlowupBundleData(h0, p1, p2, W0, trivial(ring, p1), trivial(ring, p2))
    # PLUS_KE_SURJECTIVE: 0 -> J^{k-2}(L2 ⊗ K*) -> W2 -> H^2(X, L2) -> 0
    if spec.canonical is None:
        raise ValueError(f"mode {mode.value} needs the canonical class (or the cotangent bundle)")
    twist = BundleClass(ring, 1, [ring.one, spec.L2.c(1) - spec.canonical])
    if k == 2:
        J = twist
    else:
        J = jet_total_class(spec._require_cotangent(f"mode {mode.value} with k = {k}"), twist, k - 2)
    h2 = p2 + (k - 1) * k // 2
    W2 = BundleClass(ring, h2, J.chern)
    return BlowupBundleData(p0, p1, h2, trivial(ring, p0), trivial(ring, p1), W2)


def _blowup_kahler(spec: BlowupSpec, bd: BlowupBundleData) -> KahlerFamilyData:
    ring, ell = spec.ring, spec.L1
    return KahlerFamilyData(
        ring, bd.h0, bd.h1, bd.h2, spec.rho_g,
        tensor_line_chern(bd.W0, ell),
        tensor_line_chern(bd.W1, ell),
        tensor_line_chern(bd.W2, ell),
        trivial(ring, spec.rho_g),
    )


def blowup_fsw_delta(spec: BlowupSpec, n: int) -> GradedClass:
    """The invariant from the displayed per-``delta`` formulas for the universal blowup.

    Zero when ``delta`` lies outside ``{0, 1, 2}``: a surface has no
    cohomology above degree 4.
    """
    ring, ell = spec.ring, spec.L1
    bd = blowup_bundle_data(spec)
    h0, h1, h2 = bd.h0, bd.h1, bd.h2
    a = h1 - h2
    M = a + spec.rho_g
    delta = M + n - h0 + 1
    if h0 == 0 or M < 0 or delta not in (0, 1, 2):
        return ring.zero
    sign = (-1) ** n
    if delta == 0:
        return sign * ring(gbinom(a, M))

    s0, s2 = segre_of(bd.W0), segre_of(bd.W2)
    if delta == 1:
        t0 = s0[1] - h0 * ell
        if M == 0:
            return sign * t0
        t1 = bd.W1.c(1) + h1 * ell
        t2 = s2[1] - h2 * ell
        b = gbinom(a - 1, M - 1)
        return sign * (b * t1 + gbinom(a, M) * t0 + b * t2)

    c1w = tensor_line_chern(bd.W1, ell)
    s0w = tensor_line_segre(bd.W0, ell)
    s2w = tensor_line_segre(bd.W2, ell)
    if M == 0:
        return sign * s0w[2]
    if M == 1:
        return sign * (c1w.c(1) * s0w[1] + gbinom(a, 1) * s0w[2] + s2w[1] * s0w[1])
    b0, b1, b2 = gbinom(a, M), gbinom(a - 1, M - 1), gbinom(a - 2, M - 2)
    return sign * (
        b2 * c1w.c(2)
        + b1 * (c1w.c(1) * s0w[1])
        + b2 * (s2w[1] * c1w.c(1))
        + b0 * s0w[2]
        + b1 * (s2w[1] * s0w[1])
        + b2 * s2w[2]
    )


def blowup_fsw_specialised(spec: BlowupSpec, n: int, as_printed: bool = False) -> GradedClass:
    """Fully expanded invariant for trivial ``W^i`` (``k = 0`` or ``+E``) and for ``-E``.

    Everything is written in ``p^i``, ``c_1(L1)`` and ``c_1(L2)``.  Two of the
    ``-E``, ``delta = 2`` displays in circulation contain slips (the sign of
    the ``p^1`` term, and ``p^2(p^2-1)/2`` where ``s_2`` of ``p^2`` copies of
    ``L1`` is ``p^2(p^2+1)/2``); ``as_printed=True`` reproduces them so the
    discrepancy can be exhibited, the default is the corrected form.
    """
    ring = spec.ring
    p0, p1, p2 = spec.p0, spec.p1, spec.p2
    a = p1 - p2
    M = a + spec.rho_g
    l1 = spec.L1
    l1sq = l1 * l1
    sign = (-1) ** n

    if spec.mode in (BlowupMode.ZERO, BlowupMode.PLUS_E):
        h0 = p0
        delta = M + n - h0 + 1
        if h0 == 0 or M < 0 or delta not in (0, 1, 2):
            return ring.zero
        if delta == 0:
            return sign * ring(gbinom(a, M))
        if delta == 1:
            if M == 0:
                return -sign * p0 * l1
            return sign * (a * gbinom(a - 1, M - 1)) * l1 - sign * (p0 * gbinom(a, M)) * l1
        # s_1(W0⊗L1) = -p0 l1, s_2(W0⊗L1) = p0(p0+1)/2 l1^2, likewise for W2
        s01, s02 = -p0 * l1, (p0 * (p0 + 1) // 2) * l1sq
        s21, s22 = -p2 * l1, (p2 * (p2 + 1) // 2) * l1sq
        c11, c12 = p1 * l1, (p1 * (p1 - 1) // 2) * l1sq
        if M == 0:
            return sign * s02
        if M == 1:
            return sign * (c11 * s01 + a * s02 + s21 * s01)
        b0, b1, b2 = gbinom(a, M), gbinom(a - 1, M - 1), gbinom(a - 2, M - 2)
        return sign * (b2 * c12 + b1 * (c11 * s01) + b2 * (s21 * c11)
                       + b0 * s02 + b1 * (s21 * s01) + b2 * s22)

    if spec.mode is not BlowupMode.MINUS_E_BASEPOINT_FREE and not (
            spec.mode is BlowupMode.MINUS_KE_SURJECTIVE and spec.k == 1):
        raise ValueError(f"no specialised form for mode {spec.mode.value} with k = {spec.k}")
    l2 = spec.L2.c(1)
    h0 = p0 - 1
    delta = M + n - h0 + 1
    if h0 <= 0 or M < 0 or delta not in (0, 1, 2):
        return ring.zero
    if delta == 0:
        return sign * ring(gbinom(a, M))
    s01 = l2 - (p0 - 1) * l1
    if delta == 1:
        if M == 0:
            return sign * s01
        b = gbinom(a - 1, M - 1)
        return sign * ((p1 * b) * l1 + gbinom(a, M) * s01 - (p2 * b) * l1)
    s02 = (p0 * (p0 - 1) // 2) * l1sq - p0 * (l1 * l2)
    mixed = l1 * l2 + (1 - p0) * l1sq  # c_1(L1) s_1(W0⊗L1)
    p1_sign = -1 if as_printed else 1
    if M == 0:
        return sign * s02
    if M == 1:
        return sign * (p1_sign * p1 * mixed + a * s02 - p2 * mixed)
    b0, b1, b2 = gbinom(a, M), gbinom(a - 1, M - 1), gbinom(a - 2, M - 2)
    s22 = (p2 * (p2 - 1) // 2 if as_printed else p2 * (p2 + 1) // 2) * l1sq
    return sign * (
        (b2 * p1 * (p1 - 1) // 2) * l1sq
        + (p1_sign * b1 * p1) * mixed
        - (b2 * p2 * p1) * l1sq
        + b0 * s02
        - (b1 * p2) * mixed
        + b2 * s22
    )


# -- common interface ------------------------------------------------------------

FamilyModel = Union[KahlerFamilyData, ProjectivisationSpec, FibreProductSpec, BlowupSpec]


def kahler_data(model: FamilyModel) -> KahlerFamilyData:
    """Lower a family to the cohomology-bundle data of the general formula."""
    if isinstance(model, KahlerFamilyData):
        return model
    if isinstance(model, (ProjectivisationSpec, FibreProductSpec)):
        ring = model.ring
        V0 = model.sections() if model.h0 > 0 else trivial(ring, 0)
        return KahlerFamilyData.trivial(ring, model.h0, 0, 0, 0, V0=V0)
    if isinstance(model, BlowupSpec):
        return _blowup_kahler(model, blowup_bundle_data(model))
    raise TypeError(f"unknown family model {type(model).__name__}")


def family_form(model: FamilyModel, n: int) -> GradedClass:
    """The family's own closed form; generic data has none."""
    if isinstance(model, ProjectivisationSpec):
        return projectivisation_fsw(model, n)
    if isinstance(model, FibreProductSpec):
        return fibre_product_fsw(model, n)
    if isinstance(model, BlowupSpec):
        return blowup_fsw_delta(model, n)
    raise TypeError(f"{type(model).__name__} has no family closed form")


@dataclass(frozen=True)
class CrossCheckRow:
    n: int
    family_form: GradedClass
    general: GradedClass

    @property
    def equal(self) -> bool:
        return self.family_form == self.general


def family_cross_check(model: FamilyModel, n_range, route=Route.CLOSED) -> List[CrossCheckRow]:
    """Closed form against the general formula for each ``n`` in ``n_range``."""
    data = kahler_data(model)
    return [CrossCheckRow(n, family_form(model, n), fsw_general(data, n, route)) for n in n_range]
