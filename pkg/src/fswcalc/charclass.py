"""Chern and Segre class calculus for formal vector bundles.

A :class:`BundleClass` is a rank together with its Chern classes in a
truncated ring; it need not come from geometry.  Symmetric powers and tensor
products of bundles are computed by formal roots (see :mod:`fswcalc._roots`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple, TypeVar

from . import _roots
from ._binom import gbinom as _gbinom
from .ring import GradedClass, Ring

__all__ = [
    "BundleClass",
    "TotalClass",
    "trivial",
    "line_bundle",
    "bundle_from_total",
    "segre_of",
    "tensor_line_chern",
    "tensor_line_segre",
    "whitney_sum",
    "dual",
    "sym_power",
    "sym_tensor",
    "tensor_product",
    "jet_total_class",
]

T = TypeVar("T")


@dataclass(frozen=True)
class TotalClass:
    """Homogeneous pieces ``x_0, x_1, ...`` of a total class, ``x_i`` in degree ``2i``."""

    ring: Ring
    pieces: Tuple[GradedClass, ...]

    def __getitem__(self, i: int) -> GradedClass:
        if i < 0 or i >= len(self.pieces):
            return self.ring.zero
        return self.pieces[i]

    def __len__(self):
        return len(self.pieces)

    def total(self) -> GradedClass:
        out = self.ring.zero
        for p in self.pieces:
            out = out + p
        return out

    @classmethod
    def from_class(cls, x: GradedClass) -> "TotalClass":
        ring = x.ring
        return cls(ring, tuple(x.component(2 * i) for i in range(ring.top + 1)))


class BundleClass:
    """A formal complex vector bundle: rank plus Chern classes ``c_0 = 1, c_1, ...``.

    Only ``c_i`` with ``i <= min(rank, top)`` are stored (``top`` is half the
    ring's truncation degree); all others are zero.
    """

    __slots__ = ("ring", "rank", "chern")

    def __init__(self, ring: Ring, rank: int, chern: Sequence[GradedClass] = ()):
        if rank < 0:
            raise ValueError(f"rank must be non-negative, got {rank}")
        keep = min(rank, ring.top)
        chern = list(chern) if chern else [ring.one]
        if chern[0] != ring.one:
            raise ValueError("c_0 must be 1")
        for i, c in enumerate(chern):
            if c.ring != ring:
                raise ValueError(f"c_{i} lives in a different ring")
            if not c.is_homogeneous(2 * i):
                raise ValueError(f"c_{i} must be homogeneous of degree {2 * i}, got {c}")
            if i > keep and not c.is_zero():
                raise ValueError(f"c_{i} must vanish for a bundle of rank {rank}, got {c}")
        chern = chern[:keep + 1] + [ring.zero] * (keep + 1 - len(chern))
        self.ring = ring
        self.rank = rank
        self.chern = tuple(chern)

    def c(self, i: int) -> GradedClass:
        if i < 0 or i >= len(self.chern):
            return self.ring.zero
        return self.chern[i]

    def total(self) -> GradedClass:
        out = self.ring.zero
        for c in self.chern:
            out = out + c
        return out

    def __eq__(self, other):
        if not isinstance(other, BundleClass):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank and self.chern == other.chern

    def __hash__(self):
        return hash((self.ring, self.rank, self.chern))

    def __repr__(self):
        return f"BundleClass(rank={self.rank}, c={self.total()})"


def trivial(ring: Ring, rank: int) -> BundleClass:
    return BundleClass(ring, rank)


def line_bundle(c1: GradedClass) -> BundleClass:
    return BundleClass(c1.ring, 1, [c1.ring.one, c1])


def bundle_from_total(rank: int, total: GradedClass) -> BundleClass:
    """Split a total Chern class into pieces; rejects pieces above ``rank``."""
    ring = total.ring
    pieces = TotalClass.from_class(total).pieces
    for i in range(rank + 1, len(pieces)):
        if not pieces[i].is_zero():
            raise ValueError(
                f"total class has nonzero degree-{2 * i} piece {pieces[i]}, "
                f"impossible for a bundle of rank {rank}")
    return BundleClass(ring, rank, pieces[:rank + 1])


# -- generic formulas shared with the x-extended ring of fswcore ---------------

def _segre_series(c: Callable[[int], T], rank: int, one: T, upto: int) -> List[T]:
    s = [one]
    for i in range(1, upto + 1):
        acc = 0 * one
        for j in range(1, min(i, rank) + 1):
            acc = acc + c(j) * s[i - j]
        s.append(-acc)
    return s


def _twist_chern(c: Callable[[int], T], rank: int, ell: T, one: T, upto: int) -> List[T]:
    """``c_i(E ⊗ L) = sum_j C(r-i+j, j) c_{i-j}(E) ell^j`` for ``i <= min(rank, upto)``."""
    powers = [one]
    for _ in range(upto):
        powers.append(powers[-1] * ell)
    out = []
    for i in range(min(rank, upto) + 1):
        acc = 0 * one
        for j in range(i + 1):
            b = _gbinom(rank - i + j, j)
            if b:
                acc = acc + b * (c(i - j) * powers[j])
        out.append(acc)
    return out


def _twist_segre(s: Callable[[int], T], rank: int, ell: T, one: T, upto: int) -> List[T]:
    """``s_i(E ⊗ L) = sum_j (-1)^{i-j} C(r+i-1, r-1+j) s_j(E) ell^{i-j}``."""
    if rank == 0:
        return [one] + [0 * one] * upto
    powers = [one]
    for _ in range(upto):
        powers.append(powers[-1] * ell)
    out = []
    for i in range(upto + 1):
        acc = 0 * one
        for j in range(i + 1):
            b = _gbinom(rank + i - 1, rank - 1 + j)
            if b:
                acc = acc + ((-1) ** (i - j) * b) * (s(j) * powers[i - j])
        out.append(acc)
    return out


# -- operations ----------------------------------------------------------------

def segre_of(E: BundleClass) -> TotalClass:
    """Total Segre class ``s(E) = c(E)^{-1}`` by ``s_i = -(c_1 s_{i-1} + ... + c_i)``."""
    ring = E.ring
    return TotalClass(ring, tuple(_segre_series(E.c, E.rank, ring.one, ring.top)))


def _check_line_class(ell: GradedClass, ring: Ring):
    if ell.ring != ring:
        raise ValueError("line class lives in a different ring")
    if not ell.is_homogeneous(2):
        raise ValueError(f"line class must be homogeneous of degree 2, got {ell}")


def tensor_line_chern(E: BundleClass, ell: GradedClass) -> BundleClass:
    """Chern classes of ``E ⊗ L`` where ``c_1(L) = ell``."""
    ring = E.ring
    _check_line_class(ell, ring)
    return BundleClass(ring, E.rank, _twist_chern(E.c, E.rank, ell, ring.one, ring.top))


def tensor_line_segre(E: BundleClass, ell: GradedClass) -> TotalClass:
    """Segre classes of ``E ⊗ L`` directly from those of ``E``."""
    ring = E.ring
    _check_line_class(ell, ring)
    s = segre_of(E)
    return TotalClass(ring, tuple(_twist_segre(s.__getitem__, E.rank, ell, ring.one, ring.top)))


def _product_pieces(a: Callable[[int], GradedClass], b: Callable[[int], GradedClass],
                    ring: Ring, upto: int) -> List[GradedClass]:
    out = []
    for i in range(upto + 1):
        acc = ring.zero
        for j in range(i + 1):
            acc = acc + a(j) * b(i - j)
        out.append(acc)
    return out


def whitney_sum(E: BundleClass, F: BundleClass) -> BundleClass:
    if E.ring != F.ring:
        raise ValueError("bundles live over different rings")
    ring = E.ring
    rank = E.rank + F.rank
    return BundleClass(ring, rank, _product_pieces(E.c, F.c, ring, min(rank, ring.top)))


def dual(E: BundleClass) -> BundleClass:
    return BundleClass(E.ring, E.rank, [(-1) ** i * c for i, c in enumerate(E.chern)])


def _evaluate(poly, bundles: Sequence[BundleClass], ring: Ring) -> GradedClass:
    """Substitute the Chern classes of ``bundles`` into a universal polynomial."""
    slots = [(B, j) for B in bundles for j in range(1, B.rank + 1)]
    out = ring.zero
    for evec, coeff in poly.items():
        term = ring.one
        for (B, j), e in zip(slots, evec):
            if e:
                term = term * B.c(j) ** e
                if term.is_zero():
                    break
        if not term.is_zero():
            out = out + coeff * term
    return out


def sym_tensor(bundles: Sequence[BundleClass], ks: Sequence[int],
               duals: Sequence[bool] = ()) -> BundleClass:
    """``S^{k_1}(E_1) ⊗ ... ⊗ S^{k_g}(E_g)`` (optionally dualising factors) by joint roots.

    Each input bundle must have rank at most 3.
    """
    if not bundles:
        raise ValueError("need at least one bundle")
    ring = bundles[0].ring
    if any(B.ring != ring for B in bundles):
        raise ValueError("bundles live over different rings")
    if len(ks) != len(bundles):
        raise ValueError("need one exponent per bundle")
    if any(k < 0 for k in ks):
        raise ValueError("symmetric power exponents must be non-negative")
    duals = tuple(duals) or (False,) * len(bundles)
    ranks = tuple(B.rank for B in bundles)
    for r in ranks:
        if r > _roots.MAX_BLOCK_RANK:
            raise ValueError(
                f"symmetric powers are limited to input rank <= {_roots.MAX_BLOCK_RANK}, got {r}")
    rank = 1
    for r, k in zip(ranks, ks):
        rank *= _gbinom(r + k - 1, k)
    top = min(rank, ring.top)
    forms = _roots.sym_tensor_forms(ranks, ks, [-1 if d else 1 for d in duals])
    universal = _roots.universal_chern(ranks, forms, top)
    return BundleClass(ring, rank, [_evaluate(p, bundles, ring) for p in universal])


def sym_power(E: BundleClass, k: int) -> BundleClass:
    """``k``-th symmetric power; rank of ``E`` at most 3."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sym_tensor([E], [k])


def tensor_product(E: BundleClass, F: BundleClass) -> BundleClass:
    return sym_tensor([E, F], [1, 1])


def jet_total_class(cotangent: BundleClass, L: BundleClass, q: int) -> BundleClass:
    """``J^q(L)`` over a surface via ``c(J^q) = c(S^q(T*X) ⊗ L) c(J^{q-1})``, ``J^0 = L``."""
    if cotangent.rank != 2:
        raise ValueError("cotangent bundle of a surface has rank 2")
    if L.rank != 1:
        raise ValueError("jets are taken of a line bundle")
    if q < 0:
        raise ValueError("jet order must be non-negative")
    ell = L.c(1)
    J = L
    for t in range(1, q + 1):
        J = whitney_sum(tensor_line_chern(sym_power(cotangent, t), ell), J)
    return J
