"""Universal Chern polynomials via formal roots.

Bundles ``E_1, ..., E_g`` of ranks ``r_1, ..., r_g`` get formal roots, one
variable block per bundle.  A derived bundle is described by the linear forms
that are its roots; its Chern classes are the elementary symmetric polynomials
of those forms, which are block-wise symmetric and therefore rewrite uniquely
as polynomials in the elementary symmetric functions of each block, i.e. in the
``c_i(E_b)``.

Results are cached: ``(ranks, forms, top)`` determines everything.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

Poly = Dict[Tuple[int, ...], int]

# The root variables of each block are a bounded resource: the leading-term
# reduction is exponential in the block size.
MAX_BLOCK_RANK = 3


def _poly_mul(a: Poly, b: Poly, top: int = -1) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        da = sum(ma)
        for mb, cb in b.items():
            if top >= 0 and da + sum(mb) > top:
                continue
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _elementary_of_forms(forms: Sequence[Tuple[int, ...]], nvars: int, top: int) -> List[Poly]:
    """Homogeneous pieces ``e_0..e_top`` of ``prod(1 + form)``."""
    one = (0,) * nvars
    prod: Poly = {one: 1}
    for form in forms:
        lin: Poly = {one: 1}
        for v, c in enumerate(form):
            if c:
                m = [0] * nvars
                m[v] = 1
                lin[tuple(m)] = lin.get(tuple(m), 0) + c
        prod = _poly_mul(prod, lin, top)
    pieces: List[Poly] = [dict() for _ in range(top + 1)]
    for m, c in prod.items():
        pieces[sum(m)][m] = c
    return pieces


def _block_elementary(ranks: Sequence[int]) -> List[List[Poly]]:
    """``E[b][j]`` is the j-th elementary symmetric polynomial of block ``b``."""
    nvars = sum(ranks)
    out = []
    offset = 0
    for r in ranks:
        polys = [{(0,) * nvars: 1}]
        for j in range(1, r + 1):
            p: Poly = {}
            for combo in combinations(range(offset, offset + r), j):
                m = [0] * nvars
                for v in combo:
                    m[v] = 1
                p[tuple(m)] = 1
            polys.append(p)
        out.append(polys)
        offset += r
    return out


def reduce_blockwise_symmetric(poly: Poly, ranks: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """Rewrite a block-wise symmetric polynomial in elementary symmetric functions.

    The result maps an exponent vector over ``(e_{b,1}, ..., e_{b,r_b})`` for
    every block ``b`` (concatenated) to its integer coefficient.  Raises
    ``ValueError`` if ``poly`` is not symmetric within each block.
    """
    nvars = sum(ranks)
    elem = _block_elementary(ranks)
    poly = {m: c for m, c in poly.items() if c}
    result: Dict[Tuple[int, ...], int] = {}
    while poly:
        lead = max(poly)
        coeff = poly[lead]
        evec: List[int] = []
        term: Poly = {(0,) * nvars: 1}
        offset = 0
        for b, r in enumerate(ranks):
            alpha = list(lead[offset:offset + r]) + [0]
            for j in range(r):
                d = alpha[j] - alpha[j + 1]
                if d < 0:
                    raise ValueError("polynomial is not symmetric within its root blocks")
                evec.append(d)
                for _ in range(d):
                    term = _poly_mul(term, elem[b][j + 1])
            offset += r
        key = tuple(evec)
        result[key] = result.get(key, 0) + coeff
        for m, c in term.items():
            v = poly.get(m, 0) - coeff * c
            if v:
                poly[m] = v
            else:
                poly.pop(m, None)
    return {k: v for k, v in result.items() if v}


@lru_cache(maxsize=None)
def universal_chern(ranks: Tuple[int, ...], forms: Tuple[Tuple[int, ...], ...], top: int):
    """Chern classes ``c_0..c_top`` of the bundle with the given root forms.

    Each entry is a dict from block-concatenated exponent vectors over the
    ``c_j(E_b)`` to integer coefficients.
    """
    for r in ranks:
        if r > MAX_BLOCK_RANK:
            raise ValueError(f"formal-root engine supports ranks <= {MAX_BLOCK_RANK}, got {r}")
    nvars = sum(ranks)
    pieces = _elementary_of_forms(forms, nvars, top)
    return tuple(reduce_blockwise_symmetric(p, ranks) for p in pieces)


def sym_tensor_forms(ranks: Sequence[int], ks: Sequence[int], signs: Sequence[int]):
    """Root forms of ``S^{k_1}(E_1^{±}) ⊗ ... ⊗ S^{k_g}(E_g^{±})``.

    ``signs[b] = -1`` dualises block ``b`` (roots negated).
    """
    nvars = sum(ranks)
    per_block = []
    offset = 0
    for r, k, s in zip(ranks, ks, signs):
        forms = []
        for multiset in combinations_with_replacement(range(r), k):
            v = [0] * nvars
            for i in multiset:
                v[offset + i] += s
            forms.append(v)
        per_block.append(forms)
        offset += r
    out = [[0] * nvars]
    for forms in per_block:
        out = [[a + b for a, b in zip(x, y)] for x in out for y in forms]
    return tuple(tuple(f) for f in out)
