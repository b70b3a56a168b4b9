import itertools
import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.polyfuncs import symmetrize

from fswcalc import (BundleClass, bundle_from_total, dual, jet_total_class, line_bundle,
                     projective_space, segre_of, surface_ring, sym_power, sym_tensor,
                     tensor_line_chern, tensor_line_segre, tensor_product, trivial, whitney_sum)
from fswcalc._roots import reduce_blockwise_symmetric
from helpers import bundles, classes, random_bundle, rings, root_ring


def elementary(ring, xs):
    """Bundle whose Chern roots are the given degree-2 classes."""
    total = ring.one
    for x in xs:
        total = total * (1 + x)
    return bundle_from_total(len(xs), total)


def total_of_roots(ring, forms):
    total = ring.one
    for f in forms:
        total = total * (1 + f)
    return total


class TestBundleClass:
    def test_validation(self):
        R = projective_space(2)
        t = R.gen("t")
        with pytest.raises(ValueError, match="c_0"):
            BundleClass(R, 1, [2 * R.one, t])
        with pytest.raises(ValueError, match="homogeneous"):
            BundleClass(R, 2, [R.one, t * t])
        with pytest.raises(ValueError, match="vanish"):
            BundleClass(R, 1, [R.one, t, t * t])
        with pytest.raises(ValueError):
            BundleClass(R, -1)

    def test_classes_above_rank_or_top_are_zero(self):
        R = projective_space(1)
        E = BundleClass(R, 4, [R.one, 3 * R.gen("t")])
        assert E.c(2) == 0 and E.c(7) == 0 and E.c(-1) == 0

    def test_bundle_from_total_rejects_high_pieces(self):
        R = projective_space(2)
        t = R.gen("t")
        assert bundle_from_total(2, 1 + t + t * t).c(2) == t * t
        with pytest.raises(ValueError, match="rank 1"):
            bundle_from_total(1, 1 + t + t * t)


class TestSegre:
    def test_trivial(self):
        R = projective_space(3)
        for r in range(4):
            assert segre_of(trivial(R, r)).total() == R.one

    def test_line_bundle_geometric_series(self):
        R = projective_space(3)
        t = R.gen("t")
        assert segre_of(line_bundle(t)).total() == 1 - t + t ** 2 - t ** 3

    def test_rank_two_recursion(self):
        R = root_ring(2, 3)
        x1, x2 = R.gens
        E = elementary(R, [x1, x2])
        s = segre_of(E)
        assert s[1] == -E.c(1)
        assert s[2] == E.c(1) ** 2 - E.c(2)

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_c_times_s_is_one(self, data):
        R = data.draw(rings())
        E = data.draw(bundles(R, data.draw(st.integers(0, 5))))
        assert E.total() * segre_of(E).total() == R.one


class TestTensorLine:
    def test_first_chern_class(self):
        R = projective_space(2)
        t = R.gen("t")
        E = BundleClass(R, 3, [R.one, 2 * t, -t * t])
        assert tensor_line_chern(E, 5 * t).c(1) == E.c(1) + 3 * 5 * t
        assert tensor_line_segre(E, 5 * t)[1] == segre_of(E)[1] - 3 * 5 * t

    def test_line_bundle_case(self):
        R = projective_space(2)
        t = R.gen("t")
        assert tensor_line_chern(line_bundle(2 * t), -t).c(1) == t

    def test_identity(self):
        R = surface_ring([[1, 2], [2, 0]])
        E = BundleClass(R, 2, [R.one, R.gens[0], 3 * R.vol])
        assert tensor_line_chern(E, R.zero) == E
        assert tensor_line_segre(E, R.zero) == segre_of(E)

    def test_rejects_non_degree_two(self):
        R = projective_space(2)
        with pytest.raises(ValueError):
            tensor_line_chern(trivial(R, 2), R.gen("t") ** 2)

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_chern_and_segre_consistent(self, data):
        R = data.draw(rings())
        E = data.draw(bundles(R, data.draw(st.integers(0, 4))))
        ell = data.draw(classes(R, 2))
        assert segre_of(tensor_line_chern(E, ell)) == tensor_line_segre(E, ell)

    @pytest.mark.parametrize("rank", [1, 2, 3])
    def test_splitting_oracle(self, rank):
        R = root_ring(rank + 1, 4)
        *xs, y = R.gens
        E = elementary(R, xs)
        assert tensor_line_chern(E, y).total() == total_of_roots(R, [x + y for x in xs])


class TestWhitneyAndDual:
    def test_trivial_summand(self):
        R = projective_space(2)
        E = BundleClass(R, 2, [R.one, R.gen("t")])
        F = whitney_sum(E, trivial(R, 3))
        assert F.rank == 5 and F.total() == E.total()

    def test_two_line_bundles(self):
        R = root_ring(2, 2)
        a, b = R.gens
        F = whitney_sum(line_bundle(a), line_bundle(b))
        assert F.c(1) == a + b and F.c(2) == a * b

    def test_dual(self):
        R = projective_space(3)
        t = R.gen("t")
        assert dual(line_bundle(t)).c(1) == -t
        E = line_bundle(t)
        prod = E.total() * dual(E).total()
        assert prod.component(2) == 0

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_whitney_commutative_associative(self, data):
        R = data.draw(rings())
        E, F, G = (data.draw(bundles(R, data.draw(st.integers(0, 3)))) for _ in range(3))
        assert whitney_sum(E, F) == whitney_sum(F, E)
        assert whitney_sum(whitney_sum(E, F), G) == whitney_sum(E, whitney_sum(F, G))
        assert dual(dual(E)) == E


class TestSymPower:
    def test_k_one_is_identity(self):
        R = projective_space(3)
        t = R.gen("t")
        E = BundleClass(R, 3, [R.one, 2 * t, t * t, -4 * t ** 3])
        assert sym_power(E, 1) == E

    @pytest.mark.parametrize("k", range(0, 5))
    def test_rank_three_rank(self, k):
        R = projective_space(2)
        assert sym_power(trivial(R, 3), k).rank == (k + 1) * (k + 2) // 2

    def test_rank_two_k_two_first_class(self):
        R = projective_space(3)
        t = R.gen("t")
        E = BundleClass(R, 2, [R.one, 2 * t, 5 * t * t])
        S = sym_power(E, 2)
        assert S.rank == 3
        assert S.c(1) == 3 * E.c(1)
        # roots 2a, a+b, 2b: c2 = 2(a+b)^2 + 4ab, c3 = 4ab(a+b)
        assert S.c(2) == 2 * E.c(1) ** 2 + 4 * E.c(2)
        assert S.c(3) == 4 * E.c(2) * E.c(1)

    def test_rank_above_three_rejected(self):
        R = projective_space(1)
        with pytest.raises(ValueError, match="rank"):
            sym_power(trivial(R, 4), 2)

    @pytest.mark.parametrize("rank, k", [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
    def test_splitting_oracle(self, rank, k):
        R = root_ring(rank, 4)
        xs = R.gens
        forms = [sum((xs[i] for i in combo), R.zero)
                 for combo in itertools.combinations_with_replacement(range(rank), k)]
        S = sym_power(elementary(R, xs), k)
        assert S.rank == math.comb(rank + k - 1, k)
        assert S.total() == total_of_roots(R, forms)

    def test_tensor_product_oracle(self):
        R = root_ring(4, 4)
        a1, a2, b1, b2 = R.gens
        E, F = elementary(R, [a1, a2]), elementary(R, [b1, b2])
        expected = total_of_roots(R, [a + b for a in (a1, a2) for b in (b1, b2)])
        assert tensor_product(E, F).total() == expected

    def test_dual_factors(self):
        R = root_ring(3, 3)
        a1, a2, b = R.gens
        E, F = elementary(R, [a1, a2]), elementary(R, [b])
        got = sym_tensor([E, F], [2, 1], duals=(True, False))
        forms = [-(2 * a1) + b, -(a1 + a2) + b, -(2 * a2) + b]
        assert got.total() == total_of_roots(R, forms)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_rank_formula(self, data):
        R = data.draw(rings())
        r = data.draw(st.integers(0, 3))
        k = data.draw(st.integers(0, 4))
        E = data.draw(bundles(R, r))
        assert sym_power(E, k).rank == (math.comb(r + k - 1, k) if r else int(k == 0))


class TestJets:
    def test_order_zero(self):
        R = surface_ring([[1]])
        L = line_bundle(3 * R.gen("h"))
        assert jet_total_class(trivial(R, 2), L, 0) == L

    @pytest.mark.parametrize("q", range(0, 4))
    def test_rank(self, q):
        R = surface_ring([[1]])
        J = jet_total_class(BundleClass(R, 2, [R.one, -3 * R.gen("h"), 3 * R.vol]),
                            line_bundle(R.gen("h")), q)
        assert J.rank == (q + 1) * (q + 2) // 2

    def test_first_order(self):
        R = root_ring(3, 3)
        a, b, ell = R.gens
        cot = elementary(R, [a, b])
        J = jet_total_class(cot, line_bundle(ell), 1)
        assert J.total() == (1 + a + ell) * (1 + b + ell) * (1 + ell)

    def test_input_ranks_checked(self):
        R = surface_ring([[1]])
        with pytest.raises(ValueError):
            jet_total_class(trivial(R, 3), trivial(R, 1), 1)
        with pytest.raises(ValueError):
            jet_total_class(trivial(R, 2), trivial(R, 2), 1)


class TestSymmetricReduction:
    """The leading-term reduction against sympy's ``symmetrize``."""

    @pytest.mark.parametrize("seed", range(12))
    def test_against_sympy(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        xs = sympy.symbols(f"x1:{n + 1}")
        f = 0
        for _ in range(rng.randint(1, 3)):
            exps = [rng.randint(0, 3) for _ in range(n)]
            coeff = rng.randint(-4, 4)
            for perm in set(itertools.permutations(exps)):
                f += coeff * sympy.prod(x ** e for x, e in zip(xs, perm))
        f = sympy.expand(f)
        poly = {m: int(c) for m, c in sympy.Poly(f, *xs).terms()} if f != 0 else {}
        ours = reduce_blockwise_symmetric(poly, (n,))

        sym, rem, defs = symmetrize(f, *xs, formal=True)
        assert rem == 0
        ss = [s for s, _ in defs]
        theirs = {}
        if sym != 0:
            for mono, c in sympy.Poly(sym, *ss).terms():
                theirs[tuple(mono)] = int(c)
        assert ours == theirs

    def test_rejects_non_symmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            reduce_blockwise_symmetric({(1, 0): 1}, (2,))


def test_random_bundles_in_root_ring_roundtrip():
    rng = random.Random(7)
    R = projective_space(3)
    for _ in range(20):
        E = random_bundle(rng, R, rng.randint(0, 3))
        assert BundleClass(R, E.rank, E.chern) == E
