"""
Three ways to compute Gamma
===========================

The class Gamma_{m,n} can be evaluated by a Vandermonde-contracted closed
form, by the raw triple sum, or by pushing forward over the projectivised
section bundle.  Here we compare all three on a small family over CP^2.
"""

from fswcalc import (BundleClass, KahlerFamilyData, fsw_general, gamma_closed,
                     gamma_pushforward, gamma_triple_sum, projective_space, trivial)

# the base: CP^2 with hyperplane class t, t^3 = 0
R = projective_space(2)
t = R.gen("t")

# a rank-3 section bundle with c = 1 + 2t - t^2, a line bundle of H^1, no H^2 or H^{2,0}
V0 = BundleClass(R, 3, [R.one, 2 * t, -t * t])
V1 = BundleClass(R, 1, [R.one, t])
data = KahlerFamilyData(R, 3, 1, 0, 0, V0, V1, trivial(R, 0), trivial(R, 0))
print("M =", data.obstruction_rank)

###############################################################################
# Each route returns a GammaResult carrying the value and its half-degree.

for m in range(data.obstruction_rank + 1):
    for n in range(5):
        a = gamma_closed(data, m, n)
        b = gamma_triple_sum(data, m, n)
        c = gamma_pushforward(data, m, n)
        assert a.value == b.value == c.value
        print(f"m={m} n={n} delta={a.delta:2d}  Gamma = {a.value}")

###############################################################################
# FSW_n weights the Gammas by Chern classes of H^{2,0}.

for n in range(5):
    print(f"FSW_{n} = {fsw_general(data, n)}")
