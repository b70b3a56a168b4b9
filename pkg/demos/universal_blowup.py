"""
The universal blowup family
===========================

Over a surface X, blowing up each point in turn gives a family of surfaces.
We compute its invariants for the trivial twist and for O(-E), then compare
the per-delta formulas against the general formula.
"""

from fswcalc import (BlowupMode, BlowupSpec, BundleClass, blowup_bundle_data,
                     blowup_fsw_delta, blowup_fsw_specialised, fsw_general, kahler_data,
                     surface_ring)

# CP^2 as a surface: one generator h with h.h = 1
X = surface_ring([[1]])
h = X.gen("h")
cot = BundleClass(X, 2, [X.one, -3 * h, 3 * X.vol])
L2 = BundleClass(X, 1, [X.one, 2 * h])  # O(2): six sections, basepoint free

for mode in (BlowupMode.ZERO, BlowupMode.MINUS_E_BASEPOINT_FREE):
    spec = BlowupSpec(X, h, L2, 6, 0, 0, 0, mode, cotangent=cot)
    bd = blowup_bundle_data(spec)
    data = kahler_data(spec)
    print(f"{mode.value}: h0={bd.h0} h1={bd.h1} h2={bd.h2}")
    for n in range(bd.h0 + 2):
        value = blowup_fsw_delta(spec, n)
        assert value == fsw_general(data, n) == blowup_fsw_specialised(spec, n)
        print(f"  FSW_{n} = {value}")

###############################################################################
# Higher jets: O(-2E) needs the 1-jets of L2, which cut h0 down by three.

spec = BlowupSpec(X, h, L2, 6, 0, 0, 0, BlowupMode.MINUS_KE_SURJECTIVE, k=2, cotangent=cot)
data = kahler_data(spec)
print("minus_ke_surjective k=2: h0 =", data.h0)
for n in range(data.h0 + 2):
    print(f"  FSW_{n} = {blowup_fsw_delta(spec, n)}")
