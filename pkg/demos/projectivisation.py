"""
Projectivisation of a bundle over CP^1
======================================

For V = O + O + O(d) over CP^1 and the line bundle O(1) on the fibres, the
family has three sections and FSW_3 = -d t.  We check this against the
general formula and show the expanded binomial form.
"""

from fswcalc import (BundleClass, ProjectivisationSpec, family_cross_check,
                     projective_space, projectivisation_fsw_expanded, trivial)

R = projective_space(1)
t = R.gen("t")

for d in (-2, 1, 4):
    V = BundleClass(R, 3, [R.one, d * t])
    spec = ProjectivisationSpec(R, V, 1, trivial(R, 1))
    rows = family_cross_check(spec, range(5))
    print(f"d={d:2d}  h0={spec.h0}  " +
          "  ".join(f"FSW_{r.n}={r.family_form}" for r in rows))
    assert all(r.equal for r in rows)

###############################################################################
# Over CP^2 with a twist, the expanded form writes the twist as a binomial sum.

P2 = projective_space(2)
s = P2.gen("t")
V = BundleClass(P2, 3, [P2.one, 3 * s, s * s])
L = BundleClass(P2, 1, [P2.one, -s])
spec = ProjectivisationSpec(P2, V, 2, L)
for n in range(spec.h0 - 1, spec.h0 + 2):
    print(f"k=2  FSW_{n} = {projectivisation_fsw_expanded(spec, n)}")
