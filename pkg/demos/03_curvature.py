"""
Curvature is non-negative and shrinks with scale
================================================

Sectional curvature along coordinate sections has a closed form at a
diagonal point. Scaling the point by k divides every curvature by k.
"""

import numpy as np

import bures_spd as bw
from bures_spd.curvature import basis_sectionals

lam = np.array([0.5, 1.0, 3.0])
for (S1, S2), K in basis_sectionals(lam).items():
    if K > 0:
        print(f"K(S{S1.p}{S1.q}, S{S2.p}{S2.q}) = {K:.6f}")

# the closed form agrees with the general trace formula
L = np.diag(lam)
S1, S2 = bw.BasisIndex(0, 1), bw.BasisIndex(1, 1)
print("closed form  ", bw.sectional_basis(lam, S1, S2))
print("trace formula", bw.sectional(L, S1.matrix(3), S2.matrix(3)))

# a small eigenvalue makes 3 / lambda_min large, the section values do not
for e in (1e-1, 1e-3, 1e-6):
    rep = bw.curvature_report(np.diag([e, 1.0, 1.0]))
    print(f"lambda_min={e:g}: max basis K {rep.max_basis_sectional:.4f}, 3/lambda_min {3 / e:g}")

# a sweep over k I_2, the kind of data a curvature-versus-scale plot needs
for k in (0.5, 1.0, 2.0, 4.0):
    rep = bw.curvature_report(k * np.eye(2))
    print(f"k={k}: scalar {rep.scalar_curvature:.4f}, radius {rep.radius:.4f}")
