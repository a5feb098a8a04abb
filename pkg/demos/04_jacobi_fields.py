"""
Jacobi fields and the absence of conjugate points
=================================================

A normal Jacobi field with J(0) = 0 is the derivative of a family of
geodesics fanning out from A. Its closed form is compared with a central
difference of the exponential map.
"""

import numpy as np

import bures_spd as bw

rng = np.random.default_rng(1)
A = bw.random_spd(4, rng)
X = bw.random_sym(4, rng)
spec = bw.JacobiSpec.normal(A, X, bw.random_sym(4, rng))
print("extension of the geodesic:", spec.t_max)

t_end = 0.9 * min(spec.t_max, 5.0)
for t in np.linspace(0.0, t_end, 5):
    J = bw.jacobi_field(spec, t)
    fd = bw.variation_oracle(spec, t)
    print(f"t={t:.3f}  |J| = {np.linalg.norm(J):.6f}  fd error {np.abs(J - fd).max():.2e}")

grid = np.linspace(0.01, 0.99, 50) * t_end
print("min |J(t)| / t on the grid:", bw.min_jacobi_norm(spec, grid))
