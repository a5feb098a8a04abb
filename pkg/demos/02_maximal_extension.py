"""
How far can a geodesic be extended?
===================================

exp_A(tX) stays positive definite exactly while 1 + t lambda_min(Gamma_A[X])
is positive. Past that the curve touches the boundary of the cone.
"""

import numpy as np

import bures_spd as bw

I = np.eye(2)
X = -I
eps = bw.max_extension(I, X)
print("maximal extension for X = -I:", eps)

for t in (0.0, 1.0, 1.9, 1.999, 2 - 1e-8):
    E = bw.exp_map(I, t * X)
    print(f"t={t:<12} det = {np.linalg.det(E):.3e}")

try:
    bw.exp_map(I, 2.0 * X)
except bw.DomainError as err:
    print("at t = 2:", err, "| eps_max carried on the error:", err.eps_max)

# positive semidefinite directions never reach the boundary
print("X = diag(1, 0):", bw.max_extension(I, np.diag([1.0, 0.0])))

# the degenerate direction is the fastest unit-speed way out
A = bw.random_spd(3, seed=4)
V = bw.degenerate_direction(A)
unit = V / bw.norm(A, V)
print("unit degenerate ray leaves at", bw.max_extension(A, unit))
print("sqrt(lambda_min)            ", bw.boundary_distance(A))
print("radius sqrt(lambda_min / 2) ", bw.radius(A))

rng = np.random.default_rng(0)
worst = min(
    bw.max_extension(A, Y / bw.norm(A, Y))
    for Y in (bw.random_sym(3, rng) for _ in range(500))
)
print("shortest exit over 500 random unit rays", worst)
