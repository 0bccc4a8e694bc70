"""From a jump flux to a Lipschitz flux.

The Heaviside flux jumps from 0 to 1 at u = 0.  Completing its graph with the
vertical segment and walking along it with a parameter v gives a continuous
pair (b, g).  Adding v/r to b makes it invertible, and g(b_r^{-1}(u)) is an
ordinary Lipschitz flux whose steepness grows like r.
"""

# %%
import numpy as np

from jumpflux import (
    WeightAssignment,
    build_alpha,
    build_parametrization,
    heaviside_flux,
    indicator_flux,
    invert_br,
    lipschitz_bound,
    regularize,
)

f = heaviside_flux(state_range=(-1, 2), point=0.5)
alpha = build_alpha(f, WeightAssignment((1.0,)))
print("alpha(-1), alpha(1):", alpha(-1.0), alpha(1.0))
print("gap opened at u = 0:", alpha.limits(0.0))

# %% The parametrization on its breakpoints
p = build_parametrization(f, WeightAssignment((1.0,)), theta=0.5)
print(f"{'v':>6} {'b':>6} {'g':>6}")
for v, b, g in zip(p.v, p.b.values, p.g.values[:, 0]):
    print(f"{v:6.2f} {b:6.2f} {g:6.2f}")

# %% Regularization: the plateau becomes a steep ramp of width h/r
for r in (1, 10, 100):
    rf = regularize(p, r)
    print(f"r={r:<4d} Lipschitz={lipschitz_bound(rf):8.2f}  b_r^-1(0.5)={float(invert_br(rf, 0.5)):.4f}")

# %% Changing the plateau width or the interior node traces the same graph
g2 = indicator_flux((-1, 2))
a = build_parametrization(g2, WeightAssignment((2.0,)), 0.5)
b = build_parametrization(g2, WeightAssignment((1.0,)), 0.3)
pts = a.curve()
print("indicator graph vertices (u, g):")
print(np.unique(pts, axis=0))
print("same as with h=1, theta=0.3:", np.array_equal(np.unique(pts, axis=0), np.unique(b.curve(), axis=0)))
