"""Why the flux graph has to be completed.

The indicator of {0} as a flux, with data H(x): the jump in u at x = 0 would
need chi(1) = chi(0), i.e. 0 = 1, so H(x) is not even a weak solution for the
single-valued flux.  With the completed graph the flux value at u = 0 may be
anything in [0, 1], the choice 0 balances the shock, and H(x) is an entropy
solution.  The regularized solver finds exactly that.
"""

# %%
import numpy as np

from jumpflux import oracles, suites

f, rf, sols = suites.example2_run()
print("L1 to H(x) on [-5, 5] at t=1:", oracles.score(sols[-1], oracles.EXAMPLE2, (-5, 5)))

# %% Weak residual against f(t, x) = p(t) cos^2(pi x / 2)
times = np.array([s.t for s in sols])
x = sols[-1].centers
u = np.stack([s.u for s in sols])
print("extended flux residual:", oracles.weak_residual(times, x, u, rf.phi_r(u), sols[-1].dx))
single = np.asarray(f(u))[..., 0]
print("single-valued residual:", oracles.weak_residual(times, x, u, single, sols[-1].dx))
