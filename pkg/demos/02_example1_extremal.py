"""Largest and smallest entropy solutions for the Heaviside flux.

With u0 = 1/(1+x^2) the problem u_t + H(u)_x = 0 has more than one entropy
solution.  The largest one does not move.  The smallest one is eaten from the
left by a front x(t) = tan(t - pi/2), which sweeps the whole line at t = pi,
so its mass is (pi - t)^+.
"""

# %%
import numpy as np

from jumpflux import oracles, suites

big = suites.example1_largest()
print("largest:", big.report()["increments"], "converged:", big.converged)
print("L1 to 1/(1+x^2) on [-10, 10]:", oracles.score(big.final, oracles.EXAMPLE1_LARGEST, (-10, 10)))

# %% The smallest solution via the mirrored problem
window = (-40.0, 40.0)
small = suites.example1_smallest(window=window)
print("smallest increments:", np.round(small.increments, 4), "converged:", small.converged)
for s in small.solutions:
    m = oracles.window_mass(s, window)
    front = oracles.detect_front(s, window=window)
    print(f"t={s.t:4.2f}  mass={m:7.4f}  (pi-t)+={oracles.example1_smallest_mass(s.t):7.4f}"
          f"  front={front:8.4f}  tan(t-pi/2)={oracles.example1_front(s.t):8.4f}")

# %% The front obeys x' = 1 + x^2 along the branch where the solution vanishes behind it
x19 = oracles.detect_front(small.solutions[1], window=window)
x21 = oracles.detect_front(small.solutions[3], window=window)
x20 = oracles.detect_front(small.solutions[2], window=window)
print("measured speed", (x21 - x19) / 0.2, "expected", float(oracles.example1_front_speed(x20)))
