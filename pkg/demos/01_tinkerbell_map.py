# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # The Tinkerbell map
# One step of the map, a long orbit, and the bit each point contributes.

# +
import numpy as np

from shah.tinkerbell import TinkerbellParams, TinkerbellState, extract_bit, orbit, step
# -

# The origin is a fixed point; (1, 0) is easy to check by hand.

print(step(TinkerbellState(0.0, 0.0)))
print(step(TinkerbellState(1.0, 0.0)))

# A 100 001-point orbit from the first key seed, with the default coefficients
# (0.9, -0.6013, 2.0, 0.5). Write it to disk to plot with any external tool.

start = TinkerbellState(-0.423555643379287, -0.762576287931311)
points = orbit(start, 100_001)
print(points.shape, points.min(axis=0), points.max(axis=0))
np.savetxt("tinkerbell_a.txt", points, fmt="%.17g")

# Other coefficient sets give differently shaped attractors.

alt = orbit(TinkerbellState(-0.72, -0.64, TinkerbellParams(-0.3, -0.6013, 2.0, 0.5)), 100_001)
print(alt.min(axis=0), alt.max(axis=0))

# Each y coordinate contributes one bit: the parity of trunc(y * 1e9).

bits = [extract_bit(y) for y in points[1:10_001, 1]]
print("ones fraction:", np.mean(bits))
