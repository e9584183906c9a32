"""Build and inspect orthonormal filter pairs.

Every multiplex in this package is parameterized by a single scaling
filter g; the wavelet filter h follows mechanically. This script builds
the two builtins, derives a custom 6-tap system from lattice rotation
angles, and shows what the validator reports for a broken filter.
"""

import numpy as np

from wavemux import (
    FilterPair,
    check_orthonormality,
    derive_wavelet_filter,
    format_coefficients_csv,
    make_wavelet_system,
)

# ---------------------------------------------------------------------
# The builtins: the 2-tap Haar filter and the 4-tap Daubechies filter.
# ---------------------------------------------------------------------
for name in ("haar", "db4"):
    pair = make_wavelet_system(name)
    print(f"{name}: g = {format_coefficients_csv(pair.g)}")
    print(f"{' ' * len(name)}  h = {format_coefficients_csv(pair.h)}")
    print(f"{' ' * len(name)}  violations: {check_orthonormality(pair)}")

# ---------------------------------------------------------------------
# The wavelet filter is the alternating flip of the scaling filter:
# h[n] = (-1)^n g[L-1-n]. Its taps always sum to zero.
# ---------------------------------------------------------------------
g = make_wavelet_system("db4").g
h = derive_wavelet_filter(g)
print("\nalternating flip of db4:", np.round(h, 8))
print("sum of h:", h.sum())

# ---------------------------------------------------------------------
# Any angle sequence summing to pi/4 parameterizes a valid orthonormal
# scaling filter through the two-channel lattice, so the mux is not tied
# to the builtins. Here is a 6-tap system from two random angles.
# ---------------------------------------------------------------------
rng = np.random.default_rng(7)
angles = [rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi, np.pi)]
angles.append(np.pi / 4 - sum(angles))

a = np.array([np.cos(angles[0]), np.sin(angles[0])])
b = np.array([-np.sin(angles[0]), np.cos(angles[0])])
for th in angles[1:]:
    a_pad = np.concatenate([a, [0.0, 0.0]])
    b_pad = np.concatenate([[0.0, 0.0], b])
    a, b = np.cos(th) * a_pad + np.sin(th) * b_pad, -np.sin(th) * a_pad + np.cos(th) * b_pad

custom = make_wavelet_system(a, name="lattice6")
print("\ncustom 6-tap system:", np.round(custom.g, 6))
print("violations:", check_orthonormality(custom))

# ---------------------------------------------------------------------
# A filter that fails validation: the report names each violated
# constraint with its residual instead of raising.
# ---------------------------------------------------------------------
broken = FilterPair.from_scaling("broken", np.array([0.9, 0.5]))
for violation in check_orthonormality(broken):
    print(f"broken filter: {violation.constraint} off by {violation.residual:.3e}")
