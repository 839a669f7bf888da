"""
=================
Orbit polygons
=================

Reading each rotation of a tuple as a point in n dimensions and joining
consecutive rotations gives a closed polygon whose edges all have the same
length.
"""

import sys

from loosened_collatz.geometry import (
    diagonal_centroid,
    equal_edge_check,
    object_fingerprint,
    orbit_polygon,
    to_csv,
)

for t in [(0, 3, 2), (1, 7, 0, 0), (2, 2), (0, 0, 3, 4)]:
    p = orbit_polygon(t)
    print(t, p.squared_lengths, equal_edge_check(p), diagonal_centroid(p))

###############################################################################
# Fingerprints identify cycles
# ----------------------------

print(object_fingerprint((0, 3, 2)) == object_fingerprint((2, 0, 3)))

###############################################################################
# Export for plotting elsewhere
# -----------------------------

sys.stdout.write(to_csv(orbit_polygon((0, 0, 3, 4))))
