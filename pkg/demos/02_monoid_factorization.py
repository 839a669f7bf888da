"""
==========================
Factorizing inside ``S_k``
==========================

Tuples with the same value ``k`` concatenate to another tuple with value
``k``.  Cutting a tuple wherever its walk comes back to ``k`` gives its atoms.
"""

from loosened_collatz import decompose, equivalent, factorization_fingerprint, is_atom, member

one = member((2,), 1)          # 1 -> 4 -> 2 -> 1
loop = member((0, 0, 3, 4), 1)  # 1 -> 4 -> 13 -> 40 -> ... -> 2 -> 1

xy, yx = one * loop, loop * one
print("x·y =", xy.tuple, " y·x =", yx.tuple)
print("equal?", xy == yx, " equivalent?", equivalent(xy, yx))

###############################################################################
# Atoms
# -----

for e in (one, loop, xy, member((2, 2, 2), 1), member((0, 3, 2), 4)):
    print(f"{e.tuple!s:<20} atom={is_atom(e)!s:<5} atoms={decompose(e).atoms}")

###############################################################################
# Fingerprints
# ------------
#
# The sorted atom list is the same however the atoms were ordered.

print(factorization_fingerprint(xy) == factorization_fingerprint(yx))

###############################################################################
# A caveat
# --------
#
# Two distinct atoms can still be equivalent once circuits get long enough to
# pass through a vertex that carries two different loops.  Here both loops go
# through 1, and the circuit is anchored at 2.

a = member((0, 1, 1, 2, 3, 4, 2, 0, 0, 3, 4, 1), 2)
b = member((0, 1, 1, 2, 3, 4, 0, 0, 3, 4, 2, 1), 2)
print(is_atom(a), is_atom(b), equivalent(a, b), a.tuple == b.tuple)
