"""
=================================
Tuples, the LCF and circuit walks
=================================

A tuple ``(y_1, ..., y_n)`` says: apply ``x -> 3x + 1``, then halve ``y_1``
times, apply ``3x + 1`` again, halve ``y_2`` times, and so on.  In the
loosened graph a ``0`` entry is allowed, so two tripling steps can follow each
other directly.
"""

from loosened_collatz import (
    closed_form_vertex,
    eval_lcf,
    is_satisfying,
    oracle_satisfies,
    rotation_orbit,
    walk_tuple,
)

###############################################################################
# Evaluating the LCF
# ------------------
#
# ``eval_lcf`` returns the exact numerator and (signed) denominator.  A tuple
# satisfies the LCF when the quotient is a positive integer.

for t in [(2,), (2, 2), (0, 3, 2), (1,), (3,)]:
    v = eval_lcf(t)
    print(f"{t!s:>10}  N={v.numerator:<4} D={v.denominator:<4} -> {is_satisfying(t).value}")

###############################################################################
# Walking the circuit
# -------------------
#
# The value is a vertex of the circuit.  Walking from it retraces the cycle
# 4, 13, 40, 20, 10, 5, 16, 8.

w = walk_tuple((0, 3, 2), 4)
print(w.arrows())

###############################################################################
# Rotations give the other tripling vertices
# ------------------------------------------

for r in rotation_orbit((0, 3, 2)):
    print(r, "->", is_satisfying(r).value)

# the closed form for the k-th tripling vertex agrees with the walk
print([closed_form_vertex((0, 3, 2), 4, k) for k in (1, 2, 3)], w.g_vertices)

###############################################################################
# An independent check
# --------------------
#
# ``oracle_satisfies`` finds the fixed point by composing the affine steps
# and then walks the graph.  It never touches the closed form.

print(oracle_satisfies((0, 0, 3, 4)))
