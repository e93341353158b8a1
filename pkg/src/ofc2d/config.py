"""Engineering budgets shared by every structure.

Space and conflict-list guarantees of the coarse covers are stated in terms
of these constants, and the downstream structures inherit them, so they live
in one place.
"""

# Cutting cell budget: a cutting built with target r has at most C_CUT * r cells.
C_CUT = 4

# Conflict budget: every cell's conflict list has at most C_CONF * n / r entries.
C_CONF = 8

# Per-rect sampling rate multiplier for cutting construction.  Each source
# rect is kept with probability min(1, SAMPLE_RHO * r / n).  Roughly 5 cells
# are produced per sampled rect by the trapezoidal refinement, so keeping the
# rate at r/2 leaves headroom under the C_CUT budget.
SAMPLE_RHO = 0.5

# Fresh-randomness attempts before a cutting build gives up.
CUTTING_MAX_RETRIES = 64

# 2D stabbing stores each rect in at most C_STAB2 * ceil(log2 n) + C_STAB2
# canonical nodes (two per segment-tree level).
C_STAB2 = 2

# 3D stabbing stores each box in at most C_STAB3 * H * (log n / log H) slots.
C_STAB3 = 4
