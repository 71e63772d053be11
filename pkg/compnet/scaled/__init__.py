"""
The scaled activation construction: wraps a non-linear activation between two affine maps so that the result stays
within epsilon of the optimal linear stack on every record, and picks the epsilon that keeps the improvement over
the best single component.
"""

# Points of the grid over the closed interval around z0 on which the suprema are taken.
GRID_POINTS = 1024

# The grid maxima are multiplied by this factor before they are used as bounds.
SAFETY_FACTOR = 2.0

# Largest number of halvings of gamma0 while searching an interval on which sigma' keeps its sign.
MAX_HALVINGS = 60

# Slack allowed between the measured loss of a scaled network and the target loss of its budget.
TARGET_TOLERANCE = 1e-8
