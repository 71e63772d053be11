"""
Monte Carlo estimates of how often the improvement events happen, compared against their closed-form lower bounds.
"""

# A stack improves strictly when its SSE is more than this below the best single output.
STRICT_TOLERANCE = 1e-10

# Two sided confidence level of the binomial half width.
CONFIDENCE = 0.95

# Draws per trial before a sampler is considered unable to satisfy the assumptions.
MAX_RESAMPLES = 100
