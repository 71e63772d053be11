"""
The experiment harness: synthetic datasets and the grid of frozen (x) and trainable (o) components combined by
linear or activation gluing, part after part.
"""

LINEAR_RULE = "linear"
NONLINEAR_MIXTURE_RULE = "nonlinear-mixture"
AUTOREGRESSIVE_RULE = "autoregressive"

RULES = (LINEAR_RULE, NONLINEAR_MIXTURE_RULE, AUTOREGRESSIVE_RULE)

FROZEN = "x"
TRAINABLE = "o"

# Gluing label used in reports for the identity activation.
LINEAR_GLUING = "linear"
NO_GLUING = "none"
