"""
Closed-form optimal linear stacking of component outputs: the Gram system, its solution and the gradient of the
total loss with respect to the gluing weights.
"""

# Max-norm distance below which a solution counts as a standard basis vector e_j.
UNIT_VECTOR_TOLERANCE = 1e-9

# Jitter added to the Gram diagonal on the single retry, relative to its trace.
JITTER = 1e-12
