"""
Datasets, output vectors, the squared-error loss and the default assumptions (linear independence, no perfect
component and the width bound) that the rest of the package relies on.
"""

# Relative tolerance for the linear independence test, applied to the singular values of the output matrix.
A1_TOLERANCE = 1e-9

# Absolute tolerance on the SSE used to decide that an improvement is strict.
STRICT_TOLERANCE = 1e-10
