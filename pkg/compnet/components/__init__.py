"""
Component kinds a composite network is built from. Pre-trained components are frozen: their parameters never change
after construction. Non-instantiated components keep their parameters trainable.
"""

CONSTANT_ONE = "constant-one"
AFFINE = "affine"
ONE_HIDDEN_LAYER = "one-hidden-layer"
TABLE = "table"

COMPONENT_KINDS = (CONSTANT_ONE, AFFINE, ONE_HIDDEN_LAYER, TABLE)
