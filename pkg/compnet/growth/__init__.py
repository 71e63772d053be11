"""
Composite graphs of components and gluing nodes, and the operators that grow them in width and in depth.
"""

GLUE = "glue"

# A growth stage improves strictly when its loss is more than this below the reference loss.
STRICT_TOLERANCE = 1e-10
