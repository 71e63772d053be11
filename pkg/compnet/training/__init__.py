"""
Minibatch SGD with reverse-mode gradients over composite graphs. Frozen components and frozen gluing nodes are never
updated, everything else trains.
"""

# Epochs between two progress messages on the INFO level.
LOG_EVERY = 100
