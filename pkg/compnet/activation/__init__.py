"""
Activation functions usable in one-hidden-layer components and in gluing layers. Every activation comes with a
closed-form local inverse and its first two derivatives, which the scaled construction needs.
"""

IDENTITY = "identity"
LOGISTIC = "logistic"
TANH = "tanh"
SCALED_LOGISTIC = "scaled-logistic"

ACTIVATIONS = (IDENTITY, LOGISTIC, TANH, SCALED_LOGISTIC)
