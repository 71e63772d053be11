from typing import List

import numpy as np

from compnet.activation import IDENTITY
from compnet.activation.activation_factory import activation_for
from compnet.core.errors import DimensionError, GraphError


class GlueNode:
    """
    A gluing layer: the affine map L_theta over the outputs of its children, theta[0] being the bias on the constant
    component, followed by an activation. The activation is evaluated around the anchor z0 and mapped back by an
    outer affine map:

        value = out_scale * (sigma(z0 + theta[0] + sum_j theta[j] * child_j) - sigma(z0)) + out_offset

    The defaults (z0 = 0, out_scale = 1, out_offset = sigma(0)) give the plain sigma(L_theta(children)). Only theta
    is trainable; the anchor and the outer map are fixed when the node is built.
    """

    def __init__(self, node_id: str, children: List[str], theta, activation: str = IDENTITY, z0: float = 0.0,
                 out_scale: float = 1.0, out_offset: float = None, frozen: bool = False):
        if len(set(children)) != len(children):
            raise GraphError(f"Glue node {node_id} refers to a child more than once: {children}")
        theta = np.array(theta, dtype=float).reshape(-1)
        if len(theta) != len(children) + 1:
            raise DimensionError(f"Glue node {node_id} has {len(children)} children and needs {len(children) + 1} "
                                 f"weights, got {len(theta)}")
        if not np.all(np.isfinite(theta)):
            raise DimensionError(f"Glue node {node_id} has weights that are not finite")

        self.id = node_id
        self.children = list(children)
        self.activation_id = activation
        self.activation = activation_for(activation)
        self.z0 = float(z0)
        self.out_scale = float(out_scale)
        if out_offset is None:
            out_offset = self.out_scale * float(self.activation.forward(np.asarray(self.z0)))
        self.out_offset = float(out_offset)
        self.frozen = frozen
        if frozen:
            theta.setflags(write=False)
        self.theta = theta

    def pre_activation(self, child_values: np.ndarray) -> np.ndarray:
        """theta[0] + sum_j theta[j] * child_j, relative to the anchor z0."""
        return self.theta[0] + child_values @ self.theta[1:]

    def evaluate(self, child_values: np.ndarray) -> np.ndarray:
        """
        :param child_values: N x (number of children) matrix, column j holds the values of child j
        :return: vector of length N
        """
        delta = self.pre_activation(child_values)
        return self.out_scale * self.activation.increment(self.z0, delta) + self.out_offset

    def local_derivative(self, child_values: np.ndarray) -> np.ndarray:
        """Derivative of the node value with respect to its pre-activation, per record."""
        return self.out_scale * self.activation.derivative(self.z0 + self.pre_activation(child_values))

    def is_linear(self) -> bool:
        return self.activation.is_linear()

    def set_theta(self, theta):
        if self.frozen:
            raise GraphError(f"Glue node {self.id} is frozen, its weights cannot change")
        self.theta = np.array(theta, dtype=float).reshape(self.theta.shape)

    def freeze(self) -> "GlueNode":
        if self.frozen:
            return self
        return GlueNode(self.id, self.children, self.theta, self.activation_id, self.z0, self.out_scale,
                        self.out_offset, frozen=True)

    def relabeled(self, mapping: dict) -> "GlueNode":
        return GlueNode(mapping.get(self.id, self.id), [mapping.get(child, child) for child in self.children],
                        self.theta, self.activation_id, self.z0, self.out_scale, self.out_offset, self.frozen)

    def checksum_update(self, digest):
        digest.update(self.id.encode("utf-8"))
        digest.update(np.ascontiguousarray(self.theta).tobytes())
        digest.update(np.array([self.z0, self.out_scale, self.out_offset]).tobytes())

    def __repr__(self):
        return f"GlueNode(id={self.id}, children={self.children}, activation={self.activation_id})"
