import copy
import hashlib
from abc import ABC, abstractmethod
from types import MappingProxyType
from typing import Dict, Optional

import numpy as np

from compnet.core.errors import CompnetError, DimensionError


class Component(ABC):
    """
    Abstract class for a component f_j of a composite network. A component has a stable identifier, an optional slot
    telling which inputs of a dataset it reads, and a set of named parameters. A frozen component stores its
    parameters as read-only arrays, any attempt to change them raises.
    """

    def __init__(self, component_id: str, frozen: bool = False, slot: Optional[int] = None):
        self.id = component_id
        self.slot = slot
        self._frozen = frozen
        self._parameters: Dict[str, np.ndarray] = {}

    @staticmethod
    @abstractmethod
    def kind() -> str:
        pass

    @abstractmethod
    def evaluate_inputs(self, inputs: Optional[np.ndarray], n: int) -> np.ndarray:
        """
        Evaluates the component for every row of the inputs.
        :param inputs: N x d matrix with the flattened inputs, None for components without inputs
        :param n: number of records
        :return: vector of length N
        """
        pass

    @abstractmethod
    def parameter_gradients(self, inputs: Optional[np.ndarray], upstream: np.ndarray) -> Dict[str, np.ndarray]:
        """
        Gradients of sum(upstream * f(inputs)) with respect to every parameter, the reverse-mode step for this
        component.
        """
        pass

    def inputs_from(self, data, indices=None, slot: Optional[int] = None) -> Optional[np.ndarray]:
        """Selects the inputs this component reads from the dataset, restricted to the given records."""
        if not self.needs_inputs():
            return None
        slot = self.slot if slot is None else slot
        inputs = data.inputs_for(slot)
        return inputs if indices is None else inputs[indices]

    def evaluate_rows(self, data, indices=None, slot: Optional[int] = None) -> np.ndarray:
        n = data.n if indices is None else len(indices)
        return self.evaluate_inputs(self.inputs_from(data, indices, slot), n)

    def input_dimension(self) -> Optional[int]:
        return None

    def needs_inputs(self) -> bool:
        return self.input_dimension() is not None

    @property
    def frozen(self) -> bool:
        return self._frozen

    def parameters(self) -> MappingProxyType:
        return MappingProxyType(self._parameters)

    def parameter_count(self) -> int:
        return int(sum(value.size for value in self._parameters.values()))

    def set_parameter(self, name: str, value):
        if self._frozen:
            raise CompnetError(f"Component {self.id} is frozen, parameter {name} cannot change")
        if name not in self._parameters:
            raise KeyError(f"Component {self.id} has no parameter {name}")
        array = np.array(value, dtype=float).reshape(self._parameters[name].shape)
        self._parameters[name] = array

    def _init_parameter(self, name: str, value, shape=None):
        array = np.array(value, dtype=float)
        if shape is not None:
            if array.size != int(np.prod(shape)):
                raise DimensionError(f"Parameter {name} of component {self.id} needs shape {shape}, "
                                     f"got {array.shape}")
            array = array.reshape(shape)
        if not np.all(np.isfinite(array)):
            raise DimensionError(f"Parameter {name} of component {self.id} is not finite")
        if self._frozen:
            array.setflags(write=False)
        self._parameters[name] = array

    def checksum(self) -> str:
        digest = hashlib.sha256()
        for name in sorted(self._parameters):
            digest.update(name.encode("utf-8"))
            digest.update(np.ascontiguousarray(self._parameters[name]).tobytes())
        return digest.hexdigest()

    def freeze(self) -> "Component":
        """Returns a frozen copy that shares nothing mutable with this component."""
        if self._frozen:
            return self
        frozen = copy.deepcopy(self)
        frozen._frozen = True
        for array in frozen._parameters.values():
            array.setflags(write=False)
        return frozen

    def thawed(self) -> "Component":
        """Returns a trainable copy, used when a pre-trained component is turned into a trainable one."""
        thawed = copy.copy(self)
        thawed._frozen = False
        thawed._parameters = {name: np.array(value) for name, value in self._parameters.items()}
        return thawed

    def __repr__(self):
        return f"{type(self).__name__}(id={self.id}, frozen={self._frozen}, slot={self.slot})"
