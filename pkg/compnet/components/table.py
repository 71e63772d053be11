import numpy as np

from compnet.components import TABLE
from compnet.components.component import Component
from compnet.core.errors import TableLengthError
from compnet.core.output_vector import as_array


class TableComponent(Component):
    """
    A pre-trained model represented only by its outputs on the dataset. External models are used exclusively through
    these output vectors, so a table is all the theory needs. Tables are always frozen.
    """

    def __init__(self, component_id: str, values, source: dict = None):
        super().__init__(component_id, frozen=True)
        self._init_parameter("values", as_array(values))
        # Where the values came from, e.g. {"csv": path, "column": name}, kept for serialisation
        self.source = source

    @staticmethod
    def kind() -> str:
        return TABLE

    def values(self) -> np.ndarray:
        return self._parameters["values"]

    def evaluate_inputs(self, inputs, n: int) -> np.ndarray:
        values = self._parameters["values"]
        if len(values) != n:
            raise TableLengthError(f"Table component {self.id} holds {len(values)} values, the dataset has {n} records")
        return values

    def parameter_gradients(self, inputs, upstream):
        return {}

    def parameter_count(self) -> int:
        # The stored outputs are data, not trainable weights
        return 0

    def thawed(self):
        return self

    def evaluate_rows(self, data, indices=None, slot=None) -> np.ndarray:
        values = self.evaluate_inputs(None, data.n)
        return values if indices is None else values[indices]
