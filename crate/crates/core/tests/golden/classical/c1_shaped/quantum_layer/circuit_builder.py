# Generated by qumodel. Class QuantumLayer.CircuitBuilder
# Association: QuantumExecutor --> CircuitBuilder : uses
# Association: CircuitBuilder --> LayeredAnsatz

import c1_shaped_circuit


class CircuitBuilder:
    def __init__(self):
        self.nQubits: int = 0

    def build(self, params):
        # UML: +build(params: list[float]): Circuit
        pass
