# Generated by qumodel. Package QuantumLayer.Ansatz <<Quantum>>
