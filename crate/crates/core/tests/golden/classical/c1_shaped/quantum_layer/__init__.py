# Generated by qumodel. Package QuantumLayer <<Quantum>>
