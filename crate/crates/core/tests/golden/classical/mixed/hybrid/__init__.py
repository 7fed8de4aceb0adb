# Generated by qumodel. Package Hybrid <<Quantum>>
