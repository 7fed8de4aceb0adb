# Generated by qumodel. Package Hybrid.Inner <<Quantum>>
