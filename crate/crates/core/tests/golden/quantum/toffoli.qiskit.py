# Generated by qumodel from IR version 1 for target qiskit. Do not edit by hand.
# Qubits: x0=q[0], x1=q[1], y=q[2]
# Classical bits: b0=c[0], b1=c[1], b2=c[2]
import json

from qiskit import ClassicalRegister, QuantumCircuit, QuantumRegister, transpile
from qiskit_aer import AerSimulator

q = QuantumRegister(3, "q")
cRegister = ClassicalRegister(3, "c")
qc = QuantumCircuit(q, cRegister)

qc.h(q[0])
qc.x(q[1])
qc.ccx(q[0], q[1], q[2])
qc.measure(q[0], cRegister[0])
qc.measure(q[1], cRegister[1])
qc.measure(q[2], cRegister[2])

simulator = AerSimulator()
result = simulator.run(transpile(qc, simulator), shots=1024).result()
counts = {key.replace(" ", ""): value for key, value in result.get_counts(qc).items()}
print(json.dumps(counts, sort_keys=True, separators=(",", ":")))
