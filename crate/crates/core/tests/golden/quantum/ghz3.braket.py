# Generated by qumodel from IR version 1 for target braket. Do not edit by hand.
# Qubits: a=q[0], b=q[1], c=q[2]
# Classical bits: m0=c[0], m1=c[1], m2=c[2]
import json

from braket.circuits import Circuit
from braket.devices import LocalSimulator

# Braket allocates qubits implicitly on first use.
qc = Circuit()
measure_map = []

qc.h(0)
qc.cnot(0, 1)
qc.cnot(1, 2)
qc.measure(0)
measure_map.append((0, 0))
qc.measure(1)
measure_map.append((1, 1))
qc.measure(2)
measure_map.append((2, 2))

counts = {}
if qc.instructions:
    device = LocalSimulator()
    result = device.run(qc, shots=1024).result()
    measured = list(result.measured_qubits)
    for row in result.measurements:
        bits = ["0"] * 3
        for qubit, clbit in measure_map:
            bits[clbit] = str(int(row[measured.index(qubit)]))
        key = "".join(reversed(bits))
        counts[key] = counts.get(key, 0) + 1
else:
    counts["000"] = 1024
print(json.dumps(counts, sort_keys=True, separators=(",", ":")))
