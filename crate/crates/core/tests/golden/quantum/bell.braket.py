# Generated by qumodel from IR version 1 for target braket. Do not edit by hand.
# Qubits: qubit_0=q[0], qubit_1=q[1]
# Classical bits: c_0=c[0], c_1=c[1]
import json

from braket.circuits import Circuit
from braket.devices import LocalSimulator

# Braket allocates qubits implicitly on first use.
qc = Circuit()
measure_map = []

qc.h(0)
qc.cnot(0, 1)
qc.measure(0)
measure_map.append((0, 0))
qc.measure(1)
measure_map.append((1, 1))

counts = {}
if qc.instructions:
    device = LocalSimulator()
    result = device.run(qc, shots=1024).result()
    measured = list(result.measured_qubits)
    for row in result.measurements:
        bits = ["0"] * 2
        for qubit, clbit in measure_map:
            bits[clbit] = str(int(row[measured.index(qubit)]))
        key = "".join(reversed(bits))
        counts[key] = counts.get(key, 0) + 1
else:
    counts["00"] = 1024
print(json.dumps(counts, sort_keys=True, separators=(",", ":")))
