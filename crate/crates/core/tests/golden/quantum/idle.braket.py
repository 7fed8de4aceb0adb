# Generated by qumodel from IR version 1 for target braket. Do not edit by hand.
# Qubits: idle=q[0]
# Classical bits: read=c[0]
import json

from braket.circuits import Circuit
from braket.devices import LocalSimulator

# Braket allocates qubits implicitly on first use.
qc = Circuit()
measure_map = []

qc.measure(0)
measure_map.append((0, 0))

counts = {}
if qc.instructions:
    device = LocalSimulator()
    result = device.run(qc, shots=1024).result()
    measured = list(result.measured_qubits)
    for row in result.measurements:
        bits = ["0"] * 1
        for qubit, clbit in measure_map:
            bits[clbit] = str(int(row[measured.index(qubit)]))
        key = "".join(reversed(bits))
        counts[key] = counts.get(key, 0) + 1
else:
    counts["0"] = 1024
print(json.dumps(counts, sort_keys=True, separators=(",", ":")))
