# Generated by qumodel from IR version 1 for target cirq. Do not edit by hand.
# Qubits: theta=q[0], phi=q[1]
# Classical bits: r0=c[0], r1=c[1]
import json

import cirq

q = cirq.LineQubit.range(2)
qc = cirq.Circuit()

qc.append(cirq.rx(0.7)(q[0]))
qc.append(cirq.ry(1.2)(q[1]))
qc.append(cirq.rz(-0.3)(q[0]))
qc.append(cirq.CZ(q[0], q[1]))
qc.append(cirq.rx(2.5)(q[1]))
qc.append(cirq.measure(q[0], key="c0"))
qc.append(cirq.measure(q[1], key="c1"))

simulator = cirq.Simulator()
result = simulator.run(qc, repetitions=1024)
counts = {}
for shot in range(1024):
    bits = "".join(
        str(int(result.measurements[f"c{i}"][shot][0])) if f"c{i}" in result.measurements else "0"
        for i in reversed(range(2))
    )
    counts[bits] = counts.get(bits, 0) + 1
print(json.dumps(counts, sort_keys=True, separators=(",", ":")))
