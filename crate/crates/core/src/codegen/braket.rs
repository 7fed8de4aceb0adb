use super::writer::Writer;
use super::{header_lines, join_params, walk_ops, GenOptions, TargetQpl, Visit};
use crate::ir::{CircuitIr, Gate, GateOp};

pub(super) fn gate_statement(g: &GateOp) -> String {
    let qubits: Vec<String> = g.qubits().map(|q| q.to_string()).collect();
    let params = join_params(&g.params);
    match g.gate {
        Gate::U2 | Gate::U3 => {
            let mut args = vec!["qc".to_string()];
            args.extend(params);
            args.extend(qubits);
            format!("{}({})", g.gate.name(), args.join(", "))
        }
        Gate::Ch => format!("qc.h({}, control={})", g.targets[0], g.controls[0]),
        other => {
            let method = match other {
                Gate::Sdg => "si",
                Gate::Tdg => "ti",
                Gate::Cx => "cnot",
                Gate::Ccx => "ccnot",
                g => g.name(),
            };
            let mut args = qubits;
            args.extend(params);
            format!("qc.{method}({})", args.join(", "))
        }
    }
}

fn emit_helper(w: &mut Writer, gate: Gate) {
    match gate {
        Gate::U3 => {
            w.line("def u3(circuit, theta, phi, lam, qubit):");
            w.indent();
            w.line("\"\"\"u3 decomposed as rz(lam), ry(theta), rz(phi), equal up to global phase.\"\"\"");
            w.line("return circuit.rz(qubit, lam).ry(qubit, theta).rz(qubit, phi)");
            w.dedent();
        }
        Gate::U2 => {
            w.line("def u2(circuit, phi, lam, qubit):");
            w.indent();
            w.line("\"\"\"u2 decomposed as rz(lam), ry(pi/2), rz(phi), equal up to global phase.\"\"\"");
            w.line("return circuit.rz(qubit, lam).ry(qubit, math.pi / 2).rz(qubit, phi)");
            w.dedent();
        }
        other => unreachable!("no Braket helper for {other}"),
    }
    w.blank();
    w.blank();
}

pub(super) fn program(c: &CircuitIr, o: &GenOptions, stubs: &[Gate]) -> String {
    let mut w = Writer::new("    ");
    for line in header_lines(TargetQpl::Braket, c) {
        w.line(format!("# {line}"));
    }
    w.line("import json");
    if stubs.contains(&Gate::U2) {
        w.line("import math");
    }
    w.blank();
    w.line("from braket.circuits import Circuit");
    w.line("from braket.devices import LocalSimulator");
    w.blank();
    if !stubs.is_empty() {
        w.blank();
        for gate in stubs {
            emit_helper(&mut w, *gate);
        }
    }
    w.line("# Braket allocates qubits implicitly on first use.");
    w.line("qc = Circuit()");
    w.line("measure_map = []");
    w.blank();

    walk_ops(&c.ops, &mut Vec::new(), &mut |visit, _| match visit {
        Visit::Gate(g) => w.line(gate_statement(g)),
        Visit::Measure(q, cb) => {
            w.line(format!("qc.measure({q})"));
            w.line(format!("measure_map.append(({q}, {cb}))"));
        }
        // Rejected before emission: Braket has no classical control.
        Visit::Enter(..) | Visit::Leave => {}
    });

    w.blank();
    w.line("counts = {}");
    w.line("if qc.instructions:");
    w.indent();
    w.line("device = LocalSimulator()");
    w.line(format!(
        "result = device.run(qc, shots={}).result()",
        o.shots
    ));
    w.line("measured = list(result.measured_qubits)");
    w.line("for row in result.measurements:");
    w.indent();
    w.line(format!("bits = [\"0\"] * {}", c.n_clbits));
    w.line("for qubit, clbit in measure_map:");
    w.indent();
    w.line("bits[clbit] = str(int(row[measured.index(qubit)]))");
    w.dedent();
    w.line("key = \"\".join(reversed(bits))");
    w.line("counts[key] = counts.get(key, 0) + 1");
    w.dedent();
    w.dedent();
    w.line("else:");
    w.indent();
    w.line(format!(
        "counts[\"{}\"] = {}",
        "0".repeat(c.n_clbits),
        o.shots
    ));
    w.dedent();
    w.line("print(json.dumps(counts, sort_keys=True, separators=(\",\", \":\")))");
    w.finish()
}
