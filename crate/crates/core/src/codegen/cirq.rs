use super::writer::Writer;
use super::{header_lines, join_params, walk_ops, GenOptions, TargetQpl, Visit};
use crate::ir::{CircuitIr, Gate, GateOp};

fn gate_expr(g: &GateOp) -> String {
    let qubits: Vec<String> = g.qubits().map(|q| format!("q[{q}]")).collect();
    let qubits = qubits.join(", ");
    let params = join_params(&g.params).join(", ");
    match g.gate {
        Gate::U2 | Gate::U3 => format!("{}({params}, {qubits})", g.gate.name()),
        Gate::Rx | Gate::Ry | Gate::Rz => format!("cirq.{}({params})({qubits})", g.gate.name()),
        other => {
            let constant = match other {
                Gate::H => "cirq.H",
                Gate::X => "cirq.X",
                Gate::Y => "cirq.Y",
                Gate::Z => "cirq.Z",
                Gate::S => "cirq.S",
                Gate::Sdg => "(cirq.S**-1)",
                Gate::T => "cirq.T",
                Gate::Tdg => "(cirq.T**-1)",
                Gate::Cx => "cirq.CNOT",
                Gate::Cy => "cirq.ControlledGate(cirq.Y)",
                Gate::Cz => "cirq.CZ",
                Gate::Ch => "cirq.ControlledGate(cirq.H)",
                Gate::Swap => "cirq.SWAP",
                Gate::Ccx => "cirq.CCX",
                Gate::Cswap => "cirq.CSWAP",
                Gate::Rx | Gate::Ry | Gate::Rz | Gate::U2 | Gate::U3 => unreachable!(),
            };
            format!("{constant}({qubits})")
        }
    }
}

fn clbit_key(c: usize) -> String {
    format!("\"c{c}\"")
}

/// Classical control suffix for every enclosing condition, outermost first.
fn controls_suffix(conds: &[(usize, u8)]) -> String {
    conds
        .iter()
        .map(|(c, v)| {
            if *v == 1 {
                format!(".with_classical_controls({})", clbit_key(*c))
            } else {
                format!(
                    ".with_classical_controls(sympy.Eq(sympy.Symbol({}), 0))",
                    clbit_key(*c)
                )
            }
        })
        .collect()
}

pub(super) fn gate_statement(g: &GateOp, conds: &[(usize, u8)]) -> String {
    format!("qc.append({}{})", gate_expr(g), controls_suffix(conds))
}

fn emit_helper(w: &mut Writer, gate: Gate) {
    match gate {
        Gate::U3 => {
            w.line("def u3(theta, phi, lam, qubit):");
            w.indent();
            w.line("\"\"\"u3 is not native to Cirq: rz(lam), ry(theta), rz(phi), equal up to global phase.\"\"\"");
            w.line("return cirq.CircuitOperation(");
            w.indent();
            w.line("cirq.FrozenCircuit(cirq.rz(lam)(qubit), cirq.ry(theta)(qubit), cirq.rz(phi)(qubit))");
            w.dedent();
            w.line(")");
            w.dedent();
        }
        Gate::U2 => {
            w.line("def u2(phi, lam, qubit):");
            w.indent();
            w.line("\"\"\"u2 is not native to Cirq: u3 with theta = pi/2, equal up to global phase.\"\"\"");
            w.line("return cirq.CircuitOperation(");
            w.indent();
            w.line("cirq.FrozenCircuit(cirq.rz(lam)(qubit), cirq.ry(np.pi / 2)(qubit), cirq.rz(phi)(qubit))");
            w.dedent();
            w.line(")");
            w.dedent();
        }
        other => unreachable!("no Cirq helper for {other}"),
    }
    w.blank();
    w.blank();
}

fn uses_zero_condition(c: &CircuitIr) -> bool {
    let mut found = false;
    walk_ops(&c.ops, &mut Vec::new(), &mut |visit, _| {
        if let Visit::Enter(_, 0, _) = visit {
            found = true;
        }
    });
    found
}

pub(super) fn program(c: &CircuitIr, o: &GenOptions, stubs: &[Gate]) -> String {
    let mut w = Writer::new("    ");
    for line in header_lines(TargetQpl::Cirq, c) {
        w.line(format!("# {line}"));
    }
    w.line("import json");
    w.blank();
    w.line("import cirq");
    if stubs.contains(&Gate::U2) {
        w.line("import numpy as np");
    }
    if uses_zero_condition(c) {
        w.line("import sympy");
    }
    w.blank();
    if !stubs.is_empty() {
        w.blank();
        for gate in stubs {
            emit_helper(&mut w, *gate);
        }
    }
    w.line(format!("q = cirq.LineQubit.range({})", c.n_qubits));
    w.line("qc = cirq.Circuit()");
    w.blank();

    walk_ops(&c.ops, &mut Vec::new(), &mut |visit, conds| match visit {
        Visit::Gate(g) => w.line(gate_statement(g, conds)),
        Visit::Measure(q, cb) => w.line(format!(
            "qc.append(cirq.measure(q[{q}], key={}){})",
            clbit_key(cb),
            controls_suffix(conds)
        )),
        Visit::Enter(..) | Visit::Leave => {}
    });

    w.blank();
    match o.seed {
        Some(seed) => w.line(format!("simulator = cirq.Simulator(seed={seed})")),
        None => w.line("simulator = cirq.Simulator()"),
    }
    w.line(format!(
        "result = simulator.run(qc, repetitions={})",
        o.shots
    ));
    w.line("counts = {}");
    w.line(format!("for shot in range({}):", o.shots));
    w.indent();
    w.line("bits = \"\".join(");
    w.indent();
    w.line("str(int(result.measurements[f\"c{i}\"][shot][0])) if f\"c{i}\" in result.measurements else \"0\"");
    w.line(format!("for i in reversed(range({}))", c.n_clbits));
    w.dedent();
    w.line(")");
    w.line("counts[bits] = counts.get(bits, 0) + 1");
    w.dedent();
    w.line("print(json.dumps(counts, sort_keys=True, separators=(\",\", \":\")))");
    w.finish()
}
