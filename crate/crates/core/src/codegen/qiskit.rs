use super::writer::Writer;
use super::{header_lines, join_params, walk_ops, GenOptions, Visit};
use crate::ir::{CircuitIr, Gate, GateOp};

fn qubit(i: usize) -> String {
    format!("q[{i}]")
}

pub(super) fn gate_statement(g: &GateOp) -> String {
    let mut args = join_params(&g.params);
    let method = match g.gate {
        Gate::U2 => {
            args.insert(0, "1.5707963267948966".to_string());
            "u"
        }
        Gate::U3 => "u",
        other => other.name(),
    };
    args.extend(g.qubits().map(qubit));
    format!("qc.{method}({})", args.join(", "))
}

pub(super) fn program(c: &CircuitIr, o: &GenOptions) -> String {
    let mut w = Writer::new("    ");
    for line in header_lines(super::TargetQpl::Qiskit, c) {
        w.line(format!("# {line}"));
    }
    w.line("import json");
    w.blank();
    w.line("from qiskit import ClassicalRegister, QuantumCircuit, QuantumRegister, transpile");
    w.line("from qiskit_aer import AerSimulator");
    w.blank();
    w.line(format!("q = QuantumRegister({}, \"q\")", c.n_qubits));
    w.line(format!(
        "cRegister = ClassicalRegister({}, \"c\")",
        c.n_clbits
    ));
    w.line("qc = QuantumCircuit(q, cRegister)");
    w.blank();

    walk_ops(&c.ops, &mut Vec::new(), &mut |visit, _| match visit {
        Visit::Gate(g) => w.line(gate_statement(g)),
        Visit::Measure(q, cb) => w.line(format!("qc.measure(q[{q}], cRegister[{cb}])")),
        Visit::Enter(cb, value, empty) => {
            w.line(format!("with qc.if_test((cRegister[{cb}], {value})):"));
            w.indent();
            if empty {
                w.line("pass");
            }
        }
        Visit::Leave => w.dedent(),
    });

    w.blank();
    match o.seed {
        Some(seed) => w.line(format!("simulator = AerSimulator(seed_simulator={seed})")),
        None => w.line("simulator = AerSimulator()"),
    }
    w.line(format!(
        "result = simulator.run(transpile(qc, simulator), shots={}).result()",
        o.shots
    ));
    if c.n_clbits == 0 {
        w.line(format!("counts = {{\"\": {}}}", o.shots));
    } else {
        w.line("counts = {key.replace(\" \", \"\"): value for key, value in result.get_counts(qc).items()}");
    }
    w.line("print(json.dumps(counts, sort_keys=True, separators=(\",\", \":\")))");
    w.finish()
}
