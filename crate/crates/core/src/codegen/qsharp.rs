use super::writer::Writer;
use super::{header_lines, join_params, walk_ops, GenOptions, TargetQpl, Visit};
use crate::ir::{CircuitIr, Gate, GateOp};

fn qubit(i: usize) -> String {
    format!("q[{i}]")
}

pub(super) fn gate_statement(g: &GateOp) -> String {
    let qs: Vec<String> = g.qubits().map(qubit).collect();
    let params = join_params(&g.params);
    match g.gate {
        Gate::Sdg => format!("Adjoint S({});", qs[0]),
        Gate::Tdg => format!("Adjoint T({});", qs[0]),
        Gate::Ch => format!("Controlled H([{}], {});", qs[0], qs[1]),
        Gate::Cswap => format!("Controlled SWAP([{}], ({}, {}));", qs[0], qs[1], qs[2]),
        other => {
            let op = match other {
                Gate::H => "H",
                Gate::X => "X",
                Gate::Y => "Y",
                Gate::Z => "Z",
                Gate::S => "S",
                Gate::T => "T",
                Gate::Rx => "Rx",
                Gate::Ry => "Ry",
                Gate::Rz => "Rz",
                Gate::U2 => "U2",
                Gate::U3 => "U3",
                Gate::Cx => "CNOT",
                Gate::Cy => "CY",
                Gate::Cz => "CZ",
                Gate::Swap => "SWAP",
                Gate::Ccx => "CCNOT",
                Gate::Sdg | Gate::Tdg | Gate::Ch | Gate::Cswap => unreachable!(),
            };
            let mut args = params;
            args.extend(qs);
            format!("{op}({});", args.join(", "))
        }
    }
}

fn emit_stub(w: &mut Writer, gate: Gate) {
    let signature = match gate {
        Gate::U3 => {
            "operation U3(theta : Double, phi : Double, lambda : Double, target : Qubit) : Unit {"
        }
        Gate::U2 => "operation U2(phi : Double, lambda : Double, target : Qubit) : Unit {",
        other => unreachable!("no Q# stub for {other}"),
    };
    let name = gate.name().to_ascii_uppercase();
    w.line(format!(
        "// Placeholder: {name} has no Q# intrinsic. Replace the body with a decomposition."
    ));
    w.line(signature);
    w.indent();
    w.line(format!(
        "fail \"{name} is a placeholder and has no implementation\";"
    ));
    w.dedent();
    w.line("}");
    w.blank();
}

fn result_literal(value: u8) -> &'static str {
    if value == 1 {
        "One"
    } else {
        "Zero"
    }
}

pub(super) fn program(c: &CircuitIr, o: &GenOptions, stubs: &[Gate]) -> String {
    let mut w = Writer::new("    ");
    for line in header_lines(TargetQpl::QSharp, c) {
        w.line(format!("// {line}"));
    }
    if let Some(seed) = o.seed {
        w.line(format!(
            "// Requested seed {seed}: the Q# simulator is seeded by the host, not the program."
        ));
    }
    w.line("namespace GeneratedCircuit {");
    w.indent();
    w.line("open Microsoft.Quantum.Canon;");
    w.line("open Microsoft.Quantum.Intrinsic;");
    w.blank();
    for gate in stubs {
        emit_stub(&mut w, *gate);
    }

    w.line("operation RunCircuit() : Result[] {");
    w.indent();
    w.line(format!("use q = Qubit[{}];", c.n_qubits));
    w.line(format!(
        "mutable cRegister = [Zero, size = {}];",
        c.n_clbits
    ));
    walk_ops(&c.ops, &mut Vec::new(), &mut |visit, _| match visit {
        Visit::Gate(g) => w.line(gate_statement(g)),
        Visit::Measure(q, cb) => w.line(format!("set cRegister w/= {cb} <- M(q[{q}]);")),
        Visit::Enter(cb, value, _) => {
            w.line(format!(
                "if cRegister[{cb}] == {} {{",
                result_literal(value)
            ));
            w.indent();
        }
        Visit::Leave => {
            w.dedent();
            w.line("}");
        }
    });
    w.line("ResetAll(q);");
    w.line("return cRegister;");
    w.dedent();
    w.line("}");
    w.blank();

    let n = c.n_clbits;
    w.line("@EntryPoint()");
    w.line("operation Main() : Unit {");
    w.indent();
    w.line(format!("let shots = {};", o.shots));
    w.line(format!("let width = {n};"));
    w.line("mutable counts = [0, size = 1 <<< width];");
    w.line("for _ in 1..shots {");
    w.indent();
    w.line("let results = RunCircuit();");
    w.line("mutable index = 0;");
    w.line("for i in 0..width - 1 {");
    w.indent();
    w.line("if results[i] == One {");
    w.indent();
    w.line("set index += 1 <<< i;");
    w.dedent();
    w.line("}");
    w.dedent();
    w.line("}");
    w.line("set counts w/= index <- counts[index] + 1;");
    w.dedent();
    w.line("}");
    // Ascending index order over fixed-width keys is also lexicographic order.
    w.line("mutable json = \"{\";");
    w.line("mutable first = true;");
    w.line("for index in 0..Length(counts) - 1 {");
    w.indent();
    w.line("if counts[index] > 0 {");
    w.indent();
    w.line("mutable key = \"\";");
    w.line("for i in 0..width - 1 {");
    w.indent();
    w.line("set key = ((index &&& (1 <<< i)) != 0 ? \"1\" | \"0\") + key;");
    w.dedent();
    w.line("}");
    w.line("if not first {");
    w.indent();
    w.line("set json += \",\";");
    w.dedent();
    w.line("}");
    // Escapes are not processed inside interpolated strings.
    w.line("set json += \"\\\"\" + key + \"\\\":\" + $\"{counts[index]}\";");
    w.line("set first = false;");
    w.dedent();
    w.line("}");
    w.dedent();
    w.line("}");
    w.line("set json += \"}\";");
    w.line("Message(json);");
    w.dedent();
    w.line("}");
    w.dedent();
    w.line("}");
    w.finish()
}
