use std::collections::HashMap;

use super::circuit::{
    validate_circuit_with, CircuitIr, CircuitOp, GateOp, Rule, ValidateOptions, ValidationReport,
};
use super::gate::Gate;
use crate::parser::{Event, GroupMessage, ParticipantKind, Role, SequenceModel};

struct Lowering<'a> {
    qubits: HashMap<&'a str, usize>,
    clbits: HashMap<&'a str, usize>,
    report: ValidationReport,
}

/// Lowers a parsed sequence diagram into a circuit.
///
/// Qubits and classical bits are numbered by declaration order in separate
/// index spaces. Self-messages become single-qubit gates, `group` fragments
/// multi-qubit gates, `alt` fragments conditional blocks and `measure`
/// messages measurements. The result is validated before it is returned.
pub fn lower_sequence_model(
    m: &SequenceModel,
    opts: ValidateOptions,
) -> Result<CircuitIr, ValidationReport> {
    let mut circuit = CircuitIr::default();
    let mut lw = Lowering {
        qubits: HashMap::new(),
        clbits: HashMap::new(),
        report: ValidationReport::default(),
    };
    for p in &m.participants {
        match p.kind {
            ParticipantKind::Qubit => {
                lw.qubits.insert(&p.alias, circuit.qubit_names.len());
                circuit.qubit_names.push(p.name.clone());
            }
            ParticipantKind::ClassicalBit => {
                lw.clbits.insert(&p.alias, circuit.clbit_names.len());
                circuit.clbit_names.push(p.name.clone());
            }
        }
    }
    circuit.n_qubits = circuit.qubit_names.len();
    circuit.n_clbits = circuit.clbit_names.len();

    for (i, event) in m.events.iter().enumerate() {
        if let Some(op) = lw.event(event, i) {
            circuit.ops.push(op);
        }
    }
    if !lw.report.is_clean() {
        return Err(lw.report);
    }
    let report = validate_circuit_with(&circuit, opts);
    if report.is_clean() {
        Ok(circuit)
    } else {
        Err(report)
    }
}

impl<'a> Lowering<'a> {
    fn qubit(&mut self, alias: &str, index: usize) -> Option<usize> {
        let q = self.qubits.get(alias).copied();
        if q.is_none() {
            self.report.error(
                index,
                Rule::QubitIndex,
                format!("`{alias}` is not a qubit participant"),
            );
        }
        q
    }

    fn clbit(&mut self, alias: &str, index: usize) -> Option<usize> {
        let c = self.clbits.get(alias).copied();
        if c.is_none() {
            self.report.error(
                index,
                Rule::ClbitIndex,
                format!("`{alias}` is not a classical bit participant"),
            );
        }
        c
    }

    fn gate(&mut self, name: &str, params: &[f64], index: usize) -> Option<Gate> {
        let gate = match name.parse::<Gate>() {
            Ok(g) => g,
            Err(e) => {
                self.report.error(index, Rule::UnknownGate, e.to_string());
                return None;
            }
        };
        if params.len() != gate.param_count() {
            let plural = if gate.param_count() == 1 { "" } else { "s" };
            self.report.error(
                index,
                Rule::Arity,
                format!(
                    "arity mismatch: {gate} expects {} parameter{plural}, got {}",
                    gate.param_count(),
                    params.len()
                ),
            );
            return None;
        }
        Some(gate)
    }

    fn event(&mut self, event: &Event, index: usize) -> Option<CircuitOp> {
        match event {
            Event::SelfMessage {
                qubit,
                name,
                params,
            } => {
                let gate = self.gate(name, params, index);
                let q = self.qubit(qubit, index);
                let gate = gate?;
                if gate.qubit_count() != 1 {
                    self.report.error(
                        index,
                        Rule::QubitCount,
                        format!(
                            "{gate} acts on {} qubits and must be modeled as a group",
                            gate.qubit_count()
                        ),
                    );
                    return None;
                }
                Some(CircuitOp::Gate(GateOp::new(
                    gate,
                    params.clone(),
                    vec![],
                    vec![q?],
                )))
            }
            Event::Group {
                name,
                params,
                messages,
            } => {
                let gate = self.gate(name, params, index)?;
                let (controls, targets) = self.group_roles(gate, messages, index)?;
                if controls.len() != gate.control_count() || targets.len() != gate.target_count() {
                    self.report.error(
                        index,
                        Rule::QubitCount,
                        format!(
                            "grouped fragment arity mismatch: {gate} expects {} control(s) and {} target(s), got {} and {}",
                            gate.control_count(),
                            gate.target_count(),
                            controls.len(),
                            targets.len()
                        ),
                    );
                    return None;
                }
                Some(CircuitOp::Gate(GateOp::new(
                    gate,
                    params.clone(),
                    controls,
                    targets,
                )))
            }
            Event::Measure { qubit, clbit } => {
                let q = self.qubit(qubit, index);
                let c = self.clbit(clbit, index);
                Some(CircuitOp::Measure {
                    qubit: q?,
                    clbit: c?,
                })
            }
            Event::Alt { clbit, value, body } => {
                let c = self.clbit(clbit, index);
                let body: Vec<CircuitOp> =
                    body.iter().filter_map(|e| self.event(e, index)).collect();
                Some(CircuitOp::Conditional {
                    clbit: c?,
                    value: *value,
                    body,
                })
            }
            Event::Message {
                sender,
                receiver,
                name,
                ..
            } => {
                self.report.error(
                    index,
                    Rule::UngroupedMessage,
                    format!(
                        "message `{name}` from `{sender}` to `{receiver}` must be a measure or sit inside a group"
                    ),
                );
                None
            }
        }
    }

    /// Splits the qubits of a grouped fragment into controls and targets.
    ///
    /// Senders of `<<control>>` messages are controls; when no message is
    /// labeled, senders act as controls by position. `swap` ignores labels and
    /// `cswap` only takes its first control. Every other qubit is a target, in
    /// order of first appearance.
    fn group_roles(
        &mut self,
        gate: Gate,
        messages: &[GroupMessage],
        index: usize,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut order: Vec<usize> = Vec::new();
        for m in messages {
            for alias in [&m.sender, &m.receiver] {
                let q = self.qubit(alias, index)?;
                if !order.contains(&q) {
                    order.push(q);
                }
            }
        }
        let labeled = messages.iter().any(|m| m.role == Some(Role::Control));
        let mut controls: Vec<usize> = Vec::new();
        if gate.control_count() > 0 {
            for m in messages {
                let is_control = if labeled {
                    m.role == Some(Role::Control)
                } else {
                    m.sender != m.receiver
                };
                if is_control {
                    let q = self.qubits[m.sender.as_str()];
                    if !controls.contains(&q) {
                        controls.push(q);
                    }
                }
            }
            if gate == Gate::Cswap {
                controls.truncate(1);
            }
        } else if labeled && gate != Gate::Swap {
            self.report.error(
                index,
                Rule::QubitCount,
                format!("{gate} takes no control qubit"),
            );
            return None;
        }
        let targets = order
            .into_iter()
            .filter(|q| !controls.contains(q))
            .collect();
        Some((controls, targets))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_sequence_diagram;

    const HEADER: &str = "participant \"qubit_0\" as q0 <<qubit>>\n\
                          participant \"qubit_1\" as q1 <<qubit>>\n\
                          participant \"qubit_2\" as q2 <<qubit>>\n\
                          participant \"c_0\" as c0 <<classical_bit>>\n\
                          participant \"c_1\" as c1 <<classical_bit>>\n";

    fn lower(body: &str) -> Result<CircuitIr, ValidationReport> {
        let m = parse_sequence_diagram(&format!("{HEADER}{body}")).unwrap();
        lower_sequence_model(&m, ValidateOptions::default())
    }

    fn first_gate(body: &str) -> GateOp {
        match &lower(body).unwrap().ops[0] {
            CircuitOp::Gate(g) => g.clone(),
            other => panic!("expected gate, got {other:?}"),
        }
    }

    #[test]
    fn bell_state() {
        let c = lower(
            "q0 -> q0 : h\ngroup cx\n q0 -> q1 : <<control>>\nend\nq0 -> c0 : measure\nq1 -> c1 : measure\n",
        )
        .unwrap();
        assert_eq!(c.n_qubits, 3);
        assert_eq!(c.n_clbits, 2);
        assert_eq!(
            c.ops,
            vec![
                CircuitOp::Gate(GateOp::single(Gate::H, 0)),
                CircuitOp::Gate(GateOp::new(Gate::Cx, vec![], vec![0], vec![1])),
                CircuitOp::Measure { qubit: 0, clbit: 0 },
                CircuitOp::Measure { qubit: 1, clbit: 1 },
            ]
        );
    }

    #[test]
    fn alt_becomes_conditional() {
        let c = lower("q0 -> c0 : measure\nalt c0 == 1\n q1 -> q1 : x\nend\n").unwrap();
        assert_eq!(
            c.ops[1],
            CircuitOp::Conditional {
                clbit: 0,
                value: 1,
                body: vec![CircuitOp::Gate(GateOp::single(Gate::X, 1))]
            }
        );
    }

    #[test]
    fn post_measurement_use() {
        let err = lower("q0 -> c0 : measure\nq0 -> q0 : h\n").unwrap_err();
        assert_eq!(err.errors.len(), 1);
        assert!(err.errors[0].message.starts_with("post-measurement use"));
        let m =
            parse_sequence_diagram(&format!("{HEADER}q0 -> c0 : measure\nq0 -> q0 : h\n")).unwrap();
        assert!(lower_sequence_model(
            &m,
            ValidateOptions {
                allow_mid_circuit: true
            }
        )
        .is_ok());
    }

    #[test]
    fn unknown_gate_and_arity() {
        let err = lower("q0 -> q0 : hadamard\nq0 -> q0 : rz\nq0 -> q0 : u2(1)\n").unwrap_err();
        let rules: Vec<Rule> = err.errors.iter().map(|e| e.rule).collect();
        assert_eq!(rules, vec![Rule::UnknownGate, Rule::Arity, Rule::Arity]);
        assert_eq!(err.errors[1].op_index, 1);
    }

    #[test]
    fn multi_qubit_gate_as_self_message() {
        let err = lower("q0 -> q0 : cx\n").unwrap_err();
        assert_eq!(err.errors[0].rule, Rule::QubitCount);
    }

    #[test]
    fn group_arity_mismatch() {
        let err = lower("group ccx\n q0 -> q2 : <<control>>\nend\n").unwrap_err();
        assert!(err.errors[0]
            .message
            .starts_with("grouped fragment arity mismatch"));
    }

    #[test]
    fn toffoli_and_controlled_label() {
        let g = first_gate(
            "group ccx\n q0 -> q2 : <<control>>\n q1 -> q2 : <<control>>\n q2 -> q2 : <<controlled>>\nend\n",
        );
        assert_eq!(g, GateOp::new(Gate::Ccx, vec![], vec![0, 1], vec![2]));
    }

    #[test]
    fn unlabeled_group_uses_position() {
        let g = first_gate("group cz\n q1 -> q0\nend\n");
        assert_eq!(g, GateOp::new(Gate::Cz, vec![], vec![1], vec![0]));
    }

    #[test]
    fn swap_ignores_labels() {
        let g = first_gate("group swap\n q2 -> q0 : <<control>>\nend\n");
        assert_eq!(g, GateOp::new(Gate::Swap, vec![], vec![], vec![2, 0]));
    }

    #[test]
    fn cswap_first_control_only() {
        let g = first_gate("group cswap\n q0 -> q1 : <<control>>\n q1 -> q2 : <<control>>\nend\n");
        assert_eq!(g, GateOp::new(Gate::Cswap, vec![], vec![0], vec![1, 2]));
    }

    #[test]
    fn parameterized_group() {
        let g = first_gate("group u3(0.1, 0.2, 0.3)\n q1 -> q1\nend\n");
        assert_eq!(
            g,
            GateOp::new(Gate::U3, vec![0.1, 0.2, 0.3], vec![], vec![1])
        );
    }

    #[test]
    fn ungrouped_cross_message() {
        let err = lower("q0 -> q1 : cx\n").unwrap_err();
        assert_eq!(err.errors[0].rule, Rule::UngroupedMessage);
    }

    #[test]
    fn measure_into_qubit_is_rejected() {
        let err = lower("c0 -> q0 : measure\n").unwrap_err();
        assert_eq!(err.errors[0].rule, Rule::UngroupedMessage);
    }

    #[test]
    fn deep_alt_is_rejected() {
        let body = "q0 -> c0 : measure\nalt c0 == 1\nalt c0 == 1\nalt c0 == 1\nalt c0 == 1\nq1 -> q1 : x\nend\nend\nend\nend\n";
        let err = lower(body).unwrap_err();
        assert_eq!(err.errors[0].rule, Rule::NestingDepth);
    }
}
