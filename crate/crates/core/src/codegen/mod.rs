//! Quantum program emission for the supported target languages.
//!
//! Every program has the same shape: framework imports, helper stubs for
//! gates the target lacks, register allocation, one statement per circuit op
//! in order, and an epilogue that runs the vendor's local simulator and prints
//! a `{"bitstring": count}` JSON object with classical bit 0 as the rightmost
//! character and keys sorted.

mod braket;
mod cirq;
mod qiskit;
mod qsharp;
mod writer;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::ir::{
    validate_circuit_with, CircuitIr, CircuitOp, Gate, GateOp, ValidateOptions, ValidationReport,
    IR_VERSION,
};

pub const TOOL_NAME: &str = "qumodel";
pub const DEFAULT_SHOTS: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetQpl {
    Qiskit,
    Cirq,
    QSharp,
    Braket,
}

impl TargetQpl {
    pub const ALL: [TargetQpl; 4] = [
        TargetQpl::Qiskit,
        TargetQpl::Cirq,
        TargetQpl::QSharp,
        TargetQpl::Braket,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TargetQpl::Qiskit => "qiskit",
            TargetQpl::Cirq => "cirq",
            TargetQpl::QSharp => "qsharp",
            TargetQpl::Braket => "braket",
        }
    }

    /// File name suffix, e.g. `bell.qiskit.py` or `bell.qs`.
    pub fn extension(self) -> &'static str {
        match self {
            TargetQpl::Qiskit => "qiskit.py",
            TargetQpl::Cirq => "cirq.py",
            TargetQpl::QSharp => "qs",
            TargetQpl::Braket => "braket.py",
        }
    }
}

impl fmt::Display for TargetQpl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown target `{0}` (expected qiskit, cirq, qsharp or braket)")]
pub struct UnknownTarget(pub String);

impl FromStr for TargetQpl {
    type Err = UnknownTarget;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "qiskit" => Ok(TargetQpl::Qiskit),
            "cirq" => Ok(TargetQpl::Cirq),
            "qsharp" | "q#" => Ok(TargetQpl::QSharp),
            "braket" => Ok(TargetQpl::Braket),
            _ => Err(UnknownTarget(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    pub shots: u64,
    /// Seed passed to the emitted simulator where the target accepts one.
    pub seed: Option<u64>,
    pub allow_placeholders: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            shots: DEFAULT_SHOTS,
            seed: None,
            allow_placeholders: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub qubit_decls: usize,
    pub clbit_decls: usize,
    pub gate_ops: usize,
    pub measures: usize,
    pub conditionals: usize,
    pub placeholders: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetProgram {
    pub target: TargetQpl,
    pub source: String,
    pub manifest: Manifest,
    /// Gates emitted as helper stubs, in order of first use.
    pub placeholders: Vec<Gate>,
    pub warnings: Vec<String>,
}

/// What a target can express natively and what it needs helper stubs for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capabilities {
    pub supports_conditionals: bool,
    pub supports_mid_circuit_measurement: bool,
    pub native_gates: BTreeSet<Gate>,
    pub placeholder_gates: BTreeSet<Gate>,
}

/// Static capability table.
///
/// Qiskit covers `u2`/`u3` with its generic `u` rotation. Cirq and Braket get
/// working rz·ry·rz helper functions for them; Q# gets stubs that fail until
/// the developer supplies a body. Braket's local simulator has no
/// classically controlled operations and no mid-circuit measurement.
pub fn capabilities(t: TargetQpl) -> Capabilities {
    let placeholder: BTreeSet<Gate> = match t {
        TargetQpl::Qiskit => BTreeSet::new(),
        TargetQpl::Cirq | TargetQpl::QSharp | TargetQpl::Braket => [Gate::U2, Gate::U3].into(),
    };
    let native = Gate::ALL
        .into_iter()
        .filter(|g| !placeholder.contains(g))
        .collect();
    Capabilities {
        supports_conditionals: t != TargetQpl::Braket,
        supports_mid_circuit_measurement: t != TargetQpl::Braket,
        native_gates: native,
        placeholder_gates: placeholder,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodegenError {
    #[error("{target} does not support {feature}")]
    UnsupportedFeature {
        target: TargetQpl,
        feature: &'static str,
    },
    #[error("{gate} is not native to {target} and placeholders are disabled")]
    UnsupportedGate { target: TargetQpl, gate: Gate },
    #[error("circuit failed validation:\n{0}")]
    InvalidCircuit(ValidationReport),
    #[error("shots must be at least 1")]
    ZeroShots,
}

/// A gate that needs a helper definition the target does not ship.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceholderRequirement {
    pub gate: Gate,
    /// Call of the helper, as emitted at top level.
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MappedGate {
    Statement(String),
    Placeholder(PlaceholderRequirement),
}

/// Maps one gate to its top-level statement in the target language.
pub fn map_gate(g: &GateOp, t: TargetQpl) -> Result<MappedGate, CodegenError> {
    let caps = capabilities(t);
    let statement = match t {
        TargetQpl::Qiskit => qiskit::gate_statement(g),
        TargetQpl::Cirq => cirq::gate_statement(g, &[]),
        TargetQpl::QSharp => qsharp::gate_statement(g),
        TargetQpl::Braket => braket::gate_statement(g),
    };
    if caps.native_gates.contains(&g.gate) {
        Ok(MappedGate::Statement(statement))
    } else if caps.placeholder_gates.contains(&g.gate) {
        Ok(MappedGate::Placeholder(PlaceholderRequirement {
            gate: g.gate,
            statement,
        }))
    } else {
        Err(CodegenError::UnsupportedGate {
            target: t,
            gate: g.gate,
        })
    }
}

/// Gates needing helper stubs, in order of first use.
fn placeholders_in_order(c: &CircuitIr, caps: &Capabilities) -> Vec<Gate> {
    let mut out: Vec<Gate> = Vec::new();
    for g in c.gate_ops() {
        if caps.placeholder_gates.contains(&g.gate) && !out.contains(&g.gate) {
            out.push(g.gate);
        }
    }
    out
}

/// Names end up inside comments, so control characters must not break out.
fn comment_safe(name: &str) -> String {
    name.chars()
        .map(|ch| if ch.is_control() { ' ' } else { ch })
        .collect()
}

pub(crate) fn header_lines(t: TargetQpl, c: &CircuitIr) -> Vec<String> {
    let mut lines = vec![format!(
        "Generated by {TOOL_NAME} from IR version {IR_VERSION} for target {t}. Do not edit by hand."
    )];
    if !c.qubit_names.is_empty() {
        let names: Vec<String> = c
            .qubit_names
            .iter()
            .enumerate()
            .map(|(i, n)| format!("{}=q[{i}]", comment_safe(n)))
            .collect();
        lines.push(format!("Qubits: {}", names.join(", ")));
    }
    if !c.clbit_names.is_empty() {
        let names: Vec<String> = c
            .clbit_names
            .iter()
            .enumerate()
            .map(|(i, n)| format!("{}=c[{i}]", comment_safe(n)))
            .collect();
        lines.push(format!("Classical bits: {}", names.join(", ")));
    }
    lines
}

/// Formats an angle as a literal every target accepts.
pub(crate) fn float_literal(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v:?}")
    }
}

pub(crate) fn join_params(params: &[f64]) -> Vec<String> {
    params.iter().map(|p| float_literal(*p)).collect()
}

/// Emits a complete program for one target.
pub fn generate_quantum(
    c: &CircuitIr,
    t: TargetQpl,
    o: &GenOptions,
) -> Result<TargetProgram, CodegenError> {
    if o.shots == 0 {
        return Err(CodegenError::ZeroShots);
    }
    let report = validate_circuit_with(
        c,
        ValidateOptions {
            allow_mid_circuit: true,
        },
    );
    if !report.is_clean() {
        return Err(CodegenError::InvalidCircuit(report));
    }
    let caps = capabilities(t);
    if c.has_conditionals() && !caps.supports_conditionals {
        return Err(CodegenError::UnsupportedFeature {
            target: t,
            feature: "conditional operations",
        });
    }
    if c.has_mid_circuit_measurement() && !caps.supports_mid_circuit_measurement {
        return Err(CodegenError::UnsupportedFeature {
            target: t,
            feature: "mid-circuit measurement",
        });
    }
    for g in c.gate_ops() {
        if !caps.native_gates.contains(&g.gate)
            && !(o.allow_placeholders && caps.placeholder_gates.contains(&g.gate))
        {
            return Err(CodegenError::UnsupportedGate {
                target: t,
                gate: g.gate,
            });
        }
    }
    let stubs = placeholders_in_order(c, &caps);
    let source = match t {
        TargetQpl::Qiskit => qiskit::program(c, o),
        TargetQpl::Cirq => cirq::program(c, o, &stubs),
        TargetQpl::QSharp => qsharp::program(c, o, &stubs),
        TargetQpl::Braket => braket::program(c, o, &stubs),
    };
    let counts = c.counts();
    Ok(TargetProgram {
        target: t,
        source,
        manifest: Manifest {
            qubit_decls: c.n_qubits,
            clbit_decls: c.n_clbits,
            gate_ops: counts.gates,
            measures: counts.measures,
            conditionals: counts.conditionals,
            placeholders: stubs.len(),
        },
        warnings: stubs.iter().map(|g| format!("{g} not native")).collect(),
        placeholders: stubs,
    })
}

type Visitor<'f, 'a> = dyn FnMut(Visit<'a>, &[(usize, u8)]) + 'f;

/// Walks ops with the nesting of enclosing conditionals, outermost first.
pub(crate) fn walk_ops<'a>(
    ops: &'a [CircuitOp],
    conds: &mut Vec<(usize, u8)>,
    f: &mut Visitor<'_, 'a>,
) {
    for op in ops {
        match op {
            CircuitOp::Gate(g) => f(Visit::Gate(g), conds),
            CircuitOp::Measure { qubit, clbit } => f(Visit::Measure(*qubit, *clbit), conds),
            CircuitOp::Conditional { clbit, value, body } => {
                f(Visit::Enter(*clbit, *value, body.is_empty()), conds);
                conds.push((*clbit, *value));
                walk_ops(body, conds, f);
                conds.pop();
                f(Visit::Leave, conds);
            }
        }
    }
}

pub(crate) enum Visit<'a> {
    Gate(&'a GateOp),
    Measure(usize, usize),
    /// Conditional on `(clbit, value)`; the flag is set when the body is empty.
    Enter(usize, u8, bool),
    Leave,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> CircuitIr {
        CircuitIr {
            n_qubits: 2,
            n_clbits: 2,
            qubit_names: vec!["qubit_0".into(), "qubit_1".into()],
            clbit_names: vec!["c_0".into(), "c_1".into()],
            ops: vec![
                CircuitOp::Gate(GateOp::single(Gate::H, 0)),
                CircuitOp::Gate(GateOp::new(Gate::Cx, vec![], vec![0], vec![1])),
                CircuitOp::Measure { qubit: 0, clbit: 0 },
                CircuitOp::Measure { qubit: 1, clbit: 1 },
            ],
        }
    }

    #[test]
    fn capability_matrix_covers_all_gates() {
        for t in TargetQpl::ALL {
            let caps = capabilities(t);
            let union: BTreeSet<Gate> = caps
                .native_gates
                .union(&caps.placeholder_gates)
                .copied()
                .collect();
            assert_eq!(union.len(), 20, "{t}");
            assert!(caps.native_gates.is_disjoint(&caps.placeholder_gates));
        }
        assert!(capabilities(TargetQpl::Qiskit).supports_conditionals);
        assert!(!capabilities(TargetQpl::Braket).supports_conditionals);
    }

    #[test]
    fn cx_names_diverge() {
        let g = GateOp::new(Gate::Cx, vec![], vec![0], vec![1]);
        assert_eq!(
            map_gate(&g, TargetQpl::Qiskit).unwrap(),
            MappedGate::Statement("qc.cx(q[0], q[1])".into())
        );
        assert_eq!(
            map_gate(&g, TargetQpl::Cirq).unwrap(),
            MappedGate::Statement("qc.append(cirq.CNOT(q[0], q[1]))".into())
        );
        assert_eq!(
            map_gate(&g, TargetQpl::Braket).unwrap(),
            MappedGate::Statement("qc.cnot(0, 1)".into())
        );
        assert_eq!(
            map_gate(&g, TargetQpl::QSharp).unwrap(),
            MappedGate::Statement("CNOT(q[0], q[1]);".into())
        );
    }

    #[test]
    fn hadamard_everywhere() {
        let g = GateOp::single(Gate::H, 0);
        let texts: Vec<String> = TargetQpl::ALL
            .iter()
            .map(|t| match map_gate(&g, *t).unwrap() {
                MappedGate::Statement(s) => s,
                MappedGate::Placeholder(p) => panic!("h is a placeholder on {t}: {p:?}"),
            })
            .collect();
        assert_eq!(
            texts,
            vec![
                "qc.h(q[0])",
                "qc.append(cirq.H(q[0]))",
                "H(q[0]);",
                "qc.h(0)"
            ]
        );
    }

    #[test]
    fn u2_on_qsharp_is_placeholder() {
        let g = GateOp::new(Gate::U2, vec![0.1, 0.2], vec![], vec![0]);
        match map_gate(&g, TargetQpl::QSharp).unwrap() {
            MappedGate::Placeholder(p) => assert_eq!(p.gate, Gate::U2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            map_gate(&g, TargetQpl::Qiskit).unwrap(),
            MappedGate::Statement(_)
        ));
    }

    #[test]
    fn u3_on_qsharp_warns_once() {
        let mut c = bell();
        c.ops.insert(
            0,
            CircuitOp::Gate(GateOp::new(Gate::U3, vec![1.0, 2.0, 3.0], vec![], vec![1])),
        );
        c.ops.insert(
            0,
            CircuitOp::Gate(GateOp::new(Gate::U3, vec![0.5, 0.0, 0.0], vec![], vec![0])),
        );
        let p = generate_quantum(&c, TargetQpl::QSharp, &GenOptions::default()).unwrap();
        assert_eq!(p.warnings, vec!["u3 not native".to_string()]);
        assert_eq!(p.manifest.placeholders, 1);
        assert_eq!(p.source.matches("operation U3(").count(), 1);
        let strict = GenOptions {
            allow_placeholders: false,
            ..GenOptions::default()
        };
        assert_eq!(
            generate_quantum(&c, TargetQpl::QSharp, &strict).unwrap_err(),
            CodegenError::UnsupportedGate {
                target: TargetQpl::QSharp,
                gate: Gate::U3
            }
        );
        assert!(generate_quantum(&c, TargetQpl::Qiskit, &strict).is_ok());
    }

    #[test]
    fn braket_rejects_conditionals() {
        let mut c = bell();
        c.ops.push(CircuitOp::Conditional {
            clbit: 0,
            value: 1,
            body: vec![CircuitOp::Gate(GateOp::single(Gate::X, 1))],
        });
        c.ops.swap(3, 4);
        let err = generate_quantum(&c, TargetQpl::Braket, &GenOptions::default()).unwrap_err();
        assert!(matches!(err, CodegenError::UnsupportedFeature { .. }));
        for t in [TargetQpl::Qiskit, TargetQpl::Cirq, TargetQpl::QSharp] {
            let p = generate_quantum(&c, t, &GenOptions::default()).unwrap();
            assert_eq!(p.manifest.conditionals, 1);
            assert_eq!(p.manifest.gate_ops, 3);
        }
    }

    #[test]
    fn zero_shots_rejected() {
        let o = GenOptions {
            shots: 0,
            ..GenOptions::default()
        };
        assert_eq!(
            generate_quantum(&bell(), TargetQpl::Qiskit, &o).unwrap_err(),
            CodegenError::ZeroShots
        );
    }

    #[test]
    fn invalid_circuit_rejected() {
        let mut c = bell();
        c.ops.push(CircuitOp::Gate(GateOp::single(Gate::Rz, 0)));
        assert!(matches!(
            generate_quantum(&c, TargetQpl::Cirq, &GenOptions::default()),
            Err(CodegenError::InvalidCircuit(_))
        ));
    }

    #[test]
    fn empty_circuit_all_targets() {
        for t in TargetQpl::ALL {
            let p = generate_quantum(&CircuitIr::default(), t, &GenOptions::default()).unwrap();
            assert_eq!(p.manifest, Manifest::default());
            assert!(p.warnings.is_empty());
            assert!(p.source.contains("1024"), "{t} has no shot count");
        }
    }

    #[test]
    fn names_cannot_escape_comments() {
        let mut c = bell();
        c.qubit_names[0] = "a\nimport os".into();
        let p = generate_quantum(&c, TargetQpl::Qiskit, &GenOptions::default()).unwrap();
        assert!(p.source.lines().all(|l| l != "import os"));
        assert!(p.source.contains("a import os=q[0]"));
    }

    #[test]
    fn float_literals() {
        assert_eq!(float_literal(0.0), "0.0");
        assert_eq!(float_literal(-3.0), "-3.0");
        assert_eq!(float_literal(0.5), "0.5");
        assert_eq!(
            float_literal(std::f64::consts::FRAC_PI_2),
            "1.5707963267948966"
        );
        assert_eq!(float_literal(1e-7), "1e-7");
    }
}
