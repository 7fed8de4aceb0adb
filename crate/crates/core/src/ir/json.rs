//! Versioned JSON form of the IR.
//!
//! ```json
//! { "ir_version": 1,
//!   "system": { "packages": [...], "associations": [...] },
//!   "circuit": { "n_qubits": 2, "n_clbits": 2, "qubit_names": [...], "clbit_names": [...],
//!                "ops": [ {"kind":"gate","name":"h","params":[],"controls":[],"targets":[0]},
//!                         {"kind":"measure","qubit":0,"clbit":0},
//!                         {"kind":"cond","clbit":0,"value":1,"body":[...]} ] } }
//! ```

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use super::circuit::{validate_circuit_with, CircuitIr, CircuitOp, GateOp, ValidateOptions};
use super::gate::Gate;
use super::system::SystemIr;

pub const IR_VERSION: u32 = 1;

/// Schema violation found while decoding IR JSON, located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid IR at `{pointer}`: {message}")]
pub struct IrJsonError {
    pub pointer: String,
    pub message: String,
}

impl IrJsonError {
    fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        IrJsonError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    ir_version: u32,
    system: SystemIr,
    circuit: WireCircuit,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCircuit {
    n_qubits: usize,
    n_clbits: usize,
    qubit_names: Vec<String>,
    clbit_names: Vec<String>,
    ops: Vec<WireOp>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireOp {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    controls: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    targets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qubit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clbit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    body: Option<Vec<WireOp>>,
}

impl WireOp {
    fn empty(kind: &str) -> Self {
        WireOp {
            kind: kind.to_string(),
            name: None,
            params: None,
            controls: None,
            targets: None,
            qubit: None,
            clbit: None,
            value: None,
            body: None,
        }
    }

    fn from_op(op: &CircuitOp) -> Self {
        match op {
            CircuitOp::Gate(g) => WireOp {
                name: Some(g.gate.name().to_string()),
                params: Some(g.params.clone()),
                controls: Some(g.controls.clone()),
                targets: Some(g.targets.clone()),
                ..WireOp::empty("gate")
            },
            CircuitOp::Measure { qubit, clbit } => WireOp {
                qubit: Some(*qubit),
                clbit: Some(*clbit),
                ..WireOp::empty("measure")
            },
            CircuitOp::Conditional { clbit, value, body } => WireOp {
                clbit: Some(*clbit),
                value: Some(*value),
                body: Some(body.iter().map(WireOp::from_op).collect()),
                ..WireOp::empty("cond")
            },
        }
    }

    fn into_op(self, ptr: &str) -> Result<CircuitOp, IrJsonError> {
        fn need<T>(v: Option<T>, ptr: &str, field: &str, kind: &str) -> Result<T, IrJsonError> {
            v.ok_or_else(|| {
                IrJsonError::at(
                    format!("{ptr}/{field}"),
                    format!("missing field for `{kind}` op"),
                )
            })
        }
        fn forbid<T>(v: &Option<T>, ptr: &str, field: &str, kind: &str) -> Result<(), IrJsonError> {
            match v {
                Some(_) => Err(IrJsonError::at(
                    format!("{ptr}/{field}"),
                    format!("field not allowed on `{kind}` op"),
                )),
                None => Ok(()),
            }
        }
        let kind = self.kind.as_str();
        match kind {
            "gate" => {
                for (field, present) in [
                    ("qubit", self.qubit.is_some()),
                    ("clbit", self.clbit.is_some()),
                    ("value", self.value.is_some()),
                    ("body", self.body.is_some()),
                ] {
                    if present {
                        return Err(IrJsonError::at(
                            format!("{ptr}/{field}"),
                            "field not allowed on `gate` op",
                        ));
                    }
                }
                let name = need(self.name, ptr, "name", kind)?;
                let gate: Gate = name.parse().map_err(|e: super::gate::UnknownGate| {
                    IrJsonError::at(format!("{ptr}/name"), e.to_string())
                })?;
                if gate.name() != name {
                    return Err(IrJsonError::at(
                        format!("{ptr}/name"),
                        format!("gate names are lowercase, found `{name}`"),
                    ));
                }
                Ok(CircuitOp::Gate(GateOp {
                    gate,
                    params: need(self.params, ptr, "params", kind)?,
                    controls: need(self.controls, ptr, "controls", kind)?,
                    targets: need(self.targets, ptr, "targets", kind)?,
                }))
            }
            "measure" => {
                forbid(&self.name, ptr, "name", kind)?;
                forbid(&self.params, ptr, "params", kind)?;
                forbid(&self.controls, ptr, "controls", kind)?;
                forbid(&self.targets, ptr, "targets", kind)?;
                forbid(&self.value, ptr, "value", kind)?;
                forbid(&self.body, ptr, "body", kind)?;
                Ok(CircuitOp::Measure {
                    qubit: need(self.qubit, ptr, "qubit", kind)?,
                    clbit: need(self.clbit, ptr, "clbit", kind)?,
                })
            }
            "cond" => {
                forbid(&self.name, ptr, "name", kind)?;
                forbid(&self.params, ptr, "params", kind)?;
                forbid(&self.controls, ptr, "controls", kind)?;
                forbid(&self.targets, ptr, "targets", kind)?;
                forbid(&self.qubit, ptr, "qubit", kind)?;
                let clbit = need(self.clbit, ptr, "clbit", kind)?;
                let value = need(self.value, ptr, "value", kind)?;
                if value > 1 {
                    return Err(IrJsonError::at(
                        format!("{ptr}/value"),
                        format!("condition value must be 0 or 1, found {value}"),
                    ));
                }
                let body = need(self.body, ptr, "body", kind)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, op)| op.into_op(&format!("{ptr}/body/{i}")))
                    .collect::<Result<_, _>>()?;
                Ok(CircuitOp::Conditional { clbit, value, body })
            }
            other => Err(IrJsonError::at(
                format!("{ptr}/kind"),
                format!("unknown op kind `{other}` (expected gate, measure or cond)"),
            )),
        }
    }
}

/// Serializes both views into the versioned JSON document (pretty printed,
/// trailing newline).
pub fn serialize_ir(system: &SystemIr, circuit: &CircuitIr) -> String {
    let doc = Document {
        ir_version: IR_VERSION,
        system: system.clone(),
        circuit: WireCircuit {
            n_qubits: circuit.n_qubits,
            n_clbits: circuit.n_clbits,
            qubit_names: circuit.qubit_names.clone(),
            clbit_names: circuit.clbit_names.clone(),
            ops: circuit.ops.iter().map(WireOp::from_op).collect(),
        },
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("IR serializes");
    text.push('\n');
    text
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

/// Parses and validates an IR document. Every error names the offending
/// location as a JSON pointer.
pub fn deserialize_ir(text: &str) -> Result<(SystemIr, CircuitIr), IrJsonError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        IrJsonError::at(pointer, e.into_inner().to_string())
    })?;
    if doc.ir_version != IR_VERSION {
        return Err(IrJsonError::at(
            "/ir_version",
            format!(
                "unsupported IR version {} (expected {IR_VERSION})",
                doc.ir_version
            ),
        ));
    }
    let wire = doc.circuit;
    let ops = wire
        .ops
        .into_iter()
        .enumerate()
        .map(|(i, op)| op.into_op(&format!("/circuit/ops/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let circuit = CircuitIr {
        n_qubits: wire.n_qubits,
        n_clbits: wire.n_clbits,
        qubit_names: wire.qubit_names,
        clbit_names: wire.clbit_names,
        ops,
    };
    let report = validate_circuit_with(
        &circuit,
        ValidateOptions {
            allow_mid_circuit: true,
        },
    );
    if let Some(first) = report.errors.first() {
        let pointer = match first.rule {
            super::circuit::Rule::Declarations => "/circuit".to_string(),
            _ => format!("/circuit/ops/{}", first.op_index),
        };
        return Err(IrJsonError::at(pointer, first.message.clone()));
    }
    Ok((doc.system, circuit))
}
