//! Validated intermediate representation bridging parsed diagrams and the
//! code generators.

mod circuit;
mod gate;
mod json;
mod lower;
mod system;

pub use circuit::{
    validate_circuit, validate_circuit_with, CircuitIr, CircuitOp, Finding, GateOp, OpCounts, Rule,
    ValidateOptions, ValidationReport, MAX_CONDITIONAL_DEPTH,
};
pub use gate::{Gate, UnknownGate};
pub use json::{deserialize_ir, serialize_ir, IrJsonError, IR_VERSION};
pub use lower::lower_sequence_model;
pub use system::{
    lower_class_model, ElementCounts, IrAssociation, IrAttribute, IrClass, IrOperation, IrPackage,
    IrParam, SystemIr,
};
