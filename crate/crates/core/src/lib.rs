//! Model-driven compiler for hybrid quantum-classical systems.
//!
//! Class and sequence diagrams written in a PlantUML subset are parsed,
//! lowered into a validated IR, and emitted as Qiskit, Cirq, Q# and Braket
//! programs plus Python class skeletons. A statevector simulator provides
//! reference distributions and KL divergence decides equivalence.

pub mod classical;
pub mod cli;
pub mod codegen;
pub mod ir;
pub mod metrics;
pub mod parser;
pub mod sim;
