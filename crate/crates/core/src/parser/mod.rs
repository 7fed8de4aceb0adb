//! Parsers for the textual PlantUML subset used to describe hybrid
//! quantum-classical systems.
//!
//! Two diagram kinds are accepted:
//!
//! * class diagrams (`package`, `class`, `A --> B : label`) describing the
//!   structural view, parsed into a [`ClassModel`];
//! * sequence diagrams (`participant`, `a -> b : gate`, `group`, `alt`)
//!   describing the gate-level circuit, parsed into a [`SequenceModel`].
//!
//! Both parsers are hand-written recursive descent over a shared lexer and
//! report the first error with its line and column.

mod class;
mod lexer;
mod print;
mod sequence;

use std::fmt;

pub use class::{
    parse_class_diagram, AssociationNode, AttributeNode, ClassModel, ClassNode, OperationNode,
    PackageNode, ParamNode, Visibility,
};
pub use print::{print_class_model, print_sequence_model};
pub use sequence::{
    parse_sequence_diagram, Event, GroupMessage, Participant, ParticipantKind, Role, SequenceModel,
};

/// Syntax error with a 1-based position into the original source text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(
        line: usize,
        column: usize,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Self {
        ParseError {
            line,
            column,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line, self.column, self.expected, self.found
        )
    }
}
