use std::collections::HashSet;
use std::fmt;

use super::gate::Gate;

/// Deepest permitted nesting of conditional blocks.
pub const MAX_CONDITIONAL_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub gate: Gate,
    /// Angles in radians.
    pub params: Vec<f64>,
    pub controls: Vec<usize>,
    pub targets: Vec<usize>,
}

impl GateOp {
    pub fn new(gate: Gate, params: Vec<f64>, controls: Vec<usize>, targets: Vec<usize>) -> Self {
        GateOp {
            gate,
            params,
            controls,
            targets,
        }
    }

    /// Single-qubit gate without parameters.
    pub fn single(gate: Gate, target: usize) -> Self {
        GateOp::new(gate, Vec::new(), Vec::new(), vec![target])
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().chain(self.targets.iter()).copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitOp {
    Gate(GateOp),
    Measure {
        qubit: usize,
        clbit: usize,
    },
    Conditional {
        clbit: usize,
        value: u8,
        body: Vec<CircuitOp>,
    },
}

/// Behavioral view: qubit and classical-bit declarations plus the ordered
/// operation list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CircuitIr {
    pub n_qubits: usize,
    pub n_clbits: usize,
    pub qubit_names: Vec<String>,
    pub clbit_names: Vec<String>,
    pub ops: Vec<CircuitOp>,
}

/// Totals over a circuit with conditional bodies flattened.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub gates: usize,
    pub measures: usize,
    pub conditionals: usize,
}

impl CircuitIr {
    pub fn counts(&self) -> OpCounts {
        fn walk(ops: &[CircuitOp], c: &mut OpCounts) {
            for op in ops {
                match op {
                    CircuitOp::Gate(_) => c.gates += 1,
                    CircuitOp::Measure { .. } => c.measures += 1,
                    CircuitOp::Conditional { body, .. } => {
                        c.conditionals += 1;
                        walk(body, c);
                    }
                }
            }
        }
        let mut c = OpCounts::default();
        walk(&self.ops, &mut c);
        c
    }

    /// Gate ops in program order, descending into conditional bodies.
    pub fn gate_ops(&self) -> Vec<&GateOp> {
        fn walk<'a>(ops: &'a [CircuitOp], out: &mut Vec<&'a GateOp>) {
            for op in ops {
                match op {
                    CircuitOp::Gate(g) => out.push(g),
                    CircuitOp::Conditional { body, .. } => walk(body, out),
                    CircuitOp::Measure { .. } => {}
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.ops, &mut out);
        out
    }

    pub fn has_conditionals(&self) -> bool {
        self.counts().conditionals > 0
    }

    /// True when some qubit is touched again after being measured.
    pub fn has_mid_circuit_measurement(&self) -> bool {
        fn walk(ops: &[CircuitOp], measured: &mut HashSet<usize>) -> bool {
            for op in ops {
                match op {
                    CircuitOp::Gate(g) => {
                        if g.qubits().any(|q| measured.contains(&q)) {
                            return true;
                        }
                    }
                    CircuitOp::Measure { qubit, .. } => {
                        if !measured.insert(*qubit) {
                            return true;
                        }
                    }
                    CircuitOp::Conditional { body, .. } => {
                        if walk(body, measured) {
                            return true;
                        }
                    }
                }
            }
            false
        }
        walk(&self.ops, &mut HashSet::new())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    QubitIndex,
    ClbitIndex,
    Arity,
    QubitCount,
    OverlappingQubits,
    PostMeasurement,
    ConditionValue,
    NestingDepth,
    Declarations,
    UnknownGate,
    UngroupedMessage,
    UnmeasuredCondition,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::QubitIndex => "qubit-index",
            Rule::ClbitIndex => "clbit-index",
            Rule::Arity => "param-arity",
            Rule::QubitCount => "qubit-arity",
            Rule::OverlappingQubits => "overlapping-qubits",
            Rule::PostMeasurement => "post-measurement",
            Rule::ConditionValue => "condition-value",
            Rule::NestingDepth => "nesting-depth",
            Rule::Declarations => "declarations",
            Rule::UnknownGate => "unknown-gate",
            Rule::UngroupedMessage => "ungrouped-message",
            Rule::UnmeasuredCondition => "unmeasured-condition",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    /// Index of the top-level op the finding belongs to.
    pub op_index: usize,
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op {}: [{}] {}", self.op_index, self.rule, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<Finding>,
    pub warnings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.errors.is_empty()
    }

    pub(crate) fn error(&mut self, op_index: usize, rule: Rule, message: impl Into<String>) {
        self.errors.push(Finding {
            op_index,
            rule,
            message: message.into(),
        });
    }

    pub(crate) fn warning(&mut self, op_index: usize, rule: Rule, message: impl Into<String>) {
        self.warnings.push(Finding {
            op_index,
            rule,
            message: message.into(),
        });
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |items: &[Finding]| {
            items
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "op_index": f.op_index,
                        "rule": f.rule.id(),
                        "message": f.message,
                    })
                })
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "errors": list(&self.errors),
            "warnings": list(&self.warnings),
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error: {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Permit gates and measurements on a qubit after it has been measured.
    pub allow_mid_circuit: bool,
}

/// Checks every structural invariant of a circuit. Never fails; all findings
/// are collected in the report.
pub fn validate_circuit(c: &CircuitIr) -> ValidationReport {
    validate_circuit_with(c, ValidateOptions::default())
}

pub fn validate_circuit_with(c: &CircuitIr, opts: ValidateOptions) -> ValidationReport {
    let mut report = ValidationReport::default();
    if c.qubit_names.len() != c.n_qubits || c.clbit_names.len() != c.n_clbits {
        report.error(
            0,
            Rule::Declarations,
            format!(
                "declared {} qubits / {} clbits but {} / {} names",
                c.n_qubits,
                c.n_clbits,
                c.qubit_names.len(),
                c.clbit_names.len()
            ),
        );
    }
    let mut state = WalkState {
        measured: HashSet::new(),
        written: HashSet::new(),
        opts,
    };
    for (i, op) in c.ops.iter().enumerate() {
        check_op(c, op, i, 1, &mut state, &mut report);
    }
    report
}

struct WalkState {
    measured: HashSet<usize>,
    written: HashSet<usize>,
    opts: ValidateOptions,
}

fn check_op(
    c: &CircuitIr,
    op: &CircuitOp,
    index: usize,
    depth: usize,
    st: &mut WalkState,
    report: &mut ValidationReport,
) {
    match op {
        CircuitOp::Gate(g) => {
            check_gate(c, g, index, report);
            if !st.opts.allow_mid_circuit {
                for q in g.qubits() {
                    if st.measured.contains(&q) {
                        report.error(
                            index,
                            Rule::PostMeasurement,
                            format!(
                                "post-measurement use: {} on qubit {q} after it was measured",
                                g.gate
                            ),
                        );
                    }
                }
            }
        }
        CircuitOp::Measure { qubit, clbit } => {
            if *qubit >= c.n_qubits {
                report.error(
                    index,
                    Rule::QubitIndex,
                    format!(
                        "qubit index {qubit} out of range (n_qubits = {})",
                        c.n_qubits
                    ),
                );
            }
            if *clbit >= c.n_clbits {
                report.error(
                    index,
                    Rule::ClbitIndex,
                    format!(
                        "clbit index {clbit} out of range (n_clbits = {})",
                        c.n_clbits
                    ),
                );
            }
            if !st.opts.allow_mid_circuit && st.measured.contains(qubit) {
                report.error(
                    index,
                    Rule::PostMeasurement,
                    format!("post-measurement use: qubit {qubit} measured twice"),
                );
            }
            st.measured.insert(*qubit);
            st.written.insert(*clbit);
        }
        CircuitOp::Conditional { clbit, value, body } => {
            if *clbit >= c.n_clbits {
                report.error(
                    index,
                    Rule::ClbitIndex,
                    format!(
                        "condition clbit {clbit} out of range (n_clbits = {})",
                        c.n_clbits
                    ),
                );
            } else if !st.written.contains(clbit) {
                report.warning(
                    index,
                    Rule::UnmeasuredCondition,
                    format!("condition reads clbit {clbit} before any measurement writes it"),
                );
            }
            if *value > 1 {
                report.error(
                    index,
                    Rule::ConditionValue,
                    format!("condition value {value} is not 0 or 1"),
                );
            }
            if depth > MAX_CONDITIONAL_DEPTH {
                report.error(
                    index,
                    Rule::NestingDepth,
                    format!("conditional nesting depth {depth} exceeds {MAX_CONDITIONAL_DEPTH}"),
                );
            }
            for inner in body {
                check_op(c, inner, index, depth + 1, st, report);
            }
        }
    }
}

fn check_gate(c: &CircuitIr, g: &GateOp, index: usize, report: &mut ValidationReport) {
    let gate = g.gate;
    if g.params.len() != gate.param_count() {
        let plural = if gate.param_count() == 1 { "" } else { "s" };
        report.error(
            index,
            Rule::Arity,
            format!(
                "arity mismatch: {gate} expects {} parameter{plural}, got {}",
                gate.param_count(),
                g.params.len()
            ),
        );
    }
    if g.params.iter().any(|p| !p.is_finite()) {
        report.error(
            index,
            Rule::Arity,
            format!("{gate} has a non-finite parameter"),
        );
    }
    if g.controls.len() != gate.control_count() || g.targets.len() != gate.target_count() {
        report.error(
            index,
            Rule::QubitCount,
            format!(
                "{gate} expects {} control(s) and {} target(s), got {} and {}",
                gate.control_count(),
                gate.target_count(),
                g.controls.len(),
                g.targets.len()
            ),
        );
    }
    for q in g.qubits() {
        if q >= c.n_qubits {
            report.error(
                index,
                Rule::QubitIndex,
                format!("qubit index {q} out of range (n_qubits = {})", c.n_qubits),
            );
        }
    }
    if g.controls.iter().any(|q| g.targets.contains(q)) {
        report.error(index, Rule::OverlappingQubits, "overlapping control/target");
    } else {
        let mut seen = HashSet::new();
        if !g.qubits().all(|q| seen.insert(q)) {
            report.error(
                index,
                Rule::OverlappingQubits,
                format!("{gate} repeats a qubit index"),
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn bell() -> CircuitIr {
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

    fn with_op(op: CircuitOp) -> CircuitIr {
        let mut c = bell();
        c.ops = vec![op];
        c
    }

    #[test]
    fn bell_is_clean() {
        let r = validate_circuit(&bell());
        assert!(r.errors.is_empty() && r.warnings.is_empty());
    }

    #[test]
    fn overlapping_control_target() {
        let r = validate_circuit(&with_op(CircuitOp::Gate(GateOp::new(
            Gate::Cx,
            vec![],
            vec![0],
            vec![0],
        ))));
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.errors[0].message, "overlapping control/target");
    }

    #[test]
    fn rz_without_parameter() {
        let r = validate_circuit(&with_op(CircuitOp::Gate(GateOp::single(Gate::Rz, 0))));
        assert_eq!(r.errors.len(), 1);
        assert_eq!(
            r.errors[0].message,
            "arity mismatch: rz expects 1 parameter, got 0"
        );
    }

    #[test]
    fn gate_after_measure() {
        let mut c = bell();
        c.ops.push(CircuitOp::Gate(GateOp::single(Gate::H, 0)));
        let r = validate_circuit(&c);
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.errors[0].rule, Rule::PostMeasurement);
        assert_eq!(r.errors[0].op_index, 4);
        let relaxed = validate_circuit_with(
            &c,
            ValidateOptions {
                allow_mid_circuit: true,
            },
        );
        assert!(relaxed.is_clean());
        assert!(c.has_mid_circuit_measurement());
        assert!(!bell().has_mid_circuit_measurement());
    }

    #[test]
    fn out_of_range_indices() {
        let r = validate_circuit(&with_op(CircuitOp::Measure { qubit: 5, clbit: 7 }));
        let rules: Vec<Rule> = r.errors.iter().map(|e| e.rule).collect();
        assert_eq!(rules, vec![Rule::QubitIndex, Rule::ClbitIndex]);
    }

    #[test]
    fn nesting_limit() {
        let mut op = CircuitOp::Gate(GateOp::single(Gate::X, 0));
        for _ in 0..MAX_CONDITIONAL_DEPTH {
            op = CircuitOp::Conditional {
                clbit: 0,
                value: 1,
                body: vec![op],
            };
        }
        let mut c = bell();
        c.ops = vec![CircuitOp::Measure { qubit: 1, clbit: 0 }, op.clone()];
        assert!(validate_circuit(&c).is_clean());
        c.ops[1] = CircuitOp::Conditional {
            clbit: 0,
            value: 1,
            body: vec![op],
        };
        let r = validate_circuit(&c);
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.errors[0].rule, Rule::NestingDepth);
    }

    #[test]
    fn unmeasured_condition_warns() {
        let r = validate_circuit(&with_op(CircuitOp::Conditional {
            clbit: 0,
            value: 0,
            body: vec![CircuitOp::Gate(GateOp::single(Gate::X, 0))],
        }));
        assert!(r.is_clean());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn idempotent() {
        let mut c = bell();
        c.ops.push(CircuitOp::Gate(GateOp::single(Gate::Rz, 3)));
        assert_eq!(validate_circuit(&c), validate_circuit(&c));
    }

    #[test]
    fn counts_flatten_bodies() {
        let mut c = bell();
        c.ops.push(CircuitOp::Conditional {
            clbit: 0,
            value: 1,
            body: vec![
                CircuitOp::Gate(GateOp::single(Gate::X, 1)),
                CircuitOp::Gate(GateOp::single(Gate::Z, 1)),
            ],
        });
        assert_eq!(
            c.counts(),
            OpCounts {
                gates: 4,
                measures: 2,
                conditionals: 1
            }
        );
        assert_eq!(c.gate_ops().len(), 4);
    }
}
