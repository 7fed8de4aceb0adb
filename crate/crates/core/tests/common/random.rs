//! Seeded generators for random circuits.

use std::f64::consts::PI;

use qumodel::ir::{CircuitIr, CircuitOp, Gate, GateOp};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_gate(rng: &mut impl Rng, n_qubits: usize) -> GateOp {
    let usable: Vec<Gate> = Gate::ALL
        .into_iter()
        .filter(|g| g.qubit_count() <= n_qubits)
        .collect();
    let gate = *usable.choose(rng).unwrap();
    let mut qubits: Vec<usize> = (0..n_qubits).collect();
    qubits.shuffle(rng);
    let controls = qubits[..gate.control_count()].to_vec();
    let targets = qubits[gate.control_count()..gate.qubit_count()].to_vec();
    let params = (0..gate.param_count())
        .map(|_| rng.gen_range(-2.0 * PI..2.0 * PI))
        .collect();
    GateOp::new(gate, params, controls, targets)
}

pub fn random_circuit(rng: &mut impl Rng, n_qubits: usize, n_gates: usize) -> CircuitIr {
    CircuitIr {
        n_qubits,
        n_clbits: 0,
        qubit_names: (0..n_qubits).map(|i| format!("q{i}")).collect(),
        clbit_names: vec![],
        ops: (0..n_gates)
            .map(|_| CircuitOp::Gate(random_gate(rng, n_qubits)))
            .collect(),
    }
}

/// Valid circuit with measurements and nested conditionals. Measured qubits
/// may be reused, so validate with `allow_mid_circuit`.
pub fn random_dynamic_circuit(
    rng: &mut impl Rng,
    n_qubits: usize,
    n_clbits: usize,
    n_ops: usize,
) -> CircuitIr {
    fn ops(rng: &mut impl Rng, nq: usize, nc: usize, count: usize, depth: usize) -> Vec<CircuitOp> {
        (0..count)
            .map(|_| {
                let roll = rng.gen_range(0..10);
                if roll < 2 && nc > 0 {
                    CircuitOp::Measure {
                        qubit: rng.gen_range(0..nq),
                        clbit: rng.gen_range(0..nc),
                    }
                } else if roll < 3 && nc > 0 && depth < 3 {
                    let inner = rng.gen_range(0..3);
                    CircuitOp::Conditional {
                        clbit: rng.gen_range(0..nc),
                        value: rng.gen_range(0..=1),
                        body: ops(rng, nq, nc, inner, depth + 1),
                    }
                } else {
                    CircuitOp::Gate(random_gate(rng, nq))
                }
            })
            .collect()
    }
    CircuitIr {
        n_qubits,
        n_clbits,
        qubit_names: (0..n_qubits).map(|i| format!("q{i}")).collect(),
        clbit_names: (0..n_clbits).map(|i| format!("c{i}")).collect(),
        ops: ops(rng, n_qubits, n_clbits, n_ops, 0),
    }
}

const TYPES: &[&str] = &[
    "int",
    "float",
    "str",
    "bool",
    "list[float]",
    "dict",
    "Matrix",
    "Result",
    "Backend",
];
const AWKWARD: &[&str] = &["lambda", "from", "class", "self", "None"];

/// Random structural model with globally unique names.
pub fn random_system(rng: &mut impl Rng) -> qumodel::ir::SystemIr {
    use qumodel::ir::{
        IrAssociation, IrAttribute, IrClass, IrOperation, IrPackage, IrParam, SystemIr,
    };

    struct Gen<'r, R: Rng> {
        rng: &'r mut R,
        next: usize,
        class_names: Vec<String>,
    }
    impl<R: Rng> Gen<'_, R> {
        fn id(&mut self) -> usize {
            self.next += 1;
            self.next
        }
        fn ty(&mut self) -> String {
            TYPES.choose(self.rng).unwrap().to_string()
        }
        fn class(&mut self, quantum: bool) -> IrClass {
            let name = format!("Class{}", self.id());
            self.class_names.push(name.clone());
            let mut awkward: Vec<&str> = AWKWARD.to_vec();
            awkward.shuffle(self.rng);
            let n_attrs = self.rng.gen_range(0..5);
            let attributes = (0..n_attrs)
                .map(|i| IrAttribute {
                    name: if i == 0 && self.rng.gen_bool(0.3) {
                        awkward.pop().unwrap().to_string()
                    } else {
                        format!("attr{}", self.id())
                    },
                    ty: self.ty(),
                    visibility: None,
                })
                .collect();
            let n_ops = self.rng.gen_range(0..5);
            let operations = (0..n_ops)
                .map(|_| {
                    let n_params = self.rng.gen_range(0..3);
                    IrOperation {
                        name: format!("op{}", self.id()),
                        params: (0..n_params)
                            .map(|_| IrParam {
                                name: format!("p{}", self.id()),
                                ty: self.ty(),
                            })
                            .collect(),
                        return_type: self.rng.gen_bool(0.7).then(|| self.ty()),
                        visibility: None,
                    }
                })
                .collect();
            IrClass {
                name,
                quantum,
                stereotype: quantum.then(|| "Quantum".to_string()),
                attributes,
                operations,
            }
        }
        fn package(&mut self, depth: usize, parent_quantum: bool) -> IrPackage {
            let quantum = parent_quantum || self.rng.gen_bool(0.3);
            let n_classes = self.rng.gen_range(0..4);
            let classes = (0..n_classes).map(|_| self.class(quantum)).collect();
            let n_packages = if depth < 2 {
                self.rng.gen_range(0..3)
            } else {
                0
            };
            let packages = (0..n_packages)
                .map(|_| self.package(depth + 1, quantum))
                .collect();
            IrPackage {
                name: format!("Pkg{}", self.id()),
                quantum,
                packages,
                classes,
            }
        }
    }

    let mut g = Gen {
        rng,
        next: 0,
        class_names: vec![],
    };
    let n_packages = g.rng.gen_range(0..4);
    let packages = (0..n_packages).map(|_| g.package(0, false)).collect();
    let n_root = g.rng.gen_range(0..3);
    let classes = (0..n_root).map(|_| g.class(false)).collect();
    let mut associations = Vec::new();
    if !g.class_names.is_empty() {
        for _ in 0..g.rng.gen_range(0..4) {
            let source = g.class_names.choose(g.rng).unwrap().clone();
            let target = g.class_names.choose(g.rng).unwrap().clone();
            let label = g.rng.gen_bool(0.5).then(|| "uses".to_string());
            associations.push(IrAssociation {
                source,
                target,
                label,
            });
        }
    }
    SystemIr {
        packages,
        classes,
        associations,
    }
}
