//! Dense statevector reference simulator.
//!
//! Basis index bit `k` holds qubit `k` (little-endian). Circuits whose
//! measurements are all terminal and that have no conditionals are simulated
//! once and the final probabilities marginalized onto the classical bits;
//! anything else runs one collapsing trajectory per shot. Sampling draws from
//! ChaCha8 seeded with `seed_from_u64`, so counts are reproducible across
//! platforms.

mod dist;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ir::{
    validate_circuit_with, CircuitIr, CircuitOp, Gate, GateOp, ValidateOptions, ValidationReport,
};

pub use dist::{Counts, CountsError, Distribution};

pub const MAX_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("{n_qubits} qubits exceed the simulator capacity of {MAX_QUBITS}")]
    CapacityExceeded { n_qubits: usize },
    #[error("exact simulation needs terminal measurements and no conditionals; sample instead")]
    ExactModeUnsupported,
    #[error("circuit failed validation:\n{0}")]
    InvalidCircuit(ValidationReport),
}

type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> Matrix2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), -Complex64::from_polar(s, lambda)],
        [
            Complex64::from_polar(s, phi),
            Complex64::from_polar(c, phi + lambda),
        ],
    ]
}

/// The 2×2 matrix applied to the target of a one-target gate, controls aside.
fn target_matrix(g: &GateOp) -> Matrix2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let p = &g.params;
    match g.gate {
        Gate::H | Gate::Ch => [[h, h], [h, -h]],
        Gate::X | Gate::Cx | Gate::Ccx => [[ZERO, ONE], [ONE, ZERO]],
        Gate::Y | Gate::Cy => [[ZERO, -I], [I, ZERO]],
        Gate::Z | Gate::Cz => [[ONE, ZERO], [ZERO, -ONE]],
        Gate::S => [[ONE, ZERO], [ZERO, I]],
        Gate::Sdg => [[ONE, ZERO], [ZERO, -I]],
        Gate::T => [
            [ONE, ZERO],
            [
                ZERO,
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ],
        ],
        Gate::Tdg => [
            [ONE, ZERO],
            [
                ZERO,
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ],
        ],
        Gate::Rx => {
            let (s, c) = (p[0] / 2.0).sin_cos();
            [
                [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
            ]
        }
        Gate::Ry => {
            let (s, c) = (p[0] / 2.0).sin_cos();
            [
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            ]
        }
        Gate::Rz => [
            [Complex64::from_polar(1.0, -p[0] / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, p[0] / 2.0)],
        ],
        Gate::U2 => u3_matrix(std::f64::consts::FRAC_PI_2, p[0], p[1]),
        Gate::U3 => u3_matrix(p[0], p[1], p[2]),
        Gate::Swap | Gate::Cswap => unreachable!("swap has no 2x2 target matrix"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self, SimError> {
        if n_qubits > MAX_QUBITS {
            return Err(SimError::CapacityExceeded { n_qubits });
        }
        let mut amplitudes = vec![ZERO; 1 << n_qubits];
        amplitudes[0] = ONE;
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies one gate. Indices must be in range.
    pub fn apply(&mut self, g: &GateOp) {
        let ctrl: usize = g.controls.iter().map(|c| 1usize << c).fold(0, |a, b| a | b);
        match g.gate {
            Gate::Swap | Gate::Cswap => {
                let (a, b) = (1usize << g.targets[0], 1usize << g.targets[1]);
                for i in 0..self.amplitudes.len() {
                    if i & ctrl == ctrl && i & a != 0 && i & b == 0 {
                        self.amplitudes.swap(i, i ^ a ^ b);
                    }
                }
            }
            _ => {
                let m = target_matrix(g);
                let t = 1usize << g.targets[0];
                for i in 0..self.amplitudes.len() {
                    if i & t == 0 && i & ctrl == ctrl {
                        let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | t]);
                        self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                        self.amplitudes[i | t] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
        }
    }

    /// Probability that measuring `qubit` yields 1.
    fn prob_one(&self, qubit: usize) -> f64 {
        let bit = 1usize << qubit;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects `qubit` onto `outcome` and renormalizes.
    fn collapse(&mut self, qubit: usize, outcome: bool, prob: f64) {
        let bit = 1usize << qubit;
        let scale = 1.0 / prob.sqrt();
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if (i & bit != 0) == outcome {
                *a *= scale;
            } else {
                *a = ZERO;
            }
        }
    }
}

fn check(c: &CircuitIr) -> Result<(), SimError> {
    if c.n_qubits > MAX_QUBITS {
        return Err(SimError::CapacityExceeded {
            n_qubits: c.n_qubits,
        });
    }
    let report = validate_circuit_with(
        c,
        ValidateOptions {
            allow_mid_circuit: true,
        },
    );
    if !report.is_clean() {
        return Err(SimError::InvalidCircuit(report));
    }
    Ok(())
}

fn exact_mode(c: &CircuitIr) -> bool {
    !c.has_conditionals() && !c.has_mid_circuit_measurement()
}

/// Final state of a circuit with terminal measurements only; measurements
/// themselves are not applied.
pub fn statevector(c: &CircuitIr) -> Result<StateVector, SimError> {
    check(c)?;
    if !exact_mode(c) {
        return Err(SimError::ExactModeUnsupported);
    }
    let mut sv = StateVector::zero(c.n_qubits)?;
    for op in &c.ops {
        if let CircuitOp::Gate(g) = op {
            sv.apply(g);
        }
    }
    Ok(sv)
}

fn bitstring(bits: &[bool]) -> String {
    bits.iter()
        .rev()
        .map(|b| if *b { '1' } else { '0' })
        .collect()
}

/// Exact distribution over the classical register. Bits never written read 0;
/// when two measurements write the same bit the later one wins.
pub fn probabilities(c: &CircuitIr) -> Result<Distribution, SimError> {
    let sv = statevector(c)?;
    let mut map: Vec<Option<usize>> = vec![None; c.n_clbits];
    for op in &c.ops {
        if let CircuitOp::Measure { qubit, clbit } = op {
            map[*clbit] = Some(*qubit);
        }
    }
    let mut probs: BTreeMap<String, f64> = BTreeMap::new();
    let mut bits = vec![false; c.n_clbits];
    for (i, a) in sv.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        if p < 1e-15 {
            continue;
        }
        for (b, q) in bits.iter_mut().zip(&map) {
            *b = q.is_some_and(|q| i >> q & 1 == 1);
        }
        *probs.entry(bitstring(&bits)).or_default() += p;
    }
    Ok(Distribution::exact(probs).expect("a normalized state has nonzero mass"))
}

fn run_trajectory(
    ops: &[CircuitOp],
    sv: &mut StateVector,
    bits: &mut [bool],
    rng: &mut ChaCha8Rng,
) {
    for op in ops {
        match op {
            CircuitOp::Gate(g) => sv.apply(g),
            CircuitOp::Measure { qubit, clbit } => {
                let p1 = sv.prob_one(*qubit).clamp(0.0, 1.0);
                let outcome = rng.gen::<f64>() < p1;
                sv.collapse(*qubit, outcome, if outcome { p1 } else { 1.0 - p1 });
                bits[*clbit] = outcome;
            }
            CircuitOp::Conditional { clbit, value, body } => {
                if bits[*clbit] == (*value == 1) {
                    run_trajectory(body, sv, bits, rng);
                }
            }
        }
    }
}

/// Samples `shots` executions. Identical `(c, shots, seed)` give identical
/// counts.
pub fn sample(c: &CircuitIr, shots: u64, seed: u64) -> Result<Counts, SimError> {
    check(c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    if exact_mode(c) {
        let dist = probabilities(c)?;
        let keys: Vec<&String> = dist.probs.keys().collect();
        let mut cumulative = Vec::with_capacity(keys.len());
        let mut acc = 0.0;
        for k in &keys {
            acc += dist.probs[*k];
            cumulative.push(acc);
        }
        for _ in 0..shots {
            let r: f64 = rng.gen::<f64>() * acc;
            let idx = cumulative.partition_point(|c| *c <= r).min(keys.len() - 1);
            *counts.entry(keys[idx].clone()).or_default() += 1;
        }
    } else {
        let initial = StateVector::zero(c.n_qubits)?;
        for _ in 0..shots {
            let mut sv = initial.clone();
            let mut bits = vec![false; c.n_clbits];
            run_trajectory(&c.ops, &mut sv, &mut bits, &mut rng);
            *counts.entry(bitstring(&bits)).or_default() += 1;
        }
    }
    Ok(Counts(counts))
}
