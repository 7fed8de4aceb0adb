//! Dense-matrix oracle for the statevector simulator.
//!
//! Every gate is expanded into its full 2^n × 2^n matrix by Kronecker products
//! of per-qubit factors (qubit 0 is the rightmost factor) and applied by plain
//! matrix-vector multiplication. Gate matrices are written here from their
//! Pauli forms rather than shared with the simulator.

use num_complex::Complex64;
use qumodel::ir::{CircuitIr, CircuitOp, Gate, GateOp};

pub type Mat = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Mat {
    vec![vec![a, b], vec![cc, d]]
}

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

fn pauli_x() -> Mat {
    m2(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}
fn pauli_y() -> Mat {
    m2(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))
}
fn pauli_z() -> Mat {
    m2(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))
}
fn proj_one() -> Mat {
    m2(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
}

fn scale(a: &Mat, s: Complex64) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// exp(-i θ/2 P) = cos(θ/2) I − i sin(θ/2) P.
fn rotation(p: Mat, theta: f64) -> Mat {
    let (s, co) = (theta / 2.0).sin_cos();
    add(&scale(&identity(2), c(co, 0.0)), &scale(&p, c(0.0, -s)))
}

fn u3(theta: f64, phi: f64, lambda: f64) -> Mat {
    let (s, co) = (theta / 2.0).sin_cos();
    m2(
        c(co, 0.0),
        -Complex64::from_polar(1.0, lambda) * s,
        Complex64::from_polar(1.0, phi) * s,
        Complex64::from_polar(1.0, phi + lambda) * co,
    )
}

fn phase(angle: f64) -> Mat {
    m2(
        c(1.0, 0.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
        Complex64::from_polar(1.0, angle),
    )
}

fn base_matrix(g: &GateOp) -> Mat {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
    let p = &g.params;
    match g.gate {
        Gate::H | Gate::Ch => scale(&add(&pauli_x(), &pauli_z()), c(FRAC_1_SQRT_2, 0.0)),
        Gate::X | Gate::Cx | Gate::Ccx => pauli_x(),
        Gate::Y | Gate::Cy => pauli_y(),
        Gate::Z | Gate::Cz => pauli_z(),
        Gate::S => phase(FRAC_PI_2),
        Gate::Sdg => phase(-FRAC_PI_2),
        Gate::T => phase(FRAC_PI_4),
        Gate::Tdg => phase(-FRAC_PI_4),
        Gate::Rx => rotation(pauli_x(), p[0]),
        Gate::Ry => rotation(pauli_y(), p[0]),
        Gate::Rz => rotation(pauli_z(), p[0]),
        Gate::U2 => u3(FRAC_PI_2, p[0], p[1]),
        Gate::U3 => u3(p[0], p[1], p[2]),
        Gate::Swap | Gate::Cswap => unreachable!(),
    }
}

/// Kronecker product of per-qubit factors, qubit n-1 leftmost.
fn place(n: usize, mut factor: impl FnMut(usize) -> Mat) -> Mat {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for q in (0..n).rev() {
        out = kron(&out, &factor(q));
    }
    out
}

/// I − Π + Π·U, where Π projects the controls onto |1…1⟩.
fn controlled(n: usize, controls: &[usize], body: Mat) -> Mat {
    let proj = place(n, |q| {
        if controls.contains(&q) {
            proj_one()
        } else {
            identity(2)
        }
    });
    let gated = mat_mul(&proj, &body);
    add(&add(&identity(1 << n), &scale(&proj, c(-1.0, 0.0))), &gated)
}

fn swap_matrix(n: usize, a: usize, b: usize) -> Mat {
    // SWAP = (II + XX + YY + ZZ) / 2
    let mut sum = identity(1 << n);
    for pauli in [pauli_x, pauli_y, pauli_z] {
        let term = place(n, |q| {
            if q == a || q == b {
                pauli()
            } else {
                identity(2)
            }
        });
        sum = add(&sum, &term);
    }
    scale(&sum, c(0.5, 0.0))
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn gate_matrix(n: usize, g: &GateOp) -> Mat {
    match g.gate {
        Gate::Swap | Gate::Cswap => {
            controlled(n, &g.controls, swap_matrix(n, g.targets[0], g.targets[1]))
        }
        _ => {
            let m = base_matrix(g);
            let t = g.targets[0];
            let body = place(n, |q| if q == t { m.clone() } else { identity(2) });
            controlled(n, &g.controls, body)
        }
    }
}

/// Final state of a gates-only circuit by explicit matrix products.
pub fn oracle_state(c: &CircuitIr) -> Vec<Complex64> {
    let n = c.n_qubits;
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << n];
    state[0] = Complex64::new(1.0, 0.0);
    for op in &c.ops {
        if let CircuitOp::Gate(g) = op {
            let m = gate_matrix(n, g);
            state = m
                .iter()
                .map(|row| row.iter().zip(&state).map(|(a, b)| a * b).sum())
                .collect();
        }
    }
    state
}
