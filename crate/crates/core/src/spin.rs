//! Spin-1/2 building blocks with S = σ/2 and ħ = 1.
//!
//! Basis ordering per site is (|↑⟩, |↓⟩), so |↑⟩ is index 0.

use num_complex::Complex64;

use crate::error::Result;
use crate::tensor::{embed, kron, Operator, Register, StateVector};

pub type Vec3 = [f64; 3];

pub fn norm3(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn qubit() -> Register {
    Register::qubits(1).expect("one qubit")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Single-site S^x, S^y, S^z.
pub fn spin_matrices() -> [Operator; 3] {
    let z = c(0.0, 0.0);
    let sx = Operator::from_fn(qubit(), |i, j| if i != j { c(0.5, 0.0) } else { z });
    let sy = Operator::from_fn(qubit(), |i, j| match (i, j) {
        (0, 1) => c(0.0, -0.5),
        (1, 0) => c(0.0, 0.5),
        _ => z,
    });
    let sz = Operator::from_fn(qubit(), |i, j| match (i, j) {
        (0, 0) => c(0.5, 0.0),
        (1, 1) => c(-0.5, 0.0),
        _ => z,
    });
    [sx, sy, sz]
}

/// n·S on a single spin.
pub fn spin_along(n: Vec3) -> Operator {
    let [sx, sy, sz] = spin_matrices();
    &(&(&sx * n[0]) + &(&sy * n[1])) + &(&sz * n[2])
}

/// n·S_site embedded in `reg`.
pub fn site_spin(reg: &Register, site: usize, n: Vec3) -> Result<Operator> {
    embed(&spin_along(n), &[site], reg)
}

/// Cartesian component `axis` (0 = x, 1 = y, 2 = z) of S_site.
pub fn site_component(reg: &Register, site: usize, axis: usize) -> Result<Operator> {
    let mut n = [0.0; 3];
    n[axis] = 1.0;
    site_spin(reg, site, n)
}

/// `e^{-i·angle·n·S}` on a single spin.
pub fn rotation(n: Vec3, angle: f64) -> Operator {
    crate::tensor::unitary_from_generator(&spin_along(n), angle).expect("n·S is Hermitian")
}

/// `e^{-i·angle·n·S_site}` embedded in `reg`.
pub fn site_rotation(reg: &Register, site: usize, n: Vec3, angle: f64) -> Result<Operator> {
    embed(&rotation(n, angle), &[site], reg)
}

/// S_k·S_l on two spins as a 4×4 operator.
pub fn local_dot() -> Operator {
    let s = spin_matrices();
    let mut acc = Operator::zeros(Register::qubits(2).expect("two qubits"));
    for a in &s {
        acc = &acc + &kron(a, a);
    }
    acc
}

/// d·(S_k × S_l) on two spins (site 0 = k, site 1 = l), right-handed.
pub fn local_cross_along(d: Vec3) -> Operator {
    let s = spin_matrices();
    let mut acc = Operator::zeros(Register::qubits(2).expect("two qubits"));
    for (i, di) in d.iter().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let term = &kron(&s[j], &s[k]) - &kron(&s[k], &s[j]);
        acc = &acc + &(&term * *di);
    }
    acc
}

/// (S_k·a)(S_l·b) on two spins.
pub fn local_product_along(a: Vec3, b: Vec3) -> Operator {
    kron(&spin_along(a), &spin_along(b))
}

/// S_k·S_l embedded in `reg`.
pub fn exchange_dot(reg: &Register, k: usize, l: usize) -> Result<Operator> {
    embed(&local_dot(), &[k, l], reg)
}

/// (|↑↓⟩ − |↓↑⟩)/√2
pub fn singlet() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new(
        Register::qubits(2).expect("two qubits"),
        vec![c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)],
    )
    .expect("four amplitudes")
}

/// (|↑↓⟩ + |↓↑⟩)/√2
pub fn triplet_zero() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new(
        Register::qubits(2).expect("two qubits"),
        vec![c(0.0, 0.0), c(h, 0.0), c(h, 0.0), c(0.0, 0.0)],
    )
    .expect("four amplitudes")
}

pub fn up() -> StateVector {
    StateVector::basis(qubit(), 0).expect("index 0")
}

pub fn down() -> StateVector {
    StateVector::basis(qubit(), 1).expect("index 1")
}
