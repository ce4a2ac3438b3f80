//! Non-separable dressing on a ring of qubits.
//!
//! A drive `f^y S_k^y` carries an inherent two-qubit error
//! `f^y δ S_k^x (S_{k+1}^z + S_{k−1}^z)`. The ring-wide dressing
//! `V = exp(−iδ Σ_k S_k^z S_{k+1}^z)` maps the actual drive back onto the
//! ideal one up to O(δ²), while leaving every `S^z` and `S^z S^z` term
//! untouched.

use crate::error::{Error, Result};
use crate::spin::site_component;
use crate::tensor::{op_distance, unitary_from_generator, Operator, Register};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingModel {
    n_qubits: usize,
    delta: f64,
    fy: f64,
}

impl RingModel {
    pub fn new(n_qubits: usize, delta: f64, fy: f64) -> Result<Self> {
        if n_qubits < 3 {
            return Err(Error::InvalidModel(format!("a ring needs at least 3 qubits, got {n_qubits}")));
        }
        if !(delta.is_finite() && fy.is_finite()) {
            return Err(Error::InvalidModel("ring parameters must be finite".into()));
        }
        Ok(Self { n_qubits, delta, fy })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn fy(&self) -> f64 {
        self.fy
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        Self { delta, ..*self }
    }

    pub fn register(&self) -> Register {
        Register::qubits(self.n_qubits).expect("n ≥ 3")
    }

    fn next(&self, k: usize) -> usize {
        (k + 1) % self.n_qubits
    }

    fn prev(&self, k: usize) -> usize {
        (k + self.n_qubits - 1) % self.n_qubits
    }
}

/// `f^y [S_k^y + δ S_k^x (S_{k+1}^z + S_{k−1}^z)]`, periodic.
pub fn actual_drive_generator(m: &RingModel, k: usize) -> Result<Operator> {
    let reg = m.register();
    let sx = site_component(&reg, k, 0)?;
    let sy = site_component(&reg, k, 1)?;
    let neighbors = &site_component(&reg, m.next(k), 2)? + &site_component(&reg, m.prev(k), 2)?;
    let error = &sx * &neighbors;
    Ok(&(&sy + &(&error * m.delta)) * m.fy)
}

/// `f^y S_k^y`
pub fn ideal_drive_generator(m: &RingModel, k: usize) -> Result<Operator> {
    Ok(&site_component(&m.register(), k, 1)? * m.fy)
}

/// `Σ_k S_k^z S_{k+1}^z` around the ring.
pub fn ring_zz(m: &RingModel) -> Operator {
    let reg = m.register();
    let mut acc = Operator::zeros(reg.clone());
    for k in 0..m.n_qubits {
        let zk = site_component(&reg, k, 2).expect("site in range");
        let zn = site_component(&reg, m.next(k), 2).expect("site in range");
        acc = &acc + &(&zk * &zn);
    }
    acc
}

/// `V = exp(−iδ Σ_k S_k^z S_{k+1}^z)`; diagonal in the computational basis.
pub fn nonlocal_dressing(m: &RingModel) -> Operator {
    unitary_from_generator(&ring_zz(m), m.delta).expect("diagonal generator is Hermitian")
}

/// `op_distance(V·G_k·V†, f^y S_k^y)` for the actual drive `G_k`.
pub fn residual(m: &RingModel, k: usize) -> Result<f64> {
    let v = nonlocal_dressing(m);
    let mapped = actual_drive_generator(m, k)?.conjugated_by(&v)?;
    op_distance(&mapped, &ideal_drive_generator(m, k)?)
}

/// [`residual`] at each of `deltas`, all other parameters of `m` kept.
pub fn residual_scaling(m: &RingModel, k: usize, deltas: &[f64]) -> Result<Vec<f64>> {
    deltas.iter().map(|&d| residual(&m.with_delta(d), k)).collect()
}

/// Least-squares slope of `log r` against `log δ`.
pub fn log_log_slope(deltas: &[f64], residuals: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = deltas
        .iter()
        .zip(residuals)
        .map(|(d, r)| (d.ln(), r.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
