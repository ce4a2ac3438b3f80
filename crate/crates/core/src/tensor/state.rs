use nalgebra::DVector;
use num_complex::Complex64;

use super::Register;
use crate::error::{Error, Result};

/// Dense state vector tagged with its register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: Register,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(register: Register, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != register.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: register.total_dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self {
            register,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub(crate) fn from_parts(register: Register, amplitudes: DVector<Complex64>) -> Self {
        debug_assert_eq!(register.total_dim(), amplitudes.len());
        Self {
            register,
            amplitudes,
        }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(register: Register, index: usize) -> Result<Self> {
        let n = register.total_dim();
        if index >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: index,
            });
        }
        let mut amplitudes = DVector::zeros(n);
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            register,
            amplitudes,
        })
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalize(&self) -> StateVector {
        let norm = self.norm();
        StateVector {
            register: self.register.clone(),
            amplitudes: self.amplitudes.map(|z| z / norm),
        }
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.register.ensure_same(&other.register)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Euclidean distance ‖self − other‖₂.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        self.register.ensure_same(&other.register)?;
        Ok((&self.amplitudes - &other.amplitudes).norm())
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        StateVector {
            register: self.register.concat(&other.register),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    pub fn scale(&self, c: Complex64) -> StateVector {
        StateVector {
            register: self.register.clone(),
            amplitudes: self.amplitudes.map(|z| z * c),
        }
    }

    /// `a·self + b·other`
    pub fn combine(&self, a: Complex64, other: &StateVector, b: Complex64) -> Result<StateVector> {
        self.register.ensure_same(&other.register)?;
        Ok(StateVector {
            register: self.register.clone(),
            amplitudes: self.amplitudes.map(|z| z * a) + other.amplitudes.map(|z| z * b),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_hits_unit_norm() {
        let reg = Register::new(vec![3]).unwrap();
        let psi = StateVector::new(
            reg,
            vec![
                Complex64::new(3.0, 0.0),
                Complex64::new(0.0, 4.0),
                Complex64::new(1e-3, -2.0),
            ],
        )
        .unwrap();
        assert!((psi.normalize().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kron_concatenates_registers() {
        let a = StateVector::basis(Register::qubits(1).unwrap(), 1).unwrap();
        let b = StateVector::basis(Register::single(3).unwrap(), 2).unwrap();
        let ab = a.kron(&b);
        assert_eq!(ab.register().dims(), &[2, 3]);
        assert_eq!(ab.amplitude(5), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn basis_index_checked() {
        assert!(StateVector::basis(Register::qubits(1).unwrap(), 2).is_err());
    }
}
