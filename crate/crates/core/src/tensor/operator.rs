use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{Register, StateVector};
use crate::error::{Error, Result};

/// Threshold for the derived Hermitian check (relative Frobenius).
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Threshold for the derived unitary check (absolute Frobenius).
pub const UNITARY_TOL: f64 = 1e-12;

/// Dense complex square matrix acting on a [`Register`].
///
/// Arithmetic through `std::ops` panics when registers differ; that is a
/// programming error rather than a recoverable condition. Use
/// [`op_distance`](super::op_distance) or [`Operator::commutator`] for the
/// checked forms.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    register: Register,
    matrix: DMatrix<Complex64>,
}

impl Operator {
    pub fn new(register: Register, matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = register.total_dim();
        if matrix.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        if matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.ncols(),
            });
        }
        Ok(Self { register, matrix })
    }

    pub fn from_fn(register: Register, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = register.total_dim();
        Self {
            matrix: DMatrix::from_fn(n, n, f),
            register,
        }
    }

    /// Builds an operator from row-major real entries.
    pub fn from_real_rows(register: Register, rows: &[&[f64]]) -> Result<Self> {
        let n = register.total_dim();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(register, |i, j| Complex64::new(rows[i][j], 0.0)))
    }

    pub fn identity(register: Register) -> Self {
        let n = register.total_dim();
        Self {
            matrix: DMatrix::identity(n, n),
            register,
        }
    }

    pub fn zeros(register: Register) -> Self {
        let n = register.total_dim();
        Self {
            matrix: DMatrix::zeros(n, n),
            register,
        }
    }

    pub fn diagonal(register: Register, diag: &[Complex64]) -> Result<Self> {
        let n = register.total_dim();
        if diag.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: diag.len(),
            });
        }
        Ok(Self {
            matrix: DMatrix::from_diagonal(&DVector::from_column_slice(diag)),
            register,
        })
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.register.total_dim()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            register: self.register.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Operator {
        Operator {
            register: self.register.clone(),
            matrix: self.matrix.map(|z| z * c),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// ‖A − A†‖_F / max(1, ‖A‖_F)
    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm() / self.frobenius_norm().max(1.0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_residual() < HERMITIAN_TOL
    }

    /// ‖A A† − I‖_F
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        (&self.matrix * self.matrix.adjoint() - DMatrix::<Complex64>::identity(n, n)).norm()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() < UNITARY_TOL
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// `[self, other] = self·other − other·self`
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.register.ensure_same(&other.register)?;
        Ok(Operator {
            register: self.register.clone(),
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        })
    }

    /// `u · self · u†`
    pub fn conjugated_by(&self, u: &Operator) -> Result<Operator> {
        self.register.ensure_same(&u.register)?;
        Ok(Operator {
            register: self.register.clone(),
            matrix: &u.matrix * &self.matrix * u.matrix.adjoint(),
        })
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        self.register.ensure_same(psi.register())?;
        Ok(StateVector::from_parts(
            self.register.clone(),
            &self.matrix * psi.amplitudes(),
        ))
    }

    /// `⟨bra| self |ket⟩`
    pub fn matrix_element(&self, bra: &StateVector, ket: &StateVector) -> Result<Complex64> {
        self.register.ensure_same(bra.register())?;
        self.register.ensure_same(ket.register())?;
        Ok(bra.amplitudes().dotc(&(&self.matrix * ket.amplitudes())))
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.register, rhs.register, "register mismatch in add");
        Operator {
            register: self.register.clone(),
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.register, rhs.register, "register mismatch in sub");
        Operator {
            register: self.register.clone(),
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.register, rhs.register, "register mismatch in mul");
        Operator {
            register: self.register.clone(),
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: f64) -> Operator {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Mul<Complex64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: Complex64) -> Operator {
        self.scale(rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Operator {
            type Output = Operator;
            fn $method(self, rhs: Operator) -> Operator {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Operator> for Operator {
            type Output = Operator;
            fn $method(self, rhs: &Operator) -> Operator {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Mul<f64> for Operator {
    type Output = Operator;

    fn mul(self, rhs: f64) -> Operator {
        (&self) * rhs
    }
}
