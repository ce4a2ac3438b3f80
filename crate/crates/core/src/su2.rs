//! Conjugation identity for partial su(2) triples.
//!
//! For any triple with `[jz, jx] = i·jy` and `[jy, jz] = i·jx` (the third
//! relation `[jx, jy] = i·jz` is not needed),
//!
//! ```text
//! √(1+δ²) · e^{-iφ jz} jx e^{iφ jz} = jx + δ·jy,    δ = tan φ
//! ```
//!
//! Every dressing transformation in this crate is an instance of this
//! rotation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{unitary_from_generator, Operator};

/// Acceptance threshold for the two required commutation relations.
pub const TRIPLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Residuals {
    /// ‖[jz,jx] − i·jy‖_F / max(1,‖jy‖_F)
    pub r1: f64,
    /// ‖[jy,jz] − i·jx‖_F / max(1,‖jx‖_F)
    pub r2: f64,
    /// ‖[jx,jy] − i·jz‖_F / max(1,‖jz‖_F), reported only.
    pub r3: f64,
}

fn relation_residual(a: &Operator, b: &Operator, target: &Operator) -> Result<f64> {
    let lhs = a.commutator(b)?;
    let rhs = target * Complex64::new(0.0, 1.0);
    Ok((&lhs - &rhs).frobenius_norm() / target.frobenius_norm().max(1.0))
}

pub fn partial_su2_residuals(jx: &Operator, jy: &Operator, jz: &Operator) -> Result<Su2Residuals> {
    jx.register().ensure_same(jy.register())?;
    jx.register().ensure_same(jz.register())?;
    Ok(Su2Residuals {
        r1: relation_residual(jz, jx, jy)?,
        r2: relation_residual(jy, jz, jx)?,
        r3: relation_residual(jx, jy, jz)?,
    })
}

/// A validated triple: the two required relations hold to [`TRIPLE_TOL`].
#[derive(Debug, Clone)]
pub struct OperatorTriple {
    jx: Operator,
    jy: Operator,
    jz: Operator,
    residuals: Su2Residuals,
}

impl OperatorTriple {
    pub fn new(jx: Operator, jy: Operator, jz: Operator) -> Result<Self> {
        let residuals = partial_su2_residuals(&jx, &jy, &jz)?;
        if !(residuals.r1 < TRIPLE_TOL && residuals.r2 < TRIPLE_TOL) {
            return Err(Error::InvalidTriple {
                r1: residuals.r1,
                r2: residuals.r2,
            });
        }
        Ok(Self {
            jx,
            jy,
            jz,
            residuals,
        })
    }

    pub fn jx(&self) -> &Operator {
        &self.jx
    }

    pub fn jy(&self) -> &Operator {
        &self.jy
    }

    pub fn jz(&self) -> &Operator {
        &self.jz
    }

    pub fn residuals(&self) -> Su2Residuals {
        self.residuals
    }

    /// Whether the (unenforced) third relation also holds.
    pub fn closes_third_relation(&self) -> bool {
        self.residuals.r3 < TRIPLE_TOL
    }

    /// `e^{-iφ jz}`
    pub fn rotation(&self, phi: f64) -> Result<Operator> {
        unitary_from_generator(&self.jz, phi)
    }

    /// `e^{-iφ jz} jx e^{iφ jz}`
    pub fn rotated_jx(&self, phi: f64) -> Result<Operator> {
        self.jx.conjugated_by(&self.rotation(phi)?)
    }
}

/// Relative residual of the identity at `φ = arctan δ`, normalized by
/// `max(1, ‖jx‖_F)`.
pub fn dressing_identity_residual(t: &OperatorTriple, delta: f64) -> Result<f64> {
    if !delta.is_finite() {
        return Err(Error::InvalidModel(format!("delta must be finite, got {delta}")));
    }
    let phi = delta.atan();
    let lhs = &t.rotated_jx(phi)? * (1.0 + delta * delta).sqrt();
    let rhs = t.jx() + &(t.jy() * delta);
    Ok((&lhs - &rhs).frobenius_norm() / t.jx().frobenius_norm().max(1.0))
}
