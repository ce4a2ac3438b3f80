//! Shared shape of a dressing transformation and the matrix-element check.

use crate::error::Result;
use crate::tensor::{Operator, StateVector};

/// A fixed unitary relating actual and ideal Hamiltonians.
///
/// `trivial` is set when the perturbation vanishes and the dressing
/// degenerates to the identity.
#[derive(Debug, Clone)]
pub struct Dressing {
    pub unitary: Operator,
    pub trivial: bool,
}

/// `|⟨Ψ|A|Φ⟩ − ⟨Ψ^id|B|Φ^id⟩|` for dressed states `Ψ, Φ` and ideal
/// states `Ψ^id, Φ^id`.
pub fn matrix_element_gap(
    actual: &Operator,
    dressed_bra: &StateVector,
    dressed_ket: &StateVector,
    ideal: &Operator,
    ideal_bra: &StateVector,
    ideal_ket: &StateVector,
) -> Result<f64> {
    let a = actual.matrix_element(dressed_bra, dressed_ket)?;
    let b = ideal.matrix_element(ideal_bra, ideal_ket)?;
    Ok((a - b).norm())
}
