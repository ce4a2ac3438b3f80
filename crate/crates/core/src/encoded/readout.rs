use num_complex::Complex64;

use super::{dressed_state, EncodedBlock};
use crate::error::{Error, Result};
use crate::exchange::{local_actual, DMVector};
use crate::spin::site_spin;
use crate::tensor::{embed, ground_state, hermitian_eigensystem, Operator, Register, StateVector, DEFAULT_DEGENERACY_TOL};

#[derive(Debug, Clone)]
pub struct Preparation {
    /// Ground state of the preparation Hamiltonian on a 3-spin register.
    pub state: StateVector,
    /// `|⟨ground|dressed 0_L⟩|`
    pub overlap: f64,
    pub energy: f64,
    /// Set when the ground state is not unique (e.g. zero field).
    pub degenerate: bool,
}

/// Zero-temperature preparation of the dressed `|0_L⟩`: ground state of
/// `H₁₂ − b·(n·S₃)` with `n = D/|D|` (z for `D = 0`).
///
/// Requires `0 ≤ b < J·√(1+|D|²)`; `b = 0` leaves spin 3 free and is
/// reported through `degenerate`.
pub fn prepare_logical_zero(dm: &DMVector, j: f64, b_field: f64, block: &EncodedBlock) -> Result<Preparation> {
    if !(j.is_finite() && j > 0.0) {
        return Err(Error::InvalidModel(format!("exchange J must be positive, got {j}")));
    }
    let ceiling = j * dm.scale();
    if !(b_field.is_finite() && (0.0..ceiling).contains(&b_field)) {
        return Err(Error::InvalidModel(format!(
            "preparation field must lie in [0, {ceiling}), got {b_field}"
        )));
    }
    let block = EncodedBlock::along_dm(block.index(), dm)?.local();
    let reg = Register::qubits(3)?;
    let h12 = embed(&local_actual(j, dm), &[0, 1], &reg)?;
    let zeeman = site_spin(&reg, 2, block.axis())?;
    let h = &h12 - &(&zeeman * b_field);
    let gs = ground_state(&h, DEFAULT_DEGENERACY_TOL)?;
    let target = dressed_state(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), dm, &block)?;
    let overlap = gs.state.inner(&target)?.norm();
    Ok(Preparation {
        state: gs.state,
        overlap,
        energy: gs.energy,
        degenerate: gs.degenerate,
    })
}

/// Projector onto the dressed-singlet eigenspace of the actual `H₁₂`,
/// eigenvalue `−(3/4)·J·√(1+|D|²)`, on two spins.
fn dressed_singlet_projector(dm: &DMVector) -> Result<Operator> {
    let h = local_actual(1.0, dm);
    let eig = hermitian_eigensystem(&h)?;
    let target = -0.75 * dm.scale();
    let reg = h.register().clone();
    let mut p = Operator::zeros(reg.clone());
    for (i, &e) in eig.values.iter().enumerate() {
        if (e - target).abs() < 1e-9 {
            let v = eig.vectors.column(i);
            let outer = v * v.adjoint();
            p = &p + &Operator::new(reg.clone(), outer)?;
        }
    }
    Ok(p)
}

/// Probability that a measurement of the actual `H₁₂` of `block` finds the
/// dressed singlet. `state` may live on the 3-spin block register or on a
/// register of whole blocks.
pub fn singlet_measurement_probability(state: &StateVector, dm: &DMVector, block: &EncodedBlock) -> Result<f64> {
    let reg = state.register();
    let sites = if reg.n_sites() == 3 {
        [0, 1]
    } else {
        let [a, b, _] = block.sites();
        [a, b]
    };
    let p = embed(&dressed_singlet_projector(dm)?, &sites, reg)?;
    Ok(p.matrix_element(state, state)?.re)
}
