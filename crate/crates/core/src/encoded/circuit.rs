use num_complex::Complex64;
use rand::Rng;

use super::gates::random_theta;
use super::{
    allowed_pairs, block_register, dressed_state, ideal_logical_state, register_dressing, Basis, EncodedBlock,
    GateSpec, IdealGenerator,
};
use crate::error::{Error, Result};
use crate::exchange::DMVector;
use crate::sampling::logical_amplitudes;
use crate::tensor::StateVector;

/// A gate sequence on `n_blocks` encoded qubits with product-state input
/// `⊗_l (a_l|0_L⟩ + b_l|1_L⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitSpec {
    pub n_blocks: usize,
    pub gates: Vec<GateSpec>,
    pub inputs: Vec<(Complex64, Complex64)>,
}

#[derive(Debug, Clone)]
pub struct CircuitOutcome {
    /// Output of the actual gates acting on the dressed input.
    pub dressed_out: StateVector,
    /// Output of the ideal gates acting on the ideal input.
    pub ideal_out: StateVector,
    /// `‖dressed_out − V†·ideal_out‖` with `V` the register dressing.
    pub equivalence_residual: f64,
}

/// Runs the circuit twice: actual gates on dressed inputs, and the
/// corresponding ideal gates on ideal inputs. All gates in `c` must be
/// given in the actual basis.
pub fn simulate_circuit(c: &CircuitSpec, dm: &DMVector) -> Result<CircuitOutcome> {
    if c.gates.iter().any(|g| g.basis != Basis::Actual) {
        return Err(Error::MixedBasis);
    }
    if c.inputs.len() != c.n_blocks {
        return Err(Error::DimensionMismatch {
            expected: c.n_blocks,
            found: c.inputs.len(),
        });
    }
    let reg = block_register(c.n_blocks)?;

    let mut dressed: Option<StateVector> = None;
    let mut ideal: Option<StateVector> = None;
    for (i, &(a, b)) in c.inputs.iter().enumerate() {
        let block = EncodedBlock::along_dm(i + 1, dm)?;
        let d = dressed_state(a, b, dm, &block)?;
        let id = ideal_logical_state(a, b, &block)?;
        dressed = Some(dressed.map_or(d.clone(), |acc| acc.kron(&d)));
        ideal = Some(ideal.map_or(id.clone(), |acc| acc.kron(&id)));
    }
    let (mut dressed, mut ideal) = (dressed.expect("n_blocks ≥ 1"), ideal.expect("n_blocks ≥ 1"));

    for g in &c.gates {
        let ua = super::gate_unitary(g, dm, &reg, IdealGenerator::Scaled)?;
        let ui = super::gate_unitary(&g.with_basis(Basis::Ideal), dm, &reg, IdealGenerator::Scaled)?;
        dressed = ua.apply(&dressed)?;
        ideal = ui.apply(&ideal)?;
    }

    let mapped = register_dressing(dm, c.n_blocks)?.adjoint().apply(&ideal)?;
    let equivalence_residual = dressed.distance(&mapped)?;
    Ok(CircuitOutcome {
        dressed_out: dressed,
        ideal_out: ideal,
        equivalence_residual,
    })
}

/// Random circuit of `depth` allowed actual-basis gates with random angles
/// and random logical inputs.
pub fn random_circuit<R: Rng>(rng: &mut R, n_blocks: usize, depth: usize) -> CircuitSpec {
    let pairs = allowed_pairs(n_blocks);
    let gates = (0..depth)
        .map(|_| {
            let pair = pairs[rng.random_range(0..pairs.len())];
            GateSpec::new(pair, random_theta(rng), Basis::Actual)
        })
        .collect();
    let inputs = (0..n_blocks).map(|_| logical_amplitudes(rng)).collect();
    CircuitSpec { n_blocks, gates, inputs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{physical_dm, stream_rng};

    #[test]
    fn random_circuits_match() {
        let mut rng = stream_rng(21, 0);
        for _ in 0..5 {
            let d = physical_dm(&mut rng);
            let c = random_circuit(&mut rng, 2, 12);
            let out = simulate_circuit(&c, &d).unwrap();
            assert!(out.equivalence_residual < 1e-12, "{}", out.equivalence_residual);
            assert!((out.dressed_out.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_circuit_is_dressing_only() {
        let d = DMVector::new([0.2, 0.1, -0.3]).unwrap();
        let mut rng = stream_rng(1, 0);
        let mut c = random_circuit(&mut rng, 2, 0);
        assert!(simulate_circuit(&c, &d).unwrap().equivalence_residual < 1e-14);
        c.gates.push(GateSpec::new((1, 2), 0.3, Basis::Ideal));
        assert_eq!(simulate_circuit(&c, &d).unwrap_err(), Error::MixedBasis);
    }

    #[test]
    fn input_validation() {
        let d = DMVector::zero();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let c = CircuitSpec {
            n_blocks: 2,
            gates: vec![],
            inputs: vec![(one, zero)],
        };
        assert!(matches!(simulate_circuit(&c, &d), Err(Error::DimensionMismatch { .. })));
        let c = CircuitSpec {
            n_blocks: 1,
            gates: vec![],
            inputs: vec![(one, one)],
        };
        assert!(matches!(simulate_circuit(&c, &d), Err(Error::Unnormalized { .. })));
    }
}
