use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use rand::Rng;

use super::{allowed_pairs, block_of, block_register, dressed_state, ideal_logical_state, EncodedBlock};
use crate::error::{Error, Result};
use crate::exchange::{local_actual, local_ideal, DMVector};
use crate::sampling::{logical_amplitudes, stream_rng};
use crate::spin::local_dot;
use crate::tensor::{embed, op_distance, unitary_from_generator, Operator, Register, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Generated by the anisotropic interaction `H_kl`.
    Actual,
    /// Generated by the isotropic interaction.
    Ideal,
}

/// Which isotropic generator an ideal gate uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdealGenerator {
    /// `√(1+|D|²)·S_k·S_l`, the exact partner of the actual interaction.
    #[default]
    Scaled,
    /// Bare `S_k·S_l`; differs from `Scaled` by a time rescaling.
    Bare,
}

/// Exchange gate `exp(−iθ H_kl)` on a pair of 1-based spin labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSpec {
    pub pair: (usize, usize),
    pub theta: f64,
    pub basis: Basis,
}

impl GateSpec {
    pub fn new(pair: (usize, usize), theta: f64, basis: Basis) -> Self {
        Self { pair, theta, basis }
    }

    pub fn with_basis(&self, basis: Basis) -> Self {
        Self { basis, ..*self }
    }
}

/// Unitary of `g` on `register` (3 spins per block, J = 1).
pub fn gate_unitary(
    g: &GateSpec,
    dm: &DMVector,
    register: &Register,
    generator: IdealGenerator,
) -> Result<Operator> {
    let (k, l) = g.pair;
    let n_blocks = register.n_sites() / 3;
    if !register.n_sites().is_multiple_of(3) || !allowed_pairs(n_blocks).contains(&(k, l)) {
        return Err(Error::PairNotAllowed { k, l });
    }
    let local = match (g.basis, generator) {
        (Basis::Actual, _) => local_actual(1.0, dm),
        (Basis::Ideal, IdealGenerator::Scaled) => local_ideal(1.0, dm),
        (Basis::Ideal, IdealGenerator::Bare) => local_dot(),
    };
    let u = unitary_from_generator(&local, g.theta)?;
    embed(&u, &[k - 1, l - 1], register)
}

/// Number of random probe states per block used by
/// [`verify_gate_equivalence`].
const PROBES: usize = 4;

/// Largest gap between dressed-basis matrix elements of the actual gate and
/// ideal-basis matrix elements of the scaled isotropic gate, over seeded
/// random logical probe states on the blocks the pair touches.
pub fn verify_gate_equivalence(g: &GateSpec, dm: &DMVector, probe_seed: u64) -> Result<f64> {
    let (k, l) = g.pair;
    let n_blocks = block_of(k).max(block_of(l));
    let reg = block_register(n_blocks)?;
    let actual = gate_unitary(&g.with_basis(Basis::Actual), dm, &reg, IdealGenerator::Scaled)?;
    let ideal = gate_unitary(&g.with_basis(Basis::Ideal), dm, &reg, IdealGenerator::Scaled)?;

    let mut rng = stream_rng(probe_seed, 0);
    let mut probes: Vec<(StateVector, StateVector)> = Vec::with_capacity(PROBES);
    for _ in 0..PROBES {
        let mut dressed: Option<StateVector> = None;
        let mut ideal_state: Option<StateVector> = None;
        for b in 1..=n_blocks {
            let block = EncodedBlock::along_dm(b, dm)?;
            let (a, bb) = logical_amplitudes(&mut rng);
            let d = dressed_state(a, bb, dm, &block)?;
            let i = ideal_logical_state(a, bb, &block)?;
            dressed = Some(match dressed {
                None => d,
                Some(acc) => acc.kron(&d),
            });
            ideal_state = Some(match ideal_state {
                None => i,
                Some(acc) => acc.kron(&i),
            });
        }
        probes.push((dressed.expect("n_blocks >= 1"), ideal_state.expect("n_blocks >= 1")));
    }

    let mut worst = 0.0f64;
    for (bra_d, bra_i) in &probes {
        for (ket_d, ket_i) in &probes {
            let gap = crate::dressing::matrix_element_gap(&actual, bra_d, ket_d, &ideal, bra_i, ket_i)?;
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

/// Bare isotropic exchange gate `e^{-iθ S_k·S_l}` on 0-based sites.
fn bare_gate(theta: f64, k: usize, l: usize, reg: &Register) -> Result<Operator> {
    let u = unitary_from_generator(&local_dot(), theta)?;
    embed(&u, &[k, l], reg)
}

/// `op_distance(U_kl(θ_s)† U_lm(θ) U_kl(θ_s), U_km(θ))` for bare isotropic
/// gates on 0-based sites `(k, l, m)`.
pub fn swap_relocation_residual(
    theta: f64,
    sites: (usize, usize, usize),
    register: &Register,
    theta_swap: f64,
) -> Result<f64> {
    let (k, l, m) = sites;
    if k == l || l == m || k == m {
        return Err(Error::DuplicateSite(if k == l || k == m { k } else { l }));
    }
    let swap = bare_gate(theta_swap, k, l, register)?;
    let moved = bare_gate(theta, l, m, register)?.conjugated_by(&swap.adjoint())?;
    op_distance(&moved, &bare_gate(theta, k, m, register)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapScan {
    pub angle: f64,
    pub residual: f64,
}

/// Swap angle found by a brute-force scan of `[0, 2π)` followed by a
/// golden-section refinement, on a three-spin register with a probe angle
/// of 1.3.
pub fn find_swap_angle() -> SwapScan {
    static SCAN: OnceLock<SwapScan> = OnceLock::new();
    *SCAN.get_or_init(|| {
        let reg = Register::qubits(3).expect("three qubits");
        let f = |ts: f64| {
            swap_relocation_residual(1.3, (0, 1, 2), &reg, ts).expect("distinct sites")
        };
        const STEPS: usize = 720;
        let h = TAU / STEPS as f64;
        let best = (0..STEPS)
            .map(|i| i as f64 * h)
            .min_by(|a, b| f(*a).total_cmp(&f(*b)))
            .expect("non-empty grid");
        let (mut lo, mut hi) = (best - h, best + h);
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - ratio * (hi - lo);
        let mut x2 = lo + ratio * (hi - lo);
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..200 {
            if hi - lo < 1e-15 {
                break;
            }
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - ratio * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + ratio * (hi - lo);
                f2 = f(x2);
            }
        }
        let angle = 0.5 * (lo + hi);
        SwapScan {
            angle,
            residual: f(angle),
        }
    })
}

/// Moves `U₃₄(θ)` onto `U₁₅(θ)` with two swap conjugations,
/// `(1,3,4) → U₁₄` then `(5,4,1) → U₁₅`, on two blocks. Returns the residual
/// against the direct `U₁₅(θ)`.
pub fn relocate_34_to_15(theta: f64, theta_swap: f64) -> Result<f64> {
    let reg = block_register(2)?;
    let s13 = bare_gate(theta_swap, 0, 2, &reg)?;
    let s54 = bare_gate(theta_swap, 4, 3, &reg)?;
    let u34 = bare_gate(theta, 2, 3, &reg)?;
    let moved = u34.conjugated_by(&s13.adjoint())?.conjugated_by(&s54.adjoint())?;
    op_distance(&moved, &bare_gate(theta, 0, 4, &reg)?)
}

pub(crate) fn random_theta<R: Rng>(rng: &mut R) -> f64 {
    crate::sampling::uniform(rng, -PI, PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoded::block_dressing;
    use num_complex::Complex64;
    use crate::sampling::physical_dm;
    use crate::spin::{singlet, triplet_zero, up};

    fn dm(d: [f64; 3]) -> DMVector {
        DMVector::new(d).unwrap()
    }

    #[test]
    fn zero_angle_is_identity() {
        let reg = block_register(2).unwrap();
        let g = GateSpec::new((1, 5), 0.0, Basis::Actual);
        let u = gate_unitary(&g, &dm([0.3, 0.1, 0.2]), &reg, IdealGenerator::Scaled).unwrap();
        assert!(op_distance(&u, &Operator::identity(reg)).unwrap() < 1e-15);
    }

    #[test]
    fn disallowed_pair() {
        let reg = block_register(2).unwrap();
        let g = GateSpec::new((3, 4), 0.5, Basis::Ideal);
        assert_eq!(
            gate_unitary(&g, &DMVector::zero(), &reg, IdealGenerator::Scaled),
            Err(Error::PairNotAllowed { k: 3, l: 4 })
        );
        let g13 = GateSpec::new((1, 3), 0.5, Basis::Ideal);
        assert!(verify_gate_equivalence(&g13, &DMVector::zero(), 0).is_err());
    }

    #[test]
    fn bare_gate_at_pi_flips_singlet_relative_to_triplet() {
        let reg = block_register(1).unwrap();
        let g = GateSpec::new((1, 2), PI, Basis::Ideal);
        let u = gate_unitary(&g, &DMVector::zero(), &reg, IdealGenerator::Bare).unwrap();
        let s = u.apply(&singlet().kron(&up())).unwrap();
        let t = u.apply(&triplet_zero().kron(&up())).unwrap();
        let ps = singlet().kron(&up()).inner(&s).unwrap();
        let pt = triplet_zero().kron(&up()).inner(&t).unwrap();
        // e^{3iπ/4} vs e^{-iπ/4}
        assert!((ps - Complex64::from_polar(1.0, 0.75 * PI)).norm() < 1e-15);
        assert!((ps / pt - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gates_are_unitary() {
        let reg = block_register(2).unwrap();
        let mut rng = stream_rng(11, 0);
        for (k, l) in allowed_pairs(2) {
            let d = physical_dm(&mut rng);
            let theta = random_theta(&mut rng);
            for basis in [Basis::Actual, Basis::Ideal] {
                let u = gate_unitary(&GateSpec::new((k, l), theta, basis), &d, &reg, IdealGenerator::Scaled).unwrap();
                assert!(u.unitarity_residual() < 1e-13);
            }
        }
    }

    #[test]
    fn isotropic_equivalence_is_exact() {
        for pair in allowed_pairs(2) {
            let g = GateSpec::new(pair, 0.7, Basis::Actual);
            assert_eq!(verify_gate_equivalence(&g, &DMVector::zero(), 3).unwrap(), 0.0);
        }
    }

    #[test]
    fn intra_block_equivalence() {
        let g = GateSpec::new((1, 2), 2.1, Basis::Actual);
        assert!(verify_gate_equivalence(&g, &dm([0.1, 0.2, 0.3]), 5).unwrap() < 1e-12);
    }

    #[test]
    fn entangling_pair_equivalence_at_top_of_range() {
        let d = dm([0.0, 0.48, 0.64]);
        let mut rng = stream_rng(2, 0);
        for i in 0..20 {
            let g = GateSpec::new((1, 5), random_theta(&mut rng), Basis::Actual);
            assert!(verify_gate_equivalence(&g, &d, i).unwrap() < 1e-12);
        }
    }

    #[test]
    fn naive_pair_is_not_equivalent() {
        // (3,4) straddles two dressed ends and breaks the equivalence
        let d = dm([0.3, 0.2, 0.5]);
        let reg = block_register(2).unwrap();
        let actual = embed(&unitary_from_generator(&local_actual(1.0, &d), 0.9).unwrap(), &[2, 3], &reg).unwrap();
        let ideal = embed(&unitary_from_generator(&local_ideal(1.0, &d), 0.9).unwrap(), &[2, 3], &reg).unwrap();
        let v = crate::encoded::register_dressing(&d, 2).unwrap();
        let mapped = actual.conjugated_by(&v).unwrap();
        assert!(op_distance(&mapped, &ideal).unwrap() > 1e-3);
    }

    #[test]
    fn swap_angle_is_pi() {
        let scan = find_swap_angle();
        assert!((scan.angle - PI).abs() < 1e-12, "{scan:?}");
        assert!(scan.residual < 1e-13);
    }

    #[test]
    fn relocation_on_six_spins() {
        let reg = block_register(2).unwrap();
        let ts = find_swap_angle().angle;
        assert!(swap_relocation_residual(0.0, (2, 3, 4), &reg, ts).unwrap() < 1e-15);
        assert!(swap_relocation_residual(1.3, (2, 3, 4), &reg, ts).unwrap() < 1e-12);
        assert!(swap_relocation_residual(1.3, (2, 3, 4), &reg, PI / 4.0).unwrap() > 0.1);
        assert!(relocate_34_to_15(0.77, ts).unwrap() < 1e-12);
        assert!(swap_relocation_residual(1.0, (1, 1, 2), &reg, ts).is_err());
    }

    #[test]
    fn dressing_commutes_with_distant_generators() {
        let d = dm([0.3, -0.1, 0.6]);
        let reg = block_register(2).unwrap();
        let block = EncodedBlock::along_dm(1, &d).unwrap();
        let v = block_dressing(&d, &block, &reg).unwrap().unitary;
        for (k, l) in [(4, 5), (5, 6)] {
            let gen = embed(&local_actual(1.0, &d), &[k - 1, l - 1], &reg).unwrap();
            assert_eq!(v.commutator(&gen).unwrap().frobenius_norm(), 0.0);
        }
    }
}
