//! Qubit embedded in an N-level system with off-resonant leakage.
//!
//! The actual drive `H₁ = f[c₀†c₁ + Σ_j δ_j c₁†c_j + h.c.]` leaks level 1
//! into levels `2..N`. With `|κ|² = Σ|δ_j|²` and `φ = arctan|κ|`, the triple
//!
//! ```text
//! X = c₀†c₁ + h.c.
//! Y = (1/|κ|) Σ_j (δ_j c₁†c_j + h.c.)
//! Z = (i/|κ|) Σ_j (δ_j* c_j†c₀ − h.c.)
//! ```
//!
//! satisfies the partial su(2) relations, so `H₁ = f(X + |κ|Y) = 𝒱 H₁^id 𝒱†`
//! with `H₁^id = f√(1+|κ|²) X` and `𝒱 = e^{-iφZ}`.
//!
//! Orientation used throughout this module: `H_actual = 𝒱 H_ideal 𝒱†` and
//! dressed states are `|Φ⟩ = 𝒱|Φ^id⟩`. Level 1 is untouched by `𝒱`, so
//! preparation and readout of `|1⟩` need no dressing.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dressing::Dressing;
use crate::error::{Error, Result};
use crate::su2::OperatorTriple;
use crate::tensor::{
    embed, kron, op_distance, unitary_from_generator, Operator, Register, StateVector,
};

#[derive(Debug, Clone, PartialEq)]
pub struct LeakageModel {
    n_levels: usize,
    f: f64,
    deltas: Vec<Complex64>,
    energies: (f64, f64),
}

impl LeakageModel {
    /// `deltas[j - 2]` couples level 1 to level `j`; there must be exactly
    /// `n_levels - 2` of them. `energies = (ε₁, ε₂)` enter `H₂`.
    pub fn new(n_levels: usize, f: f64, deltas: Vec<Complex64>, energies: (f64, f64)) -> Result<Self> {
        if n_levels < 3 {
            return Err(Error::InvalidModel(format!(
                "n_levels must be at least 3, got {n_levels}"
            )));
        }
        if deltas.len() != n_levels - 2 {
            return Err(Error::InvalidModel(format!(
                "{n_levels} levels need {} leakage amplitudes, got {}",
                n_levels - 2,
                deltas.len()
            )));
        }
        if !f.is_finite() || deltas.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidModel("coupling and amplitudes must be finite".into()));
        }
        let (e1, e2) = energies;
        if !(e1.is_finite() && e1 > 0.0 && e2.is_finite() && e2 > 0.0) {
            return Err(Error::InvalidModel(format!(
                "level energies must be positive, got ({e1}, {e2})"
            )));
        }
        Ok(Self {
            n_levels,
            f,
            deltas,
            energies,
        })
    }

    /// Three levels with a single real leakage amplitude.
    pub fn three_level(f: f64, delta: f64, energies: (f64, f64)) -> Result<Self> {
        Self::new(3, f, vec![Complex64::new(delta, 0.0)], energies)
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn deltas(&self) -> &[Complex64] {
        &self.deltas
    }

    pub fn energies(&self) -> (f64, f64) {
        self.energies
    }

    pub fn kappa_abs(&self) -> f64 {
        self.deltas.iter().map(|d| d.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn phi(&self) -> f64 {
        self.kappa_abs().atan()
    }

    pub fn register(&self) -> Register {
        Register::single(self.n_levels).expect("n_levels >= 3")
    }
}

/// `|k⟩⟨l|` on a single `n_levels` site.
pub fn ladder(n_levels: usize, k: usize, l: usize) -> Result<Operator> {
    if n_levels < 2 || k >= n_levels || l >= n_levels {
        return Err(Error::LevelOutOfRange { n_levels, k, l });
    }
    let reg = Register::single(n_levels)?;
    Ok(Operator::from_fn(reg, |r, c| {
        if r == k && c == l {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

fn unit(n: usize, k: usize, l: usize) -> Operator {
    ladder(n, k, l).expect("levels validated by LeakageModel")
}

/// Occupation `n_k = |k⟩⟨k|`.
pub fn number_op(n_levels: usize, k: usize) -> Result<Operator> {
    ladder(n_levels, k, k)
}

/// `X = c₀†c₁ + c₁†c₀`
fn x_op(n: usize) -> Operator {
    &unit(n, 0, 1) + &unit(n, 1, 0)
}

/// `Σ_j δ_j c₁†c_j + h.c.` (unnormalized Y)
fn leak_coupling(m: &LeakageModel) -> Operator {
    let n = m.n_levels;
    let mut acc = Operator::zeros(m.register());
    for (idx, &d) in m.deltas.iter().enumerate() {
        let j = idx + 2;
        let term = &unit(n, 1, j) * d;
        acc = &(&acc + &term) + &term.adjoint();
    }
    acc
}

/// `i Σ_j (δ_j* c_j†c₀ − h.c.)` (unnormalized Z)
fn rotation_generator(m: &LeakageModel) -> Operator {
    let n = m.n_levels;
    let mut acc = Operator::zeros(m.register());
    for (idx, &d) in m.deltas.iter().enumerate() {
        let j = idx + 2;
        let term = &unit(n, j, 0) * d.conj();
        acc = &(&acc + &term) - &term.adjoint();
    }
    &acc * Complex64::new(0.0, 1.0)
}

pub fn actual_h1(m: &LeakageModel) -> Operator {
    &(&x_op(m.n_levels) + &leak_coupling(m)) * m.f
}

/// `f√(1+|κ|²)·X`
pub fn ideal_h1(m: &LeakageModel) -> Operator {
    let k = m.kappa_abs();
    &x_op(m.n_levels) * (m.f * (1.0 + k * k).sqrt())
}

/// `H₂ = ε₁n₁ + ε₂n₂`
pub fn h2(m: &LeakageModel) -> Operator {
    let (e1, e2) = m.energies;
    let n = m.n_levels;
    &(&unit(n, 1, 1) * e1) + &(&unit(n, 2, 2) * e2)
}

/// The {X, Y, Z} triple of the leakage drive. Requires `|κ| > 0`.
pub fn leakage_triple(m: &LeakageModel) -> Result<OperatorTriple> {
    let k = m.kappa_abs();
    if k == 0.0 {
        return Err(Error::InvalidModel("leakage triple needs |kappa| > 0".into()));
    }
    OperatorTriple::new(
        x_op(m.n_levels),
        &leak_coupling(m) * (1.0 / k),
        &rotation_generator(m) * (1.0 / k),
    )
}

/// `𝒱 = e^{-iφZ} = exp[(φ/|κ|) Σ_j (δ_j* c_j†c₀ − h.c.)]`.
///
/// Returns the identity with `trivial = true` when `|κ| = 0`.
pub fn dressing_v(m: &LeakageModel) -> Dressing {
    let k = m.kappa_abs();
    if k == 0.0 {
        return Dressing {
            unitary: Operator::identity(m.register()),
            trivial: true,
        };
    }
    let z = &rotation_generator(m) * (1.0 / k);
    Dressing {
        unitary: unitary_from_generator(&z, m.phi()).expect("Z is Hermitian by construction"),
        trivial: false,
    }
}

/// `op_distance(H₁, 𝒱 H₁^id 𝒱†)`
pub fn verify_h1_dressing(m: &LeakageModel) -> f64 {
    let v = dressing_v(m).unitary;
    let transformed = ideal_h1(m).conjugated_by(&v).expect("same register");
    op_distance(&actual_h1(m), &transformed).expect("same register")
}

/// Dressed image `𝒱|Φ^id⟩` of an ideal state.
pub fn dressed_state(m: &LeakageModel, ideal: &StateVector) -> Result<StateVector> {
    dressing_v(m).unitary.apply(ideal)
}

/// Ideal qubit state `a|0⟩ + b|1⟩` on the model's levels.
pub fn ideal_qubit_state(m: &LeakageModel, a: Complex64, b: Complex64) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); m.n_levels];
    amps[0] = a;
    amps[1] = b;
    StateVector::new(m.register(), amps).expect("length matches register")
}

/// Projective readout of the undressed level `|1⟩`: returns `|⟨1|ψ⟩|²`.
pub fn level_one_probability(state: &StateVector) -> f64 {
    state.amplitude(1).norm_sqr()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGateCheck {
    /// `2π/ε₂`
    pub t_star: f64,
    /// `2π·ε₁/ε₂`
    pub theta_eff: f64,
    /// `op_distance(e^{-iH₂t*}, e^{-iθ_eff n₁})`
    pub residual: f64,
}

/// Evolving under `H₂` for `2π/ε₂` removes the `n₂` phase and leaves a
/// phase gate on level 1.
pub fn phase_gate_check(m: &LeakageModel) -> PhaseGateCheck {
    let (e1, e2) = m.energies;
    let t_star = 2.0 * PI / e2;
    let theta_eff = 2.0 * PI * e1 / e2;
    let evolved = unitary_from_generator(&h2(m), t_star).expect("H2 is Hermitian");
    let gate = unitary_from_generator(&unit(m.n_levels, 1, 1), theta_eff).expect("n1 is Hermitian");
    PhaseGateCheck {
        t_star,
        theta_eff,
        residual: op_distance(&evolved, &gate).expect("same register"),
    }
}

/// `op_distance(𝒱_k†𝒱_l† (n₁⊗n₁) 𝒱_l𝒱_k, n₁⊗n₁)` on `Register[N_k, N_l]`.
pub fn ising_invariance(mk: &LeakageModel, ml: &LeakageModel) -> f64 {
    let reg = Register::new(vec![mk.n_levels, ml.n_levels]).expect("valid levels");
    let vk = embed(&dressing_v(mk).unitary, &[0], &reg).expect("site 0");
    let vl = embed(&dressing_v(ml).unitary, &[1], &reg).expect("site 1");
    let ising = kron(&unit(mk.n_levels, 1, 1), &unit(ml.n_levels, 1, 1));
    let both = &vl * &vk;
    let transformed = ising.conjugated_by(&both.adjoint()).expect("same register");
    op_distance(&transformed, &ising).expect("same register")
}
