//! Heisenberg exchange with a Dzyaloshinskii-Moriya anisotropy.
//!
//! The actual two-spin interaction is
//!
//! ```text
//! H_kl = J{S_k·S_l + D·(S_k×S_l) + γ(S_k·D)(S_l·D)},  γ = (√(1+|D|²) − 1)/|D|²
//! ```
//!
//! and it is unitarily equivalent to the isotropic `H_kl^id = √(1+|D|²) J S_k·S_l`
//! through either a two-site rotation `W_kl = e^{-iε/2 n·(S_k−S_l)}` or a
//! single-site rotation `V_l = e^{iε n·S_l}`, with `ε = arctan|D|` and
//! `n = D/|D|`:
//!
//! ```text
//! H_kl = W_kl† H_kl^id W_kl = V_l† H_kl^id V_l = V_k H_kl^id V_k†
//! ```
//!
//! The cross product is right-handed in the `(k, l)` order of the pair. The
//! sign of `ε` is fixed once by [`convention`], which checks the W-form
//! numerically on a reference vector.

use std::sync::OnceLock;

use crate::dressing::Dressing;
use crate::error::{Error, Result};
use crate::spin::{
    local_cross_along, local_dot, local_product_along, norm3, site_rotation, site_spin, Vec3,
};
use crate::su2::OperatorTriple;
use crate::tensor::{embed, op_distance, Operator, Register};

/// Dzyaloshinskii-Moriya vector together with its derived angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DMVector {
    d: Vec3,
}

impl DMVector {
    pub fn new(d: Vec3) -> Result<Self> {
        if d.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidModel(format!("DM vector must be finite, got {d:?}")));
        }
        Ok(Self { d })
    }

    pub fn zero() -> Self {
        Self { d: [0.0; 3] }
    }

    pub fn d(&self) -> Vec3 {
        self.d
    }

    pub fn d_abs(&self) -> f64 {
        norm3(self.d)
    }

    /// Unit axis `D/|D|`, or `None` for the isotropic case.
    pub fn axis(&self) -> Option<Vec3> {
        let a = self.d_abs();
        (a > 0.0).then(|| [self.d[0] / a, self.d[1] / a, self.d[2] / a])
    }

    pub fn epsilon(&self) -> f64 {
        self.d_abs().atan()
    }

    /// `(√(1+|D|²) − 1)/|D|²`, evaluated as `1/(√(1+|D|²) + 1)` so the
    /// `|D| → 0` limit of 1/2 needs no special case.
    pub fn gamma(&self) -> f64 {
        1.0 / ((1.0 + self.d_abs().powi(2)).sqrt() + 1.0)
    }

    /// `√(1+|D|²)`
    pub fn scale(&self) -> f64 {
        (1.0 + self.d_abs().powi(2)).sqrt()
    }
}

/// A spin pair `(k, l)` coupled by exchange `J` on a spin-1/2 register.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangePair {
    pub j: f64,
    pub dm: DMVector,
    k: usize,
    l: usize,
    register: Register,
}

impl ExchangePair {
    pub fn new(j: f64, dm: DMVector, k: usize, l: usize, register: Register) -> Result<Self> {
        register.check_site(k)?;
        register.check_site(l)?;
        if k == l {
            return Err(Error::DuplicateSite(k));
        }
        if let Some((site, &dim)) = register.dims().iter().enumerate().find(|(_, &d)| d != 2) {
            return Err(Error::InvalidModel(format!(
                "exchange needs spin-1/2 sites, site {site} has dimension {dim}"
            )));
        }
        if !j.is_finite() {
            return Err(Error::InvalidModel(format!("J must be finite, got {j}")));
        }
        Ok(Self {
            j,
            dm,
            k,
            l,
            register,
        })
    }

    /// Two spins, `k = 0`, `l = 1`.
    pub fn two_spin(j: f64, dm: DMVector) -> Self {
        Self::new(j, dm, 0, 1, Register::qubits(2).expect("two qubits")).expect("valid pair")
    }

    pub fn sites(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn register(&self) -> &Register {
        &self.register
    }
}

/// 4×4 actual interaction on (k, l), before embedding.
pub fn local_actual(j: f64, dm: &DMVector) -> Operator {
    let d = dm.d();
    let iso = local_dot();
    let dm_term = local_cross_along(d);
    let sym = &local_product_along(d, d) * dm.gamma();
    &(&(&iso + &dm_term) + &sym) * j
}

/// 4×4 scaled isotropic interaction.
pub fn local_ideal(j: f64, dm: &DMVector) -> Operator {
    &local_dot() * (j * dm.scale())
}

pub fn actual_hkl(p: &ExchangePair) -> Operator {
    embed(&local_actual(p.j, &p.dm), &[p.k, p.l], &p.register).expect("pair validated")
}

pub fn ideal_hkl(p: &ExchangePair) -> Operator {
    embed(&local_ideal(p.j, &p.dm), &[p.k, p.l], &p.register).expect("pair validated")
}

/// Sign convention for `ε`, fixed by checking the W-form numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convention {
    /// `+1` when the dressing formulas hold as written, `−1` if flipped.
    pub epsilon_sign: f64,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

/// Reference vector used to pin the sign convention.
const REFERENCE_D: Vec3 = [0.3, -0.2, 0.5];

fn w_residual_with_sign(sign: f64) -> f64 {
    let dm = DMVector { d: REFERENCE_D };
    let p = ExchangePair::two_spin(1.0, dm);
    let w = w_unitary(&p, sign);
    let transformed = ideal_hkl(&p).conjugated_by(&w.adjoint()).expect("same register");
    op_distance(&actual_hkl(&p), &transformed).expect("same register")
}

pub fn convention() -> Convention {
    static CONVENTION: OnceLock<Convention> = OnceLock::new();
    *CONVENTION.get_or_init(|| {
        let residual_plus = w_residual_with_sign(1.0);
        let residual_minus = w_residual_with_sign(-1.0);
        let epsilon_sign = if residual_plus < 1e-12 {
            1.0
        } else if residual_minus < 1e-12 {
            -1.0
        } else {
            panic!(
                "neither sign of epsilon reproduces the exchange dressing \
                 (+: {residual_plus:e}, -: {residual_minus:e})"
            )
        };
        Convention {
            epsilon_sign,
            residual_plus,
            residual_minus,
        }
    })
}

/// Signed dressing angle `±ε` under the module convention.
pub fn signed_epsilon(dm: &DMVector) -> f64 {
    convention().epsilon_sign * dm.epsilon()
}

fn w_unitary(p: &ExchangePair, sign: f64) -> Operator {
    let Some(n) = p.dm.axis() else {
        return Operator::identity(p.register.clone());
    };
    let half = 0.5 * sign * p.dm.epsilon();
    let rk = site_rotation(&p.register, p.k, n, half).expect("site k");
    let rl = site_rotation(&p.register, p.l, n, -half).expect("site l");
    &rk * &rl
}

/// `W_kl = e^{-iε/2 n·(S_k − S_l)}`, built as a product of single-site
/// rotations.
pub fn w_dressing(p: &ExchangePair) -> Dressing {
    Dressing {
        unitary: w_unitary(p, convention().epsilon_sign),
        trivial: p.dm.axis().is_none(),
    }
}

/// `V_l = e^{iε n·S_l}` on `register`.
pub fn v_dressing(dm: &DMVector, l: usize, register: &Register) -> Result<Dressing> {
    register.check_site(l)?;
    let Some(n) = dm.axis() else {
        return Ok(Dressing {
            unitary: Operator::identity(register.clone()),
            trivial: true,
        });
    };
    Ok(Dressing {
        unitary: site_rotation(register, l, n, -signed_epsilon(dm))?,
        trivial: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeResiduals {
    /// `H` vs `W† H^id W`
    pub r_w: f64,
    /// `H` vs `V_l† H^id V_l`
    pub r_vl: f64,
    /// `H` vs `V_k H^id V_k†`
    pub r_vk: f64,
}

impl ExchangeResiduals {
    pub fn max(&self) -> f64 {
        self.r_w.max(self.r_vl).max(self.r_vk)
    }
}

pub fn verify_exchange_dressing(p: &ExchangePair) -> ExchangeResiduals {
    let actual = actual_hkl(p);
    let ideal = ideal_hkl(p);
    let w = w_dressing(p).unitary;
    let vl = v_dressing(&p.dm, p.l, &p.register).expect("site l").unitary;
    let vk = v_dressing(&p.dm, p.k, &p.register).expect("site k").unitary;
    let dist = |u: &Operator| {
        let t = ideal.conjugated_by(u).expect("same register");
        op_distance(&actual, &t).expect("same register")
    };
    ExchangeResiduals {
        r_w: dist(&w.adjoint()),
        r_vl: dist(&vl.adjoint()),
        r_vk: dist(&vk),
    }
}

/// The two su(2)-like triples behind the W- and V-dressings:
///
/// - A: `X = S_k·S_l − (S_k·n)(S_l·n)`, `Y = n·(S_k×S_l)`, `Z = ½ n·(S_l − S_k)`
/// - B: same `X`, `Y`, with `Z = n·S_l`; violates `[X, Y] = iZ`.
///
/// Requires `|D| > 0`.
pub fn exchange_triples(p: &ExchangePair) -> Result<(OperatorTriple, OperatorTriple)> {
    let n = p
        .dm
        .axis()
        .ok_or_else(|| Error::InvalidModel("exchange triples need |D| > 0".into()))?;
    let reg = &p.register;
    let parallel = parallel_product(p, n);
    let x = &embed(&local_dot(), &[p.k, p.l], reg)? - &parallel;
    let y = embed(&local_cross_along(n), &[p.k, p.l], reg)?;
    let sk = site_spin(reg, p.k, n)?;
    let sl = site_spin(reg, p.l, n)?;
    let z_a = &(&sl - &sk) * 0.5;
    let a = OperatorTriple::new(x.clone(), y.clone(), z_a)?;
    let b = OperatorTriple::new(x, y, sl)?;
    Ok((a, b))
}

/// `(S_k·n)(S_l·n)` embedded on the pair's register.
pub fn parallel_product(p: &ExchangePair, n: Vec3) -> Operator {
    embed(&local_product_along(n, n), &[p.k, p.l], &p.register).expect("pair validated")
}

/// Total spin component `n·(S_k + S_l)` of the pair.
pub fn pair_spin(p: &ExchangePair, n: Vec3) -> Operator {
    let sk = site_spin(&p.register, p.k, n).expect("site k");
    let sl = site_spin(&p.register, p.l, n).expect("site l");
    &sk + &sl
}
