//! Three-spin encoded qubits under anisotropic exchange.
//!
//! Logical qubit `l` (1-based) lives on spins `3l−2, 3l−1, 3l`, in the two
//! total-spin-1/2 states with projection +1/2 along a quantization axis `n`:
//!
//! ```text
//! |0_L⟩ = |s⟩₁₂|↑⟩₃
//! |1_L⟩ = √(2/3)|↑↑↓⟩ − √(1/3)|t⟩₁₂|↑⟩₃
//! ```
//!
//! The dressed logical states are `|Φ⟩_l = V_{3l−2,3l}†|Φ^id⟩_l` with
//! `V_{3l−2,3l} = W_{3l−2,3l}²`. Under that dressing, the actual exchange
//! gates on the pairs returned by [`allowed_pairs`] have the same matrix
//! elements as the scaled isotropic gates in the ideal basis.
//!
//! Spin labels in this module's public API are 1-based, as in the usual
//! encoding diagrams; they are mapped to 0-based register sites internally.

mod circuit;
mod gates;
mod readout;

pub use circuit::{random_circuit, simulate_circuit, CircuitOutcome, CircuitSpec};
pub use gates::{
    find_swap_angle, gate_unitary, relocate_34_to_15, swap_relocation_residual,
    verify_gate_equivalence, Basis, GateSpec, IdealGenerator, SwapScan,
};
pub use readout::{prepare_logical_zero, singlet_measurement_probability, Preparation};

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::dressing::Dressing;
use crate::error::{Error, Result};
use crate::exchange::{signed_epsilon, DMVector};
use crate::spin::{cross3, norm3, site_rotation, Vec3};
use crate::tensor::{Operator, Register, StateVector};

const Z_AXIS: Vec3 = [0.0, 0.0, 1.0];

/// One encoded qubit: block index `l ≥ 1` and its quantization axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodedBlock {
    index: usize,
    axis: Vec3,
}

impl EncodedBlock {
    pub fn new(index: usize, axis: Vec3) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidModel("block indices start at 1".into()));
        }
        let len = norm3(axis);
        if !(len.is_finite() && len > 0.0) {
            return Err(Error::InvalidModel(format!("block axis must be nonzero, got {axis:?}")));
        }
        Ok(Self {
            index,
            axis: [axis[0] / len, axis[1] / len, axis[2] / len],
        })
    }

    /// Block quantized along `D/|D|`, or along z when `D = 0`.
    pub fn along_dm(index: usize, dm: &DMVector) -> Result<Self> {
        Self::new(index, dm.axis().unwrap_or(Z_AXIS))
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    /// 1-based spin labels `(3l−2, 3l−1, 3l)`.
    pub fn spins(&self) -> [usize; 3] {
        let l = self.index;
        [3 * l - 2, 3 * l - 1, 3 * l]
    }

    /// 0-based register sites.
    pub fn sites(&self) -> [usize; 3] {
        self.spins().map(|s| s - 1)
    }

    /// The same block relabeled as block 1 of its own 3-spin register.
    pub fn local(&self) -> Self {
        Self {
            index: 1,
            axis: self.axis,
        }
    }
}

/// Register of `n_blocks` encoded qubits (3 spins each).
pub fn block_register(n_blocks: usize) -> Result<Register> {
    if n_blocks == 0 {
        return Err(Error::InvalidModel("need at least one block".into()));
    }
    Register::qubits(3 * n_blocks)
}

/// Exchange pairs (1-based labels) usable as gates on `n_blocks` encoded
/// qubits: `(3l−2, 3l−1)` and `(3l−1, 3l)` inside each block, and the
/// nearest-neighbor pairs `(3l−2, 3l+2)`, `(3l−1, 3l+3)` between adjacent
/// blocks of the row layout.
pub fn allowed_pairs(n_blocks: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(4 * n_blocks);
    for l in 1..=n_blocks {
        pairs.push((3 * l - 2, 3 * l - 1));
        pairs.push((3 * l - 1, 3 * l));
    }
    for l in 1..n_blocks {
        pairs.push((3 * l - 2, 3 * l + 2));
        pairs.push((3 * l - 1, 3 * l + 3));
    }
    pairs
}

/// Number of blocks needed to host a 1-based spin label.
pub fn block_of(spin: usize) -> usize {
    spin.div_ceil(3)
}

/// Global rotation taking ẑ to `n`, as a 2×2 single-spin unitary.
fn axis_rotation(n: Vec3) -> Operator {
    let m = cross3(Z_AXIS, n);
    let sin = norm3(m);
    let cos = n[2];
    if sin < 1e-15 {
        if cos > 0.0 {
            return Operator::identity(Register::qubits(1).expect("one qubit"));
        }
        return crate::spin::rotation([1.0, 0.0, 0.0], PI);
    }
    let m = [m[0] / sin, m[1] / sin, m[2] / sin];
    crate::spin::rotation(m, sin.atan2(cos))
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(|0_L⟩, |1_L⟩)` quantized along the block axis, on a 3-spin register.
pub fn logical_basis(block: &EncodedBlock) -> (StateVector, StateVector) {
    let reg = Register::qubits(3).expect("three qubits");
    // index = 4·s1 + 2·s2 + s3 with 0 = ↑
    let h = FRAC_1_SQRT_2;
    let mut zero = vec![c(0.0); 8];
    zero[0b010] = c(h);
    zero[0b100] = c(-h);
    let mut one = vec![c(0.0); 8];
    one[0b001] = c((2.0f64 / 3.0).sqrt());
    let t = -(1.0f64 / 6.0).sqrt();
    one[0b010] = c(t);
    one[0b100] = c(t);
    let zero = StateVector::new(reg.clone(), zero).expect("8 amplitudes");
    let one = StateVector::new(reg.clone(), one).expect("8 amplitudes");
    if block.axis == Z_AXIS {
        return (zero, one);
    }
    let r = axis_rotation(block.axis);
    let global = [0, 1, 2]
        .iter()
        .map(|&s| crate::tensor::embed(&r, &[s], &reg).expect("site"))
        .reduce(|a, b| &a * &b)
        .expect("three sites");
    (
        global.apply(&zero).expect("same register"),
        global.apply(&one).expect("same register"),
    )
}

/// `a|0_L⟩ + b|1_L⟩` for the block, on a 3-spin register.
pub fn ideal_logical_state(a: Complex64, b: Complex64, block: &EncodedBlock) -> Result<StateVector> {
    check_amplitudes(a, b)?;
    let (zero, one) = logical_basis(block);
    zero.combine(a, &one, b)
}

fn check_amplitudes(a: Complex64, b: Complex64) -> Result<()> {
    let norm_sqr = a.norm_sqr() + b.norm_sqr();
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() >= 1e-12 {
        return Err(Error::Unnormalized { norm_sqr });
    }
    Ok(())
}

/// `V_{3l−2,3l} = e^{-iε n·S_{3l−2}} e^{iε n·S_{3l}}` on `reg`.
pub fn block_dressing(dm: &DMVector, block: &EncodedBlock, reg: &Register) -> Result<Dressing> {
    let [first, _, last] = block.sites();
    reg.check_site(last)?;
    let Some(n) = dm.axis() else {
        return Ok(Dressing {
            unitary: Operator::identity(reg.clone()),
            trivial: true,
        });
    };
    let eps = signed_epsilon(dm);
    let unitary = &site_rotation(reg, first, n, eps)? * &site_rotation(reg, last, n, -eps)?;
    Ok(Dressing {
        unitary,
        trivial: false,
    })
}

/// Product of the block dressings of every block on `n_blocks` encoded
/// qubits.
pub fn register_dressing(dm: &DMVector, n_blocks: usize) -> Result<Operator> {
    let reg = block_register(n_blocks)?;
    let mut acc = Operator::identity(reg.clone());
    for l in 1..=n_blocks {
        let block = EncodedBlock::along_dm(l, dm)?;
        acc = &acc * &block_dressing(dm, &block, &reg)?.unitary;
    }
    Ok(acc)
}

/// Dressed logical state `V_{3l−2,3l}†(a|0_L⟩ + b|1_L⟩)` on a 3-spin
/// register.
pub fn dressed_state(a: Complex64, b: Complex64, dm: &DMVector, block: &EncodedBlock) -> Result<StateVector> {
    let ideal = ideal_logical_state(a, b, block)?;
    let local = block.local();
    let reg = ideal.register().clone();
    block_dressing(dm, &local, &reg)?.unitary.adjoint().apply(&ideal)
}
