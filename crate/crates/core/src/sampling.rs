//! Seeded random draws shared by the verification suites and tests.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exchange::DMVector;
use crate::spin::Vec3;

/// Lower and upper bound of the sampled |D| range.
pub const DM_RANGE: (f64, f64) = (0.01, 0.8);

/// Deterministic stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Uniform direction on the unit sphere.
pub fn unit_vector<R: Rng>(rng: &mut R) -> Vec3 {
    let cz = uniform(rng, -1.0, 1.0);
    let az = uniform(rng, 0.0, TAU);
    let s = (1.0 - cz * cz).sqrt();
    [s * az.cos(), s * az.sin(), cz]
}

/// DM vector with uniform direction and |D| uniform in `[lo, hi]`.
pub fn dm_vector<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> DMVector {
    let n = unit_vector(rng);
    let mag = uniform(rng, lo, hi);
    DMVector::new([mag * n[0], mag * n[1], mag * n[2]]).expect("finite")
}

/// DM vector in the default physical range.
pub fn physical_dm<R: Rng>(rng: &mut R) -> DMVector {
    dm_vector(rng, DM_RANGE.0, DM_RANGE.1)
}

pub fn complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(uniform(rng, -scale, scale), uniform(rng, -scale, scale))
}

/// Normalized `(a, b)` logical amplitudes.
pub fn logical_amplitudes<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    loop {
        let a = complex(rng, 1.0);
        let b = complex(rng, 1.0);
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm > 1e-3 {
            return (a / norm, b / norm);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::norm3;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: Vec<f64> = (0..4).map(|_| stream_rng(7, 1).random()).collect();
        let mut r1 = stream_rng(7, 1);
        let b: Vec<f64> = (0..4).map(|_| r1.random()).collect();
        let mut r2 = stream_rng(7, 2);
        let c: Vec<f64> = (0..4).map(|_| r2.random()).collect();
        assert_eq!(a[0], b[0]);
        assert_ne!(b, c);
    }

    #[test]
    fn dm_in_range() {
        let mut rng = stream_rng(3, 0);
        for _ in 0..200 {
            let d = physical_dm(&mut rng);
            assert!(d.d_abs() >= 0.01 - 1e-15 && d.d_abs() <= 0.8 + 1e-15);
            assert!((norm3(d.axis().unwrap()) - 1.0).abs() < 1e-14);
        }
    }
}
