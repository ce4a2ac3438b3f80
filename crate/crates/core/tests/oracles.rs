//! Cross-checks against constructions that share no code with the library's
//! eigendecomposition path: scaling-and-squaring Taylor exponentials,
//! closed-form spin rotations and hand-built operators.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use dressed_core::encoded::{logical_basis, EncodedBlock};
use dressed_core::exchange::{actual_hkl, ideal_hkl, local_actual, signed_epsilon, DMVector, ExchangePair};
use dressed_core::leakage::{actual_h1, ideal_h1, LeakageModel};
use dressed_core::sampling::{physical_dm, stream_rng, unit_vector, uniform};
use dressed_core::spin::{rotation, spin_along, spin_matrices};
use dressed_core::{kron, unitary_from_generator, Operator, Register};

type M = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// e^{-iθK} by scaling and squaring a 30-term Taylor series.
fn expm_taylor(k: &M, theta: f64) -> M {
    let n = k.nrows();
    let a = k * c(0.0, -theta);
    let norm = a.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
    let s = norm.log2().ceil().max(0.0) as i32 + 1;
    let a = &a * c(0.5f64.powi(s), 0.0);
    let mut term = M::identity(n, n);
    let mut sum = M::identity(n, n);
    for j in 1..30 {
        term = &term * &a * c(1.0 / j as f64, 0.0);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

fn dist(a: &M, b: &M) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}

#[test]
fn exponential_matches_taylor() {
    let mut rng = stream_rng(100, 0);
    let reg = Register::qubits(3).unwrap();
    for _ in 0..5 {
        let raw = M::from_fn(8, 8, |_, _| c(uniform(&mut rng, -1.0, 1.0), uniform(&mut rng, -1.0, 1.0)));
        let h = (&raw + raw.adjoint()) * c(0.5, 0.0);
        let op = Operator::new(reg.clone(), h.clone()).unwrap();
        let theta = uniform(&mut rng, -3.0, 3.0);
        let u = unitary_from_generator(&op, theta).unwrap();
        assert!(dist(u.matrix(), &expm_taylor(&h, theta)) < 1e-12);
    }
}

#[test]
fn spin_rotation_closed_form() {
    // e^{-iθ n·S} = cos(θ/2) − 2i sin(θ/2) n·S
    let mut rng = stream_rng(101, 0);
    for _ in 0..20 {
        let n = unit_vector(&mut rng);
        let theta = uniform(&mut rng, -2.0 * PI, 2.0 * PI);
        let ns = spin_along(n).into_matrix();
        let expected = M::identity(2, 2) * c((theta / 2.0).cos(), 0.0) + ns * c(0.0, -2.0 * (theta / 2.0).sin());
        assert!(dist(rotation(n, theta).matrix(), &expected) < 1e-14);
    }
}

#[test]
fn exchange_hamiltonian_from_components() {
    // J{S·S + D·(S_k×S_l) + γ(S_k·D)(S_l·D)} written out component by component
    let mut rng = stream_rng(102, 0);
    let s: Vec<M> = spin_matrices().into_iter().map(Operator::into_matrix).collect();
    let k2 = |a: &M, b: &M| a.kronecker(b);
    for _ in 0..10 {
        let d = physical_dm(&mut rng);
        let v = d.d();
        let gamma = d.gamma();
        let mut h = M::zeros(4, 4);
        for sa in &s {
            h += k2(sa, sa);
        }
        h += (k2(&s[1], &s[2]) - k2(&s[2], &s[1])) * c(v[0], 0.0);
        h += (k2(&s[2], &s[0]) - k2(&s[0], &s[2])) * c(v[1], 0.0);
        h += (k2(&s[0], &s[1]) - k2(&s[1], &s[0])) * c(v[2], 0.0);
        for a in 0..3 {
            for b in 0..3 {
                h += k2(&s[a], &s[b]) * c(gamma * v[a] * v[b], 0.0);
            }
        }
        let j = uniform(&mut rng, 0.5, 2.0);
        assert!(dist(local_actual(j, &d).matrix(), &(h * c(j, 0.0))) < 1e-15);
    }
}

#[test]
fn exchange_dressing_with_taylor_rotations() {
    let mut rng = stream_rng(103, 0);
    for _ in 0..10 {
        let d = physical_dm(&mut rng);
        let p = ExchangePair::two_spin(1.0, d);
        let n = d.axis().unwrap();
        let ns = spin_along(n).into_matrix();
        let eps = signed_epsilon(&d);
        // W = e^{-iε/2 n·S_k} e^{+iε/2 n·S_l}
        let w = expm_taylor(&ns, eps / 2.0).kronecker(&expm_taylor(&ns, -eps / 2.0));
        let h = ideal_hkl(&p).into_matrix();
        let transformed = w.adjoint() * h * &w;
        assert!(dist(actual_hkl(&p).matrix(), &transformed) < 1e-12);
    }
}

#[test]
fn gamma_closed_form() {
    // γ = (√(1+d²) − 1)/d² is the same number
    for d in [0.01, 0.1, 0.4, 0.8] {
        let dm = DMVector::new([0.0, d, 0.0]).unwrap();
        let alt = ((1.0 + d * d).sqrt() - 1.0) / (d * d);
        assert!((dm.gamma() - alt).abs() < 1e-12);
    }
}

#[test]
fn three_level_dressing_by_hand() {
    // 3 levels, real δ: 𝒱 = e^{-iφZ} with Z = i(|2⟩⟨0| − |0⟩⟨2|)
    for delta in [-0.7, 0.2, 1.5] {
        let m = LeakageModel::three_level(1.3, delta, (1.0, 2.0)).unwrap();
        let phi = delta.abs().atan();
        let sign = delta.signum();
        let mut z = M::zeros(3, 3);
        z[(2, 0)] = c(0.0, sign);
        z[(0, 2)] = c(0.0, -sign);
        let v = expm_taylor(&z, phi);
        let mapped = &v * ideal_h1(&m).into_matrix() * v.adjoint();
        assert!(dist(actual_h1(&m).matrix(), &mapped) < 1e-12);
    }
}

#[test]
fn logical_states_are_spin_half_doublet() {
    // total S² = 3/4 and S_z = +1/2 for both logical states
    let s: Vec<M> = spin_matrices().into_iter().map(Operator::into_matrix).collect();
    let id = M::identity(2, 2);
    let total: Vec<M> = (0..3)
        .map(|a| {
            s[a].kronecker(&id).kronecker(&id) + id.kronecker(&s[a]).kronecker(&id) + id.kronecker(&id).kronecker(&s[a])
        })
        .collect();
    let s2 = total.iter().fold(M::zeros(8, 8), |acc, t| acc + t * t);
    let (zero, one) = logical_basis(&EncodedBlock::new(1, [0.0, 0.0, 1.0]).unwrap());
    for v in [zero, one] {
        let psi = v.amplitudes().clone();
        assert!(((&s2 * &psi) - &psi * c(0.75, 0.0)).norm() < 1e-14);
        assert!(((&total[2] * &psi) - &psi * c(0.5, 0.0)).norm() < 1e-14);
    }
}

#[test]
fn kron_against_index_formula() {
    let mut rng = stream_rng(104, 0);
    let r2 = Register::qubits(1).unwrap();
    let r3 = Register::single(3).unwrap();
    let a = Operator::from_fn(r2, |_, _| c(uniform(&mut rng, -1.0, 1.0), 0.0));
    let b = Operator::from_fn(r3, |i, j| c(i as f64, j as f64));
    let k = kron(&a, &b);
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(k.get(i, j), a.get(i / 3, j / 3) * b.get(i % 3, j % 3));
        }
    }
}
