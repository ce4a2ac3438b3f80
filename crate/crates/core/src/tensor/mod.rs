//! Dense complex linear algebra over labeled tensor-product spaces.
//!
//! Everything here is immutable after construction: operations take
//! references and return fresh values.

mod operator;
mod register;
mod spectral;
mod state;

pub use operator::{Operator, HERMITIAN_TOL, UNITARY_TOL};
pub use register::Register;
pub use spectral::{
    ground_state, hermitian_eigensystem, unitary_from_generator, Eigensystem, GroundState,
    DEFAULT_DEGENERACY_TOL,
};
pub use state::StateVector;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Kronecker product; `a` occupies the leading sites of the result.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let register = a.register().concat(b.register());
    let matrix = a.matrix().kronecker(b.matrix());
    Operator::new(register, matrix).expect("kronecker product side matches concatenated register")
}

/// Places `local` on `sites` of `reg` (in the listed order) and the
/// identity everywhere else.
pub fn embed(local: &Operator, sites: &[usize], reg: &Register) -> Result<Operator> {
    for (i, &s) in sites.iter().enumerate() {
        reg.check_site(s)?;
        if sites[..i].contains(&s) {
            return Err(Error::DuplicateSite(s));
        }
    }
    let local_dims: Vec<usize> = sites.iter().map(|&s| reg.dims()[s]).collect();
    if local.register().dims() != local_dims.as_slice() {
        return Err(Error::DimensionMismatch {
            expected: local_dims.iter().product(),
            found: local.dim(),
        });
    }

    let strides = reg.strides();
    let dims = reg.dims();
    let n = reg.total_dim();
    let local_n = local.dim();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let mut li = 0;
        let mut base = i;
        for (p, &s) in sites.iter().enumerate() {
            let d = (i / strides[s]) % dims[s];
            li = li * local_dims[p] + d;
            base -= d * strides[s];
        }
        for lj in 0..local_n {
            let entry = local.get(li, lj);
            if entry == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut j = base;
            let mut rem = lj;
            for p in (0..sites.len()).rev() {
                let d = rem % local_dims[p];
                rem /= local_dims[p];
                j += d * strides[sites[p]];
            }
            m[(i, j)] = entry;
        }
    }
    Operator::new(reg.clone(), m)
}

/// Relative Frobenius distance ‖a − b‖_F / max(1, ‖a‖_F).
pub fn op_distance(a: &Operator, b: &Operator) -> Result<f64> {
    a.register().ensure_same(b.register())?;
    Ok((a.matrix() - b.matrix()).norm() / a.frobenius_norm().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sz_half() -> Operator {
        Operator::from_real_rows(Register::qubits(1).unwrap(), &[&[0.5, 0.0], &[0.0, -0.5]])
            .unwrap()
    }

    fn sx() -> Operator {
        Operator::from_real_rows(Register::qubits(1).unwrap(), &[&[0.0, 1.0], &[1.0, 0.0]])
            .unwrap()
    }

    /// Brute-force Kronecker product by explicit index arithmetic.
    fn kron_oracle(a: &Operator, b: &Operator) -> DMatrix<Complex64> {
        let (na, nb) = (a.dim(), b.dim());
        DMatrix::from_fn(na * nb, na * nb, |i, j| {
            a.get(i / nb, j / nb) * b.get(i % nb, j % nb)
        })
    }

    #[test]
    fn kron_identity() {
        let i2 = Operator::identity(Register::qubits(1).unwrap());
        let i4 = kron(&i2, &i2);
        assert_eq!(i4, Operator::identity(Register::qubits(2).unwrap()));
    }

    #[test]
    fn kron_dimension_bookkeeping() {
        let a = Operator::identity(Register::qubits(1).unwrap());
        let b = Operator::identity(Register::single(3).unwrap());
        let ab = kron(&a, &b);
        assert_eq!(ab.register().dims(), &[2, 3]);
        assert_eq!(ab.dim(), 6);
    }

    #[test]
    fn kron_matches_embed_and_oracle() {
        let i2 = Operator::identity(Register::qubits(1).unwrap());
        let k = kron(&sz_half(), &i2);
        let e = embed(&sz_half(), &[0], &Register::qubits(2).unwrap()).unwrap();
        assert_eq!(k, e);
        assert_eq!(k.matrix(), &kron_oracle(&sz_half(), &i2));
    }

    #[test]
    fn embed_whole_space() {
        let e = embed(&sx(), &[0], &Register::qubits(1).unwrap()).unwrap();
        assert_eq!(e, sx());
    }

    #[test]
    fn embed_disjoint_commute_exactly() {
        let reg = Register::qubits(3).unwrap();
        let y = Operator::from_fn(Register::qubits(1).unwrap(), |i, j| match (i, j) {
            (0, 1) => Complex64::new(0.3, -1.7),
            (1, 0) => Complex64::new(0.3, 1.7),
            (1, 1) => c(0.25),
            _ => c(-1.1),
        });
        let a = embed(&sx(), &[0], &reg).unwrap();
        let b = embed(&y, &[2], &reg).unwrap();
        assert_eq!(a.commutator(&b).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn embed_projector_matches_index_oracle() {
        let reg = Register::new(vec![3, 3]).unwrap();
        let p1 = Operator::from_fn(Register::single(3).unwrap(), |i, j| {
            if i == 1 && j == 1 { c(1.0) } else { c(0.0) }
        });
        let e = embed(&p1, &[1], &reg).unwrap();
        let i3 = Operator::identity(Register::single(3).unwrap());
        assert_eq!(e.matrix(), &kron_oracle(&i3, &p1));
        assert_eq!(e, kron(&i3, &p1));
    }

    #[test]
    fn embed_reversed_site_order_swaps_factors() {
        let reg = Register::new(vec![2, 3]).unwrap();
        let b = Operator::from_fn(Register::single(3).unwrap(), |i, j| c((3 * i + j) as f64));
        let a = sx();
        let ab = kron(&a, &b);
        let ba = kron(&b, &a);
        assert_eq!(embed(&ab, &[0, 1], &reg).unwrap(), ab);
        assert_eq!(embed(&ba, &[1, 0], &reg).unwrap().into_matrix(), ab.into_matrix());
    }

    #[test]
    fn embed_errors() {
        let reg = Register::new(vec![2, 3]).unwrap();
        assert!(matches!(
            embed(&sx(), &[1], &reg),
            Err(Error::DimensionMismatch { .. })
        ));
        let two = kron(&sx(), &sx());
        assert_eq!(
            embed(&two, &[0, 0], &Register::qubits(2).unwrap()),
            Err(Error::DuplicateSite(0))
        );
        assert!(matches!(
            embed(&sx(), &[5], &reg),
            Err(Error::SiteOutOfRange { site: 5, len: 2 })
        ));
    }

    #[test]
    fn op_distance_basics() {
        let reg = Register::new(vec![2, 3]).unwrap();
        let id = Operator::identity(reg.clone());
        let zero = Operator::zeros(reg.clone());
        assert_eq!(op_distance(&id, &id).unwrap(), 0.0);
        assert!((op_distance(&zero, &id).unwrap() - 6f64.sqrt()).abs() < 1e-15);
        let other = Operator::identity(Register::qubits(1).unwrap());
        assert!(op_distance(&id, &other).is_err());
    }

    #[test]
    fn op_distance_relative_scaling_convention() {
        // d(a,b)·max(1,‖a‖) = d(b,a)·max(1,‖b‖) = ‖a − b‖
        let reg = Register::qubits(2).unwrap();
        let a = Operator::from_fn(reg.clone(), |i, j| Complex64::new((i + 2 * j) as f64, 0.5));
        let b = Operator::from_fn(reg, |i, j| Complex64::new(1.0 / (1 + i + j) as f64, -0.2));
        let raw = (a.matrix() - b.matrix()).norm();
        let dab = op_distance(&a, &b).unwrap() * a.frobenius_norm().max(1.0);
        let dba = op_distance(&b, &a).unwrap() * b.frobenius_norm().max(1.0);
        assert!((dab - raw).abs() < 1e-14 * raw);
        assert!((dba - raw).abs() < 1e-14 * raw);
    }
}
