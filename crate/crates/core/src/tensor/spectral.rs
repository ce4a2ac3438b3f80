use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{Operator, StateVector};
use crate::error::{Error, Result};

pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Eigenvalues in ascending order with matching orthonormal eigenvector
/// columns.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Eigensystem {
    /// ‖h − Q Λ Q†‖_F / max(1, ‖h‖_F)
    pub fn reconstruction_residual(&self, h: &Operator) -> f64 {
        let lambda = DMatrix::from_fn(self.values.len(), self.values.len(), |i, j| {
            if i == j {
                Complex64::new(self.values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let rebuilt = &self.vectors * lambda * self.vectors.adjoint();
        (h.matrix() - rebuilt).norm() / h.frobenius_norm().max(1.0)
    }

    /// ‖Q† Q − I‖_F
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.vectors.ncols();
        (self.vectors.adjoint() * &self.vectors - DMatrix::<Complex64>::identity(n, n)).norm()
    }
}

fn require_hermitian(h: &Operator) -> Result<()> {
    let residual = h.hermiticity_residual();
    if residual >= super::HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

pub fn hermitian_eigensystem(h: &Operator) -> Result<Eigensystem> {
    require_hermitian(h)?;
    let eig = SymmetricEigen::new(h.matrix().clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let n = h.dim();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Eigensystem { values, vectors })
}

/// `e^{-iθk}` for Hermitian `k`.
///
/// The generator is split into the connected blocks of its coupling graph
/// (indices linked by a nonzero entry) and each block is exponentiated by
/// eigendecomposition. Entries between blocks are exactly zero, so levels
/// the generator does not touch are left exactly invariant and diagonal
/// generators are exponentiated entrywise.
pub fn unitary_from_generator(k: &Operator, theta: f64) -> Result<Operator> {
    require_hermitian(k)?;
    let n = k.dim();
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for block in coupled_blocks(k) {
        if let [i] = block[..] {
            out[(i, i)] = Complex64::new(0.0, -theta * k.get(i, i).re).exp();
            continue;
        }
        let m = block.len();
        let sub = DMatrix::from_fn(m, m, |r, c| k.get(block[r], block[c]));
        let eig = SymmetricEigen::new(sub);
        let phases: Vec<Complex64> = eig
            .eigenvalues
            .iter()
            .map(|&lambda| Complex64::new(0.0, -theta * lambda).exp())
            .collect();
        let q = &eig.eigenvectors;
        let scaled = DMatrix::from_fn(m, m, |r, c| q[(r, c)] * phases[c]);
        let u = scaled * q.adjoint();
        for (r, &gr) in block.iter().enumerate() {
            for (c, &gc) in block.iter().enumerate() {
                out[(gr, gc)] = u[(r, c)];
            }
        }
    }
    Operator::new(k.register().clone(), out)
}

/// Connected components of the graph with an edge wherever `k[i][j] != 0`.
fn coupled_blocks(k: &Operator) -> Vec<Vec<usize>> {
    let n = k.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let zero = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if k.get(i, j) != zero || k.get(j, i) != zero {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[root]].push(i);
    }
    blocks
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub state: StateVector,
    /// Spectral gap above the lowest eigenvalue (0 for a 1-dimensional space).
    pub gap: f64,
    pub degenerate: bool,
}

pub fn ground_state(h: &Operator, degeneracy_tol: f64) -> Result<GroundState> {
    let eig = hermitian_eigensystem(h)?;
    let energy = eig.values[0];
    let gap = eig.values.get(1).map_or(0.0, |&e1| e1 - energy);
    let degenerate = eig.values.len() > 1 && gap < degeneracy_tol;
    let state = StateVector::from_parts(h.register().clone(), eig.vectors.column(0).into_owned());
    Ok(GroundState {
        energy,
        state,
        gap,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{op_distance, Register};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta_zero_is_identity() {
        let reg = Register::qubits(1).unwrap();
        let x = Operator::from_real_rows(reg.clone(), &[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let u = unitary_from_generator(&x, 0.0).unwrap();
        assert!(op_distance(&u, &Operator::identity(reg)).unwrap() < 1e-15);
    }

    #[test]
    fn half_sigma_z_at_pi() {
        let reg = Register::qubits(1).unwrap();
        let sz = Operator::from_real_rows(reg.clone(), &[&[0.5, 0.0], &[0.0, -0.5]]).unwrap();
        let u = unitary_from_generator(&sz, std::f64::consts::PI).unwrap();
        // closed form: diag(e^{-iπ/2}, e^{iπ/2}) = diag(-i, i)
        let expected = Operator::diagonal(reg, &[c(0.0, -1.0), c(0.0, 1.0)]).unwrap();
        assert!(op_distance(&u, &expected).unwrap() < 1e-15);
    }

    #[test]
    fn non_hermitian_generator_rejected() {
        let reg = Register::qubits(1).unwrap();
        let a = Operator::from_real_rows(reg, &[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            unitary_from_generator(&a, 1.0),
            Err(Error::NotHermitian { .. })
        ));
        assert!(hermitian_eigensystem(&a).is_err());
    }

    #[test]
    fn diagonal_sorted() {
        let reg = Register::single(4).unwrap();
        let d = Operator::from_real_rows(
            reg,
            &[
                &[3.0, 0.0, 0.0, 0.0],
                &[0.0, -1.0, 0.0, 0.0],
                &[0.0, 0.0, 2.0, 0.0],
                &[0.0, 0.0, 0.0, 0.5],
            ],
        )
        .unwrap();
        let eig = hermitian_eigensystem(&d).unwrap();
        assert_eq!(eig.values, vec![-1.0, 0.5, 2.0, 3.0]);
    }

    #[test]
    fn sigma_x_eigenvalues() {
        let reg = Register::qubits(1).unwrap();
        let x = Operator::from_real_rows(reg, &[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let eig = hermitian_eigensystem(&x).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!(eig.reconstruction_residual(&x) < 1e-15);
    }

    #[test]
    fn ground_state_of_diagonal() {
        let reg = Register::single(3).unwrap();
        let d = Operator::diagonal(reg, &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let gs = ground_state(&d, DEFAULT_DEGENERACY_TOL).unwrap();
        assert_eq!(gs.energy, 0.0);
        assert!((gs.state.amplitude(0).norm() - 1.0).abs() < 1e-15);
        assert!(!gs.degenerate);
        assert!((gs.gap - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uncoupled_levels_stay_fixed() {
        // generator couples 0 <-> 2 only
        let reg = Register::single(3).unwrap();
        let g = Operator::from_fn(reg, |r, col| match (r, col) {
            (0, 2) => c(0.0, -0.7),
            (2, 0) => c(0.0, 0.7),
            (1, 1) => c(0.4, 0.0),
            _ => c(0.0, 0.0),
        });
        let u = unitary_from_generator(&g, 1.3).unwrap();
        assert_eq!(u.get(1, 0), c(0.0, 0.0));
        assert_eq!(u.get(0, 1), c(0.0, 0.0));
        assert_eq!(u.get(1, 1), c(0.0, -1.3 * 0.4).exp());
        assert!(u.unitarity_residual() < 1e-15);
    }

    #[test]
    fn identity_is_degenerate() {
        let id = Operator::identity(Register::qubits(2).unwrap());
        let gs = ground_state(&id, DEFAULT_DEGENERACY_TOL).unwrap();
        assert!(gs.degenerate);
    }
}
