use crate::error::{Error, Result};

/// Ordered list of local site dimensions spanning a tensor-product space.
///
/// Site 0 is the most significant digit of a flat basis index, so
/// `kron(a, b)` places `a` on the leading sites.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Register {
    dims: Vec<usize>,
    total_dim: usize,
}

impl Register {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyRegister);
        }
        if let Some((site, &dim)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::SiteDimension { site, dim });
        }
        let total_dim = dims.iter().product();
        Ok(Self { dims, total_dim })
    }

    /// `n` spin-1/2 sites.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn concat(&self, other: &Register) -> Register {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Register {
            total_dim: self.total_dim * other.total_dim,
            dims,
        }
    }

    /// Row-major strides: `index = Σ digit[s] * stride[s]`.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for s in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.dims[s + 1];
        }
        strides
    }

    pub(crate) fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.dims.len() {
            return Err(Error::SiteOutOfRange {
                site,
                len: self.dims.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn ensure_same(&self, other: &Register) -> Result<()> {
        if self != other {
            return Err(Error::RegisterMismatch {
                left: self.dims.clone(),
                right: other.dims.clone(),
            });
        }
        Ok(())
    }
}
