use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("register must have at least one site")]
    EmptyRegister,
    #[error("site dimension {dim} at index {site} is below 2")]
    SiteDimension { site: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("registers differ: {left:?} vs {right:?}")]
    RegisterMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("duplicate site index {0}")]
    DuplicateSite(usize),
    #[error("site index {site} out of range for a register of {len} sites")]
    SiteOutOfRange { site: usize, len: usize },
    #[error("operator is not Hermitian (relative residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("invalid su(2) triple: r1 = {r1:e}, r2 = {r2:e}")]
    InvalidTriple { r1: f64, r2: f64 },
    #[error("level index ({k}, {l}) out of range for {n_levels} levels")]
    LevelOutOfRange { n_levels: usize, k: usize, l: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("logical amplitudes are not normalized (|a|^2 + |b|^2 = {norm_sqr})")]
    Unnormalized { norm_sqr: f64 },
    #[error("gate pair ({k}, {l}) is not in the allowed set")]
    PairNotAllowed { k: usize, l: usize },
    #[error("circuit mixes actual and ideal gates")]
    MixedBasis,
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
