//! Self-contained complex scalar, matrix, and Hermitian eigensolver layer.
//!
//! Every other module builds on these types; no external linear algebra is
//! assumed. All values are immutable after construction and every operation
//! is a pure function.

mod complex;
mod eigen;
mod mat;

pub use complex::Complex;
pub use eigen::{cluster_eigenvalues, hermitian_eigen, singular_values, Spectrum, MAX_SWEEPS};
pub use mat::{BlockMatrix, Mat};

/// Default tolerance for floating comparisons, overridable per call.
pub const DEFAULT_TOL: f64 = 1e-9;
