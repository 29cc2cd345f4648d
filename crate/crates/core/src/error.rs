//! Error and diagnostic types shared by every module in the crate.

use serde::Serialize;
use std::fmt;

/// The defining axioms that verifiers can report violations of.
///
/// `D*` are the cover-adjacency axioms, `S*` the signature-matrix axioms,
/// and `C*` the conference-matrix axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    D1,
    D2,
    D3,
    D4,
    S1,
    S2,
    S3,
    S4,
    C1,
    C2,
    C3,
    C4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not hermitian: max entrywise deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("cluster representatives {lo} and {hi} are within twice the tolerance")]
    AmbiguousClustering { lo: f64, hi: f64 },

    #[error("{name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("discrete logarithm of the zero element")]
    ZeroElement,

    #[error("axiom {axiom} violated at block ({i}, {j}): {detail}")]
    Axiom {
        axiom: Axiom,
        i: usize,
        j: usize,
        detail: String,
    },

    #[error("squared adjacency block ({i}, {j}) is not constant off the matched positions")]
    InconsistentC { i: usize, j: usize },

    #[error("{p} is not prime")]
    NotPrime { p: u64 },

    #[error("{p} does not divide n - 2 = {value}")]
    DivisibilityFailure { p: u64, value: u64 },

    #[error("conference matrix entries are not stored as roots of unity of the requested order")]
    NotExactMode,

    #[error("block ({i}, {j}) is not an affine map x -> ex + b on Z_m")]
    NotAffine { i: usize, j: usize },

    #[error("fiber size {m} is even; the plane-rotation decomposition needs odd m")]
    EvenModulus { m: usize },

    #[error("fibers of size 1 admit no lift without the trivial constituent")]
    FiberTooSmall,

    #[error("the block group does not act transitively on the fiber")]
    NotTransitive,

    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("irreducible index {k} outside 1..={max}")]
    IndexOutOfRange { k: usize, max: usize },

    #[error("spectrum has {count} eigenvalue clusters, expected exactly two")]
    NotTwoEigenvalues { count: usize },

    #[error("matrix is not a scaled projection: deviation {deviation:.3e}")]
    NotScaledProjection { deviation: f64 },

    #[error("gram scale beta = {beta} does not exceed 1; mutually orthogonal collections are not represented")]
    DegenerateBeta { beta: f64 },

    #[error("cross-gram singular values at pair ({i}, {j}) spread {spread:.3e} beyond tolerance")]
    NotIsoclinic { i: usize, j: usize, spread: f64 },

    #[error("frame is not tight: deviation {deviation:.3e}")]
    NotTight { deviation: f64 },

    #[error("block ({i}, {j}) does not have the reflection shape [[a, b], [b, -a]]")]
    WrongBlockShape { i: usize, j: usize },

    #[error("difference residue {residue} at pair ({i}, {j}) appears {count} times, expected {expected}")]
    ExactCountFailure {
        i: usize,
        j: usize,
        residue: u64,
        count: usize,
        expected: usize,
    },

    #[error("exponent {a} vanishes modulo the root order; the selected constituent is trivial")]
    DegenerateIrrep { a: i64 },

    #[error("selection modulus {expected} does not match fiber size {got}")]
    ModulusMismatch { expected: usize, got: usize },

    #[error("unitarity scale mismatch: spectral {spectral} vs singular-value {singular}")]
    AlphaMismatch { spectral: f64, singular: f64 },

    #[error("conversion requires 2x2 blocks, got r = {r}")]
    BlockSizeNotTwo { r: usize },

    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// One verification step: which check ran, where, and how far the measured
/// quantity sat from its tolerance. Exact integer checks report zeros.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<(usize, usize)>,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckRecord {
    pub fn exact(check: &str) -> Self {
        CheckRecord {
            check: check.to_string(),
            location: None,
            deviation: 0.0,
            tolerance: 0.0,
        }
    }

    pub fn measured(check: &str, deviation: f64, tolerance: f64) -> Self {
        CheckRecord {
            check: check.to_string(),
            location: None,
            deviation,
            tolerance,
        }
    }
}
