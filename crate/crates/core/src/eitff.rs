//! Signature matrices, fusion Gram matrices, and explicit fusion frames.
//!
//! A signature matrix is an `n x n` grid of `r x r` blocks with
//!
//! * (S1) zero diagonal blocks,
//! * (S2) unitary off-diagonal blocks,
//! * (S3) block `(j, i)` equal to the conjugate transpose of block `(i, j)`,
//! * (S4) a degree-2 minimal polynomial,
//!
//! so its spectrum is `{lambda_plus, lambda_minus}` with one positive and
//! one negative value. The positive multiplicity `d` makes it the signature
//! of `n` equi-isoclinic `r`-planes in `d`-space; the Gram matrix of the
//! planes is `I - S / lambda_minus`, a `beta`-scaled projection that factors
//! into an explicit synthesis matrix.

use crate::drackn::DracknParams;
use crate::error::{Axiom, CheckRecord, Error, Result};
use crate::numerics::{
    cluster_eigenvalues, hermitian_eigen, singular_values, BlockMatrix, Complex, Mat,
};
use serde::Serialize;

/// Block matrix candidate for the signature axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureMatrix {
    grid: BlockMatrix,
}

impl SignatureMatrix {
    pub fn from_grid(grid: BlockMatrix) -> Self {
        SignatureMatrix { grid }
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn r(&self) -> usize {
        self.grid.r()
    }

    pub fn grid(&self) -> &BlockMatrix {
        &self.grid
    }

    pub fn block(&self, i: usize, j: usize) -> &Mat {
        self.grid.block(i, j)
    }

    pub fn flatten(&self) -> Mat {
        self.grid.flatten()
    }

    pub fn max_imag(&self) -> f64 {
        self.grid.max_imag()
    }

    /// True when every imaginary part is at most `tol` in magnitude.
    pub fn real_within(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }
}

/// Verified parameters of a signature matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EitffParams {
    /// Multiplicity of the positive eigenvalue.
    pub d: usize,
    pub n: usize,
    pub r: usize,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `r n / d`.
    pub redundancy: f64,
}

/// Checks axioms (S1)-(S4) and returns the frame parameters.
pub fn verify_signature(s: &SignatureMatrix, tol: f64) -> Result<EitffParams> {
    verify_signature_report(s, tol).map(|(params, _)| params)
}

/// As [`verify_signature`], also returning one record per axiom checked.
pub fn verify_signature_report(
    s: &SignatureMatrix,
    tol: f64,
) -> Result<(EitffParams, Vec<CheckRecord>)> {
    let n = s.n();
    let r = s.r();
    let order = n * r;
    let mut records = Vec::new();

    let mut diag_dev: f64 = 0.0;
    for i in 0..n {
        let dev = s.block(i, i).max_abs();
        if dev > tol {
            return Err(Error::Axiom {
                axiom: Axiom::S1,
                i,
                j: i,
                detail: format!("diagonal block has magnitude {dev:.3e}"),
            });
        }
        diag_dev = diag_dev.max(dev);
    }
    records.push(CheckRecord::measured("S1 zero diagonal", diag_dev, tol));

    let mut unitary_dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let sv = singular_values(s.block(i, j), tol)?;
            let dev = sv
                .iter()
                .map(|sigma| (sigma - 1.0).abs())
                .fold(0.0, f64::max);
            if dev > tol {
                return Err(Error::Axiom {
                    axiom: Axiom::S2,
                    i,
                    j,
                    detail: format!("singular values stray {dev:.3e} from 1"),
                });
            }
            unitary_dev = unitary_dev.max(dev);
        }
    }
    records.push(CheckRecord::measured(
        "S2 unitary off-diagonal blocks",
        unitary_dev,
        tol,
    ));

    let mut pairing_dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let dev = s.block(j, i).sub(&s.block(i, j).adjoint()).max_abs();
            if dev > tol {
                return Err(Error::Axiom {
                    axiom: Axiom::S3,
                    i,
                    j,
                    detail: format!("block (j, i) strays {dev:.3e} from the adjoint"),
                });
            }
            pairing_dev = pairing_dev.max(dev);
        }
    }
    records.push(CheckRecord::measured(
        "S3 adjoint pairing",
        pairing_dev,
        tol,
    ));

    let eigen = hermitian_eigen(&s.flatten(), tol)?;
    let values: Vec<f64> = eigen.iter().map(|&(v, _)| v).collect();
    let spectrum = cluster_eigenvalues(&values, tol)?;
    if spectrum.clusters.len() != 2 {
        return Err(Error::NotTwoEigenvalues {
            count: spectrum.clusters.len(),
        });
    }
    let (lambda_plus, d) = spectrum.clusters[0];
    let (lambda_minus, _) = spectrum.clusters[1];
    if lambda_plus <= 0.0 || lambda_minus >= 0.0 {
        return Err(Error::NotTwoEigenvalues {
            count: spectrum.clusters.len(),
        });
    }
    let trace_dev = (d as f64 * lambda_plus + (order - d) as f64 * lambda_minus).abs();
    records.push(CheckRecord::measured(
        "S4 two eigenvalues, zero trace",
        trace_dev,
        tol * order as f64,
    ));

    Ok((
        EitffParams {
            d,
            n,
            r,
            lambda_plus,
            lambda_minus,
            redundancy: (r * n) as f64 / d as f64,
        },
        records,
    ))
}

/// Closed-form parameter prediction for a degree-`r` lift of a cover with
/// the given parameters: `d = r n |tau| / (theta - tau)`.
pub fn expected_params(p: &DracknParams, r: usize) -> EitffParams {
    let d = (r * p.n) as f64 * p.tau.abs() / (p.theta - p.tau);
    EitffParams {
        d: d.round() as usize,
        n: p.n,
        r,
        lambda_plus: p.theta,
        lambda_minus: p.tau,
        redundancy: p.redundancy(),
    }
}

/// Recovers the fusion Gram matrix `G = I - S / lambda_min` and its
/// projection scale `beta = 1 - lambda_plus / lambda_minus`.
pub fn gram_from_signature(s: &SignatureMatrix, tol: f64) -> Result<(BlockMatrix, f64)> {
    let params = verify_signature(s, tol)?;
    Ok(gram_from_params(s, &params))
}

fn gram_from_params(s: &SignatureMatrix, params: &EitffParams) -> (BlockMatrix, f64) {
    let n = s.n();
    let r = s.r();
    let scale = -1.0 / params.lambda_minus;
    let mut gram = BlockMatrix::zeros(n, r);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                gram.set_block(i, j, Mat::identity(r));
            } else {
                gram.set_block(i, j, s.block(i, j).scale(scale));
            }
        }
    }
    (gram, 1.0 - params.lambda_plus / params.lambda_minus)
}

/// A fusion frame: `n` blocks of `r` orthonormal columns in `d`-space,
/// with `alpha M_i* M_j` unitary off the diagonal and
/// `sum M_i M_i* = beta I_d`.
#[derive(Clone, Debug)]
pub struct FusionFrame {
    pub d: usize,
    pub n: usize,
    pub r: usize,
    /// Synthesis matrix, `d x (r n)`, in `n` column blocks of width `r`.
    pub synthesis: Mat,
    /// Unitarity scale.
    pub alpha: f64,
    /// Tightness scale.
    pub beta: f64,
}

impl FusionFrame {
    /// The `i`-th column block `M_i`, of size `d x r`.
    pub fn block(&self, i: usize) -> Mat {
        self.synthesis.submatrix(0, i * self.r, self.d, self.r)
    }
}

/// Factors a `beta`-scaled projection `G = M* M` by keeping the eigenpairs
/// with eigenvalue near `beta` (the spectrum is `{0, beta}`, so the midpoint
/// `beta / 2` separates them).
pub fn factor_gram(gram: &BlockMatrix, beta: f64, tol: f64) -> Result<FusionFrame> {
    let n = gram.n();
    let r = gram.r();
    if n < 2 {
        return Err(Error::Malformed {
            what: "gram matrix",
            detail: "need at least two blocks".into(),
        });
    }
    if beta <= 1.0 + tol {
        return Err(Error::DegenerateBeta { beta });
    }
    let flat = gram.flatten();
    let norm = flat.frobenius();
    let projection_dev = flat.mul(&flat).sub(&flat.scale(beta)).frobenius() / (beta * norm);
    if projection_dev > tol {
        return Err(Error::NotScaledProjection {
            deviation: projection_dev,
        });
    }

    let eigen = hermitian_eigen(&flat, tol)?;
    let order = n * r;
    let retained: Vec<&(f64, Vec<Complex>)> = eigen
        .iter()
        .filter(|(lambda, _)| *lambda > beta / 2.0)
        .collect();
    let d = retained.len();
    let mut synthesis = Mat::zeros(d, order);
    for (row, (lambda, vec)) in retained.iter().enumerate() {
        let root = lambda.sqrt();
        for (col, z) in vec.iter().enumerate() {
            synthesis[(row, col)] = z.conj().scale(root);
        }
    }

    let residual = synthesis.adjoint().mul(&synthesis).sub(&flat).frobenius();
    if residual > 10.0 * tol * norm {
        return Err(Error::NotScaledProjection {
            deviation: residual / norm,
        });
    }

    // alpha via the singular values of one cross block of G
    let sigma = singular_values(gram.block(0, 1), tol)?[0];
    Ok(FusionFrame {
        d,
        n,
        r,
        synthesis,
        alpha: 1.0 / sigma,
        beta,
    })
}

/// Certificate of the fusion-frame conditions measured on an explicit frame.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EitffCertificate {
    /// Squared common singular value of the cross Grams.
    pub lambda_iso: f64,
    /// Common singular value of the cross Grams.
    pub sigma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub real_flag: bool,
    pub isoclinic_spread: f64,
    pub tightness_deviation: f64,
    pub orthonormality_deviation: f64,
    pub max_imag: f64,
}

/// Measures the equi-isoclinic and tightness conditions on a frame.
///
/// Every pair `i != j` must have all `r` singular values of `M_i* M_j`
/// equal, with the common value shared across pairs; the blocks must have
/// orthonormal columns; and the frame operator must be `(r n / d) I_d`.
pub fn check_eitff(frame: &FusionFrame, tol: f64) -> Result<EitffCertificate> {
    let n = frame.n;
    let d = frame.d;
    let r = frame.r;
    let blocks: Vec<Mat> = (0..n).map(|i| frame.block(i)).collect();

    let mut ortho_dev: f64 = 0.0;
    for block in &blocks {
        ortho_dev = ortho_dev.max(block.adjoint().mul(block).identity_deviation());
    }
    if ortho_dev > tol {
        return Err(Error::NotTight {
            deviation: ortho_dev,
        });
    }

    let mut sigma_min = f64::INFINITY;
    let mut sigma_max: f64 = 0.0;
    let mut sigma_sum = 0.0;
    let mut sigma_count = 0usize;
    let mut worst_pair = (0usize, 1usize);
    for i in 0..n {
        for j in (i + 1)..n {
            let sv = singular_values(&blocks[i].adjoint().mul(&blocks[j]), tol)?;
            let spread = sv[0] - sv[r - 1];
            if spread > tol {
                return Err(Error::NotIsoclinic { i, j, spread });
            }
            if sv[0] > sigma_max {
                sigma_max = sv[0];
                worst_pair = (i, j);
            }
            sigma_min = sigma_min.min(sv[r - 1]);
            sigma_sum += sv.iter().sum::<f64>();
            sigma_count += sv.len();
        }
    }
    let isoclinic_spread = sigma_max - sigma_min;
    if isoclinic_spread > tol {
        return Err(Error::NotIsoclinic {
            i: worst_pair.0,
            j: worst_pair.1,
            spread: isoclinic_spread,
        });
    }
    let sigma = sigma_sum / sigma_count as f64;

    let beta = (r * n) as f64 / d as f64;
    let mut frame_operator = Mat::zeros(d, d);
    for block in &blocks {
        frame_operator = frame_operator.add(&block.mul(&block.adjoint()));
    }
    let tightness_deviation = frame_operator.sub(&Mat::identity(d).scale(beta)).max_abs();
    if tightness_deviation > tol {
        return Err(Error::NotTight {
            deviation: tightness_deviation,
        });
    }

    let max_imag = frame.synthesis.max_imag();
    Ok(EitffCertificate {
        lambda_iso: sigma * sigma,
        sigma,
        alpha: frame.alpha,
        beta,
        real_flag: max_imag <= tol,
        isoclinic_spread,
        tightness_deviation,
        orthonormality_deviation: ortho_dev,
        max_imag,
    })
}

/// Full pipeline from a signature matrix to an explicit frame: verify,
/// recover the Gram matrix, factor it, and cross-check the unitarity scale
/// `alpha = |lambda_minus|` against the singular values of the cross Grams.
pub fn frame_from_signature(s: &SignatureMatrix, tol: f64) -> Result<(FusionFrame, EitffParams)> {
    let params = verify_signature(s, tol)?;
    let (gram, beta) = gram_from_params(s, &params);
    let mut frame = factor_gram(&gram, beta, tol)?;
    let spectral_alpha = -params.lambda_minus;
    if (frame.alpha - spectral_alpha).abs() > tol * (1.0 + spectral_alpha) {
        return Err(Error::AlphaMismatch {
            spectral: spectral_alpha,
            singular: frame.alpha,
        });
    }
    frame.alpha = spectral_alpha;
    Ok((frame, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drackn::{mathon_drackn, verify_drackn};
    use crate::reps::{lift_dihedral, RepSelection};

    fn q4_signature() -> SignatureMatrix {
        let (adj, _) = mathon_drackn(2).unwrap();
        lift_dihedral(&adj, &RepSelection::new(3, vec![1]).unwrap()).unwrap()
    }

    #[test]
    fn q4_lift_verifies_to_5_5_2() {
        let params = verify_signature(&q4_signature(), 1e-9).unwrap();
        assert_eq!((params.d, params.n, params.r), (5, 5, 2));
        assert!((params.lambda_plus - 2.0).abs() < 1e-9);
        assert!((params.lambda_minus + 2.0).abs() < 1e-9);
        assert!((params.redundancy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn nonzero_diagonal_violates_s1() {
        let s = q4_signature();
        let mut grid = s.grid().clone();
        grid.set_block(3, 3, Mat::identity(2));
        match verify_signature(&SignatureMatrix::from_grid(grid), 1e-9) {
            Err(Error::Axiom {
                axiom: Axiom::S1,
                i: 3,
                ..
            }) => {}
            other => panic!("expected S1 violation, got {other:?}"),
        }
    }

    #[test]
    fn shrunken_block_violates_s2() {
        let s = q4_signature();
        let mut grid = s.grid().clone();
        let shrunk = grid.block(0, 1).scale(0.9);
        grid.set_block(0, 1, shrunk.clone());
        grid.set_block(1, 0, shrunk.adjoint());
        match verify_signature(&SignatureMatrix::from_grid(grid), 1e-9) {
            Err(Error::Axiom {
                axiom: Axiom::S2, ..
            }) => {}
            other => panic!("expected S2 violation, got {other:?}"),
        }
    }

    #[test]
    fn broken_pairing_violates_s3() {
        let s = q4_signature();
        let mut grid = s.grid().clone();
        let negated = grid.block(1, 0).scale(-1.0);
        grid.set_block(1, 0, negated);
        match verify_signature(&SignatureMatrix::from_grid(grid), 1e-9) {
            Err(Error::Axiom {
                axiom: Axiom::S3, ..
            }) => {}
            other => panic!("expected S3 violation, got {other:?}"),
        }
    }

    #[test]
    fn expected_params_match_closed_forms() {
        let p531 = DracknParams::from_nmc(5, 3, 1);
        assert_eq!(expected_params(&p531, 2).d, 5);
        let p761 = DracknParams::from_nmc(7, 6, 1);
        assert_eq!(p761.delta, -1);
        assert_eq!(p761.disc, 25);
        assert_eq!(expected_params(&p761, 5).d, 21);
        let p971 = DracknParams::from_nmc(9, 7, 1);
        assert_eq!(expected_params(&p971, 6).d, 27);
    }

    #[test]
    fn gram_is_a_scaled_projection_with_identity_diagonal() {
        let s = q4_signature();
        let (gram, beta) = gram_from_signature(&s, 1e-9).unwrap();
        assert!((beta - 2.0).abs() < 1e-9);
        for i in 0..5 {
            assert!(gram.block(i, i).identity_deviation() == 0.0);
        }
        let flat = gram.flatten();
        assert!(flat.mul(&flat).sub(&flat.scale(beta)).max_abs() < 1e-9);
        let trace = flat.trace();
        assert!((trace.re - 10.0).abs() < 1e-12);
    }

    #[test]
    fn factored_frame_has_orthonormal_blocks() {
        let (frame, params) = frame_from_signature(&q4_signature(), 1e-9).unwrap();
        assert_eq!((frame.d, frame.n, frame.r), (5, 5, 2));
        assert!((frame.alpha - 2.0).abs() < 1e-9);
        for i in 0..5 {
            let b = frame.block(i);
            assert!(b.adjoint().mul(&b).identity_deviation() < 1e-9);
        }
        assert_eq!(params.d, 5);
    }

    #[test]
    fn q4_certificate() {
        let (frame, _) = frame_from_signature(&q4_signature(), 1e-9).unwrap();
        let cert = check_eitff(&frame, 1e-9).unwrap();
        assert!((cert.sigma - 0.5).abs() < 1e-12);
        assert!((cert.lambda_iso - 0.25).abs() < 1e-12);
        assert!((cert.beta - 2.0).abs() < 1e-15);
        assert!(cert.real_flag);
    }

    #[test]
    fn rescaled_column_breaks_tightness() {
        let (mut frame, _) = frame_from_signature(&q4_signature(), 1e-9).unwrap();
        for row in 0..frame.d {
            frame.synthesis[(row, 0)] = frame.synthesis[(row, 0)].scale(1.01);
        }
        match check_eitff(&frame, 1e-9) {
            Err(Error::NotTight { .. }) => {}
            other => panic!("expected NotTight, got {other:?}"),
        }
    }

    #[test]
    fn identity_gram_is_rejected() {
        let mut gram = BlockMatrix::zeros(3, 2);
        for i in 0..3 {
            gram.set_block(i, i, Mat::identity(2));
        }
        assert!(matches!(
            factor_gram(&gram, 1.0, 1e-9),
            Err(Error::DegenerateBeta { .. })
        ));
    }

    #[test]
    fn tampered_gram_fails_the_projection_check() {
        let s = q4_signature();
        let (mut gram, beta) = gram_from_signature(&s, 1e-9).unwrap();
        let mut block = gram.block(0, 1).clone();
        block[(0, 0)] += Complex::real(0.05);
        gram.set_block(0, 1, block);
        assert!(matches!(
            factor_gram(&gram, beta, 1e-9),
            Err(Error::NotScaledProjection { .. })
        ));
    }

    #[test]
    fn q8_deleted_parameters_via_dihedral_full_set() {
        let (adj, _) = mathon_drackn(3).unwrap();
        let cover = verify_drackn(&adj).unwrap();
        let s = lift_dihedral(&adj, &RepSelection::full(7).unwrap()).unwrap();
        let params = verify_signature(&s, 1e-6).unwrap();
        assert_eq!((params.d, params.n, params.r), (27, 9, 6));
        let predicted = expected_params(&cover, 6);
        assert_eq!(predicted.d, 27);
        assert!((params.redundancy - predicted.redundancy).abs() < 1e-9);
    }
}
