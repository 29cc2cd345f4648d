//! Complex symmetric conference matrices: exact root-of-unity storage,
//! axiom verification, the symplectic-pairing construction, and the
//! correspondence with 2x2-block signature matrices in both directions.
//!
//! A symmetric conference matrix of order `n` has
//!
//! * (C1) zero diagonal,
//! * (C2) unimodular off-diagonal entries,
//! * (C3) symmetry, and
//! * (C4) `C C* = (n - 1) I`.
//!
//! Exact mode stores off-diagonal entries as exponents of a root of unity,
//! so symmetry and the counting form of (C4) are integer computations.

use crate::drackn::mathon_labels;
use crate::eitff::SignatureMatrix;
use crate::error::{Axiom, CheckRecord, Error, Result};
use crate::field::field_build;
use crate::numerics::{BlockMatrix, Complex, Mat, DEFAULT_TOL};
use std::f64::consts::TAU;

/// Diagonal sentinel in exact-mode exponent grids.
pub const DIAGONAL_SENTINEL: i64 = -1;

/// Order-`n` symmetric zero-diagonal matrix with unimodular off-diagonal
/// entries, stored exactly as root-of-unity exponents or numerically.
#[derive(Clone, Debug, PartialEq)]
pub enum ConferenceMatrix {
    Exact {
        n: usize,
        /// Order of the root of unity `omega = e^{2 pi i / modulus}`.
        modulus: u64,
        /// Residues mod `modulus` off the diagonal; `-1` on the diagonal.
        exponents: Vec<Vec<i64>>,
    },
    Numeric { entries: Mat },
}

impl ConferenceMatrix {
    /// Exact-mode constructor; enforces the zero diagonal (sentinel) and
    /// symmetry at construction, as integer checks.
    pub fn exact(modulus: u64, exponents: Vec<Vec<i64>>) -> Result<Self> {
        let n = exponents.len();
        if modulus == 0 {
            return Err(Error::Malformed {
                what: "conference matrix",
                detail: "modulus must be positive".into(),
            });
        }
        for (i, row) in exponents.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed {
                    what: "conference matrix",
                    detail: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
            for (j, &e) in row.iter().enumerate() {
                if i == j {
                    if e != DIAGONAL_SENTINEL {
                        return Err(Error::Axiom {
                            axiom: Axiom::C1,
                            i,
                            j,
                            detail: format!("diagonal exponent is {e}, expected the sentinel -1"),
                        });
                    }
                } else if e < 0 || e as u64 >= modulus {
                    return Err(Error::Malformed {
                        what: "conference matrix",
                        detail: format!("exponent {e} at ({i}, {j}) outside 0..{modulus}"),
                    });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if exponents[i][j] != exponents[j][i] {
                    return Err(Error::Axiom {
                        axiom: Axiom::C3,
                        i,
                        j,
                        detail: "exponent grid is not symmetric".into(),
                    });
                }
            }
        }
        Ok(ConferenceMatrix::Exact {
            n,
            modulus,
            exponents,
        })
    }

    /// Numeric-mode constructor; entry-level axioms are left to
    /// [`verify_conference`], which needs a tolerance.
    pub fn numeric(entries: Mat) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Malformed {
                what: "conference matrix",
                detail: format!("{}x{} is not square", entries.rows(), entries.cols()),
            });
        }
        Ok(ConferenceMatrix::Numeric { entries })
    }

    pub fn n(&self) -> usize {
        match self {
            ConferenceMatrix::Exact { n, .. } => *n,
            ConferenceMatrix::Numeric { entries } => entries.rows(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ConferenceMatrix::Exact { .. })
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            ConferenceMatrix::Exact { modulus, .. } => Some(*modulus),
            ConferenceMatrix::Numeric { .. } => None,
        }
    }

    pub fn exponent(&self, i: usize, j: usize) -> Option<i64> {
        match self {
            ConferenceMatrix::Exact { exponents, .. } => Some(exponents[i][j]),
            ConferenceMatrix::Numeric { .. } => None,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex {
        match self {
            ConferenceMatrix::Exact {
                modulus, exponents, ..
            } => {
                let e = exponents[i][j];
                if e == DIAGONAL_SENTINEL {
                    Complex::ZERO
                } else {
                    Complex::cis(TAU * e as f64 / *modulus as f64)
                }
            }
            ConferenceMatrix::Numeric { entries } => entries[(i, j)],
        }
    }

    pub fn to_mat(&self) -> Mat {
        let n = self.n();
        Mat::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// Off-diagonal exponents re-expressed for the root of unity of order
    /// `p`; fails with [`Error::NotExactMode`] when an entry is not a
    /// `p`-th root of unity.
    pub(crate) fn exponents_rescaled(&self, p: u64) -> Result<Vec<Vec<u64>>> {
        let ConferenceMatrix::Exact {
            n,
            modulus,
            exponents,
        } = self
        else {
            return Err(Error::NotExactMode);
        };
        let mut out = vec![vec![0u64; *n]; *n];
        for i in 0..*n {
            for j in 0..*n {
                if i == j {
                    continue;
                }
                let e = exponents[i][j] as u64;
                // e / modulus = l / p needs modulus | e p
                if !(e * p).is_multiple_of(*modulus) {
                    return Err(Error::NotExactMode);
                }
                out[i][j] = (e * p / *modulus) % p;
            }
        }
        Ok(out)
    }
}

/// Builds the order-`(2^k + 1)` symmetric conference matrix whose entry
/// `(i, j)` is `exp(2 pi i a gamma(i, j) / (q - 1))`, from the symplectic
/// pairing exponents of the `q + 1` lines over `GF(q)`.
pub fn mathon_conference(k: u32, a: i64) -> Result<ConferenceMatrix> {
    if k < 2 {
        return Err(Error::OutOfRange {
            name: "k",
            value: i64::from(k),
            min: 2,
            max: 16,
        });
    }
    let spec = field_build(k)?;
    let modulus = u64::from(spec.q()) - 1;
    if a.rem_euclid(modulus as i64) == 0 {
        return Err(Error::DegenerateIrrep { a });
    }
    let labels = mathon_labels(&spec);
    let n = labels.n();
    let mut exponents = vec![vec![DIAGONAL_SENTINEL; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                exponents[i][j] =
                    (a * labels.gamma(i, j) as i64).rem_euclid(modulus as i64);
            }
        }
    }
    ConferenceMatrix::exact(modulus, exponents)
}

fn check_c123(c: &ConferenceMatrix, tol: f64) -> Result<[f64; 3]> {
    let n = c.n();
    match c {
        // diagonal sentinel and exponent symmetry are construction
        // invariants; unimodularity is automatic for roots of unity
        ConferenceMatrix::Exact { exponents, .. } => {
            for (i, row) in exponents.iter().enumerate() {
                if row[i] != DIAGONAL_SENTINEL {
                    return Err(Error::Axiom {
                        axiom: Axiom::C1,
                        i,
                        j: i,
                        detail: "diagonal entry is not zero".into(),
                    });
                }
            }
            Ok([0.0, 0.0, 0.0])
        }
        ConferenceMatrix::Numeric { entries } => {
            let mut diag_dev: f64 = 0.0;
            for i in 0..n {
                let dev = entries[(i, i)].abs();
                if dev > tol {
                    return Err(Error::Axiom {
                        axiom: Axiom::C1,
                        i,
                        j: i,
                        detail: format!("diagonal entry has magnitude {dev:.3e}"),
                    });
                }
                diag_dev = diag_dev.max(dev);
            }
            let mut unimod_dev: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let dev = (entries[(i, j)].abs() - 1.0).abs();
                    if dev > tol {
                        return Err(Error::Axiom {
                            axiom: Axiom::C2,
                            i,
                            j,
                            detail: format!("entry modulus strays {dev:.3e} from 1"),
                        });
                    }
                    unimod_dev = unimod_dev.max(dev);
                }
            }
            let mut sym_dev: f64 = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    let dev = (entries[(i, j)] - entries[(j, i)]).abs();
                    if dev > tol {
                        return Err(Error::Axiom {
                            axiom: Axiom::C3,
                            i,
                            j,
                            detail: format!("entries differ across the diagonal by {dev:.3e}"),
                        });
                    }
                    sym_dev = sym_dev.max(dev);
                }
            }
            Ok([diag_dev, unimod_dev, sym_dev])
        }
    }
}

/// Common count of each difference residue in the exact counting check:
/// for every pair `i != j`, the multiset `{l(i,k) - l(j,k) mod p : k != i, j}`
/// must contain every residue exactly `(n - 2) / p` times. This is the
/// unique way a sum of `p`-th roots of unity can vanish for prime `p`.
pub fn exact_residue_count(c: &ConferenceMatrix) -> Result<usize> {
    let ConferenceMatrix::Exact {
        n,
        modulus,
        exponents,
    } = c
    else {
        return Err(Error::NotExactMode);
    };
    let p = *modulus;
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let n = *n;
    let expected = (n - 2) / p as usize;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut counts = vec![0usize; p as usize];
            for (k, row) in exponents.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let diff = (exponents[i][k] - row[j]).rem_euclid(p as i64);
                counts[diff as usize] += 1;
            }
            for (residue, &count) in counts.iter().enumerate() {
                if count != expected {
                    return Err(Error::ExactCountFailure {
                        i,
                        j,
                        residue: residue as u64,
                        count,
                        expected,
                    });
                }
            }
        }
    }
    Ok(expected)
}

/// Checks axioms (C1)-(C4) and returns the order.
///
/// (C4) is always checked numerically; in exact mode with a prime modulus
/// it is additionally checked by exact residue counting.
pub fn verify_conference(c: &ConferenceMatrix, tol: f64) -> Result<usize> {
    verify_conference_report(c, tol).map(|(n, _)| n)
}

/// As [`verify_conference`], also returning one record per axiom checked.
pub fn verify_conference_report(
    c: &ConferenceMatrix,
    tol: f64,
) -> Result<(usize, Vec<CheckRecord>)> {
    let n = c.n();
    let [diag_dev, unimod_dev, sym_dev] = check_c123(c, tol)?;
    let mut records = vec![
        CheckRecord::measured("C1 zero diagonal", diag_dev, tol),
        CheckRecord::measured("C2 unimodular entries", unimod_dev, tol),
        CheckRecord::measured("C3 symmetry", sym_dev, tol),
    ];

    let mat = c.to_mat();
    let product = mat.mul(&mat.adjoint());
    let target = Mat::identity(n).scale(n as f64 - 1.0);
    let mut c4_dev: f64 = 0.0;
    let mut c4_loc = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let dev = (product[(i, j)] - target[(i, j)]).abs();
            if dev > c4_dev {
                c4_dev = dev;
                c4_loc = (i, j);
            }
        }
    }
    if c4_dev > tol {
        return Err(Error::Axiom {
            axiom: Axiom::C4,
            i: c4_loc.0,
            j: c4_loc.1,
            detail: format!("C C* strays {c4_dev:.3e} from (n-1) I"),
        });
    }
    records.push(CheckRecord::measured("C4 product identity", c4_dev, tol));

    if let Some(p) = c.modulus() {
        if is_prime(p) {
            let count = exact_residue_count(c)?;
            let mut record = CheckRecord::exact("C4 exact residue counting");
            record.check = format!("C4 exact residue counting ({count} per residue)");
            records.push(record);
        }
    }

    Ok((n, records))
}

/// Maps a conference matrix to the 2x2-block signature candidate with
/// blocks `[[Re, Im], [Im, -Re]]`. The image satisfies the degree-2
/// minimal polynomial axiom exactly when (C4) holds.
pub fn et_taoui_to_signature(c: &ConferenceMatrix) -> Result<SignatureMatrix> {
    check_c123(c, DEFAULT_TOL)?;
    let n = c.n();
    let mut grid = BlockMatrix::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let z = c.entry(i, j);
            let rows = [[z.re, z.im], [z.im, -z.re]];
            grid.set_block(i, j, Mat::from_fn(2, 2, |s, t| Complex::real(rows[s][t])));
        }
    }
    Ok(SignatureMatrix::from_grid(grid))
}

/// Inverse of [`et_taoui_to_signature`]: reads `C_{ij} = a + b i` off
/// blocks of the shape `[[a, b], [b, -a]]`. The result is stored exactly
/// whenever every entry snaps to a common root-of-unity order, smallest
/// order first; otherwise it is numeric.
pub fn signature_to_conference(s: &SignatureMatrix, tol: f64) -> Result<ConferenceMatrix> {
    if s.r() != 2 {
        return Err(Error::BlockSizeNotTwo { r: s.r() });
    }
    let n = s.n();
    let mut entries = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let block = s.block(i, j);
            if block.max_imag() > tol {
                return Err(Error::WrongBlockShape { i, j });
            }
            let (b00, b01, b10, b11) = (
                block[(0, 0)].re,
                block[(0, 1)].re,
                block[(1, 0)].re,
                block[(1, 1)].re,
            );
            if (b01 - b10).abs() > tol || (b00 + b11).abs() > tol {
                return Err(Error::WrongBlockShape { i, j });
            }
            entries[(i, j)] = Complex::new((b00 - b11) / 2.0, (b01 + b10) / 2.0);
        }
    }

    if let Some((modulus, exponents)) = snap_to_roots(&entries, tol) {
        return ConferenceMatrix::exact(modulus, exponents);
    }
    ConferenceMatrix::numeric(entries)
}

/// Smallest root-of-unity order representing every off-diagonal entry
/// within `tol`, searched up to `2n + 2`.
fn snap_to_roots(entries: &Mat, tol: f64) -> Option<(u64, Vec<Vec<i64>>)> {
    let n = entries.rows();
    'modulus: for modulus in 1..=(2 * n as u64 + 2) {
        let mut exponents = vec![vec![DIAGONAL_SENTINEL; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let z = entries[(i, j)];
                let angle = z.im.atan2(z.re) / TAU; // in turns
                let e = (angle * modulus as f64).round() as i64;
                let e = e.rem_euclid(modulus as i64);
                if (z - Complex::cis(TAU * e as f64 / modulus as f64)).abs() > tol {
                    continue 'modulus;
                }
                exponents[i][j] = e;
            }
        }
        return Some((modulus, exponents));
    }
    None
}

/// Real doubling homomorphism: replaces each entry `a + b i` by the block
/// `[[a, -b], [b, a]]`, so `ctr(Z W) = ctr(Z) ctr(W)` and
/// `ctr(Z*) = ctr(Z)^T`.
pub fn ctr(z: &Mat) -> Mat {
    Mat::from_fn(2 * z.rows(), 2 * z.cols(), |i, j| {
        let entry = z[(i / 2, j / 2)];
        let value = match (i % 2, j % 2) {
            (0, 0) | (1, 1) => entry.re,
            (0, 1) => -entry.im,
            _ => entry.im,
        };
        Complex::real(value)
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eitff::verify_signature;

    #[test]
    fn order_5_matrix_with_cube_roots() {
        let c = mathon_conference(2, 1).unwrap();
        assert_eq!(c.n(), 5);
        assert_eq!(c.modulus(), Some(3));
        assert_eq!(verify_conference(&c, 1e-9).unwrap(), 5);
        assert_eq!(exact_residue_count(&c).unwrap(), 1);
    }

    #[test]
    fn order_9_matrix_with_seventh_roots() {
        let c = mathon_conference(3, 2).unwrap();
        assert_eq!(c.n(), 9);
        assert_eq!(c.modulus(), Some(7));
        assert_eq!(verify_conference(&c, 1e-9).unwrap(), 9);
        assert_eq!(exact_residue_count(&c).unwrap(), 1);
    }

    #[test]
    fn trivial_exponent_is_rejected() {
        assert!(matches!(
            mathon_conference(2, 3),
            Err(Error::DegenerateIrrep { a: 3 })
        ));
        assert!(matches!(
            mathon_conference(2, -3),
            Err(Error::DegenerateIrrep { .. })
        ));
        assert!(matches!(
            mathon_conference(1, 1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn all_ones_matrix_fails_c4() {
        let n = 5;
        let mut exps = vec![vec![0i64; n]; n];
        for (i, row) in exps.iter_mut().enumerate() {
            row[i] = DIAGONAL_SENTINEL;
        }
        let c = ConferenceMatrix::exact(1, exps).unwrap();
        match verify_conference(&c, 1e-9) {
            Err(Error::Axiom {
                axiom: Axiom::C4, ..
            }) => {}
            other => panic!("expected C4 violation, got {other:?}"),
        }
    }

    #[test]
    fn asymmetric_exponents_are_rejected_at_construction() {
        let exps = vec![
            vec![DIAGONAL_SENTINEL, 0, 1],
            vec![0, DIAGONAL_SENTINEL, 0],
            vec![2, 0, DIAGONAL_SENTINEL],
        ];
        assert!(matches!(
            ConferenceMatrix::exact(3, exps),
            Err(Error::Axiom {
                axiom: Axiom::C3,
                ..
            })
        ));
    }

    #[test]
    fn quarter_turn_entry_maps_to_the_swap_block() {
        let exps = vec![
            vec![DIAGONAL_SENTINEL, 1],
            vec![1, DIAGONAL_SENTINEL],
        ];
        let c = ConferenceMatrix::exact(4, exps).unwrap();
        let s = et_taoui_to_signature(&c).unwrap();
        let b = s.block(0, 1);
        assert!((b[(0, 0)].re).abs() < 1e-15);
        assert!((b[(0, 1)].re - 1.0).abs() < 1e-15);
        assert!((b[(1, 0)].re - 1.0).abs() < 1e-15);
        assert!((b[(1, 1)].re).abs() < 1e-15);
    }

    #[test]
    fn forward_image_verifies_with_d_equal_n() {
        let c = mathon_conference(2, 1).unwrap();
        let s = et_taoui_to_signature(&c).unwrap();
        let params = verify_signature(&s, 1e-9).unwrap();
        assert_eq!((params.d, params.n, params.r), (5, 5, 2));
        assert!((params.lambda_plus - 2.0).abs() < 1e-9);
    }

    #[test]
    fn perturbed_matrix_fails_the_minimal_polynomial_check() {
        let ConferenceMatrix::Exact {
            modulus,
            mut exponents,
            ..
        } = mathon_conference(2, 1).unwrap()
        else {
            unreachable!()
        };
        // symmetric single-entry phase perturbation keeps C1-C3
        exponents[1][2] = (exponents[1][2] + 1) % 3;
        exponents[2][1] = exponents[1][2];
        let c = ConferenceMatrix::exact(modulus, exponents).unwrap();
        assert!(verify_conference(&c, 1e-9).is_err());
        let s = et_taoui_to_signature(&c).unwrap();
        assert!(matches!(
            verify_signature(&s, 1e-9),
            Err(Error::NotTwoEigenvalues { .. })
        ));
    }

    #[test]
    fn round_trip_recovers_the_exponent_grid() {
        let c = mathon_conference(2, 1).unwrap();
        let s = et_taoui_to_signature(&c).unwrap();
        let back = signature_to_conference(&s, 1e-9).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rotation_blocks_are_rejected() {
        let c = mathon_conference(2, 1).unwrap();
        let s = et_taoui_to_signature(&c).unwrap();
        let mut grid = s.grid().clone();
        // a rotation block [[a, -b], [b, a]] has the wrong symmetry type
        let z = c.entry(0, 1);
        let rows = [[z.re, -z.im], [z.im, z.re]];
        grid.set_block(0, 1, Mat::from_fn(2, 2, |i, j| Complex::real(rows[i][j])));
        let tampered = SignatureMatrix::from_grid(grid);
        assert!(matches!(
            signature_to_conference(&tampered, 1e-9),
            Err(Error::WrongBlockShape { i: 0, j: 1 })
        ));
    }

    #[test]
    fn ctr_of_scalars() {
        let one = ctr(&Mat::identity(1));
        assert!(one.identity_deviation() < 1e-15);
        let mut i_mat = Mat::zeros(1, 1);
        i_mat[(0, 0)] = Complex::I;
        let doubled = ctr(&i_mat);
        assert_eq!(doubled[(0, 0)].re, 0.0);
        assert_eq!(doubled[(0, 1)].re, -1.0);
        assert_eq!(doubled[(1, 0)].re, 1.0);
        assert_eq!(doubled[(1, 1)].re, 0.0);
    }

    #[test]
    fn ctr_is_a_star_homomorphism() {
        // fixed pseudo-random complex matrices
        let mut state = 0x12345678u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let z = Mat::from_fn(4, 4, |_, _| Complex::new(next(), next()));
        let w = Mat::from_fn(4, 4, |_, _| Complex::new(next(), next()));
        let lhs = ctr(&z.mul(&w));
        let rhs = ctr(&z).mul(&ctr(&w));
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
        assert!(ctr(&z.adjoint()).sub(&ctr(&z).transpose()).max_abs() == 0.0);
    }

    #[test]
    fn divisibility_holds_for_accepted_prime_moduli() {
        for (k, p) in [(2u32, 3u64), (3, 7), (5, 31)] {
            let c = mathon_conference(k, 1).unwrap();
            assert_eq!(c.modulus(), Some(p));
            assert_eq!((c.n() as u64 - 2) % p, 0);
            assert!(verify_conference(&c, 1e-9).is_ok());
        }
    }

    #[test]
    fn fabricated_order_fails_the_counting_check() {
        // a 6x6 grid of cube roots cannot satisfy the counting identity
        // since 3 does not divide 4
        let n = 6;
        let mut exps = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    exps[i][j] = DIAGONAL_SENTINEL;
                } else {
                    exps[i][j] = ((i * j) % 3) as i64;
                }
            }
        }
        let c = ConferenceMatrix::exact(3, exps).unwrap();
        assert!(matches!(
            exact_residue_count(&c),
            Err(Error::ExactCountFailure { .. })
        ));
        assert!(verify_conference(&c, 1e-9).is_err());
    }
}
