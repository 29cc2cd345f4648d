//! Dihedral group elements as affine maps on `Z_m`, their degree-2 real
//! representations, and the two lifts from cover adjacency matrices to
//! signature matrices: direct sums of plane rotations, and the action on
//! the complement of the all-ones vector.
//!
//! The degree-2 representation indexed by `k` sends the unit translation to
//! a rotation through `2 pi k / m` and the point reflection to
//! `diag(1, -1)`. The rotation sign is fixed so that the cover block
//! `x -> -x - g` maps to the reflection `[[cos t, sin t], [sin t, -cos t]]`
//! with `t = 2 pi k g / m`; the opposite sign gives the conjugate
//! representation, which differs by an orthogonal change of basis.

use crate::drackn::{block_group_closure, default_closure_cap, DracknAdjacency};
use crate::eitff::SignatureMatrix;
use crate::error::{Error, Result};
use crate::numerics::{BlockMatrix, Complex, Mat};
use crate::perm::Perm;
use std::f64::consts::TAU;

/// The bijection `x -> eps * x + b` on `Z_m`, `eps` in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DihedralElement {
    pub eps: i8,
    pub b: usize,
}

impl DihedralElement {
    pub fn identity() -> Self {
        DihedralElement { eps: 1, b: 0 }
    }

    /// `self` after `rhs`:
    /// `(e1, b1) o (e2, b2) = (e1 e2, e1 b2 + b1)` on `Z_m`.
    pub fn compose(self, rhs: DihedralElement, m: usize) -> DihedralElement {
        let b = if self.eps == 1 {
            (self.b + rhs.b) % m
        } else {
            (self.b + m - rhs.b % m) % m
        };
        DihedralElement {
            eps: self.eps * rhs.eps,
            b,
        }
    }

    pub fn apply(self, x: usize, m: usize) -> usize {
        if self.eps == 1 {
            (x + self.b) % m
        } else {
            (self.b + m - x % m) % m
        }
    }

    pub fn to_perm(self, m: usize) -> Perm {
        Perm::from_images((0..m).map(|x| self.apply(x, m)).collect())
    }

    /// Recognizes a permutation as an affine map, trying `eps = +1` first.
    pub fn from_perm(p: &Perm, m: usize) -> Option<DihedralElement> {
        if p.len() != m || m == 0 {
            return None;
        }
        let b = p.apply(0);
        if b >= m {
            return None;
        }
        if (0..m).all(|x| p.apply(x) == (x + b) % m) {
            return Some(DihedralElement { eps: 1, b });
        }
        if (0..m).all(|x| p.apply(x) == (b + m - x) % m) {
            return Some(DihedralElement { eps: -1, b });
        }
        None
    }
}

/// Reads every off-diagonal block of a cover as an affine map on `Z_m`.
/// Requires odd `m`, the setting in which the degree-2 decomposition below
/// exhausts the nontrivial constituents.
pub fn identify_dihedral(
    a: &DracknAdjacency,
) -> Result<Vec<Vec<Option<DihedralElement>>>> {
    let m = a.m();
    if m.is_multiple_of(2) {
        return Err(Error::EvenModulus { m });
    }
    let n = a.n();
    let mut grid = vec![vec![None; n]; n];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            if i == j {
                continue;
            }
            let p = a.block(i, j).ok_or(Error::NotAffine { i, j })?;
            *slot = Some(DihedralElement::from_perm(p, m).ok_or(Error::NotAffine { i, j })?);
        }
    }
    Ok(grid)
}

/// The degree-2 orthogonal representation indexed by `k`, `1 <= k <= (m-1)/2`.
///
/// Each element `(eps, b)` maps to `R(-2 pi k b / m)` times `diag(1, eps)`,
/// a homomorphism: translations go to rotations, reflections to reflections.
pub fn irrep_matrix(m: usize, k: usize, g: DihedralElement) -> Result<Mat> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenModulus { m });
    }
    let max = (m - 1) / 2;
    if k < 1 || k > max {
        return Err(Error::IndexOutOfRange { k, max });
    }
    let theta = TAU * ((k * g.b) % m) as f64 / m as f64;
    let (sin, cos) = theta.sin_cos();
    let rows = if g.eps == 1 {
        [[cos, sin], [-sin, cos]]
    } else {
        [[cos, -sin], [-sin, -cos]]
    };
    Ok(Mat::from_fn(2, 2, |i, j| Complex::real(rows[i][j])))
}

/// A choice of degree-2 constituents: a nonempty subset of `{1, ..., (m-1)/2}`.
/// The full set recovers the all-ones-complement lift up to basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSelection {
    m: usize,
    indices: Vec<usize>,
}

impl RepSelection {
    pub fn new(m: usize, mut indices: Vec<usize>) -> Result<Self> {
        if m.is_multiple_of(2) {
            return Err(Error::EvenModulus { m });
        }
        if indices.is_empty() {
            return Err(Error::Malformed {
                what: "irrep selection",
                detail: "the index set is empty".into(),
            });
        }
        indices.sort_unstable();
        indices.dedup();
        let max = (m - 1) / 2;
        for &k in &indices {
            if k < 1 || k > max {
                return Err(Error::IndexOutOfRange { k, max });
            }
        }
        Ok(RepSelection { m, indices })
    }

    /// All indices `1..=(m-1)/2`.
    pub fn full(m: usize) -> Result<Self> {
        if m.is_multiple_of(2) {
            return Err(Error::EvenModulus { m });
        }
        if m < 3 {
            return Err(Error::FiberTooSmall);
        }
        RepSelection::new(m, (1..=(m - 1) / 2).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Total degree of the selected direct sum, `2 |K|`.
    pub fn degree(&self) -> usize {
        2 * self.indices.len()
    }
}

/// Lifts a cover through a direct sum of degree-2 constituents: block
/// `(i, j)` becomes the direct sum over the selected indices of
/// [`irrep_matrix`] applied to the affine map of block `(i, j)`.
pub fn lift_dihedral(a: &DracknAdjacency, sel: &RepSelection) -> Result<SignatureMatrix> {
    let m = a.m();
    if m == 1 {
        return Err(Error::FiberTooSmall);
    }
    if sel.m() != m {
        return Err(Error::ModulusMismatch {
            expected: sel.m(),
            got: m,
        });
    }
    let grid = identify_dihedral(a)?;
    let n = a.n();
    let r = sel.degree();
    let mut out = BlockMatrix::zeros(n, r);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let g = grid[i][j].expect("identify_dihedral fills every off-diagonal slot");
            let mut block = Mat::zeros(r, r);
            for (t, &k) in sel.indices().iter().enumerate() {
                block.paste(2 * t, 2 * t, &irrep_matrix(m, k, g)?);
            }
            out.set_block(i, j, block);
        }
    }
    Ok(SignatureMatrix::from_grid(out))
}

/// Lifts a cover through the action of its block group on the orthogonal
/// complement of the all-ones vector: block `(i, j)` becomes
/// `Q^T P_{ij} Q` for a fixed orthonormal basis `Q` of the complement,
/// so `r = m - 1`. Requires the block group to act transitively, which
/// keeps the trivial constituent out of the complement.
pub fn lift_deleted_permutation(a: &DracknAdjacency) -> Result<SignatureMatrix> {
    let m = a.m();
    if m == 1 {
        return Err(Error::FiberTooSmall);
    }
    let closure = block_group_closure(a, default_closure_cap(m))?;
    if !closure.transitive {
        return Err(Error::NotTransitive);
    }

    let q = complement_basis(m);
    let n = a.n();
    let r = m - 1;
    let mut out = BlockMatrix::zeros(n, r);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = a.block(i, j).expect("closure validated every block");
            let p_inv = p.inverse();
            // rows of P Q are rows of Q permuted by p^{-1}
            let permuted = Mat::from_fn(m, r, |u, v| q[(p_inv.apply(u), v)]);
            out.set_block(i, j, q.transpose().mul(&permuted));
        }
    }
    Ok(SignatureMatrix::from_grid(out))
}

/// Orthonormal basis of the complement of the all-ones vector in `R^m`:
/// columns `1..m` of the Householder reflector carrying the normalized
/// all-ones vector to the first standard basis vector.
fn complement_basis(m: usize) -> Mat {
    let w = 1.0 / (m as f64).sqrt();
    // u = w * ones - e_1
    let mut u = vec![w; m];
    u[0] -= 1.0;
    let uu: f64 = u.iter().map(|x| x * x).sum();
    let house = Mat::from_fn(m, m, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex::real(delta - 2.0 * u[i] * u[j] / uu)
    });
    house.submatrix(0, 1, m, m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drackn::mathon_drackn;
    use std::f64::consts::TAU;

    fn all_elements(m: usize) -> Vec<DihedralElement> {
        let mut out = Vec::new();
        for &eps in &[1i8, -1] {
            for b in 0..m {
                out.push(DihedralElement { eps, b });
            }
        }
        out
    }

    #[test]
    fn identify_recovers_the_pairing_exponents() {
        let (adj, labels) = mathon_drackn(2).unwrap();
        let grid = identify_dihedral(&adj).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i == j {
                    continue;
                }
                let g = grid[i][j].unwrap();
                let gamma = labels.gamma(i, j) as usize;
                assert_eq!(g.eps, -1);
                assert_eq!(g.b, (3 - gamma) % 3);
            }
        }
    }

    #[test]
    fn identity_permutation_is_affine() {
        let p = Perm::identity(5);
        assert_eq!(
            DihedralElement::from_perm(&p, 5),
            Some(DihedralElement::identity())
        );
    }

    #[test]
    fn a_transposition_on_z5_is_not_affine() {
        // fixes three points but is not the identity
        let p = Perm::from_images(vec![0, 2, 1, 3, 4]);
        assert_eq!(DihedralElement::from_perm(&p, 5), None);
    }

    #[test]
    fn even_fiber_size_is_rejected() {
        let mut adj = DracknAdjacency::empty(2, 4);
        adj.set_block(0, 1, Perm::identity(4));
        adj.set_block(1, 0, Perm::identity(4));
        assert!(matches!(
            identify_dihedral(&adj),
            Err(Error::EvenModulus { m: 4 })
        ));
    }

    #[test]
    fn unit_translation_maps_to_a_rotation() {
        for (m, k) in [(3usize, 1usize), (7, 2), (9, 4), (15, 7)] {
            let g = DihedralElement { eps: 1, b: 1 };
            let rot = irrep_matrix(m, k, g).unwrap();
            let angle = TAU * k as f64 / m as f64;
            // rotation through the expected angle: orthogonal, det 1,
            // trace 2 cos(angle)
            assert!(rot.adjoint().mul(&rot).identity_deviation() < 1e-15);
            let det = rot[(0, 0)] * rot[(1, 1)] - rot[(0, 1)] * rot[(1, 0)];
            assert!((det.re - 1.0).abs() < 1e-15 && det.im.abs() < 1e-15);
            assert!((rot.trace().re - 2.0 * angle.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn point_reflection_maps_to_diag_1_minus_1() {
        let g = DihedralElement { eps: -1, b: 0 };
        let f = irrep_matrix(7, 3, g).unwrap();
        assert_eq!(f[(0, 0)], Complex::real(1.0));
        assert_eq!(f[(1, 1)], Complex::real(-1.0));
        assert_eq!(f[(0, 1)], Complex::real(0.0));
        assert_eq!(f[(1, 0)], Complex::real(-0.0));
    }

    #[test]
    fn identity_maps_to_identity() {
        let f = irrep_matrix(9, 2, DihedralElement::identity()).unwrap();
        assert!(f.identity_deviation() < 1e-15);
    }

    #[test]
    fn index_bounds_are_enforced() {
        assert!(matches!(
            irrep_matrix(7, 0, DihedralElement::identity()),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            irrep_matrix(7, 4, DihedralElement::identity()),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn representation_is_a_homomorphism_exhaustively() {
        for m in [3usize, 5, 7, 9, 15] {
            for k in 1..=(m - 1) / 2 {
                for &g in &all_elements(m) {
                    for &h in &all_elements(m) {
                        let lhs = irrep_matrix(m, k, g.compose(h, m)).unwrap();
                        let rhs = irrep_matrix(m, k, g).unwrap().mul(&irrep_matrix(m, k, h).unwrap());
                        assert!(
                            lhs.sub(&rhs).max_abs() < 1e-12,
                            "m={m} k={k} g={g:?} h={h:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn composition_matches_the_permutation_action() {
        let m = 9;
        for &g in &all_elements(m) {
            for &h in &all_elements(m) {
                assert_eq!(
                    g.compose(h, m).to_perm(m),
                    g.to_perm(m).compose(&h.to_perm(m))
                );
            }
        }
    }

    #[test]
    fn q4_lift_blocks_are_the_displayed_reflections() {
        let (adj, labels) = mathon_drackn(2).unwrap();
        let sel = RepSelection::new(3, vec![1]).unwrap();
        let s = lift_dihedral(&adj, &sel).unwrap();
        assert_eq!((s.n(), s.r()), (5, 2));
        for i in 0..5 {
            for j in 0..5 {
                if i == j {
                    assert!(s.block(i, j).max_abs() == 0.0);
                    continue;
                }
                let xi = TAU * labels.gamma(i, j) as f64 / 3.0;
                let block = s.block(i, j);
                assert!((block[(0, 0)].re - xi.cos()).abs() < 1e-14);
                assert!((block[(0, 1)].re - xi.sin()).abs() < 1e-14);
                assert!((block[(1, 0)].re - xi.sin()).abs() < 1e-14);
                assert!((block[(1, 1)].re + xi.cos()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn q8_two_constituent_lift_has_orthogonal_blocks() {
        let (adj, _) = mathon_drackn(3).unwrap();
        let sel = RepSelection::new(7, vec![1, 2]).unwrap();
        let s = lift_dihedral(&adj, &sel).unwrap();
        assert_eq!((s.n(), s.r()), (9, 4));
        for i in 0..9 {
            for j in 0..9 {
                if i != j {
                    let b = s.block(i, j);
                    assert!(b.adjoint().mul(b).identity_deviation() < 1e-12);
                    assert!(b.sub(&s.block(j, i).transpose()).max_abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn q2_lift_is_refused() {
        let (adj, _) = mathon_drackn(1).unwrap();
        let sel = RepSelection::new(3, vec![1]).unwrap();
        assert!(matches!(
            lift_dihedral(&adj, &sel),
            Err(Error::FiberTooSmall)
        ));
        assert!(matches!(
            lift_deleted_permutation(&adj),
            Err(Error::FiberTooSmall)
        ));
    }

    #[test]
    fn selection_modulus_must_match() {
        let (adj, _) = mathon_drackn(3).unwrap();
        let sel = RepSelection::new(3, vec![1]).unwrap();
        assert!(matches!(
            lift_dihedral(&adj, &sel),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn complement_basis_is_orthonormal_and_misses_ones() {
        for m in [2usize, 3, 6, 7] {
            let q = complement_basis(m);
            assert!(q.adjoint().mul(&q).identity_deviation() < 1e-14);
            for v in 0..m - 1 {
                let coldot: f64 = (0..m).map(|u| q[(u, v)].re).sum();
                assert!(coldot.abs() < 1e-14, "column {v} not orthogonal to ones");
            }
        }
    }

    #[test]
    fn intransitive_blocks_are_refused() {
        let mut adj = DracknAdjacency::empty(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    adj.set_block(i, j, Perm::identity(3));
                }
            }
        }
        assert!(matches!(
            lift_deleted_permutation(&adj),
            Err(Error::NotTransitive)
        ));
    }
}
