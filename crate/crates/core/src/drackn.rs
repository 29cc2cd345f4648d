//! Distance-regular antipodal covers of complete graphs: the block
//! adjacency type, exact axiom verification, the symplectic-form
//! construction over `GF(2^k)`, the conference-matrix construction, and
//! group-closure analysis of the off-diagonal blocks.
//!
//! An `(n, m, c)` cover has `n` fibers of `m` pairwise nonadjacent vertices,
//! a perfect matching between each pair of fibers, and exactly `c` common
//! neighbors for nonadjacent cross-fiber pairs. In block form the axioms
//! are:
//!
//! * (D1) empty diagonal blocks,
//! * (D2) every off-diagonal block is a permutation matrix,
//! * (D3) block `(j, i)` is the transpose of block `(i, j)`,
//! * (D4) `A^2 = (n - mc - 2) A + (n - 1) I + c (J_n - I_n) (x) J_m`.

use crate::conference::ConferenceMatrix;
use crate::error::{Axiom, CheckRecord, Error, Result};
use crate::field::{field_build, symplectic, FieldElement, FieldSpec};
use crate::numerics::Mat;
use crate::perm::Perm;
use serde::Serialize;
use std::collections::HashSet;

/// Block adjacency matrix of an antipodal cover: an `n x n` grid of `m x m`
/// permutation blocks with an empty diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DracknAdjacency {
    n: usize,
    m: usize,
    blocks: Vec<Option<Perm>>,
}

impl DracknAdjacency {
    /// A grid with every block empty; fill with [`set_block`](Self::set_block).
    pub fn empty(n: usize, m: usize) -> Self {
        DracknAdjacency {
            n,
            m,
            blocks: vec![None; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn block(&self, i: usize, j: usize) -> Option<&Perm> {
        self.blocks[i * self.n + j].as_ref()
    }

    pub fn set_block(&mut self, i: usize, j: usize, p: Perm) {
        self.blocks[i * self.n + j] = Some(p);
    }

    pub fn clear_block(&mut self, i: usize, j: usize) {
        self.blocks[i * self.n + j] = None;
    }

    /// The full `(mn) x (mn)` 0/1 adjacency matrix.
    pub fn flatten(&self) -> Mat {
        let order = self.n * self.m;
        let mut out = Mat::zeros(order, order);
        for i in 0..self.n {
            for j in 0..self.n {
                if let Some(p) = self.block(i, j) {
                    for t in 0..self.m {
                        out[(i * self.m + p.apply(t), j * self.m + t)] =
                            crate::numerics::Complex::ONE;
                    }
                }
            }
        }
        out
    }
}

/// Parameters of a verified cover together with its nontrivial eigenvalues
/// `theta >= 0 >= tau`, the roots of `x^2 - delta x - (n - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DracknParams {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub delta: i64,
    pub disc: i64,
    pub theta: f64,
    pub tau: f64,
}

impl DracknParams {
    pub fn from_nmc(n: usize, m: usize, c: usize) -> Self {
        let delta = n as i64 - (m * c) as i64 - 2;
        let disc = delta * delta + 4 * (n as i64 - 1);
        let root = (disc as f64).sqrt();
        DracknParams {
            n,
            m,
            c,
            delta,
            disc,
            theta: (delta as f64 + root) / 2.0,
            tau: (delta as f64 - root) / 2.0,
        }
    }

    /// `(theta - tau) / |tau|`, the redundancy of every lift of this cover.
    pub fn redundancy(&self) -> f64 {
        (self.theta - self.tau) / self.tau.abs()
    }
}

/// Line representatives and pairing exponents for the symplectic-form cover:
/// `B(u_i, u_j) = g^{gamma(i, j)}` with `g` the field generator.
#[derive(Clone, Debug)]
pub struct MathonLabels {
    n: usize,
    reps: Vec<(FieldElement, FieldElement)>,
    gamma: Vec<u64>,
}

impl MathonLabels {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn reps(&self) -> &[(FieldElement, FieldElement)] {
        &self.reps
    }

    /// Exponent of the pairing between line representatives `i != j`.
    pub fn gamma(&self, i: usize, j: usize) -> u64 {
        assert_ne!(i, j, "gamma is undefined on the diagonal");
        self.gamma[i * self.n + j]
    }
}

/// Pairing exponents for the `q + 1` lines of the plane over `GF(q)`,
/// with representatives `(1, x)` for each `x` followed by `(0, 1)`.
pub fn mathon_labels(spec: &FieldSpec) -> MathonLabels {
    let q = spec.q() as usize;
    let n = q + 1;
    let mut reps: Vec<(FieldElement, FieldElement)> = (0..q as u32)
        .map(|x| (FieldElement::ONE, FieldElement(x)))
        .collect();
    reps.push((FieldElement::ZERO, FieldElement::ONE));

    let mut gamma = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let b = symplectic(spec, reps[i], reps[j]);
            // representatives of distinct lines pair to a nonzero value
            gamma[i * n + j] = u64::from(spec.dlog(b).expect("distinct lines pair nonzero"));
        }
    }
    MathonLabels { n, reps, gamma }
}

/// Builds the symplectic-form cover over `GF(2^k)`: a `(q+1, q-1, 1)` cover
/// whose vertex `(i, t)` is `g^t u_i`, with block entry `(A_{ij})_{st} = 1`
/// iff `s + t + gamma(i, j) = 0 mod q - 1`.
pub fn mathon_drackn(k: u32) -> Result<(DracknAdjacency, MathonLabels)> {
    let spec = field_build(k)?;
    let labels = mathon_labels(&spec);
    let q = spec.q() as usize;
    let n = q + 1;
    let m = q - 1;
    let mut adj = DracknAdjacency::empty(n, m);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let g = labels.gamma(i, j) as usize;
            let img: Vec<usize> = (0..m).map(|t| (2 * m - t - g) % m).collect();
            adj.set_block(i, j, Perm::from_images(img));
        }
    }
    Ok((adj, labels))
}

/// Checks axioms (D1)-(D4) and returns the cover parameters.
///
/// The quadratic identity (D4) is verified entrywise in exact integer
/// arithmetic by composing permutations; `c` is inferred from the data, so
/// this doubles as a parameter detector for externally supplied covers.
pub fn verify_drackn(a: &DracknAdjacency) -> Result<DracknParams> {
    verify_drackn_report(a).map(|(params, _)| params)
}

/// As [`verify_drackn`], also returning one record per axiom checked.
pub fn verify_drackn_report(a: &DracknAdjacency) -> Result<(DracknParams, Vec<CheckRecord>)> {
    let n = a.n();
    let m = a.m();
    if n < 2 || m < 1 {
        return Err(Error::Malformed {
            what: "cover adjacency",
            detail: format!("grid {n} x {n} of {m} x {m} blocks is degenerate"),
        });
    }

    for i in 0..n {
        if a.block(i, i).is_some() {
            return Err(Error::Axiom {
                axiom: Axiom::D1,
                i,
                j: i,
                detail: "diagonal block is not empty".into(),
            });
        }
    }

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            match a.block(i, j) {
                None => {
                    return Err(Error::Axiom {
                        axiom: Axiom::D2,
                        i,
                        j,
                        detail: "off-diagonal block is missing".into(),
                    })
                }
                Some(p) if !p.is_bijection(m) => {
                    return Err(Error::Axiom {
                        axiom: Axiom::D2,
                        i,
                        j,
                        detail: "block is not a permutation matrix".into(),
                    })
                }
                _ => {}
            }
        }
    }

    for i in 0..n {
        for j in (i + 1)..n {
            let forward = a.block(i, j).unwrap();
            let backward = a.block(j, i).unwrap();
            if backward != &forward.inverse() {
                return Err(Error::Axiom {
                    axiom: Axiom::D3,
                    i,
                    j,
                    detail: "block (j, i) is not the transpose of block (i, j)".into(),
                });
            }
        }
    }

    // Infer c from an off-position of the (0, 1) block of A^2. With m = 1
    // there are no off-positions and (D4) leaves c free; take c = n - 2,
    // the count of common neighbors of adjacent vertices in the complete
    // graph, which makes delta = 0.
    let c = if m == 1 {
        n - 2
    } else {
        let counts = square_block(a, 0, 1);
        let matched_row = a.block(0, 1).unwrap().apply(0);
        counts[((matched_row + 1) % m) * m]
    };
    if c == 0 {
        return Err(Error::Axiom {
            axiom: Axiom::D4,
            i: 0,
            j: 1,
            detail: "inferred c = 0; nonadjacent cross-fiber pairs share no neighbor".into(),
        });
    }
    let delta = n as i64 - (m * c) as i64 - 2;

    for i in 0..n {
        for j in 0..n {
            let counts = square_block(a, i, j);
            if i == j {
                for s in 0..m {
                    for t in 0..m {
                        let expect = if s == t { n as i64 - 1 } else { 0 };
                        if counts[s * m + t] as i64 != expect {
                            return Err(Error::Axiom {
                                axiom: Axiom::D4,
                                i,
                                j,
                                detail: format!(
                                    "diagonal block of A^2 differs from (n-1) I at ({s}, {t})"
                                ),
                            });
                        }
                    }
                }
            } else {
                let p = a.block(i, j).unwrap();
                for t in 0..m {
                    let matched = p.apply(t);
                    for s in 0..m {
                        let got = counts[s * m + t] as i64;
                        if s == matched {
                            if got != c as i64 + delta {
                                return Err(Error::Axiom {
                                    axiom: Axiom::D4,
                                    i,
                                    j,
                                    detail: format!(
                                        "matched entry ({s}, {t}) of A^2 is {got}, expected {}",
                                        c as i64 + delta
                                    ),
                                });
                            }
                        } else if got != c as i64 {
                            return Err(Error::InconsistentC { i, j });
                        }
                    }
                }
            }
        }
    }

    let records = vec![
        CheckRecord::exact("D1 empty diagonal"),
        CheckRecord::exact("D2 permutation blocks"),
        CheckRecord::exact("D3 transpose pairing"),
        CheckRecord::exact("D4 quadratic identity"),
    ];
    Ok((DracknParams::from_nmc(n, m, c), records))
}

/// Block `(i, j)` of `A^2` as an `m x m` count matrix (row-major).
fn square_block(a: &DracknAdjacency, i: usize, j: usize) -> Vec<usize> {
    let m = a.m();
    let mut counts = vec![0usize; m * m];
    for k in 0..a.n() {
        let (Some(left), Some(right)) = (a.block(i, k), a.block(k, j)) else {
            continue;
        };
        for t in 0..m {
            counts[left.apply(right.apply(t)) * m + t] += 1;
        }
    }
    counts
}

/// The group generated by the off-diagonal blocks, with its action summary.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    pub elements: Vec<Perm>,
    pub transitive: bool,
    pub abelian: bool,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Default closure cap: the dihedral and abelian targets are tiny, so this
/// only guards against pathological inputs.
pub fn default_closure_cap(m: usize) -> usize {
    10 * m * m
}

/// Closes the off-diagonal block permutations under composition, aborting
/// once the closure would exceed `cap` elements. Transitivity is read off
/// the orbit of point 0 and abelianness off pairwise commutation of the
/// generators.
pub fn block_group_closure(a: &DracknAdjacency, cap: usize) -> Result<GroupClosure> {
    let m = a.m();
    let mut gens: Vec<Perm> = Vec::new();
    let mut gen_set: HashSet<Perm> = HashSet::new();
    for i in 0..a.n() {
        for j in 0..a.n() {
            if i == j {
                continue;
            }
            if let Some(p) = a.block(i, j) {
                if !p.is_bijection(m) {
                    return Err(Error::Axiom {
                        axiom: Axiom::D2,
                        i,
                        j,
                        detail: "block is not a permutation matrix".into(),
                    });
                }
                if gen_set.insert(p.clone()) {
                    gens.push(p.clone());
                }
            }
        }
    }
    if gens.is_empty() {
        gens.push(Perm::identity(m));
        gen_set.insert(Perm::identity(m));
    }

    // A finite set of bijections closed under composition is a group, so
    // right-multiplying words by generators reaches every element.
    let mut elements = gen_set;
    let mut queue: Vec<Perm> = gens.clone();
    while let Some(word) = queue.pop() {
        for g in &gens {
            let next = word.compose(g);
            if elements.insert(next.clone()) {
                if elements.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                queue.push(next);
            }
        }
    }

    let mut orbit = vec![false; m];
    orbit[0] = true;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = g.apply(x);
            if !orbit[y] {
                orbit[y] = true;
                frontier.push(y);
            }
        }
    }
    let transitive = orbit.iter().all(|&b| b);

    let abelian = gens
        .iter()
        .enumerate()
        .all(|(i, g)| gens[i + 1..].iter().all(|h| g.commutes_with(h)));

    let mut elements: Vec<Perm> = elements.into_iter().collect();
    elements.sort_by(|a, b| a.images().cmp(b.images()));
    Ok(GroupClosure {
        elements,
        transitive,
        abelian,
    })
}

/// Builds an `(n, p, (n-2)/p)` cover from a symmetric conference matrix
/// whose off-diagonal entries are `p`-th roots of unity, `p` prime.
///
/// Block `(i, j)` is `T^{l(i,j)} R` on `Z_p`, where `T` is the translation
/// `e_t -> e_{t+1}`, `R` the reversal `e_t -> e_{-t}`, and `l(i, j)` the
/// entry's exponent.
pub fn conference_to_drackn(c: &ConferenceMatrix, p: u64) -> Result<DracknAdjacency> {
    if !c.is_exact() {
        return Err(Error::NotExactMode);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let n = c.n();
    let n_minus_2 = (n as u64).saturating_sub(2);
    if n < 2 || !n_minus_2.is_multiple_of(p) {
        return Err(Error::DivisibilityFailure {
            p,
            value: n_minus_2,
        });
    }
    let ell = c.exponents_rescaled(p)?;
    crate::conference::verify_conference(c, crate::numerics::DEFAULT_TOL)?;

    let m = p as usize;
    let mut adj = DracknAdjacency::empty(n, m);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let l = ell[i][j] as usize;
            // x -> l - x on Z_p
            let img: Vec<usize> = (0..m).map(|x| (l + m - x) % m).collect();
            adj.set_block(i, j, Perm::from_images(img));
        }
    }
    Ok(adj)
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

    #[test]
    fn mathon_q4_parameters() {
        let (adj, labels) = mathon_drackn(2).unwrap();
        let params = verify_drackn(&adj).unwrap();
        assert_eq!((params.n, params.m, params.c), (5, 3, 1));
        assert_eq!(params.delta, 0);
        assert_eq!(params.theta, 2.0);
        assert_eq!(params.tau, -2.0);
        // pairing labels match the defining property
        let spec = field_build(2).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    let b = symplectic(&spec, labels.reps()[i], labels.reps()[j]);
                    assert_eq!(
                        spec.generator_pow(labels.gamma(i, j) as i64),
                        b,
                        "gamma({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn mathon_q8_parameters() {
        let (adj, _) = mathon_drackn(3).unwrap();
        let params = verify_drackn(&adj).unwrap();
        assert_eq!((params.n, params.m, params.c), (9, 7, 1));
    }

    #[test]
    fn mathon_q2_is_the_complete_graph() {
        let (adj, _) = mathon_drackn(1).unwrap();
        let params = verify_drackn(&adj).unwrap();
        assert_eq!((params.n, params.m, params.c), (3, 1, 1));
    }

    #[test]
    fn spectral_identities_hold() {
        for k in [1, 2, 3, 4] {
            let (adj, _) = mathon_drackn(k).unwrap();
            let p = verify_drackn(&adj).unwrap();
            assert!((p.theta * p.tau + (p.n as f64 - 1.0)).abs() < 1e-12);
            assert!((p.theta + p.tau - p.delta as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_block_violates_d1() {
        let (mut adj, _) = mathon_drackn(2).unwrap();
        adj.set_block(2, 2, Perm::identity(3));
        match verify_drackn(&adj) {
            Err(Error::Axiom {
                axiom: Axiom::D1,
                i: 2,
                j: 2,
                ..
            }) => {}
            other => panic!("expected D1 violation, got {other:?}"),
        }
    }

    #[test]
    fn non_bijection_violates_d2() {
        let (mut adj, _) = mathon_drackn(2).unwrap();
        adj.set_block(0, 1, Perm::from_images(vec![0, 0, 1]));
        match verify_drackn(&adj) {
            Err(Error::Axiom {
                axiom: Axiom::D2, ..
            }) => {}
            other => panic!("expected D2 violation, got {other:?}"),
        }
    }

    #[test]
    fn non_inverse_pair_violates_d3() {
        let (mut adj, _) = mathon_drackn(2).unwrap();
        let tweaked = adj.block(2, 1).unwrap().compose(&Perm::from_images(vec![1, 0, 2]));
        adj.set_block(1, 2, tweaked);
        match verify_drackn(&adj) {
            Err(Error::Axiom {
                axiom: Axiom::D3, ..
            }) => {}
            other => panic!("expected D3 violation, got {other:?}"),
        }
    }

    #[test]
    fn consistent_tampering_violates_d4() {
        // replace blocks (0,1) and (1,0) by a transpose-consistent pair that
        // breaks the common-neighbor count
        let (mut adj, _) = mathon_drackn(2).unwrap();
        let cycle = Perm::from_images(vec![1, 2, 0]);
        adj.set_block(0, 1, cycle.clone());
        adj.set_block(1, 0, cycle.inverse());
        match verify_drackn(&adj) {
            Err(Error::Axiom {
                axiom: Axiom::D4, ..
            })
            | Err(Error::InconsistentC { .. }) => {}
            other => panic!("expected D4-family violation, got {other:?}"),
        }
    }

    #[test]
    fn closure_of_q4_blocks_is_dihedral_of_order_6() {
        let (adj, _) = mathon_drackn(2).unwrap();
        let closure = block_group_closure(&adj, default_closure_cap(3)).unwrap();
        assert_eq!(closure.order(), 6);
        assert!(closure.transitive);
        assert!(!closure.abelian);
    }

    #[test]
    fn closure_of_q8_blocks_has_order_14() {
        let (adj, _) = mathon_drackn(3).unwrap();
        let closure = block_group_closure(&adj, default_closure_cap(7)).unwrap();
        assert_eq!(closure.order(), 14);
        assert!(closure.transitive);
        assert!(!closure.abelian);
    }

    #[test]
    fn closure_of_the_complete_graph_is_trivial() {
        let (adj, _) = mathon_drackn(1).unwrap();
        let closure = block_group_closure(&adj, 10).unwrap();
        assert_eq!(closure.order(), 1);
        assert!(closure.transitive);
        assert!(closure.abelian);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let (adj, _) = mathon_drackn(3).unwrap();
        assert!(matches!(
            block_group_closure(&adj, 5),
            Err(Error::CapExceeded { cap: 5 })
        ));
    }
}
