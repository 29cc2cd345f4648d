//! Permutations of `{0, ..., m-1}` stored as image arrays.
//!
//! A permutation matrix `P` with its 1 of column `t` in row `img[t]`
//! satisfies `P e_t = e_{img[t]}`, so composing image arrays matches the
//! matrix product order: `mat(a.compose(b)) = mat(a) * mat(b)`.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(m: usize) -> Perm {
        Perm {
            img: (0..m).collect(),
        }
    }

    /// Wraps an image array without validating bijectivity; verifiers check
    /// that separately so malformed input surfaces as an axiom violation.
    pub fn from_images(img: Vec<usize>) -> Perm {
        Perm { img }
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn len(&self) -> usize {
        self.img.len()
    }

    pub fn is_empty(&self) -> bool {
        self.img.is_empty()
    }

    pub fn apply(&self, t: usize) -> usize {
        self.img[t]
    }

    /// True when the image array is a bijection on `{0, ..., m-1}`.
    pub fn is_bijection(&self, m: usize) -> bool {
        if self.img.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &x in &self.img {
            if x >= m || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// `self` after `rhs`: the image array of the matrix product.
    pub fn compose(&self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.img.len(), rhs.img.len());
        Perm {
            img: rhs.img.iter().map(|&t| self.img[t]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.img.len()];
        for (t, &x) in self.img.iter().enumerate() {
            inv[x] = t;
        }
        Perm { img: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(t, &x)| t == x)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.compose(other) == other.compose(self)
    }
}
