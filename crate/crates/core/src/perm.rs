//! Permutations of `0..n` stored by image vector.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image vector of length {len} is not a bijection on 0..{len}")]
    NotBijection { len: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A permutation; `image[v]` is the image of `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    image: Vec<usize>,
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.image)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Perm, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection { len: n });
            }
            seen[x] = true;
        }
        Ok(Perm { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Composition acting left-to-right on points: `(a.then(b))(v) = b(a(v))`.
    pub fn then(&self, b: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), b.degree());
        Perm { image: self.image.iter().map(|&x| b.image[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Perm { image: inv }
    }

    /// Smallest moved point, or `None` for the identity.
    pub fn first_moved(&self) -> Option<usize> {
        self.image.iter().enumerate().find(|&(i, &x)| i != x).map(|(i, _)| i)
    }

    /// Cycle type as a sorted list of cycle lengths >= 2.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.image[v];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }
}
