//! Permutations of `[1, n]` in one-line notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A permutation `w` of `[1, n]` stored as `images[x - 1] = w(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `(n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        Self {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return domain(format!("{images:?} is not a permutation of [1, {n}]"));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(x)` for `x` in `[1, n]`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y - 1] = x + 1;
        }
        Self { images: inv }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Replace `self` with `self ∘ (a b)`.
    pub fn mul_transposition_right(&mut self, a: usize, b: usize) {
        if a != b {
            self.images.swap(a - 1, b - 1);
        }
    }

    pub fn sign(&self) -> i8 {
        sign_of_sequence(&self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x + 1 == y)
    }

    /// All permutations of `[1, n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = (1..=n).collect::<Vec<_>>();
        loop {
            out.push(Self {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..current.len())
                .rev()
                .find(|&i| current[i - 1] < current[i])
            else {
                break;
            };
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// Sign of the permutation sorting `seq` (entries assumed pairwise distinct).
pub fn sign_of_sequence<T: Ord>(seq: &[T]) -> i8 {
    let mut inversions = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, x) in self.images.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
