use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QElement {
    pub i: usize,
    pub j: usize,
}

impl QElement {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

pub type QSet = BTreeSet<QElement>;

/// The cylinder poset `Q` of pairs `(i,j)` with `i ≥ 1`, `j ≥ k+1` and
/// `0 ≤ j-i ≤ n-1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPoset {
    pub n: usize,
    pub k: usize,
}

impl QPoset {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k == 0 || k >= n {
            return domain(format!("need 1 <= k <= n-1, got n = {n}, k = {k}"));
        }
        Ok(Self { n, k })
    }

    pub fn contains_ij(&self, i: i64, j: i64) -> bool {
        i >= 1 && j > self.k as i64 && (0..self.n as i64).contains(&(j - i))
    }

    pub fn contains(&self, p: QElement) -> bool {
        self.contains_ij(p.i as i64, p.j as i64)
    }

    pub fn element(&self, i: usize, j: usize) -> Result<QElement> {
        if self.contains_ij(i as i64, j as i64) {
            Ok(QElement::new(i, j))
        } else {
            domain(format!(
                "({i},{j}) is not in Q for n = {}, k = {}",
                self.n, self.k
            ))
        }
    }

    /// `p ⪯ q`: componentwise, or `q` lies at least `k` rows or `n-k` columns
    /// further out.
    pub fn leq(&self, p: QElement, q: QElement) -> bool {
        (p.i <= q.i && p.j <= q.j) || q.i >= p.i + self.k || q.j >= p.j + (self.n - self.k)
    }

    pub fn lt(&self, p: QElement, q: QElement) -> bool {
        p != q && self.leq(p, q)
    }

    /// `⟨i,j⟩`: the shift `(i+mk, j-m(n-k))` lying in `Q`, if any.
    pub fn try_normalize(&self, i: i64, j: i64) -> Option<QElement> {
        let (n, k) = (self.n as i64, self.k as i64);
        let m = (j - i).div_euclid(n);
        let (a, b) = (i + m * k, j - m * (n - k));
        self.contains_ij(a, b)
            .then(|| QElement::new(a as usize, b as usize))
    }

    pub fn normalize(&self, i: i64, j: i64) -> Result<QElement> {
        self.try_normalize(i, j)
            .map_or_else(|| domain(format!("no shift of ({i},{j}) lies in Q")), Ok)
    }

    /// `a mod k` with representatives in `[1,k]`.
    pub fn mod_k(&self, a: usize) -> usize {
        (a - 1) % self.k + 1
    }

    /// `b mod (n-k)` with representatives in `[k+1,n]`.
    pub fn mod_nk(&self, b: usize) -> usize {
        (b - self.k - 1) % (self.n - self.k) + self.k + 1
    }

    pub fn diagonal(&self, m: usize) -> QElement {
        QElement::new(self.k + m, self.k + m)
    }

    /// Elements covered by `p` in the Hasse diagram: `⟨i-1,j⟩` and `⟨i,j-1⟩`.
    pub fn lower_covers(&self, p: QElement) -> Vec<QElement> {
        [
            self.try_normalize(p.i as i64 - 1, p.j as i64),
            self.try_normalize(p.i as i64, p.j as i64 - 1),
        ]
        .into_iter()
        .flatten()
        .collect()
    }

    pub fn maximal(&self, set: &QSet) -> QSet {
        set.iter()
            .copied()
            .filter(|&p| !set.iter().any(|&q| self.lt(p, q)))
            .collect()
    }
}

/// `Q = O ⊔ C` with `O` = all diagonals plus a finite explicit set inside the
/// horizon (rows `≤ horizon`); off-diagonal elements past the horizon are in
/// `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPartition {
    pub q: QPoset,
    pub extra: QSet,
    pub horizon: usize,
}

impl QPartition {
    pub fn new(
        q: QPoset,
        extra: impl IntoIterator<Item = QElement>,
        horizon: usize,
    ) -> Result<Self> {
        let extra: QSet = extra.into_iter().filter(|p| !p.is_diagonal()).collect();
        for &p in &extra {
            if !q.contains(p) {
                return domain(format!("{p} is not in Q"));
            }
            if p.i > horizon {
                return domain(format!("{p} lies beyond the horizon {horizon}"));
            }
        }
        Ok(Self { q, extra, horizon })
    }

    /// Horizon taken as the largest row of `extra`.
    pub fn with_extra(q: QPoset, extra: impl IntoIterator<Item = QElement>) -> Result<Self> {
        let extra: QSet = extra.into_iter().collect();
        let horizon = extra.iter().map(|p| p.i).max().unwrap_or(0);
        Self::new(q, extra, horizon)
    }

    pub fn in_order(&self, p: QElement) -> bool {
        p.is_diagonal() || self.extra.contains(&p)
    }

    /// `M_{O,C}(J) = (J ∩ O) ∪ max(J)`.
    pub fn m_oc(&self, ideal: &QSet) -> QSet {
        let mut m = self.q.maximal(ideal);
        m.extend(ideal.iter().copied().filter(|&p| self.in_order(p)));
        m
    }
}
