//! The variables `z_{i,j}` and the partition-dependent lexicographic order on
//! monomials in them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::pipedream::PartitionTables;
use crate::poly::{Monomial, MonomialOrder};
use crate::poset::{GtPoset, OcPartition, PosetElement};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZVar {
    pub i: usize,
    pub j: usize,
}

impl ZVar {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for ZVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}", self.i, self.j)
    }
}

/// A total order on the `n × n` variables stored as an explicit rank table
/// (larger rank = larger variable). Monomials compare lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarOrder {
    pub n: usize,
    /// `rank[(i-1)*n + (j-1)]`.
    pub rank: Vec<usize>,
    #[serde(skip)]
    descending: Vec<ZVar>,
}

impl VarOrder {
    pub fn from_ranks(n: usize, rank: Vec<usize>) -> Self {
        let mut descending: Vec<ZVar> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| ZVar::new(i, j)))
            .collect();
        descending.sort_by_key(|v| std::cmp::Reverse(rank[(v.i - 1) * n + v.j - 1]));
        Self {
            n,
            rank,
            descending,
        }
    }

    pub fn rank_of(&self, v: ZVar) -> usize {
        self.rank[(v.i - 1) * self.n + v.j - 1]
    }

    pub fn cmp_vars(&self, a: ZVar, b: ZVar) -> Ordering {
        self.rank_of(a).cmp(&self.rank_of(b))
    }

    /// All variables from largest to smallest.
    pub fn descending(&self) -> &[ZVar] {
        &self.descending
    }

    /// Variables of row `i` from largest to smallest.
    pub fn row_chain(&self, i: usize) -> Vec<ZVar> {
        self.descending
            .iter()
            .copied()
            .filter(|v| v.i == i)
            .collect()
    }

    /// The relabelled order `⋖^w` with `z_{i,w(j)} ⋖^w z_{i',w(j')}` iff
    /// `z_{i,j} ⋖ z_{i',j'}`.
    pub fn twisted(&self, w: &Permutation) -> Self {
        let n = self.n;
        let mut rank = vec![0; n * n];
        for i in 1..=n {
            for j in 1..=n {
                rank[(i - 1) * n + w.apply(j) - 1] = self.rank_of(ZVar::new(i, j));
            }
        }
        Self::from_ranks(n, rank)
    }
}

impl MonomialOrder<ZVar> for VarOrder {
    fn cmp_monomials(&self, a: &Monomial<ZVar>, b: &Monomial<ZVar>) -> Ordering {
        for v in &self.descending {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// The order attached to a partition.
///
/// Rows compare first (smaller row = larger variable). Inside row `i`, with
/// `l_1 > ... > l_m = i` the columns of `O ∪ A` in that row, the columns in
/// decreasing order are `l_1, n, ..., l_1+1, l_2, l_1-1, ..., l_2+1, ...,
/// l_m, l_{m-1}-1, ..., l_m+1, i-1, ..., 1`, and column `c` stands for the
/// variable `z_{i,r(i,c)}`.
pub fn variable_order(poset: &GtPoset, oc: &OcPartition, tables: &PartitionTables) -> VarOrder {
    let n = poset.n();
    let mut rank = vec![0; n * n];
    let mut base = 0;
    for i in (1..=n).rev() {
        for (pos, c) in row_column_sequence(poset, oc, i).into_iter().enumerate() {
            let v = ZVar::new(i, tables.r(i, c));
            rank[(i - 1) * n + v.j - 1] = base + (n - pos);
        }
        base += n + 1;
    }
    VarOrder::from_ranks(n, rank)
}

/// The column sequence of row `i` described on [`variable_order`].
pub fn row_column_sequence(poset: &GtPoset, oc: &OcPartition, i: usize) -> Vec<usize> {
    let n = poset.n();
    let mut seq = Vec::with_capacity(n);
    let mut prev = n + 1;
    for l in (i..=n).rev() {
        if oc.is_marked(poset, PosetElement::new(i, l)) {
            seq.push(l);
            seq.extend((l + 1..prev).rev());
            prev = l;
        }
    }
    seq.extend((1..i).rev());
    seq
}
