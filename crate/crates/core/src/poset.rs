//! The Gelfand–Tsetlin poset `P = {(i,j) : 1 <= i <= j <= n}`, its order
//! ideals and the order/chain partitions `O ⊔ C = P \ A`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest `n` whose poset fits in a `u64` bitset (`n(n+1)/2 <= 64`).
pub const MAX_N: usize = 10;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PosetElement {
    pub i: usize,
    pub j: usize,
}

impl PosetElement {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    /// Componentwise order.
    pub fn leq(&self, other: &Self) -> bool {
        self.i <= other.i && self.j <= other.j
    }
}

impl fmt::Display for PosetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Free-standing form of the poset relation.
pub fn poset_leq(p: PosetElement, q: PosetElement) -> bool {
    p.leq(&q)
}

/// Canonical row-major position of `(i,j)` in `P` for ambient size `n`.
pub fn index_of(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * (2 * n + 2 - i) / 2 + (j - i)
}

pub fn poset_size(n: usize) -> usize {
    n * (n + 1) / 2
}

/// The poset with precomputed up/down closure masks.
#[derive(Clone, Debug)]
pub struct GtPoset {
    n: usize,
    elements: Vec<PosetElement>,
    below: Vec<u64>,
    above: Vec<u64>,
    diagonal: u64,
}

impl GtPoset {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("n must be positive");
        }
        if n > MAX_N {
            return Err(Error::Capacity(format!(
                "n = {n} exceeds the 64-bit poset encoding (max {MAX_N})"
            )));
        }
        let elements: Vec<_> = (1..=n)
            .flat_map(|i| (i..=n).map(move |j| PosetElement::new(i, j)))
            .collect();
        let mut below = vec![0u64; elements.len()];
        let mut above = vec![0u64; elements.len()];
        let mut diagonal = 0u64;
        for (a, p) in elements.iter().enumerate() {
            if p.is_diagonal() {
                diagonal |= 1 << a;
            }
            for (b, q) in elements.iter().enumerate() {
                if q.leq(p) {
                    below[a] |= 1 << b;
                }
                if p.leq(q) {
                    above[a] |= 1 << b;
                }
            }
        }
        Ok(Self {
            n,
            elements,
            below,
            above,
            diagonal,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> PosetElement {
        self.elements[idx]
    }

    pub fn contains(&self, p: PosetElement) -> bool {
        1 <= p.i && p.i <= p.j && p.j <= self.n
    }

    pub fn index(&self, p: PosetElement) -> usize {
        debug_assert!(self.contains(p), "{p} not in P for n = {}", self.n);
        index_of(self.n, p.i, p.j)
    }

    pub fn bit(&self, p: PosetElement) -> u64 {
        1 << self.index(p)
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn diagonal_mask(&self) -> u64 {
        self.diagonal
    }

    /// Mask of all `q ⪯ p`.
    pub fn down_mask(&self, p: PosetElement) -> u64 {
        self.below[self.index(p)]
    }

    /// Mask of all `q ⪰ p`.
    pub fn up_mask(&self, p: PosetElement) -> u64 {
        self.above[self.index(p)]
    }

    pub fn leq(&self, p: PosetElement, q: PosetElement) -> bool {
        self.below[self.index(q)] >> self.index(p) & 1 == 1
    }

    pub fn mask_of<'a>(&self, elems: impl IntoIterator<Item = &'a PosetElement>) -> Result<u64> {
        let mut mask = 0;
        for &p in elems {
            if !self.contains(p) {
                return domain(format!("{p} is not an element of P for n = {}", self.n));
            }
            mask |= self.bit(p);
        }
        Ok(mask)
    }

    pub fn elements_of(&self, mask: u64) -> Vec<PosetElement> {
        iter_bits(mask).map(|b| self.elements[b]).collect()
    }

    pub fn is_downset(&self, mask: u64) -> bool {
        iter_bits(mask).all(|b| self.below[b] & !mask == 0)
    }

    /// Smallest order ideal containing `gens`.
    pub fn ideal_generated_by(&self, gens: u64) -> OrderIdeal {
        let mask = iter_bits(gens).fold(0, |acc, b| acc | self.below[b]);
        OrderIdeal { n: self.n, mask }
    }

    pub fn principal_ideal(&self, p: PosetElement) -> OrderIdeal {
        OrderIdeal {
            n: self.n,
            mask: self.down_mask(p),
        }
    }

    /// Maximal elements of `mask`.
    pub fn maximal(&self, mask: u64) -> u64 {
        iter_bits(mask)
            .filter(|&b| self.above[b] & mask == 1 << b)
            .fold(0, |acc, b| acc | 1 << b)
    }

    /// `M_{O,C}(J) = (J ∩ (O ∪ A)) ∪ max(J)`.
    pub fn m_oc(&self, ideal: &OrderIdeal, oc: &OcPartition) -> u64 {
        debug_assert_eq!(ideal.n, self.n);
        (ideal.mask & oc.marked_mask(self)) | self.maximal(ideal.mask)
    }

    /// All order ideals, grouped by `k = |J ∩ A|`; each group is sorted by mask.
    pub fn enumerate_ideals(&self) -> Vec<Vec<OrderIdeal>> {
        let mut seen = HashSet::new();
        seen.insert(0u64);
        let mut stack = vec![0u64];
        while let Some(mask) = stack.pop() {
            for b in 0..self.len() {
                if mask >> b & 1 == 0 && self.below[b] & !(mask | 1 << b) == 0 {
                    let next = mask | 1 << b;
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        let mut groups = vec![Vec::new(); self.n + 1];
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort_unstable();
        for mask in all {
            let ideal = OrderIdeal { n: self.n, mask };
            groups[ideal.k(self)].push(ideal);
        }
        groups
    }

    /// The ideals in `𝒥_k`.
    pub fn ideals_with_k(&self, k: usize) -> Vec<OrderIdeal> {
        self.enumerate_ideals().swap_remove(k)
    }
}

/// Iterate the set bit positions of a mask in increasing order.
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderIdeal {
    pub n: usize,
    pub mask: u64,
}

impl OrderIdeal {
    pub fn empty(n: usize) -> Self {
        Self { n, mask: 0 }
    }

    pub fn from_mask(poset: &GtPoset, mask: u64) -> Result<Self> {
        if mask & !poset.full_mask() != 0 || !poset.is_downset(mask) {
            return domain(format!("mask {mask:#x} is not an order ideal"));
        }
        Ok(Self { n: poset.n(), mask })
    }

    /// Number of diagonal members.
    pub fn k(&self, poset: &GtPoset) -> usize {
        (self.mask & poset.diagonal_mask()).count_ones() as usize
    }

    pub fn contains(&self, poset: &GtPoset, p: PosetElement) -> bool {
        poset.contains(p) && self.mask & poset.bit(p) != 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn members(&self, poset: &GtPoset) -> Vec<PosetElement> {
        poset.elements_of(self.mask)
    }
}

/// A subset `O ⊆ P \ A`; the chain part `C` is its complement in `P \ A`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OcPartition {
    pub n: usize,
    /// `O` as a mask over the canonical indices of `P`.
    order_mask: u64,
}

impl OcPartition {
    pub fn from_mask(poset: &GtPoset, order_mask: u64) -> Result<Self> {
        if order_mask & (poset.diagonal_mask() | !poset.full_mask()) != 0 {
            return domain(format!(
                "{order_mask:#x} meets the diagonal or lies outside P"
            ));
        }
        Ok(Self {
            n: poset.n(),
            order_mask,
        })
    }

    pub fn from_elements(poset: &GtPoset, elems: &[PosetElement]) -> Result<Self> {
        Self::from_mask(poset, poset.mask_of(elems)?)
    }

    /// `O = ∅`.
    pub fn all_chain(poset: &GtPoset) -> Self {
        Self {
            n: poset.n(),
            order_mask: 0,
        }
    }

    /// `O = P \ A`.
    pub fn all_order(poset: &GtPoset) -> Self {
        Self {
            n: poset.n(),
            order_mask: poset.full_mask() & !poset.diagonal_mask(),
        }
    }

    /// Build from a bitmask over `P \ A` in canonical order (bit 0 = `(1,2)`).
    pub fn from_offdiag_bits(poset: &GtPoset, bits: u64) -> Result<Self> {
        let off = offdiagonal(poset);
        if off.len() < 64 && bits >> off.len() != 0 {
            return domain(format!(
                "bitmask {bits:#x} has bits beyond the {} off-diagonal elements",
                off.len()
            ));
        }
        let mask = iter_bits(bits).fold(0, |acc, t| acc | poset.bit(off[t]));
        Self::from_mask(poset, mask)
    }

    pub fn offdiag_bits(&self, poset: &GtPoset) -> u64 {
        offdiagonal(poset)
            .iter()
            .enumerate()
            .filter(|(_, &p)| self.order_mask & poset.bit(p) != 0)
            .fold(0, |acc, (t, _)| acc | 1 << t)
    }

    /// All `2^{n(n-1)/2}` partitions in increasing off-diagonal bitmask order.
    pub fn all(poset: &GtPoset) -> Vec<Self> {
        let count = offdiagonal(poset).len();
        (0..1u64 << count)
            .map(|bits| Self::from_offdiag_bits(poset, bits).expect("in range"))
            .collect()
    }

    pub fn order_mask(&self) -> u64 {
        self.order_mask
    }

    /// `O ∪ A`.
    pub fn marked_mask(&self, poset: &GtPoset) -> u64 {
        self.order_mask | poset.diagonal_mask()
    }

    pub fn chain_mask(&self, poset: &GtPoset) -> u64 {
        poset.full_mask() & !self.marked_mask(poset)
    }

    pub fn in_order(&self, poset: &GtPoset, p: PosetElement) -> bool {
        self.order_mask & poset.bit(p) != 0
    }

    pub fn is_marked(&self, poset: &GtPoset, p: PosetElement) -> bool {
        p.is_diagonal() || self.in_order(poset, p)
    }

    pub fn order_elements(&self, poset: &GtPoset) -> BTreeSet<PosetElement> {
        poset.elements_of(self.order_mask).into_iter().collect()
    }
}

/// `P \ A` in canonical order.
pub fn offdiagonal(poset: &GtPoset) -> Vec<PosetElement> {
    poset
        .elements()
        .iter()
        .copied()
        .filter(|p| !p.is_diagonal())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> PosetElement {
        PosetElement::new(i, j)
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
    }

    #[test]
    fn leq_examples() {
        assert!(poset_leq(e(1, 2), e(2, 3)));
        assert!(!poset_leq(e(2, 2), e(1, 4)));
        assert!(!poset_leq(e(1, 4), e(2, 2)));
        assert!(poset_leq(e(3, 3), e(3, 3)));
    }

    #[test]
    fn index_is_row_major() {
        let poset = GtPoset::new(4).unwrap();
        for (idx, p) in poset.elements().iter().enumerate() {
            assert_eq!(poset.index(*p), idx);
        }
        assert_eq!(poset.element(4), e(2, 2));
    }

    #[test]
    fn ideal_counts_are_binomial() {
        for n in 1..=5 {
            let poset = GtPoset::new(n).unwrap();
            let groups = poset.enumerate_ideals();
            let total: usize = groups.iter().map(Vec::len).sum();
            assert_eq!(total, 1 << n);
            for (k, g) in groups.iter().enumerate() {
                assert_eq!(g.len(), binom(n, k), "n={n} k={k}");
            }
            assert_eq!(groups[0], vec![OrderIdeal::empty(n)]);
        }
    }

    #[test]
    fn ideal_generated_examples() {
        let poset = GtPoset::new(4).unwrap();
        let gens = poset.mask_of(&[e(1, 4), e(2, 3)]).unwrap();
        let j = poset.ideal_generated_by(gens);
        assert_eq!(
            j.members(&poset),
            vec![e(1, 1), e(1, 2), e(1, 3), e(1, 4), e(2, 2), e(2, 3)]
        );
        assert!(poset.ideal_generated_by(0).is_empty());
        assert_eq!(
            poset.ideal_generated_by(poset.bit(e(4, 4))).mask,
            poset.full_mask()
        );
    }

    #[test]
    fn m_oc_figure_example() {
        let poset = GtPoset::new(4).unwrap();
        let oc = OcPartition::from_elements(&poset, &[e(1, 2)]).unwrap();
        let j = poset.ideal_generated_by(poset.mask_of(&[e(1, 4), e(2, 3)]).unwrap());
        let m = poset.elements_of(poset.m_oc(&j, &oc));
        assert_eq!(m, vec![e(1, 1), e(1, 2), e(1, 4), e(2, 2), e(2, 3)]);
    }

    #[test]
    fn m_oc_extreme_partitions() {
        let poset = GtPoset::new(4).unwrap();
        let gt = OcPartition::all_order(&poset);
        let fflv = OcPartition::all_chain(&poset);
        for group in poset.enumerate_ideals() {
            for j in group {
                assert_eq!(poset.m_oc(&j, &gt), j.mask);
                assert_eq!(
                    poset.m_oc(&j, &fflv),
                    (j.mask & poset.diagonal_mask()) | poset.maximal(j.mask)
                );
            }
        }
    }

    #[test]
    fn offdiag_bits_round_trip() {
        let poset = GtPoset::new(4).unwrap();
        let all = OcPartition::all(&poset);
        assert_eq!(all.len(), 64);
        for (bits, oc) in all.iter().enumerate() {
            assert_eq!(oc.offdiag_bits(&poset), bits as u64);
        }
        assert!(OcPartition::from_offdiag_bits(&poset, 64).is_err());
        assert!(OcPartition::from_elements(&poset, &[e(2, 2)]).is_err());
    }

    #[test]
    fn capacity_error() {
        assert!(matches!(GtPoset::new(11), Err(Error::Capacity(_))));
    }
}
