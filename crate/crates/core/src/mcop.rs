//! Marked chain-order polytopes: the integer points as exact Minkowski sumsets,
//! the inequality description as a verifier, the lattice map `ξ`, and the
//! Weyl dimension.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{FromPrimitive, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg;
use crate::pipedream::PartitionTables;
use crate::poset::{iter_bits, GtPoset, OcPartition, PosetElement};

/// A dominant integral weight `a_1 ω_1 + ... + a_{n-1} ω_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub a: Vec<u32>,
}

impl Weight {
    pub fn new(a: Vec<u32>) -> Self {
        Self { a }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            a: vec![0; n.saturating_sub(1)],
        }
    }

    /// `ω_k`.
    pub fn fundamental(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return domain(format!("ω_{k} needs 1 <= k <= n-1 = {}", n - 1));
        }
        let mut w = Self::zero(n);
        w.a[k - 1] = 1;
        Ok(w)
    }

    /// Sum of `ω_k` over the signature.
    pub fn from_signature(n: usize, sig: &[usize]) -> Result<Self> {
        let mut w = Self::zero(n);
        for &k in sig {
            w = w.add(&Self::fundamental(n, k)?);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.a.len() + 1
    }

    /// `λ(i) = a_i + ... + a_{n-1}`; `λ(n) = 0`.
    pub fn lambda(&self, i: usize) -> i64 {
        self.a[i - 1..].iter().map(|&x| i64::from(x)).sum()
    }

    /// Indices `k` with `a_k > 0`.
    pub fn signature(&self) -> Vec<usize> {
        (1..self.n()).filter(|&k| self.a[k - 1] > 0).collect()
    }

    /// `a_1 + ... + a_{n-1}`.
    pub fn size(&self) -> u32 {
        self.a.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    /// The column heights of a tableau of this shape, tallest first.
    pub fn column_heights(&self) -> Vec<usize> {
        (1..self.n())
            .rev()
            .flat_map(|k| std::iter::repeat_n(k, self.a[k - 1] as usize))
            .collect()
    }

    /// All weights with `a_1 + ... + a_{n-1} = size`.
    pub fn all_of_size(n: usize, size: u32) -> Vec<Self> {
        fn rec(slots: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Weight>) {
            if slots == 0 {
                if left == 0 {
                    out.push(Weight { a: cur.clone() });
                }
                return;
            }
            for x in 0..=left {
                cur.push(x);
                rec(slots - 1, left - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n - 1, size, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer vector indexed by the canonical positions of `P`.
pub type LatticePoint = Vec<i64>;

pub fn indicator(poset: &GtPoset, mask: u64) -> LatticePoint {
    let mut x = vec![0; poset.len()];
    for b in iter_bits(mask) {
        x[b] = 1;
    }
    x
}

/// `{ 1_{M_{O,C}(J)} : J ∈ 𝒥_k }`.
pub fn fundamental_points(poset: &GtPoset, oc: &OcPartition, k: usize) -> BTreeSet<LatticePoint> {
    poset
        .ideals_with_k(k)
        .iter()
        .map(|j| indicator(poset, poset.m_oc(j, oc)))
        .collect()
}

pub fn sumset(a: &BTreeSet<LatticePoint>, b: &BTreeSet<LatticePoint>) -> BTreeSet<LatticePoint> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x.iter().zip(y).map(|(p, q)| p + q).collect());
        }
    }
    out
}

/// Integer points of `𝒪_{O,C}(λ)` as the sumset `Σ_k a_k · S(ω_k)`.
pub fn lattice_points(
    poset: &GtPoset,
    oc: &OcPartition,
    weight: &Weight,
) -> BTreeSet<LatticePoint> {
    let mut acc: BTreeSet<LatticePoint> = [vec![0; poset.len()]].into_iter().collect();
    for k in 1..poset.n() {
        let count = weight.a[k - 1];
        if count == 0 {
            continue;
        }
        let fund = fundamental_points(poset, oc, k);
        for _ in 0..count {
            acc = sumset(&acc, &fund);
        }
    }
    acc
}

/// Membership in the inequality description of `𝒪_{O,C}(λ)`:
/// diagonal coordinates equal `λ(i)`, chain coordinates are nonnegative, and
/// for all `p ≺ q` in `O ∪ A` every chain `p ≺ c_1 ≺ ... ≺ c_m ≺ q` inside
/// `C` (including `m = 0`) has `x_{c_1} + ... + x_{c_m} <= x_p - x_q`.
pub fn contains_ineq<T>(x: &[T], poset: &GtPoset, oc: &OcPartition, weight: &Weight) -> bool
where
    T: Clone + PartialOrd + Zero + FromPrimitive + std::ops::Sub<Output = T>,
{
    if x.len() != poset.len() {
        return false;
    }
    let zero = T::zero();
    for (b, p) in poset.elements().iter().enumerate() {
        if p.is_diagonal() && x[b] != T::from_i64(weight.lambda(p.i)).expect("fits") {
            return false;
        }
    }
    let chain = oc.chain_mask(poset);
    if iter_bits(chain).any(|b| x[b] < zero) {
        return false;
    }
    let marked = oc.marked_mask(poset);
    let len = poset.len();
    // canonical order is a linear extension of ≺
    for p in iter_bits(marked) {
        let mut best: Vec<Option<T>> = vec![None; len];
        for c in p + 1..len {
            let pe = poset.element(p);
            let ce = poset.element(c);
            if !pe.leq(&ce) {
                continue;
            }
            // heaviest chain strictly between p and c
            let mut inner = zero.clone();
            for c2 in iter_bits(chain & poset.down_mask(ce) & !(1 << c)) {
                if c2 > p && pe.leq(&poset.element(c2)) {
                    if let Some(v) = &best[c2] {
                        if *v > inner {
                            inner = v.clone();
                        }
                    }
                }
            }
            if chain >> c & 1 == 1 {
                best[c] = Some(inner + x[c].clone());
            } else if inner > x[p].clone() - x[c].clone() {
                return false;
            }
        }
    }
    true
}

/// Integer points of the inequality description, searched in the box
/// `0 <= x <= λ(1)` off the diagonal.
pub fn points_by_inequalities(
    poset: &GtPoset,
    oc: &OcPartition,
    weight: &Weight,
) -> BTreeSet<LatticePoint> {
    let bound = weight.lambda(1);
    let free: Vec<usize> = (0..poset.len())
        .filter(|&b| !poset.element(b).is_diagonal())
        .collect();
    let mut x: LatticePoint = poset
        .elements()
        .iter()
        .map(|p| {
            if p.is_diagonal() {
                weight.lambda(p.i)
            } else {
                0
            }
        })
        .collect();
    let mut out = BTreeSet::new();
    loop {
        if contains_ineq(&x, poset, oc, weight) {
            out.insert(x.clone());
        }
        // odometer step
        let mut t = 0;
        while t < free.len() && x[free[t]] == bound {
            x[free[t]] = 0;
            t += 1;
        }
        if t == free.len() {
            break;
        }
        x[free[t]] += 1;
    }
    out
}

/// An integer square matrix on `ℤ^P`; column = source, row = target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularMap {
    pub matrix: Vec<Vec<i64>>,
}

impl UnimodularMap {
    pub fn apply(&self, x: &[i64]) -> LatticePoint {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant_i64(&self.matrix)
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.determinant();
        d.is_one() || (-d).is_one()
    }
}

/// `ξ(ε_{i,i}) = ε_{i,τr(i,i)}` and, for `i < j`,
/// `ξ(ε_{i,j}) = ε_{i,τr(i,j)} - ε_{i,τr(i,j')}` with `j' < j` maximal such
/// that `(i,j') ∈ O ∪ A`.
pub fn xi_map(poset: &GtPoset, oc: &OcPartition, tables: &PartitionTables) -> UnimodularMap {
    let len = poset.len();
    let mut matrix = vec![vec![0i64; len]; len];
    let tau = &tables.tau;
    let target = |i: usize, j: usize| {
        let c = tau.apply(tables.r(i, j));
        debug_assert!(c >= i, "τ r({i},{j}) = {c} lies left of the diagonal");
        poset.index(PosetElement::new(i, c))
    };
    for (src, p) in poset.elements().iter().enumerate() {
        matrix[target(p.i, p.j)][src] += 1;
        if !p.is_diagonal() {
            let jp = (p.i..p.j)
                .rev()
                .find(|&l| oc.is_marked(poset, PosetElement::new(p.i, l)))
                .expect("diagonal is marked");
            matrix[target(p.i, jp)][src] -= 1;
        }
    }
    UnimodularMap { matrix }
}

/// `∏_{i<j} (λ(i) - λ(j) + j - i) / (j - i)`.
pub fn weyl_dim(weight: &Weight) -> BigUint {
    let n = weight.n();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let li = if i < n { weight.lambda(i) } else { 0 };
            let lj = if j < n { weight.lambda(j) } else { 0 };
            num *= BigUint::from_i64(li - lj + (j - i) as i64).expect("dominant");
            den *= BigUint::from(j - i);
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}
