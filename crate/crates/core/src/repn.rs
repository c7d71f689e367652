//! Fundamental representations `Λ^k ℂ^n`, their tensor products, the action
//! of the root vectors `f_{i,j}`, and rank certificates for monomial bases.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::mcop::{lattice_points, weyl_dim, xi_map, LatticePoint, Weight};
use crate::pipedream::PartitionTables;
use crate::poset::{GtPoset, OcPartition};

/// Basis vector `e_{i_1,...,i_k}` of `Λ^k ℂ^n` as a bitmask (bit `i-1` = `i`).
pub type ExteriorBasis = u32;

pub fn exterior_basis(indices: &[usize]) -> ExteriorBasis {
    indices.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

/// Sparse vector in a tensor product of exterior powers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepVector {
    pub coords: BTreeMap<Vec<ExteriorBasis>, BigRational>,
}

impl RepVector {
    pub fn basis(key: Vec<ExteriorBasis>) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(key, BigRational::one());
        Self { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn add_term(&mut self, key: Vec<ExteriorBasis>, c: BigRational) {
        let slot = self
            .coords
            .entry(key.clone())
            .or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&key);
        }
    }
}

/// `f_{i,j}` on `e_S`: replace `i` by `j` and re-sort (zero unless `i ∈ S`,
/// `j ∉ S`).
fn act_on_basis(i: usize, j: usize, s: ExteriorBasis) -> Option<(ExteriorBasis, i8)> {
    let (bi, bj) = (1u32 << (i - 1), 1u32 << (j - 1));
    if s & bi == 0 || s & bj != 0 {
        return None;
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let between = s & ((1u32 << (hi - 1)) - 1) & !((1u32 << lo) - 1);
    let sign = if between.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    };
    Some((s & !bi | bj, sign))
}

/// `f_{i,j} v` by the Leibniz rule over tensor factors.
pub fn act_f(i: usize, j: usize, v: &RepVector) -> RepVector {
    let mut out = RepVector::default();
    for (key, c) in &v.coords {
        for (pos, &s) in key.iter().enumerate() {
            if let Some((t, sign)) = act_on_basis(i, j, s) {
                let mut k2 = key.clone();
                k2[pos] = t;
                out.add_term(k2, if sign > 0 { c.clone() } else { -c.clone() });
            }
        }
    }
    out
}

/// `u = v_{ω_1}^{⊗ a_1} ⊗ ... ⊗ v_{ω_{n-1}}^{⊗ a_{n-1}}`.
pub fn highest_weight_tensor(weight: &Weight) -> RepVector {
    let key = (1..weight.n())
        .flat_map(|k| {
            std::iter::repeat_n(
                exterior_basis(&(1..=k).collect::<Vec<_>>()),
                weight.a[k - 1] as usize,
            )
        })
        .collect();
    RepVector::basis(key)
}

/// Exponents `c_{i,j}`, `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbwExponent {
    pub c: BTreeMap<(usize, usize), u32>,
}

impl PbwExponent {
    /// Off-diagonal part of a point indexed by `P`.
    pub fn from_point(poset: &GtPoset, x: &[i64]) -> Self {
        let c = poset
            .elements()
            .iter()
            .zip(x)
            .filter(|(p, &v)| !p.is_diagonal() && v != 0)
            .map(|(p, &v)| ((p.i, p.j), u32::try_from(v).expect("nonnegative exponent")))
            .collect();
        Self { c }
    }
}

/// `f^c u` with `f^c = f_{1,2}^{c_{1,2}} f_{1,3}^{c_{1,3}} ... f_{n-1,n}^{c_{n-1,n}}`,
/// rightmost factor applied first.
pub fn apply_pbw(c: &PbwExponent, weight: &Weight) -> RepVector {
    apply_pbw_to(c, highest_weight_tensor(weight))
}

pub fn apply_pbw_to(c: &PbwExponent, mut v: RepVector) -> RepVector {
    for (&(i, j), &e) in c.c.iter().rev() {
        for _ in 0..e {
            v = act_f(i, j, &v);
            if v.is_zero() {
                return v;
            }
        }
    }
    v
}

/// Rows of integers spanning the same space as `vectors`, over a common
/// coordinate order.
fn integer_matrix(vectors: &[RepVector]) -> Vec<Vec<BigInt>> {
    let keys: BTreeSet<&Vec<ExteriorBasis>> =
        vectors.iter().flat_map(|v| v.coords.keys()).collect();
    vectors
        .iter()
        .map(|v| {
            let lcm = v
                .coords
                .values()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            keys.iter()
                .map(|k| {
                    v.coords.get(*k).map_or_else(BigInt::zero, |c| {
                        (c * BigRational::from_integer(lcm.clone())).to_integer()
                    })
                })
                .collect()
        })
        .collect()
}

pub fn rank_of(vectors: &[RepVector]) -> usize {
    linalg::rank(&integer_matrix(vectors))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCertificate {
    pub weight: Weight,
    pub points: usize,
    pub rank: usize,
    pub weyl_dim: String,
    pub pass: bool,
    /// First exponent vector lying in the span of the earlier ones, if any.
    pub dependent: Option<Vec<((usize, usize), u32)>>,
}

/// `{ f^c u : c ∈ ξ(𝒪_{O,C}(λ) ∩ ℤ^P) }` with the diagonal dropped; certifies
/// linear independence of `dim V_λ` vectors by exact elimination.
pub fn monomial_basis_check(
    poset: &GtPoset,
    oc: &OcPartition,
    weight: &Weight,
) -> BasisCertificate {
    let exps = basis_exponents(poset, oc, weight);
    let vectors: Vec<RepVector> = exps.iter().map(|c| apply_pbw(c, weight)).collect();
    let matrix = integer_matrix(&vectors);
    let rank = linalg::rank(&matrix);
    let dim = weyl_dim(weight);
    let pass = rank == exps.len() && num_bigint::BigUint::from(rank) == dim;
    let dependent = if rank < exps.len() {
        linalg::first_dependent_row(&matrix)
            .map(|r| exps[r].c.iter().map(|(&k, &v)| (k, v)).collect())
    } else {
        None
    };
    BasisCertificate {
        weight: weight.clone(),
        points: exps.len(),
        rank,
        weyl_dim: dim.to_string(),
        pass,
        dependent,
    }
}

/// Off-diagonal parts of `ξ(x)` over the integer points `x` of `𝒪_{O,C}(λ)`.
pub fn basis_exponents(poset: &GtPoset, oc: &OcPartition, weight: &Weight) -> Vec<PbwExponent> {
    let tables = PartitionTables::new(poset, oc);
    let xi = xi_map(poset, oc, &tables);
    let pts: BTreeSet<LatticePoint> = lattice_points(poset, oc, weight)
        .iter()
        .map(|x| xi.apply(x))
        .collect();
    pts.iter()
        .map(|x| PbwExponent::from_point(poset, x))
        .collect()
}

/// Weight of `f^c u`: `λ - Σ c_{i,j} α_{i,j}` as a vector in `ℤ^n`
/// (`ε`-coordinates of the highest weight minus root contributions).
pub fn pbw_weight(c: &PbwExponent, weight: &Weight) -> Vec<i64> {
    let n = weight.n();
    let mut out: Vec<i64> = (1..=n)
        .map(|i| if i < n { weight.lambda(i) } else { 0 })
        .collect();
    for (&(i, j), &e) in &c.c {
        out[i - 1] -= i64::from(e);
        out[j - 1] += i64::from(e);
    }
    out
}

/// `ε`-weight of a tensor basis key.
pub fn key_weight(key: &[ExteriorBasis], n: usize) -> Vec<i64> {
    (1..=n)
        .map(|i| key.iter().filter(|&&s| s >> (i - 1) & 1 == 1).count() as i64)
        .collect()
}
