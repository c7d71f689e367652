//! Plücker minors, their initial terms under the partition order, the maps
//! `ψ` and `θ`, degree-two toric kernels and the census of initial ideals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::linalg;
use crate::mcop::{weyl_dim, Weight};
use crate::order::{variable_order, VarOrder, ZVar};
use crate::perm::{sign_of_sequence, Permutation};
use crate::pipedream::{w_j, PartitionTables};
use crate::poly::{Monomial, Polynomial};
use crate::poset::{iter_bits, GtPoset, OcPartition, OrderIdeal, PosetElement};

/// `X_{i_1,...,i_k}` normalized to increasing indices; `sign` records the
/// sorting sign when built from an unsorted tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlueckerVar {
    pub indices: Vec<usize>,
    pub sign: i8,
}

impl PlueckerVar {
    pub fn from_unsorted(tuple: &[usize]) -> Result<Self> {
        let mut indices = tuple.to_vec();
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return domain(format!("repeated Plücker index in {tuple:?}"));
        }
        Ok(Self {
            sign: sign_of_sequence(tuple),
            indices,
        })
    }
}

impl fmt::Display for PlueckerVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "{s}X_{{{}}}", idx.join(","))
    }
}

/// `D_{i_1,...,i_k}`: the minor of `(z_{i,j})` on rows `1..k` and columns
/// `i_1, ..., i_k` (in the given order).
pub fn plucker_determinant(indices: &[usize], n: usize) -> Result<Polynomial<ZVar>> {
    let k = indices.len();
    if k == 0 || k >= n {
        return domain(format!("minor size {k} outside [1, {}]", n - 1));
    }
    if indices.iter().any(|&c| c == 0 || c > n) {
        return domain(format!("{indices:?} not in [1, {n}]"));
    }
    PlueckerVar::from_unsorted(indices)?;
    Ok(Polynomial::from_terms(Permutation::all(k).into_iter().map(
        |p| {
            let m =
                Monomial::from_pairs((1..=k).map(|r| (ZVar::new(r, indices[p.apply(r) - 1]), 1)));
            (m, BigInt::from(p.sign()))
        },
    )))
}

pub fn initial_term(p: &Polynomial<ZVar>, ord: &VarOrder) -> Result<(Monomial<ZVar>, BigInt)> {
    p.initial_term(ord)
}

/// `ψ(X_J) = X_{w^J(1),...,w^J(k)}`, sign-normalized.
pub fn psi_map(poset: &GtPoset, ideal: &OrderIdeal, oc: &OcPartition) -> Result<PlueckerVar> {
    let k = ideal.k(poset);
    if k == 0 || k >= poset.n() {
        return domain(format!(
            "ψ is defined on 𝒥_k for 1 <= k <= n-1, got k = {k}"
        ));
    }
    let w = w_j(poset, ideal, oc);
    PlueckerVar::from_unsorted(&w.images()[..k])
}

/// `φ_{O,C}(X_J) = z^{x_{O,C}(J)}` as a monomial in the variables `z_p`, `p ∈ P`.
pub fn phi_oc(poset: &GtPoset, ideal: &OrderIdeal, oc: &OcPartition) -> Monomial<PosetElement> {
    Monomial::from_pairs(iter_bits(poset.m_oc(ideal, oc)).map(|b| (poset.element(b), 1)))
}

/// The monomial map `θ`, one Laurent image per element of `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaMap {
    pub images: Vec<Monomial<ZVar>>,
}

impl ThetaMap {
    pub fn image(&self, m: &Monomial<PosetElement>, poset: &GtPoset) -> Monomial<ZVar> {
        m.exps().iter().fold(Monomial::one(), |acc, (p, &e)| {
            acc.mul(&self.images[poset.index(*p)].pow(e))
        })
    }

    /// Exponent matrix restricted to the variables that occur; square for
    /// every partition.
    pub fn exponent_matrix(&self) -> (Vec<ZVar>, Vec<Vec<i64>>) {
        let vars: Vec<ZVar> = self
            .images
            .iter()
            .flat_map(|m| m.exps().keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let matrix = vars
            .iter()
            .map(|v| self.images.iter().map(|m| i64::from(m.exp(v))).collect())
            .collect();
        (vars, matrix)
    }

    pub fn determinant(&self) -> Option<BigInt> {
        let (vars, matrix) = self.exponent_matrix();
        (vars.len() == self.images.len()).then(|| linalg::determinant_i64(&matrix))
    }
}

/// `θ(z_{i,i}) = z_{i,r(i,i)}` and `θ(z_{i,j}) = z_{i,r(i,j)} / z_{i,r(i,j')}`
/// for `i < j`, with `j' < j` maximal such that `(i,j') ∈ O ∪ A`.
pub fn theta_map(poset: &GtPoset, oc: &OcPartition, tables: &PartitionTables) -> ThetaMap {
    let images = poset
        .elements()
        .iter()
        .map(|p| {
            let mut m = Monomial::var(ZVar::new(p.i, tables.r(p.i, p.j)));
            if !p.is_diagonal() {
                let jp = (p.i..p.j)
                    .rev()
                    .find(|&l| oc.is_marked(poset, PosetElement::new(p.i, l)))
                    .expect("diagonal is marked");
                m.add_exp(ZVar::new(p.i, tables.r(p.i, jp)), -1);
            }
            m
        })
        .collect();
    ThetaMap { images }
}

/// A generator of a monomial algebra: its degree, label, image and sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<L, V: Ord> {
    pub degree: usize,
    pub label: L,
    pub image: Monomial<V>,
    pub sign: i8,
}

/// Degree-two kernel of a monomial map `X_L ↦ sign · image`, recorded as its
/// fibers: each fiber lists the label pairs with equal image together with the
/// sign relative to the first pair. The binomials `s_a X_a - s_b X_b` over a
/// fiber span the kernel in that degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(bound(
    serialize = "L: Serialize + Ord",
    deserialize = "L: Deserialize<'de> + Ord"
))]
pub struct KernelFingerprint<L: Ord> {
    pub fibers: BTreeSet<Vec<((L, L), i8)>>,
}

/// A label pair with a sign.
pub type SignedPair<L> = ((L, L), i8);

/// `X_a X_b - sign · X_c X_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binomial<L> {
    pub lhs: (L, L),
    pub rhs: (L, L),
    pub sign: i8,
}

impl<L: Ord> Default for KernelFingerprint<L> {
    fn default() -> Self {
        Self {
            fibers: BTreeSet::new(),
        }
    }
}

impl<L: Ord + Clone> KernelFingerprint<L> {
    pub fn binomials(&self) -> Vec<Binomial<L>> {
        self.fibers
            .iter()
            .flat_map(|fiber| {
                let (first, _) = fiber[0].clone();
                fiber[1..].iter().map(move |(pair, s)| Binomial {
                    lhs: first.clone(),
                    rhs: pair.clone(),
                    sign: *s,
                })
            })
            .collect()
    }

    pub fn relation_count(&self) -> usize {
        self.fibers.iter().map(|f| f.len() - 1).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            fibers: self.fibers.union(&other.fibers).cloned().collect(),
        }
    }

    fn from_fibers(raw: impl IntoIterator<Item = Vec<((L, L), i8)>>) -> Self {
        let fibers = raw
            .into_iter()
            .filter(|f| f.len() > 1)
            .map(|mut f| {
                f.sort();
                let s0 = f[0].1;
                f.into_iter().map(|(p, s)| (p, s * s0)).collect()
            })
            .collect();
        Self { fibers }
    }
}

/// Degree-two kernel over the unordered generator pairs accepted by `accept`.
pub fn toric_kernel_deg2<L, V>(
    gens: &[Generator<L, V>],
    accept: impl Fn(&Generator<L, V>, &Generator<L, V>) -> bool,
) -> KernelFingerprint<L>
where
    L: Ord + Clone,
    V: Ord + Clone,
{
    let mut fibers: BTreeMap<Monomial<V>, Vec<SignedPair<L>>> = BTreeMap::new();
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a..] {
            if !accept(x, y) {
                continue;
            }
            let pair = if x.label <= y.label {
                (x.label.clone(), y.label.clone())
            } else {
                (y.label.clone(), x.label.clone())
            };
            fibers
                .entry(x.image.mul(&y.image))
                .or_default()
                .push((pair, x.sign * y.sign));
        }
    }
    KernelFingerprint::from_fibers(fibers.into_values())
}

/// Accept pairs of degrees in `degrees` (both entries drawn from the set).
pub fn degree_filter<L, V: Ord>(
    degrees: &[usize],
) -> impl Fn(&Generator<L, V>, &Generator<L, V>) -> bool + '_ {
    move |x, y| degrees.contains(&x.degree) && degrees.contains(&y.degree)
}

/// `w(X_I) = X_{w(I)}` on Plücker labels, renormalized.
pub fn act_on_fingerprint(
    fp: &KernelFingerprint<Vec<usize>>,
    w: &Permutation,
) -> KernelFingerprint<Vec<usize>> {
    let act = |label: &Vec<usize>| {
        let image: Vec<usize> = label.iter().map(|&x| w.apply(x)).collect();
        let v = PlueckerVar::from_unsorted(&image).expect("w is a bijection");
        (v.indices, v.sign)
    };
    KernelFingerprint::from_fibers(fp.fibers.iter().map(|fiber| {
        fiber
            .iter()
            .map(|((a, b), s)| {
                let (a2, sa) = act(a);
                let (b2, sb) = act(b);
                let pair = if a2 <= b2 { (a2, b2) } else { (b2, a2) };
                (pair, s * sa * sb)
            })
            .collect()
    }))
}

/// Orbit representative: the least image under `S_n`.
pub fn canonical_fingerprint(
    fp: &KernelFingerprint<Vec<usize>>,
    n: usize,
) -> KernelFingerprint<Vec<usize>> {
    Permutation::all(n)
        .iter()
        .map(|w| act_on_fingerprint(fp, w))
        .min()
        .expect("S_n is nonempty")
}

/// Brute-force initial term of `D_I` for sorted `I`.
pub fn initial_of_sorted(indices: &[usize], n: usize, ord: &VarOrder) -> (Monomial<ZVar>, BigInt) {
    let d = plucker_determinant(indices, n).expect("valid index set");
    d.initial_term(ord).expect("nonzero minor")
}

/// Everything the degeneration needs for one partition.
pub struct PartitionContext<'a> {
    pub poset: &'a GtPoset,
    pub oc: OcPartition,
    pub tables: PartitionTables,
    pub order: VarOrder,
    pub theta: ThetaMap,
}

impl<'a> PartitionContext<'a> {
    pub fn new(poset: &'a GtPoset, oc: OcPartition) -> Self {
        let tables = PartitionTables::new(poset, &oc);
        let order = variable_order(poset, &oc, &tables);
        let theta = theta_map(poset, &oc, &tables);
        Self {
            poset,
            oc,
            tables,
            order,
            theta,
        }
    }

    /// Generators `ψ(X_J) ↦ z^{x_{O,C}(J)}` of the generalized Hibi ring,
    /// labelled on the Plücker side.
    pub fn hibi_generators(&self, degrees: &[usize]) -> Vec<Generator<Vec<usize>, PosetElement>> {
        let groups = self.poset.enumerate_ideals();
        degrees
            .iter()
            .flat_map(|&k| groups[k].iter().map(move |j| (k, j)))
            .map(|(k, j)| {
                let v = psi_map(self.poset, j, &self.oc).expect("1 <= k < n");
                Generator {
                    degree: k,
                    label: v.indices,
                    image: phi_oc(self.poset, j, &self.oc),
                    sign: v.sign,
                }
            })
            .collect()
    }

    /// Generators `X_I ↦ in_⋖ D_I` of the initial algebra.
    pub fn initial_generators(&self, degrees: &[usize]) -> Vec<Generator<Vec<usize>, ZVar>> {
        let n = self.poset.n();
        degrees
            .iter()
            .flat_map(|&k| k_subsets(n, k).into_iter().map(move |s| (k, s)))
            .map(|(k, s)| {
                let (m, c) = initial_of_sorted(&s, n, &self.order);
                Generator {
                    degree: k,
                    label: s,
                    image: m,
                    sign: if c.is_negative() { -1 } else { 1 },
                }
            })
            .collect()
    }
}

/// Increasing `k`-subsets of `[1, n]` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Per-ideal record of the initial-term and commuting-square checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRecord {
    pub ideal_mask: u64,
    pub k: usize,
    /// `(w^J(1), ..., w^J(k))`.
    pub tuple: Vec<usize>,
    pub psi: PlueckerVar,
    /// `z_{1,w^J(1)} ... z_{k,w^J(k)}` as `(row, column)` pairs.
    pub expected: Vec<(usize, usize)>,
    /// Brute-force initial monomial of `D_{w^J(1),...,w^J(k)}`.
    pub initial: Vec<(usize, usize)>,
    /// Its coefficient in the unsorted minor.
    pub coefficient: i64,
    pub initial_matches: bool,
    /// `θ(φ_{O,C}(X_J))`.
    pub theta_image: Vec<(usize, usize)>,
    /// `θ∘φ_{O,C} = sign · φ_⋖∘ψ` holds with this sign (0 = fails).
    pub square_sign: i8,
}

fn pairs(m: &Monomial<ZVar>) -> Vec<(usize, usize)> {
    m.exps()
        .iter()
        .flat_map(|(v, &e)| std::iter::repeat_n((v.i, v.j), e.max(0) as usize))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub order_bits: u64,
    pub psi_bijective: bool,
    pub initial_terms_match: bool,
    pub commuting_square: bool,
    pub kernels_agree: bool,
    pub theta_determinant: i64,
    pub records: Vec<IdealRecord>,
    pub relations: usize,
    #[serde(skip)]
    pub fingerprint: KernelFingerprint<Vec<usize>>,
}

impl PartitionReport {
    pub fn pass(&self) -> bool {
        self.psi_bijective
            && self.initial_terms_match
            && self.commuting_square
            && self.kernels_agree
    }
}

/// Run the degeneration checks for one partition and signature.
pub fn verify_partition(
    poset: &GtPoset,
    oc: &OcPartition,
    signature: &[usize],
) -> Result<PartitionReport> {
    let n = poset.n();
    if signature.iter().any(|&k| k == 0 || k >= n) {
        return domain(format!("signature {signature:?} outside [1, {}]", n - 1));
    }
    let ctx = PartitionContext::new(poset, *oc);
    let groups = poset.enumerate_ideals();
    let mut records = Vec::new();
    let mut psi_bijective = true;
    for &k in signature {
        let mut seen = BTreeSet::new();
        for j in &groups[k] {
            let w = w_j(poset, j, oc);
            let tuple = w.images()[..k].to_vec();
            let psi = PlueckerVar::from_unsorted(&tuple)?;
            psi_bijective &= seen.insert(psi.indices.clone());
            let d = plucker_determinant(&tuple, n)?;
            let (m, c) = d.initial_term(&ctx.order)?;
            let expected = Monomial::from_pairs((1..=k).map(|r| (ZVar::new(r, tuple[r - 1]), 1)));
            let theta_image = ctx.theta.image(&phi_oc(poset, j, oc), poset);
            // φ_⋖(ψ(X_J)) = psi.sign · in(D_sorted) = coefficient of in(D_tuple)
            let coefficient: i64 = if c.is_one() {
                1
            } else if (-&c).is_one() {
                -1
            } else {
                0
            };
            let square_sign = if theta_image == m {
                coefficient as i8
            } else {
                0
            };
            records.push(IdealRecord {
                ideal_mask: j.mask,
                k,
                tuple: tuple.clone(),
                psi,
                expected: pairs(&expected),
                initial: pairs(&m),
                coefficient,
                initial_matches: m == expected,
                theta_image: pairs(&theta_image),
                square_sign,
            });
        }
    }
    let hibi = toric_kernel_deg2(&ctx.hibi_generators(signature), degree_filter(signature));
    let init = toric_kernel_deg2(&ctx.initial_generators(signature), degree_filter(signature));
    Ok(PartitionReport {
        order_bits: oc.offdiag_bits(poset),
        psi_bijective,
        initial_terms_match: records.iter().all(|r| r.initial_matches),
        commuting_square: records.iter().all(|r| r.square_sign != 0),
        kernels_agree: hibi == init,
        theta_determinant: ctx
            .theta
            .determinant()
            .and_then(|d| i64::try_from(d).ok())
            .unwrap_or(0),
        relations: hibi.relation_count(),
        records,
        fingerprint: hibi,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SagbiCertificate {
    pub weight: Weight,
    pub distinct_products: usize,
    pub weyl_dim: String,
    pub pass: bool,
}

/// Count distinct degree-`λ` products of initial monomials of minors.
pub fn sagbi_count_check(poset: &GtPoset, oc: &OcPartition, weight: &Weight) -> SagbiCertificate {
    let ctx = PartitionContext::new(poset, *oc);
    let n = poset.n();
    let mut acc: BTreeSet<Monomial<ZVar>> = [Monomial::one()].into_iter().collect();
    for k in 1..n {
        let a = weight.a[k - 1];
        if a == 0 {
            continue;
        }
        let gens: Vec<Monomial<ZVar>> = k_subsets(n, k)
            .iter()
            .map(|s| initial_of_sorted(s, n, &ctx.order).0)
            .collect();
        for _ in 0..a {
            acc = acc
                .iter()
                .flat_map(|m| gens.iter().map(move |g| m.mul(g)))
                .collect();
        }
    }
    let dim = weyl_dim(weight);
    SagbiCertificate {
        weight: weight.clone(),
        distinct_products: acc.len(),
        pass: num_bigint::BigUint::from(acc.len()) == dim,
        weyl_dim: dim.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub signature: Vec<usize>,
    pub partitions: usize,
    /// Distinct degree-two fingerprints of `ψ(I^{O,C})` over the partitions.
    pub realized_distinct: usize,
    /// Number of `S_n`-orbits they fall into.
    pub orbits: usize,
    /// Size of the union of those orbits.
    pub orbit_closure: usize,
}

/// Census of initial ideals over the given partitions. The degree-two
/// fingerprint stands in for the ideal, which is generated in degree two.
pub fn orbit_census(
    poset: &GtPoset,
    signature: &[usize],
    partitions: &[OcPartition],
    deadline: Option<Instant>,
) -> Result<Census> {
    let n = poset.n();
    let mut realized = BTreeSet::new();
    for (done, oc) in partitions.iter().enumerate() {
        if deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::Budget(format!(
                "census stopped after {done} of {} partitions",
                partitions.len()
            )));
        }
        let ctx = PartitionContext::new(poset, *oc);
        realized.insert(toric_kernel_deg2(
            &ctx.hibi_generators(signature),
            degree_filter(signature),
        ));
    }
    Ok(census_from_fingerprints(
        n,
        signature,
        partitions.len(),
        realized,
    ))
}

/// Census over already computed degree-two fingerprints, one per partition.
pub fn census_from_fingerprints(
    n: usize,
    signature: &[usize],
    partitions: usize,
    fingerprints: impl IntoIterator<Item = KernelFingerprint<Vec<usize>>>,
) -> Census {
    let realized: BTreeSet<_> = fingerprints.into_iter().collect();
    let perms = Permutation::all(n);
    let mut closure = BTreeSet::new();
    let mut reps = BTreeSet::new();
    for fp in &realized {
        let orbit: BTreeSet<_> = perms.iter().map(|w| act_on_fingerprint(fp, w)).collect();
        reps.insert(orbit.iter().next().cloned().expect("nonempty orbit"));
        closure.extend(orbit);
    }
    Census {
        n,
        signature: signature.to_vec(),
        partitions,
        realized_distinct: realized.len(),
        orbits: reps.len(),
        orbit_closure: closure.len(),
    }
}

/// Monomials `X_{J_1} X_{J_2}` with `J_1, J_2` incomparable, drawn from the
/// groups `𝒥_k`, `k` in the signature.
pub fn standard_monomial_ideal(
    poset: &GtPoset,
    signature: &[usize],
) -> Vec<(OrderIdeal, OrderIdeal)> {
    let groups = poset.enumerate_ideals();
    let mut ideals: Vec<OrderIdeal> = signature
        .iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .flat_map(|&k| groups[k].iter().copied())
        .collect();
    ideals.sort();
    let mut out = Vec::new();
    for (a, x) in ideals.iter().enumerate() {
        for y in &ideals[a + 1..] {
            if !x.is_subset(y) && !y.is_subset(x) {
                out.push((*x, *y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> PosetElement {
        PosetElement::new(i, j)
    }

    fn mono(pairs: &[(usize, usize)]) -> Monomial<ZVar> {
        Monomial::from_pairs(pairs.iter().map(|&(i, j)| (ZVar::new(i, j), 1)))
    }

    #[test]
    fn two_by_two_minor() {
        let d = plucker_determinant(&[1, 2], 3).unwrap();
        assert_eq!(d.to_string(), "z11*z22 - z12*z21");
        assert_eq!(plucker_determinant(&[1, 2, 4], 5).unwrap().len(), 6);
        assert!(plucker_determinant(&[2, 2], 4).is_err());
    }

    #[test]
    fn plucker_sign_normalization() {
        let v = PlueckerVar::from_unsorted(&[4, 3]).unwrap();
        assert_eq!((v.indices, v.sign), (vec![3, 4], -1));
        assert_eq!(PlueckerVar::from_unsorted(&[2, 5, 4]).unwrap().sign, -1);
    }

    #[test]
    fn psi_example_for_sixteen_partitions() {
        let poset = GtPoset::new(4).unwrap();
        let j = poset.ideal_generated_by(poset.mask_of(&[e(1, 4), e(2, 3)]).unwrap());
        let mut hits = 0;
        for oc in OcPartition::all(&poset) {
            if oc.in_order(&poset, e(1, 2)) && !oc.in_order(&poset, e(1, 3)) {
                let v = psi_map(&poset, &j, &oc).unwrap();
                assert_eq!((v.indices, v.sign), (vec![3, 4], -1));
                hits += 1;
            }
        }
        assert_eq!(hits, 16);
        assert!(psi_map(
            &poset,
            &OrderIdeal::empty(4),
            &OcPartition::all_chain(&poset)
        )
        .is_err());
    }

    #[test]
    fn gt_order_is_antidiagonal() {
        let poset = GtPoset::new(4).unwrap();
        let ctx = PartitionContext::new(&poset, OcPartition::all_order(&poset));
        for k in 1..4 {
            for s in k_subsets(4, k) {
                let (m, _) = initial_of_sorted(&s, 4, &ctx.order);
                let anti: Vec<(usize, usize)> = (1..=k).map(|r| (r, s[k - r])).collect();
                assert_eq!(m, mono(&anti));
            }
        }
    }

    #[test]
    fn fflv_pbw_example() {
        let poset = GtPoset::new(5).unwrap();
        let ctx = PartitionContext::new(&poset, OcPartition::all_chain(&poset));
        let (m, _) = initial_of_sorted(&[2, 4, 5], 5, &ctx.order);
        assert_eq!(m, mono(&[(1, 5), (2, 2), (3, 4)]));
    }

    #[test]
    fn twisted_initial_terms_are_triangular() {
        let poset = GtPoset::new(4).unwrap();
        for oc in OcPartition::all(&poset) {
            let ctx = PartitionContext::new(&poset, oc);
            let tw = ctx.order.twisted(&ctx.tables.tau);
            for k in 1..4 {
                for s in k_subsets(4, k) {
                    let (m, _) = initial_of_sorted(&s, 4, &tw);
                    assert!(m.exps().keys().all(|v| v.j >= v.i), "{oc:?} {s:?} {m}");
                }
            }
        }
    }

    #[test]
    fn full_checks_n3() {
        let poset = GtPoset::new(3).unwrap();
        for oc in OcPartition::all(&poset) {
            let rep = verify_partition(&poset, &oc, &[1, 2]).unwrap();
            assert!(rep.pass(), "{rep:?}");
            assert_eq!(rep.theta_determinant.abs(), 1);
            // the single Plücker relation of the full flag variety of SL_3
            assert_eq!(rep.relations, 1);
        }
    }

    #[test]
    fn gt_kernel_is_hibi() {
        let poset = GtPoset::new(4).unwrap();
        let oc = OcPartition::all_order(&poset);
        let ctx = PartitionContext::new(&poset, oc);
        let fp = toric_kernel_deg2(&ctx.hibi_generators(&[1, 2, 3]), degree_filter(&[1, 2, 3]));
        let mut expected = 0;
        let ideals: Vec<_> = [1, 2, 3]
            .iter()
            .flat_map(|&k| poset.ideals_with_k(k))
            .collect();
        for (a, x) in ideals.iter().enumerate() {
            for y in &ideals[a + 1..] {
                if !x.is_subset(y) && !y.is_subset(x) {
                    expected += 1;
                }
            }
        }
        // one Hibi relation X_{J1} X_{J2} - X_{J1 ∪ J2} X_{J1 ∩ J2} per incomparable pair
        assert_eq!(fp.relation_count(), expected);
        assert_eq!(standard_monomial_ideal(&poset, &[1, 2, 3]).len(), expected);
    }

    #[test]
    fn sagbi_counts_small() {
        let poset = GtPoset::new(3).unwrap();
        for oc in OcPartition::all(&poset) {
            let cert = sagbi_count_check(&poset, &oc, &Weight::new(vec![1, 1]));
            assert!(cert.pass, "{cert:?}");
            assert_eq!(cert.distinct_products, 8);
        }
    }

    #[test]
    fn single_partition_census() {
        let poset = GtPoset::new(3).unwrap();
        let c = orbit_census(&poset, &[1, 2], &[OcPartition::all_chain(&poset)], None).unwrap();
        assert_eq!((c.realized_distinct, c.orbits), (1, 1));
    }

    #[test]
    fn standard_monomials_n2_empty() {
        let poset = GtPoset::new(2).unwrap();
        assert!(standard_monomial_ideal(&poset, &[1]).is_empty());
    }
}
