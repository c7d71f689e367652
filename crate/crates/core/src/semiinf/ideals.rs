use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::pipes::w_of_subset_q;
use super::qposet::{QElement, QPartition, QPoset, QSet};
use super::series::{series_minor, series_var_order, theta_inf, theta_s, SeriesOrder, SeriesVar};
use crate::degeneration::{k_subsets, toric_kernel_deg2, Generator, PlueckerVar};
use crate::error::{Error, Result};
use crate::poly::Monomial;

/// A finite order ideal of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QIdeal {
    pub members: QSet,
}

impl QIdeal {
    /// Number of diagonal members.
    pub fn d(&self) -> usize {
        self.members.iter().filter(|p| p.is_diagonal()).count()
    }
}

/// Largest universe handled by the bitset enumeration.
const MAX_UNIVERSE: usize = 128;

/// All finite ideals with `d(J) ≤ d_max`: the downsets of the elements not
/// above `(k+d_max+1, k+d_max+1)`, sorted by `(d, members)`.
pub fn enumerate_q_ideals(q: &QPoset, d_max: usize) -> Result<Vec<QIdeal>> {
    let top = q.diagonal(d_max + 1);
    let universe: Vec<QElement> = (1..=2 * q.k + d_max)
        .flat_map(|i| (i..i + q.n).map(move |j| QElement::new(i, j)))
        .filter(|&p| q.contains(p) && !q.leq(top, p))
        .collect();
    if universe.len() > MAX_UNIVERSE {
        return Err(Error::Capacity(format!(
            "{} elements below level {d_max} exceed the {MAX_UNIVERSE}-bit enumeration",
            universe.len()
        )));
    }
    let below: Vec<u128> = universe
        .iter()
        .map(|&p| {
            universe
                .iter()
                .enumerate()
                .filter(|&(_, &c)| q.lt(c, p))
                .fold(0u128, |acc, (b, _)| acc | 1 << b)
        })
        .collect();
    let mut seen: HashSet<u128> = HashSet::from([0]);
    let mut stack = vec![0u128];
    while let Some(s) = stack.pop() {
        for (b, &mask) in below.iter().enumerate() {
            if s >> b & 1 == 0 && s & mask == mask {
                let t = s | 1 << b;
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
    let mut out: Vec<QIdeal> = seen
        .into_iter()
        .map(|s| QIdeal {
            members: (0..universe.len())
                .filter(|&b| s >> b & 1 == 1)
                .map(|b| universe[b])
                .collect(),
        })
        .collect();
    out.sort_by(|a, b| (a.d(), &a.members).cmp(&(b.d(), &b.members)));
    Ok(out)
}

/// `X^{(l)}_I`: level and sorted index set.
pub type LevelLabel = (usize, Vec<usize>);

/// `ψ_∞(X_J) = X^{(d(J))}_{w^J(1),...,w^J(k)}`, with `w^J = w_{M_{O,C}(J)}`.
pub fn psi_inf(o: &QPartition, ideal: &QIdeal) -> Result<(usize, PlueckerVar)> {
    let w = w_of_subset_q(&o.q, &o.m_oc(&ideal.members));
    Ok((ideal.d(), PlueckerVar::from_unsorted(&w.images()[..o.q.k])?))
}

/// Variables of the semi-infinite Hibi ring: `s` and `z_p`, `p ∈ Q`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HibiVar {
    S,
    Z(QElement),
}

/// `φ_∞(X_J) = s · ∏_{p ∈ M_{O,C}(J)} z_p`.
fn phi_inf(o: &QPartition, ideal: &QIdeal) -> Monomial<HibiVar> {
    let mut m = Monomial::var(HibiVar::S);
    for p in o.m_oc(&ideal.members) {
        m.add_exp(HibiVar::Z(p), 1);
    }
    m
}

fn theta_of_phi(o: &QPartition, ideal: &QIdeal) -> Result<Monomial<SeriesVar>> {
    let mut m = theta_s(o.q.k);
    for p in o.m_oc(&ideal.members) {
        m = m.mul(&theta_inf(o, p)?);
    }
    Ok(m)
}

/// `z^{(q)}_{l+1,w(l+1)} ... z^{(q)}_{k,w(k)} z^{(q+1)}_{1,w(1)} ... z^{(q+1)}_{l,w(l)}`
/// with `d = qk + l`.
fn expected_initial(k: usize, d: usize, tuple: &[usize]) -> Monomial<SeriesVar> {
    let (q, l) = (d / k, d % k);
    Monomial::from_pairs((1..=k).map(|a| {
        let level = if a <= l { q + 1 } else { q };
        (SeriesVar::new(level, a, tuple[a - 1]), 1)
    }))
}

fn to_triples(m: &Monomial<SeriesVar>) -> Vec<(usize, usize, usize, i32)> {
    m.exps().iter().map(|(v, &e)| (v.l, v.i, v.j, e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QIdealRecord {
    pub members: Vec<QElement>,
    pub level: usize,
    pub tuple: Vec<usize>,
    pub psi: PlueckerVar,
    /// `(level, row, column, exponent)`.
    pub expected: Vec<(usize, usize, usize, i32)>,
    pub initial: Vec<(usize, usize, usize, i32)>,
    pub coefficient: i64,
    pub initial_matches: bool,
    pub theta_image: Vec<(usize, usize, usize, i32)>,
    /// `θ_∞∘φ_∞ = sign · φ_⋖∘ψ_∞` holds with this sign (0 = fails).
    pub square_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiInfReport {
    pub n: usize,
    pub k: usize,
    pub order_extra: Vec<QElement>,
    pub horizon: usize,
    pub d_max: usize,
    pub level_cap: usize,
    /// Ideals per level `0..=d_max`.
    pub level_counts: Vec<usize>,
    pub expected_per_level: usize,
    pub psi_bijective: bool,
    pub initial_terms_match: bool,
    pub commuting_square: bool,
    pub kernels_agree: bool,
    pub relations: usize,
    pub records: Vec<QIdealRecord>,
}

impl SemiInfReport {
    pub fn pass(&self) -> bool {
        self.level_counts
            .iter()
            .all(|&c| c == self.expected_per_level)
            && self.psi_bijective
            && self.initial_terms_match
            && self.commuting_square
            && self.kernels_agree
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sign_of(c: &num_bigint::BigInt) -> i64 {
    if c.is_one() {
        1
    } else if c.is_negative() && (-c).is_one() {
        -1
    } else {
        0
    }
}

/// All checks for ideals with `d(J) ≤ d_max`; variable levels are capped at
/// `d_max + 1`, and the degree-two kernels compare pairs of total level
/// `≤ d_max`.
pub fn verify_semiinf(o: &QPartition, d_max: usize) -> Result<SemiInfReport> {
    let (n, k) = (o.q.n, o.q.k);
    let cap = d_max + 1;
    let order = series_var_order(o, cap)?;
    let ideals = enumerate_q_ideals(&o.q, d_max)?;
    let mut level_counts = vec![0; d_max + 1];
    let mut seen: BTreeSet<LevelLabel> = BTreeSet::new();
    let mut psi_bijective = true;
    let mut records = Vec::with_capacity(ideals.len());
    let mut hibi = Vec::with_capacity(ideals.len());
    for ideal in &ideals {
        let d = ideal.d();
        level_counts[d] += 1;
        let w = w_of_subset_q(&o.q, &o.m_oc(&ideal.members));
        let tuple = w.images()[..k].to_vec();
        let psi = PlueckerVar::from_unsorted(&tuple)?;
        psi_bijective &= seen.insert((d, psi.indices.clone()));
        let (m, c) = order.initial_term(&series_minor(n, &tuple, d)?)?;
        let expected = expected_initial(k, d, &tuple);
        let theta_image = theta_of_phi(o, ideal)?;
        let coefficient = sign_of(&c);
        hibi.push(Generator {
            degree: d,
            label: (d, psi.indices.clone()),
            image: phi_inf(o, ideal),
            sign: psi.sign,
        });
        records.push(QIdealRecord {
            members: ideal.members.iter().copied().collect(),
            level: d,
            tuple,
            square_sign: if theta_image == m {
                coefficient as i8
            } else {
                0
            },
            psi,
            expected: to_triples(&expected),
            initial: to_triples(&m),
            coefficient,
            initial_matches: m == expected,
            theta_image: to_triples(&theta_image),
        });
    }
    let initial = initial_generators(n, k, d_max, &order)?;
    let hibi_kernel = toric_kernel_deg2(&hibi, level_filter(d_max));
    let init_kernel = toric_kernel_deg2(&initial, level_filter(d_max));
    Ok(SemiInfReport {
        n,
        k,
        order_extra: o.extra.iter().copied().collect(),
        horizon: o.horizon,
        d_max,
        level_cap: cap,
        level_counts,
        expected_per_level: binomial(n, k),
        psi_bijective,
        initial_terms_match: records.iter().all(|r| r.initial_matches),
        commuting_square: records.iter().all(|r| r.square_sign != 0),
        kernels_agree: hibi_kernel == init_kernel,
        relations: hibi_kernel.relation_count(),
        records,
    })
}

fn level_filter<V: Ord>(
    d_max: usize,
) -> impl Fn(&Generator<LevelLabel, V>, &Generator<LevelLabel, V>) -> bool {
    move |x, y| x.degree + y.degree <= d_max
}

/// `X^{(l)}_I ↦ in_⋖ D^{(l)}_I` for all levels `≤ d_max` and sorted `I`.
fn initial_generators(
    n: usize,
    k: usize,
    d_max: usize,
    order: &SeriesOrder,
) -> Result<Vec<Generator<LevelLabel, SeriesVar>>> {
    let mut out = Vec::new();
    for l in 0..=d_max {
        for s in k_subsets(n, k) {
            let (m, c) = order.initial_term(&series_minor(n, &s, l)?)?;
            out.push(Generator {
                degree: l,
                label: (l, s),
                image: m,
                sign: sign_of(&c) as i8,
            });
        }
    }
    Ok(out)
}

/// Ideals grouped by level.
pub fn ideals_by_level(ideals: &[QIdeal]) -> BTreeMap<usize, Vec<&QIdeal>> {
    let mut out: BTreeMap<usize, Vec<&QIdeal>> = BTreeMap::new();
    for j in ideals {
        out.entry(j.d()).or_default().push(j);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> QElement {
        QElement::new(i, j)
    }

    fn example() -> QPartition {
        let q = QPoset::new(5, 3).unwrap();
        QPartition::with_extra(q, [e(1, 4), e(2, 5), e(3, 6), e(4, 5)]).unwrap()
    }

    #[test]
    fn ideal_counts() {
        for (n, k, total) in [(5, 3, 30), (4, 2, 18)] {
            let q = QPoset::new(n, k).unwrap();
            let ideals = enumerate_q_ideals(&q, 2).unwrap();
            assert_eq!(ideals.len(), total);
            for (_, group) in ideals_by_level(&ideals) {
                assert_eq!(group.len(), binomial(n, k));
            }
        }
    }

    #[test]
    fn ideals_are_downsets_and_level_matches_diagonals() {
        let q = QPoset::new(4, 2).unwrap();
        for j in enumerate_q_ideals(&q, 3).unwrap() {
            for &p in &j.members {
                for c in q.lower_covers(p) {
                    assert!(j.members.contains(&c), "{j:?}");
                }
            }
            let m = j.d();
            if m > 0 {
                assert!(j.members.contains(&q.diagonal(m)));
            }
            assert!(!j.members.contains(&q.diagonal(m + 1)));
        }
    }

    #[test]
    fn psi_example() {
        let o = example();
        let q = o.q;
        let gens: QSet = [e(4, 5), e(3, 6)].into_iter().collect();
        let members: QSet = enumerate_q_ideals(&q, 2)
            .unwrap()
            .into_iter()
            .filter(|j| gens.iter().all(|g| j.members.contains(g)))
            .min_by_key(|j| j.members.len())
            .unwrap()
            .members;
        assert_eq!(q.maximal(&members), gens);
        let (level, psi) = psi_inf(&o, &QIdeal { members }).unwrap();
        assert_eq!(level, 1);
        assert_eq!(psi.indices, vec![2, 4, 5]);
        assert_eq!(psi.sign, -1);
    }

    #[test]
    fn psi_bijective_up_to_three_levels() {
        for (n, k) in [(4, 2), (5, 3)] {
            let q = QPoset::new(n, k).unwrap();
            let o = QPartition::with_extra(q, []).unwrap();
            let ideals = enumerate_q_ideals(&q, 3).unwrap();
            let labels: BTreeSet<(usize, Vec<usize>)> = ideals
                .iter()
                .map(|j| {
                    let (l, p) = psi_inf(&o, j).unwrap();
                    (l, p.indices)
                })
                .collect();
            assert_eq!(labels.len(), ideals.len());
            assert_eq!(ideals.len(), 4 * binomial(n, k));
        }
    }

    #[test]
    fn example_partition_verifies() {
        let report = verify_semiinf(&example(), 2).unwrap();
        assert!(report.pass(), "{:?}", report.level_counts);
        assert!(report.relations > 0);
    }

    #[test]
    fn small_partitions_verify() {
        let q = QPoset::new(4, 2).unwrap();
        for extra in [vec![], vec![e(1, 3), e(2, 4), e(3, 5)], vec![e(1, 4)]] {
            let o = QPartition::with_extra(q, extra).unwrap();
            let report = verify_semiinf(&o, 2).unwrap();
            assert!(report.pass(), "{o:?}");
        }
    }
}
