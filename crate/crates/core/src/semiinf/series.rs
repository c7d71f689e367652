use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::pipes::r_q;
use super::qposet::{QElement, QPartition};
use crate::error::{domain, Error, Result};
use crate::perm::Permutation;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// `z^{(l)}_{i,j}`, the coefficient of `t^l` in the `(i,j)` entry.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeriesVar {
    pub l: usize,
    pub i: usize,
    pub j: usize,
}

impl SeriesVar {
    pub const fn new(l: usize, i: usize, j: usize) -> Self {
        Self { l, i, j }
    }
}

impl fmt::Display for SeriesVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}^({})", self.i, self.j, self.l)
    }
}

/// Offsets `0..n` of row `kl+i`, listed from the smallest variable to the
/// largest. Offset `a` sits above a later offset `b` iff `(kl+i, kl+i+a)` is
/// in `O` (or is one of `(1,1),...,(k,k)`) and no `(kl+i, kl+i+c)` with
/// `a < c ≤ b` is in `O`.
pub fn row_offset_order(o: &QPartition, l: usize, i: usize) -> Result<Vec<usize>> {
    let (n, k) = (o.q.n, o.q.k);
    let row = k * l + i;
    let in_o = |jo: usize| {
        let p = QElement::new(row, row + jo);
        o.q.contains(p) && o.in_order(p)
    };
    let marked = |jo: usize| {
        let p = QElement::new(row, row + jo);
        if o.q.contains(p) {
            o.in_order(p)
        } else {
            row <= k && jo == 0
        }
    };
    // less(a, b): offset a gives the smaller variable
    let less = |a: usize, b: usize| -> bool {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let lo_above = marked(lo) && !(lo + 1..=hi).any(in_o);
        if a < b {
            !lo_above
        } else {
            lo_above
        }
    };
    let mut order = vec![usize::MAX; n];
    for a in 0..n {
        let pos = (0..n).filter(|&b| b != a && less(b, a)).count();
        if order[pos] != usize::MAX {
            return domain(format!("row {row} does not yield a total order"));
        }
        order[pos] = a;
    }
    Ok(order)
}

/// Total order on `z^{(l)}_{i,j}`, `l ≤ cap`: levels first, then rows, then
/// the within-row ranking of [`row_offset_order`] with offset `jo` standing
/// for `z^{(l)}_{i, r(kl+i, kl+i+jo)}`. Monomials compare
/// reverse-lexicographically: at the smallest variable where exponents
/// differ, the larger exponent gives the smaller monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesOrder {
    pub n: usize,
    pub k: usize,
    pub cap: usize,
    /// Variables from smallest to largest.
    pub ascending: Vec<SeriesVar>,
    #[serde(skip)]
    rank: BTreeMap<SeriesVar, usize>,
}

impl SeriesOrder {
    pub fn rank_of(&self, v: &SeriesVar) -> Option<usize> {
        self.rank.get(v).copied()
    }

    pub fn covers(&self, p: &Polynomial<SeriesVar>) -> Result<()> {
        for m in p.terms().keys() {
            if let Some(v) = m.exps().keys().find(|v| !self.rank.contains_key(v)) {
                return Err(Error::Capacity(format!(
                    "{v} lies above the level cap {}",
                    self.cap
                )));
            }
        }
        Ok(())
    }

    /// `in_⋖ p` after checking every variable is ranked.
    pub fn initial_term(&self, p: &Polynomial<SeriesVar>) -> Result<(Monomial<SeriesVar>, BigInt)> {
        self.covers(p)?;
        p.initial_term(self)
    }
}

impl MonomialOrder<SeriesVar> for SeriesOrder {
    fn cmp_monomials(&self, a: &Monomial<SeriesVar>, b: &Monomial<SeriesVar>) -> Ordering {
        let mut vars: Vec<&SeriesVar> = a.exps().keys().chain(b.exps().keys()).collect();
        vars.sort_by_key(|v| self.rank[v]);
        vars.dedup();
        for v in vars {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

pub fn series_var_order(o: &QPartition, cap: usize) -> Result<SeriesOrder> {
    let (n, k) = (o.q.n, o.q.k);
    let mut ascending = Vec::with_capacity((cap + 1) * k * n);
    for l in 0..=cap {
        for i in 1..=k {
            let row = k * l + i;
            for jo in row_offset_order(o, l, i)? {
                ascending.push(SeriesVar::new(l, i, r_q(o, row, row + jo)?));
            }
        }
    }
    let rank: BTreeMap<SeriesVar, usize> =
        ascending.iter().enumerate().map(|(r, &v)| (v, r)).collect();
    if rank.len() != ascending.len() {
        return domain("r does not permute the columns of some row");
    }
    Ok(SeriesOrder {
        n,
        k,
        cap,
        ascending,
        rank,
    })
}

/// `θ'(z_{(i,j)}) = z^{(q)}_{i mod k, r(i,j)}` with `i = qk + (i mod k)`.
fn theta_prime(o: &QPartition, p: QElement) -> Result<SeriesVar> {
    let a = o.q.mod_k(p.i);
    Ok(SeriesVar::new((p.i - a) / o.q.k, a, r_q(o, p.i, p.j)?))
}

/// `θ_∞(z_p) = θ'(z_p / z_{p'})` where `p'` is the largest element of `O`
/// strictly below `p` in rows `i, i-k, i-2k, ...`; with no such element the
/// denominator is `z^{(0)}_{i mod k, i mod k}`.
pub fn theta_inf(o: &QPartition, p: QElement) -> Result<Monomial<SeriesVar>> {
    let q = &o.q;
    if !q.contains(p) {
        return domain(format!("{p} is not in Q"));
    }
    let mut candidates = Vec::new();
    let mut i2 = p.i;
    loop {
        for j2 in q.k + 1..i2 + q.n {
            let c = QElement::new(i2, j2);
            if q.contains(c) && c != p && q.leq(c, p) && o.in_order(c) {
                candidates.push(c);
            }
        }
        if i2 <= q.k {
            break;
        }
        i2 -= q.k;
    }
    let num = theta_prime(o, p)?;
    let den = if candidates.is_empty() {
        let a = q.mod_k(p.i);
        SeriesVar::new(0, a, a)
    } else {
        let top: Vec<QElement> = candidates
            .iter()
            .copied()
            .filter(|&c| candidates.iter().all(|&d| q.leq(d, c)))
            .collect();
        match top.as_slice() {
            [c] => theta_prime(o, *c)?,
            _ => return domain(format!("no unique largest element of O below {p}")),
        }
    };
    Ok(Monomial::from_pairs([(num, 1), (den, -1)]))
}

/// `θ_∞(s) = z^{(0)}_{1,1} ... z^{(0)}_{k,k}`.
pub fn theta_s(k: usize) -> Monomial<SeriesVar> {
    Monomial::from_pairs((1..=k).map(|a| (SeriesVar::new(0, a, a), 1)))
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// `D^{(l)}_{i_1,...,i_k}`: the `t^l` coefficient of the minor on rows
/// `1..k` and columns `i_1,...,i_k` of `(Σ_l z^{(l)}_{i,j} t^l)`.
pub fn series_minor(n: usize, indices: &[usize], l: usize) -> Result<Polynomial<SeriesVar>> {
    let k = indices.len();
    if k == 0 || k >= n {
        return domain(format!("minor size {k} outside [1, {}]", n - 1));
    }
    if indices.iter().any(|&c| c == 0 || c > n) {
        return domain(format!("{indices:?} not in [1, {n}]"));
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return domain(format!("repeated column in {indices:?}"));
    }
    let levels = compositions(l, k);
    let mut out = Polynomial::zero();
    for p in Permutation::all(k) {
        for comp in &levels {
            let m = Monomial::from_pairs(
                (1..=k).map(|r| (SeriesVar::new(comp[r - 1], r, indices[p.apply(r) - 1]), 1)),
            );
            out.add_term(m, BigInt::from(p.sign()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::plucker_determinant;
    use crate::semiinf::QPoset;

    fn e(i: usize, j: usize) -> QElement {
        QElement::new(i, j)
    }

    fn example() -> QPartition {
        let q = QPoset::new(5, 3).unwrap();
        QPartition::with_extra(q, [e(1, 4), e(2, 5), e(3, 6), e(4, 5)]).unwrap()
    }

    fn z(l: usize, i: usize, j: usize) -> SeriesVar {
        SeriesVar::new(l, i, j)
    }

    #[test]
    fn theta_examples() {
        let o = example();
        assert_eq!(
            theta_inf(&o, e(4, 6)).unwrap(),
            Monomial::from_pairs([(z(1, 1, 3), 1), (z(1, 1, 2), -1)])
        );
        assert_eq!(
            theta_inf(&o, e(3, 6)).unwrap(),
            Monomial::from_pairs([(z(0, 3, 4), 1), (z(0, 3, 3), -1)])
        );
        assert_eq!(
            theta_inf(&o, e(4, 4)).unwrap(),
            Monomial::from_pairs([(z(1, 1, 1), 1), (z(0, 1, 4), -1)])
        );
    }

    #[test]
    fn first_displayed_chain() {
        let q = QPoset::new(6, 3).unwrap();
        let o = QPartition::with_extra(q, [e(5, 8)]).unwrap();
        assert_eq!(row_offset_order(&o, 1, 2).unwrap(), vec![1, 2, 0, 4, 5, 3]);
        let ord = series_var_order(&o, 1).unwrap();
        let row: Vec<SeriesVar> = ord
            .ascending
            .iter()
            .copied()
            .filter(|v| v.l == 1 && v.i == 2)
            .collect();
        let expect: Vec<SeriesVar> = [6, 7, 5, 9, 10, 8]
            .iter()
            .map(|&j| z(1, 2, r_q(&o, 5, j).unwrap()))
            .collect();
        assert_eq!(row, expect);
    }

    #[test]
    fn second_displayed_chain() {
        let q = QPoset::new(6, 3).unwrap();
        let o = QPartition::with_extra(q, [e(2, 6)]).unwrap();
        assert_eq!(row_offset_order(&o, 0, 2).unwrap(), vec![1, 2, 3, 0, 5, 4]);
        let ord = series_var_order(&o, 0).unwrap();
        let row: Vec<SeriesVar> = ord.ascending.iter().copied().filter(|v| v.i == 2).collect();
        assert_eq!(row[0], z(0, 2, 3));
        assert_eq!(row[3], z(0, 2, 2));
        assert_eq!(row[1], z(0, 2, r_q(&o, 2, 4).unwrap()));
        assert_eq!(row[5], z(0, 2, r_q(&o, 2, 6).unwrap()));
    }

    #[test]
    fn levels_compare_first() {
        let ord = series_var_order(&example(), 2).unwrap();
        for w in ord.ascending.windows(2) {
            assert!((w[0].l, w[0].i) <= (w[1].l, w[1].i));
        }
        assert_eq!(ord.ascending.len(), 3 * 3 * 5);
    }

    #[test]
    fn level_zero_minor_is_plain_minor() {
        for idx in [vec![1, 3, 4], vec![4, 2, 5]] {
            let d0 = series_minor(5, &idx, 0).unwrap();
            let plain = plucker_determinant(&idx, 5).unwrap();
            let mapped: Vec<_> = plain
                .terms()
                .iter()
                .map(|(m, c)| (m.map_vars(|v| z(0, v.i, v.j)), c.clone()))
                .collect();
            assert_eq!(d0, Polynomial::from_terms(mapped));
        }
    }

    #[test]
    fn minor_term_count() {
        // k! · C(l+k-1, k-1)
        assert_eq!(series_minor(5, &[1, 2, 3], 2).unwrap().len(), 6 * 6);
        assert_eq!(series_minor(4, &[2, 4], 3).unwrap().len(), 2 * 4);
    }

    #[test]
    fn level_cap_is_enforced() {
        let ord = series_var_order(&example(), 1).unwrap();
        let d = series_minor(5, &[1, 2, 3], 2).unwrap();
        assert!(matches!(ord.initial_term(&d), Err(Error::Capacity(_))));
    }

    #[test]
    fn revlex_prefers_smaller_exponent_on_small_variables() {
        let ord = series_var_order(&example(), 1).unwrap();
        let (lo, hi) = (ord.ascending[0], ord.ascending[1]);
        let a = Monomial::from_pairs([(hi, 2)]);
        let b = Monomial::from_pairs([(lo, 1), (hi, 1)]);
        assert_eq!(ord.cmp_monomials(&a, &b), Ordering::Greater);
    }
}
