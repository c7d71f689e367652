//! `(O,C)`-tuples, `(O,C)`-semistandard tableaux and their correspondence
//! with chains of order ideals.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degeneration::ThetaMap;
use crate::error::{domain, Result};
use crate::mcop::{LatticePoint, Weight};
use crate::perm::Permutation;
use crate::pipedream::{w_j, PartitionTables};
use crate::poset::{GtPoset, OcPartition, OrderIdeal, PosetElement};

/// A Young tableau in English notation, stored column by column (top entry
/// first). Column heights weakly decrease from left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pub columns: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn from_columns(columns: Vec<Vec<usize>>) -> Result<Self> {
        if columns.windows(2).any(|w| w[0].len() < w[1].len()) || columns.iter().any(Vec::is_empty)
        {
            return domain("column heights must be positive and weakly decreasing");
        }
        Ok(Self { columns })
    }

    /// Build from rows, top row first.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return domain("row lengths must weakly decrease");
        }
        let width = rows.first().map_or(0, Vec::len);
        let columns = (0..width)
            .map(|c| {
                rows.iter()
                    .take_while(|r| c < r.len())
                    .map(|r| r[c])
                    .collect()
            })
            .collect();
        Self::from_columns(columns)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let height = self.columns.first().map_or(0, Vec::len);
        (0..height)
            .map(|r| {
                self.columns
                    .iter()
                    .filter(|c| r < c.len())
                    .map(|c| c[r])
                    .collect()
            })
            .collect()
    }

    pub fn boxes(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// The weight whose shape this is, for ambient size `n`.
    pub fn shape(&self, n: usize) -> Weight {
        let mut w = Weight::zero(n);
        for c in &self.columns {
            w.a[c.len() - 1] += 1;
        }
        w
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Both conditions on `(i_1, ..., i_k)`: `σ_j(i_j) >= j`, and for `j < l`
/// either `σ_{j+1}(i_j) = j` or `σ_{j+1}(i_j) > σ_l(i_l)`.
pub fn is_oc_tuple(tuple: &[usize], tables: &PartitionTables) -> Result<bool> {
    let n = tables.n;
    let k = tuple.len();
    if k == 0 || k >= n {
        return domain(format!("tuple length {k} outside [1, {}]", n - 1));
    }
    if tuple.iter().any(|&x| x == 0 || x > n) {
        return domain(format!("{tuple:?} has entries outside [1, {n}]"));
    }
    if tuple.iter().collect::<BTreeSet<_>>().len() != k {
        return domain(format!("{tuple:?} has repeated entries"));
    }
    let s = |j: usize, x: usize| tables.sigma(j).apply(x);
    if (1..=k).any(|j| s(j, tuple[j - 1]) < j) {
        return Ok(false);
    }
    for j in 1..=k {
        for l in j + 1..=k {
            let a = s(j + 1, tuple[j - 1]);
            if a != j && a <= s(l, tuple[l - 1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every column is a tuple and, for columns `i' <= i` and rows `j`, some
/// `j' ∈ [j, k_{i'}]` has `σ_{j'}(Y_{i',j'}) >= σ_j(Y_{i,j})`.
pub fn is_oc_semistandard(tableau: &Tableau, tables: &PartitionTables) -> bool {
    if !tableau
        .columns
        .iter()
        .all(|c| is_oc_tuple(c, tables).unwrap_or(false))
    {
        return false;
    }
    let s = |j: usize, x: usize| tables.sigma(j).apply(x);
    let cols = &tableau.columns;
    for i in 0..cols.len() {
        for ip in 0..=i {
            for j in 1..=cols[i].len() {
                let target = s(j, cols[i][j - 1]);
                if !(j..=cols[ip].len()).any(|jp| s(jp, cols[ip][jp - 1]) >= target) {
                    return false;
                }
            }
        }
    }
    true
}

/// The least ideal containing every `(j, σ_j(t_j))`.
pub fn column_ideal(
    poset: &GtPoset,
    tables: &PartitionTables,
    tuple: &[usize],
) -> Result<OrderIdeal> {
    if !is_oc_tuple(tuple, tables)? {
        return domain(format!("{tuple:?} is not an (O,C)-tuple"));
    }
    let mut gens = 0;
    for (j, &x) in (1..).zip(tuple) {
        gens |= poset.bit(PosetElement::new(j, tables.sigma(j).apply(x)));
    }
    Ok(poset.ideal_generated_by(gens))
}

/// `(w^J(1), ..., w^J(k))`.
pub fn ideal_column(poset: &GtPoset, oc: &OcPartition, ideal: &OrderIdeal) -> Vec<usize> {
    let k = ideal.k(poset);
    let w: Permutation = w_j(poset, ideal, oc);
    w.images()[..k].to_vec()
}

/// Column ideals of `Y`; `Some` iff they form a chain `J_1 ⊇ J_2 ⊇ ...`.
pub fn tableau_chain_bijection(
    poset: &GtPoset,
    tables: &PartitionTables,
    tableau: &Tableau,
) -> Result<Option<Vec<OrderIdeal>>> {
    let chain = tableau
        .columns
        .iter()
        .map(|c| column_ideal(poset, tables, c))
        .collect::<Result<Vec<_>>>()?;
    let nested = chain.windows(2).all(|w| w[1].is_subset(&w[0]));
    Ok(nested.then_some(chain))
}

pub fn tableau_from_chain(poset: &GtPoset, oc: &OcPartition, chain: &[OrderIdeal]) -> Tableau {
    Tableau {
        columns: chain.iter().map(|j| ideal_column(poset, oc, j)).collect(),
    }
}

/// All semistandard tableaux of shape `λ`, via nested chains of ideals.
pub fn enumerate_semistandard(poset: &GtPoset, oc: &OcPartition, weight: &Weight) -> Vec<Tableau> {
    let groups = poset.enumerate_ideals();
    let heights = weight.column_heights();
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(heights.len());
    fn rec(
        groups: &[Vec<OrderIdeal>],
        heights: &[usize],
        chain: &mut Vec<OrderIdeal>,
        out: &mut Vec<Vec<OrderIdeal>>,
    ) {
        let Some(&k) = heights.get(chain.len()) else {
            out.push(chain.clone());
            return;
        };
        for j in &groups[k] {
            if chain.last().is_none_or(|prev| j.is_subset(prev)) {
                chain.push(*j);
                rec(groups, heights, chain, out);
                chain.pop();
            }
        }
    }
    let mut chains = Vec::new();
    rec(&groups, &heights, &mut chain, &mut chains);
    for c in chains {
        out.push(tableau_from_chain(poset, oc, &c));
    }
    out.sort();
    out
}

/// All `(O,C)`-tuples of length `k` in lexicographic order.
pub fn all_tuples(tables: &PartitionTables, k: usize) -> Vec<Vec<usize>> {
    let n = tables.n;
    let mut out = Vec::new();
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 1..=n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut Vec::new(), &mut out);
    out.retain(|t| is_oc_tuple(t, tables).unwrap_or(false));
    out
}

/// Cross-check oracle: fill column by column with tuples and keep the
/// semistandard results.
pub fn enumerate_semistandard_direct(tables: &PartitionTables, weight: &Weight) -> Vec<Tableau> {
    let heights = weight.column_heights();
    let by_height: Vec<Vec<Vec<usize>>> = (0..tables.n)
        .map(|k| {
            if k == 0 {
                vec![]
            } else {
                all_tuples(tables, k)
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut cols = Vec::new();
    fn rec(
        heights: &[usize],
        by_height: &[Vec<Vec<usize>>],
        tables: &PartitionTables,
        cols: &mut Vec<Vec<usize>>,
        out: &mut Vec<Tableau>,
    ) {
        let t = Tableau {
            columns: cols.clone(),
        };
        if !is_oc_semistandard(&t, tables) {
            return;
        }
        let Some(&k) = heights.get(cols.len()) else {
            out.push(t);
            return;
        };
        for c in &by_height[k] {
            cols.push(c.clone());
            rec(heights, by_height, tables, cols, out);
            cols.pop();
        }
    }
    rec(&heights, &by_height, tables, &mut cols, &mut out);
    out.sort();
    out
}

/// `x(Y)_{i,j}` = number of entries `j` in row `i`, indexed `(i-1)*n + (j-1)`
/// for `i ∈ [1, n-1]`.
pub fn tableau_point(tableau: &Tableau, n: usize) -> LatticePoint {
    let mut x = vec![0; (n - 1) * n];
    for col in &tableau.columns {
        for (r, &v) in col.iter().enumerate() {
            x[r * n + v - 1] += 1;
        }
    }
    x
}

/// Exponent vector of `θ(z^x)` in the same indexing as [`tableau_point`].
pub fn theta_point(poset: &GtPoset, theta: &ThetaMap, x: &[i64]) -> LatticePoint {
    let n = poset.n();
    let mut out = vec![0; n * n];
    for (b, &c) in x.iter().enumerate() {
        for (v, &e) in theta.images[b].exps() {
            out[(v.i - 1) * n + v.j - 1] += c * i64::from(e);
        }
    }
    debug_assert!(out[(n - 1) * n..].iter().all(|&c| c == 0));
    out.truncate((n - 1) * n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::theta_map;
    use crate::mcop::{lattice_points, weyl_dim};

    fn e(i: usize, j: usize) -> PosetElement {
        PosetElement::new(i, j)
    }

    fn example() -> (GtPoset, OcPartition, PartitionTables) {
        let poset = GtPoset::new(4).unwrap();
        let oc = OcPartition::from_elements(&poset, &[e(1, 2), e(1, 4), e(2, 3)]).unwrap();
        let t = PartitionTables::new(&poset, &oc);
        (poset, oc, t)
    }

    #[test]
    fn example_tuples() {
        let (_, _, t) = example();
        let got: Vec<Vec<usize>> = [2, 3].iter().flat_map(|&k| all_tuples(&t, k)).collect();
        let expect: Vec<Vec<usize>> = vec![
            vec![2, 1],
            vec![2, 3],
            vec![3, 1],
            vec![4, 1],
            vec![4, 2],
            vec![4, 3],
            vec![2, 3, 1],
            vec![4, 2, 1],
            vec![4, 3, 1],
            vec![4, 3, 2],
        ];
        assert_eq!(got, expect);
        assert!(is_oc_tuple(&[2, 2], &t).is_err());
    }

    #[test]
    fn example_tableaux() {
        let (_, _, t) = example();
        let accepted = [
            vec![vec![4, 2, 2, 3], vec![3, 3, 3, 1], vec![2, 1]],
            vec![vec![4, 4, 2, 2], vec![2, 3, 3, 3], vec![1]],
            vec![vec![4, 2, 3], vec![2, 3, 1]],
        ];
        let rejected = [
            vec![vec![4, 4, 2], vec![3, 1, 3], vec![1]],
            vec![vec![2, 4], vec![3, 1]],
            vec![vec![4, 3, 4], vec![3, 2, 2], vec![2]],
        ];
        for rows in &accepted {
            assert!(
                is_oc_semistandard(&Tableau::from_rows(rows).unwrap(), &t),
                "{rows:?}"
            );
        }
        for rows in &rejected {
            assert!(
                !is_oc_semistandard(&Tableau::from_rows(rows).unwrap(), &t),
                "{rows:?}"
            );
        }
    }

    #[test]
    fn extreme_tuples() {
        let poset = GtPoset::new(4).unwrap();
        let gt = PartitionTables::new(&poset, &OcPartition::all_order(&poset));
        let fflv = PartitionTables::new(&poset, &OcPartition::all_chain(&poset));
        for k in 1..4 {
            for tup in all_tuples(&gt, k) {
                assert!(tup.windows(2).all(|w| w[0] > w[1]), "{tup:?}");
            }
            assert_eq!(all_tuples(&gt, k).len(), [0, 4, 6, 4][k]);
            for tup in all_tuples(&fflv, k) {
                // PBW tuples: entries <= k sit at their own position, the rest decrease
                let big: Vec<usize> = tup.iter().copied().filter(|&x| x > k).collect();
                assert!(big.windows(2).all(|w| w[0] > w[1]));
                for (r, &x) in (1..).zip(&tup) {
                    if x <= k {
                        assert_eq!(x, r);
                    }
                }
            }
        }
    }

    #[test]
    fn counts_and_oracle_agree() {
        let (poset, oc, t) = example();
        let w = Weight::new(vec![0, 1, 1]);
        let via_chains = enumerate_semistandard(&poset, &oc, &w);
        assert_eq!(via_chains.len(), 20);
        assert_eq!(via_chains, enumerate_semistandard_direct(&t, &w));
    }

    #[test]
    fn minimal_column() {
        let poset = GtPoset::new(4).unwrap();
        let oc = OcPartition::all_chain(&poset);
        for k in 1..4 {
            let j = poset.principal_ideal(e(k, k));
            assert_eq!(ideal_column(&poset, &oc, &j), (1..=k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tableau_points_are_theta_images() {
        let (poset, oc, t) = example();
        let theta = theta_map(&poset, &oc, &t);
        let w = Weight::new(vec![1, 1, 0]);
        let from_tableaux: BTreeSet<_> = enumerate_semistandard(&poset, &oc, &w)
            .iter()
            .map(|y| tableau_point(y, 4))
            .collect();
        let from_polytope: BTreeSet<_> = lattice_points(&poset, &oc, &w)
            .iter()
            .map(|x| theta_point(&poset, &theta, x))
            .collect();
        assert_eq!(from_tableaux.len(), 20);
        assert_eq!(from_tableaux, from_polytope);
        assert_eq!(weyl_dim(&w), 20u32.into());
    }
}
