//! Sparse (Laurent) monomials and polynomials with big-integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Exponent map; zero exponents are never stored. Negative exponents are
/// allowed so the same type carries Laurent images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(bound(
    serialize = "V: Serialize + Ord",
    deserialize = "V: Deserialize<'de> + Ord"
))]
pub struct Monomial<V: Ord> {
    exps: BTreeMap<V, i32>,
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Self {
            exps: BTreeMap::new(),
        }
    }

    pub fn var(v: V) -> Self {
        Self::from_pairs([(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, i32)>) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m.add_exp(v, e);
        }
        m
    }

    pub fn add_exp(&mut self, v: V, e: i32) {
        if e == 0 {
            return;
        }
        let slot = self.exps.entry(v.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&v);
        }
    }

    pub fn exp(&self, v: &V) -> i32 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &BTreeMap<V, i32> {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> i32 {
        self.exps.values().sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.values().all(|&e| e > 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, &e) in &other.exps {
            out.add_exp(v.clone(), e);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self {
            exps: self.exps.iter().map(|(v, &e)| (v.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        Self {
            exps: if k == 0 {
                BTreeMap::new()
            } else {
                self.exps.iter().map(|(v, &e)| (v.clone(), e * k)).collect()
            },
        }
    }

    pub fn map_vars<W: Ord + Clone>(&self, mut f: impl FnMut(&V) -> W) -> Monomial<W> {
        Monomial::from_pairs(self.exps.iter().map(|(v, &e)| (f(v), e)))
    }
}

impl<V: Ord + fmt::Display> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.exps.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A total order on monomials.
pub trait MonomialOrder<V: Ord> {
    fn cmp_monomials(&self, a: &Monomial<V>, b: &Monomial<V>) -> Ordering;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "V: Serialize + Ord",
    deserialize = "V: Deserialize<'de> + Ord"
))]
pub struct Polynomial<V: Ord> {
    terms: BTreeMap<Monomial<V>, BigInt>,
}

impl<V: Ord + Clone> Polynomial<V> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<V>, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial<V>) -> Self {
        Self::from_terms([(m, BigInt::one())])
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial<V>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// The single maximal term under a total order.
    pub fn initial_term(&self, ord: &impl MonomialOrder<V>) -> Result<(Monomial<V>, BigInt)> {
        let Some(best) = self.terms.iter().max_by(|a, b| ord.cmp_monomials(a.0, b.0)) else {
            return domain("initial term of the zero polynomial");
        };
        Ok((best.0.clone(), best.1.clone()))
    }
}

impl<V: Ord + fmt::Display> fmt::Display for Polynomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            if idx > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let abs = if neg { -c.clone() } else { c.clone() };
            if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Lex;
    impl MonomialOrder<u8> for Lex {
        fn cmp_monomials(&self, a: &Monomial<u8>, b: &Monomial<u8>) -> Ordering {
            for v in 0..=255u8 {
                match a.exp(&v).cmp(&b.exp(&v)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
    }

    #[test]
    fn laurent_cancellation() {
        let x = Monomial::var(1u8);
        assert!(x.mul(&x.inverse()).is_one());
        assert_eq!(x.pow(3).degree(), 3);
    }

    #[test]
    fn product_and_initial_term() {
        let x = Polynomial::monomial(Monomial::var(0u8));
        let y = Polynomial::monomial(Monomial::var(1u8));
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        let (m, c) = sq.initial_term(&Lex).unwrap();
        assert_eq!(m, Monomial::from_pairs([(0u8, 2)]));
        assert_eq!(c, BigInt::one());
        let diff = s.add(&Polynomial::from_terms([(
            Monomial::var(1u8),
            BigInt::from(-1),
        )]));
        assert_eq!(diff, x);
        assert!(Polynomial::<u8>::zero().initial_term(&Lex).is_err());
    }
}
