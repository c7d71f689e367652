//! Sweep configuration and the small text formats accepted on the command
//! line: element lists, partition selectors and weights.

use std::collections::BTreeSet;
use std::path::PathBuf;

use pipedegen::mcop::Weight;
use pipedegen::poset::offdiagonal;
use pipedegen::semiinf::{QElement, QPartition, QPoset};
use pipedegen::{GtPoset, OcPartition, PosetElement};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
}

fn parse_err(what: &'static str, input: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Parse {
        what,
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// `"(1,2),(2,3)"`, optionally wrapped in braces; `""` and `"{}"` are empty.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, ConfigError> {
    let body = s.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .unwrap_or(body)
        .trim();
    let mut out = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| parse_err("element list", s, "expected '('"))?;
        let close = open
            .find(')')
            .ok_or_else(|| parse_err("element list", s, "unbalanced parentheses"))?;
        let nums: Vec<&str> = open[..close].split(',').map(str::trim).collect();
        let [a, b] = nums.as_slice() else {
            return Err(parse_err(
                "element list",
                s,
                "each element needs two coordinates",
            ));
        };
        let num = |x: &str| {
            x.parse::<usize>()
                .map_err(|e| parse_err("element list", s, format!("{x:?}: {e}")))
        };
        out.push((num(a)?, num(b)?));
        rest = open[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(parse_err("element list", s, "trailing comma"));
            }
        } else if !rest.is_empty() {
            return Err(parse_err(
                "element list",
                s,
                "expected ',' between elements",
            ));
        }
    }
    Ok(out)
}

pub fn parse_usize_list(what: &'static str, s: &str) -> Result<Vec<usize>, ConfigError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|e| parse_err(what, s, format!("{t:?}: {e}")))
        })
        .collect()
}

/// Weight in fundamental-weight coordinates `a_1,...,a_{n-1}`.
pub fn parse_weight(n: usize, s: &str) -> Result<Weight, ConfigError> {
    let a: Vec<u32> = s
        .split(',')
        .map(str::trim)
        .map(|t| {
            t.parse()
                .map_err(|e| parse_err("weight", s, format!("{t:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if a.len() + 1 != n {
        return Err(parse_err(
            "weight",
            s,
            format!("expected {} coordinates for n = {n}", n - 1),
        ));
    }
    Ok(Weight::new(a))
}

/// Weights separated by `;`, e.g. `"1,0,0;1,1,0"`.
pub fn parse_weight_list(n: usize, s: &str) -> Result<Vec<Weight>, ConfigError> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_weight(n, t))
        .collect()
}

pub fn elements(
    poset: &GtPoset,
    pairs: &[(usize, usize)],
) -> Result<Vec<PosetElement>, ConfigError> {
    pairs
        .iter()
        .map(|&(i, j)| {
            let p = PosetElement::new(i, j);
            if poset.contains(p) {
                Ok(p)
            } else {
                Err(ConfigError::Invalid(format!(
                    "{p} is not in P for n = {}",
                    poset.n()
                )))
            }
        })
        .collect()
}

/// Which partitions a sweep visits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionSelector {
    /// Off-diagonal bitmask of `O` in the canonical order of `P ∖ A`.
    Single(u64),
    All,
    Sample {
        count: usize,
        seed: u64,
    },
}

/// `"all"`, a hex mask `"0x15"`, or an element list for `O`.
pub fn parse_partition(poset: &GtPoset, s: &str) -> Result<PartitionSelector, ConfigError> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("all") {
        return Ok(PartitionSelector::All);
    }
    if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        let bits = u64::from_str_radix(hex, 16)
            .map_err(|e| parse_err("partition mask", s, e.to_string()))?;
        let off = offdiagonal(poset).len();
        if off < 64 && bits >> off != 0 {
            return Err(ConfigError::Invalid(format!(
                "mask {t} has bits beyond the {off} off-diagonal elements"
            )));
        }
        return Ok(PartitionSelector::Single(bits));
    }
    let elems = elements(poset, &parse_pairs(t)?)?;
    let oc = OcPartition::from_elements(poset, &elems)
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(PartitionSelector::Single(oc.offdiag_bits(poset)))
}

impl PartitionSelector {
    pub fn resolve(&self, poset: &GtPoset) -> Result<Vec<OcPartition>, ConfigError> {
        let off = offdiagonal(poset).len();
        let total = 1u64
            .checked_shl(off as u32)
            .filter(|_| off < 64)
            .ok_or_else(|| {
                ConfigError::Invalid(format!("2^{off} partitions cannot be enumerated"))
            })?;
        let from_bits = |b: u64| {
            OcPartition::from_offdiag_bits(poset, b)
                .map_err(|e| ConfigError::Invalid(e.to_string()))
        };
        match *self {
            Self::Single(bits) => Ok(vec![from_bits(bits)?]),
            Self::All => (0..total).map(from_bits).collect(),
            Self::Sample { count, seed } => {
                if count == 0 || count as u64 > total {
                    return Err(ConfigError::Invalid(format!(
                        "sample size {count} outside [1, {total}]"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let picked: BTreeSet<u64> = sample(&mut rng, total as usize, count)
                    .into_iter()
                    .map(|b| b as u64)
                    .collect();
                picked.into_iter().map(from_bits).collect()
            }
        }
    }
}

/// A partition as it appears in certificates: hex mask and the list `O`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionEcho {
    pub mask: String,
    pub order: Vec<String>,
}

impl PartitionEcho {
    pub fn new(poset: &GtPoset, oc: &OcPartition) -> Self {
        let order = offdiagonal(poset)
            .into_iter()
            .filter(|&p| oc.in_order(poset, p))
            .map(|p| p.to_string())
            .collect();
        Self {
            mask: format!("{:#x}", oc.offdiag_bits(poset)),
            order,
        }
    }

    pub fn label(&self) -> String {
        format!("{} {{{}}}", self.mask, self.order.join(","))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Degeneration,
    Polytope,
    Tableaux,
    Basis,
    Census,
}

impl CheckKind {
    pub const ALL: [Self; 5] = [
        Self::Degeneration,
        Self::Polytope,
        Self::Tableaux,
        Self::Basis,
        Self::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Degeneration => "degeneration",
            Self::Polytope => "polytope",
            Self::Tableaux => "tableaux",
            Self::Basis => "basis",
            Self::Census => "census",
        }
    }
}

pub fn parse_checks(s: &str) -> Result<BTreeSet<CheckKind>, ConfigError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            CheckKind::ALL
                .into_iter()
                .find(|c| c.name() == t)
                .ok_or_else(|| parse_err("check list", s, format!("unknown check {t:?}")))
        })
        .collect()
}

/// Everything `verify` needs. Output path, worker count and timing output
/// are run parameters and stay out of the certificate echo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: usize,
    pub signature: Vec<usize>,
    pub selector: PartitionSelector,
    pub weights: Vec<Weight>,
    pub checks: BTreeSet<CheckKind>,
    pub budget_ms: Option<u64>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub timings: bool,
}

impl SweepConfig {
    pub fn new(n: usize, signature: Vec<usize>, selector: PartitionSelector) -> Self {
        Self {
            n,
            signature,
            selector,
            weights: Vec::new(),
            checks: CheckKind::ALL.into_iter().collect(),
            budget_ms: None,
            output: None,
            workers: 1,
            timings: false,
        }
    }

    /// Weight list defaults to the sum of `ω_k` over the signature.
    pub fn with_default_weights(mut self) -> Result<Self, ConfigError> {
        self.weights = vec![Weight::from_signature(self.n, &self.signature)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?];
        Ok(self)
    }

    pub fn validate(&self) -> Result<GtPoset, ConfigError> {
        if self.n < 2 {
            return Err(ConfigError::Invalid(format!(
                "n = {} must be at least 2",
                self.n
            )));
        }
        let poset = GtPoset::new(self.n).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.signature.is_empty() {
            return Err(ConfigError::Invalid("empty signature".into()));
        }
        if let Some(&k) = self.signature.iter().find(|&&k| k == 0 || k >= self.n) {
            return Err(ConfigError::Invalid(format!(
                "signature entry {k} outside [1, {}]",
                self.n - 1
            )));
        }
        if self.signature.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::Invalid(
                "signature must be strictly increasing".into(),
            ));
        }
        if self.weights.is_empty() {
            return Err(ConfigError::Invalid("empty weight list".into()));
        }
        if let Some(w) = self.weights.iter().find(|w| w.n() != self.n) {
            return Err(ConfigError::Invalid(format!(
                "weight {w} does not match n = {}",
                self.n
            )));
        }
        if self.budget_ms == Some(0) {
            return Err(ConfigError::Invalid("budget must be positive".into()));
        }
        if self.checks.is_empty() {
            return Err(ConfigError::Invalid("no checks selected".into()));
        }
        if self.workers == 0 {
            return Err(ConfigError::Invalid("worker count must be positive".into()));
        }
        Ok(poset)
    }
}

/// Configuration of the `semiinf` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiInfConfig {
    pub n: usize,
    pub k: usize,
    pub d_max: usize,
    pub order_extra: Vec<(usize, usize)>,
    pub horizon: Option<usize>,
    pub lemma_trials: usize,
    pub seed: u64,
    #[serde(skip)]
    pub timings: bool,
}

impl SemiInfConfig {
    pub fn partition(&self) -> Result<QPartition, ConfigError> {
        let q = QPoset::new(self.n, self.k).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let extra = self.order_extra.iter().map(|&(i, j)| QElement::new(i, j));
        let o = match self.horizon {
            Some(h) => QPartition::new(q, extra, h),
            None => QPartition::with_extra(q, extra),
        };
        o.map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pairs("(1,2),(2,3)").unwrap(), vec![(1, 2), (2, 3)]);
        assert_eq!(parse_pairs(" { (1, 4) } ").unwrap(), vec![(1, 4)]);
        assert!(parse_pairs("{}").unwrap().is_empty());
        assert!(parse_pairs("").unwrap().is_empty());
        assert!(parse_pairs("(1,2").is_err());
        assert!(parse_pairs("(1,2,3)").is_err());
        assert!(parse_pairs("(1,2),").is_err());
        assert!(parse_pairs("(1,2)(2,3)").is_err());
        assert!(parse_pairs("(a,2)").is_err());
    }

    #[test]
    fn selectors() {
        let p = GtPoset::new(4).unwrap();
        assert_eq!(parse_partition(&p, "all").unwrap(), PartitionSelector::All);
        let by_list = parse_partition(&p, "(1,2),(1,4),(2,3)").unwrap();
        let PartitionSelector::Single(bits) = by_list else {
            panic!()
        };
        assert_eq!(parse_partition(&p, &format!("{bits:#x}")).unwrap(), by_list);
        assert!(parse_partition(&p, "0x40").is_err());
        assert!(parse_partition(&p, "(1,1)").is_err());
        assert!(parse_partition(&p, "(3,1)").is_err());
        let oc = by_list.resolve(&p).unwrap()[0];
        let echo = PartitionEcho::new(&p, &oc);
        assert_eq!(echo.order, vec!["(1,2)", "(1,4)", "(2,3)"]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = GtPoset::new(5).unwrap();
        let s = PartitionSelector::Sample { count: 32, seed: 9 };
        let a = s.resolve(&p).unwrap();
        assert_eq!(a.len(), 32);
        assert_eq!(a, s.resolve(&p).unwrap());
        assert!(PartitionSelector::Sample { count: 0, seed: 1 }
            .resolve(&p)
            .is_err());
    }

    #[test]
    fn validation() {
        let base = SweepConfig::new(3, vec![1, 2], PartitionSelector::All)
            .with_default_weights()
            .unwrap();
        assert!(base.validate().is_ok());
        assert_eq!(base.weights, vec![Weight::new(vec![1, 1])]);
        let mut c = base.clone();
        c.weights.clear();
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.budget_ms = Some(0);
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.signature = vec![2, 1];
        assert!(c.validate().is_err());
        let mut c = base;
        c.n = 1;
        assert!(c.validate().is_err());
        assert_eq!(parse_weight_list(4, "1,0,0; 0,1,1").unwrap().len(), 2);
        assert!(parse_weight(4, "1,0").is_err());
        assert!(parse_checks("degeneration,nope").is_err());
    }
}
