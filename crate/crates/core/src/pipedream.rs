//! Pipe dreams on `P`: the permutation `w_M`, pipe tracing, and the derived
//! tables `r(i,j)`, `σ_i`, `τ` of a partition.
//!
//! Convention: the word `s_{a_1} s_{a_2} ... s_{a_m}` (ordered by `(i,j)`)
//! acts as a function right to left, so `s_{a_m}` is applied first.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::perm::Permutation;
use crate::poset::{iter_bits, GtPoset, OcPartition, OrderIdeal, PosetElement};

/// `w_M` for `M ⊆ P` given as a mask. Diagonal elements contribute nothing.
pub fn w_of_subset(poset: &GtPoset, mask: u64) -> Permutation {
    let word: Vec<PosetElement> = iter_bits(mask)
        .map(|b| poset.element(b))
        .filter(|p| !p.is_diagonal())
        .collect();
    let images = (1..=poset.n())
        .map(|x| {
            word.iter().rev().fold(x, |y, p| {
                if y == p.i {
                    p.j
                } else if y == p.j {
                    p.i
                } else {
                    y
                }
            })
        })
        .collect();
    Permutation::from_images(images).expect("product of transpositions")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipePath {
    pub elements: Vec<PosetElement>,
    pub exit_value: usize,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Heading {
    /// Travelling to the top-left: `(i,j) -> (i,j-1)`.
    TopLeft,
    /// Travelling to the bottom-left: `(i,j) -> (i-1,j)`.
    BottomLeft,
}

/// The pipe entering `(entry_row, n)` from the bottom right.
///
/// A pipe heading top-left turns at elements of `M ∪ A`; a pipe heading
/// bottom-left turns back at elements of `M`.
pub fn trace_pipe(poset: &GtPoset, mask: u64, entry_row: usize) -> Result<PipePath> {
    let n = poset.n();
    if entry_row == 0 || entry_row > n {
        return domain(format!("entry row {entry_row} outside [1, {n}]"));
    }
    let mut cur = PosetElement::new(entry_row, n);
    let mut heading = Heading::TopLeft;
    let mut elements = vec![cur];
    loop {
        let in_m = mask & poset.bit(cur) != 0;
        heading = match heading {
            Heading::TopLeft if in_m || cur.is_diagonal() => Heading::BottomLeft,
            Heading::BottomLeft if in_m => Heading::TopLeft,
            h => h,
        };
        let next = match heading {
            Heading::TopLeft => PosetElement::new(cur.i, cur.j - 1),
            Heading::BottomLeft => PosetElement::new(cur.i.wrapping_sub(1), cur.j),
        };
        if !poset.contains(next) {
            break;
        }
        cur = next;
        elements.push(cur);
    }
    debug_assert_eq!(cur.i, 1, "pipes leave through the first row");
    Ok(PipePath {
        exit_value: cur.j,
        elements,
    })
}

/// `r`, `σ_i`, `τ` and `w_O` for a fixed partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTables {
    pub n: usize,
    /// `r[i-1][j-1] = r(i,j)`.
    pub r: Vec<Vec<usize>>,
    /// `sigma[i-1] = σ_i`, the inverse of `j ↦ r(i,j)`.
    pub sigma: Vec<Permutation>,
    pub tau: Permutation,
    pub w_o: Permutation,
}

impl PartitionTables {
    pub fn new(poset: &GtPoset, oc: &OcPartition) -> Self {
        let n = poset.n();
        let w_o = w_of_subset(poset, oc.order_mask());
        let r: Vec<Vec<usize>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        if i <= j {
                            let ideal = poset.principal_ideal(PosetElement::new(i, j));
                            w_j(poset, &ideal, oc).apply(i)
                        } else {
                            w_o.apply(j)
                        }
                    })
                    .collect()
            })
            .collect();
        let sigma: Vec<Permutation> = r
            .iter()
            .map(|row| {
                Permutation::from_images(row.clone())
                    .expect("rows of r are permutations")
                    .inverse()
            })
            .collect();
        let tau = sigma[n - 1].clone();
        Self {
            n,
            r,
            sigma,
            tau,
            w_o,
        }
    }

    pub fn r(&self, i: usize, j: usize) -> usize {
        self.r[i - 1][j - 1]
    }

    pub fn sigma(&self, i: usize) -> &Permutation {
        &self.sigma[i - 1]
    }
}

/// `w^J = w_{M_{O,C}(J)}`.
pub fn w_j(poset: &GtPoset, ideal: &OrderIdeal, oc: &OcPartition) -> Permutation {
    w_of_subset(poset, poset.m_oc(ideal, oc))
}

pub fn r_value(poset: &GtPoset, oc: &OcPartition, i: usize, j: usize) -> usize {
    PartitionTables::new(poset, oc).r(i, j)
}

pub fn sigma_tau(poset: &GtPoset, oc: &OcPartition) -> (Vec<Permutation>, Permutation) {
    let t = PartitionTables::new(poset, oc);
    (t.sigma, t.tau)
}

/// Text rendering: one line per row of `P` (`#` marks `M ∪ A`), then the pipes.
pub fn render_ascii(poset: &GtPoset, mask: u64) -> String {
    let n = poset.n();
    let mut out = String::new();
    for i in 1..=n {
        let _ = write!(out, "{i:>2} ");
        for j in 1..=n {
            let cell = if j < i {
                ' '
            } else if PosetElement::new(i, j).is_diagonal()
                || mask & poset.bit(PosetElement::new(i, j)) != 0
            {
                '#'
            } else {
                '.'
            };
            let _ = write!(out, " {cell}");
        }
        out.push('\n');
    }
    for row in 1..=n {
        let path = trace_pipe(poset, mask, row).expect("row in range");
        let steps: Vec<String> = path.elements.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "pipe {row} -> {}: {}",
            path.exit_value,
            steps.join(" ")
        );
    }
    out
}

fn node_id(p: PosetElement) -> String {
    format!("n{}_{}", p.i, p.j)
}

const PIPE_COLORS: [&str; 8] = [
    "blue",
    "red",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "cyan",
];

/// Graphviz rendering: Hasse diagram with marked nodes filled, pipes as
/// coloured edges labelled `entry->exit`.
pub fn render_dot(poset: &GtPoset, mask: u64) -> String {
    let n = poset.n();
    let mut out = String::from("digraph pipedream {\n  node [shape=circle];\n");
    for &p in poset.elements() {
        let marked = p.is_diagonal() || mask & poset.bit(p) != 0;
        let style = if marked {
            ", style=filled, fillcolor=black, fontcolor=white"
        } else {
            ""
        };
        let _ = writeln!(out, "  {} [label=\"{}\"{}];", node_id(p), p, style);
    }
    for &p in poset.elements() {
        for q in [
            PosetElement::new(p.i + 1, p.j),
            PosetElement::new(p.i, p.j + 1),
        ] {
            if poset.contains(q) {
                let _ = writeln!(
                    out,
                    "  {} -> {} [color=gray, arrowhead=none];",
                    node_id(p),
                    node_id(q)
                );
            }
        }
    }
    for row in 1..=n {
        let path = trace_pipe(poset, mask, row).expect("row in range");
        let color = PIPE_COLORS[(row - 1) % PIPE_COLORS.len()];
        for pair in path.elements.windows(2) {
            let _ = writeln!(
                out,
                "  {} -> {} [color={color}, label=\"{row}->{}\"];",
                node_id(pair[0]),
                node_id(pair[1]),
                path.exit_value
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> PosetElement {
        PosetElement::new(i, j)
    }

    fn figure_mask(poset: &GtPoset) -> u64 {
        poset
            .mask_of(&[e(1, 1), e(2, 2), e(1, 2), e(2, 3), e(1, 4)])
            .unwrap()
    }

    fn example_oc(poset: &GtPoset) -> OcPartition {
        OcPartition::from_elements(poset, &[e(1, 2), e(1, 4), e(2, 3)]).unwrap()
    }

    #[test]
    fn figure_permutation() {
        let poset = GtPoset::new(4).unwrap();
        let w = w_of_subset(&poset, figure_mask(&poset));
        assert_eq!(w.images(), &[4, 3, 1, 2]);
        let exits: Vec<_> = (1..=4)
            .map(|i| {
                trace_pipe(&poset, figure_mask(&poset), i)
                    .unwrap()
                    .exit_value
            })
            .collect();
        assert_eq!(exits, vec![4, 3, 1, 2]);
    }

    #[test]
    fn extremes() {
        let poset = GtPoset::new(5).unwrap();
        assert!(w_of_subset(&poset, 0).is_identity());
        assert_eq!(
            w_of_subset(&poset, poset.full_mask()),
            Permutation::longest(5)
        );
        for i in 1..=5 {
            assert_eq!(trace_pipe(&poset, 0, i).unwrap().exit_value, i);
        }
    }

    #[test]
    fn pipes_match_word_exhaustively() {
        for n in 2..=4 {
            let poset = GtPoset::new(n).unwrap();
            for mask in 0..=poset.full_mask() {
                let w = w_of_subset(&poset, mask);
                for i in 1..=n {
                    let path = trace_pipe(&poset, mask, i).unwrap();
                    assert_eq!(path.exit_value, w.apply(i), "n={n} mask={mask:#x} i={i}");
                    for pair in path.elements.windows(2) {
                        let (a, b) = (pair[0], pair[1]);
                        assert!(b.leq(&a) && (a.i - b.i) + (a.j - b.j) == 1);
                    }
                }
            }
        }
    }

    #[test]
    fn r_table_example() {
        let poset = GtPoset::new(4).unwrap();
        let t = PartitionTables::new(&poset, &example_oc(&poset));
        let table: Vec<Vec<usize>> = (1..=4)
            .map(|i| (1..=4).rev().map(|j| t.r(i, j)).collect())
            .collect();
        assert_eq!(
            table,
            vec![
                vec![4, 3, 2, 1],
                vec![2, 3, 1, 4],
                vec![2, 1, 3, 4],
                vec![2, 1, 3, 4]
            ]
        );
        assert_eq!(t.sigma(1).images(), &[1, 2, 3, 4]);
        assert_eq!(t.sigma(2).images(), &[2, 4, 3, 1]);
        assert_eq!(t.sigma(3).images(), &[3, 4, 2, 1]);
        assert_eq!(t.tau.images(), &[3, 4, 2, 1]);
    }

    #[test]
    fn fflv_tables_are_trivial() {
        let poset = GtPoset::new(4).unwrap();
        let t = PartitionTables::new(&poset, &OcPartition::all_chain(&poset));
        for i in 1..=4 {
            assert!(t.sigma(i).is_identity());
        }
    }

    #[test]
    fn tau_fixes_small_r_values() {
        let poset = GtPoset::new(4).unwrap();
        for oc in OcPartition::all(&poset) {
            let t = PartitionTables::new(&poset, &oc);
            for i in 1..=4 {
                for j in 1..i {
                    assert_eq!(t.tau.apply(t.r(i, j)), j);
                }
            }
        }
    }

    #[test]
    fn renderers_mention_every_pipe() {
        let poset = GtPoset::new(4).unwrap();
        let text = render_ascii(&poset, figure_mask(&poset));
        assert!(text.contains("pipe 1 -> 4"));
        assert!(text.contains("pipe 4 -> 2"));
        let dot = render_dot(&poset, figure_mask(&poset));
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("label=\"3->1\""));
    }
}
