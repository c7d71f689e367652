use serde::{Deserialize, Serialize};

use super::qposet::{QElement, QPartition, QPoset, QSet};
use crate::error::{domain, Error, Result};
use crate::perm::Permutation;

const MAX_PIPE_STEPS: usize = 100_000;

/// `s̃_{i,j} = (i mod k, j mod (n-k))`.
fn transposition(q: &QPoset, p: QElement) -> (usize, usize) {
    (q.mod_k(p.i), q.mod_nk(p.j))
}

fn evaluate_word(n: usize, q: &QPoset, word: &[QElement]) -> Permutation {
    let images = (1..=n)
        .map(|x| {
            word.iter().rev().fold(x, |y, &p| {
                let (a, b) = transposition(q, p);
                if y == a {
                    b
                } else if y == b {
                    a
                } else {
                    y
                }
            })
        })
        .collect();
    Permutation::from_images(images).expect("product of transpositions")
}

/// `w_M = ∏ s̃_{i,j}` over `M` ordered by a linear extension of `≺`
/// (sorted by `(n-k)i + kj`, a strictly monotone functional).
pub fn w_of_subset_q(q: &QPoset, m: &QSet) -> Permutation {
    let mut word: Vec<QElement> = m.iter().copied().collect();
    word.sort_by_key(|p| ((q.n - q.k) * p.i + q.k * p.j, p.i));
    let w = evaluate_word(q.n, q, &word);
    debug_assert_eq!(w, w_of_subset_q_alt(q, m));
    w
}

/// The same product over a different linear extension: repeatedly take the
/// largest-`j` minimal element.
pub fn w_of_subset_q_alt(q: &QPoset, m: &QSet) -> Permutation {
    let mut rest: Vec<QElement> = m.iter().copied().collect();
    let mut word = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let pos = (0..rest.len())
            .filter(|&a| !rest.iter().any(|&b| q.lt(b, rest[a])))
            .max_by_key(|&a| (rest[a].j, rest[a].i))
            .expect("a finite poset has minimal elements");
        word.push(rest.remove(pos));
    }
    evaluate_word(q.n, q, &word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPipe {
    pub path: Vec<QElement>,
    pub value: usize,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Direction {
    Row,
    Column,
}

/// Trace the pipe entering along the edge `first → second` and changing
/// direction at elements of `M`.
pub(crate) fn trace(
    q: &QPoset,
    in_m: impl Fn(QElement) -> bool,
    first: QElement,
    second: QElement,
) -> Result<QPipe> {
    let (i, j) = (first.i as i64, first.j as i64);
    let mut dir = if q.try_normalize(i - 1, j) == Some(second) {
        Direction::Row
    } else if q.try_normalize(i, j - 1) == Some(second) {
        Direction::Column
    } else {
        return domain(format!("{first} does not cover {second}"));
    };
    let mut path = vec![first, second];
    let mut cur = second;
    loop {
        if in_m(cur) {
            dir = match dir {
                Direction::Row => Direction::Column,
                Direction::Column => Direction::Row,
            };
        }
        let (i, j) = (cur.i as i64, cur.j as i64);
        let next = match dir {
            Direction::Row => q.try_normalize(i - 1, j),
            Direction::Column => q.try_normalize(i, j - 1),
        };
        let Some(next) = next else { break };
        if path.len() > MAX_PIPE_STEPS {
            return Err(Error::Capacity(format!(
                "pipe from {first} exceeds {MAX_PIPE_STEPS} steps"
            )));
        }
        path.push(next);
        cur = next;
    }
    let value = if cur.i > 1 {
        cur.i
    } else if cur.j > q.k + 1 {
        cur.j
    } else {
        let prev = path[path.len() - 2];
        let k = q.k;
        let exits_low = if in_m(cur) {
            prev == QElement::new(2, k + 1)
        } else {
            prev == QElement::new(1, k + 2)
        };
        if exits_low {
            1
        } else {
            k + 1
        }
    };
    Ok(QPipe { path, value })
}

/// `N_M(first, second)` for a finite `M`.
pub fn pipe_value(q: &QPoset, m: &QSet, first: QElement, second: QElement) -> Result<QPipe> {
    trace(q, |p| m.contains(&p), first, second)
}

/// `r(i,j) = N_O((i,j), ⟨i-1,j⟩)`, with `r(i,j) = j` when `i = 1` or
/// `1 ≤ i ≤ j ≤ k`.
pub fn r_q(o: &QPartition, i: usize, j: usize) -> Result<usize> {
    let q = &o.q;
    if i >= 1 && i <= j && j <= q.k {
        return Ok(j);
    }
    let p = q.element(i, j)?;
    match q.try_normalize(i as i64 - 1, j as i64) {
        None => Ok(j),
        Some(next) => Ok(trace(q, |x| o.in_order(x), p, next)?.value),
    }
}

/// Checks the two pipe identities for every start `(C,D)` with `C ≤ rows`
/// lying above no element of `M`: the pipe entering along
/// `(C,D) → ⟨C,D-1⟩` has value `w_M(C mod k)`, the one entering along
/// `(C,D) → ⟨C-1,D⟩` has value `w_M(D mod (n-k))`. Returns the number of
/// pipes checked and the failing starts.
pub fn pipe_lemma_check(
    q: &QPoset,
    m: &QSet,
    rows: usize,
) -> Result<(usize, Vec<(QElement, QElement)>)> {
    let w = w_of_subset_q(q, m);
    let mut checked = 0;
    let mut failures = Vec::new();
    for c in 1..=rows {
        for d in c..c + q.n {
            let p = QElement::new(c, d);
            if !q.contains(p) || m.iter().any(|&x| q.leq(p, x)) {
                continue;
            }
            let starts = [
                (q.try_normalize(c as i64, d as i64 - 1), w.apply(q.mod_k(c))),
                (
                    q.try_normalize(c as i64 - 1, d as i64),
                    w.apply(q.mod_nk(d)),
                ),
            ];
            for (next, expect) in starts {
                let Some(next) = next else { continue };
                checked += 1;
                if pipe_value(q, m, p, next)?.value != expect {
                    failures.push((p, next));
                }
            }
        }
    }
    Ok((checked, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize, j: usize) -> QElement {
        QElement::new(i, j)
    }

    fn example() -> (QPoset, QSet) {
        let q = QPoset::new(5, 3).unwrap();
        (
            q,
            [e(1, 4), e(2, 5), e(4, 4), e(3, 6), e(4, 5)]
                .into_iter()
                .collect(),
        )
    }

    fn example_partition() -> QPartition {
        let q = QPoset::new(5, 3).unwrap();
        QPartition::with_extra(q, [e(1, 4), e(2, 5), e(3, 6), e(4, 5)]).unwrap()
    }

    #[test]
    fn example_permutation() {
        let (q, m) = example();
        assert_eq!(w_of_subset_q(&q, &m).images(), &[2, 5, 4, 3, 1]);
        assert!(w_of_subset_q(&q, &QSet::new()).is_identity());
    }

    #[test]
    fn factored_word() {
        let (q, m) = example();
        let word = [(1, 4), (2, 5), (1, 4), (3, 4), (1, 5)];
        let plain: Vec<usize> = (1..=5)
            .map(|x| {
                word.iter().rev().fold(x, |y, &(a, b)| {
                    if y == a {
                        b
                    } else if y == b {
                        a
                    } else {
                        y
                    }
                })
            })
            .collect();
        assert_eq!(w_of_subset_q(&q, &m).images(), plain.as_slice());
    }

    #[test]
    fn example_pipes() {
        let (q, m) = example();
        let starts = [
            (e(4, 7), e(4, 6)),
            (e(5, 5), q.normalize(5, 4).unwrap()),
            (e(3, 7), e(3, 6)),
            (e(5, 6), e(4, 6)),
            (e(5, 5), e(4, 5)),
        ];
        let values: Vec<usize> = starts
            .iter()
            .map(|&(a, b)| pipe_value(&q, &m, a, b).unwrap().value)
            .collect();
        assert_eq!(values, vec![2, 5, 4, 3, 1]);
    }

    #[test]
    fn empty_set_pipes_keep_row() {
        let q = QPoset::new(5, 3).unwrap();
        for i in 1..10 {
            for j in i..i + 5 {
                let p = e(i, j);
                if let (true, Some(next)) = (q.contains(p), q.try_normalize(i as i64, j as i64 - 1))
                {
                    let v = pipe_value(&q, &QSet::new(), p, next).unwrap().value;
                    assert_eq!(v, q.mod_k(i), "{p}");
                }
            }
        }
    }

    #[test]
    fn invalid_edge_rejected() {
        let (q, m) = example();
        assert!(pipe_value(&q, &m, e(4, 7), e(2, 5)).is_err());
    }

    fn random_subset(q: &QPoset, rows: usize, rng: &mut ChaCha8Rng) -> QSet {
        (1..=rows)
            .flat_map(|i| (i..i + q.n).map(move |j| e(i, j)))
            .filter(|&p| q.contains(p) && rng.gen_bool(0.35))
            .collect()
    }

    #[test]
    fn alternative_extension_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, k) in [(4, 2), (5, 3), (5, 2), (6, 3)] {
            let q = QPoset::new(n, k).unwrap();
            for _ in 0..50 {
                let m = random_subset(&q, 2 * k + 2, &mut rng);
                assert_eq!(w_of_subset_q(&q, &m), w_of_subset_q_alt(&q, &m));
            }
        }
    }

    #[test]
    fn pipe_lemma_on_random_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, k) in [(4, 2), (5, 3)] {
            let q = QPoset::new(n, k).unwrap();
            for _ in 0..200 {
                let m = random_subset(&q, 2 * k + 2, &mut rng);
                let (checked, failures) = pipe_lemma_check(&q, &m, 3 * k + 4).unwrap();
                assert!(checked > 0);
                assert!(failures.is_empty(), "{m:?} {failures:?}");
            }
        }
    }

    #[test]
    fn r_values_of_example() {
        let o = example_partition();
        assert_eq!(r_q(&o, 4, 6).unwrap(), 3);
        assert_eq!(r_q(&o, 4, 5).unwrap(), 2);
        assert_eq!(r_q(&o, 4, 4).unwrap(), 1);
        assert_eq!(r_q(&o, 1, 4).unwrap(), 4);
        assert_eq!(r_q(&o, 3, 6).unwrap(), 4);
        for j in 1..=5 {
            assert_eq!(r_q(&o, 1, j).unwrap(), j);
        }
    }

    #[test]
    fn r_rows_are_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, k) in [(4, 2), (5, 3), (6, 3)] {
            let q = QPoset::new(n, k).unwrap();
            for _ in 0..20 {
                let extra: QSet = random_subset(&q, 2 * k, &mut rng);
                let o = QPartition::with_extra(q, extra).unwrap();
                for i in 1..=3 * k + 3 {
                    let mut row: Vec<usize> = (i..i + n).map(|j| r_q(&o, i, j).unwrap()).collect();
                    row.sort_unstable();
                    assert_eq!(row, (1..=n).collect::<Vec<_>>(), "row {i} of {o:?}");
                }
            }
        }
    }
}
