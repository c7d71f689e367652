use pipedegen::semiinf::{pipe_lemma_check, verify_semiinf, QElement, QPartition, QPoset, QSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(i: usize, j: usize) -> QElement {
    QElement::new(i, j)
}

fn partitions(n: usize, k: usize) -> Vec<QPartition> {
    let q = QPoset::new(n, k).unwrap();
    let extras: Vec<Vec<QElement>> = match (n, k) {
        (5, 3) => vec![
            vec![e(1, 4), e(2, 5), e(3, 6), e(4, 5)],
            vec![],
            vec![e(1, 5), e(2, 6), e(3, 4)],
            vec![e(1, 4), e(1, 5), e(2, 5), e(3, 7)],
        ],
        _ => vec![
            vec![],
            vec![e(1, 3), e(2, 4), e(3, 5)],
            vec![e(1, 4), e(2, 3)],
            vec![e(3, 6), e(4, 5)],
        ],
    };
    extras
        .into_iter()
        .map(|x| QPartition::with_extra(q, x).unwrap())
        .collect()
}

#[test]
fn truncated_theorem_holds() {
    for (n, k) in [(4, 2), (5, 3)] {
        for o in partitions(n, k) {
            let r = verify_semiinf(&o, 2).unwrap();
            assert!(r.pass(), "{o:?}");
            assert_eq!(r.level_counts, vec![r.expected_per_level; 3]);
        }
    }
}

#[test]
fn pipe_lemma_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (n, k) in [(4, 2), (5, 3)] {
        let q = QPoset::new(n, k).unwrap();
        let window: Vec<QElement> = (1..=2 * k + 2)
            .flat_map(|i| (i..i + n).map(move |j| e(i, j)))
            .filter(|&p| q.contains(p))
            .collect();
        for _ in 0..200 {
            let m: QSet = window
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.3))
                .collect();
            let (checked, failures) = pipe_lemma_check(&q, &m, 3 * k + 4).unwrap();
            assert!(checked > 0 && failures.is_empty(), "{m:?}");
        }
    }
}
