//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Bareiss elimination in place. Returns the rank and the sign of the row
/// permutation used. After the call the last nonzero pivot equals the
/// determinant of the leading minor (for square full-rank input, `det(A)`
/// up to the returned sign).
fn bareiss(m: &mut [Vec<BigInt>]) -> (usize, i8) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1i8;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = (&m[rank][c] * &m[r][cc] - &m[r][c] * &m[rank][cc]) / &prev;
                m[r][cc] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    (rank, sign)
}

pub fn rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut m = matrix.to_vec();
    bareiss(&mut m).0
}

pub fn rank_i64(matrix: &[Vec<i64>]) -> usize {
    rank(&to_big(matrix))
}

pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    assert!(
        matrix.iter().all(|r| r.len() == n),
        "square matrix required"
    );
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let (rank, sign) = bareiss(&mut m);
    if rank < n {
        return BigInt::zero();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

pub fn determinant_i64(matrix: &[Vec<i64>]) -> BigInt {
    determinant(&to_big(matrix))
}

/// Index of the first row that lies in the span of the rows before it.
pub fn first_dependent_row(matrix: &[Vec<BigInt>]) -> Option<usize> {
    (0..matrix.len()).find(|&r| rank(&matrix[..=r]) <= r)
}

fn to_big(matrix: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det_by_expansion(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(cc, _)| cc != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det_by_expansion(&minor)
            })
            .sum()
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant_i64(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant_i64(&[vec![2, 4], vec![1, 2]]), BigInt::zero());
        assert_eq!(rank_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]]), 2);
        assert_eq!(rank_i64(&[]), 0);
    }

    #[test]
    fn dependent_row_found() {
        let m = to_big(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(first_dependent_row(&m), Some(2));
        assert_eq!(first_dependent_row(&m[..2]), None);
    }

    proptest! {
        #[test]
        fn determinant_matches_cofactor_expansion(
            entries in proptest::collection::vec(-4i64..=4, 16)
        ) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            prop_assert_eq!(determinant_i64(&m), BigInt::from(det_by_expansion(&m)));
            let full = det_by_expansion(&m) != 0;
            prop_assert_eq!(rank_i64(&m) == 4, full);
        }
    }
}
