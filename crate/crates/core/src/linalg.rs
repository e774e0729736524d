//! Exact integer linear algebra over arbitrary-precision integers: fraction-free
//! determinants and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(matrix: &[Vec<i64>]) -> IntMatrix {
    matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
/// The empty matrix has determinant 1.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    let mut a: IntMatrix = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors `d_1, …, d_n` of a square matrix.
pub fn leading_minors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    // Without pivoting, the k-th Bareiss pivot is the k-th leading minor.
    let n = matrix.len();
    let mut a: IntMatrix = matrix.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut previous = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            break;
        }
        minors.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &previous;
                a[i][j] = value;
            }
        }
        previous = a[k][k].clone();
    }
    // a zero pivot stalls elimination; finish directly
    for k in minors.len() + 1..=n {
        let sub: IntMatrix = matrix[..k].iter().map(|row| row[..k].to_vec()).collect();
        minors.push(determinant(&sub));
    }
    minors
}

/// Diagonal of the Smith normal form of an `m × n` matrix, nonzero entries only,
/// each nonnegative and dividing the next.
pub fn invariant_factors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: IntMatrix = matrix.to_vec();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| a[i1][j1].abs().cmp(&a[i2][j2].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the trailing block; otherwise fold an offending row in
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Order of the abelian group presented by `relations` (one row per relation,
/// one column per generator). Returns 0 when the group is infinite.
pub fn presented_group_order(relations: &[Vec<BigInt>], generators: usize) -> BigInt {
    if relations.is_empty() {
        return if generators == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let factors = invariant_factors(relations);
    if factors.len() < generators {
        return BigInt::zero();
    }
    factors.iter().fold(BigInt::one(), |acc, d| acc * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> IntMatrix {
        to_big(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for n in 0..6 {
            for _ in 0..40 {
                let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                assert_eq!(
                    determinant(&to_big(&m)),
                    BigInt::from(cofactor_det(&m)),
                    "{m:?}"
                );
            }
        }
    }

    #[test]
    fn leading_minors_match_truncated_determinants() {
        let mut seed = 11u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % 5) as i64 - 2
        };
        for n in 0..7 {
            for _ in 0..60 {
                let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let expected: Vec<BigInt> = (1..=n)
                    .map(|k| {
                        BigInt::from(cofactor_det(
                            &m[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>(),
                        ))
                    })
                    .collect();
                assert_eq!(leading_minors(&to_big(&m)), expected, "{m:?}");
            }
        }
        let stalled = big(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        assert_eq!(
            leading_minors(&stalled),
            vec![BigInt::zero(), BigInt::from(-1), BigInt::from(-2)]
        );
    }

    #[test]
    fn determinant_needs_pivoting() {
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[0, 0], &[1, 0]])), BigInt::zero());
        assert_eq!(determinant(&[]), BigInt::one());
    }

    #[test]
    fn smith_form_of_known_matrices() {
        let f = invariant_factors(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let f = invariant_factors(&big(&[&[2, 0], &[0, 3]]));
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(6)]);
        let f = invariant_factors(&big(&[&[0, 0], &[0, 0]]));
        assert!(f.is_empty());
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            presented_group_order(&big(&[&[2, 0], &[0, 2]]), 2),
            BigInt::from(4)
        );
        assert_eq!(presented_group_order(&big(&[&[1, 0]]), 2), BigInt::zero());
        assert_eq!(presented_group_order(&[], 0), BigInt::one());
        assert_eq!(presented_group_order(&big(&[&[-7]]), 1), BigInt::from(7));
    }

    #[test]
    fn smith_product_matches_abs_determinant() {
        let mut seed = 11u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % 9) as i64 - 4
        };
        for n in 1..6 {
            for _ in 0..40 {
                let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let order = presented_group_order(&to_big(&m), n);
                assert_eq!(order, determinant(&to_big(&m)).abs(), "{m:?}");
                let f = invariant_factors(&to_big(&m));
                for w in f.windows(2) {
                    assert!((&w[1] % &w[0]).is_zero(), "{f:?} not a divisor chain");
                }
            }
        }
    }
}
