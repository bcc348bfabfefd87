use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Every intermediate division is exact.
pub fn integer_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
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
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn known_determinants() {
        assert_eq!(integer_determinant(&[]), BigInt::from(1));
        assert_eq!(integer_determinant(&m(&[&[7]])), BigInt::from(7));
        assert_eq!(integer_determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            integer_determinant(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            BigInt::from(4)
        );
        assert_eq!(integer_determinant(&m(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(
            integer_determinant(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
            BigInt::from(-1)
        );
    }
}
