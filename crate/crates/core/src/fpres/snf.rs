//! Smith normal form diagonals of small integer matrices.

use num_bigint::BigInt;

use super::FpresError;

/// Returned when checked 64-bit arithmetic would overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SnfOverflow;

trait Scalar: Clone + PartialEq + Sized {
    fn is_zero(&self) -> bool;
    /// Absolute value as a sort key for pivot choice.
    fn magnitude(&self) -> BigInt;
    fn div_floor_toward_zero(&self, d: &Self) -> Result<Self, SnfOverflow>;
    /// `self - q * other`
    fn sub_mul(&self, q: &Self, other: &Self) -> Result<Self, SnfOverflow>;
    fn add(&self, other: &Self) -> Result<Self, SnfOverflow>;
    fn neg(&self) -> Result<Self, SnfOverflow>;
    fn is_negative(&self) -> bool;
    fn to_u64(&self) -> Option<u64>;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude(&self) -> BigInt {
        BigInt::from(self.unsigned_abs())
    }
    fn div_floor_toward_zero(&self, d: &Self) -> Result<Self, SnfOverflow> {
        self.checked_div(*d).ok_or(SnfOverflow)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Result<Self, SnfOverflow> {
        q.checked_mul(*other)
            .and_then(|p| self.checked_sub(p))
            .ok_or(SnfOverflow)
    }
    fn add(&self, other: &Self) -> Result<Self, SnfOverflow> {
        self.checked_add(*other).ok_or(SnfOverflow)
    }
    fn neg(&self) -> Result<Self, SnfOverflow> {
        self.checked_neg().ok_or(SnfOverflow)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_u64(&self) -> Option<u64> {
        u64::try_from(*self).ok()
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        self.sign() == num_bigint::Sign::NoSign
    }
    fn magnitude(&self) -> BigInt {
        BigInt::from(self.magnitude().clone())
    }
    fn div_floor_toward_zero(&self, d: &Self) -> Result<Self, SnfOverflow> {
        Ok(self / d)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Result<Self, SnfOverflow> {
        Ok(self - q * other)
    }
    fn add(&self, other: &Self) -> Result<Self, SnfOverflow> {
        Ok(self + other)
    }
    fn neg(&self) -> Result<Self, SnfOverflow> {
        Ok(-self)
    }
    fn is_negative(&self) -> bool {
        self.sign() == num_bigint::Sign::Minus
    }
    fn to_u64(&self) -> Option<u64> {
        u64::try_from(self).ok()
    }
}

/// Diagonal of the Smith normal form using checked `i64` arithmetic.
pub fn smith_diagonal_checked(matrix: &[Vec<i64>]) -> Result<Vec<u64>, SnfOverflow> {
    let diag = smith_diagonal(matrix.to_vec())?;
    diag.iter().map(|d| d.to_u64().ok_or(SnfOverflow)).collect()
}

pub(super) fn smith_diagonal_big(matrix: &[Vec<i64>]) -> Result<Vec<u64>, FpresError> {
    let big: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let diag = smith_diagonal(big).map_err(|_| FpresError::Overflow)?;
    diag.iter()
        .map(|d| d.to_u64().ok_or(FpresError::Overflow))
        .collect()
}

/// Elementary row and column operations, always pivoting on the entry of
/// least magnitude in the remaining block.
// Row and column operations touch two rows at once; indices read better than iterators.
#[allow(clippy::needless_range_loop)]
fn smith_diagonal<T: Scalar>(mut a: Vec<Vec<T>>) -> Result<Vec<T>, SnfOverflow> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&a, t) else {
                return Ok(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor_toward_zero(&a[t][t])?;
                for j in t..cols {
                    a[i][j] = a[i][j].sub_mul(&q, &a[t][j])?;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor_toward_zero(&a[t][t])?;
                for i in t..rows {
                    a[i][j] = a[i][j].sub_mul(&q, &a[i][t])?;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }

            // Pivot must divide the rest of the block; otherwise fold the
            // offending row in and go again.
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| {
                    let q = a[i][j].div_floor_toward_zero(&a[t][t]);
                    match q {
                        Ok(q) => !a[i][j]
                            .sub_mul(&q, &a[t][t])
                            .map(|r| r.is_zero())
                            .unwrap_or(false),
                        Err(_) => true,
                    }
                })
            });
            match offending {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        let d = &a[t][t];
        diag.push(if d.is_negative() { d.neg()? } else { d.clone() });
    }
    Ok(diag)
}

fn min_pivot<T: Scalar>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let m = x.magnitude();
            if best.as_ref().is_none_or(|(b, _, _)| m < *b) {
                best = Some((m, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_examples() {
        assert_eq!(
            smith_diagonal_checked(&[vec![2, 4], vec![6, 8]]).unwrap(),
            vec![2, 4]
        );
        assert_eq!(
            smith_diagonal_checked(&[vec![4, 0], vec![0, 6]]).unwrap(),
            vec![2, 12]
        );
        assert_eq!(
            smith_diagonal_checked(&[vec![0, 0]]).unwrap(),
            Vec::<u64>::new()
        );
        assert_eq!(smith_diagonal_checked(&[]).unwrap(), Vec::<u64>::new());
        assert_eq!(smith_diagonal_checked(&[vec![-5]]).unwrap(), vec![5]);
    }

    #[test]
    fn overflow_detected_then_escalated() {
        let m = vec![vec![i64::MIN, 0], vec![0, 1]];
        assert_eq!(smith_diagonal_checked(&m), Err(SnfOverflow));
        assert_eq!(smith_diagonal_big(&m).unwrap(), vec![1, 1u64 << 63]);
        // 3 * 2^63 does not fit in a u64 invariant.
        let m = vec![vec![i64::MIN, 0], vec![0, 3]];
        assert_eq!(smith_diagonal_big(&m), Err(FpresError::Overflow));
    }

    #[test]
    fn big_and_checked_agree() {
        let m = vec![vec![3, 5, 7], vec![2, -4, 6], vec![9, 9, 0]];
        assert_eq!(
            smith_diagonal_checked(&m).unwrap(),
            smith_diagonal_big(&m).unwrap()
        );
    }
}
