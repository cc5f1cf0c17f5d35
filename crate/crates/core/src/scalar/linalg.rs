//! Fraction-free exact determinants (Bareiss elimination).
//!
//! Division-free pivoting is unnecessary over exact arithmetic: a zero test is
//! exact, and every interior division in the Bareiss recurrence is exact by
//! construction, so intermediate entries stay single determinants instead of
//! exploding products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Exact determinant of a square integer matrix.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// All leading principal minors M_1..M_n of a square integer matrix, in one
/// elimination pass. Returns None if a pivot vanishes (the minor sequence is
/// then not recoverable without row swaps). Positive-definite inputs, e.g.
/// moment Hankel matrices, never hit that branch.
pub fn bareiss_principal_minors(mut m: Vec<Vec<BigInt>>) -> Option<Vec<BigInt>> {
    let n = m.len();
    let mut minors = Vec::with_capacity(n);
    if n == 0 {
        return Some(minors);
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            return None;
        }
        minors.push(m[k][k].clone());
        if k == n - 1 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Some(minors)
}

/// Exact determinant of a rational matrix: each row is scaled to integers by
/// the lcm of its denominators, and the scaling is divided back out.
pub fn det_rational(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = Rational::one();
    let mut int_rows = Vec::with_capacity(n);
    for row in rows {
        debug_assert_eq!(row.len(), n);
        let mut lcm = BigInt::one();
        for v in row {
            lcm = lcm.lcm(v.denom());
        }
        let int_row: Vec<BigInt> = row
            .iter()
            .map(|v| {
                let f = &lcm / v.denom();
                v.numer() * f
            })
            .collect();
        scale *= Rational::from_integer(lcm);
        int_rows.push(int_row);
    }
    Rational::from_integer(bareiss_det(int_rows)) / scale
}

trait DivExact {
    fn div_exact(self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(self, d: &BigInt) -> BigInt {
        debug_assert!(!d.is_zero());
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "Bareiss interior division must be exact");
        q
    }
}

/// Determinant sign sanity used in a few asserts.
pub fn is_strictly_positive(v: &Rational) -> bool {
    v.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    /// Independent oracle: cofactor expansion, exponential but fine for n <= 6.
    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut det = BigInt::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let sub: Vec<Vec<BigInt>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                .collect();
            let term = &m[0][j] * cofactor_det(&sub);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn matches_cofactor_oracle() {
        let cases = [
            int_matrix(&[&[2]]),
            int_matrix(&[&[1, 2], &[3, 4]]),
            int_matrix(&[&[0, 1, 2], &[3, 0, 4], &[5, 6, 0]]),
            int_matrix(&[&[2, -1, 0, 3], &[1, 1, 1, 1], &[0, 5, -2, 1], &[7, 0, 0, 2]]),
        ];
        for m in cases {
            assert_eq!(bareiss_det(m.clone()), cofactor_det(&m));
        }
    }

    #[test]
    fn zero_pivot_handled_by_swap() {
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(m), BigInt::from(-1));
        let singular = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(singular), BigInt::zero());
    }

    #[test]
    fn principal_minors_walk() {
        let m = int_matrix(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let minors = bareiss_principal_minors(m.clone()).unwrap();
        assert_eq!(minors[0], BigInt::from(2));
        assert_eq!(minors[1], cofactor_det(&int_matrix(&[&[2, 1], &[1, 3]])));
        assert_eq!(minors[2], cofactor_det(&m));
    }

    #[test]
    fn rational_determinant() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(2, 7)],
        ];
        // det = 1/2*2/7 - 1/3*1/5 = 1/7 - 1/15 = 8/105
        assert_eq!(det_rational(&rows), rat(8, 105));
        assert_eq!(det_rational(&[vec![int(4)]]), int(4));
    }
}
