//! Dense univariate polynomials over [`Rational`].
//!
//! Coefficients are stored in ascending degree order; the representation is
//! canonical (empty vector for zero, nonzero leading coefficient otherwise).

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};

/// Dense polynomial with exact rational coefficients, ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        Polynomial::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// c * x^deg.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// a + b*x.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Polynomial::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Sum of |c_i|; together with the degree this gives the crude but
    /// rigorous bound |p(x)| <= coeff_abs_sum * x^deg for x >= 1.
    pub fn coeff_abs_sum(&self) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in an arbitrary scalar type, converting each
    /// coefficient on the way in. Used for high-precision float paths.
    pub fn eval_map<S, F>(&self, x: &S, convert: F) -> S
    where
        S: super::Scalar,
        F: Fn(&Rational) -> S,
    {
        let mut acc = S::ring_zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&convert(c));
        }
        acc
    }

    /// d/dx.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    /// Taylor shift: returns p(x + shift).
    pub fn shift(&self, shift: &Rational) -> Polynomial {
        if shift.is_zero() {
            return self.clone();
        }
        // Synthetic division by (x - (-shift)) repeatedly.
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        for i in 0..n {
            for j in (i + 1..n).rev() {
                let add = &coeffs[j] * shift;
                coeffs[j - 1] += add;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// self = q * divisor + r and deg r < deg divisor. Panics on zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let d_deg = divisor.degree().expect("division by zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Polynomial::zero(), self.clone());
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![Rational::zero(); q_len];
        for k in (0..q_len).rev() {
            let lead = rem[k + d_deg].clone();
            if lead.is_zero() {
                continue;
            }
            let factor = lead / &d_lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let sub = dc * &factor;
                rem[k + j] -= sub;
            }
            quot[k] = factor;
        }
        rem.truncate(d_deg);
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    /// Exact division: Some(quotient) iff divisor divides self exactly.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd via the Euclidean algorithm over Q. Intended for the modest
    /// degrees that arise here; returns 1 for coprime inputs.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Polynomial::zero();
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&lead.recip())
    }

    /// Product prod_{k=1}^{m} (x + k); the factorial-ratio factor of the
    /// lattice weight. Returns 1 for m = 0.
    pub fn rising_product(m: usize) -> Polynomial {
        let mut acc = Polynomial::one();
        for k in 1..=m {
            acc = acc.mul(&Polynomial::linear(int(k as i64), Rational::one()));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn arithmetic_and_eval() {
        let p = Polynomial::from_i64(&[1, 2, 3]); // 1 + 2x + 3x^2
        let q = Polynomial::from_i64(&[0, -2]); // -2x
        assert_eq!(p.add(&q), Polynomial::from_i64(&[1, 0, 3]));
        assert_eq!(p.eval(&int(2)), int(17));
        assert_eq!(p.mul(&q), Polynomial::from_i64(&[0, -2, -4, -6]));
        assert_eq!(p.derivative(), Polynomial::from_i64(&[2, 6]));
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = Polynomial::from_i64(&[3, 0, 1, -2]);
        let shifted = p.shift(&rat(5, 3));
        for x in [-2i64, 0, 1, 7] {
            assert_eq!(shifted.eval(&int(x)), p.eval(&(int(x) + rat(5, 3))));
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = Polynomial::from_i64(&[1, 1]); // x + 1
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, Polynomial::from_i64(&[-1, 1]));
        assert!(a.div_exact(&Polynomial::from_i64(&[2, 1])).is_none());

        let g = a.gcd(&Polynomial::from_i64(&[1, 2, 1])); // gcd(x^2-1, (x+1)^2)
        assert_eq!(g, Polynomial::from_i64(&[1, 1]));
    }

    #[test]
    fn rising_product_values() {
        assert_eq!(Polynomial::rising_product(0), Polynomial::one());
        // (x+1)(x+2) = 2 + 3x + x^2
        assert_eq!(Polynomial::rising_product(2), Polynomial::from_i64(&[2, 3, 1]));
    }
}
