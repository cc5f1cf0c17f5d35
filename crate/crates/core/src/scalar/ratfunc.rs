//! Rational functions (ratios of polynomials) with exact arithmetic.
//!
//! Normalization is optional by design: evaluation and differentiation are
//! exact whether or not numerator and denominator share factors. The
//! t-derivative below is the chain rule for functions of t expressed through
//! z = e^{2t}: d/dt = 2z d/dz.

use num_traits::Zero;

use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// num(z) / den(z) with rational coefficients; den is never the zero polynomial.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator polynomial");
        RationalFunction { num, den }
    }

    pub fn from_polynomial(num: Polynomial) -> Self {
        RationalFunction::new(num, Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Exact evaluation. Fails only where the denominator vanishes.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return Err(Error::Singular(format!(
                "rational function evaluated at a pole (x = {x})"
            )));
        }
        Ok(self.num.eval(x) / den)
    }

    /// d/dz by the quotient rule, unreduced: (n'd - nd') / d^2.
    pub fn derivative_z(&self) -> RationalFunction {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RationalFunction::new(num, self.den.mul(&self.den))
    }

    /// d/dt for a function of t represented through z = e^{2t}: 2z * d/dz.
    /// No normalization is performed.
    pub fn derivative_t(&self) -> RationalFunction {
        let d = self.derivative_z();
        let two_z = Polynomial::monomial(crate::scalar::rational::int(2), 1);
        RationalFunction::new(d.num.mul(&two_z), d.den)
    }

    /// Cancel the gcd of numerator and denominator and make the denominator
    /// monic. Values are unchanged everywhere both representations are defined.
    pub fn reduced(&self) -> RationalFunction {
        if self.num.is_zero() {
            return RationalFunction::new(Polynomial::zero(), Polynomial::one());
        }
        let g = self.num.gcd(&self.den);
        let (mut num, mut den) = match g.degree() {
            Some(d) if d >= 1 => (
                self.num.div_exact(&g).expect("gcd divides numerator"),
                self.den.div_exact(&g).expect("gcd divides denominator"),
            ),
            _ => (self.num.clone(), self.den.clone()),
        };
        let lead = den.leading().unwrap().clone();
        num = num.scale(&lead.clone().recip());
        den = den.scale(&lead.recip());
        RationalFunction { num, den }
    }

    /// Cancel as many copies of `factor` as divide both numerator and
    /// denominator. Cheaper than a full gcd when the common factors are known.
    pub fn cancel_factor(&self, factor: &Polynomial) -> RationalFunction {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        while let (Some(n2), Some(d2)) = (num.div_exact(factor), den.div_exact(factor)) {
            num = n2;
            den = d2;
        }
        RationalFunction::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    #[test]
    fn t_derivative_of_z_is_2z() {
        // F = z represents e^{2t}; dF/dt = 2 e^{2t} = 2z.
        let f = RationalFunction::from_polynomial(Polynomial::x());
        let d = f.derivative_t();
        for x in [rat(3, 2), int(5), rat(-7, 3)] {
            assert_eq!(d.eval(&x).unwrap(), int(2) * &x);
        }
    }

    #[test]
    fn t_derivative_of_inverse() {
        // F = 1/z represents e^{-2t}; dF/dt = -2 e^{-2t} = -2/z.
        let f = RationalFunction::new(Polynomial::one(), Polynomial::x());
        let d = f.derivative_t();
        for x in [rat(3, 2), int(5)] {
            assert_eq!(d.eval(&x).unwrap(), int(-2) / &x);
        }
    }

    #[test]
    fn reduction_preserves_values() {
        // (x^2 - 1) / (x + 1) reduces to x - 1.
        let f = RationalFunction::new(
            Polynomial::from_i64(&[-1, 0, 1]),
            Polynomial::from_i64(&[1, 1]),
        );
        let r = f.reduced();
        assert_eq!(r.num(), &Polynomial::from_i64(&[-1, 1]));
        assert_eq!(r.eval(&int(4)).unwrap(), int(3));
    }

    #[test]
    fn pole_is_an_error() {
        let f = RationalFunction::new(Polynomial::one(), Polynomial::from_i64(&[-1, 1]));
        assert!(f.eval(&int(1)).is_err());
    }

    #[test]
    fn double_t_derivative_commutes_with_normalization() {
        // Differentiating twice and normalizing in either order cannot change
        // values: check at ten deterministic pseudo-random rational points.
        let f = RationalFunction::new(
            Polynomial::from_i64(&[3, 0, 2]),
            Polynomial::from_i64(&[5, -1, 0, 1]),
        );
        let raw = f.derivative_t().derivative_t();
        let normalized = f.derivative_t().reduced().derivative_t().reduced();
        let mut state = 12345u64;
        for _ in 0..10 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let num = (state >> 33) as i64 % 97 + 7;
            let den = ((state >> 17) as i64 % 23).abs() + 3;
            let x = rat(num, den);
            if raw.den().eval(&x).is_zero() {
                continue;
            }
            assert_eq!(raw.eval(&x).unwrap(), normalized.eval(&x).unwrap(), "at x = {x}");
        }
    }
}
