//! Numbers of the form a + b*sqrt(d) with a, b, d rational.
//!
//! The parameter-reduction identity introduces square roots of rational weight
//! ratios; working in the quadratic extension keeps the round-trip test exact
//! instead of falling back to floats. When d is a perfect rational square the
//! root is folded into the rational part, so equality stays coefficient-wise.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::Rational;

/// a + b*sqrt(d). `d` is zero for purely rational values and is adopted from
/// the other operand on mixed arithmetic; combining two distinct nonzero d's
/// is a caller bug and panics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

/// sqrt of a rational if it is a perfect square of a rational.
pub fn exact_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let num_root = value.numer().sqrt();
    let den_root = value.denom().sqrt();
    if &(&num_root * &num_root) == value.numer() && &(&den_root * &den_root) == value.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

impl QuadExt {
    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: Rational::zero() }
    }

    /// a + b*sqrt(d); folds the root into the rational part when d is square.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "quadratic extension over a negative radicand");
        if b.is_zero() || d.is_zero() {
            return QuadExt::from_rational(a);
        }
        if let Some(root) = exact_sqrt(&d) {
            return QuadExt::from_rational(a + b * root);
        }
        QuadExt { a, b, d }
    }

    /// sqrt(d) itself.
    pub fn root(d: Rational) -> Self {
        QuadExt::new(Rational::zero(), Rational::from_integer(BigInt::from(1)), d)
    }

    fn joint_d(&self, rhs: &Self) -> Rational {
        match (self.d.is_zero(), rhs.d.is_zero()) {
            (true, _) => rhs.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, rhs.d, "mixing different quadratic extensions");
                self.d.clone()
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let d = self.joint_d(rhs);
        QuadExt::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let d = self.joint_d(rhs);
        QuadExt::new(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.joint_d(rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt::new(a, b, d)
    }

    /// (a + b sqrt(d))^-1 = (a - b sqrt(d)) / (a^2 - b^2 d).
    pub fn recip(&self) -> Self {
        let d = &self.d;
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        assert!(!norm.is_zero(), "inverting zero in the quadratic extension");
        QuadExt::new(&self.a / &norm, -(&self.b) / &norm, d.clone())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = QuadExt::from_rational(Rational::from_integer(BigInt::from(1)));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The rational value, if the irrational part vanished.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }
}
