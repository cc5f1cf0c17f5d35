//! Exact moments of the lattice weight and of its Meixner approximant.
//!
//! ```text
//! w(x)  = (q^{x+m+1} - s^{x+m+1}) * prod_{k=1}^{m} (x+k)
//! wM(x) =  q^{x+m+1}              * prod_{k=1}^{m} (x+k)
//! ```
//!
//! so w = wM * (1 - G^{-4(x+m+1)}) pointwise, and every moment
//! mu_j = sum_{x>=0} x^j w(x) is a finite combination of polynomial-times-
//! geometric closed forms. The table grows lazily.

use num_traits::Signed;

use crate::error::Result;
use crate::lattice::params::ModelParams;
use crate::scalar::polylog::poly_geometric_sum;
use crate::scalar::polynomial::Polynomial;
use crate::scalar::rational::{factorial, pow_i, Rational};

/// Which weight the moments belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// The full lattice weight (difference of two geometric scales).
    Full,
    /// The Meixner weight (dominant geometric scale only).
    Meixner,
}

/// w(x), exact.
pub fn weight_w(x: usize, p: &ModelParams, m: usize) -> Rational {
    let rising = Polynomial::rising_product(m).eval(&crate::scalar::rational::int(x as i64));
    (pow_i(&p.q, (x + m + 1) as i64) - pow_i(&p.s, (x + m + 1) as i64)) * rising
}

/// wM(x), exact.
pub fn weight_meixner(x: usize, p: &ModelParams, m: usize) -> Rational {
    let rising = Polynomial::rising_product(m).eval(&crate::scalar::rational::int(x as i64));
    pow_i(&p.q, (x + m + 1) as i64) * rising
}

/// Exact moment table mu_0..mu_jmax for one weight and one m.
#[derive(Clone, Debug)]
pub struct MomentTable {
    pub m: usize,
    pub kind: WeightKind,
    params: ModelParams,
    rising: Polynomial,
    mu: Vec<Rational>,
}

impl MomentTable {
    pub fn new(p: &ModelParams, m: usize, kind: WeightKind) -> Self {
        MomentTable {
            m,
            kind,
            params: p.clone(),
            rising: Polynomial::rising_product(m),
            mu: Vec::new(),
        }
    }

    /// Ensure mu_0..mu_jmax are present.
    pub fn extend_to(&mut self, jmax: usize) -> Result<()> {
        while self.mu.len() <= jmax {
            let j = self.mu.len();
            let poly = Polynomial::monomial(num_traits::One::one(), j).mul(&self.rising);
            let p = &self.params;
            let mm = (self.m + 1) as i64;
            let q_part = pow_i(&p.q, mm) * poly_geometric_sum(&poly, &p.q, 0)?;
            let value = match self.kind {
                WeightKind::Meixner => q_part,
                WeightKind::Full => q_part - pow_i(&p.s, mm) * poly_geometric_sum(&poly, &p.s, 0)?,
            };
            self.mu.push(value);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn mu(&self, j: usize) -> &Rational {
        &self.mu[j]
    }

    pub fn moments(&self) -> &[Rational] {
        &self.mu
    }

    /// Contraction sum_x f(x) g(x) w(x) through the table, exact.
    /// Needs moments up to deg f + deg g.
    pub fn inner_product(&self, f: &Polynomial, g: &Polynomial) -> Rational {
        let prod = f.mul(g);
        let mut acc: Rational = num_traits::Zero::zero();
        for (i, c) in prod.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            acc += c * self.mu(i);
        }
        acc
    }
}

/// Build a table with moments 0..=jmax in one call.
pub fn moments(p: &ModelParams, m: usize, jmax: usize, kind: WeightKind) -> Result<MomentTable> {
    let mut table = MomentTable::new(p, m, kind);
    table.extend_to(jmax)?;
    Ok(table)
}

/// Closed-form h_0 = mu_0 (the seed identity used as an independent check):
/// m! [ q^{m+1}/(1-q)^{m+1} - s^{m+1}/(1-s)^{m+1} ].
pub fn mu0_closed_form(p: &ModelParams, m: usize) -> Rational {
    let mm = (m + 1) as i64;
    let one: Rational = num_traits::One::one();
    let q_term = pow_i(&p.q, mm) / pow_i(&(&one - &p.q), mm);
    let s_term = pow_i(&p.s, mm) / pow_i(&(&one - &p.s), mm);
    Rational::from_integer(factorial(m)) * (q_term - s_term)
}

/// Positivity of w on the whole lattice is equivalent to q > s; spot checks
/// live in the tests, this helper serves the verification suite.
pub fn weight_positive_prefix(p: &ModelParams, m: usize, xmax: usize) -> bool {
    (0..=xmax).all(|x| weight_w(x, p, m).is_positive())
}
