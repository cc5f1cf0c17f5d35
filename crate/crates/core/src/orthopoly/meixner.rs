//! Closed forms for the Meixner system at beta = m + 1.
//!
//! ```text
//! M_k(z) = sum_{j=0}^{k} binom(k,j) (1 - 1/q)^j / (beta)_j * z(z-1)...(z-j+1)
//! monic p^M_k = (beta)_k / (1 - 1/q)^k * M_k
//! h^M_k = k! (k+m)! q^{k+m+1} / (1-q)^{2k+m+1}
//! ```
//!
//! The exact orthogonal system built from the Meixner weight's moments must
//! reproduce both closed forms bit-for-bit; that oracle lives in the tests
//! and in the acceptance suite.

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::polynomial::Polynomial;
use crate::scalar::rational::{factorial, pow_i, Rational};

fn check_q(q: &Rational) -> Result<()> {
    let zero: Rational = num_traits::Zero::zero();
    if q <= &zero || q >= &Rational::one() {
        return Err(Error::Domain(format!("Meixner modulus must satisfy 0 < q < 1, got {q}")));
    }
    Ok(())
}

/// The Meixner family at beta = m + 1, modulus q, as a value bundle.
#[derive(Clone, Debug)]
pub struct MeixnerSystem {
    pub m: usize,
    pub q: Rational,
}

impl MeixnerSystem {
    pub fn new(m: usize, q: Rational) -> Result<Self> {
        check_q(&q)?;
        Ok(MeixnerSystem { m, q })
    }

    /// beta = m + 1.
    pub fn beta(&self) -> usize {
        self.m + 1
    }

    /// The weight normalization C_m = m! q^{m+1}.
    pub fn c_m(&self) -> Rational {
        Rational::from_integer(factorial(self.m)) * pow_i(&self.q, self.m as i64 + 1)
    }

    pub fn norm(&self, k: usize) -> Rational {
        meixner_norm(k, self.m, &self.q).expect("modulus validated at construction")
    }

    pub fn monic(&self, k: usize) -> Polynomial {
        meixner_monic(k, self.m, &self.q).expect("modulus validated at construction")
    }
}

/// h^M_k = k! (k+m)! q^{k+m+1} / (1-q)^{2k+m+1}, exact.
pub fn meixner_norm(k: usize, m: usize, q: &Rational) -> Result<Rational> {
    check_q(q)?;
    let e = (k + m + 1) as i64;
    let one = Rational::one();
    Ok(Rational::from_integer(factorial(k) * factorial(k + m)) * pow_i(q, e)
        / pow_i(&(&one - q), 2 * k as i64 + m as i64 + 1))
}

/// Monic Meixner polynomial of degree k at beta = m + 1, exact coefficients.
pub fn meixner_monic(k: usize, m: usize, q: &Rational) -> Result<Polynomial> {
    check_q(q)?;
    let one = Rational::one();
    let u = &one - &q.recip(); // 1 - 1/q, negative
    // falling factorial z(z-1)...(z-j+1), built incrementally
    let mut falling = Polynomial::one();
    let mut sum = Polynomial::zero();
    let mut binom = Rational::one(); // binom(k, j)
    let mut poch = Rational::one(); // (m+1)_j
    let mut u_pow = Rational::one();
    for j in 0..=k {
        if j > 0 {
            binom *= crate::scalar::rational::rat((k - j + 1) as i64, j as i64);
            poch *= crate::scalar::rational::int((m + j) as i64);
            u_pow *= &u;
            falling = falling.mul(&Polynomial::linear(
                crate::scalar::rational::int(-(j as i64 - 1)),
                one.clone(),
            ));
        }
        let coeff = &binom * &u_pow / &poch;
        sum = sum.add(&falling.scale(&coeff));
    }
    // Monic normalization: (beta)_k / (1 - 1/q)^k.
    let poch_k = Rational::from_integer(factorial(k + m) / factorial(m));
    let scale = poch_k / pow_i(&u, k as i64);
    Ok(sum.scale(&scale))
}
