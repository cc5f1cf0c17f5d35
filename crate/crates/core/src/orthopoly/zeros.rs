//! Zeros of the orthogonal polynomials as Jacobi-matrix eigenvalues.
//!
//! The monic three-term recurrence supplies the symmetric tridiagonal Jacobi
//! matrix (diagonal alpha_k, off-diagonal sqrt(beta_k)). Eigenvalues are
//! found by Sturm-count bisection on the LDL^T pivot recursion, which only
//! needs the beta_k themselves, never their square roots. Exactness is not
//! required here; everything after the exact moment table runs in big floats
//! at a working precision comfortably above the 128-bit targets.

use std::cmp::Ordering;

use num_traits::Signed;

use super::moments::{moments, WeightKind};
use super::system::op_recurrence_map;
use crate::error::{Error, Result};
use crate::lattice::params::ModelParams;
use crate::scalar::bigfloat::BigFloat;

/// Jacobi data for p_0..p_k: alpha_0..alpha_{k-1}, beta_1..beta_{k-1}.
#[derive(Clone, Debug)]
pub struct JacobiMatrix {
    pub alpha: Vec<BigFloat>,
    pub beta: Vec<BigFloat>,
}

impl JacobiMatrix {
    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// Number of eigenvalues strictly below x, by the pivot sign count.
    fn count_below(&self, x: &BigFloat) -> usize {
        let mut count = 0usize;
        let mut pivot = self.alpha[0].sub(x);
        if pivot.is_negative() {
            count += 1;
        }
        for i in 1..self.order() {
            if pivot.is_zero() {
                // Nudge an exact zero pivot; measure-zero event in floats.
                pivot = BigFloat::one().mul_pow2(x.prec().max(64) as i64 * -2).neg();
            }
            pivot = self.alpha[i].sub(x).sub(&self.beta[i - 1].div(&pivot));
            if pivot.is_negative() {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    fn spectrum_bounds(&self) -> Result<(BigFloat, BigFloat)> {
        let k = self.order();
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for i in 0..k {
            let mut radius = BigFloat::zero();
            if i > 0 {
                radius = radius.add(&self.beta[i - 1].sqrt()?);
            }
            if i < k - 1 {
                radius = radius.add(&self.beta[i].sqrt()?);
            }
            let l = self.alpha[i].sub(&radius);
            let h = self.alpha[i].add(&radius);
            lo = Some(match lo {
                Some(v) if v.cmp_value(&l) == Ordering::Less => v,
                _ => l,
            });
            hi = Some(match hi {
                Some(v) if v.cmp_value(&h) == Ordering::Greater => v,
                _ => h,
            });
        }
        Ok((lo.unwrap(), hi.unwrap()))
    }

    /// All eigenvalues, ascending, bisected to `target_bits` of absolute
    /// resolution relative to the spectral width.
    pub fn eigenvalues(&self, target_bits: u32) -> Result<Vec<BigFloat>> {
        let k = self.order();
        let (lo, hi) = self.spectrum_bounds()?;
        let width = hi.sub(&lo);
        if width.is_zero() {
            return Ok(vec![lo; k]);
        }
        let mut out = Vec::with_capacity(k);
        let half = BigFloat::from_i64(1).mul_pow2(-1);
        for index in 0..k {
            let mut a = lo.clone();
            let mut b = hi.clone();
            // Invariant: count_below(a) <= index < count_below(b).
            for _ in 0..(target_bits as usize + 8) {
                let mid = a.add(&b).mul(&half);
                if self.count_below(&mid) <= index {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            out.push(a.add(&b).mul(&half));
        }
        Ok(out)
    }
}

/// Jacobi matrix of the lattice weight at (k, m), from exact moments.
pub fn jacobi_matrix(k: usize, m: usize, p: &ModelParams, work_prec: u32) -> Result<JacobiMatrix> {
    if k == 0 {
        return Err(Error::Size("zeros need k >= 1".into()));
    }
    let table = moments(p, m, 2 * k, WeightKind::Full)?;
    let mu: Vec<BigFloat> = table
        .moments()
        .iter()
        .map(|v| BigFloat::from_rational(v, work_prec))
        .collect();
    let (_, alpha, beta) = op_recurrence_map(&mu, k)?;
    for (i, b) in beta.iter().enumerate() {
        if !b.is_negative() && !b.is_zero() {
            continue;
        }
        return Err(Error::Precision {
            reason: format!(
                "recurrence coefficient beta_{} lost positivity at {work_prec} bits",
                i + 1
            ),
            suggest_bits: work_prec * 2,
        });
    }
    Ok(JacobiMatrix { alpha, beta })
}

/// Zeros of the degree-k orthogonal polynomial: real, simple, positive.
/// Computed at 128-bit resolution unless asked otherwise.
pub fn op_zeros(k: usize, m: usize, p: &ModelParams, target_bits: u32) -> Result<Vec<BigFloat>> {
    let work = (4 * target_bits).max(512).max(16 * k as u32);
    let jacobi = jacobi_matrix(k, m, p, work)?;
    let zeros = jacobi.eigenvalues(target_bits)?;
    // Positivity: no eigenvalue at or below zero.
    if jacobi.count_below(&BigFloat::zero()) != 0 || zeros[0].is_negative() || zeros[0].is_zero() {
        return Err(Error::Inconsistency(format!(
            "orthogonal-polynomial zeros must be strictly positive (k={k}, m={m})"
        )));
    }
    Ok(zeros)
}

/// Strict interlacing z_{k+1,i} < z_{k,i} < z_{k+1,i+1} for consecutive
/// degrees, checked numerically with a relative separation floor.
pub fn zeros_interlace(lower: &[BigFloat], upper: &[BigFloat]) -> bool {
    if upper.len() != lower.len() + 1 {
        return false;
    }
    for i in 0..lower.len() {
        if !(upper[i] < lower[i] && lower[i] < upper[i + 1]) {
            return false;
        }
    }
    true
}

/// Exact positivity certificate for the Jacobi spectrum: the LDL^T pivots at
/// x = 0, run in exact rational arithmetic, must all be positive.
pub fn spectrum_positive_exact(k: usize, m: usize, p: &ModelParams) -> Result<bool> {
    let table = moments(p, m, 2 * k, WeightKind::Full)?;
    let sys = super::system::op_system(&table, k)?;
    let mut pivot = sys.alpha[0].clone();
    if !pivot.is_positive() {
        return Ok(false);
    }
    for i in 1..k {
        pivot = &sys.alpha[i] - &sys.beta[i - 1] / &pivot;
        if !pivot.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{rat, Rational};

    fn close_to_rational(v: &BigFloat, r: &Rational, bits: i64) -> bool {
        let rf = BigFloat::from_rational(r, 256);
        let diff = v.sub(&rf).abs();
        diff.is_zero() || diff.msb_pos() <= rf.msb_pos() - bits
    }

    #[test]
    fn single_zero_is_mean() {
        // k = 1: the zero of x - mu_1/mu_0.
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        let table = moments(&p, 2, 2, WeightKind::Full).unwrap();
        let expect = table.mu(1) / table.mu(0);
        let zeros = op_zeros(1, 2, &p, 128).unwrap();
        assert_eq!(zeros.len(), 1);
        assert!(close_to_rational(&zeros[0], &expect, 100));
    }

    #[test]
    fn zeros_match_direct_polynomial_roots() {
        // Independent oracle: evaluate the exact monic p_k at the bisected
        // zeros; the sign must change across each enclosing interval, and
        // |p_k(zero)| must be tiny relative to |p_k| nearby.
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        let k = 5usize;
        let m = 2usize;
        let table = moments(&p, m, 2 * k, WeightKind::Full).unwrap();
        let sys = crate::orthopoly::system::op_system(&table, k).unwrap();
        let poly = &sys.monic[k];
        let zeros = op_zeros(k, m, &p, 128).unwrap();
        assert_eq!(zeros.len(), k);
        for z in &zeros {
            // Exact rational evaluation at the dyadic bisection midpoint.
            let z_rat = z.to_rational();
            let value = poly.eval(&z_rat);
            let scale = poly.eval(&(&z_rat + rat(1, 2))).abs() + rat(1, 1);
            let rel = value.abs() / scale;
            assert!(
                rel < crate::scalar::rational::pow_i(&rat(1, 2), 90),
                "polynomial not small at claimed zero: {rel}"
            );
        }
    }

    #[test]
    fn interlacing_and_positivity() {
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        let m = 2usize;
        let mut prev = op_zeros(1, m, &p, 128).unwrap();
        for k in 2..=8usize {
            let next = op_zeros(k, m, &p, 128).unwrap();
            assert!(zeros_interlace(&prev, &next), "interlacing failed at k={k}");
            prev = next;
        }
        assert!(spectrum_positive_exact(8, m, &p).unwrap());
    }
}
