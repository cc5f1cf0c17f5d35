//! The mixed Vandermonde/Hankel determinant and the homogeneous partition
//! formula built on it.
//!
//! The n x n matrix has m Vandermonde rows ((-2j)^(k-1), j = 1..m) stacked on
//! n-m shifted derivative rows (phi^(i+k-2)(t)); the partition function is a
//! signed, exactly-rational prefactor times that determinant. The row order
//! and the sign factor are taken exactly as the formula states them; the
//! positivity assertion on the final value is the arbiter of any determinant
//! orientation mistake, so no silent sign normalization happens here.

use num_traits::Signed;

use super::phi::{phi_derivatives, PhiBundle};
use crate::error::{Error, Result};
use crate::lattice::params::ModelParams;
use crate::scalar::linalg::det_rational;
use crate::scalar::rational::{factorial, int, pow_i, Rational};

/// tau determinant from a prepared derivative bundle (needs order 2n-m-2).
pub fn tau_from_bundle(n: usize, m: usize, bundle: &PhiBundle) -> Result<Rational> {
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    let need = 2 * n - m - 2;
    if bundle.derivs.len() < need + 1 {
        return Err(Error::Size(format!(
            "bundle holds derivatives to order {}, tau needs {need}",
            bundle.derivs.len() - 1
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for j in 1..=m {
        let base = int(-2 * j as i64);
        rows.push((0..n).map(|k| pow_i(&base, k as i64)).collect::<Vec<_>>());
    }
    for i in 0..n - m {
        rows.push((0..n).map(|k| bundle.derivs[i + k].clone()).collect());
    }
    Ok(det_rational(&rows))
}

/// tau_{n-m,n} at the model parameters.
pub fn tau(n: usize, m: usize, p: &ModelParams) -> Result<Rational> {
    let bundle = phi_derivatives(p, 2 * n - m - 2)?;
    tau_from_bundle(n, m, &bundle)
}

/// Exact partition function by the determinant route.
pub fn z_det(n: usize, m: usize, p: &ModelParams) -> Result<Rational> {
    let bundle = phi_derivatives(p, 2 * n - m - 2)?;
    z_det_from_bundle(n, m, p, &bundle)
}

pub fn z_det_from_bundle(
    n: usize,
    m: usize,
    p: &ModelParams,
    bundle: &PhiBundle,
) -> Result<Rational> {
    let tau = tau_from_bundle(n, m, bundle)?;
    let ni = n as i64;
    let mi = m as i64;
    let sign_exp = mi * (mi + 1) / 2 - ni * mi;
    let sign = if sign_exp.rem_euclid(2) == 0 { int(1) } else { int(-1) };
    let mut denom =
        Rational::from_integer(num_bigint::BigInt::from(1) << (m * m.saturating_sub(1) / 2));
    for j in 0..n - m {
        denom *= Rational::from_integer(factorial(j));
    }
    for j in 0..n {
        denom *= Rational::from_integer(factorial(j));
    }
    let value = sign
        * pow_i(&bundle.varphi, ni * (ni - mi))
        * p.exp_t_pow(mi * (ni - mi))
        * tau
        / denom;
    if !value.is_positive() {
        return Err(Error::Inconsistency(format!(
            "determinant-route partition function must be positive, got {value} at n={n}, m={m}"
        )));
    }
    Ok(value)
}
