//! Reduction of a general six-weight model to the symmetric form
//! (a e^-eta, a e^eta, b e^-eta, b e^eta, c, c), with the exact prefactor
//! relating the two partition functions.
//!
//! The reduction splits each weight pair into a geometric mean and an
//! exponential tilt; conservation laws turn the tilts into a global factor.
//! In exact mode the pair ratios w2/w1, w4/w3, w6/w5 must be squares of
//! rationals; the remaining fourth root then lives in the quadratic extension
//! Q(sqrt(rho_a rho_b)), which keeps the round-trip identity bit-exact. For
//! non-square ratios use [`reduce_parameters_float`].

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::params::Weights6;
use crate::scalar::bigfloat::BigFloat;
use crate::scalar::quadext::{exact_sqrt, QuadExt};
use crate::scalar::rational::{pow_i, Rational};

/// Result of the exact reduction: weights and prefactor live in Q(sqrt(d)).
#[derive(Clone, Debug)]
pub struct ReducedWeights {
    /// (a e^-eta, a e^eta, b e^-eta, b e^eta, c, c) in the extension field.
    pub weights: Weights6<QuadExt>,
    /// Z(original) = prefactor * Z(reduced), exactly.
    pub prefactor: QuadExt,
    /// The radicand d = rho_a * rho_b (e^{2 eta}); zero when everything folded
    /// back into the rationals.
    pub radicand: Rational,
}

fn square_ratio_root(hi: &Rational, lo: &Rational, what: &str) -> Result<Rational> {
    exact_sqrt(&(hi / lo)).ok_or_else(|| {
        Error::Domain(format!(
            "{what} ratio {}/{} is not a rational square; exact reduction unavailable \
             (use the float fallback)",
            hi, lo
        ))
    })
}

/// Exact reduction. `n`, `m` fix the lattice the prefactor refers to.
pub fn reduce_parameters(
    w: &Weights6<Rational>,
    n: usize,
    m: usize,
) -> Result<ReducedWeights> {
    if !w.all_positive() {
        return Err(Error::Domain("all six weights must be positive".into()));
    }
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    let [w1, w2, w3, w4, w5, w6] = w.as_array().clone();
    let rho_a = square_ratio_root(&w2, &w1, "w2/w1")?; // e^alpha
    let rho_b = square_ratio_root(&w4, &w3, "w4/w3")?; // e^beta
    let rho_c = square_ratio_root(&w6, &w5, "w6/w5")?; // e^xi
    let a = &w1 * &rho_a; // sqrt(w1 w2)
    let b = &w3 * &rho_b;
    let c = &w5 * &rho_c;

    // e^eta = sqrt(rho_a rho_b); may be irrational, hence the extension field.
    let d = &rho_a * &rho_b;
    let exp_eta = QuadExt::root(d.clone());
    let exp_eta_inv = exp_eta.recip();
    let lift = |v: &Rational| QuadExt::from_rational(v.clone());
    let weights = Weights6::new([
        lift(&a).mul(&exp_eta_inv),
        lift(&a).mul(&exp_eta),
        lift(&b).mul(&exp_eta_inv),
        lift(&b).mul(&exp_eta),
        lift(&c),
        lift(&c),
    ]);

    // prefactor = (w1 w4 / (w2 w3))^(m(n-m)/4) * (w5/w6)^((n-m)/2)
    //           = (rho_b/rho_a)^(m(n-m)/2) * rho_c^-(n-m).
    let e1 = (m * (n - m)) as i64;
    let ratio = &rho_b / &rho_a;
    let tilt = if e1 % 2 == 0 {
        QuadExt::from_rational(pow_i(&ratio, e1 / 2))
    } else {
        // sqrt(rho_b/rho_a) = sqrt(rho_a rho_b) / rho_a
        let root_ratio = QuadExt::new(Rational::zero(), rho_a.recip(), d.clone());
        QuadExt::from_rational(pow_i(&ratio, (e1 - 1) / 2)).mul(&root_ratio)
    };
    let prefactor = tilt.mul(&QuadExt::from_rational(pow_i(&rho_c, -((n - m) as i64))));

    Ok(ReducedWeights { weights, prefactor, radicand: d })
}

/// Float fallback for non-square ratios, at the stated precision.
pub fn reduce_parameters_float(
    w: &Weights6<Rational>,
    n: usize,
    m: usize,
    prec: u32,
) -> Result<(Weights6<BigFloat>, BigFloat)> {
    if !w.all_positive() {
        return Err(Error::Domain("all six weights must be positive".into()));
    }
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    let f = |v: &Rational| BigFloat::from_rational(v, prec);
    let [w1, w2, w3, w4, w5, w6] = w.as_array().clone();
    let a = f(&(&w1 * &w2)).sqrt()?;
    let b = f(&(&w3 * &w4)).sqrt()?;
    let c = f(&(&w5 * &w6)).sqrt()?;
    let exp_eta = f(&(&w2 * &w4 / (&w1 * &w3))).sqrt()?.sqrt()?;
    let weights = Weights6::new([
        a.div(&exp_eta),
        a.mul(&exp_eta),
        b.div(&exp_eta),
        b.mul(&exp_eta),
        c.clone(),
        c,
    ]);
    let quarter_pow = f(&(&w1 * &w4 / (&w2 * &w3))).sqrt()?.sqrt()?;
    let half_pow = f(&(&w5 / &w6)).sqrt()?;
    let prefactor = quarter_pow
        .powi((m * (n - m)) as i64)
        .mul(&half_pow.powi((n - m) as i64));
    Ok((weights, prefactor))
}

/// Exact round-trip check: Z(original) == prefactor * Z(reduced) in Q(sqrt d).
pub fn verify_reduction(w: &Weights6<Rational>, n: usize, m: usize) -> Result<bool> {
    let reduced = reduce_parameters(w, n, m)?;
    let z_original = crate::lattice::transfer::partition_transfer(n, m, w)?;
    let z_reduced =
        crate::lattice::transfer::partition_transfer(n, m, &reduced.weights)?;
    let rhs = reduced.prefactor.mul(&z_reduced);
    Ok(rhs == QuadExt::from_rational(z_original))
}
