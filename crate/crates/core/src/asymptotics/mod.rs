//! Closed-form asymptotic quantities and their desk-scale verification:
//! the Meixner partition function, the constant C(m), the relative error
//! xi_nm with its decay envelope, the free energy per site, and the
//! ground-state ratio decomposition.

pub mod phase;
pub mod toda;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::ground::ground_state_weight;
use crate::lattice::params::ModelParams;
use crate::orthopoly::{cached_moments, meixner_norm, op_system, WeightKind};
use crate::scalar::bigfloat::BigFloat;
use crate::scalar::rational::{factorial, int, pow_i, Rational};

pub use phase::{phase_diagnostic, PhaseDiagnostic};

pub use toda::{toda_check, TodaReport};

/// Desk-scale verification record for one (n, m).
#[derive(Clone, Debug)]
pub struct AsymptoticsReport {
    pub n: usize,
    pub m: usize,
    /// Exact partition function (norm-product route).
    pub z_exact: Rational,
    /// Exact Meixner partition function.
    pub z_meixner: Rational,
    /// C(m) = 1 - G^{-4(m+1)}, exact.
    pub c_m: Rational,
    /// xi = Z / (C(m) Z^M) - 1, exact.
    pub xi_exact: Rational,
    /// |xi| as a float, for reports.
    pub xi_abs: BigFloat,
    /// Decay envelope rho^m e^{-n^{1-eps}}, rho = G^{-2}.
    pub envelope: BigFloat,
    /// |xi| <= multiple * envelope.
    pub pass: bool,
}

/// Z^M by the closed form b^{n(n-m)} G^{m(n-m)} (G/T)^{n-m}; the norm-product
/// form over Meixner norms must give the same rational, and does, or this
/// errors.
pub fn z_meixner(n: usize, m: usize, p: &ModelParams) -> Result<Rational> {
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    let ni = n as i64;
    let mi = m as i64;
    let rows = ni - mi;
    let closed = pow_i(&p.b, ni * rows)
        * p.exp_gamma_pow(mi * rows)
        * pow_i(&(&p.exp_gamma / &p.exp_t), rows);

    let mut product = pow_i(&(int(2) * p.varphi()), ni * rows) * p.exp_t_pow(mi * rows);
    for j in 0..(n - m) {
        product *= meixner_norm(j, m, &p.q)?
            / Rational::from_integer(factorial(j) * factorial(j + m));
    }
    if closed != product {
        return Err(Error::Inconsistency(format!(
            "Meixner partition function: closed form {closed} != norm product {product}"
        )));
    }
    Ok(closed)
}

/// C(m) = 1 - G^{-4(m+1)}, exact.
pub fn c_of_m(m: usize, p: &ModelParams) -> Rational {
    Rational::one() - p.exp_gamma_pow(-4 * (m as i64 + 1))
}

/// Partial product prod_{k<=K} h_k/hM_k, exact; approaches C(m) as K grows.
pub fn c_partial_product(k_max: usize, m: usize, p: &ModelParams) -> Result<Rational> {
    let table = cached_moments(p, m, 2 * k_max, WeightKind::Full)?;
    let sys = op_system(&table, k_max)?;
    let mut acc = Rational::one();
    for k in 0..=k_max {
        acc *= &sys.norms[k] / meixner_norm(k, m, &p.q)?;
    }
    Ok(acc)
}

/// The decay envelope rho^m e^{-n^{1-eps}} with rho = G^{-2}.
pub fn xi_envelope(n: usize, m: usize, p: &ModelParams, eps: f64, prec: u32) -> Result<BigFloat> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::Domain(format!("envelope exponent must lie in [0,1), got {eps}")));
    }
    let rho = BigFloat::from_rational(&p.exp_gamma_pow(-2), prec);
    let n_f = BigFloat::from_i64(n as i64).with_prec(prec);
    let eps_f = BigFloat::from_rational(&float_to_rational(eps), prec);
    let power = BigFloat::one()
        .with_prec(prec)
        .sub(&eps_f)
        .mul(&n_f.ln()?)
        .exp(); // n^{1-eps}
    Ok(rho.powi(m as i64).mul(&power.neg().exp()))
}

fn float_to_rational(v: f64) -> Rational {
    crate::scalar::rational::rational_from_f64(v).expect("finite knob value")
}

/// Evaluate xi_nm = Z/(C(m) Z^M) - 1 exactly and compare against the decay
/// envelope at tolerance `multiple`.
pub fn theorem_check(
    n: usize,
    m: usize,
    p: &ModelParams,
    eps: f64,
    multiple: f64,
    prec: u32,
) -> Result<AsymptoticsReport> {
    let z_exact = crate::orthopoly::z_op(n, m, p)?;
    let z_m = z_meixner(n, m, p)?;
    let c_m = c_of_m(m, p);
    let xi_exact = &z_exact / (&c_m * &z_m) - Rational::one();
    if (Rational::one() + &xi_exact).is_negative() {
        return Err(Error::Inconsistency(
            "1 + xi must stay positive (both sides of the decomposition are positive)".into(),
        ));
    }
    let xi_abs = BigFloat::from_rational(&xi_exact, prec).abs();
    let envelope = xi_envelope(n, m, p, eps, prec)?;
    let threshold = envelope.mul(&BigFloat::from_rational(&float_to_rational(multiple), prec));
    let pass = xi_abs.cmp_value(&threshold) != std::cmp::Ordering::Greater;
    Ok(AsymptoticsReport { n, m, z_exact, z_meixner: z_m, c_m, xi_exact, xi_abs, envelope, pass })
}

/// Float-backend verification record for lattice sizes past the exact
/// pipeline's comfort zone.
#[derive(Clone, Debug)]
pub struct AsymptoticsReportFloat {
    pub n: usize,
    pub m: usize,
    pub z: BigFloat,
    pub z_meixner: BigFloat,
    pub xi: BigFloat,
    pub envelope: BigFloat,
    pub pass: bool,
}

/// theorem_check in the float backend: norms from the recurrence over
/// big-float moments, partition values as floats. Rounding is the only
/// difference from the exact path; the two agree to working precision.
pub fn theorem_check_float(
    n: usize,
    m: usize,
    p: &ModelParams,
    eps: f64,
    multiple: f64,
    prec: u32,
) -> Result<AsymptoticsReportFloat> {
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    let rows = n - m;
    let work = prec.max(256) + 16 * rows as u32;
    let conv = |r: &Rational| BigFloat::from_rational(r, work);
    let q = conv(&p.q);
    let s = conv(&p.s);
    let rising = crate::scalar::polynomial::Polynomial::rising_product(m);
    let mut mu = Vec::with_capacity(2 * rows - 1);
    for j in 0..=(2 * (rows - 1)) {
        let poly = crate::scalar::polynomial::Polynomial::monomial(num_traits::One::one(), j)
            .mul(&rising);
        let q_part = q
            .powi(m as i64 + 1)
            .mul(&crate::scalar::polylog::poly_geometric_sum_map(&poly, &q, 0, &conv));
        let s_part = s
            .powi(m as i64 + 1)
            .mul(&crate::scalar::polylog::poly_geometric_sum_map(&poly, &s, 0, &conv));
        mu.push(q_part.sub(&s_part));
    }
    let (norms, _, _) = crate::orthopoly::op_recurrence_map(&mu, rows - 1)?;

    let ni = n as i64;
    let mi = m as i64;
    let mut z = conv(&(int(2) * p.varphi()))
        .powi(ni * (ni - mi))
        .mul(&conv(&p.exp_t).powi(mi * (ni - mi)));
    for (j, h) in norms.iter().enumerate() {
        if h.is_negative() || h.is_zero() {
            return Err(Error::Precision {
                reason: format!("norm h_{j} lost positivity in the float backend"),
                suggest_bits: work * 2,
            });
        }
        z = z.mul(&h.div(&BigFloat::from_bigint(&(factorial(j) * factorial(j + m)), work)));
    }
    let z_meixner = conv(&p.b)
        .powi(ni * (ni - mi))
        .mul(&conv(&p.exp_gamma).powi(mi * (ni - mi)))
        .mul(&conv(&(&p.exp_gamma / &p.exp_t)).powi(ni - mi));
    let c_m = conv(&c_of_m(m, p));
    let xi = z.div(&c_m.mul(&z_meixner)).sub(&BigFloat::one()).with_prec(prec.max(64));
    let envelope = xi_envelope(n, m, p, eps, prec.max(64))?;
    let threshold = envelope.mul(&BigFloat::from_rational(&float_to_rational(multiple), prec.max(64)));
    let pass = xi.abs().cmp_value(&threshold) != std::cmp::Ordering::Greater;
    Ok(AsymptoticsReportFloat {
        n,
        m,
        z: z.with_prec(prec.max(64)),
        z_meixner: z_meixner.with_prec(prec.max(64)),
        xi,
        envelope,
        pass,
    })
}

/// Free energy per site in the aspect-ratio limit: ln b + (1 - r) gamma.
pub fn free_energy(r: &Rational, p: &ModelParams, prec: u32) -> Result<BigFloat> {
    let zero: Rational = num_traits::Zero::zero();
    if r <= &zero || r > &Rational::one() {
        return Err(Error::Domain(format!("aspect ratio must lie in (0, 1], got {r}")));
    }
    let ln_b = BigFloat::from_rational(&p.b, prec).ln()?;
    let gamma = BigFloat::from_rational(&p.exp_gamma, prec).ln()?;
    let one_minus_r = BigFloat::from_rational(&(Rational::one() - r), prec);
    Ok(ln_b.add(&one_minus_r.mul(&gamma)))
}

/// Finite-size free energy (1/(n(n-m))) ln Z, for convergence scans.
pub fn finite_size_free_energy(n: usize, m: usize, p: &ModelParams, prec: u32) -> Result<BigFloat> {
    let z = crate::orthopoly::z_op(n, m, p)?;
    let ln_z = ln_rational(&z, prec)?;
    Ok(ln_z.div(&BigFloat::from_i64((n * (n - m)) as i64)))
}

/// ln of a positive rational at the stated precision.
pub fn ln_rational(v: &Rational, prec: u32) -> Result<BigFloat> {
    if !v.is_positive() {
        return Err(Error::Domain("ln of a non-positive rational".into()));
    }
    // Split into numerator and denominator so huge partition values stay
    // within the float's exponent range at full accuracy.
    let num = BigFloat::from_bigint(v.numer(), prec + 8);
    let den = BigFloat::from_bigint(v.denom(), prec + 8);
    Ok(num.ln()?.sub(&den.ln()?).with_prec(prec))
}

/// Ground-state ratio decomposition. Returns the exact prefactor
/// ((G^2 - T^-2)/(G^2 - G^-2))^{n-m} and the exact ratio
/// (Z / w(gs)) / prefactor, which equals C(m) (1 + xi_nm) identically
/// (and Z/Z^M, by the same algebra).
pub fn ground_state_ratio(n: usize, m: usize, p: &ModelParams) -> Result<(Rational, Rational)> {
    let z = crate::orthopoly::z_op(n, m, p)?;
    let gs = ground_state_weight(n, m, p);
    let prefactor = pow_i(
        &((p.exp_gamma_pow(2) - p.exp_t_pow(-2)) / (p.exp_gamma_pow(2) - p.exp_gamma_pow(-2))),
        (n - m) as i64,
    );
    let ratio = z / gs / &prefactor;
    Ok((prefactor, ratio))
}
