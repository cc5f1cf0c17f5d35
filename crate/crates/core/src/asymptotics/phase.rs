//! Zeros-based diagnostic of the saturation phase transition.
//!
//! Below the critical ratio xi_c = T^2/G^2 - 1 the limiting zero measure is
//! saturated near the lower edge, so consecutive zeros pack at close to unit
//! lattice spacing; above it they spread out. The diagnostic reports the
//! fraction of consecutive gaps within (1 + delta) lattice spacings. It is
//! qualitative by design: the only asserted consequence is that the fraction
//! at a sub-critical ratio exceeds the fraction at a super-critical one.

use crate::error::Result;
use crate::lattice::params::ModelParams;
use crate::orthopoly::op_zeros;
use crate::scalar::bigfloat::BigFloat;
use crate::scalar::rational::Rational;

/// Summary of one zeros scan.
#[derive(Clone, Debug)]
pub struct PhaseDiagnostic {
    pub k: usize,
    pub m: usize,
    /// Requested ratio m/k.
    pub xi: Rational,
    /// Critical ratio T^2/G^2 - 1, exact.
    pub xi_c: Rational,
    /// Zeros rescaled by 1/k.
    pub scaled_zeros: Vec<BigFloat>,
    /// Consecutive raw gaps z_{i+1} - z_i.
    pub gaps: Vec<BigFloat>,
    /// Fraction of gaps <= (1 + delta) lattice spacings.
    pub saturation_fraction: f64,
}

/// xi_c = e^{2t - 2gamma} - 1 = T^2/G^2 - 1.
pub fn critical_ratio(p: &ModelParams) -> Rational {
    let one: Rational = num_traits::One::one();
    p.exp_t_pow(2) * p.exp_gamma_pow(-2) - one
}

/// Run the diagnostic at polynomial degree k and target ratio xi = m/k
/// (m is rounded to the nearest integer). `delta` is the gap tolerance.
pub fn phase_diagnostic(
    k: usize,
    xi: &Rational,
    p: &ModelParams,
    delta: &Rational,
    target_bits: u32,
) -> Result<PhaseDiagnostic> {
    let m = round_to_usize(&(xi * Rational::from_integer((k as i64).into())));
    let zeros = op_zeros(k, m, p, target_bits)?;
    let inv_k = BigFloat::from_rational(
        &Rational::new(1.into(), (k as i64).into()),
        target_bits.max(64),
    );
    let scaled_zeros: Vec<BigFloat> = zeros.iter().map(|z| z.mul(&inv_k)).collect();
    let gaps: Vec<BigFloat> = zeros.windows(2).map(|w| w[1].sub(&w[0])).collect();
    let threshold = BigFloat::from_rational(&(Rational::from_integer(1.into()) + delta), 128);
    let close = gaps
        .iter()
        .filter(|g| g.cmp_value(&threshold) != std::cmp::Ordering::Greater)
        .count();
    let saturation_fraction = if gaps.is_empty() { 0.0 } else { close as f64 / gaps.len() as f64 };
    Ok(PhaseDiagnostic {
        k,
        m,
        xi: xi.clone(),
        xi_c: critical_ratio(p),
        scaled_zeros,
        gaps,
        saturation_fraction,
    })
}

fn round_to_usize(v: &Rational) -> usize {
    let shifted = v + Rational::new(1.into(), 2.into());
    shifted.floor().to_integer().try_into().unwrap_or(0)
}
