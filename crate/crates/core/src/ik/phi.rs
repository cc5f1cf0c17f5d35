//! The generating function phi and its exact t-derivatives.
//!
//! In the variable z = e^{2t} (with G = e^gamma fixed),
//!
//! ```text
//! sinh(t-gamma) sinh(t+gamma) = (z + 1/z - G^2 - G^-2)/4
//! phi = c / (ab) = 4 c z / ((z - G^2)(z - G^-2))
//! ```
//!
//! so phi is a rational function of z with rational coefficients, and
//! d/dt = 2z d/dz keeps it one. Independently, phi has the discrete Laplace
//! representation phi^(k)(t) = 2 (-2)^k (L_k(q) - L_k(s)) in terms of
//! negative-order polylogs at the two geometric ratios. The bundle computes
//! both routes and refuses to hand out values unless they agree exactly.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::params::ModelParams;
use crate::scalar::polylog::negorder_polylog;
use crate::scalar::polynomial::Polynomial;
use crate::scalar::ratfunc::RationalFunction;
use crate::scalar::rational::{int, pow_i, Rational};

/// phi, its rational-function form, and the exact derivative ladder.
#[derive(Clone, Debug)]
pub struct PhiBundle {
    /// varphi = ab, the prefactor base of the determinant formula.
    pub varphi: Rational,
    /// phi as a rational function of z = e^{2t}.
    pub phi_rf: RationalFunction,
    /// `derivs[k]` = phi^(k)(t), k = 0..=k_max, cross-checked two ways.
    pub derivs: Vec<Rational>,
}

/// 4 c z / ((z - G^2)(z - G^-2)).
pub fn phi_rational_function(p: &ModelParams) -> RationalFunction {
    let g2 = &p.exp_gamma * &p.exp_gamma;
    let num = Polynomial::monomial(int(4) * &p.c, 1);
    let den = Polynomial::linear(-g2.clone(), Rational::one())
        .mul(&Polynomial::linear(-g2.recip(), Rational::one()));
    RationalFunction::new(num, den)
}

/// The two linear factors of phi's denominator, for cheap cancellation after
/// each symbolic derivative.
fn denominator_factors(p: &ModelParams) -> [Polynomial; 2] {
    let g2 = &p.exp_gamma * &p.exp_gamma;
    [
        Polynomial::linear(-g2.clone(), Rational::one()),
        Polynomial::linear(-g2.recip(), Rational::one()),
    ]
}

/// Series route: phi^(k)(t) = 2 (-2)^k [L_k(q) - L_k(s)].
pub fn phi_derivative_series(p: &ModelParams, k: usize) -> Result<Rational> {
    let lk_q = negorder_polylog(k, &p.q)?;
    let lk_s = negorder_polylog(k, &p.s)?;
    Ok(int(2) * pow_i(&int(-2), k as i64) * (lk_q - lk_s))
}

/// Build the derivative ladder to order `k_max`, requiring exact agreement of
/// the symbolic and series routes at every order.
pub fn phi_derivatives(p: &ModelParams, k_max: usize) -> Result<PhiBundle> {
    let phi_rf = phi_rational_function(p);
    let factors = denominator_factors(p);
    let z = &p.exp_t * &p.exp_t;

    let mut derivs = Vec::with_capacity(k_max + 1);
    let mut current = phi_rf.clone();
    for k in 0..=k_max {
        let symbolic = current.eval(&z)?;
        let series = phi_derivative_series(p, k)?;
        if symbolic != series {
            return Err(Error::Inconsistency(format!(
                "phi^({k}) disagrees between symbolic ({symbolic}) and series ({series}) routes"
            )));
        }
        derivs.push(series);
        if k < k_max {
            let mut next = current.derivative_t();
            for f in &factors {
                next = next.cancel_factor(f);
            }
            current = next;
        }
    }

    Ok(PhiBundle { varphi: p.varphi(), phi_rf, derivs })
}
