//! Row-inhomogeneous determinant formula and the inductive limit lemma.
//!
//! Each of the n-m rows carries its own spectral parameter lambda_j; in exact
//! mode the parameters enter as rational exponentials L_j = e^{lambda_j}, so
//! every ingredient (row weights, sinh differences, phi derivatives at
//! z_j = L_j^2) stays rational. Removing a row corresponds to sending its
//! parameter to +infinity; the limit lemma's residual is evaluated in big
//! floats because e^{lambda} for a generic real lambda is irrational.

use num_traits::Signed;

use super::phi::phi_rational_function;
use crate::error::{Error, Result};
use crate::lattice::params::{ModelParams, Weights6};
use crate::scalar::bigfloat::BigFloat;
use crate::scalar::linalg::det_rational;
use crate::scalar::polynomial::Polynomial;
use crate::scalar::ratfunc::RationalFunction;
use crate::scalar::rational::{factorial, int, pow_i, Rational};

/// Spectral parameters L_j = e^{lambda_j}, listed for rows top to bottom
/// (matching lambda_{m+1}, ..., lambda_n).
#[derive(Clone, Debug)]
pub struct SpectralParams {
    pub exp_lambda: Vec<Rational>,
}

impl SpectralParams {
    pub fn new(exp_lambda: Vec<Rational>) -> Self {
        SpectralParams { exp_lambda }
    }

    fn validate(&self, p: &ModelParams) -> Result<()> {
        for (i, a) in self.exp_lambda.iter().enumerate() {
            if a <= &p.exp_gamma {
                return Err(Error::Domain(format!(
                    "spectral parameter {a} must exceed G = {} (lambda > gamma)",
                    p.exp_gamma
                )));
            }
            for b in &self.exp_lambda[i + 1..] {
                if a == b {
                    return Err(Error::Singular(format!(
                        "coincident spectral parameters ({a}); perturb them apart"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// sinh of a difference of log-parameters: (L_j/L_k - L_k/L_j) / 2.
fn sinh_diff(lj: &Rational, lk: &Rational) -> Rational {
    (lj / lk - lk / lj) * crate::scalar::rational::rat(1, 2)
}

/// a(lambda) = sinh(lambda - gamma), b(lambda) = sinh(lambda + gamma).
fn row_ab(l: &Rational, p: &ModelParams) -> (Rational, Rational) {
    let half = crate::scalar::rational::rat(1, 2);
    let a = (l / &p.exp_gamma - &p.exp_gamma / l) * &half;
    let b = (l * &p.exp_gamma - (l * &p.exp_gamma).recip()) * &half;
    (a, b)
}

/// The six weights of a row with parameter L: (a e^-gamma, a e^gamma,
/// b e^-gamma, b e^gamma, c, c) with a, b evaluated at lambda.
pub fn row_weights(l: &Rational, p: &ModelParams) -> Weights6<Rational> {
    let (a, b) = row_ab(l, p);
    Weights6::new([
        &a / &p.exp_gamma,
        &a * &p.exp_gamma,
        &b / &p.exp_gamma,
        &b * &p.exp_gamma,
        p.c.clone(),
        p.c.clone(),
    ])
}

/// Per-row weight sets ordered bottom row first, as the transfer code wants.
pub fn row_weight_stack(lambda: &SpectralParams, p: &ModelParams) -> Vec<Weights6<Rational>> {
    lambda
        .exp_lambda
        .iter()
        .rev() // top-to-bottom listing -> bottom-to-top stack
        .map(|l| row_weights(l, p))
        .collect()
}

/// Symbolic derivative ladder of phi up to order `k_max`, reduced after each
/// step so degrees stay linear in the order.
fn phi_derivative_ladder(p: &ModelParams, k_max: usize) -> Vec<RationalFunction> {
    let g2 = &p.exp_gamma * &p.exp_gamma;
    let factors = [
        Polynomial::linear(-g2.clone(), num_traits::One::one()),
        Polynomial::linear(-g2.recip(), num_traits::One::one()),
    ];
    let mut ladder = Vec::with_capacity(k_max + 1);
    ladder.push(phi_rational_function(p));
    for _ in 0..k_max {
        let mut next = ladder.last().unwrap().derivative_t();
        for f in &factors {
            next = next.cancel_factor(f);
        }
        ladder.push(next);
    }
    ladder
}

/// Exact inhomogeneous partition function on the (n-m) x n lattice.
pub fn z_det_inhomogeneous(
    lambda: &SpectralParams,
    n: usize,
    m: usize,
    p: &ModelParams,
) -> Result<Rational> {
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    if lambda.exp_lambda.len() != n - m {
        return Err(Error::Size(format!(
            "expected {} spectral parameters, got {}",
            n - m,
            lambda.exp_lambda.len()
        )));
    }
    lambda.validate(p)?;

    let ladder = phi_derivative_ladder(p, n - 1);
    let ls = &lambda.exp_lambda;

    // Determinant block: m Vandermonde rows, then phi^(k-1)(lambda_j).
    let mut rows = Vec::with_capacity(n);
    for j in 1..=m {
        let base = int(-2 * j as i64);
        rows.push((0..n).map(|k| pow_i(&base, k as i64)).collect::<Vec<_>>());
    }
    for l in ls {
        let z = l * l;
        let row: Result<Vec<Rational>> = (0..n).map(|k| ladder[k].eval(&z)).collect();
        rows.push(row?);
    }
    let det = det_rational(&rows);

    // Prefactor.
    let sign_exp = (n as i64) * (n as i64 - 1) / 2;
    let mut numer = if sign_exp.rem_euclid(2) == 0 { int(1) } else { int(-1) };
    for l in ls {
        let (a, b) = row_ab(l, p);
        numer *= pow_i(l, m as i64) * pow_i(&(a * b), n as i64);
    }
    let mut denom =
        Rational::from_integer(num_bigint::BigInt::from(1) << (m * m.saturating_sub(1) / 2));
    for j in 0..n {
        denom *= Rational::from_integer(factorial(j));
    }
    for (i, lj) in ls.iter().enumerate() {
        for lk in &ls[i + 1..] {
            denom *= sinh_diff(lj, lk);
        }
    }
    let value = numer * det / denom;
    if !value.is_positive() {
        return Err(Error::Inconsistency(format!(
            "inhomogeneous partition function must be positive, got {value}"
        )));
    }
    Ok(value)
}

/// f_r(gamma) = (G^{2(r+1)} - G^{-2(r+1)}) / (G^2 - G^{-2}).
pub fn f_factor(r: usize, p: &ModelParams) -> Rational {
    let e = 2 * (r as i64 + 1);
    let num = p.exp_gamma_pow(e) - p.exp_gamma_pow(-e);
    let den = p.exp_gamma_pow(2) - p.exp_gamma_pow(-2);
    num / den
}

// ---- big-float path for the limit lemma ----

fn eval_rf_f(rf: &RationalFunction, z: &BigFloat, prec: u32) -> BigFloat {
    let conv = |r: &Rational| BigFloat::from_rational(r, prec);
    let num = rf.num().eval_map(z, conv);
    let den = rf.den().eval_map(z, conv);
    num.div(&den)
}

fn det_f(mut rows: Vec<Vec<BigFloat>>) -> BigFloat {
    let n = rows.len();
    let mut det = BigFloat::one();
    for k in 0..n {
        // partial pivot by magnitude
        let pivot = (k..n)
            .max_by(|&i, &j| rows[i][k].abs().cmp_value(&rows[j][k].abs()))
            .unwrap();
        if rows[pivot][k].is_zero() {
            return BigFloat::zero();
        }
        if pivot != k {
            rows.swap(pivot, k);
            det = det.neg();
        }
        det = det.mul(&rows[k][k]);
        let (pivot_rows, rest) = rows.split_at_mut(k + 1);
        let pivot_row = &pivot_rows[k];
        for row in rest {
            let factor = row[k].div(&pivot_row[k]);
            for (target, source) in row.iter_mut().zip(pivot_row.iter()).skip(k) {
                let sub = factor.mul(source);
                *target = target.sub(&sub);
            }
        }
    }
    det
}

/// Inhomogeneous partition value with arbitrary positive spectral values
/// e^{lambda_j} supplied as floats (top-to-bottom order).
pub fn z_det_inhomogeneous_f(
    exp_lambda: &[BigFloat],
    n: usize,
    m: usize,
    p: &ModelParams,
    prec: u32,
) -> Result<BigFloat> {
    if m >= n || exp_lambda.len() != n - m {
        return Err(Error::Size("spectral parameter count must be n - m".into()));
    }
    let conv = |r: &Rational| BigFloat::from_rational(r, prec);
    let ladder = phi_derivative_ladder(p, n - 1);
    let half = conv(&crate::scalar::rational::rat(1, 2));
    let g = conv(&p.exp_gamma);

    let mut rows = Vec::with_capacity(n);
    for j in 1..=m {
        let base = BigFloat::from_i64(-2 * j as i64);
        rows.push((0..n).map(|k| base.powi(k as i64).with_prec(prec)).collect::<Vec<_>>());
    }
    for l in exp_lambda {
        let z = l.mul(l);
        rows.push((0..n).map(|k| eval_rf_f(&ladder[k], &z, prec)).collect());
    }
    let det = det_f(rows);

    let sign_exp = (n as i64) * (n as i64 - 1) / 2;
    let mut numer = if sign_exp.rem_euclid(2) == 0 {
        BigFloat::one().with_prec(prec)
    } else {
        BigFloat::from_i64(-1).with_prec(prec)
    };
    for l in exp_lambda {
        let a = l.div(&g).sub(&g.div(l)).mul(&half);
        let lg = l.mul(&g);
        let b = lg.sub(&BigFloat::one().with_prec(prec).div(&lg)).mul(&half);
        numer = numer.mul(&l.powi(m as i64)).mul(&a.mul(&b).powi(n as i64));
    }
    let mut denom = BigFloat::one()
        .mul_pow2((m * m.saturating_sub(1) / 2) as i64)
        .with_prec(prec);
    for j in 0..n {
        denom = denom.mul(&BigFloat::from_bigint(&factorial(j), prec));
    }
    for (i, lj) in exp_lambda.iter().enumerate() {
        for lk in &exp_lambda[i + 1..] {
            let s = lj.div(lk).sub(&lk.div(lj)).mul(&half);
            denom = denom.mul(&s);
        }
    }
    Ok(numer.mul(&det).div(&denom))
}

/// Residual of the inductive limit identity at a finite lambda:
/// |(2^{n-1} / (c f_m)) e^{-(n-1) lambda} Z_{n-m,n} / Z_{n-m-1,n}  -  1|.
/// The fixed lower spectral parameters are rational exponentials; the varied
/// one is the real `lambda_value`.
pub fn limit_lemma_check(
    n: usize,
    m: usize,
    p: &ModelParams,
    lambda_value: &BigFloat,
    fixed: &SpectralParams,
    prec: u32,
) -> Result<BigFloat> {
    if m + 1 >= n {
        return Err(Error::Size("limit lemma needs m + 1 < n".into()));
    }
    if fixed.exp_lambda.len() != n - m - 1 {
        return Err(Error::Size(format!(
            "expected {} fixed spectral parameters, got {}",
            n - m - 1,
            fixed.exp_lambda.len()
        )));
    }
    fixed.validate(p)?;
    // The varied determinant row approaches a multiple of a Vandermonde row
    // at rate e^{-2 lambda}, and the final ratio sits e^{-2 lambda} from 1:
    // elimination plus the subtraction cancel about 4 lambda log2(e) bits.
    let lam_f = lambda_value.to_f64();
    let required = (4.0 * lam_f * std::f64::consts::LOG2_E).ceil() as u32 + 96;
    if prec < required {
        return Err(Error::Precision {
            reason: format!(
                "limit-lemma cancellation at lambda = {lam_f} needs about {required} bits"
            ),
            suggest_bits: required,
        });
    }
    let lam = lambda_value.with_prec(prec);
    let exp_lam = lam.exp();

    let conv = |r: &Rational| BigFloat::from_rational(r, prec);
    let mut upper: Vec<BigFloat> = vec![exp_lam.clone()];
    upper.extend(fixed.exp_lambda.iter().map(conv));
    let z_big = z_det_inhomogeneous_f(&upper, n, m, p, prec)?;

    let z_small_exact = z_det_inhomogeneous(fixed, n, m + 1, p)?;
    let z_small = conv(&z_small_exact);

    let scale = BigFloat::from_i64(1 << (n - 1))
        .div(&conv(&(&p.c * f_factor(m, p))))
        .mul(&exp_lam.powi(-((n as i64) - 1)));
    let residual = scale.mul(&z_big).div(&z_small).sub(&BigFloat::one()).abs();

    // Catastrophic cancellation guard: the residual must sit far above the
    // rounding floor of the working precision.
    if !residual.is_zero() {
        let floor_exceeded = residual
            .abs()
            .cmp_value(&tiny(prec as i64 / 2))
            == std::cmp::Ordering::Less;
        if floor_exceeded {
            return Err(Error::Precision {
                reason: format!(
                    "limit-lemma residual {} is below the 2^-{} noise floor",
                    residual.to_decimal_string(6),
                    prec / 2
                ),
                suggest_bits: prec * 2,
            });
        }
    }
    Ok(residual)
}

fn tiny(neg_log2: i64) -> BigFloat {
    BigFloat::one().mul_pow2(-neg_log2)
}
