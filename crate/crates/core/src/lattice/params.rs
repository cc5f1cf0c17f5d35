//! Model parameterization by rational exponentials.
//!
//! With T = e^t and G = e^gamma rational and T > G > 1, every derived weight
//! is rational:
//!
//! ```text
//! a = sinh(t-gamma) = (T/G - G/T)/2      a_pm = a * G^(+-1)
//! b = sinh(t+gamma) = (TG - 1/(TG))/2    b_pm = b * G^(+-1)
//! c = sinh(2 gamma) = (G^2 - G^-2)/2
//! q = e^(-2(t-gamma)) = G^2/T^2          s = e^(-2(t+gamma)) = 1/(T^2 G^2)
//! ```
//!
//! T > G > 1 puts the model in the ferroelectric regime where
//! b_- b_+ > a_- a_+ + c^2 (equivalently b^2 > a^2 + c^2) always holds;
//! the constructor asserts it anyway.

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::rational::{pow_i, Rational};
use crate::scalar::Scalar;

/// The two-parameter ferroelectric model, with all derived weights cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelParams {
    /// T = e^t.
    pub exp_t: Rational,
    /// G = e^gamma.
    pub exp_gamma: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub a_minus: Rational,
    pub a_plus: Rational,
    pub b_minus: Rational,
    pub b_plus: Rational,
    /// q = e^(-2(t-gamma)), the Meixner modulus.
    pub q: Rational,
    /// s = e^(-2(t+gamma)), the subdominant geometric ratio.
    pub s: Rational,
}

impl ModelParams {
    pub fn new(exp_t: Rational, exp_gamma: Rational) -> Result<Self> {
        let one = Rational::one();
        if !(exp_t > exp_gamma && exp_gamma > one) {
            return Err(Error::Domain(format!(
                "parameters must satisfy T > G > 1 (t > gamma > 0); got T = {exp_t}, G = {exp_gamma}"
            )));
        }
        let half = crate::scalar::rational::rat(1, 2);
        let a = (&exp_t / &exp_gamma - &exp_gamma / &exp_t) * &half;
        let b = (&exp_t * &exp_gamma - (&exp_t * &exp_gamma).recip()) * &half;
        let g2 = &exp_gamma * &exp_gamma;
        let c = (&g2 - g2.recip()) * &half;
        let a_minus = &a / &exp_gamma;
        let a_plus = &a * &exp_gamma;
        let b_minus = &b / &exp_gamma;
        let b_plus = &b * &exp_gamma;
        let t2 = &exp_t * &exp_t;
        let q = &g2 / &t2;
        let s = (&t2 * &g2).recip();
        let params = ModelParams {
            exp_t,
            exp_gamma,
            a,
            b,
            c,
            a_minus,
            a_plus,
            b_minus,
            b_plus,
            q,
            s,
        };
        debug_assert!(params.ferroelectric_inequality_holds());
        debug_assert!(params.s < params.q && params.q < one);
        Ok(params)
    }

    pub fn from_i64(t_num: i64, t_den: i64, g_num: i64, g_den: i64) -> Result<Self> {
        Self::new(
            crate::scalar::rational::rat(t_num, t_den),
            crate::scalar::rational::rat(g_num, g_den),
        )
    }

    /// b_- b_+ > a_- a_+ + c^2, the ferroelectric phase condition.
    pub fn ferroelectric_inequality_holds(&self) -> bool {
        &self.b_minus * &self.b_plus > &self.a_minus * &self.a_plus + &self.c * &self.c
    }

    /// ab = sinh(t-gamma) sinh(t+gamma), the prefactor base of the
    /// determinant formula.
    pub fn varphi(&self) -> Rational {
        &self.a * &self.b
    }

    /// T^e, exact.
    pub fn exp_t_pow(&self, e: i64) -> Rational {
        pow_i(&self.exp_t, e)
    }

    /// G^e, exact.
    pub fn exp_gamma_pow(&self, e: i64) -> Rational {
        pow_i(&self.exp_gamma, e)
    }

    /// The six vertex weights (w1..w6) = (a_-, a_+, b_-, b_+, c, c).
    pub fn weights(&self) -> Weights6<Rational> {
        Weights6::new([
            self.a_minus.clone(),
            self.a_plus.clone(),
            self.b_minus.clone(),
            self.b_plus.clone(),
            self.c.clone(),
            self.c.clone(),
        ])
    }
}

/// One weight per vertex type, over any scalar carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights6<S: Scalar> {
    w: [S; 6],
}

impl<S: Scalar> Weights6<S> {
    pub fn new(w: [S; 6]) -> Self {
        Weights6 { w }
    }

    pub fn uniform(value: S) -> Self {
        Weights6::new([
            value.clone(),
            value.clone(),
            value.clone(),
            value.clone(),
            value.clone(),
            value,
        ])
    }

    /// Weight of vertex type `t` (1-based, 1..=6).
    pub fn weight(&self, t: u8) -> &S {
        &self.w[(t - 1) as usize]
    }

    pub fn as_array(&self) -> &[S; 6] {
        &self.w
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Weights6<T> {
        Weights6::new([
            f(&self.w[0]),
            f(&self.w[1]),
            f(&self.w[2]),
            f(&self.w[3]),
            f(&self.w[4]),
            f(&self.w[5]),
        ])
    }

    pub fn scale(&self, factor: &S) -> Weights6<S> {
        self.map(|w| w.mul(factor))
    }
}

impl Weights6<Rational> {
    pub fn all_positive(&self) -> bool {
        use num_traits::Signed;
        self.w.iter().all(|v| v.is_positive())
    }
}
