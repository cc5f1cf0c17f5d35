//! Monic orthogonal polynomials from exact moments, by two derivations that
//! must agree exactly.
//!
//! Primary path: Hankel principal minors via fraction-free elimination give
//! the norms h_k = Delta_{k+1}/Delta_k directly. Cross-check path: the
//! Stieltjes three-term recurrence with moment-contraction inner products
//! builds the monic polynomials and their norms independently. An index slip
//! in either derivation cannot survive the equality gate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::moments::MomentTable;
use crate::error::{Error, Result};
use crate::scalar::linalg::bareiss_principal_minors;
use crate::scalar::polynomial::Polynomial;
use crate::scalar::rational::Rational;
use crate::scalar::FieldScalar;

/// Monic orthogonal system p_0..p_K with norms and Jacobi coefficients.
#[derive(Clone, Debug)]
pub struct OpSystem {
    /// Monic p_0..p_K.
    pub monic: Vec<Polynomial>,
    /// Norms h_0..h_K (all strictly positive).
    pub norms: Vec<Rational>,
    /// Recurrence diagonal alpha_0..alpha_{K-1}.
    pub alpha: Vec<Rational>,
    /// Recurrence off-diagonal squares beta_1..beta_{K-1}
    /// (beta_k = h_k / h_{k-1}).
    pub beta: Vec<Rational>,
}

/// Leading principal minors Delta_1..Delta_K of the moment Hankel matrix,
/// exactly, via a single fraction-free pass over a common-denominator
/// integer matrix.
pub fn hankel_minors(table: &MomentTable, k: usize) -> Result<Vec<Rational>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let need = 2 * k - 2;
    if table.len() <= need {
        return Err(Error::Size(format!(
            "Hankel minors of order {k} need moments to {need}, table holds {}",
            table.len()
        )));
    }
    let mut denom_lcm = BigInt::one();
    for j in 0..=need {
        denom_lcm = denom_lcm.lcm(table.mu(j).denom());
    }
    let scaled: Vec<BigInt> = (0..=need)
        .map(|j| table.mu(j).numer() * (&denom_lcm / table.mu(j).denom()))
        .collect();
    let matrix: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| scaled[i + j].clone()).collect())
        .collect();
    let minors_int = bareiss_principal_minors(matrix).ok_or_else(|| {
        Error::Inconsistency("moment Hankel matrix has a vanishing principal minor".into())
    })?;
    let mut minors = Vec::with_capacity(k);
    let mut scale = Rational::from_integer(denom_lcm.clone());
    for minor in minors_int {
        minors.push(Rational::from_integer(minor) / &scale);
        scale *= Rational::from_integer(denom_lcm.clone());
    }
    Ok(minors)
}

/// Build the system to degree K. The table must hold moments to 2K.
pub fn op_system(table: &MomentTable, k_max: usize) -> Result<OpSystem> {
    if table.len() <= 2 * k_max {
        return Err(Error::Size(format!(
            "op_system to degree {k_max} needs moments to {}, table holds {}",
            2 * k_max,
            table.len()
        )));
    }

    // Hankel route.
    let minors = hankel_minors(table, k_max + 1)?;
    for (i, d) in minors.iter().enumerate() {
        if !d.is_positive() {
            return Err(Error::Inconsistency(format!(
                "Hankel determinant Delta_{} = {d} is not positive; the moment \
                 problem must be positive-definite",
                i + 1
            )));
        }
    }
    let hankel_norms: Vec<Rational> = (0..=k_max)
        .map(|k| {
            if k == 0 {
                minors[0].clone()
            } else {
                &minors[k] / &minors[k - 1]
            }
        })
        .collect();

    // Stieltjes recurrence route.
    let mut monic = Vec::with_capacity(k_max + 1);
    let mut norms = Vec::with_capacity(k_max + 1);
    let mut alpha = Vec::with_capacity(k_max);
    let mut beta = Vec::with_capacity(k_max.saturating_sub(1));
    monic.push(Polynomial::one());
    norms.push(table.mu(0).clone());
    let x = Polynomial::x();
    for k in 0..k_max {
        let pk: &Polynomial = &monic[k];
        let xpk = x.mul(pk);
        let a_k = table.inner_product(&xpk, pk) / &norms[k];
        let mut next = xpk.sub(&pk.scale(&a_k));
        if k > 0 {
            let b_k = &norms[k] / &norms[k - 1];
            next = next.sub(&monic[k - 1].scale(&b_k));
            beta.push(b_k);
        }
        alpha.push(a_k);
        let norm_next = table.inner_product(&next, &next);
        norms.push(norm_next);
        monic.push(next);
    }
    if k_max > 0 {
        beta.push(&norms[k_max] / &norms[k_max - 1]);
    }

    // The two derivations must coincide exactly.
    if norms != hankel_norms {
        return Err(Error::Inconsistency(
            "orthogonal-polynomial norms differ between the Hankel and recurrence routes".into(),
        ));
    }
    Ok(OpSystem { monic, norms, alpha, beta })
}

impl OpSystem {
    pub fn degree(&self) -> usize {
        self.monic.len() - 1
    }

    /// Exact orthogonality residual <p_j, p_k> through the moment table;
    /// zero for j != k, h_k on the diagonal.
    pub fn orthogonality_residual(&self, table: &MomentTable, j: usize, k: usize) -> Rational {
        let ip = table.inner_product(&self.monic[j], &self.monic[k]);
        if j == k {
            ip - &self.norms[k]
        } else {
            ip
        }
    }
}

/// Norms and Jacobi coefficients by the recurrence route in an arbitrary
/// field (used with big floats for perturbed weights and eigenvalue work).
/// Returns (norms h_0..h_K, alpha_0..alpha_{K-1}, beta_1..beta_{K-1}).
pub fn op_recurrence_map<S: FieldScalar>(
    mu: &[S],
    k_max: usize,
) -> Result<(Vec<S>, Vec<S>, Vec<S>)> {
    if mu.len() <= 2 * k_max {
        return Err(Error::Size(format!(
            "recurrence to degree {k_max} needs moments to {}, got {}",
            2 * k_max,
            mu.len()
        )));
    }
    // Polynomials as coefficient vectors over S.
    let inner = |f: &[S], g: &[S]| -> S {
        let mut acc = S::ring_zero();
        for (i, a) in f.iter().enumerate() {
            if a.is_ring_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                if b.is_ring_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b).mul(&mu[i + j]));
            }
        }
        acc
    };
    let shift_up = |f: &[S]| -> Vec<S> {
        let mut v = Vec::with_capacity(f.len() + 1);
        v.push(S::ring_zero());
        v.extend_from_slice(f);
        v
    };

    let mut polys: Vec<Vec<S>> = vec![vec![S::ring_one()]];
    let mut norms = vec![mu[0].clone()];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for k in 0..k_max {
        let pk = polys[k].clone();
        let xpk = shift_up(&pk);
        let a_k = inner(&xpk, &pk).div(&norms[k]);
        let mut next = xpk;
        for (i, c) in pk.iter().enumerate() {
            next[i] = next[i].sub(&a_k.mul(c));
        }
        if k > 0 {
            let b_k = norms[k].div(&norms[k - 1]);
            for (i, c) in polys[k - 1].iter().enumerate() {
                next[i] = next[i].sub(&b_k.mul(c));
            }
            beta.push(b_k);
        }
        alpha.push(a_k);
        let norm_next = inner(&next, &next);
        norms.push(norm_next);
        polys.push(next);
    }
    if k_max > 0 {
        beta.push(norms[k_max].div(&norms[k_max - 1]));
    }
    Ok((norms, alpha, beta))
}
