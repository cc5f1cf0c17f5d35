//! Negative-order polylogarithms and polynomial-times-geometric sums, exact.
//!
//! L_k(r) = sum_{x>=1} x^k r^x has the closed form of a rational function of
//! r with denominator (1-r)^{k+1}. The table of these rational functions is
//! built by the symbolic recurrence L_{k+1} = r * d/dr L_k (quotient rule plus
//! cancellation of the (1-r) factor the rule reintroduces), starting from the
//! geometric series L_0 = r/(1-r). No Eulerian-number tables are involved.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::ratfunc::RationalFunction;
use super::rational::{int, pow_i, Rational};
use crate::error::{Error, Result};

/// Numerators of L_k over the implicit denominator (1-r)^{k+1}.
fn numerator_table(min_len: usize) -> std::sync::MutexGuard<'static, Vec<Polynomial>> {
    static TABLE: OnceLock<Mutex<Vec<Polynomial>>> = OnceLock::new();
    let mut table = TABLE
        .get_or_init(|| Mutex::new(vec![Polynomial::x()]))
        .lock()
        .expect("polylog table lock");
    while table.len() < min_len {
        let k = table.len() - 1; // last computed order
        let num = table.last().unwrap();
        // d/dr [num/(1-r)^{k+1}] = [num'*(1-r) + (k+1)*num] / (1-r)^{k+2};
        // multiplying by r gives the next numerator over (1-r)^{k+2}.
        let one_minus_r = Polynomial::from_i64(&[1, -1]);
        let next = num
            .derivative()
            .mul(&one_minus_r)
            .add(&num.scale(&int(k as i64 + 1)))
            .mul(&Polynomial::x());
        table.push(next);
    }
    table
}

/// The closed form of L_k as a rational function of r.
pub fn negorder_polylog_rf(k: usize) -> RationalFunction {
    let table = numerator_table(k + 1);
    let mut den = Polynomial::one();
    let one_minus_r = Polynomial::from_i64(&[1, -1]);
    for _ in 0..=k {
        den = den.mul(&one_minus_r);
    }
    RationalFunction::new(table[k].clone(), den)
}

fn check_ratio(r: &Rational) -> Result<()> {
    if r <= &Rational::zero() || r >= &Rational::one() {
        Err(Error::Domain(format!(
            "geometric ratio must satisfy 0 < r < 1, got {r}"
        )))
    } else {
        Ok(())
    }
}

/// Exact value of sum_{x>=1} x^k r^x for 0 < r < 1.
pub fn negorder_polylog(k: usize, r: &Rational) -> Result<Rational> {
    check_ratio(r)?;
    let num = numerator_table(k + 1)[k].eval(r);
    let den = pow_i(&(Rational::one() - r), k as i64 + 1);
    Ok(num / den)
}

/// Values L_0(r)..L_kmax(r), cached per ratio: moment computations hit the
/// same handful of ratios with hundreds of orders, so evaluating each closed
/// form once pays for itself immediately.
pub fn polylog_values(r: &Rational, k_max: usize) -> Result<Arc<Vec<Rational>>> {
    check_ratio(r)?;
    static CACHE: OnceLock<RwLock<HashMap<Rational, Arc<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(values) = cache.read().expect("polylog value cache").get(r) {
        if values.len() > k_max {
            return Ok(values.clone());
        }
    }
    let mut guard = cache.write().expect("polylog value cache");
    let mut values = match guard.get(r) {
        Some(existing) if existing.len() > k_max => return Ok(existing.clone()),
        Some(existing) => (**existing).clone(),
        None => Vec::new(),
    };
    let table = numerator_table(k_max + 1);
    let one_minus_r = Rational::one() - r;
    let mut den = pow_i(&one_minus_r, values.len() as i64);
    for k in values.len()..=k_max {
        den *= &one_minus_r;
        values.push(table[k].eval(r) / &den);
    }
    drop(table);
    let arc = Arc::new(values);
    guard.insert(r.clone(), arc.clone());
    Ok(arc)
}

/// Evaluate L_k at an arbitrary scalar (used for high-precision float ratios).
/// The caller guarantees 0 < r < 1 in exact value.
pub fn negorder_polylog_map<S, F>(k: usize, r: &S, convert: &F) -> S
where
    S: super::FieldScalar,
    F: Fn(&Rational) -> S,
{
    let num = numerator_table(k + 1)[k].eval_map(r, convert);
    let one_minus_r = convert(&Rational::one()).sub(r);
    let mut den = convert(&Rational::one());
    for _ in 0..=k {
        den = den.mul(&one_minus_r);
    }
    num.div(&den)
}

/// Exact value of sum_{x>=x0} P(x) r^x for 0 < r < 1, assembled from the
/// polylog table by an index shift and monomial expansion.
pub fn poly_geometric_sum(p: &Polynomial, r: &Rational, x0: usize) -> Result<Rational> {
    check_ratio(r)?;
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    // sum_{x>=x0} P(x) r^x = r^{x0} * sum_{y>=0} P(y+x0) r^y.
    let shifted = p.shift(&int(x0 as i64));
    let values = polylog_values(r, shifted.degree().unwrap_or(0))?;
    let mut total = shifted.coeff(0); // y = 0 term of the constant part
    for (j, c) in shifted.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        total += c * &values[j];
    }
    Ok(total * pow_i(r, x0 as i64))
}

/// Same sum in an arbitrary scalar field; exactness of the rational closed
/// form is retained up to the scalar's own rounding.
pub fn poly_geometric_sum_map<S, F>(p: &Polynomial, r: &S, x0: usize, convert: &F) -> S
where
    S: super::FieldScalar,
    F: Fn(&Rational) -> S,
{
    if p.is_zero() {
        return S::ring_zero();
    }
    let shifted = p.shift(&int(x0 as i64));
    let mut total = convert(&shifted.coeff(0));
    for (j, c) in shifted.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        total = total.add(&convert(c).mul(&negorder_polylog_map(j, r, convert)));
    }
    let mut scale = convert(&Rational::one());
    for _ in 0..x0 {
        scale = scale.mul(r);
    }
    total.mul(&scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;
    use num_traits::Signed;

    /// Brute-force oracle: partial sum to `terms`, plus a rigorous bound on the
    /// dropped tail: sum_{x>X} x^k r^x <= (X+1)^k r^{X+1} / (1 - r*(1+1/(X+1))^k)
    /// whenever the term ratio bound is < 1.
    fn partial_sum_with_tail(k: usize, r: &Rational, terms: usize) -> (Rational, Rational) {
        let mut sum = Rational::zero();
        for x in 1..=terms {
            sum += pow_i(&int(x as i64), k as i64) * pow_i(r, x as i64);
        }
        let x1 = int(terms as i64 + 1);
        let ratio_bound = r * pow_i(&((&x1 + int(1)) / &x1), k as i64);
        assert!(ratio_bound < Rational::one(), "tail bound inapplicable");
        let first = pow_i(&x1, k as i64) * pow_i(r, terms as i64 + 1);
        let tail = first / (Rational::one() - ratio_bound);
        (sum, tail)
    }

    #[test]
    fn closed_forms_at_small_order() {
        // Geometric series and its first derivative.
        assert_eq!(negorder_polylog(0, &rat(1, 2)).unwrap(), int(1));
        assert_eq!(negorder_polylog(1, &rat(1, 2)).unwrap(), int(2));
        // sum x^2 (1/3)^x = 3/2, cross-checked against the partial-sum oracle below.
        assert_eq!(negorder_polylog(2, &rat(1, 3)).unwrap(), rat(3, 2));
    }

    #[test]
    fn matches_partial_sum_oracle_up_to_order_12() {
        for r in [rat(1, 3), rat(1, 2), rat(25, 64)] {
            for k in 0..=12 {
                let exact = negorder_polylog(k, &r).unwrap();
                let (sum, tail) = partial_sum_with_tail(k, &r, 500);
                let diff = (&exact - &sum).abs();
                assert!(diff <= tail, "k={k} r={r}: |exact-partial| > tail bound");
                assert!(exact > sum, "closed form must exceed any partial sum");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(negorder_polylog(3, &int(1)).is_err());
        assert!(negorder_polylog(3, &int(0)).is_err());
        assert!(negorder_polylog(3, &rat(5, 4)).is_err());
        assert!(poly_geometric_sum(&Polynomial::one(), &rat(-1, 2), 0).is_err());
    }

    #[test]
    fn poly_geometric_examples() {
        // sum_{x>=0} (1/2)^x = 2
        assert_eq!(
            poly_geometric_sum(&Polynomial::one(), &rat(1, 2), 0).unwrap(),
            int(2)
        );
        // sum_{x>=0} (x+1) (1/2)^x = 1/(1-r)^2 = 4
        assert_eq!(
            poly_geometric_sum(&Polynomial::from_i64(&[1, 1]), &rat(1, 2), 0).unwrap(),
            int(4)
        );
        // sum (x+1) q^{x+2} at q = 25/64: q^2/(1-q)^2 = 625/1521
        let q = rat(25, 64);
        let base = poly_geometric_sum(&Polynomial::from_i64(&[1, 1]), &q, 0).unwrap();
        assert_eq!(base * pow_i(&q, 2), rat(625, 1521));
    }

    #[test]
    fn shifted_start_agrees_with_difference() {
        // sum_{x>=3} P(x) r^x = full sum minus x = 0,1,2 terms.
        let p = Polynomial::from_i64(&[2, -1, 1]);
        let r = rat(2, 5);
        let full = poly_geometric_sum(&p, &r, 0).unwrap();
        let head: Rational = (0..3)
            .map(|x| p.eval(&int(x)) * pow_i(&r, x))
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(poly_geometric_sum(&p, &r, 3).unwrap(), full - head);
    }

    #[test]
    fn rf_form_matches_direct_eval() {
        let rf = negorder_polylog_rf(4);
        let r = rat(3, 7);
        assert_eq!(rf.eval(&r).unwrap(), negorder_polylog(4, &r).unwrap());
    }
}
