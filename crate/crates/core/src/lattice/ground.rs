//! The ferroelectric ground state and its closed-form weight.
//!
//! c-vertices sit on the anti-diagonal running up-left from the bottom-right
//! corner; every vertex above/right of that diagonal is type 3, every vertex
//! below/left is type 4. Its weight is b^(n(n-m)) * G^(m(n-m)) * (c/b)^(n-m).

use crate::error::{Error, Result};
use crate::lattice::config::Configuration;
use crate::lattice::params::ModelParams;
use crate::scalar::rational::{pow_i, Rational};

/// Construct the ground-state configuration on the (n-m) x n lattice.
pub fn ground_state(n: usize, m: usize) -> Result<Configuration> {
    if n == 0 || m >= n {
        return Err(Error::Size(format!("need 0 <= m < n >= 1, got n = {n}, m = {m}")));
    }
    let rows = n - m;
    let mut grid_rows = Vec::with_capacity(rows);
    // Text grid is rendered top-to-bottom; vertex (r from bottom, c from left)
    // is type 5 on c + r = n - 1, type 3 to the right, type 4 to the left.
    for r in (0..rows).rev() {
        let mut line = String::with_capacity(n);
        for c in 0..n {
            let diag = c + r;
            line.push(match diag.cmp(&(n - 1)) {
                std::cmp::Ordering::Equal => '5',
                std::cmp::Ordering::Greater => '3',
                std::cmp::Ordering::Less => '4',
            });
        }
        grid_rows.push(line);
    }
    Configuration::from_grid_string(&grid_rows.join("\n"))
}

/// Closed-form ground-state weight b^(n(n-m)) G^(m(n-m)) (c/b)^(n-m).
pub fn ground_state_weight(n: usize, m: usize, p: &ModelParams) -> Rational {
    let rows = (n - m) as i64;
    let n = n as i64;
    let m = m as i64;
    pow_i(&p.b, n * rows) * p.exp_gamma_pow(m * rows) * pow_i(&(&p.c / &p.b), rows)
}

/// Compare the ground state against the full enumeration: returns
/// (weight is maximal, number of configurations attaining the maximum).
/// Ties are reported, never silently asserted away.
pub fn ground_state_maximality(n: usize, m: usize, p: &ModelParams) -> Result<(bool, usize)> {
    let configs = crate::lattice::config::enumerate_configs(n, m)?;
    let weights = p.weights();
    let gs_weight = ground_state_weight(n, m, p);
    let mut max = None::<Rational>;
    let mut max_count = 0usize;
    for config in &configs {
        let w = config.weight(&weights);
        match &max {
            Some(best) if &w > best => {
                max = Some(w);
                max_count = 1;
            }
            Some(best) if &w == best => max_count += 1,
            Some(_) => {}
            None => {
                max = Some(w);
                max_count = 1;
            }
        }
    }
    Ok((max.as_ref() == Some(&gs_weight), max_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn smallest_cases() {
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        // n=1, m=0: the single configuration, weight c.
        let gs = ground_state(1, 0).unwrap();
        assert_eq!(gs.vertex_type(0, 0), 5);
        assert_eq!(ground_state_weight(1, 0, &p), p.c);
        // n=2, m=1: weight c * b_+ (closed form b^2 G (c/b) = b c G).
        let w = ground_state_weight(2, 1, &p);
        assert_eq!(w, &p.c * &p.b_plus);
        assert_eq!(w, rat(369, 800) * rat(21, 16));
    }

    #[test]
    fn constructed_state_weight_matches_closed_form() {
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        let weights = p.weights();
        for n in 1..=5 {
            for m in 0..n {
                let gs = ground_state(n, m).unwrap();
                assert!(gs.satisfies_pdwbc());
                assert_eq!(gs.m(), m);
                assert_eq!(gs.weight(&weights), ground_state_weight(n, m, &p), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn maximality_up_to_n4() {
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        for n in 1..=4 {
            for m in 0..n {
                let (is_max, count) = ground_state_maximality(n, m, &p).unwrap();
                assert!(is_max, "ground state not maximal at n={n} m={m}");
                assert_eq!(count, 1, "unexpected tie at n={n} m={m}");
            }
        }
    }
}
