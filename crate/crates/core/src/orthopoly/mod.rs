//! The orthogonal-polynomial route: exact moments, Hankel norms, Meixner
//! closed forms, the norm-product partition formula, ratio bounds,
//! interpolation identities, and polynomial zeros.

pub mod identities;
pub mod meixner;
pub mod moments;
pub mod system;
pub mod zeros;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::lattice::params::ModelParams;
use crate::scalar::rational::{factorial, pow_i, Rational};

pub use identities::{ip_identity_check, ratio_report, ratio_reports, IpReport, RatioReport, TailStatus};
pub use meixner::{meixner_monic, meixner_norm, MeixnerSystem};
pub use moments::{moments, weight_meixner, weight_w, MomentTable, WeightKind};
pub use system::{hankel_minors, op_recurrence_map, op_system, OpSystem};
pub use zeros::{jacobi_matrix, op_zeros, spectrum_positive_exact, zeros_interlace, JacobiMatrix};

type CacheKey = (ModelParams, usize, WeightKind);

/// Process-wide moment cache: concurrent readers, serialized writers, and
/// results that cannot depend on scheduling because every entry is exact.
fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<MomentTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<MomentTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Moments mu_0..mu_jmax for (params, m), reusing and growing cached tables.
pub fn cached_moments(
    p: &ModelParams,
    m: usize,
    jmax: usize,
    kind: WeightKind,
) -> Result<Arc<MomentTable>> {
    let key = (p.clone(), m, kind);
    if let Some(table) = cache().read().expect("moment cache lock").get(&key) {
        if table.len() > jmax {
            return Ok(table.clone());
        }
    }
    let mut guard = cache().write().expect("moment cache lock");
    // Re-check under the write lock, then extend a copy of whatever is there.
    let mut table = match guard.get(&key) {
        Some(existing) if existing.len() > jmax => return Ok(existing.clone()),
        Some(existing) => (**existing).clone(),
        None => MomentTable::new(p, m, kind),
    };
    table.extend_to(jmax)?;
    let arc = Arc::new(table);
    guard.insert(key, arc.clone());
    Ok(arc)
}

/// Exact partition function by the norm-product formula:
/// (2ab)^{n(n-m)} T^{m(n-m)} prod_{j=0}^{n-m-1} h_j / (j! (j+m)!).
pub fn z_op(n: usize, m: usize, p: &ModelParams) -> Result<Rational> {
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    let k_max = n - m - 1;
    let table = cached_moments(p, m, 2 * k_max, WeightKind::Full)?;
    let sys = op_system(&table, k_max)?;
    let ni = n as i64;
    let mi = m as i64;
    let mut value = pow_i(&(crate::scalar::rational::int(2) * p.varphi()), ni * (ni - mi))
        * p.exp_t_pow(mi * (ni - mi));
    for (j, h) in sys.norms.iter().enumerate() {
        value *= h / Rational::from_integer(factorial(j) * factorial(j + m));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::transfer::partition_transfer;
    use crate::scalar::rational::rat;

    #[test]
    fn smallest_norm_product() {
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        // 2ab * h_0 = 2 (819/1600)(41/91) = 369/800 = c.
        assert_eq!(z_op(1, 0, &p).unwrap(), rat(369, 800));
        assert_eq!(z_op(2, 1, &p).unwrap(), rat(251_289, 320_000));
    }

    #[test]
    fn agrees_with_transfer_everywhere_small() {
        for (tn, td, gn, gd) in [(2, 1, 5, 4), (3, 1, 6, 5)] {
            let p = ModelParams::from_i64(tn, td, gn, gd).unwrap();
            let w = p.weights();
            for n in 1..=5 {
                for m in 0..n {
                    assert_eq!(
                        z_op(n, m, &p).unwrap(),
                        partition_transfer(n, m, &w).unwrap(),
                        "T={tn}/{td} G={gn}/{gd} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn cache_grows_monotonically() {
        let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
        let t1 = cached_moments(&p, 0, 3, WeightKind::Full).unwrap();
        let t2 = cached_moments(&p, 0, 7, WeightKind::Full).unwrap();
        assert!(t2.len() >= 8 && t1.len() >= 4);
        for j in 0..4 {
            assert_eq!(t1.mu(j), t2.mu(j));
        }
    }
}
