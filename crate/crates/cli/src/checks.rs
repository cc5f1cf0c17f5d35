//! The named verification checks behind `pdwbc verify`.
//!
//! Every check returns structured results; a check fails only through an
//! explicit `fail` entry, so the report always says which property broke and
//! with what numbers. Randomized checks draw from a caller-seeded generator.

use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pdwbc_core::asymptotics::{
    c_of_m, c_partial_product, phase::critical_ratio, phase_diagnostic, theorem_check, toda_check,
};
use pdwbc_core::ik::{
    limit_lemma_check, row_weight_stack, z_det, z_det_inhomogeneous, SpectralParams,
};
use pdwbc_core::lattice::{
    check_conservation, enumerate_configs, ground_state, ground_state_weight,
    partition_transfer, partition_transfer_by_row, verify_height_identities, verify_reduction,
    Weights6,
};
use pdwbc_core::orthopoly::{
    ip_identity_check, meixner_monic, meixner_norm, moments, op_system, op_zeros, ratio_reports,
    spectrum_positive_exact, z_op, zeros_interlace, WeightKind,
};
use pdwbc_core::report::CheckResult;
use pdwbc_core::scalar::bigfloat::BigFloat;
use pdwbc_core::scalar::rational::{format_rational, pow_i, rat, Rational};
use pdwbc_core::{Error, ModelParams};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub params: ModelParams,
    /// Lattice size cap for enumeration-backed checks.
    pub n_max: usize,
    /// Toda finite-difference step.
    pub eps: Rational,
    pub seed: u64,
    pub precision: u32,
}

type Check = fn(&VerifyConfig) -> Result<Vec<CheckResult>, Error>;

/// Registry of named checks, in the order the default suite runs them.
pub const CHECKS: &[(&str, Check)] = &[
    ("conservation", check_conservation_laws),
    ("heights", check_heights),
    ("ground_state", check_ground_state),
    ("triple", check_triple_agreement),
    ("golden", check_golden_values),
    ("inhomogeneous", check_inhomogeneous),
    ("limit_lemma", check_limit_lemma),
    ("meixner", check_meixner_oracle),
    ("ratio_bound", check_ratio_bound),
    ("ip_identity", check_ip_identities),
    ("theorem", check_theorem_decay),
    ("c_products", check_c_partial_products),
    ("toda", check_toda),
    ("zeros", check_zeros),
    ("saturation", check_saturation),
    ("reduction", check_reduction),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

/// Run the selected checks (all when `selected` is empty).
pub fn run_checks(
    config: &VerifyConfig,
    selected: &[String],
) -> Result<Vec<CheckResult>, Error> {
    let mut results = Vec::new();
    for (name, check) in CHECKS {
        if !selected.is_empty() && !selected.iter().any(|s| s == name) {
            continue;
        }
        results.extend(check(config)?);
    }
    if results.is_empty() {
        return Err(Error::Domain(format!(
            "no check matched the selection; known checks: {}",
            check_names().join(", ")
        )));
    }
    Ok(results)
}

fn pass_fail(name: &str, ok: bool, value: String, detail: String) -> CheckResult {
    if ok {
        CheckResult::ok(name, value, detail)
    } else {
        CheckResult::fail(name, value, detail)
    }
}

fn check_conservation_laws(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let mut total = 0usize;
    let mut bad = 0usize;
    for n in 1..=cfg.n_max {
        for m in 0..n {
            for config in enumerate_configs(n, m)? {
                total += 1;
                if !check_conservation(&config, n, m) {
                    bad += 1;
                }
            }
        }
    }
    Ok(vec![pass_fail(
        "conservation",
        bad == 0,
        format!("{total}"),
        format!("vertex-count conservation laws over all states with n <= {}; {bad} violations", cfg.n_max),
    )])
}

fn check_heights(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let mut total = 0usize;
    let mut bad = 0usize;
    for n in 1..=cfg.n_max {
        for m in 0..n {
            for config in enumerate_configs(n, m)? {
                total += 1;
                if !verify_height_identities(&config) {
                    bad += 1;
                }
            }
        }
    }
    Ok(vec![pass_fail(
        "heights",
        bad == 0,
        format!("{total}"),
        format!("height-function boundary values and diagonal sum rules; {bad} violations"),
    )])
}

fn check_ground_state(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let weights = p.weights();
    let mut results = Vec::new();
    for n in 1..=cfg.n_max {
        for m in 0..n {
            let gs = ground_state(n, m)?;
            let direct = gs.weight(&weights);
            let closed = ground_state_weight(n, m, p);
            if direct != closed {
                results.push(CheckResult::fail(
                    "ground_state",
                    format_rational(&direct),
                    format!("closed-form weight mismatch at n={n} m={m}"),
                ));
            }
            let (is_max, ties) = pdwbc_core::lattice::ground_state_maximality(n, m, p)?;
            if !is_max {
                results.push(CheckResult::fail(
                    "ground_state",
                    format_rational(&closed),
                    format!("not maximal over the enumeration at n={n} m={m}"),
                ));
            } else if ties > 1 {
                results.push(CheckResult::info(
                    "ground_state",
                    format!("{ties}"),
                    format!("maximum weight tied {ties} ways at n={n} m={m}"),
                ));
            }
        }
    }
    if results.iter().all(|r| r.passed()) {
        results.insert(
            0,
            CheckResult::ok(
                "ground_state",
                format!("n<={}", cfg.n_max),
                "constructed state matches the closed-form weight and is maximal".to_string(),
            ),
        );
    }
    Ok(results)
}

fn check_triple_agreement(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let weights = p.weights();
    let mut results = Vec::new();
    let mut all_ok = true;
    for n in 1..=5usize {
        for m in 0..n {
            let by_transfer = partition_transfer(n, m, &weights)?;
            let by_det = z_det(n, m, p)?;
            let by_op = z_op(n, m, p)?;
            if by_transfer != by_det || by_det != by_op {
                all_ok = false;
                results.push(CheckResult::fail(
                    "triple",
                    format_rational(&by_transfer),
                    format!(
                        "route disagreement at n={n} m={m}: transfer {}, determinant {}, orthopoly {}",
                        format_rational(&by_transfer),
                        format_rational(&by_det),
                        format_rational(&by_op)
                    ),
                ));
            }
        }
    }
    if all_ok {
        results.push(CheckResult::ok(
            "triple",
            "15".to_string(),
            "transfer = determinant = norm product, exactly, for all 1 <= n <= 5, 0 <= m < n".to_string(),
        ));
    }
    Ok(results)
}

fn check_golden_values(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let mut results = Vec::new();
    // Z_{1,2} = c (a_- + b_+) in closed form, for any parameters.
    let closed = &p.c * (&p.a_minus + &p.b_plus);
    let routes = [
        partition_transfer(2, 1, &p.weights())?,
        z_det(2, 1, p)?,
        z_op(2, 1, p)?,
    ];
    let ok = routes.iter().all(|z| z == &closed);
    results.push(pass_fail(
        "golden",
        ok,
        format_rational(&closed),
        "Z_{1,2} = c (a_- + b_+) by all three routes".to_string(),
    ));
    let reference = ModelParams::from_i64(2, 1, 5, 4)?;
    if *p == reference {
        let frozen = rat(251_289, 320_000);
        results.push(pass_fail(
            "golden",
            closed == frozen,
            format_rational(&frozen),
            "frozen reference value 251289/320000 at (T, G) = (2, 5/4)".to_string(),
        ));
    }
    Ok(results)
}

/// Distinct random spectral parameters strictly above G.
fn random_spectral(rng: &mut StdRng, count: usize, p: &ModelParams) -> SpectralParams {
    let mut nums = Vec::new();
    while nums.len() < count {
        let candidate = rng.random_range(1..=48u32) as i64;
        if !nums.contains(&candidate) {
            nums.push(candidate);
        }
    }
    // L = G + num/8 keeps everything rational, distinct and in range.
    let exp_lambda = nums
        .into_iter()
        .map(|num| &p.exp_gamma + rat(num, 8))
        .collect();
    SpectralParams::new(exp_lambda)
}

fn check_inhomogeneous(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut results = Vec::new();
    for (n, m) in [(2usize, 0usize), (3, 0), (3, 1)] {
        let mut ok = true;
        for trial in 0..5 {
            let lambda = random_spectral(&mut rng, n - m, p);
            let by_formula = z_det_inhomogeneous(&lambda, n, m, p)?;
            let by_transfer = partition_transfer_by_row(n, m, &row_weight_stack(&lambda, p))?;
            if by_formula != by_transfer {
                ok = false;
                results.push(CheckResult::fail(
                    "inhomogeneous",
                    format_rational(&by_formula),
                    format!("trial {trial} at n={n} m={m}: enumeration gave {}", format_rational(&by_transfer)),
                ));
            }
        }
        if ok {
            results.push(CheckResult::ok(
                "inhomogeneous",
                "5".to_string(),
                format!("formula = row-weighted transfer, exactly, for 5 random spectral sets at n={n} m={m}"),
            ));
        }
    }
    Ok(results)
}

fn check_limit_lemma(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let prec = cfg.precision.max(256);
    let fixed = SpectralParams::new(vec![&p.exp_gamma + rat(3, 4), &p.exp_gamma + rat(7, 4)]);
    let (n, m) = (4usize, 1usize);
    let r8 = limit_lemma_check(n, m, p, &BigFloat::from_i64(8).with_prec(prec), &fixed, prec)?;
    let r10 = limit_lemma_check(n, m, p, &BigFloat::from_i64(10).with_prec(prec), &fixed, prec)?;
    let decays = r10 < r8;
    let ratio = r8.div(&r10).to_f64();
    let e4 = std::f64::consts::E.powi(4);
    // Row parity (odd c-vertex count per row) makes the first correction
    // second order: the residual decays as e^{-2 lambda}, so the measured
    // ratio sits at e^4 (second-order decay, within the one-sided O(e^-lambda) rate).
    let in_window = ratio > e4 / 2.0 && ratio < 2.0 * e4;
    Ok(vec![
        pass_fail(
            "limit_lemma",
            decays,
            r10.to_decimal_string(6),
            format!("residual decreases with lambda: r(8) = {}", r8.to_decimal_string(6)),
        ),
        pass_fail(
            "limit_lemma",
            in_window,
            format!("{ratio:.4}"),
            format!("r(8)/r(10) within [e^4/2, 2e^4] around e^4 = {e4:.3} (second-order decay)"),
        ),
    ])
}

fn check_meixner_oracle(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let mut ok = true;
    let mut detail = String::new();
    for m in [0usize, 1, 3] {
        let table = moments(p, m, 20, WeightKind::Meixner)?;
        let sys = op_system(&table, 10)?;
        for k in 0..=10usize {
            if sys.norms[k] != meixner_norm(k, m, &p.q)?
                || sys.monic[k] != meixner_monic(k, m, &p.q)?
            {
                ok = false;
                detail = format!("first mismatch at k={k} m={m}");
            }
        }
    }
    Ok(vec![pass_fail(
        "meixner",
        ok,
        "33".to_string(),
        if ok {
            "norms and monic polynomials from Meixner-weight moments equal the closed forms, k <= 10, m in {0,1,3}".into()
        } else {
            detail
        },
    )])
}

fn check_ratio_bound(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let mut ok = true;
    let mut worst = String::new();
    for m in [0usize, 1, 2, 4, 8] {
        for report in ratio_reports(15, m, p)? {
            if !report.bound_holds {
                ok = false;
                worst = format!("bound violated at k={} m={m}", report.k);
            }
        }
    }
    Ok(vec![pass_fail(
        "ratio_bound",
        ok,
        "80".to_string(),
        if ok {
            "Cauchy-Schwarz norm-ratio bound holds for k <= 15, m in {0,1,2,4,8} (exact squared comparison)".into()
        } else {
            worst
        },
    )])
}

fn check_ip_identities(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let mut results = Vec::new();
    for m in [0usize, 1, 2] {
        for k in 0..=4usize {
            let report = ip_identity_check(k, m, p, 300)?;
            let ok = report.all_certified();
            if !ok {
                results.push(CheckResult::fail(
                    "ip_identity",
                    format!("k={k} m={m}"),
                    format!("{report:?}"),
                ));
            }
        }
    }
    if results.is_empty() {
        results.push(CheckResult::ok(
            "ip_identity",
            "15".to_string(),
            "bilinear norm identities certified within rigorous tails at Xmax = 300, k <= 4, m in {0,1,2}".to_string(),
        ));
    }
    Ok(results)
}

fn check_theorem_decay(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let mut results = Vec::new();
    let mut prev: Option<Rational> = None;
    let mut monotone = true;
    let mut xi_126 = None;
    for j in 3..=7usize {
        let report = theorem_check(2 * j, j, p, 0.5, 10.0, cfg.precision)?;
        let abs = report.xi_exact.abs();
        if let Some(prior) = &prev {
            if &abs >= prior {
                monotone = false;
            }
        }
        if j == 6 {
            xi_126 = Some(abs.clone());
        }
        results.push(CheckResult::info(
            format!("theorem[n={},m={}]", 2 * j, j),
            report.xi_abs.to_decimal_string(6),
            format!("envelope {}", report.envelope.to_decimal_string(6)),
        ));
        prev = Some(abs);
    }
    results.push(pass_fail(
        "theorem",
        monotone,
        "j=3..7".to_string(),
        "|xi| strictly decreases along the diagonal (n, m) = (2j, j)".to_string(),
    ));
    let reference = ModelParams::from_i64(2, 1, 5, 4)?;
    if *p == reference {
        let xi = xi_126.expect("diagonal included j = 6");
        results.push(pass_fail(
            "theorem",
            xi < rat(1, 1000),
            BigFloat::from_rational(&xi, 96).to_decimal_string(6),
            "frozen regression |xi_{12,6}| < 1e-3 at (T, G) = (2, 5/4)".to_string(),
        ));
    }
    Ok(results)
}

fn check_c_partial_products(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let rho = p.exp_gamma_pow(-2);
    let mut results = Vec::new();
    for m in [0usize, 1, 2] {
        let partial = c_partial_product(12, m, p)?;
        let target = c_of_m(m, p);
        let dev = (&partial - &target).abs();
        let bound = rat(10, 1) * pow_i(&rho, m as i64);
        results.push(pass_fail(
            &format!("c_products[m={m}]"),
            dev <= bound,
            format_rational(&target),
            format!(
                "partial product through k = 12 deviates by {} (bound {})",
                BigFloat::from_rational(&dev, 64).to_decimal_string(4),
                BigFloat::from_rational(&bound, 64).to_decimal_string(4)
            ),
        ));
    }
    Ok(results)
}

fn check_toda(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let prec = cfg.precision.max(256);
    let eps = BigFloat::from_rational(&cfg.eps, prec);
    let report = toda_check(6, 2, p, &eps, prec)?;
    let doubled = toda_check(6, 2, p, &eps.mul(&BigFloat::from_i64(2)), prec)?;
    let order_ratio = report.residual.div(&doubled.residual).to_f64();
    let order_ok = order_ratio > 1.0 / 8.0 && order_ratio < 1.0 / 2.0;
    // First-run regression values at the reference point and eps = 1e-4:
    // absolute 2.4631e-6 (pure eps^2 truncation), relative 2.43e-8.
    let abs_ok = report.residual < BigFloat::from_rational(&rat(1, 100_000), 64);
    let rel_ok = report.relative_residual < BigFloat::from_rational(&rat(1, 1_000_000), 64);
    Ok(vec![
        pass_fail(
            "toda",
            abs_ok && rel_ok,
            report.residual.to_decimal_string(6),
            format!(
                "central-difference residual at (6,2), eps = {} (relative {})",
                eps.to_decimal_string(4),
                report.relative_residual.to_decimal_string(4)
            ),
        ),
        pass_fail(
            "toda",
            order_ok,
            format!("{order_ratio:.4}"),
            "residual(eps)/residual(2 eps) within factor 2 of 1/4 (second-order convergence)".to_string(),
        ),
    ])
}

fn check_zeros(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let m = 2usize;
    let mut prev = op_zeros(1, m, p, 128)?;
    let mut ok = true;
    let mut detail = String::new();
    for k in 2..=30usize {
        let next = op_zeros(k, m, p, 128)?;
        if !zeros_interlace(&prev, &next) {
            ok = false;
            detail = format!("interlacing failed between k = {} and k = {k}", k - 1);
            break;
        }
        prev = next;
    }
    let positive = spectrum_positive_exact(12, m, p)?;
    Ok(vec![
        pass_fail(
            "zeros",
            ok,
            "k<=30".to_string(),
            if ok {
                format!("zeros real, simple, positive and interlacing for consecutive degrees (m = {m})")
            } else {
                detail
            },
        ),
        pass_fail(
            "zeros",
            positive,
            "exact".to_string(),
            "rational pivot certificate: the degree-12 Jacobi spectrum is strictly positive".to_string(),
        ),
    ])
}

fn check_saturation(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let p = &cfg.params;
    let xi_c = critical_ratio(p);
    let delta = rat(1, 20);
    let low = phase_diagnostic(30, &(rat(3, 10) * &xi_c), p, &delta, 128)?;
    let high = phase_diagnostic(30, &(rat(3, 1) * &xi_c), p, &delta, 128)?;
    let ok = low.saturation_fraction > high.saturation_fraction;
    Ok(vec![pass_fail(
        "saturation",
        ok,
        format!("{:.4} > {:.4}", low.saturation_fraction, high.saturation_fraction),
        format!(
            "gap-packing fraction at xi = 0.3 xi_c (m = {}) exceeds xi = 3 xi_c (m = {}); xi_c = {}",
            low.m,
            high.m,
            format_rational(&xi_c)
        ),
    )])
}

fn check_reduction(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, Error> {
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x5eed);
    let mut ok = true;
    let mut detail = String::new();
    let mut trials = 0usize;
    while trials < 20 {
        let base = |rng: &mut StdRng| rat(rng.random_range(1..=12), rng.random_range(1..=6));
        let root = |rng: &mut StdRng| rat(rng.random_range(1..=5), rng.random_range(1..=4));
        let (w1, w3, w5) = (base(&mut rng), base(&mut rng), base(&mut rng));
        let (ra, rb, rc) = (root(&mut rng), root(&mut rng), root(&mut rng));
        let weights = Weights6::new([
            w1.clone(),
            w1 * &ra * &ra,
            w3.clone(),
            w3 * &rb * &rb,
            w5.clone(),
            w5 * &rc * &rc,
        ]);
        let n = rng.random_range(2..=4usize);
        let m = rng.random_range(0..n);
        trials += 1;
        match verify_reduction(&weights, n, m) {
            Ok(true) => {}
            Ok(false) => {
                ok = false;
                detail = format!("round trip failed at trial {trials} (n={n}, m={m})");
            }
            Err(e) => {
                ok = false;
                detail = format!("trial {trials}: {e}");
            }
        }
    }
    Ok(vec![pass_fail(
        "reduction",
        ok,
        "20".to_string(),
        if ok {
            "Z(original) = prefactor * Z(reduced), exactly, for 20 random square-ratio weight sets, n <= 4".into()
        } else {
            detail
        },
    )])
}
