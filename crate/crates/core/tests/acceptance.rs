//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible under `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria 5 and 9 are implemented exactly as stated and are expected to
//! fail: their frozen thresholds contradict what the formulas themselves
//! force. The failure messages carry the measured values and the reasons;
//! see also the repository notes in the test bodies.

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
    check_conservation, enumerate_configs, partition_transfer, partition_transfer_by_row,
    verify_height_identities, verify_reduction, Weights6,
};
use pdwbc_core::orthopoly::{
    ip_identity_check, meixner_monic, meixner_norm, moments, op_system, op_zeros, ratio_reports,
    z_op, zeros_interlace, WeightKind,
};
use pdwbc_core::scalar::bigfloat::BigFloat;
use pdwbc_core::scalar::rational::{pow_i, rat, Rational};
use pdwbc_core::ModelParams;

fn criterion(number: u32, label: &str, ok: bool, detail: String) {
    println!(
        "acceptance {number:02} ({label}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance criterion {number} ({label}) failed: {detail}");
}

fn reference_params() -> [ModelParams; 2] {
    [
        ModelParams::from_i64(2, 1, 5, 4).unwrap(),
        ModelParams::from_i64(3, 1, 6, 5).unwrap(),
    ]
}

#[test]
fn criterion_01_triple_exact_agreement() {
    let mut ok = true;
    let mut detail = String::new();
    for p in reference_params() {
        let weights = p.weights();
        for n in 1..=5 {
            for m in 0..n {
                let a = partition_transfer(n, m, &weights).unwrap();
                let b = z_det(n, m, &p).unwrap();
                let c = z_op(n, m, &p).unwrap();
                if a != b || b != c {
                    ok = false;
                    detail = format!("disagreement at n={n}, m={m}, T={}", p.exp_t);
                }
            }
        }
    }
    criterion(1, "triple exact agreement, n <= 5, two parameter sets", ok, detail);
}

#[test]
fn criterion_02_golden_value() {
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    let golden = rat(251_289, 320_000);
    let closed = &p.c * (&p.a_minus + &p.b_plus);
    let routes = [
        partition_transfer(2, 1, &p.weights()).unwrap(),
        z_det(2, 1, &p).unwrap(),
        z_op(2, 1, &p).unwrap(),
    ];
    let ok = closed == golden && routes.iter().all(|z| z == &golden);
    criterion(
        2,
        "golden value Z_{1,2} = 251289/320000 by all three routes",
        ok,
        format!("closed form {closed}, routes {routes:?}"),
    );
}

#[test]
fn criterion_03_conservation_and_height_identities() {
    let mut checked = 0usize;
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=4 {
        for m in 0..n {
            for config in enumerate_configs(n, m).unwrap() {
                checked += 1;
                if !check_conservation(&config, n, m) || !verify_height_identities(&config) {
                    ok = false;
                    detail = format!("violation at n={n}, m={m}");
                }
            }
        }
    }
    criterion(
        3,
        "conservation laws and height identities for every state, n <= 4",
        ok,
        format!("{detail} ({checked} states)"),
    );
}

#[test]
fn criterion_04_inhomogeneous_formula() {
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    let mut rng = StdRng::seed_from_u64(20_260_808);
    let mut ok = true;
    let mut detail = String::new();
    for (n, m) in [(2usize, 0usize), (3, 0), (3, 1)] {
        for trial in 0..5 {
            let mut nums: Vec<i64> = Vec::new();
            while nums.len() < n - m {
                let candidate = rng.random_range(1..=48i64);
                if !nums.contains(&candidate) {
                    nums.push(candidate);
                }
            }
            let lambda = SpectralParams::new(
                nums.iter().map(|k| &p.exp_gamma + rat(*k, 8)).collect(),
            );
            let by_formula = z_det_inhomogeneous(&lambda, n, m, &p).unwrap();
            let by_transfer =
                partition_transfer_by_row(n, m, &row_weight_stack(&lambda, &p)).unwrap();
            if by_formula != by_transfer {
                ok = false;
                detail = format!("mismatch at n={n}, m={m}, trial {trial}");
            }
        }
    }
    criterion(
        4,
        "inhomogeneous determinant formula matches enumeration, 5 random spectral sets",
        ok,
        detail,
    );
}

#[test]
fn criterion_05_limit_lemma_residual_window() {
    // As stated, the residual ratio r(8)/r(10) must land in [e^2/2, 2 e^2].
    // The measured ratio is e^4 to four digits, and provably so: every lattice
    // row carries an odd number of c-vertices, so the first correction to the
    // peeled-row limit comes from three-c-vertex rows, two exponential orders
    // down, and all weight expansions contribute even orders in e^-lambda.
    // The window encodes a first-order decay that the model cannot produce;
    // the decay itself (second order, strictly monotone) does hold.
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    let fixed = SpectralParams::new(vec![&p.exp_gamma + rat(3, 4), &p.exp_gamma + rat(7, 4)]);
    let r8 = limit_lemma_check(4, 1, &p, &BigFloat::from_i64(8).with_prec(256), &fixed, 256)
        .unwrap();
    let r10 = limit_lemma_check(4, 1, &p, &BigFloat::from_i64(10).with_prec(256), &fixed, 256)
        .unwrap();
    let decays = r10 < r8;
    criterion(
        5,
        "limit-lemma residual decreases with lambda",
        decays,
        format!("r(8) = {}, r(10) = {}", r8.to_decimal_string(6), r10.to_decimal_string(6)),
    );
    let ratio = r8.div(&r10).to_f64();
    let e2 = std::f64::consts::E.powi(2);
    criterion(
        5,
        "limit-lemma residual ratio within [e^2/2, 2 e^2]",
        ratio > e2 / 2.0 && ratio < 2.0 * e2,
        format!(
            "measured r(8)/r(10) = {ratio:.4} = e^{:.4}: the residual decays as e^(-2 lambda) \
             (odd c-vertex parity per row makes the first-order term vanish identically), so \
             the stated first-order window [{:.3}, {:.3}] cannot contain it",
            ratio.ln(),
            e2 / 2.0,
            2.0 * e2
        ),
    );
}

#[test]
fn criterion_06_meixner_oracle() {
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for m in [0usize, 1, 3] {
        let table = moments(&p, m, 20, WeightKind::Meixner).unwrap();
        let sys = op_system(&table, 10).unwrap();
        for k in 0..=10usize {
            if sys.norms[k] != meixner_norm(k, m, &p.q).unwrap()
                || sys.monic[k] != meixner_monic(k, m, &p.q).unwrap()
            {
                ok = false;
                detail = format!("mismatch at k={k}, m={m}");
            }
        }
    }
    criterion(6, "Meixner norms and monic polynomials reproduced exactly", ok, detail);
}

#[test]
fn criterion_07_ratio_bound_and_ip_identities() {
    let mut ok = true;
    let mut detail = String::new();
    for p in reference_params() {
        for m in [0usize, 1, 2, 4, 8] {
            for report in ratio_reports(15, m, &p).unwrap() {
                if !report.bound_holds {
                    ok = false;
                    detail = format!("norm-ratio bound violated at k={}, m={m}", report.k);
                }
            }
        }
    }
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    for m in [0usize, 1, 2] {
        for k in 0..=4usize {
            let report = ip_identity_check(k, m, &p, 300).unwrap();
            if !report.all_certified() {
                ok = false;
                detail = format!("identity not certified at k={k}, m={m}");
            }
        }
    }
    criterion(
        7,
        "norm-ratio bound (k <= 15, both parameter sets) and bilinear identities at Xmax = 300",
        ok,
        detail,
    );
}

#[test]
fn criterion_08_theorem_desk_scale() {
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    let mut prev: Option<Rational> = None;
    let mut xi_126: Option<Rational> = None;
    for j in 3..=7usize {
        let report = theorem_check(2 * j, j, &p, 0.5, 10.0, 192).unwrap();
        let abs = report.xi_exact.abs();
        if let Some(prior) = &prev {
            if &abs >= prior {
                ok = false;
                detail = format!("|xi| not strictly decreasing at j={j}");
            }
        }
        if j == 6 {
            xi_126 = Some(abs.clone());
        }
        prev = Some(abs);
    }
    let xi = xi_126.unwrap();
    if xi >= rat(1, 1000) {
        ok = false;
        detail = format!("|xi_(12,6)| = {xi} >= 1e-3");
    }
    let rho = p.exp_gamma_pow(-2);
    for m in 0..=2usize {
        let dev = (c_partial_product(12, m, &p).unwrap() - c_of_m(m, &p)).abs();
        let bound = rat(10, 1) * pow_i(&rho, m as i64);
        if dev > bound {
            ok = false;
            detail = format!("partial product misses C({m}) by {dev} (bound {bound})");
        }
    }
    criterion(
        8,
        "xi decay along (2j, j), |xi_(12,6)| < 1e-3, C(m) partial products in envelope",
        ok,
        detail,
    );
}

#[test]
fn criterion_09_toda_residual() {
    // As stated: the central-difference residual at (6,2), eps = 1e-4, 256
    // bits must be below 1e-6. The measured residual is 2.4631e-6 and scales
    // as a clean eps^2 across four decades (ratio 4.0000 per halving), i.e.
    // it is the intrinsic truncation term (fourth log-derivative ~ 2956, so
    // eps^2 * f''''/12 ~ 2.46e-6): no correct evaluation of this difference
    // quotient at eps = 1e-4 can land below 1e-6. Relative to the right-hand
    // side (101.286) the residual is 2.43e-8.
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    let eps = BigFloat::from_rational(&rat(1, 10_000), 256);
    let report = toda_check(6, 2, &p, &eps, 256).unwrap();
    let doubled = toda_check(6, 2, &p, &eps.mul(&BigFloat::from_i64(2)), 256).unwrap();
    let order_ratio = report.residual.div(&doubled.residual).to_f64();
    criterion(
        9,
        "Toda residual second-order convergence (ratio within factor 2 of 1/4)",
        order_ratio > 0.125 && order_ratio < 0.5,
        format!("residual(eps)/residual(2 eps) = {order_ratio:.5}"),
    );
    let threshold = BigFloat::from_rational(&rat(1, 1_000_000), 64);
    criterion(
        9,
        "Toda residual below 1e-6 at eps = 1e-4",
        report.residual < threshold,
        format!(
            "measured absolute residual {} (relative {}): the eps^2 truncation term of the \
             second difference is intrinsically ~2.46e-6 at this operating point, so the \
             frozen 1e-6 absolute threshold is unreachable at eps = 1e-4 (it holds for \
             eps <= 6e-5, and the relative residual clears it by two decades)",
            report.residual.to_decimal_string(6),
            report.relative_residual.to_decimal_string(6)
        ),
    );
}

#[test]
fn criterion_10_zeros_and_saturation() {
    let p = ModelParams::from_i64(2, 1, 5, 4).unwrap();
    let m = 2usize;
    let mut ok = true;
    let mut detail = String::new();
    let mut prev = op_zeros(1, m, &p, 128).unwrap();
    if prev[0].is_negative() || prev[0].is_zero() {
        ok = false;
    }
    for k in 2..=30usize {
        let next = op_zeros(k, m, &p, 128).unwrap();
        if !zeros_interlace(&prev, &next) {
            ok = false;
            detail = format!("interlacing failed between degrees {} and {k}", k - 1);
        }
        prev = next;
    }
    criterion(10, "zeros real, simple, positive, interlacing through k = 30", ok, detail);

    let xi_c = critical_ratio(&p);
    let low = phase_diagnostic(30, &(rat(3, 10) * &xi_c), &p, &rat(1, 20), 128).unwrap();
    let high = phase_diagnostic(30, &(rat(3, 1) * &xi_c), &p, &rat(1, 20), 128).unwrap();
    criterion(
        10,
        "saturation fraction higher below the critical ratio",
        low.saturation_fraction > high.saturation_fraction,
        format!("{} vs {}", low.saturation_fraction, high.saturation_fraction),
    );
}

#[test]
fn criterion_11_parameter_reduction() {
    let mut rng = StdRng::seed_from_u64(0x7ed0_c3a1);
    let mut ok = true;
    let mut detail = String::new();
    for trial in 0..20 {
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
        match verify_reduction(&weights, n, m) {
            Ok(true) => {}
            other => {
                ok = false;
                detail = format!("trial {trial} (n={n}, m={m}): {other:?}");
            }
        }
    }
    criterion(
        11,
        "parameter-reduction identity exact for 20 random square-ratio weight sets",
        ok,
        detail,
    );
}
