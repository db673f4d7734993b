//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every criterion function returns a deterministic report string; the final
//! determinism criterion reruns the full battery and demands byte-identical
//! reports.

use std::time::{Duration, Instant};
use stochord::diagram::{
    random_dist, random_family, render_report, verify_counterexamples, verify_implications,
    GeneratorConfig, ReportFormat, VerifyConfig,
};
use stochord::dist::{dist_from_isf, DiscreteDist, MomentValue};
use stochord::families::{lp_bound, ui_criterion, BuiltinFamily, CriterionValue, FamilySpec};
use stochord::metrics::{
    prohorov, prohorov_bruteforce, wasserstein, wasserstein_lp_oracle, wasserstein_pow_int,
};
use stochord::orders::{
    hl_st_check, icx_le, icx_le_quantile_oracle, least_icx_upper_bound, least_st_upper_bound,
    st_le, st_le_dist_curve,
};
use stochord::rational::{q, q_one, q_zero, qi, qu, to_f64, Q};
use stochord::rng::SplitMix64;

fn phi(n: i64) -> DiscreteDist {
    DiscreteDist::new(vec![(qi(0), qi(1) - q(1, n)), (qi(n), q(1, n))]).unwrap()
}

fn shift_right(d: &DiscreteDist, delta: &Q) -> DiscreteDist {
    DiscreteDist::new(
        d.atoms()
            .iter()
            .map(|(x, p)| (x + delta, p.clone()))
            .collect(),
    )
    .unwrap()
}

fn pass(line: &str) {
    println!("acceptance {line}: PASS");
}

// --- criterion 1: ISF round trip -------------------------------------------

fn report_c1() -> String {
    let mut rng = SplitMix64::new(0xC1);
    let mut ok = 0usize;
    for _ in 0..10_000 {
        let d = random_dist(&mut rng, 8);
        assert_eq!(dist_from_isf(&d.isf()).unwrap(), d, "round trip must be exact");
        ok += 1;
    }
    format!("c1 round-trip exact on {ok}/10000 seeded distributions")
}

#[test]
fn criterion_01_isf_round_trip() {
    let start = Instant::now();
    let report = report_c1();
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "round-trip budget exceeded: {elapsed:?}"
    );
    pass(&format!("criterion 01 (ISF round trip, {report})"));
}

// --- criterion 2: order-check oracle agreement ------------------------------

fn report_c2() -> String {
    let mut rng = SplitMix64::new(0xC2);
    let mut agreements = 0usize;
    for _ in 0..10_000 {
        let x = random_dist(&mut rng, 8);
        let y = random_dist(&mut rng, 8);
        let a = icx_le(&x, &y).holds();
        let b = icx_le_quantile_oracle(&x, &y).holds();
        let c = hl_st_check(&x, &y).holds();
        assert!(a == b && b == c, "route disagreement on {x:?} vs {y:?}");
        agreements += 1;
    }
    format!("c2 three icx routes agree on {agreements}/10000 pairs")
}

#[test]
fn criterion_02_icx_route_agreement() {
    let report = report_c2();
    pass(&format!("criterion 02 (order-check oracle agreement, {report})"));
}

// --- criterion 3: the separating pair ---------------------------------------

fn report_c3() -> String {
    let icx = icx_le(&phi(2), &phi(4));
    let st = st_le(&phi(2), &phi(4));
    assert!(icx.holds(), "phi_2 ≤icx phi_4 must hold");
    assert!(!st.holds(), "phi_2 ≤st phi_4 must fail");
    format!(
        "c3 separating pair: icx holds, st fails at t = {}",
        stochord::rational::format_ratio(st.witness().unwrap())
    )
}

#[test]
fn criterion_03_separating_pair() {
    let report = report_c3();
    pass(&format!("criterion 03 (separating pair, {report})"));
}

// --- criterion 4: least-bound minimality -------------------------------------

fn report_c4() -> String {
    let mut rng = SplitMix64::new(0xC4);
    let cfg = GeneratorConfig::default();
    let mut trials = 0usize;
    for _ in 0..1_000 {
        let fam = random_family(&mut rng, &cfg);
        let delta = Q::new((1 + rng.next_below(24)).into(), 8.into());
        let z = least_st_upper_bound(&fam).unwrap();
        let w = least_icx_upper_bound(&fam).unwrap();

        // candidates that dominate every member, by construction
        let z_shift = shift_right(&z, &delta);
        let w_shift = shift_right(&w, &delta);
        let mut enlarged = fam.clone();
        enlarged.push(random_dist(&mut rng, cfg.max_support));
        let z_enl = least_st_upper_bound(&enlarged).unwrap();
        let w_enl = least_icx_upper_bound(&enlarged).unwrap();

        for x in &fam {
            assert!(st_le(x, &z_shift).holds());
            assert!(icx_le(x, &w_shift).holds());
        }
        assert!(st_le(&z, &z_shift).holds(), "st minimality vs shift");
        assert!(st_le(&z, &z_enl).holds(), "st minimality vs enlarged bound");
        assert!(icx_le(&w, &w_shift).holds(), "icx minimality vs shift");
        assert!(icx_le(&w, &w_enl).holds(), "icx minimality vs enlarged bound");

        let max_mean = fam.iter().map(|d| d.mean()).max().unwrap();
        assert_eq!(w.mean(), max_mean, "icx bound mean identity");
        trials += 1;
    }
    format!("c4 minimality and exact mean identity on {trials}/1000 trials")
}

#[test]
fn criterion_04_least_bound_minimality() {
    let report = report_c4();
    pass(&format!("criterion 04 (least-bound minimality, {report})"));
}

// --- criterion 5: Hardy-Littlewood chain -------------------------------------

fn report_c5() -> String {
    let mut rng = SplitMix64::new(0xC5);
    let cfg = GeneratorConfig::default();
    let q_levels = [q(3, 2), qi(2), qi(3)];
    let mut trials = 0usize;
    for _ in 0..1_000 {
        let fam = random_family(&mut rng, &cfg);
        let y = least_icx_upper_bound(&fam).unwrap();
        let y_star = y.hl_maximal();
        for x in &fam {
            assert!(
                st_le_dist_curve(x, &y_star).holds(),
                "maximal transform of the icx bound must st-dominate members"
            );
        }
        for level in &q_levels {
            let qf = to_f64(level);
            let constant = (qf / (qf - 1.0)).powf(qf);
            let lhs = y_star.moment(qf);
            let rhs = constant * y.moment(level);
            assert!(
                lhs <= rhs * (1.0 + 1e-9),
                "maximal inequality violated at q = {qf}: {lhs} > {rhs}"
            );
        }
        trials += 1;
    }

    // closed-form spot checks on phi_2
    let m = phi(2).hl_maximal();
    let mean = m.mean();
    let expect = 1.0 + std::f64::consts::LN_2;
    assert!(
        (mean - expect).abs() <= 1e-12 * expect,
        "mean of the maximal transform of phi_2: {mean}"
    );
    let second = m.moment_int(2);
    assert!((second - 3.0).abs() <= 1e-12, "second moment: {second}");
    assert!(second <= 8.0, "(q/(q-1))^q bound at q = 2");
    format!(
        "c5 maximal chain on {trials}/1000 families; E X* = 1 + ln 2, E (X*)^2 = 3 ≤ 8"
    )
}

#[test]
fn criterion_05_hardy_littlewood_chain() {
    let report = report_c5();
    pass(&format!("criterion 05 (Hardy-Littlewood chain, {report})"));
}

// --- criterion 6: moment identity --------------------------------------------

fn report_c6() -> String {
    let mut rng = SplitMix64::new(0xC6);
    let mut checked = 0usize;
    for _ in 0..10_000 {
        let d = random_dist(&mut rng, 8);
        assert_eq!(d.moment_via_isf_int(2), d.moment_int(2));
        assert_eq!(d.moment_via_isf_int(3), d.moment_int(3));
        let direct = d.moment(&q(3, 2));
        let via = d.moment_via_isf(1.5);
        assert!(
            (direct - via).abs() <= 1e-9 * direct.max(1e-30),
            "fractional moment identity: {direct} vs {via}"
        );
        checked += 1;
    }
    format!("c6 ISF moment identity exact (p = 2, 3) and 1e-9-tight (p = 3/2) on {checked}/10000")
}

#[test]
fn criterion_06_moment_identity() {
    let report = report_c6();
    pass(&format!("criterion 06 (moment identity via ISF, {report})"));
}

// --- criterion 7: Wasserstein oracle equivalence ------------------------------

fn report_c7() -> String {
    let mut rng = SplitMix64::new(0xC7);
    let mut checked = 0usize;
    for _ in 0..2_000 {
        let x = random_dist(&mut rng, 8);
        let y = random_dist(&mut rng, 8);
        for p in [qi(1), qi(2)] {
            let direct = wasserstein(&x, &y, &p);
            let (lp, coupling) = wasserstein_lp_oracle(&x, &y, &p).unwrap();
            assert!(
                (direct - lp).abs() <= 1e-9,
                "quantile identity vs LP: {direct} vs {lp}"
            );
            assert!(coupling.marginals_match(&x, &y));
        }
        checked += 1;
    }
    assert_eq!(wasserstein_pow_int(&phi(2), &phi(4), 1), qi(1));
    assert_eq!(wasserstein_pow_int(&phi(2), &phi(4), 2), qi(2));
    let w2 = wasserstein(&phi(2), &phi(4), &qi(2));
    assert!((w2 - 2f64.sqrt()).abs() <= 1e-15);
    format!("c7 quantile identity matches the LP oracle on {checked}/2000 pairs; W1 = 1, W2 = sqrt 2")
}

#[test]
fn criterion_07_wasserstein_oracle() {
    let report = report_c7();
    pass(&format!("criterion 07 (Wasserstein oracle equivalence, {report})"));
}

// --- criterion 8: Prohorov oracle equivalence ---------------------------------

fn report_c8() -> String {
    let mut rng = SplitMix64::new(0xC8);
    let mut checked = 0usize;
    for _ in 0..500 {
        let x = random_dist(&mut rng, 6);
        let y = random_dist(&mut rng, 6);
        let exact = to_f64(&prohorov_bruteforce(&x, &y).unwrap());
        let flow = prohorov(&x, &y).unwrap();
        assert!(
            (exact - flow).abs() <= 1e-6,
            "prohorov mismatch: exact {exact} vs flow {flow}"
        );
        checked += 1;
    }
    // spot values: d(delta_0, delta_c) = min(c, 1); d(phi_2, phi_4) = 1/2
    let d0 = DiscreteDist::delta(q_zero());
    assert_eq!(prohorov_bruteforce(&d0, &DiscreteDist::delta(qi(3))).unwrap(), qi(1));
    assert_eq!(
        prohorov_bruteforce(&d0, &DiscreteDist::delta(q(1, 5))).unwrap(),
        q(1, 5)
    );
    assert!((prohorov(&d0, &DiscreteDist::delta(qi(3))).unwrap() - 1.0).abs() <= 1e-6);
    assert_eq!(prohorov_bruteforce(&phi(2), &phi(4)).unwrap(), q(1, 2));
    assert!((prohorov(&phi(2), &phi(4)).unwrap() - 0.5).abs() <= 1e-6);
    format!("c8 bisection matches subset brute force on {checked}/500 pairs; spot values exact")
}

#[test]
fn criterion_08_prohorov_oracle() {
    let report = report_c8();
    pass(&format!("criterion 08 (Prohorov oracle equivalence, {report})"));
}

// --- criterion 9: Wasserstein-moment link -------------------------------------

fn report_c9() -> String {
    let mut rng = SplitMix64::new(0xC9);
    let zero = DiscreteDist::delta(q_zero());
    let mut checked = 0usize;
    for _ in 0..1_000 {
        let x = random_dist(&mut rng, 8);
        for p in [1u32, 2, 3] {
            assert_eq!(
                wasserstein_pow_int(&x, &zero, p),
                x.moment_int(p),
                "p-th power identity must be exact"
            );
            let w = wasserstein(&x, &zero, &qi(p as i64));
            let m = to_f64(&x.moment_int(p)).powf(1.0 / p as f64);
            assert!(
                (w - m).abs() <= 1e-12 * m.max(1e-30),
                "q-Wasserstein to the Dirac at zero vs moment root: {w} vs {m}"
            );
        }
        checked += 1;
    }
    format!("c9 W_q(X, δ0) = (E X^q)^(1/q) exact in the q-th power on {checked}/1000")
}

#[test]
fn criterion_09_wasserstein_moment_link() {
    let report = report_c9();
    pass(&format!("criterion 09 (Wasserstein-moment link, {report})"));
}

// --- criterion 10: counterexample battery -------------------------------------

fn report_c10() -> String {
    let p = q(1, 2);
    let qq = qi(2);
    let report = verify_counterexamples(&p, &qq, 10_000, 1_000_000);
    assert_eq!(report.bullets.len(), 9);
    for b in &report.bullets {
        assert!(b.confirmed, "bullet {} ({}) not confirmed", b.index, b.family);
    }

    // the battery's exact values, asserted independently here
    let phi_fam = FamilySpec::Builtin(BuiltinFamily::phi(10_000));
    assert_eq!(lp_bound(&phi_fam, &q_one()), MomentValue::Finite(qi(1)));
    for t in [qu(1), qu(10), qu(100)] {
        assert_eq!(
            ui_criterion(&phi_fam, &t),
            CriterionValue::Finite(q_one() - &t / qu(10_000))
        );
    }
    let psi_fam = FamilySpec::Builtin(BuiltinFamily::psi(10_000));
    let psi_sup = lp_bound(&psi_fam, &q_one());
    let v = to_f64(psi_sup.finite().expect("finite"));
    assert!((v - 1.0 / 2f64.ln()).abs() <= 1e-12);
    use stochord::dist::ClosedFormDist;
    assert_eq!(
        ClosedFormDist::u_inv_pow(q(1, 2)).moment(&q_one()),
        MomentValue::Finite(qi(2)),
        "E U^(-1/q) = q/(q-1) at q = 2"
    );
    assert_eq!(
        ClosedFormDist::u_inv_pow(qi(1)).moment(&q(1, 2)),
        MomentValue::Finite(qi(2)),
        "E U^(-p) = 1/(1-p) at p = 1/2"
    );
    render_report(&report, ReportFormat::Json)
}

#[test]
fn criterion_10_counterexample_battery() {
    let start = Instant::now();
    let _json = report_c10();
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "battery budget exceeded: {elapsed:?}"
    );
    pass("criterion 10 (counterexample battery, c10 all nine bullets confirmed)");
}

// --- criterion 11: diagram property run ---------------------------------------

fn report_c11() -> String {
    let cfg = VerifyConfig::new(1, 200, q(1, 2), qi(2));
    let report = verify_implications(&cfg);
    assert_eq!(report.edges.len(), 9);
    assert_eq!(
        report.total_edge_violations(),
        0,
        "implication run must be violation-free"
    );
    for e in &report.edges {
        assert_eq!(e.trials, 200);
    }
    render_report(&report, ReportFormat::Json)
}

#[test]
fn criterion_11_diagram_property_run() {
    let start = Instant::now();
    let _json = report_c11();
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "diagram run budget exceeded: {elapsed:?}"
    );
    pass("criterion 11 (diagram property run, c11 zero violations on 200 trials)");
}

// --- criterion 12: determinism -------------------------------------------------

#[test]
fn criterion_12_determinism() {
    let all = || {
        [
            report_c1(),
            report_c2(),
            report_c3(),
            report_c4(),
            report_c5(),
            report_c6(),
            report_c7(),
            report_c8(),
            report_c9(),
            report_c10(),
            report_c11(),
        ]
        .join("\n---\n")
    };
    let first = all();
    let second = all();
    assert_eq!(first, second, "repeated seeded runs must be byte-identical");
    pass("criterion 12 (determinism, c12 criteria 1-11 reports byte-identical across reruns)");
}
