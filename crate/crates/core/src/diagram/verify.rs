use super::generate::{family_fingerprint, random_family, GeneratorConfig};
use super::report::{BulletResult, EdgeResult, EquivalenceResult};
use crate::dist::{ClosedFormDist, DiscreteDist, MomentValue, NumericMoment};
use crate::families::{
    evaluate_node, lp_bound, stlp_criterion, ui_criterion, BuiltinFamily, CriterionValue,
    DiagnoseParams, FamilySpec, NodeId, Status,
};
use crate::orders::{
    comonotone_coupling, hl_st_check, icx_le, icx_le_quantile_oracle, least_icx_upper_bound,
    least_st_upper_bound, st_le, st_le_dist_curve,
};
use crate::rational::{format_ratio, pow_q, q_one, q_zero, qu, to_f64, Q};
use crate::rng::SplitMix64;
use serde::Serialize;

/// Minimum doubling-window increment certifying the `Σ 1/(n log n)` type
/// divergence on desk-scale grids.
pub const DIVERGENCE_MIN_INCREMENT: f64 = 0.03;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: u32,
    pub p: Q,
    pub q: Q,
    pub generator: GeneratorConfig,
}

impl VerifyConfig {
    pub fn new(seed: u64, trials: u32, p: Q, q: Q) -> Self {
        assert!(p > q_zero() && p < q_one(), "requires 0 < p < 1");
        assert!(q > q_one(), "requires q > 1");
        assert!(trials >= 1);
        Self {
            seed,
            trials,
            p,
            q,
            generator: GeneratorConfig::default(),
        }
    }
}

/// Combined result of the implication run and the counterexample battery.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub p: String,
    pub q: String,
    pub seed: u64,
    pub trials: u32,
    pub edges: Vec<EdgeResult>,
    pub equivalences: Vec<EquivalenceResult>,
    pub bullets: Vec<BulletResult>,
}

impl DiagramReport {
    pub fn total_edge_violations(&self) -> u32 {
        self.edges.iter().map(|e| e.violations).sum::<u32>()
            + self.equivalences.iter().map(|e| e.violations).sum::<u32>()
    }

    pub fn all_bullets_confirmed(&self) -> bool {
        !self.bullets.is_empty() && self.bullets.iter().all(|b| b.confirmed)
    }

    /// Folds the counterexample section of `other` into `self`.
    pub fn merged(mut self, other: DiagramReport) -> DiagramReport {
        self.bullets.extend(other.bullets);
        self
    }
}

struct Tally {
    trials: u32,
    violations: u32,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            trials: 0,
            violations: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, family: &[DiscreteDist]) {
        self.trials += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(family_fingerprint(family));
            }
        }
    }
}

fn shift_right(d: &DiscreteDist, delta: &Q) -> DiscreteDist {
    let atoms = d
        .atoms()
        .iter()
        .map(|(x, p)| (x + delta, p.clone()))
        .collect();
    DiscreteDist::new(atoms).expect("shift preserves validity")
}

/// Verifies the nine downward implications and the structurally checkable
/// row equivalences on seeded random families. Violations are report
/// content; a correct implementation produces none.
pub fn verify_implications(cfg: &VerifyConfig) -> DiagramReport {
    let mut rng = SplitMix64::new(cfg.seed);
    let p = &cfg.p;
    let q = &cfg.q;
    let qf = to_f64(q);
    let hl_constant = (qf / (qf - 1.0)).powf(qf);

    const EDGE_CHECKS: [(&str, &str, &str); 9] = [
        (
            "{|X|} st-bounded by a q-integrable r.v.",
            "{|X|^q} icx-bounded by an integrable r.v.",
            "least st bound Z: X ≤st Z and X^q ≤icx Z^q for every member",
        ),
        (
            "{|X|^q} icx-bounded by an integrable r.v.",
            "{X} bounded in L^q",
            "E X^q ≤ mean of the least icx bound of the q-th powers, exactly",
        ),
        (
            "{X} bounded in L^q",
            "{|X|} st-bounded by an integrable r.v.",
            "Markov envelope: sup survival(t) ≤ min(1, c_q t^{-q}) at all probes",
        ),
        (
            "{|X|} st-bounded by an integrable r.v.",
            "{|X|} icx-bounded by an integrable r.v.",
            "strong order implies increasing convex order against the least st bound",
        ),
        (
            "{|X|} icx-bounded by an integrable r.v.",
            "{X} bounded in L^1",
            "E X ≤ mean of the least icx bound, which equals the max member mean",
        ),
        (
            "{X} bounded in L^1",
            "{|X|} st-bounded by a p-integrable r.v.",
            "Markov envelope: sup survival(t) ≤ min(1, c_1 t^{-1}) at all probes",
        ),
        (
            "{|X|} st-bounded by a p-integrable r.v.",
            "{|X|^p} icx-bounded by an integrable r.v.",
            "least st bound Z: X^p ≤icx Z^p for every member",
        ),
        (
            "{|X|^p} icx-bounded by an integrable r.v.",
            "{X} bounded in L^p",
            "E X^p ≤ mean of the least icx bound of the p-th powers, exactly",
        ),
        (
            "{X} bounded in L^p",
            "{|X|} st-bounded by a finite r.v.",
            "Markov envelope at level p plus existence of the least st bound",
        ),
    ];

    let mut edge_tallies: Vec<Tally> = (0..9).map(|_| Tally::new()).collect();
    let mut eq_tallies: Vec<Tally> = (0..7).map(|_| Tally::new()).collect();

    for _ in 0..cfg.trials {
        let family = random_family(&mut rng, &cfg.generator);
        let delta = Q::new((1 + rng.next_below(24)).into(), 8.into());

        let z_st = least_st_upper_bound(&family).expect("finite families are tight");
        let w_icx = least_icx_upper_bound(&family).expect("finite families are icx-boundable");
        let fam_q: Vec<DiscreteDist> = family.iter().map(|d| d.pow(q)).collect();
        let fam_p: Vec<DiscreteDist> = family.iter().map(|d| d.pow(p)).collect();
        let z_st_q = z_st.pow(q);
        let z_st_p = z_st.pow(p);
        let w_icx_q = least_icx_upper_bound(&fam_q).expect("valid family");
        let w_icx_p = least_icx_upper_bound(&fam_p).expect("valid family");

        // Markov probe grid: positive atom positions plus one point beyond.
        let mut probes: Vec<Q> = family
            .iter()
            .flat_map(|d| d.atoms().iter().map(|(x, _)| x.clone()))
            .filter(|x| *x > q_zero())
            .collect();
        let beyond = family
            .iter()
            .map(|d| d.max_atom().clone())
            .max()
            .unwrap()
            + q_one();
        probes.push(beyond);
        probes.sort();
        probes.dedup();

        let markov = |level: &Q, c: f64| -> bool {
            probes.iter().all(|t| {
                let bound = (c / pow_q(t, level)).min(1.0);
                family
                    .iter()
                    .all(|d| to_f64(&d.survival().eval(t)) <= bound + 1e-12)
            })
        };

        let c_q: f64 = family.iter().map(|d| d.moment(q)).fold(0.0, f64::max);
        let c_1: f64 = family
            .iter()
            .map(|d| to_f64(&d.mean()))
            .fold(0.0, f64::max);
        let c_p: f64 = family.iter().map(|d| d.moment(p)).fold(0.0, f64::max);

        // edge 1: st-q ⇒ icx of q-th powers
        let ok = family.iter().zip(&fam_q).all(|(x, xq)| {
            st_le(x, &z_st).holds() && icx_le(xq, &z_st_q).holds()
        });
        edge_tallies[0].record(ok, &family);

        // edge 2: icx bound of powers dominates all q-th moments
        let ok = fam_q.iter().all(|xq| xq.mean() <= w_icx_q.mean());
        edge_tallies[1].record(ok, &family);

        // edge 3: L^q bound gives the Markov envelope at level q
        edge_tallies[2].record(markov(q, c_q), &family);

        // edge 4: st implies icx against the same bound
        let ok = family.iter().all(|x| icx_le(x, &z_st).holds());
        edge_tallies[3].record(ok, &family);

        // edge 5: icx bound dominates means; its mean is the max member mean
        let max_mean = family.iter().map(|d| d.mean()).max().unwrap();
        let ok = w_icx.mean() == max_mean
            && family.iter().all(|x| x.mean() <= w_icx.mean());
        edge_tallies[4].record(ok, &family);

        // edge 6: L^1 bound gives the Markov envelope at level 1
        edge_tallies[5].record(markov(&q_one(), c_1), &family);

        // edge 7: st bound controls icx of p-th powers
        let ok = fam_p.iter().all(|xp| icx_le(xp, &z_st_p).holds());
        edge_tallies[6].record(ok, &family);

        // edge 8: icx bound of p-th powers dominates all p-th moments
        let ok = fam_p.iter().all(|xp| xp.mean() <= w_icx_p.mean());
        edge_tallies[7].record(ok, &family);

        // edge 9: L^p Markov envelope plus tightness via the least st bound
        let ok = markov(p, c_p) && family.iter().all(|x| st_le(x, &z_st).holds());
        edge_tallies[8].record(ok, &family);

        // equivalence 1: maximal-transform pipeline for the top row
        let y_star = w_icx.hl_maximal();
        let pipeline_ok = family
            .iter()
            .all(|x| st_le_dist_curve(x, &y_star).holds())
            && y_star.moment(qf) <= hl_constant * w_icx.moment(q) * (1.0 + 1e-9);
        eq_tallies[0].record(pipeline_ok, &family);

        // equivalence 2: UI criterion equals the ISF of the least icx bound
        let fam_spec = FamilySpec::Finite(family.clone());
        let w_isf = w_icx.isf();
        let ui_ok = w_isf.knots().iter().all(|(t, _)| {
            ui_criterion(&fam_spec, t) == CriterionValue::Finite(w_isf.eval(t))
        }) && family.iter().all(|d| {
            d.isf().knots().iter().all(|(t, _)| {
                ui_criterion(&fam_spec, t) == CriterionValue::Finite(w_isf.eval(t))
            })
        });
        eq_tallies[1].record(ui_ok, &family);

        // equivalence 3: tightness criterion equals the envelope survival
        let z_surv = z_st.survival();
        let tight_ok = {
            use crate::families::tight_criterion;
            let mut grid: Vec<Q> = family
                .iter()
                .flat_map(|d| d.atoms().iter().map(|(x, _)| x.clone()))
                .collect();
            grid.push(q_zero());
            grid.sort();
            grid.dedup();
            grid.iter()
                .all(|t| tight_criterion(&fam_spec, t) == z_surv.eval(t))
        };
        eq_tallies[2].record(tight_ok, &family);

        // equivalence 4: the three icx decision routes agree pairwise
        let mut routes_ok = true;
        for x in &family {
            for y in &family {
                let a = icx_le(x, y).holds();
                let b = icx_le_quantile_oracle(x, y).holds();
                let c = hl_st_check(x, y).holds();
                if a != b || b != c {
                    routes_ok = false;
                }
            }
        }
        eq_tallies[3].record(routes_ok, &family);

        // equivalence 5: L^q norm equals the q-Wasserstein distance to δ₀
        let zero = DiscreteDist::delta(q_zero());
        let wass_ok = family.iter().all(|x| {
            let w = crate::metrics::wasserstein(x, &zero, q);
            let m = x.moment(q).powf(1.0 / qf);
            (w - m).abs() <= 1e-12 * m.max(1.0)
        });
        eq_tallies[4].record(wass_ok, &family);

        // equivalence 6: minimality of the least st bound against dominating
        // candidates (a shifted copy and a bound of an enlarged family)
        let candidate_a = shift_right(&z_st, &delta);
        let extra = super::generate::random_dist(&mut rng, cfg.generator.max_support);
        let mut enlarged = family.clone();
        enlarged.push(extra);
        let candidate_b = least_st_upper_bound(&enlarged).expect("tight");
        // the st ordering of bound and candidate realizes almost surely
        let coupling_ordered = comonotone_coupling(&z_st, &candidate_a)
            .iter()
            .all(|cell| cell.x <= cell.y);
        let st_min_ok = family.iter().all(|x| st_le(x, &candidate_a).holds())
            && st_le(&z_st, &candidate_a).holds()
            && st_le(&z_st, &candidate_b).holds()
            && coupling_ordered;
        eq_tallies[5].record(st_min_ok, &family);

        // equivalence 7: minimality of the least icx bound, same scheme
        let candidate_c = shift_right(&w_icx, &delta);
        let candidate_d = least_icx_upper_bound(&enlarged).expect("valid");
        let icx_min_ok = family.iter().all(|x| icx_le(x, &candidate_c).holds())
            && icx_le(&w_icx, &candidate_c).holds()
            && icx_le(&w_icx, &candidate_d).holds();
        eq_tallies[6].record(icx_min_ok, &family);
    }

    let edges = EDGE_CHECKS
        .iter()
        .enumerate()
        .map(|(i, (from, to, check))| EdgeResult {
            index: i + 1,
            from,
            to,
            check,
            trials: edge_tallies[i].trials,
            violations: edge_tallies[i].violations,
            first_counterexample: edge_tallies[i].first.clone(),
        })
        .collect();

    const EQ_CHECKS: [(&str, &str, bool); 7] = [
        (
            "maximal-transform pipeline",
            "members ≤st X* of the least icx bound; E(X*)^q ≤ (q/(q-1))^q E X^q",
            true,
        ),
        (
            "uniform integrability ⇔ icx bound",
            "sup of member ISFs equals the ISF of the least icx bound at every knot",
            true,
        ),
        (
            "tightness ⇔ st bound",
            "sup of member survivals equals the survival of the least st bound",
            true,
        ),
        (
            "icx decision routes",
            "survival-side, quantile-side and maximal-transform checks agree",
            false,
        ),
        (
            "Wasserstein-moment link",
            "W_q(X, δ₀) = (E X^q)^{1/q}",
            true,
        ),
        (
            "least st bound minimality",
            "every dominating candidate st-dominates the constructed bound",
            false,
        ),
        (
            "least icx bound minimality",
            "every dominating candidate icx-dominates the constructed bound",
            false,
        ),
    ];
    let equivalences = EQ_CHECKS
        .iter()
        .enumerate()
        .map(|(i, (name, detail, structural))| EquivalenceResult {
            name,
            detail,
            structural: *structural,
            trials: eq_tallies[i].trials,
            violations: eq_tallies[i].violations,
            first_counterexample: eq_tallies[i].first.clone(),
        })
        .collect();

    DiagramReport {
        p: format_ratio(p),
        q: format_ratio(q),
        seed: cfg.seed,
        trials: cfg.trials,
        edges,
        equivalences,
        bullets: Vec::new(),
    }
}

/// Runs the nine counterexample bullets: exact closed-form values where the
/// catalog provides them, divergence trends from doubling windows otherwise.
/// `n_scan` truncates the pointwise scans (UI, moment suprema); the integral
/// divergence windows scale with `n_integral`.
pub fn verify_counterexamples(p: &Q, q: &Q, n_scan: u32, n_integral: u32) -> DiagramReport {
    assert!(*p > q_zero() && *p < q_one(), "requires 0 < p < 1");
    assert!(*q > q_one(), "requires q > 1");
    assert!(n_scan >= 1000, "scans need N ≥ 10^3");
    let params = DiagnoseParams::with_orders(p.clone(), q.clone());
    let inv_p = q_one() / p;
    let inv_q = q_one() / q;

    let mut bullets = Vec::with_capacity(9);

    // Helper: node status of a family under the configured orders.
    let status_of = |fam: &FamilySpec, node: NodeId| evaluate_node(fam, node, &params).status;

    // Helper: stlp divergence evidence on windows tied to the truncation.
    let stlp_increments = |fam: &FamilySpec, level: &Q| -> Vec<(f64, f64)> {
        let base_cap = (n_integral / 16).max(2) as f64;
        (0..4)
            .map(|k| {
                let t = base_cap * 2f64.powi(k);
                let inc =
                    stlp_criterion(fam, level, 2.0 * t) - stlp_criterion(fam, level, t);
                (t, inc)
            })
            .collect()
    };

    // bullet 1: {e^{1/U}} is st-bounded by a finite r.v. but not bounded in L^p
    {
        let fam = FamilySpec::Builtin(BuiltinFamily::exp_inv_u());
        let d = ClosedFormDist::ExpInvU;
        let tight_ok = status_of(&fam, NodeId::Tight) == Status::Holds
            && d.survival(1e12) < d.survival(10.0);
        let lp_fails = status_of(&fam, NodeId::BoundedLp) == Status::Fails
            && d.moment(p) == MomentValue::Diverges
            && d.moment_numeric(to_f64(p)) == NumericMoment::Diverges;
        bullets.push(BulletResult {
            index: 1,
            family: "{e^{1/U}}".into(),
            claim: "st-bounded by a finite r.v. but not bounded in L^p".into(),
            blocks_reversal_of_edge: 9,
            confirmed: tight_ok && lp_fails,
            evidence: vec![
                format!("survival(10) = {:.6}, survival(1e12) = {:.6}", d.survival(10.0), d.survival(1e12)),
                "truncated p-th moments grow without bound (divergence detector fired)".into(),
            ],
        });
    }

    // bullet 2: {phi_n^{1/p}} is bounded in L^p but not uniformly p-integrable
    {
        let fam = FamilySpec::Builtin(BuiltinFamily::phi_pow(inv_p.clone(), n_scan));
        let lp_exact = lp_bound(&fam, p) == MomentValue::Finite(q_one());
        // UI criterion of the p-th powers is the phi criterion: 1 - t/N exactly
        let base = FamilySpec::Builtin(BuiltinFamily::phi(n_scan));
        let nq = qu(n_scan as u64);
        let ui_exact = [qu(1), qu(10), qu(100)].iter().all(|t| {
            ui_criterion(&base, t) == CriterionValue::Finite(q_one() - t / &nq)
        });
        let confirmed = lp_exact
            && ui_exact
            && status_of(&fam, NodeId::BoundedLp) == Status::Holds
            && status_of(&fam, NodeId::UniformlyPIntegrable) == Status::Fails;
        bullets.push(BulletResult {
            index: 2,
            family: "{phi_n^{1/p}}".into(),
            claim: "bounded in L^p but not uniformly p-integrable".into(),
            blocks_reversal_of_edge: 8,
            confirmed,
            evidence: vec![
                "sup_n E (phi_n^{1/p})^p = 1 exactly".into(),
                format!("UI criterion of the p-th powers ≡ 1 - t/N for t < N = {n_scan}"),
            ],
        });
    }

    // bullet 3: {psi_n^{1/p}} is uniformly p-integrable but not st-bounded in L^p
    {
        let fam = FamilySpec::Builtin(BuiltinFamily::psi_pow(inv_p.clone(), n_integral));
        let scan_fam = FamilySpec::Builtin(BuiltinFamily::psi_pow(inv_p.clone(), n_scan));
        let ui_holds = status_of(&scan_fam, NodeId::UniformlyPIntegrable) == Status::Holds;
        let incs = stlp_increments(&fam, p);
        let diverges = incs.iter().all(|(_, inc)| *inc >= DIVERGENCE_MIN_INCREMENT);
        let confirmed = ui_holds
            && diverges
            && status_of(&scan_fam, NodeId::StBoundedP) == Status::Fails;
        bullets.push(BulletResult {
            index: 3,
            family: "{psi_n^{1/p}}".into(),
            claim: "uniformly p-integrable but not st-bounded by a r.v. in L^p".into(),
            blocks_reversal_of_edge: 7,
            confirmed,
            evidence: incs
                .iter()
                .map(|(t, inc)| format!("stlp increment on [{t:.0}, {:.0}] = {inc:.4}", 2.0 * t))
                .collect(),
        });
    }

    // bullet 4: {U^{-1}} is st-bounded by a r.v. in L^p but not bounded in L^1
    {
        let d = ClosedFormDist::u_inv_pow(q_one());
        let fam = FamilySpec::Builtin(BuiltinFamily::u_inv_pow(q_one()));
        let expected = q_one() / (q_one() - p);
        let lp_exact = d.moment(p) == MomentValue::Finite(expected.clone());
        let l1_diverges = d.moment(&q_one()) == MomentValue::Diverges
            && d.moment_numeric(1.0) == NumericMoment::Diverges;
        let confirmed = lp_exact
            && l1_diverges
            && status_of(&fam, NodeId::StBoundedP) == Status::Holds
            && status_of(&fam, NodeId::BoundedL1) == Status::Fails;
        bullets.push(BulletResult {
            index: 4,
            family: "{U^{-1}}".into(),
            claim: "st-bounded by a r.v. in L^p but not bounded in L^1".into(),
            blocks_reversal_of_edge: 6,
            confirmed,
            evidence: vec![
                format!("E U^{{-p}} = 1/(1-p) = {} exactly", format_ratio(&expected)),
                "E U^{-1} diverges (analytic fact and numeric detector agree)".into(),
            ],
        });
    }

    // bullet 5: {phi_n} is bounded in L^1 but not uniformly integrable
    {
        let fam = FamilySpec::Builtin(BuiltinFamily::phi(n_scan));
        let l1_exact = lp_bound(&fam, &q_one()) == MomentValue::Finite(q_one());
        let nq = qu(n_scan as u64);
        let ui_exact = [qu(1), qu(7), qu(500)].iter().all(|t| {
            ui_criterion(&fam, t) == CriterionValue::Finite(q_one() - t / &nq)
        });
        // the raw uniform-integrability criterion: E X_n 1(X_n > t) is
        // exactly 1 for every member beyond the cut
        let tail_mass_one = [10u32, 100, 5000].iter().all(|&t| {
            use crate::families::{member_mass, member_value, BuiltinBase};
            (t + 1..=t + 3)
                .all(|n| member_mass(BuiltinBase::Phi, n) * member_value(&q_one(), n) == q_one())
        });
        let confirmed = l1_exact
            && ui_exact
            && tail_mass_one
            && status_of(&fam, NodeId::BoundedL1) == Status::Holds
            && status_of(&fam, NodeId::UniformlyIntegrable) == Status::Fails;
        bullets.push(BulletResult {
            index: 5,
            family: "{phi_n}".into(),
            claim: "bounded in L^1 but not uniformly integrable".into(),
            blocks_reversal_of_edge: 5,
            confirmed,
            evidence: vec![
                "E phi_n = 1 for every n, exactly".into(),
                format!("UI criterion ≡ 1 - t/N for t < N = {n_scan}, exactly"),
            ],
        });
    }

    // bullet 6: {psi_n} is uniformly integrable but not st-bounded by an integrable r.v.
    {
        let fam = FamilySpec::Builtin(BuiltinFamily::psi(n_integral));
        let scan_fam = FamilySpec::Builtin(BuiltinFamily::psi(n_scan));
        let sup_mean = lp_bound(&scan_fam, &q_one());
        let sup_ok = match &sup_mean {
            MomentValue::Finite(v) => (to_f64(v) - 1.0 / 2f64.ln()).abs() < 1e-12,
            MomentValue::Diverges => false,
        };
        let ui_holds = status_of(&scan_fam, NodeId::UniformlyIntegrable) == Status::Holds;
        let incs = stlp_increments(&fam, &q_one());
        let diverges = incs.iter().all(|(_, inc)| *inc >= DIVERGENCE_MIN_INCREMENT);
        let confirmed = sup_ok
            && ui_holds
            && diverges
            && status_of(&scan_fam, NodeId::StBoundedIntegrable) == Status::Fails;
        bullets.push(BulletResult {
            index: 6,
            family: "{psi_n}".into(),
            claim: "uniformly integrable but not st-bounded by an integrable r.v.".into(),
            blocks_reversal_of_edge: 4,
            confirmed,
            evidence: {
                let mut ev = vec!["sup_n E psi_n = 1/ln 2 (attained at n = 2)".into()];
                ev.extend(incs.iter().map(|(t, inc)| {
                    format!("stlp increment on [{t:.0}, {:.0}] = {inc:.4}", 2.0 * t)
                }));
                ev
            },
        });
    }

    // bullet 7: {U^{-1/q}} is st-bounded by an integrable r.v. but not bounded in L^q
    {
        let d = ClosedFormDist::u_inv_pow(inv_q.clone());
        let fam = FamilySpec::Builtin(BuiltinFamily::u_inv_pow(inv_q.clone()));
        let expected = q.clone() / (q.clone() - q_one()); // q/(q-1)
        let mean_exact = d.moment(&q_one()) == MomentValue::Finite(expected.clone());
        let lq_diverges = d.moment(q) == MomentValue::Diverges
            && d.moment_numeric(to_f64(q)) == NumericMoment::Diverges;
        let confirmed = mean_exact
            && lq_diverges
            && status_of(&fam, NodeId::StBoundedIntegrable) == Status::Holds
            && status_of(&fam, NodeId::BoundedLq) == Status::Fails;
        bullets.push(BulletResult {
            index: 7,
            family: "{U^{-1/q}}".into(),
            claim: "st-bounded by an integrable r.v. but not bounded in L^q".into(),
            blocks_reversal_of_edge: 3,
            confirmed,
            evidence: vec![
                format!("E U^{{-1/q}} = q/(q-1) = {} exactly", format_ratio(&expected)),
                "E (U^{-1/q})^q = E U^{-1} diverges".into(),
            ],
        });
    }

    // bullet 8: {phi_n^{1/q}} is bounded in L^q but not uniformly q-integrable
    {
        let fam = FamilySpec::Builtin(BuiltinFamily::phi_pow(inv_q.clone(), n_scan));
        let lq_exact = lp_bound(&fam, q) == MomentValue::Finite(q_one());
        let confirmed = lq_exact
            && status_of(&fam, NodeId::BoundedLq) == Status::Holds
            && status_of(&fam, NodeId::UniformlyQIntegrable) == Status::Fails;
        bullets.push(BulletResult {
            index: 8,
            family: "{phi_n^{1/q}}".into(),
            claim: "bounded in L^q but not uniformly q-integrable".into(),
            blocks_reversal_of_edge: 2,
            confirmed,
            evidence: vec![
                "sup_n E (phi_n^{1/q})^q = 1 exactly".into(),
                "UI criterion of the q-th powers ≡ 1 - t/N, as in bullet 5".into(),
            ],
        });
    }

    // bullet 9: {psi_n^{1/q}} is uniformly q-integrable but not st-bounded in L^q
    {
        let fam = FamilySpec::Builtin(BuiltinFamily::psi_pow(inv_q.clone(), n_integral));
        let scan_fam = FamilySpec::Builtin(BuiltinFamily::psi_pow(inv_q.clone(), n_scan));
        let ui_holds = status_of(&scan_fam, NodeId::UniformlyQIntegrable) == Status::Holds;
        let incs = stlp_increments(&fam, q);
        let diverges = incs.iter().all(|(_, inc)| *inc >= DIVERGENCE_MIN_INCREMENT);
        let confirmed = ui_holds
            && diverges
            && status_of(&scan_fam, NodeId::StBoundedQ) == Status::Fails;
        bullets.push(BulletResult {
            index: 9,
            family: "{psi_n^{1/q}}".into(),
            claim: "uniformly q-integrable but not st-bounded by a r.v. in L^q".into(),
            blocks_reversal_of_edge: 1,
            confirmed,
            evidence: incs
                .iter()
                .map(|(t, inc)| format!("stlp increment on [{t:.0}, {:.0}] = {inc:.4}", 2.0 * t))
                .collect(),
        });
    }

    DiagramReport {
        p: format_ratio(p),
        q: format_ratio(q),
        seed: 0,
        trials: 0,
        edges: Vec::new(),
        equivalences: Vec::new(),
        bullets,
    }
}
