//! Property tests for the order-theoretic invariants: every distribution is
//! drawn from the exact rational grid, so the checked identities are
//! equalities, not approximations, unless a tolerance is stated.

use proptest::prelude::*;
use stochord::dist::{dist_from_isf, DiscreteDist};
use stochord::metrics::{
    prohorov, prohorov_bruteforce, wasserstein, wasserstein_lp_oracle, wasserstein_pow_int,
};
use stochord::orders::{
    comonotone_coupling, hl_st_check, icx_le, icx_le_quantile_oracle, least_icx_upper_bound,
    least_st_upper_bound, st_le, st_le_dist_curve,
};
use stochord::pwfun::{max_envelope_convex, min_envelope};
use stochord::rational::{q, q_one, q_zero, qi, to_f64, Q};

fn arb_dist(max_support: usize) -> impl Strategy<Value = DiscreteDist> {
    proptest::collection::vec((0i64..=64, 1i64..=16), 1..=max_support).prop_map(|pairs| {
        let atoms = pairs
            .iter()
            .map(|(k, w)| (q(*k, 8), qi(*w)))
            .collect::<Vec<_>>();
        let total: Q = atoms.iter().map(|(_, w)| w.clone()).sum();
        let normalized = atoms.into_iter().map(|(x, w)| (x, w / &total)).collect();
        DiscreteDist::from_weighted(normalized).expect("grid atoms are valid")
    })
}

fn arb_family(max_members: usize) -> impl Strategy<Value = Vec<DiscreteDist>> {
    proptest::collection::vec(arb_dist(6), 1..=max_members)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn isf_is_the_survival_tail_integral(d in arb_dist(8)) {
        let h = d.isf();
        let s = d.survival();
        for (t, _) in h.knots() {
            prop_assert_eq!(s.integrate(t, None).unwrap(), h.eval(t));
        }
        prop_assert_eq!(h.eval(&q_zero()), d.mean());
        // boundary condition H(t) + t >= H(0) at every knot
        for (t, v) in h.knots() {
            prop_assert!(v + t >= d.mean());
        }
    }

    #[test]
    fn isf_round_trip_is_identity(d in arb_dist(8)) {
        prop_assert_eq!(dist_from_isf(&d.isf()).unwrap(), d);
    }

    #[test]
    fn moment_identity_via_isf(d in arb_dist(8)) {
        prop_assert_eq!(d.moment_via_isf_int(2), d.moment_int(2));
        prop_assert_eq!(d.moment_via_isf_int(3), d.moment_int(3));
        let direct = d.moment(&q(3, 2));
        let via = d.moment_via_isf(1.5);
        prop_assert!((direct - via).abs() <= 1e-9 * direct.max(1e-30));
    }

    #[test]
    fn maximal_transform_dominates(d in arb_dist(8)) {
        let curve = d.hl_maximal();
        prop_assert!(st_le_dist_curve(&d, &curve).holds());
        // pointwise on a probe grid as well
        for k in 1..16 {
            let u = q(k, 16);
            prop_assert!(d.quantile(&u) <= curve.eval(&u));
        }
        prop_assert!(curve.sup() <= d.max_atom().clone());
    }

    #[test]
    fn st_implies_icx(x in arb_dist(6), y in arb_dist(6)) {
        if st_le(&x, &y).holds() {
            prop_assert!(icx_le(&x, &y).holds());
        }
    }

    #[test]
    fn icx_routes_agree(x in arb_dist(6), y in arb_dist(6)) {
        let a = icx_le(&x, &y).holds();
        let b = icx_le_quantile_oracle(&x, &y).holds();
        let c = hl_st_check(&x, &y).holds();
        prop_assert_eq!(a, b);
        prop_assert_eq!(b, c);
    }

    #[test]
    fn icx_antisymmetry(x in arb_dist(6), y in arb_dist(6)) {
        if icx_le(&x, &y).holds() && icx_le(&y, &x).holds() {
            prop_assert_eq!(&x.isf(), &y.isf());
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn envelopes_bound_their_members(fam in arb_family(5)) {
        let cdfs: Vec<_> = fam.iter().map(|d| d.cdf()).collect();
        let env = min_envelope(&cdfs);
        let isfs: Vec<_> = fam.iter().map(|d| d.isf()).collect();
        let sup = max_envelope_convex(&isfs);
        prop_assert!(sup.is_convex());
        prop_assert!(sup.is_nonincreasing());
        for k in 0..=128 {
            let t = q(k, 2);
            let env_at = env.eval(&t);
            prop_assert!(cdfs.iter().all(|f| env_at <= f.eval(&t)));
            prop_assert!(cdfs.iter().any(|f| env_at == f.eval(&t)));
            let sup_at = sup.eval(&t);
            prop_assert!(isfs.iter().all(|h| h.eval(&t) <= sup_at));
        }
    }

    #[test]
    fn least_bounds_dominate_and_are_minimal(fam in arb_family(5), extra in arb_dist(6)) {
        let z = least_st_upper_bound(&fam).unwrap();
        let w = least_icx_upper_bound(&fam).unwrap();
        for x in &fam {
            prop_assert!(st_le(x, &z).holds());
            prop_assert!(icx_le(x, &w).holds());
        }
        // mean identity for the icx bound
        let max_mean = fam.iter().map(|d| d.mean()).max().unwrap();
        prop_assert_eq!(w.mean(), max_mean);
        // any common dominator of the family dominates the constructed bound
        let mut enlarged = fam.clone();
        enlarged.push(extra);
        let z_cand = least_st_upper_bound(&enlarged).unwrap();
        let w_cand = least_icx_upper_bound(&enlarged).unwrap();
        prop_assert!(st_le(&z, &z_cand).holds());
        prop_assert!(icx_le(&w, &w_cand).holds());
    }

    #[test]
    fn coupling_reconstructs_marginals(x in arb_dist(6), y in arb_dist(6)) {
        let cells = comonotone_coupling(&x, &y);
        let total: Q = cells.iter().map(|c| &c.u_hi - &c.u_lo).sum();
        prop_assert_eq!(total, q_one());
        for (pos, mass) in x.atoms() {
            let got: Q = cells.iter().filter(|c| &c.x == pos).map(|c| &c.u_hi - &c.u_lo).sum();
            prop_assert_eq!(&got, mass);
        }
        for (pos, mass) in y.atoms() {
            let got: Q = cells.iter().filter(|c| &c.y == pos).map(|c| &c.u_hi - &c.u_lo).sum();
            prop_assert_eq!(&got, mass);
        }
        if st_le(&x, &y).holds() {
            prop_assert!(cells.iter().all(|c| c.x <= c.y));
        } else {
            prop_assert!(cells.iter().any(|c| c.x > c.y));
        }
    }

    #[test]
    fn wasserstein_agrees_with_lp_oracle(x in arb_dist(8), y in arb_dist(8)) {
        for p in [1u32, 2] {
            let direct = wasserstein(&x, &y, &qi(p as i64));
            let (lp, coupling) = wasserstein_lp_oracle(&x, &y, &qi(p as i64)).unwrap();
            prop_assert!((direct - lp).abs() <= 1e-9);
            prop_assert!(coupling.marginals_match(&x, &y));
        }
    }

    #[test]
    fn wasserstein_moment_link(x in arb_dist(8)) {
        let zero = DiscreteDist::delta(q_zero());
        for p in [1u32, 2, 3] {
            prop_assert_eq!(wasserstein_pow_int(&x, &zero, p), x.moment_int(p));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prohorov_agrees_with_bruteforce(x in arb_dist(6), y in arb_dist(6)) {
        let exact = to_f64(&prohorov_bruteforce(&x, &y).unwrap());
        let flow = prohorov(&x, &y).unwrap();
        prop_assert!((exact - flow).abs() <= 1e-6, "exact {} flow {}", exact, flow);
    }

    #[test]
    fn metric_axioms(x in arb_dist(5), y in arb_dist(5), z in arb_dist(5)) {
        // symmetry is exact for both metrics
        prop_assert_eq!(
            wasserstein_pow_int(&x, &y, 2),
            wasserstein_pow_int(&y, &x, 2)
        );
        prop_assert_eq!(
            prohorov_bruteforce(&x, &y).unwrap(),
            prohorov_bruteforce(&y, &x).unwrap()
        );
        // identity
        prop_assert_eq!(wasserstein_pow_int(&x, &x, 1), q_zero());
        prop_assert_eq!(prohorov_bruteforce(&x, &x).unwrap(), q_zero());
        // triangle inequality within 1e-9
        for p in [qi(1), qi(2)] {
            let xy = wasserstein(&x, &y, &p);
            let xz = wasserstein(&x, &z, &p);
            let zy = wasserstein(&z, &y, &p);
            prop_assert!(xy <= xz + zy + 1e-9);
        }
        let dxy = to_f64(&prohorov_bruteforce(&x, &y).unwrap());
        let dxz = to_f64(&prohorov_bruteforce(&x, &z).unwrap());
        let dzy = to_f64(&prohorov_bruteforce(&z, &y).unwrap());
        prop_assert!(dxy <= dxz + dzy + 1e-9);
    }
}
