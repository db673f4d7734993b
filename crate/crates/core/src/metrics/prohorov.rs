use super::flow::FlowNetwork;
use super::MetricError;
use crate::dist::DiscreteDist;
use crate::rational::{q_abs, q_from_f64, q_one, q_zero, Q};

const BRUTE_SUPPORT_LIMIT: usize = 16;

/// Strassen-type feasibility: `μ(B) ≤ ν(B^ε) + ε` for every atom subset `B`,
/// tested as unit max-flow through a bipartite network whose middle edges are
/// the strict ε-neighborhood pairs plus a slack arc of capacity ε.
fn strassen_feasible(mu: &DiscreteDist, nu: &DiscreteDist, eps: &Q) -> bool {
    let m = mu.support_size();
    let k = nu.support_size();
    let (src, slack, sink) = (0usize, m + k + 1, m + k + 2);
    let mut net = FlowNetwork::new(m + k + 3);
    for (i, (_, mass)) in mu.atoms().iter().enumerate() {
        net.add_edge(src, 1 + i, mass.clone(), q_zero());
    }
    for (i, (xi, _)) in mu.atoms().iter().enumerate() {
        for (j, (yj, _)) in nu.atoms().iter().enumerate() {
            // the paper's neighborhoods are open: strict inequality
            if q_abs(&(xi - yj)) < *eps {
                net.add_edge(1 + i, 1 + m + j, q_one(), q_zero());
            }
        }
        net.add_edge(1 + i, slack, q_one(), q_zero());
    }
    net.add_edge(slack, sink, eps.clone(), q_zero());
    for (j, (_, mass)) in nu.atoms().iter().enumerate() {
        net.add_edge(1 + m + j, sink, mass.clone(), q_zero());
    }
    net.max_flow(src, sink) == q_one()
}

fn feasible_both(x: &DiscreteDist, y: &DiscreteDist, eps: &Q) -> bool {
    strassen_feasible(x, y, eps) && strassen_feasible(y, x, eps)
}

/// Prohorov distance by bisection on ε over the monotone Strassen
/// feasibility test, to absolute tolerance `1e-9`. Breaches of the
/// monotonicity invariant abort with an internal-error diagnostic.
pub fn prohorov(x: &DiscreteDist, y: &DiscreteDist) -> Result<f64, MetricError> {
    prohorov_tol(x, y, 1e-9)
}

/// [`prohorov`] with a caller-chosen absolute bisection tolerance.
pub fn prohorov_tol(x: &DiscreteDist, y: &DiscreteDist, tol: f64) -> Result<f64, MetricError> {
    assert!(tol > 0.0 && tol < 1.0, "tolerance must lie in (0,1)");
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    if !feasible_both(x, y, &q_one()) {
        return Err(MetricError::Internal(
            "strassen feasibility must hold at epsilon = 1".into(),
        ));
    }
    if feasible_both(x, y, &q_zero()) {
        return Err(MetricError::Internal(
            "strassen feasibility cannot hold at epsilon = 0 with strict neighborhoods".into(),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible_both(x, y, &q_from_f64(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Monotonicity invariant: the bracket endpoints must still classify.
    if !feasible_both(x, y, &q_from_f64(hi)) || feasible_both(x, y, &q_from_f64(lo)) {
        return Err(MetricError::Internal(
            "strassen feasibility is not monotone in epsilon".into(),
        ));
    }
    Ok(0.5 * (lo + hi))
}

/// Definition-level oracle: exact infimum over the finite candidate set of
/// critical ε values, checking every atom subset in both directions.
/// Restricted to a combined support of 16 atoms.
pub fn prohorov_bruteforce(x: &DiscreteDist, y: &DiscreteDist) -> Result<Q, MetricError> {
    let combined = x.support_size() + y.support_size();
    if combined > BRUTE_SUPPORT_LIMIT {
        return Err(MetricError::SupportTooLarge {
            got: combined,
            limit: BRUTE_SUPPORT_LIMIT,
        });
    }
    let one_direction = |mu: &DiscreteDist, nu: &DiscreteDist| -> Q {
        let m = mu.support_size();
        let mut worst = q_zero();
        for mask in 1u32..(1 << m) {
            let members: Vec<usize> =
                (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let mass_b: Q = members.iter().map(|&i| mu.atoms()[i].1.clone()).sum();
            // Distance from each nu-atom to B, with its mass.
            let mut dists: Vec<(Q, Q)> = nu
                .atoms()
                .iter()
                .map(|(yj, mass)| {
                    let d = members
                        .iter()
                        .map(|&i| q_abs(&(yj - &mu.atoms()[i].0)))
                        .min()
                        .unwrap();
                    (d, mass.clone())
                })
                .collect();
            dists.sort_by(|a, b| a.0.cmp(&b.0));
            // Thresholds t_0 = 0 < t_1 < ...; on (t_k, t_{k+1}] the
            // neighborhood mass is that of atoms with distance <= t_k.
            let mut thresholds: Vec<Q> = vec![q_zero()];
            for (d, _) in &dists {
                if d > thresholds.last().unwrap() {
                    thresholds.push(d.clone());
                }
            }
            let mass_within = |t: &Q| -> Q {
                dists
                    .iter()
                    .filter(|(d, _)| d <= t)
                    .map(|(_, mass)| mass.clone())
                    .sum()
            };
            let mut best: Option<Q> = None;
            for (k, t_k) in thresholds.iter().enumerate() {
                let need = &mass_b - mass_within(t_k);
                let candidate = need.max(t_k.clone());
                let fits = match thresholds.get(k + 1) {
                    Some(next) => candidate <= *next,
                    None => true,
                };
                if fits {
                    best = Some(match best {
                        None => candidate,
                        Some(b) => b.min(candidate),
                    });
                }
            }
            let inf_b = best.expect("last threshold interval always admits a candidate");
            worst = worst.max(inf_b);
        }
        worst
    };
    Ok(one_direction(x, y).max(one_direction(y, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi, to_f64};

    fn phi(n: i64) -> DiscreteDist {
        DiscreteDist::new(vec![(qi(0), qi(1) - q(1, n)), (qi(n), q(1, n))]).unwrap()
    }

    #[test]
    fn self_distance_vanishes() {
        let x = phi(3);
        assert_eq!(prohorov_bruteforce(&x, &x).unwrap(), qi(0));
        assert!(prohorov(&x, &x).unwrap() <= 1e-9);
    }

    #[test]
    fn dirac_pairs() {
        // d(delta_0, delta_c) = min(c, 1): the +eps slack caps the metric at 1.
        let d0 = DiscreteDist::delta(qi(0));
        assert_eq!(prohorov_bruteforce(&d0, &DiscreteDist::delta(qi(3))).unwrap(), qi(1));
        assert_eq!(
            prohorov_bruteforce(&d0, &DiscreteDist::delta(q(1, 5))).unwrap(),
            q(1, 5)
        );
        let flow = prohorov(&d0, &DiscreteDist::delta(q(1, 5))).unwrap();
        assert!((flow - 0.2).abs() < 1e-6);
        let capped = prohorov(&d0, &DiscreteDist::delta(qi(3))).unwrap();
        assert!((capped - 1.0).abs() < 1e-6);
    }

    #[test]
    fn phi_pair_value() {
        // binding constraint: nu({0,4}) = 1 <= mu({0}^eps) + eps = 1/2 + eps
        assert_eq!(prohorov_bruteforce(&phi(2), &phi(4)).unwrap(), q(1, 2));
        let flow = prohorov(&phi(2), &phi(4)).unwrap();
        assert!((flow - 0.5).abs() < 1e-6);
    }

    #[test]
    fn oracle_and_flow_agree_on_mixed_supports() {
        let x = DiscreteDist::new(vec![(qi(0), q(1, 3)), (q(3, 2), q(1, 3)), (qi(4), q(1, 3))])
            .unwrap();
        let y = DiscreteDist::new(vec![(q(1, 2), q(1, 2)), (qi(4), q(1, 2))]).unwrap();
        // 1/2, frozen from an independent grid bisection of the definition
        assert_eq!(prohorov_bruteforce(&x, &y).unwrap(), q(1, 2));
        let exact = to_f64(&prohorov_bruteforce(&x, &y).unwrap());
        let flow = prohorov(&x, &y).unwrap();
        assert!((exact - flow).abs() < 1e-6, "exact {exact} flow {flow}");
    }

    #[test]
    fn brute_force_rejects_large_supports() {
        let atoms: Vec<(Q, Q)> = (0..17).map(|i| (qi(i), q(1, 17))).collect();
        let big = DiscreteDist::new(atoms).unwrap();
        assert!(matches!(
            prohorov_bruteforce(&big, &big),
            Err(MetricError::SupportTooLarge { .. })
        ));
    }

    #[test]
    fn symmetry_is_exact() {
        let x = phi(2);
        let y = DiscreteDist::new(vec![(q(1, 2), q(3, 4)), (qi(5), q(1, 4))]).unwrap();
        assert_eq!(
            prohorov_bruteforce(&x, &y).unwrap(),
            prohorov_bruteforce(&y, &x).unwrap()
        );
        assert_eq!(prohorov(&x, &y).unwrap(), prohorov(&y, &x).unwrap());
    }
}
