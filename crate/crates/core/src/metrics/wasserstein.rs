use super::flow::FlowNetwork;
use super::MetricError;
use crate::dist::DiscreteDist;
use crate::rational::{pow_i, q_abs, q_from_f64, q_zero, to_f64, Q};
use num_traits::{ToPrimitive, Zero};

const ORACLE_SUPPORT_LIMIT: usize = 64;

/// Joint distribution over atom pairs with prescribed marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coupling {
    /// `(x, y, mass)` entries with positive mass summing to one.
    pub entries: Vec<(Q, Q, Q)>,
}

fn accumulate(mut items: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    items.sort_by(|a, b| a.0.cmp(&b.0));
    let mut acc: Vec<(Q, Q)> = Vec::new();
    for (pos, mass) in items {
        match acc.last_mut() {
            Some(last) if last.0 == pos => last.1 += mass,
            _ => acc.push((pos, mass)),
        }
    }
    acc
}

impl Coupling {
    /// Checks that both coordinate projections reproduce the inputs exactly.
    pub fn marginals_match(&self, x: &DiscreteDist, y: &DiscreteDist) -> bool {
        let first = accumulate(
            self.entries
                .iter()
                .map(|(a, _, m)| (a.clone(), m.clone()))
                .collect(),
        );
        let second = accumulate(
            self.entries
                .iter()
                .map(|(_, b, m)| (b.clone(), m.clone()))
                .collect(),
        );
        first == x.atoms() && second == y.atoms()
    }
}

/// Walks the merged cumulative partition; on each cell both quantiles are
/// constant, so `∫₀¹ g(F_X⁻¹(u), F_Y⁻¹(u)) du` is an exact finite sum.
fn quantile_cells(x: &DiscreteDist, y: &DiscreteDist) -> Vec<(Q, Q, Q)> {
    let cx = x.cumulative();
    let cy = y.cumulative();
    let mut cells = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    let mut lo = q_zero();
    while i < cx.len() && j < cy.len() {
        let b = cx[i].clone().min(cy[j].clone());
        cells.push((
            &b - &lo,
            x.atoms()[i].0.clone(),
            y.atoms()[j].0.clone(),
        ));
        if cx[i] == b {
            i += 1;
        }
        if cy[j] == b {
            j += 1;
        }
        lo = b;
    }
    cells
}

/// Exact `∫₀¹ |F_X⁻¹(u) − F_Y⁻¹(u)|^p du` for integer `p ≥ 1`
/// (the p-th power of the Wasserstein distance).
pub fn wasserstein_pow_int(x: &DiscreteDist, y: &DiscreteDist, p: u32) -> Q {
    assert!(p >= 1);
    quantile_cells(x, y)
        .into_iter()
        .map(|(w, qx, qy)| pow_i(&q_abs(&(qx - qy)), p as i32) * w)
        .sum()
}

/// p-Wasserstein distance via the one-dimensional quantile identity, exact on
/// the merged cumulative partition for integer `p` and floating point for
/// fractional `p ≥ 1`.
pub fn wasserstein(x: &DiscreteDist, y: &DiscreteDist, p: &Q) -> f64 {
    assert!(*p >= Q::from_integer(1.into()), "wasserstein needs p >= 1");
    if p.is_integer() {
        if let Some(k) = p.to_u32() {
            let powed = wasserstein_pow_int(x, y, k);
            return to_f64(&powed).powf(1.0 / k as f64);
        }
    }
    let pf = to_f64(p);
    let total: f64 = quantile_cells(x, y)
        .into_iter()
        .map(|(w, qx, qy)| to_f64(&q_abs(&(qx - qy))).powf(pf) * to_f64(&w))
        .sum();
    total.powf(1.0 / pf)
}

/// Transportation-problem oracle: solves
/// `min Σ |xᵢ−yⱼ|^p γᵢⱼ` over couplings by exact min-cost flow and returns
/// the distance together with an optimal coupling. Restricted to supports of
/// at most 64 atoms per side.
pub fn wasserstein_lp_oracle(
    x: &DiscreteDist,
    y: &DiscreteDist,
    p: &Q,
) -> Result<(f64, Coupling), MetricError> {
    let (powed, coupling) = wasserstein_pow_lp(x, y, p)?;
    Ok((to_f64(&powed).powf(1.0 / to_f64(p)), coupling))
}

/// Exact p-th-power optimum of the transportation LP (costs are exact for
/// integer `p`, verbatim float promotions otherwise).
pub fn wasserstein_pow_lp(
    x: &DiscreteDist,
    y: &DiscreteDist,
    p: &Q,
) -> Result<(Q, Coupling), MetricError> {
    for d in [x, y] {
        if d.support_size() > ORACLE_SUPPORT_LIMIT {
            return Err(MetricError::SupportTooLarge {
                got: d.support_size(),
                limit: ORACLE_SUPPORT_LIMIT,
            });
        }
    }
    let m = x.support_size();
    let k = y.support_size();
    let (src, sink) = (0usize, m + k + 1);
    let mut net = FlowNetwork::new(m + k + 2);
    for (i, (_, mass)) in x.atoms().iter().enumerate() {
        net.add_edge(src, 1 + i, mass.clone(), q_zero());
    }
    let mut middle = Vec::with_capacity(m * k);
    for (i, (xi, mass_x)) in x.atoms().iter().enumerate() {
        for (j, (yj, _)) in y.atoms().iter().enumerate() {
            let diff = q_abs(&(xi - yj));
            let cost = if p.is_integer() {
                match p.to_i32() {
                    Some(e) => pow_i(&diff, e),
                    None => q_from_f64(to_f64(&diff).powf(to_f64(p))),
                }
            } else {
                q_from_f64(to_f64(&diff).powf(to_f64(p)))
            };
            let e = net.add_edge(1 + i, 1 + m + j, mass_x.clone(), cost);
            middle.push((e, i, j));
        }
    }
    for (j, (_, mass)) in y.atoms().iter().enumerate() {
        net.add_edge(1 + m + j, sink, mass.clone(), q_zero());
    }
    let (flow, cost) = net.min_cost_max_flow(src, sink);
    if flow != Q::from_integer(1.into()) {
        return Err(MetricError::Internal(
            "transportation network did not ship unit mass".into(),
        ));
    }
    let mut entries = Vec::new();
    for (e, i, j) in middle {
        let f = net.flow_on(e);
        if !f.is_zero() {
            entries.push((x.atoms()[i].0.clone(), y.atoms()[j].0.clone(), f));
        }
    }
    Ok((cost, Coupling { entries }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn phi(n: i64) -> DiscreteDist {
        DiscreteDist::new(vec![(qi(0), qi(1) - q(1, n)), (qi(n), q(1, n))]).unwrap()
    }

    #[test]
    fn dirac_pair_distance_is_the_gap() {
        let a = DiscreteDist::delta(qi(0));
        let b = DiscreteDist::delta(qi(3));
        for p in [qi(1), qi(2), q(3, 2)] {
            assert!((wasserstein(&a, &b, &p) - 3.0).abs() < 1e-12);
        }
        let (v, c) = wasserstein_lp_oracle(&a, &b, &qi(1)).unwrap();
        assert!((v - 3.0).abs() < 1e-12);
        assert_eq!(c.entries, vec![(qi(0), qi(3), qi(1))]);
    }

    #[test]
    fn phi_pair_spot_values() {
        // W_1(phi_2, phi_4) = 1, W_2 = sqrt(2)
        assert_eq!(wasserstein_pow_int(&phi(2), &phi(4), 1), qi(1));
        assert_eq!(wasserstein_pow_int(&phi(2), &phi(4), 2), qi(2));
        assert!((wasserstein(&phi(2), &phi(4), &qi(2)) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lp_oracle_matches_quantile_identity_exactly() {
        let x = DiscreteDist::new(vec![(qi(0), q(1, 3)), (qi(1), q(1, 3)), (qi(5), q(1, 3))])
            .unwrap();
        let y = phi(4);
        for p in [1u32, 2] {
            let direct = wasserstein_pow_int(&x, &y, p);
            let (lp, coupling) = wasserstein_pow_lp(&x, &y, &qi(p as i64)).unwrap();
            assert_eq!(direct, lp);
            assert!(coupling.marginals_match(&x, &y));
        }
    }

    #[test]
    fn self_distance_is_zero_with_diagonal_coupling() {
        let x = phi(3);
        let (v, c) = wasserstein_lp_oracle(&x, &x, &qi(2)).unwrap();
        assert_eq!(v, 0.0);
        assert!(c.marginals_match(&x, &x));
        assert!(c.entries.iter().all(|(a, b, _)| a == b));
    }

    #[test]
    fn mixed_support_pair_matches_external_lp_value() {
        // W_2^2 = 31/24, frozen from an independent simplex solution of the
        // transportation program on the atom pairs.
        let x = DiscreteDist::new(vec![(qi(0), q(1, 3)), (q(3, 2), q(1, 3)), (qi(4), q(1, 3))])
            .unwrap();
        let y = DiscreteDist::new(vec![(q(1, 2), q(1, 2)), (qi(4), q(1, 2))]).unwrap();
        assert_eq!(wasserstein_pow_int(&x, &y, 2), q(31, 24));
        let (lp, _) = wasserstein_pow_lp(&x, &y, &qi(2)).unwrap();
        assert_eq!(lp, q(31, 24));
    }

    #[test]
    fn moment_link_to_dirac_at_zero() {
        let x = DiscreteDist::new(vec![(q(1, 2), q(1, 4)), (qi(3), q(3, 4))]).unwrap();
        for p in [1u32, 2, 3] {
            assert_eq!(
                wasserstein_pow_int(&x, &DiscreteDist::delta(qi(0)), p),
                x.moment_int(p)
            );
        }
    }

    #[test]
    fn oracle_rejects_large_supports() {
        let n = 65;
        let atoms: Vec<(Q, Q)> = (0..n).map(|i| (qi(i), q(1, n))).collect();
        let big = DiscreteDist::new(atoms).unwrap();
        assert!(matches!(
            wasserstein_lp_oracle(&big, &DiscreteDist::delta(qi(0)), &qi(1)),
            Err(MetricError::SupportTooLarge { got: 65, limit: 64 })
        ));
    }
}
