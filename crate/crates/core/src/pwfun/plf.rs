use super::PwError;
use crate::rational::{q, q_zero, Q};

/// Continuous piecewise-linear function.
///
/// Defined by its knots and a terminal slope on `[last knot, ∞)`; below the
/// first knot the first segment is extended. Construction canonicalizes by
/// merging collinear adjacent segments, so structural equality is function
/// equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plf {
    knots: Vec<(Q, Q)>,
    terminal_slope: Q,
}

impl Plf {
    /// Builds a PLF from `(knot, value)` pairs with strictly increasing knots.
    pub fn new(knots: Vec<(Q, Q)>, terminal_slope: Q) -> Self {
        assert!(!knots.is_empty(), "a PLF needs at least one knot");
        for w in knots.windows(2) {
            assert!(w[0].0 < w[1].0, "knots must be strictly increasing");
        }
        // Slope following knot i; the slope after the last knot is terminal.
        let slope_after = |ks: &[(Q, Q)], i: usize, terminal: &Q| -> Q {
            if i + 1 < ks.len() {
                (&ks[i + 1].1 - &ks[i].1) / (&ks[i + 1].0 - &ks[i].0)
            } else {
                terminal.clone()
            }
        };
        let mut canonical: Vec<(Q, Q)> = Vec::with_capacity(knots.len());
        for (i, kv) in knots.iter().enumerate() {
            if i == 0 {
                canonical.push(kv.clone());
                continue;
            }
            let prev = canonical.last().unwrap();
            let incoming = (&kv.1 - &prev.1) / (&kv.0 - &prev.0);
            let outgoing = slope_after(&knots, i, &terminal_slope);
            if incoming != outgoing {
                canonical.push(kv.clone());
            }
        }
        Self {
            knots: canonical,
            terminal_slope,
        }
    }

    pub fn constant_zero() -> Self {
        Self::new(vec![(q_zero(), q_zero())], q_zero())
    }

    pub fn knots(&self) -> &[(Q, Q)] {
        &self.knots
    }

    pub fn terminal_slope(&self) -> &Q {
        &self.terminal_slope
    }

    pub fn first_knot(&self) -> &Q {
        &self.knots[0].0
    }

    pub fn last_knot(&self) -> &Q {
        &self.knots[self.knots.len() - 1].0
    }

    /// Value on the final ray at its start.
    pub fn terminal_value(&self) -> &Q {
        &self.knots[self.knots.len() - 1].1
    }

    fn slope_of_segment(&self, i: usize) -> Q {
        if i + 1 < self.knots.len() {
            (&self.knots[i + 1].1 - &self.knots[i].1) / (&self.knots[i + 1].0 - &self.knots[i].0)
        } else {
            self.terminal_slope.clone()
        }
    }

    /// Linear interpolation; extrapolates by the boundary segment slopes.
    pub fn eval(&self, t: &Q) -> Q {
        let n = self.knots.len();
        if *t >= self.knots[n - 1].0 {
            return &self.knots[n - 1].1 + &self.terminal_slope * (t - &self.knots[n - 1].0);
        }
        if *t <= self.knots[0].0 {
            let s = if n > 1 {
                self.slope_of_segment(0)
            } else {
                self.terminal_slope.clone()
            };
            return &self.knots[0].1 + s * (t - &self.knots[0].0);
        }
        let i = match self.knots.binary_search_by(|(kt, _)| kt.cmp(t)) {
            Ok(i) => return self.knots[i].1.clone(),
            Err(i) => i - 1,
        };
        let s = self.slope_of_segment(i);
        &self.knots[i].1 + s * (t - &self.knots[i].0)
    }

    /// Slope of the segment beginning at `t` (right-sided derivative).
    pub fn right_derivative(&self, t: &Q) -> Q {
        let n = self.knots.len();
        if *t >= self.knots[n - 1].0 {
            return self.terminal_slope.clone();
        }
        if *t < self.knots[0].0 {
            return if n > 1 {
                self.slope_of_segment(0)
            } else {
                self.terminal_slope.clone()
            };
        }
        let i = match self.knots.binary_search_by(|(kt, _)| kt.cmp(t)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.slope_of_segment(i)
    }

    /// Segment slopes including the terminal one, in knot order.
    pub fn slopes(&self) -> Vec<Q> {
        (0..self.knots.len()).map(|i| self.slope_of_segment(i)).collect()
    }

    /// Convex iff segment slopes are nondecreasing.
    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.slopes().iter().all(|s| *s <= q_zero())
    }

    /// Exact integral over `[a, b]`; `b = None` means `+∞`, which requires the
    /// function to vanish identically beyond its last knot.
    pub fn integrate(&self, a: &Q, b: Option<&Q>) -> Result<Q, PwError> {
        let upper = match b {
            Some(b) => {
                assert!(b >= a, "integration bounds must satisfy a <= b");
                b.clone()
            }
            None => {
                if !self.terminal_slope.is_zero() || !self.terminal_value().is_zero() {
                    return Err(PwError::DivergentIntegral);
                }
                let last = self.last_knot();
                if last > a {
                    last.clone()
                } else {
                    return Ok(q_zero());
                }
            }
        };
        let mut total = q_zero();
        let mut cursor = a.clone();
        let mut cursor_val = self.eval(&cursor);
        for (kt, kv) in &self.knots {
            if *kt <= cursor {
                continue;
            }
            if *kt >= upper {
                break;
            }
            total += (&cursor_val + kv) * (kt - &cursor) / q(2, 1);
            cursor = kt.clone();
            cursor_val = kv.clone();
        }
        if upper > cursor {
            let end_val = self.eval(&upper);
            total += (&cursor_val + &end_val) * (&upper - &cursor) / q(2, 1);
        }
        Ok(total)
    }
}

use num_traits::Zero;

/// Exact pointwise supremum of convex nonincreasing PLFs sharing a common
/// first knot. The sup is evaluated on the merged knot set augmented with all
/// pairwise segment crossings, which makes the result exact; being a sup of
/// convex functions it is convex again.
pub fn max_envelope_convex(fs: &[Plf]) -> Plf {
    assert!(!fs.is_empty(), "max_envelope_convex of an empty family");
    let start = fs[0].first_knot().clone();
    for f in fs {
        assert!(
            *f.first_knot() == start,
            "envelope inputs must share their first knot"
        );
    }
    let mut candidates: Vec<Q> = fs
        .iter()
        .flat_map(|f| f.knots().iter().map(|(t, _)| t.clone()))
        .collect();

    // Each function as a list of lines valid on an interval (hi=None is +inf).
    type Piece = (Q, Option<Q>, Q, Q); // (lo, hi, intercept, slope)
    let pieces_of = |f: &Plf| -> Vec<Piece> {
        let ks = f.knots();
        let mut out = Vec::with_capacity(ks.len());
        for i in 0..ks.len() {
            let slope = f.slope_of_segment(i);
            let intercept = &ks[i].1 - &slope * &ks[i].0;
            let hi = if i + 1 < ks.len() {
                Some(ks[i + 1].0.clone())
            } else {
                None
            };
            out.push((ks[i].0.clone(), hi, intercept, slope));
        }
        out
    };
    let all_pieces: Vec<Vec<Piece>> = fs.iter().map(pieces_of).collect();
    for (i, pi) in all_pieces.iter().enumerate() {
        for pj in all_pieces.iter().skip(i + 1) {
            for (lo1, hi1, a1, b1) in pi {
                for (lo2, hi2, a2, b2) in pj {
                    if b1 == b2 {
                        continue;
                    }
                    let t = (a2 - a1) / (b1 - b2);
                    let lo = lo1.max(lo2);
                    let in_hi = match (hi1, hi2) {
                        (Some(h1), Some(h2)) => t <= *h1.min(h2),
                        (Some(h), None) | (None, Some(h)) => t <= *h,
                        (None, None) => true,
                    };
                    if t >= *lo && in_hi {
                        candidates.push(t);
                    }
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    let max_at = |t: &Q| -> Q { fs.iter().map(|f| f.eval(t)).max().unwrap() };
    let knots: Vec<(Q, Q)> = candidates.iter().map(|t| (t.clone(), max_at(t))).collect();
    // No crossings beyond the last candidate, so a single line dominates there.
    let last = candidates.last().unwrap();
    let probe = last + q(1, 1);
    let terminal_slope = max_at(&probe) - max_at(last);
    Plf::new(knots, terminal_slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    // ISF of the point mass at c: (c - t)_+ .
    fn isf_delta(c: Q) -> Plf {
        if c.is_zero() {
            Plf::constant_zero()
        } else {
            Plf::new(vec![(qi(0), c.clone()), (c, qi(0))], qi(0))
        }
    }

    // ISF of the two-point law (mass 1/n at n): (1 - t/n)_+ .
    fn isf_phi(n: i64) -> Plf {
        Plf::new(vec![(qi(0), qi(1)), (qi(n), qi(0))], qi(0))
    }

    #[test]
    fn eval_interpolates_and_extends() {
        let h = isf_delta(qi(1));
        assert_eq!(h.eval(&q(1, 2)), q(1, 2));
        assert_eq!(h.eval(&qi(2)), qi(0));
        assert_eq!(isf_phi(2).eval(&qi(1)), q(1, 2));
    }

    #[test]
    fn right_derivative_examples() {
        let h = isf_delta(qi(1));
        assert_eq!(h.right_derivative(&qi(0)), qi(-1));
        assert_eq!(h.right_derivative(&qi(1)), qi(0));
    }

    #[test]
    fn envelope_of_singleton_is_identity() {
        let h = isf_phi(2);
        assert_eq!(max_envelope_convex(std::slice::from_ref(&h)), h);
    }

    #[test]
    fn envelope_of_nested_isfs() {
        assert_eq!(max_envelope_convex(&[isf_phi(2), isf_phi(4)]), isf_phi(4));
    }

    #[test]
    fn envelope_with_crossing() {
        // (6/5 - t) crosses (1 - t/4) at t = 4/15.
        let env = max_envelope_convex(&[isf_delta(q(6, 5)), isf_phi(4)]);
        let expected = Plf::new(
            vec![(qi(0), q(6, 5)), (q(4, 15), q(14, 15)), (qi(4), qi(0))],
            qi(0),
        );
        assert_eq!(env, expected);
        assert_eq!(env.right_derivative(&q(4, 15)), q(-1, 4));
        assert!(env.is_convex());
        assert!(env.is_nonincreasing());
    }

    #[test]
    fn envelope_order_insensitive() {
        let fs = [isf_delta(q(6, 5)), isf_phi(4), isf_phi(2)];
        let a = max_envelope_convex(&fs);
        let b = max_envelope_convex(&[fs[1].clone(), fs[2].clone(), fs[0].clone()]);
        assert_eq!(a, b);
    }

    #[test]
    fn integrate_isf() {
        // int_0^inf (1 - t/2)_+ dt = mean of phi_2 contributions = 1
        assert_eq!(isf_phi(2).integrate(&qi(0), None).unwrap(), qi(1));
        assert_eq!(isf_phi(2).integrate(&qi(1), Some(&qi(1))).unwrap(), qi(0));
        // a nonvanishing tail diverges
        let lifted = Plf::new(vec![(qi(0), qi(2)), (qi(2), qi(1))], qi(0));
        assert_eq!(
            lifted.integrate(&qi(0), None),
            Err(PwError::DivergentIntegral)
        );
    }

    #[test]
    fn collinear_knots_are_merged() {
        let redundant = Plf::new(
            vec![(qi(0), qi(4)), (qi(2), qi(2)), (qi(4), qi(0))],
            qi(0),
        );
        assert_eq!(redundant.knots().len(), 2);
        assert_eq!(redundant, isf_delta(qi(4)));
    }
}
