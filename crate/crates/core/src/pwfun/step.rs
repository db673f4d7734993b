use super::PwError;
use crate::rational::{q_zero, Q};

/// Right-continuous step function on `[0, ∞)`.
///
/// The function equals `left_value` on `[0, first jump)` and `values[i]` on
/// `[jumps[i], jumps[i+1])`. Construction canonicalizes: jumps that do not
/// change the value are dropped, so equal functions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFn {
    left_value: Q,
    jumps: Vec<(Q, Q)>,
}

impl StepFn {
    /// Builds a step function from `(jump point, value at and after)` pairs.
    /// Jump points must be nonnegative and strictly increasing.
    pub fn new(left_value: Q, jumps: Vec<(Q, Q)>) -> Self {
        for w in jumps.windows(2) {
            assert!(w[0].0 < w[1].0, "jump points must be strictly increasing");
        }
        if let Some((t0, _)) = jumps.first() {
            assert!(*t0 >= q_zero(), "jump points must be nonnegative");
        }
        let mut canonical: Vec<(Q, Q)> = Vec::with_capacity(jumps.len());
        let mut current = left_value.clone();
        for (t, v) in jumps {
            if v != current {
                current = v.clone();
                canonical.push((t, v));
            }
        }
        Self {
            left_value,
            jumps: canonical,
        }
    }

    pub fn constant(value: Q) -> Self {
        Self {
            left_value: value,
            jumps: Vec::new(),
        }
    }

    /// Right-continuous evaluation at `t ≥ 0`.
    pub fn eval(&self, t: &Q) -> Q {
        debug_assert!(*t >= q_zero());
        match self.jumps.binary_search_by(|(jt, _)| jt.cmp(t)) {
            Ok(i) => self.jumps[i].1.clone(),
            Err(0) => self.left_value.clone(),
            Err(i) => self.jumps[i - 1].1.clone(),
        }
    }

    pub fn jump_points(&self) -> impl Iterator<Item = &Q> {
        self.jumps.iter().map(|(t, _)| t)
    }

    pub fn jumps(&self) -> &[(Q, Q)] {
        &self.jumps
    }

    pub fn left_value(&self) -> &Q {
        &self.left_value
    }

    /// Value on the final constant piece.
    pub fn terminal_value(&self) -> &Q {
        self.jumps.last().map_or(&self.left_value, |(_, v)| v)
    }

    /// Exact integral over `[a, b]`; `b = None` means `+∞`, which requires the
    /// tail to be eventually zero.
    pub fn integrate(&self, a: &Q, b: Option<&Q>) -> Result<Q, PwError> {
        debug_assert!(*a >= q_zero());
        let upper = match b {
            Some(b) => {
                assert!(b >= a, "integration bounds must satisfy a <= b");
                b.clone()
            }
            None => {
                if !self.terminal_value().eq(&q_zero()) {
                    return Err(PwError::DivergentIntegral);
                }
                // Beyond the last jump the function is identically zero.
                match self.jumps.last() {
                    Some((t, _)) if t > a => t.clone(),
                    _ => return Ok(q_zero()),
                }
            }
        };
        let mut total = q_zero();
        let mut cursor = a.clone();
        for (t, _) in &self.jumps {
            if *t <= cursor {
                continue;
            }
            if *t >= upper {
                break;
            }
            total += self.eval(&cursor) * (t - &cursor);
            cursor = t.clone();
        }
        if upper > cursor {
            total += self.eval(&cursor) * (&upper - &cursor);
        }
        Ok(total)
    }
}

/// Pointwise infimum of finitely many step functions, exact on the merged
/// jump set. For distribution functions this is the least-upper-bound
/// construction in the strong order.
pub fn min_envelope(fs: &[StepFn]) -> StepFn {
    assert!(!fs.is_empty(), "min_envelope of an empty family");
    let left = fs.iter().map(|f| f.left_value.clone()).min().unwrap();
    let mut grid: Vec<Q> = fs
        .iter()
        .flat_map(|f| f.jump_points().cloned())
        .collect();
    grid.sort();
    grid.dedup();
    let jumps = grid
        .into_iter()
        .map(|t| {
            let v = fs.iter().map(|f| f.eval(&t)).min().unwrap();
            (t, v)
        })
        .collect();
    StepFn::new(left, jumps)
}
