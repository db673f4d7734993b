//! Decision procedures for the strong (`≤st`) and increasing convex (`≤icx`)
//! stochastic orders, least upper bounds in both orders, the maximal-transform
//! equivalence check, and the comonotone coupling.
//!
//! Every check is exact: step functions are compared on merged jump sets,
//! piecewise-linear functions on merged knot sets, and maximal quantile curves
//! by their linear numerators over the common denominator `1 − u`. Ties count
//! as the order holding.

use crate::dist::{dist_from_isf, DiscreteDist, IsfError, QuantileCurve};
use crate::pwfun::{max_envelope_convex, min_envelope, StepFn};
use crate::rational::{q_one, q_zero, Q};
use thiserror::Error;

/// Outcome of an order check; on failure carries the smallest merged grid
/// point at which the defining inequality is violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominance {
    Holds,
    FailsAt(Q),
}

impl Dominance {
    pub fn holds(&self) -> bool {
        matches!(self, Dominance::Holds)
    }

    pub fn witness(&self) -> Option<&Q> {
        match self {
            Dominance::Holds => None,
            Dominance::FailsAt(t) => Some(t),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("family is not tight: the infimum of the distribution functions does not reach 1")]
    NotTight,
}

/// `X ≤st Y` iff the survival function of `X` is dominated by that of `Y`.
/// Step functions are constant between jumps, so checking `t = 0` and every
/// merged jump point decides the ordering.
pub fn st_le(x: &DiscreteDist, y: &DiscreteDist) -> Dominance {
    let sx = x.survival();
    let sy = y.survival();
    let mut grid: Vec<Q> = std::iter::once(q_zero())
        .chain(sx.jump_points().cloned())
        .chain(sy.jump_points().cloned())
        .collect();
    grid.sort();
    grid.dedup();
    for t in grid {
        if sx.eval(&t) > sy.eval(&t) {
            return Dominance::FailsAt(t);
        }
    }
    Dominance::Holds
}

/// `X ≤icx Y` iff the integrated survival functions are pointwise ordered.
/// The difference of two ISFs is piecewise linear, so the merged knot set
/// suffices.
pub fn icx_le(x: &DiscreteDist, y: &DiscreteDist) -> Dominance {
    let hx = x.isf();
    let hy = y.isf();
    let mut grid: Vec<Q> = hx
        .knots()
        .iter()
        .chain(hy.knots().iter())
        .map(|(t, _)| t.clone())
        .collect();
    grid.sort();
    grid.dedup();
    for t in grid {
        if hx.eval(&t) > hy.eval(&t) {
            return Dominance::FailsAt(t);
        }
    }
    Dominance::Holds
}

/// Quantile-side oracle for `≤icx`: pointwise dominance of the quantile tail
/// integrals `A(u) = ∫ᵤ¹ F⁻¹`. An independent computation path from
/// [`icx_le`], which works on the survival side.
pub fn icx_le_quantile_oracle(x: &DiscreteDist, y: &DiscreteDist) -> Dominance {
    let ax = x.tail_integral();
    let ay = y.tail_integral();
    let mut grid: Vec<Q> = ax
        .knots()
        .iter()
        .chain(ay.knots().iter())
        .map(|(u, _)| u.clone())
        .collect();
    grid.push(q_zero());
    grid.push(q_one());
    grid.sort();
    grid.dedup();
    for u in grid {
        if ax.eval(&u) > ay.eval(&u) {
            return Dominance::FailsAt(u);
        }
    }
    Dominance::Holds
}

/// Decides `X* ≤st Y*` for the Hardy-Littlewood maximal variables by
/// comparing the curves' segment numerators on the merged breakpoint
/// partition; the positive factor `1 − u` cancels. By the maximal-transform
/// equivalence this must coincide with [`icx_le`].
pub fn hl_st_check(x: &DiscreteDist, y: &DiscreteDist) -> Dominance {
    st_le_curves(&x.hl_maximal(), &y.hl_maximal())
}

/// Pointwise dominance of two maximal quantile curves (`≤st` of the maximal
/// variables), exact via numerator comparison.
pub fn st_le_curves(cx: &QuantileCurve, cy: &QuantileCurve) -> Dominance {
    let mut grid: Vec<Q> = cx
        .breakpoints()
        .iter()
        .chain(cy.breakpoints().iter())
        .cloned()
        .collect();
    grid.push(q_zero());
    grid.push(q_one());
    grid.sort();
    grid.dedup();
    // On each cell both numerators are linear; endpoint checks decide.
    for w in grid.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mid = (lo + hi) / Q::from_integer(2.into());
        let (ax, bx) = cx.numerator_at(&mid);
        let (ay, by) = cy.numerator_at(&mid);
        for u in [lo, hi] {
            if &ax + &bx * u > &ay + &by * u {
                return Dominance::FailsAt(u.clone());
            }
        }
    }
    Dominance::Holds
}

/// `X ≤st X*`-style check of a distribution against a maximal quantile curve:
/// `F⁻¹(u) ≤ MF⁻¹(u)` for all `u`, exact on the merged partition.
pub fn st_le_dist_curve(x: &DiscreteDist, curve: &QuantileCurve) -> Dominance {
    let cum = x.cumulative();
    let mut grid: Vec<Q> = cum.clone(); // ends with 1
    grid.extend(curve.breakpoints().iter().cloned());
    grid.push(q_zero());
    grid.sort();
    grid.dedup();
    for w in grid.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mid = (lo + hi) / Q::from_integer(2.into());
        // Quantile is constant on the left-open cell; the curve numerator is
        // linear, so q·(1−u) ≤ a + b·u at both endpoints decides the cell.
        let idx = cum.partition_point(|c| c < hi);
        let qx = &x.atoms()[idx].0;
        let (a, b) = curve.numerator_at(&mid);
        for u in [lo, hi] {
            if qx * (q_one() - u) > &a + &b * u {
                return Dominance::FailsAt(u.clone());
            }
        }
    }
    Dominance::Holds
}

/// Distribution whose CDF is the given step function; `NotTight` when the
/// function never reaches 1.
pub fn dist_from_cdf(f: &StepFn) -> Result<DiscreteDist, BoundError> {
    if *f.terminal_value() != q_one() {
        return Err(BoundError::NotTight);
    }
    let mut atoms = Vec::with_capacity(f.jumps().len());
    let mut prev = f.left_value().clone();
    for (t, v) in f.jumps() {
        atoms.push((t.clone(), v - &prev));
        prev = v.clone();
    }
    DiscreteDist::new(atoms).map_err(|_| BoundError::NotTight)
}

/// Least upper bound in the strong order: the distribution of the pointwise
/// infimum of the member CDFs. It st-dominates every member and is dominated
/// by any other common st-bound.
pub fn least_st_upper_bound(family: &[DiscreteDist]) -> Result<DiscreteDist, BoundError> {
    assert!(!family.is_empty(), "least bound of an empty family");
    let cdfs: Vec<StepFn> = family.iter().map(|d| d.cdf()).collect();
    dist_from_cdf(&min_envelope(&cdfs))
}

/// Least upper bound in the increasing convex order: the distribution whose
/// ISF is the pointwise supremum of the member ISFs. Its mean equals the
/// largest member mean.
pub fn least_icx_upper_bound(family: &[DiscreteDist]) -> Result<DiscreteDist, IsfError> {
    assert!(!family.is_empty(), "least bound of an empty family");
    let isfs: Vec<_> = family.iter().map(|d| d.isf()).collect();
    dist_from_isf(&max_envelope_convex(&isfs))
}

/// One cell of the comonotone coupling: on `(u_lo, u_hi]` the joint
/// realization `(F_X⁻¹(U), F_Y⁻¹(U))` is constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingCell {
    pub u_lo: Q,
    pub u_hi: Q,
    pub x: Q,
    pub y: Q,
}

/// Partition of `(0,1)` at merged cumulative probabilities with the constant
/// quantile pair per cell. When `X ≤st Y`, the x-coordinate is dominated by
/// the y-coordinate on every cell; otherwise some cell exhibits the failure.
pub fn comonotone_coupling(x: &DiscreteDist, y: &DiscreteDist) -> Vec<CouplingCell> {
    let cx = x.cumulative();
    let cy = y.cumulative();
    let mut cells = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    let mut lo = q_zero();
    while i < cx.len() && j < cy.len() {
        let b = cx[i].clone().min(cy[j].clone());
        cells.push(CouplingCell {
            u_lo: lo.clone(),
            u_hi: b.clone(),
            x: x.atoms()[i].0.clone(),
            y: y.atoms()[j].0.clone(),
        });
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
