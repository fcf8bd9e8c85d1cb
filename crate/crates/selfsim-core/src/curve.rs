//! Numerical location of curve zero sets inside the open unit square and
//! the prefix-condition test guaranteeing intersection with the region
//! R = { (x, y) in (0,1)^2 : x + y > 1 }.
//!
//! Zeros are found per horizontal slice by sign-change scanning plus
//! bisection. This is a semi-decision: tangential zeros below the grid
//! resolution can be missed. Slices whose scan comes within 1e-2 of zero
//! get one refinement pass at a tenth of the step.

use alloc::vec::Vec;

use crate::float::{abs, bisect, ceil, opposite_signs};
use crate::poly::{horner, BiPoly};
use crate::seq::SeqPair;

/// Coordinates this close to 0 or 1 are treated as boundary and discarded.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Residual bound for a traced point to count as lying on the curve.
pub const ON_CURVE_TOL: f64 = 1e-9;

/// Scan values below this trigger the slice refinement pass.
const REFINE_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("slice ordinate {0} lies outside the open interval (0,1)")]
    InvalidSlice(f64),
    #[error("curve polynomial is identically zero")]
    DegenerateCurve,
    #[error("point ({beta1}, {beta2}) lies outside the open unit square")]
    InvalidPoint { beta1: f64, beta2: f64 },
}

/// A located parameter point with its on-curve residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    beta1: f64,
    beta2: f64,
    residual: f64,
    in_r: bool,
}

impl ParamPoint {
    /// Builds a point strictly inside the unit square; `in_r` is decided by
    /// the double-precision comparison `beta1 + beta2 > 1`.
    pub fn new(beta1: f64, beta2: f64, residual: f64) -> Result<Self, CurveError> {
        let open = |v: f64| v > 0.0 && v < 1.0;
        if !open(beta1) || !open(beta2) || !residual.is_finite() {
            return Err(CurveError::InvalidPoint { beta1, beta2 });
        }
        Ok(Self {
            beta1,
            beta2,
            residual: abs(residual),
            in_r: beta1 + beta2 > 1.0,
        })
    }

    pub fn beta1(&self) -> f64 {
        self.beta1
    }

    pub fn beta2(&self) -> f64 {
        self.beta2
    }

    /// |F(beta1, beta2)| as evaluated when the point was produced.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn in_r(&self) -> bool {
        self.in_r
    }
}

/// Grid and tolerance settings for slice scanning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceConfig {
    /// Step of the y-grid and of the x-scan within each slice.
    pub y_step: f64,
    /// Bisection stops once the bracket is this narrow.
    pub bisection_tol: f64,
    /// Cap on roots reported per slice.
    pub max_roots_per_slice: usize,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self {
            y_step: 1e-3,
            bisection_tol: 1e-12,
            max_roots_per_slice: 16,
        }
    }
}

impl TraceConfig {
    fn validate(&self) {
        assert!(
            self.y_step > 0.0 && self.y_step < 1.0,
            "y_step must lie in (0,1)"
        );
        assert!(self.bisection_tol > 0.0, "bisection_tol must be positive");
    }
}

/// Tests the prefix condition sufficient for the curve to enter R:
/// s begins (+1, -1), t begins (-1, +1) and f'(1) > 0, where
/// f'(1) = sum_k s_k #_k(s) - sum_k t_k #_k(t). The exact integer f'(1)
/// is returned regardless of whether the condition holds.
pub fn check_sufficient_condition(pair: &SeqPair) -> (bool, i64) {
    let f1 = fprime1(pair);
    let s = pair.s().entries();
    let t = pair.t().entries();
    let prefixes_ok = s[0] == 1 && s[1] == -1 && t[0] == -1 && t[1] == 1;
    (prefixes_ok && f1 > 0, f1)
}

/// Searches the symmetry orbit for an orientation satisfying the
/// sufficient condition; returns it with its f'(1) when found.
pub fn orbit_sufficient_condition(pair: &SeqPair) -> Option<(SeqPair, i64)> {
    pair.orbit().into_iter().find_map(|member| {
        let (holds, f1) = check_sufficient_condition(&member);
        holds.then_some((member, f1))
    })
}

fn fprime1(pair: &SeqPair) -> i64 {
    let weighted = |seq: &crate::seq::SignSeq| -> i64 {
        seq.entries()
            .iter()
            .zip(seq.prefix_ones())
            .map(|(&sign, &ones)| sign as i64 * ones as i64)
            .sum()
    };
    weighted(pair.s()) - weighted(pair.t())
}

/// All roots of x -> F(x, y) in (0,1) found by scanning and bisection,
/// in ascending order.
pub fn solve_x_given_y(poly: &BiPoly, y: f64, cfg: &TraceConfig) -> Result<Vec<f64>, CurveError> {
    if !(y > 0.0 && y < 1.0) {
        return Err(CurveError::InvalidSlice(y));
    }
    cfg.validate();
    let coeffs = poly.x_profile(y);
    Ok(scan_roots(&coeffs, cfg))
}

fn scan_roots(coeffs: &[f64], cfg: &TraceConfig) -> Vec<f64> {
    let h = cfg.y_step;
    let cells = ceil(1.0 / h) as usize;
    let f = |x: f64| horner(coeffs, x);

    let mut values = Vec::with_capacity(cells);
    for m in 1..cells {
        values.push(f(m as f64 * h));
    }

    let mut roots = Vec::new();
    let mut min_abs = f64::INFINITY;
    for (idx, &v) in values.iter().enumerate() {
        let x = (idx + 1) as f64 * h;
        if v == 0.0 {
            roots.push(x);
        }
        min_abs = if abs(v) < min_abs { abs(v) } else { min_abs };
        if idx + 1 < values.len() {
            let next = values[idx + 1];
            if opposite_signs(v, next) {
                roots.push(bisect(&f, x, x + h, v, cfg.bisection_tol));
            }
        }
    }

    // Refinement: rescan cells that came close to zero without crossing.
    if min_abs < REFINE_THRESHOLD {
        let fine = h / 10.0;
        for idx in 0..values.len().saturating_sub(1) {
            let (v0, v1) = (values[idx], values[idx + 1]);
            if opposite_signs(v0, v1) || (abs(v0) >= REFINE_THRESHOLD && abs(v1) >= REFINE_THRESHOLD)
            {
                continue;
            }
            let x0 = (idx + 1) as f64 * h;
            let mut prev_x = x0;
            let mut prev_v = v0;
            for q in 1..=10 {
                let x = if q == 10 { x0 + h } else { x0 + q as f64 * fine };
                let v = if q == 10 { v1 } else { f(x) };
                if v == 0.0 && q != 10 {
                    roots.push(x);
                } else if opposite_signs(prev_v, v) {
                    roots.push(bisect(&f, prev_x, x, prev_v, cfg.bisection_tol));
                }
                prev_x = x;
                prev_v = v;
            }
        }
    }

    roots.retain(|&x| x > BOUNDARY_TOL && x < 1.0 - BOUNDARY_TOL);
    roots.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));
    roots.truncate(cfg.max_roots_per_slice);
    roots
}

/// Traces the zero set over the full y-grid; points come out ordered by
/// (y, x) with residual and region membership attached.
pub fn trace_curve(poly: &BiPoly, cfg: &TraceConfig) -> Result<Vec<ParamPoint>, CurveError> {
    if poly.is_zero() {
        return Err(CurveError::DegenerateCurve);
    }
    cfg.validate();
    let h = cfg.y_step;
    let cells = ceil(1.0 / h) as usize;
    let mut points = Vec::new();
    for m in 1..cells {
        let y = m as f64 * h;
        if y <= BOUNDARY_TOL || y >= 1.0 - BOUNDARY_TOL {
            continue;
        }
        let coeffs = poly.x_profile(y);
        for x in scan_roots(&coeffs, cfg) {
            let residual = abs(poly.evaluate(x, y));
            points.push(
                ParamPoint::new(x, y, residual).expect("scanned roots lie inside the open square"),
            );
        }
    }
    Ok(points)
}

/// The most interior traced point of the curve inside R, if any: residual
/// at most [`ON_CURVE_TOL`], maximal beta1 + beta2, ties broken by the
/// smaller ordinate.
pub fn intersects_r(poly: &BiPoly, cfg: &TraceConfig) -> Result<Option<ParamPoint>, CurveError> {
    let points = trace_curve(poly, cfg)?;
    let mut best: Option<ParamPoint> = None;
    for p in points {
        if !p.in_r() || p.residual() > ON_CURVE_TOL {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                let (sum, best_sum) = (p.beta1() + p.beta2(), b.beta1() + b.beta2());
                sum > best_sum || (sum == best_sum && p.beta2() < b.beta2())
            }
        };
        if better {
            best = Some(p);
        }
    }
    Ok(best)
}
