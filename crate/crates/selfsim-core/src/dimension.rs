//! Similarity dimension of the two-map system, the reduced similarity
//! dimension of the n-fold merged system, the exponent d with
//! `beta1^d + beta2^d = 1`, exception-window search and a chaos-game
//! sampler for the invariant measure.
//!
//! All logarithms are natural. Probability and contraction arguments are
//! validated against open intervals; nothing is clamped.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{ParamPoint, ON_CURVE_TOL};
use crate::float::{abs, bisect, ln, opposite_signs, powf, powi_u};
use crate::seq::SeqPair;

/// Brute-force word enumeration is capped at this sequence length.
pub const BRUTE_MAX_LEN: usize = 24;

/// Iterations discarded before the sampler records points.
pub const SAMPLE_BURN_IN: usize = 64;

const P_GRID_STEP: f64 = 1e-3;
const P_ROOT_TOL: f64 = 1e-12;
const P_SENTINEL: f64 = 1e-15;
const D_TOL: f64 = 1e-13;
const SD_AT_PM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DimError {
    #[error("{0} must lie strictly inside (0,1)")]
    OutOfDomain(&'static str),
    #[error("brute-force enumeration is limited to n <= {max}, got n = {n}")]
    PairTooLong { n: usize, max: usize },
    #[error("point is not in R: beta1 + beta2 <= 1")]
    NotInR,
    #[error("point residual {0:e} exceeds the on-curve tolerance")]
    NotOnCurve(f64),
    #[error("no exception window found: {detail} (d = {d}, p_M = {p_m})")]
    WindowNotFound { d: f64, p_m: f64, detail: &'static str },
}

fn require_open(value: f64, name: &'static str) -> Result<(), DimError> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(DimError::OutOfDomain(name))
    }
}

fn entropy(p: f64) -> f64 {
    -p * ln(p) - (1.0 - p) * ln(1.0 - p)
}

fn lyapunov(beta1: f64, beta2: f64, p: f64) -> f64 {
    -p * ln(beta1) - (1.0 - p) * ln(beta2)
}

fn sd_unchecked(beta1: f64, beta2: f64, p: f64) -> f64 {
    entropy(p) / lyapunov(beta1, beta2, p)
}

/// Entropy-to-Lyapunov ratio of the weighted two-map system.
pub fn similarity_dimension(beta1: f64, beta2: f64, p: f64) -> Result<f64, DimError> {
    require_open(beta1, "beta1")?;
    require_open(beta2, "beta2")?;
    require_open(p, "p")?;
    Ok(sd_unchecked(beta1, beta2, p))
}

/// Weight of the merged atom: both words of the pair have equal one-count,
/// so this is `2 p^a (1-p)^(n-a)` with a the shared count.
pub fn merged_probability(pair: &SeqPair, p: f64) -> Result<f64, DimError> {
    require_open(p, "p")?;
    let n = pair.n() as u32;
    let a = pair.s().ones();
    Ok(2.0 * powi_u(p, a) * powi_u(1.0 - p, n - a))
}

/// Evaluation route for [`reduced_similarity_dimension`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdHatMethod {
    /// Enumerates all 2^n words, merging the pair's two atoms.
    Brute,
    /// Closed form `n H(p) - 2 P(s) ln 2` over `n chi`.
    Closed,
}

fn sdhat_closed_unchecked(n: usize, ones: u32, beta1: f64, beta2: f64, p: f64) -> f64 {
    let p_word = powi_u(p, ones) * powi_u(1.0 - p, n as u32 - ones);
    let numerator = n as f64 * entropy(p) - 2.0 * p_word * core::f64::consts::LN_2;
    numerator / (n as f64 * lyapunov(beta1, beta2, p))
}

/// Similarity dimension of the n-fold iterated system after the two words
/// of the pair are merged into one atom. Strictly below the plain
/// similarity dimension for every admissible argument.
pub fn reduced_similarity_dimension(
    pair: &SeqPair,
    beta1: f64,
    beta2: f64,
    p: f64,
    method: SdHatMethod,
) -> Result<f64, DimError> {
    require_open(beta1, "beta1")?;
    require_open(beta2, "beta2")?;
    require_open(p, "p")?;
    let n = pair.n();
    match method {
        SdHatMethod::Closed => Ok(sdhat_closed_unchecked(n, pair.s().ones(), beta1, beta2, p)),
        SdHatMethod::Brute => {
            if n > BRUTE_MAX_LEN {
                return Err(DimError::PairTooLong { n, max: BRUTE_MAX_LEN });
            }
            let word_mask = |entries: &[i8]| -> u32 {
                entries
                    .iter()
                    .enumerate()
                    .fold(0u32, |m, (k, &v)| if v == 1 { m | (1 << k) } else { m })
            };
            let s_mask = word_mask(pair.s().entries());
            let t_mask = word_mask(pair.t().entries());

            let mut pow_p = Vec::with_capacity(n + 1);
            let mut pow_q = Vec::with_capacity(n + 1);
            for k in 0..=n as u32 {
                pow_p.push(powi_u(p, k));
                pow_q.push(powi_u(1.0 - p, k));
            }

            let mut numerator = 0.0;
            for word in 0u32..(1u32 << n) {
                if word == s_mask || word == t_mask {
                    continue;
                }
                let k = word.count_ones() as usize;
                let prob = pow_p[k] * pow_q[n - k];
                numerator += -prob * ln(prob);
            }
            let a = pair.s().ones() as usize;
            let merged = 2.0 * pow_p[a] * pow_q[n - a];
            numerator += -merged * ln(merged);
            Ok(numerator / (n as f64 * lyapunov(beta1, beta2, p)))
        }
    }
}

/// The unique d > 0 with `beta1^d + beta2^d = 1`, by bisection of the
/// strictly decreasing map `d -> beta1^d + beta2^d`.
pub fn solve_d(beta1: f64, beta2: f64) -> Result<f64, DimError> {
    require_open(beta1, "beta1")?;
    require_open(beta2, "beta2")?;
    let g = |d: f64| powf(beta1, d) + powf(beta2, d) - 1.0;
    let mut lo = 0.0;
    let g_lo = 1.0; // g(0) = 1 exactly
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    Ok(bisect(&g, lo, hi, g_lo, D_TOL))
}

/// Closed interval of weights on which the plain dimension exceeds one
/// while the reduced dimension stays below one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Dimension data attached to an on-curve point inside R.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionProfile {
    pub pair: SeqPair,
    pub point: ParamPoint,
    /// Exponent with `beta1^d + beta2^d = 1`.
    pub d: f64,
    /// `beta1^d`, the weight at which the similarity dimension equals d.
    pub p_m: f64,
    /// Roots of SD = 1, at most one on each side of `p_m`, ascending.
    pub sd_roots: Vec<f64>,
    pub window: Option<Window>,
    pub witness_p: Option<f64>,
    pub sd_at_witness: Option<f64>,
    pub sdhat_at_witness: Option<f64>,
}

/// Largest root of SD = 1 below `p_m`. The grid starts at a tiny sentinel
/// because the crossing can sit below the first regular grid point when
/// one contraction ratio is close to 1.
fn largest_sd_root_below(beta1: f64, beta2: f64, p_m: f64) -> Option<f64> {
    let f = |p: f64| sd_unchecked(beta1, beta2, p) - 1.0;
    let mut prev_p = P_SENTINEL;
    let mut prev_v = f(prev_p);
    let mut bracket: Option<(f64, f64, f64)> = None;
    let mut k = 1u64;
    loop {
        let mut p = k as f64 * P_GRID_STEP;
        let last = p >= p_m;
        if last {
            p = p_m;
        }
        if p > prev_p {
            let v = f(p);
            if v == 0.0 {
                bracket = Some((p, p, 0.0));
            } else if opposite_signs(prev_v, v) {
                bracket = Some((prev_p, p, prev_v));
            }
            prev_p = p;
            prev_v = v;
        }
        if last {
            break;
        }
        k += 1;
    }
    bracket.map(|(lo, hi, f_lo)| {
        if lo == hi {
            lo
        } else {
            bisect(&f, lo, hi, f_lo, P_ROOT_TOL)
        }
    })
}

/// Smallest root of SD = 1 above `p_m`, if the scan sees one.
fn first_sd_root_above(beta1: f64, beta2: f64, p_m: f64) -> Option<f64> {
    let f = |p: f64| sd_unchecked(beta1, beta2, p) - 1.0;
    let mut prev_p = p_m;
    let mut prev_v = f(p_m);
    let mut k = (p_m / P_GRID_STEP) as u64 + 1;
    loop {
        let mut p = k as f64 * P_GRID_STEP;
        let last = p >= 1.0 - P_SENTINEL;
        if last {
            p = 1.0 - P_SENTINEL;
        }
        if p > prev_p {
            let v = f(p);
            if v == 0.0 {
                return Some(p);
            }
            if opposite_signs(prev_v, v) {
                return Some(bisect(&f, prev_p, p, prev_v, P_ROOT_TOL));
            }
            prev_p = p;
            prev_v = v;
        }
        if last {
            return None;
        }
        k += 1;
    }
}

/// First root of the reduced dimension minus one inside `(p1, p_m]`;
/// falls back to `p_m` when the scan sees no crossing.
fn first_sdhat_root(n: usize, ones: u32, beta1: f64, beta2: f64, p1: f64, p_m: f64) -> f64 {
    let g = |p: f64| sdhat_closed_unchecked(n, ones, beta1, beta2, p) - 1.0;
    let mut prev_p = p1;
    let mut prev_v = g(p1);
    let mut k = (p1 / P_GRID_STEP) as u64 + 1;
    loop {
        let mut p = k as f64 * P_GRID_STEP;
        let last = p >= p_m;
        if last {
            p = p_m;
        }
        if p > prev_p {
            let v = g(p);
            if v == 0.0 {
                return p;
            }
            if opposite_signs(prev_v, v) {
                return bisect(&g, prev_p, p, prev_v, P_ROOT_TOL);
            }
            prev_p = p;
            prev_v = v;
        }
        if last {
            return p_m;
        }
        k += 1;
    }
}

/// Locates an exception window for an on-curve point inside R: a weight
/// interval on which the similarity dimension exceeds one while the
/// reduced similarity dimension stays below one.
///
/// Errors rather than fabricating a witness when the numerics cannot
/// exhibit the separation (which happens when the analytic window is
/// narrower than the scan resolution).
pub fn exception_window(pair: &SeqPair, point: &ParamPoint) -> Result<DimensionProfile, DimError> {
    if !point.in_r() {
        return Err(DimError::NotInR);
    }
    if point.residual() > ON_CURVE_TOL {
        return Err(DimError::NotOnCurve(point.residual()));
    }
    let (beta1, beta2) = (point.beta1(), point.beta2());
    let d = solve_d(beta1, beta2)?;
    let p_m = powf(beta1, d);

    let sd_at_pm = sd_unchecked(beta1, beta2, p_m);
    if abs(sd_at_pm - d) > SD_AT_PM_TOL {
        return Err(DimError::WindowNotFound {
            d,
            p_m,
            detail: "similarity dimension at p_M does not reproduce d",
        });
    }

    let p1 = largest_sd_root_below(beta1, beta2, p_m).ok_or(DimError::WindowNotFound {
        d,
        p_m,
        detail: "no unit crossing of the similarity dimension below p_M",
    })?;
    let upper_root = first_sd_root_above(beta1, beta2, p_m);

    let (n, ones) = (pair.n(), pair.s().ones());
    let p_hi = first_sdhat_root(n, ones, beta1, beta2, p1, p_m);
    let witness = 0.5 * (p1 + p_hi);
    let sd_w = sd_unchecked(beta1, beta2, witness);
    let sdh_w = sdhat_closed_unchecked(n, ones, beta1, beta2, witness);
    if !(sd_w > 1.0 && sdh_w < 1.0) {
        return Err(DimError::WindowNotFound {
            d,
            p_m,
            detail: "window midpoint fails to separate the two dimensions",
        });
    }

    let mut sd_roots = alloc::vec![p1];
    sd_roots.extend(upper_root);
    Ok(DimensionProfile {
        pair: pair.clone(),
        point: *point,
        d,
        p_m,
        sd_roots,
        window: Some(Window { lo: p1, hi: p_hi }),
        witness_p: Some(witness),
        sd_at_witness: Some(sd_w),
        sdhat_at_witness: Some(sdh_w),
    })
}

/// A contracting affine map `x -> slope * x + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub slope: f64,
    pub offset: f64,
}

impl AffineMap {
    pub fn apply(&self, x: f64) -> f64 {
        self.slope * x + self.offset
    }
}

/// Chaos-game samples of the invariant measure.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub points: Vec<f64>,
    pub seed: u64,
    /// (beta1, beta2, p) used to generate the orbit.
    pub params: (f64, f64, f64),
}

/// Smallest interval invariant under both maps: endpoints are the fixed
/// points of `x -> beta2 x - beta2` and `x -> beta1 x + beta1`.
pub fn attractor_hull(beta1: f64, beta2: f64) -> (f64, f64) {
    (-beta2 / (1.0 - beta2), beta1 / (1.0 - beta1))
}

/// Runs the chaos game from x = 0: applies `x -> beta1 x + beta1` with
/// probability p, else `x -> beta2 x - beta2`, recording every iterate
/// after a burn-in of [`SAMPLE_BURN_IN`] steps. Deterministic per seed.
pub fn sample_measure(
    beta1: f64,
    beta2: f64,
    p: f64,
    count: usize,
    seed: u64,
) -> Result<SampleSet, DimError> {
    require_open(beta1, "beta1")?;
    require_open(beta2, "beta2")?;
    require_open(p, "p")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let mut x = 0.0;
    let mut step = |x: f64| {
        if uniform() < p {
            beta1 * x + beta1
        } else {
            beta2 * x - beta2
        }
    };
    for _ in 0..SAMPLE_BURN_IN {
        x = step(x);
    }
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        x = step(x);
        points.push(x);
    }
    Ok(SampleSet {
        points,
        seed,
        params: (beta1, beta2, p),
    })
}
