//! End-to-end singularity certificates: exact-overlap verification,
//! certificate assembly and catalog generation.
//!
//! On a curve point the n-fold compositions indexed by the pair's two
//! words coincide as affine maps; the offset difference of the two
//! compositions is exactly the curve polynomial evaluated at the point.
//! A certificate packages such a point together with a weight at which
//! the similarity dimension exceeds one while the reduced similarity
//! dimension stays below one.

use alloc::string::String;
use alloc::vec::Vec;

use crate::curve::{
    check_sufficient_condition, intersects_r, orbit_sufficient_condition, CurveError, ParamPoint,
    TraceConfig,
};
use crate::dimension::{exception_window, AffineMap, DimError};
use crate::float::{abs, powi_u};
use crate::poly::build_curve_poly;
use crate::seq::{enumerate_pairs, PairError, SeqPair, MAX_ENUMERATION_LEN, MIN_PAIR_LEN};

/// Certificates require at least this much separation from 1 on both
/// dimension values at the witness weight.
pub const CERT_MARGIN: f64 = 1e-6;

/// Maximum admissible residual for the exact-overlap check.
pub const OVERLAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CertifyError {
    #[error("curve does not intersect R at the configured resolution")]
    NoIntersectionWithR,
    #[error("catalog range {n_min}..={n_max} is outside the supported {MIN_PAIR_LEN}..={max}")]
    LimitExceeded { n_min: usize, n_max: usize, max: usize },
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Dim(#[from] DimError),
}

/// The n-fold composition indexed by a word, with the first entry applied
/// last: slope `beta1^a beta2^(n-a)` for a the one-count, offset the
/// prefix-product sum `sum_k r_k beta1^{#_k} beta2^{k - #_k}`.
pub fn compose_affine(
    word: &crate::seq::SignSeq,
    beta1: f64,
    beta2: f64,
) -> Result<AffineMap, DimError> {
    let open = |v: f64| v > 0.0 && v < 1.0;
    if !open(beta1) {
        return Err(DimError::OutOfDomain("beta1"));
    }
    if !open(beta2) {
        return Err(DimError::OutOfDomain("beta2"));
    }
    let n = word.len() as u32;
    let ones = word.ones();
    // Fixed multiplication order so that words with equal one-counts get
    // bit-identical slopes.
    let slope = powi_u(beta1, ones) * powi_u(beta2, n - ones);
    let mut offset = 0.0;
    let mut prefix_product = 1.0;
    for &sign in word.entries() {
        prefix_product *= if sign == 1 { beta1 } else { beta2 };
        offset += sign as f64 * prefix_product;
    }
    Ok(AffineMap { slope, offset })
}

/// Residual of the exact-overlap identity at a point: the absolute offset
/// difference of the two compositions. Asserts the cross-module identity
/// that this difference equals the curve polynomial value at the point.
pub fn verify_exact_overlap(pair: &SeqPair, point: &ParamPoint) -> f64 {
    let map_s = compose_affine(pair.s(), point.beta1(), point.beta2())
        .expect("point coordinates lie inside the open unit square");
    let map_t = compose_affine(pair.t(), point.beta1(), point.beta2())
        .expect("point coordinates lie inside the open unit square");
    assert_eq!(
        map_s.slope.to_bits(),
        map_t.slope.to_bits(),
        "equal one-counts must give identical slopes"
    );
    let residual = abs(map_s.offset - map_t.offset);
    let curve_value = build_curve_poly(pair).evaluate(point.beta1(), point.beta2());
    let scale = if abs(curve_value) > 1.0 { abs(curve_value) } else { 1.0 };
    assert!(
        abs(residual - abs(curve_value)) <= 1e-12 * scale,
        "offset difference must reproduce the curve polynomial value"
    );
    residual
}

/// A numerical witness of a singular exception: an on-curve point inside
/// R together with a weight separating the two dimension bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionCertificate {
    pub pair: SeqPair,
    pub point: ParamPoint,
    pub d: f64,
    pub p_m: f64,
    pub witness_p: f64,
    pub sd: f64,
    pub sd_hat: f64,
    pub overlap_residual: f64,
    pub tool_version: String,
    pub config_digest: String,
}

/// One catalog row per canonical pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogRecord {
    pub pair: SeqPair,
    /// True when some orbit member satisfies the prefix condition; the
    /// stored `fprime1` belongs to that orientation (or to the canonical
    /// one when none qualifies).
    pub sufficient_condition: bool,
    pub fprime1: i64,
    pub intersects_r: bool,
    pub witness_point: Option<ParamPoint>,
    pub certificate: Option<ExceptionCertificate>,
}

/// FNV-1a digest of the numerical configuration, recorded in certificates
/// so results can be replayed.
pub fn config_digest(cfg: &TraceConfig) -> String {
    let repr = alloc::format!(
        "y_step={:e};bisection_tol={:e};max_roots_per_slice={}",
        cfg.y_step,
        cfg.bisection_tol,
        cfg.max_roots_per_slice
    );
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in repr.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    alloc::format!("{hash:016x}")
}

fn certify_at(
    pair: &SeqPair,
    witness: ParamPoint,
    cfg: &TraceConfig,
) -> Result<ExceptionCertificate, CertifyError> {
    let overlap_residual = verify_exact_overlap(pair, &witness);
    let profile = exception_window(pair, &witness)?;
    let sd = profile.sd_at_witness.expect("successful window carries values");
    let sd_hat = profile.sdhat_at_witness.expect("successful window carries values");
    if !(sd >= 1.0 + CERT_MARGIN && sd_hat <= 1.0 - CERT_MARGIN) {
        return Err(CertifyError::Dim(DimError::WindowNotFound {
            d: profile.d,
            p_m: profile.p_m,
            detail: "window margins fall below the certificate threshold",
        }));
    }
    if overlap_residual > OVERLAP_TOL {
        return Err(CertifyError::NoIntersectionWithR);
    }
    Ok(ExceptionCertificate {
        pair: pair.clone(),
        point: witness,
        d: profile.d,
        p_m: profile.p_m,
        witness_p: profile.witness_p.expect("successful window carries values"),
        sd,
        sd_hat,
        overlap_residual,
        tool_version: String::from(env!("CARGO_PKG_VERSION")),
        config_digest: config_digest(cfg),
    })
}

/// Full pipeline: locate a witness point of the pair's curve inside R,
/// verify the exact overlap there and search the exception window.
pub fn certify_exception(
    pair: &SeqPair,
    cfg: &TraceConfig,
) -> Result<ExceptionCertificate, CertifyError> {
    let poly = build_curve_poly(pair);
    let witness = intersects_r(&poly, cfg)?.ok_or(CertifyError::NoIntersectionWithR)?;
    certify_at(pair, witness, cfg)
}

/// Builds catalog records for every canonical pair with lengths in
/// `n_min..=n_max`, attempting a certificate exactly where the curve
/// meets R. Records are ordered by (n, lexicographic pair).
pub fn build_catalog(
    n_min: usize,
    n_max: usize,
    cfg: &TraceConfig,
) -> Result<Vec<CatalogRecord>, CertifyError> {
    if n_min < MIN_PAIR_LEN || n_max > MAX_ENUMERATION_LEN || n_min > n_max {
        return Err(CertifyError::LimitExceeded {
            n_min,
            n_max,
            max: MAX_ENUMERATION_LEN,
        });
    }
    let mut records = Vec::new();
    for n in n_min..=n_max {
        let listing = enumerate_pairs(n).expect("range was validated");
        for pair in listing.pairs {
            let poly = build_curve_poly(&pair);
            let (sufficient_condition, fprime1) = match orbit_sufficient_condition(&pair) {
                Some((_, f1)) => (true, f1),
                None => (false, check_sufficient_condition(&pair).1),
            };
            let witness_point = intersects_r(&poly, cfg)?;
            let certificate =
                witness_point.and_then(|w| certify_at(&pair, w, cfg).ok());
            records.push(CatalogRecord {
                pair,
                sufficient_condition,
                fprime1,
                intersects_r: witness_point.is_some(),
                witness_point,
                certificate,
            });
        }
    }
    Ok(records)
}
