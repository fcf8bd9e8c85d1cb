//! Core library for exploring exact overlaps of two-map self-similar
//! measures on the line.
//!
//! The system consists of the contractions `x -> beta1 x + beta1` and
//! `x -> beta2 x - beta2` with ratios in (0,1), weighted p and 1-p. Pairs
//! of distinct sign sequences with equal one-counts index algebraic
//! curves in the (beta1, beta2) square on which two n-fold compositions
//! coincide exactly. On such a curve inside the region
//! `R = { beta1 + beta2 > 1 }` there are weights for which the similarity
//! dimension exceeds one while the merged system's reduced similarity
//! dimension stays below one, forcing the measure to be singular. This
//! crate builds the curve polynomials exactly, traces their zero sets,
//! computes both dimensions and assembles replayable certificates.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature and enable `libm` for embedded use.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod float;

pub mod certify;
pub mod curve;
pub mod dimension;
pub mod poly;
pub mod seq;

pub use certify::{
    build_catalog, certify_exception, compose_affine, config_digest, verify_exact_overlap,
    CatalogRecord, CertifyError, ExceptionCertificate, CERT_MARGIN, OVERLAP_TOL,
};
pub use curve::{
    check_sufficient_condition, intersects_r, orbit_sufficient_condition, solve_x_given_y,
    trace_curve, CurveError, ParamPoint, TraceConfig, BOUNDARY_TOL, ON_CURVE_TOL,
};
pub use dimension::{
    attractor_hull, exception_window, merged_probability, reduced_similarity_dimension,
    sample_measure, similarity_dimension, solve_d, AffineMap, DimError, DimensionProfile,
    SampleSet, SdHatMethod, Window,
};
pub use poly::{build_curve_poly, derivative_at_one, restrict_y1, BiPoly, UniPoly};
pub use seq::{
    enumerate_pairs, PairEnumeration, PairError, SeqPair, SignSeq, MAX_ENUMERATION_LEN,
    MIN_PAIR_LEN,
};
