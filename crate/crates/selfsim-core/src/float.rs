//! Float helpers that work with and without `std`.
//!
//! Transcendental functions come from `std` when available and from `libm`
//! otherwise. Integer powers are computed by plain repeated multiplication in
//! both configurations so that results do not depend on the feature set.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("selfsim-core requires the `std` feature or the `libm` feature");

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.ln()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::log(x)
    }
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.powf(y)
    }
    #[cfg(not(feature = "std"))]
    {
        libm::pow(x, y)
    }
}

/// `x^k` for small non-negative integer exponents.
#[inline]
pub(crate) fn powi_u(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..k {
        acc *= x;
    }
    acc
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    f64::from_bits(x.to_bits() & 0x7fff_ffff_ffff_ffff)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.ceil()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::ceil(x)
    }
}

/// True iff `a` and `b` are both nonzero and of opposite sign.
///
/// Written as comparisons rather than `a * b < 0.0` so that subnormal
/// products cannot underflow to zero and hide a sign change.
#[inline]
pub(crate) fn opposite_signs(a: f64, b: f64) -> bool {
    (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)
}

/// Bisection on a bracket with `sign f(lo) = sign f_lo != sign f(hi)`,
/// stopping once the bracket is narrower than `tol` or cannot shrink.
pub(crate) fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if opposite_signs(f_lo, f_mid) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    0.5 * (lo + hi)
}
