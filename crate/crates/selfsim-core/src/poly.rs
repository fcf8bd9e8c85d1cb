//! Exact integer bivariate polynomials for the overlap curve equations.
//!
//! The curve polynomial of a pair (s, t) of length n is
//!
//! ```text
//! F(x, y) = sum_{k=1..n}  s_k x^{#_k(s)} y^{k - #_k(s)}
//!                       - t_k x^{#_k(t)} y^{k - #_k(t)}
//! ```
//!
//! where `#_k` counts `+1` entries among the first k symbols. Terms are
//! collected eagerly; all printed forms below list terms by descending
//! x-exponent, then descending y-exponent.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::float;
use crate::seq::SeqPair;

/// Bivariate polynomial with exact integer coefficients keyed by the
/// exponent pair (x-exponent, y-exponent). Zero coefficients are pruned.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), i64>,
}

impl BiPoly {
    /// Collects terms, dropping any that cancel to zero.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), i64)>>(iter: I) -> Self {
        let mut terms: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (key, coeff) in iter {
            let entry = terms.entry(key).or_insert(0);
            *entry += coeff;
            if *entry == 0 {
                terms.remove(&key);
            }
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending (x-exponent, y-exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Terms in display order: descending x-exponent, then descending
    /// y-exponent. This matches the printed equation layout.
    pub fn ordered_terms(&self) -> Vec<((u32, u32), i64)> {
        self.terms.iter().rev().map(|(&k, &c)| (k, c)).collect()
    }

    pub fn negated(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    /// Exchanges the roles of x and y in every term.
    pub fn transposed(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
        }
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    /// Coefficients of x^0 .. x^imax of the univariate section x -> F(x, y).
    pub(crate) fn x_profile(&self, y: f64) -> Vec<f64> {
        let mut coeffs = alloc::vec![0.0; self.max_x_degree() as usize + 1];
        for (&(i, j), &c) in &self.terms {
            coeffs[i as usize] += c as f64 * float::powi_u(y, j);
        }
        coeffs
    }

    /// Double-precision evaluation (Horner in x over collected y-sections).
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        horner(&self.x_profile(y), x)
    }
}

/// Horner evaluation of `coeffs[0] + coeffs[1] x + ...`.
pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

impl core::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, ((i, j), c)) in self.ordered_terms().into_iter().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let has_vars = i > 0 || j > 0;
            if mag != 1 || !has_vars {
                write!(f, "{mag}")?;
            }
            write_power(f, 'x', i)?;
            write_power(f, 'y', j)?;
        }
        Ok(())
    }
}

fn write_power(f: &mut core::fmt::Formatter<'_>, var: char, exp: u32) -> core::fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{exp}"),
    }
}

/// Univariate polynomial with integer coefficients indexed by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<i64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficients of x^0, x^1, ... with trailing zeros trimmed.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() as u32 - 1)
    }

    /// Value at 0, i.e. the constant coefficient (exact).
    pub fn at_zero(&self) -> i64 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    /// Value at 1, i.e. the coefficient sum (exact).
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c as f64;
        }
        acc
    }
}

impl core::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if mag != 1 || exp == 0 {
                write!(f, "{mag}")?;
            }
            write_power(f, 'x', exp as u32)?;
        }
        Ok(())
    }
}

/// Exact integer derivative at 1: sum of `exponent * coefficient`.
pub fn derivative_at_one(poly: &UniPoly) -> i64 {
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(exp, &c)| exp as i64 * c)
        .sum()
}

/// Builds the collected curve polynomial of a validated pair.
pub fn build_curve_poly(pair: &SeqPair) -> BiPoly {
    BiPoly::from_terms(curve_terms(
        pair.s().entries(),
        pair.s().prefix_ones(),
        pair.t().entries(),
        pair.t().prefix_ones(),
    ))
}

/// Raw term stream of the curve equation; exposed to let pair validation
/// check for a vanishing polynomial without a constructed `SeqPair`.
pub(crate) fn curve_terms<'a>(
    s: &'a [i8],
    s_ones: &'a [u32],
    t: &'a [i8],
    t_ones: &'a [u32],
) -> impl Iterator<Item = ((u32, u32), i64)> + 'a {
    let from_s = s.iter().zip(s_ones).enumerate().map(|(k, (&sign, &ones))| {
        ((ones, k as u32 + 1 - ones), sign as i64)
    });
    let from_t = t.iter().zip(t_ones).enumerate().map(|(k, (&sign, &ones))| {
        ((ones, k as u32 + 1 - ones), -(sign as i64))
    });
    from_s.chain(from_t)
}

/// Restriction f(x) = F(x, 1): collapses every term onto its x-exponent.
pub fn restrict_y1(poly: &BiPoly) -> UniPoly {
    let mut coeffs = alloc::vec![0i64; poly.max_x_degree() as usize + 1];
    for ((i, _), c) in poly.terms() {
        coeffs[i as usize] += c;
    }
    UniPoly::new(coeffs)
}
