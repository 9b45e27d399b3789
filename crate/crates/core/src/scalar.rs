use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar used by every index computation: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a vertex label or degree.
    fn of(x: usize) -> Self {
        Self::from_usize(x).expect("usize is representable as a float")
    }

    /// Converts an `f64` constant.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant is representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Neumaier's compensated sum. Terms are added in iteration order.
pub fn compensated_sum<S: Scalar, I: IntoIterator<Item = S>>(terms: I) -> S {
    let mut sum = S::zero();
    let mut carry = S::zero();
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry = carry + ((sum - t) + x);
        } else {
            carry = carry + ((x - t) + sum);
        }
        sum = t;
    }
    sum + carry
}

/// `sqrt(a² + b²)`, the Sombor edge term.
#[inline]
pub fn edge_term<S: Scalar>(a: S, b: S) -> S {
    (a * a + b * b).sqrt()
}

/// Formats `x` with `digits` significant digits in positional notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits.max(1) as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_lost_bits() {
        let terms = [1.0f64, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(terms), 2.0);
        assert_eq!(terms.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(2f64.sqrt(), 10), "1.414213562");
        assert_eq!(format_significant(33.48042012, 10), "33.48042012");
        assert_eq!(format_significant(0.05, 3), "0.0500");
        assert_eq!(format_significant(1234.5, 2), "1234");
        assert_eq!(format_significant(0.0, 10), "0");
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(compensated_sum::<f32, _>(Vec::new()), 0.0);
    }

    #[test]
    fn edge_term_matches_hypot() {
        assert_eq!(edge_term(3.0f64, 4.0), 5.0);
        assert!((edge_term(1.0f32, 1.0) - 2f32.sqrt()).abs() < 1e-6);
    }
}
