//! Scalar abstraction shared by the probability and valuation code.
//!
//! Everything that only needs field arithmetic and comparisons is generic
//! over [`Scalar`], so tables can be held as `f64`, `f32` or exact
//! [`BigRational`](num_rational::BigRational). Operations that need `ln`
//! additionally require [`num_traits::Float`]; the Gaussian oracle works over
//! `nalgebra::RealField`.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like scalar with an absolute value and a total-enough order.
pub trait Scalar:
    Num + Signed + FromPrimitive + ToPrimitive + Clone + PartialOrd + Debug + Display + Send + Sync
{
    /// Convert a tolerance or literal given as `f64`.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl<T> Scalar for T where
    T: Num + Signed + FromPrimitive + ToPrimitive + Clone + PartialOrd + Debug + Display + Send + Sync
{
}

/// Parse a rational literal such as `3/8`, `0.25` or `1`.
pub fn parse_rational(text: &str) -> Option<num_rational::BigRational> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = text.parse().ok()?;
    Some(BigRational::from_integer(n))
}
