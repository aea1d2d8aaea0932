use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact field of coefficients used by every polynomial, affine form and
/// fraction in the crate.
///
/// Implemented for `Ratio<T>` over any signed machine or big integer. Floats
/// are deliberately excluded: every verification is an exact zero test.
pub trait Coefficient:
    Num + Signed + Clone + Debug + Display + Ord + Hash + FromPrimitive + Send + Sync + 'static
{
    /// `Some(n)` when the value is an integer that fits in `i64`.
    fn to_exact_i64(&self) -> Option<i64>;
    /// Parse `p` or `p/q`.
    fn parse_exact(s: &str) -> Option<Self>;
}

impl<T> Coefficient for Ratio<T>
where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + std::str::FromStr
        + Send
        + Sync
        + 'static,
    Ratio<T>: FromPrimitive,
{
    fn to_exact_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: T = n.trim().parse().ok()?;
                let d: T = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(Ratio::new(n, d))
                }
            }
            None => s.parse::<T>().ok().map(Ratio::from_integer),
        }
    }
}

/// `n` as a coefficient.
pub(crate) fn from_i64<T: Coefficient>(n: i64) -> T {
    T::from_i64(n).expect("every exact coefficient type embeds i64")
}
