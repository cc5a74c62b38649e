use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// Exact rational scalar used for the coefficient tables.
pub trait Exact: Clone + Num + Signed + PartialOrd + ToPrimitive + Display + Debug {
    fn int(v: i64) -> Self;
    fn frac(n: i64, d: i64) -> Self {
        Self::int(n) / Self::int(d)
    }
    /// Reduced numerator and denominator, denominator positive.
    fn parts(&self) -> (String, String);
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Exact for BigRational {
    fn int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

/// Fixed-width rationals; enough headroom for the tables up to `n = 12`.
impl Exact for Ratio<i128> {
    fn int(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

/// `min{0, x}`.
pub fn neg_part<Q: Exact>(x: &Q) -> Q {
    if x.is_negative() {
        x.clone()
    } else {
        Q::zero()
    }
}
