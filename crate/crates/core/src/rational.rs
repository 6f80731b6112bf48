//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Nearest `f64`, used only for reporting and logarithms.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 gives up on huge numerators/denominators.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        if n.is_finite() && d.is_finite() {
            n / d
        } else {
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    })
}

/// Greatest integer `<= q`.
pub fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn in_unit(q: &Rational) -> bool {
    !q.is_negative() && *q <= one()
}

pub fn min_max<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Option<(Rational, Rational)> {
    let mut it = it.into_iter();
    let first = it.next()?;
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for q in it {
        if *q < lo {
            lo = q.clone();
        }
        if *q > hi {
            hi = q.clone();
        }
    }
    Some((lo, hi))
}
