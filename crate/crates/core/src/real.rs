//! Scalar abstraction: the whole library is generic over the floating-point
//! type through this trait, with `f64` as the type used by the verification
//! suite and the CLI.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Floating-point scalar the numerics are written against.
///
/// Implemented for `f32` and `f64`. The accuracy contracts documented on the
/// special functions and solvers are stated for `f64`; an `f32` instantiation
/// carries the same algorithms at correspondingly lower precision.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + std::iter::Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Lift an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn cst<T: Real>(x: f64) -> T {
    T::from(x).expect("constant representable in scalar type")
}

/// `sin(pi x)` with argument reduction done on `x` itself, so accuracy does
/// not degrade for large `|x|` or near integers (where the naive `sin(PI*x)`
/// loses all significant digits).
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let n = x.round();
    let r = x - n;
    let s = (T::PI() * r).sin();
    // sin(pi(n+r)) = (-1)^n sin(pi r)
    let n_int = n.abs().to_u64().unwrap_or(0);
    if n_int % 2 == 1 {
        -s
    } else {
        s
    }
}

/// Distance from `x` to the nearest integer.
#[inline]
pub(crate) fn dist_to_integer<T: Real>(x: T) -> T {
    (x - x.round()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_matches_naive_away_from_integers() {
        for &x in &[0.3_f64, 1.7, -2.4, 5.25, -0.5] {
            assert!((sin_pi(x) - (std::f64::consts::PI * x).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        assert_eq!(sin_pi(3.0_f64), 0.0);
        assert_eq!(sin_pi(-7.0_f64), 0.0);
    }

    #[test]
    fn sin_pi_near_negative_integer_keeps_precision() {
        // the reduced argument r = x + 8 is exact in f64 (Sterbenz), so the
        // value must match sin(pi r) to full precision (n = -8 is even)
        let x = -8.0_f64 + 1e-7;
        let r = x + 8.0;
        let exact = (std::f64::consts::PI * r).sin();
        assert!(((sin_pi(x) - exact) / exact).abs() < 1e-14);
        // while the naive form loses ~7 digits here
        let naive = (std::f64::consts::PI * x).sin();
        assert!(((naive - exact) / exact).abs() > 1e-11);
    }
}
