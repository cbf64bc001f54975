//! Snapping floating-point values to nearby rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

/// The rational closest to `x` among those with denominator at most
/// `max_den`, by continued fractions with a final semiconvergent. Returns
/// `None` for non-finite input.
pub fn best_rational(x: f64, max_den: u64) -> Option<BigRational> {
    let exact = BigRational::from_float(x)?;
    let max_den = BigInt::from(max_den.max(1));
    if exact.denom() <= &max_den {
        return Some(exact);
    }
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut n = exact.numer().clone();
    let mut d = exact.denom().clone();
    loop {
        let a = num::Integer::div_floor(&n, &d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (&max_den - &q0) / &q1;
    let semi = BigRational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = BigRational::new(p1, q1);
    if (&semi - &exact).abs() < (&conv - &exact).abs() {
        Some(semi)
    } else {
        Some(conv)
    }
}

/// [`best_rational`], accepted only if it lies within `tol` of `x`.
pub fn snap(x: f64, max_den: u64, tol: f64) -> Option<BigRational> {
    let q = best_rational(x, max_den)?;
    let err = (q.to_f64()? - x).abs();
    (err <= tol).then_some(q)
}
