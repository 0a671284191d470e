//! Repeated integrals of the complementary error function and the even/odd pair E_n, F_n.
//!
//! `i^n erfc` satisfies `2n i^n erfc(x) = i^{n-2} erfc(x) - 2x i^{n-1} erfc(x)` with
//! `i^{-1} erfc(x) = 2/sqrt(pi) e^{-x^2}` and `i^0 erfc = erfc`. Forward recurrence is stable
//! for `x <= FORWARD_LIMIT` (no cancellation for x <= 0, bounded growth of the dominant
//! solution for small positive x). For larger x the wanted solution is the minimal one, so it
//! is obtained by Miller's backward recurrence normalised against `erfc(x)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 30;
const FORWARD_LIMIT: f64 = 0.5;

fn check_order(function: &'static str, n: u32, x: f64) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::Domain {
            function,
            reason: format!("order {n} exceeds {MAX_ORDER}"),
        });
    }
    if !x.is_finite() {
        return Err(Error::Domain {
            function,
            reason: "non-finite argument".into(),
        });
    }
    Ok(())
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// `i^n erfc(x)`, the n-fold repeated integral of erfc from x to infinity.
pub fn inerfc(n: u32, x: f64) -> Result<f64> {
    check_order("inerfc", n, x)?;
    let value = if x <= FORWARD_LIMIT {
        forward(n, x)
    } else {
        backward(n, x)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { function: "inerfc" })
    }
}

fn forward(n: u32, x: f64) -> f64 {
    let mut prev = 2.0 / PI.sqrt() * (-x * x).exp();
    let mut cur = erfc(x);
    for k in 1..=n {
        let next = (prev - 2.0 * x * cur) / (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

fn backward(n: u32, x: f64) -> f64 {
    let start = erfc(x);
    if n == 0 || start == 0.0 {
        return if n == 0 { start } else { 0.0 };
    }
    // The dominant solution outgrows the minimal one roughly like exp(2x sqrt(2k)).
    let extra = (200.0 / (x * x)).ceil().min(20_000.0) as u32;
    let top = n + 20 + extra;
    let mut upper = 0.0_f64; // y_{k+1}
    let mut cur = 1e-300_f64; // y_k
    let mut at_n = if top == n { cur } else { 0.0 };
    let mut k = top;
    while k > 0 {
        // y_{k-1} = 2(k+1) y_{k+1} + 2x y_k
        let lower = 2.0 * (k + 1) as f64 * upper + 2.0 * x * cur;
        upper = cur;
        cur = lower;
        k -= 1;
        if k == n {
            at_n = cur;
        }
        if cur.abs() > 1e250 {
            upper *= 1e-250;
            cur *= 1e-250;
            at_n *= 1e-250;
        }
    }
    at_n * (start / cur)
}

/// `(E_n(z), F_n(z))` with `E_n = [i^n erfc(z) + i^n erfc(-z)]/2` and
/// `F_n = [i^n erfc(-z) - i^n erfc(z)]/2`, so that `E_0 = 1` and `F_0 = erf`.
pub fn en_fn(n: u32, z: f64) -> Result<(f64, f64)> {
    check_order("en_fn", n, z)?;
    if n == 0 {
        return Ok((1.0, erf(z)));
    }
    let minus = inerfc(n, z)?;
    let plus = inerfc(n, -z)?;
    Ok((0.5 * (minus + plus), 0.5 * (plus - minus)))
}
