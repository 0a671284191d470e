//! Bracketed root finding for residuals that decrease strictly from a positive value at the
//! lower end to `-inf`, such as `LHS(x) - x^{alpha+1}` of the front equations.
//!
//! The upper end is found by doubling, then Brent's method (inverse quadratic / secant steps
//! guarded by bisection) shrinks the bracket while keeping `r(lo) >= 0 >= r(hi)`.

use crate::error::{Error, Result};

pub const DEFAULT_TOL_ABS: f64 = 1e-12;
pub const DEFAULT_X_LO: f64 = 1e-12;
const MAX_DOUBLINGS: usize = 60;
const MAX_ITERATIONS: usize = 400;
const MONOTONE_PROBES: usize = 8;

/// A strictly decreasing residual with a sign change on `(x_lo, inf)`.
pub struct MonotoneRootSpec<F: Fn(f64) -> f64> {
    pub residual: F,
    /// Lower bracket end; the residual must be positive here.
    pub x_lo: f64,
    /// First upper probe, doubled until the residual turns negative.
    pub x_init_hi: f64,
    pub tol_abs: f64,
    /// Optional relative x-tolerance; when positive the bracket stops at
    /// `min(tol_abs, tol_rel * |x|)`.
    pub tol_rel: f64,
    pub tol_res: f64,
}

impl<F: Fn(f64) -> f64> MonotoneRootSpec<F> {
    pub fn new(residual: F) -> Self {
        Self {
            residual,
            x_lo: DEFAULT_X_LO,
            x_init_hi: 1.0,
            tol_abs: DEFAULT_TOL_ABS,
            tol_rel: 0.0,
            tol_res: 1e-10,
        }
    }

    pub fn with_x_lo(mut self, x_lo: f64) -> Self {
        self.x_lo = x_lo;
        self
    }

    pub fn with_tol_res(mut self, tol_res: f64) -> Self {
        self.tol_res = tol_res;
        self
    }

    pub fn with_tol_abs(mut self, tol_abs: f64) -> Self {
        self.tol_abs = tol_abs;
        self
    }

    pub fn with_tol_rel(mut self, tol_rel: f64) -> Self {
        self.tol_rel = tol_rel;
        self
    }
}

/// Finds the unique root of a strictly decreasing residual.
pub fn solve_monotone<F: Fn(f64) -> f64>(spec: &MonotoneRootSpec<F>) -> Result<f64> {
    let r = &spec.residual;
    let mut lo = spec.x_lo;
    let mut r_lo = r(lo);
    if !(r_lo > 0.0) {
        if r_lo == 0.0 {
            return Ok(lo);
        }
        return Err(Error::NoPositiveStart(r_lo));
    }

    let mut hi = spec.x_init_hi.max(lo * 2.0);
    let mut r_hi = r(hi);
    let mut doublings = 0;
    while r_hi > 0.0 {
        if r_hi.is_nan() {
            return Err(Error::NonMonotone { x: hi });
        }
        if doublings == MAX_DOUBLINGS {
            return Err(Error::NoSignChange { doublings, hi });
        }
        lo = hi;
        r_lo = r_hi;
        hi *= 2.0;
        r_hi = r(hi);
        doublings += 1;
    }
    if r_hi == 0.0 {
        return Ok(hi);
    }
    if r_hi.is_nan() {
        return Err(Error::NonMonotone { x: hi });
    }

    spot_check(r, lo, r_lo, hi, r_hi, spec.tol_res)?;
    brent(r, lo, r_lo, hi, r_hi, spec)
}

fn spot_check<F: Fn(f64) -> f64>(
    r: &F,
    lo: f64,
    r_lo: f64,
    hi: f64,
    r_hi: f64,
    slack: f64,
) -> Result<()> {
    let mut prev = r_lo;
    for i in 1..=MONOTONE_PROBES {
        let x = lo + (hi - lo) * i as f64 / (MONOTONE_PROBES + 1) as f64;
        let v = r(x);
        if v.is_nan() || v > prev + slack {
            return Err(Error::NonMonotone { x });
        }
        prev = v;
    }
    if r_hi > prev + slack {
        return Err(Error::NonMonotone { x: hi });
    }
    Ok(())
}

fn brent<F: Fn(f64) -> f64>(
    r: &F,
    mut lo: f64,
    mut r_lo: f64,
    mut hi: f64,
    mut r_hi: f64,
    spec: &MonotoneRootSpec<F>,
) -> Result<f64> {
    let tol_res = spec.tol_res;
    // `b` is the best estimate, `a` the previous one, `c` the opposite bracket end.
    let (mut b, mut fb, mut c, mut fc) = if r_lo.abs() < r_hi.abs() {
        (lo, r_lo, hi, r_hi)
    } else {
        (hi, r_hi, lo, r_lo)
    };
    let (mut a, mut fa) = (c, fc);
    let mut step = hi - lo;
    let mut prev_step = step;

    for _ in 0..MAX_ITERATIONS {
        let tol_abs = if spec.tol_rel > 0.0 {
            spec.tol_abs
                .min(spec.tol_rel * b.abs())
                .max(f64::MIN_POSITIVE)
        } else {
            spec.tol_abs
        };
        if hi - lo <= 2.0 * tol_abs || fb == 0.0 {
            break;
        }
        let mid = 0.5 * (c - b);
        let tol = 0.5 * tol_abs;
        let mut use_bisection = true;
        if prev_step.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (p, q) = if a == c {
                (2.0 * mid * s, 1.0 - s)
            } else {
                let q0 = fa / fc;
                let r0 = fb / fc;
                (
                    s * (2.0 * mid * q0 * (q0 - r0) - (b - a) * (r0 - 1.0)),
                    (q0 - 1.0) * (r0 - 1.0) * (s - 1.0),
                )
            };
            let (p, q) = if p > 0.0 { (p, -q) } else { (-p, q) };
            if 2.0 * p < (3.0 * mid * q - (tol * q).abs()).min((prev_step * q).abs()) {
                prev_step = step;
                step = p / q;
                use_bisection = false;
            }
        }
        if use_bisection {
            step = mid;
            prev_step = mid;
        }
        a = b;
        fa = fb;
        b += if step.abs() > tol {
            step
        } else {
            tol.copysign(mid)
        };
        fb = r(b);
        if fb.is_nan() || fb > r_lo + tol_res || fb < r_hi - tol_res {
            return Err(Error::NonMonotone { x: b });
        }
        if fb > 0.0 {
            lo = lo.max(b);
            r_lo = fb;
        } else {
            hi = hi.min(b);
            r_hi = fb;
        }
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            step = b - a;
            prev_step = step;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        debug_assert!(r_lo >= 0.0 && r_hi <= 0.0);
    }

    let (x, fx) = if fb == 0.0 {
        (b, fb)
    } else if r_lo.abs() <= r_hi.abs() {
        (lo, r_lo)
    } else {
        (hi, r_hi)
    };
    if fx.abs() > tol_res {
        return Err(Error::ResidualTolerance {
            residual: fx.abs(),
            tolerance: tol_res,
        });
    }
    Ok(x)
}
