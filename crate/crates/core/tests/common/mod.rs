//! Reference implementations used only by the tests. None of them share code with the
//! library: the Kummer series runs in big-integer fixed point, the integrals use
//! double-exponential quadrature, and the alpha = 0 roots come from plain bisection on
//! erf/erfc expressions.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Float, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_err(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

/// `exp(uniform(ln lo, ln hi))`.
pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

fn to_fixed(x: f64, bits: u32) -> BigInt {
    let (mantissa, exponent, sign) = Float::integer_decode(x);
    let m = BigInt::from(mantissa) * BigInt::from(sign);
    let shift = exponent as i64 + bits as i64;
    if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    }
}

fn from_fixed(v: &BigInt, bits: u32) -> f64 {
    // keep 64 significant bits so the conversion itself cannot overflow
    let excess = v.bits().saturating_sub(64) as i32;
    let top = (v >> excess as usize).to_f64().unwrap();
    top * 2f64.powi(excess - bits as i32)
}

/// `M(a, b, z)` by direct summation of the defining series in fixed point with `bits`
/// fractional bits. Exact inputs, truncation error about `2^-bits` per term.
pub fn kummer_m_series(a: f64, b: f64, z: f64, bits: u32) -> f64 {
    let one = BigInt::from(1) << bits as usize;
    let (fa, fb, fz) = (to_fixed(a, bits), to_fixed(b, bits), to_fixed(z, bits));
    let mut term = one.clone();
    let mut sum = one.clone();
    let settle = (2.0 * z.abs() + a.abs() + b.abs()) as usize + 10;
    for s in 0usize.. {
        let shift = BigInt::from(s) << bits as usize;
        let num = &term * (&fa + &shift) * &fz;
        let den = (&fb + &shift) * BigInt::from(s + 1) * &one;
        term = num / den;
        sum += &term;
        if s > settle && term.abs() < BigInt::from(2) {
            break;
        }
        if term.is_zero() && s > settle {
            break;
        }
    }
    from_fixed(&sum, bits)
}

/// `int_0^inf exp(log_integrand(ln t, t)) dt` by the exp-sinh rule, step halving until two
/// successive estimates agree to `1e-14` relative.
pub fn exp_sinh<F: Fn(f64, f64) -> f64>(log_integrand: F) -> f64 {
    let half_pi = 0.5 * PI;
    let node = |u: f64| -> f64 {
        let ln_t = half_pi * u.sinh();
        let t = ln_t.exp();
        let l = log_integrand(ln_t, t);
        if l.is_nan() || l < -745.0 {
            0.0
        } else {
            (l + ln_t).exp() * half_pi * u.cosh()
        }
    };
    let limit = 7.0;
    let mut h = 0.5;
    let mut sum: f64 = node(0.0);
    let mut k = 1;
    while k as f64 * h <= limit {
        sum += node(k as f64 * h) + node(-(k as f64) * h);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= limit {
            sum += node(k as f64 * h) + node(-(k as f64) * h);
            k += 2;
        }
        let next = sum * h;
        if (next - estimate).abs() <= 1e-14 * next.abs() {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// `U(a, b, z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt`, a > 0, z > 0.
pub fn kummer_u_integral(a: f64, b: f64, z: f64) -> f64 {
    let integral = exp_sinh(|ln_t, t| {
        let decay = z * t;
        if decay > 800.0 {
            f64::NEG_INFINITY
        } else {
            -decay + (a - 1.0) * ln_t + (b - a - 1.0) * t.ln_1p()
        }
    });
    integral / libm::tgamma(a)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `i^n erfc(x) = 2 / (sqrt(pi) n!) int_x^inf (t - x)^n e^{-t^2} dt`.
pub fn inerfc_integral(n: u32, x: f64) -> f64 {
    let integral = exp_sinh(|ln_u, u| n as f64 * ln_u - (x + u) * (x + u));
    2.0 / (PI.sqrt() * factorial(n)) * integral
}

/// Bisection to `tol` on `[lo, hi]` for a function with `f(lo) > 0 > f(hi)`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    assert!(f(lo) > 0.0 && f(hi) < 0.0, "bisection bracket");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Physical parameters for the closed forms below.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub gamma: f64,
    pub t_i: f64,
    pub t_inf: f64,
    pub h0: f64,
    pub k_l: f64,
    pub d_l: f64,
    pub k_s: f64,
    pub d_s: f64,
}

impl Params {
    pub fn ones(h0: f64) -> Self {
        Self {
            gamma: 1.0,
            t_i: 1.0,
            t_inf: 1.0,
            h0,
            k_l: 1.0,
            d_l: 1.0,
            k_s: 1.0,
            d_s: 1.0,
        }
    }

    pub fn omega(&self) -> f64 {
        (self.d_l / self.d_s).sqrt()
    }
}

/// Constant latent heat, convective face: residual of the front equation.
pub fn alpha_zero_residual(x: f64, p: &Params) -> f64 {
    let w = p.omega();
    let solid = p.k_s * p.t_i / (p.gamma * (PI * p.d_l * p.d_s).sqrt()) * (-x * x * w * w).exp()
        / libm::erfc(x * w);
    let liquid = p.h0 * p.t_inf / (p.gamma * p.d_l.sqrt()) * (-x * x).exp()
        / (1.0 + (PI * p.d_l).sqrt() * p.h0 * libm::erf(x) / p.k_l);
    liquid - solid - x
}

pub fn alpha_zero_nu(p: &Params) -> f64 {
    let mut hi = 1.0;
    while alpha_zero_residual(hi, p) > 0.0 {
        hi *= 2.0;
    }
    bisect(|x| alpha_zero_residual(x, p), 0.0, hi, 1e-15)
}

pub fn alpha_zero_liquid(x: f64, t: f64, nu: f64, p: &Params) -> f64 {
    let c = (PI * p.d_l).sqrt() * p.h0 / p.k_l;
    p.t_inf * c * (libm::erf(nu) - libm::erf(x / (2.0 * (p.d_l * t).sqrt())))
        / (1.0 + c * libm::erf(nu))
}

/// Solid temperature with erfc(nu omega) in the denominator, which is what makes it vanish
/// at the front.
pub fn alpha_zero_solid(x: f64, t: f64, nu: f64, p: &Params) -> f64 {
    let eta = x / (2.0 * (p.d_s * t).sqrt());
    -p.t_i * (1.0 - libm::erfc(eta) / libm::erfc(nu * p.omega()))
}

/// Constant latent heat, prescribed face temperature: residual of the front equation.
pub fn alpha_zero_dirichlet_residual(x: f64, p: &Params) -> f64 {
    let w = p.omega();
    let solid = p.k_s * p.t_i / (p.gamma * (PI * p.d_l * p.d_s).sqrt()) * (-x * x * w * w).exp()
        / libm::erfc(x * w);
    let liquid = p.k_l * p.t_inf / (p.gamma * PI.sqrt() * p.d_l) * (-x * x).exp() / libm::erf(x);
    liquid - solid - x
}

pub fn alpha_zero_dirichlet_nu(p: &Params) -> f64 {
    let mut lo = 1.0;
    while alpha_zero_dirichlet_residual(lo, p) < 0.0 {
        lo *= 0.5;
    }
    let mut hi = 1.0;
    while alpha_zero_dirichlet_residual(hi, p) > 0.0 {
        hi *= 2.0;
    }
    bisect(|x| alpha_zero_dirichlet_residual(x, p), lo, hi, 1e-15)
}
