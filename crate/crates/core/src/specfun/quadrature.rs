//! Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 48;

fn kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
    let (value, err) = kronrod_15(f, a, b);
    if err <= tol || depth >= MAX_DEPTH || (b - a).abs() < 1e-300 {
        return (value, err);
    }
    let mid = 0.5 * (a + b);
    let (left, el) = adapt(f, a, mid, 0.5 * tol, depth + 1);
    let (right, er) = adapt(f, mid, b, 0.5 * tol, depth + 1);
    (left + right, el + er)
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (value, err) = adapt(&f, a, b, tol, 0);
    if !value.is_finite() || err > 10.0 * tol {
        return Err(Error::Quadrature {
            tolerance: tol,
            estimate: err,
        });
    }
    Ok(value)
}

/// Integrates a non-negative, eventually decaying `f` over `[0, inf)` by summing
/// doubling panels `[0,1], [1,2], [2,4], ...` until a panel past `peak` adds nothing.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, peak: f64, tol: f64) -> Result<f64> {
    let mut total = integrate(&f, 0.0, 1.0, tol)?;
    let mut lo = 1.0;
    loop {
        let hi = 2.0 * lo;
        let panel = integrate(&f, lo, hi, tol)?;
        total += panel;
        if hi > peak && panel.abs() <= 1e-17 * total.abs().max(tol) {
            return Ok(total);
        }
        if hi > 1e300 {
            return Err(Error::Quadrature {
                tolerance: tol,
                estimate: panel.abs(),
            });
        }
        lo = hi;
    }
}
