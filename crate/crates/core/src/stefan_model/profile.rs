use crate::error::Result;
use crate::specfun::kummer_m;

/// One-phase similarity profile
/// `Psi(x,t) = t^{alpha/2} [E M(-alpha/2, 1/2, -eta^2) + F eta M(1/2 - alpha/2, 3/2, -eta^2)]`
/// with `eta = x / (2 sqrt(d t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityProfile {
    pub alpha: f64,
    pub diffusivity: f64,
    pub e: f64,
    pub f: f64,
}

impl SimilarityProfile {
    pub fn eta(&self, x: f64, t: f64) -> f64 {
        x / (2.0 * (self.diffusivity * t).sqrt())
    }

    pub fn value(&self, x: f64, t: f64) -> Result<f64> {
        let a = self.alpha;
        let eta = self.eta(x, t);
        let z = -eta * eta;
        let even = kummer_m(-0.5 * a, 0.5, z)?;
        let odd = eta * kummer_m(0.5 - 0.5 * a, 1.5, z)?;
        Ok(t.powf(0.5 * a) * (self.e * even + self.f * odd))
    }

    /// Spatial derivative, from d/dz M(a,b,z) = (a/b) M(a+1,b+1,z) and
    /// d/dz (z^{b-1} M(a,b,z)) = (b-1) z^{b-2} M(a,b-1,z).
    pub fn gradient(&self, x: f64, t: f64) -> Result<f64> {
        let a = self.alpha;
        let eta = self.eta(x, t);
        let z = -eta * eta;
        let even = if a == 0.0 || eta == 0.0 {
            0.0
        } else {
            a * eta * kummer_m(1.0 - 0.5 * a, 1.5, z)?
        };
        let odd = 0.5 * kummer_m(0.5 - 0.5 * a, 0.5, z)?;
        Ok(t.powf(0.5 * (a - 1.0)) / self.diffusivity.sqrt() * (self.e * even + self.f * odd))
    }
}
