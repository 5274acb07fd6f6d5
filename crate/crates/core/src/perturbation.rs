//! Perturbation distributions: density evaluation and seeded sampling.
//!
//! Four zero-centred laws drive the neighbourhood operators of the engine. A
//! single scale knob (the engine's step size) maps onto each law:
//!
//! | kind                  | parameter            |
//! |-----------------------|----------------------|
//! | Gaussian              | σ = scale            |
//! | Cauchy                | γ = scale            |
//! | mirrored exponential  | rate γ = 1 / scale   |
//! | modified Rayleigh     | σ = scale            |
//!
//! The density functions also accept a non-zero location where the law has one,
//! which is only used for tabulating curves.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distribution {
    Gaussian,
    Cauchy,
    ExponentialMirrored,
    ModifiedRayleigh,
}

impl Distribution {
    pub const ALL: [Distribution; 4] = [
        Distribution::Gaussian,
        Distribution::Cauchy,
        Distribution::ExponentialMirrored,
        Distribution::ModifiedRayleigh,
    ];

    /// Canonical command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Gaussian => "gaussian",
            Distribution::Cauchy => "cauchy",
            Distribution::ExponentialMirrored => "exponential",
            Distribution::ModifiedRayleigh => "rayleigh-modified",
        }
    }

    /// Number of uniforms one call to [`sample`] consumes.
    pub fn uniforms_per_draw(self) -> usize {
        match self {
            Distribution::Cauchy => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" | "normal" | "g" => Ok(Distribution::Gaussian),
            "cauchy" | "c" => Ok(Distribution::Cauchy),
            "exponential" | "exponential-mirrored" | "exp" | "e" => {
                Ok(Distribution::ExponentialMirrored)
            }
            "rayleigh-modified" | "modified-rayleigh" | "r" => Ok(Distribution::ModifiedRayleigh),
            other => Err(Error::Argument(format!("unknown distribution: {other}"))),
        }
    }
}

/// Which law to draw perturbation factors from, and at what magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec {
    pub kind: Distribution,
    pub scale: f64,
    pub location: f64,
}

impl PerturbationSpec {
    /// Zero-centred spec, as used by the engine.
    pub fn new(kind: Distribution, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Domain(format!(
                "perturbation scale must be positive and finite, got {scale}"
            )));
        }
        Ok(Self {
            kind,
            scale,
            location: 0.0,
        })
    }

    pub fn with_location(mut self, location: f64) -> Self {
        self.location = location;
        self
    }

    /// Density of the law this spec samples from.
    pub fn pdf(&self, x: f64) -> f64 {
        let s = self.scale;
        let x = x - self.location;
        // Parameters were validated on construction.
        match self.kind {
            Distribution::Gaussian => gaussian(x, 0.0, s * s),
            Distribution::Cauchy => cauchy(x, 0.0, s),
            Distribution::ExponentialMirrored => exponential_mirrored(x, 1.0 / s),
            Distribution::ModifiedRayleigh => modified_rayleigh(x, s * s),
        }
    }

    /// Maps uniforms to a variate. `u1` must lie in `(0, 1)`, `u2` in `[0, 1)`;
    /// the Cauchy law ignores `u2`.
    pub fn transform(&self, u1: f64, u2: f64) -> f64 {
        let s = self.scale;
        let eps = match self.kind {
            Distribution::Gaussian => s * (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos(),
            Distribution::Cauchy => cauchy_quantile(u1, s),
            Distribution::ExponentialMirrored => random_sign(u2) * (-u1.ln()) * s,
            Distribution::ModifiedRayleigh => {
                let radius = s * (-2.0 * u1.ln()).sqrt();
                random_sign(u2) * (radius - s)
            }
        };
        self.location + eps
    }
}

#[inline]
fn random_sign(u: f64) -> f64 {
    if u < 0.5 {
        1.0
    } else {
        -1.0
    }
}

/// Cauchy quantile at location 0: `γ·tan(π(u − ½))`.
#[inline]
pub fn cauchy_quantile(u: f64, gamma: f64) -> f64 {
    gamma * (PI * (u - 0.5)).tan()
}

/// Draws one perturbation factor.
///
/// Consumes [`Distribution::uniforms_per_draw`] uniforms from `rng`.
pub fn sample(spec: &PerturbationSpec, rng: &mut RandomSource) -> f64 {
    let u1 = rng.uniform_open();
    let u2 = match spec.kind {
        Distribution::Cauchy => 0.0,
        _ => rng.uniform(),
    };
    spec.transform(u1, u2)
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

pub fn pdf_gaussian(x: f64, mu: f64, sigma2: f64) -> Result<f64> {
    positive("sigma2", sigma2)?;
    Ok(gaussian(x, mu, sigma2))
}

pub fn pdf_cauchy(x: f64, x0: f64, gamma: f64) -> Result<f64> {
    positive("gamma", gamma)?;
    Ok(cauchy(x, x0, gamma))
}

/// One-sided exponential density reflected onto the negative axis and halved.
pub fn pdf_exponential_mirrored(x: f64, gamma: f64) -> Result<f64> {
    positive("gamma", gamma)?;
    Ok(exponential_mirrored(x, gamma))
}

/// Plain Rayleigh density; zero for negative `x`.
pub fn pdf_rayleigh(x: f64, sigma2: f64) -> Result<f64> {
    positive("sigma2", sigma2)?;
    Ok(rayleigh(x, sigma2))
}

/// Symmetric density built from a Rayleigh curve shifted left by σ, mirrored
/// about the origin and averaged with itself.
pub fn pdf_modified_rayleigh(x: f64, sigma2: f64) -> Result<f64> {
    positive("sigma2", sigma2)?;
    Ok(modified_rayleigh(x, sigma2))
}

/// `1` if `x >= sigma`, else `0`.
#[inline]
pub fn step(x: f64, sigma: f64) -> f64 {
    if x >= sigma {
        1.0
    } else {
        0.0
    }
}

fn gaussian(x: f64, mu: f64, sigma2: f64) -> f64 {
    let d = x - mu;
    (-(d * d) / (2.0 * sigma2)).exp() / (2.0 * PI * sigma2).sqrt()
}

fn cauchy(x: f64, x0: f64, gamma: f64) -> f64 {
    let d = x - x0;
    gamma / (d * d + gamma * gamma) / PI
}

fn exponential_mirrored(x: f64, gamma: f64) -> f64 {
    0.5 * gamma * (-gamma * x.abs()).exp()
}

fn rayleigh(x: f64, sigma2: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    x / sigma2 * (-(x * x) / (2.0 * sigma2)).exp()
}

fn modified_rayleigh(x: f64, sigma2: f64) -> f64 {
    let sigma = sigma2.sqrt();
    let right = sigma + x;
    let left = sigma - x;
    let shifted = right / sigma2 * (-(right * right) / (2.0 * sigma2)).exp() * step(x, -sigma);
    let mirrored = left / sigma2 * (-(left * left) / (2.0 * sigma2)).exp() * (1.0 - step(x, sigma));
    (shifted + mirrored) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-5;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn gaussian_values() {
        assert!(close(pdf_gaussian(0.0, 0.0, 1.0).unwrap(), 0.39894, TOL));
        assert!(close(pdf_gaussian(3.0, 3.0, 4.0).unwrap(), 0.19947, TOL));
        let direct = (-0.5f64).exp() / (2.0 * PI).sqrt();
        assert!(close(pdf_gaussian(1.0, 0.0, 1.0).unwrap(), direct, 1e-15));
        assert!(close(direct, 0.24197, TOL));
    }

    #[test]
    fn cauchy_values() {
        assert!(close(pdf_cauchy(0.0, 0.0, 1.0).unwrap(), 1.0 / PI, 1e-15));
        for (x0, g) in [(0.0, 1.0), (-2.0, 0.3), (5.0, 7.0)] {
            let half = pdf_cauchy(x0 + g, x0, g).unwrap();
            assert!(close(half, 1.0 / (2.0 * PI * g), 1e-14));
        }
        assert!(close(pdf_cauchy(2.0, 0.0, 0.5).unwrap(), 0.037448, 1e-6));
    }

    #[test]
    fn exponential_values() {
        assert_eq!(pdf_exponential_mirrored(0.0, 2.0).unwrap(), 1.0);
        let v = pdf_exponential_mirrored(1.0, 1.0).unwrap();
        assert!(close(v, 0.18394, TOL));
        assert_eq!(pdf_exponential_mirrored(-1.0, 1.0).unwrap(), v);
    }

    #[test]
    fn rayleigh_values() {
        assert_eq!(pdf_rayleigh(0.0, 1.0).unwrap(), 0.0);
        assert!(close(pdf_rayleigh(1.0, 1.0).unwrap(), 0.60653, TOL));
        assert_eq!(pdf_rayleigh(-1.0, 1.0).unwrap(), 0.0);
        // mode sits at x = σ
        let s2: f64 = 2.5;
        let s = s2.sqrt();
        let peak = pdf_rayleigh(s, s2).unwrap();
        assert!(peak > pdf_rayleigh(s - 1e-3, s2).unwrap());
        assert!(peak > pdf_rayleigh(s + 1e-3, s2).unwrap());
    }

    #[test]
    fn step_boundaries() {
        assert_eq!(step(1.0, 1.0), 1.0);
        assert_eq!(step(-0.001, 0.0), 0.0);
        assert_eq!(step(5.0, 1.0), 1.0);
    }

    #[test]
    fn modified_rayleigh_values() {
        let at_zero = pdf_modified_rayleigh(0.0, 1.0).unwrap();
        assert!(close(at_zero, (-0.5f64).exp(), 1e-15));
        let at_edge = pdf_modified_rayleigh(-1.0, 1.0).unwrap();
        assert!(close(at_edge, (-2.0f64).exp(), 1e-15));
        assert!(close(at_edge, 0.13534, TOL));
    }

    #[test]
    fn non_positive_scale_is_domain_error() {
        assert!(matches!(pdf_gaussian(0.0, 0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(pdf_cauchy(0.0, 0.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(
            pdf_exponential_mirrored(0.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(pdf_rayleigh(0.0, -2.0), Err(Error::Domain(_))));
        assert!(matches!(
            pdf_modified_rayleigh(0.0, f64::NAN),
            Err(Error::Domain(_))
        ));
        assert!(PerturbationSpec::new(Distribution::Cauchy, 0.0).is_err());
    }

    #[test]
    fn cauchy_quantile_points() {
        let spec = PerturbationSpec::new(Distribution::Cauchy, 1.0).unwrap();
        assert_eq!(spec.transform(0.5, 0.0), 0.0);
        let g = 2.5;
        assert!(close(cauchy_quantile(0.75, g), g, 1e-12));
    }

    #[test]
    fn parse_names() {
        for d in Distribution::ALL {
            assert_eq!(d.name().parse::<Distribution>().unwrap(), d);
        }
        let err = "levy".parse::<Distribution>().unwrap_err();
        assert!(err.to_string().contains("unknown distribution"));
    }

    #[test]
    fn gaussian_sample_moments() {
        let spec = PerturbationSpec::new(Distribution::Gaussian, 1.0).unwrap();
        let mut rng = RandomSource::new(2024);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| sample(&spec, &mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() <= 0.02, "mean {mean}");
        assert!((0.97..=1.03).contains(&var), "var {var}");
    }

    #[test]
    fn spec_pdf_uses_scale_mapping() {
        let s = 0.7;
        let g = PerturbationSpec::new(Distribution::Gaussian, s).unwrap();
        assert_eq!(g.pdf(0.3), pdf_gaussian(0.3, 0.0, s * s).unwrap());
        let e = PerturbationSpec::new(Distribution::ExponentialMirrored, s).unwrap();
        assert_eq!(e.pdf(0.3), pdf_exponential_mirrored(0.3, 1.0 / s).unwrap());
        let r = PerturbationSpec::new(Distribution::ModifiedRayleigh, s).unwrap();
        assert_eq!(r.pdf(-0.3), pdf_modified_rayleigh(-0.3, s * s).unwrap());
    }
}
