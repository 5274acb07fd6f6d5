//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own density or sampling code unless a caller passes it in.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite Simpson rule with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2) && n > 0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// CDF tabulated by cumulative Simpson integration of a density on `[lo, hi]`
/// and read back by linear interpolation. Outside the grid it is 0 or 1.
pub struct TabulatedCdf {
    lo: f64,
    h: f64,
    values: Vec<f64>,
}

impl TabulatedCdf {
    pub fn new(pdf: impl Fn(f64) -> f64, lo: f64, hi: f64, cells: usize) -> Self {
        let h = (hi - lo) / cells as f64;
        let mut values = Vec::with_capacity(cells + 1);
        let mut acc = 0.0;
        values.push(0.0);
        for i in 0..cells {
            let a = lo + i as f64 * h;
            // Simpson on each cell
            acc += h / 6.0 * (pdf(a) + 4.0 * pdf(a + h / 2.0) + pdf(a + h));
            values.push(acc);
        }
        Self { lo, h, values }
    }

    pub fn total(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = (x - self.lo) / self.h;
        if t <= 0.0 {
            return 0.0;
        }
        let i = t.floor() as usize;
        if i + 1 >= self.values.len() {
            return 1.0;
        }
        let frac = t - i as f64;
        self.values[i] + frac * (self.values[i + 1] - self.values[i])
    }
}

/// One-sample Kolmogorov–Smirnov statistic of `xs` against `cdf`.
pub fn ks_statistic(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, x)| {
            let f = cdf(*x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic Kolmogorov tail probability `P(D > d)` for effective size `n`,
/// with the usual small-sample correction.
pub fn ks_p_value(d: f64, n: f64) -> f64 {
    let sn = n.sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = (-2.0 * k * k * lambda * lambda).exp();
        sum += if k as u64 % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

pub fn cauchy_cdf(x: f64, gamma: f64) -> f64 {
    0.5 + (x / gamma).atan() / PI
}

/// Laplace law with rate `1/scale`.
pub fn mirrored_exponential_cdf(x: f64, scale: f64) -> f64 {
    if x < 0.0 {
        0.5 * (x / scale).exp()
    } else {
        1.0 - 0.5 * (-x / scale).exp()
    }
}

/// Closed form for `S·(R − σ)` with `R` Rayleigh(σ) and `S` a fair sign.
pub fn modified_rayleigh_cdf(x: f64, sigma: f64) -> f64 {
    let below = |y: f64| {
        if y <= -sigma {
            0.0
        } else {
            1.0 - (-(y + sigma).powi(2) / (2.0 * sigma * sigma)).exp()
        }
    };
    0.5 * below(x) + 0.5 * (1.0 - below(-x))
}

pub fn normal_pdf(x: f64, sigma: f64) -> f64 {
    (-(x * x) / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt())
}

pub fn normal_cdf_table(sigma: f64) -> TabulatedCdf {
    TabulatedCdf::new(
        |x| normal_pdf(x, sigma),
        -12.0 * sigma,
        12.0 * sigma,
        400_000,
    )
}
