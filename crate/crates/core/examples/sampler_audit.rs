// Draws from each perturbation sampler and compares empirical quantiles with
// the density integrated numerically.
//
// ```text
// cargo run --release --example sampler_audit -- 100000
// ```

use rcro::perturbation::{sample, Distribution, PerturbationSpec};
use rcro::rng::RandomSource;

/// CDF by trapezoid integration of the density from `-span` to `x`.
fn cdf(spec: &PerturbationSpec, x: f64, span: f64) -> f64 {
    let n = 20_000;
    let h = (x + span) / n as f64;
    let mut acc = 0.5 * (spec.pdf(-span) + spec.pdf(x));
    for i in 1..n {
        acc += spec.pdf(-span + i as f64 * h);
    }
    acc * h
}

fn main() -> rcro::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_000);
    println!("distribution,q,empirical,cdf_at_empirical");
    for kind in Distribution::ALL {
        let spec = PerturbationSpec::new(kind, 1.0)?;
        let mut rng = RandomSource::new(2024);
        let mut xs: Vec<f64> = (0..n).map(|_| sample(&spec, &mut rng)).collect();
        xs.sort_by(f64::total_cmp);
        // the Cauchy tail needs a wide lower limit; its CDF is closed form
        for q in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let x = xs[((n as f64) * q) as usize];
            let f = match kind {
                Distribution::Cauchy => 0.5 + x.atan() / std::f64::consts::PI,
                _ => cdf(&spec, x, 40.0),
            };
            println!("{},{q},{x:.5},{f:.5}", kind.name());
        }
    }
    Ok(())
}
