// Tabulates the four perturbation densities at a common scale as CSV, ready
// for plotting.
//
// ```text
// cargo run --example perturbation_pdfs -- 1.0 > pdfs.csv
// ```

use rcro::perturbation::{Distribution, PerturbationSpec};

fn main() -> rcro::Result<()> {
    let scale: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);
    let specs = Distribution::ALL
        .iter()
        .map(|d| PerturbationSpec::new(*d, scale))
        .collect::<rcro::Result<Vec<_>>>()?;

    let names: Vec<&str> = Distribution::ALL.iter().map(|d| d.name()).collect();
    println!("x,{}", names.join(","));
    let (lo, hi, n) = (-5.0 * scale, 5.0 * scale, 201);
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let row: Vec<String> = specs.iter().map(|s| format!("{:.8e}", s.pdf(x))).collect();
        println!("{x:.4},{}", row.join(","));
    }
    Ok(())
}
