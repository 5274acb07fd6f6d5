// The benchmark suite with each function evaluated at its known minimiser.

use rcro::benchmarks::suite;
use rcro::rng::RandomSource;

fn main() -> rcro::Result<()> {
    let mut noise = RandomSource::new(0);
    println!(
        "{:<4} {:<18} {:>3} {:>4} {:>8} {:>22} {:>22}",
        "id", "name", "dim", "cat", "budget", "known_min", "f(argmin)"
    );
    for f in suite() {
        let at = match &f.argmin {
            Some(x) => format!("{:.15e}", f.evaluate(x, &mut noise)?),
            None => "-".to_string(),
        };
        println!(
            "{:<4} {:<18} {:>3} {:>4} {:>8} {:>22.15e} {:>22}",
            f.id.to_string(),
            f.name,
            f.dim,
            f.category.to_string(),
            f.fe_limit(),
            f.known_min,
            at
        );
    }
    Ok(())
}
