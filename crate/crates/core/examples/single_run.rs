// One optimisation run with the category preset for the chosen function.
//
// ```text
// cargo run --release --example single_run -- f16 gaussian 7
// ```

use rcro::benchmarks::{function, FunctionId};
use rcro::engine::{solve, Parameters};
use rcro::perturbation::{Distribution, PerturbationSpec};

fn main() -> rcro::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: FunctionId = args.next().as_deref().unwrap_or("f16").parse()?;
    let kind: Distribution = args.next().as_deref().unwrap_or("gaussian").parse()?;
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let problem = function(id);
    let params = Parameters::for_function(id);
    let spec = PerturbationSpec::new(kind, params.step_size)?;
    println!(
        "{} ({}), dim {}, {} with step {}, budget {} evaluations",
        id,
        problem.name,
        problem.dim,
        kind.name(),
        params.step_size,
        id.fe_limit()
    );

    let known = problem.known_min;
    let best = solve(params, problem, spec, seed, id.fe_limit())?;
    println!("best value   {:.10e}", best.value);
    println!("known min    {known:.10e}");
    println!("evaluations  {}", best.fe_used);
    println!("wall time    {:.1} ms", best.wall_ms);
    if best.structure.len() <= 6 {
        println!("structure    {:?}", best.structure);
    }
    Ok(())
}
