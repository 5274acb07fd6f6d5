// Best-so-far trace and reaction counts for one run.
//
// ```text
// cargo run --release --example convergence_trace -- f9 exponential 5000
// ```

use rcro::benchmarks::{function, FunctionId};
use rcro::engine::{EngineState, Parameters, ReactionKind};
use rcro::perturbation::{Distribution, PerturbationSpec};

fn main() -> rcro::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: FunctionId = args.next().as_deref().unwrap_or("f9").parse()?;
    let kind: Distribution = args.next().as_deref().unwrap_or("exponential").parse()?;
    let stride: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5_000);

    let params = Parameters::for_function(id);
    let spec = PerturbationSpec::new(kind, params.step_size)?;
    let mut state = EngineState::initialize(params, function(id), spec, 11)?.with_trace(stride);
    let e0 = state.total_energy();
    let mut drift: f64 = 0.0;
    state.run_observed(id.fe_limit(), |s, _| {
        drift = drift.max((s.total_energy() - e0).abs());
    });

    state
        .trace
        .as_ref()
        .expect("trace enabled")
        .write_csv(std::io::stdout().lock())
        .expect("stdout");

    eprintln!("reaction,attempted,accepted");
    for k in ReactionKind::ALL {
        eprintln!(
            "{k:?},{},{}",
            state.stats.attempted(k),
            state.stats.accepted(k)
        );
    }
    eprintln!(
        "population {} | buffer {:.4e}",
        state.population(),
        state.buffer
    );
    eprintln!("max energy drift {drift:.3e} (total {e0:.6e})");
    Ok(())
}
