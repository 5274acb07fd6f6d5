// A reduced experiment on the low-dimensional category: summary rows with
// competition ranks, then the average rank of each variant.
//
// ```text
// cargo run --release --example category_table -- 20
// ```

use rcro::benchmarks::Category;
use rcro::experiment::{
    category_average_ranks, run_plan, summarize, variant_tag, write_category_ranks, write_summary,
    ExperimentPlan,
};
use rcro::perturbation::Distribution;

fn main() -> rcro::Result<()> {
    let runs: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let functions = Category::III.functions().collect();
    let mut plan = ExperimentPlan::new(Distribution::ALL.to_vec(), functions, runs, 42);
    plan.record_timing = false;

    let records = run_plan(&plan, None)?;
    let rows = summarize(&records, &plan.scope())?;
    let mut table = Vec::new();
    write_summary(&mut table, &rows).expect("in-memory write");
    print!("{}", String::from_utf8_lossy(&table));

    let ranks = category_average_ranks(&rows);
    let mut table = Vec::new();
    write_category_ranks(&mut table, &ranks).expect("in-memory write");
    print!("\n{}", String::from_utf8_lossy(&table));
    let winner = ranks
        .iter()
        .min_by(|a, b| a.avg_rank.total_cmp(&b.avg_rank))
        .expect("non-empty plan");
    println!(
        "\nbest average rank: {} ({:.2})",
        variant_tag(winner.variant),
        winner.avg_rank
    );
    Ok(())
}
