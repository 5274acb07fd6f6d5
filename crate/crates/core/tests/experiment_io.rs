use std::fs;

use proptest::prelude::*;
use rcro::benchmarks::{Category, FunctionId};
use rcro::error::Error;
use rcro::experiment::*;
use rcro::perturbation::Distribution;

/// Every function, every variant, with a tiny population and budget so the
/// full protocol shape runs in well under a second.
fn cheap_plan(runs: u32, seed: u64) -> ExperimentPlan {
    let mut plan = ExperimentPlan::full(seed);
    plan.runs = runs;
    plan.overrides.pop_size = Some(4);
    plan.overrides.fe_limit = Some(40);
    plan.record_timing = false;
    plan
}

fn f(n: u8) -> FunctionId {
    FunctionId::new(n).unwrap()
}

#[test]
fn full_protocol_shape() {
    let plan = cheap_plan(100, 3);
    let records = run_plan(&plan, None).unwrap();
    assert_eq!(records.len(), 9_200);
    let rows = summarize(&records, &plan.scope()).unwrap();
    assert_eq!(rows.len(), 92);
    let ranks = category_average_ranks(&rows);
    assert_eq!(ranks.len(), 12);
    // ranks within a function are a competition ranking of the means
    for chunk in rows.chunks(4) {
        let means: Vec<f64> = chunk.iter().map(|r| r.mean).collect();
        let got: Vec<u32> = chunk.iter().map(|r| r.rank).collect();
        assert_eq!(got, rank_variants(&means));
        assert!(chunk.iter().all(|r| r.function == chunk[0].function));
    }
}

#[test]
fn category_filter_only_reports_that_category() {
    let mut plan = cheap_plan(2, 1);
    plan.functions = Category::I.functions().collect();
    let records = run_plan(&plan, None).unwrap();
    let rows = summarize(&records, &plan.scope()).unwrap();
    let ranks = category_average_ranks(&rows);
    assert_eq!(ranks.len(), 4);
    assert!(ranks.iter().all(|r| r.category == Category::I));
}

#[test]
fn resumed_store_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let plan = {
        let mut p = cheap_plan(5, 11);
        p.functions = vec![f(1), f(14), f(16)];
        p
    };
    let clean = dir.path().join("clean.csv");
    run_plan(&plan, Some(&clean)).unwrap();
    let reference = fs::read(&clean).unwrap();

    // interrupted: a prefix of the records plus half a line
    let broken = dir.path().join("broken.csv");
    let text = String::from_utf8(reference.clone()).unwrap();
    let cut = text.match_indices('\n').nth(17).unwrap().0 + 20;
    fs::write(&broken, &text[..cut]).unwrap();
    run_plan(&plan, Some(&broken)).unwrap();
    assert_eq!(fs::read(&broken).unwrap(), reference);

    // a complete store is left untouched on rerun
    run_plan(&plan, Some(&clean)).unwrap();
    assert_eq!(fs::read(&clean).unwrap(), reference);
}

#[test]
fn parallelism_does_not_change_results() {
    let mut a = cheap_plan(6, 5);
    a.functions = vec![f(2), f(15), f(19)];
    a.parallelism = 1;
    let mut b = a.clone();
    b.parallelism = 3;
    assert_eq!(run_plan(&a, None).unwrap(), run_plan(&b, None).unwrap());
}

#[test]
fn foreign_store_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("runs.csv");
    let mut plan = cheap_plan(2, 1);
    plan.functions = vec![f(18)];
    run_plan(&plan, Some(&store)).unwrap();

    let mut reseeded = plan.clone();
    reseeded.master_seed = 2;
    assert!(matches!(
        run_plan(&reseeded, Some(&store)),
        Err(Error::Config(_))
    ));

    let mut narrower = plan.clone();
    narrower.variants = vec![Distribution::Gaussian];
    assert!(matches!(
        run_plan(&narrower, Some(&store)),
        Err(Error::Config(_))
    ));
}

#[test]
fn incomplete_records_name_the_gaps() {
    let mut plan = cheap_plan(3, 9);
    plan.functions = vec![f(17)];
    let mut records = run_plan(&plan, None).unwrap();
    records.retain(|r| !(r.variant == Distribution::Cauchy && r.run == 1));
    match summarize(&records, &plan.scope()) {
        Err(Error::Incomplete(gaps)) => {
            assert_eq!(gaps.len(), 1);
            assert!(
                gaps[0].contains("f17") && gaps[0].contains("CRO_C"),
                "{gaps:?}"
            );
        }
        other => panic!("expected Incomplete, got {other:?}"),
    }
}

#[test]
fn duplicate_records_are_rejected() {
    let mut plan = cheap_plan(2, 9);
    plan.functions = vec![f(17)];
    let mut records = run_plan(&plan, None).unwrap();
    records.push(records[0].clone());
    assert!(summarize(&records, &plan.scope()).is_err());
}

#[test]
fn summary_statistics_oracle() {
    let mut plan = cheap_plan(4, 21);
    plan.functions = vec![f(20)];
    let records = run_plan(&plan, None).unwrap();
    let rows = summarize(&records, &plan.scope()).unwrap();
    for row in rows {
        let v: Vec<f64> = records
            .iter()
            .filter(|r| r.variant == row.variant)
            .map(|r| r.best)
            .collect();
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let std = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt();
        let best = v.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((row.mean - mean).abs() <= 1e-12 * mean.abs().max(1.0));
        assert!((row.std - std).abs() <= 1e-9 * std.max(1.0));
        assert_eq!(row.best, best);
    }
}

#[test]
fn competition_ranking() {
    assert_eq!(rank_variants(&[0.0, 0.0, 0.0, 0.0]), vec![1, 1, 1, 1]);
    assert_eq!(rank_variants(&[3.0, 1.0, 2.0, 4.0]), vec![3, 1, 2, 4]);
    assert_eq!(rank_variants(&[2.0, 1.0, 2.0, 5.0]), vec![2, 1, 2, 4]);
    assert_eq!(rank_variants(&[-1.0, -1.0, -3.0]), vec![2, 2, 1]);
}

#[test]
fn variant_names() {
    for d in Distribution::ALL {
        assert_eq!(parse_variant(variant_tag(d)).unwrap(), d);
        assert_eq!(parse_variant(d.name()).unwrap(), d);
    }
    assert_eq!(parse_variant_list("all").unwrap().len(), 4);
    assert!(parse_variant("levy").is_err());
}

#[test]
fn derived_seeds_are_stable_per_cell() {
    let a = cheap_plan(3, 77).cells();
    let mut other = cheap_plan(3, 77);
    other.functions = vec![f(5)];
    other.variants = vec![Distribution::ModifiedRayleigh];
    // a cell's seed depends on its coordinates, not on the rest of the plan
    for cell in other.cells() {
        let twin = a
            .iter()
            .find(|c| c.function == cell.function && c.variant == cell.variant && c.run == cell.run)
            .unwrap();
        assert_eq!(twin.seed, cell.seed);
    }
    let seeds: std::collections::HashSet<u64> = a.iter().map(|c| c.seed).collect();
    assert_eq!(seeds.len(), a.len());
}

fn arb_real() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(5e-324),
        Just(f64::MAX),
        Just(-1.0316284534898776),
    ]
}

fn arb_record() -> impl Strategy<Value = RunRecord> {
    (
        1u8..=23,
        0usize..4,
        any::<u32>(),
        any::<u64>(),
        arb_real(),
        any::<u64>(),
        0.0f64..1e7,
    )
        .prop_map(|(n, v, run, seed, best, fe_used, wall_ms)| RunRecord {
            function: FunctionId::new(n).unwrap(),
            variant: Distribution::ALL[v],
            run,
            seed,
            best,
            fe_used,
            wall_ms,
        })
}

proptest! {
    #[test]
    fn run_records_round_trip(records in prop::collection::vec(arb_record(), 0..20)) {
        let mut buf = Vec::new();
        write_records(&mut buf, &records).unwrap();
        let back = read_records(buf.as_slice()).unwrap();
        prop_assert_eq!(back.len(), records.len());
        for (a, b) in back.iter().zip(&records) {
            prop_assert_eq!(a.best.to_bits(), b.best.to_bits());
            prop_assert_eq!(a.wall_ms.to_bits(), b.wall_ms.to_bits());
            prop_assert_eq!(a.seed, b.seed);
            prop_assert_eq!((a.function, a.variant, a.run, a.fe_used), (b.function, b.variant, b.run, b.fe_used));
        }
    }

    #[test]
    fn summary_rows_round_trip(
        rows in prop::collection::vec((1u8..=23, 0usize..4, arb_real(), 0.0f64..1e300, arb_real(), 1u32..5), 0..12)
    ) {
        let rows: Vec<SummaryRow> = rows
            .into_iter()
            .map(|(n, v, mean, std, best, rank)| SummaryRow {
                function: FunctionId::new(n).unwrap(),
                variant: Distribution::ALL[v],
                mean,
                std,
                best,
                rank,
            })
            .collect();
        let mut buf = Vec::new();
        write_summary(&mut buf, &rows).unwrap();
        prop_assert_eq!(read_summary(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn category_ranks_round_trip(values in prop::collection::vec((0usize..3, 0usize..4, 1.0f64..4.0), 0..12)) {
        let ranks: Vec<CategoryRank> = values
            .into_iter()
            .map(|(c, v, avg_rank)| CategoryRank { category: Category::ALL[c], variant: Distribution::ALL[v], avg_rank })
            .collect();
        let mut buf = Vec::new();
        write_category_ranks(&mut buf, &ranks).unwrap();
        prop_assert_eq!(read_category_ranks(buf.as_slice()).unwrap(), ranks);
    }

    #[test]
    fn ranks_are_order_consistent(means in prop::collection::vec(-1e3f64..1e3, 1..8)) {
        let ranks = rank_variants(&means);
        for i in 0..means.len() {
            prop_assert!(ranks[i] >= 1 && ranks[i] as usize <= means.len());
            for j in 0..means.len() {
                if means[i] < means[j] { prop_assert!(ranks[i] < ranks[j]); }
                if means[i] == means[j] { prop_assert_eq!(ranks[i], ranks[j]); }
            }
        }
    }
}

#[test]
fn malformed_files_are_errors() {
    assert!(read_records("function,variant\nf1,CRO_G\n".as_bytes()).is_err());
    let bad_value = format!("{}\nf1,CRO_G,0,1,abc,10,0\n", RUN_HEADER.join(","));
    assert!(read_records(bad_value.as_bytes()).is_err());
    let bad_variant = format!("{}\nf1,CRO_X,0,1,1.0,10,0\n", RUN_HEADER.join(","));
    assert!(read_records(bad_variant.as_bytes()).is_err());
}
