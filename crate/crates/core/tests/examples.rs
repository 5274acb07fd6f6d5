//! The quick cargo examples, compiled in and run once each.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
            pub fn run() {
                main().expect(concat!($file, " runs"));
            }
        }
    };
}

example!(single_run, "single_run.rs");
example!(perturbation_pdfs, "perturbation_pdfs.rs");
example!(sampler_audit, "sampler_audit.rs");
example!(category_table, "category_table.rs");
example!(benchmark_catalog, "benchmark_catalog.rs");

#[test]
fn single_run_example() {
    single_run::run();
}

#[test]
fn perturbation_pdfs_example() {
    perturbation_pdfs::run();
}

#[test]
fn sampler_audit_example() {
    sampler_audit::run();
}

#[test]
fn category_table_example() {
    category_table::run();
}

#[test]
fn benchmark_catalog_example() {
    benchmark_catalog::run();
}
