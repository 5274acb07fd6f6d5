//! Real-coded chemical reaction optimisation (CRO) with four interchangeable
//! perturbation distributions, the classic 23-function benchmark suite and
//! an experiment harness that produces per-function mean/std/best/rank tables.
//!
//! ```no_run
//! use rcro::benchmarks::{function, FunctionId};
//! use rcro::engine::{EngineState, Parameters};
//! use rcro::perturbation::{Distribution, PerturbationSpec};
//!
//! let id: FunctionId = "f16".parse().unwrap();
//! let params = Parameters::for_function(id);
//! let spec = PerturbationSpec::new(Distribution::Gaussian, params.step_size).unwrap();
//! let mut state = EngineState::initialize(params, function(id), spec, 42).unwrap();
//! let best = state.run(id.fe_limit());
//! println!("{} after {} evaluations", best.value, best.fe_used);
//! ```

pub mod benchmarks;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod perturbation;
pub mod rng;

pub use error::{Error, Result};
