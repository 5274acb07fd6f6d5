//! The chemical reaction optimisation loop.
//!
//! A population of [`Molecule`]s lives in a closed container together with a
//! central energy buffer. Each iteration picks a reaction, generates candidate
//! structures, evaluates them and applies the energy rule: a candidate is only
//! accepted if the energy it needs is available, so `Σ(PE + KE) + buffer`
//! stays constant for the whole run.

mod molecule;
pub mod reactions;

use std::io::Write;
use std::time::Instant;

pub use molecule::Molecule;

use crate::benchmarks::{BenchmarkFunction, Category, FunctionId};
use crate::error::{Error, Result};
use crate::perturbation::PerturbationSpec;
use crate::rng::RandomSource;
use reactions::{
    decomposition_balance, decomposition_child, intermolecular_balance, neighbor, on_wall_balance,
    synthesis_balance, synthesis_child,
};

/// Algorithm parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    pub pop_size: usize,
    pub step_size: f64,
    /// Initial content of the central energy buffer.
    pub en_buff: f64,
    pub ini_ke: f64,
    /// Fraction of iterations that are inter-molecular.
    pub coll_rate: f64,
    /// Lower end of the on-wall KE retention fraction.
    pub loss_rate: f64,
    /// Decomposition fires when a molecule has gone this many hits without improving.
    pub dec_thres: u64,
    /// Synthesis fires when both colliding molecules have at most this much KE.
    pub syn_thres: f64,
}

impl Parameters {
    /// Per-category defaults.
    pub fn preset(category: Category) -> Self {
        match category {
            Category::I => Self {
                pop_size: 10,
                step_size: 0.1,
                en_buff: 1e6,
                ini_ke: 1e3,
                coll_rate: 0.2,
                loss_rate: 0.9,
                dec_thres: 150_000,
                syn_thres: 0.0,
            },
            Category::II => Self {
                pop_size: 20,
                step_size: 1.0,
                en_buff: 1e5,
                ini_ke: 1e7,
                coll_rate: 0.2,
                loss_rate: 0.1,
                dec_thres: 150_000,
                syn_thres: 10.0,
            },
            Category::III => Self {
                pop_size: 100,
                step_size: 0.5,
                en_buff: 0.0,
                ini_ke: 1e3,
                coll_rate: 0.2,
                loss_rate: 0.1,
                dec_thres: 500,
                syn_thres: 10.0,
            },
        }
    }

    /// Category preset with the f8/f11 step-size exceptions applied.
    pub fn for_function(id: FunctionId) -> Self {
        let mut p = Self::preset(id.category());
        match id.number() {
            8 => p.step_size = 300.0,
            11 => p.step_size = 15.0,
            _ => {}
        }
        p
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.pop_size < 1 {
            return bad(format!(
                "pop_size must be at least 1, got {}",
                self.pop_size
            ));
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return bad(format!(
                "step_size must be positive, got {}",
                self.step_size
            ));
        }
        for (name, v) in [
            ("en_buff", self.en_buff),
            ("ini_ke", self.ini_ke),
            ("syn_thres", self.syn_thres),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return bad(format!("{name} must be non-negative, got {v}"));
            }
        }
        for (name, v) in [("coll_rate", self.coll_rate), ("loss_rate", self.loss_rate)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReactionKind {
    OnWall,
    Decomposition,
    Intermolecular,
    Synthesis,
}

impl ReactionKind {
    pub const ALL: [ReactionKind; 4] = [
        ReactionKind::OnWall,
        ReactionKind::Decomposition,
        ReactionKind::Intermolecular,
        ReactionKind::Synthesis,
    ];

    /// Objective evaluations one reaction costs.
    pub fn evaluations(self) -> u64 {
        match self {
            ReactionKind::OnWall | ReactionKind::Synthesis => 1,
            ReactionKind::Decomposition | ReactionKind::Intermolecular => 2,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReactionOutcome {
    pub kind: ReactionKind,
    pub accepted: bool,
}

/// Attempted and accepted counts per reaction kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReactionStats {
    pub attempted: [u64; 4],
    pub accepted: [u64; 4],
}

impl ReactionStats {
    pub fn attempted(&self, kind: ReactionKind) -> u64 {
        self.attempted[kind.slot()]
    }

    pub fn accepted(&self, kind: ReactionKind) -> u64 {
        self.accepted[kind.slot()]
    }

    fn record(&mut self, outcome: ReactionOutcome) {
        self.attempted[outcome.kind.slot()] += 1;
        if outcome.accepted {
            self.accepted[outcome.kind.slot()] += 1;
        }
    }
}

/// Best-so-far trace sampled every `stride` evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    stride: u64,
    next: u64,
    pub points: Vec<(u64, f64)>,
}

impl Trace {
    pub fn new(stride: u64) -> Self {
        let stride = stride.max(1);
        Self {
            stride,
            next: stride,
            points: Vec::new(),
        }
    }

    fn observe(&mut self, fe_used: u64, best: f64) {
        if fe_used >= self.next {
            self.points.push((fe_used, best));
            self.next = (fe_used / self.stride + 1) * self.stride;
        }
    }

    /// Writes `fe_used,best` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "fe_used,best")?;
        for (fe, best) in &self.points {
            writeln!(out, "{fe},{best:.16e}")?;
        }
        Ok(())
    }
}

/// Final result of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct BestRecord {
    pub value: f64,
    pub structure: Vec<f64>,
    pub fe_used: u64,
    pub wall_ms: f64,
}

/// Everything one run owns.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineState {
    pub params: Parameters,
    pub problem: BenchmarkFunction,
    pub perturbation: PerturbationSpec,
    pub molecules: Vec<Molecule>,
    pub buffer: f64,
    pub best_value: f64,
    pub best_struct: Vec<f64>,
    pub fe_used: u64,
    /// Evaluations requested outside the box (never expected; diagnostic only).
    pub out_of_bounds: u64,
    pub stats: ReactionStats,
    pub trace: Option<Trace>,
    rng: RandomSource,
}

impl EngineState {
    /// Random initial population, one evaluation per molecule.
    pub fn initialize(
        params: Parameters,
        problem: BenchmarkFunction,
        perturbation: PerturbationSpec,
        seed: u64,
    ) -> Result<Self> {
        params.validate()?;
        let mut state = Self {
            molecules: Vec::with_capacity(params.pop_size + 1),
            buffer: params.en_buff,
            best_value: f64::INFINITY,
            best_struct: Vec::new(),
            fe_used: 0,
            out_of_bounds: 0,
            stats: ReactionStats::default(),
            trace: None,
            rng: RandomSource::new(seed),
            params,
            problem,
            perturbation,
        };
        for _ in 0..state.params.pop_size {
            let omega: Vec<f64> = state
                .problem
                .lower
                .iter()
                .zip(&state.problem.upper)
                .map(|(lo, hi)| state.rng.uniform_in(*lo, *hi))
                .collect();
            let pe = state.evaluate(&omega);
            state
                .molecules
                .push(Molecule::new(omega, pe, state.params.ini_ke));
        }
        Ok(state)
    }

    /// Starts recording a best-so-far trace.
    pub fn with_trace(mut self, stride: u64) -> Self {
        let mut trace = Trace::new(stride);
        trace.points.push((self.fe_used, self.best_value));
        trace.next = (self.fe_used / trace.stride + 1) * trace.stride;
        self.trace = Some(trace);
        self
    }

    /// `Σ(PE + KE)` over the population plus the buffer.
    pub fn total_energy(&self) -> f64 {
        self.molecules.iter().map(|m| m.pe + m.ke).sum::<f64>() + self.buffer
    }

    pub fn population(&self) -> usize {
        self.molecules.len()
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        if !self.problem.contains(x) {
            self.out_of_bounds += 1;
        }
        let v = self.problem.value(x, &mut self.rng);
        self.fe_used += 1;
        if v < self.best_value {
            self.best_value = v;
            self.best_struct.clear();
            self.best_struct.extend_from_slice(x);
        }
        if let Some(trace) = self.trace.as_mut() {
            trace.observe(self.fe_used, self.best_value);
        }
        v
    }

    fn neighbor_of(&mut self, i: usize) -> Vec<f64> {
        neighbor(
            &self.molecules[i].omega,
            &self.perturbation,
            &mut self.rng,
            &self.problem.lower,
            &self.problem.upper,
        )
    }

    pub fn on_wall(&mut self, i: usize) -> ReactionOutcome {
        let candidate = self.neighbor_of(i);
        let new_pe = self.evaluate(&candidate);
        let loss_rate = self.params.loss_rate;
        let m = &self.molecules[i];
        let rng = &mut self.rng;
        let balance = on_wall_balance(m.pe, m.ke, new_pe, || rng.uniform_in(loss_rate, 1.0));
        let m = &mut self.molecules[i];
        m.num_hit += 1;
        let accepted = match balance {
            Some(b) => {
                m.accept(candidate, new_pe, b.ke);
                self.buffer += b.to_buffer;
                true
            }
            None => false,
        };
        ReactionOutcome {
            kind: ReactionKind::OnWall,
            accepted,
        }
    }

    pub fn decomposition(&mut self, i: usize) -> ReactionOutcome {
        let (lower, upper) = (&self.problem.lower, &self.problem.upper);
        let omega = &self.molecules[i].omega;
        let c1 = decomposition_child(omega, &self.perturbation, &mut self.rng, lower, upper);
        let c2 = decomposition_child(omega, &self.perturbation, &mut self.rng, lower, upper);
        let pe1 = self.evaluate(&c1);
        let pe2 = self.evaluate(&c2);
        let m = &self.molecules[i];
        let rng = &mut self.rng;
        let balance = decomposition_balance(m.pe, m.ke, pe1, pe2, self.buffer, || rng.uniform());
        let accepted = match balance {
            Some(s) => {
                self.buffer = s.buffer;
                self.molecules.swap_remove(i);
                self.molecules.push(Molecule::new(c1, pe1, s.ke1));
                self.molecules.push(Molecule::new(c2, pe2, s.ke2));
                true
            }
            None => {
                self.molecules[i].num_hit += 1;
                false
            }
        };
        ReactionOutcome {
            kind: ReactionKind::Decomposition,
            accepted,
        }
    }

    pub fn intermolecular(&mut self, i: usize, j: usize) -> ReactionOutcome {
        assert_ne!(i, j, "inter-molecular collision needs two molecules");
        let c1 = self.neighbor_of(i);
        let c2 = self.neighbor_of(j);
        let pe1 = self.evaluate(&c1);
        let pe2 = self.evaluate(&c2);
        let (a, b) = (&self.molecules[i], &self.molecules[j]);
        let rng = &mut self.rng;
        let balance =
            intermolecular_balance((a.pe, a.ke), (b.pe, b.ke), (pe1, pe2), || rng.uniform());
        self.molecules[i].num_hit += 1;
        self.molecules[j].num_hit += 1;
        let accepted = match balance {
            Some((ke1, ke2)) => {
                self.molecules[i].accept(c1, pe1, ke1);
                self.molecules[j].accept(c2, pe2, ke2);
                true
            }
            None => false,
        };
        ReactionOutcome {
            kind: ReactionKind::Intermolecular,
            accepted,
        }
    }

    pub fn synthesis(&mut self, i: usize, j: usize) -> ReactionOutcome {
        assert_ne!(i, j, "synthesis needs two molecules");
        let child = synthesis_child(
            &self.molecules[i].omega,
            &self.molecules[j].omega,
            &mut self.rng,
        );
        let new_pe = self.evaluate(&child);
        let (a, b) = (&self.molecules[i], &self.molecules[j]);
        let accepted = match synthesis_balance((a.pe, a.ke), (b.pe, b.ke), new_pe) {
            Some(ke) => {
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                self.molecules.swap_remove(hi);
                self.molecules.swap_remove(lo);
                self.molecules.push(Molecule::new(child, new_pe, ke));
                true
            }
            None => {
                self.molecules[i].num_hit += 1;
                self.molecules[j].num_hit += 1;
                false
            }
        };
        ReactionOutcome {
            kind: ReactionKind::Synthesis,
            accepted,
        }
    }

    /// One iteration: choose the reaction class, the participants and the
    /// reaction, then apply it.
    pub fn select_and_react(&mut self) -> ReactionOutcome {
        let r = self.rng.uniform();
        let n = self.molecules.len();
        let outcome = if r > self.params.coll_rate || n == 1 {
            let i = self.rng.index(n);
            if self.molecules[i].stagnation() > self.params.dec_thres {
                self.decomposition(i)
            } else {
                self.on_wall(i)
            }
        } else {
            let (i, j) = self.rng.distinct_pair(n);
            let t = self.params.syn_thres;
            if self.molecules[i].ke <= t && self.molecules[j].ke <= t {
                self.synthesis(i, j)
            } else {
                self.intermolecular(i, j)
            }
        };
        self.stats.record(outcome);
        outcome
    }

    /// Iterates until at least `fe_limit` evaluations have been spent.
    pub fn run(&mut self, fe_limit: u64) -> BestRecord {
        self.run_observed(fe_limit, |_, _| {})
    }

    /// Like [`run`](Self::run), calling `observer` after every iteration.
    pub fn run_observed(
        &mut self,
        fe_limit: u64,
        mut observer: impl FnMut(&EngineState, ReactionOutcome),
    ) -> BestRecord {
        let start = Instant::now();
        while self.fe_used < fe_limit {
            let outcome = self.select_and_react();
            observer(self, outcome);
        }
        if let Some(trace) = self.trace.as_mut() {
            if trace.points.last().map(|p| p.0) != Some(self.fe_used) {
                trace.points.push((self.fe_used, self.best_value));
            }
        }
        BestRecord {
            value: self.best_value,
            structure: self.best_struct.clone(),
            fe_used: self.fe_used,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Initialises and runs one engine with the function's own budget.
pub fn solve(
    params: Parameters,
    problem: BenchmarkFunction,
    perturbation: PerturbationSpec,
    seed: u64,
    fe_limit: u64,
) -> Result<BestRecord> {
    if fe_limit < params.pop_size as u64 {
        return Err(Error::Config(format!(
            "fe_limit {fe_limit} is smaller than pop_size {}",
            params.pop_size
        )));
    }
    let mut state = EngineState::initialize(params, problem, perturbation, seed)?;
    Ok(state.run(fe_limit))
}
