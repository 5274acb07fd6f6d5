/// A candidate solution together with its energies and hit counters.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    /// Molecular structure: the decision vector.
    pub omega: Vec<f64>,
    /// Potential energy, the objective value of `omega`.
    pub pe: f64,
    /// Kinetic energy, the molecule's budget for accepting worse structures.
    pub ke: f64,
    /// Reactions this molecule took part in.
    pub num_hit: u64,
    pub min_struct: Vec<f64>,
    pub min_pe: f64,
    /// `num_hit` at the last improvement of `min_pe`.
    pub min_hit: u64,
}

impl Molecule {
    /// A fresh molecule with zeroed counters.
    pub fn new(omega: Vec<f64>, pe: f64, ke: f64) -> Self {
        Self {
            min_struct: omega.clone(),
            omega,
            pe,
            ke,
            num_hit: 0,
            min_pe: pe,
            min_hit: 0,
        }
    }

    /// Replaces the structure after an accepted ineffective collision.
    pub(crate) fn accept(&mut self, omega: Vec<f64>, pe: f64, ke: f64) {
        self.omega = omega;
        self.pe = pe;
        self.ke = ke;
        if pe < self.min_pe {
            self.min_pe = pe;
            self.min_struct.clone_from(&self.omega);
            self.min_hit = self.num_hit;
        }
    }

    /// Hits since the molecule last improved its own best.
    pub fn stagnation(&self) -> u64 {
        self.num_hit - self.min_hit
    }
}
