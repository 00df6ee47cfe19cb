//! Law-suite reports and their merge.

use eja_core::{AlgebraDescriptor, ElementDescriptor};
use serde::{Deserialize, Serialize};

/// A named input of the trial that produced the largest residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedElement {
    pub name: String,
    pub element: ElementDescriptor,
}

/// Enough to replay a failing trial: the law's random stream and the
/// offending inputs themselves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureWitness {
    pub trial: usize,
    pub seed: u64,
    pub stream: u64,
    /// `None` when the residual was not finite.
    pub residual: Option<f64>,
    pub inputs: Vec<NamedElement>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawResult {
    pub law_id: String,
    pub trials: usize,
    /// `None` when some trial produced a non-finite residual or an error.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    /// What the raw residual was divided by.
    pub scale: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<FailureWitness>,
}

impl LawResult {
    fn residual(&self) -> f64 {
        self.max_residual.unwrap_or(f64::INFINITY)
    }

    /// Combine two runs of the same law: residuals and witnesses by max,
    /// trial counts by sum. Commutative and associative.
    pub fn merge(&self, other: &LawResult) -> LawResult {
        assert_eq!(self.law_id, other.law_id, "merging different laws");
        let worse = if witness_key(other) > witness_key(self) { other } else { self };
        let tolerance = self.tolerance.min(other.tolerance);
        let max_residual = worse.max_residual;
        let residual = worse.residual();
        LawResult {
            law_id: self.law_id.clone(),
            trials: self.trials + other.trials,
            max_residual,
            tolerance,
            scale: self.scale.clone(),
            pass: self.pass && other.pass && residual <= tolerance,
            witness: if self.pass && other.pass && residual <= tolerance {
                None
            } else {
                self.witness.clone().max_by_witness(other.witness.clone())
            },
        }
    }
}

/// Total order used to pick the worse of two results deterministically.
fn witness_key(r: &LawResult) -> (u64, u64, u64, std::cmp::Reverse<usize>) {
    let w = r.witness.as_ref();
    (
        r.residual().to_bits(),
        w.map_or(0, |w| w.stream),
        w.map_or(0, |w| w.seed),
        std::cmp::Reverse(w.map_or(usize::MAX, |w| w.trial)),
    )
}

trait MaxWitness {
    fn max_by_witness(self, other: Self) -> Self;
}

impl MaxWitness for Option<FailureWitness> {
    fn max_by_witness(self, other: Self) -> Self {
        let key = |w: &FailureWitness| {
            (w.residual.unwrap_or(f64::INFINITY).to_bits(), w.stream, w.seed, std::cmp::Reverse(w.trial))
        };
        match (self, other) {
            (Some(a), Some(b)) => Some(if key(&b) > key(&a) { b } else { a }),
            (a, b) => a.or(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawSuiteReport {
    pub suite_name: String,
    pub algebra_descriptor: AlgebraDescriptor,
    pub trials: usize,
    pub seed: u64,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub laws: Vec<LawResult>,
}

impl LawSuiteReport {
    pub fn new(suite_name: &str, algebra: AlgebraDescriptor, trials: usize, seed: u64, tolerance: f64, laws: Vec<LawResult>) -> Self {
        let mut r = LawSuiteReport {
            suite_name: suite_name.to_string(),
            algebra_descriptor: algebra,
            trials,
            seed,
            max_residual: None,
            tolerance,
            pass: true,
            laws,
        };
        r.summarize();
        r
    }

    fn summarize(&mut self) {
        self.laws.sort_by(|a, b| a.law_id.cmp(&b.law_id));
        self.pass = self.laws.iter().all(|l| l.pass);
        self.max_residual = self
            .laws
            .iter()
            .map(LawResult::residual)
            .try_fold(0.0f64, |acc, r| r.is_finite().then_some(acc.max(r)));
    }

    /// Merge shards of the same suite on the same algebra. Laws are matched
    /// by id; the result does not depend on the order of the shards.
    pub fn merge(&self, other: &LawSuiteReport) -> LawSuiteReport {
        assert_eq!(self.algebra_descriptor, other.algebra_descriptor, "merging reports of different algebras");
        let mut laws: Vec<LawResult> = self.laws.clone();
        for l in &other.laws {
            match laws.iter_mut().find(|x| x.law_id == l.law_id) {
                Some(x) => *x = x.merge(l),
                None => laws.push(l.clone()),
            }
        }
        let suite_name = if self.suite_name == other.suite_name {
            self.suite_name.clone()
        } else {
            let mut names = [self.suite_name.as_str(), other.suite_name.as_str()];
            names.sort();
            names.join("+")
        };
        let mut r = LawSuiteReport {
            suite_name,
            algebra_descriptor: self.algebra_descriptor.clone(),
            trials: self.trials + other.trials,
            seed: self.seed.min(other.seed),
            max_residual: None,
            tolerance: self.tolerance.min(other.tolerance),
            pass: true,
            laws,
        };
        r.summarize();
        r
    }
}

/// Output of `eja laws`: one report per algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawsOutput {
    pub pass: bool,
    pub reports: Vec<LawSuiteReport>,
}
