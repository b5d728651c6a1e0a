//! Pass/fail evidence for diagram checks.
//!
//! Every checker in the crate produces a [`DiagramReport`]: a list of named
//! checks, each carrying its status, how many diagram instances were
//! evaluated, and the witnesses for failures. Instances are always visited
//! in canonical (lexicographic index) order so reports are reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fincat::{FinCategory, Mor};

/// Default number of diagram instances a single check may enumerate before
/// switching to seeded sampling.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 1_000_000;
/// Default number of sampled instances for over-budget checks.
pub const DEFAULT_SAMPLE: u64 = 100_000;
/// Witnesses kept per check; the failure count is always exact.
pub const MAX_WITNESSES: usize = 16;

/// Enumeration policy shared by all checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub exhaustive_budget: u64,
    pub sample: u64,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
            sample: DEFAULT_SAMPLE,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SampledPass,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SampledPass => "PASS (sampled)",
            Status::NotApplicable => "N/A",
        })
    }
}

/// One failed diagram instance: the index tuple and the two composites
/// that should have been equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub diagram: String,
    pub index: Vec<String>,
    pub left: String,
    pub right: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.diagram, self.index.join(","))?;
        match &self.note {
            Some(note) => write!(f, ": {note}"),
            None => write!(f, ": {} != {}", self.left, self.right),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub size: u64,
    pub seed: u64,
    pub population: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub instances: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn not_applicable(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            status: Status::NotApplicable,
            instances: 0,
            failures: 0,
            sampling: None,
            witnesses: Vec::new(),
            note: Some(reason.into()),
        }
    }

    /// A check that failed before any instance could be evaluated.
    pub fn error(name: impl Into<String>, err: &Error) -> Self {
        let name = name.into();
        CheckOutcome {
            witnesses: vec![Witness {
                diagram: name.clone(),
                index: Vec::new(),
                left: "<error>".into(),
                right: "<error>".into(),
                note: Some(err.to_string()),
            }],
            name,
            status: Status::Fail,
            instances: 0,
            failures: 1,
            sampling: None,
            note: None,
        }
    }
}

/// Aggregated result of a checker run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
    /// Diagram instances evaluated, keyed by the axiom instance they exercise.
    pub coverage: BTreeMap<String, u64>,
    pub elapsed_ms: f64,
}

impl DiagramReport {
    pub fn new(suite: impl Into<String>) -> Self {
        DiagramReport {
            suite: suite.into(),
            checks: Vec::new(),
            coverage: BTreeMap::new(),
            elapsed_ms: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn push(&mut self, check: CheckOutcome) {
        self.checks.push(check);
    }

    pub fn count(&mut self, label: impl Into<String>, instances: u64) {
        *self.coverage.entry(label.into()).or_default() += instances;
    }

    /// Pushes a check and credits its instances to a coverage label.
    pub fn push_counted(&mut self, label: impl Into<String>, check: CheckOutcome) {
        self.count(label, check.instances);
        self.push(check);
    }

    /// Appends every check of `other`, prefixing names with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: DiagramReport) {
        for mut check in other.checks {
            if !prefix.is_empty() {
                check.name = format!("{prefix}/{}", check.name);
            }
            self.checks.push(check);
        }
        for (label, n) in other.coverage {
            self.count(label, n);
        }
        self.elapsed_ms += other.elapsed_ms;
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Checks whose name starts with `prefix`.
    pub fn checks_matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckOutcome> {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn set_elapsed(&mut self, elapsed: Duration) {
        self.elapsed_ms = elapsed.as_secs_f64() * 1000.0;
    }
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "suite {} [{verdict}] ({:.1} ms)", self.suite, self.elapsed_ms)?;
        for check in &self.checks {
            write!(f, "  [{}] {} - {} instances", check.status, check.name, check.instances)?;
            match &check.sampling {
                Some(s) => write!(f, " (sampled {} of {}, seed {})", s.size, s.population, s.seed)?,
                None if check.status != Status::NotApplicable => write!(f, " (exhaustive)")?,
                None => {}
            }
            if let Some(note) = &check.note {
                write!(f, " - {note}")?;
            }
            writeln!(f)?;
            for w in &check.witnesses {
                writeln!(f, "      witness: {w}")?;
            }
            if check.failures > check.witnesses.len() as u64 {
                writeln!(f, "      ... {} failures in total", check.failures)?;
            }
        }
        if !self.coverage.is_empty() {
            writeln!(f, "  coverage:")?;
            for (label, n) in &self.coverage {
                writeln!(f, "    {label}: {n}")?;
            }
        }
        Ok(())
    }
}

/// Visits index tuples over `0..base` of the given arity.
///
/// Tuples are produced in lexicographic order when the population fits the
/// budget; otherwise `options.sample` tuples are drawn uniformly with a
/// ChaCha generator seeded from `options.seed`.
pub struct TuplePlan {
    pub base: usize,
    pub arity: usize,
    pub population: u64,
    pub sampling: Option<Sampling>,
}

impl TuplePlan {
    pub fn new(base: usize, arity: usize, options: &CheckOptions) -> Self {
        let population = (base as u64).checked_pow(arity as u32).unwrap_or(u64::MAX);
        let sampling = (population > options.exhaustive_budget && base > 0).then_some(Sampling {
            size: options.sample,
            seed: options.seed,
            population,
        });
        TuplePlan {
            base,
            arity,
            population,
            sampling,
        }
    }

    pub fn for_each(&self, mut visit: impl FnMut(&[usize])) {
        if self.base == 0 && self.arity > 0 {
            return;
        }
        let mut tuple = vec![0usize; self.arity];
        match &self.sampling {
            None => loop {
                visit(&tuple);
                if !advance(&mut tuple, self.base) {
                    break;
                }
            },
            Some(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
                for _ in 0..s.size {
                    for slot in tuple.iter_mut() {
                        *slot = rng.gen_range(0..self.base);
                    }
                    visit(&tuple);
                }
            }
        }
    }
}

/// Odometer increment; returns false after the last tuple.
pub fn advance(tuple: &mut [usize], base: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Accumulates instance results for one named check.
pub struct CheckBuilder {
    name: String,
    instances: u64,
    failures: u64,
    witnesses: Vec<Witness>,
    sampling: Option<Sampling>,
}

impl CheckBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CheckBuilder {
            name: name.into(),
            instances: 0,
            failures: 0,
            witnesses: Vec::new(),
            sampling: None,
        }
    }

    pub fn sampled(mut self, sampling: Option<Sampling>) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn instance(&mut self) {
        self.instances += 1;
    }

    pub fn fail(&mut self, witness: Witness) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    /// Records one instance comparing two evaluated legs.
    pub fn compare(
        &mut self,
        index: impl FnOnce() -> Vec<String>,
        legs: Result<(String, String), Error>,
        equal: bool,
    ) {
        self.instances += 1;
        match legs {
            Ok((left, right)) if !equal => self.fail(Witness {
                diagram: self.name.clone(),
                index: index(),
                left,
                right,
                note: None,
            }),
            Ok(_) => {}
            Err(err) => self.fail(Witness {
                diagram: self.name.clone(),
                index: index(),
                left: "<error>".into(),
                right: "<error>".into(),
                note: Some(err.to_string()),
            }),
        }
    }

    /// Records one instance comparing two composites in `c`.
    pub fn compare_morphisms(
        &mut self,
        c: &FinCategory,
        index: impl FnOnce() -> Vec<String>,
        legs: Result<(Mor, Mor), Error>,
    ) {
        let equal = matches!(legs, Ok((l, r)) if l == r);
        let names = legs.map(|(l, r)| (c.morphism_name(l).to_string(), c.morphism_name(r).to_string()));
        self.compare(index, names, equal);
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn finish(self) -> CheckOutcome {
        let status = if self.failures > 0 {
            Status::Fail
        } else if self.sampling.is_some() {
            Status::SampledPass
        } else {
            Status::Pass
        };
        CheckOutcome {
            name: self.name,
            status,
            instances: self.instances,
            failures: self.failures,
            sampling: self.sampling,
            witnesses: self.witnesses,
            note: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_plan_is_lexicographic() {
        let plan = TuplePlan::new(2, 3, &CheckOptions::default());
        let mut seen = Vec::new();
        plan.for_each(|t| seen.push(t.to_vec()));
        assert_eq!(seen.len(), 8);
        assert_eq!(seen[0], vec![0, 0, 0]);
        assert_eq!(seen[1], vec![0, 0, 1]);
        assert_eq!(seen[7], vec![1, 1, 1]);
    }

    #[test]
    fn over_budget_plan_samples_deterministically() {
        let options = CheckOptions {
            exhaustive_budget: 10,
            sample: 5,
            seed: 7,
        };
        let plan = TuplePlan::new(3, 4, &options);
        assert_eq!(plan.sampling.as_ref().map(|s| s.population), Some(81));
        let mut a = Vec::new();
        let mut b = Vec::new();
        plan.for_each(|t| a.push(t.to_vec()));
        TuplePlan::new(3, 4, &options).for_each(|t| b.push(t.to_vec()));
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
    }

    #[test]
    fn empty_base_visits_nothing_but_arity_zero_visits_once() {
        let mut n = 0;
        TuplePlan::new(0, 2, &CheckOptions::default()).for_each(|_| n += 1);
        assert_eq!(n, 0);
        TuplePlan::new(0, 0, &CheckOptions::default()).for_each(|_| n += 1);
        assert_eq!(n, 1);
    }

    #[test]
    fn failed_check_keeps_witness() {
        let mut b = CheckBuilder::new("demo");
        b.compare(|| vec!["X".into()], Ok(("g0".into(), "e0".into())), false);
        let out = b.finish();
        assert_eq!(out.status, Status::Fail);
        assert_eq!(out.witnesses.len(), 1);
        assert_eq!(out.witnesses[0].to_string(), "demo at (X): g0 != e0");
    }
}
