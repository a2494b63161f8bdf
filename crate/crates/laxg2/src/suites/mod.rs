//! Seeded verification suites.
//!
//! Each suite owns one random stream derived from the run seed and the
//! suite name, so a suite's records do not depend on which other suites run.
//! Within a suite, values are drawn in the order the checks are listed.

mod cocycle;
mod g2;
mod grading;
mod jets;
mod tyurin;

use laxg2_core::sphere::Model;
use laxg2_core::Error;
use serde_json::{json, Value};

use crate::config::{RunConfig, Suite};
use crate::report::{Record, Report};

/// Runs the selected suites. Errors are configuration or degeneracy
/// problems; failed checks are records with `pass = false`.
pub fn run_suites(run: &RunConfig) -> Result<Report, Error> {
    let model = Model::new(run.configuration.clone());
    let mut records = Vec::new();
    for &suite in &run.suites {
        let ctx = Context {
            run,
            model: &model,
            seed: run.suite_seed(suite),
        };
        let mut out = match suite {
            Suite::G2 => g2::run(&ctx)?,
            Suite::Jets => jets::run(&ctx)?,
            Suite::Tyurin => tyurin::run(&ctx)?,
            Suite::Grading => grading::run(&ctx)?,
            Suite::Cocycle => cocycle::run(&ctx)?,
        };
        records.append(&mut out);
    }
    Ok(Report::new(run.echo(), records))
}

pub(crate) struct Context<'a> {
    pub run: &'a RunConfig,
    pub model: &'a Model,
    pub seed: u64,
}

/// Counts failing instances of a check repeated over random trials.
pub(crate) struct Tally {
    id: String,
    anchor: &'static str,
    parameters: Value,
    trials: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    pub fn new(id: impl Into<String>, anchor: &'static str, parameters: Value) -> Self {
        Tally {
            id: id.into(),
            anchor,
            parameters,
            trials: 0,
            failures: 0,
            first: None,
        }
    }

    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(format!("trial {}: {}", self.trials - 1, detail()));
            }
        }
    }

    /// Records an error as a failing instance.
    pub fn check_result<T>(&mut self, r: &Result<T, Error>, ok: impl FnOnce(&T) -> bool, detail: impl FnOnce(&T) -> String) {
        match r {
            Ok(v) => {
                let pass = ok(v);
                self.check(pass, || detail(v));
            }
            Err(e) => self.check(false, || e.to_string()),
        }
    }

    pub fn finish(self) -> Record {
        let mut parameters = self.parameters;
        if let Value::Object(m) = &mut parameters {
            m.insert("trials".into(), json!(self.trials));
        }
        let actual = match self.first {
            Some(f) => json!({ "failures": self.failures, "first_failure": f }),
            None => json!({ "failures": 0 }),
        };
        Record::predicate(
            self.id,
            self.anchor,
            parameters,
            json!({ "failures": 0 }),
            actual,
            self.failures == 0 && self.trials > 0,
        )
    }
}
