//! Regression fixtures: bases, `ω` and sampled admissible jets as JSON.

use std::collections::BTreeMap;

use laxg2_core::cocycle::{build_omega, omega_params, OmegaForm};
use laxg2_core::sphere::{check_membership, Configuration, GlobalElement, GradingSpec, Model, SurfaceSpec};
use laxg2_core::tyurin::{admissible_jet_basis, is_admissible, random_combination};
use laxg2_core::{g2, random, Error, MatrixJet};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::RunConfig;
use crate::report::{Record, Report};

/// Seed of the `ω` stored in fixtures, so that fixtures for different run
/// seeds differ only in their sampled jets.
pub const OMEGA_SEED: u64 = 0;
pub const JETS_PER_POINT: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledJet {
    pub gamma_index: usize,
    pub jet: MatrixJet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub surface: SurfaceSpec,
    pub grading: GradingSpec,
    #[serde(rename = "T")]
    pub truncation: i32,
    pub seed: u64,
    pub bases: BTreeMap<i32, Vec<GlobalElement>>,
    pub omega: OmegaForm,
    pub jets: Vec<SampledJet>,
}

pub fn generate_fixture(run: &RunConfig) -> Result<Fixture, Error> {
    let cfg = &run.configuration;
    let model = Model::new(cfg.clone());
    let bases = (run.window.0..=run.window.1)
        .map(|m| (m, model.basis(m).as_ref().clone()))
        .collect();
    let omega = build_omega(cfg, OMEGA_SEED)?;
    let mut rng = random::rng(run.seed);
    let mut jets = Vec::new();
    for (s, d) in cfg.surface().tyurin.iter().enumerate() {
        let basis = admissible_jet_basis(d, run.truncation)?;
        for _ in 0..JETS_PER_POINT {
            jets.push(SampledJet {
                gamma_index: s,
                jet: random_combination(&basis, &mut rng, run.truncation),
            });
        }
    }
    Ok(Fixture {
        surface: cfg.surface().clone(),
        grading: cfg.grading().clone(),
        truncation: run.truncation,
        seed: run.seed,
        bases,
        omega,
        jets,
    })
}

impl Fixture {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixture serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Re-checks the stored values without rebuilding any of them.
    pub fn check(&self) -> Result<Report, Error> {
        let cfg = Configuration::new(self.surface.clone(), self.grading.clone())?;
        let expected = g2::DIM * self.surface.n();
        let mut records = Vec::new();
        for (m, basis) in &self.bases {
            let bad = basis.iter().filter(|l| check_membership(&cfg, l, *m).is_err()).count();
            records.push(Record::exact(
                format!("fixture.basis.m{m:+03}"),
                "stored basis elements lie in 𝓛_m",
                json!({ "m": m, "size": basis.len(), "expected_size": expected }),
                0,
                bad,
            ));
        }
        let reparsed = omega_params(&cfg, &self.omega.coefficient);
        records.push(Record::predicate(
            "fixture.omega",
            "stored ω satisfies its defining conditions",
            json!({}),
            "conditions hold, parameters match",
            reparsed.as_ref().map(|_| "conditions hold".to_string()).unwrap_or_else(|e| e.to_string()),
            reparsed.is_ok_and(|p| p == self.omega.params),
        ));
        for (i, s) in self.jets.iter().enumerate() {
            let d = self
                .surface
                .tyurin
                .get(s.gamma_index)
                .ok_or_else(|| Error::Internal(format!("jet {i}: no Tyurin point {}", s.gamma_index)))?;
            records.push(Record::exact(
                format!("fixture.jet{i:03}"),
                "stored jets are admissible",
                json!({ "gamma_index": s.gamma_index }),
                true,
                is_admissible(&s.jet, d).passed(),
            ));
        }
        Ok(Report::new(json!({ "fixture_seed": self.seed }), records))
    }
}
