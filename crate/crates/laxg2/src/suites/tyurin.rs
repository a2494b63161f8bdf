use laxg2_core::random;
use laxg2_core::tyurin::{
    admissible_jet_basis, check_order_minus2, closure_check, commutator_mu, effective_relation_count,
    full_commutator_mu, is_admissible, random_combination, residue_bracket, AdmissibleParams,
};
use laxg2_core::{Error, MatrixJet, TyurinDatum};
use serde_json::json;

use super::jets::data;
use super::{Context, Tally};
use crate::report::Record;

fn params(x: &MatrixJet, d: &TyurinDatum) -> Result<AdmissibleParams, Error> {
    let r = is_admissible(x, d);
    match r.params {
        Some(p) if r.passed() => Ok(p),
        _ => Err(Error::Internal(format!("jet is not admissible: {:?}", r.failures().collect::<Vec<_>>()))),
    }
}

pub(super) fn run(ctx: &Context) -> Result<Vec<Record>, Error> {
    let mut rng = random::rng(ctx.seed);
    let t = ctx.run.truncation;
    let mut out = Vec::new();
    for (s, d) in data(ctx, &mut rng).iter().enumerate() {
        let p = json!({ "gamma_index": s, "T": t });
        let id = |name: &str| format!("tyurin.{name}.gamma{s}");
        let basis = admissible_jet_basis(d, t)?;
        out.push(Record::exact(
            id("basis_dimension"),
            "dimension of admissible jets on [−2, T] is 14(T+3) − 28",
            p.clone(),
            14 * (t as usize + 3) - 28,
            basis.len(),
        ));
        let count = effective_relation_count(d)?;
        out.push(Record::exact(
            id("relation_total"),
            "admissibility imposes 2·dim G₂ = 28 independent relations",
            p.clone(),
            28,
            count.total,
        ));
        out.push(Record::exact(
            id("relation_breakdown"),
            "relations split as (residue, order −2, eigenvalue, first order) = (8, 13, 6, 1)",
            p.clone(),
            [8, 13, 6, 1],
            count.as_tuple(),
        ));

        let mut closure = Tally::new(id("closure"), "admissible jets are closed under the commutator", p.clone());
        let mut mu = Tally::new(
            id("mu_closed_form"),
            "μ of the commutator is 3(β₀₂β′₀₁ − β₀₁β′₀₂) + β₁ᵗβ′₂ − β₂ᵗβ′₁",
            p.clone(),
        );
        let mut mu_res = Tally::new(
            id("mu_residue_bracket"),
            "μ of [L₋₁, L′₋₁] is given by the closed form",
            p.clone(),
        );
        let mut mu_full = Tally::new(
            id("mu_full"),
            "μ of the commutator including the [L₋₂, L′₀] + [L₀, L′₋₂] terms",
            p.clone(),
        );
        let mut linear = Tally::new(id("linearity"), "admissible jets form a vector space with linear parameters", p.clone());
        for _ in 0..ctx.run.trials {
            let x = random_combination(&basis, &mut rng, t);
            let y = random_combination(&basis, &mut rng, t);
            let rep = closure_check(&x, &y, d);
            closure.check_result(&rep, |r| r.passed(), |r| format!("{r:?}"));
            let (px, py) = (params(&x, d)?, params(&y, d)?);
            let pc = rep.ok().and_then(|r| r.admissibility.params);
            match &pc {
                Some(pc) => {
                    let closed = commutator_mu(&px, &py);
                    mu.check(closed == pc.mu, || format!("closed form {closed}, commutator {}", pc.mu));
                    let full = full_commutator_mu(&px, &py);
                    mu_full.check(full == pc.mu, || format!("full {full}, commutator {}", pc.mu));
                }
                None => {
                    mu.check(false, || "commutator is not admissible".into());
                    mu_full.check(false, || "commutator is not admissible".into());
                }
            }
            let r = residue_bracket(&x, &y).and_then(|c| check_order_minus2(&c, d));
            mu_res.check_result(&r, |m| *m == commutator_mu(&px, &py), |m| format!("[L₋₁,L′₋₁] gives {m}"));

            let sum = x.add(&y).and_then(|s| params(&s, d));
            linear.check_result(
                &sum,
                |ps| {
                    ps.mu == &px.mu + &py.mu
                        && ps.kappa1 == &px.kappa1 + &py.kappa1
                        && ps.kappa2 == &px.kappa2 + &py.kappa2
                },
                |ps| format!("{ps:?}"),
            );
        }
        out.extend([closure, mu, mu_res, mu_full, linear].map(Tally::finish));
    }
    Ok(out)
}
