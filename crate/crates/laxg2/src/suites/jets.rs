use laxg2_core::g2::embed;
use laxg2_core::jets::{jet_commutator, jet_derivative, jet_product, trace_jet, trace_pairing};
use laxg2_core::random::{self, Rng};
use laxg2_core::tyurin::{admissible_jet_basis, is_admissible, random_combination};
use laxg2_core::{Error, MatrixJet, Rational, TyurinDatum};
use num_traits::Zero;
use serde_json::json;

use super::{Context, Tally};
use crate::report::Record;

/// The configured Tyurin data, or one random datum when there are none.
pub(super) fn data(ctx: &Context, rng: &mut Rng) -> Vec<TyurinDatum> {
    let t = &ctx.run.configuration.surface().tyurin;
    if t.is_empty() {
        vec![TyurinDatum::random(rng, Rational::zero())]
    } else {
        t.clone()
    }
}

pub(super) fn run(ctx: &Context) -> Result<Vec<Record>, Error> {
    let mut rng = random::rng(ctx.seed);
    let t = ctx.run.truncation;
    let mut out = Vec::new();
    for (s, d) in data(ctx, &mut rng).iter().enumerate() {
        let p = json!({ "gamma_index": s, "T": t });
        let id = |name: &str| format!("jets.{name}.gamma{s}");
        let mut adm = Tally::new(id("sample_admissible"), "random combinations of the jet basis are admissible", p.clone());
        let mut leibniz = Tally::new(id("leibniz"), "d(LL′) = dL·L′ + L·dL′", p.clone());
        let mut comm = Tally::new(id("commutator_oracle"), "jet commutator equals LL′ − L′L in the 7×7 model", p.clone());
        let mut trace = Tally::new(id("trace_oracle"), "coordinate trace pairing equals the 7×7 trace", p.clone());
        let mut parts = Tally::new(id("residue_by_parts"), "res tr(L dL′) = −res tr(dL·L′)", p.clone());
        let mut serde = Tally::new(id("json_round_trip"), "jets survive a JSON round trip", p.clone());
        let basis = admissible_jet_basis(d, t)?;
        for _ in 0..ctx.run.trials {
            let x = random_combination(&basis, &mut rng, t);
            let y = random_combination(&basis, &mut rng, t);
            adm.check(is_admissible(&x, d).passed(), || format!("{x:?}"));

            let lhs = jet_product(&x, &y).map(|j| jet_derivative(&j));
            let rhs = jet_product(&jet_derivative(&x), &y)
                .and_then(|a| a.add(&jet_product(&x, &jet_derivative(&y))?));
            leibniz.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || format!("x={x:?} y={y:?}"));

            let c = jet_commutator(&x, &y).map(|c| c.map(embed));
            let m = jet_product(&x, &y).and_then(|a| a.sub(&jet_product(&y, &x)?));
            comm.check(matches!((&c, &m), (Ok(a), Ok(b)) if a == b), || format!("x={x:?} y={y:?}"));

            let a = trace_pairing(&x, &y);
            let b = jet_product(&x, &y).and_then(|p| trace_jet(&p));
            trace.check(matches!((&a, &b), (Ok(a), Ok(b)) if a == b), || format!("x={x:?} y={y:?}"));

            let r = by_parts(&x, &y);
            parts.check_result(&r, |v| v.is_zero(), |v| format!("sum of residues {v}"));

            let text = serde_json::to_string(&x).expect("jets serialize");
            let back: Result<MatrixJet, _> = serde_json::from_str(&text);
            serde.check(back.as_ref().is_ok_and(|b| *b == x), || text.clone());
        }
        out.extend([adm, leibniz, comm, trace, parts, serde].map(Tally::finish));
    }
    Ok(out)
}

fn by_parts(x: &MatrixJet, y: &MatrixJet) -> Result<Rational, Error> {
    let a = trace_pairing(x, &jet_derivative(y))?;
    let b = trace_pairing(&jet_derivative(x), y)?;
    Ok(a.coeff(-1)? + b.coeff(-1)?)
}
