use laxg2_core::cocycle::{
    build_omega, certify_holomorphy, cocycle_identity_defect, cocycle_value, locality_sweep,
    omega_params, residue_trace_ldl, residue_trace_lomega, OmegaForm,
};
use laxg2_core::jets::jet_commutator;
use laxg2_core::random::{self, Rng};
use laxg2_core::sphere::{Configuration, GlobalElement, Point};
use laxg2_core::tyurin::{admissible_jet_basis, check_order_zero, random_combination};
use laxg2_core::{Error, MatrixJet, Rational, TyurinDatum};
use num_traits::Zero;
use serde_json::json;

use super::{Context, Tally};
use crate::report::Record;

/// Degrees swept for locality.
pub const SWEEP: (i32, i32) = (-4, 4);
const MAX_TRIPLES: usize = 20;

fn two_kappa(c: &MatrixJet, d: &TyurinDatum) -> Result<Rational, Error> {
    let (k1, k2, _, _) = check_order_zero(c.coeff(0)?, d)?;
    Ok(Rational::from_int(2) * (k1 + k2))
}

pub(super) fn run(ctx: &Context) -> Result<Vec<Record>, Error> {
    let cfg = &ctx.run.configuration;
    let mut rng = random::rng(ctx.seed);
    let w = build_omega(cfg, rng_seed(&mut rng))?;
    let mut out = omega_records(cfg, &w);
    let t = ctx.run.truncation;

    for (s, d) in cfg.surface().tyurin.iter().enumerate() {
        let p = json!({ "gamma_index": s, "T": t });
        let id = |name: &str| format!("cocycle.{name}.gamma{s}");
        let mut ldl = Tally::new(id("ldl_residue"), "res_γ tr(L dL′) = 2(κ₁ + κ₂)([L, L′])", p.clone());
        let mut ldl_low = Tally::new(id("ldl_simple_pole"), "tr(L dL′) has at most a simple pole at γ", p.clone());
        let mut ldl_mid = Tally::new(id("ldl_intermediate"), "tr(L₋₁L′₋₁) = 0 and tr(L₀L′₋₂) = 0", p.clone());
        let mut ldl_anti = Tally::new(id("ldl_antisymmetry"), "res_γ tr(L dL′) = −res_γ tr(L′ dL)", p.clone());
        let mut lom = Tally::new(id("lomega_residue"), "res_γ tr(Lω) = 2(κ₁ + κ₂)(L)", p.clone());
        let mut lom_low = Tally::new(id("lomega_simple_pole"), "tr(Lω) has at most a simple pole at γ", p.clone());
        let basis = admissible_jet_basis(d, t)?;
        for _ in 0..ctx.run.trials {
            let x = random_combination(&basis, &mut rng, t);
            let y = random_combination(&basis, &mut rng, t);
            let r = residue_trace_ldl(&x, &y, d);
            let expect = jet_commutator(&x, &y).and_then(|c| two_kappa(&c, d));
            match (&r, &expect) {
                (Ok(r), Ok(e)) => ldl.check(r.residue == *e, || format!("residue {}, 2(κ₁+κ₂) {e}", r.residue)),
                (Err(e), _) | (_, Err(e)) => ldl.check(false, || e.to_string()),
            }
            ldl_low.check_result(&r, |r| r.nonzero_low_orders.is_empty(), |r| format!("{:?}", r.nonzero_low_orders));
            ldl_mid.check_result(
                &r,
                |r| r.tr_lm1_lm1.is_zero() && r.tr_l0_lm2.is_zero(),
                |r| format!("{} {}", r.tr_lm1_lm1, r.tr_l0_lm2),
            );
            let back = residue_trace_ldl(&y, &x, d);
            let sum = match (&r, &back) {
                (Ok(a), Ok(b)) => Ok(&a.residue + &b.residue),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            ldl_anti.check_result(&sum, |v| v.is_zero(), |v| format!("sum {v}"));

            let r = residue_trace_lomega(&x, &w, cfg, s);
            let expect = two_kappa(&x, d);
            match (&r, &expect) {
                (Ok(r), Ok(e)) => lom.check(r.residue == *e, || format!("residue {}, 2(κ₁+κ₂) {e}", r.residue)),
                (Err(e), _) | (_, Err(e)) => lom.check(false, || e.to_string()),
            }
            lom_low.check_result(&r, |r| r.nonzero_low_orders.is_empty(), |r| format!("{:?}", r.nonzero_low_orders));
        }
        out.extend([ldl, ldl_low, ldl_mid, ldl_anti, lom, lom_low].map(Tally::finish));
    }

    out.extend(global_records(ctx, &w, &mut rng)?);

    let sweep = locality_sweep(ctx.model, &w, SWEEP.0, SWEEP.1)?;
    let cells = |v: Vec<&laxg2_core::cocycle::SweepCell>| -> Vec<[i32; 2]> { v.iter().map(|c| [c.m, c.n]).collect() };
    let params = json!({ "degrees": [SWEEP.0, SWEEP.1], "lower": sweep.lower, "upper": sweep.upper });
    let bad = cells(sweep.violations());
    out.push(Record::predicate(
        "cocycle.locality.window",
        "γ(𝓛_m, 𝓛_n) = 0 unless lower ≤ m + n ≤ upper",
        params,
        json!({ "nonzero_outside": [] }),
        json!({ "nonzero_outside": bad }),
        bad.is_empty(),
    ));
    let params = json!({ "degrees": [SWEEP.0, SWEEP.1], "lower": sweep.derivative_lower, "upper": sweep.upper });
    let bad = cells(sweep.derivative_violations());
    out.push(Record::predicate(
        "cocycle.locality.derivative_window",
        "γ(𝓛_m, 𝓛_n) = 0 unless lower ≤ m + n ≤ upper, lower with the pole of dL′ at Q",
        params,
        json!({ "nonzero_outside": [] }),
        json!({ "nonzero_outside": bad }),
        bad.is_empty(),
    ));
    Ok(out)
}

fn rng_seed(rng: &mut Rng) -> u64 {
    random::int(rng, 0, i64::MAX) as u64
}

fn omega_records(cfg: &Configuration, w: &OmegaForm) -> Vec<Record> {
    let mut out = Vec::new();
    let one = Rational::from_int(1);
    let zero = Rational::zero();
    let reparsed = omega_params(cfg, &w.coefficient);
    out.push(Record::predicate(
        "cocycle.omega.conditions",
        "ω has simple poles at γ with normalized residue, eigenvalue and first-order conditions",
        json!({ "budget": w.budget, "kernel_dim": w.kernel_dim }),
        "all conditions hold",
        reparsed.as_ref().map(|_| "all conditions hold".to_string()).unwrap_or_else(|e| e.to_string()),
        reparsed.as_ref().is_ok_and(|p| *p == w.params),
    ));
    for (s, (d, p)) in cfg.surface().tyurin.iter().zip(&w.params).enumerate() {
        let (a1, a2) = (d.alpha1(), d.alpha2());
        let params = json!({ "gamma_index": s });
        out.push(Record::exact(
            format!("cocycle.omega.normalization.gamma{s}"),
            "α₁ᵗβ̃₂ = 1 and α₂ᵗβ̃₁ = 1",
            params.clone(),
            [&one, &one],
            [a1.dot(&p.beta2), a2.dot(&p.beta1)],
        ));
        out.push(Record::exact(
            format!("cocycle.omega.orthogonality.gamma{s}"),
            "α₁ᵗw₂ = 0 and α₂ᵗw₁ = 0",
            params.clone(),
            [&zero, &zero],
            [a1.dot(&p.w2), a2.dot(&p.w1)],
        ));
        let eig = p.w.mul_vec(a1) == a1.scale(&p.kappa1) && -&p.w.transpose().mul_vec(a2) == a2.scale(&p.kappa2);
        out.push(Record::exact(
            format!("cocycle.omega.eigenvalue.gamma{s}"),
            "Wα₁ = κ̃₁α₁ and −Wᵗα₂ = κ̃₂α₂",
            params.clone(),
            true,
            eig,
        ));
        out.push(Record::exact(
            format!("cocycle.omega.first_order.gamma{s}"),
            "α₂ᵗW₁α₁ = 0",
            params,
            &zero,
            p.w_first.bilinear(a2, a1),
        ));
    }
    let s = cfg.surface();
    let ord = |p: &Point| w.coefficient.order_at(p);
    let plus: Vec<Option<i64>> = s.p_points.iter().map(ord).collect();
    out.push(Record::exact(
        "cocycle.omega.divisor",
        "(ω) ≥ Σ m⁺_i P_i − Σ m⁻_j Q_j − Σ γ_s",
        json!({ "m_plus": w.m_plus, "m_minus": w.m_minus }),
        w.m_plus.iter().map(|&m| Some(m)).collect::<Vec<_>>(),
        plus,
    ));
    out
}

fn random_element(ctx: &Context, rng: &mut Rng) -> (i32, GlobalElement) {
    let (lo, hi) = ctx.run.window;
    loop {
        let m = random::int(rng, lo as i64, hi as i64) as i32;
        let b = ctx.model.basis(m);
        if b.is_empty() {
            continue;
        }
        let i = random::int(rng, 0, b.len() as i64 - 1) as usize;
        return (m, b[i].clone());
    }
}

fn global_records(ctx: &Context, w: &OmegaForm, rng: &mut Rng) -> Result<Vec<Record>, Error> {
    let cfg = &ctx.run.configuration;
    let n = ctx.run.trials.min(MAX_TRIPLES);
    let p = json!({ "window": [ctx.run.window.0, ctx.run.window.1] });
    let mut holo = Tally::new("cocycle.holomorphy", "tr(L dL′ − ω[L, L′]) is holomorphic at every γ", p.clone());
    let mut alt = Tally::new("cocycle.alternating", "γ(L, L) = 0", p.clone());
    let mut anti = Tally::new("cocycle.antisymmetry", "γ(L, L′) = −γ(L′, L)", p.clone());
    let mut bilin = Tally::new("cocycle.bilinearity", "γ(aL + bL′, L″) = aγ(L, L″) + bγ(L′, L″)", p.clone());
    let mut ident = Tally::new("cocycle.identity", "γ([L, L′], L″) + cyclic = 0", p);
    for _ in 0..n {
        let (mx, x) = random_element(ctx, rng);
        let (my, y) = random_element(ctx, rng);
        let (mz, z) = random_element(ctx, rng);
        let tag = || format!("degrees ({mx}, {my}, {mz})");
        let h = certify_holomorphy(cfg, w, &x, &y)
            .and_then(|_| certify_holomorphy(cfg, w, &y, &z))
            .and_then(|_| certify_holomorphy(cfg, w, &z, &x));
        holo.check_result(&h, |_| true, |_| tag());
        let v = cocycle_value(cfg, w, &x, &x);
        alt.check_result(&v, |v| v.is_zero(), |v| format!("{}: {v}", tag()));
        let s = cocycle_value(cfg, w, &x, &y).and_then(|a| Ok(a + cocycle_value(cfg, w, &y, &x)?));
        anti.check_result(&s, |v| v.is_zero(), |v| format!("{}: sum {v}", tag()));
        let (a, b) = (random::nonzero_rational(rng), random::nonzero_rational(rng));
        let comb = x.scale(&a).add(&y.scale(&b));
        let d = (|| -> Result<Rational, Error> {
            let lhs = cocycle_value(cfg, w, &comb, &z)?;
            let rhs = &a * &cocycle_value(cfg, w, &x, &z)? + &b * &cocycle_value(cfg, w, &y, &z)?;
            Ok(lhs - rhs)
        })();
        bilin.check_result(&d, |v| v.is_zero(), |v| format!("{}: defect {v}", tag()));
        let d = cocycle_identity_defect(cfg, w, &x, &y, &z);
        ident.check_result(&d, |v| v.is_zero(), |v| format!("{}: defect {v}", tag()));
    }
    Ok([holo, alt, anti, bilin, ident].map(Tally::finish).into())
}
