use laxg2_core::sphere::{check_membership, divisor_degree, grading_check, joint_independence};
use laxg2_core::{g2, Error};
use serde_json::json;

use super::{Context, Tally};
use crate::report::Record;

pub(super) fn run(ctx: &Context) -> Result<Vec<Record>, Error> {
    let cfg = &ctx.run.configuration;
    let s = cfg.surface();
    let (lo, hi) = ctx.run.window;
    let expected = g2::DIM * s.n();
    let mut out = Vec::new();
    let mut degrees = Tally::new("grading.divisor_degree", "deg D_m = N + g − 1 + 2K for every m", json!({}));
    let mut members = Tally::new("grading.membership", "basis elements of 𝓛_m satisfy the divisor and Tyurin conditions", json!({}));
    for m in lo..=hi {
        let d = divisor_degree(cfg, m);
        degrees.check_result(&d, |_| true, |_| String::new());
        let basis = ctx.model.basis(m);
        out.push(Record::exact(
            format!("grading.dimension.m{m:+03}"),
            "dim 𝓛_m = 14N",
            json!({ "m": m }),
            expected,
            basis.len(),
        ));
        for l in basis.iter() {
            let r = check_membership(cfg, l, m);
            members.check(r.is_ok(), || format!("m={m}: {}", r.clone().unwrap_err()));
        }
    }
    out.extend([degrees, members].map(Tally::finish));

    let ind = joint_independence(ctx.model, lo, hi)?;
    out.push(Record::predicate(
        "grading.joint_independence",
        "𝓛 is the direct sum of the 𝓛_m",
        json!({ "window": [lo, hi], "dims": ind.dims }),
        json!({ "rank": ind.dims.iter().sum::<usize>() }),
        json!({ "rank": ind.rank }),
        ind.is_direct(),
    ));

    let single = s.n() == 1 && s.m() == 1;
    let s_max = if single { 0 } else { 2 };
    let mut outside = Vec::new();
    for k in lo..=hi {
        for l in lo..=hi {
            let r = grading_check(ctx.model, k, l, s_max)?;
            if r.outside_window > 0 {
                outside.push([k, l]);
            }
            let id = format!("grading.spread.k{k:+03}.l{l:+03}");
            let params = json!({ "k": k, "l": l, "pairs": r.pairs, "s_max": s_max, "direct": r.direct });
            let actual = json!({ "spread": r.spread, "outside_window": r.outside_window });
            out.push(if single {
                Record::exact(
                    id,
                    "[𝓛_k, 𝓛_l] ⊆ 𝓛_{k+l} on the sphere with one P and one Q",
                    params,
                    json!({ "spread": 0, "outside_window": 0 }),
                    actual,
                )
            } else {
                Record::predicate(id, "spread of [𝓛_k, 𝓛_l], measured and reported", params, "reported", actual, true)
            });
        }
    }
    out.push(Record::predicate(
        "grading.bracket_closure",
        "[𝓛_k, 𝓛_l] ⊆ 𝓛_{k+l} ⊕ … ⊕ 𝓛_{k+l+S}",
        json!({ "window": [lo, hi], "s_max": s_max }),
        json!({ "cells_outside": [] }),
        json!({ "cells_outside": outside }),
        outside.is_empty(),
    ));
    Ok(out)
}
