//! Degree tables: `m ↦ dim 𝓛_m` and `(k, l) ↦` measured spread.

use laxg2_core::sphere::{grading_check, Model};
use laxg2_core::{g2, Error};
use serde::{Deserialize, Serialize};

/// Degrees above `k + l` probed when measuring a spread.
pub const SPREAD_PROBE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCell {
    pub m: i32,
    pub dim: usize,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadCell {
    pub k: i32,
    pub l: i32,
    pub spread: Option<i32>,
    pub outside_window: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub mrange: (i32, i32),
    pub expected_dim: usize,
    pub dims: Vec<DimCell>,
    pub spreads: Vec<SpreadCell>,
}

impl DimensionTable {
    pub fn flagged(&self) -> impl Iterator<Item = &DimCell> {
        self.dims.iter().filter(|c| c.flagged)
    }

    pub fn clean(&self) -> bool {
        self.flagged().next().is_none() && self.spreads.iter().all(|c| c.outside_window == 0)
    }

    /// Plain-text rendering.
    pub fn render(&self) -> String {
        let mut s = format!("m      dim   (expected {})\n", self.expected_dim);
        for c in &self.dims {
            let mark = if c.flagged { "  <- differs" } else { "" };
            s += &format!("{:>3}  {:>5}{mark}\n", c.m, c.dim);
        }
        let (lo, hi) = self.mrange;
        s += &format!("\nspread of [L_k, L_l] (rows k, columns l; '?' = outside k+l..k+l+{SPREAD_PROBE})\n     ");
        for l in lo..=hi {
            s += &format!("{l:>4}");
        }
        s.push('\n');
        for k in lo..=hi {
            s += &format!("{k:>4} ");
            for l in lo..=hi {
                let c = self.spreads.iter().find(|c| c.k == k && c.l == l).expect("full grid");
                let v = match (c.outside_window, c.spread) {
                    (0, Some(x)) => x.to_string(),
                    (0, None) => "-".into(),
                    _ => "?".into(),
                };
                s += &format!("{v:>4}");
            }
            s.push('\n');
        }
        s
    }
}

pub fn dimension_table(model: &Model, mrange: (i32, i32)) -> Result<DimensionTable, Error> {
    let (lo, hi) = mrange;
    let expected_dim = g2::DIM * model.config().surface().n();
    let dims = (lo..=hi)
        .map(|m| {
            let dim = model.basis(m).len();
            DimCell { m, dim, flagged: dim != expected_dim }
        })
        .collect();
    let mut spreads = Vec::new();
    for k in lo..=hi {
        for l in lo..=hi {
            let r = grading_check(model, k, l, SPREAD_PROBE)?;
            spreads.push(SpreadCell {
                k,
                l,
                spread: r.spread,
                outside_window: r.outside_window,
            });
        }
    }
    Ok(DimensionTable {
        mrange,
        expected_dim,
        dims,
        spreads,
    })
}
