//! The form `ω`, the residue identities at Tyurin points and the local
//! cocycle `γ(L, L′) = Σ_i res_{P_i} tr(L dL′ − ω[L, L′])`.
//!
//! `ω = Ω(z) dz` with `Ω` a G₂-valued rational function. At every `γ` the
//! expansion `Ω = ω₋₁/u + ω₀ + ω₁u + …` has a residue-shaped `ω₋₁`
//! normalized by `α₁ᵗβ̃₂ = α₂ᵗβ̃₁ = 1`, an order-zero term obeying the
//! eigenvalue conditions and `α₂ᵗW₁α₁ = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{solve_affine, Matrix, Rational};
use crate::g2::{bracket, g2_basis, trace_form, G2Element, Mat3, Vec3, DIM};
use crate::jets::{jet_commutator, jet_derivative, trace_pairing, MatrixJet, ScalarJet};
use crate::random;
use crate::sphere::{
    expand_window, global_bracket, monomial_expansions, Configuration, Denominator, GlobalElement,
    Model, Point,
};
use crate::tyurin::{
    check_order_one, check_order_zero, is_admissible, order_constraints, residue_with_pairing,
    TyurinDatum,
};

/// Largest total pole budget `d_P + d_Q` tried by [`build_omega`].
pub const MAX_BUDGET: u32 = 6;

/// Local data of `ω` at one Tyurin point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaParams {
    pub beta01: Rational,
    pub beta02: Rational,
    pub beta1: Vec3,
    pub beta2: Vec3,
    pub w1: Vec3,
    pub w2: Vec3,
    pub w: Mat3,
    pub kappa1: Rational,
    pub kappa2: Rational,
    pub w_first: Mat3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaForm {
    /// `Ω` in `ω = Ω dz`.
    pub coefficient: GlobalElement,
    pub params: Vec<OmegaParams>,
    /// `ord_{P_i} ω`.
    pub m_plus: Vec<i64>,
    /// `−ord_{Q_j} ω`.
    pub m_minus: Vec<i64>,
    /// Pole budget `(d_P, d_Q)` at which a solution was found.
    pub budget: (u32, u32),
    /// Dimension of the solution space at that budget.
    pub kernel_dim: usize,
}

impl OmegaForm {
    /// Laurent coefficients of `Ω` at a finite point.
    pub fn expansion(&self, at: &Rational, lo: i32, hi: i32) -> Result<MatrixJet, Error> {
        expand_window(&self.coefficient, &Point::Finite(at.clone()), lo, hi)
    }
}

struct OmegaSystem {
    den: Denominator,
    ncoef: usize,
    matrix: Matrix<Rational>,
    rhs: Vec<Rational>,
}

/// `(a₁, a₂, A)` as 15 entries, `A` row-major.
fn entries(a1: &Vec3, a2: &Vec3, a: &Mat3) -> Vec<Rational> {
    let mut v: Vec<Rational> = a1.0.iter().chain(a2.0.iter()).cloned().collect();
    for i in 0..3 {
        for j in 0..3 {
            v.push(a[(i, j)].clone());
        }
    }
    v
}

/// Entries of the residue shape as columns for `β̃₀₁, β̃₀₂, β̃₁ (3), β̃₂ (3)`.
/// `A = α₁β̃₂ᵗ − β̃₁α₂ᵗ` is not traceless for every parameter value, so the
/// shape is matched entrywise rather than in G₂ coordinates.
fn residue_columns(d: &TyurinDatum) -> Vec<Vec<Rational>> {
    let (al1, al2) = (d.alpha1(), d.alpha2());
    let zero = Vec3::zero();
    let mut cols = vec![
        entries(al1, &zero, &Mat3::zero()),
        entries(&zero, al2, &Mat3::zero()),
    ];
    for k in 0..3 {
        let e = Vec3::unit(k);
        cols.push(entries(&zero, &zero, &e.outer(al2).scale(&Rational::from_int(-1))));
    }
    for k in 0..3 {
        let e = Vec3::unit(k);
        cols.push(entries(&zero, &zero, &al1.outer(&e)));
    }
    cols
}

/// Entries of the G₂ basis elements, one column per coordinate.
fn coordinate_columns() -> Vec<Vec<Rational>> {
    (0..DIM)
        .map(|i| {
            let mut c = vec![Rational::zero(); DIM];
            c[i] = Rational::from_int(1);
            let g = G2Element::from_coords(&c);
            entries(&g.a1, &g.a2, g.a())
        })
        .collect()
}

fn omega_system(cfg: &Configuration, dp: u32, dq: u32) -> Option<OmegaSystem> {
    let s = cfg.surface();
    let mut den = Denominator::new();
    for d in &s.tyurin {
        den.insert(d.gamma().clone(), 1);
    }
    for p in s.p_points.iter().filter_map(Point::finite) {
        den.insert(p.clone(), dp);
    }
    let mut at_infinity = 0;
    for q in &s.q_points {
        match q {
            Point::Finite(x) => {
                den.insert(x.clone(), dq);
            }
            Point::Infinity => at_infinity = dq as i64,
        }
    }
    den.retain(|_, e| *e > 0);
    let total: i64 = den.values().map(|&e| e as i64).sum();
    // dz has a double pole at infinity.
    let max_degree = total + at_infinity - 2;
    if max_degree < 0 {
        return None;
    }
    let ncoef = max_degree as usize + 1;
    let k = s.tyurin.len();
    let cols = ncoef * DIM + 8 * k;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (si, d) in s.tyurin.iter().enumerate() {
        let table = monomial_expansions(&den, &Point::Finite(d.gamma().clone()), ncoef - 1, -1, 1);
        let pcol = ncoef * DIM + 8 * si;
        let res = residue_columns(d);
        let basis = coordinate_columns();
        for e in 0..15 {
            let mut r = vec![Rational::zero(); cols];
            for (kk, t) in table.iter().enumerate() {
                for (i, b) in basis.iter().enumerate() {
                    if !b[e].is_zero() {
                        r[kk * DIM + i] = &t[0] * &b[e];
                    }
                }
            }
            for (p, c) in res.iter().enumerate() {
                r[pcol + p] = -&c[e];
            }
            rows.push(r);
            rhs.push(Rational::zero());
        }
        let (a1, a2) = (d.alpha1(), d.alpha2());
        for (offset, v) in [(5, a1), (2, a2)] {
            let mut r = vec![Rational::zero(); cols];
            for j in 0..3 {
                r[pcol + offset + j] = v[j].clone();
            }
            rows.push(r);
            rhs.push(Rational::from_int(1));
        }
        for (order, idx) in [(0, 1), (1, 2)] {
            let c = order_constraints(d, order);
            for f in 0..c.rows() {
                let mut r = vec![Rational::zero(); cols];
                for (kk, t) in table.iter().enumerate() {
                    if t[idx].is_zero() {
                        continue;
                    }
                    for i in 0..DIM {
                        if !c[(f, i)].is_zero() {
                            r[kk * DIM + i] = &t[idx] * &c[(f, i)];
                        }
                    }
                }
                rows.push(r);
                rhs.push(Rational::zero());
            }
        }
    }
    Some(OmegaSystem {
        den,
        ncoef,
        matrix: Matrix::from_rows(rows, cols),
        rhs,
    })
}

/// Finds `ω` with the smallest total pole budget at the P- and Q-points,
/// preferring poles at Q. Among the solutions at that budget the seed picks
/// `particular + Σ rᵢ kernelᵢ` with random small rationals `rᵢ`.
pub fn build_omega(cfg: &Configuration, seed: u64) -> Result<OmegaForm, Error> {
    let mut rng = random::rng(seed);
    for t in 0..=MAX_BUDGET {
        for dp in 0..=t {
            let dq = t - dp;
            let Some(sys) = omega_system(cfg, dp, dq) else {
                continue;
            };
            let sol = match solve_affine(&sys.matrix, &sys.rhs) {
                Ok(sol) => sol,
                Err(Error::Inconsistent) => continue,
                Err(e) => return Err(e),
            };
            let mut x = sol.particular.clone();
            for v in &sol.kernel {
                let r = random::rational(&mut rng);
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += &(&r * vi);
                }
            }
            let num = x[..sys.ncoef * DIM].chunks(DIM).map(G2Element::from_coords).collect();
            let coefficient = GlobalElement::new(num, sys.den).reduced();
            let params = omega_params(cfg, &coefficient)?;
            let (m_plus, m_minus) = divisor_bounds(cfg, &coefficient)?;
            return Ok(OmegaForm {
                coefficient,
                params,
                m_plus,
                m_minus,
                budget: (dp, dq),
                kernel_dim: sol.kernel.len(),
            });
        }
    }
    Err(Error::NoSolution(MAX_BUDGET))
}

/// Re-extracts the local data of `Ω dz` at every γ, failing if any
/// defining condition is violated.
pub fn omega_params(cfg: &Configuration, om: &GlobalElement) -> Result<Vec<OmegaParams>, Error> {
    cfg.surface()
        .tyurin
        .iter()
        .map(|d| {
            let p = Point::Finite(d.gamma().clone());
            if om.pole_order_at(&p) > 1 || om.order_at(&p).is_some_and(|o| o < -1) {
                return Err(Error::not_admissible("omega", "pole of order > 1 at γ"));
            }
            let j = expand_window(om, &p, -1, 1)?;
            let (beta01, beta02, beta1, beta2) =
                residue_with_pairing(j.coeff(-1)?, d, &Rational::from_int(1))?;
            let w0 = j.coeff(0)?;
            let (kappa1, kappa2, _, _) = check_order_zero(w0, d)?;
            check_order_one(j.coeff(1)?, d)?;
            Ok(OmegaParams {
                beta01,
                beta02,
                beta1,
                beta2,
                w1: w0.a1.clone(),
                w2: w0.a2.clone(),
                w: w0.a().clone(),
                kappa1,
                kappa2,
                w_first: j.coeff(1)?.a().clone(),
            })
        })
        .collect()
}

/// `(m⁺, m⁻)`: orders of `ω` at the P-points and minus its orders at the
/// Q-points. At infinity `ord ω = ord Ω − 2`.
fn divisor_bounds(cfg: &Configuration, om: &GlobalElement) -> Result<(Vec<i64>, Vec<i64>), Error> {
    let ord = |p: &Point| {
        om.order_at(p)
            .ok_or_else(|| Error::DegenerateConfiguration("ω vanishes identically".into()))
    };
    let s = cfg.surface();
    let m_plus = s.p_points.iter().map(ord).collect::<Result<_, _>>()?;
    let m_minus = s
        .q_points
        .iter()
        .map(|q| {
            let o = ord(q)?;
            Ok(match q {
                Point::Infinity => 2 - o,
                Point::Finite(_) => -o,
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok((m_plus, m_minus))
}

/// `(lower, upper)` from the pole data of `ω`:
/// `upper = −1 − min_i{−1, m⁺_i}`,
/// `lower = min_j a_j⁻¹(1 − max{2B − 1, 2B + max_j m⁻_j})`.
pub fn locality_bounds(
    a: &[Rational],
    b_bound: &Rational,
    m_plus: &[i64],
    m_minus: &[i64],
) -> (Rational, i64) {
    let upper = -1 - m_plus.iter().copied().fold(-1, i64::min);
    let two_b = Rational::from_int(2) * b_bound;
    let max_minus = m_minus.iter().copied().max().unwrap_or(i64::MIN / 4);
    let inner = std::cmp::max(
        &two_b - Rational::from_int(1),
        &two_b + Rational::from_int(max_minus),
    );
    let top = Rational::from_int(1) - inner;
    let lower = a
        .iter()
        .map(|aj| &top / aj)
        .min()
        .expect("at least one Q-point");
    (lower, upper)
}

/// Lower bound with the pole order of `tr(L dL′)` at `Q_j` taken as
/// `a_j(m+m′) + b_{m,j} + b_{m′,j} + 1`, since `d` raises a pole order by
/// one: `min_j a_j⁻¹(1 − max{2B + 1, 2B + max_j m⁻_j})`.
pub fn derivative_lower_bound(a: &[Rational], b_bound: &Rational, m_minus: &[i64]) -> Rational {
    let two_b = Rational::from_int(2) * b_bound;
    let max_minus = m_minus.iter().copied().max().unwrap_or(i64::MIN / 4);
    let inner = std::cmp::max(
        &two_b + Rational::from_int(1),
        &two_b + Rational::from_int(max_minus),
    );
    let top = Rational::from_int(1) - inner;
    a.iter().map(|aj| &top / aj).min().expect("at least one Q-point")
}

pub fn locality_window(cfg: &Configuration, w: &OmegaForm) -> (Rational, i64) {
    locality_bounds(&cfg.grading().a, cfg.bound_b(), &w.m_plus, &w.m_minus)
}

/// `res_γ tr(L dL′)` with the orders below −1 that must vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdLResidue {
    pub residue: Rational,
    /// Orders −5…−2 of `tr(L dL′)` with nonzero coefficient.
    pub nonzero_low_orders: Vec<i32>,
    pub tr_lm1_lm1: Rational,
    pub tr_l0_lm2: Rational,
}

impl LdLResidue {
    pub fn certified(&self) -> bool {
        self.nonzero_low_orders.is_empty() && self.tr_lm1_lm1.is_zero() && self.tr_l0_lm2.is_zero()
    }
}

fn require_admissible(x: &MatrixJet, d: &TyurinDatum) -> Result<(), Error> {
    let rep = is_admissible(x, d);
    let failed = rep.failures().next().map(|f| (f.condition, f.detail.clone()));
    match failed {
        None => Ok(()),
        Some((c, detail)) => Err(Error::NotAdmissible {
            condition: format!("{c:?}"),
            detail: detail.unwrap_or_default(),
        }),
    }
}

fn low_orders(s: &ScalarJet, lo: i32, hi: i32) -> Vec<i32> {
    (lo..=hi)
        .filter(|&n| s.coeff(n).map(|c| !c.is_zero()).unwrap_or(false))
        .collect()
}

/// Residue of `tr(L dL′)` at γ for admissible jets given through order ≥ 2.
pub fn residue_trace_ldl(x: &MatrixJet, y: &MatrixJet, d: &TyurinDatum) -> Result<LdLResidue, Error> {
    require_admissible(x, d)?;
    require_admissible(y, d)?;
    for j in [x, y] {
        if j.hi() < 2 {
            return Err(Error::OrderOutsideWindow {
                order: 2,
                lo: j.lo(),
                hi: j.hi(),
            });
        }
    }
    let x = x.extend_down(-2);
    let y = y.extend_down(-2);
    let s = trace_pairing(&x, &jet_derivative(&y))?;
    Ok(LdLResidue {
        residue: s.coeff(-1)?.clone(),
        nonzero_low_orders: low_orders(&s, -5, -2),
        tr_lm1_lm1: trace_form(x.coeff(-1)?, y.coeff(-1)?),
        tr_l0_lm2: trace_form(x.coeff(0)?, y.coeff(-2)?),
    })
}

/// `res_γ tr(L ω)` with the orders −3, −2 that must vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LomegaResidue {
    pub residue: Rational,
    pub nonzero_low_orders: Vec<i32>,
}

pub fn residue_trace_lomega(
    x: &MatrixJet,
    w: &OmegaForm,
    cfg: &Configuration,
    gamma_index: usize,
) -> Result<LomegaResidue, Error> {
    let d = cfg
        .surface()
        .tyurin
        .get(gamma_index)
        .ok_or_else(|| Error::Internal(format!("no Tyurin point {gamma_index}")))?;
    require_admissible(x, d)?;
    let x = x.extend_down(-2);
    let om = w.expansion(d.gamma(), -1, 1)?;
    let s = trace_pairing(&x, &om)?;
    Ok(LomegaResidue {
        residue: s.coeff(-1)?.clone(),
        nonzero_low_orders: low_orders(&s, -3, -2),
    })
}

fn need(j: &MatrixJet, upto: i32) -> Result<(), Error> {
    if j.hi() < upto {
        Err(Error::OrderOutsideWindow {
            order: upto,
            lo: j.lo(),
            hi: j.hi(),
        })
    } else {
        Ok(())
    }
}

/// The linear functional `y ↦ res tr(x dy − Ω[x, y] dz)` at one point.
///
/// Written as `Σ_c tr(V_c y_c)` with `V_c = c·x₋c − [Ω, x]₋₁₋c`, stored as
/// rows of `tr(V_c ·)` in G₂ coordinates. Valid for every `y` whose
/// expansion starts at order `≥ ly` and is known through [`Self::reach`].
pub struct ResidueFunctional {
    ly: i32,
    reach: i32,
    rows: Vec<(i32, Vec<Rational>)>,
}

impl ResidueFunctional {
    pub fn new(x: &MatrixJet, om: &MatrixJet, ly: i32) -> Result<Self, Error> {
        let (lx, lo) = (x.lo(), om.lo());
        need(x, (-ly).max(-1 - lo - ly))?;
        need(om, -1 - lx - ly)?;
        let reach = (-lx).max(-1 - lo - lx);
        let basis = g2_basis();
        let mut rows = Vec::new();
        for c in ly..=reach {
            let mut v = match x.coeff(-c) {
                Ok(xc) if c != 0 => xc.scale(&Rational::from_int(c as i64)),
                _ => G2Element::zero(),
            };
            let target = -1 - c;
            for a in lo..=target - lx {
                let (Ok(oa), Ok(xb)) = (om.coeff(a), x.coeff(target - a)) else {
                    continue;
                };
                if !oa.is_zero() && !xb.is_zero() {
                    v = &v - &bracket(oa, xb);
                }
            }
            if !v.is_zero() {
                rows.push((c, basis.iter().map(|e| trace_form(&v, e)).collect()));
            }
        }
        Ok(ResidueFunctional { ly, reach, rows })
    }

    /// Highest order of `y` the functional reads.
    pub fn reach(&self) -> i32 {
        self.reach
    }

    /// Applies the functional to coordinates `(order, coords)` of `y`.
    pub fn apply_coords(&self, y: &BTreeMap<i32, Vec<Rational>>) -> Rational {
        let mut acc = Rational::zero();
        for (c, row) in &self.rows {
            if let Some(yc) = y.get(c) {
                for (r, v) in row.iter().zip(yc) {
                    if !r.is_zero() && !v.is_zero() {
                        acc += &(r * v);
                    }
                }
            }
        }
        acc
    }

    pub fn apply(&self, y: &MatrixJet) -> Result<Rational, Error> {
        if y.lo() < self.ly {
            return Err(Error::OrderOutsideWindow {
                order: y.lo(),
                lo: self.ly,
                hi: self.reach,
            });
        }
        need(y, self.reach)?;
        Ok(self.apply_coords(&jet_coords(y)))
    }
}

/// Nonzero coefficients of a jet in G₂ coordinates.
pub fn jet_coords(y: &MatrixJet) -> BTreeMap<i32, Vec<Rational>> {
    y.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n, c.coords()))
        .collect()
}

/// Coefficient of order −1 of `tr(x y′) − tr(Ω[x, y])` from local jets.
pub fn local_residue(x: &MatrixJet, y: &MatrixJet, om: &MatrixJet) -> Result<Rational, Error> {
    ResidueFunctional::new(x, om, y.lo())?.apply(y)
}

/// Checks that `tr(x dy − ω[x, y])` has no pole at any Tyurin point.
pub fn certify_holomorphy(
    cfg: &Configuration,
    w: &OmegaForm,
    x: &GlobalElement,
    y: &GlobalElement,
) -> Result<(), Error> {
    for d in &cfg.surface().tyurin {
        let p = Point::Finite(d.gamma().clone());
        let xj = expand_window(x, &p, -2, 3)?;
        let yj = expand_window(y, &p, -2, 3)?;
        let om = w.expansion(d.gamma(), -1, 3)?;
        let s1 = trace_pairing(&xj, &jet_derivative(&yj))?;
        let s2 = trace_pairing(&om, &jet_commutator(&xj, &yj)?)?;
        for n in -5..=-1 {
            let v = s1.coeff(n)? - s2.coeff(n)?;
            if !v.is_zero() {
                return Err(Error::HolomorphyViolation {
                    point: d.gamma().to_string(),
                    order: n,
                    value: v.to_string(),
                });
            }
        }
    }
    Ok(())
}

fn p_jets(x: &GlobalElement, p: &Point, hi: i32) -> Result<MatrixJet, Error> {
    let lo = x.order_at(p).map_or(hi, |o| o as i32).min(hi);
    expand_window(x, p, lo, hi)
}

/// `Σ_i res_{P_i} tr(x dy − ω[x, y])`, after certifying holomorphy at the
/// Tyurin points.
pub fn cocycle_value(
    cfg: &Configuration,
    w: &OmegaForm,
    x: &GlobalElement,
    y: &GlobalElement,
) -> Result<Rational, Error> {
    certify_holomorphy(cfg, w, x, y)?;
    let mut total = Rational::zero();
    for p in &cfg.surface().p_points {
        let lx = x.order_at(p).unwrap_or(0) as i32;
        let ly = y.order_at(p).unwrap_or(0) as i32;
        let lo = w.coefficient.order_at(p).unwrap_or(0) as i32;
        let hi = (-lx.min(ly)).max(-1 - lo - lx.min(ly)).max(0);
        let xj = p_jets(x, p, hi)?;
        let yj = p_jets(y, p, hi)?;
        let om = p_jets(&w.coefficient, p, (-1 - lx - ly).max(lo))?;
        total += &local_residue(&xj, &yj, &om)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCell {
    pub m: i32,
    pub n: i32,
    pub pairs: usize,
    pub nonzero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub lower: Rational,
    pub upper: i64,
    /// See [`derivative_lower_bound`].
    pub derivative_lower: Rational,
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    fn outside(&self, lower: &Rational) -> Vec<&SweepCell> {
        self.cells
            .iter()
            .filter(|c| {
                let s = (c.m + c.n) as i64;
                (s > self.upper || &Rational::from_int(s) < lower) && c.nonzero > 0
            })
            .collect()
    }

    /// Cells with `m + n` outside `[lower, upper]` and a nonzero value.
    pub fn violations(&self) -> Vec<&SweepCell> {
        self.outside(&self.lower)
    }

    /// The same against `[derivative_lower, upper]`.
    pub fn derivative_violations(&self) -> Vec<&SweepCell> {
        self.outside(&self.derivative_lower)
    }
}

/// Evaluates `γ` on every pair of basis elements of degrees in `[lo, hi]`.
pub fn locality_sweep(model: &Model, w: &OmegaForm, lo: i32, hi: i32) -> Result<SweepReport, Error> {
    let cfg = model.config();
    let (lower, upper) = locality_window(cfg, w);
    let points = &cfg.surface().p_points;
    let mut orders_min = 0i32;
    let mut bases = BTreeMap::new();
    for m in lo..=hi {
        let b = model.basis(m);
        for e in b.iter() {
            for p in points {
                if let Some(o) = e.order_at(p) {
                    orders_min = orders_min.min(o as i32);
                }
            }
        }
        bases.insert(m, b);
    }
    let om_lo: Vec<i32> = points
        .iter()
        .map(|p| w.coefficient.order_at(p).unwrap_or(0) as i32)
        .collect();
    let top = |olo: i32| (-orders_min).max(-1 - olo - orders_min).max(0);
    let oms = points
        .iter()
        .zip(&om_lo)
        .map(|(p, &olo)| p_jets(&w.coefficient, p, (-1 - 2 * orders_min).max(olo)))
        .collect::<Result<Vec<_>, _>>()?;
    type PerPoint = Vec<(ResidueFunctional, BTreeMap<i32, Vec<Rational>>)>;
    let mut local: BTreeMap<i32, Vec<PerPoint>> = BTreeMap::new();
    for (m, b) in &bases {
        let per = b
            .iter()
            .map(|e| {
                points
                    .iter()
                    .zip(&om_lo)
                    .zip(&oms)
                    .map(|((p, &olo), om)| {
                        let j = p_jets(e, p, top(olo))?;
                        Ok((ResidueFunctional::new(&j, om, orders_min)?, jet_coords(&j)))
                    })
                    .collect::<Result<Vec<_>, Error>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        local.insert(*m, per);
    }
    let mut cells = Vec::new();
    for m in lo..=hi {
        for n in lo..=hi {
            let mut nonzero = 0;
            let mut pairs = 0;
            for xs in &local[&m] {
                for ys in &local[&n] {
                    pairs += 1;
                    let mut v = Rational::zero();
                    for ((f, _), (_, yc)) in xs.iter().zip(ys) {
                        v += &f.apply_coords(yc);
                    }
                    if !v.is_zero() {
                        nonzero += 1;
                    }
                }
            }
            cells.push(SweepCell { m, n, pairs, nonzero });
        }
    }
    Ok(SweepReport {
        lower,
        upper,
        derivative_lower: derivative_lower_bound(&cfg.grading().a, cfg.bound_b(), &w.m_minus),
        cells,
    })
}

/// `γ([x,y],z) + γ([y,z],x) + γ([z,x],y)`.
pub fn cocycle_identity_defect(
    cfg: &Configuration,
    w: &OmegaForm,
    x: &GlobalElement,
    y: &GlobalElement,
    z: &GlobalElement,
) -> Result<Rational, Error> {
    Ok(cocycle_value(cfg, w, &global_bracket(x, y), z)?
        + cocycle_value(cfg, w, &global_bracket(y, z), x)?
        + cocycle_value(cfg, w, &global_bracket(z, x), y)?)
}

/// Largest absolute value in a list, for reports.
pub fn max_abs(values: &[Rational]) -> Rational {
    values.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
}
