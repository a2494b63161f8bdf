//! The genus-0 realization.
//!
//! `𝓛_m` is the space of G₂-valued rational functions `L` with
//! `(L) + D_m ≥ 0` whose expansions at every Tyurin point are admissible,
//! where `D_m = −m ΣP_i + Σ(a_j m + b_{m,j})Q_j + 2Σγ_s`. An element of
//! `𝓛_m` is written over the fixed denominator
//!
//! ```text
//! Π_s (z − γ_s)² · Π_{P_i finite} (z − P_i)^{max(−m,0)} · Π_{Q_j finite} (z − Q_j)^{max(n_j,0)}
//! ```
//!
//! with `n_j = a_j m + b_{m,j}`; zeros required at `P_i` (`m > 0`) or `Q_j`
//! (`n_j < 0`) become Taylor conditions on the numerator, the order at
//! infinity becomes a degree bound, and admissibility is imposed on the
//! Laurent coefficients of orders −2…1 at each `γ_s`.
//!
//! Identities between rational functions are decided by evaluation at
//! more sample points than the numerator degree over a common denominator,
//! which is exact.

mod config;
mod element;
mod series;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use config::{desk_configuration, divisor_degree, BRule, Configuration, GradingSpec, Point, SurfaceSpec};
pub use element::{
    expand_at, expand_window, global_bracket, monomial_expansions, Denominator, GlobalElement,
};

use self::element::lcm;
use self::series::binomial;
use crate::error::Error;
use crate::exact::{InjectiveSolver, Matrix, Rational};
use crate::g2::{G2Element, DIM};
use crate::tyurin::{is_admissible, order_constraints};

/// Denominator and numerator degree bound shared by all of `𝓛_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceShape {
    pub denominator: Denominator,
    /// Largest allowed numerator degree; negative means the space is zero.
    pub max_degree: i64,
}

pub fn space_shape(cfg: &Configuration, m: i32) -> SpaceShape {
    let s = cfg.surface();
    let mut den = Denominator::new();
    for d in &s.tyurin {
        den.insert(d.gamma().clone(), 2);
    }
    for p in s.p_points.iter().filter_map(Point::finite) {
        den.insert(p.clone(), (-m).max(0) as u32);
    }
    let mut n_inf = 0;
    for (j, q) in s.q_points.iter().enumerate() {
        let n = cfg.q_pole_order(m, j);
        match q {
            Point::Finite(x) => {
                den.insert(x.clone(), n.max(0) as u32);
            }
            Point::Infinity => n_inf = n,
        }
    }
    den.retain(|_, e| *e > 0);
    let total: i64 = den.values().map(|&e| e as i64).sum();
    SpaceShape {
        denominator: den,
        max_degree: total + n_inf,
    }
}

/// Rows `F^{(j)}(x)/j! = 0` for `j < order`, one per G₂ coordinate.
fn taylor_rows(x: &Rational, order: i64, ncoef: usize) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for j in 0..order as usize {
        for i in 0..DIM {
            let mut r = vec![Rational::zero(); ncoef * DIM];
            for k in j..ncoef {
                r[k * DIM + i] = binomial(k, j) * x.pow((k - j) as i32);
            }
            rows.push(r);
        }
    }
    rows
}

/// Basis of `𝓛_m`; exactly `14N` elements or `DegenerateConfiguration`.
pub fn homogeneous_basis(cfg: &Configuration, m: i32) -> Result<Vec<GlobalElement>, Error> {
    let expected = DIM * cfg.surface().n();
    let basis = homogeneous_space(cfg, m);
    if basis.len() != expected {
        return Err(Error::DegenerateConfiguration(format!(
            "dim 𝓛_{m} = {}, expected 14N = {expected}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// A basis of `𝓛_m` of whatever dimension the configuration produces.
pub fn homogeneous_space(cfg: &Configuration, m: i32) -> Vec<GlobalElement> {
    let s = cfg.surface();
    let shape = space_shape(cfg, m);
    if shape.max_degree < 0 {
        return Vec::new();
    }
    let ncoef = shape.max_degree as usize + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    if m > 0 {
        for p in s.p_points.iter().filter_map(Point::finite) {
            rows.extend(taylor_rows(p, m as i64, ncoef));
        }
    }
    for (j, q) in s.q_points.iter().enumerate() {
        let n = cfg.q_pole_order(m, j);
        if let (Point::Finite(x), true) = (q, n < 0) {
            rows.extend(taylor_rows(x, -n, ncoef));
        }
    }
    for d in &s.tyurin {
        let point = Point::Finite(d.gamma().clone());
        let table = monomial_expansions(&shape.denominator, &point, ncoef - 1, -2, 1);
        for n in -2..=1 {
            let c = order_constraints(d, n);
            for f in 0..c.rows() {
                let mut r = vec![Rational::zero(); ncoef * DIM];
                for (k, t) in table.iter().enumerate() {
                    let tk = &t[(n + 2) as usize];
                    if tk.is_zero() {
                        continue;
                    }
                    for i in 0..DIM {
                        if !c[(f, i)].is_zero() {
                            r[k * DIM + i] = tk * &c[(f, i)];
                        }
                    }
                }
                rows.push(r);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..ncoef * DIM)
            .map(|i| {
                let mut v = vec![Rational::zero(); ncoef * DIM];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows, ncoef * DIM).kernel_basis()
    };
    kernel
        .into_iter()
        .map(|v| {
            let num = v.chunks(DIM).map(G2Element::from_coords).collect();
            GlobalElement::new(num, shape.denominator.clone())
        })
        .collect()
}

/// Checks `(L) + D_m ≥ 0` and admissibility at every γ, returning the first
/// violated condition.
pub fn check_membership(cfg: &Configuration, l: &GlobalElement, m: i32) -> Result<(), String> {
    let s = cfg.surface();
    if l.is_zero() {
        return Ok(());
    }
    let ord = |p: &Point| l.order_at(p).expect("nonzero");
    for p in &s.p_points {
        if ord(p) < m as i64 {
            return Err(format!("order {} < {m} at P = {p}", ord(p)));
        }
    }
    for (j, q) in s.q_points.iter().enumerate() {
        let n = cfg.q_pole_order(m, j);
        if ord(q) < -n {
            return Err(format!("order {} < {} at Q = {q}", ord(q), -n));
        }
    }
    let marked: Vec<Point> = s
        .p_points
        .iter()
        .chain(&s.q_points)
        .cloned()
        .chain(s.tyurin.iter().map(|d| Point::Finite(d.gamma().clone())))
        .collect();
    for x in l.denominator().keys() {
        let p = Point::Finite(x.clone());
        if !marked.contains(&p) && ord(&p) < 0 {
            return Err(format!("pole at unmarked point {x}"));
        }
    }
    if !marked.contains(&Point::Infinity) && ord(&Point::Infinity) < 0 {
        return Err("pole at unmarked point inf".into());
    }
    for d in &s.tyurin {
        let p = Point::Finite(d.gamma().clone());
        if ord(&p) < -2 {
            return Err(format!("pole of order {} at γ = {}", -ord(&p), d.gamma()));
        }
        let jet = expand_window(l, &p, -2, 1).map_err(|e| e.to_string())?;
        let rep = is_admissible(&jet, d);
        let failed = rep.failures().next().map(|f| format!("{:?}", f.condition));
        if let Some(f) = failed {
            return Err(format!("not admissible at γ = {}: {f}", d.gamma()));
        }
    }
    Ok(())
}

/// A configuration with cached homogeneous bases.
pub struct Model {
    cfg: Configuration,
    bases: Mutex<BTreeMap<i32, Arc<Vec<GlobalElement>>>>,
}

impl Model {
    pub fn new(cfg: Configuration) -> Self {
        Model {
            cfg,
            bases: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn config(&self) -> &Configuration {
        &self.cfg
    }

    /// A basis of `𝓛_m` as it actually is; its length may differ from `14N`.
    pub fn basis(&self, m: i32) -> Arc<Vec<GlobalElement>> {
        if let Some(b) = self.bases.lock().unwrap().get(&m) {
            return b.clone();
        }
        let b = Arc::new(homogeneous_space(&self.cfg, m));
        self.bases.lock().unwrap().insert(m, b.clone());
        b
    }

    /// Finite points, away from every marked point, used for evaluation.
    fn sample_points(&self, count: usize) -> Vec<Rational> {
        let marked = self.cfg.surface().marked_finite();
        let mut out = Vec::with_capacity(count);
        let mut k: i64 = 2;
        while out.len() < count {
            for z in [Rational::from_int(k), Rational::from_int(-k)] {
                if out.len() < count && !marked.contains(&z) {
                    out.push(z);
                }
            }
            k += 1;
        }
        out
    }
}

/// Bound on the functions a [`DegreeWindow`] must decompose: each has a
/// representation `F/D` with `D | denominator` and `deg F − deg D ≤ excess`.
#[derive(Clone, Debug)]
pub struct TargetBound {
    pub denominator: Denominator,
    pub excess: i64,
}

impl TargetBound {
    pub fn of(l: &GlobalElement) -> Self {
        TargetBound {
            denominator: l.denominator().clone(),
            excess: l.degree_at_infinity().unwrap_or(i64::MIN / 4),
        }
    }

    /// Covers every `[x, y]` with `x ∈ 𝓛_k`, `y ∈ 𝓛_l`.
    pub fn bracket(cfg: &Configuration, k: i32, l: i32) -> Self {
        let a = space_shape(cfg, k);
        let b = space_shape(cfg, l);
        let mut den = a.denominator.clone();
        for (x, &e) in &b.denominator {
            *den.entry(x.clone()).or_insert(0) += e;
        }
        let deg = |s: &SpaceShape| s.denominator.values().map(|&e| e as i64).sum::<i64>();
        TargetBound {
            denominator: den,
            excess: (a.max_degree - deg(&a)) + (b.max_degree - deg(&b)),
        }
    }
}

/// The concatenated bases of `𝓛_lo … 𝓛_hi`, evaluated at enough points to
/// decide membership of any function within a [`TargetBound`].
///
/// When the bases are dependent, coordinates are reported on the columns
/// picked greedily from the lowest degree up, so the highest degree used
/// is as small as possible.
pub struct DegreeWindow {
    lo: i32,
    hi: i32,
    sizes: Vec<usize>,
    pivots: Vec<usize>,
    samples: Vec<Rational>,
    solver: InjectiveSolver<Rational>,
}

impl DegreeWindow {
    pub fn new(model: &Model, lo: i32, hi: i32, target: &TargetBound) -> Result<Self, Error> {
        let mut elements = Vec::new();
        let mut sizes = Vec::new();
        let mut common = target.denominator.clone();
        let mut excess = target.excess;
        for m in lo..=hi {
            let shape = space_shape(&model.cfg, m);
            common = lcm(&common, &shape.denominator);
            let deg: i64 = shape.denominator.values().map(|&e| e as i64).sum();
            excess = excess.max(shape.max_degree - deg);
            let b = model.basis(m);
            sizes.push(b.len());
            elements.extend(b.iter().cloned());
        }
        let common_deg: i64 = common.values().map(|&e| e as i64).sum();
        let count = (common_deg + excess + 1).max(1) as usize;
        let samples = model.sample_points(count);
        let mut mat = Matrix::zeros(samples.len() * DIM, elements.len());
        for (c, e) in elements.iter().enumerate() {
            for (s, z) in samples.iter().enumerate() {
                let v = e.eval(z).expect("samples avoid poles").coords();
                for (i, x) in v.into_iter().enumerate() {
                    mat[(s * DIM + i, c)] = x;
                }
            }
        }
        let pivots = mat.rref().pivots;
        let sub = Matrix::from_fn(mat.rows(), pivots.len(), |i, j| mat[(i, pivots[j])].clone());
        let solver = InjectiveSolver::new(sub)?;
        Ok(DegreeWindow {
            lo,
            hi,
            sizes,
            pivots,
            samples,
            solver,
        })
    }

    pub fn samples(&self) -> &[Rational] {
        &self.samples
    }

    pub fn range(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn dims(&self) -> &[usize] {
        &self.sizes
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether the sum `𝓛_lo + … + 𝓛_hi` is direct.
    pub fn is_direct(&self) -> bool {
        self.rank() == self.sizes.iter().sum::<usize>()
    }

    /// Coordinates from the values at [`Self::samples`].
    pub fn decompose_values(&self, values: &[G2Element]) -> Result<BTreeMap<i32, Vec<Rational>>, Error> {
        let rhs: Vec<Rational> = values.iter().flat_map(G2Element::coords).collect();
        let x = self.solver.solve(&rhs).ok_or_else(|| {
            Error::NotInWindow(format!("degrees {}..={}", self.lo, self.hi))
        })?;
        let mut full = vec![Rational::zero(); self.sizes.iter().sum()];
        for (&c, v) in self.pivots.iter().zip(x) {
            full[c] = v;
        }
        let mut rest = &full[..];
        let mut out = BTreeMap::new();
        for (m, &n) in (self.lo..=self.hi).zip(&self.sizes) {
            let (head, tail) = rest.split_at(n);
            out.insert(m, head.to_vec());
            rest = tail;
        }
        Ok(out)
    }

    pub fn decompose(&self, l: &GlobalElement) -> Result<BTreeMap<i32, Vec<Rational>>, Error> {
        let values: Vec<G2Element> =
            self.samples.iter().map(|z| l.eval(z).expect("samples avoid poles")).collect();
        self.decompose_values(&values)
    }
}

/// Coordinates of `l` in the bases of `𝓛_lo … 𝓛_hi`.
pub fn decompose(
    model: &Model,
    l: &GlobalElement,
    window: (i32, i32),
) -> Result<BTreeMap<i32, Vec<Rational>>, Error> {
    let l = l.reduced();
    DegreeWindow::new(model, window.0, window.1, &TargetBound::of(&l))?.decompose(&l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub lo: i32,
    pub hi: i32,
    pub dims: Vec<usize>,
    pub rank: usize,
}

impl IndependenceReport {
    pub fn is_direct(&self) -> bool {
        self.rank == self.dims.iter().sum::<usize>()
    }
}

/// Rank of the concatenated bases of `𝓛_lo … 𝓛_hi`.
pub fn joint_independence(model: &Model, lo: i32, hi: i32) -> Result<IndependenceReport, Error> {
    let empty = TargetBound {
        denominator: Denominator::new(),
        excess: 0,
    };
    let w = DegreeWindow::new(model, lo, hi, &empty)?;
    Ok(IndependenceReport {
        lo,
        hi,
        dims: w.dims().to_vec(),
        rank: w.rank(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub k: i32,
    pub l: i32,
    pub pairs: usize,
    /// Largest `m − (k + l)` with a nonzero component, over all pairs.
    pub spread: Option<i32>,
    /// Pairs whose bracket is not in `𝓛_{k+l} + … + 𝓛_{k+l+s_max}`.
    pub outside_window: usize,
    /// Whether the probe window is a direct sum, so that coordinates are unique.
    pub direct: bool,
}

/// Decomposes `[x, y]` for every pair of basis elements of `𝓛_k × 𝓛_l`
/// over degrees `k+l … k+l+s_max`.
pub fn grading_check(model: &Model, k: i32, l: i32, s_max: i32) -> Result<SpreadReport, Error> {
    let lo = k + l;
    let window = DegreeWindow::new(model, lo, lo + s_max, &TargetBound::bracket(&model.cfg, k, l))?;
    let eval_all = |m: i32| -> Vec<Vec<G2Element>> {
        model
            .basis(m)
            .iter()
            .map(|e| window.samples().iter().map(|z| e.eval(z).expect("no pole")).collect())
            .collect()
    };
    let xs = eval_all(k);
    let ys = eval_all(l);
    let mut spread: Option<i32> = None;
    let mut outside = 0;
    let mut pairs = 0;
    for x in &xs {
        for y in &ys {
            pairs += 1;
            let values: Vec<G2Element> =
                x.iter().zip(y).map(|(a, b)| crate::g2::bracket(a, b)).collect();
            match window.decompose_values(&values) {
                Ok(c) => {
                    let top = c
                        .iter()
                        .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
                        .map(|(m, _)| m - lo)
                        .max();
                    if let Some(t) = top {
                        spread = Some(spread.map_or(t, |s| s.max(t)));
                    } else {
                        spread = Some(spread.unwrap_or(0));
                    }
                }
                Err(Error::NotInWindow(_)) => outside += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(SpreadReport {
        k,
        l,
        pairs,
        spread,
        outside_window: outside,
        direct: window.is_direct(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_gamma_single_p_has_one_extra_dimension() {
        // m = 0: L = c + c₋₁/u + c₋₂/u² exactly, so L₁ = 0 and only the
        // 27 relations of orders −2, −1, 0 act on a 42-dimensional space.
        let cfg = desk_configuration(1, 1, 1).unwrap();
        assert_eq!(space_shape(&cfg, 0).max_degree, 2);
        for m in -3..=3 {
            assert_eq!(homogeneous_space(&cfg, m).len(), 15);
        }
        assert!(matches!(homogeneous_basis(&cfg, 0), Err(Error::DegenerateConfiguration(_))));
    }

    #[test]
    fn basis_sizes_and_membership() {
        for (n, m, k, deg) in [(1, 1, 2, -3), (2, 1, 1, 1), (2, 1, 2, 0)] {
            let cfg = desk_configuration(n, m, k).unwrap();
            let b = homogeneous_basis(&cfg, deg).unwrap();
            assert_eq!(b.len(), 14 * n);
            for e in b.iter() {
                check_membership(&cfg, e, deg).unwrap();
            }
        }
    }

    #[test]
    fn p_order_bound() {
        let cfg = desk_configuration(1, 1, 1).unwrap();
        let p = &cfg.surface().p_points[0];
        for m in [-2, 2] {
            for e in homogeneous_space(&cfg, m) {
                assert!(expand_at(&e, p, 3).unwrap().leading_order().unwrap() >= m);
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let model = Model::new(desk_configuration(1, 1, 2).unwrap());
        let b2 = model.basis(2);
        let c = decompose(&model, &b2[3], (0, 3)).unwrap();
        for (m, v) in &c {
            for (i, x) in v.iter().enumerate() {
                let want = if *m == 2 && i == 3 { Rational::one() } else { Rational::zero() };
                assert_eq!(x, &want);
            }
        }
        let z = decompose(&model, &GlobalElement::zero(), (0, 1)).unwrap();
        assert!(z.values().flatten().all(Zero::is_zero));
        let b1 = model.basis(1);
        let s = b1[0].add(&b2[5]);
        let c = decompose(&model, &s, (1, 2)).unwrap();
        assert_eq!(c[&1][0], Rational::one());
        assert_eq!(c[&2][5], Rational::one());
        assert_eq!(c[&1].iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn adjacent_degrees_overlap_with_one_gamma() {
        // 𝓛₀ ∩ 𝓛₁ = {(c₁z + c₂z²)/(z − 1)²}: L₋₂ = c₁ + c₂, L₋₁ = c₁ + 2c₂,
        // L₀ = c₂. Residue-shaped L₀ satisfies the order-0 conditions and the
        // order −2 line lies in the residue shapes, so the overlap has
        // dimension 5 + 1 = 6.
        let model = Model::new(desk_configuration(1, 1, 1).unwrap());
        let r = joint_independence(&model, 0, 1).unwrap();
        assert_eq!(r.dims, vec![15, 15]);
        assert_eq!(r.rank, 24);
        let model = Model::new(desk_configuration(1, 1, 2).unwrap());
        assert!(joint_independence(&model, -3, 3).unwrap().is_direct());
    }

    #[test]
    fn two_point_bracket_stays_in_degree() {
        let model = Model::new(desk_configuration(1, 1, 1).unwrap());
        let r = grading_check(&model, 0, 0, 1).unwrap();
        assert_eq!(r.spread, Some(0));
        assert_eq!(r.outside_window, 0);
        let model = Model::new(desk_configuration(1, 1, 2).unwrap());
        let r = grading_check(&model, 2, -1, 1).unwrap();
        assert_eq!((r.spread, r.outside_window, r.direct), (Some(0), 0, true));
    }
}
