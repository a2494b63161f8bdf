//! Admissibility of a jet at a Tyurin point.
//!
//! For a datum `(γ, α₁, α₂)` a jet `L = Σ Lₙ zⁿ` is admissible when
//!
//! * `L₋₂ = (0, 0, μ·α₁α₂ᵗ)`,
//! * `L₋₁ = (β₀₁α₁, β₀₂α₂, α₁β₂ᵗ − β₁α₂ᵗ)` with `α₁ᵗβ₂ = α₂ᵗβ₁ = 0`,
//! * `L₀ = (a₁, a₂, A)` with `α₁ᵗa₂ = α₂ᵗa₁ = 0`, `Aα₁ = κ₁α₁`, `−Aᵗα₂ = κ₂α₂`,
//! * `L₁ = (·, ·, B)` with `α₂ᵗBα₁ = 0`,
//!
//! and orders `≥ 2` are free. Every condition is linear in the coefficient,
//! so each order carries a subspace of G₂ and [`order_constraints`] returns
//! the functionals cutting it out.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{solve_affine, Matrix, Rational};
use crate::g2::{bracket, cross, functional_row, G2Element, Mat3, Vec3, DIM};
use crate::jets::{jet_commutator, MatrixJet};
use crate::random::{self, Rng};

/// Relations per γ-point: `2·dim G₂`.
pub const RELATIONS_PER_POINT: usize = 2 * DIM;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DatumRepr", into = "DatumRepr")]
pub struct TyurinDatum {
    gamma: Rational,
    alpha1: Vec3,
    alpha2: Vec3,
}

#[derive(Serialize, Deserialize)]
struct DatumRepr {
    gamma: Rational,
    alpha1: Vec3,
    alpha2: Vec3,
}

impl TryFrom<DatumRepr> for TyurinDatum {
    type Error = Error;
    fn try_from(r: DatumRepr) -> Result<Self, Error> {
        TyurinDatum::new(r.gamma, r.alpha1, r.alpha2)
    }
}

impl From<TyurinDatum> for DatumRepr {
    fn from(d: TyurinDatum) -> Self {
        DatumRepr {
            gamma: d.gamma,
            alpha1: d.alpha1,
            alpha2: d.alpha2,
        }
    }
}

impl TyurinDatum {
    /// Nonzero and orthogonal; over ℚ this already forces independence.
    pub fn new(gamma: Rational, alpha1: Vec3, alpha2: Vec3) -> Result<Self, Error> {
        if alpha1.is_zero() || alpha2.is_zero() {
            return Err(Error::DegenerateDatum("α₁ and α₂ must be nonzero".into()));
        }
        let dot = alpha1.dot(&alpha2);
        if !dot.is_zero() {
            return Err(Error::DegenerateDatum(format!("α₁ᵗα₂ = {dot}, not 0")));
        }
        if cross(&alpha1, &alpha2).is_zero() {
            return Err(Error::DegenerateDatum("α₁, α₂ are linearly dependent".into()));
        }
        Ok(TyurinDatum {
            gamma,
            alpha1,
            alpha2,
        })
    }

    /// Random integer α₁ and an orthogonal α₂ built from a second random vector.
    pub fn random(rng: &mut Rng, gamma: Rational) -> Self {
        loop {
            let a1 = random::int_vec3(rng, 3);
            let v = random::int_vec3(rng, 3);
            let a2 = cross(&a1, &v);
            if let Ok(d) = TyurinDatum::new(gamma.clone(), a1, a2) {
                return d;
            }
        }
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn alpha1(&self) -> &Vec3 {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &Vec3 {
        &self.alpha2
    }

    pub fn with_gamma(&self, gamma: Rational) -> Self {
        TyurinDatum {
            gamma,
            ..self.clone()
        }
    }
}

impl fmt::Debug for TyurinDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tyurin(γ={}, α₁={:?}, α₂={:?})",
            self.gamma, self.alpha1, self.alpha2
        )
    }
}

/// Basis of the orthogonal complement of `v` (two vectors).
fn complement_basis(v: &Vec3) -> Vec<Vec3> {
    let m = Matrix::from_rows(vec![v.0.to_vec()], 3);
    m.kernel_basis()
        .into_iter()
        .map(|k| Vec3::new(k[0].clone(), k[1].clone(), k[2].clone()))
        .collect()
}

fn rows_matrix(rows: Vec<Vec<Rational>>) -> Matrix<Rational> {
    Matrix::from_rows(rows, DIM)
}

/// Functionals (rows over the 14 coordinates) whose common kernel is the
/// annihilator of a spanning set.
fn annihilator(span: &[G2Element]) -> Matrix<Rational> {
    let m = rows_matrix(span.iter().map(G2Element::coords).collect());
    rows_matrix(m.kernel_basis())
}

/// Spanning set of the allowed residues (5-dimensional).
fn residue_span(d: &TyurinDatum) -> Vec<G2Element> {
    let (a1, a2) = (&d.alpha1, &d.alpha2);
    let mut span = vec![G2Element::from_a1(a1.clone()), G2Element::from_a2(a2.clone())];
    for b2 in complement_basis(a1) {
        span.push(G2Element::from_parts(Vec3::zero(), Vec3::zero(), a1.outer(&b2)));
    }
    for b1 in complement_basis(a2) {
        span.push(G2Element::from_parts(Vec3::zero(), Vec3::zero(), -&b1.outer(a2)));
    }
    span
}

fn order_minus2_span(d: &TyurinDatum) -> Vec<G2Element> {
    vec![G2Element::from_parts(
        Vec3::zero(),
        Vec3::zero(),
        d.alpha1.outer(&d.alpha2),
    )]
}

fn eigen_rows(d: &TyurinDatum) -> Vec<Vec<Rational>> {
    let (a1, a2) = (d.alpha1.clone(), d.alpha2.clone());
    let mut rows = vec![
        functional_row(|e| a1.dot(&e.a2)),
        functional_row(|e| a2.dot(&e.a1)),
    ];
    for u in complement_basis(&a1) {
        rows.push(functional_row(|e| e.a().bilinear(&u, &a1)));
    }
    for s in complement_basis(&a2) {
        rows.push(functional_row(|e| e.a().bilinear(&a2, &s)));
    }
    rows
}

fn first_order_rows(d: &TyurinDatum) -> Vec<Vec<Rational>> {
    let (a1, a2) = (d.alpha1.clone(), d.alpha2.clone());
    vec![functional_row(|e| e.a().bilinear(&a2, &a1))]
}

/// Functionals that must vanish on the order-`n` coefficient of an
/// admissible jet. Orders below −2 must vanish outright; orders above 1 are
/// unconstrained (a 0×14 matrix).
pub fn order_constraints(d: &TyurinDatum, n: i32) -> Matrix<Rational> {
    match n {
        n if n < -2 => Matrix::identity(DIM),
        -2 => annihilator(&order_minus2_span(d)),
        -1 => annihilator(&residue_span(d)),
        0 => rows_matrix(eigen_rows(d)),
        1 => rows_matrix(first_order_rows(d)),
        _ => Matrix::zeros(0, DIM),
    }
}

/// Basis of the admissible subspace of G₂ at order `n`.
pub fn allowed_subspace(d: &TyurinDatum, n: i32) -> Vec<G2Element> {
    let c = order_constraints(d, n);
    if c.rows() == 0 {
        return crate::g2::g2_basis();
    }
    c.kernel_basis().iter().map(|k| G2Element::from_coords(k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AdmissibleParams {
    pub mu: Rational,
    pub beta01: Rational,
    pub beta02: Rational,
    pub beta1: Vec3,
    pub beta2: Vec3,
    pub kappa1: Rational,
    pub kappa2: Rational,
    pub lambda1: Rational,
    pub lambda2: Rational,
}

impl AdmissibleParams {
    /// `κ̃ᵢ = κᵢ + λᵢ`, the eigenvalues of `L₀` on `(0, α₁, α₂)`.
    pub fn kappa_tilde(&self) -> (Rational, Rational) {
        (&self.kappa1 + &self.lambda1, &self.kappa2 + &self.lambda2)
    }
}

pub fn check_order_minus2(c: &G2Element, d: &TyurinDatum) -> Result<Rational, Error> {
    if !c.a1.is_zero() {
        return Err(Error::not_admissible("L-2", format!("a1 = {:?} is nonzero", c.a1)));
    }
    if !c.a2.is_zero() {
        return Err(Error::not_admissible("L-2", format!("a2 = {:?} is nonzero", c.a2)));
    }
    let shape = d.alpha1.outer(&d.alpha2);
    let (i, j) = first_nonzero(&shape).expect("α₁α₂ᵗ is nonzero");
    let mu = &c.a()[(i, j)] / &shape[(i, j)];
    if &shape.scale(&mu) != c.a() {
        return Err(Error::not_admissible("L-2", "A is not a multiple of α1·α2ᵗ"));
    }
    Ok(mu)
}

fn first_nonzero(m: &Mat3) -> Option<(usize, usize)> {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .find(|&(i, j)| !m[(i, j)].is_zero())
}

/// Residue parameters `(β₀₁, β₀₂, β₁, β₂)`.
pub type ResidueParams = (Rational, Rational, Vec3, Vec3);

/// Solves for the residue parameters. The decomposition of `A` is unique up
/// to `β₁ ↦ β₁ + sα₁, β₂ ↦ β₂ + sα₂`; the representative returned has
/// `α₂ᵗβ₂ = 0`.
pub fn check_residue(c: &G2Element, d: &TyurinDatum) -> Result<ResidueParams, Error> {
    residue_with_pairing(c, d, &Rational::zero())
}

/// Residue parameters with `α₁ᵗβ₂ = α₂ᵗβ₁ = pairing`, gauge `α₂ᵗβ₂ = 0`.
/// `pairing = 1` is the normalization of the residue of the form `ω`.
pub fn residue_with_pairing(
    c: &G2Element,
    d: &TyurinDatum,
    pairing: &Rational,
) -> Result<ResidueParams, Error> {
    let (al1, al2) = (&d.alpha1, &d.alpha2);
    let beta01 = c
        .a1
        .ratio_to(al1)
        .ok_or_else(|| Error::not_admissible("L-1", "a1 is not a multiple of α1"))?;
    let beta02 = c
        .a2
        .ratio_to(al2)
        .ok_or_else(|| Error::not_admissible("L-1", "a2 is not a multiple of α2"))?;

    // Unknowns: β₁ (0..3), β₂ (3..6). Equations: A = α₁β₂ᵗ − β₁α₂ᵗ entrywise.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let mut r = vec![Rational::zero(); 6];
            r[i] = -&al2[j];
            r[3 + j] = al1[i].clone();
            rows.push(r);
            rhs.push(c.a()[(i, j)].clone());
        }
    }
    let shape = Matrix::from_rows(rows.clone(), 6);
    solve_affine(&shape, &rhs)
        .map_err(|_| Error::not_admissible("L-1", "A is not of the form α1·β2ᵗ − β1·α2ᵗ"))?;

    let gauge_and_orth = [
        (vec![0, 1, 2], al2), // α₂ᵗβ₁
        (vec![3, 4, 5], al1), // α₁ᵗβ₂
    ];
    for (idx, v) in gauge_and_orth {
        let mut r = vec![Rational::zero(); 6];
        for (k, &p) in idx.iter().enumerate() {
            r[p] = v[k].clone();
        }
        rows.push(r);
        rhs.push(pairing.clone());
    }
    let with_orth = Matrix::from_rows(rows.clone(), 6);
    solve_affine(&with_orth, &rhs).map_err(|_| {
        Error::not_admissible(
            "orthogonality",
            format!("no β1, β2 with α2ᵗβ1 = α1ᵗβ2 = {pairing} reproduce A"),
        )
    })?;

    let mut r = vec![Rational::zero(); 6];
    for k in 0..3 {
        r[3 + k] = al2[k].clone();
    }
    rows.push(r);
    rhs.push(Rational::zero());
    let sol = solve_affine(&Matrix::from_rows(rows, 6), &rhs)?;
    if !sol.kernel.is_empty() {
        return Err(Error::Internal("residue gauge is not fixed".into()));
    }
    let x = sol.particular;
    let beta1 = Vec3::new(x[0].clone(), x[1].clone(), x[2].clone());
    let beta2 = Vec3::new(x[3].clone(), x[4].clone(), x[5].clone());
    Ok((beta01, beta02, beta1, beta2))
}

/// `(κ₁, κ₂, λ₁, λ₂)` of an order-zero coefficient.
pub fn check_order_zero(
    c: &G2Element,
    d: &TyurinDatum,
) -> Result<(Rational, Rational, Rational, Rational), Error> {
    let (al1, al2) = (&d.alpha1, &d.alpha2);
    let v = al1.dot(&c.a2);
    if !v.is_zero() {
        return Err(Error::not_admissible("L0", format!("α1ᵗa2 = {v}")));
    }
    let v = al2.dot(&c.a1);
    if !v.is_zero() {
        return Err(Error::not_admissible("L0", format!("α2ᵗa1 = {v}")));
    }
    let kappa1 = c
        .a()
        .mul_vec(al1)
        .ratio_to(al1)
        .ok_or_else(|| Error::not_admissible("L0", "α1 is not an eigenvector of A"))?;
    let kappa2 = (-&c.a().transpose().mul_vec(al2))
        .ratio_to(al2)
        .ok_or_else(|| Error::not_admissible("L0", "α2 is not an eigenvector of −Aᵗ"))?;
    let lambda1 = cross(&c.a2, al2)
        .ratio_to(al1)
        .ok_or_else(|| Error::Internal("a2×α2 not parallel to α1".into()))?;
    let lambda2 = cross(&c.a1, al1)
        .ratio_to(al2)
        .ok_or_else(|| Error::Internal("a1×α1 not parallel to α2".into()))?;
    Ok((kappa1, kappa2, lambda1, lambda2))
}

pub fn check_order_one(c: &G2Element, d: &TyurinDatum) -> Result<(), Error> {
    let v = c.a().bilinear(&d.alpha2, &d.alpha1);
    if v.is_zero() {
        Ok(())
    } else {
        Err(Error::not_admissible("L1", format!("α2ᵗBα1 = {v}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    OrderMinus2Shape,
    ResidueShape,
    Orthogonality,
    Eigenvalue,
    FirstOrder,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::OrderMinus2Shape,
        Condition::ResidueShape,
        Condition::Orthogonality,
        Condition::Eigenvalue,
        Condition::FirstOrder,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: Condition,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub conditions: Vec<ConditionResult>,
    pub params: Option<AdmissibleParams>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionResult> {
        self.conditions.iter().filter(|c| !c.passed)
    }
}

pub fn is_admissible(j: &MatrixJet, d: &TyurinDatum) -> AdmissibilityReport {
    let mut results = Vec::new();
    let mut record = |condition, r: Result<(), Error>| {
        results.push(ConditionResult {
            condition,
            passed: r.is_ok(),
            detail: r.err().map(|e| e.to_string()),
        });
    };
    let coeff = |n| -> Result<G2Element, Error> {
        if n < j.lo() {
            Ok(G2Element::zero())
        } else {
            j.coeff(n).cloned()
        }
    };
    let mut params = AdmissibleParams::default();

    let r = coeff(-2).and_then(|c| check_order_minus2(&c, d));
    let ok_m2 = match r {
        Ok(mu) => {
            params.mu = mu;
            record(Condition::OrderMinus2Shape, Ok(()));
            true
        }
        Err(e) => {
            record(Condition::OrderMinus2Shape, Err(e));
            false
        }
    };

    let r = coeff(-1).and_then(|c| check_residue(&c, d));
    let ok_res = match r {
        Ok((b01, b02, b1, b2)) => {
            params.beta01 = b01;
            params.beta02 = b02;
            params.beta1 = b1;
            params.beta2 = b2;
            record(Condition::ResidueShape, Ok(()));
            record(Condition::Orthogonality, Ok(()));
            true
        }
        Err(Error::NotAdmissible { condition, detail }) if condition == "orthogonality" => {
            record(Condition::ResidueShape, Ok(()));
            record(
                Condition::Orthogonality,
                Err(Error::NotAdmissible { condition, detail }),
            );
            false
        }
        Err(e) => {
            record(Condition::ResidueShape, Err(e.clone()));
            record(Condition::Orthogonality, Err(e));
            false
        }
    };

    let r = coeff(0).and_then(|c| check_order_zero(&c, d));
    let ok_eig = match r {
        Ok((k1, k2, l1, l2)) => {
            params.kappa1 = k1;
            params.kappa2 = k2;
            params.lambda1 = l1;
            params.lambda2 = l2;
            record(Condition::Eigenvalue, Ok(()));
            true
        }
        Err(e) => {
            record(Condition::Eigenvalue, Err(e));
            false
        }
    };

    let r = coeff(1).and_then(|c| check_order_one(&c, d));
    let ok_one = r.is_ok();
    record(Condition::FirstOrder, r);

    AdmissibilityReport {
        conditions: results,
        params: (ok_m2 && ok_res && ok_eig && ok_one).then_some(params),
    }
}

/// Basis of admissible jets on `[−2, T]`: monomials `v·zⁿ` with `v` running
/// over a basis of each order's allowed subspace. The constraints are
/// block-diagonal in the order, so this is a basis of the full kernel.
pub fn admissible_jet_basis(d: &TyurinDatum, t: i32) -> Result<Vec<MatrixJet>, Error> {
    if t < 1 {
        return Err(Error::Internal(format!("truncation {t} < 1")));
    }
    let mut rank = 0;
    let mut basis = Vec::new();
    for n in -2..=t {
        let c = order_constraints(d, n);
        rank += c.rank();
        for v in allowed_subspace(d, n) {
            basis.push(MatrixJet::monomial(n, v, -2, t));
        }
    }
    if rank != RELATIONS_PER_POINT {
        return Err(Error::DegenerateDatum(format!(
            "constraint rank {rank}, expected {RELATIONS_PER_POINT}"
        )));
    }
    debug_assert_eq!(basis.len(), DIM * (t as usize + 3) - RELATIONS_PER_POINT);
    Ok(basis)
}

/// Number of independent relations imposed at each order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCount {
    pub residue: usize,
    pub order_minus2: usize,
    pub eigen: usize,
    pub first_order: usize,
    pub total: usize,
}

impl RelationCount {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.residue, self.order_minus2, self.eigen, self.first_order)
    }
}

/// Codimension of each allowed subspace, from the rank of its spanning set
/// (orders −2, −1) or of its defining functionals (orders 0, 1).
pub fn effective_relation_count(d: &TyurinDatum) -> Result<RelationCount, Error> {
    let span_rank =
        |s: Vec<G2Element>| rows_matrix(s.iter().map(G2Element::coords).collect()).rank();
    let residue = DIM - span_rank(residue_span(d));
    let order_minus2 = DIM - span_rank(order_minus2_span(d));
    let eigen = rows_matrix(eigen_rows(d)).rank();
    let first_order = rows_matrix(first_order_rows(d)).rank();
    let total = residue + order_minus2 + eigen + first_order;
    if total != RELATIONS_PER_POINT {
        return Err(Error::DegenerateDatum(format!(
            "{total} relations, expected {RELATIONS_PER_POINT}"
        )));
    }
    Ok(RelationCount {
        residue,
        order_minus2,
        eigen,
        first_order,
        total,
    })
}

/// Random rational combination of the admissible basis. Small coefficients
/// and a sparse support keep the numbers readable.
pub fn random_admissible(d: &TyurinDatum, t: i32, seed: u64) -> Result<MatrixJet, Error> {
    let basis = admissible_jet_basis(d, t)?;
    let mut rng = random::rng(seed);
    Ok(random_combination(&basis, &mut rng, t))
}

pub fn random_combination(basis: &[MatrixJet], rng: &mut Rng, t: i32) -> MatrixJet {
    let mut acc = MatrixJet::zero(-2, t);
    for b in basis {
        let c = random::rational(rng);
        if !c.is_zero() {
            acc = acc.add(&b.scale(&c)).expect("same window");
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    /// Orders below −2 of the commutator that are not zero.
    pub nonzero_low_orders: Vec<i32>,
    pub admissibility: AdmissibilityReport,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.nonzero_low_orders.is_empty() && self.admissibility.passed()
    }
}

/// Commutes two jets on `[−2, T]`, `T ≥ 3`, and checks the result on
/// `[−4, 1]`.
pub fn closure_check(x: &MatrixJet, y: &MatrixJet, d: &TyurinDatum) -> Result<ClosureReport, Error> {
    let c = jet_commutator(x, y)?;
    let nonzero_low_orders = (-4..-2)
        .filter(|&n| c.coeff(n).map(|v| !v.is_zero()).unwrap_or(false))
        .collect();
    let window = c.restrict(-2, 1)?;
    Ok(ClosureReport {
        nonzero_low_orders,
        admissibility: is_admissible(&window, d),
    })
}

/// `μ` of `[L, L′]` from the parameters of `L` and `L′`.
pub fn commutator_mu(px: &AdmissibleParams, py: &AdmissibleParams) -> Rational {
    let three = Rational::from_int(3);
    three * (&px.beta02 * &py.beta01 - &px.beta01 * &py.beta02) + py.beta2.dot(&px.beta1)
        - px.beta2.dot(&py.beta1)
}

/// `μ` of the full order-(−2) coefficient of `[L, L′]`. Besides
/// `[L₋₁, L′₋₁]` (whose `μ` is [`commutator_mu`]) it receives
/// `[L₋₂, L′₀] + [L₀, L′₋₂] = (μ′(κ₁+κ₂) − μ(κ′₁+κ′₂))·α₁α₂ᵗ`.
pub fn full_commutator_mu(px: &AdmissibleParams, py: &AdmissibleParams) -> Rational {
    commutator_mu(px, py) + &py.mu * (&px.kappa1 + &px.kappa2)
        - &px.mu * (&py.kappa1 + &py.kappa2)
}

/// The `[L₋₁, L′₋₁]` part of the order-(−2) coefficient of `[L, L′]`.
pub fn residue_bracket(x: &MatrixJet, y: &MatrixJet) -> Result<G2Element, Error> {
    Ok(bracket(x.coeff(-1)?, y.coeff(-1)?))
}

/// Builds a G₂ element from residue parameters.
pub fn residue_element(d: &TyurinDatum, p: &ResidueParams) -> G2Element {
    let (b01, b02, b1, b2) = p;
    G2Element::from_parts(
        d.alpha1.scale(b01),
        d.alpha2.scale(b02),
        &d.alpha1.outer(b2) - &b1.outer(&d.alpha2),
    )
}

pub fn order_minus2_element(d: &TyurinDatum, mu: &Rational) -> G2Element {
    G2Element::from_parts(Vec3::zero(), Vec3::zero(), d.alpha1.outer(&d.alpha2).scale(mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Vec3 {
        Vec3::unit(i)
    }

    fn std_datum() -> TyurinDatum {
        TyurinDatum::new(Rational::from_int(1), e(0), e(1)).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn datum_validation() {
        assert!(TyurinDatum::new(r(1), e(0), e(0)).is_err());
        assert!(TyurinDatum::new(r(1), Vec3::zero(), e(1)).is_err());
        assert!(TyurinDatum::new(r(1), e(0), Vec3::from_ints([1, 1, 0])).is_err());
        let js = serde_json::json!({"gamma":"1","alpha1":["1","0","0"],"alpha2":["0","1","0"]});
        let d: TyurinDatum = serde_json::from_value(js.clone()).unwrap();
        assert_eq!(serde_json::to_value(&d).unwrap(), js);
    }

    #[test]
    fn order_minus2_examples() {
        let d = std_datum();
        assert_eq!(check_order_minus2(&order_minus2_element(&d, &r(5)), &d).unwrap(), r(5));
        assert_eq!(check_order_minus2(&G2Element::zero(), &d).unwrap(), r(0));
        let bad = G2Element::from_matrix(e(1).outer(&e(0))).unwrap();
        assert!(matches!(check_order_minus2(&bad, &d), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn residue_examples() {
        let d = std_datum();
        let p = check_residue(&G2Element::from_a1(e(0)), &d).unwrap();
        assert_eq!(p, (r(1), r(0), Vec3::zero(), Vec3::zero()));
        let p = check_residue(&G2Element::zero(), &d).unwrap();
        assert_eq!(p, (r(0), r(0), Vec3::zero(), Vec3::zero()));
        let c = G2Element::from_matrix(e(0).outer(&e(2))).unwrap();
        assert_eq!(check_residue(&c, &d).unwrap(), (r(0), r(0), Vec3::zero(), e(2)));
        // β₂ = e₁, β₁ = e₂: right shape, but α₁ᵗβ₂ = 1 in every gauge.
        let c = G2Element::from_matrix(&e(0).outer(&e(0)) - &e(1).outer(&e(1))).unwrap();
        let err = check_residue(&c, &d).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible { ref condition, .. } if condition == "orthogonality"));
    }

    #[test]
    fn order_zero_examples() {
        let d = TyurinDatum::new(r(1), e(0), e(2)).unwrap();
        let c = G2Element::from_matrix(Mat3::from_ints([[1, 0, 0], [0, 0, 0], [0, 0, -1]])).unwrap();
        assert_eq!(check_order_zero(&c, &d).unwrap(), (r(1), r(1), r(0), r(0)));
        assert_eq!(check_order_zero(&G2Element::zero(), &d).unwrap(), (r(0), r(0), r(0), r(0)));
        let bad = G2Element::from_matrix(Mat3::unit(1, 0)).unwrap();
        assert!(check_order_zero(&bad, &d).is_err());
    }

    #[test]
    fn order_one_examples() {
        let d = std_datum();
        let ok = G2Element::from_matrix(e(0).outer(&e(1))).unwrap();
        assert!(check_order_one(&ok, &d).is_ok());
        assert!(check_order_one(&G2Element::zero(), &d).is_ok());
        let bad = G2Element::from_matrix(e(1).outer(&e(0))).unwrap();
        assert!(check_order_one(&bad, &d).is_err());
    }

    #[test]
    fn report_lines() {
        let d = std_datum();
        let z = MatrixJet::zero(-2, 3);
        let rep = is_admissible(&z, &d);
        assert!(rep.passed());
        assert_eq!(rep.params, Some(AdmissibleParams::default()));
        let mut j = z.clone();
        *j.coeff_mut(1).unwrap() = G2Element::from_matrix(e(1).outer(&e(0))).unwrap();
        let rep = is_admissible(&j, &d);
        assert!(!rep.passed());
        let failed: Vec<_> = rep.failures().map(|c| c.condition).collect();
        assert_eq!(failed, vec![Condition::FirstOrder]);
    }

    #[test]
    fn basis_dimensions() {
        let d = std_datum();
        for t in 1..=3 {
            let b = admissible_jet_basis(&d, t).unwrap();
            assert_eq!(b.len(), 14 * (t as usize + 3) - 28);
            assert!(b.iter().all(|j| is_admissible(j, &d).passed()));
        }
    }

    #[test]
    fn relation_count_total() {
        let c = effective_relation_count(&std_datum()).unwrap();
        assert_eq!(c.total, 28);
    }

    #[test]
    fn closure_and_mu() {
        let mut rng = random::rng(11);
        let d = TyurinDatum::random(&mut rng, r(1));
        let basis = admissible_jet_basis(&d, 3).unwrap();
        for _ in 0..5 {
            let x = random_combination(&basis, &mut rng, 3);
            let y = random_combination(&basis, &mut rng, 3);
            let rep = closure_check(&x, &y, &d).unwrap();
            assert!(rep.passed(), "{rep:?}");
            let px = is_admissible(&x, &d).params.unwrap();
            let py = is_admissible(&y, &d).params.unwrap();
            let mu_c = rep.admissibility.params.unwrap().mu;
            assert_eq!(mu_c, full_commutator_mu(&px, &py));
            let rb = residue_bracket(&x, &y).unwrap();
            assert_eq!(check_order_minus2(&rb, &d).unwrap(), commutator_mu(&px, &py));
            assert_eq!(commutator_mu(&px, &px), r(0));
        }
    }

    #[test]
    fn random_admissible_is_deterministic() {
        let d = std_datum();
        let a = random_admissible(&d, 3, 1).unwrap();
        assert_eq!(a, random_admissible(&d, 3, 1).unwrap());
        assert_ne!(a, random_admissible(&d, 3, 2).unwrap());
        assert!(is_admissible(&a, &d).passed());
    }
}
