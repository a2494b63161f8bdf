//! The exceptional Lie algebra G₂ in coordinates `(a₁, a₂, A)`.
//!
//! An element is a pair of 3-vectors and a traceless 3×3 matrix. Its image in
//! the 7-dimensional representation is the block matrix
//!
//! ```text
//! ⎡ 0      −√2·a₂ᵗ  −√2·a₁ᵗ ⎤
//! ⎢ √2·a₁   A        [a₂]   ⎥
//! ⎣ √2·a₂   [a₁]     −Aᵗ    ⎦
//! ```
//!
//! where `[x]` is the skew matrix `[[0,x₃,−x₂],[−x₃,0,x₁],[x₂,−x₁,0]]`.
//! All constraint work is done in coordinates over ℚ; the 7×7 form (which
//! needs √2) is only used to cross-check the closed-form bracket.
//!
//! The vector product `x × y` used throughout is the one for which
//! `[x]·y = x × y` holds with the skew matrix above. With that `[x]` this is
//! the left-handed product, `cross(e₁, e₂) = −e₃`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Matrix, QSqrt2, Rational};

/// Dimension of G₂.
pub const DIM: usize = 14;

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vec3(pub [Rational; 3]);

impl Vec3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Vec3([x, y, z])
    }

    pub fn from_ints(v: [i64; 3]) -> Self {
        Vec3(v.map(Rational::from_int))
    }

    pub fn zero() -> Self {
        Vec3::default()
    }

    /// Standard basis vector `e_{i+1}`.
    pub fn unit(i: usize) -> Self {
        let mut v = Vec3::zero();
        v.0[i] = Rational::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vec3) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Rational) -> Vec3 {
        Vec3(std::array::from_fn(|i| &self.0[i] * c))
    }

    /// Outer product `self · otherᵗ`.
    pub fn outer(&self, other: &Vec3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i] * &other.0[j])
        }))
    }

    /// `c` with `self = c·other`, if `self` is a multiple of the nonzero `other`.
    pub fn ratio_to(&self, other: &Vec3) -> Option<Rational> {
        let k = other.0.iter().position(|x| !x.is_zero())?;
        let c = &self.0[k] / &other.0[k];
        (other.scale(&c) == *self).then_some(c)
    }
}

impl Index<usize> for Vec3 {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// A 3×3 rational matrix.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat3(pub [[Rational; 3]; 3]);

impl Mat3 {
    pub fn zero() -> Self {
        Mat3::default()
    }

    pub fn identity() -> Self {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
        }))
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        Mat3(m.map(|r| r.map(Rational::from_int)))
    }

    /// Matrix unit `E_{ij}` (0-based).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Mat3::zero();
        m.0[i][j] = Rational::one();
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].clone())
        }))
    }

    pub fn scale(&self, c: &Rational) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] * c)
        }))
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| {
            (0..3).map(|k| &self.0[i][k] * &v.0[k]).sum()
        }))
    }

    /// `uᵗ·self·v`.
    pub fn bilinear(&self, u: &Vec3, v: &Vec3) -> Rational {
        u.dot(&self.mul_vec(v))
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.0[i][j]
    }
}

impl Add for &Mat3 {
    type Output = Mat3;
    fn add(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] + &rhs.0[i][j])
        }))
    }
}

impl Sub for &Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] - &rhs.0[i][j])
        }))
    }
}

impl Neg for &Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| -&self.0[i][j])
        }))
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum())
        }))
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} {} {}", r[0], r[1], r[2])?;
        }
        write!(f, "]")
    }
}

/// `[x]`, the skew matrix of the 7×7 model.
pub fn skew(x: &Vec3) -> Mat3 {
    let z = Rational::zero;
    Mat3([
        [z(), x[2].clone(), -&x[1]],
        [-&x[2], z(), x[0].clone()],
        [x[1].clone(), -&x[0], z()],
    ])
}

/// The vector product `x × y = [x]·y`.
pub fn cross(x: &Vec3, y: &Vec3) -> Vec3 {
    Vec3::new(
        &x[2] * &y[1] - &x[1] * &y[2],
        &x[0] * &y[2] - &x[2] * &y[0],
        &x[1] * &y[0] - &x[0] * &y[1],
    )
}

/// An element of G₂ in coordinates. The `a` slot is always traceless.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "G2Repr", into = "G2Repr")]
pub struct G2Element {
    pub a1: Vec3,
    pub a2: Vec3,
    a: Mat3,
}

#[derive(Serialize, Deserialize)]
struct G2Repr {
    a1: Vec3,
    a2: Vec3,
    #[serde(rename = "A")]
    a: Mat3,
}

impl TryFrom<G2Repr> for G2Element {
    type Error = Error;
    fn try_from(r: G2Repr) -> Result<Self, Error> {
        G2Element::new(r.a1, r.a2, r.a)
    }
}

impl From<G2Element> for G2Repr {
    fn from(e: G2Element) -> Self {
        G2Repr {
            a1: e.a1,
            a2: e.a2,
            a: e.a,
        }
    }
}

impl G2Element {
    pub fn new(a1: Vec3, a2: Vec3, a: Mat3) -> Result<Self, Error> {
        let tr = a.trace();
        if !tr.is_zero() {
            return Err(Error::NotInG2(format!("trace of A is {tr}, not 0")));
        }
        Ok(G2Element { a1, a2, a })
    }

    /// Caller guarantees `trace(a) = 0`.
    pub(crate) fn from_parts(a1: Vec3, a2: Vec3, a: Mat3) -> Self {
        debug_assert!(a.trace().is_zero());
        G2Element { a1, a2, a }
    }

    pub fn zero() -> Self {
        G2Element::default()
    }

    pub fn from_a1(a1: Vec3) -> Self {
        G2Element::from_parts(a1, Vec3::zero(), Mat3::zero())
    }

    pub fn from_a2(a2: Vec3) -> Self {
        G2Element::from_parts(Vec3::zero(), a2, Mat3::zero())
    }

    pub fn from_matrix(a: Mat3) -> Result<Self, Error> {
        G2Element::new(Vec3::zero(), Vec3::zero(), a)
    }

    /// The traceless 3×3 block (the `A` of the 7×7 model).
    pub fn a(&self) -> &Mat3 {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> G2Element {
        G2Element::from_parts(self.a1.scale(c), self.a2.scale(c), self.a.scale(c))
    }

    /// Coordinates in the basis of [`g2_basis`].
    pub fn coords(&self) -> Vec<Rational> {
        let a = &self.a;
        let mut v = Vec::with_capacity(DIM);
        v.extend(self.a1.0.iter().cloned());
        v.extend(self.a2.0.iter().cloned());
        v.push(a[(0, 0)].clone());
        v.push(-&a[(2, 2)]);
        for &(i, j) in &OFF_DIAGONAL {
            v.push(a[(i, j)].clone());
        }
        v
    }

    pub fn from_coords(c: &[Rational]) -> G2Element {
        assert_eq!(c.len(), DIM, "G2 coordinates have length 14");
        let mut a = Mat3::zero();
        // c₆(E₁₁ − E₂₂) + c₇(E₂₂ − E₃₃)
        a[(0, 0)] = c[6].clone();
        a[(1, 1)] = &c[7] - &c[6];
        a[(2, 2)] = -&c[7];
        for (k, &(i, j)) in OFF_DIAGONAL.iter().enumerate() {
            a[(i, j)] = c[8 + k].clone();
        }
        G2Element::from_parts(
            Vec3::new(c[0].clone(), c[1].clone(), c[2].clone()),
            Vec3::new(c[3].clone(), c[4].clone(), c[5].clone()),
            a,
        )
    }
}

const OFF_DIAGONAL: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

impl Add for &G2Element {
    type Output = G2Element;
    fn add(self, rhs: &G2Element) -> G2Element {
        G2Element::from_parts(&self.a1 + &rhs.a1, &self.a2 + &rhs.a2, &self.a + &rhs.a)
    }
}

impl Sub for &G2Element {
    type Output = G2Element;
    fn sub(self, rhs: &G2Element) -> G2Element {
        G2Element::from_parts(&self.a1 - &rhs.a1, &self.a2 - &rhs.a2, &self.a - &rhs.a)
    }
}

impl Neg for &G2Element {
    type Output = G2Element;
    fn neg(self) -> G2Element {
        G2Element::from_parts(-&self.a1, -&self.a2, -&self.a)
    }
}

impl fmt::Debug for G2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G2(a1={:?}, a2={:?}, A={:?})", self.a1, self.a2, self.a)
    }
}

/// Closed-form Lie bracket in coordinates. Writing `x = (a₁, a₂, A)` and
/// `y = (b₁, b₂, B)`:
///
/// ```text
/// a₁ᶜ = A·b₁ − B·a₁ + 2·a₂×b₂
/// a₂ᶜ = −Aᵗ·b₂ + Bᵗ·a₂ + 2·a₁×b₁
/// Aᶜ  = AB − BA − 3a₁b₂ᵗ + 3b₁a₂ᵗ − (b₁ᵗa₂)E + (b₂ᵗa₁)E
/// ```
pub fn bracket(x: &G2Element, y: &G2Element) -> G2Element {
    let two = Rational::from_int(2);
    let three = Rational::from_int(3);
    let (a1, a2, a) = (&x.a1, &x.a2, &x.a);
    let (b1, b2, b) = (&y.a1, &y.a2, &y.a);

    let c1 = &(&a.mul_vec(b1) - &b.mul_vec(a1)) + &cross(a2, b2).scale(&two);
    let c2 = &(&b.transpose().mul_vec(a2) - &a.transpose().mul_vec(b2)) + &cross(a1, b1).scale(&two);

    let comm = &(a * b) - &(b * a);
    let outer = &b1.outer(a2) - &a1.outer(b2);
    let diag = b2.dot(a1) - b1.dot(a2);
    let mut c = &comm + &outer.scale(&three);
    for i in 0..3 {
        c[(i, i)] += &diag;
    }
    G2Element::from_parts(c1, c2, c)
}

/// `tr(embed(x)·embed(y)) = 2·tr(AB) − 6(a₁ᵗb₂ + a₂ᵗb₁)`.
pub fn trace_form(x: &G2Element, y: &G2Element) -> Rational {
    let tr_ab = (&x.a * &y.a).trace();
    Rational::from_int(2) * tr_ab - Rational::from_int(6) * (x.a1.dot(&y.a2) + x.a2.dot(&y.a1))
}

/// The 7×7 matrix of `el`.
pub fn embed(el: &G2Element) -> Matrix<QSqrt2> {
    let mut m = Matrix::<QSqrt2>::zeros(7, 7);
    let rat = |r: &Rational| QSqrt2::rational(r.clone());
    let root2 = |r: &Rational| QSqrt2::sqrt2_times(r.clone());
    let s1 = skew(&el.a1);
    let s2 = skew(&el.a2);
    let at = el.a.transpose();
    for i in 0..3 {
        m[(0, 1 + i)] = root2(&-&el.a2[i]);
        m[(0, 4 + i)] = root2(&-&el.a1[i]);
        m[(1 + i, 0)] = root2(&el.a1[i]);
        m[(4 + i, 0)] = root2(&el.a2[i]);
        for j in 0..3 {
            m[(1 + i, 1 + j)] = rat(&el.a[(i, j)]);
            m[(1 + i, 4 + j)] = rat(&s2[(i, j)]);
            m[(4 + i, 1 + j)] = rat(&s1[(i, j)]);
            m[(4 + i, 4 + j)] = rat(&-&at[(i, j)]);
        }
    }
    m
}

/// Inverse of [`embed`], validating every block of the 7×7 model.
pub fn project(m: &Matrix<QSqrt2>) -> Result<G2Element, Error> {
    if m.rows() != 7 || m.cols() != 7 {
        return Err(Error::NotInG2(format!("shape {}x{}, expected 7x7", m.rows(), m.cols())));
    }
    let sqrt2_coeff = |i: usize, j: usize, block: &str| -> Result<Rational, Error> {
        let e = &m[(i, j)];
        if e.rat_part.is_zero() {
            Ok(e.sqrt2_part.clone())
        } else {
            Err(Error::NotInG2(format!("block {block}: entry ({},{}) is not a multiple of √2", i + 1, j + 1)))
        }
    };
    let a1 = Vec3(
        [0, 1, 2]
            .map(|i| sqrt2_coeff(1 + i, 0, "(2,1)"))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?
            .try_into()
            .unwrap(),
    );
    let a2 = Vec3(
        [0, 1, 2]
            .map(|i| sqrt2_coeff(4 + i, 0, "(3,1)"))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?
            .try_into()
            .unwrap(),
    );
    let mut a = Mat3::zero();
    for i in 0..3 {
        for j in 0..3 {
            a[(i, j)] = m[(1 + i, 1 + j)]
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::NotInG2("block (2,2): entry is not rational".into()))?;
        }
    }
    let el = G2Element::new(a1, a2, a).map_err(|_| Error::NotInG2("block (2,2): trace is not 0".into()))?;

    let expected = embed(&el);
    let blocks: [(&str, std::ops::Range<usize>, std::ops::Range<usize>); 9] = [
        ("(1,1)", 0..1, 0..1),
        ("(1,2)", 0..1, 1..4),
        ("(1,3)", 0..1, 4..7),
        ("(2,1)", 1..4, 0..1),
        ("(2,2)", 1..4, 1..4),
        ("(2,3)", 1..4, 4..7),
        ("(3,1)", 4..7, 0..1),
        ("(3,2)", 4..7, 1..4),
        ("(3,3)", 4..7, 4..7),
    ];
    for (name, rows, cols) in blocks {
        for i in rows.clone() {
            for j in cols.clone() {
                if m[(i, j)] != expected[(i, j)] {
                    return Err(Error::NotInG2(format!(
                        "block {name} inconsistent at ({},{}): {} vs {}",
                        i + 1,
                        j + 1,
                        m[(i, j)],
                        expected[(i, j)]
                    )));
                }
            }
        }
    }
    Ok(el)
}

/// The fixed basis: `e₁,e₂,e₃` in the a₁ slot, then in the a₂ slot, then
/// `E₁₁−E₂₂`, `E₂₂−E₃₃` and the six off-diagonal matrix units.
pub fn g2_basis() -> Vec<G2Element> {
    (0..DIM)
        .map(|k| {
            let mut c = vec![Rational::zero(); DIM];
            c[k] = Rational::one();
            G2Element::from_coords(&c)
        })
        .collect()
}

/// Row vector of a linear functional `f` on G₂ in basis coordinates.
pub fn functional_row(f: impl Fn(&G2Element) -> Rational) -> Vec<Rational> {
    g2_basis().iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: [i64; 3]) -> Vec3 {
        Vec3::from_ints(x)
    }

    #[test]
    fn skew_of_e1() {
        assert_eq!(skew(&v([1, 0, 0])), Mat3::from_ints([[0, 0, 0], [0, 0, 1], [0, -1, 0]]));
        assert!(skew(&Vec3::zero()).is_zero());
    }

    #[test]
    fn cross_matches_skew() {
        let x = v([1, 2, 3]);
        let y = v([4, 5, 6]);
        assert_eq!(cross(&x, &y), v([3, -6, 3]));
        assert_eq!(skew(&x).mul_vec(&y), cross(&x, &y));
        assert_eq!(cross(&Vec3::unit(0), &Vec3::unit(1)), v([0, 0, -1]));
        assert!(cross(&x, &x).is_zero());
    }

    #[test]
    fn embed_of_a1_e1() {
        let m = embed(&G2Element::from_a1(Vec3::unit(0)));
        let mut nonzero = vec![];
        for i in 0..7 {
            for j in 0..7 {
                if !m[(i, j)].is_zero() {
                    nonzero.push((i + 1, j + 1, m[(i, j)].clone()));
                }
            }
        }
        let r2 = QSqrt2::sqrt2();
        let one = QSqrt2::one();
        assert_eq!(
            nonzero,
            vec![
                (1, 5, -r2.clone()),
                (2, 1, r2),
                (6, 4, one.clone()),
                (7, 3, -one),
            ]
        );
        assert!(embed(&G2Element::zero()).is_zero());
    }

    #[test]
    fn project_rejects() {
        assert!(project(&Matrix::<QSqrt2>::identity(7)).is_err());
        let mut m = Matrix::<QSqrt2>::zeros(7, 7);
        m[(1, 1)] = QSqrt2::one();
        m[(4, 4)] = -QSqrt2::one();
        let err = project(&m).unwrap_err();
        assert!(err.to_string().contains("trace"), "{err}");
        let mut m = embed(&G2Element::from_a1(Vec3::unit(1)));
        m[(5, 2)] = QSqrt2::one();
        assert!(matches!(project(&m), Err(Error::NotInG2(s)) if s.contains("(3,2)")));
    }

    #[test]
    fn coords_round_trip_basis() {
        let basis = g2_basis();
        assert_eq!(basis.len(), 14);
        for (k, b) in basis.iter().enumerate() {
            let c = b.coords();
            assert!(c.iter().enumerate().all(|(i, x)| if i == k { x.is_one() } else { x.is_zero() }));
            assert_eq!(&G2Element::from_coords(&c), b);
        }
    }

    #[test]
    fn traceless_enforced() {
        assert!(G2Element::from_matrix(Mat3::identity()).is_err());
        let js = r#"{"a1":["0","0","0"],"a2":["0","0","0"],"A":[["1","0","0"],["0","0","0"],["0","0","0"]]}"#;
        assert!(serde_json::from_str::<G2Element>(js).is_err());
    }

    #[test]
    fn json_shape() {
        let el = G2Element::from_a2(Vec3::from_ints([1, -2, 0]));
        let js = serde_json::to_value(&el).unwrap();
        assert_eq!(js["a2"], serde_json::json!(["1", "-2", "0"]));
        assert_eq!(js["A"][0], serde_json::json!(["0", "0", "0"]));
    }
}
