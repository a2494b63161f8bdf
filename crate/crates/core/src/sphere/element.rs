//! G₂-valued rational functions `F(z) / Π (z − x)^{e_x}` on the sphere.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::config::Point;
use super::series::{
    binomial, eval_roots, linear_power, poly_from_roots, poly_mul, poly_mul_trunc,
    series_inverse,
};
use crate::error::Error;
use crate::exact::Rational;
use crate::g2::{bracket, G2Element};
use crate::jets::{Jet, MatrixJet};

pub type Denominator = BTreeMap<Rational, u32>;

/// `numerator[k]` is the coefficient of `z^k`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalElement {
    numerator: Vec<G2Element>,
    denominator: Denominator,
}

impl GlobalElement {
    pub fn new(numerator: Vec<G2Element>, denominator: Denominator) -> Self {
        let mut e = GlobalElement {
            numerator,
            denominator,
        };
        e.normalize();
        e
    }

    pub fn zero() -> Self {
        GlobalElement::new(Vec::new(), Denominator::new())
    }

    pub fn constant(c: G2Element) -> Self {
        GlobalElement::new(vec![c], Denominator::new())
    }

    fn normalize(&mut self) {
        while self.numerator.last().is_some_and(G2Element::is_zero) {
            self.numerator.pop();
        }
        self.denominator.retain(|_, e| *e > 0);
    }

    pub fn numerator(&self) -> &[G2Element] {
        &self.numerator
    }

    pub fn denominator(&self) -> &Denominator {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// `deg F − deg D`, the pole order at infinity (negative means a zero).
    /// `None` for the zero function.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        let deg_f = self.numerator.len().checked_sub(1)? as i64;
        Some(deg_f - self.denominator_degree())
    }

    pub fn denominator_degree(&self) -> i64 {
        self.denominator.values().map(|&e| e as i64).sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GlobalElement::new(
            self.numerator.iter().map(|x| x.scale(c)).collect(),
            self.denominator.clone(),
        )
    }

    /// Same function over the larger denominator `den` (which must contain
    /// this one).
    pub fn over(&self, den: &Denominator) -> Vec<G2Element> {
        let mut extra = Denominator::new();
        for (x, &e) in den {
            let own = self.denominator.get(x).copied().unwrap_or(0);
            assert!(own <= e, "denominator does not divide the target");
            extra.insert(x.clone(), e - own);
        }
        for x in self.denominator.keys() {
            assert!(den.contains_key(x), "denominator does not divide the target");
        }
        mul_scalar_poly(&self.numerator, &poly_from_roots(&extra))
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = lcm(&self.denominator, &other.denominator);
        let a = self.over(&den);
        let b = other.over(&den);
        let n = a.len().max(b.len());
        let zero = G2Element::zero();
        let num = (0..n)
            .map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero))
            .collect();
        GlobalElement::new(num, den).reduced()
    }

    /// Value at a finite point that is not a pole.
    pub fn eval(&self, z0: &Rational) -> Option<G2Element> {
        let d = eval_roots(&self.denominator, z0);
        if d.is_zero() {
            return None;
        }
        Some(eval_poly(&self.numerator, z0).scale(&d.recip()))
    }

    /// Cancels common factors `(z − x)` between numerator and denominator.
    pub fn reduced(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        for (x, e) in den.iter_mut() {
            while *e > 0 && !num.is_empty() {
                match divide_linear(&num, x) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        GlobalElement::new(num, den)
    }

    /// Declared pole order at a point (`0` if the point is not a pole).
    pub fn pole_order_at(&self, p: &Point) -> i64 {
        match p {
            Point::Finite(x) => self.denominator.get(x).copied().unwrap_or(0) as i64,
            Point::Infinity => self.degree_at_infinity().unwrap_or(0).max(0),
        }
    }

    /// Exact order of vanishing at a point (negative for a pole). `None` for 0.
    pub fn order_at(&self, p: &Point) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        match p {
            Point::Infinity => self.degree_at_infinity().map(|d| -d),
            Point::Finite(x) => {
                let mut v = 0;
                let mut num = self.numerator.clone();
                while let Some(q) = divide_linear(&num, x) {
                    num = q;
                    v += 1;
                }
                Some(v - self.pole_order_at(p))
            }
        }
    }
}

impl fmt::Debug for GlobalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / {:?}", self.numerator, self.denominator)
    }
}

pub(crate) fn lcm(a: &Denominator, b: &Denominator) -> Denominator {
    let mut out = a.clone();
    for (x, &e) in b {
        let v = out.entry(x.clone()).or_insert(0);
        *v = (*v).max(e);
    }
    out
}

fn eval_poly(p: &[G2Element], z0: &Rational) -> G2Element {
    let mut acc = G2Element::zero();
    for c in p.iter().rev() {
        acc = &acc.scale(z0) + c;
    }
    acc
}

fn mul_scalar_poly(p: &[G2Element], s: &[Rational]) -> Vec<G2Element> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![G2Element::zero(); p.len() + s.len() - 1];
    for (i, c) in p.iter().enumerate() {
        for (j, x) in s.iter().enumerate() {
            if !x.is_zero() {
                out[i + j] = &out[i + j] + &c.scale(x);
            }
        }
    }
    out
}

/// `p / (z − x)` if exact.
fn divide_linear(p: &[G2Element], x: &Rational) -> Option<Vec<G2Element>> {
    if p.is_empty() {
        return None;
    }
    // Synthetic division from the top coefficient down.
    let n = p.len();
    let mut q = vec![G2Element::zero(); n - 1];
    let mut carry = G2Element::zero();
    for k in (0..n).rev() {
        let cur = &p[k] + &carry.scale(x);
        if k == 0 {
            return cur.is_zero().then_some(q);
        }
        q[k - 1] = cur.clone();
        carry = cur;
    }
    unreachable!()
}

/// Pointwise bracket; the result is reduced.
pub fn global_bracket(x: &GlobalElement, y: &GlobalElement) -> GlobalElement {
    if x.is_zero() || y.is_zero() {
        return GlobalElement::zero();
    }
    let mut num = vec![G2Element::zero(); x.numerator.len() + y.numerator.len() - 1];
    for (i, a) in x.numerator.iter().enumerate() {
        for (j, b) in y.numerator.iter().enumerate() {
            num[i + j] = &num[i + j] + &bracket(a, b);
        }
    }
    let mut den = x.denominator.clone();
    for (p, &e) in &y.denominator {
        *den.entry(p.clone()).or_insert(0) += e;
    }
    GlobalElement::new(num, den).reduced()
}

/// `table[k][n − lo]` is the order-`n` Laurent coefficient of `z^k / D(z)`
/// at `point`, for `k = 0..=kmax`. The local coordinate is `z − x₀` at a
/// finite point and `w = 1/z` at infinity.
pub fn monomial_expansions(
    den: &Denominator,
    point: &Point,
    kmax: usize,
    lo: i32,
    hi: i32,
) -> Vec<Vec<Rational>> {
    match point {
        Point::Finite(x0) => {
            let e = den.get(x0).copied().unwrap_or(0) as i32;
            // D(z) = (z − x₀)^e · Π_{x≠x₀} ((x₀ − x) + u)^{e_x}
            let mut rest = vec![Rational::from_int(1)];
            for (x, &ex) in den {
                if x != x0 {
                    rest = poly_mul(&rest, &linear_power(&(x0 - x), ex));
                }
            }
            let len = (hi + e + 1).max(0) as usize;
            let s = series_inverse(&rest, len);
            (0..=kmax)
                .map(|k| {
                    // (x₀ + u)^k
                    let g: Vec<Rational> =
                        (0..=k).map(|i| binomial(k, i) * x0.pow((k - i) as i32)).collect();
                    let prod = poly_mul_trunc(&g, &s, len);
                    (lo..=hi)
                        .map(|n| {
                            let idx = n + e;
                            if idx < 0 {
                                Rational::zero()
                            } else {
                                prod[idx as usize].clone()
                            }
                        })
                        .collect()
                })
                .collect()
        }
        Point::Infinity => {
            // z^k / D = w^{E − k} · Π (1 − x w)^{−e_x}
            let total: i32 = den.values().map(|&e| e as i32).sum();
            let mut p = vec![Rational::from_int(1)];
            for (x, &ex) in den {
                for _ in 0..ex {
                    p = poly_mul(&p, &[Rational::from_int(1), -x]);
                }
            }
            let len = (hi - total + kmax as i32 + 1).max(0) as usize;
            let s = series_inverse(&p, len);
            (0..=kmax)
                .map(|k| {
                    (lo..=hi)
                        .map(|n| {
                            let idx = n - total + k as i32;
                            if idx < 0 {
                                Rational::zero()
                            } else {
                                s[idx as usize].clone()
                            }
                        })
                        .collect()
                })
                .collect()
        }
    }
}

/// Laurent coefficients of `L` at `point` on orders `[lo, hi]`.
pub fn expand_window(l: &GlobalElement, point: &Point, lo: i32, hi: i32) -> Result<MatrixJet, Error> {
    if lo > hi {
        return Err(Error::EmptyWindow);
    }
    if l.is_zero() {
        return Ok(MatrixJet::zero(lo, hi));
    }
    let table = monomial_expansions(&l.denominator, point, l.numerator.len() - 1, lo, hi);
    let coeffs = (0..(hi - lo + 1) as usize)
        .map(|idx| {
            let mut acc = G2Element::zero();
            for (k, f) in l.numerator.iter().enumerate() {
                let c = &table[k][idx];
                if !c.is_zero() && !f.is_zero() {
                    acc = &acc + &f.scale(c);
                }
            }
            acc
        })
        .collect();
    Jet::new(lo, coeffs)
}

/// Expansion from the declared pole order through order `t`.
pub fn expand_at(l: &GlobalElement, point: &Point, t: i32) -> Result<MatrixJet, Error> {
    let lo = -(l.pole_order_at(point) as i32);
    expand_window(l, point, lo.min(t), t)
}
