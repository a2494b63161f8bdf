//! Truncated Laurent expansions with exact coefficients.
//!
//! A [`Jet`] stores every coefficient of orders `lo..=hi` and nothing else.
//! Each stored coefficient is exact: operations shrink the window to the
//! orders that are fully determined by their inputs. For a product of jets on
//! `[lx, hx]` and `[ly, hy]` that window is `[lx+ly, min(hx+ly, hy+lx)]`,
//! which for two jets starting at −2 is `[−4, min(Tx, Ty) − 2]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Matrix, QSqrt2, Rational};
use crate::g2::{bracket, embed, trace_form, G2Element};

/// Lowest order a matrix jet at a Tyurin point may carry.
pub const POLE_ORDER: i32 = -2;
/// Default truncation: the deepest coefficient any check uses is `L₃`.
pub const DEFAULT_TRUNCATION: i32 = 3;

/// Coefficients a jet can carry.
pub trait JetCoeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl JetCoeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl JetCoeff for G2Element {
    fn zero_like(&self) -> Self {
        G2Element::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rational) -> Self {
        G2Element::scale(self, c)
    }
}

impl JetCoeff for Matrix<QSqrt2> {
    fn zero_like(&self) -> Self {
        Matrix::zeros(self.rows(), self.cols())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rational) -> Self {
        Matrix::scale(self, &QSqrt2::rational(c.clone()))
    }
}

#[derive(Clone, PartialEq)]
pub struct Jet<C> {
    lo: i32,
    coeffs: Vec<C>,
}

/// Jet of a G₂-valued function; coefficient orders start at −2 for elements
/// of the algebra.
pub type MatrixJet = Jet<G2Element>;
/// Jet with raw 7×7 coefficients (a product of G₂ jets leaves G₂).
pub type ProductJet = Jet<Matrix<QSqrt2>>;
pub type ScalarJet = Jet<Rational>;

impl<C: JetCoeff> Jet<C> {
    /// Jet with coefficients for orders `lo, lo+1, …`. Fails on an empty list.
    pub fn new(lo: i32, coeffs: Vec<C>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::EmptyWindow);
        }
        Ok(Jet { lo, coeffs })
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.coeffs.len() as i32 - 1
    }

    /// Highest stored order (the truncation `T`).
    pub fn trunc(&self) -> i32 {
        self.hi()
    }

    pub fn coeff(&self, n: i32) -> Result<&C, Error> {
        if n < self.lo || n > self.hi() {
            return Err(Error::OrderOutsideWindow {
                order: n,
                lo: self.lo,
                hi: self.hi(),
            });
        }
        Ok(&self.coeffs[(n - self.lo) as usize])
    }

    pub fn coeff_mut(&mut self, n: i32) -> Result<&mut C, Error> {
        let (lo, hi) = (self.lo, self.hi());
        if n < lo || n > hi {
            return Err(Error::OrderOutsideWindow { order: n, lo, hi });
        }
        Ok(&mut self.coeffs[(n - lo) as usize])
    }

    /// `(order, coefficient)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &C)> {
        self.coeffs.iter().enumerate().map(move |(k, c)| (self.lo + k as i32, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(JetCoeff::is_zero_coeff)
    }

    /// Lowest order with a nonzero coefficient.
    pub fn leading_order(&self) -> Option<i32> {
        self.iter().find(|(_, c)| !c.is_zero_coeff()).map(|(n, _)| n)
    }

    /// Same function viewed on the narrower window `[lo, hi]`.
    pub fn restrict(&self, lo: i32, hi: i32) -> Result<Self, Error> {
        if lo > hi {
            return Err(Error::EmptyWindow);
        }
        let coeffs = (lo..=hi).map(|n| self.coeff(n).cloned()).collect::<Result<Vec<_>, _>>()?;
        Ok(Jet { lo, coeffs })
    }

    /// Pads with zeros below `lo` (valid for a function known to vanish there).
    pub fn extend_down(&self, lo: i32) -> Self {
        if lo >= self.lo {
            return self.clone();
        }
        let z = self.coeffs[0].zero_like();
        let mut coeffs = vec![z; (self.lo - lo) as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Jet { lo, coeffs }
    }

    pub fn map<D>(&self, f: impl Fn(&C) -> D) -> Jet<D> {
        Jet {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Sum on the intersection of the two windows.
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        let minus_one = -Rational::from_int(1);
        self.zip_with(other, |a, b| a.add(&b.scale(&minus_one)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self, Error> {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().min(other.hi());
        if lo > hi {
            return Err(Error::EmptyWindow);
        }
        let (a, b) = (self.extend_down(lo), other.extend_down(lo));
        let coeffs = (lo..=hi)
            .map(|n| f(a.coeff(n).unwrap(), b.coeff(n).unwrap()))
            .collect();
        Ok(Jet { lo, coeffs })
    }
}

impl<C: JetCoeff> fmt::Debug for Jet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (n, c) in self.iter() {
            m.entry(&n, c);
        }
        m.finish()
    }
}

/// Generic Cauchy product with the exactness window.
pub fn convolve<A, B, C>(
    x: &Jet<A>,
    y: &Jet<B>,
    mul: impl Fn(&A, &B) -> C,
) -> Result<Jet<C>, Error>
where
    A: JetCoeff,
    B: JetCoeff,
    C: JetCoeff,
{
    let lo = x.lo() + y.lo();
    let hi = (x.hi() + y.lo()).min(y.hi() + x.lo());
    if hi < lo {
        return Err(Error::EmptyWindow);
    }
    let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        let mut acc: Option<C> = None;
        let i_lo = x.lo().max(n - y.hi());
        let i_hi = x.hi().min(n - y.lo());
        for i in i_lo..=i_hi {
            let (a, b) = (x.coeff(i).unwrap(), y.coeff(n - i).unwrap());
            if a.is_zero_coeff() || b.is_zero_coeff() {
                if acc.is_none() {
                    acc = Some(mul(a, b));
                }
                continue;
            }
            let term = mul(a, b);
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term),
            });
        }
        coeffs.push(acc.expect("window guarantees at least one term"));
    }
    Ok(Jet { lo, coeffs })
}

/// Cauchy product in the 7×7 model. Coefficients are generally not in G₂.
pub fn jet_product(x: &MatrixJet, y: &MatrixJet) -> Result<ProductJet, Error> {
    let ex = x.map(embed);
    let ey = y.map(embed);
    convolve(&ex, &ey, |a, b| a * b)
}

/// Pointwise commutator, computed with the coordinate bracket.
pub fn jet_commutator(x: &MatrixJet, y: &MatrixJet) -> Result<MatrixJet, Error> {
    convolve(x, y, bracket)
}

/// `d/dz`: order `n − 1` of the output is `n` times order `n` of the input.
pub fn jet_derivative<C: JetCoeff>(x: &Jet<C>) -> Jet<C> {
    Jet {
        lo: x.lo() - 1,
        coeffs: x.iter().map(|(n, c)| c.scale(&Rational::from_int(n as i64))).collect(),
    }
}

/// Order-wise trace of a 7×7 jet. A surviving √2 component is a bug.
pub fn trace_jet(x: &ProductJet) -> Result<ScalarJet, Error> {
    let coeffs = x
        .iter()
        .map(|(n, m)| {
            let t = m.trace();
            t.as_rational().cloned().ok_or_else(|| {
                Error::Internal(format!("trace at order {n} has a √2 component: {t}"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Jet::new(x.lo(), coeffs)
}

/// `tr(x·y)` order-wise, via the coordinate trace form (no 7×7 matrices).
pub fn trace_pairing(x: &MatrixJet, y: &MatrixJet) -> Result<ScalarJet, Error> {
    convolve(x, y, trace_form)
}

/// Coefficient at order −1.
pub fn residue(s: &ScalarJet) -> Result<Rational, Error> {
    s.coeff(-1).cloned()
}

impl<C: JetCoeff + Serialize> Serialize for Jet<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Coeffs<'a, C>(&'a Jet<C>);
        impl<C: JetCoeff + Serialize> Serialize for Coeffs<'_, C> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.coeffs.len()))?;
                for (n, c) in self.0.iter() {
                    m.serialize_entry(&n.to_string(), c)?;
                }
                m.end()
            }
        }
        let mut s = serializer.serialize_struct("Jet", 2)?;
        s.serialize_field("trunc", &self.trunc())?;
        s.serialize_field("coeffs", &Coeffs(self))?;
        s.end()
    }
}

impl<'de, C: JetCoeff + Deserialize<'de>> Deserialize<'de> for Jet<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr<C> {
            trunc: i32,
            coeffs: BTreeMap<String, C>,
        }
        let r = Repr::<C>::deserialize(deserializer)?;
        let mut by_order = BTreeMap::new();
        for (k, c) in r.coeffs {
            let n: i32 = k.parse().map_err(|_| de::Error::custom(format!("bad order key {k:?}")))?;
            by_order.insert(n, c);
        }
        let lo = *by_order.keys().next().ok_or_else(|| de::Error::custom("jet has no coefficients"))?;
        let hi = *by_order.keys().last().unwrap();
        if hi != r.trunc {
            return Err(de::Error::custom(format!("trunc {} but highest order {hi}", r.trunc)));
        }
        if by_order.len() as i32 != hi - lo + 1 {
            return Err(de::Error::custom("jet coefficient orders are not contiguous"));
        }
        Ok(Jet {
            lo,
            coeffs: by_order.into_values().collect(),
        })
    }
}

impl MatrixJet {
    pub fn zero(lo: i32, hi: i32) -> Self {
        assert!(lo <= hi, "empty window");
        Jet {
            lo,
            coeffs: vec![G2Element::zero(); (hi - lo + 1) as usize],
        }
    }

    /// `c·z^n` on the window `[lo, hi]`.
    pub fn monomial(n: i32, c: G2Element, lo: i32, hi: i32) -> Self {
        let mut j = MatrixJet::zero(lo, hi);
        *j.coeff_mut(n).expect("monomial order inside window") = c;
        j
    }
}

impl ScalarJet {
    pub fn zero(lo: i32, hi: i32) -> Self {
        assert!(lo <= hi, "empty window");
        Jet {
            lo,
            coeffs: vec![Rational::zero(); (hi - lo + 1) as usize],
        }
    }
}
