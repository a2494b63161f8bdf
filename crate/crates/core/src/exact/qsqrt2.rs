//! The quadratic field Q(√2), elements `r + s·√2`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub rat_part: Rational,
    pub sqrt2_part: Rational,
}

impl QSqrt2 {
    pub fn new(rat_part: Rational, sqrt2_part: Rational) -> Self {
        QSqrt2 {
            rat_part,
            sqrt2_part,
        }
    }

    pub fn rational(r: Rational) -> Self {
        QSqrt2::new(r, Rational::zero())
    }

    /// `r·√2`.
    pub fn sqrt2_times(r: Rational) -> Self {
        QSqrt2::new(Rational::zero(), r)
    }

    pub fn sqrt2() -> Self {
        QSqrt2::sqrt2_times(Rational::one())
    }

    /// Galois conjugate `r − s·√2`.
    pub fn conj(&self) -> Self {
        QSqrt2::new(self.rat_part.clone(), -&self.sqrt2_part)
    }

    /// Field norm `r² − 2s²`; zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.rat_part * &self.rat_part
            - Rational::from_int(2) * &self.sqrt2_part * &self.sqrt2_part
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero");
        let c = self.conj();
        QSqrt2::new(&c.rat_part / &n, &c.sqrt2_part / &n)
    }

    /// The rational value, if the √2 component vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.sqrt2_part.is_zero().then_some(&self.rat_part)
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::default()
    }
    fn is_zero(&self) -> bool {
        self.rat_part.is_zero() && self.sqrt2_part.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::rational(Rational::one())
    }
}

impl<'a, 'b> Add<&'b QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &'b QSqrt2) -> QSqrt2 {
        QSqrt2::new(
            &self.rat_part + &rhs.rat_part,
            &self.sqrt2_part + &rhs.sqrt2_part,
        )
    }
}

impl<'a, 'b> Sub<&'b QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &'b QSqrt2) -> QSqrt2 {
        QSqrt2::new(
            &self.rat_part - &rhs.rat_part,
            &self.sqrt2_part - &rhs.sqrt2_part,
        )
    }
}

impl<'a, 'b> Mul<&'b QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &'b QSqrt2) -> QSqrt2 {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let (a, b) = (&self.rat_part, &self.sqrt2_part);
        let (c, d) = (&rhs.rat_part, &rhs.sqrt2_part);
        QSqrt2::new(a * c + Rational::from_int(2) * b * d, a * d + b * c)
    }
}

impl<'a, 'b> Div<&'b QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'b QSqrt2) -> QSqrt2 {
        self * &rhs.recip()
    }
}

macro_rules! owned_variants {
    ($tr:ident, $method:ident) => {
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: &'a QSqrt2) -> QSqrt2 {
                (&self).$method(rhs)
            }
        }
    };
}

owned_variants!(Add, add);
owned_variants!(Sub, sub);
owned_variants!(Mul, mul);
owned_variants!(Div, div);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rat_part, -self.sqrt2_part)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat_part.is_zero(), self.sqrt2_part.is_zero()) {
            (_, true) => write!(f, "{}", self.rat_part),
            (true, false) => write!(f, "{}√2", self.sqrt2_part),
            (false, false) => write!(f, "{}+{}√2", self.rat_part, self.sqrt2_part),
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let s = QSqrt2::sqrt2();
        assert_eq!(&s * &s, QSqrt2::rational(Rational::from_int(2)));
    }

    #[test]
    fn inverse() {
        let x = QSqrt2::new(Rational::new(3, 2), Rational::from_int(-1));
        assert_eq!(&x * &x.recip(), QSqrt2::one());
    }
}
