//! Scalar polynomials and truncated power series over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exact::Rational;

pub(crate) type Poly = Vec<Rational>;

pub(crate) fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

pub(crate) fn poly_mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Poly {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// `(c + u)^e`.
pub(crate) fn linear_power(c: &Rational, e: u32) -> Poly {
    let mut p = vec![Rational::one()];
    for _ in 0..e {
        p = poly_mul(&p, &[c.clone(), Rational::one()]);
    }
    p
}

/// `Π (z − x)^e` in the variable `z`.
pub(crate) fn poly_from_roots(roots: &BTreeMap<Rational, u32>) -> Poly {
    let mut p = vec![Rational::one()];
    for (x, &e) in roots {
        p = poly_mul(&p, &linear_power(&-x, e));
    }
    p
}

/// First `len` coefficients of `1/p` as a power series; `p(0) ≠ 0`.
pub(crate) fn series_inverse(p: &[Rational], len: usize) -> Poly {
    let c0 = p[0].recip();
    let mut s = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            s.push(c0.clone());
            continue;
        }
        let mut acc = Rational::zero();
        for k in 1..=n.min(p.len() - 1) {
            if !p[k].is_zero() {
                acc += &(&p[k] * &s[n - k]);
            }
        }
        s.push(-(acc * &c0));
    }
    s
}

pub(crate) fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut r = Rational::one();
    for i in 0..k {
        r = r * Rational::from_int((n - i) as i64) / Rational::from_int((i + 1) as i64);
    }
    r
}

/// `Π_x (z0 − x)^{e_x}`.
pub(crate) fn eval_roots(roots: &BTreeMap<Rational, u32>, z0: &Rational) -> Rational {
    roots
        .iter()
        .map(|(x, &e)| (z0 - x).pow(e as i32))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn inverse_of_one_minus_u() {
        let s = series_inverse(&[q(1), q(-1)], 5);
        assert!(s.iter().all(|x| *x == q(1)));
        let back = poly_mul_trunc(&s, &[q(1), q(-1)], 5);
        assert_eq!(back, vec![q(1), q(0), q(0), q(0), q(0)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(2, 3), q(0));
        assert_eq!(linear_power(&q(2), 2), vec![q(4), q(4), q(1)]);
    }
}
