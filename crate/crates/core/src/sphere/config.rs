//! Marked points and the grading data of the divisors `D_m`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::exact::Rational;
use crate::tyurin::TyurinDatum;

/// A point of the Riemann sphere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl Point {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Point::Finite(x) => Some(x),
            Point::Infinity => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(x) => write!(f, "{x}"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim() == "inf" {
            Ok(Point::Infinity)
        } else {
            s.parse().map(Point::Finite)
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Marked points `P₁…P_N`, `Q₁…Q_M` and Tyurin data `γ₁…γ_K` on the sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub genus: u32,
    #[serde(rename = "P")]
    pub p_points: Vec<Point>,
    #[serde(rename = "Q")]
    pub q_points: Vec<Point>,
    pub tyurin: Vec<TyurinDatum>,
}

impl SurfaceSpec {
    pub fn n(&self) -> usize {
        self.p_points.len()
    }

    pub fn m(&self) -> usize {
        self.q_points.len()
    }

    pub fn k(&self) -> usize {
        self.tyurin.len()
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.genus != 0 {
            return Err(Error::InvalidSurface(format!(
                "genus {} is not supported, only the sphere",
                self.genus
            )));
        }
        if self.p_points.is_empty() || self.q_points.is_empty() {
            return Err(Error::InvalidSurface("need at least one P and one Q point".into()));
        }
        if self.p_points.contains(&Point::Infinity) {
            return Err(Error::InvalidSurface("P points must be finite".into()));
        }
        if self.q_points.iter().filter(|q| **q == Point::Infinity).count() > 1 {
            return Err(Error::InvalidSurface("at most one Q point may be inf".into()));
        }
        let mut seen = BTreeSet::new();
        let finite = self
            .p_points
            .iter()
            .chain(&self.q_points)
            .filter_map(Point::finite)
            .chain(self.tyurin.iter().map(TyurinDatum::gamma));
        for x in finite {
            if !seen.insert(x.clone()) {
                return Err(Error::InvalidSurface(format!("point {x} is used twice")));
            }
        }
        Ok(())
    }

    /// Every finite marked location.
    pub fn marked_finite(&self) -> BTreeSet<Rational> {
        self.p_points
            .iter()
            .chain(&self.q_points)
            .filter_map(Point::finite)
            .cloned()
            .chain(self.tyurin.iter().map(|d| d.gamma().clone()))
            .collect()
    }
}

/// Rule producing `b_{m,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BRule {
    /// `b_{m,j} = c_j` for all `m`.
    Const(Vec<Rational>),
    /// `a_j m + b_{m,j}` is `⌊a_j m⌋` plus a share of the remainder needed to
    /// make `Σ_j b_{m,j} = N + g − 1`, handed out to the first points.
    FloorCeil,
}

impl fmt::Display for BRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BRule::Const(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "const:{}", parts.join(","))
            }
            BRule::FloorCeil => f.write_str("floor"),
        }
    }
}

impl FromStr for BRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "floor" {
            return Ok(BRule::FloorCeil);
        }
        let body = s
            .strip_prefix("const:")
            .ok_or_else(|| Error::Parse(format!("b rule {s:?}: expected \"const:c1,c2,…\" or \"floor\"")))?;
        body.split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(BRule::Const)
    }
}

impl Serialize for BRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BRule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingSpec {
    pub a: Vec<Rational>,
    pub b: BRule,
}

/// A validated surface together with its grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    surface: SurfaceSpec,
    grading: GradingSpec,
    /// `N + g − 1`.
    b_total: i64,
    bound: Rational,
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

impl Configuration {
    pub fn new(surface: SurfaceSpec, grading: GradingSpec) -> Result<Self, Error> {
        surface.validate()?;
        let n = surface.n() as i64;
        if grading.a.len() != surface.m() {
            return Err(Error::InvalidGrading(format!(
                "{} weights a_j for {} Q points",
                grading.a.len(),
                surface.m()
            )));
        }
        if let Some(x) = grading.a.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidGrading(format!("a_j = {x} is not positive")));
        }
        let sum_a: Rational = grading.a.iter().sum();
        if sum_a != Rational::from_int(n) {
            return Err(Error::InvalidGrading(format!("Σa_j = {sum_a}, expected N = {n}")));
        }
        if let BRule::Const(c) = &grading.b {
            if c.len() != surface.m() {
                return Err(Error::InvalidGrading(format!(
                    "{} constants b_j for {} Q points",
                    c.len(),
                    surface.m()
                )));
            }
        }
        let mut cfg = Configuration {
            b_total: n + surface.genus as i64 - 1,
            surface,
            grading,
            bound: Rational::zero(),
        };
        cfg.bound = cfg.check_period()?;
        Ok(cfg)
    }

    /// `n_j(m) = a_j m + b_{m,j}` and `b_{m,j}` are periodic in `m` modulo
    /// the lcm of the denominators, so one period (plus one step) decides
    /// integrality, monotonicity, the sum rule and the bound `B`.
    fn check_period(&self) -> Result<Rational, Error> {
        let mut period = BigInt::one();
        for x in &self.grading.a {
            period = lcm(&period, x.denom());
        }
        if let BRule::Const(c) = &self.grading.b {
            for x in c {
                period = lcm(&period, x.denom());
            }
        }
        let period: i64 = period
            .try_into()
            .map_err(|_| Error::InvalidGrading("grading period too large".into()))?;
        let mut bound = Rational::zero();
        for m in 0..=period {
            let mut sum_b = Rational::zero();
            for j in 0..self.surface.m() {
                let raw = self.raw_pole_order(m, j);
                if !raw.is_integer() {
                    return Err(Error::InvalidGrading(format!(
                        "a_{j}·{m} + b_{{{m},{j}}} = {raw} is not an integer"
                    )));
                }
                if m > 0 && raw < self.raw_pole_order(m - 1, j) {
                    return Err(Error::InvalidGrading(format!(
                        "a_j m + b_(m,j) decreases at m = {m}, j = {j}"
                    )));
                }
                let b = &raw - &self.grading.a[j] * Rational::from_int(m);
                if b.abs() > bound {
                    bound = b.abs();
                }
                sum_b += b;
            }
            if sum_b != Rational::from_int(self.b_total) {
                return Err(Error::InvalidGrading(format!(
                    "Σ_j b_(m,j) = {sum_b} at m = {m}, expected N + g − 1 = {}",
                    self.b_total
                )));
            }
        }
        Ok(bound)
    }

    fn raw_pole_order(&self, m: i64, j: usize) -> Rational {
        let a = &self.grading.a;
        match &self.grading.b {
            BRule::Const(c) => &a[j] * Rational::from_int(m) + &c[j],
            BRule::FloorCeil => {
                let floors: Vec<Rational> =
                    a.iter().map(|x| (x * Rational::from_int(m)).floor()).collect();
                let target = Rational::from_int(self.surface.n() as i64 * m + self.b_total);
                let rest = (&target - floors.iter().sum::<Rational>()).to_i64().expect("integer");
                let mm = a.len() as i64;
                let share = rest.div_euclid(mm) + i64::from((j as i64) < rest.rem_euclid(mm));
                &floors[j] + Rational::from_int(share)
            }
        }
    }

    pub fn surface(&self) -> &SurfaceSpec {
        &self.surface
    }

    pub fn grading(&self) -> &GradingSpec {
        &self.grading
    }

    /// Allowed pole order `a_j m + b_{m,j}` at `Q_j` for degree `m`.
    pub fn q_pole_order(&self, m: i32, j: usize) -> i64 {
        self.raw_pole_order(m as i64, j).to_i64().expect("validated integrality")
    }

    pub fn b(&self, m: i32, j: usize) -> Rational {
        self.raw_pole_order(m as i64, j) - &self.grading.a[j] * Rational::from_int(m as i64)
    }

    /// `B = max |b_{m,j}|`, exact.
    pub fn bound_b(&self) -> &Rational {
        &self.bound
    }

    pub fn genus(&self) -> u32 {
        self.surface.genus
    }
}

/// `deg D_m = −mN + Σ_j (a_j m + b_{m,j}) + 2K`; always `N + g − 1 + 2K`.
pub fn divisor_degree(cfg: &Configuration, m: i32) -> Result<i64, Error> {
    let s = cfg.surface();
    let q: i64 = (0..s.m()).map(|j| cfg.q_pole_order(m, j)).sum();
    let deg = -(m as i64) * s.n() as i64 + q + 2 * s.k() as i64;
    let expected = s.n() as i64 + s.genus as i64 - 1 + 2 * s.k() as i64;
    if deg != expected {
        return Err(Error::InvalidGrading(format!(
            "deg D_{m} = {deg}, expected N + g − 1 + 2K = {expected}"
        )));
    }
    Ok(deg)
}

/// Small fixed configurations `(N, M, K)` used by the test suites.
pub fn desk_configuration(n: usize, m: usize, k: usize) -> Result<Configuration, Error> {
    let q = |s: &str| s.parse::<Rational>().unwrap();
    let p_points: Vec<Point> = [q("0"), q("-1"), q("1/2")]
        .into_iter()
        .take(n)
        .map(Point::Finite)
        .collect();
    let mut q_points = vec![Point::Infinity];
    q_points.extend([q("3"), q("-3")].into_iter().take(m.saturating_sub(1)).map(Point::Finite));
    let alphas = [([1, 2, -1], [1, 0, 1]), ([2, -1, 1], [0, 1, 1]), ([1, 1, 1], [1, -2, 1])];
    let gammas = [q("1"), q("2"), q("-2")];
    if n == 0 || n > 3 || m == 0 || m > 3 || k > 3 {
        return Err(Error::InvalidSurface(format!("no desk configuration for ({n},{m},{k})")));
    }
    let tyurin = (0..k)
        .map(|s| {
            let (a1, a2) = alphas[s];
            TyurinDatum::new(
                gammas[s].clone(),
                crate::g2::Vec3::from_ints(a1),
                crate::g2::Vec3::from_ints(a2),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let surface = SurfaceSpec {
        genus: 0,
        p_points,
        q_points,
        tyurin,
    };
    let grading = if m == 1 {
        GradingSpec {
            a: vec![Rational::from_int(n as i64)],
            b: BRule::Const(vec![Rational::from_int(n as i64 - 1)]),
        }
    } else {
        GradingSpec {
            a: vec![Rational::new(n as i64, m as i64); m],
            b: BRule::FloorCeil,
        }
    };
    Configuration::new(surface, grading)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        let c = desk_configuration(1, 1, 1).unwrap();
        for m in -3..=3 {
            assert_eq!(divisor_degree(&c, m).unwrap(), 2);
        }
        let c = desk_configuration(2, 1, 2).unwrap();
        assert_eq!(divisor_degree(&c, 0).unwrap(), 5);
    }

    #[test]
    fn half_weights_need_floor_rule() {
        let c = desk_configuration(1, 2, 1).unwrap();
        assert_eq!(c.bound_b(), &Rational::new(1, 2));
        assert_eq!((c.q_pole_order(1, 0), c.q_pole_order(1, 1)), (1, 0));
        assert_eq!((c.q_pole_order(-1, 0), c.q_pole_order(-1, 1)), (0, -1));
        let mut g = c.grading().clone();
        g.b = BRule::Const(vec![Rational::zero(), Rational::zero()]);
        assert!(matches!(
            Configuration::new(c.surface().clone(), g),
            Err(Error::InvalidGrading(_))
        ));
    }

    #[test]
    fn surface_validation() {
        let c = desk_configuration(1, 1, 1).unwrap();
        let mut s = c.surface().clone();
        s.p_points.push(Point::Finite(Rational::one()));
        assert!(s.validate().is_err());
        let mut s = c.surface().clone();
        s.q_points.push(Point::Infinity);
        assert!(s.validate().is_err());
        let mut s = c.surface().clone();
        s.genus = 1;
        assert!(s.validate().is_err());
    }

    #[test]
    fn json_forms() {
        let js = serde_json::json!({"genus":0,"P":["0"],"Q":["inf"],
            "tyurin":[{"gamma":"1","alpha1":["1","0","0"],"alpha2":["0","1","0"]}]});
        let s: SurfaceSpec = serde_json::from_value(js.clone()).unwrap();
        assert_eq!(serde_json::to_value(&s).unwrap(), js);
        let g: GradingSpec = serde_json::from_value(serde_json::json!({"a":["1"],"b":"const:0"})).unwrap();
        assert_eq!(g.b, BRule::Const(vec![Rational::zero()]));
        let c = Configuration::new(s, g).unwrap();
        assert_eq!(c.bound_b(), &Rational::zero());
    }
}
