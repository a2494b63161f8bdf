//! Seeded generation of small exact test values.
//!
//! All randomness in the crate flows from a single [`ChaCha8Rng`] so that a
//! seed reproduces every sampled datum, jet and basis combination.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::Rational;
use crate::g2::{G2Element, Mat3, Vec3};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(rng: &mut Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

/// Numerator in `[-4, 4]`, denominator in `[1, 3]`.
pub fn rational(rng: &mut Rng) -> Rational {
    let n = rng.gen_range(-4..=4);
    let d = rng.gen_range(1..=3);
    Rational::new(n, d)
}

pub fn nonzero_rational(rng: &mut Rng) -> Rational {
    loop {
        let r = rational(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

pub fn vec3(rng: &mut Rng) -> Vec3 {
    Vec3(std::array::from_fn(|_| rational(rng)))
}

pub fn int_vec3(rng: &mut Rng, bound: i64) -> Vec3 {
    Vec3(std::array::from_fn(|_| Rational::from_int(int(rng, -bound, bound))))
}

pub fn traceless(rng: &mut Rng) -> Mat3 {
    let mut m = Mat3(std::array::from_fn(|_| std::array::from_fn(|_| rational(rng))));
    let t = &m[(0, 0)] + &m[(1, 1)];
    m[(2, 2)] = -t;
    m
}

pub fn g2_element(rng: &mut Rng) -> G2Element {
    let a1 = vec3(rng);
    let a2 = vec3(rng);
    G2Element::from_parts(a1, a2, traceless(rng))
}
