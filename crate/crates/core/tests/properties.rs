//! Property tests over small random rationals.

use laxg2_core::exact::{solve_affine, Matrix};
use laxg2_core::g2::{bracket, embed, cross, DIM, skew, trace_form};
use laxg2_core::jets::{convolve, jet_commutator, jet_derivative, jet_product, trace_jet, ProductJet};
use laxg2_core::random;
use laxg2_core::tyurin::{
    admissible_jet_basis, check_order_minus2, is_admissible, order_minus2_element, random_combination,
};
use laxg2_core::{G2Element, Mat3, MatrixJet, Rational, TyurinDatum, Vec3};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn vec3() -> impl Strategy<Value = Vec3> {
    [rational(), rational(), rational()].prop_map(Vec3)
}

fn traceless() -> impl Strategy<Value = Mat3> {
    proptest::collection::vec(rational(), 8).prop_map(|v| {
        let t = &v[0] + &v[4];
        Mat3([
            [v[0].clone(), v[1].clone(), v[2].clone()],
            [v[3].clone(), v[4].clone(), v[5].clone()],
            [v[6].clone(), v[7].clone(), -t],
        ])
    })
}

fn element() -> impl Strategy<Value = G2Element> {
    (vec3(), vec3(), traceless()).prop_map(|(a1, a2, a)| G2Element::new(a1, a2, a).unwrap())
}

fn jet(max_len: usize) -> impl Strategy<Value = MatrixJet> {
    (-2i32..=1, proptest::collection::vec(element(), 1..=max_len))
        .prop_map(|(lo, c)| MatrixJet::new(lo, c).unwrap())
}

/// Nonzero orthogonal integer pair.
fn datum() -> impl Strategy<Value = TyurinDatum> {
    ([-3i64..=3, -3i64..=3, -3i64..=3], [-3i64..=3, -3i64..=3, -3i64..=3])
        .prop_filter_map("degenerate", |(a, v)| {
            let a1 = Vec3::from_ints(a);
            let a2 = cross(&a1, &Vec3::from_ints(v));
            TyurinDatum::new(Rational::zero(), a1, a2).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(x in element(), y in element(), z in element(), c in rational()) {
        prop_assert_eq!(bracket(&x, &y), -&bracket(&y, &x));
        let lhs = bracket(&(&x.scale(&c) + &y), &z);
        let rhs = &bracket(&x, &z).scale(&c) + &bracket(&y, &z);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi(x in element(), y in element(), z in element()) {
        let j = &(&bracket(&x, &bracket(&y, &z)) + &bracket(&y, &bracket(&z, &x))) + &bracket(&z, &bracket(&x, &y));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn trace_form_is_invariant(x in element(), y in element(), z in element()) {
        prop_assert_eq!(trace_form(&bracket(&x, &y), &z), trace_form(&x, &bracket(&y, &z)));
        prop_assert_eq!(trace_form(&x, &y), trace_form(&y, &x));
    }

    #[test]
    fn skew_relations(x in vec3(), y in vec3(), a in traceless()) {
        prop_assert_eq!(skew(&x).mul_vec(&y), cross(&x, &y));
        let e = Mat3::identity().scale(&x.dot(&y));
        prop_assert_eq!(&skew(&x) * &skew(&y), &y.outer(&x) - &e);
        prop_assert_eq!(-&skew(&a.mul_vec(&x)), &(&a.transpose() * &skew(&x)) + &(&skew(&x) * &a));
    }

    #[test]
    fn coordinates_round_trip(x in element()) {
        let c = x.coords();
        prop_assert_eq!(c.len(), DIM);
        prop_assert_eq!(G2Element::from_coords(&c), x);
    }

    #[test]
    fn rank_plus_nullity(rows in proptest::collection::vec(proptest::collection::vec(rational(), 5), 1..5)) {
        let m = Matrix::from_rows(rows, 5);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), 5);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn affine_solutions_solve(rows in proptest::collection::vec(proptest::collection::vec(rational(), 4), 1..5),
                              x in proptest::collection::vec(rational(), 4)) {
        let m = Matrix::from_rows(rows, 4);
        let b = m.mul_vec(&x);
        let sol = solve_affine(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&sol.particular), b);
        prop_assert_eq!(sol.kernel.len(), 4 - m.rank());
    }

    #[test]
    fn rational_strings_round_trip(r in rational()) {
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn commutator_window_and_leibniz(x in jet(4), y in jet(4)) {
        let c = jet_commutator(&x, &y).unwrap();
        prop_assert_eq!(c.lo(), x.lo() + y.lo());
        prop_assert_eq!(c.hi(), (x.hi() + y.lo()).min(y.hi() + x.lo()));
        let lhs = jet_derivative(&c);
        let rhs = jet_commutator(&jet_derivative(&x), &y).unwrap().add(&jet_commutator(&x, &jet_derivative(&y)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn product_is_associative(x in jet(3), y in jet(3), z in jet(3)) {
        let xy = jet_product(&x, &y).unwrap();
        let yz = jet_product(&y, &z).unwrap();
        let ez = z.map(embed);
        let ex = x.map(embed);
        let mul = |a: &ProductJet, b: &ProductJet| convolve(a, b, |p, q| p * q).unwrap();
        prop_assert_eq!(mul(&xy, &ez), mul(&ex, &yz));
    }

    #[test]
    fn trace_of_commutator_vanishes(x in jet(3), y in jet(3)) {
        let d = jet_product(&x, &y).unwrap().sub(&jet_product(&y, &x).unwrap()).unwrap();
        prop_assert!(trace_jet(&d).unwrap().is_zero());
    }

    #[test]
    fn admissible_jets_form_a_subspace(d in datum(), seed in any::<u64>(), c in rational()) {
        let basis = admissible_jet_basis(&d, 2).unwrap();
        prop_assert_eq!(basis.len(), 14 * 5 - 28);
        let mut rng = random::rng(seed);
        let x = random_combination(&basis, &mut rng, 2);
        let y = random_combination(&basis, &mut rng, 2);
        let s = x.scale(&c).add(&y).unwrap();
        prop_assert!(is_admissible(&s, &d).passed());
        let (px, py, ps) = (
            is_admissible(&x, &d).params.unwrap(),
            is_admissible(&y, &d).params.unwrap(),
            is_admissible(&s, &d).params.unwrap(),
        );
        prop_assert_eq!(ps.mu, &c * &px.mu + py.mu);
        prop_assert_eq!(ps.kappa1, &c * &px.kappa1 + py.kappa1);
    }

    #[test]
    fn order_minus2_reads_mu(d in datum(), mu in rational()) {
        prop_assert_eq!(check_order_minus2(&order_minus2_element(&d, &mu), &d).unwrap(), mu);
    }
}
