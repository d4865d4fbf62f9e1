use proptest::prelude::*;
use tmf3_core::curve::{fgl_from_curve, formal_inverse, formal_log, typicalize_2, WeierstrassCurve};
use tmf3_core::series::{rat, Coeff, MultiSeries, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn level3_law_axioms(a1 in small_rational(), a3 in small_rational()) {
        let c = WeierstrassCurve::gamma1_3(a1, a3);
        let f = fgl_from_curve(&c, 7).unwrap();
        prop_assert!(f.satisfies_unit());
        prop_assert!(f.is_commutative());
        prop_assert!(f.is_associative().unwrap());
    }

    #[test]
    fn general_curve_law_axioms(a in prop::collection::vec(small_rational(), 5)) {
        let c = WeierstrassCurve::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone());
        let f = fgl_from_curve(&c, 6).unwrap();
        prop_assert!(f.satisfies_unit());
        prop_assert!(f.is_commutative());
        prop_assert!(f.is_associative().unwrap());
    }

    #[test]
    fn log_is_a_homomorphism(a1 in small_rational(), a3 in small_rational()) {
        let c = WeierstrassCurve::gamma1_3(a1, a3);
        let f = fgl_from_curve(&c, 7).unwrap();
        let log = formal_log(&f).unwrap();
        let vars = f.series().vars().to_vec();
        let x = MultiSeries::variable(vars.clone(), 7, 0);
        let y = MultiSeries::variable(vars, 7, 1);
        let lhs = MultiSeries::compose(&log, f.series()).unwrap();
        let rhs = MultiSeries::compose(&log, &x).unwrap().add(&MultiSeries::compose(&log, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_cancels(a1 in small_rational(), a3 in small_rational()) {
        let c = WeierstrassCurve::gamma1_3(a1, a3);
        let f = fgl_from_curve(&c, 7).unwrap();
        let i = formal_inverse(&f, &c).unwrap();
        prop_assert_eq!(&i, &f.inverse().unwrap());
        let t = MultiSeries::variable(i.vars().to_vec(), 7, 0);
        prop_assert!(f.apply(&t, &i).unwrap().vanishes());
    }

    #[test]
    fn hazewinkel_specializes(a1 in small_rational(), a3 in small_rational()) {
        let c = WeierstrassCurve::gamma1_3(a1.clone(), a3.clone());
        let d = typicalize_2(&fgl_from_curve(&c, 8).unwrap()).unwrap();
        prop_assert_eq!(d.v1, a1);
        prop_assert_eq!(d.v2, a3);
    }

    #[test]
    fn discriminant_formula(a1 in small_rational(), a3 in small_rational()) {
        let c = WeierstrassCurve::gamma1_3(a1.clone(), a3.clone());
        let expect = a3.pow(3).times(&a1.pow(3).minus(&a3.scale(&rat(27, 1))));
        prop_assert_eq!(c.discriminant(), expect);
    }
}
