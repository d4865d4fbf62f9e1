use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tmf3_core::classes::{pontryagin_series, RootLaw, TorusClass};
use tmf3_core::lift::sample::random_tmf_class;
use tmf3_core::lift::{witten_genus_series, CharacterSquare, LiftBounds, LiftOutcome};
use tmf3_core::series::{rat, QLaurent, Rational, EXACT};

const BOUNDS: LiftBounds = LiftBounds { q_order: 10, x_degree: 5, max_pole: 1 };

fn square() -> &'static CharacterSquare {
    static S: OnceLock<CharacterSquare> = OnceLock::new();
    S.get_or_init(|| CharacterSquare::for_bounds(&LiftBounds { q_order: 16, ..BOUNDS }).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn square_commutes_on_random_classes(seed in any::<u64>(), m in 1usize..=2, d in 0i64..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_tmf_class(&mut rng, m, 2 * d, 5, 1).unwrap();
        prop_assert!(square().square_commutes(&c).unwrap());
    }

    #[test]
    fn lift_is_stable_in_q_order(seed in any::<u64>(), m in 1usize..=2, d in 0i64..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_tmf_class(&mut rng, m, 2 * d, 5, 1).unwrap();
        let lam = square().miller_character(&c).unwrap();
        let short = square().lift_from_tate(&lam, &BOUNDS).unwrap();
        let long = square().lift_from_tate(&lam, &LiftBounds { q_order: 16, ..BOUNDS }).unwrap();
        prop_assert_eq!(short.lift(), Some(&c));
        prop_assert_eq!(long.lift(), Some(&c));
        prop_assert!(long.certificate.q_order >= short.certificate.q_order);
    }

    #[test]
    fn perturbations_are_rejected(seed in any::<u64>(), e in 1i64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_tmf_class(&mut rng, 2, 4, 5, 1).unwrap();
        let mut lam = square().miller_character(&c).unwrap();
        let kp = pontryagin_series(2, 1, &RootLaw::<QLaurent>::multiplicative(5), 5).unwrap().remove(0);
        lam.series = lam.series.add(&kp.scale(&QLaurent::monomial(rat(1, 1), e, EXACT))).unwrap();
        let rep = square().lift_from_tate(&TorusClass::new(lam.series, 4).unwrap(), &BOUNDS).unwrap();
        prop_assert!(matches!(rep.outcome, LiftOutcome::NotLiftable(_)), "{:?}", rep.outcome);
    }
}

/// Â-genus in Pontryagin numbers through dimension 16.
fn a_hat(numbers: &BTreeMap<Vec<u32>, i64>, dim: u32) -> Rational {
    let n = |p: &[u32]| rat(*numbers.get(p).unwrap_or(&0), 1);
    match dim {
        4 => -n(&[1]) / rat(24, 1),
        8 => (n(&[2]) * rat(-4, 1) + n(&[1, 1]) * rat(7, 1)) / rat(5760, 1),
        12 => (n(&[3]) * rat(-16, 1) + n(&[1, 2]) * rat(44, 1) - n(&[1, 1, 1]) * rat(31, 1)) / rat(967680, 1),
        16 => {
            (n(&[4]) * rat(-192, 1) + n(&[1, 3]) * rat(512, 1) + n(&[2, 2]) * rat(208, 1)
                - n(&[1, 1, 2]) * rat(904, 1)
                + n(&[1, 1, 1, 1]) * rat(381, 1))
                / rat(464486400, 1)
        }
        _ => unreachable!(),
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n.min(max) {
        for mut rest in partitions(n - first, first) {
            rest.push(first);
            rest.sort();
            out.push(rest);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn witten_constant_term_is_a_hat(k in 1u32..=4, values in prop::collection::vec(-500i64..500, 5)) {
        let numbers: BTreeMap<Vec<u32>, i64> = partitions(k, k).into_iter().zip(values).collect();
        let w = witten_genus_series(&numbers, 4 * k, 3).unwrap();
        prop_assert_eq!(w.coeff(0).unwrap(), a_hat(&numbers, 4 * k));
    }
}
