use proptest::prelude::*;
use tmf3_core::series::{rat, solve_exact, Coeff, LinearSystem, MultiSeries, QLaurent, Rational, Solution};

fn laurent() -> impl Strategy<Value = QLaurent> {
    (-3i64..3, prop::collection::vec(-5i64..=5, 0..8), 4i64..12)
        .prop_map(|(low, cs, len)| QLaurent::new(low, cs.into_iter().map(|c| rat(c, 1)).collect(), low + len))
}

fn bivariate() -> impl Strategy<Value = MultiSeries<Rational>> {
    prop::collection::vec(((0u32..4, 0u32..4), -4i64..=4), 0..10).prop_map(|ts| {
        let vars = vec!["x".to_string(), "y".to_string()];
        MultiSeries::from_terms(vars, 6, ts.into_iter().map(|((a, b), c)| (vec![a, b], rat(c, 1))))
    })
}

/// `x + c2 x^2 + ...`
fn tangent_to_identity() -> impl Strategy<Value = MultiSeries<Rational>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 0..6).prop_map(|cs| {
        let mut coeffs = vec![rat(0, 1), rat(1, 1)];
        coeffs.extend(cs.into_iter().map(|(n, d)| rat(n, d)));
        MultiSeries::univariate("x", 8, coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert!(a.times(&b).times(&c).agrees(&a.times(&b.times(&c))));
        prop_assert!(a.times(&b.plus(&c)).agrees(&a.times(&b).plus(&a.times(&c))));
        prop_assert!(a.minus(&a).vanishes());
    }

    #[test]
    fn laurent_inverse(a in laurent()) {
        if let Some(inv) = a.try_recip() {
            let one = a.times(&inv);
            prop_assert!(one.agrees(&QLaurent::one()));
        } else {
            prop_assert!(a.vanishes());
        }
    }

    #[test]
    fn multi_ring_axioms(a in bivariate(), b in bivariate(), c in bivariate()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reverse_is_two_sided(f in tangent_to_identity()) {
        let g = f.reverse().unwrap();
        let x = MultiSeries::variable(vec!["x".to_string()], 8, 0);
        prop_assert_eq!(MultiSeries::compose(&f, &g).unwrap(), x.clone());
        prop_assert_eq!(MultiSeries::compose(&g, &f).unwrap(), x);
    }

    #[test]
    fn exp_log_inverse(f in tangent_to_identity()) {
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f);
    }
}

fn det(m: &[Vec<Rational>]) -> Rational {
    // Leibniz expansion
    let n = m.len();
    let mut total = rat(0, 1);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, m: &[Vec<Rational>], total: &mut Rational) {
    if k == p.len() {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = rat(if inversions % 2 == 0 { 1 } else { -1 }, 1);
        for (i, &j) in p.iter().enumerate() {
            term *= &m[i][j];
        }
        *total += term;
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, m, total);
        p.swap(k, i);
    }
}

fn square_system() -> impl Strategy<Value = (Vec<Vec<Rational>>, Vec<Rational>)> {
    let row = prop::collection::vec(-2i64..=2, 5);
    (prop::collection::vec(row, 5), prop::collection::vec(-3i64..=3, 5), any::<bool>()).prop_map(|(m, b, dup)| {
        let mut m: Vec<Vec<Rational>> = m.into_iter().map(|r| r.into_iter().map(|c| rat(c, 1)).collect()).collect();
        if dup {
            m[4] = m[0].iter().zip(&m[1]).map(|(a, b)| a + b).collect();
        }
        (m, b.into_iter().map(|c| rat(c, 1)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solve_matches_cramer((m, b) in square_system()) {
        let out = solve_exact(&LinearSystem::new(m.clone(), b.clone(), 5).unwrap());
        let d = det(&m);
        if d != rat(0, 1) {
            prop_assert_eq!(out.rank, 5);
            let expected: Vec<Rational> = (0..5)
                .map(|j| {
                    let mut mj = m.clone();
                    for (i, row) in mj.iter_mut().enumerate() {
                        row[j] = b[i].clone();
                    }
                    det(&mj) / &d
                })
                .collect();
            prop_assert_eq!(out.solution, Solution::Unique(expected));
        } else {
            prop_assert!(out.rank < 5);
            match out.solution {
                Solution::Family { particular, kernel, .. } => {
                    prop_assert_eq!(kernel.len(), 5 - out.rank);
                    for (row, rhs) in m.iter().zip(&b) {
                        let lhs: Rational = row.iter().zip(&particular).map(|(a, x)| a * x).sum();
                        prop_assert_eq!(&lhs, rhs);
                        for k in &kernel {
                            let v: Rational = row.iter().zip(k).map(|(a, x)| a * x).sum();
                            prop_assert_eq!(v, rat(0, 1));
                        }
                    }
                }
                Solution::Inconsistent { row_combination, residual } => {
                    for j in 0..5 {
                        let col: Rational = row_combination.iter().zip(&m).map(|(r, row)| r * &row[j]).sum();
                        prop_assert_eq!(col, rat(0, 1));
                    }
                    let res: Rational = row_combination.iter().zip(&b).map(|(r, x)| r * x).sum();
                    prop_assert_eq!(&res, &residual);
                    prop_assert!(residual != rat(0, 1));
                }
                Solution::Unique(_) => prop_assert!(false, "singular system reported unique"),
            }
        }
    }
}
