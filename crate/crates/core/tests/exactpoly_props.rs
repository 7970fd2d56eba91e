use num_traits::Zero;
use proptest::prelude::*;
use torusknot::exactpoly::{
    count_roots, int, isolate_roots, pow2_inv, rat, refine, Poly, Rational,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=64).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 1..=max_deg + 1).prop_map(Poly::new)
}

/// Roots `k/16` in `[-2, 2]`, with repetition allowed.
fn roots() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-32i64..=32, 1..8)
}

fn from_roots(r: &[i64]) -> Poly {
    r.iter().fold(Poly::one(), |acc, &k| {
        &acc * &Poly::new(vec![rat(-k, 16), int(1)])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counts_distinct_linear_factors(r in roots(), extra in prop::collection::vec(3i64..9, 0..3)) {
        // Extra factors t² + e have no real roots.
        let mut p = from_roots(&r);
        for e in &extra {
            p = &p * &Poly::from_ints(&[*e, 0, 1]);
        }
        let mut distinct = r.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let inside = distinct.iter().filter(|&&k| k > -32 && k < 32).count();
        prop_assert_eq!(count_roots(&p, &int(-2), &int(2)).unwrap(), inside);
        let in_unit = distinct.iter().filter(|&&k| k > -16 && k < 16).count();
        prop_assert_eq!(count_roots(&p, &int(-1), &int(1)).unwrap(), in_unit);
    }

    #[test]
    fn count_is_additive(p in poly(8), a in rational(), w1 in 1i64..100, w2 in 1i64..100) {
        prop_assume!(!p.is_zero() && p.degree() != Some(0));
        let b = &a + rat(w1, 16);
        let c = &b + rat(w2, 16);
        prop_assume!(!p.eval(&b).is_zero());
        let ab = count_roots(&p, &a, &b).unwrap();
        let bc = count_roots(&p, &b, &c).unwrap();
        prop_assert_eq!(ab + bc, count_roots(&p, &a, &c).unwrap());
    }

    #[test]
    fn squarefree_preserves_counts(p in poly(6), a in rational(), w in 1i64..100) {
        prop_assume!(!p.is_zero());
        let b = &a + rat(w, 8);
        let sq = &p * &p;
        prop_assert_eq!(
            count_roots(&sq.squarefree_part(), &a, &b).unwrap(),
            count_roots(&p.squarefree_part(), &a, &b).unwrap()
        );
    }

    #[test]
    fn compose_is_evaluation(p in poly(5), q in poly(4), a in rational()) {
        prop_assert_eq!(p.compose(&q).eval(&a), p.eval(&q.eval(&a)));
    }

    #[test]
    fn division_identity(p in poly(8), d in poly(4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, p);
        if let (Some(rd), Some(dd)) = (r.degree(), d.degree()) {
            prop_assert!(rd < dd);
        }
    }

    #[test]
    fn gcd_of_products(r1 in roots(), r2 in roots()) {
        let mut common: Vec<i64> = r1.iter().filter(|k| r2.contains(k)).copied().collect();
        common.sort_unstable();
        common.dedup();
        // Multiplicity of a shared root k in the gcd is min of the two multiplicities.
        let mult = |v: &[i64], k: i64| v.iter().filter(|&&x| x == k).count();
        let want: Vec<i64> = common
            .iter()
            .flat_map(|&k| std::iter::repeat(k).take(mult(&r1, k).min(mult(&r2, k))))
            .collect();
        prop_assert_eq!(from_roots(&r1).gcd(&from_roots(&r2)), from_roots(&want));
    }

    #[test]
    fn isolation_brackets_each_root(r in roots()) {
        let p = from_roots(&r);
        let mut distinct: Vec<i64> = r.iter().copied().filter(|&k| k > -32 && k < 32).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let ivs = isolate_roots(&p, &int(-2), &int(2)).unwrap();
        prop_assert_eq!(ivs.len(), distinct.len());
        for (iv, &k) in ivs.iter().zip(&distinct) {
            let fine = refine(&p, iv, &pow2_inv(30)).unwrap();
            prop_assert!(fine.contains(&rat(k, 16)));
            prop_assert!(fine.width() <= pow2_inv(30));
        }
    }
}
