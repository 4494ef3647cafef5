use std::collections::BTreeMap;

use charstack::exactalg::{MPoly, RatFunc, Scalar, Var};
use proptest::prelude::*;

const VARS: [Var; 4] = [Var::Z, Var::W, Var::Q, Var::T];

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0..3i32, 0..3i32, 0..3i32, 0..3i32), -4i64..=4), 1..4).prop_map(|terms| {
        MPoly::from_terms(terms.into_iter().map(|((a, b, c, d), k)| {
            let mut e = [0; 5];
            for (v, x) in VARS.iter().zip([a, b, c, d]) {
                e[v.index()] = x;
            }
            (e, Scalar::from_integer(k.into()))
        }))
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn point() -> impl Strategy<Value = BTreeMap<Var, Scalar>> {
    prop::array::uniform4(-7i64..=7).prop_map(|xs| {
        VARS.iter()
            .zip(xs)
            .map(|(v, x)| (*v, Scalar::new(x.into(), 3.into())))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &RatFunc::one(), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn canonical_form_is_unique(a in ratfunc(), b in ratfunc()) {
        // Equal values must print identically.
        let lhs = &(&a * &b) / &(&b + &RatFunc::one());
        let rhs = &(&b * &a) / &(&RatFunc::one() + &b);
        prop_assert_eq!(lhs.to_string(), rhs.to_string());
    }

    #[test]
    fn substitute_is_a_homomorphism(a in ratfunc(), b in ratfunc(), image in ratfunc()) {
        let sigma = BTreeMap::from([(Var::Q, image)]);
        let s = |f: &RatFunc| f.substitute(&sigma);
        let (Ok(sa), Ok(sb)) = (s(&a), s(&b)) else { return Ok(()) };
        prop_assert_eq!(s(&(&a + &b)).unwrap(), &sa + &sb);
        prop_assert_eq!(s(&(&a * &b)).unwrap(), &sa * &sb);
    }

    #[test]
    fn eval_commutes_with_substitute(a in ratfunc(), image in ratfunc(), pt in point()) {
        let sigma = BTreeMap::from([(Var::Q, image.clone())]);
        let Ok(sa) = a.substitute(&sigma) else { return Ok(()) };
        let (Ok(lhs), Ok(qv)) = (sa.eval(&pt), image.eval(&pt)) else { return Ok(()) };
        let mut pt2 = pt.clone();
        pt2.insert(Var::Q, qv);
        if let Ok(rhs) = a.eval(&pt2) {
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn frobenius_is_multiplicative(a in ratfunc(), b in ratfunc(), r in 1i32..4) {
        prop_assert_eq!((&a * &b).frobenius(r), &a.frobenius(r) * &b.frobenius(r));
    }
}
