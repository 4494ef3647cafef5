use charstack::exactalg::{rf, RatFunc};
use charstack::partitions::{enumerate, enumerate_up_to, Partition};
use charstack::symfunc::{Basis, Key, SymFunc};
use proptest::prelude::*;

const BASES: [Basis; 5] = [Basis::M, Basis::H, Basis::E, Basis::P, Basis::S];

fn coeff() -> impl Strategy<Value = RatFunc> {
    prop::sample::select(vec!["0", "1", "-2", "q", "t - 1", "q*t/(1 - q)", "z^2 - w", "1/3"])
        .prop_map(rf)
}

/// Random element of degree ≤ `bound` in one alphabet with zero constant term.
fn symfunc(bound: usize) -> impl Strategy<Value = SymFunc> {
    let keys: Vec<Partition> = enumerate_up_to(bound).into_iter().filter(|p| !p.is_empty()).collect();
    let len = keys.len();
    (prop::sample::select(BASES.to_vec()), prop::collection::vec(coeff(), len)).prop_map(
        move |(basis, cs)| {
            SymFunc::from_basis(1, bound, basis, keys.iter().cloned().map(|p| vec![p]).zip(cs)).unwrap()
        },
    )
}

fn hall(f: &SymFunc, g: &SymFunc) -> RatFunc {
    let gp = g.in_basis(Basis::P);
    let mut acc = RatFunc::zero();
    for (key, c) in f.in_basis(Basis::P) {
        if let Some(d) = gp.get(&key) {
            acc = &acc + &(&(&c * d).scale(&key[0].zlambda()));
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_log_inverse(f in symfunc(4)) {
        let e = f.ple_exp().unwrap();
        prop_assert_eq!(e.ple_log(), f);
    }

    #[test]
    fn plethysm_is_a_ring_map(f in symfunc(4), g in symfunc(4), r in 1usize..4) {
        prop_assert_eq!(f.mul(&g).plethysm_pr(r), f.plethysm_pr(r).mul(&g.plethysm_pr(r)));
        prop_assert_eq!(f.add(&g).plethysm_pr(r), f.plethysm_pr(r).add(&g.plethysm_pr(r)));
    }

    #[test]
    fn exp_turns_sums_into_products(f in symfunc(3), g in symfunc(3)) {
        let lhs = f.add(&g).ple_exp().unwrap().into_symfunc();
        let rhs = f.ple_exp().unwrap().into_symfunc().mul(&g.ple_exp().unwrap().into_symfunc());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_round_trip(n in 1usize..=5, basis in prop::sample::select(BASES.to_vec()), seed in prop::collection::vec(coeff(), 7)) {
        let coeffs: Vec<(Key, RatFunc)> = enumerate(n)
            .into_iter()
            .zip(seed.into_iter().cycle())
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (vec![p], c))
            .collect();
        let f = SymFunc::from_basis(1, n, basis, coeffs.clone()).unwrap();
        let back: Vec<(Key, RatFunc)> = f.in_basis(basis).into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut want = coeffs;
        want.sort_by(|a, b| a.0.cmp(&b.0));
        prop_assert_eq!(back, want);
    }
}

#[test]
fn hall_duality() {
    for n in 1..=5 {
        let parts = enumerate(n);
        for lam in &parts {
            let s = SymFunc::basis_element(Basis::S, &[lam.clone()], n).unwrap();
            let m = SymFunc::basis_element(Basis::M, &[lam.clone()], n).unwrap();
            for mu in &parts {
                let s2 = SymFunc::basis_element(Basis::S, &[mu.clone()], n).unwrap();
                let h = SymFunc::basis_element(Basis::H, &[mu.clone()], n).unwrap();
                let delta = if lam == mu { RatFunc::one() } else { RatFunc::zero() };
                assert_eq!(hall(&s, &s2), delta, "<s{lam}, s{mu}>");
                assert_eq!(hall(&m, &h), delta, "<m{lam}, h{mu}>");
                assert_eq!(m.hall_pair_h(&[mu.clone()]), delta);
            }
        }
    }
}

#[test]
fn two_alphabets() {
    let a = SymFunc::basis_element(Basis::S, &["(1)".parse().unwrap()], 2).unwrap().scale(&rf("q"));
    let b = SymFunc::basis_element(Basis::P, &["(1)".parse().unwrap()], 2).unwrap();
    let f = a.tensor(&b);
    assert_eq!(f.k(), 2);
    assert_eq!(f.ple_exp().unwrap().ple_log(), f);
}
