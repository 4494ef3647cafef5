//! Basis changes, plethystic Exp/Log and the Hall pairing.

use charstack::exactalg::{rf, RatFunc};
use charstack::partitions::Partition;
use charstack::symfunc::{Basis, SymFunc};

fn show(label: &str, f: &SymFunc, basis: Basis) {
    let terms: Vec<String> = f
        .in_basis(basis)
        .into_iter()
        .map(|(key, c)| format!("({c})*{basis:?}{}", key[0]))
        .collect();
    println!("{label} = {}", terms.join(" + "));
}

fn main() {
    let lam: Partition = "(2,1)".parse().unwrap();
    let s21 = SymFunc::basis_element(Basis::S, std::slice::from_ref(&lam), 4).unwrap();
    for basis in [Basis::M, Basis::H, Basis::E, Basis::P] {
        show("s(2,1)", &s21, basis);
    }

    // Exp[q p_1] = Σ q^n h_n, and Log inverts it.
    let p1 = SymFunc::basis_element(Basis::P, &[Partition::row(1)], 4)
        .unwrap()
        .scale(&rf("q"));
    let e = p1.ple_exp().unwrap();
    show("Exp[q p1]", e.as_symfunc(), Basis::H);
    assert_eq!(e.ple_log(), p1);

    let pair = s21.hall_pair_h(&[lam]);
    println!("<s21, h21> = {pair}");
    assert_eq!(pair, RatFunc::one());
}
