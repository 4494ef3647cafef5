//! Exact rational functions in z, w, q, t, u.

use std::collections::BTreeMap;

use charstack::exactalg::{gcd, rf, RatFunc, Scalar, Var};

fn main() {
    let a = rf("(q*t^2 + t)^2/(q*t^2 - 1)");
    let b = rf("q*t^2 + t");
    println!("a     = {a}");
    println!("a - b = {}", &a - &b);
    println!("a / b = {}", &a / &b);
    println!("latex: {}", a.to_latex());

    let at_minus_one = a
        .substitute(&BTreeMap::from([(Var::T, RatFunc::from_int(-1))]))
        .unwrap();
    println!("a(t = -1) = {at_minus_one}");

    let point = BTreeMap::from([(Var::Q, Scalar::from_integer(5.into())), (Var::T, Scalar::from_integer((-1).into()))]);
    println!("a(q = 5, t = -1) = {}", a.eval(&point).unwrap());

    let f = rf("(z - w)^3*(z + 1)").as_polynomial().unwrap();
    let g = rf("(z - w)^2*(z - 1)").as_polynomial().unwrap();
    println!("gcd = {}", gcd(&f, &g));
}
