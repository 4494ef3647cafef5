//! The r = 2 central-orbit mixed series that is not a polynomial.

use std::collections::BTreeMap;

use charstack::exactalg::{Scalar, Var};
use charstack::series::counterexample_report;

fn main() {
    for n in 2..=4usize {
        let d = 2;
        let rep = counterexample_report(n, d).unwrap();
        println!("n = {n}: {}", rep.value);
        println!(
            "  matches (qt^2+t)^2/(qt^2-1): {}, differs from qt^2+t: {}, t=-1 gives q-1: {}",
            rep.matches_carlsson_value, rep.differs_from_conjectured, rep.e_series_is_q_minus_1
        );
        let at = BTreeMap::from([(Var::Q, Scalar::from_integer(7.into())), (Var::T, Scalar::from_integer((-1).into()))]);
        println!("  value at q = 7, t = -1: {}", rep.report.value().eval(&at).unwrap());
    }
}
