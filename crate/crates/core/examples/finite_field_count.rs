//! Brute-force groupoid counts over F_q checked against the E-series.

use charstack::ffcount::{count_nonorientable, count_orientable, CountOptions, FqOrbit};
use charstack::series::{eseries, eval_at_q};

fn main() {
    let opts = CountOptions::default();
    let cases: [(bool, u32, usize, u32, FqOrbit); 5] = [
        (false, 3, 1, 7, FqOrbit::central(1)),
        (false, 1, 2, 5, FqOrbit::central(-1)),
        (false, 2, 2, 3, FqOrbit::central(-1)),
        (false, 2, 2, 3, FqOrbit::central(1)),
        (true, 1, 2, 3, FqOrbit::central(-1)),
    ];
    for (orientable, genus, n, q, orbit) in cases {
        let report = if orientable {
            count_orientable(genus, &[orbit], q, n, opts)
        } else {
            count_nonorientable(genus, &[orbit], q, n, opts)
        }
        .unwrap();
        let formula = eseries(&report.surface, &report.mu)
            .and_then(|e| eval_at_q(&e, q as i64))
            .unwrap();
        let report = report.with_formula(formula);
        print!("{}", report.to_text());
    }
}
