//! Macdonald P and modified H̃ polynomials, and a cache round trip.

use charstack::macdonald::{qt_inner, MacdonaldTable};
use charstack::partitions::{enumerate, Partition};
use charstack::symfunc::Basis;

fn main() {
    let table = MacdonaldTable::new();
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for mu in enumerate(n) {
        let h = table.modified_h(&mu).unwrap();
        let terms: Vec<String> = h
            .in_basis(Basis::S)
            .into_iter()
            .map(|(key, c)| format!("({c}) s{}", key[0]))
            .collect();
        println!("H~{mu} = {}", terms.join(" + "));
    }

    let a: Partition = "(2,1)".parse().unwrap();
    let b: Partition = "(3)".parse().unwrap();
    let pa = table.macdonald_p(&a);
    println!("<P21, P3>_(q,t) = {}", qt_inner(&pa, &table.macdonald_p(&b)));
    println!("<P21, P21>_(q,t) = {}", qt_inner(&pa, &pa));

    let dump = table.dump();
    let restored = MacdonaldTable::new().restore(&dump).unwrap();
    println!("cache dump: {} bytes, {restored} entries restored", dump.len());
}
