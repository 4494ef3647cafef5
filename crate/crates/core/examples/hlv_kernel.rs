//! The functions HH_{mu,m}(z,w) extracted from the kernel series.

use charstack::hlvkernel::{hlv_hh, hook_h};
use charstack::partitions::MultiPartition;

fn main() {
    println!("hook H_(2,1), m = 2: {}", hook_h(2, &"(2,1)".parse().unwrap()));
    for mu in ["(1)", "(2)", "(1,1)", "(3)", "(2,1)", "(1)|(1)", "(2)|(1,1)"] {
        let mu: MultiPartition = mu.parse().unwrap();
        for m in 1..=3 {
            let v = hlv_hh(&mu, m).unwrap();
            let tag = if v.is_polynomial() { "" } else { "  (not polynomial)" };
            println!("HH[{mu}, m={m}] = {v}{tag}");
        }
    }
}
