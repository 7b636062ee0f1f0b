//! Axiom checks on sl₂ and on a single-entry mutation of its bracket.

use dgla::dgla::models::sl2;
use dgla::dgla::{check_dgla, check_structure};
use dgla::scalar::int;

fn main() {
    let l = sl2();
    let r = check_dgla(&l);
    println!("sl2 passes: {}", r.passes());

    let mut t = l.table().clone();
    // [e, f] = 2h, leaving [f, e] = −h
    t.set(0, 0, 0, 1, 2, int(2));
    let bad = check_structure(l.complex(), &t);
    for (axiom, n) in &bad.counts {
        println!("{}: {n} violations", axiom.name());
    }
    if let Some(v) = bad.violations.first() {
        println!("first: {} on {:?}, residual {}", v.axiom.name(), v.basis, l.space().describe(&v.residual));
    }
}
