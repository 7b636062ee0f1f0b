//! The Koszul dBV model: axioms, derived bracket, and the 1/t Cartan homotopy on a window.

use dgla::cartan::check_calculus;
use dgla::dbv::models::{koszul, non_square_zero};
use dgla::dbv::{cartan_over_t, check_dbv, derived_dgla};
use dgla::dgla::{bracket_on_cohomology, check_dgla};

fn main() -> dgla::Result<()> {
    let b = koszul(3);
    let r = check_dbv(&b);
    for (axiom, (checked, failed)) in &r.counts {
        println!("{}: {checked} checked, {failed} failed", axiom.name());
    }
    let g = derived_dgla(&b)?;
    let xi = g.basis(0, 0);
    let x = g.basis(-1, 1);
    println!("[ξ, x] = {}", g.space().describe(&g.bracket(&xi, &x)));
    println!("derived DGLA passes: {}, cohomology bracket zero: {}", check_dgla(&g).passes(), bracket_on_cohomology(&g)?.is_zero());

    let c = cartan_over_t(&b, -2, 2)?;
    println!("Cartan identities on [-2, 2]: {}, closed-form mismatches: {}", check_calculus(&c).passes(), c.closed_form_mismatches().len());

    let bad = check_dbv(&non_square_zero());
    if let Some(v) = bad.first_failure() {
        println!("Λ[ξ1, ξ2]: {} fails at {:?}", v.axiom.name(), v.basis);
    }
    Ok(())
}
