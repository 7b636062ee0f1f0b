//! Čech model of two opens, its total complex, and the Thom-Whitney totalization.

use dgla::dgla::models::abelian;
use dgla::simplicial::{cech_to_semicosimplicial, integration_is_quasi_iso, CechInput, TwComplex};

fn main() -> dgla::Result<()> {
    let q = abelian(&[(0, 1)]);
    let sc = cech_to_semicosimplicial(&CechInput::uniform(2, &q, None))?;
    let tot = sc.tot();
    println!("Tot: d^0 = {:?}, H = {:?}", tot.complex.d_block(0), tot.complex.betti());
    for p in 1..=3 {
        let tw = TwComplex::new(&sc, p)?;
        println!(
            "P = {p}: TW dims {:?}, H = {:?}, integration quasi-iso {}",
            tw.complex().space().dims(),
            tw.complex().betti(),
            integration_is_quasi_iso(&tw)?
        );
    }
    Ok(())
}
