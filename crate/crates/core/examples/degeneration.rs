//! Degeneration property, E₁ degeneration and the checkable consequences.

use dgla::dbv::models::{bigraded_e1, koszul, koszul_zero_delta};
use dgla::dbv::{dbv_theorem_consequences, degeneration_check, e1_check, Degeneration};

fn main() -> dgla::Result<()> {
    for (name, b) in [("Koszul", koszul(2)), ("Koszul, Δ = 0", koszul_zero_delta(2)), ("bigraded", bigraded_e1())] {
        match degeneration_check(&b, None)? {
            Degeneration::Degenerate { chains } => println!("{name}: degenerate, {} chains", chains.len()),
            Degeneration::Fails { a0, step } => {
                println!("{name}: fails from a0 = {} at step {step}", b.space().describe(&a0))
            }
        }
        let c = dbv_theorem_consequences(&b, 3)?;
        println!("  consequences pass: {}", c.passes());
    }
    let e1 = e1_check(&bigraded_e1())?;
    println!("bigraded: columns {:?}, Tot {:?}, E₁ degenerates {}", e1.columns, e1.tot, e1.degenerates);
    Ok(())
}
