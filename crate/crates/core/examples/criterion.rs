//! The injectivity criterion on three calculi and the semiregularity check on the nilpotent one.

use dgla::artinian::ArtinianAlgebra;
use dgla::cartan::models::{abelian_calculus, log_model, nilpotent_calculus};
use dgla::cartan::{injectivity_criterion, semiregularity_check};
use dgla::mc::{mc_lift, Tensor};
use dgla::scalar;

fn main() -> dgla::Result<()> {
    for m in [log_model(3), abelian_calculus(), nilpotent_calculus()] {
        let r = injectivity_criterion(&m.calculus, &m.filtration, 2)?;
        let v = r.verdict(&m.calculus)?;
        println!(
            "{}: rank {}/{} on cohomology, F and G/F injective ({}, {}), verdict {}",
            m.name,
            r.rank,
            r.lie_cohomology_dim,
            r.top_inclusion_injective,
            r.quotient_inclusion_injective,
            v.name()
        );
    }
    let m = nilpotent_calculus();
    let l = &m.calculus.lie;
    let a = ArtinianAlgebra::polynomial(3);
    let seed = Tensor::simple(l, &a, &l.basis(1, 0).add(&l.basis(1, 1)), a.index_of("s").expect("s"));
    if let Some(o) = mc_lift(l, &a, &seed)?.obstruction() {
        let s = semiregularity_check(&m.calculus, &m.filtration, o)?;
        let images: Vec<Vec<String>> = s.images.iter().map(|v| v.iter().map(scalar::format).collect()).collect();
        println!("obstruction image {images:?}, annihilated {}", s.annihilated);
    }
    Ok(())
}
