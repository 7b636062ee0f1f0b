//! Cohomology of a small complex and the map induced by an inclusion of cocycles.

use std::collections::BTreeMap;

use dgla::complex::{induced_map_on_cohomology, is_injective_on_cohomology};
use dgla::{Complex, Elem, GradedMap, GradedSpace, Matrix};

fn main() -> dgla::Result<()> {
    let c = dgla::corpus::three_term();
    let h = c.cohomology();
    println!("dims: {:?}", h.dims());
    println!("H^0 representative: {}", c.space().describe(&Elem::new(0, h.reps(0, c.dim(0)).column(0))));

    // Z^0 = ker d^0 as a one-term subcomplex
    let z = Complex::zero_differential(GradedSpace::new([(0, 1)]));
    let incl = GradedMap::new(z.space().clone(), c.space().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(&[&[0], &[1]]))]))?;
    let hf = induced_map_on_cohomology(&incl, &z, &c)?;
    println!("H(Z^0) → H(C) in degree 0: {:?}", hf.block(0));
    println!("injective on cohomology: {}", is_injective_on_cohomology(&incl, &z, &c)?);
    Ok(())
}
