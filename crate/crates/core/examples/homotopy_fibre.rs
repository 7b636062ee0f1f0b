//! Homotopy fibre of `h ↪ sl₂` and its cokernel projection.

use std::collections::BTreeMap;

use dgla::complex::is_quasi_isomorphism;
use dgla::dgla::models::{abelian, sl2};
use dgla::dgla::{cokernel_projection, homotopy_fibre, DglaMorphism};
use dgla::{GradedMap, Matrix};

fn main() -> dgla::Result<()> {
    let m = sl2();
    let l = abelian(&[(0, 1)]);
    let chi = GradedMap::new(l.space().clone(), m.space().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(&[&[0], &[0], &[1]]))]))?;
    let chi = DglaMorphism::new(&l, &m, chi)?;
    for p in 1..=2 {
        let f = homotopy_fibre(&l, &m, &chi, p)?;
        let proj = cokernel_projection(&f)?;
        println!(
            "P = {p}: fibre dims {:?}, H = {:?}, projection surjective {}, quasi-iso {}",
            f.complex.space().dims(),
            f.complex.betti(),
            proj.map.is_surjective(),
            is_quasi_isomorphism(&proj.map, &f.complex, &proj.target)?
        );
    }
    Ok(())
}
