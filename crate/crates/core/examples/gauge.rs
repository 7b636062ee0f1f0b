//! Gauge action and first-order deformations of an abelian DGLA with `d = id: L⁰ → L¹`.

use std::collections::BTreeMap;

use dgla::artinian::ArtinianAlgebra;
use dgla::dgla::Dgla;
use dgla::mc::{def_classes_first_order, def_tangent, gauge_act, is_mc, Tensor};
use dgla::{Complex, GradedSpace, Matrix};

fn main() -> dgla::Result<()> {
    let space = GradedSpace::new([(0, 1), (1, 2)]);
    let c = Complex::from_blocks(space, BTreeMap::from([(0, Matrix::from_i64(&[&[1], &[0]]))]))?;
    let l = Dgla::abelian(c);
    let eps = ArtinianAlgebra::dual_numbers();
    let a = Tensor::simple(&l, &eps, &l.basis(0, 0), 0);
    let x = Tensor::simple(&l, &eps, &l.basis(1, 1), 0);
    let y = gauge_act(&l, &eps, &a, &x);
    println!("x MC: {}, e^a * x = {:?}, MC: {}", is_mc(&l, &eps, &x), y.coeffs, is_mc(&l, &eps, &y));

    let fo = def_classes_first_order(&l);
    println!("Def(Q[ε]) classes: {}, dim H¹: {}", fo.classes.cols(), def_tangent(&l));
    Ok(())
}
