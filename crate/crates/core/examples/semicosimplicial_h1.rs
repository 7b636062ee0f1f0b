//! Semicosimplicial H¹ of a two-level diagram `Q² ⇉ Q` and of a constant `sl₂` diagram.

use std::collections::BTreeMap;

use dgla::dgla::models::{abelian, sl2};
use dgla::simplicial::{cech_to_semicosimplicial, h1sc_tangent, h1sc_tangent_first_order, CechInput, Semicosimplicial};
use dgla::{GradedMap, Matrix};

fn main() -> dgla::Result<()> {
    let g0 = abelian(&[(0, 2)]);
    let g1 = abelian(&[(0, 1)]);
    let face = |r: &[i64]| GradedMap::new(g0.space().clone(), g1.space().clone(), 0, BTreeMap::from([(0, Matrix::from_i64(&[r]))]));
    let cover = Semicosimplicial::new(vec![g0.clone(), g1.clone()], vec![vec![face(&[1, 0])?, face(&[0, 1])?]])?;
    println!("Q² ⇉ Q: H¹ = {}, first order = {}", h1sc_tangent(&cover)?, h1sc_tangent_first_order(&cover)?);

    let three = cech_to_semicosimplicial(&CechInput::uniform(3, &sl2(), Some(2)))?;
    println!("sl₂ on three opens: H¹ = {}, first order = {}", h1sc_tangent(&three)?, h1sc_tangent_first_order(&three)?);
    Ok(())
}
