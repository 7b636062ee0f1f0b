//! Small standard DGLAs.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::graded::GradedSpace;
use crate::scalar::int;
use crate::table::StructureTable;

use super::Dgla;

/// Abelian DGLA with zero differential and the given dimensions.
pub fn abelian(dims: &[(i32, usize)]) -> Dgla {
    Dgla::abelian(Complex::zero_differential(GradedSpace::new(dims.iter().copied())))
}

/// sl₂ in degree 0 with basis `e, f, h` and d = 0.
pub fn sl2() -> Dgla {
    let labels = BTreeMap::from([(0, vec!["e".into(), "f".into(), "h".into()])]);
    let space = GradedSpace::new([(0, 3)]).with_labels(labels).expect("labels");
    let (e, f, h) = (0, 1, 2);
    let mut t = StructureTable::new();
    let mut put = |a: usize, b: usize, k: usize, c: i64| {
        t.add(0, a, 0, b, k, int(c));
        t.add(0, b, 0, a, k, int(-c));
    };
    put(e, f, h, 1);
    put(h, e, e, 2);
    put(h, f, f, -2);
    Dgla::new(Complex::zero_differential(space), t).expect("sl2")
}

/// `x, y` in degree 1, `z` in degree 2, `[x, y] = [y, x] = z`, d = 0.
pub fn nilpotent_witness() -> Dgla {
    let labels = BTreeMap::from([(1, vec!["x".into(), "y".into()]), (2, vec!["z".into()])]);
    let space = GradedSpace::new([(1, 2), (2, 1)]).with_labels(labels).expect("labels");
    let mut t = StructureTable::new();
    t.add(1, 0, 1, 1, 0, int(1));
    t.add(1, 1, 1, 0, 0, int(1));
    Dgla::new(Complex::zero_differential(space), t).expect("nilpotent witness")
}
