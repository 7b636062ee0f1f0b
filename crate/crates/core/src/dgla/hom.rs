use std::collections::BTreeMap;

use crate::complex::{Complex, HomComplex, Subspace};
use crate::error::Result;
use crate::graded::{Elem, GradedMap};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};
use crate::table::StructureTable;

use super::{Dgla, DglaMorphism};

/// `Hom*(V, V)` with differential `[d_V, −]` and the graded commutator.
#[derive(Clone, Debug)]
pub struct HomDgla {
    pub dgla: Dgla,
    pub hom: HomComplex,
}

pub fn hom_dgla(v: &Complex) -> HomDgla {
    let hom = HomComplex::new(v, v);
    let mut lookup: BTreeMap<(i32, i32, usize, usize), usize> = BTreeMap::new();
    for (&r, list) in &hom.index {
        for (pos, &(n, row, col)) in list.iter().enumerate() {
            lookup.insert((r, n, row, col), pos);
        }
    }
    let mut table = StructureTable::new();
    for (&r, lf) in &hom.index {
        for (a, &(n, row, col)) in lf.iter().enumerate() {
            for (&s, lg) in &hom.index {
                let sgn = scalar::sign(r as i64 * s as i64);
                for (b, &(m, row2, col2)) in lg.iter().enumerate() {
                    // f ∘ g: g sends col2 of V^m to row2 of V^{m+s}; f reads col of V^n
                    if m + s == n && row2 == col {
                        let k = lookup[&(r + s, m, row, col2)];
                        table.add(r, a, s, b, k, scalar::one());
                    }
                    if n + r == m && row == col2 {
                        let k = lookup[&(r + s, n, row2, col)];
                        table.add(r, a, s, b, k, -sgn.clone());
                    }
                }
            }
        }
    }
    let dgla = Dgla::from_parts(hom.complex.clone(), table).expect("hom table indices");
    HomDgla { dgla, hom }
}

impl HomDgla {
    pub fn to_map(&self, x: &Elem) -> GradedMap {
        self.hom.to_map(x)
    }

    pub fn from_map(&self, f: &GradedMap) -> Elem {
        self.hom.from_map(f)
    }

    /// The operators `f` with `f(U) ⊆ U`, as a sub-DGLA with its inclusion.
    pub fn preserving(&self, u: &Subspace) -> Result<(Dgla, DglaMorphism)> {
        let v = &self.hom.source;
        v.check_subspace(u)?;
        let q = v.quotient(u)?;
        let mut sub = BTreeMap::new();
        for (&r, list) in &self.hom.index {
            let mut cols: Vec<Vec<Scalar>> = Vec::new();
            for e in 0..list.len() {
                let f = self.hom.to_map(&Elem::basis(self.dgla.space(), r, e));
                let mut col = Vec::new();
                for n in v.space().support() {
                    let ub = u.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(v.dim(n), 0));
                    let img = q.projection.block(n + r).mul(&f.block(n)).mul(&ub);
                    for i in 0..img.rows() {
                        for j in 0..img.cols() {
                            col.push(img.get(i, j).clone());
                        }
                    }
                }
                cols.push(col);
            }
            let height = cols.first().map_or(0, Vec::len);
            let k = Matrix::from_cols(height, &cols).kernel();
            if k.cols() > 0 {
                sub.insert(r, k);
            }
        }
        self.dgla.sub_dgla(&sub)
    }
}
