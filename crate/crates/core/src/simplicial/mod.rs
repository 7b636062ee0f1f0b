//! Semicosimplicial DGLAs, Čech data, total complexes, polynomial forms and Thom-Whitney models.

pub mod apl;
mod cech;
mod h1sc;
mod tw;

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::dgla::{Dgla, DglaMorphism};
use crate::error::{Error, Result};
use crate::graded::{GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar;

pub use cech::{cech_to_semicosimplicial, CechInput};
pub use h1sc::{h1sc_check, h1sc_equiv, h1sc_tangent, h1sc_tangent_first_order};
pub use tw::{integrate, integration_is_quasi_iso, TwComplex, TwElement, TwKey};

/// Levels `g_0..g_T` with cofaces `∂_{k,i}: g_{i−1} → g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semicosimplicial {
    levels: Vec<Dgla>,
    /// `cofaces[i − 1][k] = ∂_{k,i}` for `1 ≤ i ≤ T`, `0 ≤ k ≤ i`.
    cofaces: Vec<Vec<GradedMap>>,
}

impl Semicosimplicial {
    pub fn new(levels: Vec<Dgla>, cofaces: Vec<Vec<GradedMap>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::invalid("at least one level is required"));
        }
        if cofaces.len() != levels.len() - 1 {
            return Err(Error::invalid("one list of cofaces per positive level is required"));
        }
        for (i0, maps) in cofaces.iter().enumerate() {
            let i = i0 + 1;
            if maps.len() != i + 1 {
                return Err(Error::invalid(format!("level {i} needs {} cofaces", i + 1)));
            }
            for (k, f) in maps.iter().enumerate() {
                DglaMorphism::new(&levels[i - 1], &levels[i], f.clone()).map_err(|e| {
                    Error::invalid(format!("coface ∂_{{{k},{i}}} is not a DGLA morphism: {e}"))
                })?;
            }
        }
        let s = Semicosimplicial { levels, cofaces };
        if let Some((k, l, i)) = s.cosimplicial_defect() {
            return Err(Error::invalid(format!(
                "cosimplicial identity fails for k = {k}, l = {l} at level {i}"
            )));
        }
        Ok(s)
    }

    /// A single level.
    pub fn constant(l: Dgla) -> Self {
        Semicosimplicial {
            levels: vec![l],
            cofaces: Vec::new(),
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Dgla] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Dgla {
        &self.levels[i]
    }

    /// `∂_{k,i}: g_{i−1} → g_i`.
    pub fn coface(&self, k: usize, i: usize) -> &GradedMap {
        &self.cofaces[i - 1][k]
    }

    pub fn cofaces(&self) -> &[Vec<GradedMap>] {
        &self.cofaces
    }

    /// `∂_{k+1,i+1} ∂_{l,i} = ∂_{l,i+1} ∂_{k,i}` for `k ≥ l`; first failing `(k, l, i)`.
    pub fn cosimplicial_defect(&self) -> Option<(usize, usize, usize)> {
        for i in 1..self.top() {
            for k in 0..=i {
                for l in 0..=k {
                    let lhs = self.coface(k + 1, i + 1).compose(self.coface(l, i)).ok()?;
                    let rhs = self.coface(l, i + 1).compose(self.coface(k, i)).ok()?;
                    if lhs != rhs {
                        return Some((k, l, i));
                    }
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.levels.iter().all(Dgla::is_abelian)
    }

    /// `∂_i = Σ_k (−1)^k ∂_{k,i}`.
    pub fn alternating_coface(&self, i: usize) -> GradedMap {
        let mut acc = self.coface(0, i).clone();
        for k in 1..=i {
            acc = acc.add(&self.coface(k, i).scale(&scalar::sign(k as i64)));
        }
        acc
    }

    /// `Tot^m = ⊕_i g_i^{m−i}`, `d = Σ_k (−1)^k ∂_{k,i+1} + (−1)^i d_{g_i}` on `g_i`.
    pub fn tot(&self) -> Tot {
        let mut offsets: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        let mut degrees: Vec<i32> = Vec::new();
        for (i, g) in self.levels.iter().enumerate() {
            degrees.extend(g.space().support().into_iter().map(|n| n + i as i32));
        }
        degrees.sort_unstable();
        degrees.dedup();
        for &m in &degrees {
            let mut off = Vec::new();
            let mut total = 0;
            for (i, g) in self.levels.iter().enumerate() {
                off.push(total);
                total += g.dim(m - i as i32);
            }
            offsets.insert(m, off);
            dims.insert(m, total);
        }
        let space = GradedSpace::new(dims.clone());
        let d = GradedMap::from_fn(&space, &space, 1, |m| {
            let mut block = Matrix::zeros(space.dim(m + 1), space.dim(m));
            let off = &offsets[&m];
            let off1 = offsets.get(&(m + 1));
            for (i, g) in self.levels.iter().enumerate() {
                let j = m - i as i32;
                if g.dim(j) == 0 {
                    continue;
                }
                if let Some(off1) = off1 {
                    let inner = g.complex().d_block(j).scale(&scalar::sign(i as i64));
                    if inner.rows() > 0 {
                        block.set_block(off1[i], off[i], &inner);
                    }
                    if i < self.top() {
                        let a = self.alternating_coface(i + 1).block(j);
                        if a.rows() > 0 {
                            block.set_block(off1[i + 1], off[i], &a);
                        }
                    }
                }
            }
            block
        })
        .expect("tot differential");
        let complex = Complex::new(d).expect("d_Tot squares to zero");
        Tot { complex, offsets }
    }
}

#[derive(Clone, Debug)]
pub struct Tot {
    pub complex: Complex,
    /// `offsets[m][i]` is where `g_i^{m−i}` starts inside `Tot^m`.
    pub offsets: BTreeMap<i32, Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::models::abelian;

    #[test]
    fn one_level_tot_is_the_level() {
        let s = Semicosimplicial::constant(crate::dgla::models::sl2());
        assert_eq!(s.tot().complex, *crate::dgla::models::sl2().complex());
    }

    #[test]
    fn two_levels_unit_coface() {
        let g0 = abelian(&[(0, 1)]);
        let g1 = abelian(&[(0, 1)]);
        let one = GradedMap::identity(g0.space());
        let zero = GradedMap::zero(g0.space(), g1.space(), 0);
        let s = Semicosimplicial::new(vec![g0, g1], vec![vec![one, zero]]).unwrap();
        assert!(s.tot().complex.is_acyclic());
    }
}
