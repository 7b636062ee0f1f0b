//! Sparse structure-constant tables for degree-0 bilinear operations on a graded space.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{Elem, GradedSpace};
use crate::scalar::Scalar;

/// One structure constant: `op(e_i^p, e_j^q)` has coefficient `c` on `e_k^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Entry {
    pub p: i32,
    pub i: usize,
    pub q: i32,
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureTable {
    map: BTreeMap<(i32, usize, i32, usize), BTreeMap<usize, Scalar>>,
}

impl StructureTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = Entry>) -> Self {
        let mut t = Self::new();
        for e in entries {
            t.add(e.p, e.i, e.q, e.j, e.k, e.c);
        }
        t
    }

    /// Accumulates `c` on `op(e_i^p, e_j^q)_k`.
    pub fn add(&mut self, p: i32, i: usize, q: i32, j: usize, k: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.map.entry((p, i, q, j)).or_default();
        let v = slot.entry(k).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            slot.remove(&k);
            if slot.is_empty() {
                self.map.remove(&(p, i, q, j));
            }
        }
    }

    /// Replaces the coefficient (removing it when zero).
    pub fn set(&mut self, p: i32, i: usize, q: i32, j: usize, k: usize, c: Scalar) {
        let slot = self.map.entry((p, i, q, j)).or_default();
        if c.is_zero() {
            slot.remove(&k);
        } else {
            slot.insert(k, c);
        }
        if slot.is_empty() {
            self.map.remove(&(p, i, q, j));
        }
    }

    pub fn get(&self, p: i32, i: usize, q: i32, j: usize) -> Option<&BTreeMap<usize, Scalar>> {
        self.map.get(&(p, i, q, j))
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.values().map(BTreeMap::len).sum()
    }

    pub fn entries(&self) -> Vec<Entry> {
        self.map
            .iter()
            .flat_map(|(&(p, i, q, j), v)| {
                v.iter().map(move |(&k, c)| Entry { p, i, q, j, k, c: c.clone() })
            })
            .collect()
    }

    pub fn validate(&self, space: &GradedSpace) -> Result<()> {
        for e in self.entries() {
            if e.i >= space.dim(e.p) || e.j >= space.dim(e.q) || e.k >= space.dim(e.p + e.q) {
                return Err(Error::invalid(format!(
                    "structure constant ({}, {}, {}, {}, {}, {}) out of range",
                    e.p,
                    e.i,
                    e.q,
                    e.j,
                    e.p + e.q,
                    e.k
                )));
            }
        }
        Ok(())
    }

    /// Bilinear extension to homogeneous elements.
    pub fn apply(&self, space: &GradedSpace, a: &Elem, b: &Elem) -> Elem {
        let degree = a.degree + b.degree;
        let mut out = vec![Scalar::zero(); space.dim(degree)];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(v) = self.map.get(&(a.degree, i, b.degree, j)) {
                    let xy = x * y;
                    for (&k, c) in v {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        Elem::new(degree, out)
    }

    /// `op(e_i^p, e_j^q)` as an element.
    pub fn basis_pair(&self, space: &GradedSpace, p: i32, i: usize, q: i32, j: usize) -> Elem {
        let mut out = vec![Scalar::zero(); space.dim(p + q)];
        if let Some(v) = self.map.get(&(p, i, q, j)) {
            for (&k, c) in v {
                out[k] = c.clone();
            }
        }
        Elem::new(p + q, out)
    }
}
