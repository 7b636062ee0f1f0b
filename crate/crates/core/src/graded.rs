//! Graded vector spaces, homogeneous elements and graded linear maps.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::scalar::Scalar;

/// Finite-dimensional Z-graded space. Equality compares dimensions only.
#[derive(Clone, Debug, Default)]
pub struct GradedSpace {
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        let dims = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        GradedSpace {
            dims,
            labels: BTreeMap::new(),
        }
    }

    pub fn with_labels(mut self, labels: BTreeMap<i32, Vec<String>>) -> Result<Self> {
        for (n, l) in &labels {
            if l.len() != self.dim(*n) {
                return Err(Error::Shape {
                    degree: *n,
                    detail: format!("{} labels for dimension {}", l.len(), self.dim(*n)),
                });
            }
        }
        self.labels = labels.into_iter().filter(|(_, l)| !l.is_empty()).collect();
        Ok(self)
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.dims.keys().copied().collect()
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn labels(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.labels
    }

    pub fn label(&self, n: i32, i: usize) -> String {
        self.labels
            .get(&n)
            .and_then(|l| l.get(i).cloned())
            .unwrap_or_else(|| format!("e{n}_{i}"))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `c₁·label₁ + c₂·label₂ + …`, or `0`.
    pub fn describe(&self, x: &Elem) -> String {
        let terms: Vec<String> = x
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let l = self.label(x.degree, i);
                if c.is_one() {
                    l
                } else {
                    format!("{}·{l}", crate::scalar::format(c))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.dims.keys().next_back().copied()
    }

    /// `V[r]^n = V^{n+r}`.
    pub fn shift(&self, r: i32) -> GradedSpace {
        GradedSpace {
            dims: self.dims.iter().map(|(&n, &d)| (n - r, d)).collect(),
            labels: self.labels.iter().map(|(&n, l)| (n - r, l.clone())).collect(),
        }
    }

    /// All `(degree, index)` pairs, degree-major.
    pub fn basis(&self) -> Vec<(i32, usize)> {
        self.dims
            .iter()
            .flat_map(|(&n, &d)| (0..d).map(move |i| (n, i)))
            .collect()
    }

    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        let mut dims = self.dims.clone();
        for (&n, &d) in &other.dims {
            *dims.entry(n).or_insert(0) += d;
        }
        GradedSpace::new(dims)
    }
}

/// A homogeneous element: a degree and coordinates in the basis of that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub degree: i32,
    pub coords: Vec<Scalar>,
}

impl Elem {
    pub fn zero(space: &GradedSpace, degree: i32) -> Self {
        Elem {
            degree,
            coords: vec![Scalar::zero(); space.dim(degree)],
        }
    }

    pub fn basis(space: &GradedSpace, degree: i32, i: usize) -> Self {
        Elem {
            degree,
            coords: matrix::unit(space.dim(degree), i),
        }
    }

    pub fn new(degree: i32, coords: Vec<Scalar>) -> Self {
        Elem { degree, coords }
    }

    pub fn is_zero(&self) -> bool {
        matrix::is_zero_vec(&self.coords)
    }

    pub fn scale(&self, c: &Scalar) -> Elem {
        Elem {
            degree: self.degree,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        Elem {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Elem) {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        matrix::add_scaled(&mut self.coords, c, &other.coords);
    }
}

/// Graded linear map of degree `r`: `blocks[n]` maps `source^n -> target^{n+r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        degree: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for (n, b) in blocks {
            let shape = (target.dim(n + degree), source.dim(n));
            if b.shape() != shape {
                return Err(Error::Shape {
                    degree: n,
                    detail: format!("block is {:?}, expected {:?}", b.shape(), shape),
                });
            }
            if shape.0 > 0 && shape.1 > 0 {
                clean.insert(n, b);
            }
        }
        for n in source.support() {
            let shape = (target.dim(n + degree), source.dim(n));
            if shape.0 > 0 && shape.1 > 0 {
                clean.entry(n).or_insert_with(|| Matrix::zeros(shape.0, shape.1));
            }
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            blocks: clean,
        })
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace, degree: i32) -> Self {
        Self::new(source.clone(), target.clone(), degree, BTreeMap::new()).expect("zero map")
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let blocks = space
            .dims()
            .iter()
            .map(|(&n, &d)| (n, Matrix::identity(d)))
            .collect();
        Self::new(space.clone(), space.clone(), 0, blocks).expect("identity map")
    }

    /// Build from a closure returning the block for each source degree.
    pub fn from_fn(
        source: &GradedSpace,
        target: &GradedSpace,
        degree: i32,
        mut f: impl FnMut(i32) -> Matrix,
    ) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for n in source.support() {
            if target.dim(n + degree) > 0 {
                blocks.insert(n, f(n));
            }
        }
        Self::new(source.clone(), target.clone(), degree, blocks)
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    /// The block on source degree `n` (zeros if absent).
    pub fn block(&self, n: i32) -> Matrix {
        self.blocks.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.target.dim(n + self.degree), self.source.dim(n))
        })
    }

    pub fn block_ref(&self, n: i32) -> Option<&Matrix> {
        self.blocks.get(&n)
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        let degree = x.degree + self.degree;
        let coords = match self.blocks.get(&x.degree) {
            Some(b) => b.apply(&x.coords),
            None => vec![Scalar::zero(); self.target.dim(degree)],
        };
        Elem { degree, coords }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &GradedMap) -> Result<GradedMap> {
        if g.target != self.source {
            let degree = g
                .target
                .support()
                .into_iter()
                .chain(self.source.support())
                .find(|&n| g.target.dim(n) != self.source.dim(n))
                .unwrap_or(0);
            return Err(Error::Shape {
                degree,
                detail: "target of the inner map differs from source of the outer map".into(),
            });
        }
        let degree = self.degree + g.degree;
        GradedMap::from_fn(&g.source, &self.target, degree, |n| {
            self.block(n + g.degree).mul(&g.block(n))
        })
    }

    fn zip_with(&self, other: &GradedMap, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> GradedMap {
        assert!(
            self.source == other.source && self.target == other.target && self.degree == other.degree,
            "maps are not parallel"
        );
        GradedMap::from_fn(&self.source, &self.target, self.degree, |n| {
            f(&self.block(n), &other.block(n))
        })
        .expect("parallel maps")
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        GradedMap::from_fn(&self.source, &self.target, self.degree, |n| self.block(n).scale(c))
            .expect("scaled map")
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// First source degree where the map is not injective.
    pub fn first_non_injective_degree(&self) -> Option<i32> {
        self.source
            .support()
            .into_iter()
            .find(|&n| self.block(n).rank() < self.source.dim(n))
    }

    pub fn is_injective(&self) -> bool {
        self.first_non_injective_degree().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.target.support().into_iter().all(|m| {
            let n = m - self.degree;
            self.block(n).rank() == self.target.dim(m)
        })
    }

    /// Regrade as a map `source[r] -> target[r]` with unchanged matrices.
    pub fn shift(&self, r: i32) -> GradedMap {
        let blocks = self.blocks.iter().map(|(&n, b)| (n - r, b.clone())).collect();
        GradedMap::new(self.source.shift(r), self.target.shift(r), self.degree, blocks)
            .expect("shifted map")
    }
}
