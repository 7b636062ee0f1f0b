//! Cochain complexes, cohomology and induced maps.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    space: GradedSpace,
    d: GradedMap,
}

/// Per-degree basis matrices of a graded subspace (columns are vectors of the ambient space).
pub type Subspace = BTreeMap<i32, Matrix>;

impl Complex {
    pub fn new(d: GradedMap) -> Result<Self> {
        if d.degree() != 1 {
            return Err(Error::invalid(format!("differential has degree {}", d.degree())));
        }
        if d.source() != d.target() {
            return Err(Error::invalid("differential source and target differ"));
        }
        let space = d.source().clone();
        for n in space.support() {
            if !d.block(n + 1).mul(&d.block(n)).is_zero() {
                return Err(Error::NotSquareZero { degree: n });
            }
        }
        Ok(Complex { space, d })
    }

    pub fn from_blocks(space: GradedSpace, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        Self::new(GradedMap::new(space.clone(), space, 1, blocks)?)
    }

    /// The complex with zero differential.
    pub fn zero_differential(space: GradedSpace) -> Self {
        let d = GradedMap::zero(&space, &space, 1);
        Complex { space, d }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn d(&self) -> &GradedMap {
        &self.d
    }

    pub fn dim(&self, n: i32) -> usize {
        self.space.dim(n)
    }

    /// Differential block `C^n -> C^{n+1}`.
    pub fn d_block(&self, n: i32) -> Matrix {
        self.d.block(n)
    }

    pub fn apply_d(&self, x: &Elem) -> Elem {
        self.d.apply(x)
    }

    /// `C[r]^n = C^{n+r}` with differential `(-1)^r d`.
    pub fn shift(&self, r: i32) -> Complex {
        let d = self.d.shift(r).scale(&scalar::sign(r as i64));
        Complex {
            space: self.space.shift(r),
            d,
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let space = self.space.direct_sum(&other.space);
        let d = GradedMap::from_fn(&space, &space, 1, |n| {
            let mut m = Matrix::zeros(space.dim(n + 1), space.dim(n));
            m.set_block(0, 0, &self.d.block(n));
            m.set_block(self.dim(n + 1), self.dim(n), &other.d.block(n));
            m
        })
        .expect("direct sum");
        Complex { space, d }
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut degrees = BTreeMap::new();
        for n in self.space.support() {
            let dim = self.dim(n);
            let z = self.d_block(n).kernel();
            let b = self.d_block(n - 1).column_basis();
            let reps = Matrix::extend_with(&b, &z);
            let rest = b.hstack(&reps);
            let k = rest.complement();
            let full = b.hstack(&reps).hstack(&k);
            let inv = full.inverse().expect("basis of the cochain space");
            let h = reps.cols();
            let coords = inv.block(b.cols(), 0, h, dim);
            if h > 0 {
                degrees.insert(n, CohomologyDegree { reps, coords });
            }
        }
        Cohomology { degrees }
    }

    /// Per-degree dimensions of cohomology.
    pub fn betti(&self) -> BTreeMap<i32, usize> {
        self.space
            .support()
            .into_iter()
            .map(|n| {
                let z = self.dim(n) - self.d_block(n).rank();
                (n, z - self.d_block(n - 1).rank())
            })
            .filter(|&(_, h)| h > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti().is_empty()
    }

    pub fn check_subspace(&self, sub: &Subspace) -> Result<()> {
        for (&n, b) in sub {
            if b.rows() != self.dim(n) {
                return Err(Error::Shape {
                    degree: n,
                    detail: format!("subspace basis has {} rows, space has dim {}", b.rows(), self.dim(n)),
                });
            }
            if b.rank() != b.cols() {
                return Err(Error::invalid(format!("subspace basis in degree {n} is dependent")));
            }
        }
        Ok(())
    }

    fn sub_basis(sub: &Subspace, n: i32, dim: usize) -> Matrix {
        sub.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(dim, 0))
    }

    /// Does `d` map the subspace into itself?
    pub fn preserves(&self, sub: &Subspace) -> Option<i32> {
        for n in self.space.support() {
            let u = Self::sub_basis(sub, n, self.dim(n));
            let u1 = Self::sub_basis(sub, n + 1, self.dim(n + 1));
            let image = self.d_block(n).mul(&u);
            if !u1.spans(&image) {
                return Some(n);
            }
        }
        None
    }

    /// Subcomplex spanned by `sub`, with its inclusion.
    pub fn subcomplex(&self, sub: &Subspace) -> Result<(Complex, GradedMap)> {
        self.check_subspace(sub)?;
        if let Some(n) = self.preserves(sub) {
            return Err(Error::invalid(format!("subspace is not d-closed in degree {n}")));
        }
        let space = GradedSpace::new(sub.iter().map(|(&n, b)| (n, b.cols())));
        let d = GradedMap::from_fn(&space, &space, 1, |n| {
            let u = Self::sub_basis(sub, n, self.dim(n));
            let u1 = Self::sub_basis(sub, n + 1, self.dim(n + 1));
            u1.solve_matrix(&self.d_block(n).mul(&u)).expect("closed subspace")
        })?;
        let inclusion = GradedMap::from_fn(&space, &self.space, 0, |n| {
            Self::sub_basis(sub, n, self.dim(n))
        })?;
        Ok((Complex { space, d }, inclusion))
    }

    /// Quotient by a subcomplex, realized on a complement of standard basis vectors.
    pub fn quotient(&self, sub: &Subspace) -> Result<Quotient> {
        self.check_subspace(sub)?;
        if let Some(n) = self.preserves(sub) {
            return Err(Error::invalid(format!("subspace is not d-closed in degree {n}")));
        }
        let mut sections = BTreeMap::new();
        let mut projections = BTreeMap::new();
        for n in self.space.support() {
            let u = Self::sub_basis(sub, n, self.dim(n));
            let k = u.complement();
            let inv = u.hstack(&k).inverse().expect("basis");
            projections.insert(n, inv.block(u.cols(), 0, k.cols(), self.dim(n)));
            sections.insert(n, k);
        }
        let space = GradedSpace::new(sections.iter().map(|(&n, k)| (n, k.cols())));
        let projection = GradedMap::from_fn(&self.space, &space, 0, |n| projections[&n].clone())?;
        let section = GradedMap::from_fn(&space, &self.space, 0, |n| sections[&n].clone())?;
        let d = projection.compose(&self.d)?.compose(&section)?;
        let complex = Complex::new(d)?;
        Ok(Quotient {
            complex,
            projection,
            section,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Complex,
    pub projection: GradedMap,
    pub section: GradedMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDegree {
    /// Columns are representative cocycles.
    pub reps: Matrix,
    /// Class coordinates; vanishes on boundaries and on the chosen complement of cocycles.
    pub coords: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    degrees: BTreeMap<i32, CohomologyDegree>,
}

impl Cohomology {
    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.degrees.iter().map(|(&n, h)| (n, h.reps.cols())))
    }

    pub fn dim(&self, n: i32) -> usize {
        self.degrees.get(&n).map_or(0, |h| h.reps.cols())
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.degrees.iter().map(|(&n, h)| (n, h.reps.cols())).collect()
    }

    pub fn degree(&self, n: i32) -> Option<&CohomologyDegree> {
        self.degrees.get(&n)
    }

    pub fn reps(&self, n: i32, ambient: usize) -> Matrix {
        self.degrees
            .get(&n)
            .map(|h| h.reps.clone())
            .unwrap_or_else(|| Matrix::zeros(ambient, 0))
    }

    pub fn coords_matrix(&self, n: i32, ambient: usize) -> Matrix {
        self.degrees
            .get(&n)
            .map(|h| h.coords.clone())
            .unwrap_or_else(|| Matrix::zeros(0, ambient))
    }

    /// Class coordinates of a cocycle.
    pub fn class_of(&self, x: &Elem) -> Vec<Scalar> {
        match self.degrees.get(&x.degree) {
            Some(h) => h.coords.apply(&x.coords),
            None => Vec::new(),
        }
    }

    /// Representative cocycle of the class with the given coordinates.
    pub fn representative(&self, n: i32, class: &[Scalar], ambient: usize) -> Elem {
        match self.degrees.get(&n) {
            Some(h) => Elem::new(n, h.reps.apply(class)),
            None => Elem::new(n, vec![Scalar::zero(); ambient]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// First degree where `f ∘ d_C ≠ d_D ∘ f`.
pub fn chain_map_defect(f: &GradedMap, c: &Complex, d: &Complex) -> Option<i32> {
    if f.source() != c.space() || f.target() != d.space() {
        return Some(c.space().min_degree().unwrap_or(0));
    }
    let r = f.degree();
    c.space()
        .support()
        .into_iter()
        .chain(c.space().support().into_iter().map(|n| n - 1))
        .find(|&n| {
            let lhs = f.block(n + 1).mul(&c.d_block(n));
            let rhs = d.d_block(n + r).mul(&f.block(n));
            lhs != rhs
        })
}

pub fn is_chain_map(f: &GradedMap, c: &Complex, d: &Complex) -> bool {
    chain_map_defect(f, c, d).is_none()
}

/// Induced map `H(C) -> H(D)` in the representative/class-coordinate bases.
pub fn induced_map_on_cohomology(f: &GradedMap, c: &Complex, d: &Complex) -> Result<GradedMap> {
    let hc = c.cohomology();
    let hd = d.cohomology();
    induced_with(f, c, d, &hc, &hd)
}

pub fn induced_with(
    f: &GradedMap,
    c: &Complex,
    d: &Complex,
    hc: &Cohomology,
    hd: &Cohomology,
) -> Result<GradedMap> {
    if let Some(n) = chain_map_defect(f, c, d) {
        return Err(Error::NotChainMap { degree: n });
    }
    let r = f.degree();
    GradedMap::from_fn(&hc.space(), &hd.space(), r, |n| {
        hd.coords_matrix(n + r, d.dim(n + r))
            .mul(&f.block(n))
            .mul(&hc.reps(n, c.dim(n)))
    })
}

pub fn is_injective_on_cohomology(f: &GradedMap, c: &Complex, d: &Complex) -> Result<bool> {
    Ok(induced_map_on_cohomology(f, c, d)?.is_injective())
}

pub fn is_quasi_isomorphism(f: &GradedMap, c: &Complex, d: &Complex) -> Result<bool> {
    let h = induced_map_on_cohomology(f, c, d)?;
    Ok(h.source().dims() == h.target().shift(-h.degree()).dims() && h.is_injective() && h.is_surjective())
}

/// The complex `Hom*(V, W)` with `d f = d_W f − (−1)^{|f|} f d_V`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: Complex,
    pub target: Complex,
    pub complex: Complex,
    /// For each degree r, the basis list `(n, row, col)`: the elementary map sending basis `col`
    /// of `V^n` to basis `row` of `W^{n+r}`.
    pub index: BTreeMap<i32, Vec<(i32, usize, usize)>>,
}

impl HomComplex {
    pub fn new(v: &Complex, w: &Complex) -> HomComplex {
        let mut index: BTreeMap<i32, Vec<(i32, usize, usize)>> = BTreeMap::new();
        if let (Some(vmin), Some(vmax), Some(wmin), Some(wmax)) = (
            v.space().min_degree(),
            v.space().max_degree(),
            w.space().min_degree(),
            w.space().max_degree(),
        ) {
            for r in (wmin - vmax)..=(wmax - vmin) {
                let mut list = Vec::new();
                for n in v.space().support() {
                    for row in 0..w.dim(n + r) {
                        for col in 0..v.dim(n) {
                            list.push((n, row, col));
                        }
                    }
                }
                if !list.is_empty() {
                    index.insert(r, list);
                }
            }
        }
        let space = GradedSpace::new(index.iter().map(|(&r, l)| (r, l.len())));
        let mut me = HomComplex {
            source: v.clone(),
            target: w.clone(),
            complex: Complex::zero_differential(space.clone()),
            index,
        };
        let d = GradedMap::from_fn(&space, &space, 1, |r| {
            let cols: Vec<Vec<Scalar>> = (0..space.dim(r))
                .map(|e| {
                    let f = me.to_map(&Elem::basis(&space, r, e));
                    me.from_map(&me.differential_of(&f)).coords
                })
                .collect();
            Matrix::from_cols(space.dim(r + 1), &cols)
        })
        .expect("hom differential");
        me.complex = Complex::new(d).expect("hom complex squares to zero");
        me
    }

    /// `d_W f − (−1)^{|f|} f d_V`.
    pub fn differential_of(&self, f: &GradedMap) -> GradedMap {
        let left = self.target.d().compose(f).expect("shapes");
        let right = f.compose(self.source.d()).expect("shapes");
        left.sub(&right.scale(&scalar::sign(f.degree() as i64)))
    }

    pub fn to_map(&self, x: &Elem) -> GradedMap {
        let r = x.degree;
        let v = self.source.space();
        let w = self.target.space();
        let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
        if let Some(list) = self.index.get(&r) {
            for (c, &(n, row, col)) in x.coords.iter().zip(list) {
                if c.is_zero() {
                    continue;
                }
                blocks
                    .entry(n)
                    .or_insert_with(|| Matrix::zeros(w.dim(n + r), v.dim(n)))
                    .add_at(row, col, c);
            }
        }
        GradedMap::new(v.clone(), w.clone(), r, blocks).expect("hom element")
    }

    pub fn from_map(&self, f: &GradedMap) -> Elem {
        let r = f.degree();
        let coords = self
            .index
            .get(&r)
            .map(|list| {
                list.iter()
                    .map(|&(n, row, col)| f.block(n).get(row, col).clone())
                    .collect()
            })
            .unwrap_or_default();
        Elem::new(r, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_term() -> Complex {
        let space = GradedSpace::new([(0, 2), (1, 2), (2, 1)]);
        let mut blocks = BTreeMap::new();
        blocks.insert(0, Matrix::from_i64(&[&[1, 0], &[0, 0]]));
        blocks.insert(1, Matrix::from_i64(&[&[0, 1]]));
        Complex::from_blocks(space, blocks).unwrap()
    }

    #[test]
    fn three_term_cohomology() {
        let c = three_term();
        let h = c.cohomology();
        assert_eq!(h.dims(), BTreeMap::from([(0, 1)]));
        assert_eq!(c.betti(), h.dims());
    }

    #[test]
    fn exact_pair_is_acyclic() {
        let space = GradedSpace::new([(0, 1), (1, 1)]);
        let c = Complex::from_blocks(space, BTreeMap::from([(0, Matrix::identity(1))])).unwrap();
        assert!(c.cohomology().is_zero());
    }

    #[test]
    fn rejects_non_square_zero() {
        let space = GradedSpace::new([(0, 1), (1, 1), (2, 1)]);
        let blocks = BTreeMap::from([(0, Matrix::identity(1)), (1, Matrix::identity(1))]);
        assert!(matches!(Complex::from_blocks(space, blocks), Err(Error::NotSquareZero { degree: 0 })));
    }

    #[test]
    fn class_coordinates_kill_boundaries() {
        let c = three_term();
        let h = c.cohomology();
        let boundary = c.apply_d(&Elem::basis(c.space(), 0, 0));
        assert!(h.class_of(&boundary).iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_inclusions() {
        let c = three_term();
        let z0: Subspace = BTreeMap::from([(0, c.d_block(0).kernel())]);
        let (k, inc) = c.subcomplex(&z0).unwrap();
        assert!(is_injective_on_cohomology(&inc, &k, &c).unwrap());
        let z: Subspace = c.space().support().into_iter().map(|n| (n, c.d_block(n).kernel())).collect();
        let (k, inc) = c.subcomplex(&z).unwrap();
        assert_eq!(k.betti(), BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert!(!is_injective_on_cohomology(&inc, &k, &c).unwrap());
    }

    #[test]
    fn identity_is_quasi_iso_and_zero_is_not_injective() {
        let c = three_term();
        let id = GradedMap::identity(c.space());
        assert!(is_quasi_isomorphism(&id, &c, &c).unwrap());
        let z = GradedMap::zero(c.space(), c.space(), 0);
        assert!(!is_injective_on_cohomology(&z, &c, &c).unwrap());
    }

    #[test]
    fn not_chain_map_detected() {
        let c = three_term();
        let mut blocks = BTreeMap::new();
        blocks.insert(0, Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        let f = GradedMap::new(c.space().clone(), c.space().clone(), 0, blocks).unwrap();
        assert!(matches!(induced_map_on_cohomology(&f, &c, &c), Err(Error::NotChainMap { .. })));
    }

    #[test]
    fn shift_negates_and_moves() {
        let c = three_term();
        let s = c.shift(1);
        assert_eq!(s.betti(), BTreeMap::from([(-1, 1)]));
        assert_eq!(s.d_block(-1), c.d_block(0).neg());
    }

    #[test]
    fn quotient_by_image() {
        let c = three_term();
        let sub: Subspace = BTreeMap::from([(1, c.d_block(0).column_basis())]);
        let q = c.quotient(&sub).unwrap();
        assert_eq!(q.complex.space().dims(), &BTreeMap::from([(0, 2), (1, 1), (2, 1)]));
        assert!(is_chain_map(&q.projection, &c, &q.complex));
    }

    #[test]
    fn hom_complex_of_exact_pair_is_acyclic() {
        let space = GradedSpace::new([(0, 1), (1, 1)]);
        let c = Complex::from_blocks(space, BTreeMap::from([(0, Matrix::identity(1))])).unwrap();
        let h = HomComplex::new(&c, &c);
        assert_eq!(h.complex.space().dims(), &BTreeMap::from([(-1, 1), (0, 2), (1, 1)]));
        assert!(h.complex.is_acyclic());
    }
}
