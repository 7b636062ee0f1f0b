//! Differential graded Lie algebras given by structure constants.

mod fibre;
mod hom;
pub mod models;
mod verdict;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::{chain_map_defect, Cohomology, Complex, Subspace};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};
use crate::table::StructureTable;

pub use fibre::{cokernel_projection, homotopy_fibre, CokernelProjection, FibreElem, FibreGen, HomotopyFibre};
pub use hom::{hom_dgla, HomDgla};
pub use verdict::{homotopy_abelian_verdict, AbelianWitness, Verdict};

/// How many violations of each axiom a report keeps (all are counted).
pub const REPORT_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dgla {
    complex: Complex,
    bracket: StructureTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Skew,
    Jacobi,
    Leibniz,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Skew => "skew-symmetry",
            Axiom::Jacobi => "Jacobi",
            Axiom::Leibniz => "Leibniz",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub basis: Vec<(i32, usize)>,
    pub residual: Elem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DglaReport {
    pub violations: Vec<Violation>,
    pub counts: BTreeMap<Axiom, usize>,
    pub checked: BTreeMap<Axiom, usize>,
}

impl DglaReport {
    pub fn passes(&self) -> bool {
        self.counts.values().all(|&c| c == 0)
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.counts.get(&axiom).copied().unwrap_or(0)
    }

    fn record(&mut self, axiom: Axiom, basis: Vec<(i32, usize)>, residual: Elem) {
        *self.checked.entry(axiom).or_insert(0) += 1;
        if residual.is_zero() {
            return;
        }
        let c = self.counts.entry(axiom).or_insert(0);
        *c += 1;
        if *c <= REPORT_LIMIT {
            self.violations.push(Violation { axiom, basis, residual });
        }
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

fn parity(p: i32, q: i32) -> Scalar {
    scalar::sign(p as i64 * q as i64)
}

/// Exhaustive check of skew-symmetry, Jacobi and Leibniz on basis pairs and triples.
pub fn check_structure(complex: &Complex, bracket: &StructureTable) -> DglaReport {
    let space = complex.space();
    let basis = space.basis();
    let mut report = DglaReport::default();
    let br = |a: &Elem, b: &Elem| bracket.apply(space, a, b);
    let e = |(n, i): (i32, usize)| Elem::basis(space, n, i);

    for &a in &basis {
        for &b in &basis {
            let (ea, eb) = (e(a), e(b));
            let ab = br(&ea, &eb);
            let ba = br(&eb, &ea);
            report.record(Axiom::Skew, vec![a, b], ab.add(&ba.scale(&parity(a.0, b.0))));

            let lhs = complex.apply_d(&ab);
            let right = br(&ea, &complex.apply_d(&eb)).scale(&scalar::sign(a.0 as i64));
            let rhs = br(&complex.apply_d(&ea), &eb).add(&right);
            report.record(Axiom::Leibniz, vec![a, b], lhs.sub(&rhs));
        }
    }

    let pair: BTreeMap<((i32, usize), (i32, usize)), Elem> = basis
        .iter()
        .flat_map(|&a| basis.iter().map(move |&b| (a, b)))
        .map(|(a, b)| ((a, b), bracket.basis_pair(space, a.0, a.1, b.0, b.1)))
        .collect();
    for &a in &basis {
        for &b in &basis {
            for &c in &basis {
                let (ea, eb, ec) = (e(a), e(b), e(c));
                let lhs = br(&ea, &pair[&(b, c)]);
                let t1 = br(&pair[&(a, b)], &ec);
                let t2 = br(&eb, &pair[&(a, c)]).scale(&parity(a.0, b.0));
                report.record(Axiom::Jacobi, vec![a, b, c], lhs.sub(&t1.add(&t2)));
            }
        }
    }
    report
}

pub fn check_dgla(l: &Dgla) -> DglaReport {
    check_structure(&l.complex, &l.bracket)
}

impl Dgla {
    /// Validates the table shape and all three axioms on every basis pair and triple.
    pub fn new(complex: Complex, bracket: StructureTable) -> Result<Self> {
        bracket.validate(complex.space())?;
        let report = check_structure(&complex, &bracket);
        if let Some(v) = report.violations.first() {
            return Err(Error::invalid(format!(
                "{} fails on basis {:?}",
                v.axiom.name(),
                v.basis
            )));
        }
        Ok(Dgla { complex, bracket })
    }

    /// Construction used by builders whose axioms hold by construction; the shape is still
    /// validated and tests cover the axioms.
    pub(crate) fn from_parts(complex: Complex, bracket: StructureTable) -> Result<Self> {
        bracket.validate(complex.space())?;
        Ok(Dgla { complex, bracket })
    }

    pub fn abelian(complex: Complex) -> Self {
        Dgla {
            complex,
            bracket: StructureTable::new(),
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    pub fn table(&self) -> &StructureTable {
        &self.bracket
    }

    pub fn dim(&self, n: i32) -> usize {
        self.complex.dim(n)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_empty()
    }

    pub fn bracket(&self, a: &Elem, b: &Elem) -> Elem {
        self.bracket.apply(self.space(), a, b)
    }

    pub fn d(&self, a: &Elem) -> Elem {
        self.complex.apply_d(a)
    }

    pub fn basis(&self, n: i32, i: usize) -> Elem {
        Elem::basis(self.space(), n, i)
    }

    /// Restriction to a graded subspace closed under `d` and the bracket, with its inclusion.
    pub fn sub_dgla(&self, sub: &Subspace) -> Result<(Dgla, DglaMorphism)> {
        let (complex, inclusion) = self.complex.subcomplex(sub)?;
        let space = complex.space().clone();
        let mut table = StructureTable::new();
        for (p, i) in space.basis() {
            for (q, j) in space.basis() {
                let a = inclusion.apply(&Elem::basis(&space, p, i));
                let b = inclusion.apply(&Elem::basis(&space, q, j));
                let c = self.bracket(&a, &b);
                if c.is_zero() {
                    continue;
                }
                let basis = inclusion.block(p + q);
                let coords = basis.solve(&c.coords).ok_or_else(|| {
                    Error::invalid(format!("subspace not closed under the bracket at ({p},{i}), ({q},{j})"))
                })?;
                for (k, x) in coords.into_iter().enumerate() {
                    table.add(p, i, q, j, k, x);
                }
            }
        }
        let l = Dgla::from_parts(complex, table)?;
        let m = DglaMorphism::new(&l, self, inclusion)?;
        Ok((l, m))
    }

    pub fn cohomology(&self) -> Cohomology {
        self.complex.cohomology()
    }
}

/// A degree-0 chain map commuting with brackets on all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglaMorphism {
    map: GradedMap,
}

impl DglaMorphism {
    pub fn new(source: &Dgla, target: &Dgla, map: GradedMap) -> Result<Self> {
        if map.degree() != 0 {
            return Err(Error::invalid("DGLA morphisms have degree 0"));
        }
        if let Some(n) = chain_map_defect(&map, source.complex(), target.complex()) {
            return Err(Error::NotChainMap { degree: n });
        }
        let space = source.space();
        for (p, i) in space.basis() {
            for (q, j) in space.basis() {
                let a = Elem::basis(space, p, i);
                let b = Elem::basis(space, q, j);
                let lhs = map.apply(&source.bracket(&a, &b));
                let rhs = target.bracket(&map.apply(&a), &map.apply(&b));
                if lhs != rhs {
                    return Err(Error::invalid(format!(
                        "map does not commute with brackets on ({p},{i}), ({q},{j})"
                    )));
                }
            }
        }
        Ok(DglaMorphism { map })
    }

    pub fn identity(l: &Dgla) -> Self {
        DglaMorphism {
            map: GradedMap::identity(l.space()),
        }
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }
}

/// The graded Lie bracket induced on cohomology, in the basis of representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyBracket {
    pub cohomology: Cohomology,
    pub table: StructureTable,
}

impl CohomologyBracket {
    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn space(&self) -> GradedSpace {
        self.cohomology.space()
    }

    /// A pair of classes with nonzero bracket, if any.
    pub fn witness(&self) -> Option<((i32, usize), (i32, usize), Vec<Scalar>)> {
        self.table.entries().first().map(|e| {
            let h = self.space();
            let v = self.table.basis_pair(&h, e.p, e.i, e.q, e.j);
            ((e.p, e.i), (e.q, e.j), v.coords)
        })
    }
}

pub fn bracket_on_cohomology(l: &Dgla) -> Result<CohomologyBracket> {
    let h = l.cohomology();
    let hs = h.space();
    let mut table = StructureTable::new();
    for (p, i) in hs.basis() {
        let a = h.representative(p, &crate::matrix::unit(hs.dim(p), i), l.dim(p));
        for (q, j) in hs.basis() {
            let b = h.representative(q, &crate::matrix::unit(hs.dim(q), j), l.dim(q));
            let c = l.bracket(&a, &b);
            if !l.d(&c).is_zero() {
                return Err(Error::invalid("bracket of cocycles is not a cocycle"));
            }
            for (k, x) in h.class_of(&c).into_iter().enumerate() {
                table.add(p, i, q, j, k, x);
            }
        }
        for q in l.space().support() {
            for j in 0..l.dim(q - 1) {
                let db = l.d(&l.basis(q - 1, j));
                let c = l.bracket(&a, &db);
                if h.class_of(&c).iter().any(|x| !x.is_zero()) {
                    return Err(Error::invalid("bracket with a boundary is not a boundary"));
                }
            }
        }
    }
    Ok(CohomologyBracket { cohomology: h, table })
}

pub fn is_cohomology_bracket_zero(l: &Dgla) -> Result<bool> {
    Ok(bracket_on_cohomology(l)?.is_zero())
}

/// Block-level matrix of `x ↦ [a, x]` from degree `q` to `p + q`.
pub fn ad_matrix(l: &Dgla, a: &Elem, q: i32) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..l.dim(q))
        .map(|j| l.bracket(a, &l.basis(q, j)).coords)
        .collect();
    Matrix::from_cols(l.dim(a.degree + q), &cols)
}
