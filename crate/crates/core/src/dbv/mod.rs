//! Differential Batalin-Vilkovisky algebras: axioms, the derived DGLA, the Laurent model with
//! its `1/t` Cartan homotopy, and the degeneration property.

mod degeneration;
mod laurent;
pub mod models;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::Complex;
use crate::dgla::{Dgla, REPORT_LIMIT};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::scalar::{self, Scalar};
use crate::table::StructureTable;

pub use degeneration::{
    dbv_theorem_consequences, degeneration_check, e1_check, surjective_in_cohomology, Chain,
    ConsequenceChecks, ConsequenceReport, Degeneration, E1Report, SeedLift,
};
pub use laurent::{cartan_over_t, LaurentCalculus, LaurentVector, LaurentWindow};

/// Bidegree `(i, j)` of every basis element, keyed like the graded space.
pub type Bigrading = BTreeMap<i32, Vec<(i32, i32)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbvAlgebra {
    complex: Complex,
    product: StructureTable,
    unit: Elem,
    delta: GradedMap,
    k: i32,
    bigrading: Option<Bigrading>,
}

impl DbvAlgebra {
    /// Validates shapes only; the axioms are reported by [`check_dbv`].
    pub fn new(complex: Complex, product: StructureTable, unit: Elem, delta: GradedMap, k: i32) -> Result<Self> {
        if k.rem_euclid(2) != 1 {
            return Err(Error::invalid(format!("dBV degree k = {k} must be odd")));
        }
        product.validate(complex.space())?;
        if unit.degree != 0 || unit.coords.len() != complex.dim(0) {
            return Err(Error::invalid("unit must be an element of degree 0"));
        }
        if delta.source() != complex.space() || delta.target() != complex.space() || delta.degree() != -k {
            return Err(Error::invalid(format!("Δ must be an operator of degree {} on A", -k)));
        }
        Ok(DbvAlgebra {
            complex,
            product,
            unit,
            delta,
            k,
            bigrading: None,
        })
    }

    pub fn with_bigrading(mut self, bigrading: Bigrading) -> Result<Self> {
        for n in self.space().support() {
            let have = bigrading.get(&n).map_or(0, Vec::len);
            if have != self.complex.dim(n) {
                return Err(Error::NotBigraded {
                    detail: format!("degree {n} has {} basis elements but {have} bidegrees", self.complex.dim(n)),
                });
            }
        }
        if let Some(n) = bigrading.keys().find(|&&n| self.complex.dim(n) == 0 && !bigrading[&n].is_empty()) {
            return Err(Error::NotBigraded {
                detail: format!("bidegrees given for the empty degree {n}"),
            });
        }
        self.bigrading = Some(bigrading);
        Ok(self)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    pub fn product(&self) -> &StructureTable {
        &self.product
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn delta(&self) -> &GradedMap {
        &self.delta
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn bigrading(&self) -> Option<&Bigrading> {
        self.bigrading.as_ref()
    }

    pub fn basis(&self, n: i32, i: usize) -> Elem {
        Elem::basis(self.space(), n, i)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.product.apply(self.space(), a, b)
    }

    pub fn d(&self, a: &Elem) -> Elem {
        self.complex.apply_d(a)
    }

    pub fn apply_delta(&self, a: &Elem) -> Elem {
        self.delta.apply(a)
    }

    /// Lowest and highest nonzero degree.
    pub fn amplitude(&self) -> Option<(i32, i32)> {
        Some((self.space().min_degree()?, self.space().max_degree()?))
    }

    /// Same algebra with `Δ` replaced (used by mutation tests and the CLI).
    pub fn with_delta(&self, delta: GradedMap) -> Result<Self> {
        let mut b = DbvAlgebra::new(self.complex.clone(), self.product.clone(), self.unit.clone(), delta, self.k)?;
        b.bigrading = self.bigrading.clone();
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DbvAxiom {
    Associative,
    Commutative,
    Unital,
    UnitClosed,
    Derivation,
    DeltaSquare,
    DeltaUnit,
    SevenTerm,
    /// `dΔ + Δd = 0`, reported separately.
    Anticommute,
}

impl DbvAxiom {
    pub fn name(self) -> &'static str {
        match self {
            DbvAxiom::Associative => "associativity",
            DbvAxiom::Commutative => "graded commutativity",
            DbvAxiom::Unital => "unit",
            DbvAxiom::UnitClosed => "d(1) = 0",
            DbvAxiom::Derivation => "Leibniz rule for d",
            DbvAxiom::DeltaSquare => "Δ² = 0",
            DbvAxiom::DeltaUnit => "Δ(1) = 0",
            DbvAxiom::SevenTerm => "seven-term relation",
            DbvAxiom::Anticommute => "dΔ + Δd = 0",
        }
    }

    pub const ALL: [DbvAxiom; 9] = [
        DbvAxiom::Associative,
        DbvAxiom::Commutative,
        DbvAxiom::Unital,
        DbvAxiom::UnitClosed,
        DbvAxiom::Derivation,
        DbvAxiom::DeltaSquare,
        DbvAxiom::DeltaUnit,
        DbvAxiom::SevenTerm,
        DbvAxiom::Anticommute,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbvViolation {
    pub axiom: DbvAxiom,
    pub basis: Vec<(i32, usize)>,
    pub residual: Elem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DbvReport {
    /// Per axiom: instances checked and instances failing.
    pub counts: BTreeMap<DbvAxiom, (usize, usize)>,
    pub violations: Vec<DbvViolation>,
}

impl DbvReport {
    fn record(&mut self, axiom: DbvAxiom, basis: Vec<(i32, usize)>, residual: Elem) {
        let e = self.counts.entry(axiom).or_insert((0, 0));
        e.0 += 1;
        if residual.is_zero() {
            return;
        }
        e.1 += 1;
        if e.1 <= REPORT_LIMIT {
            self.violations.push(DbvViolation { axiom, basis, residual });
        }
    }

    pub fn failures(&self, axiom: DbvAxiom) -> usize {
        self.counts.get(&axiom).map_or(0, |&(_, f)| f)
    }

    /// All axioms of the definition hold.
    pub fn passes(&self) -> bool {
        DbvAxiom::ALL
            .iter()
            .filter(|&&a| a != DbvAxiom::Anticommute)
            .all(|&a| self.failures(a) == 0)
    }

    pub fn anticommutes(&self) -> bool {
        self.failures(DbvAxiom::Anticommute) == 0
    }

    pub fn first(&self, axiom: DbvAxiom) -> Option<&DbvViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn first_failure(&self) -> Option<&DbvViolation> {
        self.violations.iter().find(|v| v.axiom != DbvAxiom::Anticommute)
    }
}

fn sgn(n: i32) -> Scalar {
    scalar::sign(n as i64)
}

/// Exhaustive check on basis elements, pairs and triples.
pub fn check_dbv(b: &DbvAlgebra) -> DbvReport {
    run_checks(b, false)
}

/// The first violated axiom of the definition, stopping early.
pub fn first_dbv_violation(b: &DbvAlgebra) -> Option<DbvViolation> {
    run_checks(b, true).first_failure().cloned()
}

fn run_checks(b: &DbvAlgebra, stop: bool) -> DbvReport {
    let space = b.space().clone();
    let basis = space.basis();
    let e = |(n, i): (i32, usize)| Elem::basis(&space, n, i);
    let mut r = DbvReport::default();
    let one = &b.unit;
    macro_rules! rec {
        ($ax:expr, $basis:expr, $res:expr $(,)?) => {
            r.record($ax, $basis, $res);
            if stop && r.first_failure().is_some() {
                return r;
            }
        };
    }

    rec!(DbvAxiom::UnitClosed, vec![], b.d(one));
    rec!(DbvAxiom::DeltaUnit, vec![], b.apply_delta(one));

    let pair: BTreeMap<((i32, usize), (i32, usize)), Elem> = basis
        .iter()
        .flat_map(|&x| basis.iter().map(move |&y| (x, y)))
        .map(|(x, y)| ((x, y), b.mul(&e(x), &e(y))))
        .collect();
    let delta: BTreeMap<(i32, usize), Elem> = basis.iter().map(|&x| (x, b.apply_delta(&e(x)))).collect();
    let delta_pair: BTreeMap<((i32, usize), (i32, usize)), Elem> =
        pair.iter().map(|(&key, v)| (key, b.apply_delta(v))).collect();

    for &x in &basis {
        let ex = e(x);
        rec!(DbvAxiom::Unital, vec![x], b.mul(one, &ex).sub(&ex));
        rec!(DbvAxiom::Unital, vec![x], b.mul(&ex, one).sub(&ex));
        rec!(DbvAxiom::DeltaSquare, vec![x], b.apply_delta(&delta[&x]));
        rec!(
            DbvAxiom::Anticommute,
            vec![x],
            b.d(&delta[&x]).add(&b.apply_delta(&b.d(&ex))),
        );
        for &y in &basis {
            let ey = e(y);
            let xy = &pair[&(x, y)];
            let yx = &pair[&(y, x)];
            rec!(DbvAxiom::Commutative, vec![x, y], xy.sub(&yx.scale(&sgn(x.0 * y.0))));
            let lhs = b.d(xy);
            let rhs = b.mul(&b.d(&ex), &ey).add(&b.mul(&ex, &b.d(&ey)).scale(&sgn(x.0)));
            rec!(DbvAxiom::Derivation, vec![x, y], lhs.sub(&rhs));
        }
    }

    for &x in &basis {
        for &y in &basis {
            for &z in &basis {
                let (ex, ey, ez) = (e(x), e(y), e(z));
                let (a, bb, c) = (x.0, y.0, z.0);
                let xy = &pair[&(x, y)];
                let yz = &pair[&(y, z)];
                let xyz = b.mul(xy, &ez);
                rec!(DbvAxiom::Associative, vec![x, y, z], xyz.sub(&b.mul(&ex, yz)));

                let mut s = b.apply_delta(&xyz);
                s = s.add(&b.mul(&b.mul(&delta[&x], &ey), &ez));
                s = s.add(&b.mul(&b.mul(&delta[&y], &ex), &ez).scale(&sgn(a * bb)));
                s = s.add(&b.mul(&b.mul(&delta[&z], &ex), &ey).scale(&sgn(c * (a + bb))));
                s = s.sub(&b.mul(&delta_pair[&(x, y)].clone(), &ez));
                s = s.sub(&b.mul(&delta_pair[&(y, z)].clone(), &ex).scale(&sgn(a * (bb + c))));
                s = s.sub(&b.mul(&delta_pair[&(x, z)].clone(), &ey).scale(&sgn(bb * c)));
                rec!(DbvAxiom::SevenTerm, vec![x, y, z], s);
            }
        }
    }
    r
}

/// `[a, b] = (−1)^p (Δ(ab) − Δ(a) b) − a Δ(b)` for `a ∈ A^p`, on elements of `A`.
pub fn derived_bracket_in_a(b: &DbvAlgebra, x: &Elem, y: &Elem) -> Elem {
    let xy = b.mul(x, y);
    let first = b.apply_delta(&xy).sub(&b.mul(&b.apply_delta(x), y));
    first.scale(&sgn(x.degree)).sub(&b.mul(x, &b.apply_delta(y)))
}

/// `A[k]` as a complex with `d_𝔤 = −d_A`, and the derived bracket table on it, with no axiom
/// gate.
pub fn derived_structure(b: &DbvAlgebra) -> (Complex, StructureTable) {
    let k = b.k;
    let g = b.complex.shift(k);
    let gs = g.space().clone();
    let mut table = StructureTable::new();
    for (n, i) in gs.basis() {
        for (m, j) in gs.basis() {
            let x = b.basis(n + k, i);
            let y = b.basis(m + k, j);
            let br = derived_bracket_in_a(b, &x, &y);
            for (l, c) in br.coords.iter().enumerate() {
                if !c.is_zero() {
                    table.add(n, i, m, j, l, c.clone());
                }
            }
        }
    }
    (g, table)
}

/// The derived DGLA `𝔤 = A[k]`; fails when an axiom of the definition does.
pub fn derived_dgla(b: &DbvAlgebra) -> Result<Dgla> {
    let report = check_dbv(b);
    if let Some(v) = report.first_failure() {
        return Err(Error::invalid(format!("{} fails on basis {:?}", v.axiom.name(), v.basis)));
    }
    let (g, table) = derived_structure(b);
    Dgla::new(g, table)
}

/// An element of `A^{n+k}` read as an element of `𝔤^n`.
pub fn to_lie(b: &DbvAlgebra, a: &Elem) -> Elem {
    Elem::new(a.degree - b.k, a.coords.clone())
}

pub fn from_lie(b: &DbvAlgebra, a: &Elem) -> Elem {
    Elem::new(a.degree + b.k, a.coords.clone())
}
