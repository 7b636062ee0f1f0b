//! Cartan homotopies and calculi, their semicosimplicial extension, and the injectivity and
//! semiregularity checks built on the homotopy fibre.

mod criterion;
pub mod models;
mod tw;

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::dgla::{Dgla, HomDgla};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap};
use crate::scalar::{self, Scalar};

pub use criterion::{
    injectivity_criterion, li_linear_part, semiregularity_check, CriterionReport, Filtration,
};
pub use tw::{tw_extend, SemicosimplicialCalculus, TwCalculus};

/// A DGLA acting on a complex by a degree −1 contraction.
///
/// Implementations only need homogeneous basis elements to be representable; identities are
/// verified element by element, so `Lie` and `Vector` need not live in finite models.
pub trait Calculus {
    type Lie: Clone;
    type Vector: Clone;

    fn lie_complex(&self) -> &Complex;
    fn module(&self) -> &Complex;
    fn lie_elem(&self, x: &Elem) -> Self::Lie;
    fn lie_degree(&self, a: &Self::Lie) -> i32;
    fn lie_d(&self, a: &Self::Lie) -> Self::Lie;
    fn lie_bracket(&self, a: &Self::Lie, b: &Self::Lie) -> Self::Lie;
    fn vector_elem(&self, x: &Elem) -> Self::Vector;
    fn vector_degree(&self, v: &Self::Vector) -> i32;
    fn vector_coords(&self, v: &Self::Vector) -> Result<Elem>;
    fn vector_d(&self, v: &Self::Vector) -> Self::Vector;
    fn vector_add(&self, v: &Self::Vector, w: &Self::Vector) -> Self::Vector;
    fn vector_scale(&self, v: &Self::Vector, c: &Scalar) -> Self::Vector;
    fn vector_is_zero(&self, v: &Self::Vector) -> bool;
    /// `a ⌟ v`, of degree `|a| + |v| − 1`.
    fn contract(&self, a: &Self::Lie, v: &Self::Vector) -> Self::Vector;
}

/// A finite calculus: `ops[p][i]` is the operator `i_{e}` for the basis element `e` of `L^p`.
#[derive(Clone, Debug)]
pub struct CartanHomotopy {
    pub lie: Dgla,
    pub module: Complex,
    pub ops: BTreeMap<i32, Vec<GradedMap>>,
}

impl CartanHomotopy {
    pub fn new(lie: Dgla, module: Complex, ops: BTreeMap<i32, Vec<GradedMap>>) -> Result<Self> {
        for p in lie.space().support() {
            let list = ops.get(&p).map(Vec::as_slice).unwrap_or(&[]);
            if list.len() != lie.dim(p) {
                return Err(Error::Shape {
                    degree: p,
                    detail: format!("expected {} contraction operators, got {}", lie.dim(p), list.len()),
                });
            }
            for f in list {
                if f.source() != module.space() || f.target() != module.space() || f.degree() != p - 1 {
                    return Err(Error::Shape {
                        degree: p,
                        detail: format!("contraction by a degree-{p} element must be an operator of degree {}", p - 1),
                    });
                }
            }
        }
        if let Some((&p, _)) = ops.iter().find(|(&p, l)| !l.is_empty() && lie.dim(p) == 0) {
            return Err(Error::Shape {
                degree: p,
                detail: "operators given for an empty degree".into(),
            });
        }
        Ok(CartanHomotopy { lie, module, ops })
    }

    /// The zero contraction.
    pub fn zero(lie: Dgla, module: Complex) -> Self {
        let ops = lie
            .space()
            .support()
            .into_iter()
            .map(|p| {
                let z = GradedMap::zero(module.space(), module.space(), p - 1);
                (p, vec![z; lie.dim(p)])
            })
            .collect();
        CartanHomotopy { lie, module, ops }
    }

    /// `i_a` for an arbitrary homogeneous `a`.
    pub fn op(&self, a: &Elem) -> GradedMap {
        let mut acc = GradedMap::zero(self.module.space(), self.module.space(), a.degree - 1);
        if let Some(list) = self.ops.get(&a.degree) {
            for (c, f) in a.coords.iter().zip(list) {
                if !num_traits::Zero::is_zero(c) {
                    acc = acc.add(&f.scale(c));
                }
            }
        }
        acc
    }

    /// `l_a = [d, i_a] + i_{da}`.
    pub fn lie_derivative(&self, a: &Elem) -> GradedMap {
        let i = self.op(a);
        let d = self.module.d();
        let di = d.compose(&i).expect("shapes");
        let id = i.compose(d).expect("shapes");
        di.sub(&id.scale(&scalar::sign(i.degree() as i64)))
            .add(&self.op(&self.lie.d(a)))
    }

    /// `i` as a degree −1 map `L → Hom*(V, V)`.
    pub fn as_map(&self, hom: &HomDgla) -> GradedMap {
        let target = hom.dgla.space().clone();
        GradedMap::from_fn(self.lie.space(), &target, -1, |p| {
            let cols: Vec<Vec<Scalar>> = (0..self.lie.dim(p))
                .map(|i| hom.from_map(&self.op(&self.lie.basis(p, i))).coords)
                .collect();
            crate::matrix::Matrix::from_cols(target.dim(p - 1), &cols)
        })
        .expect("contraction map")
    }
}

impl Calculus for CartanHomotopy {
    type Lie = Elem;
    type Vector = Elem;

    fn lie_complex(&self) -> &Complex {
        self.lie.complex()
    }
    fn module(&self) -> &Complex {
        &self.module
    }
    fn lie_elem(&self, x: &Elem) -> Elem {
        x.clone()
    }
    fn lie_degree(&self, a: &Elem) -> i32 {
        a.degree
    }
    fn lie_d(&self, a: &Elem) -> Elem {
        self.lie.d(a)
    }
    fn lie_bracket(&self, a: &Elem, b: &Elem) -> Elem {
        self.lie.bracket(a, b)
    }
    fn vector_elem(&self, x: &Elem) -> Elem {
        x.clone()
    }
    fn vector_degree(&self, v: &Elem) -> i32 {
        v.degree
    }
    fn vector_coords(&self, v: &Elem) -> Result<Elem> {
        Ok(v.clone())
    }
    fn vector_d(&self, v: &Elem) -> Elem {
        self.module.apply_d(v)
    }
    fn vector_add(&self, v: &Elem, w: &Elem) -> Elem {
        v.add(w)
    }
    fn vector_scale(&self, v: &Elem, c: &Scalar) -> Elem {
        v.scale(c)
    }
    fn vector_is_zero(&self, v: &Elem) -> bool {
        v.is_zero()
    }
    fn contract(&self, a: &Elem, v: &Elem) -> Elem {
        self.op(a).apply(v)
    }
}

/// The materialized operator `i_a` on the module of a calculus.
pub fn operator<C: Calculus>(c: &C, a: &C::Lie) -> Result<GradedMap> {
    let v = c.module().space();
    let r = c.lie_degree(a) - 1;
    let mut blocks = BTreeMap::new();
    for n in v.support() {
        let mut cols = Vec::new();
        for j in 0..v.dim(n) {
            let img = c.contract(a, &c.vector_elem(&Elem::basis(v, n, j)));
            let coords = if c.vector_is_zero(&img) {
                vec![Scalar::from_integer(0.into()); v.dim(n + r)]
            } else {
                c.vector_coords(&img)?.coords
            };
            cols.push(coords);
        }
        if v.dim(n + r) > 0 {
            blocks.insert(n, crate::matrix::Matrix::from_cols(v.dim(n + r), &cols));
        }
    }
    GradedMap::new(v.clone(), v.clone(), r, blocks)
}

/// Materialize a calculus into a finite one over the given Lie algebra.
pub fn materialize<C: Calculus>(c: &C, lie: Dgla) -> Result<CartanHomotopy> {
    if lie.complex() != c.lie_complex() {
        return Err(Error::invalid("Lie algebra does not match the calculus"));
    }
    let mut ops = BTreeMap::new();
    for p in lie.space().support() {
        let list = (0..lie.dim(p))
            .map(|i| operator(c, &c.lie_elem(&lie.basis(p, i))))
            .collect::<Result<Vec<_>>>()?;
        ops.insert(p, list);
    }
    CartanHomotopy::new(lie, c.module().clone(), ops)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanIdentity {
    /// `[i_a, i_b] = 0`.
    Commuting,
    /// `i_{[a,b]} = [i_a, d_M i_b]`.
    Bracket,
    /// `l_{[a,b]} = [l_a, l_b]`.
    LieMorphism,
    /// `l_{da} = d_M l_a`.
    LieChain,
}

impl CartanIdentity {
    pub fn name(self) -> &'static str {
        match self {
            CartanIdentity::Commuting => "commuting",
            CartanIdentity::Bracket => "bracket",
            CartanIdentity::LieMorphism => "lie-morphism",
            CartanIdentity::LieChain => "lie-chain",
        }
    }

    pub const ALL: [CartanIdentity; 4] = [
        CartanIdentity::Commuting,
        CartanIdentity::Bracket,
        CartanIdentity::LieMorphism,
        CartanIdentity::LieChain,
    ];
}

/// A failing instance: Lie basis elements `a` (and `b`) and, for module-level checks, the
/// module basis element `v` on which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanViolation {
    pub identity: CartanIdentity,
    pub a: (i32, usize),
    pub b: Option<(i32, usize)>,
    pub v: Option<(i32, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CartanReport {
    /// Per identity: number of instances checked and number failing.
    pub counts: BTreeMap<CartanIdentity, (usize, usize)>,
    pub violations: Vec<CartanViolation>,
}

impl CartanReport {
    fn record(&mut self, ok: bool, v: CartanViolation) {
        let e = self.counts.entry(v.identity).or_insert((0, 0));
        e.0 += 1;
        if !ok {
            e.1 += 1;
            if self.violations.iter().filter(|w| w.identity == v.identity).count()
                < crate::dgla::REPORT_LIMIT
            {
                self.violations.push(v);
            }
        }
    }

    pub fn passes(&self) -> bool {
        self.counts.values().all(|&(_, f)| f == 0)
    }

    pub fn failures(&self, id: CartanIdentity) -> usize {
        self.counts.get(&id).map_or(0, |&(_, f)| f)
    }

    pub fn first(&self) -> Option<&CartanViolation> {
        self.violations.first()
    }
}

struct Ops<'a, C: Calculus> {
    c: &'a C,
}

impl<C: Calculus> Ops<'_, C> {
    fn sub(&self, v: &C::Vector, w: &C::Vector) -> C::Vector {
        self.c.vector_add(v, &self.c.vector_scale(w, &scalar::int(-1)))
    }

    fn i(&self, a: &C::Lie, v: &C::Vector) -> C::Vector {
        self.c.contract(a, v)
    }

    /// `[d, i_b](v) = d(i_b v) − (−1)^{|b|−1} i_b(dv)`.
    fn di(&self, b: &C::Lie, v: &C::Vector) -> C::Vector {
        let s = scalar::sign((self.c.lie_degree(b) - 1) as i64);
        let left = self.c.vector_d(&self.i(b, v));
        let right = self.i(b, &self.c.vector_d(v));
        self.sub(&left, &self.c.vector_scale(&right, &s))
    }

    fn l(&self, b: &C::Lie, v: &C::Vector) -> C::Vector {
        self.c.vector_add(&self.di(b, v), &self.i(&self.c.lie_d(b), v))
    }

    /// `f(g v) − (−1)^{|f||g|} g(f v)`.
    fn comm(
        &self,
        f: &dyn Fn(&C::Vector) -> C::Vector,
        df: i32,
        g: &dyn Fn(&C::Vector) -> C::Vector,
        dg: i32,
        v: &C::Vector,
    ) -> C::Vector {
        let s = scalar::sign((df * dg) as i64);
        self.sub(&f(&g(v)), &self.c.vector_scale(&g(&f(v)), &s))
    }
}

/// Exhaustive check of the Cartan identities on basis elements of `L` and of the module.
pub fn check_calculus<C: Calculus>(c: &C) -> CartanReport {
    let ops = Ops { c };
    let mut report = CartanReport::default();
    let ls = c.lie_complex().space().clone();
    let vs = c.module().space().clone();
    let lbasis: Vec<((i32, usize), C::Lie)> = ls
        .basis()
        .into_iter()
        .map(|(p, i)| ((p, i), c.lie_elem(&Elem::basis(&ls, p, i))))
        .collect();
    let vbasis: Vec<((i32, usize), C::Vector)> = vs
        .basis()
        .into_iter()
        .map(|(n, j)| ((n, j), c.vector_elem(&Elem::basis(&vs, n, j))))
        .collect();
    for (ka, a) in &lbasis {
        let pa = ka.0;
        let da = c.lie_d(a);
        for (kv, v) in &vbasis {
            let lhs = ops.l(&da, v);
            let lv = ops.l(a, v);
            let rhs = ops.sub(
                &c.vector_d(&lv),
                &c.vector_scale(&ops.l(a, &c.vector_d(v)), &scalar::sign(pa as i64)),
            );
            report.record(
                c.vector_is_zero(&ops.sub(&lhs, &rhs)),
                CartanViolation {
                    identity: CartanIdentity::LieChain,
                    a: *ka,
                    b: None,
                    v: Some(*kv),
                },
            );
        }
        for (kb, b) in &lbasis {
            let pb = kb.0;
            let ab = c.lie_bracket(a, b);
            for (kv, v) in &vbasis {
                let viol = |identity| CartanViolation {
                    identity,
                    a: *ka,
                    b: Some(*kb),
                    v: Some(*kv),
                };
                let ia = |w: &C::Vector| ops.i(a, w);
                let ib = |w: &C::Vector| ops.i(b, w);
                let comm = ops.comm(&ia, pa - 1, &ib, pb - 1, v);
                report.record(c.vector_is_zero(&comm), viol(CartanIdentity::Commuting));

                let dib = |w: &C::Vector| ops.di(b, w);
                let rhs = ops.comm(&ia, pa - 1, &dib, pb, v);
                let lhs = ops.i(&ab, v);
                report.record(
                    c.vector_is_zero(&ops.sub(&lhs, &rhs)),
                    viol(CartanIdentity::Bracket),
                );

                let la = |w: &C::Vector| ops.l(a, w);
                let lb = |w: &C::Vector| ops.l(b, w);
                let rhs = ops.comm(&la, pa, &lb, pb, v);
                let lhs = ops.l(&ab, v);
                report.record(
                    c.vector_is_zero(&ops.sub(&lhs, &rhs)),
                    viol(CartanIdentity::LieMorphism),
                );
            }
        }
    }
    report
}

/// The same identities for a degree −1 map `i: L → M` into an arbitrary DGLA.
pub fn check_cartan(l: &Dgla, m: &Dgla, i: &GradedMap) -> Result<CartanReport> {
    if i.source() != l.space() || i.target() != m.space() || i.degree() != -1 {
        return Err(Error::invalid("i must be a degree −1 map L → M"));
    }
    let mut report = CartanReport::default();
    let basis = l.space().basis();
    let lmap = |a: &Elem| m.d(&i.apply(a)).add(&i.apply(&l.d(a)));
    for &(p, x) in &basis {
        let a = l.basis(p, x);
        let lhs = lmap(&l.d(&a));
        let rhs = m.d(&lmap(&a));
        report.record(
            lhs.sub(&rhs).is_zero(),
            CartanViolation {
                identity: CartanIdentity::LieChain,
                a: (p, x),
                b: None,
                v: None,
            },
        );
        for &(q, y) in &basis {
            let b = l.basis(q, y);
            let viol = |identity| CartanViolation {
                identity,
                a: (p, x),
                b: Some((q, y)),
                v: None,
            };
            let ab = l.bracket(&a, &b);
            report.record(
                m.bracket(&i.apply(&a), &i.apply(&b)).is_zero(),
                viol(CartanIdentity::Commuting),
            );
            let rhs = m.bracket(&i.apply(&a), &m.d(&i.apply(&b)));
            report.record(i.apply(&ab).sub(&rhs).is_zero(), viol(CartanIdentity::Bracket));
            let rhs = m.bracket(&lmap(&a), &lmap(&b));
            report.record(lmap(&ab).sub(&rhs).is_zero(), viol(CartanIdentity::LieMorphism));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::hom_dgla;
    use models::*;

    #[test]
    fn zero_contraction_is_cartan() {
        let m = log_model(2);
        let z = CartanHomotopy::zero(m.calculus.lie.clone(), m.calculus.module.clone());
        assert!(check_calculus(&z).passes());
    }

    #[test]
    fn log_model_values() {
        let m = log_model(3);
        let c = &m.calculus;
        let v = c.module.space();
        // x∂ ⌟ dx/x = 1
        let a = c.lie.basis(0, 0);
        assert_eq!(c.contract(&a, &Elem::basis(v, 1, 0)), Elem::basis(v, 0, 0));
        // x²∂ ⌟ x dx/x = x²
        let a = c.lie.basis(0, 1);
        assert_eq!(c.contract(&a, &Elem::basis(v, 1, 1)), Elem::basis(v, 0, 2));
        assert!(check_calculus(c).passes());
    }

    #[test]
    fn affine_model_and_sign_error() {
        for p in 1..=4 {
            assert!(check_calculus(&affine_model(p).calculus).passes(), "P = {p}");
        }
        let bad = affine_model_with_sign_error(3);
        let r = check_calculus(&bad.calculus);
        assert!(!r.passes());
        assert!(r.first().is_some());
    }

    #[test]
    fn element_check_agrees_with_hom_dgla() {
        for m in [log_model(2), affine_model(2), abelian_calculus(), nilpotent_calculus()] {
            let c = &m.calculus;
            let hom = hom_dgla(&c.module);
            let r = check_cartan(&c.lie, &hom.dgla, &c.as_map(&hom)).unwrap();
            assert!(r.passes());
            assert!(check_calculus(c).passes());
        }
        let bad = affine_model_with_sign_error(2);
        let hom = hom_dgla(&bad.calculus.module);
        let r = check_cartan(&bad.calculus.lie, &hom.dgla, &bad.calculus.as_map(&hom)).unwrap();
        assert!(!r.passes());
    }

    #[test]
    fn materialize_round_trip() {
        let m = nilpotent_calculus();
        let again = materialize(&m.calculus, m.calculus.lie.clone()).unwrap();
        assert_eq!(again.ops, m.calculus.ops);
    }

    #[test]
    fn lie_derivative_is_homotopic_to_zero() {
        let m = log_model(3);
        let c = &m.calculus;
        let hom = hom_dgla(&c.module);
        for (p, i) in c.lie.space().basis() {
            let a = c.lie.basis(p, i);
            let l = c.lie_derivative(&a);
            let di = hom.dgla.d(&hom.from_map(&c.op(&a)));
            let ida = hom.from_map(&c.op(&c.lie.d(&a)));
            assert_eq!(hom.from_map(&l), di.add(&ida));
        }
    }
}
