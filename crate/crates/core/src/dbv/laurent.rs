//! Laurent windows `F^{p_min} / F^{p_max+1}` of `(A((t)), d − tΔ)` and the contraction
//! `i_a(b) = ab/t`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cartan::Calculus;
use crate::complex::Complex;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

use super::{derived_dgla, from_lie, DbvAlgebra};

/// Widest window the automatic sizing will build.
pub const WINDOW_CAP: i32 = 64;

/// A sparse Laurent polynomial `Σ t^p a_p` of fixed total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentVector {
    pub degree: i32,
    pub terms: BTreeMap<i32, Elem>,
}

impl LaurentVector {
    pub fn zero(degree: i32) -> Self {
        LaurentVector {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(b: &DbvAlgebra, p: i32, a: Elem) -> Self {
        let mut v = Self::zero(a.degree + p * (b.k() + 1));
        v.add_term(p, a);
        v
    }

    fn add_term(&mut self, p: i32, a: Elem) {
        if a.is_zero() {
            return;
        }
        let slot = self.terms.entry(p).or_insert_with(|| Elem::new(a.degree, vec![Scalar::zero(); a.coords.len()]));
        *slot = slot.add(&a);
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &LaurentVector) -> LaurentVector {
        let mut out = self.clone();
        for (&p, a) in &other.terms {
            out.add_term(p, a.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LaurentVector {
        let mut out = LaurentVector::zero(self.degree);
        if !c.is_zero() {
            for (&p, a) in &self.terms {
                out.terms.insert(p, a.scale(c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn powers(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    /// `(d − tΔ) v`.
    pub fn differential(&self, b: &DbvAlgebra) -> LaurentVector {
        let mut out = LaurentVector::zero(self.degree + 1);
        for (&p, a) in &self.terms {
            out.add_term(p, b.d(a));
            out.add_term(p + 1, b.apply_delta(a).scale(&scalar::int(-1)));
        }
        out
    }

    /// `x · v` for `x ∈ A`.
    pub fn left_mul(&self, b: &DbvAlgebra, x: &Elem) -> LaurentVector {
        let mut out = LaurentVector::zero(self.degree + x.degree);
        for (&p, a) in &self.terms {
            out.add_term(p, b.mul(x, a));
        }
        out
    }

    pub fn shift_power(&self, b: &DbvAlgebra, r: i32) -> LaurentVector {
        LaurentVector {
            degree: self.degree + r * (b.k() + 1),
            terms: self.terms.iter().map(|(&p, a)| (p + r, a.clone())).collect(),
        }
    }

    /// Applies an operator of `A` coefficientwise.
    pub fn map(&self, f: &dyn Fn(&Elem) -> Elem, degree: i32) -> LaurentVector {
        let mut out = LaurentVector::zero(self.degree + degree);
        for (&p, a) in &self.terms {
            out.add_term(p, f(a));
        }
        out
    }
}

/// `F^{p_min} / F^{p_max+1}`: the span of `t^p a` with `p_min ≤ p ≤ p_max`, with `d − tΔ`.
#[derive(Clone, Debug)]
pub struct LaurentWindow {
    alg: DbvAlgebra,
    pmin: i32,
    pmax: i32,
    /// Per total degree, the `(p, index in A^{n − p(1+k)})` of each basis element.
    index: BTreeMap<i32, Vec<(i32, usize)>>,
    complex: Complex,
}

impl LaurentWindow {
    pub fn new(alg: &DbvAlgebra, pmin: i32, pmax: i32) -> Result<Self> {
        if pmin > pmax {
            return Err(Error::invalid(format!("empty window [{pmin}, {pmax}]")));
        }
        if pmax - pmin > WINDOW_CAP {
            return Err(Error::WindowExceeded {
                power: pmax,
                pmin,
                pmax: pmin + WINDOW_CAP,
            });
        }
        let tdeg = alg.k() + 1;
        if tdeg == 0 {
            return Err(Error::invalid("t must have nonzero degree (k = −1)"));
        }
        let mut index: BTreeMap<i32, Vec<(i32, usize)>> = BTreeMap::new();
        for p in pmin..=pmax {
            for m in alg.space().support() {
                for j in 0..alg.space().dim(m) {
                    index.entry(m + p * tdeg).or_default().push((p, j));
                }
            }
        }
        let labels: BTreeMap<i32, Vec<String>> = index
            .iter()
            .map(|(&n, list)| {
                let names = list
                    .iter()
                    .map(|&(p, j)| format!("t^{p} {}", alg.space().label(n - p * tdeg, j)))
                    .collect();
                (n, names)
            })
            .collect();
        let space = GradedSpace::new(index.iter().map(|(&n, l)| (n, l.len()))).with_labels(labels)?;
        let mut w = LaurentWindow {
            alg: alg.clone(),
            pmin,
            pmax,
            index,
            complex: Complex::zero_differential(space.clone()),
        };
        let d = GradedMap::from_fn(&space, &space, 1, |n| {
            let cols: Vec<Vec<Scalar>> = (0..space.dim(n))
                .map(|i| {
                    let v = w.vector(&Elem::basis(&space, n, i));
                    w.coords_truncated(&v.differential(alg)).coords
                })
                .collect();
            Matrix::from_cols(space.dim(n + 1), &cols)
        })?;
        w.complex = Complex::new(d)?;
        Ok(w)
    }

    /// Smallest window that models `F^{floor}` (or all of `A((t))` when `floor` is `None`)
    /// exactly in the total degrees `lo..=hi`.
    pub fn covering(alg: &DbvAlgebra, lo: i32, hi: i32, floor: Option<i32>) -> Result<Self> {
        let tdeg = alg.k() + 1;
        if tdeg == 0 {
            return Err(Error::invalid("t must have nonzero degree (k = −1)"));
        }
        let mut ps: Vec<i32> = Vec::new();
        for n in lo - 1..=hi + 1 {
            for m in alg.space().support() {
                if (n - m).rem_euclid(tdeg) == 0 {
                    let p = (n - m) / tdeg;
                    if floor.map_or(true, |f| p >= f) {
                        ps.push(p);
                    }
                }
            }
        }
        let base = floor.unwrap_or(0);
        let pmin = floor.unwrap_or_else(|| ps.iter().copied().min().unwrap_or(base).min(base));
        let pmax = ps.iter().copied().max().unwrap_or(base).max(pmin);
        Self::new(alg, pmin, pmax)
    }

    pub fn algebra(&self) -> &DbvAlgebra {
        &self.alg
    }

    pub fn pmin(&self) -> i32 {
        self.pmin
    }

    pub fn pmax(&self) -> i32 {
        self.pmax
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    /// `(p, j)` of basis element `i` in total degree `n`.
    pub fn basis_term(&self, n: i32, i: usize) -> (i32, usize) {
        self.index[&n][i]
    }

    pub fn vector(&self, x: &Elem) -> LaurentVector {
        let tdeg = self.alg.k() + 1;
        let mut v = LaurentVector::zero(x.degree);
        if let Some(list) = self.index.get(&x.degree) {
            for (&(p, j), c) in list.iter().zip(&x.coords) {
                if !c.is_zero() {
                    let a = Elem::basis(self.alg.space(), x.degree - p * tdeg, j).scale(c);
                    v.add_term(p, a);
                }
            }
        }
        v
    }

    fn coords_truncated(&self, v: &LaurentVector) -> Elem {
        let list = self.index.get(&v.degree).map(Vec::as_slice).unwrap_or(&[]);
        let coords = list
            .iter()
            .map(|&(p, j)| v.terms.get(&p).map_or(Scalar::zero(), |a| a.coords[j].clone()))
            .collect();
        Elem::new(v.degree, coords)
    }

    /// Powers above the window are dropped (the quotient by `F^{p_max+1}`); powers below it are
    /// an error.
    pub fn coords(&self, v: &LaurentVector) -> Result<Elem> {
        if let Some((lo, _)) = v.powers() {
            if lo < self.pmin {
                return Err(Error::WindowExceeded {
                    power: lo,
                    pmin: self.pmin,
                    pmax: self.pmax,
                });
            }
        }
        Ok(self.coords_truncated(v))
    }

    /// Like [`coords`](Self::coords) but also refuses powers above the window.
    pub fn coords_strict(&self, v: &LaurentVector) -> Result<Elem> {
        if let Some((_, hi)) = v.powers() {
            if hi > self.pmax {
                return Err(Error::WindowExceeded {
                    power: hi,
                    pmin: self.pmin,
                    pmax: self.pmax,
                });
            }
        }
        self.coords(v)
    }

    /// The inclusion of a window with the same top and a higher floor.
    pub fn inclusion_from(&self, sub: &LaurentWindow) -> Result<GradedMap> {
        if sub.pmax != self.pmax || sub.pmin < self.pmin {
            return Err(Error::invalid("not a subwindow"));
        }
        GradedMap::from_fn(sub.space(), self.space(), 0, |n| {
            let cols: Vec<Vec<Scalar>> = (0..sub.space().dim(n))
                .map(|i| self.coords_truncated(&sub.vector(&Elem::basis(sub.space(), n, i))).coords)
                .collect();
            Matrix::from_cols(self.space().dim(n), &cols)
        })
    }

    /// Setting `t = 0`: the coefficient of `t^0`. Only defined for windows with `p_min = 0`.
    pub fn evaluation_at_zero(&self) -> Result<GradedMap> {
        if self.pmin != 0 {
            return Err(Error::invalid("evaluation at t = 0 needs a window starting at t^0"));
        }
        let a = self.alg.space();
        GradedMap::from_fn(self.space(), a, 0, |n| {
            let cols: Vec<Vec<Scalar>> = (0..self.space().dim(n))
                .map(|i| {
                    let v = self.vector(&Elem::basis(self.space(), n, i));
                    v.terms.get(&0).map_or_else(|| vec![Scalar::zero(); a.dim(n)], |x| x.coords.clone())
                })
                .collect();
            Matrix::from_cols(a.dim(n), &cols)
        })
    }

    /// Total degrees in which the window agrees with `F^{p_min}` (`bounded_below`) or with all of
    /// `A((t))`.
    pub fn complete_in(&self, n: i32, bounded_below: bool) -> bool {
        let tdeg = self.alg.k() + 1;
        self.alg.space().support().into_iter().all(|m| {
            if (n - m).rem_euclid(tdeg) != 0 {
                return true;
            }
            let p = (n - m) / tdeg;
            p <= self.pmax && (bounded_below || p >= self.pmin)
        })
    }
}

/// The derived DGLA acting on a Laurent window by `i_a(b) = ab/t`.
#[derive(Clone, Debug)]
pub struct LaurentCalculus {
    pub lie: Dgla,
    pub window: LaurentWindow,
}

pub fn cartan_over_t(b: &DbvAlgebra, pmin: i32, pmax: i32) -> Result<LaurentCalculus> {
    let lie = derived_dgla(b)?;
    let window = LaurentWindow::new(b, pmin, pmax)?;
    Ok(LaurentCalculus { lie, window })
}

impl LaurentCalculus {
    fn alg(&self) -> &DbvAlgebra {
        &self.window.alg
    }

    /// `l_b = [d − tΔ, i_b] + i_{d_𝔤 b}` from the definition.
    pub fn lie_derivative(&self, b: &Elem, v: &LaurentVector) -> LaurentVector {
        let s = scalar::sign((b.degree - 1) as i64);
        let left = self.vector_d(&self.contract(b, v));
        let right = self.contract(b, &self.vector_d(v)).scale(&s);
        left.add(&right.scale(&scalar::int(-1)))
            .add(&self.contract(&self.lie.d(b), v))
    }

    /// `l_b(c) = −Δ(bc) + (−1)^{b̄} b Δ(c)` with `b̄` the degree in `A`.
    pub fn lie_derivative_closed_form(&self, b: &Elem, v: &LaurentVector) -> LaurentVector {
        let alg = self.alg();
        let a = from_lie(alg, b);
        let s = scalar::sign(a.degree as i64);
        let bc = v.left_mul(alg, &a);
        let first = bc.map(&|x| alg.apply_delta(x), -alg.k()).scale(&scalar::int(-1));
        let dc = v.map(&|x| alg.apply_delta(x), -alg.k());
        first.add(&dc.left_mul(alg, &a).scale(&s))
    }

    /// Basis pairs `(b, v)` on which the two descriptions of `l_b(v)` differ.
    pub fn closed_form_mismatches(&self) -> Vec<((i32, usize), (i32, usize))> {
        let ls = self.lie.space().clone();
        let vs = self.window.space().clone();
        let mut out = Vec::new();
        for (p, i) in ls.basis() {
            let b = Elem::basis(&ls, p, i);
            for (n, j) in vs.basis() {
                let v = self.window.vector(&Elem::basis(&vs, n, j));
                if self.lie_derivative(&b, &v) != self.lie_derivative_closed_form(&b, &v) {
                    out.push(((p, i), (n, j)));
                }
            }
        }
        out
    }

    /// Whether `i_a` maps `F^p` into `F^{p−1}` and `l_a` maps `F^p` into `F^p` on the window.
    pub fn respects_filtration(&self) -> bool {
        let ls = self.lie.space().clone();
        let vs = self.window.space().clone();
        ls.basis().into_iter().all(|(p, i)| {
            let b = Elem::basis(&ls, p, i);
            vs.basis().into_iter().all(|(n, j)| {
                let v = self.window.vector(&Elem::basis(&vs, n, j));
                let floor = v.powers().map_or(0, |(lo, _)| lo);
                let iv = self.contract(&b, &v).powers().map_or(true, |(lo, _)| lo >= floor - 1);
                let lv = self.lie_derivative(&b, &v).powers().map_or(true, |(lo, _)| lo >= floor);
                iv && lv
            })
        })
    }
}

impl Calculus for LaurentCalculus {
    type Lie = Elem;
    type Vector = LaurentVector;

    fn lie_complex(&self) -> &Complex {
        self.lie.complex()
    }
    fn module(&self) -> &Complex {
        self.window.complex()
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
    fn vector_elem(&self, x: &Elem) -> LaurentVector {
        self.window.vector(x)
    }
    fn vector_degree(&self, v: &LaurentVector) -> i32 {
        v.degree
    }
    fn vector_coords(&self, v: &LaurentVector) -> Result<Elem> {
        self.window.coords_strict(v)
    }
    fn vector_d(&self, v: &LaurentVector) -> LaurentVector {
        v.differential(self.alg())
    }
    fn vector_add(&self, v: &LaurentVector, w: &LaurentVector) -> LaurentVector {
        v.add(w)
    }
    fn vector_scale(&self, v: &LaurentVector, c: &Scalar) -> LaurentVector {
        v.scale(c)
    }
    fn vector_is_zero(&self, v: &LaurentVector) -> bool {
        v.is_zero()
    }
    fn contract(&self, a: &Elem, v: &LaurentVector) -> LaurentVector {
        let alg = self.alg();
        v.left_mul(alg, &from_lie(alg, a)).shift_power(alg, -1)
    }
}

#[cfg(test)]
mod tests {
    use super::super::models::*;
    use super::*;
    use crate::cartan::{check_calculus, operator};

    #[test]
    fn window_differential_squares_to_zero() {
        for b in [koszul(2), bigraded_e1(), koszul_first_order(2)] {
            let w = LaurentWindow::new(&b, -2, 3).unwrap();
            for n in w.space().support() {
                let dd = w.complex().d_block(n + 1).mul(&w.complex().d_block(n));
                assert!(dd.is_zero());
            }
        }
    }

    #[test]
    fn t_is_closed() {
        let b = koszul(2);
        let one = LaurentVector::monomial(&b, 1, b.unit().clone());
        assert!(one.differential(&b).is_zero());
    }

    #[test]
    fn koszul_cartan_identities() {
        for p in 1..=2 {
            let c = cartan_over_t(&koszul(p), -2, 2).unwrap();
            let r = check_calculus(&c);
            assert!(r.passes(), "{:?}", r.first());
            assert!(c.closed_form_mismatches().is_empty());
            assert!(c.respects_filtration());
        }
    }

    #[test]
    fn lie_derivative_of_unit_vanishes() {
        let b = koszul(2);
        let c = cartan_over_t(&b, -1, 1).unwrap();
        let one = super::super::to_lie(&b, b.unit());
        for (n, j) in c.window.space().basis() {
            let v = c.window.vector(&Elem::basis(c.window.space(), n, j));
            assert!(c.lie_derivative(&one, &v).is_zero());
            assert_eq!(c.contract(&one, &v), v.shift_power(&b, -1));
        }
    }

    #[test]
    fn zero_delta_has_zero_lie_derivative() {
        let b = koszul_zero_delta(2);
        let c = cartan_over_t(&b, -1, 1).unwrap();
        assert!(check_calculus(&c).passes());
        for (p, i) in c.lie.space().basis() {
            for (n, j) in c.window.space().basis() {
                let v = c.window.vector(&Elem::basis(c.window.space(), n, j));
                assert!(c.lie_derivative(&Elem::basis(c.lie.space(), p, i), &v).is_zero());
            }
        }
    }

    #[test]
    fn xi_acting_on_x_xi() {
        let b = koszul(2);
        let c = cartan_over_t(&b, -1, 1).unwrap();
        let xi = super::super::to_lie(&b, &b.basis(1, 0));
        let v = LaurentVector::monomial(&b, 0, b.basis(1, 1));
        let l = c.lie_derivative(&xi, &v);
        assert_eq!(l, c.lie_derivative_closed_form(&xi, &v));
        assert_eq!(l, LaurentVector::monomial(&b, 0, b.basis(1, 1).scale(&scalar::int(-1))));
    }

    #[test]
    fn contraction_leaves_the_window() {
        let b = koszul(1);
        let c = cartan_over_t(&b, 0, 1).unwrap();
        let one = super::super::to_lie(&b, b.unit());
        assert!(matches!(operator(&c, &one), Err(Error::WindowExceeded { power: -1, .. })));
    }

    #[test]
    fn covering_windows_are_complete() {
        let b = bigraded_e1();
        let w = LaurentWindow::covering(&b, -4, 4, Some(0)).unwrap();
        assert!((-4..=4).all(|n| w.complete_in(n, true)));
        let w = LaurentWindow::covering(&b, -4, 4, None).unwrap();
        assert!((-4..=4).all(|n| w.complete_in(n, false)));
    }
}
