//! The homotopy fibre of an injective DGLA morphism, truncated in polynomial degree.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::{Complex, Quotient, Subspace};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::{self, Matrix};
use crate::scalar::{self, Scalar};

use super::{Dgla, DglaMorphism};

/// Basis elements of a fixed degree `p` of the fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FibreGen {
    /// `(e_i, t^D χ(e_i))` with `e_i ∈ L^p`.
    Pair(usize),
    /// `(0, (t^k − t^D) e_j)` with `e_j ∈ M^p`, `1 ≤ k < D`.
    Poly(usize, usize),
    /// `(0, t^k dt e_j)` with `e_j ∈ M^{p−1}`, `0 ≤ k < D`.
    Dt(usize, usize),
}

/// An element `(l, Σ t^k m_k + Σ t^k dt n_k)` of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreElem {
    pub degree: i32,
    pub l: Vec<Scalar>,
    /// `t[k]` is the coefficient of `t^k`, in `M^degree`.
    pub t: Vec<Vec<Scalar>>,
    /// `dt[k]` is the coefficient of `t^k dt`, in `M^{degree−1}`.
    pub dt: Vec<Vec<Scalar>>,
}

impl FibreElem {
    fn zero(l: &Dgla, m: &Dgla, degree: i32, tlen: usize, dtlen: usize) -> Self {
        FibreElem {
            degree,
            l: vec![Scalar::zero(); l.dim(degree)],
            t: vec![vec![Scalar::zero(); m.dim(degree)]; tlen],
            dt: vec![vec![Scalar::zero(); m.dim(degree - 1)]; dtlen],
        }
    }

    /// Highest t-degree present, counting `dt` as 1.
    pub fn poly_degree(&self) -> usize {
        let t = self.t.iter().rposition(|v| !matrix::is_zero_vec(v));
        let dt = self.dt.iter().rposition(|v| !matrix::is_zero_vec(v)).map(|k| k + 1);
        t.unwrap_or(0).max(dt.unwrap_or(0))
    }
}

#[derive(Clone, Debug)]
pub struct HomotopyFibre {
    pub l: Dgla,
    pub m: Dgla,
    pub chi: GradedMap,
    pub bound: usize,
    pub complex: Complex,
    pub gens: BTreeMap<i32, Vec<FibreGen>>,
}

pub fn homotopy_fibre(l: &Dgla, m: &Dgla, chi: &DglaMorphism, bound: usize) -> Result<HomotopyFibre> {
    if bound < 1 {
        return Err(Error::invalid("polynomial bound must be at least 1"));
    }
    let chi = chi.map().clone();
    if let Some(n) = chi.first_non_injective_degree() {
        return Err(Error::NotInjective { degree: n });
    }
    let mut degrees: Vec<i32> = l.space().support();
    degrees.extend(m.space().support());
    degrees.extend(m.space().support().into_iter().map(|n| n + 1));
    degrees.sort_unstable();
    degrees.dedup();
    let mut gens = BTreeMap::new();
    for &p in &degrees {
        let mut g: Vec<FibreGen> = (0..l.dim(p)).map(FibreGen::Pair).collect();
        for k in 1..bound {
            g.extend((0..m.dim(p)).map(|j| FibreGen::Poly(k, j)));
        }
        for k in 0..bound {
            g.extend((0..m.dim(p - 1)).map(|j| FibreGen::Dt(k, j)));
        }
        if !g.is_empty() {
            gens.insert(p, g);
        }
    }
    let space = GradedSpace::new(gens.iter().map(|(&p, g)| (p, g.len())));
    let mut fibre = HomotopyFibre {
        l: l.clone(),
        m: m.clone(),
        chi,
        bound,
        complex: Complex::zero_differential(space.clone()),
        gens,
    };
    let d = GradedMap::from_fn(&space, &space, 1, |p| {
        let cols: Vec<Vec<Scalar>> = (0..space.dim(p))
            .map(|e| {
                let x = fibre.expand(&Elem::basis(&space, p, e));
                let dx = fibre.d_expanded(&x);
                fibre.coords(&dx).expect("fibre is closed under d").coords
            })
            .collect();
        Matrix::from_cols(space.dim(p + 1), &cols)
    })?;
    fibre.complex = Complex::new(d)?;
    Ok(fibre)
}

impl HomotopyFibre {
    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    /// Expanded form of a coordinate vector.
    pub fn expand(&self, x: &Elem) -> FibreElem {
        let p = x.degree;
        let d = self.bound;
        let mut out = FibreElem::zero(&self.l, &self.m, p, d + 1, d);
        let Some(gens) = self.gens.get(&p) else {
            return out;
        };
        for (c, g) in x.coords.iter().zip(gens) {
            if c.is_zero() {
                continue;
            }
            match *g {
                FibreGen::Pair(i) => {
                    out.l[i] += c;
                    let img = self.chi.apply(&Elem::basis(self.l.space(), p, i));
                    matrix::add_scaled(&mut out.t[d], c, &img.coords);
                }
                FibreGen::Poly(k, j) => {
                    out.t[k][j] += c;
                    out.t[d][j] -= c;
                }
                FibreGen::Dt(k, j) => out.dt[k][j] += c,
            }
        }
        out
    }

    /// Coordinates of an expanded element, verifying the boundary conditions and the bound.
    pub fn coords(&self, x: &FibreElem) -> Result<Elem> {
        let p = x.degree;
        let d = self.bound;
        if x.poly_degree() > d {
            return Err(Error::TruncationExceeded {
                bound: d,
                needed: x.poly_degree(),
            });
        }
        if !matrix::is_zero_vec(&x.t[0]) {
            return Err(Error::invalid("m(0,0) ≠ 0"));
        }
        let mut total = vec![Scalar::zero(); self.m.dim(p)];
        for v in x.t.iter().take(d + 1) {
            matrix::add_scaled(&mut total, &scalar::one(), v);
        }
        let chil = self.chi.apply(&Elem::new(p, x.l.clone()));
        if total != chil.coords {
            return Err(Error::invalid("m(1,0) ≠ χ(l)"));
        }
        let coords = self
            .gens
            .get(&p)
            .map(|gens| {
                gens.iter()
                    .map(|g| match *g {
                        FibreGen::Pair(i) => x.l[i].clone(),
                        FibreGen::Poly(k, j) => x.t[k][j].clone(),
                        FibreGen::Dt(k, j) => x.dt[k][j].clone(),
                    })
                    .collect()
            })
            .unwrap_or_default();
        Ok(Elem::new(p, coords))
    }

    pub fn d_expanded(&self, x: &FibreElem) -> FibreElem {
        let p = x.degree;
        let mut out = FibreElem::zero(&self.l, &self.m, p + 1, self.bound + 1, self.bound);
        out.l = self.l.d(&Elem::new(p, x.l.clone())).coords;
        for (k, v) in x.t.iter().enumerate() {
            if matrix::is_zero_vec(v) {
                continue;
            }
            out.t[k] = self.m.d(&Elem::new(p, v.clone())).coords;
            if k > 0 {
                matrix::add_scaled(&mut out.dt[k - 1], &scalar::int(k as i64), v);
            }
        }
        for (k, v) in x.dt.iter().enumerate() {
            if matrix::is_zero_vec(v) {
                continue;
            }
            let dv = self.m.d(&Elem::new(p - 1, v.clone())).coords;
            matrix::add_scaled(&mut out.dt[k], &-scalar::one(), &dv);
        }
        out
    }

    /// `[(l, m), (l', m')] = ([l, l'], [m, m'])` with `[ω⊗a, η⊗b] = (−1)^{|a||η|} ωη⊗[a, b]`.
    pub fn bracket(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let x = self.expand(a);
        let y = self.expand(b);
        let (p, q) = (x.degree, y.degree);
        let need = x.poly_degree() + y.poly_degree();
        if need > self.bound {
            return Err(Error::TruncationExceeded {
                bound: self.bound,
                needed: need,
            });
        }
        let d = self.bound;
        let mut out = FibreElem::zero(&self.l, &self.m, p + q, d + 1, d);
        out.l = self.l.bracket(&Elem::new(p, x.l.clone()), &Elem::new(q, y.l.clone())).coords;
        let br = |u: &[Scalar], du: i32, v: &[Scalar], dv: i32| {
            self.m.bracket(&Elem::new(du, u.to_vec()), &Elem::new(dv, v.to_vec())).coords
        };
        for (i, u) in x.t.iter().enumerate() {
            for (j, v) in y.t.iter().enumerate() {
                if i + j <= d && !matrix::is_zero_vec(u) && !matrix::is_zero_vec(v) {
                    let c = br(u, p, v, q);
                    matrix::add_scaled(&mut out.t[i + j], &scalar::one(), &c);
                }
            }
            for (j, v) in y.dt.iter().enumerate() {
                if i + j < d && !matrix::is_zero_vec(u) && !matrix::is_zero_vec(v) {
                    let c = br(u, p, v, q - 1);
                    matrix::add_scaled(&mut out.dt[i + j], &scalar::sign(p as i64), &c);
                }
            }
        }
        for (i, u) in x.dt.iter().enumerate() {
            for (j, v) in y.t.iter().enumerate() {
                if i + j < d && !matrix::is_zero_vec(u) && !matrix::is_zero_vec(v) {
                    let c = br(u, p - 1, v, q);
                    matrix::add_scaled(&mut out.dt[i + j], &scalar::one(), &c);
                }
            }
        }
        self.coords(&out)
    }
}

/// `F → (M/χ(L))[−1]`, `(l, p(t)m₀ + q(t)dt m₁) ↦ (∫₀¹ q)·m₁ mod χ(L)`.
#[derive(Clone, Debug)]
pub struct CokernelProjection {
    pub quotient: Quotient,
    /// The shifted cokernel `(M/χ(L))[−1]`.
    pub target: Complex,
    pub map: GradedMap,
}

pub fn cokernel_projection(f: &HomotopyFibre) -> Result<CokernelProjection> {
    let image: Subspace = f
        .chi
        .blocks()
        .iter()
        .map(|(&n, b)| (n, b.clone()))
        .filter(|(_, b)| b.cols() > 0)
        .collect();
    let quotient = f.m.complex().quotient(&image)?;
    let target = quotient.complex.shift(-1);
    let space = f.space().clone();
    let map = GradedMap::from_fn(&space, target.space(), 0, |p| {
        let gens = &f.gens[&p];
        let proj = quotient.projection.block(p - 1);
        let mut out = Matrix::zeros(target.dim(p), gens.len());
        for (col, g) in gens.iter().enumerate() {
            if let FibreGen::Dt(k, j) = *g {
                let w = scalar::frac(1, k as i64 + 1);
                for r in 0..proj.rows() {
                    out.set(r, col, proj.get(r, j) * &w);
                }
            }
        }
        out
    })?;
    Ok(CokernelProjection { quotient, target, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{is_chain_map, is_quasi_isomorphism};
    use crate::dgla::hom_dgla;
    use crate::dgla::models::*;

    fn identity_fibre(m: &Dgla, d: usize) -> HomotopyFibre {
        homotopy_fibre(m, m, &DglaMorphism::identity(m), d).unwrap()
    }

    #[test]
    fn identity_fibre_is_acyclic() {
        for d in 1..=3 {
            assert!(identity_fibre(&sl2(), d).complex.is_acyclic());
            assert!(identity_fibre(&nilpotent_witness(), d).complex.is_acyclic());
        }
    }

    #[test]
    fn zero_source_gives_shifted_cohomology() {
        let m = abelian(&[(0, 1)]);
        let l = abelian(&[]);
        let chi = DglaMorphism::new(&l, &m, GradedMap::zero(l.space(), m.space(), 0)).unwrap();
        let f = homotopy_fibre(&l, &m, &chi, 2).unwrap();
        assert_eq!(f.complex.betti(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn non_injective_rejected() {
        let l = abelian(&[(0, 1)]);
        let m = abelian(&[(0, 1)]);
        let chi = DglaMorphism::new(&l, &m, GradedMap::zero(l.space(), m.space(), 0)).unwrap();
        assert!(matches!(homotopy_fibre(&l, &m, &chi, 1), Err(Error::NotInjective { degree: 0 })));
    }

    #[test]
    fn projection_values() {
        let m = abelian(&[(0, 1)]);
        let l = abelian(&[]);
        let chi = DglaMorphism::new(&l, &m, GradedMap::zero(l.space(), m.space(), 0)).unwrap();
        let f = homotopy_fibre(&l, &m, &chi, 2).unwrap();
        let cp = cokernel_projection(&f).unwrap();
        let gens = &f.gens[&1];
        let dt0 = gens.iter().position(|g| *g == FibreGen::Dt(0, 0)).unwrap();
        let dt1 = gens.iter().position(|g| *g == FibreGen::Dt(1, 0)).unwrap();
        assert_eq!(cp.map.block(1).get(0, dt0), &scalar::one());
        assert_eq!(cp.map.block(1).get(0, dt1), &scalar::frac(1, 2));
        assert!(is_chain_map(&cp.map, &f.complex, &cp.target));
        assert!(cp.map.is_surjective());
        assert!(is_quasi_isomorphism(&cp.map, &f.complex, &cp.target).unwrap());
    }

    #[test]
    fn pair_with_t_chi_projects_to_zero() {
        let m = sl2();
        let f = identity_fibre(&m, 1);
        let cp = cokernel_projection(&f).unwrap();
        assert!(cp.map.is_zero());
    }

    #[test]
    fn hom_preserving_fibre_matches_cokernel() {
        let v = Complex::zero_differential(GradedSpace::new([(0, 2)]));
        let h = hom_dgla(&v);
        let u = BTreeMap::from([(0, Matrix::from_i64(&[&[1], &[0]]))]);
        let (n, inc) = h.preserving(&u).unwrap();
        for d in 1..=2 {
            let f = homotopy_fibre(&n, &h.dgla, &inc, d).unwrap();
            let cp = cokernel_projection(&f).unwrap();
            assert_eq!(f.complex.betti(), cp.target.betti());
            assert!(is_quasi_isomorphism(&cp.map, &f.complex, &cp.target).unwrap());
        }
    }

    #[test]
    fn fibre_bracket_and_truncation() {
        let m = nilpotent_witness();
        let f = identity_fibre(&m, 4);
        let space = f.space().clone();
        let gen = |p: i32, g: FibreGen| {
            Elem::basis(&space, p, f.gens[&p].iter().position(|x| *x == g).unwrap())
        };
        let pair = gen(1, FibreGen::Pair(0));
        assert!(matches!(f.bracket(&pair, &pair), Err(Error::TruncationExceeded { bound: 4, needed: 8 })));
        // (t − t²)x and (t − t²)y
        let a = gen(1, FibreGen::Poly(1, 0)).sub(&gen(1, FibreGen::Poly(2, 0)));
        let b = gen(1, FibreGen::Poly(1, 1)).sub(&gen(1, FibreGen::Poly(2, 1)));
        let c = f.expand(&f.bracket(&a, &b).unwrap());
        assert_eq!(c.t[2], vec![scalar::int(1)]);
        assert_eq!(c.t[3], vec![scalar::int(-2)]);
        assert_eq!(c.t[4], vec![scalar::int(1)]);
        // (t − t²)x and dt·y
        let g = identity_fibre(&m, 3);
        let gs = g.space().clone();
        let ggen = |p: i32, x: FibreGen| Elem::basis(&gs, p, g.gens[&p].iter().position(|y| *y == x).unwrap());
        let a = ggen(1, FibreGen::Poly(1, 0)).sub(&ggen(1, FibreGen::Poly(2, 0)));
        let b = ggen(2, FibreGen::Dt(0, 1));
        let ab = g.expand(&g.bracket(&a, &b).unwrap());
        assert_eq!(ab.dt[1], vec![scalar::int(-1)]);
        assert_eq!(ab.dt[2], vec![scalar::int(1)]);
        let ba = g.expand(&g.bracket(&b, &a).unwrap());
        assert_eq!(ba.dt[1], vec![scalar::int(1)]);
    }
}
