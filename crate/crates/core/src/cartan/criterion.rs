use std::collections::BTreeMap;

use crate::complex::{
    chain_map_defect, induced_map_on_cohomology, is_injective_on_cohomology, Complex, HomComplex, Quotient,
    Subspace,
};
use crate::dgla::{hom_dgla, homotopy_abelian_verdict, homotopy_fibre, AbelianWitness, FibreElem, HomDgla, HomotopyFibre, Verdict};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap};
use crate::matrix::Matrix;
use crate::mc::ObstructionClass;
use crate::scalar::Scalar;

use super::{operator, CartanHomotopy, Calculus};

/// Subcomplexes `F = top ⊆ G = next ⊆ V` with `i_a(F) ⊆ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub top: Subspace,
    pub next: Subspace,
}

fn block(sub: &Subspace, n: i32, dim: usize) -> Matrix {
    sub.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(dim, 0))
}

/// The chain map `L → Hom*(F, G/F)[−1]`, `a ↦ π ∘ i_a|_F`, and the pieces around it.
pub(crate) struct Restricted {
    pub f: Complex,
    pub f_incl: GradedMap,
    pub g_incl: GradedMap,
    pub q: Quotient,
    pub target: Complex,
    pub map: GradedMap,
}

pub(crate) fn restricted<C: Calculus>(c: &C, filt: &Filtration) -> Result<Restricted> {
    let v = c.module();
    let (f, f_incl) = v
        .subcomplex(&filt.top)
        .map_err(|e| Error::FiltrationNotPreserved { detail: format!("F: {e}") })?;
    let (g, g_incl) = v
        .subcomplex(&filt.next)
        .map_err(|e| Error::FiltrationNotPreserved { detail: format!("G: {e}") })?;
    let mut f_in_g = Subspace::new();
    for n in f.space().support() {
        let gb = block(&filt.next, n, v.dim(n));
        let y = gb.solve_matrix(&f_incl.block(n)).ok_or_else(|| Error::FiltrationNotPreserved {
            detail: format!("F is not contained in G in degree {n}"),
        })?;
        f_in_g.insert(n, y);
    }
    let q = g.quotient(&f_in_g)?;
    let hom = HomComplex::new(&f, &q.complex);
    let target = hom.complex.shift(-1);
    let ls = c.lie_complex().space().clone();
    let mut blocks = BTreeMap::new();
    for p in ls.support() {
        let mut cols = Vec::new();
        for i in 0..ls.dim(p) {
            let op = operator(c, &c.lie_elem(&Elem::basis(&ls, p, i)))?;
            let r = p - 1;
            let mut fb = BTreeMap::new();
            for n in f.space().support() {
                let img = op.block(n).mul(&f_incl.block(n));
                let gb = block(&filt.next, n + r, v.dim(n + r));
                let in_g = gb.solve_matrix(&img).ok_or_else(|| Error::FiltrationNotPreserved {
                    detail: format!(
                        "contraction by basis {i} of degree {p} maps F^{n} outside G^{}",
                        n + r
                    ),
                })?;
                if q.complex.dim(n + r) > 0 {
                    fb.insert(n, q.projection.block(n + r).mul(&in_g));
                }
            }
            let fmap = GradedMap::new(f.space().clone(), q.complex.space().clone(), r, fb)?;
            cols.push(hom.from_map(&fmap).coords);
        }
        if target.dim(p) > 0 {
            blocks.insert(p, Matrix::from_cols(target.dim(p), &cols));
        }
    }
    let map = GradedMap::new(ls, target.space().clone(), 0, blocks)?;
    Ok(Restricted {
        f,
        f_incl,
        g_incl,
        q,

        target,
        map,
    })
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub lie_cohomology_dim: usize,
    /// Rank of `H(L) → H(Hom*(F, G/F)[−1])`.
    pub rank: usize,
    pub contraction_injective: bool,
    /// `H(F) → H(V)` injective.
    pub top_inclusion_injective: bool,
    /// `H(G/F) → H(V/F)` injective.
    pub quotient_inclusion_injective: bool,
    pub certificate: Option<AbelianWitness>,
}

impl CriterionReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.contraction_injective && self.top_inclusion_injective && self.quotient_inclusion_injective
    }

    pub fn verdict(&self, c: &CartanHomotopy) -> Result<Verdict> {
        homotopy_abelian_verdict(&c.lie, self.certificate.as_ref())
    }
}

/// The linear part `a ↦ (l_a, t l_a + dt i_a)` into the homotopy fibre of
/// `N = {f : f(F) ⊆ F} ↪ Hom*(V, V)`.
#[derive(Clone, Debug)]
pub struct LinearPart {
    pub hom: HomDgla,
    pub fibre: HomotopyFibre,
    pub map: GradedMap,
}

pub fn li_linear_part(c: &CartanHomotopy, top: &Subspace, bound: usize) -> Result<LinearPart> {
    let hom = hom_dgla(&c.module);
    let (n, chi) = hom.preserving(top)?;
    let m = &hom.dgla;
    let ls = c.lie.space().clone();
    let mut lcoords: BTreeMap<(i32, usize), Vec<Scalar>> = BTreeMap::new();
    for (p, i) in ls.basis() {
        let a = c.lie.basis(p, i);
        let la = hom.from_map(&c.lie_derivative(&a));
        let y = if n.dim(p) == 0 {
            la.is_zero().then(Vec::new)
        } else {
            chi.map().block(p).solve(&la.coords)
        };
        let y = y.ok_or(Error::LieDerivativeEscapesN { degree: p, basis: i })?;
        lcoords.insert((p, i), y);
    }
    let fibre = homotopy_fibre(&n, m, &chi, bound)?;
    let fs = fibre.space().clone();
    let mut blocks = BTreeMap::new();
    for p in ls.support() {
        let mut cols = Vec::new();
        for i in 0..ls.dim(p) {
            let a = c.lie.basis(p, i);
            let la = hom.from_map(&c.lie_derivative(&a)).coords;
            let ia = hom.from_map(&c.op(&a)).coords;
            let zero = |k: usize| vec![Scalar::from_integer(0.into()); k];
            let mut t = vec![zero(m.dim(p)); bound + 1];
            t[1] = la;
            let mut dt = vec![zero(m.dim(p - 1)); bound];
            dt[0] = if ia.is_empty() { zero(m.dim(p - 1)) } else { ia };
            let x = FibreElem {
                degree: p,
                l: lcoords[&(p, i)].clone(),
                t,
                dt,
            };
            cols.push(fibre.coords(&x)?.coords);
        }
        if fs.dim(p) > 0 {
            blocks.insert(p, Matrix::from_cols(fs.dim(p), &cols));
        }
    }
    let map = GradedMap::new(ls, fs, 0, blocks)?;
    if let Some(d) = chain_map_defect(&map, c.lie.complex(), &fibre.complex) {
        return Err(Error::NotChainMap { degree: d });
    }
    Ok(LinearPart { hom, fibre, map })
}

/// `H(L) → Hom*(H(F), H(G/F))[−1]` injectivity, plus the two inclusion checks; when all hold,
/// the linear part into the homotopy fibre is returned as a certificate.
pub fn injectivity_criterion(c: &CartanHomotopy, filt: &Filtration, bound: usize) -> Result<CriterionReport> {
    let r = restricted(c, filt)?;
    if let Some(d) = chain_map_defect(&r.map, c.lie.complex(), &r.target) {
        return Err(Error::NotChainMap { degree: d });
    }
    let h = induced_map_on_cohomology(&r.map, c.lie.complex(), &r.target)?;
    let rank: usize = h.blocks().values().map(Matrix::rank).sum();
    let lie_cohomology_dim = h.source().total_dim();
    let contraction_injective = rank == lie_cohomology_dim;
    let v = &c.module;
    let top_inclusion_injective = is_injective_on_cohomology(&r.f_incl, &r.f, v)?;
    let vq = v.quotient(&filt.top)?;
    let to_vq = vq.projection.compose(&r.g_incl)?.compose(&r.q.section)?;
    let quotient_inclusion_injective = is_injective_on_cohomology(&to_vq, &r.q.complex, &vq.complex)?;
    let mut report = CriterionReport {
        lie_cohomology_dim,
        rank,
        contraction_injective,
        top_inclusion_injective,
        quotient_inclusion_injective,
        certificate: None,
    };
    if report.hypotheses_hold() {
        let lp = li_linear_part(c, &filt.top, bound)?;
        report.certificate = Some(AbelianWitness {
            fibre: lp.fibre,
            map: lp.map,
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiregularityReport {
    /// Per column of the obstruction layer: class of `i(obs)` in `H(Hom*(F, G/F)[−1])`.
    pub images: Vec<Vec<Scalar>>,
    pub annihilated: bool,
}

/// Is the contraction of the obstruction zero in `H(Hom*(F, G/F)[−1])`?
pub fn semiregularity_check<C: Calculus>(
    c: &C,
    filt: &Filtration,
    obs: &ObstructionClass,
) -> Result<SemiregularityReport> {
    let r = restricted(c, filt)?;
    let h = r.target.cohomology();
    let mut images = Vec::new();
    for &col in &obs.layer {
        let x = obs.cocycle.component(col);
        let y = r.map.apply(&x);
        images.push(if r.target.dim(2) == 0 { Vec::new() } else { h.class_of(&y) });
    }
    let annihilated = images.iter().all(|v| v.iter().all(num_traits::Zero::is_zero));
    Ok(SemiregularityReport { images, annihilated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artinian::ArtinianAlgebra;
    use crate::cartan::models::*;
    use crate::dgla::cokernel_projection;
    use crate::mc::{mc_lift, Tensor};
    use crate::scalar::int;

    #[test]
    fn log_model_is_injective_without_certificate() {
        for p in 1..=3 {
            let m = log_model(p);
            let r = injectivity_criterion(&m.calculus, &m.filtration, 2).unwrap();
            assert!(r.contraction_injective);
            assert_eq!(r.rank, p + 1);
            assert!(!r.top_inclusion_injective);
            assert!(r.certificate.is_none());
            assert_eq!(r.verdict(&m.calculus).unwrap().name(), "NecessaryConditionFailed");
        }
    }

    #[test]
    fn abelian_calculus_is_certified() {
        let m = abelian_calculus();
        let r = injectivity_criterion(&m.calculus, &m.filtration, 2).unwrap();
        assert!(r.hypotheses_hold());
        let v = r.verdict(&m.calculus).unwrap();
        match v {
            Verdict::CertifiedAbelianViaCriterion { reason } => assert!(reason.contains("fibre"), "{reason}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_contraction_is_not_injective() {
        let m = log_model(2);
        let z = CartanHomotopy::zero(m.calculus.lie.clone(), m.calculus.module.clone());
        let r = injectivity_criterion(&z, &m.filtration, 2).unwrap();
        assert!(!r.contraction_injective);
        assert_eq!(r.rank, 0);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn rejects_escaping_contraction() {
        let m = log_model(2);
        let filt = Filtration {
            top: m.filtration.top.clone(),
            next: m.filtration.top.clone(),
        };
        assert!(matches!(
            injectivity_criterion(&m.calculus, &filt, 2),
            Err(Error::FiltrationNotPreserved { .. })
        ));
    }

    #[test]
    fn linear_part_on_log_model() {
        let m = log_model(2);
        let lp = li_linear_part(&m.calculus, &m.filtration.top, 2).unwrap();
        let cp = cokernel_projection(&lp.fibre).unwrap();
        let composite = cp.map.compose(&lp.map).unwrap();
        // i_a restricted to F and projected to V/F, in the quotient coordinates of Hom/N
        for (p, i) in m.calculus.lie.space().basis() {
            let a = m.calculus.lie.basis(p, i);
            let ia = lp.hom.from_map(&m.calculus.op(&a));
            let expected = cp.quotient.projection.apply(&ia);
            assert_eq!(composite.apply(&a).coords, expected.coords);
        }
    }

    #[test]
    fn linear_part_rejects_escape() {
        let m = nilpotent_calculus();
        let mut top = Subspace::new();
        top.insert(0, Matrix::identity(1));
        top.insert(1, Matrix::from_i64(&[&[0], &[1]]));
        let r = li_linear_part(&m.calculus, &top, 2);
        assert!(matches!(r, Err(Error::LieDerivativeEscapesN { .. })), "{r:?}");
    }

    #[test]
    fn semiregularity_on_nilpotent_witness() {
        let m = nilpotent_calculus();
        let alg = ArtinianAlgebra::polynomial(3);
        let l = &m.calculus.lie;
        let seed = Tensor::from_terms(l, &alg, 1, &[(vec![int(1), int(1)], 0)]);
        let obs = mc_lift(l, &alg, &seed).unwrap();
        let obs = obs.obstruction().unwrap();
        let r = semiregularity_check(&m.calculus, &m.filtration, obs).unwrap();
        assert!(!r.annihilated);
        let z = CartanHomotopy::zero(l.clone(), m.calculus.module.clone());
        assert!(semiregularity_check(&z, &m.filtration, obs).unwrap().annihilated);
    }
}
