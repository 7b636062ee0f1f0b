use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};
use crate::simplicial::apl::Form;
use crate::simplicial::{cech_to_semicosimplicial, CechInput, Semicosimplicial, TwComplex, TwElement, TwKey};

use super::{check_calculus, CartanHomotopy, Calculus};

/// Calculi `g_n × V_n → V_n` commuting with the cofaces.
#[derive(Clone, Debug)]
pub struct SemicosimplicialCalculus {
    pub lie: Semicosimplicial,
    pub module: Semicosimplicial,
    pub levels: Vec<CartanHomotopy>,
}

impl SemicosimplicialCalculus {
    pub fn new(lie: Semicosimplicial, module: Semicosimplicial, levels: Vec<CartanHomotopy>) -> Result<Self> {
        if lie.top() != module.top() || levels.len() != lie.top() + 1 {
            return Err(Error::invalid("one calculus per level is required"));
        }
        for (n, c) in levels.iter().enumerate() {
            if c.lie.complex() != lie.level(n).complex() || c.lie.table() != lie.level(n).table() {
                return Err(Error::invalid(format!("level {n}: Lie algebra mismatch")));
            }
            if &c.module != module.level(n).complex() {
                return Err(Error::invalid(format!("level {n}: module mismatch")));
            }
            let r = check_calculus(c);
            if let Some(v) = r.first() {
                return Err(Error::invalid(format!(
                    "level {n} is not a calculus: {} fails at {v:?}",
                    v.identity.name()
                )));
            }
        }
        let s = SemicosimplicialCalculus { lie, module, levels };
        if let Some((k, i)) = s.coface_defect() {
            return Err(Error::invalid(format!("contraction does not commute with ∂_{{{k},{i}}}")));
        }
        Ok(s)
    }

    /// First `(k, i)` with `∂_k(a ⌟ v) ≠ ∂_k a ⌟ ∂_k v` on basis elements.
    pub fn coface_defect(&self) -> Option<(usize, usize)> {
        for i in 1..=self.lie.top() {
            let below = &self.levels[i - 1];
            let here = &self.levels[i];
            for k in 0..=i {
                let dl = self.lie.coface(k, i);
                let dv = self.module.coface(k, i);
                for (p, x) in below.lie.space().basis() {
                    let a = below.lie.basis(p, x);
                    for (n, y) in below.module.space().basis() {
                        let v = Elem::basis(below.module.space(), n, y);
                        let lhs = dv.apply(&below.op(&a).apply(&v));
                        let rhs = here.op(&dl.apply(&a)).apply(&dv.apply(&v));
                        if lhs != rhs {
                            return Some((k, i));
                        }
                    }
                }
            }
        }
        None
    }

    /// Čech data of a finite cover with the same calculus on every chain and identity restrictions.
    pub fn uniform_cech(c: &CartanHomotopy, opens: usize, max_level: Option<usize>) -> Result<Self> {
        let lie = cech_to_semicosimplicial(&CechInput::uniform(opens, &c.lie, max_level))?;
        let vd = Dgla::abelian(c.module.clone());
        let module = cech_to_semicosimplicial(&CechInput::uniform(opens, &vd, max_level))?;
        let mut levels = Vec::new();
        for n in 0..=lie.top() {
            let gl = lie.level(n);
            let vl = module.level(n).complex();
            let copies = c
                .lie
                .space()
                .support()
                .first()
                .map_or(0, |&p| gl.dim(p) / c.lie.dim(p));
            let mut ops = BTreeMap::new();
            for p in c.lie.space().support() {
                let mut list = vec![GradedMap::zero(vl.space(), vl.space(), p - 1); gl.dim(p)];
                for k in 0..copies {
                    for j in 0..c.lie.dim(p) {
                        let op = c.op(&c.lie.basis(p, j));
                        let mut blocks = BTreeMap::new();
                        for m in c.module.space().support() {
                            let r = p - 1;
                            if vl.dim(m + r) == 0 {
                                continue;
                            }
                            let mut b = Matrix::zeros(vl.dim(m + r), vl.dim(m));
                            b.set_block(k * c.module.dim(m + r), k * c.module.dim(m), &op.block(m));
                            blocks.insert(m, b);
                        }
                        list[k * c.lie.dim(p) + j] =
                            GradedMap::new(vl.space().clone(), vl.space().clone(), p - 1, blocks)?;
                    }
                }
                ops.insert(p, list);
            }
            levels.push(CartanHomotopy::new(gl.clone(), vl.clone(), ops)?);
        }
        SemicosimplicialCalculus::new(lie, module, levels)
    }
}

/// The componentwise extension `(ω ⊗ a) ⌟ (η ⊗ v) = (−1)^{(|a|−1)|η|} ωη ⊗ (a ⌟ v)`.
#[derive(Clone, Debug)]
pub struct TwCalculus {
    pub sc: SemicosimplicialCalculus,
    pub lie: TwComplex,
    pub module: TwComplex,
    /// `ops[n][(p, i)]`: the level-`n` operator of basis `i` of `g_n^p`.
    ops: Vec<BTreeMap<(i32, usize), GradedMap>>,
}

pub fn tw_extend(sc: &SemicosimplicialCalculus, bound: usize) -> Result<TwCalculus> {
    let ops = sc
        .levels
        .iter()
        .map(|c| {
            c.lie
                .space()
                .basis()
                .into_iter()
                .map(|(p, i)| ((p, i), c.op(&c.lie.basis(p, i))))
                .collect()
        })
        .collect();
    Ok(TwCalculus {
        sc: sc.clone(),
        lie: TwComplex::new(&sc.lie, bound)?,
        module: TwComplex::new(&sc.module, bound)?,
        ops,
    })
}

impl Calculus for TwCalculus {
    type Lie = TwElement;
    type Vector = TwElement;

    fn lie_complex(&self) -> &Complex {
        self.lie.complex()
    }
    fn module(&self) -> &Complex {
        self.module.complex()
    }
    fn lie_elem(&self, x: &Elem) -> TwElement {
        self.lie.element(x)
    }
    fn lie_degree(&self, a: &TwElement) -> i32 {
        a.degree
    }
    fn lie_d(&self, a: &TwElement) -> TwElement {
        self.lie.d_element(a)
    }
    fn lie_bracket(&self, a: &TwElement, b: &TwElement) -> TwElement {
        self.lie.bracket_elements(a, b)
    }
    fn vector_elem(&self, x: &Elem) -> TwElement {
        self.module.element(x)
    }
    fn vector_degree(&self, v: &TwElement) -> i32 {
        v.degree
    }
    fn vector_coords(&self, v: &TwElement) -> Result<Elem> {
        self.module.coords(v)
    }
    fn vector_d(&self, v: &TwElement) -> TwElement {
        self.module.d_element(v)
    }
    fn vector_add(&self, v: &TwElement, w: &TwElement) -> TwElement {
        v.add(w)
    }
    fn vector_scale(&self, v: &TwElement, c: &Scalar) -> TwElement {
        v.scale(c)
    }
    fn vector_is_zero(&self, v: &TwElement) -> bool {
        v.is_zero()
    }
    fn contract(&self, a: &TwElement, v: &TwElement) -> TwElement {
        let mut out = TwElement::zero(a.degree + v.degree - 1);
        for (ka, ca) in &a.terms {
            let op = &self.ops[ka.n][&(ka.degree, ka.index)];
            for (kv, cv) in &v.terms {
                if ka.n != kv.n {
                    continue;
                }
                let Some(b) = op.block_ref(kv.degree) else {
                    continue;
                };
                let col = b.column(kv.index);
                if crate::matrix::is_zero_vec(&col) {
                    continue;
                }
                let img = Elem::new(kv.degree + op.degree(), col);
                let s = scalar::sign(((ka.degree - 1) * kv.form.degree()) as i64) * ca * cv;
                let prod = Form::monomial(ka.form.clone(), scalar::one())
                    .mul(&Form::monomial(kv.form.clone(), scalar::one()));
                for (mono, x) in prod.terms {
                    for (idx, y) in img.coords.iter().enumerate() {
                        out.add_term(
                            TwKey {
                                n: ka.n,
                                form: mono.clone(),
                                degree: img.degree,
                                index: idx,
                            },
                            &s * &x * y,
                        );
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::models::*;
    use crate::cartan::materialize;

    #[test]
    fn one_level_reduces_to_the_level() {
        let m = nilpotent_calculus();
        let sc = SemicosimplicialCalculus::uniform_cech(&m.calculus, 1, None).unwrap();
        let tw = tw_extend(&sc, 2).unwrap();
        assert!(check_calculus(&tw).passes());
        let again = materialize(&tw, m.calculus.lie.clone()).unwrap();
        assert_eq!(again.ops, m.calculus.ops);
    }

    #[test]
    fn two_open_log_model_extends() {
        let m = log_model(2);
        let sc = SemicosimplicialCalculus::uniform_cech(&m.calculus, 2, None).unwrap();
        for p in [1, 2] {
            let tw = tw_extend(&sc, p).unwrap();
            let r = check_calculus(&tw);
            assert!(r.passes(), "P = {p}: {:?}", r.first());
        }
    }

    #[test]
    fn abelian_everything() {
        let m = abelian_calculus();
        let sc = SemicosimplicialCalculus::uniform_cech(&m.calculus, 2, None).unwrap();
        let tw = tw_extend(&sc, 1).unwrap();
        assert!(check_calculus(&tw).passes());
    }

    #[test]
    fn coface_commutation_is_checked() {
        let m = log_model(1);
        let sc = SemicosimplicialCalculus::uniform_cech(&m.calculus, 2, None).unwrap();
        let mut levels = sc.levels.clone();
        levels[1] = CartanHomotopy::zero(levels[1].lie.clone(), levels[1].module.clone());
        assert!(SemicosimplicialCalculus::new(sc.lie.clone(), sc.module.clone(), levels).is_err());
    }
}
