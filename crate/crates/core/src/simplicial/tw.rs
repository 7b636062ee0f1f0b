//! Thom-Whitney totalization truncated at polynomial weight `P`, and integration to `Tot`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::{self, Complex};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

use super::apl::{self, Form, Monomial};
use super::{Semicosimplicial, Tot};

/// `form ⊗ e` with `e` the basis vector `index` of `g_n^degree`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwKey {
    pub n: usize,
    pub form: Monomial,
    pub degree: i32,
    pub index: usize,
}

impl TwKey {
    pub fn total_degree(&self) -> i32 {
        self.form.degree() + self.degree
    }
}

/// A (not necessarily bounded) sum of `form ⊗ e` across levels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwElement {
    pub degree: i32,
    pub terms: BTreeMap<TwKey, Scalar>,
}

impl TwElement {
    pub fn zero(degree: i32) -> Self {
        TwElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, key: TwKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TwElement) -> TwElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TwElement {
        let mut out = TwElement::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, x) in &self.terms {
            out.terms.insert(k.clone(), x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.terms.keys().map(|k| k.form.weight()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct TwComplex {
    sc: Semicosimplicial,
    bound: usize,
    tot: Tot,
    /// Ambient basis of `⊕_n (A_PL)_n ⊗ g_n` in each total degree.
    ambient: BTreeMap<i32, Vec<TwKey>>,
    /// Columns: a basis of the compatible tuples, in ambient coordinates.
    basis: BTreeMap<i32, Matrix>,
    /// Rows of the ambient coordinates that determine a compatible tuple, with the inverse of the
    /// corresponding square block of `basis`.
    pivots: BTreeMap<i32, (Vec<usize>, Matrix)>,
    complex: Complex,
}

impl TwComplex {
    pub fn new(sc: &Semicosimplicial, bound: usize) -> Result<Self> {
        if bound < 1 {
            return Err(Error::invalid("polynomial bound must be at least 1"));
        }
        let top = sc.top();
        let mut ambient: BTreeMap<i32, Vec<TwKey>> = BTreeMap::new();
        for n in 0..=top {
            let g = sc.level(n);
            for i in 0..=n {
                for form in apl::basis(n, i, bound) {
                    for j in g.space().support() {
                        for index in 0..g.dim(j) {
                            let key = TwKey {
                                n,
                                form: form.clone(),
                                degree: j,
                                index,
                            };
                            ambient.entry(key.total_degree()).or_default().push(key);
                        }
                    }
                }
            }
        }
        for keys in ambient.values_mut() {
            keys.sort();
        }
        let mut basis = BTreeMap::new();
        let mut pivots = BTreeMap::new();
        for (&m, keys) in &ambient {
            let k = constraints(sc, keys).kernel();
            if k.cols() == 0 {
                continue;
            }
            let rows = k.transpose().echelon().pivots;
            let inv = k
                .select_rows(&rows)
                .inverse()
                .expect("pivot rows of a full-rank basis");
            basis.insert(m, k);
            pivots.insert(m, (rows, inv));
        }
        let space = GradedSpace::new(basis.iter().map(|(&m, k)| (m, k.cols())));
        let mut tw = TwComplex {
            sc: sc.clone(),
            bound,
            tot: sc.tot(),
            ambient,
            basis,
            pivots,
            complex: Complex::zero_differential(space.clone()),
        };
        let mut blocks = BTreeMap::new();
        for m in space.support() {
            let mut cols = Vec::new();
            for c in 0..space.dim(m) {
                let x = tw.element(&Elem::basis(&space, m, c));
                cols.push(tw.coords(&tw.d_element(&x))?.coords);
            }
            blocks.insert(m, Matrix::from_cols(space.dim(m + 1), &cols));
        }
        tw.complex = Complex::from_blocks(space, blocks)?;
        Ok(tw)
    }

    pub fn semicosimplicial(&self) -> &Semicosimplicial {
        &self.sc
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn tot(&self) -> &Tot {
        &self.tot
    }

    pub fn ambient(&self, m: i32) -> &[TwKey] {
        self.ambient.get(&m).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The compatible tuple with the given coordinates.
    pub fn element(&self, x: &Elem) -> TwElement {
        let mut out = TwElement::zero(x.degree);
        if let Some(k) = self.basis.get(&x.degree) {
            let v = k.apply(&x.coords);
            for (key, c) in self.ambient[&x.degree].iter().zip(v) {
                out.add_term(key.clone(), c);
            }
        }
        out
    }

    /// Coordinates of a compatible tuple within the bound.
    pub fn coords(&self, x: &TwElement) -> Result<Elem> {
        let m = x.degree;
        let dim = self.complex.dim(m);
        if x.weight() > self.bound {
            return Err(Error::TruncationExceeded {
                bound: self.bound,
                needed: x.weight(),
            });
        }
        let keys = self.ambient(m);
        let mut v = vec![Scalar::zero(); keys.len()];
        for (key, c) in &x.terms {
            if key.total_degree() != m {
                return Err(Error::invalid("element is not homogeneous"));
            }
            let pos = keys
                .binary_search(key)
                .map_err(|_| Error::invalid("element has a term outside the model"))?;
            v[pos] = c.clone();
        }
        if dim == 0 {
            if v.iter().any(|c| !c.is_zero()) {
                return Err(Error::invalid("element violates coface compatibility"));
            }
            return Ok(Elem::new(m, Vec::new()));
        }
        let (rows, inv) = &self.pivots[&m];
        let sub: Vec<Scalar> = rows.iter().map(|&r| v[r].clone()).collect();
        let coords = inv.apply(&sub);
        if self.basis[&m].apply(&coords) != v {
            return Err(Error::invalid("element violates coface compatibility"));
        }
        Ok(Elem::new(m, coords))
    }

    /// `d(ω ⊗ e) = dω ⊗ e + (−1)^{|ω|} ω ⊗ de`.
    pub fn d_element(&self, x: &TwElement) -> TwElement {
        let mut out = TwElement::zero(x.degree + 1);
        for (key, c) in &x.terms {
            let form = Form::monomial(key.form.clone(), c.clone());
            for (mono, a) in form.d().terms {
                out.add_term(
                    TwKey {
                        form: mono,
                        ..key.clone()
                    },
                    a,
                );
            }
            let g = self.sc.level(key.n);
            let de = g.d(&g.basis(key.degree, key.index));
            let s = scalar::sign(key.form.degree() as i64) * c;
            for (idx, a) in de.coords.iter().enumerate() {
                out.add_term(
                    TwKey {
                        n: key.n,
                        form: key.form.clone(),
                        degree: key.degree + 1,
                        index: idx,
                    },
                    &s * a,
                );
            }
        }
        out
    }

    /// `[ω ⊗ a, η ⊗ b] = (−1)^{|a||η|} ωη ⊗ [a, b]`, level by level, without truncation.
    pub fn bracket_elements(&self, x: &TwElement, y: &TwElement) -> TwElement {
        let mut out = TwElement::zero(x.degree + y.degree);
        for (ka, ca) in &x.terms {
            for (kb, cb) in &y.terms {
                if ka.n != kb.n {
                    continue;
                }
                let g = self.sc.level(ka.n);
                let br = g
                    .table()
                    .basis_pair(g.space(), ka.degree, ka.index, kb.degree, kb.index);
                if br.is_zero() {
                    continue;
                }
                let s = scalar::sign((ka.degree * kb.form.degree()) as i64) * ca * cb;
                let prod = Form::monomial(ka.form.clone(), scalar::one())
                    .mul(&Form::monomial(kb.form.clone(), scalar::one()));
                for (mono, a) in prod.terms {
                    for (idx, b) in br.coords.iter().enumerate() {
                        out.add_term(
                            TwKey {
                                n: ka.n,
                                form: mono.clone(),
                                degree: br.degree,
                                index: idx,
                            },
                            &s * &a * b,
                        );
                    }
                }
            }
        }
        out
    }

    /// The bracket in coordinates; `TruncationExceeded` when the product leaves the bound.
    pub fn bracket(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        let z = self.bracket_elements(&self.element(x), &self.element(y));
        self.coords(&z)
    }

    /// Is the bracket zero on all pairs of basis elements?
    pub fn bracket_vanishes(&self) -> bool {
        let space = self.complex.space();
        space.basis().iter().all(|&(p, i)| {
            space.basis().iter().all(|&(q, j)| {
                self.bracket_elements(
                    &self.element(&Elem::basis(space, p, i)),
                    &self.element(&Elem::basis(space, q, j)),
                )
                .is_zero()
            })
        })
    }

    /// `I = Σ_n ∫_{Δ^n} ⊗ Id`, as a map of graded spaces `TW → Tot`.
    pub fn integration_map(&self) -> GradedMap {
        let space = self.complex.space().clone();
        let tot = self.tot.complex.space().clone();
        GradedMap::from_fn(&space, &tot, 0, |m| {
            let cols: Vec<Vec<Scalar>> = (0..space.dim(m))
                .map(|c| integrate(self, &Elem::basis(&space, m, c)).coords)
                .collect();
            Matrix::from_cols(tot.dim(m), &cols)
        })
        .expect("integration blocks")
    }

    /// Do the cohomology dimensions agree with the model at bound `P + 1`?
    pub fn stabilizes(&self) -> Result<bool> {
        let next = TwComplex::new(&self.sc, self.bound + 1)?;
        Ok(next.complex.betti() == self.complex.betti())
    }
}

/// Rows: `(δ^k ⊗ Id) x_n − (Id ⊗ ∂_k) x_{n−1}` for every `n ≥ 1`, `k`, output term.
fn constraints(sc: &Semicosimplicial, keys: &[TwKey]) -> Matrix {
    let mut rows: BTreeMap<(usize, usize, TwKey), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut push = |rows: &mut BTreeMap<_, usize>, r: (usize, usize, TwKey), c: usize, v: Scalar| {
        let len = rows.len();
        let i = *rows.entry(r).or_insert(len);
        entries.push((i, c, v));
    };
    for (col, key) in keys.iter().enumerate() {
        if key.n >= 1 {
            let form = Form::monomial(key.form.clone(), scalar::one());
            for k in 0..=key.n {
                for (mono, a) in form.face(k).terms {
                    let out = TwKey {
                        n: key.n - 1,
                        form: mono,
                        ..key.clone()
                    };
                    push(&mut rows, (key.n, k, out), col, a);
                }
            }
        }
        if key.n < sc.top() {
            let g = sc.level(key.n);
            let e = g.basis(key.degree, key.index);
            for k in 0..=key.n + 1 {
                let img = sc.coface(k, key.n + 1).apply(&e);
                for (idx, a) in img.coords.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let out = TwKey {
                        n: key.n,
                        form: key.form.clone(),
                        degree: key.degree,
                        index: idx,
                    };
                    push(&mut rows, (key.n + 1, k, out), col, -a);
                }
            }
        }
    }
    let mut m = Matrix::zeros(rows.len(), keys.len());
    for (i, j, v) in entries {
        m.add_at(i, j, &v);
    }
    m
}

/// `∫_{Δ^n} x_n` placed in `g_n` inside `Tot`.
pub fn integrate(tw: &TwComplex, x: &Elem) -> Elem {
    let m = x.degree;
    let tot = &tw.tot;
    let mut out = Elem::zero(tot.complex.space(), m);
    for (key, c) in &tw.element(x).terms {
        if key.form.degree() as usize != key.n {
            continue;
        }
        let w = apl::monomial_integral(&key.form.exps);
        let off = tot.offsets[&m][key.n];
        out.coords[off + key.index] += c * w;
    }
    out
}

/// Verifies that integration is a chain map and checks it is a quasi-isomorphism.
pub fn integration_is_quasi_iso(tw: &TwComplex) -> Result<bool> {
    let i = tw.integration_map();
    if let Some(n) = complex::chain_map_defect(&i, &tw.complex, &tw.tot.complex) {
        return Err(Error::NotChainMap { degree: n });
    }
    complex::is_quasi_isomorphism(&i, &tw.complex, &tw.tot.complex)
}
