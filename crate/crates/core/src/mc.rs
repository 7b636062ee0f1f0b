//! Maurer-Cartan elements over Artinian algebras: curvature, gauge action, BCH and lifting.

use num_traits::Zero;

use crate::artinian::ArtinianAlgebra;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::graded::Elem;
use crate::matrix::{self, Matrix};
use crate::scalar::{self, Scalar};

/// An element of `L^degree ⊗ m_A`: rows index the basis of `L^degree`, columns the basis of `m_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub degree: i32,
    pub coeffs: Matrix,
}

impl Tensor {
    pub fn zero(l: &Dgla, a: &ArtinianAlgebra, degree: i32) -> Self {
        Tensor {
            degree,
            coeffs: Matrix::zeros(l.dim(degree), a.dim()),
        }
    }

    /// `Σ v_i ⊗ a_i`.
    pub fn from_terms(l: &Dgla, a: &ArtinianAlgebra, degree: i32, terms: &[(Vec<Scalar>, usize)]) -> Self {
        let mut t = Self::zero(l, a, degree);
        for (v, col) in terms {
            for (row, x) in v.iter().enumerate() {
                t.coeffs.add_at(row, *col, x);
            }
        }
        t
    }

    pub fn simple(l: &Dgla, a: &ArtinianAlgebra, v: &Elem, col: usize) -> Self {
        Self::from_terms(l, a, v.degree, &[(v.coords.clone(), col)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        Tensor {
            degree: self.degree,
            coeffs: self.coeffs.add(&other.coeffs),
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        Tensor {
            degree: self.degree,
            coeffs: self.coeffs.sub(&other.coeffs),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        Tensor {
            degree: self.degree,
            coeffs: self.coeffs.scale(c),
        }
    }

    /// The `L`-component along basis element `col` of `m_A`.
    pub fn component(&self, col: usize) -> Elem {
        Elem::new(self.degree, self.coeffs.column(col))
    }

    /// Keep only columns of weight `< n`.
    pub fn truncate_below(&self, a: &ArtinianAlgebra, n: usize) -> Tensor {
        let mut t = self.clone();
        for col in 0..a.dim() {
            if a.weight(col) >= n {
                for row in 0..t.coeffs.rows() {
                    t.coeffs.set(row, col, Scalar::zero());
                }
            }
        }
        t
    }

    /// Lowest weight with a nonzero column.
    pub fn min_weight(&self, a: &ArtinianAlgebra) -> Option<usize> {
        (0..a.dim())
            .filter(|&c| !matrix::is_zero_vec(&self.coeffs.column(c)))
            .map(|c| a.weight(c))
            .min()
    }
}

pub fn tensor_d(l: &Dgla, x: &Tensor) -> Tensor {
    Tensor {
        degree: x.degree + 1,
        coeffs: l.complex().d_block(x.degree).mul(&x.coeffs),
    }
}

pub fn tensor_bracket(l: &Dgla, a: &ArtinianAlgebra, x: &Tensor, y: &Tensor) -> Tensor {
    let degree = x.degree + y.degree;
    let mut out = Matrix::zeros(l.dim(degree), a.dim());
    let (p, q) = (x.degree, y.degree);
    for i in 0..x.coeffs.rows() {
        for ca in 0..a.dim() {
            let xa = x.coeffs.get(i, ca);
            if xa.is_zero() {
                continue;
            }
            for j in 0..y.coeffs.rows() {
                let Some(br) = l.table().get(p, i, q, j) else {
                    continue;
                };
                for cb in 0..a.dim() {
                    let yb = y.coeffs.get(j, cb);
                    if yb.is_zero() {
                        continue;
                    }
                    let Some(prod) = a.table().get(&(ca, cb)) else {
                        continue;
                    };
                    let xy = xa * yb;
                    for (k, c) in br {
                        for (cc, m) in prod {
                            out.add_at(*k, *cc, &(&xy * c * m));
                        }
                    }
                }
            }
        }
    }
    Tensor { degree, coeffs: out }
}

/// `dx + ½[x, x]`.
pub fn curvature(l: &Dgla, a: &ArtinianAlgebra, x: &Tensor) -> Tensor {
    let half = scalar::frac(1, 2);
    tensor_d(l, x).add(&tensor_bracket(l, a, x, x).scale(&half))
}

pub fn is_mc(l: &Dgla, a: &ArtinianAlgebra, x: &Tensor) -> bool {
    x.degree == 1 && curvature(l, a, x).is_zero()
}

/// `e^{ad_a} y = Σ ad_a^n y / n!`.
pub fn exp_ad(l: &Dgla, alg: &ArtinianAlgebra, a: &Tensor, y: &Tensor) -> Tensor {
    let mut term = y.clone();
    let mut acc = y.clone();
    let mut n = 1i64;
    loop {
        term = tensor_bracket(l, alg, a, &term).scale(&scalar::frac(1, n));
        if term.is_zero() {
            return acc;
        }
        acc = acc.add(&term);
        n += 1;
    }
}

/// `e^a * x = x + Σ_{n≥0} ad_a^n / (n+1)! ([a, x] − da)`.
pub fn gauge_act(l: &Dgla, alg: &ArtinianAlgebra, a: &Tensor, x: &Tensor) -> Tensor {
    let mut term = tensor_bracket(l, alg, a, x).sub(&tensor_d(l, a));
    let mut acc = x.add(&term);
    let mut n = 2i64;
    while !term.is_zero() {
        term = tensor_bracket(l, alg, a, &term).scale(&scalar::frac(1, n));
        acc = acc.add(&term);
        n += 1;
    }
    acc
}

/// `log(e^x e^y)` for degree-0 `x, y` by the Dynkin series, exact in a nilpotent algebra.
pub fn bch(l: &Dgla, alg: &ArtinianAlgebra, x: &Tensor, y: &Tensor) -> Tensor {
    bch_with(x, y, alg.order(), &|u, v| tensor_bracket(l, alg, u, v))
}

/// Dynkin series truncated at words of length `< order`, for any bilinear bracket.
pub fn bch_with(x: &Tensor, y: &Tensor, order: usize, br: &dyn Fn(&Tensor, &Tensor) -> Tensor) -> Tensor {
    let max_len = order.saturating_sub(1);
    let mut acc = x.scale(&Scalar::zero());
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    dynkin_rec(x, y, max_len, &mut blocks, &mut acc, br);
    acc
}

fn dynkin_rec(
    x: &Tensor,
    y: &Tensor,
    remaining: usize,
    blocks: &mut Vec<(usize, usize)>,
    acc: &mut Tensor,
    br: &dyn Fn(&Tensor, &Tensor) -> Tensor,
) {
    if !blocks.is_empty() {
        let n = blocks.len() as i64;
        let total: usize = blocks.iter().map(|(r, s)| r + s).sum();
        let mut denom = num_bigint::BigInt::from(n) * num_bigint::BigInt::from(total as i64);
        for (r, s) in blocks.iter() {
            denom *= scalar::factorial(*r as u64) * scalar::factorial(*s as u64);
        }
        let coeff = scalar::sign(n - 1) / Scalar::from_integer(denom);
        let word: Vec<&Tensor> = blocks
            .iter()
            .flat_map(|&(r, s)| std::iter::repeat(x).take(r).chain(std::iter::repeat(y).take(s)))
            .collect();
        let mut value = word[word.len() - 1].clone();
        for w in word[..word.len() - 1].iter().rev() {
            if value.is_zero() {
                break;
            }
            value = br(w, &value);
        }
        if !value.is_zero() {
            *acc = acc.add(&value.scale(&coeff));
        }
    }
    for len in 1..=remaining {
        for r in 0..=len {
            blocks.push((r, len - r));
            dynkin_rec(x, y, remaining - len, blocks, acc, br);
            blocks.pop();
        }
    }
}

/// The first obstruction met while lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    pub order: usize,
    /// Basis indices of `m_A` of weight `order`, in column order of `class`.
    pub layer: Vec<usize>,
    /// `h² × |layer|` class coordinates in `H²(L)`.
    pub class: Matrix,
    /// The weight-`order` part of the curvature (a cocycle tensor).
    pub cocycle: Tensor,
    /// The solution modulo `m_A^order` that failed to lift.
    pub partial: Tensor,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Solution(Tensor),
    Obstructed(ObstructionClass),
}

impl LiftOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, LiftOutcome::Solution(_))
    }

    pub fn obstruction(&self) -> Option<&ObstructionClass> {
        match self {
            LiftOutcome::Obstructed(o) => Some(o),
            LiftOutcome::Solution(_) => None,
        }
    }
}

/// Lift a first-order cocycle to an MC element order by order. At each order the correction is
/// the solution of `d y = −R` whose free coordinates (a fixed complement of `ker d`) are zero.
pub fn mc_lift(l: &Dgla, alg: &ArtinianAlgebra, seed: &Tensor) -> Result<LiftOutcome> {
    if seed.degree != 1 {
        return Err(Error::invalid("seed must have degree 1"));
    }
    let seed = seed.truncate_below(alg, 2);
    let ds = tensor_d(l, &seed);
    for row in 0..ds.coeffs.rows() {
        for col in 0..alg.dim() {
            if !ds.coeffs.get(row, col).is_zero() {
                return Err(Error::SeedNotCocycle { basis: row });
            }
        }
    }
    let h = l.cohomology();
    let d1 = l.complex().d_block(1);
    let mut x = seed;
    for n in 2..alg.order() {
        let r = curvature(l, alg, &x);
        let layer = alg.weight_layer(n);
        let mut class = Matrix::zeros(h.dim(2), layer.len());
        let mut cocycle = Tensor::zero(l, alg, 2);
        let mut corrections = Vec::new();
        let mut blocked = false;
        for (pos, &col) in layer.iter().enumerate() {
            let rc = r.component(col);
            for (row, v) in rc.coords.iter().enumerate() {
                cocycle.coeffs.set(row, col, v.clone());
            }
            let cls = h.class_of(&rc);
            for (row, v) in cls.iter().enumerate() {
                class.set(row, pos, v.clone());
            }
            let neg: Vec<Scalar> = rc.coords.iter().map(|v| -v).collect();
            match d1.solve(&neg) {
                Some(y) => corrections.push((y, col)),
                None => blocked = true,
            }
        }
        if blocked {
            return Ok(LiftOutcome::Obstructed(ObstructionClass {
                order: n,
                layer,
                class,
                cocycle,
                partial: x,
            }));
        }
        x = x.add(&Tensor::from_terms(l, alg, 1, &corrections));
    }
    debug_assert!(curvature(l, alg, &x).is_zero());
    Ok(LiftOutcome::Solution(x))
}

pub fn def_tangent(l: &Dgla) -> usize {
    l.cohomology().dim(1)
}

/// First-order deformations over the dual numbers, computed from the MC equation and the gauge
/// action rather than from the differential directly.
#[derive(Clone, Debug)]
pub struct FirstOrder {
    /// Columns span the MC solutions `v ⊗ ε`.
    pub solutions: Matrix,
    /// Columns span the gauge orbit directions of `0`.
    pub gauge: Matrix,
    /// Representatives of the classes (extending `gauge` to `solutions`).
    pub classes: Matrix,
}

pub fn def_classes_first_order(l: &Dgla) -> FirstOrder {
    let eps = ArtinianAlgebra::dual_numbers();
    let n1 = l.dim(1);
    let curv_cols: Vec<Vec<Scalar>> = (0..n1)
        .map(|i| {
            let x = Tensor::simple(l, &eps, &l.basis(1, i), 0);
            curvature(l, &eps, &x).coeffs.column(0)
        })
        .collect();
    let solutions = Matrix::from_cols(l.dim(2), &curv_cols).kernel();
    let zero = Tensor::zero(l, &eps, 1);
    let gauge_cols: Vec<Vec<Scalar>> = (0..l.dim(0))
        .map(|i| {
            let a = Tensor::simple(l, &eps, &l.basis(0, i), 0);
            gauge_act(l, &eps, &a, &zero).coeffs.column(0)
        })
        .collect();
    let gauge = Matrix::from_cols(n1, &gauge_cols).column_basis();
    let classes = Matrix::extend_with(&gauge, &solutions);
    FirstOrder {
        solutions,
        gauge,
        classes,
    }
}
