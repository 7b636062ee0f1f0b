//! Small dBV algebras: the truncated line with an odd variable, its degenerate variants, an
//! exterior algebra on which `Δ² ≠ 0`, and a bigraded instance with `E₁` degeneration.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar::{int, one, Scalar};
use crate::table::StructureTable;

use super::{Bigrading, DbvAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KoszulDelta {
    /// `x ∂_x ∂_ξ`.
    Second,
    /// `∂_ξ`.
    First,
    Zero,
}

fn label(a: usize, xi: bool) -> String {
    let x = match a {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{a}"),
    };
    match (x.is_empty(), xi) {
        (true, false) => "1".into(),
        (true, true) => "ξ".into(),
        (false, false) => x,
        (false, true) => format!("{x}ξ"),
    }
}

/// `Q[x]/(x^{P+1}) ⊗ Λ[ξ]` with `|x| = 0`, `|ξ| = 1`, `d = 0`, `k = 1`. Basis `x^a` in degree 0
/// and `x^a ξ` in degree 1, both indexed by `a`.
pub fn koszul_with(p: usize, delta: KoszulDelta) -> DbvAlgebra {
    let n = p + 1;
    let labels: BTreeMap<i32, Vec<String>> = [
        (0, (0..n).map(|a| label(a, false)).collect()),
        (1, (0..n).map(|a| label(a, true)).collect()),
    ]
    .into_iter()
    .collect();
    let space = GradedSpace::new([(0, n), (1, n)]).with_labels(labels).expect("labels");
    let mut t = StructureTable::new();
    for a in 0..n {
        for b in 0..n - a {
            t.add(0, a, 0, b, a + b, one());
            t.add(0, a, 1, b, a + b, one());
            t.add(1, a, 0, b, a + b, one());
        }
    }
    let mut m = Matrix::zeros(n, n);
    for a in 0..n {
        match delta {
            KoszulDelta::Second => m.set(a, a, int(a as i64)),
            KoszulDelta::First => m.set(a, a, one()),
            KoszulDelta::Zero => {}
        }
    }
    let blocks = [(1, m)].into_iter().collect();
    let delta = GradedMap::new(space.clone(), space.clone(), -1, blocks).expect("Δ");
    let unit = Elem::basis(&space, 0, 0);
    DbvAlgebra::new(Complex::zero_differential(space), t, unit, delta, 1).expect("Koszul model")
}

pub fn koszul(p: usize) -> DbvAlgebra {
    koszul_with(p, KoszulDelta::Second)
}

pub fn koszul_first_order(p: usize) -> DbvAlgebra {
    koszul_with(p, KoszulDelta::First)
}

pub fn koszul_zero_delta(p: usize) -> DbvAlgebra {
    koszul_with(p, KoszulDelta::Zero)
}

/// `Λ[ξ₁, ξ₂]` with `Δ = ∂₁ + ξ₁ ∂₁ ∂₂`, so `Δ²(ξ₁ξ₂) = −1`.
pub fn non_square_zero() -> DbvAlgebra {
    let labels: BTreeMap<i32, Vec<String>> = [
        (0, vec!["1".to_string()]),
        (1, vec!["ξ1".to_string(), "ξ2".to_string()]),
        (2, vec!["ξ1ξ2".to_string()]),
    ]
    .into_iter()
    .collect();
    let space = GradedSpace::new([(0, 1), (1, 2), (2, 1)]).with_labels(labels).expect("labels");
    let mut t = StructureTable::new();
    t.add(0, 0, 0, 0, 0, one());
    for i in 0..2 {
        t.add(0, 0, 1, i, i, one());
        t.add(1, i, 0, 0, i, one());
    }
    t.add(0, 0, 2, 0, 0, one());
    t.add(2, 0, 0, 0, 0, one());
    t.add(1, 0, 1, 1, 0, one());
    t.add(1, 1, 1, 0, 0, int(-1));
    let blocks = [
        (1, Matrix::from_i64(&[&[1, 0]])),
        (2, Matrix::from_i64(&[&[-1], &[1]])),
    ]
    .into_iter()
    .collect();
    let delta = GradedMap::new(space.clone(), space.clone(), -1, blocks).expect("Δ");
    let unit = Elem::basis(&space, 0, 0);
    DbvAlgebra::new(Complex::zero_differential(space), t, unit, delta, 1).expect("exterior model")
}

/// `Q·1 ⊕ Q u ⊕ Q v ⊕ Q w` with all products of `u, v, w` zero, bidegrees `1: (0,0)`,
/// `u: (1,1)`, `v: (0,1)`, `w: (0,0)`, `du = v` and `Δw = v`.
pub fn bigraded_e1() -> DbvAlgebra {
    bigraded_square_zero(&[(1, 1), (0, 1), (0, 0)], &[(0, 1, one())], &[(2, 1, one())])
        .expect("bigraded instance")
}

/// Square-zero extension `Q·1 ⊕ M` with `k = 1`, where `M` has the given bidegrees (total degree
/// `−i − j`), `d` and `Δ` are given by `(source, target, c)` on `M`.
pub fn bigraded_square_zero(
    bidegrees: &[(i32, i32)],
    d: &[(usize, usize, Scalar)],
    delta: &[(usize, usize, Scalar)],
) -> crate::error::Result<DbvAlgebra> {
    let names = ["u", "v", "w", "y", "z"];
    let deg = |(i, j): (i32, i32)| -i - j;
    let mut members: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    members.entry(0).or_default().push(usize::MAX);
    for (g, &b) in bidegrees.iter().enumerate() {
        members.entry(deg(b)).or_default().push(g);
    }
    let pos = |g: usize| -> (i32, usize) {
        let n = deg(bidegrees[g]);
        (n, members[&n].iter().position(|&h| h == g).expect("member"))
    };
    let mut labels = BTreeMap::new();
    let mut bigrading: Bigrading = BTreeMap::new();
    for (&n, list) in &members {
        labels.insert(
            n,
            list.iter()
                .map(|&g| if g == usize::MAX { "1".to_string() } else { names.get(g).map_or(format!("m{g}"), |s| s.to_string()) })
                .collect::<Vec<_>>(),
        );
        bigrading.insert(
            n,
            list.iter().map(|&g| if g == usize::MAX { (0, 0) } else { bidegrees[g] }).collect(),
        );
    }
    let space = GradedSpace::new(members.iter().map(|(&n, l)| (n, l.len()))).with_labels(labels)?;
    let op = |entries: &[(usize, usize, Scalar)], r: i32| -> crate::error::Result<GradedMap> {
        let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (s, t, c) in entries {
            let (n, i) = pos(*s);
            let (m, j) = pos(*t);
            if m != n + r {
                return Err(crate::error::Error::invalid("operator entry has the wrong degree"));
            }
            blocks
                .entry(n)
                .or_insert_with(|| Matrix::zeros(space.dim(m), space.dim(n)))
                .add_at(j, i, c);
        }
        GradedMap::new(space.clone(), space.clone(), r, blocks)
    };
    let dmap = op(d, 1)?;
    let delta = op(delta, -1)?;
    let unit = Elem::basis(&space, 0, 0);
    let mut t = StructureTable::new();
    for (n, i) in space.basis() {
        t.add(0, 0, n, i, i, one());
        if n != 0 || i != 0 {
            t.add(n, i, 0, 0, i, one());
        }
    }
    DbvAlgebra::new(Complex::new(dmap)?, t, unit, delta, 1)?.with_bigrading(bigrading)
}
