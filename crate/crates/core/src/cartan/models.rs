//! Finite calculi: truncated polynomial vector fields and forms on the line, and two small
//! hand-built instances.

use std::collections::BTreeMap;

use crate::complex::{Complex, Subspace};
use crate::dgla::Dgla;
use crate::graded::{GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar::{int, Scalar};
use crate::table::StructureTable;

use super::{CartanHomotopy, Filtration};

/// A calculus together with the subcomplexes `F ⊆ G ⊆ V` used by the criterion.
#[derive(Clone, Debug)]
pub struct FilteredCalculus {
    pub name: String,
    pub calculus: CartanHomotopy,
    pub filtration: Filtration,
}

/// `((p, i), n, col, row, c)`: the operator of basis `i` of `L^p` sends basis `col` of `V^n` to
/// `c` times basis `row` of `V^{n+p−1}`.
type OpEntry = ((i32, usize), i32, usize, usize, Scalar);

pub(crate) fn ops_from_entries(lie: &Dgla, module: &Complex, entries: &[OpEntry]) -> BTreeMap<i32, Vec<GradedMap>> {
    let v = module.space();
    let mut ops = BTreeMap::new();
    for p in lie.space().support() {
        let mut list = Vec::new();
        for i in 0..lie.dim(p) {
            let r = p - 1;
            let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
            for ((q, k), n, col, row, c) in entries {
                if (*q, *k) == (p, i) {
                    blocks
                        .entry(*n)
                        .or_insert_with(|| Matrix::zeros(v.dim(n + r), v.dim(*n)))
                        .add_at(*row, *col, c);
                }
            }
            list.push(GradedMap::new(v.clone(), v.clone(), r, blocks).expect("operator shape"));
        }
        ops.insert(p, list);
    }
    ops
}

fn labelled(dims: &[(i32, Vec<String>)]) -> GradedSpace {
    let labels: BTreeMap<i32, Vec<String>> = dims.iter().cloned().collect();
    GradedSpace::new(dims.iter().map(|(n, l)| (*n, l.len())))
        .with_labels(labels)
        .expect("labels")
}

fn power(a: usize) -> String {
    match a {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x^{a}"),
    }
}

fn field(a: usize) -> String {
    match a {
        0 => "∂".into(),
        _ => format!("{}∂", power(a)),
    }
}

fn top_and_all(module: &Complex) -> Filtration {
    let mut top = Subspace::new();
    top.insert(1, Matrix::identity(module.dim(1)));
    let all: Subspace = module
        .space()
        .support()
        .into_iter()
        .map(|n| (n, Matrix::identity(module.dim(n))))
        .collect();
    Filtration { top, next: all }
}

/// Vector fields `x^{a+1}∂` vanishing at the origin acting on functions `x^a` and log forms
/// `x^a dx/x`, all truncated at `a ≤ P`.
pub fn log_model(p: usize) -> FilteredCalculus {
    assert!(p >= 1, "P must be at least 1");
    let n = p + 1;
    let lspace = labelled(&[(0, (0..n).map(|a| field(a + 1)).collect())]);
    let mut t = StructureTable::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && a + b <= p {
                t.add(0, a, 0, b, a + b, int(b as i64 - a as i64));
            }
        }
    }
    let lie = Dgla::new(Complex::zero_differential(lspace), t).expect("log vector fields");
    let vspace = labelled(&[
        (0, (0..n).map(power).collect()),
        (1, (0..n).map(|a| if a == 0 { "dx/x".into() } else { format!("{} dx/x", power(a)) }).collect()),
    ]);
    let mut d0 = Matrix::zeros(n, n);
    for a in 0..n {
        d0.set(a, a, int(a as i64));
    }
    let module = Complex::from_blocks(vspace, BTreeMap::from([(0, d0)])).expect("log forms");
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a + b <= p {
                entries.push(((0, a), 1, b, a + b, int(1)));
            }
        }
    }
    let ops = ops_from_entries(&lie, &module, &entries);
    let filtration = top_and_all(&module);
    FilteredCalculus {
        name: format!("log-model-{p}"),
        calculus: CartanHomotopy::new(lie, module, ops).expect("log calculus"),
        filtration,
    }
}

fn affine(p: usize, flip: bool) -> FilteredCalculus {
    assert!(p >= 1, "P must be at least 1");
    let lspace = labelled(&[(0, (1..=p).map(field).collect())]);
    let mut t = StructureTable::new();
    for a in 1..=p {
        for b in 1..=p {
            if a != b && a + b - 1 <= p {
                t.add(0, a - 1, 0, b - 1, a + b - 2, int(b as i64 - a as i64));
            }
        }
    }
    let lie = Dgla::new(Complex::zero_differential(lspace), t).expect("polynomial vector fields");
    let vspace = labelled(&[
        (0, (0..=p).map(power).collect()),
        (1, (0..p).map(|b| if b == 0 { "dx".into() } else { format!("{} dx", power(b)) }).collect()),
    ]);
    let mut d0 = Matrix::zeros(p, p + 1);
    for b in 1..=p {
        d0.set(b - 1, b, int(b as i64));
    }
    let module = Complex::from_blocks(vspace, BTreeMap::from([(0, d0)])).expect("polynomial forms");
    let mut entries = Vec::new();
    for a in 1..=p {
        for b in 0..p {
            if a + b <= p {
                let c = if flip && a == 1 && b == 1 { -1 } else { 1 };
                entries.push(((0, a - 1), 1, b, a + b, int(c)));
            }
        }
    }
    let ops = ops_from_entries(&lie, &module, &entries);
    let filtration = top_and_all(&module);
    FilteredCalculus {
        name: if flip { format!("affine-model-{p}-sign-error") } else { format!("affine-model-{p}") },
        calculus: CartanHomotopy::new(lie, module, ops).expect("affine calculus"),
        filtration,
    }
}

/// Vector fields `x^a∂` (`1 ≤ a ≤ P`) on functions `x^b` (`b ≤ P`) and forms `x^b dx` (`b < P`).
pub fn affine_model(p: usize) -> FilteredCalculus {
    affine(p, false)
}

/// The affine model with the sign of `x∂ ⌟ x dx` flipped.
pub fn affine_model_with_sign_error(p: usize) -> FilteredCalculus {
    assert!(p >= 2, "the flipped entry needs P ≥ 2");
    affine(p, true)
}

/// Abelian `L = ⟨a⟩ ⊕ ⟨b⟩[−1]` on `V⁰ = ⟨f, g⟩`, `V¹ = ⟨ω⟩` with `i_a ω = f`, `i_b g = f`;
/// `F = ⟨g, ω⟩`.
pub fn abelian_calculus() -> FilteredCalculus {
    let lspace = labelled(&[(0, vec!["a".into()]), (1, vec!["b".into()])]);
    let lie = Dgla::abelian(Complex::zero_differential(lspace));
    let vspace = labelled(&[(0, vec!["f".into(), "g".into()]), (1, vec!["ω".into()])]);
    let module = Complex::zero_differential(vspace);
    let entries = vec![((0, 0), 1, 0, 0, int(1)), ((1, 0), 0, 1, 0, int(1))];
    let ops = ops_from_entries(&lie, &module, &entries);
    let mut top = Subspace::new();
    top.insert(0, Matrix::from_i64(&[&[0], &[1]]));
    top.insert(1, Matrix::identity(1));
    let next: Subspace = [(0, Matrix::identity(2)), (1, Matrix::identity(1))].into();
    FilteredCalculus {
        name: "abelian-calculus".into(),
        calculus: CartanHomotopy::new(lie, module, ops).expect("abelian calculus"),
        filtration: Filtration { top, next },
    }
}

/// The nilpotent witness `[x, y] = z` acting on `c₀, c₁, c₂` (degrees 0, 1, 2) and `e₀, e₁`
/// (degrees 1, 2) with `d c₀ = −e₀`, `d c₁ = −e₁`, `i_x e₀ = −c₁`, `i_y e₁ = c₂`, `i_z e₀ = c₂`;
/// `F = ⟨e₀, e₁⟩`.
pub fn nilpotent_calculus() -> FilteredCalculus {
    let lie = crate::dgla::models::nilpotent_witness();
    let vspace = labelled(&[
        (0, vec!["c0".into()]),
        (1, vec!["c1".into(), "e0".into()]),
        (2, vec!["c2".into(), "e1".into()]),
    ]);
    let d0 = Matrix::from_i64(&[&[0], &[-1]]);
    let d1 = Matrix::from_i64(&[&[0, 0], &[-1, 0]]);
    let module = Complex::from_blocks(vspace, BTreeMap::from([(0, d0), (1, d1)])).expect("module");
    // degree-1 elements act with degree 0, z with degree 1
    let entries = vec![
        ((1, 0), 1, 1, 0, int(-1)),
        ((1, 1), 2, 1, 0, int(1)),
        ((2, 0), 1, 1, 0, int(1)),
    ];
    let ops = ops_from_entries(&lie, &module, &entries);
    let top: Subspace = [
        (1, Matrix::from_i64(&[&[0], &[1]])),
        (2, Matrix::from_i64(&[&[0], &[1]])),
    ]
    .into();
    let next: Subspace = module
        .space()
        .support()
        .into_iter()
        .map(|n| (n, Matrix::identity(module.dim(n))))
        .collect();
    FilteredCalculus {
        name: "nilpotent-calculus".into(),
        calculus: CartanHomotopy::new(lie, module, ops).expect("nilpotent calculus"),
        filtration: Filtration { top, next },
    }
}
