//! Test-side generators and oracles.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dgla::artinian::ArtinianAlgebra;
use dgla::cartan::models::FilteredCalculus;
use dgla::cartan::{CartanHomotopy, Filtration};
use dgla::complex::{Complex, Subspace};
use dgla::dgla::{hom_dgla, Dgla, DglaMorphism};
use dgla::graded::{Elem, GradedMap, GradedSpace};
use dgla::matrix::Matrix;
use dgla::mc::Tensor;
use dgla::simplicial::Semicosimplicial;
use dgla::scalar::{int, Scalar};
use dgla::table::StructureTable;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(r: &mut TestRng) -> Scalar {
    int(r.gen_range(-2..=2))
}

pub fn rand_matrix(r: &mut TestRng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows).map(|_| (0..cols).map(|_| small(r)).collect()).collect();
    if rows == 0 || cols == 0 {
        return Matrix::zeros(rows, cols);
    }
    Matrix::from_rows(data)
}

/// Random matrix of rank at most `k`.
pub fn rand_low_rank(r: &mut TestRng, rows: usize, cols: usize, k: usize) -> Matrix {
    rand_matrix(r, rows, k).mul(&rand_matrix(r, k, cols))
}

/// `L U P` with unit triangular factors and `P` a random permutation: invertible over Z.
pub fn rand_invertible(r: &mut TestRng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, small(r));
            u.set(j, i, small(r));
        }
        if r.gen_bool(0.5) {
            u.set(i, i, int(-1));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, r.gen_range(0..=i));
    }
    let mut p = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p.set(i, j, Scalar::one());
    }
    l.mul(&u).mul(&p)
}

/// Random complex on degrees `lo..=hi` with `d² = 0` built in: each `d_n` has rows in the left
/// kernel of `d_{n−1}`.
pub fn rand_complex(r: &mut TestRng, lo: i32, hi: i32, max_dim: usize) -> Complex {
    let dims: BTreeMap<i32, usize> = (lo..=hi).map(|n| (n, r.gen_range(0..=max_dim))).collect();
    let space = GradedSpace::new(dims.clone());
    let mut blocks = BTreeMap::new();
    let mut prev: Option<Matrix> = None;
    for n in lo..hi {
        let (a, b) = (dims[&n], dims[&(n + 1)]);
        let left = match &prev {
            None => Matrix::identity(a),
            Some(p) => p.transpose().kernel().transpose(),
        };
        let k = r.gen_range(0..=left.rows().min(b).max(1));
        let d = rand_low_rank(r, b, left.rows(), k).mul(&left);
        prev = Some(d.clone());
        blocks.insert(n, d);
    }
    Complex::from_blocks(space, blocks).expect("random complex")
}

/// Random degree −1 map `C → D`.
pub fn rand_homotopy(r: &mut TestRng, c: &GradedSpace, d: &GradedSpace) -> GradedMap {
    GradedMap::from_fn(c, d, -1, |n| rand_matrix(r, d.dim(n - 1), c.dim(n))).expect("homotopy")
}

/// `d_D h + h d_C`, a chain map `C → D`.
pub fn null_homotopic(c: &Complex, d: &Complex, h: &GradedMap) -> GradedMap {
    let a = d.d().compose(h).unwrap();
    let b = h.compose(c.d()).unwrap();
    a.add(&b)
}

pub fn rand_auto(r: &mut TestRng, space: &GradedSpace) -> GradedMap {
    GradedMap::from_fn(space, space, 0, |n| rand_invertible(r, space.dim(n))).expect("automorphism")
}

pub fn inverse(phi: &GradedMap) -> GradedMap {
    GradedMap::from_fn(phi.target(), phi.source(), 0, |n| phi.block(n).inverse().expect("invertible")).unwrap()
}

/// The complex with `d' = φ⁻¹ d φ`, so `φ : C' → C` is an isomorphism.
pub fn transport_complex(c: &Complex, phi: &GradedMap) -> Complex {
    let d = inverse(phi).compose(c.d()).unwrap().compose(phi).unwrap();
    Complex::new(d).expect("transported complex")
}

/// `[x, y]' = φ⁻¹ [φ x, φ y]` on the basis.
pub fn transport_table(space: &GradedSpace, t: &StructureTable, phi: &GradedMap) -> StructureTable {
    let inv = inverse(phi);
    let mut out = StructureTable::new();
    for (p, i) in space.basis() {
        for (q, j) in space.basis() {
            if space.dim(p + q) == 0 {
                continue;
            }
            let x = phi.apply(&Elem::basis(space, p, i));
            let y = phi.apply(&Elem::basis(space, q, j));
            let z = inv.apply(&t.apply(space, &x, &y));
            for (k, c) in z.coords.into_iter().enumerate() {
                out.add(p, i, q, j, k, c);
            }
        }
    }
    out
}

pub fn transport_dgla(l: &Dgla, phi: &GradedMap) -> Dgla {
    let c = transport_complex(l.complex(), phi);
    let t = transport_table(l.space(), l.table(), phi);
    Dgla::new(c, t).expect("transported DGLA")
}

/// `L ⊕ M` with the two brackets and no cross terms.
pub fn dgla_sum(l: &Dgla, m: &Dgla) -> Dgla {
    let c = l.complex().direct_sum(m.complex());
    let mut t = StructureTable::new();
    for e in l.table().entries() {
        t.add(e.p, e.i, e.q, e.j, e.k, e.c);
    }
    for e in m.table().entries() {
        let (a, b, k) = (l.dim(e.p), l.dim(e.q), l.dim(e.p + e.q));
        t.add(e.p, e.i + a, e.q, e.j + b, e.k + k, e.c);
    }
    Dgla::new(c, t).expect("direct sum")
}

/// The inclusion `L → L ⊕ M`.
pub fn first_inclusion(l: &Dgla, sum: &Dgla) -> GradedMap {
    GradedMap::from_fn(l.space(), sum.space(), 0, |n| {
        let mut b = Matrix::zeros(sum.dim(n), l.dim(n));
        b.set_block(0, 0, &Matrix::identity(l.dim(n)));
        b
    })
    .unwrap()
}

/// `(φ, ψ)`-transport of a calculus: `i'_a = ψ⁻¹ i_{φ a} ψ`, filtration `ψ⁻¹ F`.
pub fn transport_calculus(c: &FilteredCalculus, phi: &GradedMap, psi: &GradedMap) -> FilteredCalculus {
    let h = &c.calculus;
    let lie = transport_dgla(&h.lie, phi);
    let module = transport_complex(&h.module, psi);
    let psi_inv = inverse(psi);
    let mut ops = BTreeMap::new();
    for p in h.lie.space().support() {
        let list: Vec<GradedMap> = (0..h.lie.dim(p))
            .map(|i| {
                let a = phi.apply(&h.lie.basis(p, i));
                psi_inv.compose(&h.op(&a)).unwrap().compose(psi).unwrap()
            })
            .collect();
        ops.insert(p, list);
    }
    let pull = |s: &Subspace| -> Subspace {
        s.iter().map(|(&n, m)| (n, psi_inv.block(n).mul(m))).collect()
    };
    FilteredCalculus {
        name: format!("{}_transported", c.name),
        calculus: CartanHomotopy::new(lie, module, ops).expect("transported calculus"),
        filtration: Filtration {
            top: pull(&c.filtration.top),
            next: pull(&c.filtration.next),
        },
    }
}

/// Maps columns by label: monomials absent from `b` go to zero.
pub fn push_tensor(x: &Tensor, a: &ArtinianAlgebra, b: &ArtinianAlgebra) -> Tensor {
    let mut out = Matrix::zeros(x.coeffs.rows(), b.dim());
    for (col, label) in a.labels().iter().enumerate() {
        if let Some(k) = b.index_of(label) {
            for row in 0..x.coeffs.rows() {
                out.set(row, k, x.coeffs.get(row, col).clone());
            }
        }
    }
    Tensor {
        degree: x.degree,
        coeffs: out,
    }
}

pub fn rand_tensor(r: &mut TestRng, l: &Dgla, a: &ArtinianAlgebra, degree: i32) -> Tensor {
    Tensor {
        degree,
        coeffs: rand_matrix(r, l.dim(degree), a.dim()),
    }
}

/// Fraction-free (Bareiss) rank over Z after clearing row denominators.
pub fn oracle_rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Scalar::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// `dim C^n − rank d_n − rank d_{n−1}` with the oracle rank.
pub fn oracle_betti(c: &Complex) -> BTreeMap<i32, usize> {
    c.space()
        .support()
        .into_iter()
        .map(|n| (n, c.dim(n) - oracle_rank(&c.d_block(n)) - oracle_rank(&c.d_block(n - 1))))
        .collect()
}

pub fn nonzero(b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    b.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
}

/// A random injective `χ : L → L ⊕ K`, `l ↦ (l, g l)` with `g ≃ 0`, then scrambled by a basis
/// change of the target.
pub fn random_chi(r: &mut TestRng, max_l: usize, max_k: usize) -> (Dgla, Dgla, DglaMorphism) {
    let lc = rand_complex(r, 0, 2, max_l);
    let kc = rand_complex(r, 0, 2, max_k);
    let l = Dgla::abelian(lc.clone());
    let mc = lc.direct_sum(&kc);
    let h = rand_homotopy(r, lc.space(), kc.space());
    let g = null_homotopic(&lc, &kc, &h);
    let chi = GradedMap::from_fn(lc.space(), mc.space(), 0, |n| {
        Matrix::identity(lc.dim(n)).vstack(&g.block(n))
    })
    .unwrap();
    let psi = rand_auto(r, mc.space());
    let m = Dgla::abelian(transport_complex(&mc, &psi));
    let chi = inverse(&psi).compose(&chi).unwrap();
    let chi = DglaMorphism::new(&l, &m, chi).unwrap();
    (l, m, chi)
}

/// Two-level semicosimplicial DG space `g⁰ ⇉ g⁰ ⊕ K` with cofaces `(id, g_k)`, `g_k ≃ 0`.
pub fn random_two_level(r: &mut TestRng) -> Semicosimplicial {
    let c0 = rand_complex(r, 0, 1, 2);
    let k = rand_complex(r, 0, 1, 2);
    let c1 = c0.direct_sum(&k);
    let faces: Vec<GradedMap> = (0..2)
        .map(|_| {
            let h = rand_homotopy(r, c0.space(), k.space());
            let g = null_homotopic(&c0, &k, &h);
            let keep = r.gen_bool(0.7);
            GradedMap::from_fn(c0.space(), c1.space(), 0, |n| {
                let top = if keep { Matrix::identity(c0.dim(n)) } else { Matrix::zeros(c0.dim(n), c0.dim(n)) };
                top.vstack(&g.block(n))
            })
            .unwrap()
        })
        .collect();
    Semicosimplicial::new(vec![Dgla::abelian(c0), Dgla::abelian(c1)], vec![faces]).unwrap()
}

pub fn small_hom_dgla(r: &mut TestRng) -> Dgla {
    hom_dgla(&rand_complex(r, 0, 1, 2)).dgla
}

