//! Polynomial differential forms on standard simplices in reduced coordinates `t_1..t_n`
//! (with `t_0 = 1 − Σ t_i` eliminated).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

/// `t^α dt_S` with `S` a bitmask over `1..=n` (bit `i−1` for `dt_i`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub dts: u64,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n],
            dts: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    /// Form degree `|S|`.
    pub fn degree(&self) -> i32 {
        self.dts.count_ones() as i32
    }

    /// Polynomial weight `|α| + |S|` (the quantity bounded by `P`).
    pub fn weight(&self) -> usize {
        self.exps.iter().sum::<u32>() as usize + self.dts.count_ones() as usize
    }
}

/// A form on `Δ^n` as a sparse sum of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form {
    pub n: usize,
    pub terms: BTreeMap<Monomial, Scalar>,
}

/// Sign of `dt_S dt_T = ± dt_{S ∪ T}`, or `None` if they overlap.
fn wedge_sign(s: u64, t: u64) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut bits = t;
    while bits != 0 {
        let j = bits.trailing_zeros();
        inversions += (s >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    Some(inversions % 2 == 1)
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::monomial(Monomial::one(n), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut f = Form::zero(m.n());
        f.add_term(m, c);
        f
    }

    /// The coordinate function `t_i` for `1 ≤ i ≤ n`, or `t_0 = 1 − Σ t_j`.
    pub fn t(n: usize, i: usize) -> Self {
        if i == 0 {
            let mut f = Form::constant(n, Scalar::one());
            for j in 1..=n {
                f = f.sub(&Form::t(n, j));
            }
            return f;
        }
        let mut m = Monomial::one(n);
        m.exps[i - 1] = 1;
        Form::monomial(m, Scalar::one())
    }

    /// `dt_i` for `1 ≤ i ≤ n`, or `dt_0 = −Σ dt_j`.
    pub fn dt(n: usize, i: usize) -> Self {
        Form::t(n, i).d()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut f = self.clone();
        for (m, c) in &other.terms {
            f.add_term(m.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        let mut f = Form::zero(self.n);
        if c.is_zero() {
            return f;
        }
        for (m, x) in &self.terms {
            f.terms.insert(m.clone(), x * c);
        }
        f
    }

    /// Highest polynomial weight present.
    pub fn weight(&self) -> usize {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// Homogeneous form degree, if homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut f = Form::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let Some(neg) = wedge_sign(a.dts, b.dts) else {
                    continue;
                };
                let m = Monomial {
                    exps: a.exps.iter().zip(&b.exps).map(|(p, q)| p + q).collect(),
                    dts: a.dts | b.dts,
                };
                let c = x * y;
                f.add_term(m, if neg { -c } else { c });
            }
        }
        f
    }

    pub fn d(&self) -> Form {
        let mut f = Form::zero(self.n);
        for (m, c) in &self.terms {
            for i in 0..self.n {
                let a = m.exps[i];
                if a == 0 || m.dts & (1 << i) != 0 {
                    continue;
                }
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                // dt_i in front of dt_S
                let neg = (m.dts & ((1u64 << i) - 1)).count_ones() % 2 == 1;
                let v = c * scalar::int(a as i64);
                f.add_term(
                    Monomial {
                        exps,
                        dts: m.dts | (1 << i),
                    },
                    if neg { -v } else { v },
                );
            }
        }
        f
    }

    /// Pull back along `t_i ↦ images[i−1]` (degree-0 forms on `Δ^m`).
    pub fn substitute(&self, m: usize, images: &[Form]) -> Form {
        let diffs: Vec<Form> = images.iter().map(Form::d).collect();
        let mut out = Form::zero(m);
        for (mono, c) in &self.terms {
            let mut f = Form::constant(m, c.clone());
            for (i, &e) in mono.exps.iter().enumerate() {
                for _ in 0..e {
                    f = f.mul(&images[i]);
                }
            }
            for i in 0..self.n {
                if mono.dts & (1 << i) != 0 {
                    f = f.mul(&diffs[i]);
                }
            }
            out = out.add(&f);
        }
        out
    }

    /// Face map `δ^k: A_n → A_{n−1}`, restriction to `{t_k = 0}`.
    pub fn face(&self, k: usize) -> Form {
        let n = self.n;
        assert!(n >= 1 && k <= n, "face index out of range");
        let m = n - 1;
        let images: Vec<Form> = (1..=n)
            .map(|j| {
                if k == 0 {
                    // vertices 1..n become 0..n−1
                    Form::t(m, j - 1)
                } else if j < k {
                    Form::t(m, j)
                } else if j == k {
                    Form::zero(m)
                } else {
                    Form::t(m, j - 1)
                }
            })
            .collect();
        self.substitute(m, &images)
    }

    /// `∫_{Δ^n}` with orientation `dt_1…dt_n`; zero unless the form has top degree.
    pub fn integrate(&self) -> Scalar {
        let top: u64 = if self.n == 0 { 0 } else { (1u64 << self.n) - 1 };
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            if m.dts != top {
                continue;
            }
            acc += c * monomial_integral(&m.exps);
        }
        acc
    }
}

/// `∫_{Δ^n} t^α dt_1…dt_n = Π α_i! / (n + Σ α_i)!`.
pub fn monomial_integral(exps: &[u32]) -> Scalar {
    let n = exps.len() as u64;
    let num = exps
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, &a| acc * scalar::factorial(a as u64));
    let den = scalar::factorial(n + exps.iter().map(|&a| a as u64).sum::<u64>());
    Scalar::new(num, den)
}

/// Monomials of form degree `i` and weight `≤ bound` on `Δ^n`, in a fixed order.
pub fn basis(n: usize, i: usize, bound: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if i > n || i > bound {
        return out;
    }
    for dts in 0u64..(1u64 << n) {
        if dts.count_ones() as usize != i {
            continue;
        }
        for total in 0..=(bound - i) {
            for exps in crate::artinian::monomials_of_degree(n, total as u32) {
                out.push(Monomial { exps, dts });
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    /// Iterated integral over `0 ≤ t_n ≤ 1 − t_1 − … − t_{n−1}`, by exact polynomial calculus.
    fn iterated_integral(exps: &[u32]) -> Scalar {
        // integrate t_n^{a_n} from 0 to R (R = 1 − rest), then recurse with the power of R
        // folded into a binomial expansion; done here by direct univariate recursion on
        // ∫_0^R t^a (R − t)^b dt = a! b! R^{a+b+1} / (a+b+1)!
        fn rec(exps: &[u32], carry: u32) -> Scalar {
            match exps.split_last() {
                None => Scalar::one(),
                Some((&a, rest)) => {
                    let b = carry;
                    let beta = Scalar::new(
                        scalar::factorial(a as u64) * scalar::factorial(b as u64),
                        scalar::factorial((a + b + 1) as u64),
                    );
                    beta * rec(rest, a + b + 1)
                }
            }
        }
        rec(exps, 0)
    }

    #[test]
    fn integral_formula_matches_iterated_oracle() {
        for exps in [vec![], vec![0], vec![1], vec![3], vec![1, 2], vec![0, 0, 0], vec![2, 1, 1]] {
            assert_eq!(monomial_integral(&exps), iterated_integral(&exps), "{exps:?}");
        }
        assert_eq!(monomial_integral(&[1]), frac(1, 2));
    }

    #[test]
    fn dimension_one_calculus() {
        let t = Form::t(1, 1);
        assert_eq!(t.d(), Form::dt(1, 1));
        let t2 = t.mul(&t);
        assert_eq!(t2.d(), t.mul(&Form::dt(1, 1)).scale(&int(2)));
        assert_eq!(t.mul(&Form::dt(1, 1)).integrate(), frac(1, 2));
        assert_eq!(Form::dt(1, 1).integrate(), int(1));
    }

    #[test]
    fn vertex_restriction() {
        let f = Form::constant(1, int(3))
            .add(&Form::t(1, 1).scale(&int(5)))
            .add(&Form::dt(1, 1).scale(&int(7)));
        assert_eq!(f.face(1), Form::constant(0, int(3)));
        assert_eq!(f.face(0), Form::constant(0, int(8)));
    }

    #[test]
    fn graded_commutativity_and_leibniz() {
        let a = Form::t(2, 1).mul(&Form::dt(2, 2));
        let b = Form::dt(2, 1).add(&Form::t(2, 2));
        let ab = a.mul(&Form::dt(2, 1));
        let ba = Form::dt(2, 1).mul(&a);
        assert_eq!(ab, ba.scale(&int(-1)));
        let lhs = a.mul(&b).d();
        let rhs = a.d().mul(&b).add(&a.mul(&b.d()).scale(&int(-1)));
        assert_eq!(lhs, rhs);
        assert!(Form::dt(2, 0).add(&Form::dt(2, 1)).add(&Form::dt(2, 2)).is_zero());
    }

    #[test]
    fn stokes_on_triangle_and_tetrahedron() {
        for n in 1..=3usize {
            for i in 0..n {
                let mut omega = Form::constant(n, int(1));
                for j in (0..n).filter(|&j| j != i) {
                    omega = omega.mul(&Form::dt(n, j + 1));
                }
                omega = omega.mul(&Form::t(n, 1)).mul(&Form::t(n, n));
                let lhs = omega.d().integrate();
                let mut rhs = Scalar::zero();
                for k in 0..=n {
                    rhs += scalar::sign(k as i64) * omega.face(k).integrate();
                }
                assert_eq!(lhs, rhs, "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn faces_satisfy_dual_cosimplicial_identities() {
        let f = Form::t(3, 1)
            .mul(&Form::t(3, 2))
            .mul(&Form::dt(3, 3))
            .add(&Form::t(3, 3).mul(&Form::dt(3, 1)));
        for k in 0..3usize {
            for l in 0..=k {
                // δ^{l,n−1} δ^{k+1,n} = δ^{k,n−1} δ^{l,n} for l ≤ k
                assert_eq!(f.face(k + 1).face(l), f.face(l).face(k), "k = {k}, l = {l}");
            }
        }
    }

    #[test]
    fn faces_commute_with_d_and_products() {
        let a = Form::t(2, 1).mul(&Form::t(2, 2));
        let b = Form::dt(2, 1).add(&Form::t(2, 2).mul(&Form::dt(2, 2)));
        for k in 0..=2 {
            assert_eq!(a.d().face(k), a.face(k).d());
            assert_eq!(a.mul(&b).face(k), a.face(k).mul(&b.face(k)));
        }
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis(0, 0, 3).len(), 1);
        assert_eq!(basis(1, 0, 2).len(), 3);
        assert_eq!(basis(1, 1, 2).len(), 2);
        assert_eq!(basis(2, 2, 2).len(), 1);
    }
}
