//! Local Artinian Q-algebras given by the multiplication table of their maximal ideal.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{self, Scalar};

/// `A = Q ⊕ m_A`, with a weighted basis of `m_A` such that the span of weight `≥ n` is `m_A^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianAlgebra {
    labels: Vec<String>,
    weights: Vec<usize>,
    /// `mult[(a, b)]` is the product of basis elements `a` and `b` of `m_A`.
    mult: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    order: usize,
}

impl ArtinianAlgebra {
    pub fn new(
        labels: Vec<String>,
        weights: Vec<usize>,
        mult: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    ) -> Result<Self> {
        let n = labels.len();
        if weights.len() != n {
            return Err(Error::invalid("one weight per basis element is required"));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::invalid("basis elements of the maximal ideal need weight ≥ 1"));
        }
        let mut clean = BTreeMap::new();
        for (&(a, b), v) in &mult {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("product ({a}, {b}) out of range")));
            }
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, c) in v {
                if *k >= n {
                    return Err(Error::invalid(format!("product ({a}, {b}) lands out of range")));
                }
                if weights[*k] < weights[a] + weights[b] && !c.is_zero() {
                    return Err(Error::invalid(format!(
                        "product ({a}, {b}) has a component of weight below {}",
                        weights[a] + weights[b]
                    )));
                }
                *acc.entry(*k).or_insert_with(Scalar::zero) += c;
            }
            let v: Vec<(usize, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !v.is_empty() {
                clean.insert((a, b), v);
            }
        }
        let order = weights.iter().max().map_or(1, |w| w + 1);
        let alg = ArtinianAlgebra {
            labels,
            weights,
            mult: clean,
            order,
        };
        alg.verify()?;
        Ok(alg)
    }

    fn verify(&self) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                if self.mul_basis(a, b) != self.mul_basis(b, a) {
                    return Err(Error::invalid(format!("multiplication not commutative on ({a}, {b})")));
                }
                for c in 0..n {
                    let left = self.mul(&self.mul_basis(a, b), &unit(n, c));
                    let right = self.mul(&unit(n, a), &self.mul_basis(b, c));
                    if left != right {
                        return Err(Error::invalid(format!("multiplication not associative on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        // weight ≥ k must equal m^k
        let mut power = Matrix::identity(n);
        for k in 1..=self.order {
            let span = self.weight_span(k);
            if power.rank() != span.rank() || !span.spans(&power) {
                return Err(Error::invalid(format!(
                    "weights do not match the m-adic filtration at power {k}"
                )));
            }
            let mut cols = Vec::new();
            for j in 0..power.cols() {
                for b in 0..n {
                    cols.push(self.mul(&power.column(j), &unit(n, b)));
                }
            }
            power = Matrix::from_cols(n, &cols).column_basis();
        }
        Ok(())
    }

    fn weight_span(&self, k: usize) -> Matrix {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.weights[i] >= k).collect();
        Matrix::identity(self.dim()).select_columns(&idx)
    }

    /// `Q[x_1..x_k] / (monomials)`; the ideal must contain every monomial of some degree.
    pub fn monomial(generators: &[&str], ideal: &[Vec<u32>]) -> Result<Self> {
        let k = generators.len();
        if ideal.iter().any(|m| m.len() != k) {
            return Err(Error::invalid("ideal monomials must have one exponent per generator"));
        }
        let in_ideal = |m: &[u32]| ideal.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b));
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut degree = 1;
        loop {
            let layer: Vec<Vec<u32>> = monomials_of_degree(k, degree)
                .into_iter()
                .filter(|m| !in_ideal(m))
                .collect();
            if layer.is_empty() {
                break;
            }
            if degree > 64 {
                return Err(Error::invalid("monomial ideal does not define an Artinian algebra"));
            }
            basis.extend(layer);
            degree += 1;
        }
        let index: BTreeMap<Vec<u32>, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mult = BTreeMap::new();
        for (a, ma) in basis.iter().enumerate() {
            for (b, mb) in basis.iter().enumerate() {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if let Some(&c) = index.get(&m) {
                    mult.insert((a, b), vec![(c, scalar::one())]);
                }
            }
        }
        let labels = basis.iter().map(|m| monomial_label(generators, m)).collect();
        let weights = basis.iter().map(|m| m.iter().sum::<u32>() as usize).collect();
        Self::new(labels, weights, mult)
    }

    /// `Q[x_1..x_k] / (x_1..x_k)^n`.
    pub fn truncated(generators: &[&str], n: u32) -> Result<Self> {
        let ideal = monomials_of_degree(generators.len(), n);
        Self::monomial(generators, &ideal)
    }

    /// `Q[s] / s^n`.
    pub fn polynomial(n: u32) -> Self {
        Self::truncated(&["s"], n).expect("Q[s]/s^n")
    }

    pub fn dual_numbers() -> Self {
        Self::truncated(&["e"], 2).expect("dual numbers")
    }

    /// The residue field itself (`m_A = 0`).
    pub fn field() -> Self {
        Self::new(Vec::new(), Vec::new(), BTreeMap::new()).expect("field")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn weight(&self, a: usize) -> usize {
        self.weights[a]
    }

    /// Smallest `N` with `m_A^N = 0`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Scalar)>> {
        &self.mult
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        if let Some(v) = self.mult.get(&(a, b)) {
            for (k, c) in v {
                out[*k] += c;
            }
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                if let Some(v) = self.mult.get(&(a, b)) {
                    let c0 = xa * yb;
                    for (k, c) in v {
                        out[*k] += &c0 * c;
                    }
                }
            }
        }
        out
    }

    /// Basis indices of weight exactly `n`.
    pub fn weight_layer(&self, n: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == n).collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    crate::matrix::unit(n, i)
}

pub fn monomials_of_degree(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(k - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomial_label(generators: &[&str], m: &[u32]) -> String {
    let parts: Vec<String> = generators
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect();
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial() {
        let a = ArtinianAlgebra::polynomial(3);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.order(), 3);
        assert_eq!(a.labels(), ["s", "s^2"]);
        assert_eq!(a.mul_basis(0, 0), vec![scalar::zero(), scalar::one()]);
        assert!(a.mul_basis(0, 1).iter().all(Zero::is_zero));
    }

    #[test]
    fn two_variables() {
        let a = ArtinianAlgebra::truncated(&["s", "u"], 3).unwrap();
        assert_eq!(a.dim(), 5);
        let su = a.index_of("s*u").unwrap();
        let s = a.index_of("s").unwrap();
        let u = a.index_of("u").unwrap();
        assert_eq!(a.mul_basis(s, u), crate::matrix::unit(5, su));
    }

    #[test]
    fn monomial_ideal() {
        // Q[s, u] / (s^2, u^2)
        let a = ArtinianAlgebra::monomial(&["s", "u"], &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(a.labels(), ["s", "u", "s*u"]);
        assert_eq!(a.order(), 3);
        assert!(ArtinianAlgebra::monomial(&["s", "u"], &[vec![2, 0]]).is_err());
    }

    #[test]
    fn bad_weights_rejected() {
        // s with s·s = t but t given weight 1
        let mult = BTreeMap::from([((0, 0), vec![(1, scalar::one())])]);
        assert!(ArtinianAlgebra::new(vec!["s".into(), "t".into()], vec![1, 1], mult).is_err());
    }

    #[test]
    fn field_is_trivial() {
        let k = ArtinianAlgebra::field();
        assert_eq!(k.dim(), 0);
        assert_eq!(k.order(), 1);
    }
}
