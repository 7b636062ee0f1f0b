//! Nonabelian first cohomology of a semicosimplicial Lie algebra over an Artinian base.

use crate::artinian::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mc::{bch, Tensor};
use crate::scalar::Scalar;

use super::Semicosimplicial;

fn check_degree_zero(sc: &Semicosimplicial) -> Result<()> {
    for (i, g) in sc.levels().iter().enumerate() {
        if g.space().support().iter().any(|&n| n != 0) {
            return Err(Error::LevelNotDegreeZero { level: i });
        }
    }
    Ok(())
}

/// `∂_{k,i}` applied to a tensor in `g_{i−1} ⊗ m_A`.
fn push(sc: &Semicosimplicial, k: usize, i: usize, x: &Tensor) -> Tensor {
    Tensor {
        degree: 0,
        coeffs: sc.coface(k, i).block(0).mul(&x.coeffs),
    }
}

fn neg(x: &Tensor) -> Tensor {
    x.scale(&-Scalar::from_integer(1.into()))
}

/// `log(e^{∂_0 x} e^{−∂_1 x} e^{∂_2 x})` in `g_2 ⊗ m_A`, or `None` below level 2.
pub fn cocycle_defect(sc: &Semicosimplicial, alg: &ArtinianAlgebra, x: &Tensor) -> Result<Option<Tensor>> {
    check_degree_zero(sc)?;
    if x.coeffs.shape() != (sc.level(1).dim(0), alg.dim()) {
        return Err(Error::Shape {
            degree: 0,
            detail: "x must lie in g_1 ⊗ m_A".into(),
        });
    }
    if sc.top() < 2 {
        return Ok(None);
    }
    let g2 = sc.level(2);
    let a = push(sc, 0, 2, x);
    let b = neg(&push(sc, 1, 2, x));
    let c = push(sc, 2, 2, x);
    Ok(Some(bch(g2, alg, &bch(g2, alg, &a, &b), &c)))
}

/// `e^{∂_0 x} e^{−∂_1 x} e^{∂_2 x} = 1`.
pub fn h1sc_check(sc: &Semicosimplicial, alg: &ArtinianAlgebra, x: &Tensor) -> Result<bool> {
    Ok(cocycle_defect(sc, alg, x)?.is_none_or(|t| t.is_zero()))
}

/// `log(e^{−∂_1 a} e^x e^{∂_0 a})`.
pub fn h1sc_act(sc: &Semicosimplicial, alg: &ArtinianAlgebra, a: &Tensor, x: &Tensor) -> Result<Tensor> {
    check_degree_zero(sc)?;
    if sc.top() < 1 {
        return Err(Error::invalid("equivalence needs level 1"));
    }
    let g1 = sc.level(1);
    let l = neg(&push(sc, 1, 1, a));
    let r = push(sc, 0, 1, a);
    Ok(bch(g1, alg, &bch(g1, alg, &l, x), &r))
}

/// `e^{−∂_1 a} e^x e^{∂_0 a} = e^y`.
pub fn h1sc_equiv(
    sc: &Semicosimplicial,
    alg: &ArtinianAlgebra,
    x: &Tensor,
    y: &Tensor,
    a: &Tensor,
) -> Result<bool> {
    Ok(h1sc_act(sc, alg, a, x)? == *y)
}

/// `dim H¹(Tot)`.
pub fn h1sc_tangent(sc: &Semicosimplicial) -> Result<usize> {
    check_degree_zero(sc)?;
    Ok(sc.tot().complex.cohomology().dim(1))
}

/// The same dimension computed from the cocycle condition and the equivalence over `ℚ[ε]/ε²`.
pub fn h1sc_tangent_first_order(sc: &Semicosimplicial) -> Result<usize> {
    check_degree_zero(sc)?;
    if sc.top() < 1 {
        return Ok(0);
    }
    let eps = ArtinianAlgebra::dual_numbers();
    let n1 = sc.level(1).dim(0);
    let n0 = sc.level(0).dim(0);
    let unit = |dim: usize, i: usize| {
        let mut t = Matrix::zeros(dim, 1);
        t.set(i, 0, Scalar::from_integer(1.into()));
        Tensor { degree: 0, coeffs: t }
    };
    let rows = if sc.top() >= 2 { sc.level(2).dim(0) } else { 0 };
    let mut cond = Vec::new();
    for i in 0..n1 {
        let defect = cocycle_defect(sc, &eps, &unit(n1, i))?;
        cond.push(defect.map(|t| t.coeffs.column(0)).unwrap_or_default());
    }
    let cocycles = Matrix::from_cols(rows, &cond).kernel();
    let zero = Tensor {
        degree: 0,
        coeffs: Matrix::zeros(n1, 1),
    };
    let mut orbit = Vec::new();
    for i in 0..n0 {
        orbit.push(h1sc_act(sc, &eps, &unit(n0, i), &zero)?.coeffs.column(0));
    }
    let orbit = Matrix::from_cols(n1, &orbit);
    Ok(cocycles.cols() - orbit.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::models::{abelian, nilpotent_witness, sl2};
    use crate::dgla::Dgla;
    use crate::graded::GradedMap;
    use crate::scalar::int;
    use crate::simplicial::{cech_to_semicosimplicial, CechInput};

    fn two_level_surjective() -> Semicosimplicial {
        let g0 = abelian(&[(0, 2)]);
        let g1 = abelian(&[(0, 1)]);
        let p = |r: &[i64]| {
            GradedMap::new(
                g0.space().clone(),
                g1.space().clone(),
                0,
                [(0, Matrix::from_i64(&[r]))].into(),
            )
            .unwrap()
        };
        Semicosimplicial::new(vec![g0.clone(), g1.clone()], vec![vec![p(&[1, 0]), p(&[0, 1])]]).unwrap()
    }

    #[test]
    fn two_open_cover_has_no_tangent() {
        let sc = two_level_surjective();
        assert_eq!(h1sc_tangent(&sc).unwrap(), 0);
        assert_eq!(h1sc_tangent_first_order(&sc).unwrap(), 0);
    }

    #[test]
    fn zero_is_a_cocycle() {
        let sc = cech_to_semicosimplicial(&CechInput::uniform(3, &sl2(), None)).unwrap();
        let a = ArtinianAlgebra::polynomial(3);
        let x = Tensor {
            degree: 0,
            coeffs: Matrix::zeros(sc.level(1).dim(0), a.dim()),
        };
        assert!(h1sc_check(&sc, &a, &x).unwrap());
    }

    #[test]
    fn nonabelian_three_opens() {
        let sc = cech_to_semicosimplicial(&CechInput::uniform(3, &sl2(), None)).unwrap();
        assert_eq!(h1sc_tangent(&sc).unwrap(), h1sc_tangent_first_order(&sc).unwrap());
        let a = ArtinianAlgebra::polynomial(3);
        let g1 = sc.level(1).dim(0);
        // x_ij = a_j − a_i style coboundary with a constant section: the gauge of zero
        let mut coeffs = Matrix::zeros(sc.level(0).dim(0), a.dim());
        coeffs.set(0, 0, int(1));
        coeffs.set(4, 0, int(1));
        coeffs.set(8, 1, int(2));
        let alpha = Tensor { degree: 0, coeffs };
        let zero = Tensor {
            degree: 0,
            coeffs: Matrix::zeros(g1, a.dim()),
        };
        let x = h1sc_act(&sc, &a, &alpha, &zero).unwrap();
        assert!(!x.is_zero());
        assert!(h1sc_check(&sc, &a, &x).unwrap());
        assert!(h1sc_equiv(&sc, &a, &zero, &x, &alpha).unwrap());
        let mut bad = x.clone();
        bad.coeffs.add_at(0, 0, &int(1));
        assert!(!h1sc_check(&sc, &a, &bad).unwrap());
    }

    #[test]
    fn rejects_graded_levels() {
        let l: Dgla = nilpotent_witness();
        let sc = Semicosimplicial::constant(l);
        assert!(matches!(h1sc_tangent(&sc), Err(Error::LevelNotDegreeZero { level: 0 })));
    }
}
