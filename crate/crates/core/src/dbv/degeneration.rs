//! The degeneration property, its cohomological reformulations on Laurent windows, `E₁`
//! degeneration for bigraded instances, and the checkable consequences of homotopy abelianity.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::artinian::ArtinianAlgebra;
use crate::complex::{induced_map_on_cohomology, Complex};
use crate::dgla::bracket_on_cohomology;
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::mc::{mc_lift, Tensor};
use crate::scalar::{self, Scalar};

use super::{derived_dgla, DbvAlgebra, LaurentWindow};

/// `a₀` closed and `a₁, a₂, …` with `Δ a_i = d a_{i+1}` (trailing zeros dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub start: Elem,
    pub sequence: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneration {
    /// One chain per basis vector of `ker d`.
    Degenerate { chains: Vec<Chain> },
    /// No chain starts at `a0`; the equations `Δ a_i = d a_{i+1}` for `i ≤ step` are already
    /// inconsistent.
    Fails { a0: Elem, step: usize },
}

impl Degeneration {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Degeneration::Degenerate { .. })
    }
}

fn tdeg(b: &DbvAlgebra) -> Result<i32> {
    let t = b.k() + 1;
    if t == 0 {
        return Err(Error::invalid("k = −1 gives t degree 0 and unbounded chains"));
    }
    Ok(t)
}

/// `⌈amplitude / |k+1|⌉ + 1`.
pub fn steps_bound(b: &DbvAlgebra) -> Result<usize> {
    let t = tdeg(b)?.unsigned_abs() as usize;
    let amp = b.amplitude().map_or(0, |(lo, hi)| (hi - lo) as usize);
    Ok(amp.div_ceil(t) + 1)
}

/// Stacked system for `a_1..a_m` given `a_0` in degree `n`, keeping equations `0..=last`.
fn chain_system(b: &DbvAlgebra, n: i32, m: usize, last: usize) -> (Matrix, Vec<usize>, Vec<i32>) {
    let t = b.k() + 1;
    let unknown: Vec<i32> = (1..=m as i32).map(|i| n - i * t).collect();
    let eqdeg: Vec<i32> = (0..=last as i32).map(|i| n - i * t - b.k()).collect();
    let cols: Vec<usize> = unknown.iter().map(|&u| b.space().dim(u)).collect();
    let rows: Vec<usize> = eqdeg.iter().map(|&e| b.space().dim(e)).collect();
    let mut offs_c = vec![0];
    for c in &cols {
        offs_c.push(offs_c.last().unwrap() + c);
    }
    let mut offs_r = vec![0];
    for r in &rows {
        offs_r.push(offs_r.last().unwrap() + r);
    }
    let mut mat = Matrix::zeros(*offs_r.last().unwrap(), *offs_c.last().unwrap());
    for i in 0..=last {
        if i < m {
            mat.set_block(offs_r[i], offs_c[i], &b.complex().d_block(unknown[i]));
        }
        if i >= 1 {
            mat.set_block(offs_r[i], offs_c[i - 1], &b.delta().block(unknown[i - 1]).neg());
        }
    }
    (mat, offs_c, unknown)
}

/// Exact check of the degeneration property on a basis of `ker d`. `max_steps` defaults to
/// [`steps_bound`] and may not be smaller.
pub fn degeneration_check(b: &DbvAlgebra, max_steps: Option<usize>) -> Result<Degeneration> {
    let bound = steps_bound(b)?;
    let m = max_steps.unwrap_or(bound);
    if m < bound {
        return Err(Error::invalid(format!("max steps {m} is below the amplitude bound {bound}")));
    }
    let mut chains = Vec::new();
    for n in b.space().support() {
        let ker = b.complex().d_block(n).kernel();
        for c in 0..ker.cols() {
            let a0 = Elem::new(n, ker.column(c));
            let rhs_top = b.apply_delta(&a0).coords;
            let solve = |last: usize| {
                let (mat, offs, unknown) = chain_system(b, n, m, last);
                let mut rhs = vec![Scalar::zero(); mat.rows()];
                rhs[..rhs_top.len()].clone_from_slice(&rhs_top);
                mat.solve(&rhs).map(|x| (x, offs, unknown))
            };
            match solve(m) {
                Some((x, offs, unknown)) => {
                    let mut sequence: Vec<Elem> = unknown
                        .iter()
                        .enumerate()
                        .map(|(i, &u)| Elem::new(u, x[offs[i]..offs[i + 1]].to_vec()))
                        .collect();
                    while sequence.last().is_some_and(Elem::is_zero) {
                        sequence.pop();
                    }
                    chains.push(Chain { start: a0, sequence });
                }
                None => {
                    let step = (0..=m).find(|&s| solve(s).is_none()).unwrap_or(m);
                    return Ok(Degeneration::Fails { a0, step });
                }
            }
        }
    }
    Ok(Degeneration::Degenerate { chains })
}

fn check_range(b: &DbvAlgebra) -> Result<(i32, i32)> {
    let t = tdeg(b)?.abs();
    let (lo, hi) = b.amplitude().unwrap_or((0, 0));
    Ok((lo - 2 * t - 1, hi + 2 * t + 1))
}

fn rank_in(f: &GradedMap, n: i32) -> usize {
    f.block_ref(n).map_or(0, Matrix::rank)
}

/// `(A[[t]], d − tΔ) → (A, d)`, `t ↦ 0`, is surjective in cohomology.
pub fn surjective_in_cohomology(b: &DbvAlgebra) -> Result<bool> {
    let (lo, hi) = b.amplitude().unwrap_or((0, 0));
    let w = LaurentWindow::covering(b, lo, hi, Some(0))?;
    let ev = w.evaluation_at_zero()?;
    let h = induced_map_on_cohomology(&ev, w.complex(), b.complex())?;
    Ok((lo..=hi).all(|n| rank_in(&h, n) == h.target().dim(n)))
}

fn injective_between(big: &LaurentWindow, small: &LaurentWindow, lo: i32, hi: i32) -> Result<bool> {
    let inc = big.inclusion_from(small)?;
    let h = induced_map_on_cohomology(&inc, small.complex(), big.complex())?;
    Ok((lo..=hi).all(|n| rank_in(&h, n) == h.source().dim(n)))
}

/// `t F⁰ → F⁰` and `F⁰ → A((t))` on cohomology, in the degrees around the amplitude of `A`.
fn filtration_injectivity(b: &DbvAlgebra) -> Result<(bool, bool)> {
    let (lo, hi) = check_range(b)?;
    let full = LaurentWindow::covering(b, lo, hi, None)?;
    let f0 = LaurentWindow::new(b, 0, full.pmax())?;
    let f1 = LaurentWindow::new(b, 1, full.pmax())?;
    Ok((injective_between(&f0, &f1, lo, hi)?, injective_between(&full, &f0, lo, hi)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Report {
    /// `Σ_p dim H^n(column p, d)` per total degree `n = j − i`.
    pub columns: BTreeMap<i32, usize>,
    /// `dim H^n(Tot, d − Δ)`.
    pub tot: BTreeMap<i32, usize>,
    pub degenerates: bool,
}

fn not_bigraded(detail: impl Into<String>) -> Error {
    Error::NotBigraded { detail: detail.into() }
}

/// Bigrading validation: `deg = −i − kj`, `d: (i, j) → (i−1, j)`, `Δ: (i, j) → (i, j+1)`, and
/// the product is additive.
fn validate_bigrading(b: &DbvAlgebra) -> Result<BTreeMap<(i32, usize), (i32, i32)>> {
    let bg = b.bigrading().ok_or_else(|| not_bigraded("no bigrading given"))?;
    let mut bideg = BTreeMap::new();
    for (n, i) in b.space().basis() {
        let (p, q) = bg[&n][i];
        if p < 0 || q < 0 || n != -p - b.k() * q {
            return Err(not_bigraded(format!("basis {:?} has bidegree ({p}, {q})", (n, i))));
        }
        bideg.insert((n, i), (p, q));
    }
    let check_map = |f: &GradedMap, shift: (i32, i32), name: &str| -> Result<()> {
        for (&n, m) in f.blocks() {
            for (row, col, _) in m.triplets() {
                let (p, q) = bideg[&(n, col)];
                if bideg[&(n + f.degree(), row)] != (p + shift.0, q + shift.1) {
                    return Err(not_bigraded(format!("{name} does not have the bidegree {shift:?} on {:?}", (n, col))));
                }
            }
        }
        Ok(())
    };
    check_map(b.complex().d(), (-1, 0), "d")?;
    check_map(b.delta(), (0, 1), "Δ")?;
    for e in b.product().entries() {
        let (p1, q1) = bideg[&(e.p, e.i)];
        let (p2, q2) = bideg[&(e.q, e.j)];
        if bideg[&(e.p + e.q, e.k)] != (p1 + p2, q1 + q2) {
            return Err(not_bigraded(format!("product {:?}·{:?} is not bihomogeneous", (e.p, e.i), (e.q, e.j))));
        }
    }
    Ok(bideg)
}

/// Regrades `A` by `n = j − i` on the basis elements selected by `keep`, with the differential
/// `f` (a sum of bihomogeneous operators).
fn regraded(
    b: &DbvAlgebra,
    bideg: &BTreeMap<(i32, usize), (i32, i32)>,
    keep: &dyn Fn((i32, i32)) -> bool,
    ops: &[(&GradedMap, Scalar)],
) -> Result<Complex> {
    let mut index: BTreeMap<i32, Vec<(i32, usize)>> = BTreeMap::new();
    for (&(n, i), &(p, q)) in bideg {
        if keep((p, q)) {
            index.entry(q - p).or_default().push((n, i));
        }
    }
    let pos: BTreeMap<(i32, usize), (i32, usize)> = index
        .iter()
        .flat_map(|(&m, l)| l.iter().enumerate().map(move |(r, &key)| (key, (m, r))))
        .collect();
    let space = GradedSpace::new(index.iter().map(|(&m, l)| (m, l.len())));
    let d = GradedMap::from_fn(&space, &space, 1, |m| {
        let mut mat = Matrix::zeros(space.dim(m + 1), space.dim(m));
        for (col, &(n, i)) in index.get(&m).map(Vec::as_slice).unwrap_or(&[]).iter().enumerate() {
            for (f, c) in ops {
                let img = f.apply(&Elem::basis(b.space(), n, i));
                for (r, v) in img.coords.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    if let Some(&(m2, row)) = pos.get(&(img.degree, r)) {
                        if m2 == m + 1 {
                            mat.add_at(row, col, &(v * c));
                        }
                    }
                }
            }
        }
        mat
    })?;
    Complex::new(d)
}

/// `E₁` degeneration of the spectral sequence of `F_p = ⊕_{j ≥ p} A^{i,j}`, as a dimension
/// identity.
pub fn e1_check(b: &DbvAlgebra) -> Result<E1Report> {
    let bideg = validate_bigrading(b)?;
    let js: std::collections::BTreeSet<i32> = bideg.values().map(|&(_, q)| q).collect();
    let mut columns: BTreeMap<i32, usize> = BTreeMap::new();
    let d_only = [(b.complex().d(), scalar::one())];
    for &j in &js {
        let col = regraded(b, &bideg, &|(_, q)| q == j, &d_only)?;
        for (n, h) in col.betti() {
            *columns.entry(n).or_insert(0) += h;
        }
    }
    let tot = regraded(
        b,
        &bideg,
        &|_| true,
        &[(b.complex().d(), scalar::one()), (b.delta(), scalar::int(-1))],
    )?;
    let tot: BTreeMap<i32, usize> = tot.betti().into_iter().filter(|&(_, h)| h > 0).collect();
    columns.retain(|_, h| *h > 0);
    let degenerates = columns == tot;
    Ok(E1Report {
        columns,
        tot,
        degenerates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedLift {
    /// Coordinates of the seed class in the basis of `H¹(𝔤)`.
    pub class: Vec<Scalar>,
    /// Order reached (equal to the requested order when unobstructed).
    pub order: usize,
    pub unobstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceChecks {
    pub bracket_zero: bool,
    pub lifts: Vec<SeedLift>,
    /// `F⁰ → A((t))` injective on cohomology.
    pub f0_into_laurent_injective: bool,
}

impl ConsequenceChecks {
    pub fn passes(&self) -> bool {
        self.bracket_zero && self.lifts.iter().all(|l| l.unobstructed) && self.f0_into_laurent_injective
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceReport {
    pub degeneration: Degeneration,
    /// The equivalent formulations: `t ↦ 0` surjective and `t F⁰ → F⁰` injective on cohomology.
    pub surjective_in_cohomology: bool,
    pub t_f0_injective: bool,
    /// `None` when the degeneration property fails.
    pub checks: Option<ConsequenceChecks>,
    pub skipped: Option<String>,
}

impl ConsequenceReport {
    pub fn formulations_agree(&self) -> bool {
        let d = self.degeneration.is_degenerate();
        d == self.surjective_in_cohomology && d == self.t_f0_injective
    }

    pub fn passes(&self) -> bool {
        self.formulations_agree() && self.checks.as_ref().map_or(true, ConsequenceChecks::passes)
    }
}

/// Seeds: each basis class of `H¹(𝔤)` and, when there are several, their sum.
fn seed_classes(h1: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = (0..h1).map(|i| crate::matrix::unit(h1, i)).collect();
    if h1 > 1 {
        out.push(vec![scalar::one(); h1]);
    }
    out
}

/// The consequences of homotopy abelianity that the degeneration property should force, with
/// lifts over `Q[s]/s^{order+1}`.
pub fn dbv_theorem_consequences(b: &DbvAlgebra, order: usize) -> Result<ConsequenceReport> {
    let g = derived_dgla(b)?;
    let degeneration = degeneration_check(b, None)?;
    let surjective = surjective_in_cohomology(b)?;
    let (t_f0_injective, f0_injective) = filtration_injectivity(b)?;
    if let Degeneration::Fails { a0, step } = &degeneration {
        return Ok(ConsequenceReport {
            skipped: Some(format!(
                "degeneration fails at step {step} starting from a0 = {}",
                b.space().describe(a0)
            )),
            degeneration,
            surjective_in_cohomology: surjective,
            t_f0_injective,
            checks: None,
        });
    }
    let bracket_zero = bracket_on_cohomology(&g)?.is_zero();
    let alg = ArtinianAlgebra::polynomial(order as u32 + 1);
    let s = alg.index_of("s").expect("generator s");
    let h = g.cohomology();
    let reps = h.reps(1, g.dim(1));
    let mut lifts = Vec::new();
    for class in seed_classes(h.dim(1)) {
        let v = Elem::new(1, reps.apply(&class));
        let seed = Tensor::simple(&g, &alg, &v, s);
        let out = mc_lift(&g, &alg, &seed)?;
        let reached = out.obstruction().map_or(order, |o| o.order - 1);
        lifts.push(SeedLift {
            class,
            order: reached,
            unobstructed: out.is_solution(),
        });
    }
    Ok(ConsequenceReport {
        degeneration,
        surjective_in_cohomology: surjective,
        t_f0_injective,
        checks: Some(ConsequenceChecks {
            bracket_zero,
            lifts,
            f0_into_laurent_injective: f0_injective,
        }),
        skipped: None,
    })
}

#[cfg(test)]
mod tests {
    use super::super::models::*;
    use super::*;

    #[test]
    fn zero_delta_degenerates() {
        let b = koszul_zero_delta(2);
        match degeneration_check(&b, None).unwrap() {
            Degeneration::Degenerate { chains } => {
                assert_eq!(chains.len(), 6);
                assert!(chains.iter().all(|c| c.sequence.is_empty()));
            }
            other => panic!("{other:?}"),
        }
        assert!(surjective_in_cohomology(&b).unwrap());
    }

    #[test]
    fn koszul_fails_at_the_first_step() {
        let b = koszul(2);
        match degeneration_check(&b, None).unwrap() {
            Degeneration::Fails { a0, step } => {
                assert_eq!(step, 0);
                assert_eq!(a0.degree, 1);
                assert!(!b.apply_delta(&a0).is_zero());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(b.apply_delta(&b.basis(1, 1)), b.basis(0, 1));
        assert!(!surjective_in_cohomology(&b).unwrap());
    }

    #[test]
    fn bigraded_instance() {
        let b = bigraded_e1();
        let e1 = e1_check(&b).unwrap();
        assert!(e1.degenerates, "{e1:?}");
        assert_eq!(e1.tot, [(0, 2)].into_iter().collect());
        let deg = degeneration_check(&b, None).unwrap();
        assert!(deg.is_degenerate());
        if let Degeneration::Degenerate { chains } = &deg {
            let w = chains.iter().find(|c| c.start == b.basis(0, 1)).expect("chain from w");
            assert_eq!(w.sequence, vec![b.basis(-2, 0)]);
        }
        assert!(surjective_in_cohomology(&b).unwrap());
    }

    #[test]
    fn e1_fails_with_zero_differential() {
        let b = bigraded_square_zero(&[(0, 1), (0, 0)], &[], &[(1, 0, scalar::one())]).unwrap();
        let e1 = e1_check(&b).unwrap();
        assert!(!e1.degenerates);
        let total_cols: usize = e1.columns.values().sum();
        let total_tot: usize = e1.tot.values().sum();
        assert_eq!(total_cols, total_tot + 2);
        assert!(!degeneration_check(&b, None).unwrap().is_degenerate());
    }

    #[test]
    fn e1_needs_bigrading() {
        assert!(matches!(e1_check(&koszul(1)), Err(Error::NotBigraded { .. })));
    }

    #[test]
    fn steps_bound_and_small_budget() {
        let b = bigraded_e1();
        assert_eq!(steps_bound(&b).unwrap(), 2);
        assert!(degeneration_check(&b, Some(1)).is_err());
        assert!(degeneration_check(&b, Some(5)).unwrap().is_degenerate());
    }

    /// Exhaustive search over square-zero extensions by three bihomogeneous generators with
    /// 0/1 operators: every valid instance with `d` and `Δ` of rank one and `E₁` degeneration
    /// has the degeneration property, and the shipped instance is among them.
    #[test]
    fn search_for_e1_instances() {
        let cells = [(0, 0), (1, 0), (0, 1), (1, 1)];
        let mut found = Vec::new();
        for a in cells {
            for b2 in cells {
                for c in cells {
                    let bd = [a, b2, c];
                    let dpairs: Vec<(usize, usize)> = (0..3)
                        .flat_map(|s| (0..3).map(move |t| (s, t)))
                        .filter(|&(s, t)| bd[t] == (bd[s].0 - 1, bd[s].1))
                        .collect();
                    let lpairs: Vec<(usize, usize)> = (0..3)
                        .flat_map(|s| (0..3).map(move |t| (s, t)))
                        .filter(|&(s, t)| bd[t] == (bd[s].0, bd[s].1 + 1))
                        .collect();
                    for &dp in &dpairs {
                        for &lp in &lpairs {
                            let one = scalar::one();
                            let Ok(inst) = bigraded_square_zero(&bd, &[(dp.0, dp.1, one.clone())], &[(lp.0, lp.1, one)]) else {
                                continue;
                            };
                            let r = super::super::check_dbv(&inst);
                            if !r.passes() || !r.anticommutes() {
                                continue;
                            }
                            if e1_check(&inst).unwrap().degenerates {
                                assert!(degeneration_check(&inst, None).unwrap().is_degenerate());
                                assert!(surjective_in_cohomology(&inst).unwrap());
                                found.push((bd, dp, lp));
                            }
                        }
                    }
                }
            }
        }
        assert!(found.contains(&([(1, 1), (0, 1), (0, 0)], (0, 1), (2, 1))));
    }

    #[test]
    fn consequences() {
        let r = dbv_theorem_consequences(&koszul_zero_delta(2), 3).unwrap();
        assert!(r.passes() && r.checks.is_some());
        let r = dbv_theorem_consequences(&koszul(2), 3).unwrap();
        assert!(r.checks.is_none() && r.formulations_agree());
        assert!(r.skipped.unwrap().contains("step 0"));
        let r = dbv_theorem_consequences(&bigraded_e1(), 3).unwrap();
        assert!(r.passes(), "{r:?}");
    }
}
