use crate::complex::{induced_map_on_cohomology, is_injective_on_cohomology};
use crate::error::Result;
use crate::graded::GradedMap;
use crate::scalar::Scalar;

use super::{bracket_on_cohomology, Dgla, HomotopyFibre};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedAbelianViaCriterion { reason: String },
    NecessaryConditionFailed {
        a: (i32, usize),
        b: (i32, usize),
        bracket: Vec<Scalar>,
    },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::CertifiedAbelianViaCriterion { .. } => "CertifiedAbelianViaCriterion",
            Verdict::NecessaryConditionFailed { .. } => "NecessaryConditionFailed",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::CertifiedAbelianViaCriterion { .. })
    }
}

/// Linear part of an L∞ morphism from `L` into the homotopy fibre of an injective `χ`.
#[derive(Clone, Debug)]
pub struct AbelianWitness {
    pub fibre: HomotopyFibre,
    pub map: GradedMap,
}

pub fn homotopy_abelian_verdict(l: &Dgla, witness: Option<&AbelianWitness>) -> Result<Verdict> {
    let hb = bracket_on_cohomology(l)?;
    if let Some((a, b, bracket)) = hb.witness() {
        return Ok(Verdict::NecessaryConditionFailed { a, b, bracket });
    }
    let failure = match witness {
        Some(w) => match check_witness(l, w)? {
            None => {
                return Ok(Verdict::CertifiedAbelianViaCriterion {
                    reason: "injective on cohomology into the fibre of a cohomology-injective morphism"
                        .into(),
                })
            }
            Some(reason) => reason,
        },
        None => "cohomology bracket vanishes but no witness was supplied".into(),
    };
    if l.is_abelian() {
        return Ok(Verdict::CertifiedAbelianViaCriterion {
            reason: "zero bracket (identity witness)".into(),
        });
    }
    Ok(Verdict::Inconclusive { reason: failure })
}

/// `None` if the witness is valid, otherwise the reason it is not.
fn check_witness(l: &Dgla, w: &AbelianWitness) -> Result<Option<String>> {
    let f = &w.fibre;
    if !is_injective_on_cohomology(&f.chi, f.l.complex(), f.m.complex())? {
        return Ok(Some("χ is not injective on cohomology".into()));
    }
    let h = match induced_map_on_cohomology(&w.map, l.complex(), &f.complex) {
        Ok(h) => h,
        Err(e) => return Ok(Some(format!("witness is not a chain map: {e}"))),
    };
    if !h.is_injective() {
        return Ok(Some("witness is not injective on cohomology".into()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::models::*;

    #[test]
    fn verdicts() {
        assert!(homotopy_abelian_verdict(&abelian(&[(1, 2)]), None).unwrap().is_certified());
        let v = homotopy_abelian_verdict(&nilpotent_witness(), None).unwrap();
        assert_eq!(v.name(), "NecessaryConditionFailed");
        let v = homotopy_abelian_verdict(&sl2(), None).unwrap();
        assert_eq!(v.name(), "NecessaryConditionFailed");
    }
}
