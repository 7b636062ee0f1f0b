//! The shipped example instances, built from the models so the JSON files can be regenerated.

use std::collections::BTreeMap;

use crate::cartan::models::{
    abelian_calculus, affine_model, affine_model_with_sign_error, log_model, nilpotent_calculus, FilteredCalculus,
};
use crate::complex::Complex;
use crate::dbv::models::{bigraded_e1, koszul, koszul_zero_delta};
use crate::dbv::DbvAlgebra;
use crate::dgla::models::{abelian, nilpotent_witness, sl2};
use crate::dgla::Dgla;
use crate::graded::{GradedMap, GradedSpace};
use crate::io::{self, *};
use crate::matrix::Matrix;

fn put_dgla(f: &mut InstanceFile, name: &str, l: &Dgla) {
    f.dglas.insert(name.into(), io::dgla_to_def(l));
}

fn put_dbv(f: &mut InstanceFile, name: &str, b: &DbvAlgebra) {
    f.dbv.insert(name.into(), io::dbv_to_def(b));
}

fn put_calculus(f: &mut InstanceFile, name: &str, c: &FilteredCalculus) {
    let lie = format!("{name}_lie");
    let module = format!("{name}_module");
    put_dgla(f, &lie, &c.calculus.lie);
    f.complexes.insert(module.clone(), io::complex_to_def(&c.calculus.module));
    f.calculi.insert(
        name.into(),
        CalculusDef {
            lie,
            module,
            ops: io::calculus_ops_to_def(&c.calculus),
            filtration: Some(io::filtration_to_def(&c.filtration)),
        },
    );
}

fn scenario<'a>(f: &'a mut InstanceFile, name: &str, command: &str, target: &str) -> &'a mut ScenarioDef {
    f.scenarios.entry(name.into()).or_insert(ScenarioDef {
        command: command.into(),
        target: target.into(),
        ..Default::default()
    })
}

fn term(v: &[&str], basis: &str) -> TermDef {
    TermDef {
        vector: v.iter().map(|s| s.to_string()).collect(),
        basis: basis.into(),
    }
}

fn tensor(degree: i32, terms: Vec<TermDef>) -> TensorDef {
    TensorDef { degree, terms }
}

fn matrix(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(rows)
}

/// The complex `Q² → Q² → Q` with `d⁰ = diag(1, 0)` and `d¹ = (0 1)`: `H = (1, 0, 0)`.
pub fn three_term() -> Complex {
    let space = GradedSpace::new([(0, 2), (1, 2), (2, 1)]);
    let blocks = BTreeMap::from([(0, matrix(&[&[1, 0], &[0, 0]])), (1, matrix(&[&[0, 1]]))]);
    Complex::from_blocks(space, blocks).expect("three-term complex")
}

pub fn three_term_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    f.complexes.insert("three_term".into(), io::complex_to_def(&three_term()));
    scenario(&mut f, "cohomology", "cohomology", "three_term");
    f
}

pub fn abelian_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    put_dgla(&mut f, "abelian", &abelian(&[(0, 1), (1, 2), (2, 1)]));
    let space = GradedSpace::new([(0, 1), (1, 1)]);
    let cone = Complex::from_blocks(space, BTreeMap::from([(0, Matrix::identity(1))])).expect("cone");
    put_dgla(&mut f, "abelian_cone", &Dgla::abelian(cone));
    put_calculus(&mut f, "abelian_calculus", &abelian_calculus());
    f.artinian.insert(
        "dual".into(),
        ArtinianDef {
            truncated: Some((vec!["e".into()], 2)),
            ..Default::default()
        },
    );
    scenario(&mut f, "check", "check-dgla", "abelian");
    let s = scenario(&mut f, "tangent", "mc-lift", "abelian");
    s.artinian = Some("dual".into());
    let s = scenario(&mut f, "gauge", "gauge", "abelian_cone");
    s.artinian = Some("dual".into());
    s.a = Some(tensor(0, vec![term(&["1"], "e")]));
    s.x = Some(tensor(1, vec![]));
    s.y = Some(tensor(1, vec![term(&["-1"], "e")]));
    scenario(&mut f, "criterion", "criterion", "abelian_calculus");
    f
}

pub fn sl2_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    let l = sl2();
    let h = abelian(&[(0, 1)]);
    put_dgla(&mut f, "sl2", &l);
    put_dgla(&mut f, "cartan_line", &h);
    let incl = GradedMap::new(h.space().clone(), l.space().clone(), 0, BTreeMap::from([(0, matrix(&[&[0], &[0], &[1]]))]))
        .expect("h ↪ sl2");
    f.morphisms.insert(
        "h_inclusion".into(),
        MorphismDef {
            source: "cartan_line".into(),
            target: "sl2".into(),
            map: io::map_to_def(&incl),
        },
    );
    scenario(&mut f, "check", "check-dgla", "sl2");
    scenario(&mut f, "cohomology", "cohomology", "sl2");
    let s = scenario(&mut f, "fibre", "fibre", "h_inclusion");
    s.poly_bound = Some(2);
    f
}

pub fn nilpotent_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    put_dgla(&mut f, "nilpotent", &nilpotent_witness());
    put_calculus(&mut f, "nilpotent_calculus", &nilpotent_calculus());
    f.artinian.insert(
        "s3".into(),
        ArtinianDef {
            truncated: Some((vec!["s".into()], 3)),
            ..Default::default()
        },
    );
    let s = scenario(&mut f, "obstructed", "obstruction", "nilpotent");
    s.artinian = Some("s3".into());
    s.seed = Some(tensor(1, vec![term(&["1", "1"], "s")]));
    let s = scenario(&mut f, "lifts", "mc-lift", "nilpotent");
    s.artinian = Some("s3".into());
    s.seed = Some(tensor(1, vec![term(&["1", "0"], "s")]));
    let s = scenario(&mut f, "semiregularity", "semiregularity", "nilpotent_calculus");
    s.artinian = Some("s3".into());
    s.seed = Some(tensor(1, vec![term(&["1", "1"], "s")]));
    f
}

pub fn cech_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    let q = abelian(&[(0, 1)]);
    put_dgla(&mut f, "q", &q);
    put_dgla(&mut f, "q2", &abelian(&[(0, 2)]));
    f.cech.insert(
        "two_open".into(),
        CechDef {
            opens: 2,
            uniform: Some("q".into()),
            ..Default::default()
        },
    );
    let id = io::map_to_def(&GradedMap::identity(q.space()));
    let zero = io::map_to_def(&GradedMap::zero(q.space(), q.space(), 0));
    f.cech.insert(
        "two_open_zero_restriction".into(),
        CechDef {
            opens: 2,
            uniform: None,
            sections: vec![(vec![0], "q".into()), (vec![1], "q".into()), (vec![0, 1], "q".into())],
            restrictions: vec![(vec![0, 1], 0, zero), (vec![0, 1], 1, id)],
            max_level: None,
        },
    );
    let face = |r: &[i64]| MapDef {
        degree: 0,
        blocks: BTreeMap::from([(0, io::matrix_to_def(&matrix(&[r])))]),
    };
    f.semicosimplicial.insert(
        "cover".into(),
        SemicosimplicialDef {
            levels: vec!["q2".into(), "q".into()],
            cofaces: vec![vec![face(&[1, 0]), face(&[0, 1])]],
        },
    );
    scenario(&mut f, "cech", "cech", "two_open");
    scenario(&mut f, "tot", "tot", "two_open");
    let s = scenario(&mut f, "tw", "tw", "two_open");
    s.poly_bound = Some(1);
    scenario(&mut f, "integrate", "integrate", "two_open");
    scenario(&mut f, "h1sc", "h1sc", "cover");
    f
}

pub fn log_model_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    put_calculus(&mut f, "log", &log_model(3));
    scenario(&mut f, "cartan", "cartan-check", "log");
    scenario(&mut f, "criterion", "criterion", "log");
    f
}

pub fn affine_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    put_calculus(&mut f, "affine", &affine_model(3));
    put_calculus(&mut f, "affine_sign_error", &affine_model_with_sign_error(3));
    scenario(&mut f, "cartan", "cartan-check", "affine");
    scenario(&mut f, "cartan_sign_error", "cartan-check", "affine_sign_error");
    f
}

pub fn koszul_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    put_dbv(&mut f, "koszul", &koszul(4));
    put_dbv(&mut f, "koszul_zero_delta", &koszul_zero_delta(4));
    scenario(&mut f, "check", "dbv-check", "koszul");
    scenario(&mut f, "bracket", "dbv-bracket", "koszul");
    scenario(&mut f, "fails", "degeneration", "koszul");
    scenario(&mut f, "degenerate", "degeneration", "koszul_zero_delta");
    let s = scenario(&mut f, "cartan", "cartan-check", "koszul");
    s.window = Some((-2, 3));
    scenario(&mut f, "consequences", "dbv-consequences", "koszul_zero_delta");
    f
}

pub fn bigraded_file() -> InstanceFile {
    let mut f = InstanceFile::new();
    put_dbv(&mut f, "bigraded_e1", &bigraded_e1());
    scenario(&mut f, "check", "dbv-check", "bigraded_e1");
    scenario(&mut f, "e1", "e1-check", "bigraded_e1");
    scenario(&mut f, "degeneration", "degeneration", "bigraded_e1");
    scenario(&mut f, "consequences", "dbv-consequences", "bigraded_e1");
    f
}

/// `(file name, instance)` for every shipped file.
pub fn shipped() -> Vec<(&'static str, InstanceFile)> {
    vec![
        ("abelian.json", abelian_file()),
        ("affine_p3.json", affine_file()),
        ("bigraded_e1.json", bigraded_file()),
        ("cech_two_open.json", cech_file()),
        ("koszul.json", koszul_file()),
        ("log_model_p3.json", log_model_file()),
        ("nilpotent.json", nilpotent_file()),
        ("sl2.json", sl2_file()),
        ("three_term.json", three_term_file()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_loads_and_round_trips() {
        for (name, f) in shipped() {
            let text = f.to_json();
            let back = InstanceFile::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back, f, "{name}");
            Instance::load(&back).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
