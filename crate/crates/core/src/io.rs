//! The `dgla-workbench/1` instance format: JSON with rationals as `"p/q"` strings.
//!
//! Every section is a map from names to definitions; definitions refer to each other by name.
//! Loading re-verifies the invariants of every object (DGLA axioms, morphism conditions,
//! cosimplicial identities, operator shapes).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::artinian::ArtinianAlgebra;
use crate::cartan::{CartanHomotopy, Filtration};
use crate::complex::{Complex, Subspace};
use crate::dbv::{Bigrading, DbvAlgebra};
use crate::dgla::{Dgla, DglaMorphism};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::mc::Tensor;
use crate::scalar::{self, Scalar};
use crate::simplicial::{cech_to_semicosimplicial, CechInput, Semicosimplicial};
use crate::table::{Entry, StructureTable};

pub const FORMAT: &str = "dgla-workbench/1";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDef {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Vec<Vec<String>>>,
    /// `(row, col, value)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<(usize, usize, String)>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDef {
    pub dims: BTreeMap<i32, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<i32, Vec<String>>,
    /// `d: C^n → C^{n+1}` keyed by `n`; missing blocks are zero.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub d: BTreeMap<i32, MatrixDef>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    pub degree: i32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub blocks: BTreeMap<i32, MatrixDef>,
}

/// `(p, i, q, j, k, c)`: `op(e_i^p, e_j^q)` has coefficient `c` on `e_k^{p+q}`.
pub type TableDef = Vec<(i32, usize, i32, usize, usize, String)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DglaDef {
    pub complex: ComplexDef,
    #[serde(default)]
    pub bracket: TableDef,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDef {
    pub source: String,
    pub target: String,
    pub map: MapDef,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtinianDef {
    /// `Q[generators]/(generators)^order` when given; the explicit fields are then ignored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated: Option<(Vec<String>, u32)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<usize>,
    /// `(a, b, c, coefficient)` for `m_a m_b`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mult: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemicosimplicialDef {
    /// Names of DGLAs.
    pub levels: Vec<String>,
    /// `cofaces[i − 1][k] = ∂_{k,i}`.
    #[serde(default)]
    pub cofaces: Vec<Vec<MapDef>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechDef {
    pub opens: usize,
    /// Same DGLA on every chain with identity restrictions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniform: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<(Vec<usize>, String)>,
    /// `(chain, dropped position, map)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restrictions: Vec<(Vec<usize>, usize, MapDef)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_level: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationDef {
    pub top: BTreeMap<i32, MatrixDef>,
    pub next: BTreeMap<i32, MatrixDef>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalculusDef {
    pub lie: String,
    pub module: String,
    /// `(p, i, n, col, row, c)`: `i_{e_i^p}` sends basis `col` of `V^n` to `c` times basis `row`
    /// of `V^{n+p−1}`.
    #[serde(default)]
    pub ops: Vec<(i32, usize, i32, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationDef>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DbvDef {
    pub complex: ComplexDef,
    #[serde(default)]
    pub product: TableDef,
    pub unit: Vec<String>,
    pub delta: MapDef,
    pub k: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bigrading: Option<Bigrading>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDef {
    pub vector: Vec<String>,
    /// Label of a basis element of `m_A`.
    pub basis: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDef {
    pub degree: i32,
    pub terms: Vec<TermDef>,
}

/// Binds a subcommand to its target and arguments.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDef {
    pub command: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub artinian: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<TensorDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<TensorDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<TensorDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<TensorDef>,
    /// A homogeneous element `(degree, coordinates)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<(i32, Vec<String>)>,
    /// A calculus used together with an obstruction computed on its Lie algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calculus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i32, i32)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dglas: BTreeMap<String, DglaDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub artinian: BTreeMap<String, ArtinianDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub semicosimplicial: BTreeMap<String, SemicosimplicialDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cech: BTreeMap<String, CechDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub calculi: BTreeMap<String, CalculusDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dbv: BTreeMap<String, DbvDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub scenarios: BTreeMap<String, ScenarioDef>,
}

impl InstanceFile {
    pub fn new() -> Self {
        InstanceFile {
            format: FORMAT.into(),
            ..Default::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.format != FORMAT {
            return Err(Error::Parse(format!("unsupported format {:?} (expected {FORMAT:?})", f.format)));
        }
        Ok(f)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

// ---- scalars, matrices, maps ----

fn scalars(v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| scalar::parse(s)).collect()
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(scalar::format).collect()
}

pub fn matrix_from_def(m: &MatrixDef) -> Result<Matrix> {
    match (&m.data, &m.entries) {
        (Some(_), Some(_)) => Err(Error::Parse("a matrix takes either data or entries".into())),
        (Some(rows), None) => {
            if rows.len() != m.rows || rows.iter().any(|r| r.len() != m.cols) {
                return Err(Error::Parse(format!("matrix data is not {}×{}", m.rows, m.cols)));
            }
            let rows = rows.iter().map(|r| scalars(r)).collect::<Result<Vec<_>>>()?;
            let mut out = Matrix::zeros(m.rows, m.cols);
            for (i, r) in rows.into_iter().enumerate() {
                for (j, v) in r.into_iter().enumerate() {
                    out.set(i, j, v);
                }
            }
            Ok(out)
        }
        (None, entries) => {
            let mut out = Matrix::zeros(m.rows, m.cols);
            for (i, j, v) in entries.iter().flatten() {
                if *i >= m.rows || *j >= m.cols {
                    return Err(Error::Parse(format!("matrix entry ({i}, {j}) out of range")));
                }
                out.add_at(*i, *j, &scalar::parse(v)?);
            }
            Ok(out)
        }
    }
}

/// Dense rows unless fewer than half the entries are nonzero.
pub fn matrix_to_def(m: &Matrix) -> MatrixDef {
    let (rows, cols) = m.shape();
    if 2 * m.nnz() < rows * cols {
        MatrixDef {
            rows,
            cols,
            data: None,
            entries: Some(m.triplets().into_iter().map(|(i, j, c)| (i, j, scalar::format(&c))).collect()),
        }
    } else {
        MatrixDef {
            rows,
            cols,
            data: Some((0..rows).map(|i| strings(m.row(i))).collect()),
            entries: None,
        }
    }
}

fn blocks_from_def(defs: &BTreeMap<i32, MatrixDef>) -> Result<BTreeMap<i32, Matrix>> {
    defs.iter().map(|(&n, m)| Ok((n, matrix_from_def(m)?))).collect()
}

fn blocks_to_def(blocks: &BTreeMap<i32, Matrix>) -> BTreeMap<i32, MatrixDef> {
    blocks
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(&n, m)| (n, matrix_to_def(m)))
        .collect()
}

pub fn map_from_def(def: &MapDef, source: &GradedSpace, target: &GradedSpace) -> Result<GradedMap> {
    GradedMap::new(source.clone(), target.clone(), def.degree, blocks_from_def(&def.blocks)?)
}

pub fn map_to_def(f: &GradedMap) -> MapDef {
    MapDef {
        degree: f.degree(),
        blocks: blocks_to_def(f.blocks()),
    }
}

fn space_from(dims: &BTreeMap<i32, usize>, labels: &BTreeMap<i32, Vec<String>>) -> Result<GradedSpace> {
    let space = GradedSpace::new(dims.iter().map(|(&n, &d)| (n, d)));
    if labels.is_empty() {
        Ok(space)
    } else {
        space.with_labels(labels.clone())
    }
}

pub fn complex_from_def(def: &ComplexDef) -> Result<Complex> {
    let space = space_from(&def.dims, &def.labels)?;
    Complex::from_blocks(space, blocks_from_def(&def.d)?)
}

pub fn complex_to_def(c: &Complex) -> ComplexDef {
    let space = c.space();
    ComplexDef {
        dims: space.dims().clone(),
        labels: space.labels().clone(),
        d: blocks_to_def(c.d().blocks()),
    }
}

fn table_from_def(t: &TableDef) -> Result<StructureTable> {
    let entries = t
        .iter()
        .map(|(p, i, q, j, k, c)| {
            Ok(Entry {
                p: *p,
                i: *i,
                q: *q,
                j: *j,
                k: *k,
                c: scalar::parse(c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureTable::from_entries(entries))
}

fn table_to_def(t: &StructureTable) -> TableDef {
    t.entries()
        .into_iter()
        .map(|e| (e.p, e.i, e.q, e.j, e.k, scalar::format(&e.c)))
        .collect()
}

pub fn dgla_from_def(def: &DglaDef) -> Result<Dgla> {
    Dgla::new(complex_from_def(&def.complex)?, table_from_def(&def.bracket)?)
}

pub fn dgla_to_def(l: &Dgla) -> DglaDef {
    DglaDef {
        complex: complex_to_def(l.complex()),
        bracket: table_to_def(l.table()),
    }
}

pub fn artinian_from_def(def: &ArtinianDef) -> Result<ArtinianAlgebra> {
    if let Some((gens, order)) = &def.truncated {
        let g: Vec<&str> = gens.iter().map(String::as_str).collect();
        return ArtinianAlgebra::truncated(&g, *order);
    }
    let mut mult: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (a, b, c, v) in &def.mult {
        mult.entry((*a, *b)).or_default().push((*c, scalar::parse(v)?));
    }
    ArtinianAlgebra::new(def.labels.clone(), def.weights.clone(), mult)
}

pub fn artinian_to_def(a: &ArtinianAlgebra) -> ArtinianDef {
    let mult = a
        .table()
        .iter()
        .flat_map(|(&(x, y), v)| v.iter().map(move |(c, s)| (x, y, *c, scalar::format(s))))
        .collect();
    ArtinianDef {
        truncated: None,
        labels: a.labels().to_vec(),
        weights: a.weights().to_vec(),
        mult,
    }
}

pub fn dbv_from_def(def: &DbvDef) -> Result<DbvAlgebra> {
    let complex = complex_from_def(&def.complex)?;
    let space = complex.space().clone();
    let unit = Elem::new(0, scalars(&def.unit)?);
    let delta = map_from_def(&def.delta, &space, &space)?;
    let b = DbvAlgebra::new(complex, table_from_def(&def.product)?, unit, delta, def.k)?;
    match &def.bigrading {
        Some(bg) => b.with_bigrading(bg.clone()),
        None => Ok(b),
    }
}

pub fn dbv_to_def(b: &DbvAlgebra) -> DbvDef {
    DbvDef {
        complex: complex_to_def(b.complex()),
        product: table_to_def(b.product()),
        unit: strings(&b.unit().coords),
        delta: map_to_def(b.delta()),
        k: b.k(),
        bigrading: b.bigrading().cloned(),
    }
}

fn subspace_from_def(defs: &BTreeMap<i32, MatrixDef>) -> Result<Subspace> {
    blocks_from_def(defs)
}

fn subspace_to_def(s: &Subspace) -> BTreeMap<i32, MatrixDef> {
    s.iter().map(|(&n, m)| (n, matrix_to_def(m))).collect()
}

pub fn filtration_to_def(f: &Filtration) -> FiltrationDef {
    FiltrationDef {
        top: subspace_to_def(&f.top),
        next: subspace_to_def(&f.next),
    }
}

pub fn calculus_ops_to_def(c: &CartanHomotopy) -> Vec<(i32, usize, i32, usize, usize, String)> {
    let mut out = Vec::new();
    for (&p, list) in &c.ops {
        for (i, f) in list.iter().enumerate() {
            for (&n, m) in f.blocks() {
                for (row, col, v) in m.triplets() {
                    out.push((p, i, n, col, row, scalar::format(&v)));
                }
            }
        }
    }
    out
}

/// Everything in a file, resolved and verified.
#[derive(Clone, Debug, Default)]
pub struct Instance {
    pub complexes: BTreeMap<String, Complex>,
    pub dglas: BTreeMap<String, Dgla>,
    pub morphisms: BTreeMap<String, (String, String, DglaMorphism)>,
    pub artinian: BTreeMap<String, ArtinianAlgebra>,
    pub semicosimplicial: BTreeMap<String, Semicosimplicial>,
    pub cech: BTreeMap<String, Semicosimplicial>,
    pub calculi: BTreeMap<String, (CartanHomotopy, Option<Filtration>)>,
    pub dbv: BTreeMap<String, DbvAlgebra>,
    pub scenarios: BTreeMap<String, ScenarioDef>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T> {
    map.get(name)
        .ok_or_else(|| Error::invalid(format!("unknown {kind} {name:?}")))
}

fn context(what: &str, name: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{what} {name:?}: {m}")),
        Error::Invalid(m) => Error::Invalid(format!("{what} {name:?}: {m}")),
        other => other,
    }
}

impl Instance {
    pub fn load(file: &InstanceFile) -> Result<Self> {
        let mut inst = Instance::default();
        for (name, def) in &file.complexes {
            inst.complexes
                .insert(name.clone(), complex_from_def(def).map_err(|e| context("complex", name, e))?);
        }
        for (name, def) in &file.dglas {
            inst.dglas
                .insert(name.clone(), dgla_from_def(def).map_err(|e| context("DGLA", name, e))?);
        }
        for (name, def) in &file.morphisms {
            let s = lookup(&inst.dglas, "DGLA", &def.source)?;
            let t = lookup(&inst.dglas, "DGLA", &def.target)?;
            let f = map_from_def(&def.map, s.space(), t.space()).map_err(|e| context("morphism", name, e))?;
            let m = DglaMorphism::new(s, t, f).map_err(|e| context("morphism", name, e))?;
            inst.morphisms
                .insert(name.clone(), (def.source.clone(), def.target.clone(), m));
        }
        for (name, def) in &file.artinian {
            inst.artinian
                .insert(name.clone(), artinian_from_def(def).map_err(|e| context("Artinian algebra", name, e))?);
        }
        for (name, def) in &file.semicosimplicial {
            let levels = def
                .levels
                .iter()
                .map(|l| lookup(&inst.dglas, "DGLA", l).cloned())
                .collect::<Result<Vec<_>>>()?;
            let mut cofaces = Vec::new();
            for (i0, maps) in def.cofaces.iter().enumerate() {
                let i = i0 + 1;
                if i >= levels.len() {
                    return Err(Error::invalid(format!("semicosimplicial {name:?}: too many coface levels")));
                }
                let list = maps
                    .iter()
                    .map(|m| map_from_def(m, levels[i - 1].space(), levels[i].space()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| context("semicosimplicial", name, e))?;
                cofaces.push(list);
            }
            let sc = Semicosimplicial::new(levels, cofaces).map_err(|e| context("semicosimplicial", name, e))?;
            inst.semicosimplicial.insert(name.clone(), sc);
        }
        for (name, def) in &file.cech {
            let input = match &def.uniform {
                Some(g) => CechInput::uniform(def.opens, lookup(&inst.dglas, "DGLA", g)?, def.max_level),
                None => {
                    let mut sections = BTreeMap::new();
                    for (chain, g) in &def.sections {
                        sections.insert(chain.clone(), lookup(&inst.dglas, "DGLA", g)?.clone());
                    }
                    let mut restrictions = BTreeMap::new();
                    for (chain, h, m) in &def.restrictions {
                        let here = sections
                            .get(chain)
                            .ok_or_else(|| Error::invalid(format!("Čech {name:?}: no sections on {chain:?}")))?;
                        let mut face = chain.clone();
                        if *h >= face.len() {
                            return Err(Error::invalid(format!("Čech {name:?}: bad position {h} in {chain:?}")));
                        }
                        face.remove(*h);
                        let src = sections.get(&face).map_or_else(GradedSpace::zero, |g| g.space().clone());
                        restrictions.insert((chain.clone(), *h), map_from_def(m, &src, here.space())?);
                    }
                    CechInput {
                        opens: def.opens,
                        sections,
                        restrictions,
                        max_level: def.max_level,
                    }
                }
            };
            let sc = cech_to_semicosimplicial(&input).map_err(|e| context("Čech", name, e))?;
            inst.cech.insert(name.clone(), sc);
        }
        for (name, def) in &file.calculi {
            let lie = lookup(&inst.dglas, "DGLA", &def.lie)?.clone();
            let module = lookup(&inst.complexes, "complex", &def.module)?.clone();
            let entries = def
                .ops
                .iter()
                .map(|(p, i, n, col, row, c)| {
                    if *i >= lie.dim(*p) || *col >= module.dim(*n) || *row >= module.dim(n + p - 1) {
                        return Err(Error::invalid(format!("calculus {name:?}: operator entry out of range")));
                    }
                    Ok(((*p, *i), *n, *col, *row, scalar::parse(c)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let ops = crate::cartan::models::ops_from_entries(&lie, &module, &entries);
            let c = CartanHomotopy::new(lie, module, ops).map_err(|e| context("calculus", name, e))?;
            let filt = match &def.filtration {
                Some(f) => {
                    let filt = Filtration {
                        top: subspace_from_def(&f.top)?,
                        next: subspace_from_def(&f.next)?,
                    };
                    c.module.check_subspace(&filt.top)?;
                    c.module.check_subspace(&filt.next)?;
                    Some(filt)
                }
                None => None,
            };
            inst.calculi.insert(name.clone(), (c, filt));
        }
        for (name, def) in &file.dbv {
            inst.dbv
                .insert(name.clone(), dbv_from_def(def).map_err(|e| context("dBV algebra", name, e))?);
        }
        inst.scenarios = file.scenarios.clone();
        Ok(inst)
    }
}

pub fn tensor_from_def(l: &Dgla, a: &ArtinianAlgebra, def: &TensorDef) -> Result<Tensor> {
    let mut terms = Vec::new();
    for t in &def.terms {
        let col = a
            .index_of(&t.basis)
            .ok_or_else(|| Error::invalid(format!("no basis element {:?} in m_A", t.basis)))?;
        let v = scalars(&t.vector)?;
        if v.len() != l.dim(def.degree) {
            return Err(Error::Shape {
                degree: def.degree,
                detail: format!("vector has {} coordinates, the DGLA has dim {}", v.len(), l.dim(def.degree)),
            });
        }
        terms.push((v, col));
    }
    Ok(Tensor::from_terms(l, a, def.degree, &terms))
}

pub fn tensor_to_def(a: &ArtinianAlgebra, t: &Tensor) -> TensorDef {
    let terms = (0..a.dim())
        .filter(|&c| !t.component(c).is_zero())
        .map(|c| TermDef {
            vector: strings(&t.component(c).coords),
            basis: a.labels()[c].clone(),
        })
        .collect();
    TensorDef {
        degree: t.degree,
        terms,
    }
}

pub fn elem_from_def(space: &GradedSpace, (degree, coords): &(i32, Vec<String>)) -> Result<Elem> {
    let v = scalars(coords)?;
    if v.len() != space.dim(*degree) {
        return Err(Error::Shape {
            degree: *degree,
            detail: format!("element has {} coordinates, expected {}", v.len(), space.dim(*degree)),
        });
    }
    Ok(Elem::new(*degree, v))
}

pub fn elem_strings(x: &Elem) -> Vec<String> {
    strings(&x.coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::models::*;

    #[test]
    fn matrix_round_trip_both_layouts() {
        let dense = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let sparse = Matrix::from_i64(&[&[0, 0, 0], &[0, 5, 0]]);
        for m in [dense, sparse] {
            let def = matrix_to_def(&m);
            assert_eq!(matrix_from_def(&def).unwrap(), m);
        }
        assert!(matrix_to_def(&Matrix::from_i64(&[&[0, 0, 0], &[0, 5, 0]])).entries.is_some());
    }

    #[test]
    fn dgla_round_trip() {
        for l in [sl2(), nilpotent_witness(), abelian(&[(0, 1), (1, 2)])] {
            let mut f = InstanceFile::new();
            f.dglas.insert("l".into(), dgla_to_def(&l));
            let text = f.to_json();
            let back = Instance::load(&InstanceFile::parse(&text).unwrap()).unwrap();
            assert_eq!(back.dglas["l"], l);
        }
    }

    #[test]
    fn rationals_are_strings() {
        let mut t = StructureTable::new();
        t.add(0, 0, 0, 0, 0, scalar::frac(-3, 4));
        let def = table_to_def(&t);
        assert_eq!(def[0].5, "-3/4");
        assert_eq!(table_from_def(&def).unwrap(), t);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(InstanceFile::parse("{\"format\": \"other/2\"}"), Err(Error::Parse(_))));
        assert!(matches!(InstanceFile::parse("not json"), Err(Error::Parse(_))));
        let text = r#"{"format": "dgla-workbench/1", "dglas": {"bad": {"complex": {"dims": {"0": 1}},
            "bracket": [[0, 0, 0, 0, 0, "1"]]}}}"#;
        assert!(Instance::load(&InstanceFile::parse(text).unwrap()).is_err());
        let text = r#"{"format": "dgla-workbench/1", "semicosimplicial": {"s": {"levels": ["missing"]}}}"#;
        assert!(Instance::load(&InstanceFile::parse(text).unwrap()).is_err());
    }
}
