use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::graded::{GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::table::StructureTable;

use super::Semicosimplicial;

/// Sections on chains `i_0 < … < i_k` of a finite ordered cover, with restrictions.
#[derive(Clone, Debug)]
pub struct CechInput {
    pub opens: usize,
    pub sections: BTreeMap<Vec<usize>, Dgla>,
    /// `restrictions[(σ, h)]` maps the sections on `σ` with its `h`-th index dropped to those on `σ`.
    pub restrictions: BTreeMap<(Vec<usize>, usize), GradedMap>,
    /// Optional cap on the truncation level.
    pub max_level: Option<usize>,
}

/// Product of DGLAs: block-diagonal differential and bracket, with per-degree offsets.
pub(crate) fn product(parts: &[&Dgla]) -> (Dgla, Vec<BTreeMap<i32, usize>>) {
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    let mut offsets = Vec::new();
    for g in parts {
        let mut off = BTreeMap::new();
        for n in g.space().support() {
            let e = dims.entry(n).or_insert(0);
            off.insert(n, *e);
            *e += g.dim(n);
        }
        offsets.push(off);
    }
    let space = GradedSpace::new(dims);
    let d = GradedMap::from_fn(&space, &space, 1, |n| {
        let mut m = Matrix::zeros(space.dim(n + 1), space.dim(n));
        for (g, off) in parts.iter().zip(&offsets) {
            if let (Some(&c), Some(&r)) = (off.get(&n), off.get(&(n + 1))) {
                m.set_block(r, c, &g.complex().d_block(n));
            }
        }
        m
    })
    .expect("product differential");
    let mut table = StructureTable::new();
    for (g, off) in parts.iter().zip(&offsets) {
        for e in g.table().entries() {
            table.add(e.p, off[&e.p] + e.i, e.q, off[&e.q] + e.j, off[&(e.p + e.q)] + e.k, e.c);
        }
    }
    let complex = Complex::new(d).expect("product complex");
    (Dgla::from_parts(complex, table).expect("product table"), offsets)
}

fn drop_index(s: &[usize], h: usize) -> Vec<usize> {
    let mut t = s.to_vec();
    t.remove(h);
    t
}

impl CechInput {
    /// Every nonempty chain gets the same DGLA and identity restrictions.
    pub fn uniform(opens: usize, sections: &Dgla, max_level: Option<usize>) -> Self {
        let top = max_level.unwrap_or(opens.saturating_sub(1)).min(opens.saturating_sub(1));
        let mut input = CechInput {
            opens,
            sections: BTreeMap::new(),
            restrictions: BTreeMap::new(),
            max_level,
        };
        for chain in chains(opens, top) {
            if chain.len() > 1 {
                for h in 0..chain.len() {
                    input
                        .restrictions
                        .insert((chain.clone(), h), GradedMap::identity(sections.space()));
                }
            }
            input.sections.insert(chain, sections.clone());
        }
        input
    }

    fn top(&self) -> usize {
        let longest = self.sections.keys().map(Vec::len).max().unwrap_or(1);
        let t = longest.saturating_sub(1);
        self.max_level.map_or(t, |m| t.min(m))
    }

    fn restriction(&self, chain: &[usize], h: usize) -> Result<GradedMap> {
        let here = &self.sections[chain];
        let face = drop_index(chain, h);
        let Some(there) = self.sections.get(&face) else {
            return Ok(GradedMap::zero(&GradedSpace::zero(), here.space(), 0));
        };
        match self.restrictions.get(&(chain.to_vec(), h)) {
            Some(r) => {
                if r.source() != there.space() || r.target() != here.space() || r.degree() != 0 {
                    return Err(Error::invalid(format!("restriction to {chain:?} dropping {h} has the wrong shape")));
                }
                Ok(r.clone())
            }
            None => Err(Error::invalid(format!("missing restriction to {chain:?} dropping position {h}"))),
        }
    }

    pub fn check_presheaf(&self) -> Result<()> {
        for chain in self.sections.keys() {
            if chain.windows(2).any(|w| w[0] >= w[1]) || chain.iter().any(|&i| i >= self.opens) {
                return Err(Error::invalid(format!("{chain:?} is not an increasing chain of opens")));
            }
            if chain.len() < 3 {
                continue;
            }
            for h2 in 1..chain.len() {
                for h1 in 0..h2 {
                    let a = drop_index(chain, h1);
                    let b = drop_index(chain, h2);
                    if !self.sections.contains_key(&a) || !self.sections.contains_key(&b) {
                        continue;
                    }
                    let ab = drop_index(&a, h2 - 1);
                    if !self.sections.contains_key(&ab) {
                        continue;
                    }
                    let left = self.restriction(chain, h1)?.compose(&self.restriction(&a, h2 - 1)?)?;
                    let right = self.restriction(chain, h2)?.compose(&self.restriction(&b, h1)?)?;
                    if left != right {
                        return Err(Error::PresheafViolation { chain: chain.clone() });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Increasing chains in `0..opens` of length `1..=top+1`, ordered by length then lexicographically.
pub fn chains(opens: usize, top: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 1..=(top + 1) {
        let mut cur = Vec::new();
        rec(opens, len, 0, &mut cur, &mut out);
    }
    out
}

fn rec(opens: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for i in start..opens {
        cur.push(i);
        rec(opens, len, i + 1, cur, out);
        cur.pop();
    }
}

pub fn cech_to_semicosimplicial(input: &CechInput) -> Result<Semicosimplicial> {
    input.check_presheaf()?;
    let top = input.top();
    let mut level_chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for chain in input.sections.keys() {
        if chain.len() <= top + 1 && !chain.is_empty() {
            level_chains[chain.len() - 1].push(chain.clone());
        }
    }
    let mut levels = Vec::new();
    let mut offsets = Vec::new();
    for chain_list in &level_chains {
        let parts: Vec<&Dgla> = chain_list.iter().map(|c| &input.sections[c]).collect();
        let (g, off) = product(&parts);
        levels.push(g);
        offsets.push(off);
    }
    let mut cofaces = Vec::new();
    for i in 1..=top {
        let mut maps = Vec::new();
        for h in 0..=i {
            let src = levels[i - 1].space().clone();
            let tgt = levels[i].space().clone();
            let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
            for n in src.support() {
                blocks.insert(n, Matrix::zeros(tgt.dim(n), src.dim(n)));
            }
            for (ci, chain) in level_chains[i].iter().enumerate() {
                let face = drop_index(chain, h);
                let Some(fi) = level_chains[i - 1].iter().position(|c| *c == face) else {
                    continue;
                };
                let r = input.restriction(chain, h)?;
                for (&n, b) in r.blocks() {
                    let m = blocks.get_mut(&n).expect("degree present");
                    m.set_block(offsets[i][ci][&n], offsets[i - 1][fi][&n], b);
                }
            }
            maps.push(GradedMap::new(src, tgt, 0, blocks)?);
        }
        cofaces.push(maps);
    }
    Semicosimplicial::new(levels, cofaces)
}
