//! JSON schemas for racks, groups, modules and factor sets.
//!
//! Racks: `{"n": int, "op": [[int]], "rho": [int], "quandle": bool}` with
//! `inv_op` derived and verified on load; the writer also emits it.
//! Groups: `{"factors": [int]}`. Homs: `{"mat": [[int]]}`. Modules carry
//! their base inline or by name; pair keys are written `"x,y"`.

use crate::abgrp::mat::Mat;
use crate::abgrp::{AbHom, FiniteAbelianGroup};
use crate::catalog;
use crate::error::{Error, Result};
use crate::ext::FactorSet;
use crate::rack::FiniteSymmetricRack;
use crate::sqmod::SQModule;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RackJson {
    pub n: usize,
    pub op: Vec<Vec<usize>>,
    pub rho: Vec<usize>,
    pub quandle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inv_op: Option<Vec<Vec<usize>>>,
}

impl RackJson {
    pub fn emit(rack: &FiniteSymmetricRack) -> Self {
        RackJson {
            n: rack.n(),
            op: rack.op_table().to_vec(),
            rho: rack.rho_table().to_vec(),
            quandle: rack.is_quandle(),
            inv_op: Some(rack.inv_op_table().to_vec()),
        }
    }

    pub fn into_rack(self) -> Result<FiniteSymmetricRack> {
        if self.op.len() != self.n {
            return Err(Error::Structure("op table size disagrees with n".into()));
        }
        let derived = crate::rack::derive_inv_op(&self.op)?;
        if let Some(given) = &self.inv_op {
            if *given != derived {
                return Err(Error::Structure(
                    "provided inv_op disagrees with the inverted translations".into(),
                ));
            }
        }
        FiniteSymmetricRack::new(self.op, derived, self.rho, self.quandle)
    }
}

/// Either an inline rack or a catalog/file reference.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RackRef {
    Name(String),
    Inline(RackJson),
}

impl RackRef {
    /// Resolve a reference; `load_file` supplies file contents for path
    /// references (the CLI passes a reader, tests pass a stub).
    pub fn resolve(self, load_file: &dyn Fn(&str) -> Option<String>) -> Result<FiniteSymmetricRack> {
        match self {
            RackRef::Inline(r) => r.into_rack(),
            RackRef::Name(name) => {
                if let Ok(rack) = catalog::catalog_rack(&name) {
                    return Ok(rack);
                }
                let text = load_file(&name).ok_or_else(|| {
                    Error::Structure(format!("'{name}' is neither a catalog rack nor a readable file"))
                })?;
                let parsed: RackJson = serde_json::from_str(&text)
                    .map_err(|e| Error::Structure(format!("bad rack JSON in '{name}': {e}")))?;
                parsed.into_rack()
            }
        }
    }
}

fn mat_to_json(m: &Mat) -> Result<Vec<Vec<i64>>> {
    m.to_rows_i64()
        .ok_or_else(|| Error::Structure("matrix entry exceeds the JSON integer range".into()))
}

fn vec_to_json(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Structure("coordinate exceeds i64".into())))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleJson {
    pub base: RackRef,
    /// invariant factors per element index, keyed by decimal string
    pub groups: BTreeMap<String, Vec<i64>>,
    pub phi: BTreeMap<String, Vec<Vec<i64>>>,
    pub psi: BTreeMap<String, Vec<Vec<i64>>>,
    pub eta: BTreeMap<String, Vec<Vec<i64>>>,
}

fn pair_key(x: usize, y: usize) -> String {
    format!("{x},{y}")
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| Error::Structure(format!("expected 'x,y' key, got '{key}'")))?;
    Ok((
        a.trim().parse().map_err(|_| Error::Structure(format!("bad index '{a}'")))?,
        b.trim().parse().map_err(|_| Error::Structure(format!("bad index '{b}'")))?,
    ))
}

impl ModuleJson {
    pub fn emit(m: &SQModule) -> Result<Self> {
        let n = m.base().n();
        let mut groups = BTreeMap::new();
        let mut phi = BTreeMap::new();
        let mut psi = BTreeMap::new();
        let mut eta = BTreeMap::new();
        for x in 0..n {
            groups.insert(x.to_string(), m.group(x).factors_i64());
            eta.insert(x.to_string(), mat_to_json(&m.eta(x).mat)?);
            for y in 0..n {
                phi.insert(pair_key(x, y), mat_to_json(&m.phi(x, y).mat)?);
                psi.insert(pair_key(x, y), mat_to_json(&m.psi(x, y).mat)?);
            }
        }
        Ok(ModuleJson { base: RackRef::Inline(RackJson::emit(m.base())), groups, phi, psi, eta })
    }

    pub fn into_module(self, load_file: &dyn Fn(&str) -> Option<String>) -> Result<SQModule> {
        let base = self.base.resolve(load_file)?;
        let n = base.n();
        let mut groups = Vec::with_capacity(n);
        for x in 0..n {
            let factors = self
                .groups
                .get(&x.to_string())
                .ok_or_else(|| Error::Structure(format!("missing group for element {x}")))?;
            let g = FiniteAbelianGroup::new(factors);
            if g.factors_i64() != *factors {
                return Err(Error::Structure(format!(
                    "group for element {x} must be given in invariant-factor form \
                     (got {factors:?}, canonical {:?})",
                    g.factors_i64()
                )));
            }
            groups.push(g);
        }
        let hom = |table: &BTreeMap<String, Vec<Vec<i64>>>,
                   key: String,
                   src: &FiniteAbelianGroup,
                   dst: &FiniteAbelianGroup|
         -> Result<AbHom> {
            let rows = table
                .get(&key)
                .ok_or_else(|| Error::Structure(format!("missing matrix for '{key}'")))?;
            AbHom::new(src.clone(), dst.clone(), Mat::from_rows_i64(rows))
        };
        let mut phi = Vec::with_capacity(n);
        let mut psi = Vec::with_capacity(n);
        let mut eta = Vec::with_capacity(n);
        for x in 0..n {
            let mut phi_row = Vec::with_capacity(n);
            let mut psi_row = Vec::with_capacity(n);
            for y in 0..n {
                let t = base.op(x, y);
                phi_row.push(hom(&self.phi, pair_key(x, y), &groups[x], &groups[t])?);
                psi_row.push(hom(&self.psi, pair_key(x, y), &groups[y], &groups[t])?);
            }
            phi.push(phi_row);
            psi.push(psi_row);
            eta.push(hom(&self.eta, x.to_string(), &groups[x], &groups[base.rho(x)])?);
        }
        SQModule::new(base, groups, phi, psi, eta)
    }
}

/// Either an inline module description, a catalog constructor name
/// requiring a base, or a file path.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Name(String),
    Inline(Box<ModuleJson>),
}

impl ModuleRef {
    pub fn resolve(
        self,
        base: Option<&FiniteSymmetricRack>,
        load_file: &dyn Fn(&str) -> Option<String>,
    ) -> Result<SQModule> {
        match self {
            ModuleRef::Inline(m) => m.into_module(load_file),
            ModuleRef::Name(name) => {
                if let Some(base) = base {
                    if let Ok(m) = catalog::catalog_module(&name, base) {
                        return Ok(m);
                    }
                }
                let text = load_file(&name).ok_or_else(|| {
                    Error::Structure(format!(
                        "'{name}' is neither a catalog module nor a readable file"
                    ))
                })?;
                let parsed: ModuleJson = serde_json::from_str(&text)
                    .map_err(|e| Error::Structure(format!("bad module JSON in '{name}': {e}")))?;
                parsed.into_module(load_file)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorSetJson {
    pub module: ModuleRef,
    /// coordinates in `A_{x*y}` keyed by `"x,y"`
    pub sigma: BTreeMap<String, Vec<i64>>,
}

impl FactorSetJson {
    pub fn emit(m: &SQModule, sigma: &FactorSet) -> Result<Self> {
        let n = m.base().n();
        let mut table = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                table.insert(pair_key(x, y), vec_to_json(sigma.at(x, y))?);
            }
        }
        Ok(FactorSetJson {
            module: ModuleRef::Inline(Box::new(ModuleJson::emit(m)?)),
            sigma: table,
        })
    }

    pub fn into_parts(
        self,
        load_file: &dyn Fn(&str) -> Option<String>,
    ) -> Result<(SQModule, FactorSet)> {
        let module = self.module.resolve(None, load_file)?;
        let n = module.base().n();
        let mut sigma = FactorSet::zero(&module);
        for (key, coords) in &self.sigma {
            let (x, y) = parse_pair(key)?;
            if x >= n || y >= n {
                return Err(Error::Structure(format!("sigma key '{key}' out of range")));
            }
            sigma.sigma[x][y] = coords.iter().map(|&c| BigInt::from(c)).collect();
        }
        sigma.check_shape(&module)?;
        Ok((module, sigma))
    }
}
