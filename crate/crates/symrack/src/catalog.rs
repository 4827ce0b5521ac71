//! Named instances for desk work: racks by name, coefficient groups from
//! compact strings, and module constructors by name. Every catalog entry
//! validates on construction.

use crate::abgrp::{AbHom, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::rack::{FiniteSymmetricRack, GroupTable};
use crate::sqmod::SQModule;

/// Parse a coefficient group: `Z`, `Z/8`, `Z/2+Z/4`, and the compact
/// forms `Z8`, `Z2+Z4`. Canonicalized on parse.
pub fn parse_coeff(s: &str) -> Result<FiniteAbelianGroup> {
    let mut factors = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        let body = part
            .strip_prefix("Z/")
            .or_else(|| part.strip_prefix("z/"))
            .or_else(|| part.strip_prefix('Z'))
            .or_else(|| part.strip_prefix('z'))
            .ok_or_else(|| Error::Structure(format!("cannot parse coefficient group '{part}'")))?;
        if body.is_empty() {
            factors.push(0);
            continue;
        }
        let d: i64 = body
            .parse()
            .map_err(|_| Error::Structure(format!("cannot parse coefficient group '{part}'")))?;
        if d < 0 {
            return Err(Error::Structure(format!("negative modulus in '{part}'")));
        }
        factors.push(d);
    }
    if factors.is_empty() {
        return Err(Error::Structure("empty coefficient group name".into()));
    }
    Ok(FiniteAbelianGroup::new(&factors))
}

fn parse_group_table(name: &str) -> Result<GroupTable> {
    if let Some(n) = name.strip_prefix('z').and_then(|s| s.parse::<usize>().ok()) {
        if n == 0 {
            return Err(Error::Structure("cyclic group needs a positive order".into()));
        }
        return Ok(GroupTable::cyclic(n));
    }
    match name {
        "s3" => Ok(GroupTable::symmetric3()),
        "klein" => Ok(GroupTable::klein4()),
        other => Err(Error::Structure(format!("unknown group '{other}'"))),
    }
}

fn parse_involution(n: usize, s: &str) -> Result<Vec<usize>> {
    match s {
        "id" => Ok((0..n).collect()),
        "swap" => {
            if n != 2 {
                return Err(Error::Structure("'swap' names the 2-element transposition".into()));
            }
            Ok(vec![1, 0])
        }
        digits => {
            let perm: Option<Vec<usize>> =
                digits.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
            let perm =
                perm.ok_or_else(|| Error::Structure(format!("bad involution '{digits}'")))?;
            if perm.len() != n {
                return Err(Error::Structure(format!(
                    "involution '{digits}' has length {}, expected {n}",
                    perm.len()
                )));
            }
            Ok(perm)
        }
    }
}

/// Resolve a rack by catalog name. Supported: `unknot-sq`, `singleton`,
/// `trivial-<n>-<inv>`, `dihedral-<n>`, `conj-<group>`, `core-<group>` and
/// `core-<group>-<z>`, `flip-rack-2`, and products joined with `*`.
pub fn catalog_rack(name: &str) -> Result<FiniteSymmetricRack> {
    if let Some((left, right)) = name.split_once('*') {
        let a = catalog_rack(left)?;
        let b = catalog_rack(right)?;
        return a.product(&b);
    }
    match name {
        "unknot-sq" => return FiniteSymmetricRack::make_trivial(2, &[1, 0]),
        "singleton" => return FiniteSymmetricRack::make_trivial(1, &[0]),
        "flip-rack-2" => {
            return FiniteSymmetricRack::from_op(vec![vec![1, 1], vec![0, 0]], vec![0, 1], false)
        }
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("trivial-") {
        let (n_str, inv) = rest
            .split_once('-')
            .ok_or_else(|| Error::Structure(format!("expected trivial-<n>-<inv>: '{name}'")))?;
        let n: usize =
            n_str.parse().map_err(|_| Error::Structure(format!("bad size in '{name}'")))?;
        let inv = parse_involution(n, inv)?;
        return FiniteSymmetricRack::make_trivial(n, &inv);
    }
    if let Some(rest) = name.strip_prefix("dihedral-") {
        let n: usize =
            rest.parse().map_err(|_| Error::Structure(format!("bad size in '{name}'")))?;
        return FiniteSymmetricRack::make_core(&GroupTable::cyclic(n), None);
    }
    if let Some(rest) = name.strip_prefix("conj-") {
        return FiniteSymmetricRack::make_conj(&parse_group_table(rest)?);
    }
    if let Some(rest) = name.strip_prefix("core-") {
        // optional trailing -<z> picks a central involution
        if let Some((grp, z)) = rest.rsplit_once('-') {
            if let Ok(z) = z.parse::<usize>() {
                return FiniteSymmetricRack::make_core(&parse_group_table(grp)?, Some(z));
            }
        }
        return FiniteSymmetricRack::make_core(&parse_group_table(rest)?, None);
    }
    Err(Error::Structure(format!("unknown catalog rack '{name}'")))
}

/// Resolve a module constructor by name over the given base:
/// `trivial-<coeff>`, `order4-<coeff>`, `pair-<coeff>` (phi = psi = 0
/// pattern with eta = id).
pub fn catalog_module(name: &str, base: &FiniteSymmetricRack) -> Result<SQModule> {
    if let Some(rest) = name.strip_prefix("trivial-") {
        return SQModule::trivial(base.clone(), &parse_coeff(rest)?);
    }
    if let Some(rest) = name.strip_prefix("order4-") {
        return SQModule::order4(base.clone(), &parse_coeff(rest)?);
    }
    if let Some(rest) = name.strip_prefix("pair-") {
        let coeff = parse_coeff(rest)?;
        let id = AbHom::identity(&coeff);
        return SQModule::involutive_pair(base.clone(), &id, &id);
    }
    Err(Error::Structure(format!("unknown catalog module '{name}'")))
}

/// The default instance set for suites: all quandles of size at most 4,
/// plus one genuine non-quandle rack.
pub fn default_rack_names() -> Vec<&'static str> {
    vec![
        "singleton",
        "trivial-2-id",
        "unknot-sq",
        "trivial-3-id",
        "trivial-3-102",
        "dihedral-3",
        "dihedral-4",
        "conj-z4",
        "core-z4-2",
        "flip-rack-2",
    ]
}

/// Homogeneous module library over a given base: every constructor output
/// with coefficient order at most `max_order` that validates over that
/// base. Returned with stable descriptive names.
pub fn module_library(
    base: &FiniteSymmetricRack,
    max_order: i64,
) -> Vec<(String, SQModule)> {
    let mut out: Vec<(String, SQModule)> = Vec::new();
    let coeffs: Vec<(&str, Vec<i64>)> = vec![
        ("Z/2", vec![2]),
        ("Z/3", vec![3]),
        ("Z/4", vec![4]),
        ("Z/2+Z/2", vec![2, 2]),
        ("Z/6", vec![6]),
        ("Z/8", vec![8]),
        ("Z/9", vec![9]),
        ("Z/2+Z/4", vec![2, 4]),
    ];
    let order = |f: &[i64]| f.iter().product::<i64>();
    for (cname, factors) in &coeffs {
        if order(factors) > max_order {
            continue;
        }
        let a = FiniteAbelianGroup::new(factors);
        if let Ok(m) = SQModule::trivial(base.clone(), &a) {
            out.push((format!("trivial-{cname}"), m));
        }
        if let Ok(m) = SQModule::order4(base.clone(), &a) {
            out.push((format!("order4-{cname}"), m));
        }
        let id = AbHom::identity(&a);
        if let Ok(m) = SQModule::involutive_pair(base.clone(), &id, &id) {
            out.push((format!("pair-id-{cname}"), m));
        }
        if !base.is_quandle() {
            let neg = AbHom::scalar(&a, -1);
            if let Ok(m) = SQModule::involutive_pair(base.clone(), &neg, &id) {
                out.push((format!("pair-neg-{cname}"), m));
            }
        }
    }
    // orbitwise-varying eta on multi-orbit bases, still homogeneous
    if base.orbit_count() >= 2 {
        let a = FiniteAbelianGroup::new(&[4]);
        if order(&[4]) <= max_order {
            let id = AbHom::identity(&a);
            let neg = AbHom::scalar(&a, -1);
            let per: Vec<(FiniteAbelianGroup, AbHom, AbHom)> = (0..base.orbit_count())
                .map(|i| (a.clone(), id.clone(), if i % 2 == 0 { neg.clone() } else { id.clone() }))
                .collect();
            if let Ok(m) = SQModule::orbit(base.clone(), &per) {
                out.push(("orbit-eta-Z/4".into(), m));
            }
        }
    }
    // dedupe by action tables: order4 over Z/2 coincides with trivial etc.
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_parsing() {
        assert_eq!(parse_coeff("Z/4").unwrap().factors_i64(), vec![4]);
        assert_eq!(parse_coeff("Z4").unwrap().factors_i64(), vec![4]);
        assert_eq!(parse_coeff("Z/2+Z/4").unwrap().factors_i64(), vec![2, 4]);
        assert_eq!(parse_coeff("Z/2+Z/3").unwrap().factors_i64(), vec![6]);
        assert_eq!(parse_coeff("Z").unwrap().factors_i64(), vec![0]);
        assert!(parse_coeff("Q").is_err());
    }

    #[test]
    fn catalog_racks_validate() {
        for name in default_rack_names() {
            let r = catalog_rack(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            let report = crate::rack::validate_tables(
                r.op_table(),
                r.inv_op_table(),
                r.rho_table(),
                r.is_quandle(),
            )
            .unwrap();
            assert!(report.is_empty(), "{name} failed: {report}");
        }
        let p = catalog_rack("unknot-sq*dihedral-3").unwrap();
        assert_eq!(p.n(), 6);
        assert!(catalog_rack("nonsense").is_err());
    }

    #[test]
    fn module_library_is_nonempty_and_valid() {
        // every constructor output over every catalog base validates
        for rack_name in default_rack_names() {
            let base = catalog_rack(rack_name).unwrap();
            let lib = module_library(&base, 9);
            assert!(lib.len() >= 8, "{rack_name}");
            for (name, m) in &lib {
                assert!(m.validate().is_empty(), "{rack_name} / {name}");
                assert!(m.is_homogeneous(), "{rack_name} / {name}");
            }
        }
        // rack bases admit the pair-neg modules
        let flip = catalog_rack("flip-rack-2").unwrap();
        let lib = module_library(&flip, 9);
        assert!(lib.iter().any(|(n, _)| n.starts_with("pair-neg")));
    }
}
