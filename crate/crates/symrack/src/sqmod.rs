//! Modules over a symmetric rack or quandle: per-element coefficient groups
//! `A_x` with structure maps `phi_{x,y}: A_x -> A_{x*y}`,
//! `psi_{x,y}: A_y -> A_{x*y}`, `eta_x: A_x -> A_{rho(x)}` subject to the
//! axioms M1-M8, plus M9 on quandle bases.

use crate::abgrp::{AbHom, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::rack::FiniteSymmetricRack;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleAxiom {
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
    /// each `phi_{x,y}` must be an isomorphism
    PhiIso,
}

impl fmt::Display for ModuleAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleViolation {
    pub axiom: ModuleAxiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub violations: Vec<ModuleViolation>,
}

impl ModuleReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: ModuleAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ModuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> =
            self.violations.iter().map(|v| format!("{} at {:?}", v.axiom, v.witness)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone)]
pub struct SQModule {
    base: FiniteSymmetricRack,
    groups: Vec<FiniteAbelianGroup>,
    phi: Vec<Vec<AbHom>>,
    psi: Vec<Vec<AbHom>>,
    eta: Vec<AbHom>,
}

impl fmt::Debug for SQModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SQModule over {:?} with groups {:?}", self.base, self.groups)
    }
}

impl SQModule {
    /// Shape-check the data without validating the axioms.
    pub fn from_parts(
        base: FiniteSymmetricRack,
        groups: Vec<FiniteAbelianGroup>,
        phi: Vec<Vec<AbHom>>,
        psi: Vec<Vec<AbHom>>,
        eta: Vec<AbHom>,
    ) -> Result<Self> {
        let n = base.n();
        if groups.len() != n || phi.len() != n || psi.len() != n || eta.len() != n {
            return Err(Error::Structure("module tables must be indexed by the base".into()));
        }
        for x in 0..n {
            if phi[x].len() != n || psi[x].len() != n {
                return Err(Error::Structure("phi and psi must be n x n".into()));
            }
            for y in 0..n {
                let t = base.op(x, y);
                if phi[x][y].src != groups[x] || phi[x][y].dst != groups[t] {
                    return Err(Error::Structure(format!(
                        "phi[{x}][{y}] must map A_{x} -> A_{t}"
                    )));
                }
                if psi[x][y].src != groups[y] || psi[x][y].dst != groups[t] {
                    return Err(Error::Structure(format!(
                        "psi[{x}][{y}] must map A_{y} -> A_{t}"
                    )));
                }
            }
            let r = base.rho(x);
            if eta[x].src != groups[x] || eta[x].dst != groups[r] {
                return Err(Error::Structure(format!("eta[{x}] must map A_{x} -> A_{r}")));
            }
        }
        Ok(SQModule { base, groups, phi, psi, eta })
    }

    /// Shape-check and validate; errors carry the full violation report.
    pub fn new(
        base: FiniteSymmetricRack,
        groups: Vec<FiniteAbelianGroup>,
        phi: Vec<Vec<AbHom>>,
        psi: Vec<Vec<AbHom>>,
        eta: Vec<AbHom>,
    ) -> Result<Self> {
        let m = Self::from_parts(base, groups, phi, psi, eta)?;
        let report = m.validate();
        if !report.is_empty() {
            return Err(Error::ModuleInvalid(report));
        }
        Ok(m)
    }

    pub fn base(&self) -> &FiniteSymmetricRack {
        &self.base
    }

    pub fn group(&self, x: usize) -> &FiniteAbelianGroup {
        &self.groups[x]
    }

    pub fn groups(&self) -> &[FiniteAbelianGroup] {
        &self.groups
    }

    pub fn phi(&self, x: usize, y: usize) -> &AbHom {
        &self.phi[x][y]
    }

    pub fn psi(&self, x: usize, y: usize) -> &AbHom {
        &self.psi[x][y]
    }

    pub fn eta(&self, x: usize) -> &AbHom {
        &self.eta[x]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.groups.windows(2).all(|w| w[0] == w[1])
    }

    /// Exhaustive check of M1-M8 (and M9 on quandle bases), reporting every
    /// violated axiom with a witness triple. Debugging hand-entered modules
    /// needs the full list, not the first failure.
    pub fn validate(&self) -> ModuleReport {
        let n = self.base.n();
        let mut report = ModuleReport::default();
        let push = |axiom: ModuleAxiom, witness: Vec<usize>, report: &mut ModuleReport| {
            if !report.violations.iter().any(|v| v.axiom == axiom && v.witness == witness) {
                report.violations.push(ModuleViolation { axiom, witness });
            }
        };
        let compose = |a: &AbHom, b: &AbHom| AbHom::compose(a, b).expect("shape-checked");
        for x in 0..n {
            for y in 0..n {
                if !self.phi[x][y].is_iso() {
                    push(ModuleAxiom::PhiIso, vec![x, y], &mut report);
                }
            }
        }
        // M1, M2, M7 quantify over triples
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let xy = self.base.op(x, y);
                    let xz = self.base.op(x, z);
                    let yz = self.base.op(y, z);
                    let m1l = compose(&self.phi[xy][z], &self.phi[x][y]);
                    let m1r = compose(&self.phi[xz][yz], &self.phi[x][z]);
                    if !AbHom::equal(&m1l, &m1r) {
                        push(ModuleAxiom::M1, vec![x, y, z], &mut report);
                    }
                    let m2l = compose(&self.phi[xy][z], &self.psi[x][y]);
                    let m2r = compose(&self.psi[xz][yz], &self.phi[y][z]);
                    if !AbHom::equal(&m2l, &m2r) {
                        push(ModuleAxiom::M2, vec![x, y, z], &mut report);
                    }
                    let m7l = self.psi[xy][z].clone();
                    let m7r = AbHom::add(
                        &compose(&self.phi[xz][yz], &self.psi[x][z]),
                        &compose(&self.psi[xz][yz], &self.psi[y][z]),
                    )
                    .expect("shape-checked");
                    if !AbHom::equal(&m7l, &m7r) {
                        push(ModuleAxiom::M7, vec![x, y, z], &mut report);
                    }
                }
            }
        }
        for x in 0..n {
            let rx = self.base.rho(x);
            let m3 = compose(&self.eta[rx], &self.eta[x]);
            if !m3.is_identity() {
                push(ModuleAxiom::M3, vec![x], &mut report);
            }
            for y in 0..n {
                let xy = self.base.op(x, y);
                let ry = self.base.rho(y);
                let m4l = compose(&self.eta[xy], &self.phi[x][y]);
                let m4r = compose(&self.phi[rx][y], &self.eta[x]);
                if !AbHom::equal(&m4l, &m4r) {
                    push(ModuleAxiom::M4, vec![x, y], &mut report);
                }
                let m5l = self.psi[rx][y].clone();
                let m5r = compose(&self.eta[xy], &self.psi[x][y]);
                if !AbHom::equal(&m5l, &m5r) {
                    push(ModuleAxiom::M5, vec![x, y], &mut report);
                }
                let xdy = self.base.inv_op(x, y);
                let m6 = compose(&self.phi[xdy][y], &self.phi[x][ry]);
                if !m6.is_identity() {
                    push(ModuleAxiom::M6, vec![x, y], &mut report);
                }
                // M8: phi_{x *⁻¹ y, y} psi_{x, rho(y)} eta_y = -psi_{x * rho(y), y}
                let m8l = compose(&compose(&self.phi[xdy][y], &self.psi[x][ry]), &self.eta[y]);
                let m8r = AbHom::neg(&self.psi[self.base.op(x, ry)][y]);
                if !AbHom::equal(&m8l, &m8r) {
                    push(ModuleAxiom::M8, vec![x, y], &mut report);
                }
            }
        }
        if self.base.is_quandle() {
            for x in 0..n {
                let m9 = AbHom::add(&self.phi[x][x], &self.psi[x][x]).expect("shape-checked");
                if !m9.is_identity() {
                    push(ModuleAxiom::M9, vec![x], &mut report);
                }
            }
        }
        report
    }

    /// `A_x = A`, `phi = id`, `psi = 0`, `eta = -id`.
    pub fn trivial(base: FiniteSymmetricRack, coeff: &FiniteAbelianGroup) -> Result<Self> {
        let n = base.n();
        let id = AbHom::identity(coeff);
        let zero = AbHom::zero(coeff, coeff);
        let neg = AbHom::scalar(coeff, -1);
        Self::new(
            base,
            vec![coeff.clone(); n],
            vec![vec![id; n]; n],
            vec![vec![zero; n]; n],
            vec![neg; n],
        )
    }

    /// `phi = alpha`, `psi = 0`, `eta = beta` for commuting involutive
    /// automorphisms of a common group.
    pub fn involutive_pair(
        base: FiniteSymmetricRack,
        alpha: &AbHom,
        beta: &AbHom,
    ) -> Result<Self> {
        if alpha.src != alpha.dst || beta.src != beta.dst || alpha.src != beta.src {
            return Err(Error::Structure(
                "alpha and beta must be endomorphisms of one group".into(),
            ));
        }
        let coeff = alpha.src.clone();
        let check = |name: &str, h: &AbHom| -> Result<()> {
            let sq = AbHom::compose(h, h).expect("endomorphism");
            if !sq.is_identity() {
                return Err(Error::Structure(format!("{name}^2 = id fails")));
            }
            Ok(())
        };
        check("alpha", alpha)?;
        check("beta", beta)?;
        let ab = AbHom::compose(alpha, beta).expect("endomorphism");
        let ba = AbHom::compose(beta, alpha).expect("endomorphism");
        if !AbHom::equal(&ab, &ba) {
            return Err(Error::Structure("alpha and beta must commute".into()));
        }
        let n = base.n();
        let zero = AbHom::zero(&coeff, &coeff);
        Self::new(
            base,
            vec![coeff.clone(); n],
            vec![vec![alpha.clone(); n]; n],
            vec![vec![zero; n]; n],
            vec![beta.clone(); n],
        )
    }

    /// `phi(a) = -a`, `psi(a) = 2a`, `eta(a) = -a`; requires every element
    /// of the coefficient group to have order dividing 4.
    pub fn order4(base: FiniteSymmetricRack, coeff: &FiniteAbelianGroup) -> Result<Self> {
        for d in coeff.factors() {
            let d = i64::try_from(d).unwrap_or(i64::MAX);
            if d != 2 && d != 4 {
                return Err(Error::Structure(
                    "order-4 module needs invariant factors in {2, 4}".into(),
                ));
            }
        }
        let n = base.n();
        let neg = AbHom::scalar(coeff, -1);
        let two = AbHom::scalar(coeff, 2);
        Self::new(
            base,
            vec![coeff.clone(); n],
            vec![vec![neg.clone(); n]; n],
            vec![vec![two; n]; n],
            vec![neg; n],
        )
    }

    /// One coefficient group and one commuting involutive pair `(f, g)` per
    /// orbit of the action generated by right translations and `rho`;
    /// `phi_{x,y} = f_{[x]}`, `psi = 0`, `eta_x = g_{[x]}`.
    pub fn orbit(
        base: FiniteSymmetricRack,
        per_orbit: &[(FiniteAbelianGroup, AbHom, AbHom)],
    ) -> Result<Self> {
        let orbit_ids = base.orbits_with_rho();
        let count = base.orbit_count();
        if per_orbit.len() != count {
            return Err(Error::Structure(format!(
                "expected data for {count} orbits, got {}",
                per_orbit.len()
            )));
        }
        for (i, (a, f, g)) in per_orbit.iter().enumerate() {
            if f.src != *a || f.dst != *a || g.src != *a || g.dst != *a {
                return Err(Error::Structure(format!("orbit {i}: maps must be endomorphisms")));
            }
            if !AbHom::compose(f, f).expect("endo").is_identity()
                || !AbHom::compose(g, g).expect("endo").is_identity()
            {
                return Err(Error::Structure(format!("orbit {i}: f and g must be involutive")));
            }
            let fg = AbHom::compose(f, g).expect("endo");
            let gf = AbHom::compose(g, f).expect("endo");
            if !AbHom::equal(&fg, &gf) {
                return Err(Error::Structure(format!("orbit {i}: f and g must commute")));
            }
        }
        let n = base.n();
        let groups: Vec<FiniteAbelianGroup> =
            (0..n).map(|x| per_orbit[orbit_ids[x]].0.clone()).collect();
        let mut phi = Vec::with_capacity(n);
        let mut psi = Vec::with_capacity(n);
        let mut eta = Vec::with_capacity(n);
        for x in 0..n {
            let ox = orbit_ids[x];
            phi.push(vec![per_orbit[ox].1.clone(); n]);
            psi.push((0..n).map(|y| AbHom::zero(&groups[y], &groups[x])).collect());
            eta.push(per_orbit[ox].2.clone());
        }
        Self::new(base, groups, phi, psi, eta)
    }
}

/// A map of modules over the same base: a family `f_x: A_x -> A'_x` that
/// commutes with all three structure maps.
#[derive(Debug, Clone)]
pub struct XMap {
    pub components: Vec<AbHom>,
}

impl XMap {
    pub fn identity(m: &SQModule) -> Self {
        XMap { components: m.groups().iter().map(AbHom::identity).collect() }
    }

    pub fn zero(src: &SQModule, dst: &SQModule) -> Self {
        XMap {
            components: src
                .groups()
                .iter()
                .zip(dst.groups())
                .map(|(a, b)| AbHom::zero(a, b))
                .collect(),
        }
    }
}

/// True iff the three naturality squares commute for all `x, y`.
pub fn validate_xmap(src: &SQModule, dst: &SQModule, f: &XMap) -> Result<bool> {
    if src.base() != dst.base() {
        return Err(Error::Structure("XMap requires a shared base".into()));
    }
    let n = src.base().n();
    if f.components.len() != n {
        return Err(Error::Structure("XMap must have one component per element".into()));
    }
    for x in 0..n {
        if f.components[x].src != *src.group(x) || f.components[x].dst != *dst.group(x) {
            return Err(Error::Structure(format!("component {x} has wrong source or target")));
        }
    }
    let compose = |a: &AbHom, b: &AbHom| AbHom::compose(a, b).expect("shape-checked");
    for x in 0..n {
        let rx = src.base().rho(x);
        let el = compose(&dst.eta(x).clone(), &f.components[x]);
        let er = compose(&f.components[rx], src.eta(x));
        if !AbHom::equal(&el, &er) {
            return Ok(false);
        }
        for y in 0..n {
            let xy = src.base().op(x, y);
            let pl = compose(dst.phi(x, y), &f.components[x]);
            let pr = compose(&f.components[xy], src.phi(x, y));
            if !AbHom::equal(&pl, &pr) {
                return Ok(false);
            }
            let sl = compose(dst.psi(x, y), &f.components[y]);
            let sr = compose(&f.components[xy], src.psi(x, y));
            if !AbHom::equal(&sl, &sr) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::GroupTable;

    fn unknot() -> FiniteSymmetricRack {
        FiniteSymmetricRack::make_trivial(2, &[1, 0]).unwrap()
    }

    fn r3() -> FiniteSymmetricRack {
        FiniteSymmetricRack::make_core(&GroupTable::cyclic(3), None).unwrap()
    }

    fn flip_rack() -> FiniteSymmetricRack {
        FiniteSymmetricRack::from_op(vec![vec![1, 1], vec![0, 0]], vec![0, 1], false).unwrap()
    }

    #[test]
    fn trivial_module_validates() {
        let m = SQModule::trivial(unknot(), &FiniteAbelianGroup::new(&[2])).unwrap();
        assert!(m.validate().is_empty());
        assert!(m.is_homogeneous());
        // over Z/2, eta = -id coincides with id
        assert!(m.eta(0).is_identity());

        let m = SQModule::trivial(r3(), &FiniteAbelianGroup::free(1)).unwrap();
        assert!(m.validate().is_empty());
        assert!(!m.eta(0).is_identity());

        let m = SQModule::trivial(unknot(), &FiniteAbelianGroup::trivial()).unwrap();
        assert!(m.validate().is_empty());
    }

    #[test]
    fn order4_module_examples() {
        let m = SQModule::order4(unknot(), &FiniteAbelianGroup::new(&[4])).unwrap();
        assert!(m.validate().is_empty());
        let m = SQModule::order4(unknot(), &FiniteAbelianGroup::new(&[2])).unwrap();
        // coincides with phi = id, psi = 0 over Z/2
        assert!(m.phi(0, 1).is_identity());
        assert!(m.psi(0, 1).is_zero_hom());
        assert!(SQModule::order4(unknot(), &FiniteAbelianGroup::new(&[8])).is_err());
    }

    #[test]
    fn order4_data_over_z3_fails_m5_and_m8() {
        // same maps as the order-4 module but over Z/3, where 4a = 0 fails
        let base = unknot();
        let a = FiniteAbelianGroup::new(&[3]);
        let n = base.n();
        let neg = AbHom::scalar(&a, -1);
        let two = AbHom::scalar(&a, 2);
        let m = SQModule::from_parts(
            base,
            vec![a.clone(); n],
            vec![vec![neg.clone(); n]; n],
            vec![vec![two; n]; n],
            vec![neg; n],
        )
        .unwrap();
        let report = m.validate();
        assert!(report.has(ModuleAxiom::M5));
        assert!(report.has(ModuleAxiom::M8));
        assert!(!report.has(ModuleAxiom::M6));
        assert!(!report.has(ModuleAxiom::M9));
    }

    #[test]
    fn involutive_pair_examples() {
        let z5 = FiniteAbelianGroup::new(&[5]);
        let m = SQModule::involutive_pair(unknot(), &AbHom::identity(&z5), &AbHom::identity(&z5))
            .unwrap();
        assert!(m.validate().is_empty());

        // alpha = -id on Z/3: fine over a rack base, M9 fails over a quandle base
        let z3 = FiniteAbelianGroup::new(&[3]);
        let neg = AbHom::scalar(&z3, -1);
        let id = AbHom::identity(&z3);
        assert!(SQModule::involutive_pair(flip_rack(), &neg, &id).is_ok());
        match SQModule::involutive_pair(unknot(), &neg, &id) {
            Err(Error::ModuleInvalid(report)) => assert!(report.has(ModuleAxiom::M9)),
            other => panic!("expected M9 failure, got {other:?}"),
        }

        // alpha = coordinate swap on Z/2 + Z/2 over a rack base
        let v = FiniteAbelianGroup::new(&[2, 2]);
        let swap = AbHom::new(
            v.clone(),
            v.clone(),
            crate::abgrp::mat::Mat::from_rows_i64(&[vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        let m = SQModule::involutive_pair(flip_rack(), &swap, &AbHom::identity(&v)).unwrap();
        assert!(m.validate().is_empty());
        // non-involutive alpha rejected
        let z9 = FiniteAbelianGroup::new(&[9]);
        let two = AbHom::scalar(&z9, 2);
        assert!(matches!(
            SQModule::involutive_pair(unknot(), &two, &AbHom::identity(&z9)),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn orbit_module_examples() {
        // single orbit: unknot has one orbit because rho links the elements
        let z4 = FiniteAbelianGroup::new(&[4]);
        let m = SQModule::orbit(
            unknot(),
            &[(z4.clone(), AbHom::identity(&z4), AbHom::scalar(&z4, -1))],
        )
        .unwrap();
        assert!(m.validate().is_empty());

        // Z/6, f = g = id: trivial-like with eta = id
        let z6 = FiniteAbelianGroup::new(&[6]);
        let m = SQModule::orbit(r3(), &[(z6.clone(), AbHom::identity(&z6), AbHom::identity(&z6))])
            .unwrap();
        assert!(m.validate().is_empty());
        assert!(m.eta(0).is_identity());

        // two orbits with independent groups: valid but not homogeneous
        let tid = FiniteSymmetricRack::make_trivial(2, &[0, 1]).unwrap();
        let z2 = FiniteAbelianGroup::new(&[2]);
        let z3 = FiniteAbelianGroup::new(&[3]);
        let m = SQModule::orbit(
            tid,
            &[
                (z2.clone(), AbHom::identity(&z2), AbHom::identity(&z2)),
                (z3.clone(), AbHom::identity(&z3), AbHom::identity(&z3)),
            ],
        )
        .unwrap();
        assert!(m.validate().is_empty());
        assert!(!m.is_homogeneous());
    }

    #[test]
    fn xmap_validation() {
        let z4 = FiniteAbelianGroup::new(&[4]);
        let m = SQModule::trivial(unknot(), &z4).unwrap();
        assert!(validate_xmap(&m, &m, &XMap::identity(&m)).unwrap());
        assert!(validate_xmap(&m, &m, &XMap::zero(&m, &m)).unwrap());
        // multiplication by 2 commutes with id, 0 and -id
        let double = XMap { components: vec![AbHom::scalar(&z4, 2); 2] };
        assert!(validate_xmap(&m, &m, &double).unwrap());
        // mismatched bases are a structural error
        let other = SQModule::trivial(r3(), &z4).unwrap();
        assert!(validate_xmap(&m, &other, &XMap::identity(&m)).is_err());
    }
}
