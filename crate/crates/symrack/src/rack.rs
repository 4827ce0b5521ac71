//! Finite symmetric racks and symmetric quandles as dense operation tables.
//!
//! Elements are the indices `0..n-1`. A rack stores both `op[x][y] = x * y`
//! and the right-division table `inv_op[x][y] = x *⁻¹ y` together with the
//! good involution `rho`; the division table shows up in enough formulas
//! (F3, M6, M8, the degree-1 boundary) that recomputing it everywhere would
//! be wasteful.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RackAxiom {
    /// Every right translation `x ↦ x * y` is a bijection.
    RightBijectivity,
    /// `(x*y)*z = (x*z)*(y*z)`
    Distributivity,
    /// `inv_op[op[x][y]][y] = x` and `op[inv_op[x][y]][y] = x`
    InverseRoundTrip,
    /// `rho(rho(x)) = x`
    S1,
    /// `rho(x*y) = rho(x)*y`
    S2,
    /// `x*rho(y) = x *⁻¹ y`
    S3,
    /// `x*x = x` (quandles only)
    Idempotency,
}

impl fmt::Display for RackAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RackAxiom::RightBijectivity => "right-bijectivity",
            RackAxiom::Distributivity => "distributivity",
            RackAxiom::InverseRoundTrip => "inverse-round-trip",
            RackAxiom::S1 => "S1",
            RackAxiom::S2 => "S2",
            RackAxiom::S3 => "S3",
            RackAxiom::Idempotency => "idempotency",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RackViolation {
    pub axiom: RackAxiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<RackViolation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: RackAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> =
            self.violations.iter().map(|v| format!("{} at {:?}", v.axiom, v.witness)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSymmetricRack {
    n: usize,
    op: Vec<Vec<usize>>,
    inv_op: Vec<Vec<usize>>,
    rho: Vec<usize>,
    quandle: bool,
}

impl fmt::Debug for FiniteSymmetricRack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteSymmetricRack(n={}, quandle={}, rho={:?})",
            self.n, self.quandle, self.rho
        )
    }
}

fn check_shape(op: &[Vec<usize>], inv_op: &[Vec<usize>], rho: &[usize]) -> Result<usize> {
    let n = op.len();
    if n == 0 {
        return Err(Error::Structure("empty racks are rejected (∂_1 needs a basepoint)".into()));
    }
    if inv_op.len() != n || rho.len() != n {
        return Err(Error::Structure("op, inv_op and rho must have matching sizes".into()));
    }
    for row in op.iter().chain(inv_op.iter()) {
        if row.len() != n {
            return Err(Error::Structure("operation tables must be square".into()));
        }
        if let Some(&e) = row.iter().find(|&&e| e >= n) {
            return Err(Error::Structure(format!("table entry {e} out of range 0..{n}")));
        }
    }
    if let Some(&e) = rho.iter().find(|&&e| e >= n) {
        return Err(Error::Structure(format!("rho entry {e} out of range 0..{n}")));
    }
    Ok(n)
}

/// Check every symmetric rack/quandle axiom, reporting all violations with
/// witnesses. Shape problems are a structural error, not a report entry.
pub fn validate_tables(
    op: &[Vec<usize>],
    inv_op: &[Vec<usize>],
    rho: &[usize],
    quandle: bool,
) -> Result<ValidationReport> {
    let n = check_shape(op, inv_op, rho)?;
    let mut report = ValidationReport::default();
    // right translations bijective
    for y in 0..n {
        let mut seen = vec![false; n];
        for x in 0..n {
            seen[op[x][y]] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            report
                .violations
                .push(RackViolation { axiom: RackAxiom::RightBijectivity, witness: vec![missing, y] });
        }
    }
    // self-distributivity
    'dist: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op[op[x][y]][z] != op[op[x][z]][op[y][z]] {
                    report.violations.push(RackViolation {
                        axiom: RackAxiom::Distributivity,
                        witness: vec![x, y, z],
                    });
                    continue 'dist;
                }
            }
        }
    }
    // division table round trip
    for x in 0..n {
        for y in 0..n {
            if inv_op[op[x][y]][y] != x || op[inv_op[x][y]][y] != x {
                report.violations.push(RackViolation {
                    axiom: RackAxiom::InverseRoundTrip,
                    witness: vec![x, y],
                });
            }
        }
    }
    // good involution
    for x in 0..n {
        if rho[rho[x]] != x {
            report.violations.push(RackViolation { axiom: RackAxiom::S1, witness: vec![x] });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if rho[op[x][y]] != op[rho[x]][y] {
                report.violations.push(RackViolation { axiom: RackAxiom::S2, witness: vec![x, y] });
            }
            if op[x][rho[y]] != inv_op[x][y] {
                report.violations.push(RackViolation { axiom: RackAxiom::S3, witness: vec![x, y] });
            }
        }
    }
    if quandle {
        for x in 0..n {
            if op[x][x] != x {
                report
                    .violations
                    .push(RackViolation { axiom: RackAxiom::Idempotency, witness: vec![x] });
            }
        }
    }
    Ok(report)
}

impl FiniteSymmetricRack {
    pub fn new(
        op: Vec<Vec<usize>>,
        inv_op: Vec<Vec<usize>>,
        rho: Vec<usize>,
        quandle: bool,
    ) -> Result<Self> {
        let report = validate_tables(&op, &inv_op, &rho, quandle)?;
        if !report.is_empty() {
            return Err(Error::RackInvalid(report));
        }
        Ok(FiniteSymmetricRack { n: op.len(), op, inv_op, rho, quandle })
    }

    /// Build from the operation table alone, deriving the division table by
    /// inverting right translations.
    pub fn from_op(op: Vec<Vec<usize>>, rho: Vec<usize>, quandle: bool) -> Result<Self> {
        let inv_op = derive_inv_op(&op)?;
        Self::new(op, inv_op, rho, quandle)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv_op[x][y]
    }

    pub fn rho(&self, x: usize) -> usize {
        self.rho[x]
    }

    pub fn is_quandle(&self) -> bool {
        self.quandle
    }

    pub fn op_table(&self) -> &[Vec<usize>] {
        &self.op
    }

    pub fn inv_op_table(&self) -> &[Vec<usize>] {
        &self.inv_op
    }

    pub fn rho_table(&self) -> &[usize] {
        &self.rho
    }

    /// Left fold `[x_1 ... x_k] = ((x_1*x_2)*x_3)*...*x_k`.
    pub fn fold(&self, word: &[usize]) -> usize {
        let mut acc = word[0];
        for &x in &word[1..] {
            acc = self.op[acc][x];
        }
        acc
    }

    /// Trivial quandle `x * y = x` with a chosen good involution.
    pub fn make_trivial(n: usize, involution: &[usize]) -> Result<Self> {
        if involution.len() != n {
            return Err(Error::Structure("involution length must equal n".into()));
        }
        if (0..n).any(|x| involution[x] >= n || involution[involution[x]] != x) {
            return Err(Error::Structure("rho must be a self-inverse permutation".into()));
        }
        let op: Vec<Vec<usize>> = (0..n).map(|x| vec![x; n]).collect();
        Self::from_op(op, involution.to_vec(), true)
    }

    /// Conjugation quandle of a group: `x * y = y⁻¹ x y`, `rho(x) = x⁻¹`.
    pub fn make_conj(group: &GroupTable) -> Result<Self> {
        let n = group.order();
        let op: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| group.mul(group.mul(group.inv(y), x), y)).collect())
            .collect();
        let rho: Vec<usize> = (0..n).map(|x| group.inv(x)).collect();
        Self::from_op(op, rho, true)
    }

    /// Core quandle of a group: `x * y = y x⁻¹ y`, with `rho = id` or
    /// `rho(y) = y z` for a central element `z` of order two.
    pub fn make_core(group: &GroupTable, central_involution: Option<usize>) -> Result<Self> {
        let n = group.order();
        let rho: Vec<usize> = match central_involution {
            None => (0..n).collect(),
            Some(z) => {
                if z >= n {
                    return Err(Error::Structure(format!("element {z} out of range")));
                }
                if group.mul(z, z) != group.identity() {
                    return Err(Error::Structure("z must have order dividing two".into()));
                }
                if (0..n).any(|g| group.mul(g, z) != group.mul(z, g)) {
                    return Err(Error::Structure("z must be central".into()));
                }
                (0..n).map(|y| group.mul(y, z)).collect()
            }
        };
        let op: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| group.mul(group.mul(y, group.inv(x)), y)).collect())
            .collect();
        Self::from_op(op, rho, true)
    }

    /// Componentwise product on index pairs, encoded as `x * other.n + y`.
    pub fn product(&self, other: &FiniteSymmetricRack) -> Result<Self> {
        let (na, nb) = (self.n, other.n);
        let n = na * nb;
        let enc = |a: usize, b: usize| a * nb + b;
        let mut op = vec![vec![0; n]; n];
        for xa in 0..na {
            for xb in 0..nb {
                for ya in 0..na {
                    for yb in 0..nb {
                        op[enc(xa, xb)][enc(ya, yb)] = enc(self.op(xa, ya), other.op(xb, yb));
                    }
                }
            }
        }
        let rho: Vec<usize> =
            (0..n).map(|e| enc(self.rho(e / nb), other.rho(e % nb))).collect();
        Self::from_op(op, rho, self.quandle && other.quandle)
    }

    /// Is `f` a symmetric rack homomorphism `self -> other`?
    pub fn is_hom(f: &[usize], src: &FiniteSymmetricRack, dst: &FiniteSymmetricRack) -> Result<bool> {
        if f.len() != src.n {
            return Err(Error::Structure("map must be total on the source".into()));
        }
        if let Some(&img) = f.iter().find(|&&img| img >= dst.n) {
            return Err(Error::Structure(format!("image {img} out of range")));
        }
        for x in 0..src.n {
            if f[src.rho(x)] != dst.rho(f[x]) {
                return Ok(false);
            }
            for y in 0..src.n {
                if f[src.op(x, y)] != dst.op(f[x], f[y]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Orbit index per element under all right translations together with
    /// `rho`. These are the coefficient classes for orbit modules: the maps
    /// `eta_x` land in `A_{rho(x)}`, so orbits must be rho-closed.
    pub fn orbits_with_rho(&self) -> Vec<usize> {
        let mut ids = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if ids[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            ids[start] = next;
            while let Some(x) = stack.pop() {
                let push = |z: usize, ids: &mut Vec<usize>, stack: &mut Vec<usize>| {
                    if ids[z] == usize::MAX {
                        ids[z] = next;
                        stack.push(z);
                    }
                };
                push(self.rho(x), &mut ids, &mut stack);
                for y in 0..self.n {
                    push(self.op(x, y), &mut ids, &mut stack);
                    push(self.inv_op(x, y), &mut ids, &mut stack);
                }
            }
            next += 1;
        }
        ids
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits_with_rho().iter().copied().max().map_or(0, |m| m + 1)
    }
}

pub fn derive_inv_op(op: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let n = op.len();
    let mut inv = vec![vec![0; n]; n];
    for y in 0..n {
        let mut seen = vec![false; n];
        for x in 0..n {
            let z = op[x][y];
            if z >= n {
                return Err(Error::Structure(format!("table entry {z} out of range")));
            }
            if seen[z] {
                return Err(Error::Structure(format!(
                    "right translation by {y} is not a bijection"
                )));
            }
            seen[z] = true;
            inv[z][y] = x;
        }
    }
    Ok(inv)
}

/// A finite group as a multiplication table, validated on construction.
#[derive(Debug, Clone)]
pub struct GroupTable {
    mult: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

impl GroupTable {
    pub fn new(mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::Structure("empty group table".into()));
        }
        for row in &mult {
            if row.len() != n || row.iter().any(|&e| e >= n) {
                return Err(Error::Structure("group table must be square and in-range".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mult[e][g] == g && mult[g][e] == g))
            .ok_or_else(|| Error::Structure("group axiom failed: no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            inv[g] = (0..n).find(|&h| mult[g][h] == identity && mult[h][g] == identity).ok_or_else(
                || Error::Structure(format!("group axiom failed: {g} has no inverse")),
            )?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::Structure(format!(
                            "group axiom failed: associativity at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { mult, identity, inv })
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn cyclic(n: usize) -> Self {
        let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(mult).expect("cyclic group table is valid")
    }

    /// S3 with elements `e, r, r², s, sr, sr²` (r of order 3, s of order 2).
    pub fn symmetric3() -> Self {
        // encode g = (i, j) as 3*j + i meaning r^i s^j with s r = r² s
        let enc = |i: usize, j: usize| 3 * j + i;
        let mut mult = vec![vec![0; 6]; 6];
        for i1 in 0..3 {
            for j1 in 0..2 {
                for i2 in 0..3 {
                    for j2 in 0..2 {
                        // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + i2*(2^j1)) s^(j1+j2)
                        let i = if j1 == 0 { (i1 + i2) % 3 } else { (i1 + 2 * i2) % 3 };
                        let j = (j1 + j2) % 2;
                        mult[enc(i1, j1)][enc(i2, j2)] = enc(i, j);
                    }
                }
            }
        }
        GroupTable::new(mult).expect("S3 table is valid")
    }

    pub fn klein4() -> Self {
        let mult: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        GroupTable::new(mult).expect("Klein table is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn core_z3() -> FiniteSymmetricRack {
        FiniteSymmetricRack::make_core(&GroupTable::cyclic(3), None).unwrap()
    }

    #[test]
    fn singleton_validates() {
        let r = FiniteSymmetricRack::make_trivial(1, &[0]).unwrap();
        let rep = validate_tables(r.op_table(), r.inv_op_table(), r.rho_table(), true).unwrap();
        assert!(rep.is_empty());
    }

    #[test]
    fn core_z3_is_dihedral_with_identity_involution() {
        let r = core_z3();
        // x * y = 2y - x mod 3
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(r.op(x, y), (2 * y + 2 * x) % 3);
            }
        }
        assert_eq!(r.rho_table(), &[0, 1, 2]);
        assert!(r.is_quandle());
    }

    #[test]
    fn corrupted_inverse_table_is_reported() {
        let r = FiniteSymmetricRack::make_trivial(2, &[0, 1]).unwrap();
        let mut inv = r.inv_op_table().to_vec();
        inv[0][1] = 1; // breaks op[inv_op[0][1]][1] = 0
        let rep = validate_tables(r.op_table(), &inv, r.rho_table(), true).unwrap();
        assert!(rep.has(RackAxiom::InverseRoundTrip));
        assert!(rep
            .violations
            .iter()
            .any(|v| v.axiom == RackAxiom::InverseRoundTrip && v.witness == vec![0, 1]));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let op = vec![vec![0, 0], vec![1, 1]];
        let inv = vec![vec![0, 0]];
        assert!(matches!(validate_tables(&op, &inv, &[0, 1], true), Err(Error::Structure(_))));
    }

    #[test]
    fn trivial_constructor() {
        let unknot = FiniteSymmetricRack::make_trivial(2, &[1, 0]).unwrap();
        assert!(unknot.is_quandle());
        assert_eq!(unknot.rho(0), 1);
        let r3 = FiniteSymmetricRack::make_trivial(3, &[1, 0, 2]).unwrap();
        assert_eq!(r3.n(), 3);
        assert!(FiniteSymmetricRack::make_trivial(3, &[1, 2, 0]).is_err());
    }

    #[test]
    fn conj_s3_rho_fixes_self_inverse_elements() {
        let g = GroupTable::symmetric3();
        let fixed_by_inversion = (0..6).filter(|&x| g.inv(x) == x).count();
        let r = FiniteSymmetricRack::make_conj(&g).unwrap();
        let fixed = (0..6).filter(|&x| r.rho(x) == x).count();
        assert_eq!(fixed, fixed_by_inversion);
        assert_eq!(fixed, 4);
    }

    #[test]
    fn conj_of_abelian_groups() {
        let r = FiniteSymmetricRack::make_conj(&GroupTable::cyclic(2)).unwrap();
        assert_eq!(r.rho_table(), &[0, 1]);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(r.op(x, y), x);
            }
        }
        let r4 = FiniteSymmetricRack::make_conj(&GroupTable::cyclic(4)).unwrap();
        assert_eq!(r4.rho_table(), &[0, 3, 2, 1]);
    }

    #[test]
    fn core_z4_with_central_involution() {
        let r = FiniteSymmetricRack::make_core(&GroupTable::cyclic(4), Some(2)).unwrap();
        assert_eq!(r.rho_table(), &[2, 3, 0, 1]);
        assert!(FiniteSymmetricRack::make_core(&GroupTable::cyclic(4), Some(1)).is_err());
        let core_z2 = FiniteSymmetricRack::make_core(&GroupTable::cyclic(2), None).unwrap();
        assert_eq!(core_z2.op(0, 1), 0);
    }

    #[test]
    fn products() {
        let unknot = FiniteSymmetricRack::make_trivial(2, &[1, 0]).unwrap();
        let single = FiniteSymmetricRack::make_trivial(1, &[0]).unwrap();
        let p = unknot.product(&single).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.rho_table(), unknot.rho_table());

        let q = unknot.product(&unknot).unwrap();
        assert_eq!(q.n(), 4);
        assert_eq!(q.rho_table(), &[3, 2, 1, 0]);

        let r = core_z3().product(&unknot).unwrap();
        assert_eq!(r.n(), 6);
        assert!(r.is_quandle());
    }

    #[test]
    fn hom_checking() {
        let unknot = FiniteSymmetricRack::make_trivial(2, &[1, 0]).unwrap();
        let r3 = core_z3();
        assert!(FiniteSymmetricRack::is_hom(&[0, 1], &unknot, &unknot).unwrap());
        assert!(FiniteSymmetricRack::is_hom(&[0, 0, 0], &r3, &r3).unwrap());
        // swap into trivial(2, swap) from trivial(2, id) does not respect rho
        let tid = FiniteSymmetricRack::make_trivial(2, &[0, 1]).unwrap();
        assert!(!FiniteSymmetricRack::is_hom(&[1, 0], &tid, &unknot).unwrap());
        assert!(FiniteSymmetricRack::is_hom(&[9, 0], &tid, &unknot).is_err());
    }

    #[test]
    fn orbits() {
        let unknot = FiniteSymmetricRack::make_trivial(2, &[1, 0]).unwrap();
        assert_eq!(unknot.orbit_count(), 1); // rho links the two elements
        let tid = FiniteSymmetricRack::make_trivial(2, &[0, 1]).unwrap();
        assert_eq!(tid.orbit_count(), 2);
        assert_eq!(core_z3().orbit_count(), 1);
    }

    #[test]
    fn flip_rack_is_a_non_quandle_symmetric_rack() {
        // x * y = 1 - x on two elements: a rack whose translations all flip
        let op = vec![vec![1, 1], vec![0, 0]];
        let r = FiniteSymmetricRack::from_op(op, vec![0, 1], false).unwrap();
        assert!(!r.is_quandle());
        assert_eq!(r.op(0, 0), 1);
    }
}
