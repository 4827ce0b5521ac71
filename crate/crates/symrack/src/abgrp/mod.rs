//! Finitely generated abelian groups in invariant-factor form and
//! homomorphisms between them as congruence-respecting integer matrices.
//!
//! A group is `⊕ Z/d_i` with `d_i = 0` encoding a `Z` summand. Elements are
//! coordinate vectors relative to the factors; all subgroup and quotient
//! computations adjoin the congruence columns `d_i e_i` and run through one
//! Smith-normal-form code path, so `Z` and torsion summands never need
//! separate handling.

pub mod mat;
pub mod snf;

use crate::error::Error;
use mat::Mat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use snf::{snf, Snf, Solver};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<BigInt>,
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FiniteAbelianGroup {
    /// Canonicalize an arbitrary factor list into the invariant-factor form
    /// `d_1 | d_2 | ...` with zeros last and no factor equal to 1.
    pub fn new(factors: &[i64]) -> Self {
        let big: Vec<BigInt> = factors.iter().map(|&d| BigInt::from(d)).collect();
        Self::new_big(&big)
    }

    pub fn new_big(factors: &[BigInt]) -> Self {
        let entries: Vec<BigInt> = factors.iter().map(Signed::abs).collect();
        let rels = Mat::diag(&entries);
        Self::from_relations(entries.len(), &rels)
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn zn(n: i64) -> Self {
        Self::new(&[n])
    }

    pub fn free(rank: usize) -> Self {
        FiniteAbelianGroup { factors: vec![BigInt::zero(); rank] }
    }

    /// The cokernel `Z^rank / col-span(rels)` in canonical form.
    pub fn from_relations(rank: usize, rels: &Mat) -> Self {
        assert_eq!(rels.rows(), rank, "relation matrix must have one row per generator");
        let s = snf(rels);
        let factors = keep_factors(&s, rank).into_iter().map(|(f, _)| f).collect();
        FiniteAbelianGroup { factors }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn factors_i64(&self) -> Vec<i64> {
        self.factors.iter().map(|d| i64::try_from(d).expect("factor fits i64")).collect()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|d| !d.is_zero())
    }

    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().product())
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        reduce_mod_factors(&self.factors, v)
    }

    pub fn eq_elem(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    pub fn congruence_cols(&self) -> Mat {
        congruence_cols(&self.factors)
    }

    /// All elements of a finite group as reduced coordinate vectors.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>, Error> {
        let sizes: Vec<i64> = self
            .factors
            .iter()
            .map(|d| i64::try_from(d).ok().filter(|&d| d > 0))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Resource("cannot enumerate an infinite group".into()))?;
        let total: i64 = sizes.iter().product();
        if total > 4_000_000 {
            return Err(Error::Resource(format!("group too large to enumerate: {total}")));
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0i64; sizes.len()];
        loop {
            out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
            let mut i = sizes.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < sizes[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

fn keep_factors(s: &Snf, rank: usize) -> Vec<(BigInt, usize)> {
    let mut kept = Vec::new();
    for j in 0..rank {
        let d = s.diag(j);
        if !d.is_one() {
            kept.push((d, j));
        }
    }
    // SNF chain puts 1s first, then nontrivial divisors, then zeros
    kept
}

pub fn reduce_mod_factors(factors: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(factors.len(), v.len(), "coordinate length mismatch");
    v.iter()
        .zip(factors)
        .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
        .collect()
}

pub fn congruence_cols(factors: &[BigInt]) -> Mat {
    let finite: Vec<usize> = (0..factors.len()).filter(|&i| !factors[i].is_zero()).collect();
    let mut m = Mat::zero(factors.len(), finite.len());
    for (j, &i) in finite.iter().enumerate() {
        m.set(i, j, factors[i].clone());
    }
    m
}

/// Generators of `{x : map x ≡ 0 (mod dst congruences)}` as a lattice in the
/// source coordinates. The lattice always contains the source congruences of
/// any well-defined hom.
pub fn lattice_kernel(map: &Mat, dst_factors: &[BigInt]) -> Mat {
    let c = congruence_cols(dst_factors);
    let full = Mat::hstack(&[map, &c]);
    let k = snf::kernel(&full);
    k.submatrix_rows(0, map.cols())
}

/// Any `x` with `map x ≡ target (mod dst congruences)`, or `None`.
pub fn lattice_solve(map: &Mat, dst_factors: &[BigInt], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = congruence_cols(dst_factors);
    let full = Mat::hstack(&[map, &c]);
    let sol = snf::solve(&full, target)?;
    Some(sol[..map.cols()].to_vec())
}

/// Reusable membership tester for the subgroup generated by `gens` columns
/// inside the ambient group with the given factors.
pub struct SpanSolver {
    solver: Solver,
    gen_cols: usize,
}

impl SpanSolver {
    pub fn new(ambient_factors: &[BigInt], gens: &Mat) -> Self {
        let c = congruence_cols(ambient_factors);
        let full = Mat::hstack(&[gens, &c]);
        SpanSolver { solver: Solver::new(&full), gen_cols: gens.cols() }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solver.is_solvable(v)
    }

    /// Coefficients over the generators expressing `v`, if any.
    pub fn express(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let sol = self.solver.solve(v)?;
        Some(sol[..self.gen_cols].to_vec())
    }
}

/// A subquotient `(Z + Λ)/(B + Λ)` in canonical form, with ambient
/// representatives for each canonical generator.
#[derive(Debug)]
pub struct Subquotient {
    pub group: FiniteAbelianGroup,
    /// Ambient coordinates of one representative per canonical generator.
    pub reps: Mat,
}

/// Compute `(span(z_gens) + Λ)/(span(b_gens) + Λ)` inside the ambient group
/// described by `ambient_factors`. Errors if some `b` generator is not in
/// the numerator, carrying the offending column index.
pub fn subquotient(
    ambient_factors: &[BigInt],
    z_gens: &Mat,
    b_gens: &Mat,
) -> Result<Subquotient, Error> {
    let rank = ambient_factors.len();
    assert_eq!(z_gens.rows(), rank);
    assert_eq!(b_gens.rows(), rank);
    let c = congruence_cols(ambient_factors);
    // containment check B ⊆ Z + Λ
    let zc = Mat::hstack(&[z_gens, &c]);
    let zc_solver = Solver::new(&zc);
    for j in 0..b_gens.cols() {
        if !zc_solver.is_solvable(&b_gens.col(j)) {
            return Err(Error::NotContained { generator: j });
        }
    }
    // relation lattice on the z generators: {c : Z c ∈ B + Λ}
    let all = Mat::hstack(&[z_gens, b_gens, &c]);
    let ker = snf::kernel(&all);
    let rels = ker.submatrix_rows(0, z_gens.cols());
    let s = snf(&rels);
    let kept = keep_factors(&s, z_gens.cols());
    let factors: Vec<BigInt> = kept.iter().map(|(f, _)| f.clone()).collect();
    let idx: Vec<usize> = kept.iter().map(|&(_, j)| j).collect();
    let reps = z_gens.mul(&s.u_inv.select_cols(&idx));
    Ok(Subquotient { group: FiniteAbelianGroup { factors }, reps })
}

/// Invariant factors of the subgroup generated by `gens` (canonical form of
/// `(span(gens)+Λ)/Λ`), with ambient representatives of its generators.
pub fn span_subgroup(ambient_factors: &[BigInt], gens: &Mat) -> Subquotient {
    let empty = Mat::zero(ambient_factors.len(), 0);
    subquotient(ambient_factors, gens, &empty).expect("trivial denominator is always contained")
}

/// A homomorphism of finitely generated abelian groups as an integer matrix
/// acting on factor coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct AbHom {
    pub src: FiniteAbelianGroup,
    pub dst: FiniteAbelianGroup,
    pub mat: Mat,
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom {} -> {} {:?}", self.src, self.dst, self.mat)
    }
}

impl AbHom {
    pub fn new(src: FiniteAbelianGroup, dst: FiniteAbelianGroup, mat: Mat) -> Result<Self, Error> {
        if mat.rows() != dst.rank() || mat.cols() != src.rank() {
            return Err(Error::Structure(format!(
                "hom matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                dst.rank(),
                src.rank()
            )));
        }
        for j in 0..src.rank() {
            let dj = &src.factors()[j];
            if dj.is_zero() {
                continue;
            }
            for i in 0..dst.rank() {
                let di = &dst.factors()[i];
                let prod = mat.at(i, j) * dj;
                let ok = if di.is_zero() { prod.is_zero() } else { prod.mod_floor(di).is_zero() };
                if !ok {
                    return Err(Error::Structure(format!(
                        "entry ({i},{j}) does not respect congruences: {} * {} mod {}",
                        mat.at(i, j),
                        dj,
                        di
                    )));
                }
            }
        }
        let mut h = AbHom { src, dst, mat };
        h.reduce_entries();
        Ok(h)
    }

    fn reduce_entries(&mut self) {
        for i in 0..self.dst.rank() {
            let d = self.dst.factors()[i].clone();
            if d.is_zero() {
                continue;
            }
            for j in 0..self.src.rank() {
                let e = self.mat.at(i, j).mod_floor(&d);
                self.mat.set(i, j, e);
            }
        }
    }

    pub fn identity(g: &FiniteAbelianGroup) -> Self {
        AbHom { src: g.clone(), dst: g.clone(), mat: Mat::identity(g.rank()) }
    }

    pub fn zero(src: &FiniteAbelianGroup, dst: &FiniteAbelianGroup) -> Self {
        AbHom { src: src.clone(), dst: dst.clone(), mat: Mat::zero(dst.rank(), src.rank()) }
    }

    /// Multiplication by the integer `c` as an endomorphism.
    pub fn scalar(g: &FiniteAbelianGroup, c: i64) -> Self {
        let mut h = AbHom {
            src: g.clone(),
            dst: g.clone(),
            mat: Mat::identity(g.rank()).scale(&BigInt::from(c)),
        };
        h.reduce_entries();
        h
    }

    pub fn compose(g: &AbHom, f: &AbHom) -> Result<AbHom, Error> {
        if f.dst != g.src {
            return Err(Error::Structure("compose: middle groups differ".into()));
        }
        let mut h = AbHom { src: f.src.clone(), dst: g.dst.clone(), mat: g.mat.mul(&f.mat) };
        h.reduce_entries();
        Ok(h)
    }

    pub fn add(f: &AbHom, g: &AbHom) -> Result<AbHom, Error> {
        if f.src != g.src || f.dst != g.dst {
            return Err(Error::Structure("add: source or target groups differ".into()));
        }
        let mut h = AbHom { src: f.src.clone(), dst: f.dst.clone(), mat: f.mat.add(&g.mat) };
        h.reduce_entries();
        Ok(h)
    }

    pub fn neg(f: &AbHom) -> AbHom {
        let mut h = AbHom { src: f.src.clone(), dst: f.dst.clone(), mat: f.mat.neg() };
        h.reduce_entries();
        h
    }

    /// Entrywise congruence modulo the target factors.
    pub fn equal(f: &AbHom, g: &AbHom) -> bool {
        if f.src != g.src || f.dst != g.dst {
            return false;
        }
        let mut a = f.clone();
        let mut b = g.clone();
        a.reduce_entries();
        b.reduce_entries();
        a.mat == b.mat
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && AbHom::equal(self, &AbHom::identity(&self.src))
    }

    pub fn is_zero_hom(&self) -> bool {
        AbHom::equal(self, &AbHom::zero(&self.src, &self.dst))
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.dst.reduce(&self.mat.mul_vec(v))
    }

    /// Generators of `ker f` as columns in source coordinates.
    pub fn kernel_gens(&self) -> Mat {
        lattice_kernel(&self.mat, self.dst.factors())
    }

    pub fn kernel_group(&self) -> FiniteAbelianGroup {
        span_subgroup(self.src.factors(), &self.kernel_gens()).group
    }

    /// Generators of `im f` as columns in target coordinates.
    pub fn image_gens(&self) -> Mat {
        self.mat.clone()
    }

    pub fn image_group(&self) -> FiniteAbelianGroup {
        span_subgroup(self.dst.factors(), &self.mat).group
    }

    pub fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = lattice_solve(&self.mat, self.dst.factors(), target)?;
        Some(self.src.reduce(&x))
    }

    pub fn cokernel(&self) -> FiniteAbelianGroup {
        let id = Mat::identity(self.dst.rank());
        subquotient(self.dst.factors(), &id, &self.mat)
            .expect("image is contained in the full group")
            .group
    }

    pub fn is_iso(&self) -> bool {
        self.kernel_group().is_trivial() && self.cokernel().is_trivial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mat::vec_i64;

    #[test]
    fn canonicalization() {
        assert_eq!(FiniteAbelianGroup::new(&[2, 3]).factors_i64(), vec![6]);
        assert_eq!(FiniteAbelianGroup::new(&[4, 2]).factors_i64(), vec![2, 4]);
        assert_eq!(FiniteAbelianGroup::new(&[1, 5]).factors_i64(), vec![5]);
        assert_eq!(FiniteAbelianGroup::new(&[0, 2]).factors_i64(), vec![2, 0]);
        assert_eq!(FiniteAbelianGroup::new(&[6, 4]).factors_i64(), vec![2, 12]);
        assert!(FiniteAbelianGroup::new(&[1, 1]).is_trivial());
    }

    #[test]
    fn compose_with_identity() {
        let g = FiniteAbelianGroup::new(&[4]);
        let f = AbHom::scalar(&g, 2);
        let c = AbHom::compose(&f, &AbHom::identity(&g)).unwrap();
        assert!(AbHom::equal(&c, &f));
    }

    #[test]
    fn iso_on_z4() {
        let g = FiniteAbelianGroup::new(&[4]);
        assert!(AbHom::scalar(&g, 3).is_iso());
        assert!(!AbHom::scalar(&g, 2).is_iso());
    }

    #[test]
    fn equal_mod_factors() {
        let g = FiniteAbelianGroup::new(&[4]);
        let a = AbHom::scalar(&g, 2);
        let b = AbHom::scalar(&g, 6);
        assert!(AbHom::equal(&a, &b));
    }

    #[test]
    fn subquotient_examples() {
        // Z^2 / <(2,0),(0,2)> = Z/2 + Z/2
        let z2 = FiniteAbelianGroup::free(2);
        let b = Mat::from_rows_i64(&[vec![2, 0], vec![0, 2]]);
        let q = subquotient(z2.factors(), &Mat::identity(2), &b).unwrap();
        assert_eq!(q.group.factors_i64(), vec![2, 2]);

        // B = Z gives the trivial group
        let q = subquotient(z2.factors(), &Mat::identity(2), &Mat::identity(2)).unwrap();
        assert!(q.group.is_trivial());

        // Z/4 / <2> = Z/2
        let z4 = FiniteAbelianGroup::new(&[4]);
        let b = Mat::from_rows_i64(&[vec![2]]);
        let q = subquotient(z4.factors(), &Mat::identity(1), &b).unwrap();
        assert_eq!(q.group.factors_i64(), vec![2]);
    }

    #[test]
    fn subquotient_containment_error() {
        // B = <(1,0)> is not inside Z = <(2,0)> + Λ in Z^2
        let z2 = FiniteAbelianGroup::free(2);
        let z = Mat::from_rows_i64(&[vec![2], vec![0]]);
        let b = Mat::from_rows_i64(&[vec![1], vec![0]]);
        match subquotient(z2.factors(), &z, &b) {
            Err(Error::NotContained { generator }) => assert_eq!(generator, 0),
            other => panic!("expected containment error, got {other:?}"),
        }
    }

    #[test]
    fn kernels_images_solves() {
        // x2 on Z has trivial kernel
        let z = FiniteAbelianGroup::free(1);
        let f = AbHom::scalar(&z, 2);
        assert!(f.kernel_group().is_trivial());

        // x2 on Z/4 has kernel <2> = Z/2
        let z4 = FiniteAbelianGroup::new(&[4]);
        let f = AbHom::scalar(&z4, 2);
        assert_eq!(f.kernel_group().factors_i64(), vec![2]);

        // 2x = 1 has no solution in Z/4
        assert!(f.solve(&vec_i64(&[1])).is_none());
        let sol = f.solve(&vec_i64(&[2])).expect("2x = 2 solvable");
        assert_eq!(f.apply(&sol), vec_i64(&[2]));
    }

    #[test]
    fn well_definedness_rejected() {
        // Z/2 -> Z/4 via 1 is not well-defined (1*2 != 0 mod 4)
        let z2 = FiniteAbelianGroup::new(&[2]);
        let z4 = FiniteAbelianGroup::new(&[4]);
        assert!(AbHom::new(z2.clone(), z4.clone(), Mat::from_rows_i64(&[vec![1]])).is_err());
        assert!(AbHom::new(z2, z4, Mat::from_rows_i64(&[vec![2]])).is_ok());
    }
}
