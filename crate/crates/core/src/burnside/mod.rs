//! Burnside rings `A(L)` of the subgroups `L` of a finite group.
//!
//! An element is a rational combination of orbits `{L/K}`, indexed by the
//! `L`-conjugacy classes of subgroups of `L` in canonical order.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{rat_int, LocalizationError, PrimeSet};
use crate::group::{LevelClasses, SubgroupId, SubgroupLattice};
use crate::linalg::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurnsideError {
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error("element lives at level {found}, expected level {expected}")]
    LevelMismatch { expected: SubgroupId, found: SubgroupId },
    #[error("subgroup {sub} is not contained in {sup}")]
    NotContained { sub: SubgroupId, sup: SubgroupId },
}

/// `s(K, H) = |(L/H)^K|` for class representatives `K`, `H` of a level `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableOfMarks {
    pub level: SubgroupId,
    /// Class representatives, ordered by increasing order.
    pub reps: Vec<SubgroupId>,
    /// `matrix[k][h] = s(K, H)`: rows are fixing subgroups, columns are orbits.
    pub matrix: Vec<Vec<u64>>,
}

impl TableOfMarks {
    pub fn compute(lattice: &SubgroupLattice, classes: &LevelClasses) -> Self {
        let g = lattice.group();
        let level = lattice.subgroup(classes.level).elements().to_vec();
        let reps = classes.reps();
        let matrix = reps
            .iter()
            .map(|&k| {
                reps.iter()
                    .map(|&h| {
                        let sh = lattice.subgroup(h);
                        if lattice.order_of(h) % lattice.order_of(k) != 0 {
                            return 0;
                        }
                        let hits = level
                            .iter()
                            .filter(|&&x| {
                                let conj = lattice.conjugate(k, g.inv(x));
                                lattice.subgroup(conj).is_subset_of(sh)
                            })
                            .count();
                        (hits / lattice.order_of(h)) as u64
                    })
                    .collect()
            })
            .collect();
        Self { level: classes.level, reps, matrix }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn mark(&self, k: usize, h: usize) -> u64 {
        self.matrix[k][h]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    pub level: SubgroupId,
    pub coeffs: Vec<BigRational>,
    pub primes: PrimeSet,
}

impl BurnsideElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            primes: self.primes.union(&other.primes),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|a| a * c).collect(), primes: self.primes.clone() }
    }

    /// Whether every coefficient lies in `Z[S^-1]`.
    pub fn is_integral_over(&self, primes: &PrimeSet) -> bool {
        self.coeffs.iter().all(|c| primes.is_unit(c.denom()))
    }
}

/// `A(L)` for one level `L`.
#[derive(Debug, Clone)]
pub struct BurnsideRing {
    lattice: Arc<SubgroupLattice>,
    classes: LevelClasses,
    marks: TableOfMarks,
}

impl BurnsideRing {
    pub fn new(lattice: Arc<SubgroupLattice>, level: SubgroupId) -> Self {
        let classes = lattice.level_classes(level);
        let marks = TableOfMarks::compute(&lattice, &classes);
        Self { lattice, classes, marks }
    }

    /// `A(G)`.
    pub fn top(lattice: Arc<SubgroupLattice>) -> Self {
        let whole = lattice.whole();
        Self::new(lattice, whole)
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn level(&self) -> SubgroupId {
        self.classes.level
    }

    pub fn classes(&self) -> &LevelClasses {
        &self.classes
    }

    pub fn marks(&self) -> &TableOfMarks {
        &self.marks
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn zero(&self, primes: &PrimeSet) -> BurnsideElement {
        BurnsideElement { level: self.level(), coeffs: vec![BigRational::zero(); self.rank()], primes: primes.clone() }
    }

    /// The basis element `{L/K}` for class index `k`.
    pub fn orbit(&self, k: usize) -> BurnsideElement {
        let mut coeffs = vec![BigRational::zero(); self.rank()];
        coeffs[k] = BigRational::one();
        BurnsideElement { level: self.level(), coeffs, primes: PrimeSet::empty() }
    }

    /// The class index of a subgroup of the level.
    pub fn class_of(&self, id: SubgroupId) -> usize {
        self.classes.class_index(id)
    }

    pub fn element(&self, coeffs: Vec<BigRational>, primes: PrimeSet) -> Result<BurnsideElement, BurnsideError> {
        let e = BurnsideElement { level: self.level(), coeffs, primes: primes.clone() };
        self.check_integral(&e)?;
        Ok(e)
    }

    fn check_integral(&self, e: &BurnsideElement) -> Result<(), BurnsideError> {
        for c in &e.coeffs {
            if !e.primes.is_unit(c.denom()) {
                return Err(LocalizationError::InsufficientPrimes {
                    denominator: c.denom().clone(),
                    allowed: e.primes.clone(),
                }
                .into());
            }
        }
        Ok(())
    }

    fn check_level(&self, e: &BurnsideElement) -> Result<(), BurnsideError> {
        if e.level != self.level() {
            return Err(BurnsideError::LevelMismatch { expected: self.level(), found: e.level });
        }
        Ok(())
    }

    /// Ghost coordinates `m_K = sum_H c_H s(K, H)`.
    pub fn marks_vector(&self, x: &BurnsideElement) -> Vec<BigRational> {
        (0..self.rank())
            .map(|k| {
                x.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(BigRational::zero(), |acc, (h, c)| acc + c * rat_int(self.marks.mark(k, h)))
            })
            .collect()
    }

    /// Solves the triangular marks system back to orbit coordinates over `Z[S^-1]`.
    pub fn from_marks(&self, m: &[BigRational], primes: &PrimeSet) -> Result<BurnsideElement, BurnsideError> {
        let coeffs = self.solve_marks(m);
        self.element(coeffs, primes.clone())
    }

    /// Orbit coordinates with prescribed marks, over `Q`.
    pub fn solve_marks(&self, m: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank();
        let mut c = vec![BigRational::zero(); n];
        for k in (0..n).rev() {
            let mut rest = m[k].clone();
            for (h, ch) in c.iter().enumerate().skip(k + 1) {
                let s = self.marks.mark(k, h);
                if s != 0 && !ch.is_zero() {
                    rest -= ch * rat_int(s);
                }
            }
            c[k] = rest / rat_int(self.marks.mark(k, k));
        }
        c
    }

    pub fn multiply(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.check_level(x)?;
        self.check_level(y)?;
        let mx = self.marks_vector(x);
        let my = self.marks_vector(y);
        let product: Vec<BigRational> = mx.iter().zip(&my).map(|(a, b)| a * b).collect();
        self.from_marks(&product, &x.primes.union(&y.primes))
    }

    /// The idempotent `e_K` whose marks are the indicator of class `k`.
    pub fn idempotent(&self, k: usize, primes: &PrimeSet) -> Result<BurnsideElement, BurnsideError> {
        let mut m = vec![BigRational::zero(); self.rank()];
        m[k] = BigRational::one();
        self.from_marks(&m, primes)
    }

    pub fn idempotent_basis(&self, primes: &PrimeSet) -> Result<Vec<BurnsideElement>, BurnsideError> {
        (0..self.rank()).map(|k| self.idempotent(k, primes)).collect()
    }

    /// Primes needed to split off every idempotent: those dividing `|L|`.
    pub fn splitting_primes(&self) -> PrimeSet {
        PrimeSet::from_divisors([self.lattice.order_of(self.level()) as u64])
    }

    /// Matrix of `res^L_M : A(L) -> A(M)` in orbit bases, by orbit decomposition of cosets.
    pub fn restriction_matrix(&self, to: &BurnsideRing) -> Result<RatMatrix, BurnsideError> {
        let (lat, big, small) = (&self.lattice, self.level(), to.level());
        if !lat.contains(big, small) {
            return Err(BurnsideError::NotContained { sub: small, sup: big });
        }
        let g = lat.group();
        let small_elems = lat.subgroup(small).elements().to_vec();
        let big_elems = lat.subgroup(big).elements().to_vec();
        let mut m = RatMatrix::zeros(to.rank(), self.rank());
        for h in 0..self.rank() {
            let rep = self.classes.rep(h);
            let hs = lat.subgroup(rep);
            // cosets yH inside the level, keyed by their smallest element
            let mut coset_of = vec![usize::MAX; g.order()];
            let mut coset_reps = Vec::new();
            for &y in &big_elems {
                if coset_of[y] == usize::MAX {
                    for &x in hs.elements() {
                        coset_of[g.mul(y, x)] = coset_reps.len();
                    }
                    coset_reps.push(y);
                }
            }
            let mut seen = vec![false; coset_reps.len()];
            for (c, &y) in coset_reps.iter().enumerate() {
                if seen[c] {
                    continue;
                }
                for &l in &small_elems {
                    seen[coset_of[g.mul(l, y)]] = true;
                }
                let stab = lat.intersection(small, lat.conjugate(rep, y));
                let k = to.class_of(stab);
                *m.get_mut(k, h) += BigRational::one();
            }
        }
        Ok(m)
    }

    /// Matrix of `tr_M^L : A(M) -> A(L)` where `self` is the smaller level `M`.
    pub fn transfer_matrix(&self, to: &BurnsideRing) -> Result<RatMatrix, BurnsideError> {
        let (small, big) = (self.level(), to.level());
        if !self.lattice.contains(big, small) {
            return Err(BurnsideError::NotContained { sub: small, sup: big });
        }
        let mut m = RatMatrix::zeros(to.rank(), self.rank());
        for k in 0..self.rank() {
            *m.get_mut(to.class_of(self.classes.rep(k)), k) += BigRational::one();
        }
        Ok(m)
    }

    /// Matrix of `c_g : A(L) -> A(gLg^-1)`; `to` must be the ring at `gLg^-1`.
    pub fn conjugation_matrix(&self, to: &BurnsideRing, g: usize) -> RatMatrix {
        assert_eq!(self.lattice.conjugate(self.level(), g), to.level(), "target level must be the conjugate");
        let mut m = RatMatrix::zeros(to.rank(), self.rank());
        for k in 0..self.rank() {
            let image = self.lattice.conjugate(self.classes.rep(k), g);
            *m.get_mut(to.class_of(image), k) += BigRational::one();
        }
        m
    }

    pub fn restrict(&self, to: &BurnsideRing, x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.check_level(x)?;
        let m = self.restriction_matrix(to)?;
        Ok(BurnsideElement { level: to.level(), coeffs: m.mul_vec(&x.coeffs), primes: x.primes.clone() })
    }

    pub fn transfer(&self, to: &BurnsideRing, x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.check_level(x)?;
        let m = self.transfer_matrix(to)?;
        Ok(BurnsideElement { level: to.level(), coeffs: m.mul_vec(&x.coeffs), primes: x.primes.clone() })
    }

    pub fn conjugate(&self, to: &BurnsideRing, g: usize, x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        self.check_level(x)?;
        let m = self.conjugation_matrix(to, g);
        Ok(BurnsideElement { level: to.level(), coeffs: m.mul_vec(&x.coeffs), primes: x.primes.clone() })
    }

    /// Total number of points `sum_H c_H |L/H|`.
    pub fn cardinality(&self, x: &BurnsideElement) -> BigRational {
        let l = self.lattice.order_of(self.level());
        x.coeffs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (h, c)| {
                acc + c * BigRational::from_integer(BigInt::from(l / self.lattice.order_of(self.classes.rep(h))))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::group::FiniteGroup;

    fn d6() -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(&FiniteGroup::dihedral(6).unwrap()))
    }

    #[test]
    fn d6_marks() {
        let a = BurnsideRing::top(d6());
        let expect = vec![vec![6, 3, 2, 1], vec![0, 1, 0, 1], vec![0, 0, 2, 1], vec![0, 0, 0, 1]];
        assert_eq!(a.marks().matrix, expect);
    }

    #[test]
    fn d6_orbit_product() {
        let a = BurnsideRing::top(d6());
        // G/C2 x G/C2 = G/C2 + G/e
        let x = a.orbit(1);
        let p = a.multiply(&x, &x).unwrap();
        assert_eq!(p.coeffs, vec![rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn d6_idempotent_of_whole_group() {
        let a = BurnsideRing::top(d6());
        let e = a.idempotent(3, &PrimeSet::from_primes([2, 3])).unwrap();
        assert_eq!(e.coeffs, vec![rat(1, 2), rat(-1, 1), rat(-1, 2), rat(1, 1)]);
        assert!(a.idempotent(0, &PrimeSet::from_primes([2])).is_err());
        assert!(a.idempotent(3, &PrimeSet::from_primes([2])).is_ok());
    }

    #[test]
    fn d6_restriction_to_c3() {
        let lat = d6();
        let a = BurnsideRing::top(lat.clone());
        let c3 = lat.find(&[0, 1, 2]).unwrap();
        let b = BurnsideRing::new(lat, c3);
        // G/C2 restricted to C3 is one free orbit
        let r = a.restrict(&b, &a.orbit(1)).unwrap();
        assert_eq!(r.coeffs, vec![rat(1, 1), rat(0, 1)]);
        let t = b.transfer(&a, &b.orbit(1)).unwrap();
        assert_eq!(t.coeffs, a.orbit(2).coeffs);
    }
}
