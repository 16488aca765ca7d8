//! Families of subgroups and the splitting coefficients `c_H`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, prime_factors, rat_int, rational_string, PrimeSet};
use crate::burnside::BurnsideRing;
use crate::group::{SubgroupId, SubgroupLattice};
use crate::semidirect::{find_decompositions, SemidirectDecomposition};

pub const FAMILY_CLASS_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{classes} subgroup classes exceed the family enumeration cap of {cap}")]
    TooManyFamilies { classes: usize, cap: usize },
    #[error("subgroup set is not closed under conjugation and subgroups")]
    NotAFamily,
}

/// A set of subgroups closed under conjugation and passage to subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Family {
    members: BTreeSet<SubgroupId>,
}

impl Family {
    pub fn empty() -> Self {
        Self { members: BTreeSet::new() }
    }

    pub fn all(lattice: &SubgroupLattice) -> Self {
        Self { members: (0..lattice.len()).collect() }
    }

    /// Smallest family containing `seeds`.
    pub fn closure(lattice: &SubgroupLattice, seeds: &[SubgroupId]) -> Self {
        let members = (0..lattice.len())
            .filter(|&k| seeds.iter().any(|&s| lattice.is_subconjugate(k, s)))
            .collect();
        Self { members }
    }

    /// Validates an explicit member set.
    pub fn from_members(lattice: &SubgroupLattice, members: BTreeSet<SubgroupId>) -> Result<Self, FamilyError> {
        let f = Self { members };
        if f.is_valid(lattice) {
            Ok(f)
        } else {
            Err(FamilyError::NotAFamily)
        }
    }

    fn from_classes(lattice: &SubgroupLattice, classes: impl Iterator<Item = usize>) -> Self {
        let mut members = BTreeSet::new();
        for c in classes {
            members.extend(lattice.classes()[c].members.iter().copied());
        }
        Self { members }
    }

    pub fn is_valid(&self, lattice: &SubgroupLattice) -> bool {
        self.members.iter().all(|&h| {
            lattice.classes()[lattice.class_of(h)].members.iter().all(|m| self.members.contains(m))
                && (0..lattice.len()).filter(|&k| lattice.contains(h, k)).all(|k| self.members.contains(&k))
        })
    }

    pub fn contains(&self, id: SubgroupId) -> bool {
        self.members.contains(&id)
    }

    pub fn members(&self) -> impl Iterator<Item = SubgroupId> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Conjugacy class indices of the members, ascending.
    pub fn class_indices(&self, lattice: &SubgroupLattice) -> Vec<usize> {
        let set: BTreeSet<usize> = self.members.iter().map(|&h| lattice.class_of(h)).collect();
        set.into_iter().collect()
    }

    pub fn contains_class(&self, lattice: &SubgroupLattice, class: usize) -> bool {
        self.contains(lattice.class_rep(class))
    }
}

/// Every family, including the empty one, ordered by size then members.
pub fn enumerate_families(lattice: &SubgroupLattice) -> Result<Vec<Family>, FamilyError> {
    let k = lattice.classes().len();
    if k > FAMILY_CLASS_CAP {
        return Err(FamilyError::TooManyFamilies { classes: k, cap: FAMILY_CLASS_CAP });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let inside = |c: usize| mask >> c & 1 == 1;
        let closed = (0..k).filter(|&c| inside(c)).all(|c| (0..k).all(|d| !lattice.class_subconjugate(d, c) || inside(d)));
        if closed {
            out.push(Family::from_classes(lattice, (0..k).filter(|&c| inside(c))));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

/// Coefficients with `sum_H c_H s(K, H) = 1` for every `K` in the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCoefficients {
    pub family: Family,
    /// One entry per conjugacy class of `G`; zero outside the family.
    pub coeffs: Vec<BigRational>,
    pub denominator_primes: PrimeSet,
}

impl SplittingCoefficients {
    pub fn of_class(&self, class: usize) -> &BigRational {
        &self.coeffs[class]
    }

    pub fn of_subgroup(&self, lattice: &SubgroupLattice, id: SubgroupId) -> &BigRational {
        &self.coeffs[lattice.class_of(id)]
    }

    /// Re-checks the defining system against the marks table.
    pub fn verify(&self, ring: &BurnsideRing) -> bool {
        let lattice = ring.lattice();
        let marks = ring.marks();
        self.family.class_indices(lattice).into_iter().all(|k| {
            let total = (0..self.coeffs.len())
                .fold(BigRational::zero(), |acc, h| acc + &self.coeffs[h] * rat_int(marks.mark(k, h)));
            total.is_one()
        }) && (0..self.coeffs.len()).all(|h| self.family.contains_class(lattice, h) || self.coeffs[h].is_zero())
    }

    pub fn to_json(&self, lattice: &SubgroupLattice) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .family
            .class_indices(lattice)
            .into_iter()
            .map(|c| {
                let rep = lattice.class_rep(c);
                serde_json::json!({
                    "class": c,
                    "rep": rep,
                    "name": lattice.describe(rep),
                    "order": lattice.order_of(rep),
                    "c": rational_string(&self.coeffs[c]),
                })
            })
            .collect();
        serde_json::json!({
            "family": self.family.members().collect::<Vec<_>>(),
            "coefficients": entries,
            "denominatorPrimes": self.denominator_primes.to_vec(),
        })
    }
}

fn denominator_primes<'a>(values: impl Iterator<Item = &'a BigRational>) -> PrimeSet {
    let mut set = BTreeSet::new();
    for v in values {
        if let Some(d) = v.denom().to_u64() {
            set.extend(prime_factors(d));
        }
    }
    PrimeSet::from_primes(set)
}

/// Back-substitution from larger to smaller classes inside the family.
pub fn splitting_coefficients(ring: &BurnsideRing, family: &Family) -> SplittingCoefficients {
    let lattice = ring.lattice();
    let marks = ring.marks();
    let n = ring.rank();
    let inside: Vec<usize> = family.class_indices(lattice);
    let mut coeffs = vec![BigRational::zero(); n];
    for &k in inside.iter().rev() {
        let mut rest = BigRational::one();
        for &h in inside.iter().filter(|&&h| h > k) {
            let s = marks.mark(k, h);
            if s != 0 {
                rest -= &coeffs[h] * rat_int(s);
            }
        }
        coeffs[k] = rest / rat_int(marks.mark(k, k));
    }
    let denominator_primes = denominator_primes(coeffs.iter());
    SplittingCoefficients { family: family.clone(), coeffs, denominator_primes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingTheorem {
    /// Invert every prime dividing `|G|`.
    Orderinvert,
    /// `G = D_2p` with the reflection or rotation family.
    Twosplit,
    /// A coprime semidirect product with one of its two standard families.
    Bigtwosplit,
}

#[derive(Debug, Clone)]
pub struct SplittingReport {
    pub coefficients: SplittingCoefficients,
    pub required_primes: PrimeSet,
    pub theorem: SplittingTheorem,
    /// Decomposition that triggered the sharpened bound, if any.
    pub decomposition: Option<SemidirectDecomposition>,
    /// Whether `sum c_H {G/H}` is integral over `Z[S^-1]` for the required primes.
    pub integral: bool,
}

impl SplittingReport {
    pub fn to_json(&self, lattice: &SubgroupLattice) -> serde_json::Value {
        serde_json::json!({
            "coefficients": self.coefficients.to_json(lattice),
            "requiredPrimes": self.required_primes.to_vec(),
            "theoremApplied": self.theorem,
            "decomposition": self.decomposition.as_ref().map(|d| d.to_json(lattice)),
            "integralOverRequiredPrimes": self.integral,
        })
    }
}

/// The prime `p` when `G` is dihedral of order `2p` with `p` an odd prime.
pub fn dihedral_prime(lattice: &SubgroupLattice) -> Option<u64> {
    let g = lattice.group();
    let n = g.order();
    if n % 2 != 0 || n < 6 {
        return None;
    }
    let p = (n / 2) as u64;
    (is_prime(p) && !g.is_abelian()).then_some(p)
}

/// Primes whose inversion splits `G` along `family`, with the rule that produced them.
pub fn splitting_primes(ring: &BurnsideRing, family: &Family) -> SplittingReport {
    let lattice = ring.lattice();
    let coefficients = splitting_coefficients(ring, family);
    let n = lattice.group().order() as u64;
    let mut rule = (SplittingTheorem::Orderinvert, PrimeSet::from_divisors([n]), None);
    let order_of = |f: &Family, target: usize| {
        (0..lattice.len()).filter(|&h| lattice.order_of(h) == target).any(|h| Family::closure(lattice, &[h]) == *f)
    };
    if let Some(p) = dihedral_prime(lattice) {
        if order_of(family, 2) {
            rule = (SplittingTheorem::Twosplit, PrimeSet::from_primes([p]), None);
        } else if order_of(family, p as usize) {
            rule = (SplittingTheorem::Twosplit, PrimeSet::from_primes([2]), None);
        }
    }
    if rule.0 == SplittingTheorem::Orderinvert {
        for d in find_decompositions(lattice).into_iter().filter(|d| d.coprime) {
            let g1 = lattice.order_of(d.normal_part) as u64;
            let g2 = lattice.order_of(d.complement) as u64;
            if Family::closure(lattice, &[d.complement]) == *family {
                rule = (SplittingTheorem::Bigtwosplit, PrimeSet::from_divisors([g1]), Some(d));
                break;
            }
            if Family::closure(lattice, &[d.normal_part]) == *family {
                rule = (SplittingTheorem::Bigtwosplit, PrimeSet::from_divisors([g2]), Some(d));
                break;
            }
        }
    }
    let (theorem, bound, decomposition) = rule;
    let required_primes = bound.union(&coefficients.denominator_primes);
    let integral = coefficients.denominator_primes.is_subset(&required_primes);
    SplittingReport { coefficients, required_primes, theorem, decomposition, integral }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LambdaToken {
    /// `E F_+`
    #[serde(rename = "PLUS")]
    Plus,
    /// `E~F`
    #[serde(rename = "TILDE")]
    Tilde,
}

/// For each class `[H]`, the choice `PLUS` on families containing `H` and `TILDE` elsewhere.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    pub families: Vec<Family>,
    /// `rows[class][family]`
    pub rows: Vec<Vec<LambdaToken>>,
}

impl LambdaTable {
    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<Vec<bool>> =
            self.rows.iter().map(|r| r.iter().map(|t| *t == LambdaToken::Plus).collect()).collect();
        distinct.len() == self.rows.len()
    }
}

pub fn lambda_classifier(lattice: &SubgroupLattice) -> Result<LambdaTable, FamilyError> {
    let families = enumerate_families(lattice)?;
    let rows = (0..lattice.classes().len())
        .map(|c| {
            families
                .iter()
                .map(|f| if f.contains_class(lattice, c) { LambdaToken::Plus } else { LambdaToken::Tilde })
                .collect()
        })
        .collect();
    Ok(LambdaTable { families, rows })
}

/// Convenience: the top Burnside ring of a lattice.
pub fn top_ring(lattice: &Arc<SubgroupLattice>) -> BurnsideRing {
    BurnsideRing::top(lattice.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::group::FiniteGroup;

    fn dihedral(order: usize) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(&FiniteGroup::dihedral(order).unwrap()))
    }

    fn by_order(l: &SubgroupLattice, n: usize) -> SubgroupId {
        (0..l.len()).find(|&h| l.order_of(h) == n).unwrap()
    }

    #[test]
    fn d6_families() {
        let l = dihedral(6);
        let f1 = Family::closure(&l, &[by_order(&l, 2)]);
        assert_eq!(f1.len(), 4);
        let f2 = Family::closure(&l, &[by_order(&l, 3)]);
        assert_eq!(f2.len(), 2);
        assert_eq!(Family::closure(&l, &[0]).len(), 1);
        assert_eq!(enumerate_families(&l).unwrap().len(), 6);
    }

    #[test]
    fn dihedral_coefficients() {
        for p in [3i64, 5, 7] {
            let l = dihedral(2 * p as usize);
            let ring = top_ring(&l);
            let f1 = Family::closure(&l, &[by_order(&l, 2)]);
            let c = splitting_coefficients(&ring, &f1);
            assert_eq!(c.coeffs[0], rat(1 - p, 2 * p));
            assert_eq!(c.coeffs[1], rat(1, 1));
            assert!(c.verify(&ring));
            assert_eq!(c.denominator_primes, PrimeSet::from_primes([p as u64]));
            let f2 = Family::closure(&l, &[by_order(&l, p as usize)]);
            let c = splitting_coefficients(&ring, &f2);
            assert_eq!(c.coeffs[0], rat(0, 1));
            assert_eq!(*c.of_subgroup(&l, by_order(&l, p as usize)), rat(1, 2));
            let report = splitting_primes(&ring, &f1);
            assert_eq!(report.theorem, SplittingTheorem::Twosplit);
            assert_eq!(report.required_primes, PrimeSet::from_primes([p as u64]));
            assert!(report.integral);
        }
    }

    #[test]
    fn full_family_of_d6() {
        let l = dihedral(6);
        let ring = top_ring(&l);
        let c = splitting_coefficients(&ring, &Family::all(&l));
        assert_eq!(c.coeffs, vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn lambda_is_injective_on_d6() {
        let l = dihedral(6);
        let t = lambda_classifier(&l).unwrap();
        assert!(t.is_injective());
        assert_eq!(t.rows.len(), 4);
    }

    #[test]
    fn coprime_product_sharpens_primes() {
        let g = FiniteGroup::direct_product(&FiniteGroup::symmetric(3).unwrap(), &FiniteGroup::cyclic(5).unwrap()).unwrap();
        let l = Arc::new(SubgroupLattice::new(&g));
        let c5 = by_order(&l, 5);
        let f2 = Family::closure(&l, &[c5]);
        let report = splitting_primes(&top_ring(&l), &f2);
        assert_eq!(report.theorem, SplittingTheorem::Bigtwosplit);
        assert_eq!(report.required_primes, PrimeSet::from_primes([2, 3]));
        assert_eq!(*report.coefficients.of_subgroup(&l, c5), rat(1, 6));
    }
}
