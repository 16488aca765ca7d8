//! Semidirect decompositions `G = G2 ⋉ G1` and their commutant bookkeeping.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{rat_int, rational_string, PrimeSet};
use crate::burnside::BurnsideRing;
use crate::certificate::Certificate;
use crate::families::{splitting_coefficients, Family, SplittingCoefficients};
use crate::group::{SubgroupId, SubgroupLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemidirectError {
    #[error("invalid decomposition: {0}")]
    BadDecomposition(String),
    #[error("subgroup {0} is not normal")]
    NotNormal(SubgroupId),
    #[error("certificate {0} failed")]
    CheckFailed(String),
}

/// `G1` normal, `G2` a complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SemidirectDecomposition {
    pub normal_part: SubgroupId,
    pub complement: SubgroupId,
    pub coprime: bool,
}

impl SemidirectDecomposition {
    pub fn new(lattice: &SubgroupLattice, normal: SubgroupId, complement: SubgroupId) -> Result<Self, SemidirectError> {
        if normal >= lattice.len() || complement >= lattice.len() {
            return Err(SemidirectError::BadDecomposition("subgroup index out of range".into()));
        }
        if !lattice.is_normal(normal) {
            return Err(SemidirectError::BadDecomposition(format!("{} is not normal", lattice.describe(normal))));
        }
        if lattice.intersection(normal, complement) != lattice.trivial() {
            return Err(SemidirectError::BadDecomposition("factors meet nontrivially".into()));
        }
        let (a, b) = (lattice.order_of(normal), lattice.order_of(complement));
        if a * b != lattice.group().order() {
            return Err(SemidirectError::BadDecomposition(format!("orders {a} and {b} do not multiply to |G|")));
        }
        Ok(Self { normal_part: normal, complement, coprime: a.gcd(&b) == 1 })
    }

    pub fn to_json(&self, lattice: &SubgroupLattice) -> serde_json::Value {
        serde_json::json!({
            "normalPart": self.normal_part,
            "normalElements": lattice.subgroup(self.normal_part).elements(),
            "complement": self.complement,
            "complementElements": lattice.subgroup(self.complement).elements(),
            "coprime": self.coprime,
        })
    }
}

/// Complements of `normal`: subgroups of the complementary order meeting it trivially.
pub fn complements(lattice: &SubgroupLattice, normal: SubgroupId) -> Vec<SubgroupId> {
    let target = lattice.group().order() / lattice.order_of(normal);
    (0..lattice.len())
        .filter(|&k| lattice.order_of(k) == target && lattice.intersection(k, normal) == lattice.trivial())
        .collect()
}

/// One decomposition per proper nontrivial normal subgroup that has a complement.
pub fn find_decompositions(lattice: &SubgroupLattice) -> Vec<SemidirectDecomposition> {
    (1..lattice.len().saturating_sub(1))
        .filter(|&n| lattice.is_normal(n))
        .filter_map(|n| {
            let k = *complements(lattice, n).first()?;
            SemidirectDecomposition::new(lattice, n, k).ok()
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplementReport {
    pub normal: SubgroupId,
    pub complements: Vec<SubgroupId>,
    pub coprime: bool,
    /// Conjugacy classes among the complements.
    pub classes: usize,
    /// Present only for coprime orders: complements exist and are all conjugate.
    pub verdict: Option<bool>,
}

pub fn schur_zassenhaus(lattice: &SubgroupLattice, normal: SubgroupId) -> Result<ComplementReport, SemidirectError> {
    if !lattice.is_normal(normal) {
        return Err(SemidirectError::NotNormal(normal));
    }
    let list = complements(lattice, normal);
    let n = lattice.order_of(normal);
    let coprime = n.gcd(&(lattice.group().order() / n)) == 1;
    let classes: BTreeSet<usize> = list.iter().map(|&k| lattice.class_of(k)).collect();
    let verdict = coprime.then(|| !list.is_empty() && classes.len() == 1);
    Ok(ComplementReport { normal, complements: list, coprime, classes: classes.len(), verdict })
}

/// `P_K`, `K_P`, and the good subgroups on either side.
#[derive(Debug, Clone)]
pub struct CommutantData {
    pub decomposition: SemidirectDecomposition,
    /// `K -> P_K` for every `K` inside `G2`.
    pub p_of: BTreeMap<SubgroupId, SubgroupId>,
    /// `P -> K_P` for every `P` inside `G1`.
    pub k_of: BTreeMap<SubgroupId, SubgroupId>,
    /// The `G1`-good subgroups of `G2`.
    pub decent: BTreeSet<SubgroupId>,
    /// The `G2`-good subgroups of `G1`.
    pub g2_good: BTreeSet<SubgroupId>,
}

/// Maximal proper `G2`-good subgroups of `P_K` and the intersections they generate.
#[derive(Debug, Clone)]
pub struct InclusionExclusion {
    pub k: SubgroupId,
    pub p: SubgroupId,
    pub maximal: Vec<SubgroupId>,
    /// `(S as a bit mask, P_S, K_S)`
    pub terms: Vec<(u64, SubgroupId, SubgroupId)>,
}

impl CommutantData {
    pub fn compute(lattice: &SubgroupLattice, d: SemidirectDecomposition) -> Self {
        let side = |within: SubgroupId, of: SubgroupId| -> BTreeMap<SubgroupId, SubgroupId> {
            lattice
                .subgroups_of(of)
                .into_iter()
                .map(|x| (x, lattice.centralizer_in(within, lattice.subgroup(x).elements())))
                .collect()
        };
        let p_of = side(d.normal_part, d.complement);
        let k_of = side(d.complement, d.normal_part);
        let decent = p_of.iter().filter(|(k, p)| k_of[p] == **k).map(|(k, _)| *k).collect();
        let g2_good = p_of.values().copied().collect();
        Self { decomposition: d, p_of, k_of, decent, g2_good }
    }

    pub fn p(&self, k: SubgroupId) -> SubgroupId {
        self.p_of[&k]
    }

    pub fn k(&self, p: SubgroupId) -> SubgroupId {
        self.k_of[&p]
    }

    pub fn is_g1_good(&self, k: SubgroupId) -> bool {
        self.k_of.values().any(|&x| x == k)
    }

    pub fn inclusion_exclusion(&self, lattice: &SubgroupLattice, k: SubgroupId) -> InclusionExclusion {
        let p = self.p(k);
        let proper: Vec<SubgroupId> =
            self.g2_good.iter().copied().filter(|&q| q != p && lattice.contains(p, q)).collect();
        let maximal: Vec<SubgroupId> = proper
            .iter()
            .copied()
            .filter(|&q| !proper.iter().any(|&r| r != q && lattice.contains(r, q)))
            .collect();
        let n = maximal.len();
        assert!(n < 20, "too many maximal good subgroups for inclusion-exclusion");
        let terms = (0u64..1 << n)
            .map(|mask| {
                let ps = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(p, |acc, i| lattice.intersection(acc, maximal[i]));
                (mask, ps, self.k(ps))
            })
            .collect();
        InclusionExclusion { k, p, maximal, terms }
    }

    /// Each statement of the Galois-connection properties, evaluated exhaustively.
    pub fn correspondence_checks(&self, lattice: &SubgroupLattice) -> Vec<Certificate> {
        let d = self.decomposition;
        let g1 = lattice.subgroups_of(d.normal_part);
        let g2 = lattice.subgroups_of(d.complement);
        let mut out = Vec::new();

        let a_bad = g1.iter().find(|&&q| {
            let back = self.p(self.k(q));
            !lattice.contains(back, q) || (self.g2_good.contains(&q) && back != q)
        });
        out.push(check("closure-p", a_bad.is_none(), "P within P_{K_P}, equal on good P", a_bad));

        let b_bad = g2.iter().find(|&&k| {
            let back = self.k(self.p(k));
            !lattice.contains(back, k) || (self.is_g1_good(k) && back != k)
        });
        out.push(check("closure-k", b_bad.is_none(), "K within K_{P_K}, equal on good K", b_bad));

        let c_bad = pairs(&g2).find(|&(k1, k2)| {
            let forward = !lattice.contains(k2, k1) || lattice.contains(self.p(k1), self.p(k2));
            let converse = !(self.is_g1_good(k1) && self.is_g1_good(k2))
                || !lattice.contains(self.p(k1), self.p(k2))
                || lattice.contains(k2, k1);
            !(forward && converse)
        });
        out.push(check("order-reversing-k", c_bad.is_none(), "K1 in K2 iff P_K2 in P_K1 on good K", c_bad.as_ref().map(|x| &x.0)));

        let d_bad = pairs(&g1).find(|&(q1, q2)| {
            let forward = !lattice.contains(q2, q1) || lattice.contains(self.k(q1), self.k(q2));
            let converse = !(self.g2_good.contains(&q1) && self.g2_good.contains(&q2))
                || !lattice.contains(self.k(q1), self.k(q2))
                || lattice.contains(q2, q1);
            !(forward && converse)
        });
        out.push(check("order-reversing-p", d_bad.is_none(), "P1 in P2 iff K_P2 in K_P1 on good P", d_bad.as_ref().map(|x| &x.0)));

        let group = lattice.group();
        let e_bad = g2.iter().find(|&&k| {
            lattice.subgroup(d.complement).elements().iter().any(|&b| {
                let bi = group.inv(b);
                let moved = lattice.conjugate(k, bi);
                self.p(moved) != lattice.conjugate(self.p(k), bi)
                    || (self.is_g1_good(k) && !self.is_g1_good(moved))
            })
        });
        out.push(check("conjugation", e_bad.is_none(), "P_{b^-1 K b} = b^-1 P_K b", e_bad));

        let good: Vec<SubgroupId> = self.g2_good.iter().copied().collect();
        let f_bad = pairs(&good).find(|&(q1, q2)| !self.g2_good.contains(&lattice.intersection(q1, q2)));
        out.push(check("intersections", f_bad.is_none(), "good P closed under intersection", f_bad.as_ref().map(|x| &x.0)));

        let cc_bad = g2.iter().find(|&&k| {
            lattice.subgroup(d.normal_part).elements().iter().any(|&g| {
                lattice.contains(d.complement, lattice.conjugate(k, g)) != lattice.subgroup(self.p(k)).contains(g)
            })
        });
        out.push(check("commutant", cc_bad.is_none(), "g K g^-1 in G2 iff g in P_K", cc_bad));
        out
    }
}

fn pairs(v: &[SubgroupId]) -> impl Iterator<Item = (SubgroupId, SubgroupId)> + '_ {
    v.iter().flat_map(move |&a| v.iter().map(move |&b| (a, b)))
}

fn check(name: &str, passed: bool, what: &str, witness: Option<&SubgroupId>) -> Certificate {
    let detail = match witness {
        Some(w) => format!("{what}: fails at subgroup {w}"),
        None => what.to_string(),
    };
    Certificate::new(name, passed, detail)
}

#[derive(Debug, Clone)]
pub struct SemidirectReport {
    pub decomposition: SemidirectDecomposition,
    pub commutant: CommutantData,
    pub f1: SplittingCoefficients,
    pub f2: SplittingCoefficients,
    /// The five splitting certificates in order.
    pub certificates: Vec<Certificate>,
    pub good_subgroup_checks: Vec<Certificate>,
}

impl SemidirectReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().chain(&self.good_subgroup_checks).all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Certificate> {
        self.certificates.iter().chain(&self.good_subgroup_checks).find(|c| !c.passed)
    }

    /// Turns the report into an error when any check failed.
    pub fn into_result(self) -> Result<Self, SemidirectError> {
        match self.first_failure() {
            Some(c) => Err(SemidirectError::CheckFailed(c.name.clone())),
            None => Ok(self),
        }
    }

    pub fn to_json(&self, lattice: &SubgroupLattice) -> serde_json::Value {
        let c = &self.commutant;
        serde_json::json!({
            "decomposition": self.decomposition.to_json(lattice),
            "decent": c.decent.iter().collect::<Vec<_>>(),
            "commutants": c.p_of.iter().map(|(k, p)| serde_json::json!({"K": k, "P_K": p})).collect::<Vec<_>>(),
            "F1": self.f1.to_json(lattice),
            "F2": self.f2.to_json(lattice),
            "certificates": self.certificates,
            "goodSubgroupChecks": self.good_subgroup_checks,
        })
    }
}

/// Splits along `closure(G2)` and `closure(G1)` and checks every structural identity.
pub fn semidirect_report(lattice: &Arc<SubgroupLattice>, d: SemidirectDecomposition) -> SemidirectReport {
    let l = lattice.as_ref();
    let ring = BurnsideRing::top(lattice.clone());
    let f1 = splitting_coefficients(&ring, &Family::closure(l, &[d.complement]));
    let f2 = splitting_coefficients(&ring, &Family::closure(l, &[d.normal_part]));
    let commutant = CommutantData::compute(l, d);
    let g2_subs = l.subgroups_of(d.complement);
    let c = |h: SubgroupId| f1.of_subgroup(l, h);
    let n_in_g2 = |h: SubgroupId| l.intersection(l.normalizer(h), d.complement);
    let w_in_g2 = |h: SubgroupId| l.order_of(n_in_g2(h)) / l.order_of(h);

    let mut certificates = Vec::new();

    let stray: Vec<SubgroupId> =
        g2_subs.iter().copied().filter(|h| !commutant.decent.contains(h) && !c(*h).is_zero()).collect();
    certificates.push(Certificate::new(
        "support-on-good",
        stray.is_empty(),
        if stray.is_empty() {
            format!("c_H = 0 off the {} good subgroups of G2", commutant.decent.len())
        } else {
            format!("nonzero c_H at {stray:?}")
        },
    ));

    let mut relation_bad = Vec::new();
    for &k in &commutant.decent {
        let pk = l.order_of(commutant.p(k));
        let total = commutant
            .decent
            .iter()
            .filter(|&&h| l.contains(h, k))
            .fold(BigRational::zero(), |acc, &h| acc + c(h) * rat_int(pk * w_in_g2(h)));
        if !total.is_one() {
            relation_bad.push((k, rational_string(&total)));
        }
    }
    certificates.push(Certificate::new(
        "weighted-sum",
        relation_bad.is_empty(),
        if relation_bad.is_empty() {
            "sum over good H above K of c_H |P_K| |W_G2 H| is 1".to_string()
        } else {
            format!("sums differ from 1 at {relation_bad:?}")
        },
    ));

    let mut divide_bad = Vec::new();
    let mut divide_pairs = 0usize;
    for &k in &commutant.decent {
        let ie = commutant.inclusion_exclusion(l, k);
        let wk = w_in_g2(k) as i64;
        let nk = n_in_g2(k);
        for &h in commutant.decent.iter().filter(|&&h| h != k && l.contains(h, k)) {
            divide_pairs += 1;
            let alternating: i64 = ie
                .terms
                .iter()
                .filter(|(_, _, ks)| l.contains(h, *ks))
                .map(|(mask, ps, _)| {
                    let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                    sign * l.order_of(*ps) as i64
                })
                .sum();
            let nh = n_in_g2(h);
            let class_size = l.order_of(nk) / l.order_of(l.intersection(nk, nh));
            let value = (l.order_of(nh) / l.order_of(h)) as i64 * class_size as i64 * alternating;
            if value % wk != 0 {
                divide_bad.push((k, h, value, wk));
            }
        }
    }
    certificates.push(Certificate::new(
        "weyl-divides",
        divide_bad.is_empty(),
        if divide_bad.is_empty() {
            format!("|W_G2 K| divides the class sum for all {divide_pairs} pairs")
        } else {
            format!("divisibility fails at {divide_bad:?}")
        },
    ));

    let expected = BigRational::new(1.into(), (l.order_of(d.complement) as i64).into());
    let g1_class = l.class_of(d.normal_part);
    let complement_ok = f2
        .coeffs
        .iter()
        .enumerate()
        .all(|(i, v)| if i == g1_class { *v == expected } else { v.is_zero() });
    certificates.push(Certificate::new(
        "complement-family",
        complement_ok,
        format!("c_G1 = {} and every other coefficient vanishes", rational_string(f2.of_class(g1_class))),
    ));

    let g1_primes = PrimeSet::from_divisors([l.order_of(d.normal_part) as u64]);
    let g2_primes = PrimeSet::from_divisors([l.order_of(d.complement) as u64]);
    let bounds_ok = f1.denominator_primes.is_subset(&g1_primes) && f2.denominator_primes.is_subset(&g2_primes);
    certificates.push(Certificate::new(
        "denominators",
        !d.coprime || bounds_ok,
        format!(
            "F1 denominators {} within {}, F2 denominators {} within {}{}",
            f1.denominator_primes,
            g1_primes,
            f2.denominator_primes,
            g2_primes,
            if d.coprime { "" } else { " (orders not coprime, informational)" }
        ),
    ));

    let mut good_subgroup_checks = commutant.correspondence_checks(l);
    let constant = g2_subs
        .iter()
        .all(|&h| g2_subs.iter().all(|&h2| l.class_of(h) != l.class_of(h2) || c(h) == c(h2)));
    good_subgroup_checks.push(Certificate::new("class-constant", constant, "c_H constant on G2-conjugacy classes"));
    let ring_ok = f1.verify(&ring) && f2.verify(&ring);
    good_subgroup_checks.push(Certificate::new("marks-system", ring_ok, "both coefficient systems solve the marks equations"));

    SemidirectReport { decomposition: d, commutant, f1, f2, certificates, good_subgroup_checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::group::FiniteGroup;

    fn lattice(g: FiniteGroup) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(&g))
    }

    fn by_order(l: &SubgroupLattice, n: usize) -> SubgroupId {
        (0..l.len()).find(|&h| l.order_of(h) == n).unwrap()
    }

    fn normal_of_order(l: &SubgroupLattice, n: usize) -> SubgroupId {
        (0..l.len()).find(|&h| l.order_of(h) == n && l.is_normal(h)).unwrap()
    }

    #[test]
    fn d6_commutants() {
        let l = lattice(FiniteGroup::dihedral(6).unwrap());
        let c3 = by_order(&l, 3);
        let c2 = by_order(&l, 2);
        let d = SemidirectDecomposition::new(&l, c3, c2).unwrap();
        assert!(d.coprime);
        let data = CommutantData::compute(&l, d);
        assert_eq!(data.p(0), c3);
        assert_eq!(data.p(c2), 0);
        assert_eq!(data.decent, BTreeSet::from([0, c2]));
        assert!(crate::certificate::all_passed(&data.correspondence_checks(&l)));
    }

    #[test]
    fn rejects_bad_decompositions() {
        let l = lattice(FiniteGroup::dihedral(6).unwrap());
        let c2 = by_order(&l, 2);
        let c3 = by_order(&l, 3);
        assert!(SemidirectDecomposition::new(&l, c2, c3).is_err());
        assert!(SemidirectDecomposition::new(&l, c3, 0).is_err());
    }

    #[test]
    fn complement_counts() {
        let l = lattice(FiniteGroup::dihedral(6).unwrap());
        let r = schur_zassenhaus(&l, by_order(&l, 3)).unwrap();
        assert_eq!((r.complements.len(), r.classes, r.verdict), (3, 1, Some(true)));
        let l = lattice(FiniteGroup::alternating(4).unwrap());
        let r = schur_zassenhaus(&l, normal_of_order(&l, 4)).unwrap();
        assert_eq!((r.complements.len(), r.verdict), (4, Some(true)));
        let l = lattice(FiniteGroup::dihedral(8).unwrap());
        let c4 = (0..l.len()).find(|&h| l.order_of(h) == 4 && l.subgroup(h).elements() == [0, 1, 2, 3]).unwrap();
        assert_eq!(schur_zassenhaus(&l, c4).unwrap().verdict, None);
    }

    #[test]
    fn product_with_trivial_action() {
        let g = FiniteGroup::direct_product(&FiniteGroup::symmetric(3).unwrap(), &FiniteGroup::cyclic(5).unwrap()).unwrap();
        let l = lattice(g);
        let g1 = normal_of_order(&l, 5);
        let g2 = normal_of_order(&l, 6);
        let d = SemidirectDecomposition::new(&l, g1, g2).unwrap();
        let report = semidirect_report(&l, d);
        assert_eq!(report.commutant.decent, BTreeSet::from([g2]));
        assert!(report.commutant.p_of.values().all(|&p| p == g1));
        assert_eq!(*report.f1.of_subgroup(&l, g2), rat(1, 5));
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn desk_scale_certificates() {
        let cases = [
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::dihedral(10).unwrap(),
            FiniteGroup::dihedral(14).unwrap(),
            FiniteGroup::alternating(4).unwrap(),
            FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(),
        ];
        for g in cases {
            let l = lattice(g);
            let ds = find_decompositions(&l);
            let d = ds.iter().find(|d| d.coprime).copied().unwrap();
            let report = semidirect_report(&l, d);
            assert!(report.passed(), "{}: {:?}", l.group().label(), report.first_failure());
        }
    }

    #[test]
    fn a4_f2_value() {
        let l = lattice(FiniteGroup::alternating(4).unwrap());
        let v4 = normal_of_order(&l, 4);
        let d = SemidirectDecomposition::new(&l, v4, by_order(&l, 3)).unwrap();
        let report = semidirect_report(&l, d);
        assert_eq!(*report.f2.of_subgroup(&l, v4), rat(1, 3));
    }
}
