//! The acceptance suites: one named group of certificates per criterion.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{rat, rational_string, PrimeSet};
use crate::burnside::BurnsideRing;
use crate::certificate::{all_passed, Certificate};
use crate::families::{splitting_coefficients, splitting_primes, Family};
use crate::gcw::{
    bredon_chains, bredon_cohomology, bredon_homology, bredon_homology_at, burnside_homology_formula,
    dihedral_lattice, induced_map_on_homology, normalizer_chain_map, orbit_map_checks, GCWComplex, HomologyResult,
};
use crate::group::{FiniteGroup, SubgroupId, SubgroupLattice};
use crate::linalg::{AbelianGroup, Direction, InducedMap};
use crate::mackey::{box_product, constant_mackey, sub_functors};
use crate::oracle::product_orbit_counts;
use crate::roq::{self, tau_sign};
use crate::semidirect::{find_decompositions, semidirect_report, SemidirectDecomposition};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub millis: u128,
    pub certificates: Vec<Certificate>,
}

impl CriterionResult {
    /// One line: number, verdict, title and, on failure, the first failing check.
    pub fn summary(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {:>2} {verdict}: {} ({} checks, {} ms)",
            self.number,
            self.title,
            self.certificates.len(),
            self.millis
        );
        if let Some(c) = self.certificates.iter().find(|c| !c.passed) {
            line.push_str(&format!(" first failure {}: {}", c.name, c.detail));
        }
        line
    }
}

pub const TITLES: [&str; 11] = [
    "dihedral splitting coefficients",
    "localized idempotents",
    "Burnside multiplication against orbit counting",
    "Bredon homology with Burnside coefficients against the fixed-point formula",
    "C_p representation sphere values",
    "tau signs",
    "box products with the family complements vanish",
    "gluing of the localized dihedral rings",
    "positive cone against cellular Bredon cohomology",
    "semidirect product certificates",
    "classifying space torsion and orbit map lemmas",
];

fn lattice(g: FiniteGroup) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(&g))
}

fn by_order(l: &SubgroupLattice, n: usize) -> SubgroupId {
    (0..l.len()).find(|&h| l.order_of(h) == n).expect("subgroup of the given order")
}

fn err_cert(name: impl Into<String>, e: impl std::fmt::Display) -> Certificate {
    Certificate::fail(name, format!("error: {e}"))
}

/// The constructor groups of order at most 24 used by the Burnside suites.
pub fn small_groups() -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    let c = |n| FiniteGroup::cyclic(n).expect("cyclic");
    let times = |a: &FiniteGroup, b: &FiniteGroup| FiniteGroup::direct_product(a, b).expect("product");
    for n in 1..=24 {
        out.push(c(n));
    }
    for n in 2..=12 {
        out.push(FiniteGroup::dihedral(2 * n).expect("dihedral"));
    }
    out.push(FiniteGroup::alternating(4).expect("A4"));
    out.push(FiniteGroup::symmetric(4).expect("S4"));
    out.push(FiniteGroup::quaternion().expect("Q8"));
    for n in 3..=6 {
        out.push(FiniteGroup::dicyclic(n).expect("dicyclic"));
    }
    out.push(FiniteGroup::semidirect_cyclic(7, 3, 2).expect("C7:C3"));
    out.push(FiniteGroup::semidirect_cyclic(5, 4, 2).expect("C5:C4"));
    out.push(FiniteGroup::semidirect_cyclic(3, 4, 2).expect("C3:C4"));
    let s3 = FiniteGroup::symmetric(3).expect("S3");
    let a4 = FiniteGroup::alternating(4).expect("A4");
    let d8 = FiniteGroup::dihedral(8).expect("D8");
    let q8 = FiniteGroup::quaternion().expect("Q8");
    let v4 = times(&c(2), &c(2));
    out.extend([
        v4.clone(),
        times(&v4, &c(2)),
        times(&v4, &c(6)),
        times(&c(3), &c(3)),
        times(&c(2), &c(4)),
        times(&c(2), &c(6)),
        times(&c(4), &c(4)),
        times(&c(2), &c(8)),
        times(&c(2), &c(10)),
        times(&c(2), &c(12)),
        times(&s3, &c(2)),
        times(&s3, &c(3)),
        times(&s3, &c(4)),
        times(&a4, &c(2)),
        times(&d8, &c(2)),
        times(&q8, &c(2)),
        times(&q8, &c(3)),
        times(&d8, &c(3)),
    ]);
    out
}

/// Splitting coefficients and denominator primes for the two dihedral families.
pub fn criterion_1() -> Vec<Certificate> {
    let mut out = Vec::new();
    for p in [3u64, 5, 7] {
        let l = lattice(FiniteGroup::dihedral(2 * p as usize).expect("dihedral"));
        let ring = BurnsideRing::top(l.clone());
        let (c2, cp) = (by_order(&l, 2), by_order(&l, p as usize));
        let f1 = Family::closure(&l, &[c2]);
        let f2 = Family::closure(&l, &[cp]);
        let s1 = splitting_coefficients(&ring, &f1);
        let s2 = splitting_coefficients(&ring, &f2);
        let pi = p as i64;
        let want1 = (rat(1 - pi, 2 * pi), rat(1, 1));
        let got1 = (s1.of_subgroup(&l, l.trivial()).clone(), s1.of_subgroup(&l, c2).clone());
        out.push(Certificate::new(
            format!("D{}-F1-coefficients", 2 * p),
            got1 == want1 && s1.verify(&ring),
            format!("c_1 = {}, c_C2 = {}", rational_string(&got1.0), rational_string(&got1.1)),
        ));
        let want2 = (BigRational::zero(), rat(1, 2));
        let got2 = (s2.of_subgroup(&l, l.trivial()).clone(), s2.of_subgroup(&l, cp).clone());
        out.push(Certificate::new(
            format!("D{}-F2-coefficients", 2 * p),
            got2 == want2 && s2.verify(&ring),
            format!("c_1 = {}, c_Cp = {}", rational_string(&got2.0), rational_string(&got2.1)),
        ));
        out.push(Certificate::new(
            format!("D{}-denominators", 2 * p),
            s1.denominator_primes == PrimeSet::from_primes([p]) && s2.denominator_primes == PrimeSet::from_primes([2]),
            format!("F1: {}, F2: {}", s1.denominator_primes, s2.denominator_primes),
        ));
        let r1 = splitting_primes(&ring, &f1);
        let r2 = splitting_primes(&ring, &f2);
        out.push(Certificate::new(
            format!("D{}-required-primes", 2 * p),
            r1.required_primes == PrimeSet::from_primes([p]) && r2.required_primes == PrimeSet::from_primes([2]),
            format!("F1: {}, F2: {}", r1.required_primes, r2.required_primes),
        ));
    }
    out
}

fn idempotent_checks(g: &FiniteGroup) -> Certificate {
    let name = format!("idempotents[{}]", g.label());
    let l = lattice(g.clone());
    let ring = BurnsideRing::top(l.clone());
    let primes = PrimeSet::from_divisors([g.order() as u64]);
    let es = match ring.idempotent_basis(&primes) {
        Ok(es) => es,
        Err(e) => return err_cert(name, e),
    };
    let one = ring.orbit(ring.class_of(l.whole()));
    let mut sum = ring.zero(&primes);
    let mut problems = Vec::new();
    for (h, e) in es.iter().enumerate() {
        sum = sum.add(e);
        let marks = ring.marks_vector(e);
        if marks.iter().enumerate().any(|(k, v)| if k == h { !v.is_one() } else { !v.is_zero() }) {
            problems.push(format!("marks of e_{h}"));
        }
        for (k, f) in es.iter().enumerate() {
            match ring.multiply(e, f) {
                Ok(prod) => {
                    let expect = if h == k { e.coeffs.clone() } else { vec![BigRational::zero(); ring.rank()] };
                    if prod.coeffs != expect {
                        problems.push(format!("e_{h} e_{k}"));
                    }
                }
                Err(err) => problems.push(err.to_string()),
            }
        }
    }
    if sum.coeffs != one.coeffs {
        problems.push("sum is not 1".into());
    }
    Certificate::new(name, problems.is_empty(), format!("{} classes; {}", ring.rank(), problems.join(", ")))
}

/// Orthogonal idempotents summing to 1 with indicator marks.
pub fn criterion_2() -> Vec<Certificate> {
    small_groups().iter().map(idempotent_checks).collect()
}

/// Marks multiplication against direct orbit counting of `G/H × G/K`.
pub fn criterion_3() -> Vec<Certificate> {
    small_groups()
        .iter()
        .map(|g| {
            let l = lattice(g.clone());
            let ring = BurnsideRing::top(l.clone());
            let reps = ring.classes().reps();
            let mut bad = Vec::new();
            for (i, &h) in reps.iter().enumerate() {
                for (j, &k) in reps.iter().enumerate().skip(i) {
                    let counts = product_orbit_counts(&l, ring.classes(), h, k);
                    match ring.multiply(&ring.orbit(i), &ring.orbit(j)) {
                        Ok(x) => {
                            let want: Vec<BigRational> = counts.iter().map(|&c| rat(c as i64, 1)).collect();
                            if x.coeffs != want {
                                bad.push(format!("({i},{j})"));
                            }
                        }
                        Err(e) => bad.push(e.to_string()),
                    }
                }
            }
            Certificate::new(
                format!("burnside-oracle[{}]", g.label()),
                bad.is_empty(),
                format!("{} pairs; mismatches {}", reps.len() * (reps.len() + 1) / 2, bad.join(" ")),
            )
        })
        .collect()
}

/// Genuine `D_6`-complexes: orbits, spheres, joins, smashes, products and a skeleton.
pub fn d6_complexes(l: &Arc<SubgroupLattice>) -> Result<Vec<(String, GCWComplex)>, crate::gcw::GcwError> {
    let c2 = by_order(l, 2);
    let c3 = by_order(l, 3);
    let sigma = GCWComplex::sphere_sigma_d2p(l)?;
    let gamma = GCWComplex::sphere_gamma_d2p(l)?;
    Ok(vec![
        ("point".into(), GCWComplex::point(l)),
        ("G/C2".into(), GCWComplex::orbit(l, c2)),
        ("G/C3".into(), GCWComplex::orbit(l, c3)),
        ("G/e".into(), GCWComplex::orbit(l, l.trivial())),
        ("G/e x D1".into(), GCWComplex::orbit_interval(l, l.trivial())),
        ("G/C2 x D1".into(), GCWComplex::orbit_interval(l, c2)),
        ("S^sigma".into(), sigma.clone()),
        ("S^gamma".into(), gamma.clone()),
        ("S^(sigma+gamma)".into(), sigma.smash(&gamma)?),
        ("S^(2 sigma)".into(), sigma.smash(&sigma)?),
        ("S^(2 sigma+gamma)".into(), GCWComplex::sphere_d2p(l, 2, 1)?),
        ("G/C2 * G/C3".into(), GCWComplex::orbit(l, c2).join(&GCWComplex::orbit(l, c3))?),
        ("G/e * (G/C2 x D1)".into(), GCWComplex::orbit(l, l.trivial()).join(&GCWComplex::orbit_interval(l, c2))?),
        ("G/C2 x G/C3".into(), GCWComplex::orbit(l, c2).product(&GCWComplex::orbit(l, c3))?),
        ("EG skeleton".into(), GCWComplex::eg_skeleton(l, 4)?),
    ])
}

/// Bredon homology with `A_G` equals the fixed-point formula at every level.
pub fn criterion_4() -> Vec<Certificate> {
    let l = match dihedral_lattice(3) {
        Ok(l) => l,
        Err(e) => return vec![err_cert("D6", e)],
    };
    let a = crate::mackey::burnside_mackey(&l, &PrimeSet::empty());
    let xs = match d6_complexes(&l) {
        Ok(xs) => xs,
        Err(e) => return vec![err_cert("D6-complexes", e)],
    };
    xs.iter()
        .map(|(name, x)| {
            let mut bad = Vec::new();
            for level in 0..l.len() {
                match (bredon_homology_at(x, &a, level), burnside_homology_formula(x, level)) {
                    (Ok(lhs), Ok(rhs)) if lhs.same_as(&rhs) => {}
                    (Ok(lhs), Ok(rhs)) => bad.push(format!("{}: {lhs} vs {rhs}", l.describe(level))),
                    (Err(e), _) | (_, Err(e)) => bad.push(e.to_string()),
                }
            }
            Certificate::new(
                format!("burnside-formula[{name}]"),
                bad.is_empty(),
                format!("{} cells, dimension {}; {}", x.len(), x.top().saturating_sub(1), bad.join("; ")),
            )
        })
        .collect()
}

fn compare(name: String, got: &AbelianGroup, want: &AbelianGroup) -> Certificate {
    Certificate::new(name, got == want, format!("cellular {got}, presentation {want}"))
}

/// Reduced Bredon (co)homology of `S^{nλ}` over `C_p` against the `C_p` ring.
pub fn criterion_5() -> Vec<Certificate> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        for n in 1..=3usize {
            let tag = format!("S^{n}l/C{p}");
            let x = match GCWComplex::sphere_lambda_cp(n, p as usize).and_then(|s| s.cyclic()) {
                Ok(x) => x,
                Err(e) => {
                    out.push(err_cert(tag, e));
                    continue;
                }
            };
            let zbar = constant_mackey(x.lattice(), &PrimeSet::empty());
            let (h, c) = match (bredon_homology(&x, &zbar), bredon_cohomology(&x, &zbar)) {
                (Ok(h), Ok(c)) => (h, c),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(err_cert(tag, e));
                    continue;
                }
            };
            let ni = n as i64;
            for t in 0..=2 * ni + 1 {
                let hom = roq::cp_at(p, t, -ni).map(|g| g.abelian());
                let coh = roq::cp_at(p, -t, ni).map(|g| g.abelian());
                match (hom, coh) {
                    (Ok(hom), Ok(coh)) => {
                        out.push(compare(format!("{tag} H_{t}"), &h.at(t as usize), &hom));
                        out.push(compare(format!("{tag} H^{t}"), &c.at(t as usize), &coh));
                    }
                    (Err(e), _) | (_, Err(e)) => out.push(err_cert(tag.clone(), e)),
                }
            }
        }
    }
    out
}

/// `Some(s)` when the induced map is multiplication by `s = ±1`, `None` on a zero group.
fn sign_of(map: &InducedMap) -> Result<Option<i8>, String> {
    let k = map.target.orders.len();
    if k == 0 {
        return Ok(None);
    }
    'sign: for s in [1i64, -1] {
        for i in 0..k {
            for j in 0..k {
                let want = if i == j { BigInt::from(s) } else { BigInt::zero() };
                let diff = map.matrix.get(i, j) - want;
                let o = &map.target.orders[i];
                let vanishes = if o.is_zero() { diff.is_zero() } else { (diff % o).is_zero() };
                if !vanishes {
                    continue 'sign;
                }
            }
        }
        return Ok(Some(s as i8));
    }
    Err(format!("not ±1: {:?}", map.matrix))
}

/// τ on `H̃_t` and `H̃^t` of `S^{nλ}` against the parity formula.
pub fn criterion_6() -> Vec<Certificate> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        for n in 1..=3usize {
            let tag = format!("S^{n}l p={p}");
            let s = match GCWComplex::sphere_lambda_cp(n, p as usize) {
                Ok(s) => s,
                Err(e) => {
                    out.push(err_cert(tag, e));
                    continue;
                }
            };
            let x = &s.complex;
            let zbar = constant_mackey(x.lattice(), &PrimeSet::empty());
            let mut seen = Vec::new();
            let mut bad = Vec::new();
            for dir in [Direction::Homological, Direction::Cohomological] {
                let run = || -> Result<Vec<InducedMap>, String> {
                    let c = bredon_chains(x, &zbar, s.rotations, dir).map_err(|e| e.to_string())?;
                    let f = normalizer_chain_map(x, &zbar, s.rotations, s.tau, dir).map_err(|e| e.to_string())?;
                    induced_map_on_homology(&c, &c, &f).map_err(|e| e.to_string())
                };
                match run() {
                    Ok(maps) => {
                        for (t, m) in maps.iter().enumerate() {
                            match sign_of(m) {
                                Ok(Some(sign)) => {
                                    let ti = t as i64;
                                    let formula = tau_sign(0, 0, n as i64, ti);
                                    let residue = if ti % 4 == 2 || ti % 4 == 3 { -1 } else { 1 };
                                    let hz = if dir == Direction::Homological { "H" } else { "H^" };
                                    seen.push(format!("{hz}{t}:{sign}"));
                                    if sign != formula || sign != residue {
                                        bad.push(format!("{hz}{t}: cellular {sign}, formula {formula}"));
                                    }
                                }
                                Ok(None) => {}
                                Err(e) => bad.push(format!("degree {t}: {e}")),
                            }
                        }
                    }
                    Err(e) => bad.push(e),
                }
            }
            let ok = bad.is_empty() && !seen.is_empty();
            out.push(Certificate::new(
                format!("tau[{tag}]"),
                ok,
                format!("{} {}", seen.join(" "), bad.join("; ")),
            ));
        }
        // the C_p-orbit complex carries the same signs on its cells
        let tag = format!("quotient S^l/C{p}");
        match GCWComplex::sphere_lambda_cp(1, p as usize).and_then(|s| s.quotient()) {
            Ok(q) => {
                let mut signs = Vec::new();
                let mut ok = true;
                for t in 0..q.top() {
                    for &c in q.cells_of_dim(t) {
                        let (img, sign) = q.act(1, c);
                        ok &= img == c && sign == tau_sign(0, 0, 1, t as i64);
                        signs.push(format!("e{t}:{sign}"));
                    }
                }
                out.push(Certificate::new(tag, ok && q.len() == 3, signs.join(" ")));
            }
            Err(e) => out.push(err_cert(tag, e)),
        }
    }
    out
}

/// `Z̄ □ N_F` vanishes for both dihedral families after inverting the matching prime.
pub fn criterion_7() -> Vec<Certificate> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        let l = lattice(FiniteGroup::dihedral(2 * p as usize).expect("dihedral"));
        for (label, seed, inverted) in [("F1", 2usize, p), ("F2", p as usize, 2)] {
            let name = format!("D{}-Zbar-box-N_{label}", 2 * p);
            let primes = PrimeSet::from_primes([inverted]);
            let family = Family::closure(&l, &[by_order(&l, seed)]);
            let result = sub_functors(&l, &family, &primes)
                .and_then(|s| box_product(&constant_mackey(&l, &primes), &s.n).map(|b| (s.n, b)));
            match result {
                Ok((n, b)) => {
                    let levels: Vec<String> =
                        b.class_groups().iter().map(|(h, g)| format!("{}: {g}", l.describe(*h))).collect();
                    out.push(Certificate::new(
                        name,
                        b.is_zero() && !n.is_zero(),
                        format!("over Z[1/{inverted}]: {}", levels.join(", ")),
                    ));
                }
                Err(e) => out.push(err_cert(name, e)),
            }
        }
    }
    out
}

/// The integral presentation localizes to the two inverted presentations on the box.
pub fn criterion_8(bk: i64, bm: i64, bn: i64) -> Vec<Certificate> {
    [3u64, 5]
        .iter()
        .map(|&p| match roq::localize_check(p, bk, bm, bn) {
            Ok(r) => {
                let mut detail = format!("{} degrees, {} nonzero", r.degrees, r.nonzero_degrees);
                for (what, v) in [
                    ("1/p", &r.invert_p),
                    ("1/2", &r.invert_2),
                    ("F1", &r.f1),
                    ("F2", &r.f2),
                    ("overlap", &r.overlaps),
                ] {
                    if let Some(first) = v.first() {
                        detail.push_str(&format!("; {} {what} mismatches, first {first}", v.len()));
                    }
                }
                Certificate::new(format!("glue p={p} box {bk},{bm},{bn}"), r.passed(), detail)
            }
            Err(e) => err_cert(format!("glue p={p}"), e),
        })
        .collect()
}

/// `π_{-j+mσ+nγ}` against `H̃^j(S^{mσ+nγ})` and `π_{j-mσ-nγ}` against `H̃_j`, over `D_6`.
pub fn criterion_9() -> Vec<Certificate> {
    let p = 3u64;
    let l = match dihedral_lattice(p as usize) {
        Ok(l) => l,
        Err(e) => return vec![err_cert("D6", e)],
    };
    let zbar = constant_mackey(&l, &PrimeSet::empty());
    let mut out = Vec::new();
    for m in 0..=2usize {
        for n in 0..=2usize {
            let tag = format!("S^({m}s+{n}g)");
            let groups = GCWComplex::sphere_d2p(&l, m, n).map_err(|e| e.to_string()).and_then(|x| {
                let h = bredon_homology(&x, &zbar).map_err(|e| e.to_string())?;
                let c = bredon_cohomology(&x, &zbar).map_err(|e| e.to_string())?;
                Ok((h, c))
            });
            let (h, c): (HomologyResult, HomologyResult) = match groups {
                Ok(v) => v,
                Err(e) => {
                    out.push(err_cert(tag, e));
                    continue;
                }
            };
            let (mi, ni) = (m as i64, n as i64);
            let mut bad = Vec::new();
            for j in 0..=6i64 {
                let coh = roq::d2p_at(p, -j, mi, ni).map(|g| g.abelian());
                let hom = roq::d2p_at(p, j, -mi, -ni).map(|g| g.abelian());
                match (coh, hom) {
                    (Ok(coh), Ok(hom)) => {
                        if c.at(j as usize) != coh {
                            bad.push(format!("H^{j}: cellular {} vs {coh}", c.at(j as usize)));
                        }
                        if h.at(j as usize) != hom {
                            bad.push(format!("H_{j}: cellular {} vs {hom}", h.at(j as usize)));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => bad.push(e.to_string()),
                }
            }
            out.push(Certificate::new(tag, bad.is_empty(), format!("H^* = {c}, H_* = {h}; {}", bad.join("; "))));
        }
    }
    out
}

/// Full semidirect reports for every coprime decomposition of the listed groups.
pub fn criterion_10() -> Vec<Certificate> {
    let s3c5 = FiniteGroup::direct_product(
        &FiniteGroup::symmetric(3).expect("S3"),
        &FiniteGroup::cyclic(5).expect("C5"),
    )
    .expect("S3 x C5");
    let groups = [
        FiniteGroup::dihedral(6),
        FiniteGroup::dihedral(10),
        FiniteGroup::dihedral(14),
        FiniteGroup::alternating(4),
        Ok(s3c5),
        FiniteGroup::semidirect_cyclic(7, 3, 2),
    ];
    let mut out = Vec::new();
    for g in groups {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                out.push(err_cert("group", e));
                continue;
            }
        };
        let l = lattice(g);
        let ds: Vec<SemidirectDecomposition> = find_decompositions(&l).into_iter().filter(|d| d.coprime).collect();
        if ds.is_empty() {
            out.push(Certificate::fail(format!("semidirect[{}]", l.group().label()), "no coprime decomposition"));
        }
        for d in ds {
            let report = semidirect_report(&l, d);
            let names: Vec<String> =
                report.certificates.iter().map(|c| format!("{}:{}", c.name, if c.passed { "ok" } else { "FAIL" })).collect();
            out.push(Certificate::new(
                format!(
                    "semidirect[{} = {} x| {}]",
                    l.group().label(),
                    l.describe(d.normal_part),
                    l.describe(d.complement)
                ),
                report.passed() && report.certificates.len() == 5,
                match report.first_failure() {
                    Some(c) => format!("{}; first failure {}: {}", names.join(" "), c.name, c.detail),
                    None => names.join(" "),
                },
            ));
        }
    }
    out
}

/// Torsion of `EG/G` below dimension 7 and the orbit-map certificates.
pub fn criterion_11() -> Vec<Certificate> {
    let mut out = Vec::new();
    let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)];
    for g in groups {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                out.push(err_cert("group", e));
                continue;
            }
        };
        let order = BigInt::from(g.order());
        let l = lattice(g);
        let name = format!("BG torsion [{}]", l.group().label());
        let result = GCWComplex::eg_skeleton(&l, 7).and_then(|e| Ok((e.underlying().reduced_homology(), e.orbit_complex(l.whole())?)));
        match result {
            Ok((free_part, b)) => {
                let h = b.homology();
                let acyclic = free_part.truncated(7).is_zero();
                let killed = (1..=6).all(|n| h.at(n).annihilated_by(&order));
                out.push(Certificate::new(name, acyclic && killed, format!("H_1..6(BG) = {}", h.truncated(7))));
            }
            Err(e) => out.push(err_cert(name, e)),
        }
    }
    for p in [3usize, 5] {
        let l = match dihedral_lattice(p) {
            Ok(l) => l,
            Err(e) => {
                out.push(err_cert("dihedral", e));
                continue;
            }
        };
        let d = match SemidirectDecomposition::new(&l, by_order(&l, p), by_order(&l, 2)) {
            Ok(d) => d,
            Err(e) => {
                out.push(err_cert("decomposition", e));
                continue;
            }
        };
        let complexes = (|| -> Result<Vec<(&str, GCWComplex)>, crate::gcw::GcwError> {
            Ok(vec![
                ("point", GCWComplex::point(&l)),
                ("G/e x D1", GCWComplex::orbit_interval(&l, l.trivial())),
                ("G/C2 x D1", GCWComplex::orbit_interval(&l, by_order(&l, 2))),
                ("S^gamma", GCWComplex::sphere_gamma_d2p(&l)?),
                ("S^(2 gamma)", GCWComplex::sphere_d2p(&l, 0, 2)?),
                ("EG skeleton", GCWComplex::eg_skeleton(&l, 3)?),
            ])
        })();
        let complexes = match complexes {
            Ok(c) => c,
            Err(e) => {
                out.push(err_cert("complexes", e));
                continue;
            }
        };
        for (name, x) in complexes {
            let tag = format!("orbit-map[D{} {name}]", 2 * p);
            match orbit_map_checks(&x, &d) {
                Ok(certs) => {
                    let names: Vec<String> = certs.iter().map(|c| c.name.clone()).collect();
                    let failed: Vec<String> =
                        certs.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
                    out.push(Certificate::new(
                        tag,
                        all_passed(&certs),
                        format!("{} {}", names.join(" "), failed.join("; ")),
                    ));
                }
                Err(e) => out.push(err_cert(tag, e)),
            }
        }
    }
    out
}

pub fn run_criterion(number: usize) -> Option<CriterionResult> {
    let start = Instant::now();
    let certificates = match number {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(8, 6, 4),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => return None,
    };
    Some(CriterionResult {
        number,
        title: TITLES[number - 1],
        passed: !certificates.is_empty() && all_passed(&certificates),
        millis: start.elapsed().as_millis(),
        certificates,
    })
}

/// Every criterion in order, run on separate threads.
pub fn run_all() -> Vec<CriterionResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=11).map(|n| s.spawn(move || run_criterion(n).expect("known criterion"))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        assert!(all_passed(&criterion_1()));
        assert!(all_passed(&criterion_8(3, 2, 2)));
        assert!(all_passed(&criterion_10()));
    }

    #[test]
    fn sign_detection() {
        let l = dihedral_lattice(3).unwrap();
        let s = GCWComplex::sphere_lambda_cp(1, 3).unwrap();
        let zbar = constant_mackey(&l, &PrimeSet::empty());
        let c = bredon_chains(&s.complex, &zbar, s.rotations, Direction::Homological).unwrap();
        let f = normalizer_chain_map(&s.complex, &zbar, s.rotations, s.tau, Direction::Homological).unwrap();
        let maps = induced_map_on_homology(&c, &c, &f).unwrap();
        assert_eq!(sign_of(&maps[0]).unwrap(), Some(1));
        assert_eq!(sign_of(&maps[1]).unwrap(), None);
        assert_eq!(sign_of(&maps[2]).unwrap(), Some(-1));
        assert!(run_criterion(12).is_none());
    }
}
