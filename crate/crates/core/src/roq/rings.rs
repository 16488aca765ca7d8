//! Summand families of each presentation and their enumeration by degree.

use super::{ClassMonomial, GradedGroup, RODegree, Ring, Summand};

/// Sign condition on one exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Zero,
    Pos,
    NonNeg,
    Neg,
    Any,
}

impl Sign {
    fn holds(self, e: i64) -> bool {
        match self {
            Sign::Zero => e == 0,
            Sign::Pos => e > 0,
            Sign::NonNeg => e >= 0,
            Sign::Neg => e < 0,
            Sign::Any => true,
        }
    }
}

/// A coefficient expressed through `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coef {
    Free,
    Two,
    P,
    TwoP,
}

impl Coef {
    fn value(self, p: u64) -> u64 {
        match self {
            Coef::Free => 1,
            Coef::Two => 2,
            Coef::P => p,
            Coef::TwoP => 2 * p,
        }
    }
}

/// One family of summands: sign conditions on `(a, b, c, d)`, the shift,
/// the order of each summand (`Free` for infinite cyclic) and the index.
#[derive(Debug, Clone, Copy)]
pub struct FamilyPattern {
    pub name: &'static str,
    signs: [Sign; 4],
    shift: i64,
    order: Coef,
    index: Coef,
}

impl FamilyPattern {
    pub fn matches(&self, m: &ClassMonomial) -> bool {
        m.shift == self.shift && self.signs.iter().zip([m.a, m.b, m.c, m.d]).all(|(s, e)| s.holds(e))
    }

    /// Torsion order, 0 for infinite cyclic summands.
    pub fn order(&self, p: u64) -> u64 {
        match self.order {
            Coef::Free => 0,
            c => c.value(p),
        }
    }

    pub fn index(&self, p: u64) -> u64 {
        self.index.value(p)
    }
}

const fn fam(name: &'static str, signs: [Sign; 4], shift: i64, order: Coef, index: Coef) -> FamilyPattern {
    FamilyPattern { name, signs, shift, order, index }
}

use Coef::{Free, Two, TwoP, P};
use Sign::{Any, Neg, NonNeg, Pos, Zero};

const C2: &[FamilyPattern] = &[
    fam("poly", [Zero, NonNeg, Zero, Zero], 0, Free, Free),
    fam("poly-a", [Zero, NonNeg, Pos, Zero], 0, Two, Free),
    fam("2Z<u^-i>", [Zero, Neg, Zero, Zero], 0, Free, Two),
    fam("Z/2<S^-1 u^-j a^-k>", [Zero, Neg, Neg, Zero], -1, Two, Free),
];

const CP: &[FamilyPattern] = &[
    fam("poly", [NonNeg, Zero, Zero, Zero], 0, Free, Free),
    fam("poly-a", [NonNeg, Zero, Zero, Pos], 0, P, Free),
    fam("pZ<u^-i>", [Neg, Zero, Zero, Zero], 0, Free, P),
    fam("Z/p<S^-1 u^-j a^-k>", [Neg, Zero, Zero, Neg], -1, P, Free),
];

const D2P: &[FamilyPattern] = &[
    fam("poly", [NonNeg, NonNeg, Zero, Zero], 0, Free, Free),
    fam("poly-as", [NonNeg, NonNeg, Pos, Zero], 0, Two, Free),
    fam("poly-ag", [NonNeg, NonNeg, Zero, Pos], 0, P, Free),
    fam("2Z[u_gs]<u_2s^-i>", [NonNeg, Neg, Zero, Zero], 0, Free, Two),
    fam("pZ[u_2s]<u_gs^-i>", [Neg, NonNeg, Zero, Zero], 0, Free, P),
    fam("2pZ<u_2s^-j u_gs^-k>", [Neg, Neg, Zero, Zero], 0, Free, TwoP),
    fam("Z/p[u_gs]<a_g^j u_2s^-k>", [NonNeg, Neg, Zero, Pos], 0, P, Free),
    fam("Z/2[u_2s]<a_s^j u_gs^-k>", [Neg, NonNeg, Pos, Zero], 0, Two, Free),
    fam("Z/2[u_gs^±]<S^-1 u_2s^-j a_s^-k>", [Any, Neg, Neg, Zero], -1, Two, Free),
    fam("Z/p[u_2s^±]<S^-1 u_gs^-j a_g^-k>", [Neg, Any, Zero, Neg], -1, P, Free),
];

const D2P_INV_P: &[FamilyPattern] = &[
    fam("poly", [Any, NonNeg, Zero, Zero], 0, Free, Free),
    fam("poly-as", [Any, NonNeg, Pos, Zero], 0, Two, Free),
    fam("2Z[u_gs^±]<u_2s^-i>", [Any, Neg, Zero, Zero], 0, Free, Two),
    fam("Z/2[u_gs^±]<S^-1 u_2s^-j a_s^-k>", [Any, Neg, Neg, Zero], -1, Two, Free),
];

const D2P_INV_2: &[FamilyPattern] = &[
    fam("poly", [NonNeg, Any, Zero, Zero], 0, Free, Free),
    fam("poly-ag", [NonNeg, Any, Zero, Pos], 0, P, Free),
    fam("pZ[u_2s^±]<u_gs^-i>", [Neg, Any, Zero, Zero], 0, Free, P),
    fam("Z/p[u_2s^±]<S^-1 u_gs^-j a_g^-k>", [Neg, Any, Zero, Neg], -1, P, Free),
];

pub(super) fn patterns(ring: Ring) -> &'static [FamilyPattern] {
    match ring {
        Ring::C2 => C2,
        Ring::Cp => CP,
        Ring::D2p => D2P,
        Ring::D2pInvP => D2P_INV_P,
        Ring::D2pInv2 => D2P_INV_2,
    }
}

/// Every family of `ring` whose pattern the monomial fits; at most one
/// for a well-formed presentation.
pub fn family_matches(ring: Ring, m: &ClassMonomial) -> Vec<&'static FamilyPattern> {
    patterns(ring).iter().filter(|f| f.matches(m)).collect()
}

/// Exponent vectors of degree `deg` with the given shift.
pub(super) fn solutions(ring: Ring, deg: RODegree, shift: i64) -> Vec<ClassMonomial> {
    let RODegree { k, m, n } = deg;
    match ring {
        Ring::C2 => {
            if n != 0 || (k - shift) % 2 != 0 {
                return vec![];
            }
            let b = (k - shift) / 2;
            vec![ClassMonomial::new(0, b, -2 * b - m, 0, shift, 1)]
        }
        Ring::Cp => {
            if m != 0 || (k - shift) % 2 != 0 {
                return vec![];
            }
            let a = (k - shift) / 2;
            vec![ClassMonomial::new(a, 0, 0, -a - n, shift, 1)]
        }
        _ => {
            // every family bounds |a| by |n| or by (|k| + |m| + 1) / 2
            let r = k.abs() + m.abs() + n.abs() + 1;
            (-r..=r)
                .filter(|a| (k - shift - a) % 2 == 0)
                .map(|a| {
                    let b = (k - shift - a) / 2;
                    ClassMonomial::new(a, b, a - 2 * b - m, -a - n, shift, 1)
                })
                .collect()
        }
    }
}

pub(super) fn enumerate(ring: Ring, p: u64, deg: RODegree) -> GradedGroup {
    let mut summands = Vec::new();
    for shift in [0, -1] {
        for mono in solutions(ring, deg, shift) {
            debug_assert_eq!(mono.degree(ring), deg);
            if let Some(f) = patterns(ring).iter().find(|f| f.matches(&mono)) {
                summands.push(Summand { monomial: mono.with_index(f.index(p)), order: f.order(p), family: f.name });
            }
        }
    }
    summands.sort();
    GradedGroup { ring, degree: deg, summands }
}

/// The family of a monomial at its own degree, if it names a generator.
pub(super) fn classify(ring: Ring, m: &ClassMonomial) -> Option<&'static FamilyPattern> {
    patterns(ring).iter().find(|f| f.matches(m))
}

/// Counts family matches for every exponent solution in `deg`; used to
/// check that families are disjoint.
pub(super) fn overlaps(ring: Ring, deg: RODegree) -> Vec<(ClassMonomial, Vec<&'static str>)> {
    let mut out = Vec::new();
    for shift in [0, -1] {
        for mono in solutions(ring, deg, shift) {
            let hits: Vec<&'static str> = family_matches(ring, &mono).iter().map(|f| f.name).collect();
            if hits.len() > 1 {
                out.push((mono, hits));
            }
        }
    }
    out
}
