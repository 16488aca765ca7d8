//! RO(G)-graded homotopy of the constant Eilenberg–MacLane spectrum for
//! `C_2`, `C_p` and `D_2p`, presented as families of named monomials.
//!
//! A `D_2p` degree is `k + mσ + nγ`. A `C_2` degree uses `(k, m)` and a
//! `C_p` degree `(k, n)` against `λ`; both are stored in [`RODegree`] with
//! the unused coordinate zero.

mod glue;
mod product;
mod rings;
#[cfg(test)]
mod tests;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::AbelianGroup;

pub use glue::{
    f1_piece_at, f2_piece_at, hagrog_at, localize_check, reduce_generald2p, tau_sign, FixedPointTag, GlueReport,
    HagrogComponent, Part, Reduction, TargetGroup,
};
pub use product::{multiply, multiply_elements, ring_law_check, Element, Product, RingLawReport};
pub use rings::{family_matches, FamilyPattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RoqError {
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("cannot parse monomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("monomial {0} does not denote a nonzero class")]
    ZeroInput(String),
    #[error("index {given} is not a multiple of the generator index {generator} of {monomial}")]
    BadIndex { monomial: String, given: u64, generator: u64 },
}

/// The rings with a presentation in this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Ring {
    /// `π_★^{C_2} HZ̄`, generators `u_2s`, `a_s`.
    C2,
    /// `π_★^{C_p} HZ̄`, generators `u_l`, `a_l`.
    Cp,
    /// `π_★^{D_2p} HZ̄`.
    D2p,
    /// `π_★^{D_2p} HZ̄[1/p]`, where `u_gs` is a unit.
    D2pInvP,
    /// `π_★^{D_2p} HZ̄[1/2]`, where `u_2s` is a unit.
    D2pInv2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct RODegree {
    pub k: i64,
    pub m: i64,
    pub n: i64,
}

impl RODegree {
    pub fn new(k: i64, m: i64, n: i64) -> Self {
        RODegree { k, m, n }
    }
}

impl std::ops::Add for RODegree {
    type Output = RODegree;
    fn add(self, o: RODegree) -> RODegree {
        RODegree::new(self.k + o.k, self.m + o.m, self.n + o.n)
    }
}

impl fmt::Display for RODegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.m, self.n)
    }
}

impl FromStr for RODegree {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad degree component `{t}`: {e}")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [k, m, n] => Ok(RODegree::new(k, m, n)),
            [k, m] => Ok(RODegree::new(k, m, 0)),
            _ => Err(format!("expected k,m,n but got `{s}`")),
        }
    }
}

/// A product of generators, possibly desuspended, times an index.
///
/// The exponents are `a` of `u_{γ-σ}`, `b` of `u_{2σ}`, `c` of `a_σ` and
/// `d` of `a_γ`. In the `C_p` ring `a` and `d` are the exponents of `u_λ`
/// and `a_λ`. `shift` is `-1` on the `Σ⁻¹` classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassMonomial {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub shift: i64,
    pub index: u64,
}

impl ClassMonomial {
    pub fn new(a: i64, b: i64, c: i64, d: i64, shift: i64, index: u64) -> Self {
        ClassMonomial { a, b, c, d, shift, index }
    }

    pub fn unit() -> Self {
        Self::new(0, 0, 0, 0, 0, 1)
    }

    pub fn with_index(self, index: u64) -> Self {
        ClassMonomial { index, ..self }
    }

    /// The same exponents with index 1, used to compare names.
    pub fn name(self) -> Self {
        self.with_index(1)
    }

    pub fn degree(&self, ring: Ring) -> RODegree {
        let ClassMonomial { a, b, c, d, shift, .. } = *self;
        match ring {
            Ring::C2 => RODegree::new(2 * b + shift, -2 * b - c, 0),
            Ring::Cp => RODegree::new(2 * a + shift, 0, -a - d),
            _ => RODegree::new(a + 2 * b + shift, a - 2 * b - c, -a - d),
        }
    }

    /// Text form in the generator names of `ring`.
    pub fn render(&self, ring: Ring) -> String {
        let names: [(&str, i64); 4] = match ring {
            Ring::C2 => [("u_2s", self.b), ("a_s", self.c), ("", 0), ("", 0)],
            Ring::Cp => [("u_l", self.a), ("a_l", self.d), ("", 0), ("", 0)],
            _ => [("u_gs", self.a), ("u_2s", self.b), ("a_s", self.c), ("a_g", self.d)],
        };
        let mut parts: Vec<String> = names
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        if self.shift != 0 {
            parts.push(format!("S^{}", self.shift));
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
        if self.index == 1 {
            body
        } else {
            format!("{}*{body}", self.index)
        }
    }

    /// Parses `u_gs^a u_2s^b a_s^c a_g^d [S^-1] [idx*]`; missing generators
    /// have exponent zero. The `C_p` names `u_l`, `a_l` fill `a` and `d`.
    /// The index is `None` when not written.
    pub fn parse(text: &str) -> Result<(Self, Option<u64>), RoqError> {
        let err = |reason: &str| RoqError::Parse { text: text.to_string(), reason: reason.to_string() };
        let mut mono = ClassMonomial::unit();
        let mut index = None;
        let mut seen = std::collections::BTreeSet::new();
        for raw in text.split_whitespace() {
            let mut token = raw;
            if let Some((head, rest)) = token.split_once('*') {
                let i: u64 = head.parse().map_err(|_| err("index must be a positive integer"))?;
                if i == 0 || index.is_some() {
                    return Err(err("index must be a single positive integer"));
                }
                index = Some(i);
                token = rest;
            }
            if token.is_empty() || token == "1" {
                continue;
            }
            let (gen, exp) = match token.split_once('^') {
                Some((g, e)) => (g, e.parse::<i64>().map_err(|_| err("exponent must be an integer"))?),
                None => (token, 1),
            };
            if !seen.insert(gen.to_string()) {
                return Err(err("generator repeated"));
            }
            match gen {
                "u_gs" | "u_l" => mono.a = exp,
                "u_2s" => mono.b = exp,
                "a_s" => mono.c = exp,
                "a_g" | "a_l" => mono.d = exp,
                "S" if exp == -1 => mono.shift = -1,
                "S" => return Err(err("only the desuspension S^-1 is allowed")),
                _ => return Err(err("unknown generator")),
            }
        }
        Ok((mono, index))
    }
}

impl fmt::Display for ClassMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Ring::D2p))
    }
}

/// A cyclic summand: the monomial names its generator, `order` is 0 for
/// an infinite cyclic group and the torsion order otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Summand {
    pub monomial: ClassMonomial,
    pub order: u64,
    pub family: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedGroup {
    pub ring: Ring,
    pub degree: RODegree,
    pub summands: Vec<Summand>,
}

impl GradedGroup {
    pub fn zero(ring: Ring, degree: RODegree) -> Self {
        GradedGroup { ring, degree, summands: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn abelian(&self) -> AbelianGroup {
        let rank = self.summands.iter().filter(|s| s.order == 0).count();
        let torsion = self.summands.iter().filter(|s| s.order > 1).map(|s| s.order.into()).collect();
        AbelianGroup::from_orders(rank, torsion)
    }

    /// Tensor with `Z[1/q]` for the primes `q` dividing `inverted`: torsion
    /// of those primes dies and indices lose them.
    pub fn invert(&self, inverted: u64) -> GradedGroup {
        let strip = |mut x: u64| {
            for q in crate::arith::prime_factors(inverted) {
                while x % q == 0 {
                    x /= q;
                }
            }
            x
        };
        let summands = self
            .summands
            .iter()
            .filter_map(|s| {
                let order = if s.order == 0 { 0 } else { strip(s.order) };
                (order != 1).then(|| Summand {
                    monomial: s.monomial.with_index(strip(s.monomial.index)),
                    order,
                    family: s.family,
                })
            })
            .collect();
        GradedGroup { ring: self.ring, degree: self.degree, summands }
    }

    /// Same summands up to family labels, in any order.
    pub fn same_classes(&self, other: &GradedGroup) -> bool {
        let key = |g: &GradedGroup| {
            let mut v: Vec<(ClassMonomial, u64)> = g.summands.iter().map(|s| (s.monomial, s.order)).collect();
            v.sort();
            v
        };
        key(self) == key(other)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": [self.degree.k, self.degree.m, self.degree.n],
            "summands": self.summands.iter().map(|s| serde_json::json!({
                "monomial": s.monomial.name().render(self.ring),
                "order": s.order,
                "index": s.monomial.index,
                "family": s.family,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                let name = s.monomial.name().render(self.ring);
                match (s.order, s.monomial.index) {
                    (0, 1) => format!("Z<{name}>"),
                    (0, i) => format!("{i}Z<{name}>"),
                    (o, _) => format!("Z/{o}<{name}>"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn check_prime(p: u64) -> Result<(), RoqError> {
    if p > 2 && crate::arith::is_prime(p) {
        Ok(())
    } else {
        Err(RoqError::BadPrime(p))
    }
}

/// The group of `ring` in `degree` for the odd prime `p`.
pub fn group_at(ring: Ring, p: u64, degree: RODegree) -> Result<GradedGroup, RoqError> {
    check_prime(p)?;
    Ok(rings::enumerate(ring, p, degree))
}

pub fn c2_at(k: i64, m: i64) -> GradedGroup {
    rings::enumerate(Ring::C2, 3, RODegree::new(k, m, 0))
}

pub fn cp_at(p: u64, k: i64, n: i64) -> Result<GradedGroup, RoqError> {
    group_at(Ring::Cp, p, RODegree::new(k, 0, n))
}

pub fn d2p_at(p: u64, k: i64, m: i64, n: i64) -> Result<GradedGroup, RoqError> {
    group_at(Ring::D2p, p, RODegree::new(k, m, n))
}

pub fn d2p_invp_at(p: u64, k: i64, m: i64, n: i64) -> Result<GradedGroup, RoqError> {
    group_at(Ring::D2pInvP, p, RODegree::new(k, m, n))
}

pub fn d2p_inv2_at(p: u64, k: i64, m: i64, n: i64) -> Result<GradedGroup, RoqError> {
    group_at(Ring::D2pInv2, p, RODegree::new(k, m, n))
}
