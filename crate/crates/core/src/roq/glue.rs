//! The two localized pictures of the `D_2p` ring and how they glue: the
//! family pieces, the τ-sign and the reduction descriptors for general
//! coefficients.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::rings::{enumerate, overlaps};
use super::{c2_at, cp_at, ClassMonomial, GradedGroup, RODegree, Ring, RoqError, Summand};
use crate::linalg::AbelianGroup;

/// `⌊|x|/2⌋ + m` is odd.
fn parity_odd(x: i64, m: i64) -> bool {
    (x.abs() / 2 + m).rem_euclid(2) == 1
}

/// The `E𝓕_1` piece with `p` inverted: `π^{C_2}_{(k+n)+(m+n)σ}`, renamed into the dihedral generators.
pub fn f1_piece_at(p: u64, k: i64, m: i64, n: i64) -> Result<GradedGroup, RoqError> {
    super::check_prime(p)?;
    let c2 = c2_at(k + n, m + n);
    let summands = c2
        .summands
        .iter()
        .map(|s| Summand {
            monomial: ClassMonomial::new(-n, s.monomial.b, s.monomial.c, 0, s.monomial.shift, s.monomial.index),
            order: s.order,
            family: s.family,
        })
        .collect();
    Ok(GradedGroup { ring: Ring::D2pInvP, degree: RODegree::new(k, m, n), summands })
}

/// The `E𝓕_2` piece with 2 inverted: zero when `⌊|k+m|/2⌋ + m` is odd,
/// else `π^{C_p}_{(k+m)+nλ}` with `u_λ ↦ u_gs u_2s^c` and `a_λ ↦ a_g u_2s^c`.
pub fn f2_piece_at(p: u64, k: i64, m: i64, n: i64) -> Result<GradedGroup, RoqError> {
    let degree = RODegree::new(k, m, n);
    if parity_odd(k + m, m) {
        super::check_prime(p)?;
        return Ok(GradedGroup::zero(Ring::D2pInv2, degree));
    }
    let cp = cp_at(p, k + m, n)?;
    let summands = cp
        .summands
        .iter()
        .filter_map(|s| {
            let a = s.monomial.a;
            ((a - m) % 2 == 0).then(|| Summand {
                monomial: ClassMonomial::new(a, (a - m) / 2, 0, s.monomial.d, s.monomial.shift, s.monomial.index),
                order: s.order,
                family: s.family,
            })
        })
        .collect();
    Ok(GradedGroup { ring: Ring::D2pInv2, degree, summands })
}

/// `-1` when `⌊|k+m-t|/2⌋ + m` is odd, else `1`: the action of τ on
/// `[S^{k+mσ+nγ}, Σ^t HZ̄]^{C_p}`.
pub fn tau_sign(k: i64, m: i64, _n: i64, t: i64) -> i8 {
    if parity_odd(k + m - t, m) {
        -1
    } else {
        1
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GlueReport {
    pub p: u64,
    pub degrees: usize,
    pub nonzero_degrees: usize,
    /// Degrees where `d2p ⊗ Z[1/p]` differs from the `p`-inverted ring.
    pub invert_p: Vec<String>,
    /// Degrees where `d2p ⊗ Z[1/2]` differs from the 2-inverted ring.
    pub invert_2: Vec<String>,
    pub f1: Vec<String>,
    pub f2: Vec<String>,
    /// Monomials fitting more than one family.
    pub overlaps: Vec<String>,
}

impl GlueReport {
    pub fn passed(&self) -> bool {
        self.invert_p.is_empty()
            && self.invert_2.is_empty()
            && self.f1.is_empty()
            && self.f2.is_empty()
            && self.overlaps.is_empty()
    }
}

/// Compares every degree with `|k| ≤ bk`, `|m| ≤ bm`, `|n| ≤ bn`.
pub fn localize_check(p: u64, bk: i64, bm: i64, bn: i64) -> Result<GlueReport, RoqError> {
    super::check_prime(p)?;
    let mut report = GlueReport { p, ..Default::default() };
    let pair = |a: &GradedGroup, b: &GradedGroup| format!("{}: {a} vs {b}", a.degree);
    for k in -bk..=bk {
        for m in -bm..=bm {
            for n in -bn..=bn {
                let deg = RODegree::new(k, m, n);
                report.degrees += 1;
                let full = enumerate(Ring::D2p, p, deg);
                if !full.is_zero() {
                    report.nonzero_degrees += 1;
                }
                let inv_p = enumerate(Ring::D2pInvP, p, deg);
                let inv_2 = enumerate(Ring::D2pInv2, p, deg);
                let lp = full.invert(p);
                if !lp.same_classes(&inv_p) {
                    report.invert_p.push(pair(&lp, &inv_p));
                }
                let l2 = full.invert(2);
                if !l2.same_classes(&inv_2) {
                    report.invert_2.push(pair(&l2, &inv_2));
                }
                let f1 = f1_piece_at(p, k, m, n)?;
                if !f1.same_classes(&inv_p) {
                    report.f1.push(pair(&f1, &inv_p));
                }
                let f2 = f2_piece_at(p, k, m, n)?;
                if !f2.same_classes(&inv_2) {
                    report.f2.push(pair(&f2, &inv_2));
                }
                for ring in [Ring::D2p, Ring::D2pInvP, Ring::D2pInv2] {
                    for (mono, hits) in overlaps(ring, deg) {
                        report.overlaps.push(format!("{ring:?} {deg}: {} in {}", mono.render(ring), hits.join(", ")));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Pieces of the isotropy separation for `D_2p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Part {
    F1,
    F2,
    Tilde1,
    Tilde2,
}

impl FromStr for Part {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(Part::F1),
            "F2" => Ok(Part::F2),
            "TILDE1" => Ok(Part::Tilde1),
            "TILDE2" => Ok(Part::Tilde2),
            _ => Err(format!("unknown part `{s}`; expected F1, F2, TILDE1 or TILDE2")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TargetGroup {
    C2,
    Cp,
    Trivial,
}

/// The fixed-point construction applied to the coefficient spectrum `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixedPointTag {
    /// Categorical fixed points `A^{C_p}` as a `C_2`-spectrum.
    CategoricalCp,
    /// `A` restricted to `C_p`.
    Restricted,
    /// Geometric fixed points `Φ^{C_p} A`.
    GeometricCp,
    /// `Φ^{C_2} A ⊕ Φ^G A`.
    GeometricC2AndG,
}

impl fmt::Display for FixedPointTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedPointTag::CategoricalCp => "A^{C_p}",
            FixedPointTag::Restricted => "res_{C_p} A",
            FixedPointTag::GeometricCp => "Phi^{C_p} A",
            FixedPointTag::GeometricC2AndG => "Phi^{C_2} A + Phi^G A",
        })
    }
}

/// Where a `D_2p` homotopy group of one piece is computed, for a general
/// coefficient spectrum, and its value for `A = HZ̄`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub part: Part,
    pub target: TargetGroup,
    /// In the grading of the target group.
    pub degree: RODegree,
    pub construction: FixedPointTag,
    /// Only for `F2`: the group vanishes by the parity rule.
    pub parity_vanishes: bool,
    pub hz: GradedGroup,
}

impl Reduction {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "part": self.part,
            "target": self.target,
            "degree": [self.degree.k, self.degree.m, self.degree.n],
            "construction": self.construction.to_string(),
            "parity_vanishes": self.parity_vanishes,
            "hz": self.hz.to_json(),
        })
    }
}

pub fn reduce_generald2p(p: u64, part: Part, k: i64, m: i64, n: i64) -> Result<Reduction, RoqError> {
    super::check_prime(p)?;
    let here = RODegree::new(k, m, n);
    Ok(match part {
        Part::F1 => Reduction {
            part,
            target: TargetGroup::C2,
            degree: RODegree::new(k + n, m + n, 0),
            construction: FixedPointTag::CategoricalCp,
            parity_vanishes: false,
            hz: f1_piece_at(p, k, m, n)?,
        },
        Part::F2 => Reduction {
            part,
            target: TargetGroup::Cp,
            degree: RODegree::new(k + m, 0, n),
            construction: FixedPointTag::Restricted,
            parity_vanishes: parity_odd(k + m, m),
            hz: f2_piece_at(p, k, m, n)?,
        },
        Part::Tilde1 => Reduction {
            part,
            target: TargetGroup::C2,
            degree: RODegree::new(k, m, 0),
            construction: FixedPointTag::GeometricCp,
            parity_vanishes: false,
            hz: GradedGroup::zero(Ring::D2pInvP, here),
        },
        Part::Tilde2 => Reduction {
            part,
            target: TargetGroup::Trivial,
            degree: RODegree::new(k + n, 0, 0),
            construction: FixedPointTag::GeometricC2AndG,
            parity_vanishes: false,
            hz: GradedGroup::zero(Ring::D2pInv2, here),
        },
    })
}

/// One summand of `π_{k+mσ+nγ} HA_G` after inverting a prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HagrogComponent {
    /// The Eilenberg–MacLane spectrum whose homotopy appears.
    pub coefficients: &'static str,
    pub target: TargetGroup,
    pub degree: RODegree,
    /// Known numeric value; `None` for values outside the scope of this crate.
    pub value: Option<AbelianGroup>,
    /// The summand vanishes by the parity rule.
    pub vanishes: bool,
}

/// Burnside-coefficient homotopy with `inverted ∈ {2, p}` inverted.
pub fn hagrog_at(p: u64, k: i64, m: i64, n: i64, inverted: u64) -> Result<Vec<HagrogComponent>, RoqError> {
    super::check_prime(p)?;
    if inverted == p {
        return Ok(vec![
            HagrogComponent {
                coefficients: "HA_{C_2}^2",
                target: TargetGroup::C2,
                degree: RODegree::new(k + n, m + n, 0),
                value: None,
                vanishes: false,
            },
            HagrogComponent {
                coefficients: "HA_{C_2}",
                target: TargetGroup::C2,
                degree: RODegree::new(k, m, 0),
                value: None,
                vanishes: false,
            },
        ]);
    }
    if inverted != 2 {
        return Err(RoqError::BadPrime(inverted));
    }
    let vanishes = parity_odd(k + m, m);
    Ok(vec![
        HagrogComponent {
            coefficients: "HZ^2",
            target: TargetGroup::Trivial,
            degree: RODegree::new(k + n, 0, 0),
            value: Some(if k + n == 0 { AbelianGroup::free(2) } else { AbelianGroup::zero() }),
            vanishes: false,
        },
        HagrogComponent {
            coefficients: "HA_{C_p}",
            target: TargetGroup::Cp,
            degree: RODegree::new(k + m, 0, n),
            value: vanishes.then(AbelianGroup::zero),
            vanishes,
        },
    ])
}
