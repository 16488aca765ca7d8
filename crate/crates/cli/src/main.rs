//! `equisplit`: batch front end to the splitting computations.

mod inputs;

use std::io::{stdout, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use equisplit_core::arith::{rational_string, PrimeSet};
use equisplit_core::burnside::{BurnsideError, BurnsideRing};
use equisplit_core::certificate::Certificate;
use equisplit_core::families::{enumerate_families, splitting_coefficients, splitting_primes, FamilyError, FAMILY_CLASS_CAP};
use equisplit_core::gcw::{
    bredon_cohomology_at, bredon_homology_at, burnside_homology_formula, n_f_homology, GcwError, HomologyResult,
};
use equisplit_core::group::{GroupError, SubgroupId, SubgroupLattice};
use equisplit_core::linalg::AbelianGroup;
use equisplit_core::mackey::{box_product, MackeyError};
use equisplit_core::roq::{self, ClassMonomial, RODegree, Ring, RoqError};
use equisplit_core::semidirect::{semidirect_report, SemidirectDecomposition, SemidirectError};
use equisplit_core::verify;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("Burnside ring error: {0}")]
    Burnside(#[from] BurnsideError),
    #[error("family error: {0}")]
    Family(#[from] FamilyError),
    #[error("Mackey functor error: {0}")]
    Mackey(#[from] MackeyError),
    #[error("G-CW error: {0}")]
    Gcw(#[from] GcwError),
    #[error("semidirect error: {0}")]
    Semidirect(#[from] SemidirectError),
    #[error("RO(G) query error: {0}")]
    Roq(#[from] RoqError),
}

#[derive(Parser)]
#[command(name = "equisplit", version, about = "Exact splitting data for equivariant homotopy of finite groups")]
struct Cli {
    /// Print the machine-readable result object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArg {
    /// Group JSON file, inline JSON, or shorthand such as `dihedral:6` or `cyclic:2*cyclic:3`.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct ComplexArg {
    /// Complex JSON file, inline JSON, or shorthand such as `sphere:1,1@dihedral:6`.
    #[arg(long)]
    complex: String,
    /// Level subgroup; a bare integer is a conjugacy class index. Defaults to the whole group.
    #[arg(long)]
    level: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Order, subgroups and conjugacy classes.
    GroupInfo(GroupArg),
    /// Table of marks of `A(L)`.
    Marks {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        level: Option<String>,
    },
    /// Idempotent basis of `A(G) ⊗ Z[S^-1]`.
    Idempotents {
        #[command(flatten)]
        group: GroupArg,
        /// Inverted primes; defaults to the primes dividing the group order.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Splitting coefficients `c_H` of a family.
    FamilyCoeffs {
        #[command(flatten)]
        group: GroupArg,
        /// `seed:C2`, `all`, `proper`, or family JSON `{"seeds": [[elements]]}`.
        #[arg(long)]
        family: String,
    },
    /// Primes that must be inverted to split along a family, or along every family.
    SplittingPrimes {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        family: Option<String>,
        /// Largest number of subgroup classes for which every family is enumerated.
        #[arg(long, default_value_t = FAMILY_CLASS_CAP)]
        seed_cap: usize,
    },
    /// Certificates for a semidirect decomposition `G = G1 ⋊ G2`.
    SemidirectReport {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        normal: String,
        #[arg(long)]
        complement: String,
    },
    /// Box product of two Mackey functors.
    Box {
        #[command(flatten)]
        group: GroupArg,
        /// `ZBar`, `ABurnside`, `M`, `N` or `Zero`.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value = "")]
        primes: String,
    },
    /// Cellular Bredon (co)homology.
    Bredon {
        #[command(flatten)]
        complex: ComplexArg,
        /// `ABurnside` or `ZBar`.
        #[arg(long, default_value = "ZBar")]
        coeff: String,
        #[arg(long)]
        cohomology: bool,
        #[arg(long, default_value = "")]
        primes: String,
    },
    /// `⊕_K H_*(X^K / W K)` over classes of subgroups of the level.
    BurnsideFormula(ComplexArg),
    /// The `N_F` part of the fixed-point formula.
    NfHomology {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "")]
        primes: String,
    },
    /// One graded group of `π_★ HZ̄`.
    RoQuery {
        #[arg(long)]
        p: u64,
        /// `k,m,n` for `k + mσ + nγ`; the C_2 ring reads `k,m` and the C_p ring `k,0,n`.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Invert `2` or `p`.
        #[arg(long)]
        localize: Option<String>,
        /// `d2p`, `c2` or `cp`.
        #[arg(long, default_value = "d2p")]
        ring: String,
    },
    /// Product of two named classes.
    RoMult {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        localize: Option<String>,
        #[arg(long, default_value = "d2p")]
        ring: String,
    },
    /// Localizations and isotropy pieces agree on a box of degrees.
    GlueCheck {
        #[arg(long)]
        p: u64,
        #[arg(long = "box", default_value = "8,6,4")]
        bounds: String,
        /// Also check unit, commutativity and associativity on this box.
        #[arg(long = "ring-laws")]
        ring_laws: Option<String>,
    },
    /// Sign of `τ` on `[S^{k+mσ+nγ}, Σ^t HZ̄]^{C_p}`.
    TauSign {
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Every acceptance suite.
    VerifyAll {
        /// An extra prime for the gluing and ring-law checks.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long = "box", default_value = "8,6,4")]
        bounds: String,
        /// Run only these criteria, e.g. `1,5,9`.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    CheckFailed,
}

struct Outcome {
    status: Status,
    payload: Value,
    text: String,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(payload: Value, text: String) -> Self {
        Outcome { status: Status::Ok, payload, text, diagnostics: vec![] }
    }

    fn checked(certs: &[Certificate], payload: Value, text: String) -> Self {
        let failed: Vec<String> = certs.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
        let status = if failed.is_empty() { Status::Ok } else { Status::CheckFailed };
        Outcome { status, payload, text, diagnostics: failed }
    }
}

fn lattice_arg(g: &GroupArg) -> Result<Arc<SubgroupLattice>, CliError> {
    Ok(inputs::lattice_of(inputs::parse_group(&g.group)?))
}

/// A bare integer picks a conjugacy class; anything else is a subgroup.
fn level_arg(l: &SubgroupLattice, text: Option<&str>) -> Result<SubgroupId, CliError> {
    match text {
        None => Ok(l.whole()),
        Some(t) => match t.trim().parse::<usize>() {
            Ok(c) if c < l.classes().len() => Ok(l.class_rep(c)),
            Ok(c) => Err(CliError::Input(format!("class {c} out of range 0..{}", l.classes().len()))),
            Err(_) => inputs::parse_subgroup(l, t),
        },
    }
}

fn three(text: &str) -> Result<(i64, i64, i64), CliError> {
    let d: RODegree = text.parse().map_err(CliError::Input)?;
    Ok((d.k, d.m, d.n))
}

fn group_json(g: &AbelianGroup) -> Value {
    json!({
        "rank": g.rank,
        "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "display": g.to_string(),
    })
}

fn homology_out(h: &HomologyResult, top: usize, letter: &str) -> (Value, String) {
    let degrees: Vec<Value> = (0..top.max(1))
        .map(|n| {
            let mut v = group_json(&h.at(n));
            v["degree"] = json!(n);
            v
        })
        .collect();
    let text = (0..top.max(1)).map(|n| format!("{letter}{n} = {}", h.at(n))).collect::<Vec<_>>().join("\n");
    (json!({ "degrees": degrees }), text)
}

fn ring_arg(ring: &str, localize: Option<&str>, p: u64) -> Result<Ring, CliError> {
    let base = match ring.to_ascii_lowercase().as_str() {
        "d2p" => Ring::D2p,
        "c2" => Ring::C2,
        "cp" => Ring::Cp,
        other => return Err(CliError::Input(format!("unknown ring `{other}`; expected d2p, c2 or cp"))),
    };
    match (base, localize.map(str::trim)) {
        (r, None) => Ok(r),
        (Ring::D2p, Some("2")) => Ok(Ring::D2pInv2),
        (Ring::D2p, Some(q)) if q == "p" || q == p.to_string() => Ok(Ring::D2pInvP),
        (_, Some(q)) => Err(CliError::Input(format!("--localize {q} is only available for d2p with 2 or p"))),
    }
}

fn group_info(l: &SubgroupLattice) -> Outcome {
    let g = l.group();
    let subgroups: Vec<Value> = (0..l.len())
        .map(|h| {
            json!({
                "id": h,
                "name": l.describe(h),
                "order": l.order_of(h),
                "class": l.class_of(h),
                "elements": l.subgroup(h).elements(),
            })
        })
        .collect();
    let classes: Vec<Value> = (0..l.classes().len())
        .map(|c| {
            let r = l.class_rep(c);
            json!({"class": c, "rep": r, "name": l.describe(r), "order": l.order_of(r), "weylOrder": l.weyl_order(r), "normal": l.is_normal(r)})
        })
        .collect();
    let mut text = format!(
        "{}: order {}, {} subgroups in {} classes{}\n",
        g.label(),
        g.order(),
        l.len(),
        l.classes().len(),
        if g.is_abelian() { ", abelian" } else { "" }
    );
    for c in 0..l.classes().len() {
        let r = l.class_rep(c);
        text.push_str(&format!("class {c}: {} (order {}, |W| = {})\n", l.describe(r), l.order_of(r), l.weyl_order(r)));
    }
    Outcome::ok(
        json!({"label": g.label(), "order": g.order(), "abelian": g.is_abelian(), "subgroups": subgroups, "classes": classes}),
        text.trim_end().to_string(),
    )
}

fn marks(l: Arc<SubgroupLattice>, level: SubgroupId) -> Outcome {
    let ring = BurnsideRing::new(l.clone(), level);
    let t = ring.marks();
    let names: Vec<String> = t.reps.iter().map(|&r| l.describe(r)).collect();
    let mut text = format!("marks of A({}), rows fix, columns orbits: {}\n", l.describe(level), names.join(" "));
    for (k, row) in t.matrix.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        text.push_str(&format!("{:>8} {}\n", names[k], cells.join(" ")));
    }
    Outcome::ok(json!({"level": level, "classes": names, "reps": t.reps, "marks": t.matrix}), text.trim_end().into())
}

fn idempotents(l: Arc<SubgroupLattice>, primes: PrimeSet) -> Result<Outcome, CliError> {
    let ring = BurnsideRing::top(l.clone());
    let es = ring.idempotent_basis(&primes)?;
    let reps = ring.classes().reps();
    let mut payload = serde_json::Map::new();
    let mut text = format!("idempotents over Z[1/{}]\n", primes);
    for (h, e) in es.iter().enumerate() {
        let coeffs: Vec<String> = e.coeffs.iter().map(rational_string).collect();
        let terms: Vec<String> = e
            .coeffs
            .iter()
            .zip(&reps)
            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
            .map(|(c, &r)| format!("{} [G/{}]", rational_string(c), l.describe(r)))
            .collect();
        text.push_str(&format!("e_{} = {}\n", l.describe(reps[h]), terms.join(" + ")));
        payload.insert(l.describe(reps[h]), json!(coeffs));
    }
    Ok(Outcome::ok(Value::Object(payload), text.trim_end().into()))
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::GroupInfo(g) => {
            let l = lattice_arg(&g)?;
            Ok(group_info(&l))
        }
        Command::Marks { group, level } => {
            let l = lattice_arg(&group)?;
            let level = level_arg(&l, level.as_deref())?;
            Ok(marks(l, level))
        }
        Command::Idempotents { group, primes } => {
            let l = lattice_arg(&group)?;
            let primes = match primes {
                Some(p) => inputs::parse_primes(&p)?,
                None => PrimeSet::from_divisors([l.group().order() as u64]),
            };
            idempotents(l, primes)
        }
        Command::FamilyCoeffs { group, family } => {
            let l = lattice_arg(&group)?;
            let f = inputs::parse_family(&l, &family)?;
            let ring = BurnsideRing::top(l.clone());
            let s = splitting_coefficients(&ring, &f);
            let text = f
                .class_indices(&l)
                .into_iter()
                .map(|c| format!("c_{} = {}", l.describe(l.class_rep(c)), rational_string(s.of_class(c))))
                .chain([format!("denominator primes: {}", s.denominator_primes)])
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(s.to_json(&l), text))
        }
        Command::SplittingPrimes { group, family, seed_cap } => {
            let l = lattice_arg(&group)?;
            let ring = BurnsideRing::top(l.clone());
            let families = match family {
                Some(f) => vec![inputs::parse_family(&l, &f)?],
                None => {
                    let classes = l.classes().len();
                    if classes > seed_cap {
                        return Err(FamilyError::TooManyFamilies { classes, cap: seed_cap }.into());
                    }
                    enumerate_families(&l)?
                }
            };
            let reports: Vec<_> = families.iter().map(|f| splitting_primes(&ring, f)).collect();
            let text = reports
                .iter()
                .map(|r| {
                    let names: Vec<String> =
                        r.coefficients.family.class_indices(&l).into_iter().map(|c| l.describe(l.class_rep(c))).collect();
                    format!("{{{}}}: invert {} [{:?}]", names.join(", "), r.required_primes, r.theorem)
                })
                .collect::<Vec<_>>()
                .join("\n");
            let payload: Vec<Value> = reports.iter().map(|r| r.to_json(&l)).collect();
            Ok(Outcome::ok(if payload.len() == 1 { payload[0].clone() } else { json!(payload) }, text))
        }
        Command::SemidirectReport { group, normal, complement } => {
            let l = lattice_arg(&group)?;
            let d = SemidirectDecomposition::new(
                &l,
                inputs::parse_subgroup(&l, &normal)?,
                inputs::parse_subgroup(&l, &complement)?,
            )?;
            let r = semidirect_report(&l, d);
            let certs: Vec<Certificate> = r.certificates.iter().chain(&r.good_subgroup_checks).cloned().collect();
            let text = certs
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::checked(&certs, r.to_json(&l), text))
        }
        Command::Box { group, left, right, family, primes } => {
            let l = lattice_arg(&group)?;
            let primes = inputs::parse_primes(&primes)?;
            let f = family.map(|f| inputs::parse_family(&l, &f)).transpose()?;
            let a = inputs::parse_mackey(&l, &left, f.as_ref(), &primes)?;
            let b = inputs::parse_mackey(&l, &right, f.as_ref(), &primes)?;
            let m = box_product(&a, &b)?;
            let levels: Vec<Value> = m
                .class_groups()
                .iter()
                .map(|(h, g)| {
                    let mut v = group_json(g);
                    v["level"] = json!(l.describe(*h));
                    v
                })
                .collect();
            let text = m
                .class_groups()
                .iter()
                .map(|(h, g)| format!("{}: {g}", l.describe(*h)))
                .chain([format!("zero: {}", m.is_zero())])
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::ok(json!({"levels": levels, "zero": m.is_zero()}), text))
        }
        Command::Bredon { complex, coeff, cohomology, primes } => {
            let x = inputs::parse_complex(&complex.complex)?;
            let level = level_arg(x.lattice(), complex.level.as_deref())?;
            let primes = inputs::parse_primes(&primes)?;
            let c = coeff.to_ascii_lowercase();
            if !matches!(c.as_str(), "zbar" | "aburnside") {
                return Err(CliError::Input(format!("--coeff must be ABurnside or ZBar, not `{coeff}`")));
            }
            let m = inputs::parse_mackey(x.lattice(), &c, None, &primes)?;
            let (h, letter) = if cohomology {
                (bredon_cohomology_at(&x, &m, level)?, "H^")
            } else {
                (bredon_homology_at(&x, &m, level)?, "H_")
            };
            let (payload, text) = homology_out(&h, x.top(), letter);
            Ok(Outcome::ok(payload, text))
        }
        Command::BurnsideFormula(complex) => {
            let x = inputs::parse_complex(&complex.complex)?;
            let level = level_arg(x.lattice(), complex.level.as_deref())?;
            let (payload, text) = homology_out(&burnside_homology_formula(&x, level)?, x.top(), "H_");
            Ok(Outcome::ok(payload, text))
        }
        Command::NfHomology { complex, family, primes } => {
            let x = inputs::parse_complex(&complex.complex)?;
            let level = level_arg(x.lattice(), complex.level.as_deref())?;
            let f = inputs::parse_family(x.lattice(), &family)?;
            let primes = inputs::parse_primes(&primes)?;
            let (payload, text) = homology_out(&n_f_homology(&x, &f, &primes, level)?, x.top(), "H_");
            Ok(Outcome::ok(payload, text))
        }
        Command::RoQuery { p, degree, localize, ring } => {
            let ring = ring_arg(&ring, localize.as_deref(), p)?;
            let degree: RODegree = degree.parse().map_err(CliError::Input)?;
            let g = roq::group_at(ring, p, degree)?;
            Ok(Outcome::ok(g.to_json(), g.to_string()))
        }
        Command::RoMult { p, left, right, localize, ring } => {
            let ring = ring_arg(&ring, localize.as_deref(), p)?;
            let parse = |t: &str| -> Result<ClassMonomial, CliError> {
                let (m, idx) = ClassMonomial::parse(t)?;
                Ok(match idx {
                    Some(i) => m.with_index(i),
                    None => {
                        let g = roq::Element::generator(ring, p, m)?;
                        m.with_index(g.monomial.index)
                    }
                })
            };
            let (x, y) = (parse(&left)?, parse(&right)?);
            let prod = roq::multiply(ring, p, &x, &y)?;
            let rendered = prod.render(ring);
            let degree = x.degree(ring) + y.degree(ring);
            let payload = json!({
                "left": x.render(ring),
                "right": y.render(ring),
                "degree": [degree.k, degree.m, degree.n],
                "product": rendered,
                "determined": prod.is_determined(),
            });
            Ok(Outcome::ok(payload, rendered))
        }
        Command::GlueCheck { p, bounds, ring_laws } => {
            let (bk, bm, bn) = three(&bounds)?;
            let r = roq::localize_check(p, bk, bm, bn)?;
            let mut certs = vec![Certificate::new(
                "gluing",
                r.passed(),
                format!("{} degrees, {} nonzero", r.degrees, r.nonzero_degrees),
            )];
            let mut payload = json!({"gluing": r});
            if let Some(b) = ring_laws {
                let (bk, bm, bn) = three(&b)?;
                let laws = roq::ring_law_check(Ring::D2p, p, bk, bm, bn)?;
                certs.push(Certificate::new(
                    "ring-laws",
                    laws.passed(),
                    format!("{} generators, {} undetermined triples", laws.generators, laws.undetermined),
                ));
                payload["ringLaws"] = json!(laws);
            }
            let text = certs
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::checked(&certs, payload, text))
        }
        Command::TauSign { degree, t } => {
            let (k, m, n) = three(&degree)?;
            let s = roq::tau_sign(k, m, n, t);
            Ok(Outcome::ok(json!({"degree": [k, m, n], "t": t, "sign": s}), s.to_string()))
        }
        Command::VerifyAll { p, bounds, only } => {
            let (bk, bm, bn) = three(&bounds)?;
            let mut results = match only {
                None => verify::run_all(),
                Some(list) => list
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .ok()
                            .and_then(verify::run_criterion)
                            .ok_or_else(|| CliError::Input(format!("no criterion `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let mut extra = Vec::new();
            if let Some(p) = p {
                let r = roq::localize_check(p, bk, bm, bn)?;
                extra.push(Certificate::new(format!("glue p={p}"), r.passed(), format!("{} degrees", r.degrees)));
                let laws = roq::ring_law_check(Ring::D2p, p, 2, 2, 2)?;
                extra.push(Certificate::new(
                    format!("ring laws p={p}"),
                    laws.passed(),
                    format!("{} generators, {} undetermined triples", laws.generators, laws.undetermined),
                ));
            }
            let mut certs: Vec<Certificate> = extra.clone();
            for r in &results {
                certs.push(Certificate::new(format!("criterion {}", r.number), r.passed, r.title));
            }
            let mut text: Vec<String> = results.iter().map(|r| r.summary()).collect();
            text.extend(extra.iter().map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)));
            for r in &mut results {
                r.millis = 0;
            }
            let payload = json!({"criteria": results, "extra": extra});
            Ok(Outcome::checked(&certs, payload, text.join("\n")))
        }
    }
}

/// Output goes through `writeln!` so a closed pipe ends the write quietly.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = cli.json;
    let (code, status, payload, text, diagnostics) = match run(cli.command) {
        Ok(o) => {
            let (code, status) = match o.status {
                Status::Ok => (0, "ok"),
                Status::CheckFailed => (1, "check-failed"),
            };
            (code, status, o.payload, o.text, o.diagnostics)
        }
        Err(e) => (2, "error", Value::Null, String::new(), vec![e.to_string()]),
    };
    if json_mode {
        let out = json!({"status": status, "payload": payload, "diagnostics": diagnostics});
        let _ = writeln!(stdout(), "{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        if !text.is_empty() {
            let _ = writeln!(stdout(), "{text}");
        }
        for d in &diagnostics {
            eprintln!("{status}: {d}");
        }
    }
    ExitCode::from(code)
}
