//! Turning command-line arguments into groups, subgroups, families,
//! coefficient functors and complexes.
//!
//! Every input accepts either a path to a JSON file or a short inline form
//! such as `dihedral:6`, `seed:C2` or `sphere:1,1@dihedral:6`.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use std::sync::Arc;

use equisplit_core::arith::PrimeSet;
use equisplit_core::families::Family;
use equisplit_core::gcw::{dihedral_lattice, Cell, GCWComplex, SignedCell};
use equisplit_core::group::{FiniteGroup, SubgroupId, SubgroupLattice};
use equisplit_core::mackey::{burnside_mackey, constant_mackey, family_submodule, sub_functors, zero_mackey, MackeyFunctor};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Reads `text` as JSON when it names an existing file or starts with `{`.
fn json_source(text: &str) -> Result<Option<Value>, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Ok(Some(serde_json::from_str(trimmed)?));
    }
    if Path::new(trimmed).is_file() {
        let body = std::fs::read_to_string(trimmed).map_err(|e| usage(format!("cannot read {trimmed}: {e}")))?;
        return Ok(Some(serde_json::from_str(&body)?));
    }
    Ok(None)
}

fn count(args: &[usize], want: usize, name: &str) -> Result<(), CliError> {
    if args.len() == want {
        Ok(())
    } else {
        Err(usage(format!("{name} takes {want} argument(s), got {}", args.len())))
    }
}

fn constructor(name: &str, args: &[usize]) -> Result<FiniteGroup, CliError> {
    let one = |n: &str| count(args, 1, n).map(|_| args[0]);
    let g = match name {
        "trivial" => FiniteGroup::cyclic(1),
        "cyclic" => FiniteGroup::cyclic(one(name)?),
        "dihedral" => FiniteGroup::dihedral(one(name)?),
        "symmetric" => FiniteGroup::symmetric(one(name)?),
        "alternating" => FiniteGroup::alternating(one(name)?),
        "dicyclic" => FiniteGroup::dicyclic(one(name)?),
        "quaternion" => {
            count(args, 0, name)?;
            FiniteGroup::quaternion()
        }
        "semidirect" => {
            count(args, 3, name)?;
            FiniteGroup::semidirect_cyclic(args[0], args[1], args[2])
        }
        other => return Err(usage(format!("unknown group constructor `{other}`"))),
    };
    Ok(g?)
}

fn parse_numbers(text: &str) -> Result<Vec<usize>, CliError> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("`{t}` is not a non-negative integer"))))
        .collect()
}

/// `name[:a,b,...]` factors joined by `*` for direct products.
fn group_shorthand(text: &str) -> Result<FiniteGroup, CliError> {
    let mut factors = Vec::new();
    for part in text.split('*') {
        let (name, args) = part.trim().split_once(':').unwrap_or((part.trim(), ""));
        factors.push(constructor(&name.to_ascii_lowercase(), &parse_numbers(args)?)?);
    }
    let mut it = factors.into_iter();
    let first = it.next().ok_or_else(|| usage("empty group description"))?;
    it.try_fold(first, |acc, g| FiniteGroup::direct_product(&acc, &g).map_err(CliError::from))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupJson {
    Table { label: Option<String>, table: Vec<Vec<usize>> },
    Permutations { label: Option<String>, permutations: Vec<Vec<usize>>, degree: usize },
    Constructor { constructor: String, #[serde(default)] args: Vec<usize> },
}

pub fn group_from_value(v: &Value) -> Result<FiniteGroup, CliError> {
    if let Value::String(s) = v {
        return parse_group(s);
    }
    if let Some(order) = v.get("order").and_then(Value::as_u64) {
        if let Some(t) = v.get("table").and_then(Value::as_array) {
            if t.len() as u64 != order {
                return Err(usage(format!("order {order} but the table has {} rows", t.len())));
            }
        }
    }
    let g = match serde_json::from_value::<GroupJson>(v.clone())? {
        GroupJson::Table { label, table } => FiniteGroup::from_table(label.unwrap_or_else(|| "G".into()), table)?,
        GroupJson::Permutations { label, permutations, degree } => {
            FiniteGroup::from_permutations(label.unwrap_or_else(|| "G".into()), &permutations, degree)?
        }
        GroupJson::Constructor { constructor: name, args } => constructor(&name.to_ascii_lowercase(), &args)?,
    };
    Ok(g)
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, CliError> {
    match json_source(text)? {
        Some(v) => group_from_value(&v),
        None => group_shorthand(text),
    }
}

pub fn lattice_of(g: FiniteGroup) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(&g))
}

/// A subgroup by id, by its printed name (`C3#2`, `G`, `1`), by `C<n>` or
/// `H<n>` for the first cyclic or first subgroup of that order, or by
/// generators `<a,b>`.
pub fn parse_subgroup(l: &SubgroupLattice, text: &str) -> Result<SubgroupId, CliError> {
    let t = text.trim();
    let t = t.strip_prefix('#').unwrap_or(t);
    if let Ok(id) = t.parse::<usize>() {
        return if id < l.len() { Ok(id) } else { Err(usage(format!("subgroup id {id} out of range 0..{}", l.len()))) };
    }
    if let Some(inner) = t.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        let gens = parse_numbers(inner)?;
        if let Some(&g) = gens.iter().find(|&&g| g >= l.group().order()) {
            return Err(usage(format!("element {g} out of range")));
        }
        return Ok(l.generated(&gens));
    }
    if let Some(id) = (0..l.len()).find(|&h| l.describe(h) == t) {
        return Ok(id);
    }
    let by_order = |rest: &str, cyclic: bool| -> Option<SubgroupId> {
        let n: usize = rest.parse().ok()?;
        (0..l.len()).find(|&h| {
            l.order_of(h) == n
                && (!cyclic || l.subgroup(h).elements().iter().any(|&g| l.group().element_order(g) == n))
        })
    };
    let found = match t.chars().next() {
        Some('C') => by_order(&t[1..], true),
        Some('H') => by_order(&t[1..], false),
        _ => None,
    };
    found.ok_or_else(|| usage(format!("no subgroup matches `{text}`")))
}

/// A subgroup from its element list.
fn subgroup_from_elements(l: &SubgroupLattice, elements: &[usize]) -> Result<SubgroupId, CliError> {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    l.find(&sorted).ok_or_else(|| usage(format!("{elements:?} is not a subgroup")))
}

/// Splits on commas that are not inside `<...>`.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in text.char_indices() {
        match ch {
            '<' => depth += 1,
            '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// `seed:C2[,C3...]`, `all`, `empty`, `proper`, or JSON `{"seeds": [[elements]]}`.
pub fn parse_family(l: &SubgroupLattice, text: &str) -> Result<Family, CliError> {
    if let Some(v) = json_source(text)? {
        let seeds = v
            .get("seeds")
            .and_then(Value::as_array)
            .ok_or_else(|| usage("family JSON needs a `seeds` list"))?;
        let mut ids = Vec::new();
        for s in seeds {
            let elems: Vec<usize> = serde_json::from_value(s.clone())?;
            ids.push(subgroup_from_elements(l, &elems)?);
        }
        return Ok(Family::closure(l, &ids));
    }
    match text.trim() {
        "all" => Ok(Family::all(l)),
        "empty" => Ok(Family::empty()),
        "proper" => {
            let seeds: Vec<SubgroupId> = (0..l.len()).filter(|&h| h != l.whole()).collect();
            Ok(Family::closure(l, &seeds))
        }
        t => {
            let body = t.strip_prefix("seed:").ok_or_else(|| usage(format!("unknown family `{t}`")))?;
            let ids = split_top(body).into_iter().map(|s| parse_subgroup(l, s)).collect::<Result<Vec<_>, _>>()?;
            Ok(Family::closure(l, &ids))
        }
    }
}

pub fn parse_primes(text: &str) -> Result<PrimeSet, CliError> {
    let ps = parse_numbers(text)?;
    if let Some(&q) = ps.iter().find(|&&q| !equisplit_core::arith::is_prime(q as u64)) {
        return Err(usage(format!("{q} is not prime")));
    }
    Ok(PrimeSet::from_primes(ps.into_iter().map(|q| q as u64)))
}

/// `ZBar`, `ABurnside`, `M`, `N` (the last two need a family) or `Zero`.
pub fn parse_mackey(
    l: &Arc<SubgroupLattice>,
    text: &str,
    family: Option<&Family>,
    primes: &PrimeSet,
) -> Result<MackeyFunctor, CliError> {
    let need = || family.ok_or_else(|| usage(format!("coefficient `{text}` needs --family")));
    Ok(match text.to_ascii_lowercase().as_str() {
        "zbar" | "z" => constant_mackey(l, primes),
        "aburnside" | "a" | "burnside" => burnside_mackey(l, primes),
        "m" | "m_f" => family_submodule(l, need()?, primes),
        "n" | "n_f" => sub_functors(l, need()?, primes)?.n,
        "zero" | "0" => zero_mackey(l, primes),
        other => return Err(usage(format!("unknown coefficient functor `{other}`"))),
    })
}

#[derive(Deserialize)]
struct CellJson {
    id: Value,
    dim: usize,
    label: Option<String>,
}

#[derive(Deserialize)]
struct ComplexJson {
    group: Value,
    cells: Vec<CellJson>,
    #[serde(default)]
    action: BTreeMap<String, Vec<(Value, i8)>>,
    #[serde(default)]
    boundary: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default)]
    based: bool,
}

fn key(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Fills in the action of every element from the ones given, by closure.
fn complete_action(g: &FiniteGroup, given: BTreeMap<usize, Vec<SignedCell>>, cells: usize) -> Result<Vec<Vec<SignedCell>>, CliError> {
    let mut rows: Vec<Option<Vec<SignedCell>>> = vec![None; g.order()];
    rows[0] = Some((0..cells).map(|c| (c, 1)).collect());
    for (e, row) in &given {
        rows[*e] = Some(row.clone());
    }
    let mut queue: VecDeque<usize> = (0..g.order()).filter(|&e| rows[e].is_some()).collect();
    while let Some(e) = queue.pop_front() {
        for (&s, srow) in &given {
            let es = g.mul(s, e);
            if rows[es].is_none() {
                let erow = rows[e].clone().expect("known row");
                rows[es] = Some(erow.iter().map(|&(img, sign)| (srow[img].0, sign * srow[img].1)).collect());
                queue.push_back(es);
            }
        }
    }
    rows.into_iter()
        .enumerate()
        .map(|(e, r)| r.ok_or_else(|| usage(format!("the given action does not determine element {e}"))))
        .collect()
}

fn complex_from_json(v: Value) -> Result<GCWComplex, CliError> {
    let cj: ComplexJson = serde_json::from_value(v)?;
    let g = group_from_value(&cj.group)?;
    let l = lattice_of(g.clone());
    let ids: Vec<String> = cj.cells.iter().map(|c| key(&c.id)).collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != ids.len() {
        return Err(usage("cell ids are not distinct"));
    }
    let cells: Vec<Cell> = cj
        .cells
        .iter()
        .zip(&ids)
        .map(|(c, id)| Cell::new(c.dim, c.label.clone().unwrap_or_else(|| id.clone())))
        .collect();
    let of_dim = |d: usize| -> Vec<usize> { (0..cells.len()).filter(|&i| cells[i].dim == d).collect() };
    let mut boundary = vec![Vec::new(); cells.len()];
    for (d, rows) in &cj.boundary {
        let d: usize = d.parse().map_err(|_| usage(format!("boundary key `{d}` is not a dimension")))?;
        if d == 0 {
            continue;
        }
        let (tops, faces) = (of_dim(d), of_dim(d - 1));
        if rows.len() != tops.len() || rows.iter().any(|r| r.len() != faces.len()) {
            return Err(usage(format!(
                "boundary in dimension {d} must be {} rows of {} entries",
                tops.len(),
                faces.len()
            )));
        }
        for (r, &c) in rows.iter().zip(&tops) {
            boundary[c] = r.iter().zip(&faces).filter(|(a, _)| **a != 0).map(|(&a, &f)| (f, a)).collect();
        }
    }
    let mut given = BTreeMap::new();
    for (e, row) in cj.action {
        let e: usize = e.parse().map_err(|_| usage(format!("action key `{e}` is not an element")))?;
        if e >= g.order() {
            return Err(usage(format!("element {e} out of range")));
        }
        if row.len() != cells.len() {
            return Err(usage(format!("action of {e} lists {} cells, expected {}", row.len(), cells.len())));
        }
        let row = row
            .into_iter()
            .map(|(img, s)| index.get(key(&img).as_str()).map(|&i| (i, s)).ok_or_else(|| usage(format!("unknown cell {img}"))))
            .collect::<Result<Vec<_>, _>>()?;
        given.insert(e, row);
    }
    let action = complete_action(&g, given, cells.len())?;
    Ok(GCWComplex::new(l, cells, boundary, action, cj.based)?)
}

fn dihedral_p(g: &FiniteGroup) -> Result<usize, CliError> {
    let n = g.order();
    if n >= 6 && n.is_multiple_of(2) && FiniteGroup::dihedral(n)?.table() == g.table() {
        Ok(n / 2)
    } else {
        Err(usage("this complex needs a dihedral group given as dihedral:<order>"))
    }
}

/// `kind[:args]@group`, for example `sphere:1,2@dihedral:6`, `orbit:C2@dihedral:6`,
/// `eg:4@cyclic:3`, or `lambda:n,p` for the `C_p`-sphere `S^{nλ}`.
fn complex_shorthand(text: &str) -> Result<GCWComplex, CliError> {
    let (kind, group) = match text.split_once('@') {
        Some((k, g)) => (k.trim(), Some(g.trim())),
        None => (text.trim(), None),
    };
    let (name, args) = kind.split_once(':').unwrap_or((kind, ""));
    if name == "lambda" {
        let a = parse_numbers(args)?;
        count(&a, 2, "lambda")?;
        return Ok(GCWComplex::sphere_lambda_cp(a[0], a[1])?.cyclic()?);
    }
    let g = parse_group(group.ok_or_else(|| usage(format!("complex `{text}` needs @group")))?)?;
    let l = if matches!(name, "sigma" | "gamma" | "sphere") { dihedral_lattice(dihedral_p(&g)?)? } else { lattice_of(g) };
    let x = match name {
        "point" => GCWComplex::point(&l),
        "empty" => GCWComplex::empty(&l),
        "orbit" => GCWComplex::orbit(&l, parse_subgroup(&l, args)?),
        "interval" => GCWComplex::orbit_interval(&l, parse_subgroup(&l, args)?),
        "eg" => {
            let a = parse_numbers(args)?;
            count(&a, 1, "eg")?;
            GCWComplex::eg_skeleton(&l, a[0])?
        }
        "sigma" => GCWComplex::sphere_sigma_d2p(&l)?,
        "gamma" => GCWComplex::sphere_gamma_d2p(&l)?,
        "sphere" => {
            let a = parse_numbers(args)?;
            count(&a, 2, "sphere")?;
            GCWComplex::sphere_d2p(&l, a[0], a[1])?
        }
        other => return Err(usage(format!("unknown complex `{other}`"))),
    };
    Ok(x)
}

pub fn parse_complex(text: &str) -> Result<GCWComplex, CliError> {
    match json_source(text)? {
        Some(v) => complex_from_json(v),
        None => complex_shorthand(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_forms() {
        assert_eq!(parse_group("dihedral:6").unwrap().order(), 6);
        assert_eq!(parse_group("cyclic:2*cyclic:3").unwrap().order(), 6);
        assert_eq!(parse_group(r#"{"constructor": "symmetric", "args": [3]}"#).unwrap().order(), 6);
        let table = r#"{"label": "C2", "order": 2, "table": [[0,1],[1,0]]}"#;
        assert_eq!(parse_group(table).unwrap().order(), 2);
        let perms = r#"{"permutations": [[1,2,0],[1,0,2]], "degree": 3}"#;
        assert_eq!(parse_group(perms).unwrap().order(), 6);
        assert!(parse_group("nonsense:3").is_err());
        assert!(parse_group(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn subgroup_and_family_forms() {
        let l = lattice_of(parse_group("dihedral:6").unwrap());
        let c2 = parse_subgroup(&l, "C2").unwrap();
        assert_eq!(l.order_of(c2), 2);
        assert_eq!(parse_subgroup(&l, "G").unwrap(), l.whole());
        assert_eq!(l.order_of(parse_subgroup(&l, "<1>").unwrap()), 3);
        assert!(parse_subgroup(&l, "C5").is_err());
        let f = parse_family(&l, "seed:C2").unwrap();
        assert_eq!(f.len(), 4);
        let g = parse_family(&l, r#"{"seeds": [[0, 3]]}"#).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_family(&l, "seed:C3,C2").unwrap().len(), 5);
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("sphere:1,1@dihedral:6").unwrap().top(), 4);
        assert_eq!(parse_complex("orbit:C2@dihedral:6").unwrap().len(), 3);
        assert!(parse_complex("sphere:1,1@cyclic:6").is_err());
        let circle = r#"{"group": "cyclic:2", "cells": [{"id": "v", "dim": 0}, {"id": "e", "dim": 1}],
            "action": {"1": [["v", 1], ["e", -1]]}, "boundary": {"1": [[0]]}}"#;
        let x = parse_complex(circle).unwrap();
        assert_eq!(x.len(), 2);
        let bad = r#"{"group": "cyclic:2", "cells": [{"id": 0, "dim": 0}], "action": {"1": [[0, -1]]}}"#;
        assert!(parse_complex(bad).is_err() || !parse_complex(bad).unwrap().is_genuine());
    }
}
