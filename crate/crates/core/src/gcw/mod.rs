//! Finite G-CW complexes with signed cellular actions.
//!
//! Cells are numbered globally; `boundary[c]` lists the faces of `c` with
//! integer coefficients and `action[g][c]` is the image of `c` under `g`
//! together with an orientation sign. A based complex carries an implicit
//! basepoint that is not listed among its cells, so its cellular chains are
//! the reduced chains.

mod bredon;
mod build;
mod checks;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, SubgroupId, SubgroupLattice};
use crate::linalg::{AbelianGroup, ChainComplex, ChainError, ChainMap, Direction, IntMatrix};

pub use bredon::{
    bredon_chains, bredon_cohomology, bredon_cohomology_at, bredon_homology, bredon_homology_at,
    burnside_homology_formula, n_f_homology, normalizer_chain_map,
};
pub use build::{dihedral_lattice, LambdaSphere};
pub use checks::{induced_map_on_homology, join_sequence_check, orbit_map_checks};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcwError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("boundary of the boundary of cell {cell} is nonzero")]
    NotAComplex { cell: usize },
    #[error("element {element} does not commute with the boundary of cell {cell}")]
    NotEquivariant { element: usize, cell: usize },
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("element {element} fixes cell {cell} with sign -1")]
    NonGenuineAction { element: usize, cell: usize },
    #[error("complexes are over different groups")]
    IncompatibleGroups,
    #[error("operation needs a based complex")]
    NotBased,
    #[error("operation needs an unbased complex")]
    Based,
    #[error("coefficients have relations at level {level}; only free levels are supported")]
    NonFreeCoefficients { level: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub dim: usize,
    pub label: String,
}

impl Cell {
    pub fn new(dim: usize, label: impl Into<String>) -> Self {
        Self { dim, label: label.into() }
    }
}

/// Signed image of a cell: `g·c = sign · image`.
pub type SignedCell = (usize, i8);

/// Homology groups indexed by degree, starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HomologyResult {
    pub degrees: Vec<AbelianGroup>,
}

impl HomologyResult {
    pub fn from_chains(c: &ChainComplex) -> Self {
        Self { degrees: c.all_homology() }
    }

    pub fn at(&self, n: usize) -> AbelianGroup {
        self.degrees.get(n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(AbelianGroup::is_zero)
    }

    /// Degreewise direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let n = self.degrees.len().max(other.degrees.len());
        Self { degrees: (0..n).map(|i| self.at(i).direct_sum(&other.at(i))).collect() }
    }

    pub fn localize(&self, primes: &crate::arith::PrimeSet) -> Self {
        Self { degrees: self.degrees.iter().map(|g| g.localize(primes)).collect() }
    }

    /// Equal after dropping trailing zero groups.
    pub fn same_as(&self, other: &Self) -> bool {
        let n = self.degrees.len().max(other.degrees.len());
        (0..n).all(|i| self.at(i) == other.at(i))
    }

    pub fn truncated(&self, below: usize) -> Self {
        Self { degrees: self.degrees.iter().take(below).cloned().collect() }
    }
}

impl std::fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Orbits of a set of cells under a set of group elements.
#[derive(Debug, Clone)]
pub(crate) struct Orbits {
    /// Representative cell of each orbit.
    pub reps: Vec<usize>,
    /// For each cell in the set: `(orbit, sign, g)` with `g·rep = sign·cell`.
    pub of: BTreeMap<usize, (usize, i8, usize)>,
}

#[derive(Debug, Clone)]
pub struct GCWComplex {
    lattice: Arc<SubgroupLattice>,
    cells: Vec<Cell>,
    boundary: Vec<Vec<(usize, i64)>>,
    action: Vec<Vec<SignedCell>>,
    based: bool,
    genuine: bool,
    by_dim: Vec<Vec<usize>>,
    position: Vec<usize>,
}

fn add_term(acc: &mut BTreeMap<usize, i64>, cell: usize, coeff: i64) {
    let slot = acc.entry(cell).or_insert(0);
    *slot += coeff;
    if *slot == 0 {
        acc.remove(&cell);
    }
}

impl GCWComplex {
    /// Validates and assembles a complex.
    pub fn new(
        lattice: Arc<SubgroupLattice>,
        cells: Vec<Cell>,
        boundary: Vec<Vec<(usize, i64)>>,
        action: Vec<Vec<SignedCell>>,
        based: bool,
    ) -> Result<Self, GcwError> {
        let n = cells.len();
        if boundary.len() != n {
            return Err(GcwError::Malformed(format!("{} boundaries for {n} cells", boundary.len())));
        }
        let top = cells.iter().map(|c| c.dim + 1).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        let mut position = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            position[i] = by_dim[c.dim].len();
            by_dim[c.dim].push(i);
        }
        let mut x = Self { lattice, cells, boundary, action, based, genuine: true, by_dim, position };
        x.validate()?;
        x.genuine = x.first_sign_flip(0..x.group().order()).is_none();
        Ok(x)
    }

    fn validate(&self) -> Result<(), GcwError> {
        let n = self.cells.len();
        let order = self.group().order();
        for (c, faces) in self.boundary.iter().enumerate() {
            for &(f, _) in faces {
                if f >= n || self.cells[f].dim + 1 != self.cells[c].dim {
                    return Err(GcwError::Malformed(format!("cell {c} has a face {f} of the wrong dimension")));
                }
            }
        }
        if self.action.len() != order {
            return Err(GcwError::Malformed(format!("action rows {} for a group of order {order}", self.action.len())));
        }
        for (g, row) in self.action.iter().enumerate() {
            if row.len() != n {
                return Err(GcwError::Malformed(format!("action of {g} has {} entries", row.len())));
            }
            for (c, &(img, s)) in row.iter().enumerate() {
                if img >= n || self.cells[img].dim != self.cells[c].dim || (s != 1 && s != -1) {
                    return Err(GcwError::Malformed(format!("bad image of cell {c} under {g}")));
                }
            }
        }
        if n > 0 && self.action[0].iter().enumerate().any(|(c, &(img, s))| img != c || s != 1) {
            return Err(GcwError::NotAnAction("identity acts nontrivially".into()));
        }
        let grp = self.group();
        for g in 0..order {
            for h in 0..order {
                let gh = grp.mul(g, h);
                for c in 0..n {
                    let (a, s1) = self.action[h][c];
                    let (b, s2) = self.action[g][a];
                    if self.action[gh][c] != (b, s1 * s2) {
                        return Err(GcwError::NotAnAction(format!("({g}·{h}) and {g}·({h}·) differ on cell {c}")));
                    }
                }
            }
        }
        for c in 0..n {
            let mut acc = BTreeMap::new();
            for &(f, a) in &self.boundary[c] {
                for &(ff, b) in &self.boundary[f] {
                    add_term(&mut acc, ff, a * b);
                }
            }
            if !acc.is_empty() {
                return Err(GcwError::NotAComplex { cell: c });
            }
        }
        for g in 0..order {
            for c in 0..n {
                let (img, s) = self.action[g][c];
                let mut lhs = BTreeMap::new();
                for &(f, a) in &self.boundary[img] {
                    add_term(&mut lhs, f, a * i64::from(s));
                }
                let mut rhs = BTreeMap::new();
                for &(f, a) in &self.boundary[c] {
                    let (fi, fs) = self.action[g][f];
                    add_term(&mut rhs, fi, a * i64::from(fs));
                }
                if lhs != rhs {
                    return Err(GcwError::NotEquivariant { element: g, cell: c });
                }
            }
        }
        Ok(())
    }

    fn first_sign_flip(&self, elements: impl IntoIterator<Item = usize>) -> Option<(usize, usize)> {
        for g in elements {
            for (c, &(img, s)) in self.action[g].iter().enumerate() {
                if img == c && s == -1 {
                    return Some((g, c));
                }
            }
        }
        None
    }

    /// Errors unless every element of `elements` fixing a cell does so with sign +1.
    pub fn require_genuine(&self, elements: &[usize]) -> Result<(), GcwError> {
        match self.first_sign_flip(elements.iter().copied()) {
            Some((element, cell)) => Err(GcwError::NonGenuineAction { element, cell }),
            None => Ok(()),
        }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn group(&self) -> &FiniteGroup {
        self.lattice.group()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Highest cell dimension plus one, so `0` for the empty complex.
    pub fn top(&self) -> usize {
        self.by_dim.len()
    }

    pub fn cells_of_dim(&self, n: usize) -> &[usize] {
        self.by_dim.get(n).map_or(&[], Vec::as_slice)
    }

    /// Index of a cell among the cells of its dimension.
    pub fn position(&self, cell: usize) -> usize {
        self.position[cell]
    }

    pub fn boundary(&self, cell: usize) -> &[(usize, i64)] {
        &self.boundary[cell]
    }

    pub fn act(&self, g: usize, cell: usize) -> SignedCell {
        self.action[g][cell]
    }

    pub fn is_based(&self) -> bool {
        self.based
    }

    pub fn is_genuine(&self) -> bool {
        self.genuine
    }

    pub(crate) fn same_group(&self, other: &GCWComplex) -> Result<(), GcwError> {
        if self.group().table() == other.group().table() {
            Ok(())
        } else {
            Err(GcwError::IncompatibleGroups)
        }
    }

    /// `∂_n` with rows indexed by `(n-1)`-cells and columns by `n`-cells.
    pub fn boundary_matrix(&self, n: usize) -> IntMatrix {
        let cols = self.cells_of_dim(n);
        let rows = if n == 0 { 0 } else { self.cells_of_dim(n - 1).len() };
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for &(f, a) in &self.boundary[c] {
                *m.get_mut(self.position[f], j) += a;
            }
        }
        m
    }

    /// Cellular chains; reduced when the complex is based.
    pub fn chains(&self) -> ChainComplex {
        let dims = (0..self.top()).map(|n| self.cells_of_dim(n).len()).collect();
        let maps = (0..self.top()).map(|n| self.boundary_matrix(n)).collect();
        ChainComplex::new(Direction::Homological, dims, maps).expect("validated complex")
    }

    /// Homology of the underlying complex, reduced exactly when based.
    pub fn homology(&self) -> HomologyResult {
        HomologyResult::from_chains(&self.chains())
    }

    /// Reduced homology of the underlying complex.
    pub fn reduced_homology(&self) -> HomologyResult {
        let mut h = self.homology();
        if !self.based && !self.is_empty() {
            h.degrees[0].rank -= 1;
        }
        h
    }

    /// Setwise stabilizer of a cell.
    pub fn stabilizer(&self, cell: usize) -> SubgroupId {
        let elems: Vec<usize> = (0..self.group().order()).filter(|&g| self.action[g][cell].0 == cell).collect();
        self.lattice.find(&elems).expect("stabilizers are subgroups")
    }

    /// Cells fixed by every element of `h`, in increasing order.
    pub fn fixed_cells(&self, h: SubgroupId) -> Result<Vec<usize>, GcwError> {
        let elems = self.lattice.subgroup(h).elements();
        self.require_genuine(elems)?;
        let fixed: Vec<usize> =
            (0..self.len()).filter(|&c| elems.iter().all(|&g| self.action[g][c].0 == c)).collect();
        let mut member = vec![false; self.len()];
        for &c in &fixed {
            member[c] = true;
        }
        for &c in &fixed {
            if let Some(&(f, _)) = self.boundary[c].iter().find(|(f, _)| !member[*f]) {
                return Err(GcwError::HypothesisViolated(format!(
                    "fixed cell {c} has the unfixed face {f}, so the fixed set is not a subcomplex"
                )));
            }
        }
        Ok(fixed)
    }

    /// Keeps `cells` (closed under faces and under `elements`) as a complex over `elements`.
    fn subcomplex(&self, cells: &[usize], elements: &[usize], label: String) -> Result<GCWComplex, GcwError> {
        let (grp, incl) = self.group().subgroup_group(elements, label);
        let index: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let new_cells = cells.iter().map(|&c| self.cells[c].clone()).collect();
        let boundary = cells.iter().map(|&c| self.boundary[c].iter().map(|&(f, a)| (index[&f], a)).collect()).collect();
        let action = incl
            .iter()
            .map(|&g| {
                cells
                    .iter()
                    .map(|&c| {
                        let (img, s) = self.action[g][c];
                        (index[&img], s)
                    })
                    .collect()
            })
            .collect();
        GCWComplex::new(Arc::new(SubgroupLattice::new(&grp)), new_cells, boundary, action, self.based)
    }

    /// The same complex with the action restricted to a subgroup.
    pub fn restrict_to_subgroup(&self, h: SubgroupId) -> Result<GCWComplex, GcwError> {
        let all: Vec<usize> = (0..self.len()).collect();
        let label = format!("{}|{}", self.group().label(), self.lattice.describe(h));
        self.subcomplex(&all, self.lattice.subgroup(h).elements(), label)
    }

    /// The complex with the trivial group acting.
    pub fn underlying(&self) -> GCWComplex {
        self.restrict_to_subgroup(self.lattice.trivial()).expect("restriction of a valid complex")
    }

    /// `X^H` with the action of `N_G(H)`.
    pub fn fixed_subcomplex(&self, h: SubgroupId) -> Result<GCWComplex, GcwError> {
        let cells = self.fixed_cells(h)?;
        let n = self.lattice.normalizer(h);
        let label = format!("N({})", self.lattice.describe(h));
        self.subcomplex(&cells, self.lattice.subgroup(n).elements(), label)
    }

    /// Orbits of `cells` under `elements`, which must preserve the set.
    pub(crate) fn orbits(&self, cells: &[usize], elements: &[usize]) -> Result<Orbits, GcwError> {
        self.require_genuine(elements)?;
        let mut of: BTreeMap<usize, (usize, i8, usize)> = BTreeMap::new();
        let mut reps = Vec::new();
        let member: std::collections::BTreeSet<usize> = cells.iter().copied().collect();
        for &c in cells {
            if of.contains_key(&c) {
                continue;
            }
            let orbit = reps.len();
            reps.push(c);
            for &g in elements {
                let (img, s) = self.action[g][c];
                if !member.contains(&img) {
                    return Err(GcwError::Malformed(format!("element {g} moves cell {c} out of the subcomplex")));
                }
                of.entry(img).or_insert((orbit, s, g));
            }
        }
        Ok(Orbits { reps, of })
    }

    /// Cellular chains of the orbit space of a subcomplex.
    pub(crate) fn quotient_chains(&self, cells: &[usize], elements: &[usize]) -> Result<ChainComplex, GcwError> {
        let orbits = self.orbits(cells, elements)?;
        let top = orbits.reps.iter().map(|&r| self.cells[r].dim + 1).max().unwrap_or(0);
        let mut in_dim = vec![Vec::new(); top];
        let mut slot = vec![0; orbits.reps.len()];
        for (o, &r) in orbits.reps.iter().enumerate() {
            let d = self.cells[r].dim;
            slot[o] = in_dim[d].len();
            in_dim[d].push(o);
        }
        let dims: Vec<usize> = in_dim.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(top);
        for n in 0..top {
            let rows = if n == 0 { 0 } else { dims[n - 1] };
            let mut m = IntMatrix::zeros(rows, dims[n]);
            for (j, &o) in in_dim[n].iter().enumerate() {
                for &(f, a) in &self.boundary[orbits.reps[o]] {
                    let (fo, s, _) = orbits.of[&f];
                    *m.get_mut(slot[fo], j) += a * i64::from(s);
                }
            }
            maps.push(m);
        }
        Ok(ChainComplex::new(Direction::Homological, dims, maps)?)
    }

    /// Homology of `X^H / W_L H` for `H ⊆ L`, reduced when based.
    pub fn fixed_orbit_homology(&self, h: SubgroupId, level: SubgroupId) -> Result<HomologyResult, GcwError> {
        let cells = self.fixed_cells(h)?;
        let n = self.lattice.intersection(self.lattice.normalizer(h), level);
        let chains = self.quotient_chains(&cells, self.lattice.subgroup(n).elements())?;
        Ok(HomologyResult::from_chains(&chains))
    }

    /// `X/K`; when `K` is normal the quotient group acts on the result.
    pub fn orbit_complex(&self, k: SubgroupId) -> Result<GCWComplex, GcwError> {
        Ok(self.orbit_projection(k)?.0)
    }

    /// `X/K` together with the projection, cell by cell.
    pub fn orbit_projection(&self, k: SubgroupId) -> Result<(GCWComplex, Vec<SignedCell>), GcwError> {
        let all: Vec<usize> = (0..self.len()).collect();
        let orbits = self.orbits(&all, self.lattice.subgroup(k).elements())?;
        let proj: Vec<SignedCell> = all.iter().map(|c| (orbits.of[c].0, orbits.of[c].1)).collect();
        let cells: Vec<Cell> = orbits.reps.iter().map(|&r| Cell::new(self.cells[r].dim, format!("[{}]", self.cells[r].label))).collect();
        let boundary = orbits
            .reps
            .iter()
            .map(|&r| {
                let mut acc = BTreeMap::new();
                for &(f, a) in &self.boundary[r] {
                    add_term(&mut acc, proj[f].0, a * i64::from(proj[f].1));
                }
                acc.into_iter().collect()
            })
            .collect();
        let label = format!("{}/{}", self.group().label(), self.lattice.describe(k));
        let (grp, lifts): (FiniteGroup, Vec<usize>) = if self.lattice.is_normal(k) {
            let (q, projection) = self.group().quotient(self.lattice.subgroup(k).elements(), label)?;
            let mut lifts = vec![usize::MAX; q.order()];
            for (g, &img) in projection.iter().enumerate() {
                if lifts[img] == usize::MAX {
                    lifts[img] = g;
                }
            }
            (q, lifts)
        } else {
            (FiniteGroup::cyclic(1)?.with_label(label), vec![0])
        };
        let action = lifts
            .iter()
            .map(|&g| {
                orbits
                    .reps
                    .iter()
                    .map(|&r| {
                        let (img, s) = self.action[g][r];
                        (proj[img].0, s * proj[img].1)
                    })
                    .collect()
            })
            .collect();
        let q = GCWComplex::new(Arc::new(SubgroupLattice::new(&grp)), cells, boundary, action, self.based)?;
        Ok((q, proj))
    }

    /// Chain map on the cellular chains induced by a group element.
    pub fn element_chain_map(&self, g: usize) -> ChainMap {
        self.cellular_chain_map(self, &self.action[g])
    }

    /// Chain map `C(self) -> C(target)` sending each cell to a signed cell.
    pub fn cellular_chain_map(&self, target: &GCWComplex, images: &[SignedCell]) -> ChainMap {
        let components = (0..self.top())
            .map(|n| {
                let rows = target.cells_of_dim(n).len();
                let mut m = IntMatrix::zeros(rows, self.cells_of_dim(n).len());
                for (j, &c) in self.cells_of_dim(n).iter().enumerate() {
                    let (img, s) = images[c];
                    *m.get_mut(target.position(img), j) += i64::from(s);
                }
                m
            })
            .collect();
        ChainMap { components }
    }
}

#[cfg(test)]
mod tests;
