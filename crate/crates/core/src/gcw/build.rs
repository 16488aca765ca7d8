//! Constructions of G-CW complexes: points, orbits, representation spheres,
//! free models, joins, products, smash products and induction.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Cell, GCWComplex, GcwError, SignedCell};
use crate::families::Family;
use crate::group::{FiniteGroup, SubgroupId, SubgroupLattice};
use crate::linalg::{diagonalize, IntMatrix, Track};

/// Lattice of `D_2p` in the element numbering of [`FiniteGroup::dihedral`].
pub fn dihedral_lattice(p: usize) -> Result<Arc<SubgroupLattice>, GcwError> {
    Ok(Arc::new(SubgroupLattice::new(&FiniteGroup::dihedral(2 * p)?)))
}

/// Half the order, when the group is the dihedral group in standard numbering.
fn dihedral_half(lattice: &SubgroupLattice) -> Result<usize, GcwError> {
    let order = lattice.group().order();
    let ok = order >= 2 && order % 2 == 0 && FiniteGroup::dihedral(order)?.table() == lattice.group().table();
    if ok {
        Ok(order / 2)
    } else {
        Err(GcwError::IncompatibleGroups)
    }
}

impl GCWComplex {
    /// Assembles a complex whose action is given element by element.
    pub fn from_action_fn(
        lattice: Arc<SubgroupLattice>,
        cells: Vec<Cell>,
        boundary: Vec<Vec<(usize, i64)>>,
        based: bool,
        act: impl Fn(usize, usize) -> SignedCell,
    ) -> Result<Self, GcwError> {
        let order = lattice.group().order();
        let action = (0..order).map(|g| (0..cells.len()).map(|c| act(g, c)).collect()).collect();
        GCWComplex::new(lattice, cells, boundary, action, based)
    }

    /// A complex on which every element acts trivially.
    pub fn trivial_action(
        lattice: Arc<SubgroupLattice>,
        cells: Vec<Cell>,
        boundary: Vec<Vec<(usize, i64)>>,
        based: bool,
    ) -> Result<Self, GcwError> {
        Self::from_action_fn(lattice, cells, boundary, based, |_, c| (c, 1))
    }

    /// The empty complex.
    pub fn empty(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::trivial_action(lattice.clone(), vec![], vec![], false).expect("empty complex")
    }

    /// A fixed point.
    pub fn point(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::trivial_action(lattice.clone(), vec![Cell::new(0, "*")], vec![vec![]], false).expect("point")
    }

    /// `S^0` with trivial action, based at one of its points.
    pub fn sphere0(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::trivial_action(lattice.clone(), vec![Cell::new(0, "*")], vec![vec![]], true).expect("S^0")
    }

    /// The discrete orbit `G/H` in dimension 0.
    pub fn orbit(lattice: &Arc<SubgroupLattice>, h: SubgroupId) -> Self {
        let cosets = lattice.left_cosets(h);
        let grp = lattice.group();
        let mut coset_of = vec![0; grp.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let cells = cosets.iter().map(|c| Cell::new(0, format!("{}{}", c[0], lattice.describe(h)))).collect();
        let boundary = vec![vec![]; cosets.len()];
        Self::from_action_fn(lattice.clone(), cells, boundary, false, |g, c| (coset_of[grp.mul(g, cosets[c][0])], 1))
            .expect("orbit")
    }

    /// Two fixed 0-cells joined by a cell `G/H × D^1`.
    pub fn orbit_interval(lattice: &Arc<SubgroupLattice>, h: SubgroupId) -> Self {
        let pts = Self::orbit(lattice, h);
        let mut cells = vec![Cell::new(0, "u"), Cell::new(0, "v")];
        let mut boundary = vec![vec![], vec![]];
        for c in pts.cells() {
            cells.push(Cell::new(1, format!("e{}", c.label)));
            boundary.push(vec![(1, 1), (0, -1)]);
        }
        Self::from_action_fn(lattice.clone(), cells, boundary, false, |g, c| {
            if c < 2 {
                (c, 1)
            } else {
                (2 + pts.act(g, c - 2).0, 1)
            }
        })
        .expect("orbit interval")
    }

    /// `S^χ` for the sign character with kernel `kernel` of index 2, based at 0.
    ///
    /// Cells: `d` at infinity and the two rays `c+`, `c-`.
    pub fn sign_sphere(lattice: &Arc<SubgroupLattice>, kernel: SubgroupId) -> Result<Self, GcwError> {
        if lattice.order_of(kernel) * 2 != lattice.group().order() {
            return Err(GcwError::Malformed("sign sphere needs an index-2 subgroup".into()));
        }
        let ker = lattice.subgroup(kernel).clone();
        let cells = vec![Cell::new(0, "d"), Cell::new(1, "c+"), Cell::new(1, "c-")];
        let boundary = vec![vec![], vec![(0, 1)], vec![(0, 1)]];
        Self::from_action_fn(lattice.clone(), cells, boundary, true, |g, c| {
            if c == 0 || ker.contains(g) {
                (c, 1)
            } else {
                (3 - c, 1)
            }
        })
    }

    /// `S^σ` for `C_2`.
    pub fn sphere_sigma_c2() -> Result<Self, GcwError> {
        let l = Arc::new(SubgroupLattice::new(&FiniteGroup::cyclic(2)?));
        let trivial = l.trivial();
        Self::sign_sphere(&l, trivial)
    }

    /// `S^σ` for `D_2p`: the sign sphere of the rotation subgroup.
    pub fn sphere_sigma_d2p(lattice: &Arc<SubgroupLattice>) -> Result<Self, GcwError> {
        let n = dihedral_half(lattice)?;
        let rotations = lattice.generated(&[1 % (2 * n)]);
        Self::sign_sphere(lattice, rotations)
    }

    /// `S^γ` for `D_2p` with `2p` sectors bounded by rays at angles `kπ/p`.
    ///
    /// Cells: `d` at infinity, rays `r0..r(2p-1)`, sectors `s0..s(2p-1)` with
    /// `∂ s_k = r_k - r_(k+1)`; the basepoint is the origin.
    pub fn sphere_gamma_d2p(lattice: &Arc<SubgroupLattice>) -> Result<Self, GcwError> {
        let p = dihedral_half(lattice)?;
        let m = 2 * p;
        let ray = |k: usize| 1 + k % m;
        let sector = |k: usize| 1 + m + k % m;
        let mut cells = vec![Cell::new(0, "d")];
        let mut boundary = vec![vec![]];
        for k in 0..m {
            cells.push(Cell::new(1, format!("r{k}")));
            boundary.push(vec![(0, 1)]);
        }
        for k in 0..m {
            cells.push(Cell::new(2, format!("s{k}")));
            boundary.push(vec![(ray(k), 1), (ray(k + 1), -1)]);
        }
        Self::from_action_fn(lattice.clone(), cells, boundary, true, |g, c| {
            let (a, b) = (g % p, g / p);
            if c == 0 {
                return (0, 1);
            }
            let k = (c - 1) % m;
            if c <= m {
                let reflected = if b == 1 { (m - k) % m } else { k };
                (ray(reflected + 2 * a), 1)
            } else if b == 1 {
                (sector(2 * m - k - 1 + 2 * a), -1)
            } else {
                (sector(k + 2 * a), 1)
            }
        })
    }

    /// `S^γ` for `D_2p` with `p` sectors: not genuine, since each reflection
    /// fixes one sector with sign `-1`.
    ///
    /// Cells: `d`, rays `c1..cp` at angles `2πi/p`, sectors `b1..bp` with
    /// `∂ b_i = c_(i-1) - c_i`.
    pub fn sectors_d2p(lattice: &Arc<SubgroupLattice>) -> Result<Self, GcwError> {
        let p = dihedral_half(lattice)?;
        // index i in 1..=p, stored at offset (i mod p)
        let norm = |i: i64| (i.rem_euclid(p as i64)) as usize;
        let ray = |i: i64| 1 + norm(i);
        let sector = |i: i64| 1 + p + norm(i);
        let mut cells = vec![Cell::new(0, "d")];
        let mut boundary = vec![vec![]];
        let label = |i: usize| if i == 0 { p } else { i };
        for i in 0..p {
            cells.push(Cell::new(1, format!("c{}", label(i))));
            boundary.push(vec![(0, 1)]);
        }
        for i in 0..p {
            cells.push(Cell::new(2, format!("b{}", label(i))));
            let i = i as i64;
            boundary.push(vec![(ray(i - 1), 1), (ray(i), -1)]);
        }
        Self::from_action_fn(lattice.clone(), cells, boundary, true, |g, c| {
            let (a, b) = ((g % p) as i64, g / p);
            if c == 0 {
                return (0, 1);
            }
            if c <= p {
                let i = (c - 1) as i64;
                let j = if b == 1 { -i } else { i };
                (ray(j + a), 1)
            } else {
                let i = (c - 1 - p) as i64;
                if b == 1 {
                    (sector(1 - i + a), -1)
                } else {
                    (sector(i + a), 1)
                }
            }
        })
    }

    /// Smash product of based complexes, cells `x∧y` of dimension `|x|+|y|`.
    pub fn smash(&self, other: &GCWComplex) -> Result<GCWComplex, GcwError> {
        if !self.is_based() || !other.is_based() {
            return Err(GcwError::NotBased);
        }
        self.pairing(other, true)
    }

    /// Cartesian product of unbased complexes.
    pub fn product(&self, other: &GCWComplex) -> Result<GCWComplex, GcwError> {
        if self.is_based() || other.is_based() {
            return Err(GcwError::Based);
        }
        self.pairing(other, false)
    }

    fn pairing(&self, other: &GCWComplex, based: bool) -> Result<GCWComplex, GcwError> {
        self.same_group(other)?;
        let ny = other.len();
        let id = |x: usize, y: usize| x * ny + y;
        let mut cells = Vec::with_capacity(self.len() * ny);
        let mut boundary = Vec::with_capacity(self.len() * ny);
        let join = if based { "∧" } else { "×" };
        for (x, cx) in self.cells().iter().enumerate() {
            for (y, cy) in other.cells().iter().enumerate() {
                cells.push(Cell::new(cx.dim + cy.dim, format!("{}{join}{}", cx.label, cy.label)));
                let sign = if cx.dim % 2 == 0 { 1 } else { -1 };
                let mut faces: Vec<(usize, i64)> = self.boundary(x).iter().map(|&(f, a)| (id(f, y), a)).collect();
                faces.extend(other.boundary(y).iter().map(|&(f, a)| (id(x, f), sign * a)));
                boundary.push(faces);
            }
        }
        Self::from_action_fn(self.lattice().clone(), cells, boundary, based, |g, c| {
            let (ix, sx) = self.act(g, c / ny);
            let (iy, sy) = other.act(g, c % ny);
            (id(ix, iy), sx * sy)
        })
    }

    /// The join `X * Y` of unbased complexes: cells of `X`, cells of `Y`,
    /// and `[x, y]` of dimension `|x| + |y| + 1`.
    pub fn join(&self, other: &GCWComplex) -> Result<GCWComplex, GcwError> {
        if self.is_based() || other.is_based() {
            return Err(GcwError::Based);
        }
        self.same_group(other)?;
        let (nx, ny) = (self.len(), other.len());
        let pair = |x: usize, y: usize| nx + ny + x * ny + y;
        let mut cells: Vec<Cell> = self.cells().to_vec();
        let mut boundary: Vec<Vec<(usize, i64)>> = (0..nx).map(|x| self.boundary(x).to_vec()).collect();
        for y in 0..ny {
            cells.push(other.cells()[y].clone());
            boundary.push(other.boundary(y).iter().map(|&(f, a)| (nx + f, a)).collect());
        }
        for (x, cx) in self.cells().iter().enumerate() {
            for (y, cy) in other.cells().iter().enumerate() {
                cells.push(Cell::new(cx.dim + cy.dim + 1, format!("[{},{}]", cx.label, cy.label)));
                let eps = if cx.dim % 2 == 0 { -1 } else { 1 };
                let mut faces = Vec::new();
                if cx.dim == 0 {
                    faces.push((nx + y, 1));
                } else {
                    faces.extend(self.boundary(x).iter().map(|&(f, a)| (pair(f, y), a)));
                }
                if cy.dim == 0 {
                    faces.push((x, eps));
                } else {
                    faces.extend(other.boundary(y).iter().map(|&(f, a)| (pair(x, f), eps * a)));
                }
                boundary.push(faces);
            }
        }
        Self::from_action_fn(self.lattice().clone(), cells, boundary, false, |g, c| {
            if c < nx {
                self.act(g, c)
            } else if c < nx + ny {
                let (i, s) = other.act(g, c - nx);
                (nx + i, s)
            } else {
                let k = c - nx - ny;
                let (ix, sx) = self.act(g, k / ny);
                let (iy, sy) = other.act(g, k % ny);
                (pair(ix, iy), sx * sy)
            }
        })
    }

    /// `G ×_H X` for a complex `X` over the subgroup `H` of `lattice`, where
    /// `X`'s group is `H` numbered by its sorted elements.
    pub fn induce(lattice: &Arc<SubgroupLattice>, h: SubgroupId, x: &GCWComplex) -> Result<GCWComplex, GcwError> {
        let elems = lattice.subgroup(h).elements().to_vec();
        let (sub, _) = lattice.group().subgroup_group(&elems, "H");
        if sub.table() != x.group().table() {
            return Err(GcwError::IncompatibleGroups);
        }
        let grp = lattice.group();
        let cosets = lattice.left_cosets(h);
        let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let mut coset_of = vec![0; grp.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &y in c {
                coset_of[y] = i;
            }
        }
        let local = |g: usize| elems.binary_search(&g).expect("element of H");
        let n = x.len();
        let mut cells = Vec::with_capacity(n * reps.len());
        let mut boundary = Vec::with_capacity(n * reps.len());
        for (i, &r) in reps.iter().enumerate() {
            for c in 0..n {
                let cell = &x.cells()[c];
                cells.push(Cell::new(cell.dim, format!("{r}·{}", cell.label)));
                boundary.push(x.boundary(c).iter().map(|&(f, a)| (i * n + f, a)).collect());
            }
        }
        Self::from_action_fn(lattice.clone(), cells, boundary, x.is_based() && reps.len() == 1, |g, id| {
            let (i, c) = (id / n, id % n);
            let moved = grp.mul(g, reps[i]);
            let j = coset_of[moved];
            let hh = grp.mul(grp.inv(reps[j]), moved);
            let (img, s) = x.act(local(hh), c);
            (j * n + img, s)
        })
    }

    /// Pulls an action back along a surjection `projection: G -> Q`.
    pub fn inflate(lattice: &Arc<SubgroupLattice>, projection: &[usize], x: &GCWComplex) -> Result<GCWComplex, GcwError> {
        let cells = x.cells().to_vec();
        let boundary = (0..x.len()).map(|c| x.boundary(c).to_vec()).collect();
        Self::from_action_fn(lattice.clone(), cells, boundary, x.is_based(), |g, c| x.act(projection[g], c))
    }

    /// The `dim`-skeleton of a contractible free complex.
    ///
    /// Cyclic groups use the periodic model with boundaries `1 - t` and the
    /// norm element; other groups use a free resolution computed by Smith
    /// normal form. Homology below `dim` is exact.
    pub fn eg_skeleton(lattice: &Arc<SubgroupLattice>, dim: usize) -> Result<GCWComplex, GcwError> {
        let grp = lattice.group();
        let n = grp.order();
        if n == 1 {
            return Ok(Self::point(lattice));
        }
        let resolution = if grp.is_cyclic() {
            periodic_resolution(grp, dim)
        } else {
            free_resolution(grp, dim)?
        };
        let mut cells = Vec::new();
        let mut boundary = Vec::new();
        let mut offset = vec![0usize];
        for (k, gens) in resolution.iter().enumerate() {
            for j in 0..gens.len() {
                for g in 0..n {
                    cells.push(Cell::new(k, format!("{g}·e{k}.{j}")));
                }
            }
            offset.push(offset[k] + gens.len() * n);
        }
        for (k, gens) in resolution.iter().enumerate() {
            for v in gens {
                for g in 0..n {
                    let mut faces = Vec::new();
                    for (idx, a) in v.iter().enumerate().filter(|(_, a)| **a != 0) {
                        let (j, h) = (idx / n, idx % n);
                        faces.push((offset[k - 1] + j * n + grp.mul(g, h), *a));
                    }
                    boundary.push(faces);
                }
            }
        }
        let level_of = |c: usize| offset.iter().rposition(|&o| o <= c).expect("cell in range");
        Self::from_action_fn(lattice.clone(), cells, boundary, false, |g, c| {
            let k = level_of(c).min(resolution.len() - 1);
            let local = c - offset[k];
            (offset[k] + (local / n) * n + grp.mul(g, local % n), 1)
        })
    }

    /// `G ×_{N_G H} E(W_G H)`, the piece of a universal space for a family
    /// whose points all have isotropy conjugate to `H`.
    pub fn classifying_piece(lattice: &Arc<SubgroupLattice>, h: SubgroupId, dim: usize) -> Result<GCWComplex, GcwError> {
        let nh = lattice.normalizer(h);
        let n_elems = lattice.subgroup(nh).elements().to_vec();
        let (ngrp, _) = lattice.group().subgroup_group(&n_elems, "N");
        let nlat = Arc::new(SubgroupLattice::new(&ngrp));
        let h_local: Vec<usize> =
            lattice.subgroup(h).elements().iter().map(|g| n_elems.binary_search(g).expect("H ⊆ N(H)")).collect();
        let (weyl, projection) = ngrp.quotient(&h_local, "W")?;
        let wlat = Arc::new(SubgroupLattice::new(&weyl));
        let free = Self::eg_skeleton(&wlat, dim)?;
        let inflated = Self::inflate(&nlat, &projection, &free)?;
        Self::induce(lattice, nh, &inflated)
    }

    /// Join of [`GCWComplex::classifying_piece`] over the classes of a family:
    /// a finite model of `E𝓕`, acyclic on `H`-fixed points for `H ∈ 𝓕` in low
    /// degrees and with empty fixed points otherwise.
    pub fn family_model(lattice: &Arc<SubgroupLattice>, family: &Family, dim: usize) -> Result<GCWComplex, GcwError> {
        let mut out = Self::empty(lattice);
        for class in family.class_indices(lattice) {
            let piece = Self::classifying_piece(lattice, lattice.class_rep(class), dim)?;
            out = if out.is_empty() { piece } else { out.join(&piece)? };
        }
        Ok(out)
    }
}

/// `g·v` for `v` indexed by `(generator, element)` pairs.
fn translate(grp: &FiniteGroup, v: &[BigInt], g: usize) -> Vec<BigInt> {
    let n = grp.order();
    let mut out = vec![BigInt::zero(); v.len()];
    for (idx, a) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        let (j, h) = (idx / n, idx % n);
        out[j * n + grp.mul(g, h)] = a.clone();
    }
    out
}

fn in_span(span: &[Vec<BigInt>], b: &[BigInt]) -> bool {
    if span.is_empty() {
        return b.iter().all(Zero::is_zero);
    }
    let m = IntMatrix::from_fn(b.len(), span.len(), |i, j| span[j][i].clone());
    let d = diagonalize(&m, Track { rows: true, cols: false });
    let pb = d.p.expect("tracked").mul_vec(b);
    pb.iter().enumerate().all(|(i, x)| match d.diagonal.get(i) {
        Some(di) => (x % di).is_zero(),
        None => x.is_zero(),
    })
}

/// Boundaries of the generators in each degree; degree 0 has one generator.
type Resolution = Vec<Vec<Vec<i64>>>;

fn periodic_resolution(grp: &FiniteGroup, dim: usize) -> Resolution {
    let n = grp.order();
    let t = (0..n).find(|&g| grp.element_order(g) == n).expect("cyclic group");
    let mut out: Resolution = vec![vec![vec![]]];
    for k in 1..=dim {
        let mut v = vec![0i64; n];
        if k % 2 == 1 {
            v[0] += 1;
            v[t] -= 1;
        } else {
            let mut x = 0;
            for _ in 0..n {
                v[x] += 1;
                x = grp.mul(t, x);
            }
        }
        out.push(vec![v]);
    }
    out
}

fn free_resolution(grp: &FiniteGroup, dim: usize) -> Result<Resolution, GcwError> {
    let n = grp.order();
    let mut out: Resolution = vec![vec![vec![]]];
    // the augmentation, then each differential in turn
    let mut current = IntMatrix::from_fn(1, n, |_, _| BigInt::from(1));
    for _ in 1..=dim {
        let d = diagonalize(&current, Track { rows: false, cols: true });
        let r = d.rank();
        let q = d.q.expect("tracked");
        let mut span: Vec<Vec<BigInt>> = Vec::new();
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for c in r..current.cols() {
            let b = q.column(c);
            if !in_span(&span, &b) {
                span.extend((0..n).map(|g| translate(grp, &b, g)));
                gens.push(b);
            }
        }
        let width = current.cols();
        current = IntMatrix::from_fn(width, gens.len() * n, |i, col| {
            let (j, g) = (col / n, col % n);
            let moved = translate(grp, &gens[j], g);
            moved[i].clone()
        });
        let small: Option<Vec<Vec<i64>>> =
            gens.iter().map(|v| v.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<i64>>>()).collect();
        out.push(small.ok_or_else(|| GcwError::Malformed("resolution coefficients overflow".into()))?);
    }
    Ok(out)
}

/// `S^{nλ}` for `C_p` as a `D_2p`-complex: the `n`-fold smash of the
/// `p`-sector model, with `τ` acting with signs.
#[derive(Debug, Clone)]
pub struct LambdaSphere {
    pub complex: GCWComplex,
    pub rotations: SubgroupId,
    pub tau: usize,
}

impl LambdaSphere {
    pub fn new(n: usize, p: usize) -> Result<Self, GcwError> {
        let lattice = dihedral_lattice(p)?;
        let sectors = GCWComplex::sectors_d2p(&lattice)?;
        let mut complex = GCWComplex::sphere0(&lattice);
        for _ in 0..n {
            complex = complex.smash(&sectors)?;
        }
        let rotations = lattice.generated(&[1 % (2 * p)]);
        Ok(Self { complex, rotations, tau: p })
    }

    /// The `C_p`-complex.
    pub fn cyclic(&self) -> Result<GCWComplex, GcwError> {
        self.complex.restrict_to_subgroup(self.rotations)
    }

    /// `S^{nλ}/C_p` with the residual action of `τ`.
    pub fn quotient(&self) -> Result<GCWComplex, GcwError> {
        self.complex.orbit_complex(self.rotations)
    }
}

impl GCWComplex {
    /// `S^{nλ}` for `C_p`; see [`LambdaSphere`] for the `τ`-companion.
    pub fn sphere_lambda_cp(n: usize, p: usize) -> Result<LambdaSphere, GcwError> {
        LambdaSphere::new(n, p)
    }

    /// `S^{mσ + nγ}` for `D_2p` as a smash of genuine models.
    pub fn sphere_d2p(lattice: &Arc<SubgroupLattice>, m: usize, n: usize) -> Result<GCWComplex, GcwError> {
        let sigma = Self::sphere_sigma_d2p(lattice)?;
        let gamma = Self::sphere_gamma_d2p(lattice)?;
        let mut out = Self::sphere0(lattice);
        for _ in 0..m {
            out = out.smash(&sigma)?;
        }
        for _ in 0..n {
            out = out.smash(&gamma)?;
        }
        Ok(out)
    }
}
