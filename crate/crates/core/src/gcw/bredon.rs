//! Cellular Bredon chains with Mackey functor coefficients, and the
//! fixed-point formulas for Burnside and family-quotient coefficients.

use num_rational::BigRational;
use num_traits::Zero;

use super::{GCWComplex, GcwError, HomologyResult, Orbits};
use crate::arith::PrimeSet;
use crate::families::Family;
use crate::group::SubgroupId;
use crate::linalg::{ChainComplex, ChainMap, Direction, RatMatrix};
use crate::mackey::MackeyFunctor;

/// Orbit cells at one level, grouped by dimension.
struct OrbitCells {
    orbits: Orbits,
    isotropy: Vec<SubgroupId>,
    /// Orbits of each dimension.
    in_dim: Vec<Vec<usize>>,
    /// Offset of each orbit's block inside its chain group.
    offset: Vec<usize>,
    dims: Vec<usize>,
}

fn orbit_cells(x: &GCWComplex, m: &MackeyFunctor, level: SubgroupId) -> Result<OrbitCells, GcwError> {
    let lat = x.lattice();
    if lat.group().table() != m.lattice().group().table() {
        return Err(GcwError::IncompatibleGroups);
    }
    let elems = lat.subgroup(level).elements().to_vec();
    let all: Vec<usize> = (0..x.len()).collect();
    let orbits = x.orbits(&all, &elems)?;
    let isotropy: Vec<SubgroupId> = orbits.reps.iter().map(|&r| lat.intersection(x.stabilizer(r), level)).collect();
    for &h in &isotropy {
        if !m.level(h).is_free() {
            return Err(GcwError::NonFreeCoefficients { level: lat.describe(h) });
        }
    }
    let mut in_dim = vec![Vec::new(); x.top()];
    let mut offset = vec![0; orbits.reps.len()];
    let mut dims = vec![0; x.top()];
    for (o, &r) in orbits.reps.iter().enumerate() {
        let d = x.cells()[r].dim;
        offset[o] = dims[d];
        dims[d] += m.dim(isotropy[o]);
        in_dim[d].push(o);
    }
    Ok(OrbitCells { orbits, isotropy, in_dim, offset, dims })
}

fn place(target: &mut RatMatrix, row: usize, col: usize, block: &RatMatrix, coeff: &BigRational) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if !v.is_zero() {
                let slot = target.get_mut(row + i, col + j);
                *slot += v * coeff;
            }
        }
    }
}

/// Bredon chains `C^L_*(X; M)` (or cochains) of `X` viewed as an `L`-complex.
pub fn bredon_chains(
    x: &GCWComplex,
    m: &MackeyFunctor,
    level: SubgroupId,
    direction: Direction,
) -> Result<ChainComplex, GcwError> {
    let lat = x.lattice();
    let grp = lat.group();
    let oc = orbit_cells(x, m, level)?;
    let top = x.top();
    let mut maps = Vec::with_capacity(top);
    for n in 0..top {
        // homological: C_n -> C_{n-1}; cohomological: C^n -> C^{n+1}
        let (rows, cols) = match direction {
            Direction::Homological => (if n == 0 { 0 } else { oc.dims[n - 1] }, oc.dims[n]),
            Direction::Cohomological => (if n + 1 < top { oc.dims[n + 1] } else { 0 }, oc.dims[n]),
        };
        let mut mat = RatMatrix::zeros(rows, cols);
        let cell_dim = match direction {
            Direction::Homological => Some(n),
            Direction::Cohomological => (n + 1 < top).then_some(n + 1),
        };
        if let Some(d) = cell_dim.filter(|&d| d > 0) {
            for &o in &oc.in_dim[d] {
                let h = oc.isotropy[o];
                for &(f, a) in x.boundary(oc.orbits.reps[o]) {
                    let (fo, s, g) = oc.orbits.of[&f];
                    let k = oc.isotropy[fo];
                    let g_inv = grp.inv(g);
                    let moved = lat.conjugate(h, g_inv);
                    let coeff = BigRational::from_integer((a * i64::from(s)).into());
                    match direction {
                        Direction::Homological => {
                            let block = m.tr(moved, k).mul(m.conj(g_inv, h));
                            place(&mut mat, oc.offset[fo], oc.offset[o], &block, &coeff);
                        }
                        Direction::Cohomological => {
                            let block = m.conj(g, moved).mul(m.res(k, moved));
                            place(&mut mat, oc.offset[o], oc.offset[fo], &block, &coeff);
                        }
                    }
                }
            }
        }
        maps.push(mat);
    }
    Ok(ChainComplex::from_rational(direction, oc.dims, maps, m.primes().clone())?)
}

/// Bredon homology at the top level.
pub fn bredon_homology(x: &GCWComplex, m: &MackeyFunctor) -> Result<HomologyResult, GcwError> {
    bredon_homology_at(x, m, x.lattice().whole())
}

/// Bredon homology of `X` as an `L`-complex, the value of the homology Mackey functor at `G/L`.
pub fn bredon_homology_at(x: &GCWComplex, m: &MackeyFunctor, level: SubgroupId) -> Result<HomologyResult, GcwError> {
    Ok(HomologyResult::from_chains(&bredon_chains(x, m, level, Direction::Homological)?))
}

pub fn bredon_cohomology(x: &GCWComplex, m: &MackeyFunctor) -> Result<HomologyResult, GcwError> {
    bredon_cohomology_at(x, m, x.lattice().whole())
}

pub fn bredon_cohomology_at(x: &GCWComplex, m: &MackeyFunctor, level: SubgroupId) -> Result<HomologyResult, GcwError> {
    Ok(HomologyResult::from_chains(&bredon_chains(x, m, level, Direction::Cohomological)?))
}

/// The chain map on `C^L_*(X; M)` induced by `g ∈ N_G(L)`; on cochains it is the pullback.
pub fn normalizer_chain_map(
    x: &GCWComplex,
    m: &MackeyFunctor,
    level: SubgroupId,
    g: usize,
    direction: Direction,
) -> Result<ChainMap, GcwError> {
    let lat = x.lattice();
    let grp = lat.group();
    if lat.conjugate(level, g) != level {
        return Err(GcwError::HypothesisViolated(format!("element {g} does not normalize the level")));
    }
    let oc = orbit_cells(x, m, level)?;
    let mut components = Vec::with_capacity(x.top());
    for n in 0..x.top() {
        let mut mat = RatMatrix::zeros(oc.dims[n], oc.dims[n]);
        for &o in &oc.in_dim[n] {
            let h = oc.isotropy[o];
            let (img, s) = x.act(g, oc.orbits.reps[o]);
            let (to, s2, l) = oc.orbits.of[&img];
            // k·rep(o) = ±rep(to) with k = l⁻¹g
            let k = grp.mul(grp.inv(l), g);
            let coeff = BigRational::from_integer(i64::from(s * s2).into());
            match direction {
                Direction::Homological => place(&mut mat, oc.offset[to], oc.offset[o], m.conj(k, h), &coeff),
                Direction::Cohomological => {
                    let target = oc.isotropy[to];
                    place(&mut mat, oc.offset[o], oc.offset[to], m.conj(grp.inv(k), target), &coeff)
                }
            }
        }
        if !mat.is_integral() {
            return Err(GcwError::NotChainMap("induced map has non-integral entries".into()));
        }
        components.push(mat.map(|v| v.to_integer()));
    }
    Ok(ChainMap { components })
}

/// `⊕_K H_*(X^K / W_L K)` over `L`-classes of subgroups `K ⊆ L`.
pub fn burnside_homology_formula(x: &GCWComplex, level: SubgroupId) -> Result<HomologyResult, GcwError> {
    let lat = x.lattice();
    let classes = lat.level_classes(level);
    let mut out = HomologyResult::default();
    for k in classes.reps() {
        out = out.sum(&x.fixed_orbit_homology(k, level)?);
    }
    Ok(out)
}

/// `⊕_{K ∉ 𝓕} H_*(X^K / W_L K) ⊗ Z[S^-1]` over `L`-classes of subgroups `K ⊆ L`.
pub fn n_f_homology(
    x: &GCWComplex,
    family: &Family,
    primes: &PrimeSet,
    level: SubgroupId,
) -> Result<HomologyResult, GcwError> {
    let lat = x.lattice();
    let classes = lat.level_classes(level);
    let mut out = HomologyResult::default();
    for k in classes.reps().into_iter().filter(|&k| !family.contains(k)) {
        out = out.sum(&x.fixed_orbit_homology(k, level)?.localize(primes));
    }
    Ok(out)
}
