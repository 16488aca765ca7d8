//! Brute-force finite `G`-set computations.
//!
//! These enumerate points directly and share no code path with the
//! table-of-marks arithmetic, so they serve as independent references.

use crate::group::{LevelClasses, SubgroupId, SubgroupLattice};

/// Left cosets `yH` for `y` in `level`, as a point index per group element.
fn coset_points(lattice: &SubgroupLattice, level: SubgroupId, h: SubgroupId) -> (Vec<usize>, Vec<usize>) {
    let g = lattice.group();
    let mut point = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for &y in lattice.subgroup(level).elements() {
        if point[y] == usize::MAX {
            for &x in lattice.subgroup(h).elements() {
                point[g.mul(y, x)] = reps.len();
            }
            reps.push(y);
        }
    }
    (point, reps)
}

/// Orbit counts per `L`-class of the `L`-set `L/H x L/K`.
pub fn product_orbit_counts(lattice: &SubgroupLattice, classes: &LevelClasses, h: SubgroupId, k: SubgroupId) -> Vec<u64> {
    let g = lattice.group();
    let level = classes.level;
    let (ph, rh) = coset_points(lattice, level, h);
    let (pk, rk) = coset_points(lattice, level, k);
    let elems = lattice.subgroup(level).elements().to_vec();
    let mut seen = vec![false; rh.len() * rk.len()];
    let mut counts = vec![0u64; classes.len()];
    for (a, &y) in rh.iter().enumerate() {
        for (b, &z) in rk.iter().enumerate() {
            if seen[a * rk.len() + b] {
                continue;
            }
            let mut stabilizer = Vec::new();
            for &l in &elems {
                let (a2, b2) = (ph[g.mul(l, y)], pk[g.mul(l, z)]);
                seen[a2 * rk.len() + b2] = true;
                if a2 == a && b2 == b {
                    stabilizer.push(l);
                }
            }
            let id = lattice.find(&stabilizer).expect("stabilizer is a subgroup");
            counts[classes.class_index(id)] += 1;
        }
    }
    counts
}

/// `|(L/H)^K|` by testing every coset.
pub fn fixed_point_count(lattice: &SubgroupLattice, level: SubgroupId, k: SubgroupId, h: SubgroupId) -> u64 {
    let g = lattice.group();
    let (point, reps) = coset_points(lattice, level, h);
    reps.iter()
        .filter(|&&y| lattice.subgroup(k).elements().iter().all(|&x| point[g.mul(x, y)] == point[y]))
        .count() as u64
}

/// Double cosets `M y H` in `L`, returned as the stabilizer classes `M ∩ yHy^-1` in `M`.
pub fn double_coset_restriction(
    lattice: &SubgroupLattice,
    big: SubgroupId,
    small_classes: &LevelClasses,
    h: SubgroupId,
) -> Vec<u64> {
    let g = lattice.group();
    let small = small_classes.level;
    let mut assigned = vec![false; g.order()];
    let mut counts = vec![0u64; small_classes.len()];
    for &y in lattice.subgroup(big).elements() {
        if assigned[y] {
            continue;
        }
        for &m in lattice.subgroup(small).elements() {
            for &x in lattice.subgroup(h).elements() {
                assigned[g.mul(g.mul(m, y), x)] = true;
            }
        }
        let stab = lattice.intersection(small, lattice.conjugate(h, y));
        counts[small_classes.class_index(stab)] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn free_orbit_squared() {
        let l = SubgroupLattice::new(&FiniteGroup::dihedral(6).unwrap());
        let top = l.level_classes(l.whole());
        // G/e x G/e is |G| free orbits
        assert_eq!(product_orbit_counts(&l, &top, 0, 0), vec![6, 0, 0, 0]);
        assert_eq!(fixed_point_count(&l, l.whole(), l.whole(), l.whole()), 1);
    }
}
