//! Inputs shared by the kernel benchmarks.

use std::sync::Arc;

use equisplit_core::gcw::{dihedral_lattice, GCWComplex};
use equisplit_core::group::{FiniteGroup, SubgroupLattice};

pub fn lattice(g: FiniteGroup) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(&g))
}

pub fn s4() -> Arc<SubgroupLattice> {
    lattice(FiniteGroup::symmetric(4).expect("S4"))
}

/// `S^{mσ+nγ}` over `D_2p` together with its lattice.
pub fn dihedral_sphere(p: usize, m: usize, n: usize) -> (Arc<SubgroupLattice>, GCWComplex) {
    let l = dihedral_lattice(p).expect("dihedral lattice");
    let x = GCWComplex::sphere_d2p(&l, m, n).expect("sphere");
    (l, x)
}
