//! The box product via the coend over subgroups.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{double_coset_reps, Level, MackeyError, MackeyFunctor};
use crate::group::{SubgroupId, SubgroupLattice};
use crate::linalg::RatMatrix;

/// Position of each block `M(K) ⊗ N(K)` inside the generators at one level.
struct Layout {
    blocks: BTreeMap<SubgroupId, (usize, usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(m: &MackeyFunctor, n: &MackeyFunctor, lattice: &SubgroupLattice, h: SubgroupId) -> Self {
        let mut blocks = BTreeMap::new();
        let mut total = 0;
        for k in lattice.subgroups_of(h) {
            let (a, b) = (m.dim(k), n.dim(k));
            blocks.insert(k, (total, a, b));
            total += a * b;
        }
        Self { blocks, total }
    }

    /// Adds `sign * (a ⊗ b)` into block `k` of `col`.
    fn put(&self, col: &mut [BigRational], k: SubgroupId, a: &[BigRational], b: &[BigRational], sign: bool) {
        let (off, _, nb) = self.blocks[&k];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let v = x * y;
                let slot = &mut col[off + i * nb + j];
                if sign {
                    *slot += v;
                } else {
                    *slot -= v;
                }
            }
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()
}

fn generators(lattice: &SubgroupLattice, h: SubgroupId) -> Vec<usize> {
    let g = lattice.group();
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &x in lattice.subgroup(h).elements() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.generate(&gens);
        }
    }
    gens
}

fn relations(m: &MackeyFunctor, n: &MackeyFunctor, lattice: &SubgroupLattice, h: SubgroupId, lay: &Layout) -> RatMatrix {
    let mut cols: Vec<Vec<BigRational>> = Vec::new();
    let fresh = || vec![BigRational::zero(); lay.total];
    let subs = lattice.subgroups_of(h);
    for &k in &subs {
        let (ma, nb) = (m.dim(k), n.dim(k));
        let rm = &m.level(k).relations;
        for r in 0..rm.cols() {
            for j in 0..nb {
                let mut col = fresh();
                lay.put(&mut col, k, &rm.column(r), &unit(nb, j), true);
                cols.push(col);
            }
        }
        let rn = &n.level(k).relations;
        for r in 0..rn.cols() {
            for i in 0..ma {
                let mut col = fresh();
                lay.put(&mut col, k, &unit(ma, i), &rn.column(r), true);
                cols.push(col);
            }
        }
    }
    // Frobenius reciprocity along every inclusion K1 ⊂ K2 inside H
    for &k2 in &subs {
        for k1 in lattice.subgroups_of(k2).into_iter().filter(|&k| k != k2) {
            let (m1, m2, n1, n2) = (m.dim(k1), m.dim(k2), n.dim(k1), n.dim(k2));
            let (m_res, n_tr) = (m.res(k2, k1), n.tr(k1, k2));
            for i in 0..m2 {
                for j in 0..n1 {
                    let mut col = fresh();
                    lay.put(&mut col, k2, &unit(m2, i), &n_tr.column(j), true);
                    lay.put(&mut col, k1, &m_res.column(i), &unit(n1, j), false);
                    cols.push(col);
                }
            }
            let (m_tr, n_res) = (m.tr(k1, k2), n.res(k2, k1));
            for i in 0..m1 {
                for j in 0..n2 {
                    let mut col = fresh();
                    lay.put(&mut col, k2, &m_tr.column(i), &unit(n2, j), true);
                    lay.put(&mut col, k1, &unit(m1, i), &n_res.column(j), false);
                    cols.push(col);
                }
            }
        }
    }
    // conjugation by elements of H identifies the blocks of conjugate subgroups
    for x in generators(lattice, h) {
        for &k in &subs {
            let moved = lattice.conjugate(k, x);
            let (cm, cn) = (m.conj(x, k), n.conj(x, k));
            for i in 0..m.dim(k) {
                for j in 0..n.dim(k) {
                    let mut col = fresh();
                    lay.put(&mut col, k, &unit(m.dim(k), i), &unit(n.dim(k), j), true);
                    lay.put(&mut col, moved, &cm.column(i), &cn.column(j), false);
                    cols.push(col);
                }
            }
        }
    }
    cols.retain(|c| c.iter().any(|x| !x.is_zero()));
    RatMatrix::from_fn(lay.total, cols.len(), |i, j| cols[j][i].clone())
}

/// `M □ N`, levelwise a quotient of `⊕_{K ⊆ H} M(K) ⊗ N(K)`.
pub fn box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<MackeyFunctor, MackeyError> {
    let lat = m.lattice().clone();
    if lat.group().table() != n.lattice().group().table() {
        return Err(MackeyError::GroupMismatch);
    }
    let primes = m.primes().union(n.primes());
    let layouts: Vec<Layout> = (0..lat.len()).map(|h| Layout::new(m, n, &lat, h)).collect();
    let levels = (0..lat.len())
        .map(|h| {
            let lay = &layouts[h];
            let mut labels = vec![String::new(); lay.total];
            for (&k, &(off, a, b)) in &lay.blocks {
                for i in 0..a {
                    for j in 0..b {
                        labels[off + i * b + j] =
                            format!("[{}] {}⊗{}", lat.describe(k), m.level(k).labels[i], n.level(k).labels[j]);
                    }
                }
            }
            Level { labels, relations: relations(m, n, &lat, h, lay) }
        })
        .collect();

    let res = |big: SubgroupId, small: SubgroupId| -> Result<RatMatrix, MackeyError> {
        let (src, dst) = (&layouts[big], &layouts[small]);
        let mut out = RatMatrix::zeros(dst.total, src.total);
        for (&k, &(off, a, b)) in &src.blocks {
            let mut images = Vec::new();
            for x in double_coset_reps(&lat, big, small, k) {
                let moved = lat.conjugate(k, x);
                let j = lat.intersection(small, moved);
                let am = m.res(moved, j).mul(m.conj(x, k));
                let bn = n.res(moved, j).mul(n.conj(x, k));
                images.push((j, am, bn));
            }
            for i in 0..a {
                for jj in 0..b {
                    let mut col = vec![BigRational::zero(); dst.total];
                    for (j, am, bn) in &images {
                        dst.put(&mut col, *j, &am.column(i), &bn.column(jj), true);
                    }
                    for (r, v) in col.into_iter().enumerate() {
                        out.set(r, off + i * b + jj, v);
                    }
                }
            }
        }
        Ok(out)
    };
    let tr = |small: SubgroupId, big: SubgroupId| -> Result<RatMatrix, MackeyError> {
        let (src, dst) = (&layouts[small], &layouts[big]);
        let mut out = RatMatrix::zeros(dst.total, src.total);
        for (k, &(off, a, b)) in &src.blocks {
            let target = dst.blocks[k].0;
            for t in 0..a * b {
                out.set(target + t, off + t, BigRational::one());
            }
        }
        Ok(out)
    };
    let conj = |x: usize, h: SubgroupId| -> Result<RatMatrix, MackeyError> {
        let (src, dst) = (&layouts[h], &layouts[lat.conjugate(h, x)]);
        let mut out = RatMatrix::zeros(dst.total, src.total);
        for (&k, &(off, a, b)) in &src.blocks {
            let moved = lat.conjugate(k, x);
            let (cm, cn) = (m.conj(x, k), n.conj(x, k));
            for i in 0..a {
                for j in 0..b {
                    let mut col = vec![BigRational::zero(); dst.total];
                    dst.put(&mut col, moved, &cm.column(i), &cn.column(j), true);
                    for (r, v) in col.into_iter().enumerate() {
                        out.set(r, off + i * b + j, v);
                    }
                }
            }
        }
        Ok(out)
    };
    let name = format!("{}□{}", m.name(), n.name());
    MackeyFunctor::from_maps(name, lat.clone(), primes, levels, &res, &tr, &conj)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::PrimeSet;
    use crate::certificate::all_passed;
    use crate::families::Family;
    use crate::group::FiniteGroup;
    use crate::linalg::AbelianGroup;
    use crate::mackey::{burnside_mackey, constant_mackey, sub_functors, zero_mackey};

    fn d(order: usize) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(&FiniteGroup::dihedral(order).unwrap()))
    }

    fn by_order(l: &SubgroupLattice, n: usize) -> SubgroupId {
        (0..l.len()).find(|&h| l.order_of(h) == n).unwrap()
    }

    #[test]
    fn constant_box_n_vanishes() {
        for p in [3usize, 5] {
            let l = d(2 * p);
            let f1 = Family::closure(&l, &[by_order(&l, 2)]);
            let s = PrimeSet::from_primes([p as u64]);
            let n = sub_functors(&l, &f1, &s).unwrap().n;
            let z = constant_mackey(&l, &s);
            assert!(box_product(&z, &n).unwrap().is_zero());
            let f2 = Family::closure(&l, &[by_order(&l, p)]);
            let s = PrimeSet::from_primes([2]);
            let n = sub_functors(&l, &f2, &s).unwrap().n;
            let z = constant_mackey(&l, &s);
            assert!(box_product(&z, &n).unwrap().is_zero());
        }
    }

    #[test]
    fn burnside_is_the_unit() {
        let l = d(6);
        let s = PrimeSet::empty();
        let a = burnside_mackey(&l, &s);
        let z = constant_mackey(&l, &s);
        let az = box_product(&a, &z).unwrap();
        for h in 0..l.len() {
            assert_eq!(az.group_at(h), AbelianGroup::free(1));
        }
        assert!(all_passed(&az.check_axioms()), "{:?}", az.check_axioms());
        let aa = box_product(&a, &a).unwrap();
        for h in 0..l.len() {
            assert_eq!(aa.group_at(h), a.group_at(h));
        }
    }

    #[test]
    fn zero_and_symmetry() {
        let l = d(6);
        let s = PrimeSet::empty();
        let z = constant_mackey(&l, &s);
        assert!(box_product(&z, &zero_mackey(&l, &s)).unwrap().is_zero());
        let m = crate::mackey::family_submodule(&l, &Family::closure(&l, &[by_order(&l, 2)]), &s);
        let zm = box_product(&z, &m).unwrap();
        let mz = box_product(&m, &z).unwrap();
        for h in 0..l.len() {
            assert_eq!(zm.group_at(h), mz.group_at(h));
        }
    }

    #[test]
    fn constant_squared_over_c2() {
        let l = Arc::new(SubgroupLattice::new(&FiniteGroup::cyclic(2).unwrap()));
        let z = constant_mackey(&l, &PrimeSet::empty());
        let zz = box_product(&z, &z).unwrap();
        assert_eq!(zz.group_at(0), AbelianGroup::free(1));
        // Z ⊕ Z modulo (1, -2): the top level is Z
        assert_eq!(zz.group_at(1).rank, 1);
    }
}
