//! Mackey functors with values in finitely presented `Z[S^-1]`-modules.

mod boxprod;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{common_denominator, rat_int, strip, LocalizationError, PrimeSet};
use crate::burnside::{BurnsideError, BurnsideRing};
use crate::certificate::Certificate;
use crate::families::Family;
use crate::group::{SubgroupId, SubgroupLattice};
use crate::linalg::{diagonalize, AbelianGroup, IntMatrix, RatMatrix, Track};

pub use boxprod::box_product;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MackeyError {
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
    #[error("{0} is not closed under the structure maps")]
    NotClosed(String),
    #[error("functors live over different groups")]
    GroupMismatch,
}

/// Generators and relations at one subgroup.
#[derive(Debug, Clone)]
pub struct Level {
    pub labels: Vec<String>,
    /// One column per relation among the generators.
    pub relations: RatMatrix,
}

impl Level {
    pub fn free(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self { labels, relations: RatMatrix::zeros(n, 0) }
    }

    pub fn gens(&self) -> usize {
        self.labels.len()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    fn integral_relations(&self) -> IntMatrix {
        let r = &self.relations;
        let scales: Vec<BigRational> =
            (0..r.cols()).map(|j| rat_int(common_denominator(r.column(j).iter()))).collect();
        IntMatrix::from_fn(r.rows(), r.cols(), |i, j| (r.get(i, j) * &scales[j]).to_integer())
    }

    /// The module as an abelian group, with the primes of `S` inverted.
    pub fn group(&self, primes: &PrimeSet) -> AbelianGroup {
        let d = diagonalize(&self.integral_relations(), Track::NONE);
        let torsion: Vec<BigInt> = d.diagonal.iter().map(|x| strip(x, primes)).collect();
        AbelianGroup::from_orders(self.gens() - d.rank(), torsion)
    }

    /// Whether `v` lies in the `Z[S^-1]`-span of the relations.
    pub fn is_trivial(&self, v: &[BigRational], primes: &PrimeSet) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.relations.cols() == 0 {
            return false;
        }
        let d = diagonalize(&self.integral_relations(), Track { rows: true, cols: false });
        let p = RatMatrix::from_int(d.p.as_ref().expect("row transform tracked"));
        let w = p.mul_vec(v);
        w.iter().enumerate().all(|(i, x)| match d.diagonal.get(i) {
            Some(di) => {
                let q = x / rat_int(di.clone());
                q.is_zero() || primes.is_unit(q.denom())
            }
            None => x.is_zero(),
        })
    }
}

/// A Mackey functor stored levelwise on every subgroup, with all structure maps.
#[derive(Debug, Clone)]
pub struct MackeyFunctor {
    name: String,
    lattice: Arc<SubgroupLattice>,
    primes: PrimeSet,
    levels: Vec<Level>,
    /// `(big, small) -> res`
    res: HashMap<(SubgroupId, SubgroupId), RatMatrix>,
    /// `(small, big) -> tr`
    tr: HashMap<(SubgroupId, SubgroupId), RatMatrix>,
    /// `(g, L) -> c_g : M(L) -> M(gLg^-1)`
    conj: HashMap<(usize, SubgroupId), RatMatrix>,
}

type MapFn<'a> = dyn Fn(SubgroupId, SubgroupId) -> Result<RatMatrix, MackeyError> + 'a;
type ConjFn<'a> = dyn Fn(usize, SubgroupId) -> Result<RatMatrix, MackeyError> + 'a;

impl MackeyFunctor {
    /// Tabulates every structure map from the supplied generators.
    pub fn from_maps(
        name: impl Into<String>,
        lattice: Arc<SubgroupLattice>,
        primes: PrimeSet,
        levels: Vec<Level>,
        res: &MapFn<'_>,
        tr: &MapFn<'_>,
        conj: &ConjFn<'_>,
    ) -> Result<Self, MackeyError> {
        let n = lattice.len();
        let mut r = HashMap::new();
        let mut t = HashMap::new();
        let mut c = HashMap::new();
        for big in 0..n {
            for small in lattice.subgroups_of(big) {
                r.insert((big, small), res(big, small)?);
                t.insert((small, big), tr(small, big)?);
            }
        }
        for g in lattice.group().elements() {
            for l in 0..n {
                c.insert((g, l), conj(g, l)?);
            }
        }
        Ok(Self { name: name.into(), lattice, primes, levels, res: r, tr: t, conj: c })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn level(&self, id: SubgroupId) -> &Level {
        &self.levels[id]
    }

    pub fn dim(&self, id: SubgroupId) -> usize {
        self.levels[id].gens()
    }

    pub fn res(&self, big: SubgroupId, small: SubgroupId) -> &RatMatrix {
        &self.res[&(big, small)]
    }

    pub fn tr(&self, small: SubgroupId, big: SubgroupId) -> &RatMatrix {
        &self.tr[&(small, big)]
    }

    pub fn conj(&self, g: usize, id: SubgroupId) -> &RatMatrix {
        &self.conj[&(g, id)]
    }

    pub fn group_at(&self, id: SubgroupId) -> AbelianGroup {
        self.levels[id].group(&self.primes)
    }

    /// Groups at one representative per conjugacy class.
    pub fn class_groups(&self) -> Vec<(SubgroupId, AbelianGroup)> {
        self.lattice.class_reps().into_iter().map(|h| (h, self.group_at(h))).collect()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.levels.len()).all(|h| self.group_at(h).is_zero())
    }

    fn map_is_trivial(&self, target: SubgroupId, m: &RatMatrix) -> bool {
        (0..m.cols()).all(|j| self.levels[target].is_trivial(&m.column(j), &self.primes))
    }

    fn same_map(&self, target: SubgroupId, a: &RatMatrix, b: &RatMatrix) -> bool {
        self.map_is_trivial(target, &a.add(&b.scale(&-BigRational::one())))
    }

    /// Functoriality, Weyl triviality, and the double coset formula, each checked on generators.
    pub fn check_axioms(&self) -> Vec<Certificate> {
        let l = &self.lattice;
        let g = l.group();
        let n = l.len();
        let mut bad_res = None;
        let mut bad_tr = None;
        for a in 0..n {
            for b in l.subgroups_of(a) {
                for c in l.subgroups_of(b) {
                    if bad_res.is_none() && !self.same_map(c, &self.res(b, c).mul(self.res(a, b)), self.res(a, c)) {
                        bad_res = Some((a, b, c));
                    }
                    if bad_tr.is_none() && !self.same_map(a, &self.tr(b, a).mul(self.tr(c, b)), self.tr(c, a)) {
                        bad_tr = Some((c, b, a));
                    }
                }
            }
        }
        let mut bad_inner = None;
        let mut bad_comp = None;
        for h in 0..n {
            for x in g.elements() {
                if l.subgroup(h).contains(x) && !self.same_map(h, self.conj(x, h), &RatMatrix::identity(self.dim(h))) {
                    bad_inner.get_or_insert((x, h));
                }
                for y in g.elements() {
                    let xh = l.conjugate(h, x);
                    let lhs = self.conj(y, xh).mul(self.conj(x, h));
                    if !self.same_map(l.conjugate(xh, y), &lhs, self.conj(g.mul(y, x), h)) {
                        bad_comp.get_or_insert((x, h));
                    }
                }
            }
        }
        let mut bad_mackey = None;
        for k in 0..n {
            for j in l.subgroups_of(k) {
                for h in l.subgroups_of(k) {
                    if bad_mackey.is_none() && !self.double_coset_holds(k, j, h) {
                        bad_mackey = Some((k, j, h));
                    }
                }
            }
        }
        let cert = |name: &str, what: &str, bad: Option<String>| match bad {
            None => Certificate::pass(name, what),
            Some(w) => Certificate::fail(name, format!("{what}: fails at {w}")),
        };
        vec![
            cert("res-functorial", "res∘res = res", bad_res.map(|x| format!("{x:?}"))),
            cert("tr-functorial", "tr∘tr = tr", bad_tr.map(|x| format!("{x:?}"))),
            cert("weyl-trivial", "c_h is the identity on M(H) for h in H", bad_inner.map(|x| format!("{x:?}"))),
            cert("conj-functorial", "c_y c_x = c_yx", bad_comp.map(|x| format!("{x:?}"))),
            cert("double-coset", "res^K_J tr^K_H = sum over J\\K/H", bad_mackey.map(|x| format!("{x:?}"))),
        ]
    }

    fn double_coset_holds(&self, k: SubgroupId, j: SubgroupId, h: SubgroupId) -> bool {
        let l = &self.lattice;
        let lhs = self.res(k, j).mul(self.tr(h, k));
        let mut rhs = RatMatrix::zeros(self.dim(j), self.dim(h));
        for x in double_coset_reps(l, k, j, h) {
            // J ∩ xHx^-1 receives c_x of the restriction to H ∩ x^-1 J x
            let inv = l.group().inv(x);
            let inner = l.intersection(h, l.conjugate(j, inv));
            let moved = l.conjugate(inner, x);
            let term = self.tr(moved, j).mul(self.conj(x, inner)).mul(self.res(h, inner));
            rhs = rhs.add(&term);
        }
        self.same_map(j, &lhs, &rhs)
    }

    /// Every structure map sends generators into `self` exactly.
    pub fn is_integral(&self) -> bool {
        let ok = |m: &RatMatrix| (0..m.rows()).all(|i| (0..m.cols()).all(|j| {
            let x = m.get(i, j);
            x.is_zero() || self.primes.is_unit(x.denom())
        }));
        self.res.values().all(ok) && self.tr.values().all(ok) && self.conj.values().all(ok)
    }
}

/// Representatives `x` of the double cosets `J x H` inside `K`.
pub fn double_coset_reps(lattice: &SubgroupLattice, k: SubgroupId, j: SubgroupId, h: SubgroupId) -> Vec<usize> {
    let g = lattice.group();
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for &x in lattice.subgroup(k).elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &a in lattice.subgroup(j).elements() {
            for &b in lattice.subgroup(h).elements() {
                seen[g.mul(g.mul(a, x), b)] = true;
            }
        }
    }
    reps
}

fn rings(lattice: &Arc<SubgroupLattice>) -> Vec<BurnsideRing> {
    (0..lattice.len()).map(|h| BurnsideRing::new(lattice.clone(), h)).collect()
}

fn orbit_labels(lattice: &SubgroupLattice, ring: &BurnsideRing) -> Vec<String> {
    ring.classes().reps().into_iter().map(|k| format!("{{L/{}}}", lattice.describe(k))).collect()
}

/// The Burnside ring Mackey functor `A_G`, tensored with `Z[S^-1]`.
pub fn burnside_mackey(lattice: &Arc<SubgroupLattice>, primes: &PrimeSet) -> MackeyFunctor {
    let rings = rings(lattice);
    let levels = rings.iter().map(|r| Level::free(orbit_labels(lattice, r))).collect();
    MackeyFunctor::from_maps(
        "A",
        lattice.clone(),
        primes.clone(),
        levels,
        &|big, small| Ok(rings[big].restriction_matrix(&rings[small])?),
        &|small, big| Ok(rings[small].transfer_matrix(&rings[big])?),
        &|g, h| Ok(rings[h].conjugation_matrix(&rings[lattice.conjugate(h, g)], g)),
    )
    .expect("Burnside maps are always defined")
}

/// The constant functor: `Z` everywhere, identity restrictions, transfers multiply by the index.
pub fn constant_mackey(lattice: &Arc<SubgroupLattice>, primes: &PrimeSet) -> MackeyFunctor {
    let levels = (0..lattice.len()).map(|_| Level::free(vec!["1".into()])).collect();
    let one = || RatMatrix::identity(1);
    MackeyFunctor::from_maps(
        "Zbar",
        lattice.clone(),
        primes.clone(),
        levels,
        &|_, _| Ok(one()),
        &|small, big| Ok(one().scale(&rat_int(lattice.order_of(big) / lattice.order_of(small)))),
        &|_, _| Ok(one()),
    )
    .expect("constant maps are always defined")
}

/// The functor that vanishes everywhere.
pub fn zero_mackey(lattice: &Arc<SubgroupLattice>, primes: &PrimeSet) -> MackeyFunctor {
    let levels = (0..lattice.len()).map(|_| Level::free(vec![])).collect();
    MackeyFunctor::from_maps(
        "0",
        lattice.clone(),
        primes.clone(),
        levels,
        &|_, _| Ok(RatMatrix::zeros(0, 0)),
        &|_, _| Ok(RatMatrix::zeros(0, 0)),
        &|_, _| Ok(RatMatrix::zeros(0, 0)),
    )
    .expect("zero maps are always defined")
}

/// Restricts `ambient` to the span of chosen columns of a per-level basis change.
fn subfunctor(
    ambient: &MackeyFunctor,
    name: &str,
    change: &[RatMatrix],
    inverse: &[RatMatrix],
    keep: &[Vec<usize>],
    labels: Vec<Vec<String>>,
) -> Result<MackeyFunctor, MackeyError> {
    let primes = ambient.primes().clone();
    for (h, cols) in keep.iter().enumerate() {
        for &c in cols {
            for x in change[h].column(c) {
                if !x.is_zero() && !primes.is_unit(x.denom()) {
                    return Err(LocalizationError::InsufficientPrimes {
                        denominator: x.denom().clone(),
                        allowed: primes.clone(),
                    }
                    .into());
                }
            }
        }
    }
    let restrict = |src: SubgroupId, tgt: SubgroupId, m: &RatMatrix| -> Result<RatMatrix, MackeyError> {
        let full = inverse[tgt].mul(m).mul(&change[src]);
        let ks = &keep[src];
        let kt = &keep[tgt];
        for i in (0..full.rows()).filter(|i| !kt.contains(i)) {
            if ks.iter().any(|&j| !full.get(i, j).is_zero()) {
                return Err(MackeyError::NotClosed(name.to_string()));
            }
        }
        let out = RatMatrix::from_fn(kt.len(), ks.len(), |i, j| full.get(kt[i], ks[j]).clone());
        Ok(out)
    };
    let levels = labels.into_iter().map(Level::free).collect();
    let lat = ambient.lattice().clone();
    MackeyFunctor::from_maps(
        name,
        lat.clone(),
        primes.clone(),
        levels,
        &|big, small| restrict(big, small, ambient.res(big, small)),
        &|small, big| restrict(small, big, ambient.tr(small, big)),
        &|g, h| restrict(h, lat.conjugate(h, g), ambient.conj(g, h)),
    )
}

/// `M_F` and `N_F` inside `A_G ⊗ Z[S^-1]`.
#[derive(Debug, Clone)]
pub struct SubFunctors {
    pub m: MackeyFunctor,
    pub n: MackeyFunctor,
    /// The orbit and idempotent bases together form a `Z[S^-1]`-basis at every level.
    pub direct_sum: bool,
}

/// `M_F` alone: orbits with isotropy in the family. Always integral.
pub fn family_submodule(lattice: &Arc<SubgroupLattice>, family: &Family, primes: &PrimeSet) -> MackeyFunctor {
    let ambient = burnside_mackey(lattice, primes);
    let rings = rings(lattice);
    let mut keep = Vec::new();
    let mut labels = Vec::new();
    let mut ids = Vec::new();
    for r in &rings {
        let reps = r.classes().reps();
        let k: Vec<usize> = (0..reps.len()).filter(|&c| family.contains(reps[c])).collect();
        labels.push(k.iter().map(|&c| format!("{{L/{}}}", lattice.describe(reps[c]))).collect());
        keep.push(k);
        ids.push(RatMatrix::identity(r.rank()));
    }
    subfunctor(&ambient, "M_F", &ids, &ids, &keep, labels).expect("orbit spans are closed")
}

/// A `Z[S^-1]`-basis of the column span of an idempotent matrix.
fn image_basis(pi: &RatMatrix, primes: &PrimeSet) -> Result<RatMatrix, MackeyError> {
    for i in 0..pi.rows() {
        for j in 0..pi.cols() {
            let x = pi.get(i, j);
            if !x.is_zero() && !primes.is_unit(x.denom()) {
                return Err(LocalizationError::InsufficientPrimes { denominator: x.denom().clone(), allowed: primes.clone() }
                    .into());
            }
        }
    }
    let (c, int) = pi.clear_denominators();
    let d = diagonalize(&int, Track { rows: true, cols: false });
    let p_inv = RatMatrix::from_int(d.p_inv.as_ref().expect("row transform tracked"));
    let c = rat_int(c);
    Ok(RatMatrix::from_fn(pi.rows(), d.rank(), |i, j| p_inv.get(i, j) * rat_int(d.diagonal[j].clone()) / &c))
}

/// `M_F` spanned by family orbits, `N_F` the image of `1 - e_F`.
///
/// When every needed `e_K^L` (`K` outside the family) lies over `Z[S^-1]`, the basis of
/// `N_F(L)` is exactly those idempotents; otherwise a basis of the projection image is used.
pub fn sub_functors(lattice: &Arc<SubgroupLattice>, family: &Family, primes: &PrimeSet) -> Result<SubFunctors, MackeyError> {
    let ambient = burnside_mackey(lattice, primes);
    let m = family_submodule(lattice, family, primes);
    let mut change = Vec::new();
    let mut inverse = Vec::new();
    let mut keep = Vec::new();
    let mut labels = Vec::new();
    let mut direct_sum = true;
    for r in rings(lattice) {
        let n = r.rank();
        let reps = r.classes().reps();
        let outside: Vec<usize> = (0..n).filter(|&c| !family.contains(reps[c])).collect();
        let marks = RatMatrix::from_fn(n, n, |i, j| rat_int(r.marks().mark(i, j)));
        let marks_inv = marks.inverse().expect("marks tables are invertible over Q");
        let select = |inside: bool| {
            let diag = RatMatrix::from_fn(n, n, |i, j| {
                if i == j && family.contains(reps[i]) == inside { BigRational::one() } else { BigRational::zero() }
            });
            marks_inv.mul(&diag).mul(&marks)
        };
        let idempotents: Vec<Vec<BigRational>> = outside
            .iter()
            .map(|&k| {
                let indicator: Vec<BigRational> = (0..n).map(|i| if i == k { BigRational::one() } else { BigRational::zero() }).collect();
                r.solve_marks(&indicator)
            })
            .collect();
        let integral = idempotents.iter().flatten().all(|x| x.is_zero() || primes.is_unit(x.denom()));
        let (n_basis, n_labels) = if integral {
            let b = RatMatrix::from_fn(n, outside.len(), |i, j| idempotents[j][i].clone());
            (b, outside.iter().map(|&c| format!("e_{}", lattice.describe(reps[c]))).collect::<Vec<_>>())
        } else {
            let b = image_basis(&select(false), primes)?;
            let k = b.cols();
            (b, (0..k).map(|i| format!("n{i}")).collect())
        };
        let rest = image_basis(&select(true), primes)?;
        let full = n_basis.hstack(&rest);
        let full_inv = full.inverse().expect("complementary projections give a basis");
        let orbit_cols: Vec<usize> = (0..n).filter(|&c| family.contains(reps[c])).collect();
        let mixed = RatMatrix::from_fn(n, n, |i, j| {
            if j < orbit_cols.len() {
                if i == orbit_cols[j] { BigRational::one() } else { BigRational::zero() }
            } else {
                n_basis.get(i, j - orbit_cols.len()).clone()
            }
        });
        let det = mixed.determinant();
        direct_sum &= !det.is_zero() && primes.is_unit(det.numer()) && primes.is_unit(det.denom());
        keep.push((0..n_basis.cols()).collect());
        labels.push(n_labels);
        change.push(full);
        inverse.push(full_inv);
    }
    let n = subfunctor(&ambient, "N_F", &change, &inverse, &keep, labels)?;
    Ok(SubFunctors { m, n, direct_sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::all_passed;
    use crate::group::FiniteGroup;

    fn d(order: usize) -> Arc<SubgroupLattice> {
        Arc::new(SubgroupLattice::new(&FiniteGroup::dihedral(order).unwrap()))
    }

    fn by_order(l: &SubgroupLattice, n: usize) -> SubgroupId {
        (0..l.len()).find(|&h| l.order_of(h) == n).unwrap()
    }

    #[test]
    fn burnside_levels_and_axioms() {
        let l = d(6);
        let a = burnside_mackey(&l, &PrimeSet::empty());
        assert_eq!(a.dim(l.whole()), 4);
        assert_eq!(a.dim(by_order(&l, 3)), 2);
        assert_eq!(a.dim(0), 1);
        assert!(all_passed(&a.check_axioms()), "{:?}", a.check_axioms());
        let t = a.tr(by_order(&l, 3), l.whole());
        assert_eq!(t.column(0), vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn constant_functor() {
        let l = Arc::new(SubgroupLattice::new(&FiniteGroup::cyclic(2).unwrap()));
        let z = constant_mackey(&l, &PrimeSet::empty());
        assert_eq!(*z.tr(0, 1).get(0, 0), rat_int(2));
        assert_eq!(*z.res(1, 0).get(0, 0), rat_int(1));
        assert!(all_passed(&z.check_axioms()));
    }

    #[test]
    fn n_family_levels() {
        let l = d(6);
        let f2 = Family::closure(&l, &[by_order(&l, 3)]);
        let s = sub_functors(&l, &f2, &PrimeSet::from_primes([2])).unwrap();
        assert_eq!(s.n.level(l.whole()).labels.len(), 2);
        assert_eq!(s.n.dim(0), 0);
        assert!(all_passed(&s.n.check_axioms()));
        assert!(all_passed(&s.m.check_axioms()));
        let f1 = Family::closure(&l, &[by_order(&l, 2)]);
        let s = sub_functors(&l, &f1, &PrimeSet::from_primes([3])).unwrap();
        assert_eq!(s.n.dim(0), 0);
        assert_eq!(s.n.dim(by_order(&l, 2)), 0);
        assert_eq!(s.n.dim(l.whole()), 2);
        assert!(s.direct_sum);
    }

    #[test]
    fn needs_primes() {
        let l = d(6);
        let f = Family::closure(&l, &[0]);
        assert!(matches!(
            sub_functors(&l, &f, &PrimeSet::empty()),
            Err(MackeyError::Localization(LocalizationError::InsufficientPrimes { .. }))
        ));
        let all = Family::all(&l);
        let s = sub_functors(&l, &all, &PrimeSet::empty()).unwrap();
        assert!(s.n.is_zero());
    }
}
