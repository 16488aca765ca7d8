use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use equisplit_bench::{dihedral_sphere, lattice, s4};
use equisplit_core::arith::PrimeSet;
use equisplit_core::burnside::BurnsideRing;
use equisplit_core::families::Family;
use equisplit_core::gcw::{bredon_cohomology, bredon_homology, GCWComplex};
use equisplit_core::group::{FiniteGroup, SubgroupLattice};
use equisplit_core::mackey::{box_product, constant_mackey, sub_functors};
use equisplit_core::roq::{self, Ring};

fn burnside(c: &mut Criterion) {
    let l = s4();
    c.bench_function("lattice S4", |b| b.iter(|| SubgroupLattice::new(black_box(l.group()))));
    let ring = BurnsideRing::top(l.clone());
    c.bench_function("table of marks S4", |b| b.iter(|| BurnsideRing::top(black_box(l.clone()))));
    let primes = PrimeSet::from_primes([2, 3]);
    c.bench_function("idempotents S4", |b| b.iter(|| ring.idempotent_basis(black_box(&primes)).unwrap()));
    let (x, y) = (ring.orbit(1), ring.orbit(3));
    c.bench_function("multiply S4", |b| b.iter(|| ring.multiply(black_box(&x), black_box(&y)).unwrap()));
}

fn mackey(c: &mut Criterion) {
    let l = lattice(FiniteGroup::dihedral(10).unwrap());
    let primes = PrimeSet::from_primes([2]);
    let c5 = (0..l.len()).find(|&h| l.order_of(h) == 5).unwrap();
    let n = sub_functors(&l, &Family::closure(&l, &[c5]), &primes).unwrap().n;
    let z = constant_mackey(&l, &primes);
    c.bench_function("box ZBar N_F D10", |b| b.iter(|| box_product(black_box(&z), black_box(&n)).unwrap()));
}

fn bredon(c: &mut Criterion) {
    let (l, x) = dihedral_sphere(3, 2, 2);
    let z = constant_mackey(&l, &PrimeSet::empty());
    c.bench_function("bredon homology S^(2s+2g) D6", |b| b.iter(|| bredon_homology(black_box(&x), &z).unwrap()));
    c.bench_function("bredon cohomology S^(2s+2g) D6", |b| b.iter(|| bredon_cohomology(black_box(&x), &z).unwrap()));
    let s = GCWComplex::sphere_lambda_cp(3, 5).unwrap().cyclic().unwrap();
    let zc = constant_mackey(s.lattice(), &PrimeSet::empty());
    c.bench_function("bredon homology S^(3l) C5", |b| b.iter(|| bredon_homology(black_box(&s), &zc).unwrap()));
}

fn ro_grading(c: &mut Criterion) {
    c.bench_function("d2p box 4,3,2", |b| {
        b.iter(|| {
            for k in -4..=4 {
                for m in -3..=3 {
                    for n in -2..=2 {
                        black_box(roq::d2p_at(3, k, m, n).unwrap());
                    }
                }
            }
        })
    });
    c.bench_function("glue check 4,3,2", |b| b.iter(|| roq::localize_check(black_box(3), 4, 3, 2).unwrap()));
    c.bench_function("ring laws 1,1,1", |b| b.iter(|| roq::ring_law_check(Ring::D2p, black_box(3), 1, 1, 1).unwrap()));
}

criterion_group!(kernels, burnside, mackey, bredon, ro_grading);
criterion_main!(kernels);
