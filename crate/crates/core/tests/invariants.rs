use std::sync::Arc;

use equisplit_core::arith::{rat, PrimeSet};
use equisplit_core::burnside::BurnsideRing;
use equisplit_core::families::{splitting_coefficients, Family};
use equisplit_core::gcw::{dihedral_lattice, GCWComplex};
use equisplit_core::group::{FiniteGroup, SubgroupLattice};
use equisplit_core::linalg::AbelianGroup;
use equisplit_core::oracle::product_orbit_counts;
use equisplit_core::roq::{self, multiply, tau_sign, ClassMonomial, Element, Product, RODegree, Ring};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn groups() -> Vec<Arc<SubgroupLattice>> {
    let c = |n| FiniteGroup::cyclic(n).unwrap();
    [
        c(6),
        c(8),
        FiniteGroup::dihedral(8).unwrap(),
        FiniteGroup::dihedral(10).unwrap(),
        FiniteGroup::dihedral(12).unwrap(),
        FiniteGroup::alternating(4).unwrap(),
        FiniteGroup::quaternion().unwrap(),
        FiniteGroup::direct_product(&c(2), &c(6)).unwrap(),
        FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(),
    ]
    .into_iter()
    .map(|g| Arc::new(SubgroupLattice::new(&g)))
    .collect()
}

fn lattice_strategy() -> impl Strategy<Value = Arc<SubgroupLattice>> {
    proptest::sample::select(groups())
}

fn degree() -> impl Strategy<Value = RODegree> {
    (-8i64..=8, -6i64..=6, -4i64..=4).prop_map(|(k, m, n)| RODegree::new(k, m, n))
}

fn prime() -> impl Strategy<Value = u64> {
    proptest::sample::select(vec![3u64, 5, 7, 11])
}

fn generators(ring: Ring, p: u64, d: RODegree) -> Vec<Element> {
    roq::group_at(ring, p, d)
        .unwrap()
        .summands
        .iter()
        .map(|s| Element { coeff: 1, monomial: s.monomial, order: s.order })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn marks_product_is_pointwise_and_matches_orbit_counts(l in lattice_strategy(), i in 0usize..64, j in 0usize..64) {
        let ring = BurnsideRing::top(l.clone());
        let (i, j) = (i % ring.rank(), j % ring.rank());
        let (x, y) = (ring.orbit(i), ring.orbit(j));
        let xy = ring.multiply(&x, &y).unwrap();
        let (mx, my, mxy) = (ring.marks_vector(&x), ring.marks_vector(&y), ring.marks_vector(&xy));
        for k in 0..ring.rank() {
            prop_assert_eq!(&mxy[k], &(&mx[k] * &my[k]));
        }
        prop_assert_eq!(&xy, &ring.multiply(&y, &x).unwrap());
        let reps = ring.classes().reps();
        let counts = product_orbit_counts(&l, ring.classes(), reps[i], reps[j]);
        let want: Vec<_> = counts.iter().map(|&c| rat(c as i64, 1)).collect();
        prop_assert_eq!(xy.coeffs, want);
    }

    #[test]
    fn idempotents_partition_unity(l in lattice_strategy()) {
        let ring = BurnsideRing::top(l.clone());
        let primes = PrimeSet::from_divisors([l.group().order() as u64]);
        let es = ring.idempotent_basis(&primes).unwrap();
        let mut total = vec![num_rational::BigRational::zero(); ring.rank()];
        for e in &es {
            for (t, c) in total.iter_mut().zip(&e.coeffs) {
                *t += c;
            }
            prop_assert_eq!(&ring.multiply(e, e).unwrap().coeffs, &e.coeffs);
        }
        prop_assert_eq!(total, ring.orbit(ring.class_of(l.whole())).coeffs);
    }

    #[test]
    fn splitting_coefficients_solve_the_marks_system(l in lattice_strategy(), seed in 0usize..64) {
        let ring = BurnsideRing::top(l.clone());
        let family = Family::closure(&l, &[seed % l.len()]);
        prop_assert!(family.is_valid(&l));
        let s = splitting_coefficients(&ring, &family);
        prop_assert!(s.verify(&ring));
    }

    #[test]
    fn invariant_factors_divide_and_keep_the_order(orders in proptest::collection::vec(2u64..40, 0..5), rank in 0usize..3) {
        let g = AbelianGroup::from_orders(rank, orders.iter().map(|&o| BigInt::from(o)).collect());
        prop_assert_eq!(g.rank, rank);
        for w in g.torsion.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let product = g.torsion.iter().fold(BigInt::one(), |a, t| a * t);
        let want = orders.iter().fold(BigInt::one(), |a, &o| a * BigInt::from(o));
        prop_assert_eq!(product, want);
    }

    #[test]
    fn every_summand_sits_in_its_degree_and_parses_back(p in prime(), d in degree()) {
        for ring in [Ring::D2p, Ring::D2pInvP, Ring::D2pInv2] {
            let g = roq::group_at(ring, p, d).unwrap();
            for s in &g.summands {
                prop_assert_eq!(s.monomial.degree(ring), d);
                let (back, idx) = ClassMonomial::parse(&s.monomial.render(ring)).unwrap();
                prop_assert_eq!(back.with_index(idx.unwrap_or(1)), s.monomial);
            }
        }
    }

    #[test]
    fn localizations_agree_with_the_inverted_rings(p in prime(), d in degree()) {
        let full = roq::d2p_at(p, d.k, d.m, d.n).unwrap();
        prop_assert!(full.invert(p).same_classes(&roq::d2p_invp_at(p, d.k, d.m, d.n).unwrap()));
        prop_assert!(full.invert(2).same_classes(&roq::d2p_inv2_at(p, d.k, d.m, d.n).unwrap()));
        prop_assert!(roq::f1_piece_at(p, d.k, d.m, d.n).unwrap().same_classes(&full.invert(p)));
        prop_assert!(roq::f2_piece_at(p, d.k, d.m, d.n).unwrap().same_classes(&full.invert(2)));
    }

    #[test]
    fn products_commute_and_respect_the_unit(p in prime(), d in degree(), e in degree()) {
        let one = Element::generator(Ring::D2p, p, ClassMonomial::unit()).unwrap();
        for x in generators(Ring::D2p, p, d) {
            prop_assert_eq!(roq::multiply_elements(Ring::D2p, p, &one, &x), Product::Element(x));
            for y in generators(Ring::D2p, p, e) {
                let xy = roq::multiply_elements(Ring::D2p, p, &x, &y);
                prop_assert_eq!(&xy, &roq::multiply_elements(Ring::D2p, p, &y, &x));
                if let Product::Element(z) = xy {
                    prop_assert_eq!(z.monomial.degree(Ring::D2p), d + e);
                }
            }
        }
    }

    #[test]
    fn tau_sign_depends_on_the_difference(k in -20i64..20, m in -20i64..20, n in -5i64..5, t in -20i64..20, s in -8i64..8) {
        let a = tau_sign(k, m, n, t);
        prop_assert!(a == 1 || a == -1);
        prop_assert_eq!(a, tau_sign(k + s, m, n, t + s));
        prop_assert_eq!(a, tau_sign(k, m, n + s, t));
    }

    #[test]
    fn multiples_of_torsion_generators_reduce(p in prime(), c in 1u64..12) {
        let a_s = ClassMonomial::parse("a_s").unwrap().0;
        let got = multiply(Ring::D2p, p, &a_s.with_index(c), &a_s);
        if c % 2 == 0 {
            prop_assert!(got.is_err());
        } else {
            prop_assert_eq!(got.unwrap().render(Ring::D2p), "a_s^2");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn representation_spheres_are_spheres(p in proptest::sample::select(vec![3usize, 5]), m in 0usize..3, n in 0usize..3) {
        let l = dihedral_lattice(p).unwrap();
        let x = GCWComplex::sphere_d2p(&l, m, n).unwrap();
        let h = x.underlying().reduced_homology();
        let dim = m + 2 * n;
        for j in 0..=dim + 1 {
            let want = if j == dim { AbelianGroup::free(1) } else { AbelianGroup::zero() };
            prop_assert_eq!(h.at(j), want, "degree {}", j);
        }
    }
}
