use super::*;

fn mono(text: &str) -> ClassMonomial {
    let (m, idx) = ClassMonomial::parse(text).unwrap();
    m.with_index(idx.unwrap_or(1))
}

fn orders(g: &GradedGroup) -> Vec<(String, u64, u64)> {
    g.summands.iter().map(|s| (s.monomial.name().render(g.ring), s.order, s.monomial.index)).collect()
}

#[test]
fn c2_ring_values() {
    assert_eq!(orders(&c2_at(0, 0)), vec![("1".into(), 0, 1)]);
    assert_eq!(orders(&c2_at(0, -1)), vec![("a_s".into(), 2, 1)]);
    assert_eq!(orders(&c2_at(2, -2)), vec![("u_2s".into(), 0, 1)]);
    assert_eq!(orders(&c2_at(-2, 2)), vec![("u_2s^-1".into(), 0, 2)]);
    assert_eq!(orders(&c2_at(-3, 3)), vec![("u_2s^-1 a_s^-1 S^-1".into(), 2, 1)]);
    assert!(c2_at(1, 0).is_zero());
}

#[test]
fn cp_ring_values() {
    let p = 3;
    assert_eq!(orders(&cp_at(p, 2, -1).unwrap()), vec![("u_l".into(), 0, 1)]);
    assert_eq!(orders(&cp_at(p, 0, -1).unwrap()), vec![("a_l".into(), 3, 1)]);
    assert_eq!(orders(&cp_at(p, -2, 1).unwrap()), vec![("u_l^-1".into(), 0, 3)]);
    assert!(cp_at(4, 0, 0).is_err());
}

#[test]
fn d2p_examples() {
    let p = 3;
    assert_eq!(orders(&d2p_at(p, 0, 0, 0).unwrap()), vec![("1".into(), 0, 1)]);
    assert_eq!(orders(&d2p_at(p, -2, 2, 0).unwrap()), vec![("u_2s^-1".into(), 0, 2)]);
    assert_eq!(orders(&d2p_at(p, -2, 2, -1).unwrap()), vec![("u_2s^-1 a_g".into(), 3, 1)]);
    assert_eq!(orders(&d2p_at(p, 1, 1, -1).unwrap()), vec![("u_gs".into(), 0, 1)]);
    assert!(d2p_at(p, 0, -1, -1).unwrap().is_zero());
    assert_eq!(orders(&d2p_at(5, -3, 1, 1).unwrap()), vec![("u_gs^-1 u_2s^-1".into(), 0, 10)]);
}

#[test]
fn relations_give_orders() {
    let p = 5;
    assert_eq!(d2p_at(p, 0, -1, 0).unwrap().summands[0].order, 2);
    assert_eq!(d2p_at(p, 0, 0, -1).unwrap().summands[0].order, 5);
}

#[test]
fn products() {
    let p = 3;
    let r = Ring::D2p;
    match multiply(r, p, &mono("a_s"), &mono("a_s")).unwrap() {
        Product::Element(e) => {
            assert_eq!(e.order, 2);
            assert_eq!(e.monomial.c, 2);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(multiply(r, p, &mono("a_s"), &mono("a_g")).unwrap(), Product::Zero);
    match multiply(r, p, &mono("u_2s"), &mono("2*u_2s^-1")).unwrap() {
        Product::Element(e) => {
            assert_eq!(e.monomial.name(), ClassMonomial::unit());
            assert_eq!(e.coeff, 2);
            assert_eq!(e.render(r), "2*1");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(multiply(r, p, &mono("a_s^-1"), &mono("a_s")), Err(RoqError::ZeroInput(_))));
    assert!(matches!(multiply(r, p, &mono("u_2s^-1"), &mono("u_2s")), Err(RoqError::BadIndex { .. })));
    assert!(matches!(multiply(r, p, &mono("2*a_s"), &mono("u_2s")), Err(RoqError::ZeroInput(_))));
}

#[test]
fn monomial_syntax() {
    let (m, idx) = ClassMonomial::parse("u_gs^2 u_2s^-1 a_s^3 S^-1").unwrap();
    assert_eq!((m.a, m.b, m.c, m.d, m.shift, idx), (2, -1, 3, 0, -1, None));
    let (m, idx) = ClassMonomial::parse("6*u_2s^-1 u_gs^-1").unwrap();
    assert_eq!((m.a, m.b, idx), (-1, -1, Some(6)));
    assert_eq!(m.with_index(6).render(Ring::D2p), "6*u_gs^-1 u_2s^-1");
    assert!(ClassMonomial::parse("u_gs u_gs").is_err());
    assert!(ClassMonomial::parse("x^2").is_err());
    assert!(ClassMonomial::parse("S^-2").is_err());
    assert!(ClassMonomial::parse("0*a_s").is_err());
}

#[test]
fn gluing_small_box() {
    for p in [3, 5, 7] {
        let r = localize_check(p, 5, 4, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.nonzero_degrees > 0);
    }
}

#[test]
fn localization_examples() {
    let p = 3;
    let g = d2p_at(p, 0, -1, 0).unwrap();
    assert_eq!(g.invert(p).abelian(), AbelianGroup::cyclic(2));
    assert!(g.invert(2).is_zero());
    assert!(d2p_inv2_at(p, 0, -1, 0).unwrap().is_zero());
    let u = d2p_at(p, 1, 1, -1).unwrap();
    assert_eq!(u.invert(2).abelian(), AbelianGroup::free(1));
    assert_eq!(u.invert(p).abelian(), AbelianGroup::free(1));
}

#[test]
fn family_pieces() {
    let p = 3;
    assert_eq!(f1_piece_at(p, 1, 1, -1).unwrap().abelian(), AbelianGroup::free(1));
    assert!(f2_piece_at(p, 0, 1, 0).unwrap().is_zero());
    let f2 = f2_piece_at(p, 1, 1, -1).unwrap();
    assert_eq!(orders(&f2), vec![("u_gs".into(), 0, 1)]);
}

#[test]
fn tau_signs() {
    assert_eq!(tau_sign(0, 0, 1, 2), -1);
    assert_eq!(tau_sign(0, 0, 3, 0), 1);
    assert_eq!(tau_sign(0, 1, 0, 0), -1);
    for t in 0..12 {
        let expect = if t % 4 == 2 || t % 4 == 3 { -1 } else { 1 };
        assert_eq!(tau_sign(0, 0, 2, t), expect);
    }
}

#[test]
fn reductions() {
    let p = 3;
    let f1 = reduce_generald2p(p, Part::F1, 1, 2, 3).unwrap();
    assert_eq!((f1.target, f1.degree, f1.construction), (TargetGroup::C2, RODegree::new(4, 5, 0), FixedPointTag::CategoricalCp));
    let t2 = reduce_generald2p(p, Part::Tilde2, 1, 2, 3).unwrap();
    assert_eq!((t2.target, t2.degree.k), (TargetGroup::Trivial, 4));
    assert!(reduce_generald2p(p, Part::Tilde1, 0, 0, 0).unwrap().hz.is_zero());
    assert!(reduce_generald2p(p, Part::F2, 0, 1, 0).unwrap().parity_vanishes);
    assert_eq!("tilde1".parse::<Part>().unwrap(), Part::Tilde1);
}

#[test]
fn burnside_coefficient_pieces() {
    let p = 3;
    let two = hagrog_at(p, 0, 0, 0, 2).unwrap();
    assert_eq!(two[0].value, Some(AbelianGroup::free(2)));
    assert!(!two[1].vanishes);
    let two = hagrog_at(p, 1, 0, -1, 2).unwrap();
    assert_eq!(two[0].value, Some(AbelianGroup::free(2)));
    let inv_p = hagrog_at(p, 0, 0, 0, 3).unwrap();
    assert!(inv_p.iter().all(|c| c.value.is_none()));
    assert!(hagrog_at(p, 0, 0, 0, 5).is_err());
}

#[test]
fn ring_laws_small_box() {
    let r = ring_law_check(Ring::D2p, 3, 2, 2, 1).unwrap();
    assert!(r.unit_failures.is_empty() && r.commutativity_failures.is_empty(), "{r:?}");
    assert!(r.generators > 10);
}
