use proptest::prelude::*;

use shintani_core::arith::rational::{frac, q, Q};
use shintani_core::domain::*;
use shintani_core::field::{FieldElement, NumberField};
use shintani_core::fixtures;
use shintani_core::geometry::{cone_coordinates, Point};
use shintani_core::membership::MembershipRegistry;

fn sqrt2() -> (NumberField, SignedDomain) {
    let k = fixtures::SQRT2.field().unwrap();
    let d = SignedDomain::build(&fixtures::SQRT2.units(), &k).unwrap();
    (k, d)
}

#[test]
fn colmez_generator_examples() {
    let (k, _) = sqrt2();
    let e = FieldElement::from_ints(&[3, 2]);
    assert_eq!(colmez_generators(std::slice::from_ref(&e), &[0], &k), vec![k.one(), e]);
    let c = fixtures::CUBIC81.field().unwrap();
    let u = fixtures::CUBIC81.units();
    let g = colmez_generators(&u, &[1, 0], &c);
    assert_eq!(g, vec![c.one(), u[1].clone(), c.mul(&u[1], &u[0])]);
    let q4 = fixtures::QUARTIC725.field().unwrap();
    let u4 = fixtures::QUARTIC725.units();
    let full = u4.iter().fold(q4.one(), |a, b| q4.mul(&a, b));
    for (sigma, _) in shintani_core::arith::linalg::permutations(3) {
        assert_eq!(colmez_generators(&u4, &sigma, &q4)[3], full);
    }
}

#[test]
fn quadratic_domain_shape() {
    let (k, d) = sqrt2();
    assert_eq!(d.cones().len(), 1);
    let c = &d.cones()[0];
    assert_eq!((c.w, c.flags.clone()), (1, vec![Flag::Open, Flag::Closed]));
    assert!(d.is_true_domain());
    assert_eq!(cone_sign(d.units(), &[0], &k).unwrap(), 1);
    // ε -> ε^{-1}: both sign factors flip
    let inv = k.inv(&FieldElement::from_ints(&[3, 2])).unwrap();
    let d2 = SignedDomain::build(&[inv], &k).unwrap();
    assert_eq!(d2.cones().len(), 1);
    assert_eq!(d2.cones()[0].w, 1);
}

#[test]
fn cubic_cone_signs_regression() {
    let c = fixtures::CUBIC81.field().unwrap();
    let d = SignedDomain::build(&fixtures::CUBIC81.units(), &c).unwrap();
    assert_eq!(d.cones().iter().map(|c| c.w).collect::<Vec<_>>(), vec![1, 1]);
    let q4 = fixtures::QUARTIC725.field().unwrap();
    let d4 = SignedDomain::build(&fixtures::QUARTIC725.units(), &q4).unwrap();
    assert_eq!(d4.cones().iter().map(|c| c.w).collect::<Vec<_>>(), vec![1, 1, 1, 1, -1, 1]);
    assert!(!d4.is_true_domain());
}

#[test]
fn weights_sum_to_at_least_one() {
    for fx in fixtures::ALL {
        let k = fx.field().unwrap();
        let d = SignedDomain::build(&fx.units(), &k).unwrap();
        assert!(d.cones().iter().map(|c| c.w).sum::<i32>() >= 1, "{}", fx.name);
        assert!(d.cones().len() <= (1..k.degree()).product::<usize>());
    }
}

#[test]
fn exact_cone_sign_matches_interval_determinant() {
    for fx in fixtures::ALL {
        let k = fx.field().unwrap();
        let d = SignedDomain::build(&fx.units(), &k).unwrap();
        for c in d.cones() {
            assert_eq!(k.conjugate_det_sign(&c.generators), conjugate_det_sign_numeric(&c.generators, &k).unwrap());
        }
    }
}

#[test]
fn flags_follow_e_n_coordinates() {
    for fx in fixtures::ALL {
        let k = fx.field().unwrap();
        let d = SignedDomain::build(&fx.units(), &k).unwrap();
        for c in d.cones() {
            let cc = cone_coordinates(&Point::e_n(&k), &c.generators, &k).unwrap();
            for (s, f) in cc.signs.iter().zip(&c.flags) {
                assert_eq!(*f, if *s > 0 { Flag::Closed } else { Flag::Open });
            }
        }
    }
}

#[test]
fn membership_examples() {
    let (k, d) = sqrt2();
    let e = FieldElement::from_ints(&[3, 2]);
    assert!(d.cone_contains(0, &Point::Field(k.one().add(&e))).unwrap());
    assert!(d.cone_contains(0, &Point::Field(k.one())).unwrap());
    assert!(!d.cone_contains(0, &Point::Field(e)).unwrap());
    let r = d.orbit_net_count(&Point::Field(k.one())).unwrap();
    assert_eq!(r.net, 1);
    assert_eq!(r.hits, vec![Hit { cone: 0, exponents: vec![0] }]);
}

#[test]
fn validation_errors() {
    let (k, _) = sqrt2();
    assert_eq!(SignedDomain::build(&[FieldElement::from_ints(&[2, 1])], &k).unwrap_err().kind(), "NotAUnit");
    assert_eq!(
        SignedDomain::build(&[FieldElement::from_ints(&[1, 1])], &k).unwrap_err().kind(),
        "NotTotallyPositive"
    );
    let dq = fixtures::DEPENDENT_QUARTIC;
    let kq = dq.field().unwrap();
    assert_eq!(SignedDomain::build(&dq.units(), &kq).unwrap_err().kind(), "DependentUnits");
    let c = fixtures::CUBIC81.field().unwrap();
    let u = fixtures::CUBIC81.units();
    let sq = c.mul(&u[0], &u[0]);
    assert_eq!(SignedDomain::build(&[u[0].clone(), sq], &c).unwrap_err().kind(), "DependentUnits");
}

#[test]
fn strategies_agree_on_small_sample() {
    let reg = MembershipRegistry::default();
    assert_eq!(reg.names(), vec!["cone-piercing", "coordinates", "simplex"]);
    assert_eq!(reg.get("bogus").err().unwrap().kind(), "UnknownStrategy");
    for fx in [fixtures::CUBIC81, fixtures::QUARTIC725] {
        let k = fx.field().unwrap();
        let d = SignedDomain::build(&fx.units(), &k).unwrap();
        for name in reg.names() {
            let r = verify_net_count_with(&d, reg.get(name).unwrap().as_ref(), 20, 3).unwrap();
            assert!(r.ok(), "{} {name}: {:?}", fx.name, r.failures);
        }
    }
}

#[test]
fn verification_is_seed_deterministic() {
    let k = fixtures::CUBIC148.field().unwrap();
    let d = SignedDomain::build(&fixtures::CUBIC148.units(), &k).unwrap();
    let a = random_point(&k, &mut sample_rng(9, 4));
    let b = random_point(&k, &mut sample_rng(9, 4));
    assert_eq!(a, b);
    assert_eq!(verify_net_count(&d, 30, 9).unwrap(), verify_net_count(&d, 30, 9).unwrap());
}

fn positive_rationals(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((1i64..500, 1i64..500), n).prop_map(|v| v.into_iter().map(|(a, b)| frac(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Moving along the orbit shifts every hit's exponent vector.
    #[test]
    fn orbit_invariance(x in positive_rationals(3), a in prop::collection::vec(-3i64..=3, 2)) {
        let k = fixtures::CUBIC81.field().unwrap();
        let d = SignedDomain::build(&fixtures::CUBIC81.units(), &k).unwrap();
        let p = Point::rational(&k, x);
        let moved = p.times(&k, &d.unit_power(&a).unwrap());
        let r0 = d.orbit_net_count(&p).unwrap();
        let r1 = d.orbit_net_count(&moved).unwrap();
        prop_assert_eq!(r0.net, 1);
        prop_assert_eq!(r1.net, 1);
        let mut shifted: Vec<Hit> = r0.hits.iter().map(|h| Hit {
            cone: h.cone,
            exponents: h.exponents.iter().zip(&a).map(|(e, s)| e - s).collect(),
        }).collect();
        let mut got = r1.hits.clone();
        shifted.sort_by(|x, y| (x.cone, &x.exponents).cmp(&(y.cone, &y.exponents)));
        got.sort_by(|x, y| (x.cone, &x.exponents).cmp(&(y.cone, &y.exponents)));
        prop_assert_eq!(shifted, got);
    }

    /// With weights ±1, net count one forces every negative hit to be cancelled.
    #[test]
    fn negative_hits_are_cancelled(x in positive_rationals(4)) {
        let k = fixtures::QUARTIC725.field().unwrap();
        let d = SignedDomain::build(&fixtures::QUARTIC725.units(), &k).unwrap();
        let r = d.orbit_net_count(&Point::rational(&k, x)).unwrap();
        prop_assert_eq!(r.net, 1);
        let neg = r.hits.iter().filter(|h| d.cones()[h.cone].w < 0).count();
        prop_assert_eq!(r.hits.len(), 1 + 2 * neg);
    }

    /// In a true domain every orbit meets exactly one cone, once.
    #[test]
    fn true_domains_are_hit_once(x in positive_rationals(3), which in 0usize..2) {
        let fx = [fixtures::CUBIC81, fixtures::CUBIC148][which];
        let k = fx.field().unwrap();
        let d = SignedDomain::build(&fx.units(), &k).unwrap();
        prop_assert!(d.is_true_domain());
        let r = d.orbit_net_count(&Point::rational(&k, x)).unwrap();
        prop_assert_eq!(r.hits.len(), 1);
    }

    #[test]
    fn boundary_points_of_quadratic_cone(t in 1i64..50, s in 0i64..50) {
        let (k, d) = sqrt2();
        let e = FieldElement::from_ints(&[3, 2]);
        let x = k.one().scale(&q(t)).add(&e.scale(&q(s)));
        prop_assert!(d.cone_contains(0, &Point::Field(x.clone())).unwrap());
        prop_assert_eq!(d.orbit_net_count(&Point::Field(x)).unwrap().net, 1);
        // t = 0 is the open face
        prop_assert!(!d.cone_contains(0, &Point::Field(e.scale(&q(t)))).unwrap());
    }
}
