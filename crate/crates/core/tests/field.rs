use num_traits::Zero;
use proptest::prelude::*;

use shintani_core::arith::rational::{q, Q};
use shintani_core::arith::Interval;
use shintani_core::field::{FieldElement, NumberField};
use shintani_core::fixtures;

/// Roots of a real polynomial by sign-change scanning and bisection in f64.
fn bisection_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let f = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let steps = 20_000;
    let h = (hi - lo) / steps as f64;
    let mut out = vec![];
    for i in 0..steps {
        let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
        if f(a) == 0.0 {
            out.push(a);
            continue;
        }
        if f(a).signum() == f(b).signum() {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(a).signum() == f(m).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

fn contains_f64(i: &Interval, x: f64, slack: f64) -> bool {
    i.lo().to_f64() - slack <= x && x <= i.hi().to_f64() + slack
}

#[test]
fn cubic_roots_match_bisection() {
    let k = NumberField::new(&[-1, -3, 0, 1]).unwrap();
    let theta = k.theta();
    let encl = k.enclose(&theta, 128);
    let oracle = bisection_roots(&[-1.0, -3.0, 0.0, 1.0], -3.0, 3.0);
    assert_eq!(oracle.len(), 3);
    for (i, r) in encl.iter().zip(&oracle) {
        assert!(contains_f64(i, *r, 1e-12), "{r}");
    }
    assert!((oracle[0] + 1.532).abs() < 1e-3 && (oracle[1] + 0.347).abs() < 1e-3 && (oracle[2] - 1.879).abs() < 1e-3);
}

#[test]
fn quartic_roots_match_bisection() {
    let k = fixtures::QUARTIC725.field().unwrap();
    let encl = k.enclose(&k.theta(), 128);
    let oracle = bisection_roots(&[1.0, 1.0, -3.0, -1.0, 1.0], -4.0, 4.0);
    assert_eq!(oracle.len(), 4);
    for (i, r) in encl.iter().zip(&oracle) {
        assert!(contains_f64(i, *r, 1e-12));
    }
}

#[test]
fn constructor_errors() {
    assert_eq!(NumberField::new(&[1, 0, 1]).unwrap_err().kind(), "NotTotallyReal");
    assert_eq!(NumberField::new(&[1, 2, 1]).unwrap_err().kind(), "NotSquarefree");
    assert_eq!(NumberField::new(&[1, 1]).unwrap_err().kind(), "DegreeTooSmall");
    assert_eq!(NumberField::new(&[1, 0, 2]).unwrap_err().kind(), "NotMonic");
    // (x^2 - 2)(x^2 - 3)
    assert_eq!(NumberField::new(&[6, 0, -5, 0, 1]).unwrap_err().kind(), "Reducible");
}

#[test]
fn embeddings_of_quadratic_elements() {
    let k = NumberField::new(&[-2, 0, 1]).unwrap();
    let one = k.embed(&k.one(), &Q::new(1.into(), 1_000_000.into())).unwrap();
    assert!(one.coords.iter().all(|i| i.contains_rational(&q(1))));
    let eps = FieldElement::from_ints(&[3, 2]);
    let width = Q::new(1.into(), num_bigint::BigInt::from(1) << 80u32);
    let e = k.embed(&eps, &width).unwrap();
    let s = 2f64.sqrt();
    assert!(contains_f64(&e.coords[0], 3.0 - 2.0 * s, 1e-15));
    assert!(contains_f64(&e.coords[1], 3.0 + 2.0 * s, 1e-14));
    assert!(e.coords.iter().all(|i| i.width().to_rational() <= width));
    let t = k.enclose(&k.theta(), 64);
    assert!(contains_f64(&t[0], -s, 1e-15) && contains_f64(&t[1], s, 1e-15));
}

#[test]
fn positivity_and_units() {
    let k = NumberField::new(&[-2, 0, 1]).unwrap();
    let eps = FieldElement::from_ints(&[3, 2]);
    assert!(k.is_totally_positive(&k.one()).unwrap());
    assert!(!k.is_totally_positive(&k.theta()).unwrap());
    assert!(k.is_totally_positive(&eps).unwrap());
    assert_eq!(k.is_totally_positive(&k.zero()).unwrap_err().kind(), "ZeroElement");
    assert_eq!(k.char_poly(&eps), vec![q(1), q(-6), q(1)]);
    assert!(k.is_unit(&eps).unwrap());
    assert!(!k.is_unit(&k.rational(q(2))).unwrap());
    let c = NumberField::new(&[-1, -3, 0, 1]).unwrap();
    assert_eq!(c.char_poly(&c.theta()), vec![q(-1), q(-3), q(0), q(1)]);
    assert!(c.is_unit(&c.theta()).unwrap());
}

#[test]
fn log_vector_and_regulator_examples() {
    let k = NumberField::new(&[-2, 0, 1]).unwrap();
    let eps = FieldElement::from_ints(&[3, 2]);
    assert!(k.log_vector(&k.one(), 64).unwrap().iter().all(|i| i.contains_rational(&q(0))));
    let l = k.log_vector(&eps, 128).unwrap();
    assert_eq!(l.len(), 1);
    assert!(contains_f64(&l[0], (3.0 - 2.0 * 2f64.sqrt()).ln(), 1e-14));
    assert!((l[0].mid_f64() + 1.7627).abs() < 1e-4);
    assert_eq!(k.signed_regulator_sign(std::slice::from_ref(&eps)).unwrap(), -1);
    assert_eq!(k.signed_regulator_sign(&[k.inv(&eps).unwrap()]).unwrap(), 1);
    let c = fixtures::CUBIC81.field().unwrap();
    let u = fixtures::CUBIC81.units();
    assert_eq!(c.signed_regulator_sign(&[u[0].clone(), u[0].clone()]).unwrap(), 0);
    let (lhs, rhs) = k.regulator_identity_sides(&[eps]).unwrap();
    let hand = 2.0 * (3.0 - 2.0 * 2f64.sqrt()).ln();
    assert!((lhs - hand).abs() < 1e-12 && (rhs - hand).abs() < 1e-12);
    assert!((hand + 3.5255).abs() < 1e-4);
}

#[test]
fn regulator_identity_on_all_fixtures() {
    for fx in fixtures::ALL {
        let k = fx.field().unwrap();
        assert!(k.check_regulator_identity(&fx.units(), 1e-10).unwrap(), "{}", fx.name);
    }
}

fn small_element(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, n).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn unit_power(k: &NumberField, units: &[FieldElement], a: &[i64]) -> FieldElement {
    units
        .iter()
        .zip(a)
        .fold(k.one(), |acc, (u, &e)| k.mul(&acc, &k.pow(u, e).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_product_of_conjugates(c in small_element(3)) {
        let k = NumberField::new(&[-1, -3, 0, 1]).unwrap();
        let a = FieldElement::from_ints(&c);
        let conj = k.enclose(&a, 128);
        let prod = conj.iter().skip(1).fold(conj[0].clone(), |acc, x| acc.mul(x, 128));
        prop_assert!(prod.contains_rational(&k.norm(&a)));
    }

    #[test]
    fn refinement_halves_widths(c in small_element(3), p in 64u32..200) {
        let k = NumberField::new(&[-1, -3, 0, 1]).unwrap();
        let a = FieldElement::from_ints(&c);
        let w1: Vec<_> = k.enclose(&a, p).iter().map(|i| i.width().to_rational()).collect();
        let w2: Vec<_> = k.enclose(&a, 2 * p).iter().map(|i| i.width().to_rational()).collect();
        for (x, y) in w1.iter().zip(&w2) {
            prop_assert!(y * Q::from_integer(2.into()) <= *x || y.is_zero());
        }
    }

    #[test]
    fn nonzero_elements_have_certified_signs(c in small_element(4)) {
        let k = fixtures::QUARTIC725.field().unwrap();
        let s = k.signs(&FieldElement::from_ints(&c)).unwrap();
        prop_assert!(s.iter().all(|&v| v == 1 || v == -1));
    }

    #[test]
    fn log_vector_is_a_homomorphism(a in prop::collection::vec(-3i64..=3, 2), b in prop::collection::vec(-3i64..=3, 2)) {
        let k = fixtures::CUBIC148.field().unwrap();
        let u = fixtures::CUBIC148.units();
        let x = unit_power(&k, &u, &a);
        let y = unit_power(&k, &u, &b);
        let lx = k.log_vector(&x, 128).unwrap();
        let ly = k.log_vector(&y, 128).unwrap();
        let lxy = k.log_vector(&k.mul(&x, &y), 128).unwrap();
        for j in 0..2 {
            prop_assert!(lx[j].add(&ly[j], 128).overlaps(&lxy[j]));
        }
    }

    #[test]
    fn regulator_sign_is_alternating(e1 in 1i64..=3, e2 in 1i64..=3) {
        let k = fixtures::CUBIC81.field().unwrap();
        let u = fixtures::CUBIC81.units();
        let a = k.pow(&u[0], e1).unwrap();
        let b = k.pow(&u[1], e2).unwrap();
        let s = k.signed_regulator_sign(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(s != 0);
        prop_assert_eq!(k.signed_regulator_sign(&[b.clone(), a.clone()]).unwrap(), -s);
        prop_assert_eq!(k.signed_regulator_sign(&[k.inv(&a).unwrap(), b]).unwrap(), -s);
    }
}
