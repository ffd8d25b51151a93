use proptest::prelude::*;

use shintani_core::arith::rational::{frac, q, Q};
use shintani_core::arith::Interval;
use shintani_core::domain::SignedDomain;
use shintani_core::field::{FieldElement, NumberField};
use shintani_core::fixtures;
use shintani_core::geometry::*;

fn sqrt2() -> NumberField {
    NumberField::new(&[-2, 0, 1]).unwrap()
}

fn eps() -> FieldElement {
    FieldElement::from_ints(&[3, 2])
}

#[test]
fn ell_examples() {
    assert_eq!(project_ell_exact(&rationals(&[2, 4, 2])).unwrap(), rationals(&[1, 2]));
    assert_eq!(project_ell_exact(&rationals(&[1, 1, 1, 1])).unwrap(), rationals(&[1, 1, 1]));
    assert_eq!(project_ell_exact(&rationals(&[1, 0])).unwrap_err().kind(), "LastCoordinateZero");
    let iv: Vec<Interval> = [2, 4, 2].iter().map(|&v| Interval::from_int(v)).collect();
    let l = project_ell(&iv, 64).unwrap();
    assert!(l[0].contains_rational(&q(1)) && l[1].contains_rational(&q(2)));
}

#[test]
fn cone_coordinate_examples() {
    let k = sqrt2();
    let basis = vec![k.one(), eps()];
    let c = cone_coordinates(&Point::Field(k.one()), &basis, &k).unwrap();
    assert_eq!(c.exact.unwrap(), vec![q(1), q(0)]);
    let v = k.one().scale(&q(2)).add(&eps().scale(&q(3)));
    assert_eq!(cone_coordinates(&Point::Field(v), &basis, &k).unwrap().exact.unwrap(), vec![q(2), q(3)]);
    // e_2 = c_1·(1,1) + c_2·(3-2√2, 3+2√2): c_2 = 1/(4√2), c_1 = -(3-2√2)/(4√2)
    let e = cone_coordinates(&Point::e_n(&k), &basis, &k).unwrap();
    assert_eq!(e.signs, vec![-1, 1]);
    let s = 2f64.sqrt();
    assert!((e.coeffs[1].mid_f64() - 1.0 / (4.0 * s)).abs() < 1e-15);
    assert!((e.coeffs[0].mid_f64() + (3.0 - 2.0 * s) / (4.0 * s)).abs() < 1e-15);
    let dep = vec![k.one(), k.rational(q(2))];
    assert_eq!(cone_coordinates(&Point::e_n(&k), &dep, &k).unwrap_err().kind(), "DependentBasis");
}

#[test]
fn piercing_examples() {
    let k = sqrt2();
    let basis = vec![k.one(), eps()];
    let interior = Point::Field(k.one().add(&eps()));
    assert!(pierces_cone(&Point::Field(k.one().neg()), &interior, &basis, &k).unwrap());
    assert!(pierces_cone(&Point::e_n(&k), &Point::Field(k.one()), &basis, &k).unwrap());
    assert!(!pierces_cone(&Point::Field(k.one().neg()), &Point::Field(eps()), &basis, &k).unwrap());
    assert_eq!(
        pierces_cone(&Point::e_n(&k), &Point::Field(k.one().neg()), &basis, &k).unwrap_err().kind(),
        "YNotInCone"
    );
}

fn unit_simplex() -> (NumberField, Simplex) {
    let k = fixtures::CUBIC81.field().unwrap();
    let verts = vec![
        AffinePoint::Exact(rationals(&[0, 0])),
        AffinePoint::Exact(rationals(&[1, 0])),
        AffinePoint::Exact(rationals(&[0, 2])),
    ];
    let s = Simplex::new(verts, &k).unwrap();
    (k, s)
}

#[test]
fn barycentric_examples() {
    let (k, s) = unit_simplex();
    let b = barycentric(&AffinePoint::Exact(rationals(&[0, 0])), &s, &k).unwrap();
    assert_eq!(b.signs, vec![1, 0, 0]);
    let centroid = AffinePoint::Exact(vec![frac(1, 3), frac(2, 3)]);
    let b = barycentric(&centroid, &s, &k).unwrap();
    assert!(b.coeffs.iter().all(|c| c.contains_rational(&frac(1, 3))));
    let flat = vec![
        AffinePoint::Exact(rationals(&[0, 0])),
        AffinePoint::Exact(rationals(&[1, 1])),
        AffinePoint::Exact(rationals(&[2, 2])),
    ];
    assert_eq!(Simplex::new(flat, &k).unwrap_err().kind(), "DegenerateSimplex");
}

#[test]
fn simplex_piercing_examples() {
    let (k, s) = unit_simplex();
    let inside = AffinePoint::Exact(vec![frac(1, 4), frac(1, 4)]);
    let far = AffinePoint::Exact(rationals(&[-5, 7]));
    assert!(pierces_simplex(&far, &inside, &s, &k).unwrap());
    let facet = AffinePoint::Exact(vec![frac(1, 2), q(0)]);
    assert!(!pierces_simplex(&facet, &facet, &s, &k).unwrap());
    let outside = AffinePoint::Exact(rationals(&[3, 3]));
    assert_eq!(pierces_simplex(&far, &outside, &s, &k).unwrap_err().kind(), "YNotInSimplex");
}

fn fixture_domains() -> Vec<(NumberField, SignedDomain)> {
    fixtures::ALL
        .iter()
        .map(|fx| {
            let k = fx.field().unwrap();
            let d = SignedDomain::build(&fx.units(), &k).unwrap();
            (k, d)
        })
        .collect()
}

#[test]
fn e_n_has_no_zero_cone_coordinate() {
    for (k, d) in fixture_domains() {
        for c in d.cones() {
            let cc = cone_coordinates(&Point::e_n(&k), &c.generators, &k).unwrap();
            assert!(cc.signs.iter().all(|&s| s != 0));
        }
    }
}

#[test]
fn origin_is_on_no_face_span() {
    for (k, d) in fixture_domains() {
        for c in d.cones() {
            assert!(origin_avoids_faces(&c.simplex, &k).unwrap());
        }
    }
}

fn positive_rationals(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((1i64..1000, 1i64..1000), n).prop_map(|v| v.into_iter().map(|(a, b)| frac(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ell_is_multiplicative(x in positive_rationals(3), e in prop::collection::vec(-2i64..=2, 2)) {
        let k = fixtures::CUBIC148.field().unwrap();
        let u = fixtures::CUBIC148.units();
        let unit = k.mul(&k.pow(&u[0], e[0]).unwrap(), &k.pow(&u[1], e[1]).unwrap());
        let p = Point::rational(&k, x.clone());
        let lhs = project_ell(&p.times(&k, &unit).enclose(&k, 128), 128).unwrap();
        let le = project_ell(&k.enclose(&unit, 128), 128).unwrap();
        let lx = project_ell_exact(&x).unwrap();
        for j in 0..2 {
            prop_assert!(lhs[j].overlaps(&le[j].mul_rational(&lx[j], 128)));
        }
    }

    #[test]
    fn barycentric_is_affine(x in positive_rationals(2), y in positive_rationals(2), t in 0i64..=8) {
        let (k, s) = unit_simplex();
        let t = frac(t, 8);
        let one_t = q(1) - &t;
        let mix: Vec<Q> = x.iter().zip(&y).map(|(a, b)| &one_t * a + &t * b).collect();
        let bx = barycentric(&AffinePoint::Exact(x), &s, &k).unwrap();
        let by = barycentric(&AffinePoint::Exact(y), &s, &k).unwrap();
        let bm = barycentric(&AffinePoint::Exact(mix), &s, &k).unwrap();
        for i in 0..3 {
            let expect = bx.coeffs[i].mul_rational(&one_t, 128).add(&by.coeffs[i].mul_rational(&t, 128), 128);
            prop_assert!(expect.overlaps(&bm.coeffs[i]));
        }
    }

    /// Signs of cone coordinates and of barycentric coordinates of ℓ(x) agree.
    #[test]
    fn coordinate_transfer(x in positive_rationals(3), which in 0usize..2) {
        let k = fixtures::CUBIC81.field().unwrap();
        let d = SignedDomain::build(&fixtures::CUBIC81.units(), &k).unwrap();
        let cone = &d.cones()[which];
        let p = Point::rational(&k, x.clone());
        let cc = cone_coordinates(&p, &cone.generators, &k).unwrap();
        let b = barycentric(&AffinePoint::Exact(project_ell_exact(&x).unwrap()), &cone.simplex, &k).unwrap();
        prop_assert_eq!(cc.signs, b.signs);
    }

    /// Piercing the closed simplex from ℓ(e_n) = 0 is cone membership.
    #[test]
    fn simplex_piercing_is_membership(t in prop::collection::vec(0i64..4, 3), which in 0usize..2) {
        prop_assume!(t.iter().any(|&v| v != 0));
        let k = fixtures::CUBIC148.field().unwrap();
        let d = SignedDomain::build(&fixtures::CUBIC148.units(), &k).unwrap();
        let cone = &d.cones()[which];
        let z = cone.generators.iter().zip(&t).fold(k.zero(), |acc, (g, &ti)| acc.add(&g.scale(&q(ti))));
        let y = AffinePoint::Projected(Point::Field(z.clone()));
        let pierce = pierces_simplex(&AffinePoint::origin(2), &y, &cone.simplex, &k).unwrap();
        prop_assert_eq!(pierce, cone.contains(&Point::Field(z), &k).unwrap());
    }
}
