use proptest::prelude::*;
use starconv_geom::{convex_hull, minkowski_sum, ConvexityVerdict, Covector, Mode, Point, Polytope, Rat, Region, Term};

fn polytope(dim: usize) -> impl Strategy<Value = Polytope> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), 1..=5)
        .prop_map(|vs| convex_hull(&vs.iter().map(|c| Point::from_ints(c)).collect::<Vec<_>>()).unwrap())
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Closed), Just(Mode::Relint)]
}

fn region(dim: usize) -> impl Strategy<Value = Region> {
    prop::collection::vec((polytope(dim), mode(), prop_oneof![-2i64..=-1, 1i64..=2]), 0..=3)
        .prop_map(move |ts| Region::from_terms(dim, ts.into_iter().map(|(p, m, w)| Term::new(p, m, w))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_of_polytopes(p in polytope(3)) {
        prop_assert_eq!(Region::single(p.clone(), Mode::Closed).euler_char_c(), 1);
        let expected = if p.dim() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(Region::single(p, Mode::Relint).euler_char_c(), expected);
    }

    #[test]
    fn euler_is_additive(a in region(2), b in region(2)) {
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(sum.euler_char_c(), a.euler_char_c() + b.euler_char_c());
        prop_assert_eq!(sum.euler_char_c(), sum.euler_char_c_additive());
    }

    #[test]
    fn euler_cells_agree_with_terms_in_space(a in region(3)) {
        prop_assert_eq!(a.euler_char_c(), a.euler_char_c_additive());
    }

    #[test]
    fn minkowski_laws(p in polytope(2), q in polytope(2), r in polytope(2)) {
        prop_assert_eq!(minkowski_sum(&p, &q).unwrap(), minkowski_sum(&q, &p).unwrap());
        let left = minkowski_sum(&minkowski_sum(&p, &q).unwrap(), &r).unwrap();
        let right = minkowski_sum(&p, &minkowski_sum(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let zero = Polytope::point(Point::origin(2)).unwrap();
        prop_assert_eq!(minkowski_sum(&p, &zero).unwrap(), p);
    }

    #[test]
    fn slices_of_convex_sets(p in polytope(3), xi in prop::collection::vec(-2i64..=2, 3), t in -8i64..=8, den in 1i64..=3) {
        if let Some(xi) = Covector::from_ints(&xi) {
            let t = Rat::new(t as i128, den as i128);
            let s = Region::single(p, Mode::Closed).slice(&xi, t).unwrap();
            prop_assert!(s.terms().len() <= 1);
            let chi = s.euler_char_c();
            prop_assert!(chi == 0 || chi == 1);
            prop_assert_eq!(s.is_convex_region().unwrap(), ConvexityVerdict::Convex);
        }
    }

    #[test]
    fn single_polytopes_are_convex(p in polytope(3)) {
        prop_assert_eq!(Region::single(p, Mode::Closed).is_convex_region().unwrap(), ConvexityVerdict::Convex);
    }

    #[test]
    fn witnesses_are_genuine(a in polytope(2), b in polytope(2)) {
        let r = Region::from_terms(2, [Term::new(a, Mode::Closed, 1), Term::new(b, Mode::Closed, 1)]).unwrap();
        if r.terms().iter().any(|t| t.weight != 1) {
            return Ok(());
        }
        let hull = convex_hull(&r.vertices()).unwrap();
        match r.is_convex_region().unwrap() {
            ConvexityVerdict::Convex => {
                // every hull vertex pair midpoint and the hull centroid are covered
                let vs = hull.vertices();
                for x in vs {
                    for y in vs {
                        prop_assert!(r.support_contains(&x.midpoint(y)));
                    }
                }
            }
            ConvexityVerdict::Nonconvex { x, y, outside } => {
                prop_assert!(r.support_contains(&x) && r.support_contains(&y));
                prop_assert!(!r.support_contains(&outside));
                let d = &y - &x;
                let e = &outside - &x;
                let k = (0..2).find(|&i| !d[i].is_zero()).unwrap();
                let s = e[k] / d[k];
                prop_assert_eq!(&x + &d.scale(s), outside);
                prop_assert!(s > Rat::ZERO && s < Rat::ONE);
            }
        }
    }
}

#[test]
fn disjoint_squares_have_a_witness_across_the_gap() {
    let sq = |x: i64| {
        convex_hull(&[
            Point::from_ints(&[x, 0]),
            Point::from_ints(&[x + 1, 0]),
            Point::from_ints(&[x, 1]),
            Point::from_ints(&[x + 1, 1]),
        ])
        .unwrap()
    };
    let r = Region::from_terms(2, [Term::new(sq(0), Mode::Closed, 1), Term::new(sq(3), Mode::Closed, 1)]).unwrap();
    let ConvexityVerdict::Nonconvex { x, y, .. } = r.is_convex_region().unwrap() else { panic!() };
    let lo = x[0].min(y[0]);
    let hi = x[0].max(y[0]);
    assert!(lo <= Rat::ONE && hi >= Rat::from(3));
}
