use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starconv::interval::convolve_generators;
use starconv::oracle::{conv_sections_oracle, conv_stalk_oracle, validate_table};
use starconv::{random, Cf1, GradedDims, Invertibility, Rat, Sheaf1};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// Breakpoints of `f` together with the midpoints between them and a point
// on either side.
fn probes(f: &Sheaf1) -> Vec<Rat> {
    let b = f.breakpoints();
    let mut out = b.clone();
    out.extend(b.windows(2).map(|w| w[0].midpoint(w[1])));
    if let (Some(&lo), Some(&hi)) = (b.first(), b.last()) {
        out.push(lo - Rat::ONE);
        out.push(hi + Rat::ONE);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn convolution_is_commutative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        prop_assert_eq!(f.convolve(&g), g.convolve(&f));
    }

    #[test]
    fn convolution_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g, h) = (random::sheaf(&mut r, 2), random::sheaf(&mut r, 2), random::sheaf(&mut r, 2));
        prop_assert_eq!(f.convolve(&g).convolve(&h), f.convolve(&g.convolve(&h)));
    }

    #[test]
    fn dirac_at_zero_is_the_unit(seed in any::<u64>()) {
        let f = random::sheaf(&mut rng(seed), 4);
        prop_assert_eq!(f.convolve(&Sheaf1::dirac(Rat::ZERO)), f);
    }

    #[test]
    fn shifts_and_translations_factor_out(seed in any::<u64>(), k in -3i64..=3) {
        let mut r = rng(seed);
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        let s = random::rat(&mut r);
        let fg = f.convolve(&g);
        prop_assert_eq!(f.shift(k).convolve(&g), fg.shift(k));
        prop_assert_eq!(f.translate(s).convolve(&g), fg.translate(s));
        prop_assert_eq!(f.convolve(&Sheaf1::dirac(s)), f.translate(s));
    }

    #[test]
    fn compact_cohomology_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        let fg = f.convolve(&g);
        prop_assert_eq!(fg.sections_c(), f.sections_c().tensor(&g.sections_c()));
        prop_assert_eq!(fg.euler_c(), f.euler_c() * g.euler_c());
    }

    #[test]
    fn scaling_commutes_with_convolution(seed in any::<u64>(), num in -6i128..=6, den in 1i128..=3) {
        let mut r = rng(seed);
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        let lambda = Rat::new(num, den);
        prop_assert_eq!(
            f.convolve(&g).push_scale(lambda),
            f.push_scale(lambda).convolve(&g.push_scale(lambda))
        );
    }

    #[test]
    fn antipode_commutes_with_convolution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        prop_assert_eq!(f.convolve(&g).antipodal(), f.antipodal().convolve(&g.antipodal()));
    }

    #[test]
    fn duality_is_an_involution(seed in any::<u64>()) {
        let f = random::sheaf(&mut rng(seed), 4);
        prop_assert_eq!(f.dual().dual(), f.clone());
        prop_assert_eq!(f.antipodal().antipodal(), f);
    }

    #[test]
    fn inverses_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random::invertible(&mut r);
        let inv = f.inverse().unwrap();
        prop_assert_eq!(f.convolve(&inv), Sheaf1::dirac(Rat::ZERO));
        prop_assert_eq!(inv.inverse().unwrap(), f.clone());
        let g = random::invertible(&mut r);
        let fg = f.convolve(&g);
        prop_assert!(matches!(fg.is_invertible(), Invertibility::Invertible(_)));
        prop_assert_eq!(fg.inverse().unwrap(), inv.convolve(&g.inverse().unwrap()));
    }

    #[test]
    fn table_agrees_with_oracles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, h) = (random::generator(&mut r), random::generator(&mut r));
        let table = convolve_generators(&g, &h);
        let gh = Sheaf1::from_generator(g).sum(&Sheaf1::from_generator(h));
        let mut points = probes(&gh);
        for a in [g.interval.lo(), g.interval.hi()] {
            for b in [h.interval.lo(), h.interval.hi()] {
                points.push(a + b);
                points.push(a + b + Rat::new(1, 7));
                points.push(a + b - Rat::new(1, 7));
            }
        }
        for &t in &points {
            prop_assert_eq!(table.stalk(t), conv_stalk_oracle(&g, &h, t), "stalk at {} of {:?} ⋆ {:?}", t, g, h);
        }
        for _ in 0..8 {
            let u = random::rat_in(&mut r, -10, 10);
            let v = u + random::rat_in(&mut r, 0, 6) + Rat::new(1, 5);
            prop_assert_eq!(
                table.sections_over(u, v).unwrap(),
                conv_sections_oracle(&g, &h, u, v).unwrap(),
                "sections over ]{},{}[", u, v
            );
        }
    }

    #[test]
    fn stalks_of_sums_are_sums_of_stalks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        let fg = f.convolve(&g);
        for t in probes(&fg) {
            let mut expected = GradedDims::new();
            for a in f.generators() {
                for b in g.generators() {
                    for (d, m) in conv_stalk_oracle(a, b, t).iter() {
                        expected.add(d, m);
                    }
                }
            }
            prop_assert_eq!(fg.stalk(t), expected);
        }
    }

    #[test]
    fn euler_shadow_is_a_ring_map(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        let (cf, cg) = (Cf1::of_sheaf(&f), Cf1::of_sheaf(&g));
        prop_assert_eq!(Cf1::of_sheaf(&f.convolve(&g)), cf.convolve(&cg));
        prop_assert_eq!(Cf1::of_sheaf(&f.dual()), cf.dual());
        prop_assert_eq!(Cf1::of_sheaf(&f.antipodal()), cf.reflect());
        prop_assert_eq!(cf.integral(), f.euler_c());
        for t in probes(&f) {
            prop_assert_eq!(cf.eval(t), f.stalk(t).euler());
        }
    }
}

#[test]
fn seeded_table_run_is_clean() {
    let report = validate_table(2000, 7).unwrap();
    assert!(report.failures.is_empty(), "{:?}", report.failures.first());
}
