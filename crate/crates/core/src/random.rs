//! Seeded random objects for property checks and benchmarks.
//!
//! Endpoints are drawn from a coarse rational grid so that coincidences
//! (shared endpoints, equal lengths) occur often.

use rand::Rng;
use starconv_geom::{convex_hull, Mode, Point, Polytope, Rat, Region, Term};

use crate::interval::{Closure, Generator, Interval, Sheaf1};

/// A rational `n/q` with `n ∈ [lo·q, hi·q]` and `q ∈ {1, 2, 3, 4}`.
pub fn rat_in<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> Rat {
    let q = rng.gen_range(1..=4i64);
    Rat::new(rng.gen_range(lo * q..=hi * q) as i128, q as i128)
}

pub fn rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    rat_in(rng, -4, 4)
}

pub fn closure<R: Rng + ?Sized>(rng: &mut R) -> Closure {
    Closure::ALL[rng.gen_range(0..4)]
}

/// A random interval of the given type; closed ones are points one time in
/// six.
pub fn interval_with<R: Rng + ?Sized>(rng: &mut R, c: Closure) -> Interval {
    let lo = rat(rng);
    if c == Closure::CC && rng.gen_ratio(1, 6) {
        return Interval::point(lo);
    }
    let len = if rng.gen_bool(0.5) { Rat::from(rng.gen_range(1..=3i64)) } else { rat_in(rng, 0, 3) };
    let len = if len.is_zero() { Rat::new(1, 2) } else { len };
    Interval::new(lo, lo + len, c).expect("positive length")
}

pub fn interval<R: Rng + ?Sized>(rng: &mut R) -> Interval {
    let c = closure(rng);
    interval_with(rng, c)
}

pub fn generator_with<R: Rng + ?Sized>(rng: &mut R, c: Closure) -> Generator {
    let i = interval_with(rng, c);
    Generator { interval: i, shift: rng.gen_range(-3..=3), mult: rng.gen_range(1..=2) }
}

pub fn generator<R: Rng + ?Sized>(rng: &mut R) -> Generator {
    let c = closure(rng);
    generator_with(rng, c)
}

/// Between one and `max_generators` random generators.
pub fn sheaf<R: Rng + ?Sized>(rng: &mut R, max_generators: usize) -> Sheaf1 {
    let n = rng.gen_range(1..=max_generators);
    Sheaf1::normalize((0..n).map(|_| generator(rng)))
}

/// A random invertible object: one closed (possibly degenerate) or open
/// interval with multiplicity one.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R) -> Sheaf1 {
    let c = if rng.gen_bool(0.5) { Closure::CC } else { Closure::OO };
    let i = interval_with(rng, c);
    Sheaf1::from_generator(Generator::single(i, rng.gen_range(-3..=3)))
}

/// Two generators with pairwise distinct endpoints, so no cancellation can
/// make the transform look like that of an invertible object.
pub fn generic_pair<R: Rng + ?Sized>(rng: &mut R) -> Sheaf1 {
    loop {
        let gens = [Generator { mult: 1, ..generator(rng) }, Generator { mult: 1, ..generator(rng) }];
        let f = Sheaf1::normalize(gens);
        let expected: usize = gens.iter().map(|g| if g.interval.is_point() { 1 } else { 2 }).sum();
        if f.breakpoints().len() == expected {
            return f;
        }
    }
}

/// A point with integer coordinates in `[-r, r]`.
pub fn int_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, r: i64) -> Point {
    Point::from_ints(&(0..dim).map(|_| rng.gen_range(-r..=r)).collect::<Vec<_>>())
}

/// The hull of between one and `max_points` random lattice points.
pub fn polytope<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_points: usize, r: i64) -> Polytope {
    let n = rng.gen_range(1..=max_points);
    let pts: Vec<Point> = (0..n).map(|_| int_point(rng, dim, r)).collect();
    convex_hull(&pts).expect("nonempty")
}

/// Like [`polytope`] but full-dimensional.
pub fn full_polytope<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_points: usize, r: i64) -> Polytope {
    loop {
        let n = rng.gen_range(dim + 1..=max_points.max(dim + 1));
        let pts: Vec<Point> = (0..n).map(|_| int_point(rng, dim, r)).collect();
        let p = convex_hull(&pts).expect("nonempty");
        if p.dim() == dim {
            return p;
        }
    }
}

/// Between one and `max_terms` terms of either mode with weights in ±{1, 2}.
pub fn region<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_terms: usize) -> Region {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms = (0..n).map(|_| {
            let mode = if rng.gen_bool(0.5) { Mode::Closed } else { Mode::Relint };
            let w = [-2, -1, 1, 2][rng.gen_range(0..4)];
            Term::new(polytope(rng, dim, 2 * dim + 2, 2), mode, w)
        });
        let r = Region::from_terms(dim, terms.collect::<Vec<_>>()).expect("same dimension");
        if !r.is_zero() {
            return r;
        }
    }
}

/// A union of between one and `max_terms` closed polytopes.
pub fn indicator_region<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_terms: usize) -> Region {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<Term> = (0..n).map(|_| Term::new(polytope(rng, dim, 2 * dim + 2, 2), Mode::Closed, 1)).collect();
    let mut r = Region::from_terms(dim, terms).expect("same dimension");
    // repeated polytopes merge into weight 2; keep one copy
    let dedup: Vec<Term> = r.terms().iter().map(|t| Term { weight: 1, ..t.clone() }).collect();
    r = Region::from_terms(dim, dedup).expect("same dimension");
    r
}
