//! Constructible functions on ℚⁿ (n ≤ 3) and their Euler convolution.
//!
//! `(f ⋆ g)(t) = ∫ f(x) g(t - x) dχ_c`. For a term pair this is
//! `w_f·w_g·χ_c(S_f ∩ (t - S_g))`, the intersection being a bounded convex
//! set described by equalities and strict or non-strict inequalities.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use starconv_geom::linalg::{cross, dot};
use starconv_geom::{
    convex_hull, CellComplex, ConvexSet, ConvexityVerdict, Covector, LinearConstraint, Mode, Point, Polytope, Rat,
    Region, Relation, Term,
};

use crate::cf1::{Atom, Cf1};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// A finite integer combination of indicators of closed polytopes and of
/// their relative interiors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleFunction {
    region: Region,
}

impl From<Region> for ConstructibleFunction {
    fn from(region: Region) -> Self {
        ConstructibleFunction { region }
    }
}

impl ConstructibleFunction {
    pub fn indicator(p: Polytope, mode: Mode) -> ConstructibleFunction {
        Region::single(p, mode).into()
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn dim(&self) -> usize {
        self.region.dim()
    }

    pub fn terms(&self) -> &[Term] {
        self.region.terms()
    }

    pub fn evaluate(&self, x: &Point) -> Result<i64> {
        if x.dim() != self.dim() {
            return Err(Error::Domain(format!("point of dimension {} for a function on ℚ^{}", x.dim(), self.dim())));
        }
        Ok(self.region.evaluate(x))
    }

    /// `1_S` for an indicator region, `S` the union of its terms.
    pub fn of_indicator_region(r: &Region) -> Result<ConstructibleFunction> {
        Ok(r.union_indicator()?.into())
    }

    pub fn add(&self, other: &ConstructibleFunction) -> Result<ConstructibleFunction> {
        Ok(self.region.add(&other.region)?.into())
    }

    pub fn scale(&self, k: i64) -> ConstructibleFunction {
        self.region.scale(k).into()
    }
}

fn check_dims(f: &ConstructibleFunction, g: &ConstructibleFunction) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::Domain(format!("dimension mismatch: {} vs {}", f.dim(), g.dim())));
    }
    Ok(())
}

fn term_set(t: &Term) -> ConvexSet {
    t.polytope.as_convex_set(t.mode)
}

fn boxes_meet(p: &Polytope, q: &Polytope, t: &Point) -> bool {
    let (plo, phi) = p.bounds();
    let (qlo, qhi) = q.bounds();
    // x ∈ box(P) and t - x ∈ box(Q)
    (0..p.ambient_dim()).all(|i| plo[i] <= t[i] - qlo[i] && t[i] - qhi[i] <= phi[i])
}

/// `(f ⋆ g)(t)`.
pub fn euler_convolve_at(f: &ConstructibleFunction, g: &ConstructibleFunction, t: &Point) -> Result<i64> {
    check_dims(f, g)?;
    if t.dim() != f.dim() {
        return Err(Error::Domain(format!("point of dimension {} for functions on ℚ^{}", t.dim(), f.dim())));
    }
    let mut total = 0;
    for a in f.terms() {
        for b in g.terms() {
            if !boxes_meet(&a.polytope, &b.polytope, t) {
                continue;
            }
            let set = term_set(a).intersect(&term_set(b).reflect_through(t.coords()));
            total += a.weight * b.weight * set.euler_char_c();
        }
    }
    Ok(total)
}

/// `(f ⋆ g)(t)` at every point of `ts`, in order.
pub fn euler_convolve_many(
    f: &ConstructibleFunction,
    g: &ConstructibleFunction,
    ts: &[Point],
    exec: Execution,
) -> Result<Vec<i64>> {
    exec.map(ts, |t| euler_convolve_at(f, g, t)).into_iter().collect()
}

/// `(-1)^d · 1_{relint(-P)}`, `d` the dimension of `P`: the Euler shadow of
/// the inverse of `k_P`.
pub fn cf_inverse_convex(p: &Polytope) -> ConstructibleFunction {
    let sign = if p.dim().is_multiple_of(2) { 1 } else { -1 };
    Region::single(p.negate(), Mode::Relint).scale(sign).into()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfInvertibility {
    Invertible {
        inverse: ConstructibleFunction,
        hull: Polytope,
        d: usize,
    },
    NotInvertible {
        /// Points of the support with `outside` strictly between them.
        x: Point,
        y: Point,
        outside: Point,
        /// A projection whose pushforward is largest at `t`.
        direction: Covector,
        t: Rat,
        /// χ_c of the slice at `t`.
        slice_chi: i64,
    },
}

/// Decides invertibility of `1_S` for `S` a union of closed polytopes.
pub fn invertibility_check_cf(r: &Region) -> Result<CfInvertibility> {
    if r.is_zero() {
        return Err(Error::Domain("the zero function has empty support".into()));
    }
    match r.is_convex_region()? {
        ConvexityVerdict::Convex => {
            let hull = convex_hull(&r.vertices())?;
            Ok(CfInvertibility::Invertible { inverse: cf_inverse_convex(&hull), d: hull.dim(), hull })
        }
        ConvexityVerdict::Nonconvex { x, y, outside } => {
            let f = ConstructibleFunction::of_indicator_region(r)?;
            let mut best: Option<(Covector, Rat, i64)> = None;
            for xi in witness_directions(r, &x, &y) {
                let push = pushforward_linear(&f, &xi)?;
                let (t, v) = argmax(&push);
                if best.as_ref().is_none_or(|b| v > b.2) {
                    best = Some((xi, t, v));
                }
                if v >= 2 {
                    break;
                }
            }
            let (direction, t, slice_chi) = best.expect("at least one candidate direction");
            Ok(CfInvertibility::NotInvertible { x, y, outside, direction, t, slice_chi })
        }
    }
}

fn argmax(c: &Cf1) -> (Rat, i64) {
    let b = c.breakpoints();
    let mut best = (b.first().copied().unwrap_or(Rat::ZERO), i64::MIN);
    for (i, &x) in b.iter().enumerate() {
        if c.point_values()[i] > best.1 {
            best = (x, c.point_values()[i]);
        }
        if i + 1 < b.len() && c.gap_values()[i] > best.1 {
            best = (x.midpoint(b[i + 1]), c.gap_values()[i]);
        }
    }
    best
}

// Covectors whose level sets contain the segment from x to y, so that the
// slice through it misses a point between two points of the support.
fn witness_directions(r: &Region, x: &Point, y: &Point) -> Vec<Covector> {
    let d = y - x;
    let n = r.dim();
    let mut out: Vec<Covector> = Vec::new();
    let mut push = |v: &[Rat]| {
        if let Some(c) = Covector::new(v) {
            let c = c.unoriented();
            if !out.contains(&c) {
                out.push(c);
            }
        }
    };
    match n {
        1 => push(&[Rat::ONE]),
        2 => push(&[-d[1], d[0]]),
        _ => {
            for k in 0..3 {
                let mut e = vec![Rat::ZERO; 3];
                e[k] = Rat::ONE;
                push(&cross(d.coords(), &e));
            }
            for t in r.terms() {
                for f in t.polytope.facets() {
                    push(&cross(d.coords(), &f.normal));
                }
            }
            let vs = r.vertices();
            for a in &vs {
                for b in &vs {
                    push(&cross(d.coords(), (a - b).coords()));
                }
            }
        }
    }
    out
}

/// Pushforward of `f` along `ξ`, fiberwise χ_c, computed term by term from
/// the slice shapes of a convex set.
pub fn pushforward_linear(f: &ConstructibleFunction, xi: &Covector) -> Result<Cf1> {
    if xi.dim() != f.dim() {
        return Err(Error::Domain(format!("covector of dimension {} on ℚ^{}", xi.dim(), f.dim())));
    }
    let mut atoms = Vec::new();
    for t in f.terms() {
        let (m, big_m) = t.polytope.extent(xi.coeffs());
        let w = t.weight;
        match t.mode {
            Mode::Closed => {
                atoms.push(Atom::Point(m, w));
                if m < big_m {
                    atoms.push(Atom::Open(m, big_m, w));
                    atoms.push(Atom::Point(big_m, w));
                }
            }
            Mode::Relint => {
                let d = t.polytope.dim();
                if m == big_m {
                    atoms.push(Atom::Point(m, if d % 2 == 0 { w } else { -w }));
                } else {
                    atoms.push(Atom::Open(m, big_m, if d % 2 == 1 { w } else { -w }));
                }
            }
        }
    }
    Ok(Cf1::from_atoms(atoms))
}

/// The same pushforward evaluated literally: χ_c of each slice, at each
/// vertex value and between consecutive ones.
pub fn pushforward_by_slices(f: &ConstructibleFunction, xi: &Covector) -> Result<Cf1> {
    if xi.dim() != f.dim() {
        return Err(Error::Domain(format!("covector of dimension {} on ℚ^{}", xi.dim(), f.dim())));
    }
    let marks: Vec<Rat> = f.region().vertices().iter().map(|v| xi.eval(v)).collect();
    let mut err = None;
    let out = Cf1::from_samples(&marks, |t| match f.region().slice(xi, t) {
        Ok(s) => s.euler_char_c(),
        Err(e) => {
            err = Some(e);
            0
        }
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(out),
    }
}

/// Pushforward of `f ⋆ g` along `ξ`, computed without forming `f ⋆ g`: the
/// fiber over `s` is `{(x, y) ∈ S_f × S_g : ξ(x) + ξ(y) = s}` in ℚ^{2n}.
pub fn pushforward_of_convolution(f: &ConstructibleFunction, g: &ConstructibleFunction, xi: &Covector) -> Result<Cf1> {
    check_dims(f, g)?;
    let n = f.dim();
    let mut marks = Vec::new();
    for a in f.region().vertices() {
        for b in g.region().vertices() {
            marks.push(xi.eval(&a) + xi.eval(&b));
        }
    }
    let mut doubled = xi.coeffs().to_vec();
    doubled.extend_from_slice(xi.coeffs());
    let value = |s: Rat| -> i64 {
        let mut total = 0;
        for a in f.terms() {
            for b in g.terms() {
                let (ma, big_a) = a.polytope.extent(xi.coeffs());
                let (mb, big_b) = b.polytope.extent(xi.coeffs());
                if s < ma + mb || s > big_a + big_b {
                    continue;
                }
                let mut cs: Vec<LinearConstraint> =
                    term_set(a).constraints().iter().map(|c| c.embed(0, 2 * n)).collect();
                cs.extend(term_set(b).constraints().iter().map(|c| c.embed(n, 2 * n)));
                cs.push(LinearConstraint::new(doubled.clone(), s, Relation::Eq));
                total += a.weight * b.weight * ConvexSet::from_constraints(2 * n, cs).euler_char_c();
            }
        }
        total
    };
    Ok(Cf1::from_samples(&marks, value))
}

/// One direction of a projection sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub direction: Covector,
    pub pass: bool,
    pub cf1: Cf1,
}

impl SweepEntry {
    /// Whether some slice has χ_c at least 2.
    pub fn has_plateau(&self) -> bool {
        self.cf1.max_value() >= 2
    }
}

/// Primitive covectors with coefficients in `[-k, k]` (one per line), facet
/// normals, and covectors built from vertex differences: the difference
/// itself and, in the plane, its perpendicular, in space its cross products
/// with the coordinate axes.
pub fn default_directions(r: &Region, max_coeff: i64) -> Vec<Covector> {
    let n = r.dim();
    let mut set: BTreeSet<Covector> = BTreeSet::new();
    let mut add = |v: &[Rat]| {
        if let Some(c) = Covector::new(v) {
            set.insert(c.unoriented());
        }
    };
    let range: Vec<i64> = (-max_coeff..=max_coeff).collect();
    let mut idx = vec![0usize; n];
    loop {
        let v: Vec<Rat> = idx.iter().map(|&i| Rat::from(range[i])).collect();
        add(&v);
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < range.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    for t in r.terms() {
        for f in t.polytope.facets() {
            add(&f.normal);
        }
    }
    let vs = r.vertices();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            let d = b - a;
            add(d.coords());
            match n {
                2 => add(&[-d[1], d[0]]),
                3 => {
                    for k in 0..3 {
                        let mut e = vec![Rat::ZERO; 3];
                        e[k] = Rat::ONE;
                        add(&cross(d.coords(), &e));
                    }
                }
                _ => {}
            }
        }
    }
    set.into_iter().collect()
}

/// Pushes the indicator of the union of `r`'s terms forward along every
/// direction and flags those whose result is not the Euler shadow of an
/// invertible object on the line. Entries are sorted by direction.
pub fn direction_sweep(r: &Region, directions: &[Covector], exec: Execution) -> Result<Vec<SweepEntry>> {
    if directions.is_empty() {
        return Err(Error::Domain("no sweep directions".into()));
    }
    if let Some(xi) = directions.iter().find(|xi| xi.dim() != r.dim()) {
        return Err(Error::Domain(format!("covector of dimension {} on ℚ^{}", xi.dim(), r.dim())));
    }
    let mut dirs: Vec<Covector> = directions.to_vec();
    dirs.sort();
    dirs.dedup();
    let f = ConstructibleFunction::of_indicator_region(r)?;
    exec.map(&dirs, |xi| {
        let cf1 = pushforward_linear(&f, xi)?;
        Ok(SweepEntry { direction: xi.clone(), pass: cf1.invertible_shadow().is_some(), cf1 })
    })
    .into_iter()
    .collect()
}

const GRID: i64 = 240;
const MAX_DENOM: i128 = 1 << 20;

fn rng_points(rng: &mut ChaCha8Rng, lo: &[Rat], hi: &[Rat], count: usize) -> Vec<Point> {
    (0..count)
        .map(|_| {
            Point(
                lo.iter()
                    .zip(hi)
                    .map(|(&a, &b)| {
                        let k = rng.gen_range(0..=GRID);
                        a + (b - a) * Rat::new(k as i128, GRID as i128)
                    })
                    .collect(),
            )
        })
        .collect()
}

// Distinct candidates in order, topped up with random points of `lo..hi`
// (widened by 3) until `count` are found or the grid is exhausted.
fn take_distinct(
    candidates: Vec<Point>,
    count: usize,
    exclude: Option<&Point>,
    rng: &mut ChaCha8Rng,
    (lo, hi): (Vec<Rat>, Vec<Rat>),
) -> Vec<Point> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut accept = |p: Point, out: &mut Vec<Point>| {
        if Some(&p) != exclude && seen.insert(p.clone()) {
            out.push(p);
        }
    };
    for p in candidates {
        if out.len() == count {
            return out;
        }
        // cell barycenters can carry denominators that overflow later products
        if p.coords().iter().all(|c| c.denom() <= MAX_DENOM) {
            accept(p, &mut out);
        }
    }
    let widen = |x: &[Rat], s: i64| x.iter().map(|&a| a + Rat::from(s)).collect::<Vec<_>>();
    let (lo, hi) = (widen(&lo, -3), widen(&hi, 3));
    for _ in 0..20 {
        for p in rng_points(rng, &lo, &hi, count) {
            if out.len() == count {
                return out;
            }
            accept(p, &mut out);
        }
    }
    out
}

fn cell_points(hull: &Polytope, hyperplanes: &[(Vec<Rat>, Rat)]) -> Vec<Point> {
    let cx = CellComplex::new(hull, hyperplanes);
    let mut pts: Vec<Point> = cx.cells().iter().map(|c| c.sample().clone()).collect();
    pts.extend(hull.vertices().iter().cloned());
    pts
}

// Points well outside a polytope: vertices pushed away from the centroid.
fn exterior_points(p: &Polytope, rng: &mut ChaCha8Rng, count: usize) -> Vec<Point> {
    let c = p.centroid();
    let (lo, hi) = p.bounds();
    let mut out = Vec::new();
    for v in p.vertices() {
        let away = &v.scale(Rat::from(2)) - &c;
        out.push(if away == *v { v + &Point(vec![Rat::ONE; v.dim()]) } else { away });
    }
    let widen = |x: &[Rat], s: i64| x.iter().map(|&a| a + Rat::from(s)).collect::<Vec<_>>();
    for q in rng_points(rng, &widen(&lo, -3), &widen(&hi, 3), count) {
        if !p.contains(&q, Mode::Closed) {
            out.push(q);
        }
    }
    out
}

/// Probe points for `h(t) = (1_P ⋆ I(P))(t)` away from the origin: vertex
/// differences, cells of `P + (-P)` cut by the translates of the facet
/// hyperplanes through vertices, and exterior points. Never contains 0.
pub fn inverse_probe_points(p: &Polytope, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diff = starconv_geom::minkowski_sum(p, &p.negate()).expect("same dimension");
    let mut planes = Vec::new();
    for f in p.facets() {
        for v in p.vertices() {
            let av = dot(&f.normal, v.coords());
            planes.push((f.normal.clone(), av - f.offset));
            planes.push((f.normal.clone(), f.offset - av));
        }
    }
    let mut structured: Vec<Point> = Vec::new();
    for v in p.vertices() {
        for w in p.vertices() {
            structured.push(v - w);
        }
    }
    structured.extend(cell_points(&diff, &sample_planes(planes, &mut rng)));
    let origin = Point::origin(p.ambient_dim());
    assemble(structured, &diff, count, Some(&origin), &mut rng)
}

/// Probe points for comparing `1_P ⋆ 1_Q` with `1_{P+Q}`: vertices and cell
/// samples of `P + Q` cut where the combinatorics of `P ∩ (t - Q)` change,
/// midpoints between them, and exterior points.
pub fn minkowski_probe_points(p: &Polytope, q: &Polytope, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sum = starconv_geom::minkowski_sum(p, q).expect("same dimension");
    let mut planes = Vec::new();
    for (a, b) in [(p, q), (q, p)] {
        for f in a.facets() {
            for w in b.vertices() {
                planes.push((f.normal.clone(), f.offset + dot(&f.normal, w.coords())));
            }
        }
    }
    let structured = cell_points(&sum, &sample_planes(planes, &mut rng));
    assemble(structured, &sum, count, None, &mut rng)
}

// At most a dozen hyperplanes, so that the refinement stays small.
fn sample_planes(mut planes: Vec<(Vec<Rat>, Rat)>, rng: &mut ChaCha8Rng) -> Vec<(Vec<Rat>, Rat)> {
    planes.sort();
    planes.dedup();
    shuffle(&mut planes, rng);
    planes.truncate(12);
    planes
}

// Three quarters structured points and their midpoints, the rest exterior
// and random points around `hull`, topped up to `count` where possible.
fn assemble(
    structured: Vec<Point>,
    hull: &Polytope,
    count: usize,
    exclude: Option<&Point>,
    rng: &mut ChaCha8Rng,
) -> Vec<Point> {
    let mut inner = structured.clone();
    for i in 0..structured.len() {
        let j = rng.gen_range(0..structured.len());
        inner.push(structured[i].midpoint(&structured[j]));
    }
    shuffle(&mut inner, rng);
    let mut outer = exterior_points(hull, rng, count);
    let (lo, hi) = hull.bounds();
    outer.extend(rng_points(rng, &lo, &hi, count));
    shuffle(&mut outer, rng);
    let split = inner.len().min(count * 3 / 4);
    let rest = inner.split_off(split);
    inner.extend(outer);
    inner.extend(rest);
    take_distinct(inner, count, exclude, rng, (lo, hi))
}

fn shuffle<T>(v: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..v.len()).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn q(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    fn square(x0: i64, y0: i64, x1: i64, y1: i64) -> Polytope {
        convex_hull(&[p(&[x0, y0]), p(&[x1, y0]), p(&[x0, y1]), p(&[x1, y1])]).unwrap()
    }

    fn l_shape() -> Region {
        Region::from_terms(
            2,
            [Term::new(square(0, 0, 2, 1), Mode::Closed, 1), Term::new(square(0, 0, 1, 2), Mode::Closed, 1)],
        )
        .unwrap()
    }

    #[test]
    fn evaluation() {
        let f = ConstructibleFunction::indicator(square(0, 0, 1, 1), Mode::Closed);
        assert_eq!(f.evaluate(&Point(vec![q(1, 2), q(1, 2)])).unwrap(), 1);
        assert_eq!(f.evaluate(&p(&[2, 0])).unwrap(), 0);
        assert!(f.evaluate(&p(&[0])).is_err());
        let g = ConstructibleFunction::indicator(square(0, 0, 1, 1), Mode::Relint);
        assert_eq!(g.evaluate(&p(&[0, 0])).unwrap(), 0);
    }

    #[test]
    fn convolution_examples() {
        let f = ConstructibleFunction::indicator(square(0, 0, 1, 1), Mode::Closed);
        let g = ConstructibleFunction::indicator(square(-1, -1, 0, 0), Mode::Relint);
        assert_eq!(euler_convolve_at(&f, &g, &p(&[0, 0])).unwrap(), 1);
        assert_eq!(euler_convolve_at(&f, &g, &Point(vec![q(1, 2), q(1, 2)])).unwrap(), 0);
        let delta = ConstructibleFunction::indicator(Polytope::point(p(&[3, 1])).unwrap(), Mode::Closed);
        for t in [p(&[3, 1]), p(&[4, 2]), p(&[7, 7])] {
            let shifted = &t - &p(&[3, 1]);
            assert_eq!(euler_convolve_at(&f, &delta, &t).unwrap(), f.evaluate(&shifted).unwrap());
        }
    }

    #[test]
    fn inverse_examples() {
        let seg = convex_hull(&[p(&[0]), p(&[1])]).unwrap();
        let inv = cf_inverse_convex(&seg);
        assert_eq!(inv.terms().len(), 1);
        assert_eq!(inv.terms()[0].weight, -1);
        assert_eq!(inv.terms()[0].polytope, convex_hull(&[p(&[-1]), p(&[0])]).unwrap());
        let pt = Polytope::point(p(&[2, 5])).unwrap();
        let inv = cf_inverse_convex(&pt);
        assert_eq!(inv.evaluate(&p(&[-2, -5])).unwrap(), 1);
        let sq = square(0, 0, 1, 1);
        let inv = cf_inverse_convex(&sq);
        let one = ConstructibleFunction::indicator(sq.clone(), Mode::Closed);
        assert_eq!(euler_convolve_at(&one, &inv, &p(&[0, 0])).unwrap(), 1);
        for t in inverse_probe_points(&sq, 60, 1) {
            assert_eq!(euler_convolve_at(&one, &inv, &t).unwrap(), 0, "at {t:?}");
        }
    }

    #[test]
    fn convexity_check() {
        let tri = Region::single(convex_hull(&[p(&[0, 0]), p(&[2, 0]), p(&[0, 2])]).unwrap(), Mode::Closed);
        assert!(matches!(invertibility_check_cf(&tri).unwrap(), CfInvertibility::Invertible { d: 2, .. }));
        let seg = Region::single(convex_hull(&[p(&[0, 0, 0]), p(&[1, 2, 3])]).unwrap(), Mode::Closed);
        assert!(matches!(invertibility_check_cf(&seg).unwrap(), CfInvertibility::Invertible { d: 1, .. }));
        match invertibility_check_cf(&l_shape()).unwrap() {
            CfInvertibility::NotInvertible { slice_chi, direction, t, .. } => {
                assert_eq!(slice_chi, 2);
                assert_eq!(l_shape().union_indicator().unwrap().slice(&direction, t).unwrap().euler_char_c(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pushforwards() {
        let sq = ConstructibleFunction::indicator(square(0, 0, 1, 1), Mode::Closed);
        let e1 = Covector::from_ints(&[1, 0]).unwrap();
        assert_eq!(pushforward_linear(&sq, &e1).unwrap(), Cf1::indicator(Rat::ZERO, Rat::ONE, crate::Closure::CC, 1));
        let l = ConstructibleFunction::of_indicator_region(&l_shape()).unwrap();
        let diag = Covector::from_ints(&[1, 1]).unwrap();
        let push = pushforward_linear(&l, &diag).unwrap();
        assert_eq!(push.eval(q(5, 2)), 2);
        assert_eq!(push, pushforward_by_slices(&l, &diag).unwrap());
        let delta = ConstructibleFunction::indicator(Polytope::point(p(&[2, 3])).unwrap(), Mode::Closed);
        assert_eq!(pushforward_linear(&delta, &diag).unwrap(), Cf1::delta(Rat::from(5), 1));
        let open = ConstructibleFunction::indicator(square(0, 0, 1, 1), Mode::Relint);
        assert_eq!(pushforward_linear(&open, &diag).unwrap(), pushforward_by_slices(&open, &diag).unwrap());
    }

    #[test]
    fn projection_commutes_in_the_plane() {
        let f = ConstructibleFunction::of_indicator_region(&l_shape()).unwrap();
        let g = ConstructibleFunction::indicator(square(0, 0, 1, 1), Mode::Relint);
        let xi = Covector::from_ints(&[1, 2]).unwrap();
        let left = pushforward_of_convolution(&f, &g, &xi).unwrap();
        let right = pushforward_linear(&f, &xi).unwrap().convolve(&pushforward_linear(&g, &xi).unwrap());
        assert_eq!(left, right);
    }

    #[test]
    fn sweeps() {
        let sq = Region::single(square(0, 0, 1, 1), Mode::Closed);
        let dirs = default_directions(&sq, 2);
        assert!(direction_sweep(&sq, &dirs, Execution::Sequential).unwrap().iter().all(|e| e.pass));
        let rep = direction_sweep(&l_shape(), &default_directions(&l_shape(), 5), Execution::Parallel).unwrap();
        assert!(rep.iter().any(|e| !e.pass && e.has_plateau()));
        assert!(rep.windows(2).all(|w| w[0].direction < w[1].direction));
        assert!(direction_sweep(&sq, &[], Execution::Sequential).is_err());
        let overlapping = Region::from_terms(
            2,
            [Term::new(square(0, 0, 2, 1), Mode::Closed, 1), Term::new(square(1, 0, 3, 1), Mode::Closed, 1)],
        )
        .unwrap();
        let rep = direction_sweep(&overlapping, &default_directions(&overlapping, 3), Execution::Sequential).unwrap();
        assert!(rep.iter().all(|e| e.pass));
    }
}
