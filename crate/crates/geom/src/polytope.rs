//! Convex polytopes in ℚⁿ, n ≤ 3, with exact V- and H-representations.
//!
//! Lower-dimensional polytopes (points, segments and polygons in ℝ³) are
//! handled by hulling inside coordinates of their affine hull; the
//! H-representation then consists of the affine-hull equations plus facet
//! inequalities that involve only the chosen hull coordinates.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::convex::{ConvexAnalysis, ConvexSet, LinearConstraint, Relation};
use crate::linalg::{cross, dot, is_zero, nullspace, primitive, primitive_oriented, rref};
use crate::{GeomError, Point, Rat, MAX_DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Closed,
    Relint,
}

/// `normal · x <= offset`, with `normal` a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<Point>,
    hull_dim: usize,
    /// `normal · x = rhs`, one per codimension of the affine hull.
    equations: Vec<(Vec<Rat>, Rat)>,
    facets: Vec<Facet>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, &self.vertices).cmp(&(other.ambient, &other.vertices))
    }
}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.vertices.hash(state);
    }
}

pub fn convex_hull(points: &[Point]) -> Result<Polytope, GeomError> {
    Polytope::hull(points)
}

/// The Minkowski sum, as the hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, GeomError> {
    if p.ambient != q.ambient {
        return Err(GeomError::DimensionMismatch { expected: p.ambient, found: q.ambient });
    }
    let sums: Vec<Point> = p.vertices.iter().flat_map(|a| q.vertices.iter().map(move |b| a + b)).collect();
    Polytope::hull(&sums)
}

pub fn affine_hull_dim(p: &Polytope) -> usize {
    p.hull_dim
}

impl Polytope {
    pub fn hull(points: &[Point]) -> Result<Polytope, GeomError> {
        let first = points.first().ok_or_else(|| GeomError::Domain("convex hull of an empty point set".into()))?;
        let n = first.dim();
        if n == 0 || n > MAX_DIM {
            return Err(GeomError::UnsupportedDimension(n));
        }
        if let Some(bad) = points.iter().find(|p| p.dim() != n) {
            return Err(GeomError::DimensionMismatch { expected: n, found: bad.dim() });
        }
        let pts: Vec<Point> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let base = &pts[0];
        let diffs: Vec<Vec<Rat>> = pts[1..].iter().map(|p| (p - base).0).collect();
        let (_, pivots) = rref(diffs.clone(), n);
        let d = pivots.len();
        let equations = nullspace(&diffs, n)
            .into_iter()
            .map(|a| {
                let (a, _) = primitive_oriented(&a);
                let rhs = dot(&a, base.coords());
                (a, rhs)
            })
            .collect();

        // Coordinates on the pivot columns are injective on the affine hull.
        let proj: Vec<Vec<Rat>> = pts.iter().map(|p| pivots.iter().map(|&c| p[c]).collect()).collect();
        let (extreme, local_facets): (Vec<usize>, Vec<(Vec<Rat>, Rat)>) = match d {
            0 => (vec![0], Vec::new()),
            1 => hull1(&proj),
            2 => hull2(&proj),
            3 => hull3(&proj),
            _ => unreachable!(),
        };
        let facets = local_facets
            .into_iter()
            .map(|(ln, off)| {
                let mut normal = vec![Rat::ZERO; n];
                for (k, &c) in pivots.iter().enumerate() {
                    normal[c] = ln[k];
                }
                Facet { normal, offset: off }
            })
            .collect();
        let mut vertices: Vec<Point> = extreme.into_iter().map(|i| pts[i].clone()).collect();
        vertices.sort();
        Ok(Polytope { ambient: n, vertices, hull_dim: d, equations, facets })
    }

    pub fn point(p: Point) -> Result<Polytope, GeomError> {
        Polytope::hull(&[p])
    }

    /// Axis-aligned box `[lo_i, hi_i]`.
    pub fn cuboid(lo: &[Rat], hi: &[Rat]) -> Result<Polytope, GeomError> {
        let n = lo.len();
        let mut pts = Vec::new();
        for mask in 0..(1usize << n) {
            pts.push(Point((0..n).map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] }).collect()));
        }
        Polytope::hull(&pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.hull_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[(Vec<Rat>, Rat)] {
        &self.equations
    }

    /// H-representation; facets are strict for the relative interior.
    pub fn constraints(&self, mode: Mode) -> Vec<LinearConstraint> {
        let rel = match mode {
            Mode::Closed => Relation::Le,
            Mode::Relint => Relation::Lt,
        };
        self.equations
            .iter()
            .map(|(a, b)| LinearConstraint::new(a.clone(), *b, Relation::Eq))
            .chain(self.facets.iter().map(|f| LinearConstraint::new(f.normal.clone(), f.offset, rel)))
            .collect()
    }

    pub fn as_convex_set(&self, mode: Mode) -> ConvexSet {
        ConvexSet::from_constraints(self.ambient, self.constraints(mode))
    }

    pub fn contains(&self, x: &Point, mode: Mode) -> bool {
        if x.dim() != self.ambient {
            return false;
        }
        self.equations.iter().all(|(a, b)| dot(a, x.coords()) == *b)
            && self.facets.iter().all(|f| {
                let v = dot(&f.normal, x.coords());
                match mode {
                    Mode::Closed => v <= f.offset,
                    Mode::Relint => v < f.offset,
                }
            })
    }

    /// Face lattice of the polytope (including the polytope itself).
    pub fn faces(&self) -> ConvexAnalysis {
        self.as_convex_set(Mode::Closed).analyze()
    }

    pub fn negate(&self) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| -v).collect();
        Polytope::hull(&pts).expect("reflection of a valid polytope")
    }

    pub fn translate(&self, t: &Point) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| v + t).collect();
        Polytope::hull(&pts).expect("translate of a valid polytope")
    }

    /// Range of the linear form over the polytope.
    pub fn extent(&self, xi: &[Rat]) -> (Rat, Rat) {
        let mut vals = self.vertices.iter().map(|v| dot(xi, v.coords()));
        let first = vals.next().expect("polytopes are nonempty");
        vals.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices)
    }

    /// Exact bounding box.
    pub fn bounds(&self) -> (Vec<Rat>, Vec<Rat>) {
        let mut lo = self.vertices[0].0.clone();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for i in 0..self.ambient {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        (lo, hi)
    }
}

fn hull1(pts: &[Vec<Rat>]) -> (Vec<usize>, Vec<(Vec<Rat>, Rat)>) {
    let lo = (0..pts.len()).min_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
    let hi = (0..pts.len()).max_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
    let facets = vec![(vec![-Rat::ONE], -pts[lo][0]), (vec![Rat::ONE], pts[hi][0])];
    (vec![lo, hi], facets)
}

fn orient2(o: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strictly convex hull polygon of planar points, counter-clockwise.
/// Collinear inputs yield the two extreme points.
pub(crate) fn monotone_chain(pts: &[Vec<Rat>], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    order.dedup_by(|a, b| pts[*a] == pts[*b]);
    if order.len() <= 2 {
        return order;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && orient2(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]).signum() <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && orient2(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]).signum() <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull2(pts: &[Vec<Rat>]) -> (Vec<usize>, Vec<(Vec<Rat>, Rat)>) {
    let all: Vec<usize> = (0..pts.len()).collect();
    let poly = monotone_chain(pts, &all);
    let mut facets = Vec::new();
    for k in 0..poly.len() {
        let p = &pts[poly[k]];
        let q = &pts[poly[(k + 1) % poly.len()]];
        let normal = primitive(&[q[1] - p[1], p[0] - q[0]]);
        let off = dot(&normal, p);
        facets.push((normal, off));
    }
    (poly, facets)
}

fn sub3(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    vec![a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Rotates the supporting plane with outward normal `n_cur` around the line
/// through `a` with direction `axis` until it meets another point. `inner`
/// is a point of the current face off the axis (if any), used to orient the
/// rotation away from the face. Returns the new supporting plane.
fn pivot(pts: &[Vec<Rat>], a: &[Rat], axis: &[Rat], n_cur: &[Rat], inner: Option<&[Rat]>) -> (Vec<Rat>, Rat) {
    let mut w = cross(n_cur, axis);
    if let Some(c) = inner {
        if dot(&w, &sub3(c, a)).signum() > 0 {
            w = w.iter().map(|&x| -x).collect();
        }
    }
    // Points are compared by the angle of (α, -β), which lies in the closed
    // upper half-plane; the plane first touches the smallest angle.
    let mut best: Option<(Rat, Rat, usize)> = None;
    for (i, q) in pts.iter().enumerate() {
        let rel = sub3(q, a);
        let alpha = dot(&w, &rel);
        let beta = -dot(n_cur, &rel);
        if alpha.is_zero() && beta.is_zero() {
            continue;
        }
        match best {
            None => best = Some((alpha, beta, i)),
            Some((ba, bb, _)) => {
                if (ba * beta - bb * alpha).signum() < 0 {
                    best = Some((alpha, beta, i));
                }
            }
        }
    }
    let (_, _, p) = best.expect("pivot needs a point off the axis");
    let mut normal = primitive(&cross(axis, &sub3(&pts[p], a)));
    let flip = pts.iter().any(|q| dot(&normal, &sub3(q, a)).signum() > 0);
    if flip {
        normal = normal.iter().map(|&x| -x).collect();
    }
    debug_assert!(pts.iter().all(|q| dot(&normal, &sub3(q, a)).signum() <= 0));
    let off = dot(&normal, a);
    (normal, off)
}

// Gift wrapping over full-dimensional point sets in ℚ³.
fn hull3(pts: &[Vec<Rat>]) -> (Vec<usize>, Vec<(Vec<Rat>, Rat)>) {
    let face_of =
        |normal: &[Rat], off: Rat| -> Vec<usize> { (0..pts.len()).filter(|&i| dot(normal, &pts[i]) == off).collect() };
    let face_polygon = |normal: &[Rat], face: &[usize]| -> Vec<usize> {
        // Drop a coordinate along which the plane is not vertical.
        let drop = (0..3).find(|&c| !normal[c].is_zero()).unwrap();
        let flat: Vec<Vec<Rat>> = pts.iter().map(|p| (0..3).filter(|&c| c != drop).map(|c| p[c]).collect()).collect();
        monotone_chain(&flat, face)
    };

    // Start from the plane x = min x and tilt it until it holds a 2-face.
    let i0 = (0..pts.len()).min_by(|&a, &b| pts[a].cmp(&pts[b])).unwrap();
    let mut normal = vec![-Rat::ONE, Rat::ZERO, Rat::ZERO];
    let mut off = dot(&normal, &pts[i0]);
    loop {
        let face = face_of(&normal, off);
        let poly = face_polygon(&normal, &face);
        match poly.len() {
            1 => {
                let a = pts[poly[0]].clone();
                let e = [Rat::ZERO, Rat::ZERO, Rat::ONE];
                let mut axis = cross(&normal, &e);
                if is_zero(&axis) {
                    axis = cross(&normal, &[Rat::ZERO, Rat::ONE, Rat::ZERO]);
                }
                (normal, off) = pivot(pts, &a, &axis, &normal, None);
            }
            2 => {
                let a = pts[poly[0]].clone();
                let axis = sub3(&pts[poly[1]], &a);
                (normal, off) = pivot(pts, &a, &axis, &normal, None);
            }
            _ => break,
        }
    }

    let mut seen: HashSet<(Vec<Rat>, Rat)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((normal.clone(), off));
    queue.push_back((normal, off));
    let mut facets = Vec::new();
    let mut extreme = BTreeSet::new();
    while let Some((normal, off)) = queue.pop_front() {
        let face = face_of(&normal, off);
        let poly = face_polygon(&normal, &face);
        debug_assert!(poly.len() >= 3);
        extreme.extend(poly.iter().copied());
        for k in 0..poly.len() {
            let a = &pts[poly[k]];
            let b = &pts[poly[(k + 1) % poly.len()]];
            let inner = &pts[poly[(k + 2) % poly.len()]];
            let axis = sub3(b, a);
            let next = pivot(pts, a, &axis, &normal, Some(inner));
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        facets.push((normal, off));
    }
    (extreme.into_iter().collect(), facets)
}
