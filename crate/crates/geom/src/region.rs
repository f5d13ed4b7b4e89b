//! Integer combinations of closed polytopes and of their relative interiors.

use serde::{Deserialize, Serialize};

use crate::cells::CellComplex;
use crate::convex::{LinearConstraint, Relation};
use crate::linalg::dot;
use crate::polytope::{convex_hull, Mode, Polytope};
use crate::{Covector, GeomError, Point, Rat, MAX_DIM};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub polytope: Polytope,
    pub mode: Mode,
    pub weight: i64,
}

impl Term {
    pub fn new(polytope: Polytope, mode: Mode, weight: i64) -> Term {
        Term { polytope, mode, weight }
    }

    /// χ_c of the selected set, unweighted.
    pub fn euler_char_c(&self) -> i64 {
        match self.mode {
            Mode::Closed => 1,
            Mode::Relint if self.polytope.dim().is_multiple_of(2) => 1,
            Mode::Relint => -1,
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.polytope.contains(x, self.mode)
    }
}

/// A constructible function `Σ wᵢ·1_{Sᵢ}` on ℚⁿ, each `Sᵢ` a closed polytope
/// or its relative interior. Terms are kept sorted with identical sets
/// merged and zero weights dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    dim: usize,
    terms: Vec<Term>,
}

/// Outcome of a convexity test on the support of an indicator region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityVerdict {
    Convex,
    /// `x` and `y` lie in the support and `outside`, strictly between them,
    /// does not.
    Nonconvex {
        x: Point,
        y: Point,
        outside: Point,
    },
}

impl Region {
    pub fn new(dim: usize) -> Result<Region, GeomError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(GeomError::UnsupportedDimension(dim));
        }
        Ok(Region { dim, terms: Vec::new() })
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = Term>) -> Result<Region, GeomError> {
        let mut r = Region::new(dim)?;
        for t in terms {
            if t.polytope.ambient_dim() != dim {
                return Err(GeomError::DimensionMismatch { expected: dim, found: t.polytope.ambient_dim() });
            }
            r.terms.push(t);
        }
        r.canonicalize();
        Ok(r)
    }

    /// The indicator of a single closed polytope or relative interior.
    pub fn single(polytope: Polytope, mode: Mode) -> Region {
        Region { dim: polytope.ambient_dim(), terms: vec![Term::new(polytope, mode, 1)] }
    }

    fn canonicalize(&mut self) {
        self.terms.sort_by(|a, b| (&a.polytope, a.mode).cmp(&(&b.polytope, b.mode)));
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match out.last_mut() {
                Some(last) if last.polytope == t.polytope && last.mode == t.mode => last.weight += t.weight,
                _ => out.push(t),
            }
        }
        out.retain(|t| t.weight != 0);
        self.terms = out;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Region) -> Result<Region, GeomError> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Region::from_terms(self.dim, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, k: i64) -> Region {
        let terms = self.terms.iter().map(|t| Term { weight: t.weight * k, ..t.clone() });
        Region::from_terms(self.dim, terms).expect("same dimension")
    }

    pub fn evaluate(&self, x: &Point) -> i64 {
        self.terms.iter().filter(|t| t.contains(x)).map(|t| t.weight).sum()
    }

    /// χ_c computed term by term from `χ_c(P) = 1`, `χ_c(relint P) = (-1)^dim P`.
    pub fn euler_char_c_additive(&self) -> i64 {
        self.terms.iter().map(|t| t.weight * t.euler_char_c()).sum()
    }

    /// χ_c as a cell sum over the common refinement of all terms.
    pub fn euler_char_c(&self) -> i64 {
        match self.arrangement() {
            Some(cx) => cx.euler_integral(|x| self.evaluate(x)),
            None => 0,
        }
    }

    /// Every vertex of every term.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.terms.iter().flat_map(|t| t.polytope.vertices().iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Facet and affine-hull hyperplanes of all terms.
    pub fn hyperplanes(&self) -> Vec<(Vec<Rat>, Rat)> {
        let mut hs = Vec::new();
        for t in &self.terms {
            hs.extend(t.polytope.equations().iter().cloned());
            hs.extend(t.polytope.facets().iter().map(|f| (f.normal.clone(), f.offset)));
        }
        hs
    }

    /// The hull of all terms cut by every term's hyperplanes; the function is
    /// constant on each cell. `None` for the zero region.
    pub fn arrangement(&self) -> Option<CellComplex> {
        let verts = self.vertices();
        if verts.is_empty() {
            return None;
        }
        let hull = convex_hull(&verts).expect("nonempty vertex set");
        Some(CellComplex::new(&hull, &self.hyperplanes()))
    }

    /// Restriction to the hyperplane `⟨ξ,x⟩ = t`, kept in ambient coordinates.
    pub fn slice(&self, xi: &Covector, t: Rat) -> Result<Region, GeomError> {
        if xi.dim() != self.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, found: xi.dim() });
        }
        let mut out = Vec::new();
        for term in &self.terms {
            let (m, big_m) = term.polytope.extent(xi.coeffs());
            if t < m || t > big_m {
                continue;
            }
            let piece = match term.mode {
                Mode::Relint if m == big_m => Some(term.clone()),
                Mode::Relint if t == m || t == big_m => None,
                _ => {
                    let cut = term.polytope.as_convex_set(Mode::Closed).with(LinearConstraint::new(
                        xi.coeffs().to_vec(),
                        t,
                        Relation::Eq,
                    ));
                    let verts = cut.closure_vertices();
                    let p = convex_hull(&verts).expect("the slice meets the polytope");
                    Some(Term::new(p, term.mode, term.weight))
                }
            };
            out.extend(piece);
        }
        Region::from_terms(self.dim, out)
    }

    /// `1_S` for `S` the union of the terms, as a sum of disjoint relatively
    /// open cells. Overlapping terms would otherwise be counted twice.
    pub fn union_indicator(&self) -> Result<Region, GeomError> {
        self.check_indicator()?;
        if self.terms.len() <= 1 {
            return Ok(self.clone());
        }
        let cx = self.arrangement().expect("nonzero region");
        let mut terms = Vec::new();
        for c in cx.cells() {
            if self.support_contains(c.sample()) {
                terms.push(Term::new(convex_hull(c.closure_vertices())?, Mode::Relint, 1));
            }
        }
        Region::from_terms(self.dim, terms)
    }

    /// Errors unless every term is closed with weight 1.
    pub fn check_indicator(&self) -> Result<(), GeomError> {
        if self.terms.iter().any(|t| t.mode != Mode::Closed || t.weight != 1) {
            return Err(GeomError::Domain("convexity is decided for unions of closed polytopes with weight 1".into()));
        }
        Ok(())
    }

    /// Whether any term contains `x`.
    pub fn support_contains(&self, x: &Point) -> bool {
        self.terms.iter().any(|t| t.contains(x))
    }

    /// Decides whether the union of the (closed, weight 1) terms is convex.
    pub fn is_convex_region(&self) -> Result<ConvexityVerdict, GeomError> {
        self.check_indicator()?;
        let verts = self.vertices();
        if verts.is_empty() {
            return Ok(ConvexityVerdict::Convex);
        }
        let hull = convex_hull(&verts)?;
        // Quick accept: some term already is the hull.
        if self.terms.iter().any(|t| t.polytope == hull) {
            return Ok(ConvexityVerdict::Convex);
        }
        let cx = CellComplex::new(&hull, &self.hyperplanes());
        let gap = cx.cells().iter().map(|c| c.sample()).find(|p| !self.support_contains(p));
        Ok(match gap {
            None => ConvexityVerdict::Convex,
            Some(p) => {
                let (x, y, outside) = self.witness(&hull, p.clone());
                ConvexityVerdict::Nonconvex { x, y, outside }
            }
        })
    }

    // From an uncovered point `p` of the hull, walks along rays from hull
    // vertices until the exit point is covered.
    fn witness(&self, hull: &Polytope, mut p: Point) -> (Point, Point, Point) {
        let facets = hull.facets();
        loop {
            let tight: Vec<bool> = facets.iter().map(|f| dot(&f.normal, p.coords()) == f.offset).collect();
            let v0 = hull
                .vertices()
                .iter()
                .find(|v| {
                    *v != &p && facets.iter().zip(&tight).all(|(f, &t)| !t || dot(&f.normal, v.coords()) == f.offset)
                })
                .expect("an uncovered point is not a vertex of the hull")
                .clone();
            let d = &p - &v0;
            let s = facets
                .iter()
                .zip(&tight)
                .filter(|(_, &t)| !t)
                .filter_map(|(f, _)| {
                    let rate = dot(&f.normal, d.coords());
                    (rate.signum() > 0).then(|| (f.offset - dot(&f.normal, v0.coords())) / rate)
                })
                .min()
                .expect("rays inside a polytope leave it");
            let q = &v0 + &d.scale(s);
            if self.support_contains(&q) {
                return (v0, q, p);
            }
            p = q;
        }
    }

    pub fn to_file(&self) -> RegionFile {
        RegionFile {
            dimension: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| TermFile {
                    vertices: t.polytope.vertices().iter().map(|v| v.0.clone()).collect(),
                    mode: t.mode,
                    weight: t.weight,
                })
                .collect(),
        }
    }

    pub fn from_file(file: &RegionFile) -> Result<Region, GeomError> {
        let n = file.dimension;
        if n == 0 || n > MAX_DIM {
            return Err(GeomError::UnsupportedDimension(n));
        }
        let mut terms = Vec::new();
        for (i, t) in file.terms.iter().enumerate() {
            if t.weight == 0 {
                return Err(GeomError::Domain(format!("term {i} has weight 0")));
            }
            if t.vertices.is_empty() {
                return Err(GeomError::Domain(format!("term {i} has no vertices")));
            }
            if let Some(v) = t.vertices.iter().find(|v| v.len() != n) {
                return Err(GeomError::DimensionMismatch { expected: n, found: v.len() });
            }
            let pts: Vec<Point> = t.vertices.iter().map(|v| Point(v.clone())).collect();
            terms.push(Term::new(convex_hull(&pts)?, t.mode, t.weight));
        }
        Region::from_terms(n, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("region serialization")
    }

    pub fn from_json(s: &str) -> Result<Region, GeomError> {
        let file: RegionFile = serde_json::from_str(s).map_err(|e| GeomError::Parse(e.to_string()))?;
        Region::from_file(&file)
    }
}

/// On-disk form of a [`Region`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFile {
    pub dimension: usize,
    pub terms: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub vertices: Vec<Vec<Rat>>,
    pub mode: Mode,
    pub weight: i64,
}
