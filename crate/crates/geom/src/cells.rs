//! Decomposition of a polytope into the relatively open cells cut out by a
//! hyperplane arrangement.

use std::collections::HashSet;

use crate::convex::{ConvexSet, LinearConstraint, Relation};
use crate::linalg::{affine_rank, dot, primitive_oriented, rref};
use crate::polytope::Polytope;
use crate::{Point, Rat};

/// A nonempty relatively open convex cell.
#[derive(Clone, Debug)]
pub struct Cell {
    set: ConvexSet,
    dim: usize,
    closure_vertices: Vec<Point>,
    sample: Point,
}

impl Cell {
    fn from_set(set: ConvexSet) -> Option<Cell> {
        let analysis = set.analyze();
        let dim = analysis.dimension()?;
        let sample = analysis.sample_point()?;
        let mut cell = Cell { set, dim, closure_vertices: analysis.vertices, sample };
        cell.prune();
        Some(cell)
    }

    /// The describing constraints: equalities and strict inequalities.
    pub fn set(&self) -> &ConvexSet {
        &self.set
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn closure_vertices(&self) -> &[Point] {
        &self.closure_vertices
    }

    /// A point of the cell (the barycenter of its closure vertices).
    pub fn sample(&self) -> &Point {
        &self.sample
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.set.contains(x.coords())
    }

    /// Whether `x` lies in the closure of the cell.
    pub fn closure_contains(&self, x: &Point) -> bool {
        self.set.constraints().iter().all(|c| {
            let v = dot(&c.normal, x.coords());
            match c.relation {
                Relation::Eq => v == c.rhs,
                Relation::Le | Relation::Lt => v <= c.rhs,
            }
        })
    }

    // Keeps an independent set of equalities and the facet-defining strict
    // inequalities; the others are implied on the relatively open cell.
    fn prune(&mut self) {
        let n = self.set.dim();
        let verts: Vec<&[Rat]> = self.closure_vertices.iter().map(|v| v.coords()).collect();
        let eqs: Vec<Vec<Rat>> = self
            .set
            .constraints()
            .iter()
            .filter(|c| c.relation == Relation::Eq)
            .map(|c| {
                let mut row = c.normal.clone();
                row.push(c.rhs);
                row
            })
            .collect();
        let (red, _) = rref(eqs, n + 1);
        let mut kept: Vec<LinearConstraint> =
            red.into_iter().map(|row| LinearConstraint::new(row[..n].to_vec(), row[n], Relation::Eq)).collect();
        let mut seen = HashSet::new();
        for c in self.set.constraints().iter().filter(|c| c.relation != Relation::Eq) {
            let tight: Vec<&[Rat]> = verts.iter().copied().filter(|v| dot(&c.normal, v) == c.rhs).collect();
            if tight.is_empty() || affine_rank(&tight) + 1 != self.dim {
                continue;
            }
            let mut key: Vec<&[Rat]> = tight;
            key.sort();
            if seen.insert(key.iter().map(|v| v.to_vec()).collect::<Vec<_>>()) {
                kept.push(c.clone());
            }
        }
        self.set = ConvexSet::from_constraints(n, kept);
    }
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    ambient: usize,
    cells: Vec<Cell>,
}

/// A hyperplane `normal · x = rhs`, normalized so that parallel duplicates
/// compare equal. Returns `None` for the zero form.
pub fn normalize_hyperplane(normal: &[Rat], rhs: Rat) -> Option<(Vec<Rat>, Rat)> {
    let pivot = normal.iter().find(|c| !c.is_zero())?;
    let (p, _) = primitive_oriented(normal);
    let first = *p.iter().find(|c| !c.is_zero()).unwrap();
    Some((p, rhs * (first / *pivot)))
}

impl CellComplex {
    /// Cells of `bound` cut by every hyperplane in `hyperplanes`.
    pub fn new(bound: &Polytope, hyperplanes: &[(Vec<Rat>, Rat)]) -> CellComplex {
        let n = bound.ambient_dim();
        let closed = bound.faces();
        let eqs: Vec<LinearConstraint> =
            bound.equations().iter().map(|(a, b)| LinearConstraint::new(a.clone(), *b, Relation::Eq)).collect();
        let mut cells = Vec::new();
        for face in &closed.faces {
            let mut cs = eqs.clone();
            for f in bound.facets() {
                let tight = face.vertices.iter().all(|&i| dot(&f.normal, closed.vertices[i].coords()) == f.offset);
                let rel = if tight { Relation::Eq } else { Relation::Lt };
                cs.push(LinearConstraint::new(f.normal.clone(), f.offset, rel));
            }
            cells.extend(Cell::from_set(ConvexSet::from_constraints(n, cs)));
        }
        let mut complex = CellComplex { ambient: n, cells };
        let mut seen = HashSet::new();
        for (a, b) in hyperplanes {
            if let Some(h) = normalize_hyperplane(a, *b) {
                if seen.insert(h.clone()) {
                    complex.split(&h.0, h.1);
                }
            }
        }
        complex
    }

    fn split(&mut self, a: &[Rat], b: Rat) {
        let mut out = Vec::with_capacity(self.cells.len());
        for cell in self.cells.drain(..) {
            let (mut below, mut above) = (false, false);
            for v in &cell.closure_vertices {
                match dot(a, v.coords()).cmp(&b) {
                    std::cmp::Ordering::Less => below = true,
                    std::cmp::Ordering::Greater => above = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            if !(below && above) {
                out.push(cell);
                continue;
            }
            let neg: Vec<Rat> = a.iter().map(|&x| -x).collect();
            for c in [
                LinearConstraint::new(a.to_vec(), b, Relation::Lt),
                LinearConstraint::new(a.to_vec(), b, Relation::Eq),
                LinearConstraint::new(neg, -b, Relation::Lt),
            ] {
                out.extend(Cell::from_set(cell.set.clone().with(c)));
            }
        }
        self.cells = out;
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Pairs `(i, j)` with cell `i` contained in the boundary of cell `j`.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, ci) in self.cells.iter().enumerate() {
            for (j, cj) in self.cells.iter().enumerate() {
                if ci.dim < cj.dim && cj.closure_contains(&ci.sample) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `Σ (-1)^dim · f(sample)` over all cells, for `f` constant on cells.
    pub fn euler_integral(&self, f: impl Fn(&Point) -> i64) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { f(&c.sample) } else { -f(&c.sample) }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex_hull;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn h(a: &[i64], b: i64) -> (Vec<Rat>, Rat) {
        (a.iter().map(|&x| Rat::from(x)).collect(), Rat::from(b))
    }

    #[test]
    fn square_cut_by_a_cross() {
        let sq = convex_hull(&[p(&[0, 0]), p(&[2, 0]), p(&[0, 2]), p(&[2, 2])]).unwrap();
        let cx = CellComplex::new(&sq, &[h(&[1, 0], 1), h(&[0, 1], 1), h(&[2, 0], 2), h(&[1, 0], 5)]);
        // 3×3 grid of vertices, 12 edges, 4 squares
        let count = |d: usize| cx.cells().iter().filter(|c| c.dim() == d).count();
        assert_eq!((count(0), count(1), count(2)), (9, 12, 4));
        assert_eq!(cx.euler_integral(|_| 1), 1);
        for c in cx.cells() {
            assert!(c.contains(c.sample()));
        }
        // each square has 4 edges and 4 vertices on its boundary
        let inc = cx.incidences();
        for (j, c) in cx.cells().iter().enumerate() {
            if c.dim() == 2 {
                assert_eq!(inc.iter().filter(|&&(_, t)| t == j).count(), 8);
            }
        }
    }

    #[test]
    fn segment_in_space() {
        let seg = convex_hull(&[p(&[0, 0, 0]), p(&[2, 2, 2])]).unwrap();
        let cx = CellComplex::new(&seg, &[h(&[1, 0, 0], 1), h(&[0, 1, 0], 1), h(&[0, 0, 1], 3)]);
        assert_eq!(cx.len(), 5);
        assert_eq!(cx.euler_integral(|_| 1), 1);
    }
}
