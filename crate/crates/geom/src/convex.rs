//! Bounded convex sets cut out by linear equalities and by strict or
//! non-strict inequalities, in any ambient dimension.
//!
//! Everything is derived from the vertex set of the closure `K` (all strict
//! inequalities relaxed). Every face of `K` is the intersection of `K` with
//! the hyperplanes of some subset of its inequalities, and the relative
//! interior of a face lies either entirely inside the set or entirely
//! outside it. Hence
//!
//! ```text
//! χ_c(C) = Σ (-1)^dim F   over faces F of K with no strict inequality tight on F.
//! ```

use std::collections::{BTreeSet, HashSet};

use crate::linalg::{affine_rank, affine_solution, dot, solve_square};
use crate::{Point, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Eq,
    Le,
    Lt,
}

/// `normal · x  (= | <= | <)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub normal: Vec<Rat>,
    pub rhs: Rat,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn new(normal: Vec<Rat>, rhs: Rat, relation: Relation) -> Self {
        LinearConstraint { normal, rhs, relation }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        let v = dot(&self.normal, x);
        match self.relation {
            Relation::Eq => v == self.rhs,
            Relation::Le => v <= self.rhs,
            Relation::Lt => v < self.rhs,
        }
    }

    /// The constraint on `x` equivalent to `self` holding at `t - x`.
    pub fn reflect_through(&self, t: &[Rat]) -> LinearConstraint {
        LinearConstraint {
            normal: self.normal.iter().map(|&a| -a).collect(),
            rhs: self.rhs - dot(&self.normal, t),
            relation: self.relation,
        }
    }

    /// Embeds the constraint into a product space, acting on the coordinate
    /// block starting at `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> LinearConstraint {
        let mut normal = vec![Rat::ZERO; total];
        normal[offset..offset + self.normal.len()].copy_from_slice(&self.normal);
        LinearConstraint { normal, rhs: self.rhs, relation: self.relation }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ConvexSet {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

/// A face of the closure, recorded by the indices of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Whether the relative interior of the face belongs to the set.
    pub inside: bool,
}

/// Vertices and faces of the closure of a [`ConvexSet`].
#[derive(Clone, Debug)]
pub struct ConvexAnalysis {
    pub vertices: Vec<Point>,
    pub faces: Vec<Face>,
}

impl ConvexAnalysis {
    pub fn euler_char_c(&self) -> i64 {
        self.faces.iter().filter(|f| f.inside).map(|f| if f.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn is_empty(&self) -> bool {
        !self.faces.iter().any(|f| f.inside)
    }

    /// Dimension of the set, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().filter(|f| f.inside).map(|f| f.dim).max()
    }

    /// A point of the set: the barycenter of the vertices of a top-dimensional
    /// face lying in it.
    pub fn sample_point(&self) -> Option<Point> {
        let face = self.faces.iter().filter(|f| f.inside).max_by_key(|f| f.dim)?;
        Some(Point::centroid(face.vertices.iter().map(|&i| &self.vertices[i])))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Bits {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let t = x.trailing_zeros() as usize;
                out.push(w * 64 + t);
                x &= x - 1;
            }
        }
        out
    }
}

// Inequality expressed in the coordinates of the equality subspace.
struct ReducedRow {
    normal: Vec<Rat>,
    rhs: Rat,
    strict: bool,
}

impl ConvexSet {
    pub fn new(dim: usize) -> ConvexSet {
        ConvexSet { dim, constraints: Vec::new() }
    }

    pub fn from_constraints(dim: usize, constraints: Vec<LinearConstraint>) -> ConvexSet {
        debug_assert!(constraints.iter().all(|c| c.normal.len() == dim));
        ConvexSet { dim, constraints }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: LinearConstraint) {
        debug_assert_eq!(c.normal.len(), self.dim);
        self.constraints.push(c);
    }

    pub fn with(mut self, c: LinearConstraint) -> ConvexSet {
        self.push(c);
        self
    }

    pub fn intersect(mut self, other: &ConvexSet) -> ConvexSet {
        assert_eq!(self.dim, other.dim, "dimension mismatch in intersection");
        self.constraints.extend(other.constraints.iter().cloned());
        self
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }

    /// The set `t - self`.
    pub fn reflect_through(&self, t: &[Rat]) -> ConvexSet {
        ConvexSet { dim: self.dim, constraints: self.constraints.iter().map(|c| c.reflect_through(t)).collect() }
    }

    /// Full analysis of the closure. The set must be bounded.
    pub fn analyze(&self) -> ConvexAnalysis {
        let n = self.dim;
        let (eq_rows, eq_rhs): (Vec<Vec<Rat>>, Vec<Rat>) =
            self.constraints.iter().filter(|c| c.relation == Relation::Eq).map(|c| (c.normal.clone(), c.rhs)).unzip();
        let empty = ConvexAnalysis { vertices: Vec::new(), faces: Vec::new() };
        let Some((origin, basis)) = affine_solution(&eq_rows, &eq_rhs, n) else {
            return empty;
        };
        let k = basis.len();

        // Inequalities pulled back along y ↦ origin + Σ y_i basis_i.
        let rows: Vec<ReducedRow> = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .map(|c| ReducedRow {
                normal: basis.iter().map(|b| dot(&c.normal, b)).collect(),
                rhs: c.rhs - dot(&c.normal, &origin),
                strict: c.relation == Relation::Lt,
            })
            .collect();
        if rows.iter().any(|r| r.normal.iter().all(Rat::is_zero) && r.rhs.signum() < 0) {
            return empty;
        }

        let reduced_vertices = enumerate_vertices(k, &rows);
        if reduced_vertices.is_empty() {
            return empty;
        }
        let nv = reduced_vertices.len();
        let tight: Vec<Bits> = rows
            .iter()
            .map(|r| {
                let mut b = Bits::empty(nv);
                for (i, y) in reduced_vertices.iter().enumerate() {
                    if dot(&r.normal, y) == r.rhs {
                        b.set(i);
                    }
                }
                b
            })
            .collect();

        let mut seen: HashSet<Bits> = HashSet::new();
        let full = Bits::full(nv);
        let mut stack = vec![full.clone()];
        seen.insert(full);
        let mut masks = Vec::new();
        while let Some(f) = stack.pop() {
            for t in &tight {
                let g = f.and(t);
                if !g.is_empty() && g != f && seen.insert(g.clone()) {
                    stack.push(g);
                }
            }
            masks.push(f);
        }

        let faces = masks
            .into_iter()
            .map(|m| {
                let idx = m.ones();
                let pts: Vec<&[Rat]> = idx.iter().map(|&i| reduced_vertices[i].as_slice()).collect();
                let dim = affine_rank(&pts);
                let inside = rows.iter().zip(&tight).all(|(r, t)| !r.strict || !m.subset_of(t));
                Face { vertices: idx, dim, inside }
            })
            .collect();

        let vertices = reduced_vertices
            .iter()
            .map(|y| {
                let mut x = origin.clone();
                for (yi, b) in y.iter().zip(&basis) {
                    for (xj, bj) in x.iter_mut().zip(b) {
                        *xj += *yi * *bj;
                    }
                }
                Point(x)
            })
            .collect();
        ConvexAnalysis { vertices, faces }
    }

    pub fn euler_char_c(&self) -> i64 {
        self.analyze().euler_char_c()
    }

    pub fn is_empty(&self) -> bool {
        self.analyze().is_empty()
    }

    /// Vertices of the closure (strict inequalities relaxed).
    pub fn closure_vertices(&self) -> Vec<Point> {
        self.analyze().vertices
    }
}

fn feasible(rows: &[ReducedRow], y: &[Rat]) -> bool {
    rows.iter().all(|r| dot(&r.normal, y) <= r.rhs)
}

// Vertices of {y ∈ ℚ^k : rows hold non-strictly}, assumed bounded.
fn enumerate_vertices(k: usize, rows: &[ReducedRow]) -> Vec<Vec<Rat>> {
    if k == 0 {
        return if feasible(rows, &[]) { vec![Vec::new()] } else { Vec::new() };
    }
    // Parallel copies of a hyperplane give identical candidate systems.
    let mut distinct: Vec<usize> = Vec::new();
    let mut keys: HashSet<(Vec<Rat>, Rat)> = HashSet::new();
    for (i, r) in rows.iter().enumerate() {
        if r.normal.iter().all(Rat::is_zero) {
            continue;
        }
        let (p, _) = crate::linalg::primitive_oriented(&r.normal);
        let scale = p.iter().zip(&r.normal).find(|(a, _)| !a.is_zero()).map(|(a, b)| *a / *b).unwrap();
        if keys.insert((p, r.rhs * scale)) {
            distinct.push(i);
        }
    }
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut combo: Vec<usize> = (0..k).collect();
    let m = distinct.len();
    if m < k {
        return Vec::new();
    }
    loop {
        let a: Vec<Vec<Rat>> = combo.iter().map(|&i| rows[distinct[i]].normal.clone()).collect();
        let b: Vec<Rat> = combo.iter().map(|&i| rows[distinct[i]].rhs).collect();
        if let Some(y) = solve_square(&a, &b) {
            if !found.contains(&y) && feasible(rows, &y) {
                found.insert(y);
            }
        }
        // next k-combination of 0..m
        let mut i = k;
        loop {
            if i == 0 {
                return found.into_iter().collect();
            }
            i -= 1;
            if combo[i] < m - k + i {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}
