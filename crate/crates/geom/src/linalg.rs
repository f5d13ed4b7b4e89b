//! Dense exact linear algebra on small rational matrices.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Rat;

/// A point of ℚⁿ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn new(coords: Vec<Rat>) -> Point {
        Point(coords)
    }

    pub fn origin(n: usize) -> Point {
        Point(vec![Rat::ZERO; n])
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&c| Rat::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn scale(&self, s: Rat) -> Point {
        Point(self.0.iter().map(|&c| c * s).collect())
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(&a, &b)| a.midpoint(b)).collect())
    }

    /// Barycenter of a nonempty set of points.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Point>) -> Point {
        let mut it = points.into_iter();
        let first = it.next().expect("centroid of empty set").clone();
        let mut count = 1i128;
        let sum = it.fold(first, |acc, p| {
            count += 1;
            &acc + p
        });
        sum.scale(Rat::new(1, count))
    }
}

impl Index<usize> for Point {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|&a| -a).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A nonzero linear form on ℚⁿ in primitive integer form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Covector(Vec<Rat>);

impl Covector {
    /// Primitive positive multiple of `coeffs`; `None` for the zero form.
    /// The sign is kept, since a covector direction is oriented.
    pub fn new(coeffs: &[Rat]) -> Option<Covector> {
        if coeffs.is_empty() || is_zero(coeffs) {
            return None;
        }
        Some(Covector(primitive(coeffs)))
    }

    pub fn from_ints(coeffs: &[i64]) -> Option<Covector> {
        let v: Vec<Rat> = coeffs.iter().map(|&c| Rat::from(c)).collect();
        Covector::new(&v)
    }

    /// Representative of the line `ℚ·ξ`: first nonzero entry positive.
    pub fn unoriented(&self) -> Covector {
        Covector(primitive_oriented(&self.0).0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn eval(&self, x: &Point) -> Rat {
        dot(&self.0, x.coords())
    }
}

impl fmt::Debug for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&Point(self.0.clone()), f)
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn cross(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Positive multiple of `v` with coprime integer entries. The zero vector is
/// returned unchanged.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    if is_zero(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(1i128, |l, c| {
        let d = c.denom();
        l / gcd_i128(l, d) * d
    });
    let ints: Vec<i128> = v.iter().map(|c| c.numer() * (lcm / c.denom())).collect();
    let g = ints.iter().fold(0i128, |g, &x| gcd_i128(g, x));
    ints.into_iter().map(|x| Rat::int(x / g)).collect()
}

/// Like [`primitive`], additionally flipping the sign so the first nonzero
/// entry is positive. Returns the applied sign.
pub fn primitive_oriented(v: &[Rat]) -> (Vec<Rat>, i32) {
    let p = primitive(v);
    match p.iter().find(|c| !c.is_zero()) {
        Some(c) if c.signum() < 0 => (p.iter().map(|&c| -c).collect(), -1),
        _ => (p, 1),
    }
}

/// Row-reduced echelon form. Returns the reduced rows (zero rows dropped)
/// and the pivot column of each.
pub fn rref(mut rows: Vec<Vec<Rat>>, ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = *x * inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..rows[i].len() {
                    let sub = f * rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_rank(points: &[&[Rat]]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let n = first.len();
    let diffs: Vec<Vec<Rat>> =
        rest.iter().map(|p| p.iter().zip(first.iter()).map(|(&a, &b)| a - b).collect()).collect();
    rank(&diffs, n)
}

/// Unique solution of the square system `a x = b`, or `None` if singular.
#[allow(clippy::needless_range_loop)]
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let k = b.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for j in c..=k {
            m[c][j] = m[c][j] * inv;
        }
        for i in 0..k {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..=k {
                    let sub = f * m[c][j];
                    m[i][j] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[k]).collect())
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::ZERO; ncols];
        v[free] = Rat::ONE;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free];
        }
        basis.push(v);
    }
    basis
}

/// Solution set of `rows · x = rhs` as `origin + span(basis)`, or `None` if
/// inconsistent.
pub fn affine_solution(rows: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    if rows.is_empty() {
        let basis = (0..ncols)
            .map(|i| {
                let mut e = vec![Rat::ZERO; ncols];
                e[i] = Rat::ONE;
                e
            })
            .collect();
        return Some((vec![Rat::ZERO; ncols], basis));
    }
    let aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut r = r.clone();
            r.push(b);
            r
        })
        .collect();
    let (red, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut origin = vec![Rat::ZERO; ncols];
    for (row, &pc) in red.iter().zip(&pivots) {
        origin[pc] = row[ncols];
    }
    let coeffs: Vec<Vec<Rat>> = red.iter().map(|r| r[..ncols].to_vec()).collect();
    Some((origin, nullspace(&coeffs, ncols)))
}
