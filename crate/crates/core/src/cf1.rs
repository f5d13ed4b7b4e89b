//! Compactly supported constructible functions on the line.

use std::fmt;

use serde::{Deserialize, Serialize};
use starconv_geom::Rat;

use crate::interval::{Closure, Sheaf1};

/// A piece of a constructible function on the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `w·δ_x`.
    Point(Rat, i64),
    /// `w·1_{]a,b[}`, `a < b`.
    Open(Rat, Rat, i64),
}

/// An integer-valued function on ℚ, constant on the open gaps between
/// finitely many breakpoints and zero outside them. No breakpoint is
/// removable, so equal functions have equal representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cf1 {
    breakpoints: Vec<Rat>,
    point_values: Vec<i64>,
    gap_values: Vec<i64>,
}

impl Cf1 {
    pub fn zero() -> Cf1 {
        Cf1::default()
    }

    pub fn delta(x: Rat, w: i64) -> Cf1 {
        Cf1::from_atoms([Atom::Point(x, w)])
    }

    /// `w·1_I` for an interval with the given endpoint inclusion.
    pub fn indicator(lo: Rat, hi: Rat, closure: Closure, w: i64) -> Cf1 {
        Cf1::from_atoms(interval_atoms(lo, hi, closure, w))
    }

    /// Samples `f` at each of `breakpoints` and at each gap midpoint. `f` must
    /// be constant on the gaps and vanish outside.
    pub fn from_samples(breakpoints: &[Rat], mut f: impl FnMut(Rat) -> i64) -> Cf1 {
        let mut b = breakpoints.to_vec();
        b.sort();
        b.dedup();
        let point_values = b.iter().map(|&x| f(x)).collect();
        let gap_values = b.windows(2).map(|w| f(w[0].midpoint(w[1]))).collect();
        let mut out = Cf1 { breakpoints: b, point_values, gap_values };
        out.canonicalize();
        out
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Cf1 {
        let atoms: Vec<Atom> = atoms.into_iter().collect();
        let mut b: Vec<Rat> = Vec::new();
        for a in &atoms {
            match *a {
                Atom::Point(x, _) => b.push(x),
                Atom::Open(lo, hi, _) => b.extend([lo, hi]),
            }
        }
        Cf1::from_samples(&b, |t| eval_atoms(&atoms, t))
    }

    fn canonicalize(&mut self) {
        let n = self.breakpoints.len();
        let gap = |i: isize| -> i64 {
            if i < 0 || i as usize + 1 >= n {
                0
            } else {
                self.gap_values[i as usize]
            }
        };
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                let (l, r) = (gap(i as isize - 1), gap(i as isize));
                !(self.point_values[i] == l && l == r)
            })
            .collect();
        let mut breakpoints = Vec::new();
        let mut point_values = Vec::new();
        let mut gap_values = Vec::new();
        for i in (0..n).filter(|&i| keep[i]) {
            if !breakpoints.is_empty() {
                gap_values.push(gap(i as isize - 1));
            }
            breakpoints.push(self.breakpoints[i]);
            point_values.push(self.point_values[i]);
        }
        *self = Cf1 { breakpoints, point_values, gap_values };
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn point_values(&self) -> &[i64] {
        &self.point_values
    }

    pub fn gap_values(&self) -> &[i64] {
        &self.gap_values
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn eval(&self, t: Rat) -> i64 {
        match self.breakpoints.binary_search(&t) {
            Ok(i) => self.point_values[i],
            Err(0) => 0,
            Err(i) if i == self.breakpoints.len() => 0,
            Err(i) => self.gap_values[i - 1],
        }
    }

    /// Decomposition into point masses and open intervals.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for (i, &x) in self.breakpoints.iter().enumerate() {
            if self.point_values[i] != 0 {
                out.push(Atom::Point(x, self.point_values[i]));
            }
            if i + 1 < self.breakpoints.len() && self.gap_values[i] != 0 {
                out.push(Atom::Open(x, self.breakpoints[i + 1], self.gap_values[i]));
            }
        }
        out
    }

    pub fn add(&self, other: &Cf1) -> Cf1 {
        Cf1::from_atoms(self.atoms().into_iter().chain(other.atoms()))
    }

    pub fn scale(&self, k: i64) -> Cf1 {
        Cf1::from_atoms(self.atoms().into_iter().map(|a| match a {
            Atom::Point(x, w) => Atom::Point(x, w * k),
            Atom::Open(a, b, w) => Atom::Open(a, b, w * k),
        }))
    }

    /// `∫ φ dχ_c`: points count once, open gaps count `-1`.
    pub fn integral(&self) -> i64 {
        self.point_values.iter().sum::<i64>() - self.gap_values.iter().sum::<i64>()
    }

    pub fn max_value(&self) -> i64 {
        self.point_values.iter().chain(&self.gap_values).copied().max().unwrap_or(0).max(0)
    }

    /// Euler convolution `t ↦ ∫ f(x) g(t - x) dχ`.
    pub fn convolve(&self, other: &Cf1) -> Cf1 {
        let mut out = Vec::new();
        for a in self.atoms() {
            for b in other.atoms() {
                out.push(match (a, b) {
                    (Atom::Point(x, v), Atom::Point(y, w)) => Atom::Point(x + y, v * w),
                    (Atom::Point(x, v), Atom::Open(c, d, w)) | (Atom::Open(c, d, w), Atom::Point(x, v)) => {
                        Atom::Open(x + c, x + d, v * w)
                    }
                    // χ_c of a nonempty open interval is -1
                    (Atom::Open(a, b, v), Atom::Open(c, d, w)) => Atom::Open(a + c, b + d, -v * w),
                });
            }
        }
        Cf1::from_atoms(out)
    }

    /// Pointwise χ of the Verdier dual: `φ(x) - φ(x⁻) - φ(x⁺)` at breakpoints,
    /// `-φ` on gaps.
    pub fn dual(&self) -> Cf1 {
        let n = self.breakpoints.len();
        let gap = |i: usize| if i == 0 || i > n - 1 { 0 } else { self.gap_values[i - 1] };
        let point_values = (0..n).map(|i| self.point_values[i] - gap(i) - gap(i + 1)).collect();
        let gap_values = self.gap_values.iter().map(|&g| -g).collect();
        let mut out = Cf1 { breakpoints: self.breakpoints.clone(), point_values, gap_values };
        out.canonicalize();
        out
    }

    /// The pullback along `x ↦ -x`.
    pub fn reflect(&self) -> Cf1 {
        let breakpoints = self.breakpoints.iter().rev().map(|&x| -x).collect();
        let point_values = self.point_values.iter().rev().copied().collect();
        let gap_values = self.gap_values.iter().rev().copied().collect();
        Cf1 { breakpoints, point_values, gap_values }
    }

    /// Recognizes `+1_{[a,b]}` (including points) and `-1_{]a,b[}`, the
    /// Euler shadows of invertible objects on the line.
    pub fn invertible_shadow(&self) -> Option<Shadow> {
        match (self.breakpoints.as_slice(), self.point_values.as_slice(), self.gap_values.as_slice()) {
            ([x], [1], []) => Some(Shadow::Closed(*x, *x)),
            ([a, b], [1, 1], [1]) => Some(Shadow::Closed(*a, *b)),
            ([a, b], [0, 0], [-1]) => Some(Shadow::Open(*a, *b)),
            _ => None,
        }
    }

    /// The Euler function `t ↦ χ(F_t)` of a sheaf.
    pub fn of_sheaf(f: &Sheaf1) -> Cf1 {
        Cf1::from_atoms(f.generators().iter().flat_map(|g| {
            let sign = if g.shift % 2 == 0 { 1 } else { -1 };
            let i = g.interval;
            interval_atoms(i.lo(), i.hi(), i.closure(), sign * g.mult as i64)
        }))
    }

    pub fn to_record(&self) -> Cf1Record {
        Cf1Record {
            breakpoints: self.breakpoints.clone(),
            point_values: self.point_values.clone(),
            gap_values: self.gap_values.clone(),
        }
    }
}

/// The shape of an invertible Euler shadow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shadow {
    Closed(Rat, Rat),
    Open(Rat, Rat),
}

fn interval_atoms(lo: Rat, hi: Rat, closure: Closure, w: i64) -> Vec<Atom> {
    if lo == hi {
        return vec![Atom::Point(lo, w)];
    }
    let mut v = vec![Atom::Open(lo, hi, w)];
    if closure.left_closed() {
        v.push(Atom::Point(lo, w));
    }
    if closure.right_closed() {
        v.push(Atom::Point(hi, w));
    }
    v
}

fn eval_atoms(atoms: &[Atom], t: Rat) -> i64 {
    atoms
        .iter()
        .map(|a| match *a {
            Atom::Point(x, w) if x == t => w,
            Atom::Open(lo, hi, w) if lo < t && t < hi => w,
            _ => 0,
        })
        .sum()
}

impl fmt::Display for Cf1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, x) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                write!(f, " ({}) ", self.gap_values[i - 1])?;
            }
            write!(f, "{x}:{}", self.point_values[i])?;
        }
        Ok(())
    }
}

/// Serialized form of a [`Cf1`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cf1Record {
    pub breakpoints: Vec<Rat>,
    pub point_values: Vec<i64>,
    pub gap_values: Vec<i64>,
}

impl Serialize for Cf1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from(n)
    }

    #[test]
    fn canonical_form() {
        let a = Cf1::indicator(r(0), r(1), Closure::CC, 1).add(&Cf1::indicator(r(1), r(2), Closure::OC, 1));
        assert_eq!(a, Cf1::indicator(r(0), r(2), Closure::CC, 1));
        assert_eq!(a.breakpoints(), &[r(0), r(2)]);
        let z = a.add(&a.scale(-1));
        assert!(z.is_zero());
    }

    #[test]
    fn convolution_rules() {
        let d = Cf1::delta(r(1), 1).convolve(&Cf1::delta(r(2), 3));
        assert_eq!(d, Cf1::delta(r(3), 3));
        let o = Cf1::indicator(r(0), r(1), Closure::OO, 1);
        assert_eq!(o.convolve(&o), Cf1::indicator(r(0), r(2), Closure::OO, -1));
        let c = Cf1::indicator(r(0), r(1), Closure::CC, 1);
        // closed interval against the shadow of its inverse
        let inv = Cf1::indicator(r(-1), r(0), Closure::OO, -1);
        assert_eq!(c.convolve(&inv), Cf1::delta(r(0), 1));
    }

    #[test]
    fn duality_and_shadows() {
        let c = Cf1::indicator(r(0), r(1), Closure::CC, 1);
        assert_eq!(c.dual(), Cf1::indicator(r(0), r(1), Closure::OO, -1));
        assert_eq!(c.dual().dual(), c);
        assert_eq!(c.invertible_shadow(), Some(Shadow::Closed(r(0), r(1))));
        assert_eq!(c.dual().invertible_shadow(), Some(Shadow::Open(r(0), r(1))));
        assert_eq!(Cf1::delta(r(4), 1).invertible_shadow(), Some(Shadow::Closed(r(4), r(4))));
        assert_eq!(Cf1::indicator(r(0), r(1), Closure::CO, 1).invertible_shadow(), None);
        assert_eq!(c.scale(2).max_value(), 2);
        assert_eq!(c.reflect(), Cf1::indicator(r(-1), r(0), Closure::CC, 1));
        assert_eq!(c.eval(r(1)), 1);
        assert_eq!(c.eval(Rat::new(1, 2)), 1);
        assert_eq!(c.eval(r(2)), 0);
    }
}
