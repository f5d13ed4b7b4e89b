//! Compactly supported constructible sheaves on the real line.
//!
//! An object is a finite direct sum of shifted constant sheaves `k_I[d]` on
//! bounded intervals. Only graded dimensions are tracked, never maps, and
//! `k_I[d]` has its stalks in degree `-d`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use starconv_geom::Rat;

use crate::error::{Error, Result};

/// Which endpoints an interval contains. The declaration order is the
/// canonical sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    /// `[a,b]`, including points.
    CC,
    /// `[a,b[`.
    CO,
    /// `]a,b]`.
    OC,
    /// `]a,b[`.
    OO,
}

impl Closure {
    pub const ALL: [Closure; 4] = [Closure::CC, Closure::CO, Closure::OC, Closure::OO];

    pub fn from_flags(left_closed: bool, right_closed: bool) -> Closure {
        match (left_closed, right_closed) {
            (true, true) => Closure::CC,
            (true, false) => Closure::CO,
            (false, true) => Closure::OC,
            (false, false) => Closure::OO,
        }
    }

    pub fn left_closed(self) -> bool {
        matches!(self, Closure::CC | Closure::CO)
    }

    pub fn right_closed(self) -> bool {
        matches!(self, Closure::CC | Closure::OC)
    }

    /// The closure type after `x ↦ -x`.
    pub fn mirrored(self) -> Closure {
        Closure::from_flags(self.right_closed(), self.left_closed())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Closure::CC => "cc",
            Closure::CO => "co",
            Closure::OC => "oc",
            Closure::OO => "oo",
        }
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
    closure: Closure,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat, closure: Closure) -> Result<Interval> {
        if lo > hi {
            return Err(Error::Validation(format!("interval endpoints out of order: {lo} > {hi}")));
        }
        if lo == hi && closure != Closure::CC {
            return Err(Error::Validation(format!("degenerate interval at {lo} must be closed")));
        }
        Ok(Interval { lo, hi, closure })
    }

    pub fn closed(lo: Rat, hi: Rat) -> Result<Interval> {
        Interval::new(lo, hi, Closure::CC)
    }

    pub fn point(x: Rat) -> Interval {
        Interval { lo: x, hi: x, closure: Closure::CC }
    }

    pub fn lo(&self) -> Rat {
        self.lo
    }

    pub fn hi(&self) -> Rat {
        self.hi
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn len(&self) -> Rat {
        self.hi - self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, t: Rat) -> bool {
        let left = if self.closure.left_closed() { self.lo <= t } else { self.lo < t };
        let right = if self.closure.right_closed() { t <= self.hi } else { t < self.hi };
        left && right
    }

    pub fn translate(&self, x: Rat) -> Interval {
        Interval { lo: self.lo + x, hi: self.hi + x, closure: self.closure }
    }

    pub fn mirrored(&self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo, closure: self.closure.mirrored() }
    }

    /// Image under `x ↦ λx`, for `λ ≠ 0`.
    fn scaled(&self, lambda: Rat) -> Interval {
        if lambda.signum() > 0 {
            Interval { lo: self.lo * lambda, hi: self.hi * lambda, closure: self.closure }
        } else {
            Interval { lo: self.hi * lambda, hi: self.lo * lambda, closure: self.closure.mirrored() }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.closure.left_closed() { '[' } else { ']' };
        let r = if self.closure.right_closed() { ']' } else { '[' };
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

/// `k_I[shift]^{⊕ mult}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub interval: Interval,
    pub shift: i64,
    pub mult: u64,
}

impl Generator {
    pub fn new(interval: Interval, shift: i64, mult: u64) -> Result<Generator> {
        if mult == 0 {
            return Err(Error::Validation("generator multiplicity must be positive".into()));
        }
        Ok(Generator { interval, shift, mult })
    }

    pub fn single(interval: Interval, shift: i64) -> Generator {
        Generator { interval, shift, mult: 1 }
    }

    fn key(&self) -> (Rat, Rat, Closure, i64) {
        (self.interval.lo, self.interval.hi, self.interval.closure, self.shift)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.interval.is_point() {
            write!(f, "δ{}", self.interval.lo)?;
        } else {
            write!(f, "k{}", self.interval)?;
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        if self.mult != 1 {
            write!(f, "^{}", self.mult)?;
        }
        Ok(())
    }
}

/// Dimensions of a graded vector space, indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, u64>);

impl GradedDims {
    pub fn new() -> GradedDims {
        GradedDims(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> GradedDims {
        let mut g = GradedDims::new();
        for (d, n) in pairs {
            g.add(d, n);
        }
        g
    }

    pub fn add(&mut self, degree: i64, dim: u64) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }

    pub fn euler(&self) -> i64 {
        self.iter().map(|(d, n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Graded tensor product.
    pub fn tensor(&self, other: &GradedDims) -> GradedDims {
        let mut out = GradedDims::new();
        for (d, n) in self.iter() {
            for (e, m) in other.iter() {
                out.add(d + e, n * m);
            }
        }
        out
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {n}")?;
        }
        write!(f, "}}")
    }
}

/// Why an object fails to be invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonInvertibleReason {
    Zero,
    MultipleGenerators,
    Multiplicity,
    SemiOpen,
}

impl NonInvertibleReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NonInvertibleReason::Zero => "zero",
            NonInvertibleReason::MultipleGenerators => "multiple-generators",
            NonInvertibleReason::Multiplicity => "multiplicity",
            NonInvertibleReason::SemiOpen => "semi-open",
        }
    }
}

impl fmt::Display for NonInvertibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invertibility {
    /// The single generator of the object.
    Invertible(Generator),
    NotInvertible(NonInvertibleReason),
}

/// Convolution of two generators; the table used by [`Sheaf1::convolve_with`].
pub type TableFn = fn(&Generator, &Generator) -> Sheaf1;

/// A finite sum of shifted interval sheaves in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sheaf1 {
    generators: Vec<Generator>,
}

impl Sheaf1 {
    pub fn zero() -> Sheaf1 {
        Sheaf1::default()
    }

    /// `δ_x`.
    pub fn dirac(x: Rat) -> Sheaf1 {
        Sheaf1 { generators: vec![Generator::single(Interval::point(x), 0)] }
    }

    pub fn constant(interval: Interval) -> Sheaf1 {
        Sheaf1 { generators: vec![Generator::single(interval, 0)] }
    }

    pub fn from_generator(g: Generator) -> Sheaf1 {
        Sheaf1 { generators: vec![g] }
    }

    /// Sorts and merges equal generators.
    pub fn normalize(generators: impl IntoIterator<Item = Generator>) -> Sheaf1 {
        let mut gens: Vec<Generator> = generators.into_iter().filter(|g| g.mult > 0).collect();
        gens.sort_by_key(Generator::key);
        let mut out: Vec<Generator> = Vec::with_capacity(gens.len());
        for g in gens {
            match out.last_mut() {
                Some(last) if last.key() == g.key() => last.mult += g.mult,
                _ => out.push(g),
            }
        }
        Sheaf1 { generators: out }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Total number of summands counted with multiplicity.
    pub fn rank(&self) -> u64 {
        self.generators.iter().map(|g| g.mult).sum()
    }

    pub fn sum(&self, other: &Sheaf1) -> Sheaf1 {
        Sheaf1::normalize(self.generators.iter().chain(&other.generators).copied())
    }

    fn map(&self, f: impl Fn(&Generator) -> Generator) -> Sheaf1 {
        Sheaf1::normalize(self.generators.iter().map(f))
    }

    pub fn shift(&self, k: i64) -> Sheaf1 {
        self.map(|g| Generator { shift: g.shift + k, ..*g })
    }

    pub fn translate(&self, x: Rat) -> Sheaf1 {
        self.map(|g| Generator { interval: g.interval.translate(x), ..*g })
    }

    /// Direct image under `x ↦ -x`.
    pub fn antipodal(&self) -> Sheaf1 {
        self.map(|g| Generator { interval: g.interval.mirrored(), ..*g })
    }

    /// Verdier dual.
    pub fn dual(&self) -> Sheaf1 {
        self.map(|g| {
            let i = g.interval;
            let (closure, shift) = match i.closure {
                Closure::CC if i.is_point() => (Closure::CC, -g.shift),
                Closure::CC => (Closure::OO, 1 - g.shift),
                Closure::OO => (Closure::CC, 1 - g.shift),
                Closure::CO => (Closure::OC, 1 - g.shift),
                Closure::OC => (Closure::CO, 1 - g.shift),
            };
            Generator { interval: Interval { closure, ..i }, shift, mult: g.mult }
        })
    }

    /// Direct image under `x ↦ λx`. For `λ = 0` the result is supported at
    /// the origin with the compactly supported cohomology as its stalk.
    pub fn push_scale(&self, lambda: Rat) -> Sheaf1 {
        if lambda.is_zero() {
            let dims = self.sections_c();
            return Sheaf1::normalize(dims.iter().map(|(d, n)| Generator {
                interval: Interval::point(Rat::ZERO),
                shift: -d,
                mult: n,
            }));
        }
        self.map(|g| Generator { interval: g.interval.scaled(lambda), ..*g })
    }

    pub fn convolve(&self, other: &Sheaf1) -> Sheaf1 {
        self.convolve_with(other, convolve_generators)
    }

    pub fn convolve_with(&self, other: &Sheaf1, table: TableFn) -> Sheaf1 {
        let mut out = Vec::new();
        for g in &self.generators {
            for h in &other.generators {
                out.extend_from_slice(&table(g, h).generators);
            }
        }
        Sheaf1::normalize(out)
    }

    pub fn stalk(&self, t: Rat) -> GradedDims {
        let mut out = GradedDims::new();
        for g in self.generators.iter().filter(|g| g.interval.contains(t)) {
            out.add(-g.shift, g.mult);
        }
        out
    }

    /// Ranks of compactly supported cohomology.
    pub fn sections_c(&self) -> GradedDims {
        let mut out = GradedDims::new();
        for g in &self.generators {
            match g.interval.closure {
                Closure::CC => out.add(-g.shift, g.mult),
                Closure::OO => out.add(1 - g.shift, g.mult),
                Closure::CO | Closure::OC => {}
            }
        }
        out
    }

    pub fn euler_c(&self) -> i64 {
        self.sections_c().euler()
    }

    /// Ranks of cohomology over the open interval `]u,v[`.
    pub fn sections_over(&self, u: Rat, v: Rat) -> Result<GradedDims> {
        if u >= v {
            return Err(Error::Domain(format!("empty open interval ]{u},{v}[")));
        }
        let mut out = GradedDims::new();
        for g in &self.generators {
            let i = g.interval;
            // a nondegenerate interval meets ]u,v[ iff its interior does
            let meets = if i.is_point() { u < i.lo && i.lo < v } else { i.lo < v && i.hi > u };
            if !meets {
                continue;
            }
            // endpoints removed from the interval but lying inside ]u,v[
            let removed = [(i.lo, i.closure.left_closed()), (i.hi, i.closure.right_closed())]
                .iter()
                .filter(|&&(x, closed)| !closed && u < x && x < v)
                .count();
            match removed {
                0 => out.add(-g.shift, g.mult),
                1 => {}
                _ => out.add(1 - g.shift, g.mult),
            }
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> Invertibility {
        match self.generators.as_slice() {
            [] => Invertibility::NotInvertible(NonInvertibleReason::Zero),
            [g] if g.mult > 1 => Invertibility::NotInvertible(NonInvertibleReason::Multiplicity),
            [g] => match g.interval.closure {
                Closure::CC | Closure::OO => Invertibility::Invertible(*g),
                Closure::CO | Closure::OC => Invertibility::NotInvertible(NonInvertibleReason::SemiOpen),
            },
            _ => Invertibility::NotInvertible(NonInvertibleReason::MultipleGenerators),
        }
    }

    pub fn inverse(&self) -> Result<Sheaf1> {
        self.inverse_with(convolve_generators)
    }

    /// The inverse `D(F^a)`, after checking that it convolves to `δ_0` under
    /// `table`.
    pub fn inverse_with(&self, table: TableFn) -> Result<Sheaf1> {
        if let Invertibility::NotInvertible(reason) = self.is_invertible() {
            return Err(Error::NotInvertible(reason));
        }
        let inv = self.antipodal().dual();
        let unit = self.convolve_with(&inv, table);
        if unit != Sheaf1::dirac(Rat::ZERO) {
            return Err(Error::InternalInvariantViolation(format!(
                "F ⋆ D(F^a) should be δ0 but is {unit} for F = {self}"
            )));
        }
        Ok(inv)
    }

    /// Every endpoint of every generator, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut b: Vec<Rat> = self.generators.iter().flat_map(|g| [g.interval.lo, g.interval.hi]).collect();
        b.sort();
        b.dedup();
        b
    }
}

impl fmt::Display for Sheaf1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("0");
        }
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

// One table entry: the summands of `k_I ⋆ k_J` with their shifts.
fn table_entry(i: &Interval, j: &Interval) -> Vec<(Interval, i64)> {
    use Closure::*;
    let (i, j) = if i.closure <= j.closure { (i, j) } else { (j, i) };
    let (a, b, c, d) = (i.lo, i.hi, j.lo, j.hi);
    let iv = |lo: Rat, hi: Rat, cl: Closure| Interval { lo, hi, closure: if lo == hi { CC } else { cl } };
    match (i.closure, j.closure) {
        (CC, CC) => vec![(iv(a + c, b + d, CC), 0)],
        (CC, CO) => vec![(j.translate(a), 0)],
        (CC, OC) => vec![(j.translate(b), 0)],
        (CC, OO) => {
            if i.len() < j.len() {
                vec![(iv(b + c, a + d, OO), 0)]
            } else {
                vec![(iv(a + d, b + c, CC), -1)]
            }
        }
        (CO, CO) => vec![(iv(a + c, (a + d).min(b + c), CO), 0), (iv((a + d).max(b + c), b + d, CO), -1)],
        (CO, OC) => vec![],
        (CO, OO) => vec![(i.translate(d), -1)],
        (OC, OC) => vec![(iv((a + d).max(b + c), b + d, OC), 0), (iv(a + c, (a + d).min(b + c), OC), -1)],
        (OC, OO) => vec![(i.translate(c), -1)],
        (OO, OO) => vec![(iv(a + c, b + d, OO), -1)],
        _ => unreachable!("pair is ordered"),
    }
}

/// `g ⋆ h` by the closed-form table.
pub fn convolve_generators(g: &Generator, h: &Generator) -> Sheaf1 {
    let shift = g.shift + h.shift;
    let mult = g.mult * h.mult;
    Sheaf1::normalize(table_entry(&g.interval, &h.interval).into_iter().map(|(interval, s)| Generator {
        interval,
        shift: s + shift,
        mult,
    }))
}

/// Serialized form of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub lo: Rat,
    pub hi: Rat,
    pub closure: Closure,
    pub shift: i64,
    pub mult: u64,
}

/// Serialized form of a [`Sheaf1`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sheaf1Record {
    pub generators: Vec<GeneratorRecord>,
}

impl From<&Sheaf1> for Sheaf1Record {
    fn from(f: &Sheaf1) -> Self {
        Sheaf1Record {
            generators: f
                .generators
                .iter()
                .map(|g| GeneratorRecord {
                    lo: g.interval.lo,
                    hi: g.interval.hi,
                    closure: g.interval.closure,
                    shift: g.shift,
                    mult: g.mult,
                })
                .collect(),
        }
    }
}

impl TryFrom<&Sheaf1Record> for Sheaf1 {
    type Error = Error;

    fn try_from(r: &Sheaf1Record) -> Result<Sheaf1> {
        let gens = r
            .generators
            .iter()
            .map(|g| Generator::new(Interval::new(g.lo, g.hi, g.closure)?, g.shift, g.mult))
            .collect::<Result<Vec<_>>>()?;
        Ok(Sheaf1::normalize(gens))
    }
}

impl Serialize for Sheaf1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Sheaf1Record::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sheaf1 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Sheaf1, D::Error> {
        let r = Sheaf1Record::deserialize(d)?;
        Sheaf1::try_from(&r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from(n)
    }

    fn k(lo: i64, hi: i64, c: Closure) -> Sheaf1 {
        Sheaf1::constant(Interval::new(r(lo), r(hi), c).unwrap())
    }

    #[test]
    fn validation() {
        assert!(Interval::new(r(1), r(0), Closure::CC).is_err());
        assert!(Interval::new(r(1), r(1), Closure::CO).is_err());
        assert!(Interval::new(r(1), r(1), Closure::CC).is_ok());
        assert!(Generator::new(Interval::point(r(0)), 0, 0).is_err());
    }

    #[test]
    fn normalize_merges_and_sorts() {
        let f = k(0, 1, Closure::CC).sum(&k(0, 1, Closure::CC));
        assert_eq!(f.generators().len(), 1);
        assert_eq!(f.generators()[0].mult, 2);
        let g = k(2, 3, Closure::OO).sum(&k(0, 1, Closure::CO));
        let h = k(0, 1, Closure::CO).sum(&k(2, 3, Closure::OO));
        assert_eq!(g, h);
        assert_eq!(Sheaf1::normalize(g.generators().iter().copied()), g);
        assert!(Sheaf1::normalize([]).is_zero());
    }

    #[test]
    fn table_examples() {
        let unit = Sheaf1::dirac(r(0));
        assert_eq!(k(0, 1, Closure::CC).convolve(&k(-1, 0, Closure::OO).shift(1)), unit);
        assert!(k(0, 1, Closure::CO).convolve(&k(0, 1, Closure::OC)).is_zero());
        assert_eq!(Sheaf1::dirac(r(2)).convolve(&k(3, 5, Closure::OO).shift(4)), k(5, 7, Closure::OO).shift(4));
        assert_eq!(k(0, 1, Closure::CC).convolve(&k(0, 2, Closure::CC)), k(0, 3, Closure::CC));
        assert_eq!(k(0, 2, Closure::CC).convolve(&k(0, 1, Closure::OO)), k(1, 2, Closure::CC).shift(-1));
        assert_eq!(
            k(0, 1, Closure::CO).convolve(&k(0, 3, Closure::CO)),
            k(0, 1, Closure::CO).sum(&k(3, 4, Closure::CO).shift(-1))
        );
    }

    #[test]
    fn dual_and_antipodal() {
        assert_eq!(k(0, 1, Closure::CC).antipodal().dual(), k(-1, 0, Closure::OO).shift(1));
        assert_eq!(Sheaf1::dirac(r(3)).dual(), Sheaf1::dirac(r(3)));
        assert_eq!(k(0, 1, Closure::CO).antipodal(), k(-1, 0, Closure::OC));
        assert_eq!(Sheaf1::dirac(r(0)).translate(r(5)), Sheaf1::dirac(r(5)));
    }

    #[test]
    fn stalks_and_sections() {
        let f = k(0, 1, Closure::CO).sum(&k(3, 4, Closure::CO).shift(-1));
        assert_eq!(f.stalk(Rat::new(7, 2)), GradedDims::from_pairs([(1, 1)]));
        assert!(k(0, 1, Closure::OO).stalk(r(0)).is_zero());
        assert_eq!(Sheaf1::dirac(r(0)).stalk(r(0)), GradedDims::from_pairs([(0, 1)]));
        assert_eq!(k(0, 1, Closure::CC).sections_c(), GradedDims::from_pairs([(0, 1)]));
        assert_eq!(k(0, 1, Closure::OO).euler_c(), -1);
        assert!(k(0, 1, Closure::CO).sections_c().is_zero());
        // over a window
        let s = k(0, 2, Closure::OO).sections_over(r(-1), r(3)).unwrap();
        assert_eq!(s, GradedDims::from_pairs([(1, 1)]));
        let s = k(0, 2, Closure::OO).sections_over(r(1), r(3)).unwrap();
        assert!(s.is_zero());
        let s = k(0, 2, Closure::OO).sections_over(r(0), r(1)).unwrap();
        assert_eq!(s, GradedDims::from_pairs([(0, 1)]));
        assert!(k(0, 2, Closure::CC).sections_over(r(2), r(3)).unwrap().is_zero());
        assert!(k(0, 2, Closure::CC).sections_over(r(1), r(1)).is_err());
    }

    #[test]
    fn invertibility_and_inverse() {
        assert!(matches!(k(0, 2, Closure::OO).shift(3).is_invertible(), Invertibility::Invertible(_)));
        assert_eq!(k(0, 1, Closure::CO).is_invertible(), Invertibility::NotInvertible(NonInvertibleReason::SemiOpen));
        assert_eq!(
            k(0, 1, Closure::CC).sum(&k(0, 1, Closure::CC)).is_invertible(),
            Invertibility::NotInvertible(NonInvertibleReason::Multiplicity)
        );
        assert_eq!(Sheaf1::zero().is_invertible(), Invertibility::NotInvertible(NonInvertibleReason::Zero));
        assert_eq!(k(0, 1, Closure::CC).inverse().unwrap(), k(-1, 0, Closure::OO).shift(1));
        assert_eq!(Sheaf1::dirac(r(3)).inverse().unwrap(), Sheaf1::dirac(r(-3)));
        assert_eq!(k(0, 2, Closure::OO).shift(3).inverse().unwrap(), k(-2, 0, Closure::CC).shift(-2));
        assert!(matches!(k(0, 1, Closure::OC).inverse(), Err(Error::NotInvertible(NonInvertibleReason::SemiOpen))));
    }

    #[test]
    fn broken_table_trips_the_self_check() {
        fn swapped(g: &Generator, h: &Generator) -> Sheaf1 {
            convolve_generators(g, h).shift(1)
        }
        assert!(matches!(k(0, 1, Closure::CC).inverse_with(swapped), Err(Error::InternalInvariantViolation(_))));
    }

    #[test]
    fn scaling() {
        let f = k(0, 1, Closure::CO).sum(&k(1, 3, Closure::OO).shift(2));
        assert_eq!(f.push_scale(r(-1)), f.antipodal());
        assert_eq!(f.push_scale(r(2)).push_scale(Rat::new(1, 2)), f);
        let z = k(1, 3, Closure::OO).shift(2).push_scale(r(0));
        assert_eq!(z, Sheaf1::dirac(r(0)).shift(-(1 - 2)));
    }

    #[test]
    fn json_shape() {
        let f = Sheaf1::dirac(r(0));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"generators":[{"lo":"0","hi":"0","closure":"cc","shift":0,"mult":1}]}"#);
        let back: Sheaf1 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Sheaf1>(
            r#"{"generators":[{"lo":"1","hi":"0","closure":"cc","shift":0,"mult":1}]}"#
        )
        .is_err());
    }
}
