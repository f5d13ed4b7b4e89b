//! Singular supports, characteristic cycles and the B-transform on the line.
//!
//! A covector over a point `x` of ℝ is a ray `(x, ±)`. The characteristic
//! cycle of an object is its pointwise Euler function plus a signed
//! multiplicity on each ray; the B-transform pushes the rays down to the two
//! rays of the dual line, keeping base points, and records `χ_c` over the
//! zero covector.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use starconv_geom::Rat;

use crate::cf1::Cf1;
use crate::interval::{Closure, Sheaf1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Signed multiplicities at base points; zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RayMultiset(BTreeMap<Rat, i64>);

impl RayMultiset {
    pub fn new() -> RayMultiset {
        RayMultiset::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rat, i64)>) -> RayMultiset {
        let mut m = RayMultiset::new();
        for (x, k) in pairs {
            m.add(x, k);
        }
        m
    }

    pub fn add(&mut self, x: Rat, m: i64) {
        let e = self.0.entry(x).or_insert(0);
        *e += m;
        if *e == 0 {
            self.0.remove(&x);
        }
    }

    pub fn get(&self, x: Rat) -> i64 {
        self.0.get(&x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Rat, i64)> + '_ {
        self.0.iter().map(|(&x, &m)| (x, m))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    /// Additive convolution of positions with multiplied multiplicities.
    pub fn bullet(&self, other: &RayMultiset) -> RayMultiset {
        let mut out = RayMultiset::new();
        for (x, m) in self.iter() {
            for (y, n) in other.iter() {
                out.add(x + y, m * n);
            }
        }
        out
    }

    /// Positions negated.
    pub fn reflect(&self) -> RayMultiset {
        RayMultiset::from_pairs(self.iter().map(|(x, m)| (-x, m)))
    }
}

impl Serialize for RayMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (x, m) in self.iter() {
            seq.serialize_element(&[x.to_string(), m.to_string()])?;
        }
        seq.end()
    }
}

impl fmt::Display for RayMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}: {m}")?;
        }
        write!(f, "}}")
    }
}

/// Union of the per-generator singular supports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SsDescription {
    /// Disjoint closed intervals, sorted.
    pub zero_section: Vec<(Rat, Rat)>,
    pub rays: BTreeSet<(Rat, Sign)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CharCycle1 {
    pub zero_weight: Cf1,
    pub plus: RayMultiset,
    pub minus: RayMultiset,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BTransform {
    pub plus: RayMultiset,
    pub minus: RayMultiset,
    pub zero: i64,
}

fn generator_rays(closure: Closure, lo: Rat, hi: Rat) -> [(Rat, Sign, i64); 2] {
    if lo == hi {
        return [(lo, Sign::Plus, 1), (lo, Sign::Minus, 1)];
    }
    match closure {
        Closure::CC => [(lo, Sign::Minus, 1), (hi, Sign::Plus, 1)],
        Closure::OO => [(lo, Sign::Plus, -1), (hi, Sign::Minus, -1)],
        Closure::CO => [(lo, Sign::Minus, 1), (hi, Sign::Minus, -1)],
        Closure::OC => [(lo, Sign::Plus, -1), (hi, Sign::Plus, 1)],
    }
}

pub fn ss(f: &Sheaf1) -> SsDescription {
    let mut rays = BTreeSet::new();
    let mut pieces: Vec<(Rat, Rat)> = Vec::new();
    for g in f.generators() {
        let i = g.interval;
        for (x, s, _) in generator_rays(i.closure(), i.lo(), i.hi()) {
            rays.insert((x, s));
        }
        pieces.push((i.lo(), i.hi()));
    }
    pieces.sort();
    let mut zero_section: Vec<(Rat, Rat)> = Vec::new();
    for (lo, hi) in pieces {
        match zero_section.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => zero_section.push((lo, hi)),
        }
    }
    SsDescription { zero_section, rays }
}

pub fn cc(f: &Sheaf1) -> CharCycle1 {
    let mut plus = RayMultiset::new();
    let mut minus = RayMultiset::new();
    for g in f.generators() {
        let sign = if g.shift % 2 == 0 { 1 } else { -1 } * g.mult as i64;
        let i = g.interval;
        for (x, s, m) in generator_rays(i.closure(), i.lo(), i.hi()) {
            match s {
                Sign::Plus => plus.add(x, sign * m),
                Sign::Minus => minus.add(x, sign * m),
            }
        }
    }
    CharCycle1 { zero_weight: Cf1::of_sheaf(f), plus, minus }
}

impl CharCycle1 {
    /// Rays with nonzero multiplicity.
    pub fn support(&self) -> BTreeSet<(Rat, Sign)> {
        self.plus.iter().map(|(x, _)| (x, Sign::Plus)).chain(self.minus.iter().map(|(x, _)| (x, Sign::Minus))).collect()
    }

    /// The fiberwise antipode: ray signs swapped, positions kept.
    pub fn antipodal_fiber(&self) -> CharCycle1 {
        CharCycle1 { zero_weight: self.zero_weight.clone(), plus: self.minus.clone(), minus: self.plus.clone() }
    }
}

pub fn b_transform(f: &Sheaf1) -> BTransform {
    let c = cc(f);
    BTransform { plus: c.plus, minus: c.minus, zero: f.euler_c() }
}

impl BTransform {
    /// The transform of `δ_0`.
    pub fn unit() -> BTransform {
        BTransform {
            plus: RayMultiset::from_pairs([(Rat::ZERO, 1)]),
            minus: RayMultiset::from_pairs([(Rat::ZERO, 1)]),
            zero: 1,
        }
    }

    pub fn bullet(&self, other: &BTransform) -> BTransform {
        BTransform {
            plus: self.plus.bullet(&other.plus),
            minus: self.minus.bullet(&other.minus),
            zero: self.zero * other.zero,
        }
    }

    /// Plus and minus rays exchanged.
    pub fn antipodal(&self) -> BTransform {
        BTransform { plus: self.minus.clone(), minus: self.plus.clone(), zero: self.zero }
    }

    /// Positions negated on both rays.
    pub fn reflect(&self) -> BTransform {
        BTransform { plus: self.plus.reflect(), minus: self.minus.reflect(), zero: self.zero }
    }

    pub fn is_unit(&self) -> bool {
        *self == BTransform::unit()
    }
}

impl fmt::Display for BTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "plus {} minus {} zero {}", self.plus, self.minus, self.zero)
    }
}

/// Outcome of the B-transform test for invertibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryCheck {
    pub pass: bool,
    /// `B(F) • B(D(F^a))`, which must be the unit.
    pub refined_product: BTransform,
    pub refined_ok: bool,
    /// `χ_c(F)`, whose square must be 1.
    pub zero: i64,
    pub scalar_ok: bool,
}

pub fn b_necessary_check(f: &Sheaf1) -> NecessaryCheck {
    let b = b_transform(f);
    let refined_product = b.bullet(&b_transform(&f.antipodal().dual()));
    let refined_ok = refined_product.is_unit();
    let scalar_ok = b.zero * b.zero == 1;
    NecessaryCheck { pass: refined_ok && scalar_ok, refined_product, refined_ok, zero: b.zero, scalar_ok }
}

/// Result of checking that every ray of `SS(F ⋆ G)` is a sum of rays of
/// `SS(F)` and `SS(G)` with the same covector sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SsBound {
    Pass,
    Fail { ray: (Rat, Sign) },
}

pub fn ss_convolution_bound_check(f: &Sheaf1, g: &Sheaf1) -> SsBound {
    let h = f.convolve(g);
    let (sf, sg) = (ss(f), ss(g));
    for &(x0, sigma) in &ss(&h).rays {
        let found = sf.rays.iter().filter(|r| r.1 == sigma).any(|&(x1, _)| sg.rays.contains(&(x0 - x1, sigma)));
        if !found {
            return SsBound::Fail { ray: (x0, sigma) };
        }
    }
    SsBound::Pass
}
