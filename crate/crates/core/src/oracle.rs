//! Brute-force checks of generator convolution that never consult the table.
//!
//! Stalks of `k_I ⋆ k_J` at `t` are the compactly supported cohomology of
//! `I ∩ (t - J)`. Sections over an open window `]u,v[` are the cohomology of
//! the partially closed rectangle `I × J` cut by the slab `u < x + y < v`,
//! read off from the excluded part of its boundary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use starconv_geom::Rat;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::interval::{convolve_generators, Closure, Generator, GradedDims, Interval, Sheaf1, TableFn};
use crate::random;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntersectionType {
    Empty,
    Point,
    Closed,
    Open,
    HalfOpen,
}

/// An interval with explicit endpoint flags; `lo > hi` allowed (empty).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flagged {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Flagged {
    pub fn of(i: &Interval) -> Flagged {
        Flagged { lo: i.lo(), hi: i.hi(), lo_closed: i.closure().left_closed(), hi_closed: i.closure().right_closed() }
    }

    /// `t - J`: endpoints reflected, flags exchanged.
    pub fn reflected_through(j: &Interval, t: Rat) -> Flagged {
        let f = Flagged::of(j);
        Flagged { lo: t - f.hi, hi: t - f.lo, lo_closed: f.hi_closed, hi_closed: f.lo_closed }
    }

    pub fn intersect(&self, o: &Flagged) -> Flagged {
        let (lo, lo_closed) = match self.lo.cmp(&o.lo) {
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Less => (o.lo, o.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && o.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&o.hi) {
            std::cmp::Ordering::Less => (self.hi, self.hi_closed),
            std::cmp::Ordering::Greater => (o.hi, o.hi_closed),
            std::cmp::Ordering::Equal => (self.hi, self.hi_closed && o.hi_closed),
        };
        Flagged { lo, hi, lo_closed, hi_closed }
    }

    pub fn classify(&self) -> IntersectionType {
        match self.lo.cmp(&self.hi) {
            std::cmp::Ordering::Greater => IntersectionType::Empty,
            std::cmp::Ordering::Equal if self.lo_closed && self.hi_closed => IntersectionType::Point,
            std::cmp::Ordering::Equal => IntersectionType::Empty,
            std::cmp::Ordering::Less => match (self.lo_closed, self.hi_closed) {
                (true, true) => IntersectionType::Closed,
                (false, false) => IntersectionType::Open,
                _ => IntersectionType::HalfOpen,
            },
        }
    }
}

fn shifted(degree0: Option<i64>, g: &Generator, h: &Generator) -> GradedDims {
    let mut out = GradedDims::new();
    if let Some(d) = degree0 {
        out.add(d - (g.shift + h.shift), g.mult * h.mult);
    }
    out
}

/// Stalk of `g ⋆ h` at `t`.
pub fn conv_stalk_oracle(g: &Generator, h: &Generator, t: Rat) -> GradedDims {
    let k = Flagged::of(&g.interval).intersect(&Flagged::reflected_through(&h.interval, t));
    let degree = match k.classify() {
        IntersectionType::Closed | IntersectionType::Point => Some(0),
        IntersectionType::Open => Some(1),
        IntersectionType::HalfOpen | IntersectionType::Empty => None,
    };
    shifted(degree, g, h)
}

/// Cohomology of `g ⋆ h` over the open interval `]u,v[`.
pub fn conv_sections_oracle(g: &Generator, h: &Generator, u: Rat, v: Rat) -> Result<GradedDims> {
    if u >= v {
        return Err(Error::Domain(format!("empty slab ]{u},{v}[")));
    }
    let (i, j) = (Flagged::of(&g.interval), Flagged::of(&h.interval));
    let (a, b, c, d) = (i.lo, i.hi, j.lo, j.hi);
    let in_slab = |s: Rat| u < s && s < v;
    if a + c >= v || b + d <= u {
        return Ok(GradedDims::new());
    }
    // corners: 0 = (a,c), 1 = (b,c), 2 = (a,d), 3 = (b,d)
    let corner_sum = [a + c, b + c, a + d, b + d];
    // excluded closed edges, as corner pairs
    let mut edges: Vec<[usize; 2]> = Vec::new();
    if a < b {
        if !i.lo_closed {
            edges.push([0, 2]);
        }
        if !i.hi_closed {
            edges.push([1, 3]);
        }
    }
    if c < d {
        if !j.lo_closed {
            edges.push([0, 1]);
        }
        if !j.hi_closed {
            edges.push([2, 3]);
        }
    }
    let meets = |e: &[usize; 2]| {
        let (s, t) = (corner_sum[e[0]], corner_sum[e[1]]);
        s.min(t) < v && s.max(t) > u
    };
    let live: Vec<[usize; 2]> = edges.iter().copied().filter(meets).collect();
    let mut parent: Vec<usize> = (0..live.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for x in 0..live.len() {
        for y in x + 1..live.len() {
            let shared = live[x].iter().find(|c| live[y].contains(c));
            if let Some(&corner) = shared {
                if in_slab(corner_sum[corner]) {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    parent[rx] = ry;
                }
            }
        }
    }
    let components = (0..live.len()).filter(|&x| find(&mut parent, x) == x).count();
    let circle = live.len() == 4 && corner_sum.iter().all(|&s| in_slab(s));
    let mut out = GradedDims::new();
    let m = g.mult * h.mult;
    let shift = g.shift + h.shift;
    if components == 0 {
        out.add(-shift, m);
    }
    if components > 1 {
        out.add(1 - shift, m * (components as u64 - 1));
    }
    if circle {
        out.add(2 - shift, m);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Probe {
    Stalk,
    Sections,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableFailure {
    pub trial: usize,
    /// Closure types of the two factors, e.g. `"co,oc"`.
    pub pair: String,
    pub generators: String,
    pub probe: Probe,
    /// The point or window probed.
    pub at: String,
    pub table: String,
    pub oracle: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<TableFailure>,
}

pub fn validate_table(trials: usize, seed: u64) -> Result<TableReport> {
    validate_table_with(trials, seed, convolve_generators, Execution::default())
}

/// Compares `table` against both oracles on `trials` random generator pairs.
pub fn validate_table_with(trials: usize, seed: u64, table: TableFn, exec: Execution) -> Result<TableReport> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let per_trial = exec.map_range(trials, |k| run_trial(k, seed, table));
    Ok(TableReport { trials, seed, failures: per_trial.into_iter().flatten().collect() })
}

fn trial_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

fn run_trial(k: usize, seed: u64, table: TableFn) -> Vec<TableFailure> {
    let mut rng = trial_rng(seed, k);
    let cg = Closure::ALL[k % 4];
    let ch = Closure::ALL[(k / 4) % 4];
    let g = random::generator_with(&mut rng, cg);
    let h = random::generator_with(&mut rng, ch);
    let t = table(&g, &h);
    let (i, j) = (g.interval, h.interval);
    let mut marks = t.breakpoints();
    marks.extend([i.lo() + j.lo(), i.lo() + j.hi(), i.hi() + j.lo(), i.hi() + j.hi()]);
    marks.sort();
    marks.dedup();
    let mut points = marks.clone();
    points.extend(marks.windows(2).map(|w| w[0].midpoint(w[1])));
    points.extend(marks.iter().flat_map(|&x| [x - Rat::ONE, x + Rat::ONE]));
    let (lo, hi) = (marks[0], *marks.last().unwrap());
    for _ in 0..5 {
        let off = random::rat_in(&mut rng, 1, 20) / Rat::from(4);
        let off = if off.is_zero() { Rat::new(1, 7) } else { off };
        points.push(if rng.gen_bool(0.5) { lo - off } else { hi + off });
    }
    points.sort();
    points.dedup();

    let pair = format!("{},{}", cg, ch);
    let generators = format!("{} ⋆ {}", Sheaf1::from_generator(g), Sheaf1::from_generator(h));
    let mut failures = Vec::new();
    for &x in &points {
        let (tv, ov) = (t.stalk(x), conv_stalk_oracle(&g, &h, x));
        if tv != ov {
            failures.push(TableFailure {
                trial: k,
                pair: pair.clone(),
                generators: generators.clone(),
                probe: Probe::Stalk,
                at: x.to_string(),
                table: tv.to_string(),
                oracle: ov.to_string(),
            });
        }
    }
    // windows with endpoints at, between and beyond the breakpoints
    let mut ends = marks.clone();
    ends.extend(marks.windows(2).map(|w| w[0].midpoint(w[1])));
    ends.extend([lo - Rat::ONE, hi + Rat::ONE]);
    ends.sort();
    ends.dedup();
    for _ in 0..5 {
        let p = rng.gen_range(0..ends.len() - 1);
        let q = rng.gen_range(p + 1..ends.len());
        let (u, v) = (ends[p], ends[q]);
        let tv = t.sections_over(u, v).expect("u < v");
        let ov = conv_sections_oracle(&g, &h, u, v).expect("u < v");
        if tv != ov {
            failures.push(TableFailure {
                trial: k,
                pair: pair.clone(),
                generators: generators.clone(),
                probe: Probe::Sections,
                at: format!("]{u},{v}["),
                table: tv.to_string(),
                oracle: ov.to_string(),
            });
        }
    }
    failures
}

/// A table with a deliberately wrong open-open entry, for exercising the
/// failure paths of the harness and of the inverse self-check.
pub fn corrupted_table(g: &Generator, h: &Generator) -> Sheaf1 {
    let out = convolve_generators(g, h);
    if g.interval.closure() == Closure::OO && h.interval.closure() == Closure::OO {
        out.shift(1)
    } else if g.interval.closure() == Closure::OO || h.interval.closure() == Closure::OO {
        out.shift(-1)
    } else {
        out
    }
}
