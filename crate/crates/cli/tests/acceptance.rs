//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starconv::euler::{
    cf_inverse_convex, default_directions, direction_sweep, euler_convolve_at, euler_convolve_many,
    inverse_probe_points, minkowski_probe_points, pushforward_linear, pushforward_of_convolution,
    ConstructibleFunction,
};
use starconv::geom::{convex_hull, minkowski_sum, ConvexityVerdict, Covector, Mode, Point, Region};
use starconv::interval::convolve_generators;
use starconv::microlocal::{b_necessary_check, b_transform, ss_convolution_bound_check, BTransform, SsBound};
use starconv::oracle::{corrupted_table, validate_table_with};
use starconv::{random, Closure, Execution, Interval, Rat, Sheaf1};
use starconv_cli::{dsl, serialize_expr, Engine};

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, u64, fn() -> Check);

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(1);
    r.set_stream(stream);
    r
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(engine: Engine, args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = engine.run(std::iter::once("starconv").chain(args.iter().copied()), &mut out, &mut Vec::new());
    (code, String::from_utf8(out).unwrap())
}

fn a1() -> Check {
    let report = validate_table_with(1000, 1, convolve_generators, Execution::default()).map_err(|e| e.to_string())?;
    ensure(report.failures.is_empty(), || format!("{} discrepancies", report.failures.len()))?;
    let (code, out) = run(Engine::default(), &["table", "--trials", "1000", "--seed", "1"]);
    ensure(code == 0 && out.contains(r#""failures":[]"#), || format!("cli exit {code}"))?;
    Ok("1000 trials, 0 discrepancies".into())
}

fn invertibles() -> Vec<Sheaf1> {
    let mut r = rng(2);
    (0..500).map(|_| random::invertible(&mut r)).collect()
}

fn a2() -> Check {
    let delta = Sheaf1::dirac(Rat::ZERO);
    for f in invertibles() {
        let inv = f.inverse().map_err(|e| format!("{f}: {e}"))?;
        ensure(f.convolve(&inv) == delta, || format!("{f} ⋆ {inv} ≠ δ₀"))?;
    }
    Ok("500 objects".into())
}

fn a3() -> Check {
    let mut r = rng(3);
    for _ in 0..100 {
        let co = random::interval_with(&mut r, Closure::CO);
        let oc = Interval::new(co.lo(), co.hi(), Closure::OC).unwrap();
        let (f, g) = (Sheaf1::constant(co), Sheaf1::constant(oc));
        ensure(f.convolve(&g).is_zero(), || format!("{f} ⋆ {g} ≠ 0"))?;
        ensure(f.inverse().is_err() && g.inverse().is_err(), || format!("{f} or {g} inverted"))?;
    }
    Ok("100 pairs".into())
}

fn a4() -> Check {
    let mut r = rng(4);
    for _ in 0..500 {
        let (f, g) = (random::sheaf(&mut r, 6), random::sheaf(&mut r, 6));
        ensure(b_transform(&f.convolve(&g)) == b_transform(&f).bullet(&b_transform(&g)), || format!("{f} / {g}"))?;
    }
    Ok("500 pairs".into())
}

fn a5() -> Check {
    ensure(b_transform(&Sheaf1::dirac(Rat::ZERO)) == BTransform::unit(), || "B(δ₀) is not the unit".into())?;
    let mut r = rng(5);
    for _ in 0..200 {
        let f = random::sheaf(&mut r, 4);
        ensure(b_transform(&f.dual()) == b_transform(&f).antipodal(), || format!("{f}"))?;
    }
    Ok("unit and 200 duals".into())
}

fn a6() -> Check {
    for f in invertibles() {
        ensure(b_necessary_check(&f).pass, || format!("{f} fails"))?;
    }
    let mut r = rng(6);
    for c in [Closure::CO, Closure::OC] {
        for _ in 0..50 {
            let f = Sheaf1::constant(random::interval_with(&mut r, c));
            ensure(!b_necessary_check(&f).pass, || format!("{f} passes"))?;
        }
    }
    for _ in 0..200 {
        let f = random::generic_pair(&mut r);
        ensure(!b_necessary_check(&f).pass, || format!("{f} passes"))?;
    }
    Ok("500 pass, 300 fail".into())
}

fn a7() -> Check {
    let mut r = rng(7);
    let unit = Sheaf1::dirac(Rat::ZERO);
    for _ in 0..200 {
        let (f, g, h) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        ensure(f.convolve(&g).convolve(&h) == f.convolve(&g.convolve(&h)), || format!("assoc {f} / {g} / {h}"))?;
        ensure(f.convolve(&g) == g.convolve(&f), || format!("comm {f} / {g}"))?;
        ensure(f.convolve(&unit) == f, || format!("unit {f}"))?;
    }
    Ok("200 triples".into())
}

fn covector(r: &mut ChaCha8Rng, dim: usize) -> Covector {
    loop {
        let c: Vec<i64> = (0..dim).map(|_| r.gen_range(-2..=2)).collect();
        if let Some(xi) = Covector::from_ints(&c) {
            return xi;
        }
    }
}

fn a8() -> Check {
    let mut r = rng(8);
    for i in 0..200 {
        let lambda = match i % 4 {
            0 => Rat::from(2),
            1 => Rat::from(-1),
            2 => Rat::ZERO,
            _ => random::rat(&mut r),
        };
        let (f, g) = (random::sheaf(&mut r, 3), random::sheaf(&mut r, 3));
        let lhs = f.convolve(&g).push_scale(lambda);
        ensure(lhs == f.push_scale(lambda).convolve(&g.push_scale(lambda)), || format!("λ={lambda} {f} / {g}"))?;
    }
    for case in 0..50 {
        let dim = 2 + case % 2;
        let terms = if dim == 2 { 2 } else { 1 };
        let f: ConstructibleFunction = random::region(&mut r, dim, terms).into();
        let g: ConstructibleFunction = random::region(&mut r, dim, terms).into();
        let xi = covector(&mut r, dim);
        let left = pushforward_of_convolution(&f, &g, &xi).map_err(|e| e.to_string())?;
        let right = pushforward_linear(&f, &xi)
            .and_then(|a| pushforward_linear(&g, &xi).map(|b| a.convolve(&b)))
            .map_err(|e| e.to_string())?;
        ensure(left == right, || format!("case {case} in dimension {dim}"))?;
    }
    Ok("200 scalings, 50 projections".into())
}

fn a9() -> Check {
    let mut dir: Vec<PathBuf> =
        std::fs::read_dir(data("regions")).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    dir.sort();
    let (mut convex, mut nonconvex) = (0, 0);
    for path in dir {
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        // no slice of a subset of the line has two components
        if name == "disjoint_segments_r1" {
            continue;
        }
        let region = Region::from_json(&std::fs::read_to_string(&path).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        let one = ConstructibleFunction::of_indicator_region(&region).map_err(|e| format!("{name}: {e}"))?;
        match region.is_convex_region().map_err(|e| e.to_string())? {
            ConvexityVerdict::Convex => {
                let hull = convex_hull(&region.vertices()).map_err(|e| e.to_string())?;
                let inv = cf_inverse_convex(&hull);
                let origin = Point::origin(region.dim());
                ensure(euler_convolve_at(&one, &inv, &origin).unwrap() == 1, || format!("{name}: value at 0"))?;
                let ts = inverse_probe_points(&hull, 200, 9);
                ensure(ts.len() == 200 && !ts.contains(&origin), || format!("{name}: probe set"))?;
                let values = euler_convolve_many(&one, &inv, &ts, Execution::default()).map_err(|e| e.to_string())?;
                if let Some(i) = values.iter().position(|&v| v != 0) {
                    return Err(format!("{name}: value {} at {:?}", values[i], ts[i]));
                }
                convex += 1;
            }
            ConvexityVerdict::Nonconvex { .. } => {
                let report = direction_sweep(&region, &default_directions(&region, 5), Execution::default())
                    .map_err(|e| e.to_string())?;
                let found = report.iter().any(|e| !e.pass && e.cf1.max_value() >= 2);
                ensure(found, || format!("{name}: no direction with a two-component slice"))?;
                nonconvex += 1;
            }
        }
    }
    ensure(convex + nonconvex >= 12, || format!("only {} regions", convex + nonconvex))?;
    Ok(format!("{convex} convex, {nonconvex} nonconvex"))
}

fn a10() -> Check {
    let mut r = rng(10);
    for case in 0..50u64 {
        let dim = 1 + (case % 3) as usize;
        let p = random::polytope(&mut r, dim, 6, 3);
        let q = random::polytope(&mut r, dim, 6, 3);
        let sum = minkowski_sum(&p, &q).map_err(|e| e.to_string())?;
        let (fp, fq) = (
            ConstructibleFunction::indicator(p.clone(), Mode::Closed),
            ConstructibleFunction::indicator(q.clone(), Mode::Closed),
        );
        let ts = minkowski_probe_points(&p, &q, 200, case);
        ensure(ts.len() == 200, || format!("case {case}: {} probes", ts.len()))?;
        let values = euler_convolve_many(&fp, &fq, &ts, Execution::default()).map_err(|e| e.to_string())?;
        for (t, v) in ts.iter().zip(values) {
            ensure(v == i64::from(sum.contains(t, Mode::Closed)), || format!("case {case} at {t:?}"))?;
        }
    }
    Ok("50 pairs × 200 samples".into())
}

fn a11() -> Check {
    let mut r = rng(11);
    for _ in 0..500 {
        let (f, g) = (random::sheaf(&mut r, 4), random::sheaf(&mut r, 4));
        ensure(ss_convolution_bound_check(&f, &g) == SsBound::Pass, || format!("{f} / {g}"))?;
    }
    Ok("500 pairs".into())
}

fn a12() -> Check {
    let corpus = std::fs::read_to_string(data("expressions.txt")).map_err(|e| e.to_string())?;
    let mut n = 0;
    for e in corpus.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let engine = Engine::default();
        let f = engine.eval(e).map_err(|err| format!("{e}: {err}"))?;
        let s = serialize_expr(&f);
        let g = engine.eval(&s).map_err(|err| format!("{s}: {err}"))?;
        ensure(f == g && serialize_expr(&g) == s, || format!("{e} -> {s}"))?;
        ensure(dsl::parse(&s).map(|x| x.to_string()).ok().as_deref() == Some(&*s), || format!("{s} is not canonical"))?;
        ensure(run(Engine::default(), &["eval", "-e", e]) == run(Engine::default(), &["eval", "-e", e]), || {
            format!("{e} output differs")
        })?;
        n += 1;
    }
    let codes = [
        run(Engine::default(), &["eval", "-e", "kc(0,1)"]).0,
        run(Engine::default(), &["invert", "-e", "kco(0,1)"]).0,
        run(Engine::default(), &["eval", "-e", "kc(1,0)"]).0,
        run(Engine::with_table(corrupted_table), &["invert", "-e", "ko(0,1)"]).0,
    ];
    ensure(codes == [0, 1, 2, 3], || format!("exit codes {codes:?}"))?;
    Ok(format!("{n} expressions, exit codes 0/1/2/3"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("A1", "table agrees with the oracles", 30, a1),
        ("A2", "inverse round-trip", 5, a2),
        ("A3", "semi-open annihilation", 1, a3),
        ("A4", "B is multiplicative", 10, a4),
        ("A5", "B unit and duality", 2, a5),
        ("A6", "necessary condition", 2, a6),
        ("A7", "monoidal laws", 10, a7),
        ("A8", "projection commutation", 30, a8),
        ("A9", "convexity corpus", 60, a9),
        ("A10", "Minkowski identity", 60, a10),
        ("A11", "singular support bound", 5, a11),
        ("A12", "cli contract", 2, a12),
    ];
    let mut failed = 0;
    for (id, title, secs, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= Duration::from_secs(secs) => format!("PASS {detail}"),
            Ok(detail) => format!("FAIL {detail}, over the {secs} s budget"),
            Err(why) => format!("FAIL {why}"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{id:<4} {title:<32} {:>9.3} s  {verdict}", elapsed.as_secs_f64());
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
