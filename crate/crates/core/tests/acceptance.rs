//! Exit criteria, one line per criterion. Exits nonzero if any fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ribbonry::enumerate::log2_big;
use ribbonry::formulas::{
    a_sequence, domino_strip_entropy, fibonacci, stair_count, stanley_fib_count, stanley_minimal_count,
};
use ribbonry::sheffield::{
    acyclic_count_via_chromatic, build_graph, chromatic_polynomial, graphs_isomorphic, stair_graph,
    stair_graph_closed_form, verify_bijection, verify_growth_bounds, ChromaticPoly, SimpleGraph,
};
use ribbonry::verify::bijection_battery;
use ribbonry::{
    build_aztec, build_rectangle, build_stair, count_minimal, count_tilings, count_variable, Region, TilingSampler,
};

type Outcome = Result<String, String>;

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn rect(rows: usize, cols: usize) -> Region {
    build_rectangle(rows, cols).unwrap()
}

fn count(region: &Region, n: usize) -> BigUint {
    count_tilings(region, n).unwrap()
}

/// Every region counted by the other criteria, for the tile-count bound.
#[derive(Default)]
struct Counted(Vec<(String, BigUint, usize, usize)>);

impl Counted {
    fn record(&mut self, name: String, region: &Region, n: usize, value: &BigUint) {
        self.0.push((name, value.clone(), n, region.area() / n));
    }
}

fn expect_eq(what: &str, actual: &BigUint, expected: &BigUint) -> Result<(), String> {
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{what}: got {actual}, expected {expected}"))
    }
}

fn strips(seen: &mut Counted) -> Outcome {
    let mut checked = 0;
    for n in 2..=5 {
        for width in 1..=n + 1 {
            let expected = match width {
                w if w <= n => factorial(w),
                _ if n <= 4 => factorial(n + 1) / 2u32,
                _ => continue,
            };
            let r = rect(n, width);
            let c = count(&r, n);
            expect_eq(&format!("{n}x{width}"), &c, &expected)?;
            seen.record(format!("{n}x{width}"), &r, n, &c);
            checked += 1;
        }
    }
    Ok(format!("{checked} strips"))
}

fn double_squares(seen: &mut Counted) -> Outcome {
    for (n, expected) in [(2usize, 5u32), (3, 61), (4, 1379)] {
        let r = rect(n, 2 * n);
        let c = count(&r, n);
        expect_eq(&format!("{n}x{}", 2 * n), &c, &expected.into())?;
        expect_eq(&format!("recurrence at {n}"), &a_sequence(n).unwrap(), &expected.into())?;
        seen.record(format!("{n}x{}", 2 * n), &r, n, &c);
    }
    Ok("5, 61, 1379 from both".into())
}

fn aztec_params() -> Vec<(usize, usize, usize)> {
    let mut out: Vec<_> =
        (1..=3).flat_map(|size| (2..=4).flat_map(move |n| (0..=n - 2).map(move |k| (size, n, k)))).collect();
    out.extend([(4, 3, 0), (4, 3, 1)]);
    out
}

fn aztec(seen: &mut Counted) -> Outcome {
    let params = aztec_params();
    for &(size, n, k) in &params {
        let r = build_aztec(size, n, k).unwrap();
        let c = count(&r, n);
        let expected = BigUint::from(2u32).pow(size * (size + 1) / 2);
        expect_eq(&format!("AD({size},{n},{k})"), &c, &expected)?;
        seen.record(format!("AD({size},{n},{k})"), &r, n, &c);
    }
    Ok(format!("{} diamonds", params.len()))
}

fn aztec_isomorphism() -> Outcome {
    let params = aztec_params();
    for &(size, n, k) in &params {
        let g = build_graph(&build_aztec(size, n, k).unwrap(), n).unwrap();
        let domino = build_graph(&build_aztec(size, 2, 0).unwrap(), 2).unwrap();
        if graphs_isomorphic(&g, &domino).is_none() {
            return Err(format!("AD({size},{n},{k}) is not isomorphic to AD({size},2,0)"));
        }
    }
    Ok(format!("{} graphs", params.len()))
}

fn stairs(seen: &mut Counted) -> Outcome {
    for n in [3usize, 5, 7] {
        for rows in 1..=8 {
            let r = build_stair(rows, n).unwrap();
            let c = count(&r, n);
            expect_eq(&format!("St({rows},{n})"), &c, &stair_count(rows, n).unwrap())?;
            seen.record(format!("St({rows},{n})"), &r, n, &c);
        }
    }
    expect_eq("St(7,3)", &count(&build_stair(7, 3).unwrap(), 3), &64u32.into())?;
    expect_eq("St(7,5)", &count(&build_stair(7, 5).unwrap(), 5), &486u32.into())?;
    for n in [2usize, 4, 6] {
        for rows in 1..=8 {
            let r = build_stair(rows, n).unwrap();
            let c = count(&r, n);
            expect_eq(&format!("St({rows},{n})"), &c, &count(&rect(n / 2, rows), n / 2))?;
            seen.record(format!("St({rows},{n})"), &r, n, &c);
        }
    }
    Ok("odd and even n, M <= 8".into())
}

fn bijection(seen: &mut Counted) -> Outcome {
    let battery = bijection_battery();
    let irregular = battery.iter().filter(|(name, _, _)| name.starts_with("grid")).count();
    if battery.len() < 25 || irregular < 5 {
        return Err(format!("battery too small: {} regions, {irregular} parsed", battery.len()));
    }
    for (name, region, n) in &battery {
        let report = verify_bijection(region, *n, 64).map_err(|e| format!("{name}: {e}"))?;
        if !report.holds() {
            return Err(format!("{name}: {report:?}"));
        }
        seen.record(name.clone(), region, *n, &report.tilings);
    }
    Ok(format!("{} regions, {irregular} parsed", battery.len()))
}

/// Acyclic orientations by trying all `2^E` of them.
fn brute_acyclic(g: &SimpleGraph) -> u64 {
    let edges = g.edges();
    let k = g.vertex_count();
    let mut total = 0;
    for mask in 0u32..1 << edges.len() {
        let mut out = vec![Vec::new(); k];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out[a].push(b);
            } else {
                out[b].push(a);
            }
        }
        // Kahn's algorithm
        let mut indeg = vec![0; k];
        for v in out.iter().flatten() {
            indeg[*v] += 1;
        }
        let mut stack: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if removed == k {
            total += 1;
        }
    }
    total
}

fn chromatic() -> Outcome {
    let mut graphs: Vec<(String, SimpleGraph)> = Vec::new();
    for k in 1..=5 {
        graphs.push((format!("K{k}"), SimpleGraph::complete(k)));
        graphs.push((format!("P{k}"), SimpleGraph::path(k)));
    }
    for k in 3..=8 {
        graphs.push((format!("C{k}"), SimpleGraph::cycle(k)));
    }
    for n in [3, 5, 7] {
        for rows in 1..=8 {
            graphs.push((format!("stair graph M={rows},n={n}"), stair_graph(rows, n).unwrap()));
        }
    }
    for (name, region, n) in bijection_battery() {
        graphs.push((name, build_graph(&region, n).unwrap().to_simple().unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..40 {
        let k = rng.gen_range(2..=8);
        let edges: Vec<_> =
            (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.4)).collect();
        graphs.push((format!("random #{i}"), SimpleGraph::new(k, edges).unwrap()));
    }
    let mut compared = 0;
    for (name, g) in &graphs {
        if g.edge_count() > 16 {
            continue;
        }
        let brute = brute_acyclic(g);
        if acyclic_count_via_chromatic(g) != brute.into() {
            return Err(format!("{name}: |P(-1)| differs from {brute}"));
        }
        compared += 1;
    }
    for n in [3, 5, 7] {
        for rows in 1..=8 {
            let p = chromatic_polynomial(&stair_graph(rows, n).unwrap());
            let m = (n - 1) / 2;
            // lambda (lambda - 1) ... (lambda - m + 1) (lambda - m)^(M - m), built here from linear factors
            let expected = if rows <= m + 1 {
                (0..rows as i64).fold(ChromaticPoly::constant(1), |acc, i| &acc * &ChromaticPoly::linear(i))
            } else {
                let head = (0..m as i64).fold(ChromaticPoly::constant(1), |acc, i| &acc * &ChromaticPoly::linear(i));
                &head * &ChromaticPoly::linear(m as i64).pow(rows - m)
            };
            if p.coeffs() != expected.coeffs() || p != stair_graph_closed_form(rows, n).unwrap() {
                return Err(format!("M={rows}, n={n}: {p} vs {expected}"));
            }
        }
    }
    Ok(format!("{compared} graphs by brute force, 24 closed forms"))
}

fn tile_bound(seen: &Counted) -> Outcome {
    for (name, c, n, tiles) in &seen.0 {
        let bound = BigUint::from(2u32).pow((n - 1) * tiles);
        if c > &bound {
            return Err(format!("{name}: {c} > 2^{}", (n - 1) * tiles));
        }
    }
    Ok(format!("{} regions", seen.0.len()))
}

fn growth() -> Outcome {
    for (rows, cols, n) in [(3, 6, 3), (3, 9, 3), (4, 8, 4)] {
        let report = verify_growth_bounds(&rect(rows, cols), n, 64).map_err(|e| e.to_string())?;
        if !report.ok {
            return Err(format!("{rows}x{cols}: {:?}", report.rows));
        }
    }
    Ok("3x6, 3x9, 4x8".into())
}

fn stanley() -> Outcome {
    let mut sizes: Vec<(usize, usize)> = (1..=4).flat_map(|m| (m..=4).map(move |n| (m, n))).collect();
    sizes.push((2, 5));
    for &(m, n) in &sizes {
        let r = rect(m, n);
        expect_eq(&format!("{m}x{n} any length"), &count_variable(&r), &stanley_fib_count(m, n))?;
        let minimal = count_minimal(&r);
        let expected = (m, factorial(m) * factorial(m));
        if minimal != expected || minimal != stanley_minimal_count(m, n) {
            return Err(format!("{m}x{n} minimal: {minimal:?}, expected {expected:?}"));
        }
    }
    Ok(format!("{} rectangles", sizes.len()))
}

fn domino_convergence() -> Outcome {
    let limit = domino_strip_entropy(2);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    if (limit - phi.log2()).abs() > 1e-12 {
        return Err(format!("strip entropy {limit} is not log2 of the golden ratio"));
    }
    // F_1 = F_2 = 1 built here by addition, independent of the library
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    let mut last = 0.0;
    for m in 1..=30usize {
        let c = count(&rect(2, m), 2);
        expect_eq(&format!("2x{m}"), &c, &b)?;
        expect_eq(&format!("F_{}", m + 1), &fibonacci(m + 1), &b)?;
        last = log2_big(&c) / m as f64;
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    let gap = (last - limit).abs();
    let summary =
        format!("Fibonacci counts exact; at M = 30 the per-tile entropy is {last:.5} vs {limit:.5}, gap {gap:.4}");
    if gap <= 1e-2 {
        Ok(summary)
    } else {
        Err(format!("{summary} exceeds 1e-2"))
    }
}

fn sampler() -> Outcome {
    let r = rect(3, 3);
    let mut sampler = TilingSampler::new(&r, 3, 20_240_601).map_err(|e| e.to_string())?;
    let mut freq: HashMap<Vec<ribbonry::Tile>, u32> = HashMap::new();
    for _ in 0..60_000 {
        let t = sampler.sample().map_err(|e| e.to_string())?;
        *freq.entry(t.tiles().to_vec()).or_default() += 1;
    }
    if freq.len() != 6 {
        return Err(format!("{} distinct tilings sampled", freq.len()));
    }
    if let Some(bad) = freq.values().find(|&&c| !(9_500..=10_500).contains(&c)) {
        return Err(format!("frequency {bad} outside [9500, 10500]"));
    }
    let sixth = BigRational::new(1.into(), 6.into());
    for t in ribbonry::enumerate_tilings(&r, 3).unwrap() {
        let p = sampler.probability(&t).map_err(|e| e.to_string())?;
        if p != sixth {
            return Err(format!("probability {p}"));
        }
    }
    let mut counts: Vec<u32> = freq.into_values().collect();
    counts.sort_unstable();
    Ok(format!("frequencies {counts:?}, each probability exactly 1/6"))
}

fn super_additivity(seen: &mut Counted) -> Outcome {
    let mut parts = Vec::new();
    for (rows, half, n) in [(3, 6, 3), (4, 8, 4)] {
        let small = count(&rect(rows, half), n);
        let big_region = rect(rows, 2 * half);
        let big = count(&big_region, n);
        seen.record(format!("{rows}x{}", 2 * half), &big_region, n, &big);
        // log2 is monotone, so the inequality is checked on the integers
        if big < &small * &small {
            return Err(format!("{rows}x{}: {big} < {small}^2", 2 * half));
        }
        parts.push(format!("{rows}x{}: {big} >= {small}^2", 2 * half));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let mut seen = Counted::default();
    let mut failed = 0;
    let mut report = |id: u32, title: &str, outcome: Outcome, started: Instant| {
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title}: {detail} ({secs:.1}s)");
            }
        }
    };
    let t = Instant::now();
    report(1, "rectangle strips", strips(&mut seen), t);
    let t = Instant::now();
    report(2, "n x 2n rectangles", double_squares(&mut seen), t);
    let t = Instant::now();
    report(3, "generalized Aztec diamonds", aztec(&mut seen), t);
    let t = Instant::now();
    report(4, "Aztec tile graph isomorphism", aztec_isomorphism(), t);
    let t = Instant::now();
    report(5, "stairs", stairs(&mut seen), t);
    let t = Instant::now();
    report(6, "tilings versus admissible orientations", bijection(&mut seen), t);
    let t = Instant::now();
    report(7, "chromatic polynomials", chromatic(), t);
    let t = Instant::now();
    report(13, "super-additivity", super_additivity(&mut seen), t);
    let t = Instant::now();
    report(8, "tile-count upper bound", tile_bound(&seen), t);
    let t = Instant::now();
    report(9, "growth factor bounds", growth(), t);
    let t = Instant::now();
    report(10, "arbitrary-length ribbons", stanley(), t);
    let t = Instant::now();
    report(11, "domino strip convergence", domino_convergence(), t);
    let t = Instant::now();
    report(12, "uniform sampler", sampler(), t);
    if failed == 0 {
        println!("all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 13 criteria failed");
        ExitCode::FAILURE
    }
}
