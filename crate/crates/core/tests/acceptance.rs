//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand_chacha::rand_core::RngCore;
use rayon::prelude::*;

use pgsat::field::prime_power;
use pgsat::hypergraph::{
    check_uniform_intersecting, degree_claim, greedy_transversal, saturation_family, sunflower,
    transversal_bound, SetFamily,
};
use pgsat::saturation::{
    complete, contraction_product, expected_unsaturated, expected_unsaturated_main_term,
    greedy_construct_observed, lunelli_sce_bound, minsat_bruteforce, monte_carlo_expectation,
    random_construct, sample_points, sampling_probability, theorem_bound, theorem_step_count, trial_rng,
    unit_interval, SaturationState, StopRule, Variant,
};
use pgsat::subgeometry::{baer_subplane, three_subline_construction};
use pgsat::{PointSet, ProjectivePlane};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn plane(q: u64) -> ProjectivePlane {
    ProjectivePlane::pg2_of_order(q).unwrap()
}

/// Saturation by definition: every point outside `set` lies on the line of some pair.
fn oracle_saturating(plane: &ProjectivePlane, set: &PointSet) -> bool {
    let pts = set.to_vec();
    if pts.len() < 2 {
        return false;
    }
    let mut secants = HashSet::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            secants.insert(plane.line_through(a, b).unwrap());
        }
    }
    (0..plane.num_points() as u32)
        .filter(|&x| !set.contains(x))
        .all(|x| plane.lines_through(x).iter().any(|l| secants.contains(l)))
}

/// Points on no line through two points of `set`, counting points of `set` too.
fn oracle_undetermined(plane: &ProjectivePlane, set: &[u32]) -> usize {
    let mut determined = HashSet::new();
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            let l = plane.line_through(a, b).unwrap();
            determined.extend(plane.points_on(l).iter().copied());
        }
    }
    plane.num_points() - determined.len()
}

fn random_subset(n: usize, k: usize, seed: u64, stream: u64) -> PointSet {
    let mut rng = trial_rng(seed, stream);
    let mut set = PointSet::empty(n);
    while set.len() < k {
        set.insert((rng.next_u64() % n as u64) as u32);
    }
    set
}

const SWEEP: [u64; 19] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19, 23, 25, 27, 32, 49, 64, 81, 128];

#[derive(Default)]
struct InvariantTally {
    steps: usize,
    identity: Vec<String>,
    min_intersection: Vec<String>,
    contraction: Vec<String>,
}

/// Greedy sweep for criterion 1, observing each step for criterion 4.
fn greedy_sweep() -> (Check, InvariantTally) {
    let start = Instant::now();
    let results: Vec<(Result<String, String>, InvariantTally)> = SWEEP
        .par_iter()
        .flat_map(|&q| [(q, Variant::Skew), (q, Variant::Global)])
        .map(|(q, variant)| {
            let pl = plane(q);
            let mut tally = InvariantTally::default();
            let mut observe = |state: &SaturationState, step: &pgsat::saturation::TraceStep| {
                let i = state.set().len();
                let Some(line) = step.skew_line else { return };
                if i < 2 {
                    return;
                }
                tally.steps += 1;
                let r = state.unsaturated().len();
                let on_line = state.unsaturated().count_in(pl.points_on(line));
                let sum: usize = pl.points_on(line).iter().map(|&p| state.benefit(p).unwrap()).sum();
                if sum != on_line + i * (r - on_line) {
                    tally.identity.push(format!("q={q} {variant} i={i}: {sum} != {on_line}+{i}*{}", r - on_line));
                }
                let min = (0..pl.num_lines() as u32)
                    .filter(|&l| pl.points_on(l).iter().all(|&p| !state.set().contains(p)))
                    .map(|l| state.unsaturated().count_in(pl.points_on(l)))
                    .min()
                    .unwrap();
                if min * q as usize > r || Some(min) != step.min_skew_intersection {
                    tally.min_intersection.push(format!("q={q} {variant} i={i}: min={min} |R|={r}"));
                }
                // |R_{i+1}| ≤ |R_i| (1 − i/(q+2)), in integers.
                if step.r_after * (q as usize + 2) > r * (q as usize + 2 - i.min(q as usize + 2)) {
                    tally.contraction.push(format!(
                        "q={q} {variant} i={i}: |R_i|={r} |R_i+1|={} limit={:.3}",
                        step.r_after,
                        r as f64 * (1.0 - i as f64 / (q as f64 + 2.0))
                    ));
                }
            };
            let out = greedy_construct_observed(&pl, variant, StopRule::default(), &mut observe);
            let res = match out {
                Err(e) => Err(format!("q={q} {variant}: {e}")),
                Ok(out) => {
                    let size = out.set.len() as u64;
                    let bound = theorem_bound(q as u32);
                    if !oracle_saturating(&pl, &out.set) {
                        Err(format!("q={q} {variant}: not saturating"))
                    } else if size > bound {
                        Err(format!("q={q} {variant}: size {size} > bound {bound}"))
                    } else {
                        Ok(format!("{q}:{size}/{bound}"))
                    }
                }
            };
            (res, tally)
        })
        .collect();

    let mut total = InvariantTally::default();
    let mut sizes = Vec::new();
    let mut errors = Vec::new();
    for (res, t) in results {
        match res {
            Ok(s) => sizes.push(s),
            Err(e) => errors.push(e),
        }
        total.steps += t.steps;
        total.identity.extend(t.identity);
        total.min_intersection.extend(t.min_intersection);
        total.contraction.extend(t.contraction);
    }
    let secs = start.elapsed().as_secs_f64();
    let check = if !errors.is_empty() {
        Err(errors.join("; "))
    } else if secs > 60.0 {
        Err(format!("sweep took {secs:.1}s"))
    } else {
        Ok(format!("38 runs verified within bound in {secs:.1}s (skew/global size/bound: {})", sizes.join(" ")))
    };
    (check, total)
}

fn criterion_4(t: &InvariantTally) -> Check {
    let summary = format!(
        "{} steps: identity violations {}, min-intersection violations {}, contraction violations {}",
        t.steps,
        t.identity.len(),
        t.min_intersection.len(),
        t.contraction.len()
    );
    ensure(t.steps > 0, || "no steps observed".into())?;
    if t.identity.is_empty() && t.min_intersection.is_empty() && t.contraction.is_empty() {
        Ok(summary)
    } else {
        let examples: Vec<&String> =
            t.identity.iter().chain(&t.min_intersection).chain(&t.contraction).take(6).collect();
        Err(format!("{summary}; e.g. {examples:?}"))
    }
}

fn criterion_2() -> Check {
    let mut parts = Vec::new();
    for q in [121u64, 169] {
        let pl = plane(q);
        let sizes: Vec<Result<usize, String>> = (0..100u64)
            .into_par_iter()
            .map(|seed| {
                let out = random_construct(&pl, seed, None).map_err(|e| format!("q={q} seed={seed}: {e}"))?;
                if !pgsat::saturation::is_saturating(&pl, &out.set) {
                    return Err(format!("q={q} seed={seed}: not saturating"));
                }
                Ok(out.set.len())
            })
            .collect();
        let sizes = sizes.into_iter().collect::<Result<Vec<_>, _>>()?;
        let mean = sizes.iter().sum::<usize>() as f64 / sizes.len() as f64;
        let bound = theorem_bound(q as u32);
        ensure(mean <= bound as f64, || format!("q={q}: mean {mean} > {bound}"))?;
        parts.push(format!("q={q} mean {mean:.2} <= {bound}"));
    }
    Ok(parts.join(", "))
}

fn criterion_3() -> Check {
    let fano = plane(2);
    // Exact weighted average of `Y` over all 128 subsets.
    let ys: Vec<(u32, usize)> = (0u32..128)
        .map(|mask| {
            let set: Vec<u32> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
            (mask.count_ones(), oracle_undetermined(&fano, &set))
        })
        .collect();
    for (num, den) in [(1i64, 4i64), (1, 2), (3, 4)] {
        let p = BigRational::new(num.into(), den.into());
        let one_minus = BigRational::one() - &p;
        let exact: BigRational = ys
            .iter()
            .map(|&(k, y)| {
                let mut w = BigRational::from_integer(BigInt::from(y));
                for _ in 0..k {
                    w *= &p;
                }
                for _ in k..7 {
                    w *= &one_minus;
                }
                w
            })
            .sum();
        let exact = exact.to_f64().unwrap();
        let formula = expected_unsaturated(2, num as f64 / den as f64).unwrap();
        ensure((exact - formula).abs() <= 1e-12, || format!("p={num}/{den}: exhaustive {exact} vs formula {formula}"))?;
    }
    let half = expected_unsaturated(2, 0.5).unwrap();
    ensure((half - 1.53125).abs() <= 1e-12, || format!("formula gives {half}"))?;

    let p = sampling_probability(7);
    let (mean, se) = monte_carlo_expectation(&plane(7), p, 100_000, 2024).unwrap();
    let formula = expected_unsaturated(7, p).unwrap();
    let z = (mean - formula) / se;
    ensure(z.abs() < 5.0, || format!("q=7 Monte Carlo {mean} vs {formula}: z={z:.2}"))?;
    Ok(format!("Fano exhaustive = formula at p=1/4,1/2,3/4 (1.53125 at 1/2); q=7 MC z={z:.2}"))
}

fn criterion_5() -> Check {
    let mut count = 0;
    for q in 4u32..=1024 {
        if prime_power(q as u64).is_none() {
            continue;
        }
        let k = theorem_step_count(q) as u32;
        let v = contraction_product(q, k).unwrap();
        let limit = (q as f64).powf(-1.5);
        ensure(v < limit, || format!("q={q}: {v} >= {limit}"))?;
        count += 1;
    }
    let exact = |q: u32, k: u32| {
        (1..=k).fold(BigRational::one(), |acc, i| acc * BigRational::new((q + 2 - i).into(), (q + 2).into()))
    };
    ensure(theorem_step_count(9) == 8 && theorem_step_count(4) == 5, || "step counts".into())?;
    ensure(exact(9, 8) == BigRational::new(1814400.into(), 214358881.into()), || "q=9 exact".into())?;
    let v9 = contraction_product(9, 8).unwrap();
    ensure((v9 - 8.465e-3).abs() < 1e-6 && v9 < 3.70e-2, || format!("q=9: {v9}"))?;
    let v4 = contraction_product(4, 5).unwrap();
    ensure((v4 - 0.015432).abs() < 1e-6 && v4 < 0.125, || format!("q=4: {v4}"))?;
    Ok(format!("{count} prime powers in 4..=1024; q=9 -> {v9:.6e}, q=4 -> {v4:.6}"))
}

fn criterion_6() -> Check {
    let mut runs = 0;
    for q in [5u64, 7, 9, 11, 13] {
        let pl = plane(q);
        let n = pl.num_points();
        for seed in 0..200u64 {
            let mut rng = trial_rng(seed, q);
            let p = 0.3 * unit_interval(&mut rng);
            let set = sample_points(n, p, &mut rng);
            let c = complete(&pl, &set);
            ensure(set.is_subset(&c.set), || format!("q={q} seed={seed}: input dropped"))?;
            ensure(c.added.len() <= c.unsaturated_after_startup.div_ceil(2), || {
                format!("q={q} seed={seed}: added {} for |R|={}", c.added.len(), c.unsaturated_after_startup)
            })?;
            ensure(oracle_saturating(&pl, &c.set), || format!("q={q} seed={seed}: not saturating"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} completions within ceil(|R|/2) and saturating"))
}

/// Smallest saturating size by plain bitmask enumeration.
fn oracle_minimum(pl: &ProjectivePlane) -> usize {
    let n = pl.num_points();
    (1u64..1 << n)
        .filter(|m| {
            let set = PointSet::from_indices(n, (0..n as u32).filter(|i| m >> i & 1 == 1)).unwrap();
            set.len() >= 2 && oracle_saturating(pl, &set)
        })
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

fn criterion_7() -> Check {
    // Recorded minima for q = 2, 3, 4.
    let recorded = [(2u64, 4usize), (3, 4), (4, 5)];
    let mut parts = Vec::new();
    for (q, expected) in recorded {
        let pl = plane(q);
        let (size, witness) = minsat_bruteforce(&pl, false).map_err(|e| e.to_string())?;
        ensure(oracle_saturating(&pl, &witness) && witness.len() == size, || format!("q={q}: bad witness"))?;
        ensure(size == expected, || format!("q={q}: minimum {size}, recorded {expected}"))?;
        if q <= 3 {
            let oracle = oracle_minimum(&pl);
            ensure(oracle == size, || format!("q={q}: enumeration gives {oracle}"))?;
        }
        let lower = lunelli_sce_bound(q as u32);
        ensure(size as f64 > lower, || format!("q={q}: {size} <= {lower}"))?;
        parts.push(format!("q={q}: {size} > {lower:.3}"));
    }
    Ok(parts.join(", "))
}

fn criterion_8() -> Check {
    let mut parts = Vec::new();
    for (q, s) in [(9u64, 3usize), (16, 4), (25, 5), (49, 7), (81, 9)] {
        let pl = plane(q);
        let emb = baer_subplane(&pl).map_err(|e| e.to_string())?;
        let set = three_subline_construction(&emb);
        ensure(set.len() == 3 * s, || format!("q={q}: size {}", set.len()))?;
        ensure(oracle_saturating(&pl, &set), || format!("q={q}: not saturating"))?;
        parts.push(format!("{q}:{}", set.len()));
    }
    Ok(format!("sizes {}", parts.join(" ")))
}

struct FamilyCheck {
    bound_checked: usize,
    degree_violations: Vec<String>,
    bound_violations: Vec<String>,
}

fn check_family(label: &str, fam: &SetFamily, out: &mut FamilyCheck) -> Result<Vec<u32>, String> {
    let tr = greedy_transversal(fam).map_err(|e| format!("{label}: {e}"))?;
    let chosen: HashSet<u32> = tr.vertices.iter().copied().collect();
    ensure(fam.edges().iter().all(|e| e.iter().any(|v| chosen.contains(v))), || format!("{label}: not a transversal"))?;
    let m = fam.len();
    let prof = check_uniform_intersecting(fam);
    if let (Some(r), Some(t)) = (prof.r, prof.t) {
        let bound = transversal_bound(r, t, m).unwrap();
        out.bound_checked += 1;
        if tr.size() as u64 > bound {
            out.bound_violations.push(format!("{label}: tau_greedy={} > {bound} (r={r} t={t} m={m})", tr.size()));
        }
        let claim = degree_claim(r, t, m).unwrap();
        if tr.covered_counts[0] < claim {
            out.degree_violations
                .push(format!("{label}: first pick {} < {claim} (r={r} t={t} m={m})", tr.covered_counts[0]));
        }
    }
    Ok(tr.vertices)
}

fn criterion_9() -> Check {
    let mut fc = FamilyCheck { bound_checked: 0, degree_violations: Vec::new(), bound_violations: Vec::new() };
    let mut families = 0;
    let mut pairs = [0usize; 2];
    let mut configs: Vec<(u64, usize, u64)> = Vec::new();
    for q in [7u64, 9, 11] {
        for k in [3usize, 4, 5] {
            for seed in 0..30 {
                configs.push((q, k, seed));
            }
        }
    }
    // Extra draws on q ∈ {7, 9, 13}.
    for d in 0..50u64 {
        configs.push(([7u64, 9, 13][d as usize % 3], 2 + d as usize % 5, 1000 + d));
    }
    for (q, k, seed) in configs {
        let pl = plane(q);
        let label = format!("q={q} |S0|={k} seed={seed}");
        let s0 = random_subset(pl.num_points(), k, seed, 9);
        let fam = saturation_family(&pl, &s0).map_err(|e| e.to_string())?;
        families += 1;
        let labels = fam.labels().unwrap().to_vec();
        // (a) edge sizes.
        let r = k * (q as usize - 1) + 1;
        ensure(fam.edges().iter().all(|e| e.len() == r), || format!("{label}: edge size != {r}"))?;
        // (b) the two-case intersection values, matched against the case of each pair.
        let sets: Vec<HashSet<u32>> = fam.edges().iter().map(|e| e.iter().copied().collect()).collect();
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                let line = pl.line_through(labels[i], labels[j]).unwrap();
                let meets = s0.count_in(pl.points_on(line));
                let found = sets[i].intersection(&sets[j]).count();
                let expected = match meets {
                    0 => k * (k - 1),
                    1 => (k - 1) * (k - 2) + q as usize,
                    c => return Err(format!("{label}: joining line of two unsaturated points meets S0 in {c}")),
                };
                ensure(found == expected, || {
                    format!("{label}: |H_{i} ∩ H_{j}| = {found}, expected {expected} (case {meets})")
                })?;
                pairs[meets] += 1;
            }
        }
        if fam.is_empty() {
            continue;
        }
        // (c) bound and degree claim; (d) completion.
        let chosen = check_family(&label, &fam, &mut fc)?;
        let mut full = s0.clone();
        for v in chosen {
            full.insert(v);
        }
        ensure(oracle_saturating(&pl, &full), || format!("{label}: S0 + transversal not saturating"))?;
    }
    let sun = sunflower(10, 2, 20);
    ensure(transversal_bound(10, 2, 20).unwrap() == 12, || "sunflower bound".into())?;
    check_family("sunflower(10,2,20)", &sun, &mut fc)?;

    let summary = format!(
        "{families} families, {} + {} pairs in the two cases, {} bound checks; bound violations {}, degree-claim violations {}",
        pairs[0],
        pairs[1],
        fc.bound_checked,
        fc.bound_violations.len(),
        fc.degree_violations.len()
    );
    if fc.bound_violations.is_empty() && fc.degree_violations.is_empty() {
        Ok(summary)
    } else {
        let ex: Vec<&String> = fc.bound_violations.iter().chain(&fc.degree_violations).take(4).collect();
        Err(format!("{summary}; e.g. {ex:?}"))
    }
}

fn criterion_10() -> Check {
    let mut checked = 0;
    for q in 2u64..=64 {
        if prime_power(q).is_none() {
            continue;
        }
        let pl = plane(q);
        let report = pl.validate_axioms();
        ensure(report.passed(), || format!("q={q}: {:?}", report.violation))?;
        let text = pl.to_file_string();
        let back = ProjectivePlane::parse(&text).map_err(|e| format!("q={q}: {e}"))?;
        ensure(back == pl && back.to_file_string() == text, || format!("q={q}: round trip differs"))?;
        checked += 1;
    }
    // Independent check on a small plane: coordinates incident iff the dot product vanishes.
    let pl = plane(4);
    let f = pl.field().unwrap();
    for l in 0..pl.num_lines() as u32 {
        let lc = pgsat::HomogeneousTriple::from_index(l, 4);
        for p in 0..pl.num_points() as u32 {
            let pc = pl.point_coords(p).unwrap();
            ensure(pl.is_incident(p, l) == pc.dot(f, &lc).is_zero(), || format!("q=4 incidence ({p},{l})"))?;
        }
    }

    let bin = env!("CARGO_BIN_EXE_pgsat");
    let invocations: [&[&str]; 3] = [
        &["construct", "--q", "9", "--method", "random", "--seed", "1"],
        &["construct", "--q", "16", "--method", "greedy", "--variant", "global"],
        &["construct", "--q", "25", "--method", "baer", "--json"],
    ];
    for args in invocations {
        let run = || Command::new(bin).args(args).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        ensure(a.status.success() && b.status.success(), || format!("{args:?} failed"))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("{args:?}: outputs differ"))?;
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
        ensure(v["verified"] == true, || format!("{args:?}: not verified"))?;
    }
    Ok(format!("{checked} planes validated and round-tripped; 3 CLI runs byte-identical"))
}

fn criterion_11() -> Check {
    let mut out_of_range = Vec::new();
    let (mut lo, mut hi) = (f64::INFINITY, 0f64);
    for q in 121u32..=1024 {
        if prime_power(q as u64).is_none() {
            continue;
        }
        let p = sampling_probability(q);
        let ratio = expected_unsaturated(q, p).unwrap() / expected_unsaturated_main_term(q, p);
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        if !(0.5..=2.0).contains(&ratio) {
            out_of_range.push(q);
        }
    }
    let summary = format!("ratio range [{lo:.4}, {hi:.4}]");
    if out_of_range.is_empty() {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}; {} prime powers outside [0.5, 2], first {:?}",
            out_of_range.len(),
            &out_of_range[..out_of_range.len().min(5)]
        ))
    }
}

fn guarded(f: impl FnOnce() -> Check) -> Check {
    panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

fn main() {
    let start = Instant::now();
    let (c1, tally) = panic::catch_unwind(greedy_sweep).unwrap_or_else(|_| {
        (Err("greedy sweep panicked".into()), InvariantTally::default())
    });
    let results: Vec<(&str, Check)> = vec![
        ("1 greedy theorem bound", c1),
        ("2 random theorem bound", guarded(criterion_2)),
        ("3 exact expectation", guarded(criterion_3)),
        ("4 greedy step invariants", guarded(|| criterion_4(&tally))),
        ("5 contraction product", guarded(criterion_5)),
        ("6 completion", guarded(criterion_6)),
        ("7 exact minima", guarded(criterion_7)),
        ("8 Baer construction", guarded(criterion_8)),
        ("9 hypergraph suite", guarded(criterion_9)),
        ("10 infrastructure", guarded(criterion_10)),
        ("11 main-term ratio", guarded(criterion_11)),
    ];
    let mut failed = 0;
    for (name, res) in &results {
        match res {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    println!(
        "{} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
