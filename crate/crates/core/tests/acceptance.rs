//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rough_angle::atb::{atb_star_check, angle_transfer_fuzz, max_angle_separated};
use rough_angle::curves::{
    curve_length, gradient_descent_trajectory, is_self_contracted, DescentSpec, DiscreteCurve, Norm, Objective,
};
use rough_angle::graph::{GeodesicSet, WeightedGraph};
use rough_angle::metric::io::SpaceDocument;
use rough_angle::metric::random::random_metric;
use rough_angle::metric::{doubling_estimate, snowflake_transform, FiniteMetricSpace, Metric};
use rough_angle::spaces::{
    broom_tree, heisenberg_axis, laakso_closed_form, laakso_graph, stable_norm_estimate, BroomSequence, BFS_BUDGET,
};
use rough_angle::sra::{
    compute_sra_free_bound, doubling_threshold, max_sra_subset, sra_angle_bound, verify_sra_set, SearchMode,
    SraParameter, Verdict,
};

type Outcome = Result<String, String>;

/// Spaces and subsets that passed the SRA check in criteria 1 and 2, for
/// the angle-bound criterion.
static PASSING: Mutex<Vec<(FiniteMetricSpace, Vec<usize>, f64)>> = Mutex::new(Vec::new());

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(limit_s), format!("took {elapsed:?}, limit {limit_s} s"))
}

fn laakso_sra() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("laakso6.json");
    let path_s = path.to_str().unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let gen = ["rough-angle", "--output", path_s, "gen", "laakso", "--level", "6", "--sra-points", "6"];
    ensure(rough_angle::cli::run(gen, &mut out, &mut err) == 0, String::from_utf8_lossy(&err))?;
    let check = ["rough-angle", "sra", "check", path_s, "--alpha", "0.6"];
    out.clear();
    let code = rough_angle::cli::run(check, &mut out, &mut err);
    ensure(code == 0, format!("sra check exited {code}: {}", String::from_utf8_lossy(&out)))?;
    let elapsed = start.elapsed();

    let doc: SpaceDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let space = doc.to_space().map_err(|e| e.to_string())?;
    let x = doc.named_points("X").ok_or("no X list")?;
    ensure(x.len() == 6, "expected six points")?;
    let mut worst: f64 = 0.0;
    for i in 0..6 {
        for k in i + 1..6 {
            worst = worst.max((space.dist(x[i], x[k]) - laakso_closed_form(i as u32 + 1, k as u32 + 1)).abs());
        }
    }
    ensure(worst <= 1e-12, format!("closed form off by {worst:e}"))?;
    within(elapsed, 10)?;
    PASSING.lock().unwrap().push((space, x, 0.6));
    Ok(format!("6 points pass SRA(0.6); closed-form error {worst:e}; {elapsed:.2?}"))
}

fn snowflake_sra() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut violations = 0;
    let mut passing = Vec::new();
    for trial in 0..1000 {
        let n = rng.random_range(3..=10);
        let base = random_metric(n, 0.05, &mut rng);
        for alpha in [0.3, 0.5, 0.8] {
            let flake = snowflake_transform(&base, alpha).map_err(|e| e.to_string())?;
            let all: Vec<usize> = (0..n).collect();
            let r = verify_sra_set(&flake, &all, SraParameter::new(alpha).unwrap()).map_err(|e| e.to_string())?;
            if r.passed() {
                passing.push((flake, all, alpha));
            } else {
                violations += 1;
                eprintln!("trial {trial} alpha {alpha}: {:?}", r.witness);
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(violations == 0, format!("{violations} snowflaked spaces violate SRA"))?;
    within(elapsed, 10)?;
    PASSING.lock().unwrap().extend(passing);
    Ok(format!("3000 snowflaked spaces, 0 violations; {elapsed:.2?}"))
}

fn angle_bound() -> Outcome {
    let passing = PASSING.lock().unwrap();
    ensure(passing.len() == 3001, format!("expected 3001 passing subsets, have {}", passing.len()))?;
    let mut worst = f64::INFINITY;
    for (space, subset, alpha) in passing.iter() {
        let r = sra_angle_bound(space, subset, SraParameter::new(*alpha).unwrap()).map_err(|e| e.to_string())?;
        worst = worst.min(r.margin);
    }
    ensure(worst >= -1e-9, format!("margin {worst:e}"))?;
    Ok(format!("{} subsets, smallest margin {worst:.3e}", passing.len()))
}

fn broom() -> Outcome {
    let dyadic = broom_tree(&BroomSequence::Dyadic { n: 20 }).map_err(|e| e.to_string())?;
    for a in 1..=9 {
        let alpha = SraParameter::new(a as f64 / 10.0).unwrap();
        let r = verify_sra_set(dyadic.space(), &dyadic.tips(), alpha).unwrap();
        ensure(r.passed(), format!("dyadic tips fail SRA({}): {:?}", alpha.value(), r.witness))?;
    }
    let harmonic = broom_tree(&BroomSequence::Harmonic { n: 100 }).map_err(|e| e.to_string())?;
    let curve = DiscreteCurve::new(harmonic.space(), harmonic.tips()).unwrap();
    ensure(is_self_contracted(&curve).unwrap().verdict == Verdict::Pass, "harmonic tip curve is not self-contracted")?;
    let length = curve_length(&curve).unwrap().polygonal_length;
    let want = 2.0 * (1..=99).map(|i| 1.0 / i as f64).sum::<f64>();
    ensure((length - want).abs() <= 1e-9, format!("length {length} vs {want}"))?;
    for tree in [&dyadic, &harmonic] {
        let t = tree.heights();
        for i in 1..=t.len() {
            for j in 1..i {
                ensure(tree.space().dist(tree.tip(i), tree.tip(j)) == 2.0 * t[j - 1], format!("d(y{i}, y{j})"))?;
            }
        }
    }
    Ok(format!("dyadic tips SRA for α = 0.1..0.9; harmonic length {length:.12}; tip distances exact"))
}

fn heisenberg() -> Outcome {
    let start = Instant::now();
    let big = heisenberg_axis(10_000, (0.0, 1.0)).unwrap();
    let curve = DiscreteCurve::through_all(big);
    ensure(is_self_contracted(&curve).unwrap().verdict == Verdict::Pass, "axis sample is not self-contracted")?;
    let long = curve_length(&curve).unwrap().polygonal_length;
    let want = 2.0 * (PI * 1e4).sqrt();
    let rel = (long - want).abs() / want;
    ensure(rel <= 1e-6, format!("length {long} vs {want}"))?;
    let short = curve_length(&DiscreteCurve::through_all(heisenberg_axis(100, (0.0, 1.0)).unwrap())).unwrap();
    let ratio = long / short.polygonal_length;
    ensure((ratio - 10.0).abs() <= 1e-6, format!("ratio {ratio}"))?;
    Ok(format!("length {long:.9} (rel. error {rel:.1e}), ratio {ratio:.12}; {:.2?}", start.elapsed()))
}

fn ramsey() -> Outcome {
    let start = Instant::now();
    let n2 = compute_sra_free_bound(2).map_err(|e| e.to_string())?;
    let n3 = compute_sra_free_bound(3).map_err(|e| e.to_string())?;
    let n4 = compute_sra_free_bound(4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(n2.n == 3u32.into() && n2.exact && n2.chain.iter().all(|c| c.exact), "N(2)")?;
    ensure(n3.n == 10u32.into() && n3.exact && n3.chain.iter().all(|c| c.exact), "N(3)")?;
    ensure(n4.n <= 3277u32.into() && !n4.exact, format!("N(4) = {} exact = {}", n4.n, n4.exact))?;
    within(elapsed, 1)?;
    Ok(format!("N(2) = 3, N(3) = 10 exact; N(4) <= {} (bound); {elapsed:.2?}", n4.n))
}

fn angle_transfer() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for epsilon in [0.3, 0.7, 1.2] {
        for dim in 2..=4 {
            let r = angle_transfer_fuzz(dim, epsilon, 100_000, 7).map_err(|e| e.to_string())?;
            ensure(r.violations == 0, format!("ε = {epsilon}, dim {dim}: {} violations", r.violations))?;
            total += r.trials;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 60)?;
    Ok(format!("{total} trials, 0 violations; {elapsed:.2?}"))
}

fn brute_sra(space: &FiniteMetricSpace, alpha: f64, mask: u32) -> bool {
    let pts: Vec<usize> = (0..space.len()).filter(|i| mask >> i & 1 == 1).collect();
    let tol = space.tolerance();
    let ok = |x: usize, z: usize, y: usize| {
        let (dxz, dzy) = (space.dist(x, z), space.dist(z, y));
        space.dist(x, y) <= (dxz + alpha * dzy).max(alpha * dxz + dzy) + tol
    };
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                if a != b && b != c && a != c && !ok(a, b, c) {
                    return false;
                }
            }
        }
    }
    true
}

fn brute_self_contracted<M: Metric>(curve: &DiscreteCurve<M>) -> bool {
    let n = curve.len();
    for t1 in 0..n {
        for t2 in t1..n {
            for t3 in t2..n {
                if curve.dist(t2, t3) > curve.dist(t1, t3) + curve.tolerance() {
                    return false;
                }
            }
        }
    }
    true
}

fn random_curve(rng: &mut ChaCha8Rng) -> DiscreteCurve<rough_angle::curves::NormedPoints> {
    let n = rng.random_range(1..=50);
    let norm = [Norm::L1, Norm::L2, Norm::LInf][rng.random_range(0..3)];
    let coords: Vec<Vec<f64>> = match rng.random_range(0..3) {
        // Unstructured points.
        0 => (0..n).map(|_| vec![rng.random::<f64>(), rng.random::<f64>()]).collect(),
        // Monotone approach to the origin along a ray, with occasional
        // backward jitter that may or may not break the condition.
        1 => {
            let mut r = 1.0;
            (0..n)
                .map(|_| {
                    r *= rng.random_range(0.7..1.0);
                    let jitter = if rng.random_bool(0.05) { rng.random_range(0.0..0.02) } else { 0.0 };
                    vec![r + jitter, 0.5 * (r + jitter)]
                })
                .collect()
        }
        // A shrinking spiral.
        _ => {
            let turn = rng.random_range(0.05..1.5);
            (0..n)
                .map(|k| {
                    let r = 0.97f64.powi(k as i32);
                    let a = turn * k as f64;
                    vec![r * a.cos(), r * a.sin()]
                })
                .collect()
        }
    };
    DiscreteCurve::from_coords(coords, norm).unwrap()
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sra_agree = 0;
    for _ in 0..200 {
        let n = rng.random_range(3..=10);
        let space = random_metric(n, 0.01, &mut rng);
        let alpha = [0.2, 0.5, 0.8][rng.random_range(0..3)];
        let found = max_sra_subset(&space, SraParameter::new(alpha).unwrap(), SearchMode::Exact).unwrap();
        let best = (0u32..1 << n).filter(|&m| brute_sra(&space, alpha, m)).map(u32::count_ones).max().unwrap();
        let mask = found.points.iter().fold(0u32, |m, &p| m | 1 << p);
        if found.points.len() == best as usize && brute_sra(&space, alpha, mask) {
            sra_agree += 1;
        }
    }
    let mut curve_agree = 0;
    let mut contracted = 0;
    for _ in 0..500 {
        let curve = random_curve(&mut rng);
        let fast = is_self_contracted(&curve).unwrap().verdict == Verdict::Pass;
        let slow = brute_self_contracted(&curve);
        curve_agree += usize::from(fast == slow);
        contracted += usize::from(slow);
    }
    ensure(sra_agree == 200, format!("max SRA subset agrees on {sra_agree}/200"))?;
    ensure(curve_agree == 500, format!("self-contracted scan agrees on {curve_agree}/500"))?;
    ensure((50..=450).contains(&contracted), format!("only {contracted}/500 curves self-contracted"))?;
    Ok(format!("200/200 subset searches, 500/500 curves ({contracted} self-contracted)"))
}

fn descent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..100 {
        let (l1, l2) = (rng.random_range(0.05..10.0), rng.random_range(0.05..10.0));
        let theta: f64 = rng.random_range(0.0..PI);
        let (c, s) = (theta.cos(), theta.sin());
        let matrix = vec![
            vec![l1 * c * c + l2 * s * s, (l1 - l2) * c * s],
            vec![(l1 - l2) * c * s, l1 * s * s + l2 * c * c],
        ];
        let step = rng.random_range(0.05..1.0) / l1.max(l2);
        let start = vec![rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)];
        let spec = DescentSpec { objective: Objective::Quadratic { matrix }, norm: Norm::L2, step, iterations: 500, start };
        let t = gradient_descent_trajectory(&spec).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(t.curve.tolerance() == 1e-7, "trajectory tolerance")?;
        let r = is_self_contracted(&t.curve).unwrap();
        ensure(r.verdict == Verdict::Pass, format!("trial {trial}: {:?}", r.witness))?;
    }
    Ok("100 trajectories of 501 points, all self-contracted at tolerance 1e-7".into())
}

fn stable_norm() -> Outcome {
    let standard = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
    let skew = vec![vec![1, 0], vec![-1, 0], vec![1, 1], vec![-1, -1]];
    let a = stable_norm_estimate(&standard, &[1, 1], 32, BFS_BUDGET).map_err(|e| e.to_string())?;
    ensure(a.estimate == 2.0 && a.bracket_width == 0.0, format!("standard: {} ± {}", a.estimate, a.bracket_width))?;
    let b = stable_norm_estimate(&skew, &[0, 1], 32, BFS_BUDGET).map_err(|e| e.to_string())?;
    ensure(b.estimate == 2.0, format!("skew: {}", b.estimate))?;
    for e in [&a, &b] {
        for (k, &f) in e.values.iter().enumerate() {
            let k = (k + 1) as f64;
            ensure(f as f64 - k * e.estimate <= e.two_c, "f(k) - k c exceeds 2C")?;
            ensure(k * e.estimate <= f as f64, "k c exceeds f(k)")?;
        }
        ensure(e.subadditive, "f is not subadditive")?;
    }
    Ok(format!("‖(1,1)‖ = {} (width {}), ‖(0,1)‖ = {}, 2C = {} / {}", a.estimate, a.bracket_width, b.estimate, a.two_c, b.two_c))
}

fn subsets(pool: &[usize], k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            let keep = go(pool, k, i + 1, cur, f);
            cur.pop();
            if !keep {
                return false;
            }
        }
        true
    }
    go(pool, k, 0, &mut Vec::new(), f)
}

fn tripod(legs: [f64; 3], pieces: usize) -> WeightedGraph {
    let mut labels = vec!["o".to_string()];
    let mut edges = Vec::new();
    for (leg, &len) in legs.iter().enumerate() {
        let mut prev = 0;
        for k in 1..=pieces {
            labels.push(format!("l{leg}_{k}"));
            let v = labels.len() - 1;
            edges.push((prev, v, len / pieces as f64));
            prev = v;
        }
    }
    WeightedGraph::new(labels, edges).unwrap()
}

fn transfer() -> Outcome {
    let mut configs: Vec<(String, WeightedGraph)> = Vec::new();
    for seq in [BroomSequence::Dyadic { n: 4 }, BroomSequence::Harmonic { n: 5 }, BroomSequence::Explicit { heights: vec![0.9, 0.5, 0.4, 0.1] }] {
        configs.push((format!("broom {seq:?}"), broom_tree(&seq).unwrap().graph().unwrap()));
    }
    configs.push(("tripod 1/1/1".into(), tripod([1.0, 1.0, 1.0], 3)));
    configs.push(("tripod 1/0.5/0.25".into(), tripod([1.0, 0.5, 0.25], 3)));
    configs.push(("laakso G2".into(), laakso_graph(2, 6).unwrap().into_graph()));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut checked, mut premise, mut exceptions) = (0usize, 0usize, Vec::new());
    for (name, graph) in configs {
        let geodesics = GeodesicSet::lexicographic(graph).unwrap();
        let n = geodesics.space().len();
        for p in 0..n {
            let others: Vec<usize> = (0..n).filter(|&v| v != p).collect();
            let pools: Vec<Vec<usize>> = if others.len() <= 12 {
                vec![others]
            } else {
                (0..3)
                    .map(|_| {
                        let mut pool = others.clone();
                        while pool.len() > 12 {
                            pool.remove(rng.random_range(0..pool.len()));
                        }
                        pool
                    })
                    .collect()
            };
            for pool in pools {
                for epsilon in [0.3, 0.7, 1.2, 1.5] {
                    let separated = max_angle_separated(geodesics.space(), p, epsilon, &pool, None).unwrap();
                    for l in 2..=4 {
                        checked += 1;
                        let all_pass = subsets(&pool, l, &mut |s| {
                            atb_star_check(&geodesics, p, epsilon, s).unwrap().verdict == Verdict::Pass
                        });
                        if all_pass {
                            premise += 1;
                            if separated.cardinality >= l {
                                exceptions.push(format!("{name}: p = {p}, ε = {epsilon}, L = {l}"));
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(exceptions.is_empty(), format!("{} exceptions, first {:?}", exceptions.len(), exceptions.first()))?;
    ensure(premise > 0, "no configuration satisfied the geodesic condition")?;
    Ok(format!("{checked} configurations, {premise} with every L-subset passing, 0 exceptions"))
}

fn doubling() -> Outcome {
    for (alpha, want) in [(1.0, 5), (0.5, 8), (0.6, 7)] {
        let t = doubling_threshold(alpha).map_err(|e| e.to_string())?;
        ensure(t.n_tilde == want, format!("Ñ({alpha}) = {}", t.n_tilde))?;
    }
    let radii: Vec<f64> = (-1..=12).map(|k| 0.5f64.powi(k)).collect();
    let mut constants = Vec::new();
    for n in [10, 20, 40] {
        let broom = broom_tree(&BroomSequence::Dyadic { n }).unwrap();
        let centers: Vec<usize> = (0..broom.space().len()).collect();
        let est = doubling_estimate(broom.space(), &centers, &radii).map_err(|e| e.to_string())?;
        ensure(est.verify(broom.space()), "cover does not cover")?;
        constants.push(est.constant);
    }
    ensure(constants.iter().all(|&c| c == DYADIC_BROOM_DOUBLING), format!("constants {constants:?}"))?;
    Ok(format!("Ñ = 5, 8, 7; dyadic broom constant {constants:?}"))
}

/// Greedy cover constant of the dyadic broom over radii 2, 1, …, 2^-12.
const DYADIC_BROOM_DOUBLING: usize = 5;

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("laakso points are SRA(3/5)", laakso_sra),
        ("snowflakes are SRA", snowflake_sra),
        ("SRA subsets satisfy the angle bound", angle_bound),
        ("broom tree", broom),
        ("Heisenberg axis", heisenberg),
        ("Ramsey chain", ramsey),
        ("angle transfer fuzz", angle_transfer),
        ("oracle agreement", oracles),
        ("gradient descent is self-contracted", descent),
        ("stable norm", stable_norm),
        ("geodesic to angular transfer", transfer),
        ("doubling threshold and broom constant", doubling),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
