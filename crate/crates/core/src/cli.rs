//! Command-line front end. Reports go to standard output as JSON,
//! diagnostics to standard error.
//!
//! Exit codes: 0 pass, 1 violation or witness found, 2 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::atb::{atb_star_check, angle_transfer_fuzz, compute_beta, lrb_constant_estimate, max_angle_separated, LRB_GRID};
use crate::curves::{
    curve_length, extract_sra_from_curve, gradient_descent_trajectory, is_self_contracted, quasi_convexity_sample,
    DescentSpec, DiscreteCurve, Norm, NormedPoints, Objective,
};
use crate::error::{Error, Result};
use crate::graph::{GeodesicSet, GraphDocument, WeightedGraph};
use crate::metric::io::SpaceDocument;
use crate::metric::{comparison_angle, doubling_estimate, max_separated_subset, FiniteMetricSpace, Metric};
use crate::report::{InputDigest, Outcome, RunReport, SCHEMA_VERSION};
use crate::spaces::{
    broom_tree, cayley_ball, heisenberg_axis, laakso_graph, laakso_sra_points, normed_sample,
    normed_sample_coords, stable_norm_estimate, BroomSequence, BFS_BUDGET, LAAKSO_DEFAULT_CAP,
};
use crate::sra::{compute_sra_free_bound, doubling_threshold};
use crate::sra::{max_sra_subset_within, sra_angle_bound, verify_sra_set, SearchMode, SraParameter, Verdict, EXACT_SRA_CAP};

/// Laakso graphs with more vertices than this are emitted as the subspace
/// on the points `x_i` unless `--full` is given.
const LAAKSO_FULL_LIMIT: usize = 2000;

#[derive(Debug, Parser)]
#[command(name = "rough-angle", version, about = "Rough-angle and self-contracted-curve checks on finite metric spaces")]
pub struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the metric axioms.
    Validate(SpaceArgs),
    #[command(subcommand)]
    Sra(SraCommand),
    /// Comparison angle at z in the triangle (x, z, y).
    Angle {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        y: usize,
    },
    #[command(subcommand)]
    Atb(AtbCommand),
    /// The transfer constant β(ε).
    Beta {
        #[arg(long)]
        epsilon: f64,
    },
    #[command(subcommand)]
    Bound(BoundCommand),
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Record a gradient-descent trajectory and check it is self-contracted.
    Descend {
        /// Descent specification JSON (path or inline).
        spec: String,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Sampled quasi-convexity check along segments.
    Quasiconvex {
        /// Objective JSON (path or inline), e.g. '{"kind":"sine_first"}'.
        objective: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value = "l2")]
        norm: Norm,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1.0)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        hi: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Greedy ball-cover estimate of the doubling constant.
    Doubling {
        #[command(flatten)]
        space: SpaceArgs,
        /// Comma-separated radii.
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
        /// Ball centers: indices or a named point list (default: all points).
        #[arg(long)]
        centers: Option<String>,
    },
    /// Maximum r-separated subset.
    Separated {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Linear-divergence constant of lexicographic geodesics from a center.
    Lrb {
        /// Graph JSON.
        input: PathBuf,
        #[arg(long)]
        center: usize,
        #[arg(long)]
        horizon: f64,
        #[arg(long, default_value_t = LRB_GRID)]
        samples: usize,
    },
    #[command(subcommand)]
    Gen(GenCommand),
    /// Stable norm of a lattice element under a word metric.
    StableNorm {
        /// Generators as `a,b;c,d;...`.
        #[arg(long, allow_hyphen_values = true)]
        generators: String,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        element: Vec<i64>,
        #[arg(long, default_value_t = 32)]
        k_max: u32,
        #[arg(long, default_value_t = BFS_BUDGET)]
        budget: usize,
    },
    /// Randomized check of the angle-transfer inequality in R^dim.
    AngleTransfer {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct SpaceArgs {
    /// Space JSON, CSV, or graph JSON.
    input: PathBuf,
    /// Override the tolerance stored with the space.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum SraCommand {
    /// Verify SRA(α) on a subset (default: every point).
    Check {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        alpha: f64,
        /// Indices `0,3,5` or the name of a metadata point list.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Largest SRA(α) subset.
    Max {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        #[arg(long)]
        greedy: bool,
    },
}

#[derive(Debug, Subcommand)]
enum AtbCommand {
    /// Largest angle-separated candidate set around a center.
    Point {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        center: usize,
        #[arg(long)]
        epsilon: f64,
        /// Candidates (default: every other point).
        #[arg(long)]
        candidates: Option<String>,
        #[arg(long)]
        radius: Option<f64>,
        /// Report failure when at least this many points are separated.
        #[arg(long)]
        l: Option<usize>,
    },
    /// Geodesic check on one target configuration.
    Star {
        /// Graph JSON.
        input: PathBuf,
        #[arg(long)]
        center: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        targets: String,
    },
}

#[derive(Debug, Subcommand)]
enum BoundCommand {
    /// Size that forces an SRA-free space to break ATB with constant L.
    NOfL {
        #[arg(long)]
        l: u64,
    },
    /// Threshold Ñ with α(Ñ − 2) >= 3.
    Ntilde {
        #[arg(long)]
        alpha: f64,
    },
}

#[derive(Debug, Subcommand)]
enum CurveCommand {
    Check(CurveArgs),
    Length(CurveArgs),
    ExtractSra {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        size: usize,
    },
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// Curve JSON: `{"space": ..., "order": [...]}` or `{"coords": [...], "norm": "l2"}`.
    input: PathBuf,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    Laakso {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = LAAKSO_DEFAULT_CAP)]
        cap: u32,
        /// Record the designated SRA points x_1..x_n (and anchors y_i).
        #[arg(long)]
        sra_points: Option<u32>,
        /// Emit graph JSON instead of a distance matrix.
        #[arg(long)]
        graph: bool,
        /// Emit the full distance matrix even for large levels.
        #[arg(long)]
        full: bool,
    },
    Broom {
        #[arg(long, group = "sequence")]
        dyadic: Option<usize>,
        #[arg(long, group = "sequence")]
        harmonic: Option<usize>,
        #[arg(long, group = "sequence", value_delimiter = ',')]
        heights: Option<Vec<f64>>,
        #[arg(long)]
        graph: bool,
    },
    Heisenberg {
        /// Number of equal steps; the sample has steps + 1 points.
        #[arg(long)]
        steps: usize,
        #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.0, 1.0])]
        span: Vec<f64>,
    },
    Cayley {
        #[arg(long, allow_hyphen_values = true)]
        generators: String,
        #[arg(long)]
        radius: u32,
    },
    Sample {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        norm: Norm,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
}

struct Run {
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
}

impl Run {
    fn digest(&mut self, path: &Path) -> Result<()> {
        let d = InputDigest::of_file(path)?;
        if !self.inputs.contains(&d) {
            self.inputs.push(d);
        }
        Ok(())
    }
}

enum Output {
    Report(Outcome, Value),
    Document(Value),
}

fn report(outcome: Outcome, value: impl Serialize) -> Result<Output> {
    Ok(Output::Report(outcome, serde_json::to_value(value)?))
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn verdict_outcome(v: Verdict) -> Outcome {
    pass_if(v == Verdict::Pass)
}

/// Parses arguments, runs one subcommand and writes its output; returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    let mut ctx = Run { inputs: Vec::new(), seed: None };
    let written = execute(&cli.command, &mut ctx).and_then(|out| {
        let (text, code) = match out {
            Output::Report(verdict, result) => {
                let report = RunReport {
                    schema_version: SCHEMA_VERSION,
                    command,
                    inputs: ctx.inputs,
                    seed: ctx.seed,
                    verdict,
                    result,
                    elapsed_ms: started.elapsed().as_millis() as u64,
                };
                (serde_json::to_string_pretty(&report)?, verdict.exit_code())
            }
            Output::Document(doc) => (serde_json::to_string(&doc)?, 0),
        };
        match &cli.output {
            Some(path) => std::fs::write(path, text + "\n")?,
            None => writeln!(stdout, "{text}")?,
        }
        Ok(code)
    });
    match written {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn execute(command: &Command, ctx: &mut Run) -> Result<Output> {
    match command {
        Command::Validate(args) => {
            let space = load_space(args, ctx)?;
            let report = space.validate();
            let outcome = pass_if(report.passed());
            self::report(outcome, report)
        }
        Command::Sra(SraCommand::Check { space, alpha, subset }) => {
            let (space, doc) = load_space_with_metadata(space, ctx)?;
            let alpha = SraParameter::new(*alpha)?;
            let subset = resolve_points(subset.as_deref(), doc.as_ref(), space.len())?;
            let sra = verify_sra_set(&space, &subset, alpha)?;
            let angle = sra_angle_bound(&space, &subset, alpha)?;
            report(pass_if(sra.passed()), json!({ "sra": sra, "angle_bound": angle }))
        }
        Command::Sra(SraCommand::Max { space, alpha, subset, exact: _, greedy }) => {
            let (space, doc) = load_space_with_metadata(space, ctx)?;
            let alpha = SraParameter::new(*alpha)?;
            let pool = subset.as_deref().map(|s| resolve_points(Some(s), doc.as_ref(), space.len())).transpose()?;
            let mode = if *greedy { SearchMode::Greedy } else { SearchMode::Exact };
            let found = max_sra_subset_within(&space, pool.as_deref(), alpha, mode, EXACT_SRA_CAP)?;
            report(Outcome::Pass, json!({ "alpha": alpha.value(), "size": found.points.len(), "subset": found }))
        }
        Command::Angle { space, x, z, y } => {
            let space = load_space(space, ctx)?;
            let angle = comparison_angle(&space, *x, *z, *y)?;
            report(Outcome::Pass, json!({ "x": x, "z": z, "y": y, "angle": angle }))
        }
        Command::Atb(AtbCommand::Point { space, center, epsilon, candidates, radius, l }) => {
            let (space, doc) = load_space_with_metadata(space, ctx)?;
            let candidates = match candidates {
                Some(c) => resolve_points(Some(c), doc.as_ref(), space.len())?,
                None => (0..space.len()).filter(|&i| i != *center).collect(),
            };
            let witness = max_angle_separated(&space, *center, *epsilon, &candidates, *radius)?;
            let outcome = pass_if(l.is_none_or(|l| witness.satisfies_atb(l)));
            report(outcome, json!({ "l": l, "witness": witness }))
        }
        Command::Atb(AtbCommand::Star { input, center, epsilon, targets }) => {
            let (graph, doc) = load_graph(input, ctx)?;
            let targets = resolve_points(Some(targets), doc.metadata.as_ref(), graph.vertex_count())?;
            let geodesics = GeodesicSet::lexicographic(graph)?;
            let check = atb_star_check(&geodesics, *center, *epsilon, &targets)?;
            let outcome = verdict_outcome(check.verdict);
            report(outcome, json!({ "targets": targets, "check": check }))
        }
        Command::Beta { epsilon } => report(Outcome::Pass, json!({ "epsilon": epsilon, "beta": compute_beta(*epsilon)? })),
        Command::Bound(BoundCommand::NOfL { l }) => report(Outcome::Pass, compute_sra_free_bound(*l)?),
        Command::Bound(BoundCommand::Ntilde { alpha }) => report(Outcome::Pass, doubling_threshold(*alpha)?),
        Command::Curve(sub) => run_curve(sub, ctx),
        Command::Descend { spec, tolerance } => {
            let spec: DescentSpec = serde_json::from_str(&read_inline_or_file(spec, ctx)?)?;
            let trajectory = gradient_descent_trajectory(&spec)?;
            let mut curve = trajectory.curve;
            if let Some(t) = tolerance {
                curve = curve.with_tolerance(*t);
            }
            let check = is_self_contracted(&curve)?;
            let length = curve_length(&curve)?.polygonal_length;
            report(
                verdict_outcome(check.verdict),
                json!({
                    "stability_bound": trajectory.stability_bound,
                    "self_contracted": check,
                    "length": length,
                    "coords": curve.metric().coords(),
                }),
            )
        }
        Command::Quasiconvex { objective, dim, norm, lo, hi, trials, seed } => {
            ctx.seed = Some(*seed);
            let objective: Objective = serde_json::from_str(&read_inline_or_file(objective, ctx)?)?;
            let r = quasi_convexity_sample(&objective, *norm, *dim, (*lo, *hi), *trials, *seed)?;
            report(verdict_outcome(r.verdict), r)
        }
        Command::Doubling { space, radii, centers } => {
            let (space, doc) = load_space_with_metadata(space, ctx)?;
            let centers = match centers {
                Some(c) => resolve_points(Some(c), doc.as_ref(), space.len())?,
                None => (0..space.len()).collect(),
            };
            report(Outcome::Pass, doubling_estimate(&space, &centers, radii)?)
        }
        Command::Separated { space, radius, subset } => {
            let (space, doc) = load_space_with_metadata(space, ctx)?;
            let pool = subset.as_deref().map(|s| resolve_points(Some(s), doc.as_ref(), space.len())).transpose()?;
            report(Outcome::Pass, max_separated_subset(&space, *radius, pool.as_deref())?)
        }
        Command::Lrb { input, center, horizon, samples } => {
            let (graph, _) = load_graph(input, ctx)?;
            let geodesics = GeodesicSet::lexicographic(graph)?;
            report(Outcome::Pass, lrb_constant_estimate(&geodesics, *center, *horizon, *samples)?)
        }
        Command::Gen(sub) => run_gen(sub, ctx),
        Command::StableNorm { generators, element, k_max, budget } => {
            let generators = parse_generators(generators)?;
            report(Outcome::Pass, stable_norm_estimate(&generators, element, *k_max, *budget)?)
        }
        Command::AngleTransfer { dim, epsilon, trials, seed } => {
            ctx.seed = Some(*seed);
            let r = angle_transfer_fuzz(*dim, *epsilon, *trials, *seed)?;
            report(pass_if(r.violations == 0), r)
        }
    }
}

fn run_curve(command: &CurveCommand, ctx: &mut Run) -> Result<Output> {
    let args = match command {
        CurveCommand::Check(a) | CurveCommand::Length(a) => a,
        CurveCommand::ExtractSra { curve, .. } => curve,
    };
    let mut curve = load_curve(&args.input, ctx)?;
    if let Some(t) = args.tolerance {
        curve = curve.with_tolerance(t);
    }
    match command {
        CurveCommand::Check(_) => {
            let r = is_self_contracted(&curve)?;
            report(verdict_outcome(r.verdict), r)
        }
        CurveCommand::Length(_) => report(Outcome::Pass, curve_length(&curve)?),
        CurveCommand::ExtractSra { alpha, size, .. } => {
            let found = extract_sra_from_curve(&curve, *alpha, *size)?;
            let outcome = pass_if(found.is_some());
            report(outcome, json!({ "alpha": alpha, "size": size, "parameters": found }))
        }
    }
}

fn run_gen(command: &GenCommand, _ctx: &mut Run) -> Result<Output> {
    match command {
        GenCommand::Laakso { level, cap, sra_points, graph, full } => {
            let laakso = laakso_graph(*level, *cap)?;
            let points = sra_points.map(|n| laakso_sra_points(&laakso, n)).transpose()?;
            let mut meta = json!({
                "generator": "laakso",
                "level": level,
                "vertices": laakso.graph().vertex_count(),
                "edges": laakso.graph().edge_count(),
                "root": laakso.root(),
            });
            if *graph {
                if let Some(p) = &points {
                    meta["points"] = json!({ "X": p.x, "y": p.y });
                }
                return document(&GraphDocument::from_graph(laakso.graph(), Some(meta)));
            }
            let large = laakso.graph().vertex_count() > LAAKSO_FULL_LIMIT && !full;
            let space = match (&points, large) {
                (Some(p), true) => {
                    meta["subspace_of_vertices"] = json!(p.x);
                    meta["anchor_vertices"] = json!(p.y);
                    meta["points"] = json!({ "X": (0..p.x.len()).collect::<Vec<_>>() });
                    laakso.graph().subspace(&p.x, 1e-12)?
                }
                (None, true) => {
                    return Err(Error::Parameter(format!(
                        "level {level} has {} vertices; pass --sra-points, --graph or --full",
                        laakso.graph().vertex_count()
                    )))
                }
                (_, false) => {
                    if let Some(p) = &points {
                        meta["points"] = json!({ "X": p.x, "y": p.y });
                    }
                    laakso.graph().to_space(1e-12)?
                }
            };
            document(&SpaceDocument::from_space(&space, Some(meta)))
        }
        GenCommand::Broom { dyadic, harmonic, heights, graph } => {
            let sequence = match (dyadic, harmonic, heights) {
                (Some(n), _, _) => BroomSequence::Dyadic { n: *n },
                (_, Some(n), _) => BroomSequence::Harmonic { n: *n },
                (_, _, Some(h)) => BroomSequence::Explicit { heights: h.clone() },
                _ => return Err(Error::Parameter("one of --dyadic, --harmonic, --heights is required".into())),
            };
            let broom = broom_tree(&sequence)?;
            let meta = json!({
                "generator": "broom",
                "sequence": sequence,
                "heights": broom.heights(),
                "points": {
                    "root": [broom.root()],
                    "branch": (1..=broom.branch_count()).map(|i| broom.branch_point(i)).collect::<Vec<_>>(),
                    "tips": broom.tips(),
                },
            });
            if *graph {
                return document(&GraphDocument::from_graph(&broom.graph()?, Some(meta)));
            }
            document(&SpaceDocument::from_space(broom.space(), Some(meta)))
        }
        GenCommand::Heisenberg { steps, span } => {
            let axis = heisenberg_axis(*steps, (span[0], span[1]))?;
            let heights: Vec<f64> = (0..axis.len()).map(|i| axis.height(i)).collect();
            let meta = json!({ "generator": "heisenberg_axis", "steps": steps, "span": span, "heights": heights });
            document(&SpaceDocument::from_space(&axis.to_space()?, Some(meta)))
        }
        GenCommand::Cayley { generators, radius } => {
            let generators = parse_generators(generators)?;
            let ball = cayley_ball(&generators, *radius)?;
            let elements = ball.elements();
            let (vertices, index): (Vec<Value>, std::collections::HashMap<Vec<i64>, usize>) = (
                elements.iter().map(|(g, _)| json!(g)).collect(),
                elements.iter().enumerate().map(|(i, (g, _))| (g.clone(), i)).collect(),
            );
            let mut edges = Vec::new();
            for (i, (g, _)) in elements.iter().enumerate() {
                for s in &generators {
                    let h: Vec<i64> = g.iter().zip(s).map(|(a, b)| a + b).collect();
                    if let Some(&j) = index.get(&h) {
                        if i < j {
                            edges.push((i, j, 1.0));
                        }
                    }
                }
            }
            let meta = json!({
                "generator": "cayley",
                "generators": generators,
                "radius": radius,
                "word_length": elements.iter().map(|e| e.1).collect::<Vec<_>>(),
                "points": { "identity": [0] },
            });
            document(&GraphDocument { vertices, edges, metadata: Some(meta) })
        }
        GenCommand::Sample { dim, norm, count, seed } => {
            let space = normed_sample(*dim, *norm, *count, *seed)?;
            let coords = normed_sample_coords(*dim, *count, *seed)?;
            let meta = json!({ "generator": "sample", "norm": norm, "seed": seed, "coords": coords });
            document(&SpaceDocument::from_space(&space, Some(meta)))
        }
    }
}

fn document(doc: &impl Serialize) -> Result<Output> {
    Ok(Output::Document(serde_json::to_value(doc)?))
}

fn read_inline_or_file(arg: &str, ctx: &mut Run) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    let path = Path::new(arg);
    ctx.digest(path)?;
    Ok(std::fs::read_to_string(path)?)
}

fn parse_generators(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|g| {
            g.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|e| Error::Malformed(format!("generator entry {c:?}: {e}"))))
                .collect()
        })
        .collect()
}

/// `0,3,5` or a named list from `metadata.points`.
fn resolve_points(spec: Option<&str>, metadata: Option<&Value>, len: usize) -> Result<Vec<usize>> {
    let Some(spec) = spec else { return Ok((0..len).collect()) };
    let looks_numeric = spec.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace());
    let points: Vec<usize> = if looks_numeric {
        spec.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse().map_err(|e| Error::Malformed(format!("point index {s:?}: {e}"))))
            .collect::<Result<_>>()?
    } else {
        metadata
            .and_then(|m| m.get("points"))
            .and_then(|p| p.get(spec))
            .and_then(|v| serde_json::from_value(v.clone()).ok())
            .ok_or_else(|| Error::Malformed(format!("no point list named {spec:?} in the input metadata")))?
    };
    for &p in &points {
        if p >= len {
            return Err(Error::OutOfRange { index: p, len });
        }
    }
    Ok(points)
}

fn load_space(args: &SpaceArgs, ctx: &mut Run) -> Result<FiniteMetricSpace> {
    Ok(load_space_with_metadata(args, ctx)?.0)
}

fn load_space_with_metadata(args: &SpaceArgs, ctx: &mut Run) -> Result<(FiniteMetricSpace, Option<Value>)> {
    let (space, meta) = read_space(&args.input, ctx)?;
    let space = match args.tolerance {
        Some(t) => space.with_tolerance(t),
        None => space,
    };
    Ok((space, meta))
}

/// Space JSON, graph JSON (realized by shortest paths) or CSV.
fn read_space(path: &Path, ctx: &mut Run) -> Result<(FiniteMetricSpace, Option<Value>)> {
    ctx.digest(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        let doc = SpaceDocument::read(path)?;
        return Ok((doc.to_space()?, doc.metadata));
    }
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    space_from_value(value)
}

fn space_from_value(value: Value) -> Result<(FiniteMetricSpace, Option<Value>)> {
    if value.get("edges").is_some() {
        let doc: GraphDocument = serde_json::from_value(value)?;
        let space = doc.to_graph()?.to_space(crate::metric::DEFAULT_TOLERANCE)?;
        Ok((space, doc.metadata))
    } else {
        let doc: SpaceDocument = serde_json::from_value(value)?;
        Ok((doc.to_space()?, doc.metadata))
    }
}

fn load_graph(path: &Path, ctx: &mut Run) -> Result<(WeightedGraph, GraphDocument)> {
    ctx.digest(path)?;
    let doc: GraphDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok((doc.to_graph()?, doc))
}

/// Curve points live either in a finite space (by reference or inline) or
/// as coordinates with a norm.
enum CurveMetric {
    Space(FiniteMetricSpace),
    Normed(NormedPoints),
}

impl Metric for CurveMetric {
    fn len(&self) -> usize {
        match self {
            CurveMetric::Space(s) => s.len(),
            CurveMetric::Normed(p) => p.len(),
        }
    }

    fn dist(&self, i: usize, j: usize) -> f64 {
        match self {
            CurveMetric::Space(s) => s.dist(i, j),
            CurveMetric::Normed(p) => p.dist(i, j),
        }
    }

    fn tolerance(&self) -> f64 {
        match self {
            CurveMetric::Space(s) => s.tolerance(),
            CurveMetric::Normed(p) => p.tolerance(),
        }
    }
}

fn load_curve(path: &Path, ctx: &mut Run) -> Result<DiscreteCurve<CurveMetric>> {
    ctx.digest(path)?;
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let order: Option<Vec<usize>> = value.get("order").map(|o| serde_json::from_value(o.clone())).transpose()?;
    let metric = if let Some(coords) = value.get("coords") {
        let coords: Vec<Vec<f64>> = serde_json::from_value(coords.clone())?;
        let norm: Norm = match value.get("norm") {
            Some(n) => serde_json::from_value(n.clone())?,
            None => Norm::L2,
        };
        CurveMetric::Normed(NormedPoints::new(coords, norm)?)
    } else {
        let space = match value.get("space") {
            Some(Value::String(file)) => {
                let referenced = path.parent().unwrap_or(Path::new(".")).join(file);
                read_space(&referenced, ctx)?.0
            }
            Some(inline @ Value::Object(_)) => space_from_value(inline.clone())?.0,
            _ => return Err(Error::Malformed("curve needs \"coords\" or \"space\"".into())),
        };
        CurveMetric::Space(space)
    };
    match order {
        Some(order) => DiscreteCurve::new(metric, order),
        None => Ok(DiscreteCurve::through_all(metric)),
    }
}
