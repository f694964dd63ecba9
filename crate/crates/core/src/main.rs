use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::RngCore;
use serde::Serialize;

use pgsat::hypergraph::{
    check_uniform_intersecting, degree_claim, greedy_transversal, intersection_lemma, is_transversal,
    saturation_family, SetFamily,
};
use pgsat::report::{bounds_csv, fmt_sig12, sig12, BoundsRow, Method, ResultDocument, SampleStats};
use pgsat::saturation::{
    expected_unsaturated, greedy_construct, is_saturating, lunelli_sce_bound, minsat_bruteforce,
    monte_carlo_expectation, random_construct, sampling_probability, theorem_bound, trial_rng, unsaturated,
    StopRule, Variant,
};
use pgsat::subgeometry::{baer_subplane, three_subline_construction};
use pgsat::{PlaneError, PointSet, ProjectivePlane};

/// Saturating sets in finite projective planes.
#[derive(Parser)]
#[command(name = "pgsat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a saturating set and print the verified result.
    Construct(ConstructArgs),
    /// Tabulate lower bound, theorem bound and constructed sizes.
    Bounds(BoundsArgs),
    /// Check whether a point set saturates a plane.
    Verify(VerifyArgs),
    /// Monte Carlo estimate of the expected number of undetermined points.
    Mc(McArgs),
    /// Exact minimum saturating set by exhaustive search.
    Minsat(MinsatArgs),
    /// Saturation hypergraph of a random seed set and its greedy transversal.
    Hypergraph(HypergraphArgs),
    /// Generate or check plane files.
    #[command(subcommand)]
    Plane(PlaneCommand),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PlaneSource {
    /// Order of the canonical plane PG(2,q).
    #[arg(long)]
    q: Option<u64>,
    /// Plane file in PLANE v1 format.
    #[arg(long)]
    plane: Option<PathBuf>,
}

#[derive(Args)]
struct Format {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    source: PlaneSource,
    #[arg(long, default_value = "greedy")]
    method: Method,
    #[arg(long, default_value = "skew")]
    variant: Variant,
    #[arg(long, default_value = "benefit-floor")]
    stop_rule: StopRule,
    /// Required for the random method.
    #[arg(long)]
    seed: Option<u64>,
    /// Sampling probability for the random method.
    #[arg(long)]
    p: Option<f64>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct BoundsArgs {
    /// Comma-separated plane orders.
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
    /// Random runs per order for the random_mean_size column.
    #[arg(long, default_value_t = 0)]
    random_runs: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: PlaneSource,
    /// Point set file: ascending indices, one per line.
    #[arg(long)]
    points: PathBuf,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct McArgs {
    #[arg(long)]
    q: u64,
    /// Defaults to the sampling probability of the random construction.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct MinsatArgs {
    #[arg(long)]
    q: u64,
    /// Allow planes with more than 21 points.
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct HypergraphArgs {
    #[arg(long, required_unless_present = "family")]
    q: Option<u64>,
    #[arg(long, default_value_t = 4)]
    s0_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Analyse a FAMILY v1 file instead of a saturation family.
    #[arg(long, conflicts_with = "q")]
    family: Option<PathBuf>,
    /// Save the generated family in FAMILY v1 format.
    #[arg(long)]
    family_out: Option<PathBuf>,
    #[command(flatten)]
    format: Format,
}

#[derive(Subcommand)]
enum PlaneCommand {
    /// Write PG(2,q) in PLANE v1 format.
    Gen {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate the projective plane axioms of a PLANE v1 file.
    Check { file: PathBuf },
}

/// Exit status plus an error message; `code` 1 is a semantic failure, 2 bad input.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Bounds(a) => bounds(a),
        Command::Verify(a) => verify(a),
        Command::Mc(a) => mc(a),
        Command::Minsat(a) => minsat(a),
        Command::Hypergraph(a) => hypergraph(a),
        Command::Plane(c) => plane_cmd(c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(Failure::input)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn canonical(q: u64) -> Result<ProjectivePlane, Failure> {
    ProjectivePlane::pg2_of_order(q).map_err(Failure::input)
}

fn load_plane(source: &PlaneSource) -> Result<ProjectivePlane, Failure> {
    match (&source.q, &source.plane) {
        (Some(q), _) => canonical(*q),
        (None, Some(path)) => {
            let file = fs::File::open(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            ProjectivePlane::load(BufReader::new(file)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
        (None, None) => Err(Failure::input("one of --q or --plane is required")),
    }
}

fn construct(a: ConstructArgs) -> Outcome {
    let plane = load_plane(&a.source)?;
    let q = plane.order();
    if a.method != Method::Random && (a.seed.is_some() || a.p.is_some()) {
        return Err(Failure::input("--seed and --p only apply to --method random"));
    }
    let doc = match a.method {
        Method::Greedy => {
            let out = greedy_construct(&plane, a.variant, a.stop_rule).map_err(|e| Failure { code: 1, message: e.to_string() })?;
            let verified = is_saturating(&plane, &out.set);
            ResultDocument::new(q, Method::Greedy, &out.set, verified).with_greedy(a.variant, a.stop_rule, out.trace)
        }
        Method::Random => {
            let seed = a.seed.ok_or_else(|| Failure::input("--method random requires --seed"))?;
            let out = random_construct(&plane, seed, a.p).map_err(|e| match e {
                pgsat::SaturationError::NotSaturating(_) => Failure { code: 1, message: e.to_string() },
                _ => Failure::input(e),
            })?;
            let verified = is_saturating(&plane, &out.set);
            let stats = SampleStats { x: out.stats.sampled, y: out.stats.unsaturated };
            ResultDocument::new(q, Method::Random, &out.set, verified).with_random(seed, stats)
        }
        Method::Baer => {
            let emb = baer_subplane(&plane).map_err(Failure::input)?;
            let set = three_subline_construction(&emb);
            let verified = is_saturating(&plane, &set);
            ResultDocument::new(q, Method::Baer, &set, verified)
        }
    };
    let text = if a.format.csv {
        format!(
            "q,method,variant,stop_rule,seed,size,verified\n{},{},{},{},{},{},{}\n",
            doc.q,
            a.method,
            doc.variant.map(|v| v.to_string()).unwrap_or_default(),
            doc.stop_rule.clone().unwrap_or_default(),
            doc.seed.map(|s| s.to_string()).unwrap_or_default(),
            doc.size,
            doc.verified
        )
    } else {
        let mut s = doc.to_json();
        s.push('\n');
        s
    };
    emit(a.format.out.as_deref(), &text)?;
    Ok(if doc.verified { 0 } else { 1 })
}

fn bounds(a: BoundsArgs) -> Outcome {
    let mut rows = Vec::new();
    for &q in &a.q {
        let plane = canonical(q)?;
        let greedy = greedy_construct(&plane, Variant::Skew, StopRule::default())
            .map_err(|e| Failure { code: 1, message: e.to_string() })?;
        let random_mean_size = if a.random_runs > 0 {
            let mut total = 0usize;
            for run in 0..a.random_runs {
                let out = random_construct(&plane, a.seed.wrapping_add(run), None)
                    .map_err(|e| Failure { code: 1, message: e.to_string() })?;
                total += out.set.len();
            }
            Some(total as f64 / a.random_runs as f64)
        } else {
            None
        };
        rows.push(BoundsRow { q: plane.order(), greedy_size: greedy.set.len(), random_mean_size });
    }
    let text = if a.format.json {
        #[derive(Serialize)]
        struct Row {
            q: u32,
            lower_bound: f64,
            theorem_bound: u64,
            greedy_size: usize,
            random_mean_size: Option<f64>,
        }
        let rows: Vec<Row> = rows
            .iter()
            .map(|r| Row {
                q: r.q,
                lower_bound: sig12(lunelli_sce_bound(r.q)),
                theorem_bound: theorem_bound(r.q),
                greedy_size: r.greedy_size,
                random_mean_size: r.random_mean_size.map(sig12),
            })
            .collect();
        to_json(&rows)
    } else {
        bounds_csv(&rows)
    };
    emit(a.format.out.as_deref(), &text)?;
    Ok(0)
}

fn verify(a: VerifyArgs) -> Outcome {
    let plane = load_plane(&a.source)?;
    let text = fs::read_to_string(&a.points).map_err(|e| Failure::input(format!("{}: {e}", a.points.display())))?;
    let set = PointSet::parse(&text, plane.num_points()).map_err(|e| Failure::input(format!("{}: {e}", a.points.display())))?;
    let open = unsaturated(&plane, &set).to_vec();
    let verified = is_saturating(&plane, &set);
    let text = if a.format.json {
        #[derive(Serialize)]
        struct Verdict<'a> {
            q: u32,
            n: usize,
            size: usize,
            verified: bool,
            unsaturated: &'a [u32],
        }
        to_json(&Verdict { q: plane.order(), n: plane.num_points(), size: set.len(), verified, unsaturated: &open })
    } else if verified {
        "saturating\n".to_string()
    } else {
        let list: Vec<String> = open.iter().map(u32::to_string).collect();
        if set.len() < 2 {
            eprintln!("not saturating: fewer than two points");
        } else {
            eprintln!("not saturating: {} unsaturated point(s)", open.len());
        }
        format!("{}\n", list.join("\n"))
    };
    emit(a.format.out.as_deref(), &text)?;
    Ok(if verified { 0 } else { 1 })
}

fn mc(a: McArgs) -> Outcome {
    let plane = canonical(a.q)?;
    let q = plane.order();
    let p = a.p.unwrap_or_else(|| sampling_probability(q));
    if !(0.0..1.0).contains(&p) {
        return Err(Failure::input(format!("--p {p} outside [0, 1)")));
    }
    let (mean, se) = monte_carlo_expectation(&plane, p, a.trials, a.seed).map_err(Failure::input)?;
    let formula = expected_unsaturated(q, p).map_err(Failure::input)?;
    let within = (mean - formula).abs() <= 5.0 * se || mean == formula;
    let text = if a.format.json {
        #[derive(Serialize)]
        struct Mc {
            q: u32,
            p: f64,
            trials: u64,
            seed: u64,
            mean: f64,
            stderr: f64,
            formula: f64,
            within_5se: bool,
        }
        to_json(&Mc {
            q,
            p: sig12(p),
            trials: a.trials,
            seed: a.seed,
            mean: sig12(mean),
            stderr: sig12(se),
            formula: sig12(formula),
            within_5se: within,
        })
    } else if a.format.csv {
        format!(
            "q,p,trials,seed,mean,stderr,formula,within_5se\n{q},{},{},{},{},{},{},{within}\n",
            fmt_sig12(p),
            a.trials,
            a.seed,
            fmt_sig12(mean),
            fmt_sig12(se),
            fmt_sig12(formula)
        )
    } else {
        format!(
            "q={q} p={} trials={} seed={}\nmean={} stderr={}\nformula={} within_5se={within}\n",
            fmt_sig12(p),
            a.trials,
            a.seed,
            fmt_sig12(mean),
            fmt_sig12(se),
            fmt_sig12(formula)
        )
    };
    emit(a.format.out.as_deref(), &text)?;
    Ok(if within { 0 } else { 1 })
}

fn minsat(a: MinsatArgs) -> Outcome {
    let plane = canonical(a.q)?;
    let q = plane.order();
    let (size, witness) = minsat_bruteforce(&plane, a.allow_large).map_err(Failure::input)?;
    let lower = lunelli_sce_bound(q);
    let text = if a.format.json {
        #[derive(Serialize)]
        struct Minsat {
            q: u32,
            n: usize,
            minimum: usize,
            witness: Vec<u32>,
            lower_bound: f64,
            verified: bool,
        }
        to_json(&Minsat {
            q,
            n: plane.num_points(),
            minimum: size,
            witness: witness.to_vec(),
            lower_bound: sig12(lower),
            verified: is_saturating(&plane, &witness),
        })
    } else {
        let pts: Vec<String> = witness.iter().map(|p| p.to_string()).collect();
        format!(
            "q={q} minimum={size} lower_bound={}\nwitness: {}\n",
            fmt_sig12(lower),
            pts.join(" ")
        )
    };
    emit(a.format.out.as_deref(), &text)?;
    Ok(0)
}

/// `k` distinct points drawn with the seeded generator, in draw order.
fn random_seed_set(n: usize, k: usize, seed: u64) -> PointSet {
    let mut rng = trial_rng(seed, 0);
    let mut set = PointSet::empty(n);
    while set.len() < k {
        set.insert((rng.next_u64() % n as u64) as u32);
    }
    set
}

#[derive(Serialize)]
struct HypergraphReport {
    q: Option<u32>,
    seed: Option<u64>,
    s0: Vec<u32>,
    n: usize,
    m: usize,
    r: Option<usize>,
    t: Option<usize>,
    lemma_pairs: Option<usize>,
    lemma_holds: Option<bool>,
    transversal: Vec<u32>,
    transversal_size: usize,
    bound: Option<u64>,
    bound_holds: Option<bool>,
    first_pick_degree: Option<usize>,
    degree_claim: Option<usize>,
    degree_claim_holds: Option<bool>,
    completes_seed: Option<bool>,
}

fn hypergraph(a: HypergraphArgs) -> Outcome {
    let (family, seed_info) = match (&a.family, a.q) {
        (Some(path), _) => {
            let file = fs::File::open(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            let fam = SetFamily::load(BufReader::new(file)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            (fam, None)
        }
        (None, Some(q)) => {
            let plane = canonical(q)?;
            if a.s0_size < 2 || a.s0_size > plane.num_points() {
                return Err(Failure::input(format!("--s0-size must lie in 2..={}", plane.num_points())));
            }
            let s0 = random_seed_set(plane.num_points(), a.s0_size, a.seed);
            let fam = saturation_family(&plane, &s0).map_err(Failure::input)?;
            (fam, Some((plane, s0)))
        }
        (None, None) => return Err(Failure::input("one of --q or --family is required")),
    };
    if let Some(path) = &a.family_out {
        fs::write(path, family.to_file_string()).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }

    let profile = check_uniform_intersecting(&family);
    let mut report = HypergraphReport {
        q: seed_info.as_ref().map(|(p, _)| p.order()),
        seed: seed_info.as_ref().map(|_| a.seed),
        s0: seed_info.as_ref().map(|(_, s)| s.to_vec()).unwrap_or_default(),
        n: family.ground_size(),
        m: family.len(),
        r: profile.r,
        t: profile.t,
        lemma_pairs: None,
        lemma_holds: None,
        transversal: Vec::new(),
        transversal_size: 0,
        bound: None,
        bound_holds: None,
        first_pick_degree: None,
        degree_claim: None,
        degree_claim_holds: None,
        completes_seed: None,
    };
    if let Some((plane, s0)) = &seed_info {
        let check = intersection_lemma(plane, s0, &family, &profile);
        report.lemma_pairs = Some(check.pairs);
        report.lemma_holds = Some(check.holds());
    }
    if !family.is_empty() {
        let tr = greedy_transversal(&family).map_err(Failure::input)?;
        if !is_transversal(&family, &tr.vertices) {
            return Err(Failure { code: 1, message: "greedy output misses an edge".into() });
        }
        report.bound = tr.bound;
        report.bound_holds = tr.bound.map(|b| tr.size() as u64 <= b);
        report.first_pick_degree = tr.covered_counts.first().copied();
        if let (Some(r), Some(t)) = (profile.r, profile.t) {
            let claim = degree_claim(r, t, family.len()).map_err(Failure::input)?;
            report.degree_claim = Some(claim);
            report.degree_claim_holds = Some(tr.covered_counts[0] >= claim);
        }
        report.transversal_size = tr.size();
        report.transversal = tr.vertices;
    }
    if let Some((plane, s0)) = &seed_info {
        let mut full = s0.clone();
        for &v in &report.transversal {
            full.insert(v);
        }
        report.completes_seed = Some(is_saturating(plane, &full));
    }

    let failed = [report.lemma_holds, report.bound_holds, report.degree_claim_holds, report.completes_seed].contains(&Some(false));
    let text = if a.format.json {
        to_json(&report)
    } else {
        let show = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "none".into());
        let verdict = |v: Option<bool>| match v {
            Some(true) => "holds",
            Some(false) => "VIOLATED",
            None => "n/a",
        };
        let mut s = String::new();
        if let (Some(q), Some(seed)) = (report.q, report.seed) {
            let pts: Vec<String> = report.s0.iter().map(|p| p.to_string()).collect();
            s.push_str(&format!("q={q} s0-size={} seed={seed} s0: {}\n", report.s0.len(), pts.join(" ")));
        }
        s.push_str(&format!("n={} m={} r={} t={}\n", report.n, report.m, show(report.r), show(report.t)));
        if let Some(pairs) = report.lemma_pairs {
            s.push_str(&format!("intersection lemma: {} over {pairs} pairs\n", verdict(report.lemma_holds)));
        }
        s.push_str(&format!(
            "transversal size={} bound={} ({})\n",
            report.transversal_size,
            report.bound.map(|b| b.to_string()).unwrap_or_else(|| "none".into()),
            verdict(report.bound_holds)
        ));
        s.push_str(&format!(
            "first pick degree={} claim={} ({})\n",
            show(report.first_pick_degree),
            show(report.degree_claim),
            verdict(report.degree_claim_holds)
        ));
        if report.completes_seed.is_some() {
            s.push_str(&format!("s0 + transversal saturating: {}\n", verdict(report.completes_seed)));
        }
        s
    };
    emit(a.format.out.as_deref(), &text)?;
    Ok(if failed { 1 } else { 0 })
}

fn plane_cmd(c: PlaneCommand) -> Outcome {
    match c {
        PlaneCommand::Gen { q, out } => {
            let plane = canonical(q)?;
            emit(out.as_deref(), &plane.to_file_string())?;
            Ok(0)
        }
        PlaneCommand::Check { file } => {
            let f = fs::File::open(&file).map_err(|e| Failure::input(format!("{}: {e}", file.display())))?;
            match ProjectivePlane::load(BufReader::new(f)) {
                Ok(plane) => {
                    println!("ok: projective plane of order {}", plane.order());
                    Ok(0)
                }
                Err(e @ (PlaneError::Axiom(_) | PlaneError::LineCount { .. } | PlaneError::IndexOutOfRange { .. })) => {
                    println!("invalid: {e}");
                    Ok(1)
                }
                Err(e) => Err(Failure::input(format!("{}: {e}", file.display()))),
            }
        }
    }
}
