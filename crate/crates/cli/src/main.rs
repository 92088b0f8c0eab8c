use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use seaweed_core::builder::build_M;
use seaweed_core::diagram::ArrowDiagram;
use seaweed_core::homology::{ext1_dim, hom_dim, is_indecomposable};
use seaweed_core::io;
use seaweed_core::seaweed::{Composition, Seaweed, SeaweedReport};
use seaweed_core::{Error, RationalMatrix, TypeAQuiver};

#[derive(Parser)]
#[command(name = "seaweed", version, about = "Richardson elements of seaweed subalgebras of gl_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Richardson element for a composition pair and verify it.
    Build(PairArgs),
    /// Check a matrix (or the constructed one) for the Richardson property.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        /// n lines of n space-separated integers
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Arrow diagram of a seaweed or of a quiver with a Δ-dimension vector.
    Diagram {
        #[command(flatten)]
        target: DiagramTarget,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every composition pair of n.
    Sweep {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        jobs: JobArgs,
        /// also sweep every smaller n
        #[arg(long)]
        cumulative: bool,
        /// largest n accepted
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare random nilradical elements against the constructed one.
    Oracle {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// random elements per composition pair
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// composition pairs to draw
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        jobs: JobArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build M(d) on a quiver, or analyse a representation given as JSON.
    ModuleOps {
        #[arg(long)]
        delta_dim: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        orientation: Option<String>,
        /// representation JSON to analyse instead of building
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PairArgs {
    /// upper flag steps, comma-separated
    #[arg(long)]
    a: String,
    /// lower flag steps, comma-separated
    #[arg(long)]
    b: String,
    /// expected n, checked against both compositions
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramTarget {
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    delta_dim: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    orientation: Option<String>,
}

#[derive(Args)]
struct JobArgs {
    /// worker threads
    #[arg(long, env = "SEAWEED_JOBS")]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Build(p) => cmd_build(&p),
        Command::Verify { pair, matrix } => cmd_verify(&pair, matrix),
        Command::Diagram { target, format, out } => cmd_diagram(&target, format, out),
        Command::Sweep {
            n,
            jobs,
            cumulative,
            bound,
            format,
            out,
        } => cmd_sweep(n, jobs.jobs, cumulative, bound, format, out),
        Command::Oracle {
            n,
            samples,
            pairs,
            seed,
            jobs,
            format,
            out,
        } => cmd_oracle(n, samples, pairs, seed, jobs.jobs, format, out),
        Command::ModuleOps {
            delta_dim,
            orientation,
            input,
            format,
            out,
        } => cmd_module_ops(delta_dim, orientation, input, format, out),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> Result<String, Failure> {
    Ok(io::canonical_json(v)?)
}

fn seaweed_from(a: &str, b: &str, n: Option<usize>) -> Result<Seaweed, Failure> {
    let a: Composition = a.parse()?;
    let b: Composition = b.parse()?;
    if let Some(n) = n {
        if a.n() != n || b.n() != n {
            return Err(Failure::Usage(format!("--n {n} does not match compositions of {} and {}", a.n(), b.n())));
        }
    }
    Ok(Seaweed::new(a, b)?)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_build(p: &PairArgs) -> CmdResult {
    let s = seaweed_from(&p.a, &p.b, p.n)?;
    let report = s.verify()?;
    let text = match p.format {
        Format::Json => io::report_to_json(&report)?,
        Format::Text => io::report_to_text(&report),
        Format::Dot => s.arrow_diagram()?.to_dot(),
    };
    emit(&p.out, &text)?;
    Ok(report.verified)
}

fn cmd_verify(p: &PairArgs, matrix: Option<PathBuf>) -> CmdResult {
    let s = seaweed_from(&p.a, &p.b, p.n)?;
    let x = match &matrix {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            io::parse_matrix_text(&text)?
        }
        None => s.richardson_matrix()?,
    };
    if x.len() != s.n() {
        return Err(Failure::Usage(format!("matrix is {0}x{0}, expected {1}x{1}", x.len(), s.n())));
    }
    let xm = RationalMatrix::from_i64_rows(&x);
    let (_, _, dim_n) = s.dims();
    let in_n = s.is_in_nilradical(&xm);
    let ad_rank = if in_n { Some(s.ad_rank(&xm)?) } else { None };
    let verified = ad_rank == Some(dim_n);
    let v = json!({
        "a": s.a.parts(),
        "b": s.b.parts(),
        "n": s.n(),
        "dim_n": dim_n,
        "in_nilradical": in_n,
        "ad_rank": ad_rank,
        "stabilizer_dim": s.stabilizer_dim(&xm)?,
        "verified": verified,
    });
    let text = match p.format {
        Format::Text => format!(
            "in_nilradical: {in_n}\nad_rank: {}\ndim_n: {dim_n}\nverified: {verified}\n",
            ad_rank.map_or("-".to_string(), |r| r.to_string())
        ),
        _ => json_text(&v)?,
    };
    emit(&p.out, &text)?;
    Ok(verified)
}

fn quiver_target(delta_dim: &Option<String>, orientation: &Option<String>) -> Result<(TypeAQuiver, Vec<usize>), Failure> {
    let (Some(d), Some(o)) = (delta_dim, orientation) else {
        return Err(Failure::Usage("--delta-dim and --orientation are required together".into()));
    };
    let q: TypeAQuiver = o.parse()?;
    let d = io::parse_delta_dim(d)?;
    if d.len() != q.vertex_count() {
        return Err(Error::Length {
            expected: q.vertex_count(),
            got: d.len(),
        }
        .into());
    }
    Ok((q, d))
}

fn diagram_text(q: &TypeAQuiver, supports: &[String], g: &ArrowDiagram) -> String {
    let mut s = format!("quiver: {q}\n");
    for (r, k) in supports.iter().enumerate() {
        s.push_str(&format!("row {r}: {k}\n"));
    }
    for (a, b) in &g.edges {
        s.push_str(&format!("{a} => {b}\n"));
    }
    s
}

fn cmd_diagram(t: &DiagramTarget, format: Format, out: Option<PathBuf>) -> CmdResult {
    let (q, d) = match (&t.a, &t.b) {
        (Some(a), Some(b)) => {
            let s = seaweed_from(a, b, None)?;
            (s.quiver().clone(), s.e())
        }
        (None, None) => quiver_target(&t.delta_dim, &t.orientation)?,
        _ => return Err(Failure::Usage("--a and --b must be given together".into())),
    };
    let m = build_M(&q, &d)?;
    let g = ArrowDiagram::from_decomposition(&m);
    let text = match format {
        Format::Dot => g.to_dot(),
        Format::Json => json_text(&json!({
            "orientation": q.orientation_string(),
            "delta_dim": d,
            "supports": m.supports(),
            "diagram": io::diagram_to_value(&g),
        }))?,
        Format::Text => {
            let supports: Vec<String> = m.supports().iter().map(ToString::to_string).collect();
            diagram_text(&q, &supports, &g)
        }
    };
    emit(&out, &text)?;
    Ok(true)
}

fn cmd_sweep(n: usize, jobs: Option<usize>, cumulative: bool, bound: usize, format: Format, out: Option<PathBuf>) -> CmdResult {
    if n == 0 || n > bound {
        return Err(Failure::Usage(format!("--n must lie in 1..={bound}")));
    }
    let pool = pool(jobs)?;
    let sizes: Vec<usize> = if cumulative { (1..=n).collect() } else { vec![n] };
    let mut per_n = Vec::new();
    let mut failures = Vec::new();
    let (mut total, mut passed) = (0usize, 0usize);
    for k in sizes {
        let comps = Composition::all(k);
        let pairs: Vec<(Composition, Composition)> = comps
            .iter()
            .flat_map(|a| comps.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        let results: Vec<Result<SeaweedReport, Error>> = pool.install(|| {
            pairs
                .par_iter()
                .map(|(a, b)| Seaweed::new(a.clone(), b.clone())?.verify())
                .collect()
        });
        let mut ok = 0;
        for ((a, b), r) in pairs.iter().zip(results) {
            match r {
                Ok(r) if r.verified => ok += 1,
                Ok(r) => failures.push(json!({"a": a, "b": b, "ad_rank": r.ad_rank, "dim_n": r.dim_n})),
                Err(e) => failures.push(json!({"a": a, "b": b, "error": e.to_string()})),
            }
        }
        total += pairs.len();
        passed += ok;
        per_n.push(json!({"n": k, "pairs": pairs.len(), "verified": ok}));
    }
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            for p in &per_n {
                s.push_str(&format!("n={} pairs={} verified={}\n", p["n"], p["pairs"], p["verified"]));
            }
            for f in &failures {
                s.push_str(&format!("FAIL {f}\n"));
            }
            s
        }
        _ => json_text(&json!({
            "n": n,
            "cumulative": cumulative,
            "pairs": total,
            "verified": passed,
            "failed": total - passed,
            "failures": failures,
            "per_n": per_n,
        }))?,
    };
    emit(&out, &text)?;
    Ok(failures.is_empty())
}

fn random_composition(rng: &mut ChaCha8Rng, n: usize) -> Composition {
    let mut parts = vec![1];
    for _ in 1..n {
        if rng.gen_bool(0.5) {
            parts.push(1);
        } else {
            *parts.last_mut().unwrap() += 1;
        }
    }
    Composition::new(parts).expect("positive parts")
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    n: usize,
    samples: usize,
    pairs: usize,
    seed: u64,
    jobs: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let pool = pool(jobs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<(Composition, Composition, u64)> = (0..pairs)
        .map(|_| {
            let a = random_composition(&mut rng, n);
            let b = random_composition(&mut rng, n);
            (a, b, rng.gen())
        })
        .collect();
    let results: Vec<Result<Value, Error>> = pool.install(|| {
        draws
            .par_iter()
            .map(|(a, b, sub)| {
                let s = Seaweed::new(a.clone(), b.clone())?;
                let report = s.verify()?;
                let mut r = ChaCha8Rng::seed_from_u64(*sub);
                let (mut max_rank, mut at_max, mut over) = (0, 0, 0);
                for _ in 0..samples {
                    let y = s.random_nilradical(&mut r, 9);
                    let k = s.ad_rank(&y)?;
                    max_rank = max_rank.max(k);
                    if k == report.dim_n {
                        at_max += 1;
                    }
                    if k > report.dim_n {
                        over += 1;
                    }
                }
                Ok(json!({
                    "a": a,
                    "b": b,
                    "dim_n": report.dim_n,
                    "constructed_rank": report.ad_rank,
                    "max_sample_rank": max_rank,
                    "samples_at_dim_n": at_max,
                    "violations": over + usize::from(!report.verified),
                }))
            })
            .collect()
    });
    let rows: Vec<Value> = results.into_iter().collect::<Result<_, _>>()?;
    let violations: u64 = rows.iter().map(|r| r["violations"].as_u64().unwrap_or(0)).sum();
    let text = match format {
        Format::Text => {
            let mut s = format!("n={n} pairs={pairs} samples={samples} seed={seed} violations={violations}\n");
            for r in &rows {
                s.push_str(&format!(
                    "a={} b={} dim_n={} constructed={} max_sample={}\n",
                    r["a"], r["b"], r["dim_n"], r["constructed_rank"], r["max_sample_rank"]
                ));
            }
            s
        }
        _ => json_text(&json!({
            "n": n,
            "pairs": pairs,
            "samples": samples,
            "seed": seed,
            "violations": violations,
            "results": rows,
        }))?,
    };
    emit(&out, &text)?;
    if violations > 0 {
        return Err(Failure::Verification(format!("{violations} oracle violations")));
    }
    Ok(true)
}

fn cmd_module_ops(
    delta_dim: Option<String>,
    orientation: Option<String>,
    input: Option<PathBuf>,
    format: Format,
    out: Option<PathBuf>,
) -> CmdResult {
    if let Some(path) = input {
        let text = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let m = io::representation_from_json(&text)?;
        let relations = m.check_relations();
        let filtered = relations && m.is_delta_filtered()?;
        let mut v = json!({
            "orientation": m.quiver().orientation_string(),
            "dims": m.dims(),
            "relations": relations,
            "delta_filtered": filtered,
            "r_alpha": m.is_r_alpha(),
        });
        if filtered {
            v["delta_dim"] = json!(m.delta_dim()?);
            v["ext1_self"] = json!(ext1_dim(&m, &m)?);
            v["hom_self"] = json!(hom_dim(&m, &m)?);
            v["indecomposable"] = json!(is_indecomposable(&m)?);
        }
        emit(&out, &json_text(&v)?)?;
        return Ok(true);
    }
    let (q, d) = quiver_target(&delta_dim, &orientation)?;
    let m = build_M(&q, &d)?;
    let text = match format {
        Format::Json => json_text(&io::decomposition_to_value(&m))?,
        Format::Dot => ArrowDiagram::from_decomposition(&m).to_dot(),
        Format::Text => {
            let mut s = format!("quiver: {q}\n");
            for (k, c) in m.multiplicities() {
                s.push_str(&format!("{k} x{c}\n"));
            }
            s
        }
    };
    emit(&out, &text)?;
    Ok(true)
}
