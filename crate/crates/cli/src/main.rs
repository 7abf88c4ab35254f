use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use cftype::cf::{canonical_form, convergents, expand_rational, parse_ratio};
use cftype::metrics::{
    best_approx_denominators, check_kn_nest, default_window, estimate_type, tau_defs_report,
    theta_sequence, Enclosure, EstimateReport,
};
use cftype::moebius::apply_homographic;
use cftype::reductions::{wadge_f, PrefixStream, ScheduleConfig, DEFAULT_JMAX};
use cftype::trail::{
    build_prescribed_type_trail, quotients_to_trail, trail_to_quotients, CertificateFile,
    RationalTarget, Trail, TrailFile, Vertex,
};
use cftype::{BigRational, Expansion, Moebius, DEFAULT_DIGIT_BUDGET};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(
    name = "cftype",
    version,
    about = "Continued-fraction types: construction, estimation and checks"
)]
struct Cli {
    /// Abort before any integer exceeds this many decimal digits.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGIT_BUDGET)]
    digit_budget: u64,

    /// Worker threads for commands that take several inputs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Build a trail of prescribed type and the expansion it encodes.
    Construct {
        /// Target type, "p/q" or "inf".
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Start vertex "x,y".
        #[arg(long, default_value = "1,2")]
        start: String,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Windowed type estimate and theta series.
    Estimate {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 30)]
        horizon: usize,
        /// Defaults to ceil(horizon / 2).
        #[arg(long)]
        window: Option<usize>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Apply a Moebius matrix "[[a,b],[c,d]]" (integers or "p/q").
    Transform {
        input: PathBuf,
        #[arg(long)]
        matrix: String,
        /// Output quotients to compute, counting a0.
        #[arg(long, default_value_t = 20)]
        out_len: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Map a positive sequence to a trail through the dyadic schedule.
    Reduce {
        /// Stream JSON (inline or a path), or "constant:C" / "identity:OFFSET".
        #[arg(long)]
        beta: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_JMAX)]
        jmax: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run an invariant suite; exits 1 on any failure.
    Verify {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 40)]
        horizon: usize,
        /// Largest denominator for best-approx.
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Convergents h_n, k_n as CSV.
    Convergents {
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        horizon: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Compare the approximation-based definitions of the type at threshold t.
    TauReport {
        input: PathBuf,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, default_value_t = 20)]
        horizon: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Pseudo-random test expansion.
    RandomExpansion {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        len: usize,
        #[arg(long, default_value_t = 1000)]
        max_quotient: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Suite {
    KnNest,
    BestApprox,
    RoundTrips,
}

#[derive(Debug)]
struct VerificationFailed(usize);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {} check(s)", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

#[derive(Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct ExperimentRecord {
    command: String,
    parameters: Value,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    certificates: Vec<CertificateFile>,
    wall_time_ms: f64,
}

#[derive(Default)]
struct Outputs {
    inputs: Vec<PathBuf>,
    written: Vec<PathBuf>,
    certificates: Vec<CertificateFile>,
    failures: usize,
}

impl Outputs {
    fn write(&mut self, path: PathBuf, text: &str) -> anyhow::Result<()> {
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
        self.written.push(path);
        Ok(())
    }
}

fn digest(path: &Path) -> anyhow::Result<FileDigest> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(FileDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

fn read_expansion(path: &Path) -> anyhow::Result<Expansion> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Expansion::from_json(&text)?)
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into())
}

fn parse_vertex(s: &str) -> anyhow::Result<Vertex> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("vertex {s:?} must be \"x,y\""))?;
    Ok(Vertex::new(x.trim().parse()?, y.trim().parse()?)?)
}

fn parse_matrix(s: &str) -> anyhow::Result<Moebius> {
    let v: Value = serde_json::from_str(s).context("matrix must be JSON [[a,b],[c,d]]")?;
    let entry = |v: &Value| -> anyhow::Result<BigRational> {
        match v {
            Value::Number(n) => Ok(parse_ratio(&n.to_string())?),
            Value::String(s) => Ok(parse_ratio(s)?),
            other => bail!("bad matrix entry {other}"),
        }
    };
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| anyhow!("matrix must have two rows"))?;
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let row = row
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| anyhow!("rows must have two entries"))?;
        for x in row {
            e.push(entry(x)?);
        }
    }
    Ok(Moebius::from_rationals(&e[0], &e[1], &e[2], &e[3])?)
}

fn parse_beta(s: &str) -> anyhow::Result<PrefixStream> {
    if let Some(c) = s.strip_prefix("constant:") {
        return Ok(PrefixStream::constant(c.trim().parse()?));
    }
    if let Some(o) = s.strip_prefix("identity:") {
        return Ok(PrefixStream::identity(o.trim().parse()?));
    }
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        fs::read_to_string(s).with_context(|| format!("reading {s}"))?
    };
    Ok(PrefixStream::from_json(&text)?)
}

fn trail_json(trail: &Trail, t: Option<String>, jmax: Option<u64>) -> String {
    let mut file: TrailFile = trail.to_file();
    file.t = t;
    file.jmax = jmax;
    pretty(&file)
}

fn verify_one(
    pq: &Expansion,
    suite: Suite,
    horizon: usize,
    bound: u64,
) -> anyhow::Result<Vec<String>> {
    let mut failures = Vec::new();
    match suite {
        Suite::KnNest => {
            for n in 2..=horizon {
                if !check_kn_nest(pq, n)? {
                    failures.push(format!("kn-nest fails at n = {n}"));
                }
            }
        }
        Suite::BestApprox => {
            let ks = best_approx_denominators(pq, bound)?;
            let mut enc = Enclosure::new(pq)?;
            let tiny = BigRational::new(
                BigInt::from(1),
                BigInt::from(bound) * BigInt::from(bound) * 64,
            );
            enc.refine_below(&tiny)?;
            let mut n = 1;
            let mut c = convergents(pq, n)?;
            while c.k[n] <= BigInt::from(bound) {
                n += 1;
                c = convergents(pq, n)?;
            }
            for k in ks {
                let (h, _) = enc
                    .nearest_int(&BigInt::from(k))
                    .ok_or_else(|| anyhow!("enclosure too wide"))?;
                let r = BigRational::new(h, BigInt::from(k));
                let hit = (0..=n).any(|i| r == BigRational::new(c.h[i].clone(), c.k[i].clone()));
                if !hit {
                    failures.push(format!("k = {k}: {r} is not a convergent"));
                }
            }
        }
        Suite::RoundTrips => {
            let n = horizon.max(3);
            let q = pq.take(n + 1)?;
            if Expansion::from_json(&pq.to_json())?.take(n + 1)? != q {
                failures.push("json round trip".into());
            }
            let c = convergents(pq, n)?;
            for i in 1..=n {
                let back = expand_rational(c.h[i].clone(), c.k[i].clone())?;
                let (a0, tail) = canonical_form(q[0].clone(), &q[1..=i])?;
                if back.a0() != &a0 || back.take(tail.len() + 1)?[1..] != tail[..] {
                    failures.push(format!("euclid round trip at n = {i}"));
                }
            }
            let trail = quotients_to_trail(pq, n - 1)?;
            let labels: Vec<BigInt> = trail
                .steps
                .iter()
                .map(|s| BigInt::from(s.label.clone()))
                .collect();
            let back = trail_to_quotients(&trail)?;
            let len = back.prefix_len() + 1;
            if !trail.edges_valid()
                || back.take(len)?[len - labels.len()..] != labels[..]
                || q[3..] != labels[..]
            {
                failures.push("trail round trip".into());
            }
            let g = Moebius::from_i64(2, 1, 1, 1)?;
            let img = apply_homographic(&g, pq, 1)?;
            match apply_homographic(&g.adjugate(), &img, n - 1) {
                Ok(back) if back.take(n - 1)? == q[..n - 1] => {}
                Ok(_) => failures.push("homographic round trip".into()),
                Err(e) => failures.push(format!("homographic round trip: {e}")),
            }
        }
    }
    Ok(failures)
}

fn run(cli: &Cli, out: &mut Outputs) -> anyhow::Result<()> {
    let budget = cli.digit_budget;
    match &cli.command {
        Command::Construct {
            target,
            steps,
            start,
            out: dir,
        } => {
            let t = RationalTarget::parse(target)?;
            let trail = build_prescribed_type_trail(&parse_vertex(start)?, &t, *steps, budget)?;
            if !trail.certificates_hold()? {
                return Err(VerificationFailed(1).into());
            }
            let pq = trail_to_quotients(&trail)?;
            fs::create_dir_all(dir)?;
            out.write(
                dir.join("trail.json"),
                &trail_json(&trail, Some(t.to_string()), None),
            )?;
            out.write(dir.join("expansion.json"), &pq.to_json())?;
            out.certificates = trail.to_file().certificates;
        }
        Command::Estimate {
            inputs,
            horizon,
            window,
            out: dir,
        } => {
            let w = window.unwrap_or_else(|| default_window(*horizon));
            let results: Vec<anyhow::Result<(String, String)>> = inputs
                .par_iter()
                .map(|p| {
                    let pq = read_expansion(p)?;
                    let est = estimate_type(&pq, *horizon, w)?;
                    let c = convergents(&pq, horizon + 1)?;
                    let csv = theta_sequence(&c, 2)?.to_csv();
                    Ok((pretty(&EstimateReport::from(&est)), csv))
                })
                .collect();
            fs::create_dir_all(dir)?;
            for (p, r) in inputs.iter().zip(results) {
                let (report, csv) = r.with_context(|| p.display().to_string())?;
                out.inputs.push(p.clone());
                out.write(dir.join(format!("{}.estimate.json", stem(p))), &report)?;
                out.write(dir.join(format!("{}.theta.csv", stem(p))), &csv)?;
            }
        }
        Command::Transform {
            input,
            matrix,
            out_len,
            out: dir,
        } => {
            out.inputs.push(input.clone());
            let pq = read_expansion(input)?;
            let g = parse_matrix(matrix)?;
            let img = apply_homographic(&g, &pq, *out_len)?;
            let text = if g.is_scalar() {
                img.to_json()
            } else {
                let q = img.take(*out_len)?;
                Expansion::new(q[0].clone(), q[1..].to_vec())?.to_json()
            };
            fs::create_dir_all(dir)?;
            out.write(dir.join("expansion.json"), &text)?;
        }
        Command::Reduce {
            beta,
            target,
            steps,
            jmax,
            out: dir,
        } => {
            let t = parse_ratio(target)?;
            let sched = ScheduleConfig::new(t.clone(), *jmax)?;
            let w = wadge_f(&parse_beta(beta)?, &sched, *steps, budget)?;
            if !w.trail.certificates_hold()? {
                return Err(VerificationFailed(1).into());
            }
            let t = RationalTarget::finite(t)?.to_string();
            fs::create_dir_all(dir)?;
            out.write(
                dir.join("trail.json"),
                &trail_json(&w.trail, Some(t), Some(*jmax as u64)),
            )?;
            out.write(
                dir.join("expansion.json"),
                &trail_to_quotients(&w.trail)?.to_json(),
            )?;
            out.certificates = w.trail.to_file().certificates;
        }
        Command::Verify {
            inputs,
            suite,
            horizon,
            bound,
            out: dir,
        } => {
            let results: Vec<anyhow::Result<Vec<String>>> = inputs
                .par_iter()
                .map(|p| verify_one(&read_expansion(p)?, *suite, *horizon, *bound))
                .collect();
            let mut report = Vec::new();
            for (p, r) in inputs.iter().zip(results) {
                let failures = r.with_context(|| p.display().to_string())?;
                let status = if failures.is_empty() { "PASS" } else { "FAIL" };
                let name = suite
                    .to_possible_value()
                    .map(|v| v.get_name().to_string())
                    .unwrap_or_default();
                println!("[{status}] {} {name}", p.display());
                out.failures += failures.len();
                out.inputs.push(p.clone());
                report.push(json!({
                    "input": p.display().to_string(),
                    "pass": failures.is_empty(),
                    "failures": failures,
                }));
            }
            fs::create_dir_all(dir)?;
            let report =
                json!({ "suite": suite, "horizon": horizon, "bound": bound, "results": report });
            out.write(dir.join("verify.json"), &pretty(&report))?;
        }
        Command::Convergents {
            input,
            horizon,
            out: dir,
        } => {
            out.inputs.push(input.clone());
            let c = convergents(&read_expansion(input)?, *horizon)?;
            fs::create_dir_all(dir)?;
            out.write(dir.join("convergents.csv"), &c.to_csv())?;
        }
        Command::TauReport {
            input,
            t,
            bound,
            horizon,
            out: dir,
        } => {
            out.inputs.push(input.clone());
            let rep = tau_defs_report(&read_expansion(input)?, &parse_ratio(t)?, *bound, *horizon)?;
            fs::create_dir_all(dir)?;
            out.write(dir.join("tau.json"), &pretty(&rep))?;
        }
        Command::RandomExpansion {
            seed,
            len,
            max_quotient,
            out: dir,
        } => {
            if *max_quotient == 0 {
                bail!(cftype::Error::InvalidArgument(
                    "max quotient must be positive".into()
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let a0: i64 = rng.gen_range(-2..3);
            let q = (0..*len)
                .map(|_| {
                    // mostly small quotients with an occasional large one
                    let cap = if rng.gen_ratio(1, 10) {
                        *max_quotient
                    } else {
                        (*max_quotient).min(5)
                    };
                    BigInt::from(rng.gen_range(1..=cap))
                })
                .collect();
            let pq = Expansion::new(BigInt::from(a0), q)?;
            fs::create_dir_all(dir)?;
            out.write(dir.join("expansion.json"), &pq.to_json())?;
        }
    }
    if out.failures > 0 {
        return Err(VerificationFailed(out.failures).into());
    }
    Ok(())
}

fn out_dir(cmd: &Command) -> &Path {
    match cmd {
        Command::Construct { out, .. }
        | Command::Estimate { out, .. }
        | Command::Transform { out, .. }
        | Command::Reduce { out, .. }
        | Command::Verify { out, .. }
        | Command::Convergents { out, .. }
        | Command::TauReport { out, .. }
        | Command::RandomExpansion { out, .. } => out,
    }
}

fn write_record(cli: &Cli, out: &Outputs, started: Instant) -> anyhow::Result<()> {
    let params = serde_json::to_value(&cli.command)?;
    let (command, mut parameters) = match params {
        Value::Object(m) => m
            .into_iter()
            .next()
            .ok_or_else(|| anyhow!("empty command"))?,
        other => (other.as_str().unwrap_or_default().to_string(), json!({})),
    };
    if let Value::Object(m) = &mut parameters {
        m.insert("digit_budget".into(), json!(cli.digit_budget));
        m.insert("jobs".into(), json!(cli.jobs));
    }
    let record = ExperimentRecord {
        command,
        parameters,
        inputs: out
            .inputs
            .iter()
            .map(|p| digest(p))
            .collect::<anyhow::Result<_>>()?,
        outputs: out
            .written
            .iter()
            .map(|p| digest(p))
            .collect::<anyhow::Result<_>>()?,
        certificates: out.certificates.clone(),
        wall_time_ms: started.elapsed().as_secs_f64() * 1000.0,
    };
    let path = out_dir(&cli.command).join("record.json");
    fs::write(&path, pretty(&record)).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<cftype::Error>() {
        Some(cftype::Error::ResourceLimit { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let mut out = Outputs::default();
    let result = run(&cli, &mut out);
    if out_dir(&cli.command).is_dir() {
        if let Err(e) = write_record(&cli, &out, started) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
