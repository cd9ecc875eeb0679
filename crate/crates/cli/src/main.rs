use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tourprof_core::bounds::{curve_dataset, sig12, Figure};
use tourprof_core::flags::{
    enumerate_flags, enumerate_types, lemma1_certificate, lift_certificate, moment_consistency_check,
    search_certificate, verify_certificate, Certificate, ProductTable,
};
use tourprof_core::profiles::{moments, profile3, profile4, sample_profile4, x_cdf};
use tourprof_core::search::{boundary_scan, AnnealParams, ScanRow, DEFAULT_SCAN_GRID};
use tourprof_core::tournament::{
    blowup, cyclic, flip_perturb, interval, mix, random_tournament, transitive, write_trn, BlowupSpec, MixSpec,
    WeightVector,
};
use tourprof_core::Tournament;

mod source;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest order for which `profile` always counts exactly.
const EXACT_PROFILE_MAX_N: usize = 2000;

/// A command line that parsed but asks for something inconsistent.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser)]
#[command(name = "tourprof", version, about = "3- and 4-vertex subtournament profiles, bounds and searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a tournament and write it in TRN v1 format.
    Gen(GenArgs),
    /// Densities of the 3- and 4-vertex types.
    Profile(ProfileArgs),
    /// Moments of the per-arc variables, or the tail function of X.
    EdgeStats(EdgeStatsArgs),
    /// Bound curves for one of the four boundary plots.
    Curve(CurveArgs),
    /// Types, flags, product tables and certificates.
    Flags {
        #[command(subcommand)]
        command: FlagsCommand,
    },
    /// Check a FLAGCERT v1 certificate.
    Verify(VerifyArgs),
    /// Anneal towards the smallest c4 at each target c3.
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Transitive,
    Cyclic,
    Interval,
    Random,
    Blowup,
    Flip,
    Mix,
}

#[derive(Args)]
struct GenArgs {
    construction: Construction,
    /// Number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Span for `interval`.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Blow-up host: `T<m>`, `C<m>`, or a tournament source.
    #[arg(long)]
    host: Option<String>,
    /// Blow-up part weights; balanced when omitted.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Flip probability (`flip`) or cross-arc probability (`mix`).
    #[arg(long)]
    p: Option<f64>,
    /// Tournament to perturb for `flip`.
    #[arg(long)]
    base: Option<String>,
    /// Fraction of vertices taken from `--t1` for `mix`.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    t1: Option<String>,
    #[arg(long)]
    t2: Option<String>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileMode {
    /// Exact up to 2000 vertices, sampled above.
    Auto,
    Exact,
    Sample,
}

#[derive(Args)]
struct ProfileArgs {
    /// `-`, a TRN file, or `transitive:N`, `cyclic:N`, `interval:N:S`, `random:N[:SEED]`.
    source: String,
    #[arg(long, value_enum, default_value_t = ProfileMode::Auto)]
    mode: ProfileMode,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Append the integer counts.
    #[arg(long)]
    counts: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EdgeStatsArgs {
    source: String,
    /// Emit `x,phi` on this many equally spaced points of [0, 1] instead of moments.
    #[arg(long)]
    cdf: Option<usize>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    fig: u8,
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CacheArg {
    /// Directory for cached product tables.
    #[arg(long)]
    cache: Option<PathBuf>,
}

impl CacheArg {
    fn dir(&self) -> PathBuf {
        self.cache
            .clone()
            .or_else(|| std::env::var_os("TOURPROF_CACHE").map(PathBuf::from))
            .unwrap_or_else(|| std::env::temp_dir().join("tourprof-cache"))
    }

    fn table(&self, k: usize) -> Result<ProductTable> {
        if k == 3 {
            return Ok(ProductTable::build(3)?);
        }
        Ok(ProductTable::cached(k, &self.dir())?)
    }
}

#[derive(Subcommand)]
enum FlagsCommand {
    /// One line per isomorphism type of order k.
    #[command(alias = "types")]
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The flags of order k over the arc type.
    List {
        #[arg(long)]
        k: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Write the product table for flags of order k (FLAGTAB v1).
    Table {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        cache: CacheArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Certificate for the bound c4 >= 18g^2/(1+8g) at c3 = g.
    Lemma {
        #[arg(long)]
        gamma: f64,
        /// Flag order of the emitted matrix (3, or 4 for the lifted form).
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Numerical search for a certificate with a large bound.
    Search {
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2000)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        cache: CacheArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compare arc moments of flag counts with the product table, exactly.
    Moments {
        source: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    cert: PathBuf,
    #[command(flatten)]
    cache: CacheArg,
}

#[derive(Args)]
struct SearchArgs {
    /// Target c3 values; the default grid when omitted.
    #[arg(long, value_delimiter = ',')]
    gamma: Vec<f64>,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs per grid point, with seeds `seed..seed+seeds`.
    #[arg(long, default_value_t = 1)]
    seeds: usize,
    #[arg(long)]
    moves: Option<usize>,
    #[arg(long)]
    penalty: Option<f64>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// Destination for a command's output, stdout by default.
fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create '{}'", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn command_line() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

/// `# tourprof <version> <command line>` and the seed, as CSV comments.
fn csv_header(out: &mut dyn Write, seed: Option<u64>) -> io::Result<()> {
    writeln!(out, "# tourprof {VERSION} {}", command_line())?;
    match seed {
        Some(s) => writeln!(out, "# seed {s}"),
        None => writeln!(out, "# seed none"),
    }
}

/// The same provenance on stderr, for formats that cannot carry comments.
fn stderr_header(seed: Option<u64>) {
    eprintln!("# tourprof {VERSION} {}", command_line());
    match seed {
        Some(s) => eprintln!("# seed {s}"),
        None => eprintln!("# seed none"),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, what: &str) -> Result<T> {
    value.ok_or_else(|| usage(format!("{what} needs --{flag}")))
}

fn need_str<'a>(value: &'a Option<String>, flag: &str, what: &str) -> Result<&'a str> {
    value.as_deref().ok_or_else(|| usage(format!("{what} needs --{flag}")))
}

fn generate(a: &GenArgs) -> Result<Tournament> {
    Ok(match a.construction {
        Construction::Transitive => transitive(need(a.n, "n", "transitive")?),
        Construction::Cyclic => cyclic(need(a.n, "n", "cyclic")?)?,
        Construction::Interval => interval(need(a.n, "n", "interval")?, need(a.s, "s", "interval")?)?,
        Construction::Random => random_tournament(need(a.n, "n", "random")?, a.seed),
        Construction::Blowup => {
            let host = source::host(need_str(&a.host, "host", "blowup")?)?;
            let spec = match &a.weights {
                Some(w) => BlowupSpec::new(host, WeightVector::new(w.clone())?)?,
                None => BlowupSpec::balanced(host),
            };
            blowup(&spec, need(a.n, "n", "blowup")?, a.seed)?
        }
        Construction::Flip => {
            let base = source::load(need_str(&a.base, "base", "flip")?)?;
            flip_perturb(&base, need(a.p, "p", "flip")?, a.seed)?
        }
        Construction::Mix => {
            let t1 = source::load(need_str(&a.t1, "t1", "mix")?)?;
            let t2 = source::load(need_str(&a.t2, "t2", "mix")?)?;
            let spec = MixSpec::new(need(a.alpha, "alpha", "mix")?, need(a.p, "p", "mix")?)?;
            let n = a.n.unwrap_or(t1.n() + t2.n());
            mix(&t1, &t2, &spec, n, a.seed)?
        }
    })
}

fn run_gen(a: &GenArgs) -> Result<()> {
    let t = generate(a)?;
    stderr_header(Some(a.seed));
    let mut out = open_output(&a.out)?;
    write_trn(&t, &mut out)?;
    out.flush()?;
    Ok(())
}

fn run_profile(a: &ProfileArgs) -> Result<()> {
    let t = source::load(&a.source)?;
    let n = t.n();
    let exact = match a.mode {
        ProfileMode::Exact => true,
        ProfileMode::Auto => n <= EXACT_PROFILE_MAX_N,
        ProfileMode::Sample if n <= EXACT_PROFILE_MAX_N => {
            return Err(usage(format!("exact counting is required for n <= {EXACT_PROFILE_MAX_N}")))
        }
        ProfileMode::Sample => false,
    };
    let p3 = profile3(&t)?;
    let mut out = open_output(&a.out)?;
    if exact {
        let p4 = profile4(&t)?;
        let d = p4.densities();
        csv_header(&mut out, None)?;
        let mut header = "n,t3,c3,t4,c4,w,l".to_string();
        let mut row = format!(
            "{n},{},{},{},{},{},{}",
            sig12(p3.t3_density()),
            sig12(p3.c3_density()),
            sig12(d[0]),
            sig12(d[1]),
            sig12(d[2]),
            sig12(d[3])
        );
        if a.counts {
            header.push_str(",t3_count,c3_count,t4_count,c4_count,w_count,l_count");
            row.push_str(&format!(",{},{},{},{},{},{}", p3.t3, p3.c3, p4.t4, p4.c4, p4.w, p4.l));
        }
        writeln!(out, "{header}")?;
        writeln!(out, "{row}")?;
    } else {
        let s = sample_profile4(&t, a.samples, a.seed)?;
        csv_header(&mut out, Some(a.seed))?;
        writeln!(out, "n,t3,c3,t4,c4,w,l,samples,t4_se,c4_se,w_se,l_se")?;
        writeln!(
            out,
            "{n},{},{},{},{},{},{},{},{},{},{},{}",
            sig12(p3.t3_density()),
            sig12(p3.c3_density()),
            sig12(s.t4.mean),
            sig12(s.c4.mean),
            sig12(s.w.mean),
            sig12(s.l.mean),
            s.samples,
            sig12(s.t4.stderr),
            sig12(s.c4.stderr),
            sig12(s.w.stderr),
            sig12(s.l.stderr)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn run_edge_stats(a: &EdgeStatsArgs) -> Result<()> {
    let t = source::load(&a.source)?;
    let mut out = open_output(&a.out)?;
    csv_header(&mut out, None)?;
    match a.cdf {
        Some(points) => {
            if points < 2 {
                return Err(usage("--cdf needs at least 2 points"));
            }
            let grid: Vec<f64> = (0..points).map(|i| i as f64 / (points - 1) as f64).collect();
            let phi = x_cdf(&t, &grid)?;
            writeln!(out, "x,phi")?;
            for (x, p) in grid.iter().zip(phi) {
                writeln!(out, "{},{}", sig12(*x), sig12(p))?;
            }
        }
        None => {
            let m = moments(&t)?;
            writeln!(out, "n,e_x,e_y,e_x2,e_xy,e_y2,e_z2,var_x")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                t.n(),
                sig12(m.e_x),
                sig12(m.e_y),
                sig12(m.e_x2),
                sig12(m.e_xy),
                sig12(m.e_y2),
                sig12(m.e_z2),
                sig12(m.var_x)
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn run_curve(a: &CurveArgs) -> Result<()> {
    let fig: Figure = a.fig.to_string().parse()?;
    let grid = fig.grid(a.points).map_err(|e| usage(e.to_string()))?;
    let rows = curve_dataset(&grid, fig)?;
    let mut out = open_output(&a.out)?;
    csv_header(&mut out, None)?;
    writeln!(out, "{}", fig.header())?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    out.flush()?;
    Ok(())
}

fn write_certificate(cert: &Certificate, path: &Option<PathBuf>) -> Result<()> {
    let mut out = open_output(path)?;
    cert.write(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run_flags(cmd: &FlagsCommand) -> Result<()> {
    match cmd {
        FlagsCommand::Enumerate { k, out } => {
            let types = enumerate_types(*k)?;
            let mut out = open_output(out)?;
            csv_header(&mut out, None)?;
            writeln!(out, "# code,c3,t4,c4,w,l")?;
            for h in types {
                let [t4, c4, w, l] = h.four;
                writeln!(out, "{},{},{},{},{},{}", h.code, h.c3, t4, c4, w, l)?;
            }
            out.flush()?;
        }
        FlagsCommand::List { k, out } => {
            let flags = enumerate_flags(*k)?;
            let mut out = open_output(out)?;
            csv_header(&mut out, None)?;
            writeln!(out, "# index,code,kind")?;
            for (i, f) in flags.iter().enumerate() {
                let kind = f.kind.map(|k| format!("{k:?}")).unwrap_or_default();
                writeln!(out, "{i},{},{kind}", f.code)?;
            }
            out.flush()?;
        }
        FlagsCommand::Table { k, cache, out } => {
            let table = cache.table(*k)?;
            stderr_header(None);
            let mut out = open_output(out)?;
            table.write(&mut out)?;
            out.flush()?;
        }
        FlagsCommand::Lemma { gamma, k, out } => {
            let cert = lemma1_certificate(*gamma)?;
            let cert = match k {
                3 => cert,
                4 => lift_certificate(&cert)?,
                _ => bail!(usage("--k must be 3 or 4")),
            };
            stderr_header(None);
            write_certificate(&cert, out)?;
        }
        FlagsCommand::Search { gamma, k, iterations, seed, cache, out } => {
            if !(3..=4).contains(k) {
                bail!(usage("--k must be 3 or 4"));
            }
            let table = cache.table(*k)?;
            let cert = search_certificate(*gamma, &table, *iterations, *seed)?;
            stderr_header(Some(*seed));
            eprintln!("# lambda {}", cert.lambda);
            write_certificate(&cert, out)?;
        }
        FlagsCommand::Moments { source, out } => {
            let t = source::load(source)?;
            let table = ProductTable::build(3)?;
            let report = moment_consistency_check(&t, &table)?;
            let mut out = open_output(out)?;
            csv_header(&mut out, None)?;
            writeln!(out, "i,j,edge_side,profile_side,equal")?;
            for p in &report.pairs {
                writeln!(out, "{},{},{},{},{}", p.i, p.j, p.edge_side, p.profile_side, p.edge_side == p.profile_side)?;
            }
            out.flush()?;
            if !report.holds() {
                return Err(tourprof_core::Error::Invariant("flag moments disagree with the 4-profile".into()).into());
            }
        }
    }
    Ok(())
}

fn read_certificate(path: &Path) -> Result<Certificate> {
    let file = File::open(path).with_context(|| format!("cannot open '{}'", path.display()))?;
    Certificate::read(BufReader::new(file)).with_context(|| format!("reading '{}'", path.display()))
}

/// Data error raised when a certificate fails verification.
#[derive(Debug)]
struct InvalidCertificate;

impl std::fmt::Display for InvalidCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("certificate is invalid")
    }
}

impl std::error::Error for InvalidCertificate {}

fn run_verify(a: &VerifyArgs) -> Result<()> {
    let cert = read_certificate(&a.cert)?;
    if !(3..=4).contains(&cert.k) {
        bail!(tourprof_core::Error::Dimension { expected: 3, found: cert.k });
    }
    let table = a.cache.table(cert.k)?;
    let v = verify_certificate(&cert, &table)?;
    let mut out = open_output(&None)?;
    csv_header(&mut out, None)?;
    writeln!(out, "status,lambda,gamma,mu,min_slack,min_eigenvalue")?;
    writeln!(
        out,
        "{},{},{},{},{:e},{:e}",
        if v.valid { "valid" } else { "invalid" },
        sig12(cert.lambda),
        sig12(cert.gamma),
        sig12(cert.mu),
        v.min_slack,
        v.min_eigenvalue
    )?;
    out.flush()?;
    if v.valid {
        Ok(())
    } else {
        Err(InvalidCertificate.into())
    }
}

fn run_search(a: &SearchArgs) -> Result<()> {
    let grid = if a.gamma.is_empty() { DEFAULT_SCAN_GRID.to_vec() } else { a.gamma.clone() };
    let mut params = AnnealParams::default();
    if let Some(m) = a.moves {
        params.moves = m;
    }
    if let Some(p) = a.penalty {
        params.penalty = p;
    }
    let rows = boundary_scan(&grid, a.n, a.seeds, a.seed, &params)?;
    let mut out = open_output(&a.out)?;
    csv_header(&mut out, Some(a.seed))?;
    writeln!(out, "{}", ScanRow::HEADER)?;
    for r in &rows {
        writeln!(out, "{}", r.to_csv())?;
        if r.discovery {
            eprintln!("DISCOVERY at gamma = {}: c3 = {}, c4 = {} (review manually)", r.gamma, r.c3, r.c4);
        }
    }
    out.flush()?;
    Ok(())
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("TOURPROF_THREADS") {
        let threads: usize = v
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| usage(format!("TOURPROF_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    configure_threads()?;
    match &cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Profile(a) => run_profile(a),
        Command::EdgeStats(a) => run_edge_stats(a),
        Command::Curve(a) => run_curve(a),
        Command::Flags { command } => run_flags(command),
        Command::Verify(a) => run_verify(a),
        Command::Search(a) => run_search(a),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.is::<UsageError>()) {
        return 2;
    }
    let core = err.chain().find_map(|e| e.downcast_ref::<tourprof_core::Error>());
    match core {
        Some(e) if e.is_invariant_violation() => 4,
        Some(tourprof_core::Error::InvalidParameter(_) | tourprof_core::Error::Order { .. }) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tourprof: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
