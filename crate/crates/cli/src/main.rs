mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fcbound_core::bounds::{self, BoundReport};
use fcbound_core::fcomplexity::{family_complexity, BinaryFamily, DEFAULT_CELL_BUDGET};
use fcbound_core::gf::DEFAULT_ENUMERATION_BUDGET;
use fcbound_core::lambertw::{w0_complex, w0_from_log, w0_real, Complex64};
use fcbound_core::legendre_seq::build_family;
use fcbound_core::ntheory::next_prime;
use fcbound_core::verify::{run_suite, weil_suite, Guarantee, Suite};
use fcbound_core::Error;

use render::{csv_row, g15, gnuplot_script, Axis, CSV_HEADER};

#[derive(Parser)]
#[command(name = "fcbound", version, about = "Family-complexity bounds for Legendre sequences")]
#[command(propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All bounds for a single (p, k)
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bounds over a range of p (primes only) or of k, one row per cell
    Scan(GridArgs),
    /// Median evaluation times over a range of p or k
    Bench {
        #[command(flatten)]
        grid: GridArgs,
        /// Timed repetitions per cell (odd, at least 3)
        #[arg(long, default_value_t = 5)]
        reps: u32,
    },
    /// Smallest prime with a positive Gyarmati bound for degree k
    Crossover {
        #[arg(long)]
        k: u64,
        /// Largest prime considered
        #[arg(long, default_value_t = 1 << 40)]
        p_limit: u64,
    },
    /// Exact family complexity of F_irred(k, p) by exhaustive search
    Oracle {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: usize,
        /// Maximum number of (specification, member) checks
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Principal-branch Lambert W
    W {
        #[arg(long, group = "arg", allow_hyphen_values = true)]
        x: Option<f64>,
        /// Natural logarithm of the argument
        #[arg(long = "log-x", group = "arg", allow_hyphen_values = true)]
        log_x: Option<f64>,
        /// Complex argument as RE,IM
        #[arg(long, group = "arg", value_name = "RE,IM", allow_hyphen_values = true)]
        complex: Option<String>,
    },
    /// Run an exhaustive invariant suite
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Integer guarantee whose j values the weil suite checks against |G|
        #[arg(long, value_enum, default_value_t = GuaranteeArg::Exact)]
        guarantee: GuaranteeArg,
    },
    /// List the members of F_irred(k, p)
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: usize,
        /// Print every sequence, not only the generating polynomials
        #[arg(long)]
        dump: bool,
        /// Maximum number of candidate polynomials to enumerate
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Fixed prime (ranges over k)
    #[arg(long)]
    p: Option<u64>,
    /// Fixed degree (ranges over p)
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, default_value_t = 3)]
    p_min: u64,
    /// Inclusive upper end of the prime range
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long, default_value_t = 1)]
    k_min: u64,
    /// Inclusive upper end of the degree range
    #[arg(long)]
    k_max: Option<u64>,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also write a gnuplot script next to the output file
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Weil,
    Gauss,
    Corollary1,
    Sandwich,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum GuaranteeArg {
    Stated,
    Exact,
}

enum Failure {
    Usage(String),
    Core(Error),
    Output(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(Error::Resource(_)) => 3,
            Failure::Core(_) | Failure::Output(_) => 2,
            Failure::Verification(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Output(m) | Failure::Verification(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Bound { p, k, format } => cmd_bound(p, k, format),
        Command::Scan(grid) => cmd_grid(&grid, None),
        Command::Bench { grid, reps } => {
            if reps < 3 || reps % 2 == 0 {
                return Err(Failure::Usage(format!("--reps must be odd and at least 3, got {reps}")));
            }
            cmd_grid(&grid, Some(reps))
        }
        Command::Crossover { k, p_limit } => {
            println!("{}", bounds::crossover_prime(k, p_limit)?);
            Ok(())
        }
        Command::Oracle { p, k, budget, format } => cmd_oracle(p, k, budget, format),
        Command::W { x, log_x, complex } => cmd_w(x, log_x, complex),
        Command::Verify { suite, guarantee } => cmd_verify(suite, guarantee),
        Command::Family { p, k, dump, budget } => cmd_family(p, k, dump, budget),
    }
}

fn report_json(r: &BoundReport) -> Value {
    json!({
        "p": r.p,
        "k": r.k,
        "a_log2": r.a_log2.log2(),
        "b": r.b,
        "new_bound": r.new_bound,
        "guaranteed_j": r.guaranteed_j,
        "exact_threshold_bound": r.exact_threshold,
        "gyarmati_bound": r.gyarmati_bound,
        "gyarmati_c": r.gyarmati_c,
        "upper_bound": r.upper_bound,
        "t_new_ns": r.eval_time_new.as_nanos() as u64,
        "t_gyarmati_ns": r.eval_time_gyarmati.as_nanos() as u64,
    })
}

fn cmd_bound(p: u64, k: u64, format: Format) -> CmdResult {
    let r = BoundReport::compute_timed(p, k)?;
    let (t_new, t_gy) = (r.eval_time_new.as_nanos(), r.eval_time_gyarmati.as_nanos());
    match format {
        Format::Text => {
            println!("p                     {}", r.p);
            println!("k                     {}", r.k);
            println!("log2 A                {}", g15(r.a_log2.log2()));
            println!("B                     {}", g15(r.b));
            println!("new_bound             {}", g15(r.new_bound));
            println!("guaranteed_j          {}", r.guaranteed_j);
            println!("exact_threshold_bound {}", g15(r.exact_threshold));
            println!("gyarmati_bound        {}", g15(r.gyarmati_bound));
            println!("gyarmati_c            {}", g15(r.gyarmati_c));
            println!("upper_bound           {}", g15(r.upper_bound));
            println!("t_new_ns              {t_new}");
            println!("t_gyarmati_ns         {t_gy}");
        }
        Format::Csv => {
            println!("{CSV_HEADER}");
            println!("{}", csv_row(&r, t_new, t_gy));
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&report_json(&r)).unwrap()),
    }
    Ok(())
}

struct Grid {
    axis: Axis,
    cells: Vec<(u64, u64)>,
    fixed: String,
}

fn resolve_grid(g: &GridArgs) -> Result<Grid, Failure> {
    match (g.p, g.k) {
        (Some(p), None) => {
            let k_max = g.k_max.ok_or_else(|| Failure::Usage("ranging over k needs --k-max".into()))?;
            if g.k_min == 0 || g.k_min > k_max {
                return Err(Failure::Usage(format!("empty degree range {}..={k_max}", g.k_min)));
            }
            Ok(Grid { axis: Axis::K, cells: (g.k_min..=k_max).map(|k| (p, k)).collect(), fixed: format!("p = {p}") })
        }
        (None, Some(k)) => {
            let p_max = g.p_max.ok_or_else(|| Failure::Usage("ranging over p needs --p-max".into()))?;
            let mut cells = Vec::new();
            let mut p = next_prime(g.p_min.max(3)).unwrap_or(u64::MAX);
            while p <= p_max {
                cells.push((p, k));
                match p.checked_add(1).and_then(next_prime) {
                    Some(q) => p = q,
                    None => break,
                }
            }
            if cells.is_empty() {
                return Err(Failure::Usage(format!("no odd prime in {}..={p_max}", g.p_min)));
            }
            Ok(Grid { axis: Axis::P, cells, fixed: format!("k = {k}") })
        }
        _ => Err(Failure::Usage("fix exactly one of --p and --k".into())),
    }
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn bench_cell(p: u64, k: u64, reps: u32) -> Result<(Duration, Duration), Failure> {
    bounds::time_lambert_bound(p, k)?;
    bounds::time_gyarmati(p, k)?;
    let mut t_new = Vec::with_capacity(reps as usize);
    let mut t_gy = Vec::with_capacity(reps as usize);
    for _ in 0..reps {
        t_new.push(bounds::time_lambert_bound(p, k)?.1);
        t_gy.push(bounds::time_gyarmati(p, k)?.1);
    }
    Ok((median(t_new), median(t_gy)))
}

fn cmd_grid(args: &GridArgs, reps: Option<u32>) -> CmdResult {
    let grid = resolve_grid(args)?;
    if args.gnuplot && args.out.is_none() {
        return Err(Failure::Usage("--gnuplot needs --out".into()));
    }
    let mut rows = Vec::with_capacity(grid.cells.len());
    for &(p, k) in &grid.cells {
        let r = BoundReport::compute(p, k)?;
        let (t_new, t_gy) = match reps {
            Some(reps) => bench_cell(p, k, reps)?,
            None => (bounds::time_lambert_bound(p, k)?.1, bounds::time_gyarmati(p, k)?.1),
        };
        rows.push(BoundReport { eval_time_new: t_new, eval_time_gyarmati: t_gy, ..r });
    }
    let body = match args.format {
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in &rows {
                s.push_str(&csv_row(r, r.eval_time_new.as_nanos(), r.eval_time_gyarmati.as_nanos()));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let v: Vec<Value> = rows.iter().map(report_json).collect();
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Text => {
            let mut s = format!(
                "{:>12} {:>5} {:>18} {:>5} {:>18} {:>4} {:>18} {:>12} {:>12}\n",
                "p", "k", "new_bound", "j", "gyarmati_bound", "c", "upper_bound", "t_new_ns", "t_gy_ns"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:>12} {:>5} {:>18} {:>5} {:>18} {:>4} {:>18} {:>12} {:>12}\n",
                    r.p,
                    r.k,
                    g15(r.new_bound),
                    r.guaranteed_j,
                    g15(r.gyarmati_bound),
                    g15(r.gyarmati_c),
                    g15(r.upper_bound),
                    r.eval_time_new.as_nanos(),
                    r.eval_time_gyarmati.as_nanos()
                ));
            }
            s
        }
    };
    match &args.out {
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Output(format!("cannot write to stdout: {e}")))?,
        Some(path) => {
            write_file(path, &body)?;
            if args.gnuplot {
                let script = path.with_extension("gp");
                let png = path.with_extension("png");
                let text = gnuplot_script(
                    &file_name(path),
                    &file_name(&png),
                    grid.axis,
                    &grid.fixed,
                    reps.is_some(),
                );
                write_file(&script, &text)?;
            }
        }
    }
    Ok(())
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

fn write_file(path: &Path, body: &str) -> CmdResult {
    fs::write(path, body).map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))
}

fn signs_text(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect::<Vec<_>>().join(",")
}

fn cmd_oracle(p: u64, k: usize, budget: u64, format: Format) -> CmdResult {
    let family = build_family(p, k, DEFAULT_ENUMERATION_BUDGET)?;
    let bin = BinaryFamily::try_from(&family)?;
    let start = Instant::now();
    let res = family_complexity(&bin, None, budget)?;
    let elapsed = start.elapsed();
    let guaranteed = bounds::guaranteed_j(p, k as u64)?;
    let witness = res.witness_failure.as_ref();
    match format {
        Format::Json => {
            let v = json!({
                "p": p,
                "k": k,
                "family_size": bin.size(),
                "gamma": res.gamma,
                "guaranteed_j": guaranteed,
                "witness_positions": witness.map(|w| w.positions.clone()),
                "witness_signs": witness.map(|w| w.signs.clone()),
                "cells_examined": res.cells_examined,
                "elapsed_ns": elapsed.as_nanos() as u64,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        _ => {
            println!("gamma={}", res.gamma);
            println!("family_size={}", bin.size());
            println!("guaranteed_j={guaranteed}");
            match witness {
                Some(w) => {
                    let pos: Vec<String> = w.positions.iter().map(|p| p.to_string()).collect();
                    println!("witness positions {} signs {}", pos.join(","), signs_text(&w.signs));
                }
                None => println!("witness none"),
            }
            println!("cells_examined={}", res.cells_examined);
        }
    }
    Ok(())
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Usage(format!("--complex expects RE,IM, got {s:?}"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn cmd_w(x: Option<f64>, log_x: Option<f64>, complex: Option<String>) -> CmdResult {
    match (x, log_x, complex) {
        (Some(x), None, None) => println!("{}", g15(w0_real(x)?.value)),
        (None, Some(l), None) => println!("{}", g15(w0_from_log(l)?)),
        (None, None, Some(c)) => {
            let w = w0_complex(parse_complex(&c)?)?;
            let sign = if w.im.is_sign_negative() { '-' } else { '+' };
            println!("{}{sign}{}i", g15(w.re), g15(w.im.abs()));
        }
        _ => return Err(Failure::Usage("give exactly one of --x, --log-x, --complex".into())),
    }
    Ok(())
}

fn cmd_verify(suite: SuiteArg, guarantee: GuaranteeArg) -> CmdResult {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Weil => vec![Suite::Weil],
        SuiteArg::Gauss => vec![Suite::Gauss],
        SuiteArg::Corollary1 => vec![Suite::Corollary1],
        SuiteArg::Sandwich => vec![Suite::Sandwich],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut failed = Vec::new();
    for s in suites {
        let report = match (s, guarantee) {
            (Suite::Weil, GuaranteeArg::Stated) => weil_suite(169, 3, Guarantee::Stated)?,
            _ => run_suite(s)?,
        };
        println!("{report}");
        if !report.passed() {
            failed.push(s.name());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("suite(s) failed: {}", failed.join(", "))))
    }
}

fn cmd_family(p: u64, k: usize, dump: bool, budget: u64) -> CmdResult {
    let family = build_family(p, k, budget)?;
    println!("# F_irred({k}, {p}): {} members", family.members.len());
    for m in &family.members {
        if dump {
            let seq: String = m.values().iter().map(|&v| if v > 0 { '+' } else { '-' }).collect();
            println!("{seq}  {}", m.source());
        } else {
            println!("{}", m.source());
        }
    }
    Ok(())
}
