use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use salemscope::corpus;
use salemscope::intpoly::IntPolynomial;
use salemscope::powerpoly::PowerSequence;
use salemscope::probability::{empirical_frequency_parallel, DEFAULT_BIG_D, DEFAULT_BOX_HALF_WIDTH};
use salemscope::salem::{detect_cyclotomic_by_periodicity, GrowthChecker};
use salemscope::{
    certify_both, certify_direct, certify_power_criterion, power_min_poly, prob_d4, prob_d6_integral, prob_grid,
    vieira_condition, GridConfig,
};

const CSV_HELP: &str = "\
CSV columns by command:
  pown     k, coefficient                      (one row per a_k, k = 0..d)
  certify  verdict, method, witness_n, unimodular_count, roots_above_one,
           cyclotomic_free, tau_estimate, failure_reason
  scan     n                                   (one row per hit)
  prob     d, method, value, error_estimate, m, h, D, N_c, total,
           symmetry_factor, box_half_width, shell_hits
  analyze  n, a_top, power_condition, lower_bound_holds, envelope_holds,
           graeffe_ratio, graeffe_root
  corpus   criterion, check, passed, seconds, detail

Polynomials are given as integer coefficients a_0 a_1 ... a_d (constant term
first), separated by spaces or commas. With --half only a_0 ... a_{d/2} are
given and the rest is mirrored. Big integers appear as decimal strings in JSON.";

#[derive(Parser)]
#[command(name = "salemscope", version, about = "Salem number certification and power-criterion statistics", after_help = CSV_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format. `text` is for humans and may change between versions.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,

    /// Parallel width for `scan` and `prob`.
    #[arg(long, env = "SALEMSCOPE_WORKERS", global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct PolyArgs {
    /// Coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,

    /// Read `--poly` as the first half a_0 ... a_{d/2} of a self-reciprocal polynomial.
    #[arg(long)]
    half: bool,
}

impl PolyArgs {
    fn parse(&self) -> Result<IntPolynomial, String> {
        IntPolynomial::parse(&self.poly, self.half).map_err(|e| format!("--poly: {e}"))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CertifyMethod {
    Power,
    Direct,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbMethodArg {
    Exact,
    Integral,
    Grid,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of P_n, the polynomial whose roots are the n-th powers of the roots.
    Pown {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Decide whether the polynomial defines a Salem number.
    Certify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_enum, default_value_t = CertifyMethod::Power)]
        method: CertifyMethod,
        /// Largest exponent scanned by the power criterion.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(2..))]
        max_n: u64,
    },
    /// Exponents n in [from, to] whose P_n passes the power criterion.
    Scan {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Exponents per parallel task.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        chunk: u64,
    },
    /// Probability p_d that a random power polynomial passes the criterion.
    Prob {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        method: Option<ProbMethodArg>,
        /// Grid nodes per axis.
        #[arg(long, default_value_t = 1000)]
        m: usize,
        /// Gap between the large root and the unimodular ones.
        #[arg(long = "D", alias = "big-d", default_value_t = DEFAULT_BIG_D)]
        big_d: f64,
        /// Absolute tolerance of the integral method.
        #[arg(long, default_value_t = 1e-9)]
        abs_tol: f64,
        /// Count only the box around one symmetric cluster and multiply by H!.
        #[arg(long)]
        symmetry: bool,
        /// Starting half-width of the symmetry box.
        #[arg(long, default_value_t = DEFAULT_BOX_HALF_WIDTH)]
        box_width: f64,
    },
    /// Per-n growth bounds, Graeffe estimates of tau and the periodicity test.
    Analyze {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
    /// Run the acceptance checks against the embedded golden data.
    Corpus {
        /// Criteria to run, e.g. `--only 1,2,9`. Default: all.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Grid nodes per axis for the p8/p10 estimates.
        #[arg(long, default_value_t = corpus::tolerances::P8_P10_GRID_M)]
        grid_m: usize,
    },
}

/// What a command produced: a JSON value, CSV rows and a text rendering.
struct Report {
    json: Value,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    text: String,
    exit: u8,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Self { json, csv_header: Vec::new(), csv_rows: Vec::new(), text, exit: 0 }
    }

    fn csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv_header = header;
        self.csv_rows = rows;
        self
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn decimal_list(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn pown(args: &PolyArgs, n: u64) -> Result<Report, String> {
    let p = args.parse()?;
    let res = power_min_poly(&p, n).map_err(|e| e.to_string())?;
    let coeffs = decimal_list(&res.poly);
    let json = json!({
        "n": n,
        "degree": res.poly.degree(),
        "coefficients": coeffs,
        "trace_sums": res.trace_sums.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "reciprocal": res.poly.is_reciprocal(),
    });
    let rows = coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.clone()]).collect();
    Ok(Report::new(json, format!("P_{n}(x) = {}", res.poly)).csv(vec!["k", "coefficient"], rows))
}

fn certify(args: &PolyArgs, method: CertifyMethod, max_n: u64) -> Result<Report, String> {
    let p = args.parse()?;
    let report = match method {
        CertifyMethod::Power => certify_power_criterion(&p, max_n),
        CertifyMethod::Direct => certify_direct(&p),
        CertifyMethod::Both => certify_both(&p, max_n),
    }
    .map_err(|e| e.to_string())?;
    let verdict = to_json(&report.verdict).as_str().unwrap_or_default().to_string();
    let method_name = to_json(&report.method).as_str().unwrap_or_default().to_string();
    let mut text = format!("{p}\nverdict: {verdict}");
    if let Some(n) = report.witness_n {
        text.push_str(&format!("\nwitness: P_{n}"));
    }
    if let Some(tau) = report.tau_estimate {
        text.push_str(&format!("\ntau ~ {tau:.12}"));
    }
    if let Some(reason) = &report.failure_reason {
        text.push_str(&format!("\nreason: {reason}"));
    }
    let row = vec![
        verdict,
        method_name,
        opt(report.witness_n),
        opt(report.unimodular_count),
        opt(report.roots_above_one),
        opt(report.cyclotomic_free),
        opt(report.tau_estimate),
        report.failure_reason.clone().unwrap_or_default(),
    ];
    let mut json = to_json(&report);
    json["polynomial"] = json!(decimal_list(&p));
    Ok(Report::new(json, text).csv(
        vec![
            "verdict",
            "method",
            "witness_n",
            "unimodular_count",
            "roots_above_one",
            "cyclotomic_free",
            "tau_estimate",
            "failure_reason",
        ],
        vec![row],
    ))
}

fn scan(args: &PolyArgs, from: u64, to: u64, chunk: u64) -> Result<Report, String> {
    let p = args.parse()?;
    let freq = empirical_frequency_parallel(&p, from, to, chunk).map_err(|e| e.to_string())?;
    let mut text = format!(
        "{} of {} exponents in [{from}, {to}] pass ({:.4})\n{:?}",
        freq.count, freq.total, freq.frequency, freq.hits
    );
    if let Some(w) = &freq.warning {
        text.push_str(&format!("\nwarning: {w}"));
    }
    let rows = freq.hits.iter().map(|n| vec![n.to_string()]).collect();
    Ok(Report::new(to_json(&freq), text).csv(vec!["n"], rows))
}

#[allow(clippy::too_many_arguments)]
fn prob(
    degree: usize,
    method: Option<ProbMethodArg>,
    m: usize,
    big_d: f64,
    abs_tol: f64,
    symmetry: bool,
    box_width: f64,
) -> Result<Report, String> {
    let method = method.unwrap_or(match degree {
        4 => ProbMethodArg::Exact,
        6 => ProbMethodArg::Integral,
        _ => ProbMethodArg::Grid,
    });
    let est = match method {
        ProbMethodArg::Exact if degree == 4 => prob_d4(),
        ProbMethodArg::Exact => return Err(format!("--method exact is only available for --degree 4, not {degree}")),
        ProbMethodArg::Integral if degree == 6 => prob_d6_integral(abs_tol).map_err(|e| e.to_string())?,
        ProbMethodArg::Integral => return Err(format!("--method integral is only available for --degree 6, not {degree}")),
        ProbMethodArg::Grid => {
            let cfg = GridConfig::new(degree, m).big_d(big_d).symmetric(symmetry).box_half_width(box_width);
            prob_grid(&cfg).map_err(|e| e.to_string())?
        }
    };
    let json = to_json(&est);
    let method_name = json["method"].as_str().unwrap_or_default().to_string();
    let text = format!("p_{degree} ~ {:.7} (+/- {:.1e}, {method_name})", est.value, est.error_estimate);
    let row = vec![
        est.d.to_string(),
        method_name,
        est.value.to_string(),
        est.error_estimate.to_string(),
        opt(est.m),
        opt(est.h),
        opt(est.big_d),
        opt(est.hit_count),
        opt(est.total),
        opt(est.symmetry_factor),
        opt(est.box_half_width),
        opt(est.shell_hits),
    ];
    Ok(Report::new(json, text).csv(
        vec![
            "d",
            "method",
            "value",
            "error_estimate",
            "m",
            "h",
            "D",
            "N_c",
            "total",
            "symmetry_factor",
            "box_half_width",
            "shell_hits",
        ],
        vec![row],
    ))
}

fn analyze(args: &PolyArgs, max_n: u64) -> Result<Report, String> {
    let p = args.parse()?;
    if !p.is_reciprocal() {
        return Err("analyze needs a self-reciprocal polynomial".into());
    }
    let periodic = detect_cyclotomic_by_periodicity(&p, None).map_err(|e| e.to_string())?;
    let checker = GrowthChecker::new(&p);
    let seq = PowerSequence::new(&p).map_err(|e| e.to_string())?;
    let mut prev: Option<IntPolynomial> = None;
    let mut records = Vec::new();
    let mut rows = Vec::new();
    let mut text = format!(
        "{p}\ntau ~ {}\ncyclotomic by periodicity: {periodic}\n",
        checker.tau().map(|t| format!("{t:.12}")).unwrap_or_else(|| "none".into())
    );
    for step in seq.take(max_n as usize) {
        let passes = p.degree() >= 4 && vieira_condition(&step.poly, 1).is_ok_and(|v| v.satisfied);
        let check = checker.check(step.n, &step.poly, prev.as_ref());
        let mut rec = to_json(&check);
        rec["power_condition"] = json!(passes);
        rows.push(vec![
            step.n.to_string(),
            check.a_top.to_string(),
            passes.to_string(),
            check.lower_bound_holds.to_string(),
            check.envelope_holds.to_string(),
            opt(check.graeffe_ratio),
            opt(check.graeffe_root),
        ]);
        text.push_str(&format!(
            "n = {:>4}  bounds {}  criterion {}  ratio {}  root {}\n",
            step.n,
            if check.holds() { "ok" } else { "VIOLATED" },
            if passes { "yes" } else { "no" },
            check.graeffe_ratio.map(|r| format!("{r:.9}")).unwrap_or_else(|| "-".into()),
            check.graeffe_root.map(|r| format!("{r:.9}")).unwrap_or_else(|| "-".into()),
        ));
        records.push(rec);
        prev = Some(step.poly);
    }
    let json = json!({
        "polynomial": decimal_list(&p),
        "tau_estimate": checker.tau(),
        "cyclotomic_by_periodicity": periodic,
        "records": records,
    });
    Ok(Report::new(json, text.trim_end().to_string()).csv(
        vec!["n", "a_top", "power_condition", "lower_bound_holds", "envelope_holds", "graeffe_ratio", "graeffe_root"],
        rows,
    ))
}

fn run_corpus(only: &[u8], grid_m: usize) -> Result<Report, String> {
    if let Some(bad) = only.iter().find(|&&id| !(1..=10).contains(&id)) {
        return Err(format!("--only: no criterion {bad}; criteria are 1 to 10"));
    }
    if grid_m < 100 {
        return Err(format!("--grid-m must be at least 100, got {grid_m}"));
    }
    let outcomes = corpus::run(only, grid_m);
    let passed = outcomes.iter().all(|o| o.passed);
    let text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
    let rows = outcomes
        .iter()
        .map(|o| vec![o.criterion.to_string(), o.check.clone(), o.passed.to_string(), format!("{:.3}", o.seconds), o.detail.clone()])
        .collect();
    let mut report = Report::new(json!({ "passed": passed, "outcomes": to_json(&outcomes) }), text)
        .csv(vec!["criterion", "check", "passed", "seconds", "detail"], rows);
    report.exit = if passed { 0 } else { 1 };
    Ok(report)
}

fn dispatch(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Pown { poly, n } => pown(poly, *n),
        Command::Certify { poly, method, max_n } => certify(poly, *method, *max_n),
        Command::Scan { poly, from, to, chunk } => {
            if from > to {
                return Err(format!("--from {from} is greater than --to {to}"));
            }
            scan(poly, *from, *to, *chunk)
        }
        Command::Prob { degree, method, m, big_d, abs_tol, symmetry, box_width } => {
            prob(*degree, *method, *m, *big_d, *abs_tol, *symmetry, *box_width)
        }
        Command::Analyze { poly, max_n } => analyze(poly, *max_n),
        Command::Corpus { only, grid_m } => run_corpus(only, *grid_m),
    }
}

fn emit(report: &Report, output: Output) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match output {
        Output::Json => {
            serde_json::to_writer_pretty(&mut out, &report.json)?;
            writeln!(out)
        }
        Output::Text => writeln!(out, "{}", report.text),
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&report.csv_header)?;
            for row in &report.csv_rows {
                w.write_record(row)?;
            }
            w.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers as usize).build_global() {
            eprintln!("error: cannot start {workers} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.output) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
