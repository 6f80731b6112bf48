use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use entroscope::entropy::{entropy_estimate_with, EntropyConfig, EntropyEstimate};
use entroscope::homotopy::{homotopy_h, homotopy_h1, homotopy_h2, homotopy_h_alpha};
use entroscope::paperlab::{
    run_example_convexity_gt, run_example_convexity_le0, run_fixed_point_counterexample, run_full_suite_with,
    suite_config, VerificationReport,
};
use entroscope::Rational;
use entroscope_cli::{breakpoint_cap_from_env, parse_rational, svg, MapDocument, Metadata};

const EXIT_INVALID: u8 = 1;
const EXIT_TRUNCATED: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "entroscope", version, about = "Entropy bounds and homotopies for piecewise-linear interval maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound the topological entropy of a map.
    Entropy {
        input: PathBuf,
        /// Largest iterate in the lap trace.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Largest horseshoe size reported.
        #[arg(long, default_value_t = 8)]
        n_cap: usize,
        /// Tolerance of the Perron root bracket.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = EntropyFormat::Text)]
        format: EntropyFormat,
        /// Report entropy in bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// Evaluate a homotopy at several times and write each map.
    Homotopy {
        input: PathBuf,
        #[arg(long, value_enum, ignore_case = true)]
        family: Family,
        /// Times in [0, 1], comma separated or repeated.
        #[arg(long = "t", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        t: Vec<String>,
        /// Steepness of the box maps; required for Halpha.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Also write an SVG drawing per time.
        #[arg(long)]
        plot: bool,
    },
    /// Run the seeded verification suite.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        corpus_size: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Print the time taken by each check to standard error.
        #[arg(long)]
        timings: bool,
    },
    /// Run one of the worked examples.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// Fixed point of the broken lines (fixed-point only).
        #[arg(long, default_value = "1/3")]
        x0: String,
        /// Indices n of the broken lines (fixed-point only).
        #[arg(long = "n", value_delimiter = ',', default_values_t = [10u64, 100, 1000])]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EntropyFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "Halpha")]
    Halpha,
    #[value(name = "H1")]
    H1,
    #[value(name = "H2")]
    H2,
    #[value(name = "H")]
    H,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::Halpha => "Halpha",
            Family::H1 => "H1",
            Family::H2 => "H2",
            Family::H => "H",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    ConvexityGt,
    ConvexityLe0,
    FixedPoint,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cap = breakpoint_cap_from_env()?;
    match cli.command {
        Command::Entropy {
            input,
            n_max,
            n_cap,
            tol,
            format,
            bits,
        } => {
            let doc = MapDocument::read(&input)?;
            let f = doc.to_map()?;
            let mut cfg = EntropyConfig::default();
            if let Some(cap) = cap {
                cfg.breakpoint_cap = cap;
            }
            let est = entropy_estimate_with(&f, n_max, n_cap, tol, &cfg)?;
            let name = doc.name().map(str::to_owned).unwrap_or_else(|| stem(&input));
            let scale = if bits { std::f64::consts::LN_2 } else { 1.0 };
            print!("{}", render_estimate(&est, &name, scale, bits, format, cfg.breakpoint_cap));
            if let Some(n) = est.truncated_at {
                eprintln!("lap trace stopped at n = {n}: breakpoint cap {} reached", cfg.breakpoint_cap);
                return Ok(EXIT_TRUNCATED);
            }
            Ok(0)
        }
        Command::Homotopy {
            input,
            family,
            t,
            alpha,
            out,
            plot,
        } => {
            let doc = MapDocument::read(&input)?;
            let f = doc.to_map()?;
            let alpha = match (family, alpha) {
                (Family::Halpha, Some(a)) => Some(parse_rational(&a)?),
                (Family::Halpha, None) => bail!("--alpha is required for Halpha"),
                (_, Some(_)) => bail!("--alpha only applies to Halpha"),
                (_, None) => None,
            };
            let times = t.iter().map(|s| parse_rational(s)).collect::<anyhow::Result<Vec<_>>>()?;
            std::fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
            let base = stem(&input);
            for time in &times {
                let g = match family {
                    Family::Halpha => homotopy_h_alpha(&f, time, alpha.as_ref().expect("checked above"))?,
                    Family::H1 => homotopy_h1(&f, time)?,
                    Family::H2 => homotopy_h2(&f, time)?,
                    Family::H => homotopy_h(&f, time)?,
                };
                let tag = match &alpha {
                    Some(a) => format!("{}{}", family.label(), slug(a)),
                    None => family.label().to_string(),
                };
                let file_stem = format!("{base}_{tag}_t{}", slug(time));
                let metadata = Metadata {
                    name: Some(file_stem.clone()),
                    provenance: Some(format!("{} of {} at t = {time}", family.label(), base)),
                };
                let path = out.join(format!("{file_stem}.json"));
                write(&path, &MapDocument::from_map(&g, Some(metadata)).to_json())?;
                println!("{}", path.display());
                if plot {
                    let path = out.join(format!("{file_stem}.svg"));
                    write(&path, &svg::render(&g, &file_stem))?;
                    println!("{}", path.display());
                }
            }
            Ok(0)
        }
        Command::Verify {
            seed,
            corpus_size,
            format,
            timings,
        } => {
            if corpus_size == 0 {
                bail!("--corpus-size must be at least 1");
            }
            let mut cfg = suite_config();
            if let Some(cap) = cap {
                cfg.breakpoint_cap = cap;
            }
            let report = run_full_suite_with(seed, corpus_size, &cfg)?;
            if timings {
                for c in &report.checks {
                    eprintln!("{:>10.3}s {}", c.elapsed.as_secs_f64(), c.name);
                }
            }
            Ok(emit_report(&report, format))
        }
        Command::Example { name, x0, n, format } => {
            let report = match name {
                ExampleName::ConvexityGt => run_example_convexity_gt(),
                ExampleName::ConvexityLe0 => run_example_convexity_le0(),
                ExampleName::FixedPoint => run_fixed_point_counterexample(&parse_rational(&x0)?, &n)?,
            };
            Ok(emit_report(&report, format))
        }
    }
}

fn emit_report(report: &VerificationReport, format: ReportFormat) -> u8 {
    match format {
        ReportFormat::Text => println!("{report}"),
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
    }
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        0
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        EXIT_CHECK_FAILED
    }
}

fn render_estimate(est: &EntropyEstimate, name: &str, scale: f64, bits: bool, format: EntropyFormat, cap: usize) -> String {
    let unit = if bits { "bits" } else { "nats" };
    let v = |x: f64| x / scale;
    let methods: Vec<String> = est
        .methods
        .iter()
        .map(|m| serde_json::to_value(m).expect("method").as_str().unwrap_or_default().to_string())
        .collect();
    match format {
        EntropyFormat::Text => {
            let mut s = format!("map {name}\n");
            s += &format!("entropy in [{:.6}, {:.6}] {unit}\n", v(est.lower), v(est.upper));
            s += &format!("methods {}\n", methods.join(", "));
            if let Some(m) = est.markov {
                s += &format!("markov {:.9}\n", v(m));
            }
            if let Some(h) = &est.horseshoe {
                s += &format!("horseshoe {} on iterate {} gives {:.6}\n", h.size, h.iterate, v(h.value));
            }
            s += "n laps bound\n";
            for t in &est.trace {
                s += &format!("{} {} {:.6}\n", t.n, t.laps, v(t.value));
            }
            if let Some(n) = est.truncated_at {
                s += &format!("truncated at n = {n} (breakpoint cap {cap})\n");
            }
            s
        }
        EntropyFormat::Json => {
            let trace: Vec<serde_json::Value> = est
                .trace
                .iter()
                .map(|t| serde_json::json!({"n": t.n, "laps": t.laps, "bound": v(t.value)}))
                .collect();
            let doc = serde_json::json!({
                "map": name,
                "units": unit,
                "lower": v(est.lower),
                "upper": v(est.upper),
                "methods": methods,
                "markov": est.markov.map(v),
                "horseshoe": est.horseshoe.as_ref().map(|h| serde_json::json!({
                    "iterate": h.iterate, "size": h.size, "bound": v(h.value)
                })),
                "trace": trace,
                "truncated_at": est.truncated_at,
                "breakpoint_cap": cap,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        EntropyFormat::Csv => {
            let mut s = String::from("kind,n,laps,value\n");
            for t in &est.trace {
                s += &format!("trace,{},{},{}\n", t.n, t.laps, v(t.value));
            }
            s += &format!("lower,,,{}\nupper,,,{}\n", v(est.lower), v(est.upper));
            if let Some(m) = est.markov {
                s += &format!("markov,,,{}\n", v(m));
            }
            if let Some(h) = &est.horseshoe {
                s += &format!("horseshoe,{},{},{}\n", h.iterate, h.size, v(h.value));
            }
            s
        }
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "map".to_string(), |s| s.to_string_lossy().into_owned())
}

/// File-name form of a rational: `1/3` becomes `1-3`.
fn slug(r: &Rational) -> String {
    r.to_string().replace('/', "-")
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
