//! `cubell` — catalog queries, single checks, and the full verification
//! suite for the cubic elliptic variety toolkit.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
//! 3 internal error.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubell_core::report::Report;
use cubell_core::varieties::{self, VarietyType, ALL_TYPES};
use cubell_core::{classify, coxring, int, verify, Int};

#[derive(Parser)]
#[command(name = "cubell", version, about = "Exact checks for cubic elliptic varieties")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the seven variety types with their Mordell-Weil groups
    Catalog {
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Print the Mordell-Weil group of one type
    Mw {
        ty: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Print Mori generators, nef cone, and moving-cone chambers
    Cones {
        ty: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Build and print the Cox ring presentation of an extremal type
    Coxring {
        ty: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Count monomials of a multidegree in the graded Cox ring
    Hilbert {
        ty: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Four comma-separated integers a,b,c,d
        #[arg(long)]
        degree: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Classify a cubic-plus-line instance read from a file (`-` = stdin)
    Classify {
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the verification suite for one type or `all`
    Verify {
        #[arg(default_value = "all")]
        ty: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Check,
    Internal(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn parse_type(s: &str) -> Result<VarietyType, CliError> {
    VarietyType::parse(s)
        .ok_or_else(|| CliError::Usage(format!("unknown variety type {s:?}; expected one of X3, XS, XS2, XSSS, X12, XS11, X111")))
}

fn parse_degree(s: &str) -> Result<Vec<Int>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--degree wants four comma-separated integers, got {s:?}"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map(int)
                .map_err(|e| CliError::Usage(format!("bad degree entry {p:?}: {e}")))
        })
        .collect()
}

fn emit(out: &OutputOpts, text: String, json: String) -> Result<(), CliError> {
    let payload = match out.format {
        Format::Text => text,
        Format::Json => json,
    };
    match &out.out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn emit_reports(out: &OutputOpts, reports: &[Report]) -> Result<(), CliError> {
    let mut text = String::new();
    for r in reports {
        write!(text, "{r}").unwrap();
    }
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        let inner: Vec<String> = reports.iter().map(|r| {
            let mut s = r.to_json();
            s.pop();
            s
        }).collect();
        format!("[\n{}\n]\n", inner.join(",\n"))
    };
    emit(out, text, json)?;
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(CliError::Check)
    }
}

fn fmt_rows(rows: &[Vec<Int>]) -> String {
    rows.iter()
        .map(|r| {
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_catalog(out: &OutputOpts) -> Result<(), CliError> {
    let mut rep = Report::new("catalog");
    for ty in ALL_TYPES {
        rep.check(
            format!("mordell-weil-{ty}"),
            "Table 1",
            verify::expected_mordell_weil(ty),
            varieties::mordell_weil(ty),
        );
        rep.info(
            format!("extremal-{ty}"),
            "Table 2",
            if ty.is_extremal() { "extremal (finite Mordell-Weil)" } else { "non-extremal" },
        );
    }
    emit_reports(out, &[rep])
}

fn cmd_mw(ty: &str, out: &OutputOpts) -> Result<(), CliError> {
    let ty = parse_type(ty)?;
    let group = varieties::mordell_weil(ty);
    match out.format {
        Format::Text => emit(out, format!("{group}\n"), String::new()),
        Format::Json => {
            let mut rep = Report::new(format!("mw {ty}"));
            rep.check("mordell-weil", "Table 1", verify::expected_mordell_weil(ty), &group);
            emit_reports(out, &[rep])
        }
    }
}

fn cmd_cones(ty: &str, out: &OutputOpts) -> Result<(), CliError> {
    let ty = parse_type(ty)?;
    let mut rep = Report::new(format!("cones {ty}"));
    rep.info("mori-generators", "Prop. on Mori cones", fmt_rows(&varieties::mori_generators(ty)));
    let nef = varieties::nef_cone(ty)?;
    rep.info("nef-rays", "Prop. on nef cones", fmt_rows(nef.rays()));
    rep.info("nef-inequalities", "Prop. on nef cones", fmt_rows(nef.inequalities()));
    if matches!(ty, VarietyType::X3 | VarietyType::XS | VarietyType::XS2 | VarietyType::XSSS) {
        let chambers = varieties::moving_cone(ty)?;
        for (i, c) in chambers.iter().enumerate() {
            rep.info(
                format!("moving-chamber-{}", i + 1),
                "Prop. on flops",
                fmt_rows(c.rays()),
            );
        }
    }
    emit_reports(out, &[rep])
}

fn cmd_coxring(ty: &str, n: usize, seed: u64, out: &OutputOpts) -> Result<(), CliError> {
    let ty = parse_type(ty)?;
    let (p, skipped) = coxring::build_presentation_retrying(ty, n, seed, 200)?;
    let mut rep = Report::new(format!("coxring {ty} n={n} seed={seed}"));
    for j in 0..p.q.cols {
        rep.info(
            format!("degree-{}", p.ctx.name(j)),
            "grading matrix",
            fmt_rows(&[p.q.col(j)]),
        );
    }
    for (i, e) in p.beta.exps.iter().enumerate() {
        rep.info(
            format!("beta-{}", p.ctx.name(i)),
            "beta table",
            format!("S-exponents {e:?}"),
        );
    }
    for (i, g) in p.generators.iter().enumerate() {
        rep.info(format!("generator-{}", i + 1), "ideal generators", g);
        rep.info(
            format!("generator-{}-degree", i + 1),
            "ideal generators",
            fmt_rows(&[p.degrees[i].clone()]),
        );
        rep.info(
            format!("generator-{}-denominator", i + 1),
            "ideal generators",
            format!(
                "extracted {:?}, catalog prints {:?}",
                p.extracted_denominators[i], p.printed_denominators[i]
            ),
        );
    }
    if !skipped.is_empty() {
        rep.info("retries", "degenerate draws", format!("skipped seeds {skipped:?}"));
    }
    for note in &p.repair_notes {
        rep.note(note.clone());
    }
    emit_reports(out, &[rep])
}

fn cmd_hilbert(ty: &str, n: usize, degree: &str, out: &OutputOpts) -> Result<(), CliError> {
    let ty = parse_type(ty)?;
    let w = parse_degree(degree)?;
    let q = coxring::grading_matrix(ty, n)?;
    let count = coxring::hilbert_dim(&q, &w)?;
    match out.format {
        Format::Text => emit(out, format!("{count}\n"), String::new()),
        Format::Json => {
            let mut rep = Report::new(format!("hilbert {ty} n={n} degree={degree}"));
            rep.info("count", "multigraded Hilbert function", count);
            emit_reports(out, &[rep])
        }
    }
}

fn cmd_classify(input: &PathBuf, out: &OutputOpts) -> Result<(), CliError> {
    let text = if input.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Internal(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?
    };
    let mut rep = Report::new(format!("classify {}", input.display()));
    match classify::parse_instance(&text).and_then(|(y, l)| classify::classify(&y, &l)) {
        Ok(c) => {
            rep.info("type", "Tables 1-2", c.ty);
            for (i, r) in c.records.iter().enumerate() {
                rep.info(
                    format!("point-{}", i + 1),
                    "intersection divisor",
                    format!(
                        "{} multiplicity {} {}",
                        fmt_rows(std::slice::from_ref(&r.point)),
                        r.multiplicity,
                        if r.is_star { "star" } else { "non-star" }
                    ),
                );
            }
        }
        Err(e) => {
            rep.require("classification", "Tables 1-2", false, e);
        }
    }
    emit_reports(out, &[rep])
}

fn cmd_verify(ty: &str, n: usize, seed: u64, out: &OutputOpts) -> Result<(), CliError> {
    let reports = if ty == "all" {
        verify::verify_all(n, seed)?
    } else {
        vec![verify::verify_type(parse_type(ty)?, n, seed)?]
    };
    emit_reports(out, &reports)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Catalog { out } => cmd_catalog(out),
        Cmd::Mw { ty, out } => cmd_mw(ty, out),
        Cmd::Cones { ty, out } => cmd_cones(ty, out),
        Cmd::Coxring { ty, n, seed, out } => cmd_coxring(ty, *n, *seed, out),
        Cmd::Hilbert { ty, n, degree, out } => cmd_hilbert(ty, *n, degree, out),
        Cmd::Classify { input, out } => cmd_classify(input, out),
        Cmd::Verify { ty, n, seed, out } => cmd_verify(ty, *n, *seed, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
