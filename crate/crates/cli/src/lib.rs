//! Command implementations behind the `quclone` binary.

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use quclone_core::cazac::{autocorr2d, autocorr_csv};
use quclone_core::circuits::{
    build_enc_circuit, build_udec_circuit, build_vpx_circuit, build_vpz_circuit, counts_csv, counts_table, Circuit,
    GateCounts, DEFAULT_N_SET,
};
use quclone_core::protocol::{
    run_protocol, verify_identities, DecryptionRoute, IdentityReport, ProtocolParams, ProtocolReport, Tolerances,
    VerifyOptions,
};
use quclone_core::tensor::{random_state, Register};
use quclone_core::DEFAULT_TOL;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code for a run whose numerical checks failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit code for bad flags, size-cap violations and I/O problems.
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "quclone", version, about = "Simulator and verification suite for cloning encrypted qudit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CircuitKind {
    /// `V(P_Z)` on (A, S1..Sn).
    Vpz,
    /// `V(P_X)` on (A, S1..Sn).
    Vpx,
    /// Full encryption, `V(P_Z)` then `V(P_X)`.
    Enc,
    /// Decryption on (S_t, N_t, other N_j).
    Udec,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite over a range of dimensions.
    Verify {
        /// Single dimension; overrides --d-range.
        #[arg(long)]
        d: Option<usize>,
        /// Inclusive range such as `2..7`.
        #[arg(long, value_parser = parse_range, default_value = "2..7")]
        d_range: RangeInclusive<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random operators or states per identity.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the protocol end to end on a seeded random data state.
    Run {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Decrypt with the gate-level circuit instead of the dense operator.
        #[arg(long)]
        circuit: bool,
        /// 1-based index of the receiving party.
        #[arg(long, default_value_t = 1)]
        target_party: usize,
        /// Include wall-clock timings (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the gate-count table.
    Counts {
        #[arg(long, value_parser = parse_range, default_value = "2..10")]
        d_range: RangeInclusive<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_N_SET)]
        n_set: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the 2D autocorrelation magnitudes of the coefficient grid.
    Autocorr {
        #[arg(long)]
        d: Option<usize>,
        /// Several dimensions in one table with a leading `d` column.
        #[arg(long, value_parser = parse_range)]
        d_range: Option<RangeInclusive<usize>>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a built circuit as a JSON gate list.
    CircuitDump {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CircuitKind::Udec)]
        circuit: CircuitKind,
        #[arg(long, default_value_t = 1)]
        target_party: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `a..b` or `a..=b`, both inclusive.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a range like 2..7, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: usize = a.trim().parse().map_err(|e| format!("bad range start `{a}`: {e}"))?;
    let hi: usize = b.trim().parse().map_err(|e| format!("bad range end `{b}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// Text produced by a command and the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: u8,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    tool_version: &'a str,
    tolerance: f64,
    seed: u64,
    samples: usize,
    passed: bool,
    reports: Vec<IdentityReport>,
}

#[derive(Serialize)]
struct RunOutput<'a> {
    tool_version: &'a str,
    tolerance: f64,
    passed: bool,
    #[serde(flatten)]
    report: ProtocolReport,
}

#[derive(Serialize)]
struct CountsOutput<'a> {
    tool_version: &'a str,
    rows: Vec<GateCounts>,
}

#[derive(Serialize)]
struct AutocorrOutput<'a> {
    tool_version: &'a str,
    d: usize,
    magnitudes: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct CircuitOutput<'a> {
    tool_version: &'a str,
    circuit: &'a str,
    d: usize,
    n: usize,
    gate_count: usize,
    #[serde(flatten)]
    body: &'a Circuit,
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be a positive finite number, got {tol}");
    }
    Ok(())
}

fn params(d: usize, n: usize, target_party: usize) -> Result<ProtocolParams> {
    ProtocolParams::new(d, n)
        .and_then(|p| p.with_target(target_party))
        .with_context(|| format!("invalid configuration (d = {d}, n = {n})"))
}

fn cmd_verify(d_range: RangeInclusive<usize>, tol: f64, seed: u64, samples: usize) -> Result<Outcome> {
    check_tol(tol)?;
    let opts = VerifyOptions { tol, seed, samples };
    let reports = d_range
        .into_par_iter()
        .map(|d| verify_identities(d, &opts).with_context(|| format!("identity suite at d = {d}")))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(IdentityReport::all_passed);
    let output = json(&VerifyOutput { tool_version: VERSION, tolerance: tol, seed, samples, passed, reports })?;
    Ok(Outcome { output, exit_code: if passed { 0 } else { EXIT_CHECK_FAILED } })
}

#[allow(clippy::too_many_arguments)]
fn cmd_run(d: usize, n: usize, seed: u64, tol: f64, circuit: bool, target: usize, timings: bool) -> Result<Outcome> {
    check_tol(tol)?;
    let p = params(d, n, target)?;
    p.cap
        .state_len("protocol state vector", d, 2 * n + 1)
        .with_context(|| format!("state vector for d = {d}, n = {n} is too large"))?;
    let psi = random_state(Register::new(d, ["A"])?, seed)?;
    let route = if circuit { DecryptionRoute::Circuit } else { DecryptionRoute::Dense };
    let mut report = run_protocol(&p, &psi, Some(seed), route)?;
    report.tolerances = Tolerances { marginal: tol, fidelity: tol };
    if !timings {
        report.timings_ms = None;
    }
    let passed = report.passes();
    let output = json(&RunOutput { tool_version: VERSION, tolerance: tol, passed, report })?;
    Ok(Outcome { output, exit_code: if passed { 0 } else { EXIT_CHECK_FAILED } })
}

fn cmd_counts(d_range: RangeInclusive<usize>, n_set: &[usize], format: Format) -> Result<Outcome> {
    let rows = counts_table(d_range, n_set)?;
    let output = match format {
        Format::Csv => counts_csv(&rows),
        Format::Json => json(&CountsOutput { tool_version: VERSION, rows })?,
    };
    Ok(Outcome { output, exit_code: 0 })
}

fn cmd_autocorr(d: Option<usize>, d_range: Option<RangeInclusive<usize>>, format: Format) -> Result<Outcome> {
    let output = match (d, d_range, format) {
        (Some(d), None, Format::Csv) => autocorr_csv(d)?,
        (Some(d), None, Format::Json) => {
            json(&AutocorrOutput { tool_version: VERSION, d, magnitudes: autocorr2d(d)? })?
        }
        (None, Some(range), Format::Csv) => {
            let mut out = String::from("d,m,n,magnitude\n");
            for d in range {
                for line in autocorr_csv(d)?.lines().skip(1) {
                    out.push_str(&format!("{d},{line}\n"));
                }
            }
            out
        }
        (None, Some(range), Format::Json) => {
            let tables = range
                .map(|d| Ok(AutocorrOutput { tool_version: VERSION, d, magnitudes: autocorr2d(d)? }))
                .collect::<Result<Vec<_>>>()?;
            json(&tables)?
        }
        _ => bail!("autocorr needs exactly one of --d or --d-range"),
    };
    Ok(Outcome { output, exit_code: 0 })
}

fn cmd_circuit_dump(d: usize, n: usize, kind: CircuitKind, target: usize) -> Result<Outcome> {
    let p = params(d, n, target)?;
    let (name, circuit) = match kind {
        CircuitKind::Vpz => ("vpz", build_vpz_circuit(d, n)?),
        CircuitKind::Vpx => ("vpx", build_vpx_circuit(d, n)?),
        CircuitKind::Enc => ("enc", build_enc_circuit(&p)?),
        CircuitKind::Udec => ("udec", build_udec_circuit(&p)?),
    };
    let output =
        json(&CircuitOutput { tool_version: VERSION, circuit: name, d, n, gate_count: circuit.len(), body: &circuit })?;
    Ok(Outcome { output, exit_code: 0 })
}

/// Executes a parsed command. Errors are configuration problems (exit 2);
/// failed numerical checks come back as an [`Outcome`] with exit code 1.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let (outcome, out) = match &cli.command {
        Command::Verify { d, d_range, tol, seed, samples, out } => {
            let range = d.map(|d| d..=d).unwrap_or_else(|| d_range.clone());
            (cmd_verify(range, *tol, *seed, *samples)?, out)
        }
        Command::Run { d, n, seed, tol, circuit, target_party, timings, out } => {
            (cmd_run(*d, *n, *seed, *tol, *circuit, *target_party, *timings)?, out)
        }
        Command::Counts { d_range, n_set, format, out } => (cmd_counts(d_range.clone(), n_set, *format)?, out),
        Command::Autocorr { d, d_range, format, out } => (cmd_autocorr(*d, d_range.clone(), *format)?, out),
        Command::CircuitDump { d, n, circuit, target_party, out } => {
            (cmd_circuit_dump(*d, *n, *circuit, *target_party)?, out)
        }
    };
    match out {
        Some(path) => {
            fs::write(path, &outcome.output).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(Outcome { output: String::new(), ..outcome })
        }
        None => Ok(outcome),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("quclone").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_range("3..=3").unwrap(), 3..=3);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("7").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn defaults() {
        match parse(&["counts"]).command {
            Command::Counts { d_range, n_set, format, out } => {
                assert_eq!(d_range, 2..=10);
                assert_eq!(n_set, [2, 5, 10]);
                assert_eq!(format, Format::Csv);
                assert!(out.is_none());
            }
            other => panic!("{other:?}"),
        }
        match parse(&["counts", "--n-set", "1,3"]).command {
            Command::Counts { n_set, .. } => assert_eq!(n_set, [1, 3]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn run_report_is_reproducible_without_timings() {
        let cli = parse(&["run", "--d", "2", "--n", "2", "--seed", "4"]);
        let a = execute(&cli).unwrap();
        let b = execute(&cli).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&a.output).unwrap();
        assert!(v["timings_ms"].is_null());
        assert_eq!(v["tool_version"], VERSION);
        assert_eq!(v["tolerance"], DEFAULT_TOL);
        assert_eq!(v["route"], "dense");
    }

    #[test]
    fn timings_are_opt_in() {
        let out = execute(&parse(&["run", "--d", "2", "--n", "2", "--timings"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert!(v["timings_ms"]["total"].as_f64().unwrap() >= 0.0);
    }

    #[test]
    fn configuration_errors() {
        assert!(execute(&parse(&["run", "--d", "1", "--n", "1"])).is_err());
        assert!(execute(&parse(&["run", "--d", "2", "--n", "11"])).is_err());
        assert!(execute(&parse(&["run", "--d", "3", "--n", "2", "--target-party", "3"])).is_err());
        assert!(execute(&parse(&["run", "--d", "3", "--n", "1", "--tol", "0"])).is_err());
        assert!(execute(&parse(&["verify", "--d-range", "2..9"])).is_err());
        assert!(execute(&parse(&["autocorr"])).is_err());
        assert!(execute(&parse(&["autocorr", "--d", "3", "--d-range", "2..3"])).is_err());
    }

    #[test]
    fn autocorr_tables() {
        let out = execute(&parse(&["autocorr", "--d-range", "2..3"])).unwrap();
        assert_eq!(out.output.lines().count(), 1 + 4 + 9);
        assert!(out.output.starts_with("d,m,n,magnitude\n2,0,0,1.000000000000\n"));
        let out = execute(&parse(&["autocorr", "--d", "2", "--format", "json"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["magnitudes"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn circuit_dump_lists_gates() {
        let out = execute(&parse(&["circuit-dump", "--d", "2", "--n", "1", "--circuit", "vpz"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["gate_count"], 3);
        assert_eq!(v["ops"].as_array().unwrap().len(), 3);
        assert_eq!(v["ops"][0]["kind"], "x_power");
        assert_eq!(v["ops"][1]["kind"], "diagonal_phase");
        assert_eq!(v["register"]["wires"], serde_json::json!(["A", "S1"]));
    }
}
