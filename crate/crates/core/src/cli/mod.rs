//! Command-line front end. Every verifying command emits a certificate and
//! exits with its status code.

mod config;
pub mod io;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use config::{RunConfig, BUDGET_ENV};

use crate::analysis::{
    can_tile, find_spectrum, is_log_hadamard, is_spectrum, is_tiling, tiling_fourier_criterion, Budget,
    NonTileReason, Search, TileOutcome,
};
use crate::certificate::{subset_value, to_canonical_json, Certificate, CertificateBuilder, StepOutcome};
use crate::constructions::{
    build_usc_certificate, compose_spectral, compose_tiling, gamma_nonspectral_certificate,
    lifted_obstruction_check, GammaVariant,
};
use crate::error::{Error, Result};
use crate::fourier::{zero_set_with, TransformMode};
use crate::groups::{make_group, ELEMENT_ORDER};

#[derive(Debug, Parser)]
#[command(name = "spectile", version, about = "Exact tiling and spectrality checks in finite abelian groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Search node budget (overrides SPECTILE_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, default_value_t = 0)]
    parallelism: usize,
    /// Transform strategy: naive, tensor or auto.
    #[arg(long, global = true, default_value = "auto")]
    mode: TransformMode,
    /// Record step durations (certificates are then no longer byte-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, exponent and indexing convention of a group.
    GroupInfo {
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u32>,
    },
    /// Checks that A + T covers the group exactly `level` times.
    TileCheck {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        complement: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Decides whether a set tiles its group.
    CanTile {
        #[arg(long)]
        set: PathBuf,
    },
    /// Zero set of the transform of a set's indicator.
    ZeroSet {
        #[arg(long)]
        set: PathBuf,
    },
    /// Checks that a set is a spectrum of another.
    SpectrumCheck {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        spectrum: PathBuf,
    },
    /// Searches for a spectrum containing 0.
    FindSpectrum {
        #[arg(long)]
        set: PathBuf,
    },
    /// Checks that exp(2 pi i M) has orthogonal rows.
    LogHadamard {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Builds a set from tiles of a subgroup and a pair in the quotient.
    Compose {
        #[arg(value_parser = ["tiling", "spectral"])]
        kind: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Certificates for the explicit constructions.
    #[command(subcommand)]
    Paper(PaperCommand),
}

#[derive(Debug, Subcommand)]
enum PaperCommand {
    /// E tiles Z_6^5 and its complements share no spectrum.
    VerifyUsc,
    /// Gamma tiles Z_6^5 x Z_m and is not spectral.
    VerifyGamma {
        #[arg(long, default_value = "z15")]
        variant: GammaVariant,
    },
    /// The obstruction for Gamma at grid resolution k.
    Lift {
        #[arg(long, default_value = "z15")]
        variant: GammaVariant,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
}

impl GlobalArgs {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig {
            output_path: self.out.clone(),
            parallelism: self.parallelism,
            mode: self.mode,
            timings: self.timings,
            ..RunConfig::default()
        }
        .with_env()?;
        if let Some(b) = self.budget {
            cfg.budget = Budget(b);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    let cfg = match cli.global.config() {
        Ok(cfg) => cfg,
        Err(e) => return fail(&cli.global.out, "config", &e),
    };
    let claim = claim_id(&cli.command);
    let result = if cfg.parallelism > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(cfg.parallelism).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &cfg)),
            Err(e) => Err(Error::Precondition(format!("thread pool: {e}"))),
        }
    } else {
        dispatch(&cli.command, &cfg)
    };
    match result {
        Ok(Output::Certificate(cert)) => match emit(&cfg.output_path, &cert.to_canonical_string()) {
            Ok(()) => cert.exit_code(),
            Err(e) => report(&e),
        },
        Ok(Output::Json(v)) => match emit(&cfg.output_path, &to_canonical_json(&v)) {
            Ok(()) => 0,
            Err(e) => report(&e),
        },
        Err(e) => fail(&cfg.output_path, claim, &e),
    }
}

fn report(e: &Error) -> i32 {
    eprintln!("error: {e}");
    3
}

/// Prints the error and still emits a certificate with status `error`.
fn fail(out: &Option<PathBuf>, claim: &str, e: &Error) -> i32 {
    eprintln!("error: {e}");
    let cert = Certificate::error(claim, &e.to_string());
    let _ = emit(out, &cert.to_canonical_string());
    3
}

fn emit(out: &Option<PathBuf>, text: &Result<String>) -> Result<()> {
    let text = match text {
        Ok(t) => t,
        Err(e) => return Err(Error::Precondition(format!("serialization failed: {e}"))),
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum Output {
    Certificate(Certificate),
    Json(serde_json::Value),
}

fn claim_id(c: &Command) -> &'static str {
    match c {
        Command::GroupInfo { .. } => "group_info",
        Command::TileCheck { .. } => "tile_check",
        Command::CanTile { .. } => "can_tile",
        Command::ZeroSet { .. } => "zero_set",
        Command::SpectrumCheck { .. } => "spectrum_check",
        Command::FindSpectrum { .. } => "find_spectrum",
        Command::LogHadamard { .. } => "log_hadamard",
        Command::Compose { .. } => "compose",
        Command::Paper(PaperCommand::VerifyUsc) => "usc",
        Command::Paper(PaperCommand::VerifyGamma { .. }) => "gamma",
        Command::Paper(PaperCommand::Lift { .. }) => "lift",
    }
}

fn file_input(path: &Path) -> serde_json::Value {
    json!({"file": path.display().to_string()})
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Output> {
    let cert = match command {
        Command::GroupInfo { moduli } => {
            let g = make_group(moduli)?;
            return Ok(Output::Json(json!({
                "moduli": g.moduli(),
                "order": g.order(),
                "exponent": g.exponent(),
                "element_order": ELEMENT_ORDER,
            })));
        }
        Command::ZeroSet { set } => {
            let a = io::read_set(set)?;
            let zeros = zero_set_with(&a, cfg.mode)?;
            return Ok(Output::Json(serde_json::to_value(io::ZeroSetFile {
                moduli: a.group().moduli().to_vec(),
                zeros: zeros.coord_rows(),
            })?));
        }
        Command::TileCheck { set, complement, level } => {
            let a = io::read_set(set)?;
            let t = io::read_set(complement)?;
            let mut b = CertificateBuilder::new("tile_check", &format!("A + T covers the group {level} time(s)"), cfg.timings);
            b.check(
                "is_tiling",
                "every element is covered exactly level times",
                &json!({"a": subset_value(&a), "t": subset_value(&t), "level": level}),
                || {
                    let ok = is_tiling(&a, &t, *level)?;
                    let mut out = json!({
                        "group_order": a.group().order(),
                        "set_size": a.len(),
                        "complement_size": t.len(),
                    });
                    if *level == 1 && a.len() * t.len() == a.group().order() {
                        out["fourier_criterion"] = json!(tiling_fourier_criterion(&a, &t)?);
                    }
                    Ok((ok, out))
                },
            )?;
            b.finish()
        }
        Command::CanTile { set } => {
            let a = io::read_set(set)?;
            let mut b = CertificateBuilder::new("can_tile", "A tiles its group", cfg.timings);
            let inputs = json!({"a": subset_value(&a), "budget": cfg.budget.0});
            let (outcome, outputs) = match can_tile(&a, cfg.budget)? {
                TileOutcome::Tiles {
                    complement,
                    translation,
                    subgroup_order,
                    nodes,
                } => (
                    StepOutcome::Holds,
                    json!({
                        "complement": subset_value(&complement),
                        "translation": translation.map(|t| t.coords().to_vec()),
                        "generated_subgroup_order": subgroup_order,
                        "nodes": nodes,
                    }),
                ),
                TileOutcome::NotTile(reason) => (StepOutcome::Fails, non_tile_value(&reason)),
                TileOutcome::Inconclusive { subgroup_order, nodes } => (
                    StepOutcome::Inconclusive,
                    json!({"generated_subgroup_order": subgroup_order, "nodes": nodes}),
                ),
            };
            b.record("can_tile", "search for a tiling complement", outcome, &inputs, outputs);
            b.finish()
        }
        Command::SpectrumCheck { set, spectrum } => {
            let a = io::read_set(set)?;
            let l = io::read_set(spectrum)?;
            let mut b = CertificateBuilder::new("spectrum_check", "Lambda is a spectrum of A", cfg.timings);
            b.check(
                "is_spectrum",
                "|Lambda| = |A| and ft(A) vanishes on the nonzero differences of Lambda",
                &json!({"a": subset_value(&a), "lambda": subset_value(&l)}),
                || Ok((is_spectrum(&a, &l)?, json!({"set_size": a.len(), "spectrum_size": l.len()}))),
            )?;
            b.finish()
        }
        Command::FindSpectrum { set } => {
            let a = io::read_set(set)?;
            let mut b = CertificateBuilder::new("find_spectrum", "A has a spectrum", cfg.timings);
            let inputs = json!({"a": subset_value(&a), "budget": cfg.budget.0});
            let (outcome, outputs) = match find_spectrum(&a, cfg.budget)? {
                Search::Found { value, nodes } => (
                    StepOutcome::Holds,
                    json!({"spectrum": subset_value(&value), "nodes": nodes}),
                ),
                Search::Exhausted { nodes } => (StepOutcome::Fails, json!({"exhausted": true, "nodes": nodes})),
                Search::Inconclusive { nodes } => (StepOutcome::Inconclusive, json!({"nodes": nodes})),
            };
            b.record("find_spectrum", "clique search anchored at 0", outcome, &inputs, outputs);
            b.finish()
        }
        Command::LogHadamard { matrix } => {
            let m = io::read_matrix(matrix)?;
            let mut b = CertificateBuilder::new("log_hadamard", "exp(2 pi i M) has orthogonal rows", cfg.timings);
            let rows: Vec<Vec<String>> = m
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            b.check(
                "is_log_hadamard",
                "pairwise row inner products vanish exactly",
                &json!({"rows": rows}),
                || Ok((is_log_hadamard(&m)?, json!({"root_order": m.common_denominator(), "size": rows.len()}))),
            )?;
            b.finish()
        }
        Command::Compose { kind, input } => {
            let c = io::read_bundle(input)?;
            let spectral = kind == "spectral";
            let out = if spectral { compose_spectral(&c)? } else { compose_tiling(&c)? };
            let mut b = CertificateBuilder::new(
                &format!("compose_{kind}"),
                if spectral {
                    "the composed set has spectrum L + Q'~"
                } else {
                    "the composed set tiles with T' + S'~"
                },
                cfg.timings,
            );
            b.check(
                "composition_verified",
                if spectral { "is_spectrum(Gamma, L + Q'~)" } else { "is_tiling(Gamma, T' + S'~)" },
                &file_input(input),
                || {
                    let key = if spectral { "spectrum" } else { "complement" };
                    let mut v = json!({"gamma": subset_value(&out.gamma)});
                    v[key] = subset_value(&out.partner);
                    Ok((out.verified, v))
                },
            )?;
            b.finish()
        }
        Command::Paper(PaperCommand::VerifyUsc) => build_usc_certificate(cfg)?,
        Command::Paper(PaperCommand::VerifyGamma { variant }) => gamma_nonspectral_certificate(*variant, cfg)?,
        Command::Paper(PaperCommand::Lift { variant, k }) => lifted_obstruction_check(*variant, *k, cfg)?,
    };
    Ok(Output::Certificate(cert))
}

fn non_tile_value(reason: &NonTileReason) -> serde_json::Value {
    match reason {
        NonTileReason::OrderDivisibility { set_size, group_order } => json!({
            "reason": "order_divisibility", "set_size": set_size, "group_order": group_order,
        }),
        NonTileReason::SubgroupDivisibility { set_size, subgroup_order } => json!({
            "reason": "subgroup_divisibility", "set_size": set_size, "generated_subgroup_order": subgroup_order,
        }),
        NonTileReason::SearchExhausted { subgroup_order, nodes } => json!({
            "reason": "search_exhausted", "generated_subgroup_order": subgroup_order, "nodes": nodes,
        }),
    }
}
