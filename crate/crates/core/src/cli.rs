//! Batch front-end: `census`, `verify` and `spectrum` subcommands.
//!
//! Exit status: 0 when every selected check passes, 1 on a verification
//! failure, 2 on usage or configuration errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{census, AlgebraCensus};
use crate::models::{Model, ModelSpec};
use crate::sqm::{GridSpec, NumericRealization, Superpotential};
use crate::verify::{
    central_rank, count_generated_operators, orbit_decomposition, spectrum, verify_model, GeneratedCount,
    OrbitReport, RankReport, RelationReport, SpectrumOptions, SpectrumReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const CENSUS_MIN: usize = 2;
pub const CENSUS_MAX: usize = 10;

pub const DEFAULT_GRID_POINTS: usize = 601;
pub const DEFAULT_GRID_SPACING: f64 = 0.02;

#[derive(Parser, Debug)]
#[command(name = "z2n-sqm", version, about = "Build and verify Z2^n-graded SQM models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Counts of supercharges and central elements of g(n).
    Census(CensusArgs),
    /// Exact check of the defining relations and centrality.
    Verify(RunArgs),
    /// Eigenvalue multiplicities of H in a numeric realization.
    Spectrum(RunArgs),
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Markdown,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long, default_value_t = CENSUS_MIN)]
    pub from: usize,
    #[arg(long, default_value_t = CENSUS_MAX)]
    pub to: usize,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct RunArgs {
    /// `minimal:n=4`, `next:n=3`, `maximal:n=4`, `n4cl12`, `n4cl10`, `n5cl28` or `n5cl26`.
    #[arg(long)]
    pub model: Option<String>,
    /// TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Truncated Fock realization with this cutoff.
    #[arg(long, value_name = "N")]
    pub fock: Option<usize>,
    /// Finite-difference grid realization.
    #[arg(long)]
    pub grid: bool,
    #[arg(long, value_name = "P")]
    pub points: Option<usize>,
    #[arg(long, value_name = "h")]
    pub spacing: Option<f64>,
    /// Left end of the grid (default: centred on 0).
    #[arg(long, value_name = "x0", allow_negative_numbers = true)]
    pub start: Option<f64>,
    /// Superpotential: polynomial in x, or `table:<file>`.
    #[arg(long = "W", value_name = "expr", allow_hyphen_values = true)]
    pub superpotential: Option<String>,
    /// Number of lowest clusters reported for grid spectra.
    #[arg(long)]
    pub clusters: Option<usize>,
    #[arg(long)]
    pub rank: bool,
    #[arg(long)]
    pub orbits: bool,
    /// Count independent products of supercharges.
    #[arg(long)]
    pub generated: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    model: Option<String>,
    realization: Option<String>,
    cutoff: Option<usize>,
    grid: Option<GridConfig>,
    #[serde(rename = "W")]
    superpotential: Option<String>,
    clusters: Option<usize>,
    rank: Option<bool>,
    orbits: Option<bool>,
    generated: Option<bool>,
    format: Option<Format>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridConfig {
    points: Option<usize>,
    spacing: Option<f64>,
    start: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RealizationConfig {
    Fock { cutoff: usize },
    Grid(GridSpec),
}

impl RealizationConfig {
    pub fn build(&self) -> Result<NumericRealization> {
        match self {
            RealizationConfig::Fock { cutoff } => NumericRealization::fock(*cutoff),
            RealizationConfig::Grid(spec) => NumericRealization::grid(spec.clone()),
        }
    }
}

/// Fully resolved settings of a `verify` or `spectrum` run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub realization: Option<RealizationConfig>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub rank: bool,
    pub orbits: bool,
    pub generated: bool,
    pub clusters: usize,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Merges the flags over the optional config file.
    pub fn resolve(args: &RunArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                toml::from_str::<ConfigFile>(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let selector = args
            .model
            .clone()
            .or(file.model)
            .ok_or_else(|| Error::Config("no model selected (use --model)".into()))?;
        let model: ModelSpec = selector.parse()?;

        let grid_file = file.grid.unwrap_or_default();
        let kind = if args.fock.is_some() {
            Some("fock")
        } else if args.grid {
            Some("grid")
        } else {
            file.realization.as_deref()
        };
        let realization = match kind {
            None => None,
            Some("fock") => {
                let cutoff = args
                    .fock
                    .or(file.cutoff)
                    .ok_or_else(|| Error::Config("Fock realization needs a cutoff".into()))?;
                Some(RealizationConfig::Fock { cutoff })
            }
            Some("grid") => {
                let expr = args
                    .superpotential
                    .clone()
                    .or(file.superpotential)
                    .unwrap_or_else(|| "x".into());
                let mut spec = GridSpec::new(
                    args.points.or(grid_file.points).unwrap_or(DEFAULT_GRID_POINTS),
                    args.spacing.or(grid_file.spacing).unwrap_or(DEFAULT_GRID_SPACING),
                    Superpotential::parse(&expr)?,
                );
                spec.start = args.start.or(grid_file.start);
                Some(RealizationConfig::Grid(spec))
            }
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown realization `{other}` (expected fock or grid)"
                )))
            }
        };
        if let Some(0) = args.jobs.or(file.jobs) {
            return Err(Error::Config("--jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            model,
            realization,
            format: args.format.or(file.format).unwrap_or_default(),
            out: args.out.clone().or(file.out),
            rank: args.rank || file.rank.unwrap_or(false),
            orbits: args.orbits || file.orbits.unwrap_or(false),
            generated: args.generated || file.generated.unwrap_or(false),
            clusters: args.clusters.or(file.clusters).unwrap_or(SpectrumOptions::default().grid_clusters),
            jobs: args.jobs.or(file.jobs),
        })
    }
}

#[derive(Serialize)]
struct CensusRow {
    n: usize,
    supercharges: u64,
    central_elements: u64,
    central_subspace_dim: u64,
}

impl From<AlgebraCensus> for CensusRow {
    fn from(c: AlgebraCensus) -> Self {
        CensusRow {
            n: c.n,
            supercharges: c.num_supercharges,
            central_elements: c.num_central,
            central_subspace_dim: c.dim_central_subspace,
        }
    }
}

/// Census rows for `from..=to`.
pub fn cmd_census(from: usize, to: usize) -> Result<Vec<AlgebraCensus>> {
    for n in [from, to] {
        if !(CENSUS_MIN..=CENSUS_MAX).contains(&n) {
            return Err(Error::RankOutOfRange {
                n,
                min: CENSUS_MIN,
                max: CENSUS_MAX,
            });
        }
    }
    if from > to {
        return Err(Error::Config(format!("empty range {from}..={to}")));
    }
    (from..=to).map(census).collect()
}

pub fn render_census(rows: &[AlgebraCensus], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<CensusRow> = rows.iter().map(|&c| c.into()).collect();
            serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
        }
        Format::Csv => {
            let rows: Vec<CensusRow> = rows.iter().map(|&c| c.into()).collect();
            to_csv(&rows)
        }
        Format::Markdown => {
            let mut s = String::from("| n | #Q | #Z | dim Z |\n|---|---|---|---|\n");
            for c in rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    c.n, c.num_supercharges, c.num_central, c.dim_central_subspace
                );
            }
            s
        }
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("flat rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

/// Everything a `verify` run produces.
#[derive(Serialize)]
pub struct VerifyOutput {
    pub relations: RelationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<RankReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<OrbitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated: Option<GeneratedCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumReport>,
}

impl VerifyOutput {
    pub fn passed(&self) -> bool {
        self.relations.overall
            && self.rank.as_ref().is_none_or(|r| r.bounds_hold())
            && self.spectrum.as_ref().is_none_or(|s| s.degeneracy_pass)
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<VerifyOutput> {
    let model = Model::build(&config.model)?;
    let relations = verify_model(&model);
    let rank = config.rank.then(|| central_rank(&model));
    let orbits = config.orbits.then(|| orbit_decomposition(&model));
    let generated = if config.generated {
        Some(count_generated_operators(&model)?)
    } else {
        None
    };
    let spectrum = match &config.realization {
        Some(r) => Some(spectrum_for(&model, r, config)?),
        None => None,
    };
    Ok(VerifyOutput {
        relations,
        rank,
        orbits,
        generated,
        spectrum,
    })
}

fn spectrum_for(model: &Model, r: &RealizationConfig, config: &RunConfig) -> Result<SpectrumReport> {
    let options = SpectrumOptions {
        grid_clusters: config.clusters,
    };
    spectrum(model, &r.build()?, &options)
}

pub fn cmd_spectrum(config: &RunConfig) -> Result<SpectrumReport> {
    let r = config
        .realization
        .as_ref()
        .ok_or_else(|| Error::Config("spectrum needs --fock N or --grid".into()))?;
    let model = Model::build(&config.model)?;
    spectrum_for(&model, r, config)
}

/// Energies printed without floating noise: six decimals, trailing zeros dropped.
pub fn format_energy(e: f64) -> String {
    let s = format!("{:.6}", e);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct ClusterRow {
    energy: String,
    multiplicity: usize,
}

pub fn render_spectrum(report: &SpectrumReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        Format::Csv => {
            let rows: Vec<ClusterRow> = report
                .clusters
                .iter()
                .map(|c| ClusterRow {
                    energy: format_energy(c.energy),
                    multiplicity: c.multiplicity,
                })
                .collect();
            to_csv(&rows)
        }
        Format::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "# Spectrum of {} in {}\n", report.model, report.realization);
            s.push_str("| E | multiplicity |\n|---|---|\n");
            for c in &report.clusters {
                let _ = writeln!(s, "| {} | {} |", format_energy(c.energy), c.multiplicity);
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "- total dimension: {}", report.total_dim);
            let _ = writeln!(s, "- zero modes from kernels: {}", report.zero_modes);
            let _ = writeln!(s, "- excluded levels: {}", report.excluded_levels);
            if report.levels_above_window > 0 {
                let _ = writeln!(s, "- levels above window: {}", report.levels_above_window);
            }
            let _ = writeln!(
                s,
                "- expected: E=0 multiplicity {} or absent, E>0 multiplicity {}",
                report.expected_zero_multiplicity, report.expected_excited_multiplicity
            );
            let _ = writeln!(s, "- degeneracy: {}", pass_word(report.degeneracy_pass));
            s
        }
    }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    kind: &'static str,
    left: String,
    right: String,
    bracket: &'static str,
    pass: bool,
    residual: &'a str,
}

fn bracket_name(kind: crate::grading::BracketKind) -> &'static str {
    match kind {
        crate::grading::BracketKind::Commutator => "commutator",
        crate::grading::BracketKind::Anticommutator => "anticommutator",
    }
}

/// At most this many failing checks are listed in markdown output.
const MAX_LISTED_FAILURES: usize = 20;

pub fn render_verify(out: &VerifyOutput, format: Format) -> String {
    let rel = &out.relations;
    match format {
        Format::Json => serde_json::to_string_pretty(out).expect("serializable") + "\n",
        Format::Csv => {
            let mut rows: Vec<CheckRow> = rel
                .pair_results
                .iter()
                .map(|p| CheckRow {
                    kind: "relation",
                    left: format!("Q[{}]", p.a),
                    right: format!("Q[{}]", p.b),
                    bracket: bracket_name(p.bracket),
                    pass: p.pass,
                    residual: p.residual.as_deref().unwrap_or(""),
                })
                .collect();
            rows.extend(rel.centrality_results.iter().map(|c| CheckRow {
                kind: "centrality",
                left: c.left.clone(),
                right: c.right.clone(),
                bracket: bracket_name(c.bracket),
                pass: c.pass,
                residual: c.residual.as_deref().unwrap_or(""),
            }));
            to_csv(&rows)
        }
        Format::Markdown => {
            let mut s = String::new();
            let spec = &rel.model;
            let _ = writeln!(
                s,
                "# Verification of {} (dimension {})\n",
                spec,
                spec.total_dim()
            );
            let pairs_ok = rel.pair_results.iter().filter(|p| p.pass).count();
            let cent_ok = rel.centrality_results.iter().filter(|c| c.pass).count();
            s.push_str("| check | passed | total |\n|---|---|---|\n");
            let _ = writeln!(s, "| defining relations | {} | {} |", pairs_ok, rel.pair_results.len());
            let _ = writeln!(s, "| centrality | {} | {} |", cent_ok, rel.centrality_results.len());
            let _ = writeln!(s, "\noverall: {}", pass_word(rel.overall));

            let failures: Vec<String> = rel
                .pair_results
                .iter()
                .filter(|p| !p.pass)
                .map(|p| {
                    format!(
                        "Q[{}] with Q[{}]: {}",
                        p.a,
                        p.b,
                        p.residual.as_deref().unwrap_or("")
                    )
                })
                .chain(
                    rel.centrality_results
                        .iter()
                        .filter(|c| !c.pass)
                        .map(|c| format!("{} with {}: {}", c.left, c.right, c.residual.as_deref().unwrap_or(""))),
                )
                .collect();
            if !failures.is_empty() {
                let _ = writeln!(s, "\n## Failures ({})\n", failures.len());
                for f in failures.iter().take(MAX_LISTED_FAILURES) {
                    let _ = writeln!(s, "- {f}");
                }
            }

            if let Some(rank) = &out.rank {
                let _ = writeln!(s, "\n## Central rank (subspace dimension {})\n", rank.subspace_dim);
                s.push_str("| degree | elements | rank | dependent classes |\n|---|---|---|---|\n");
                for sub in &rank.subspaces {
                    let dependent: Vec<String> = sub
                        .classes
                        .iter()
                        .filter(|c| c.len() > 1)
                        .map(|c| c.join(" ~ "))
                        .collect();
                    let _ = writeln!(
                        s,
                        "| {} | {} | {} | {} |",
                        sub.degree,
                        sub.elements.len(),
                        sub.rank,
                        if dependent.is_empty() { "-".to_string() } else { dependent.join("; ") }
                    );
                }
                let _ = writeln!(s, "\nall central elements independent: {}", rank.all_independent);
            }
            if let Some(orbits) = &out.orbits {
                let sizes: Vec<String> = orbits.sizes.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(
                    s,
                    "\n## Orbits\n\n{} components of sizes [{}] over {} basis lines",
                    orbits.component_count(),
                    sizes.join(", "),
                    orbits.index_count
                );
            }
            if let Some(g) = &out.generated {
                let per: Vec<String> = g.per_sector.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(
                    s,
                    "\n## Generated operators\n\ntotal {}, per sector [{}]",
                    g.total,
                    per.join(", ")
                );
            }
            if let Some(sp) = &out.spectrum {
                s.push('\n');
                s.push_str(&render_spectrum(sp, Format::Markdown).replacen("# ", "## ", 1));
            }
            s
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn run_inner(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Census(args) => {
            let rows = cmd_census(args.from, args.to)?;
            emit(&render_census(&rows, args.format.unwrap_or_default()), args.out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::Verify(args) => {
            let config = RunConfig::resolve(args)?;
            let out = with_jobs(config.jobs, || cmd_verify(&config))??;
            emit(&render_verify(&out, config.format), config.out.as_deref())?;
            Ok(if out.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Spectrum(args) => {
            let config = RunConfig::resolve(args)?;
            let report = cmd_spectrum(&config)?;
            emit(&render_spectrum(&report, config.format), config.out.as_deref())?;
            Ok(if report.degeneracy_pass { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

/// Runs a parsed command line and returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    match run_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
