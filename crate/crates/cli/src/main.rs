mod regions;
mod render;

use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ribbonry::enumerate::{entropy_of, enumerate_tilings_with};
use ribbonry::sheffield::{build_graph, DEFAULT_FREE_EDGE_LIMIT};
use ribbonry::verify::{run_suite, Suite, VerifyOptions};
use ribbonry::{count_tilings_with, CountOptions, Region, Tiling, TilingSampler};

use regions::{ribbon_length, RegionArgs, ResolvedRegion};

#[derive(Parser, Debug)]
#[command(name = "ribbonry", version, about = "Count, list, sample and draw n-ribbon tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
    Dot,
}

#[derive(clap::Args, Debug, Clone)]
struct Tuning {
    /// Worker threads for counting; results do not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// Approximate memo budget in bytes. RIBBONRY_MEMO_LIMIT takes precedence.
    #[arg(long, value_name = "BYTES")]
    memo_limit: Option<usize>,
}

impl Tuning {
    fn options(&self) -> CountOptions {
        CountOptions { threads: self.threads as usize, memo_limit_bytes: self.memo_limit, ..CountOptions::default() }
            .with_env_overrides()
    }
}

#[derive(clap::Args, Debug, Clone)]
struct Target {
    #[command(flatten)]
    region: RegionArgs,
    /// Ribbon length; implied by --aztec and --stair.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact number of tilings, tile count and per-tile entropy.
    Count {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Every tiling, one per line.
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        tuning: Tuning,
        /// Stop after this many tilings.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// One uniformly random tiling, fixed by the seed.
    Sample {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Draws a tiling read from a JSON file, or from stdin with `-`.
    Render {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
    },
    /// Runs a named suite of cross-checks.
    Verify {
        #[arg(value_parser = ["formulas", "bijection", "growth", "stanley", "all"])]
        suite: String,
        /// Region for the growth suite, replacing its default rectangles.
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 64)]
        free_edge_limit: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tile graph with its partial orientation.
    Graph {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_FREE_EDGE_LIMIT)]
        free_edge_limit: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

/// Failure with its exit status: 1 for runtime and domain failures, 2 for
/// usage errors.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, error: error.into() }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

impl From<ribbonry::Error> for Failure {
    fn from(error: ribbonry::Error) -> Self {
        let code = match error {
            ribbonry::Error::InvalidArgument(_) | ribbonry::Error::Parse { .. } => 2,
            _ => 1,
        };
        Failure { code, error: error.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(error: io::Error) -> Self {
        Failure { code: 1, error: error.into() }
    }
}

type Outcome = Result<(), Failure>;

fn resolve(target: &Target) -> Result<(Region, usize), Failure> {
    let resolved: ResolvedRegion = target.region.resolve().map_err(usage)?;
    let n = ribbon_length(target.n.map(|n| n as usize), &resolved).map_err(usage)?;
    Ok((resolved.region, n))
}

fn check_format(format: Format, allowed: &[Format]) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(anyhow::anyhow!("format {format:?} is not available for this command")))
    }
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn write_tiling(out: &mut impl Write, tiling: &Tiling, format: Format) -> io::Result<()> {
    match format {
        Format::Svg => write!(out, "{}", render::to_svg(tiling)),
        Format::Text => write!(out, "{}", render::to_ascii(tiling)),
        _ => write_json(out, tiling),
    }
}

#[derive(Serialize)]
struct CountOutput {
    #[serde(serialize_with = "ribbonry::serde_decimal")]
    count: ribbonry::BigCount,
    tiles: Option<usize>,
    entropy: Option<f64>,
}

fn count(target: &Target, tuning: &Tuning, format: Format, out: &mut impl Write) -> Outcome {
    check_format(format, &[Format::Json, Format::Text])?;
    let (region, n) = resolve(target)?;
    let count = count_tilings_with(&region, n, &tuning.options())?;
    let tiles = (region.area() % n == 0).then_some(region.area() / n);
    let entropy = entropy_of(&count, region.area(), n).ok();
    if format == Format::Text {
        let tiles = tiles.map_or("-".to_string(), |t| t.to_string());
        let entropy = entropy.map_or("-".to_string(), |e| format!("{e:.6}"));
        writeln!(out, "count {count}\ntiles {tiles}\nentropy {entropy}")?;
    } else {
        write_json(out, &CountOutput { count, tiles, entropy })?;
    }
    Ok(())
}

fn enumerate(target: &Target, tuning: &Tuning, limit: Option<usize>, format: Format, out: &mut impl Write) -> Outcome {
    check_format(format, &[Format::Json, Format::Text])?;
    let (region, n) = resolve(target)?;
    let tilings = enumerate_tilings_with(&region, n, &tuning.options())?;
    for (i, tiling) in tilings.take(limit.unwrap_or(usize::MAX)).enumerate() {
        if format == Format::Text && i > 0 {
            writeln!(out)?;
        }
        write_tiling(out, &tiling, format)?;
    }
    Ok(())
}

fn sample(target: &Target, tuning: &Tuning, seed: u64, format: Format, out: &mut impl Write) -> Outcome {
    check_format(format, &[Format::Json, Format::Text, Format::Svg])?;
    let (region, n) = resolve(target)?;
    let mut sampler = TilingSampler::with_options(&region, n, seed, &tuning.options())?;
    let tiling = sampler.sample()?;
    write_tiling(out, &tiling, format)?;
    Ok(())
}

fn render(input: &PathBuf, format: Format, out: &mut impl Write) -> Outcome {
    check_format(format, &[Format::Svg, Format::Text, Format::Json])?;
    let mut text = String::new();
    if input.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display())).map_err(usage)?;
    }
    let tiling: Tiling = serde_json::from_str(text.trim()).context("input is not a tiling").map_err(usage)?;
    write_tiling(out, &tiling, format)?;
    Ok(())
}

fn verify(suite: &str, target: &Target, free_edge_limit: usize, format: Format, out: &mut impl Write) -> Outcome {
    check_format(format, &[Format::Json, Format::Text])?;
    let suite: Suite = suite.parse()?;
    let growth_region = if target.region.is_set() {
        if !matches!(suite, Suite::Growth | Suite::All) {
            return Err(usage(anyhow::anyhow!("region flags only apply to the growth suite")));
        }
        Some(resolve(target)?)
    } else {
        None
    };
    let report = run_suite(suite, &VerifyOptions { free_edge_limit, growth_region });
    if format == Format::Text {
        for c in &report.checks {
            writeln!(
                out,
                "{} {} | expected {} ({:?}) | actual {}",
                c.status, c.name, c.expected, c.provenance, c.actual
            )?;
        }
        writeln!(out, "{} passed, {} failed, {} skipped", report.passed, report.failed, report.skipped)?;
    } else {
        write_json(out, &report)?;
    }
    if report.ok() {
        Ok(())
    } else {
        Err(anyhow::anyhow!("{} checks failed", report.failed).into())
    }
}

fn graph(target: &Target, free_edge_limit: usize, format: Format, out: &mut impl Write) -> Outcome {
    check_format(format, &[Format::Dot, Format::Json])?;
    let (region, n) = resolve(target)?;
    let g = build_graph(&region, n)?;
    let free = g.count_class(ribbonry::sheffield::EdgeClass::Free);
    if format == Format::Json {
        let mut value = g.to_json();
        // counting is skipped above the limit rather than failing the export
        value["admissible_orientations"] = match ribbonry::sheffield::count_admissible_orientations(&g, free_edge_limit)
        {
            Ok(c) => serde_json::Value::String(c.to_string()),
            Err(_) => serde_json::Value::Null,
        };
        value["free_edges"] = free.into();
        write_json(out, &value)?;
    } else {
        write!(out, "{}", g.to_dot())?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Count { target, tuning, format } => count(target, tuning, *format, &mut out),
        Command::Enumerate { target, tuning, limit, format } => enumerate(target, tuning, *limit, *format, &mut out),
        Command::Sample { target, tuning, seed, format } => sample(target, tuning, *seed, *format, &mut out),
        Command::Render { input, format } => render(input, *format, &mut out),
        Command::Verify { suite, target, free_edge_limit, format } => {
            verify(suite, target, *free_edge_limit, *format, &mut out)
        }
        Command::Graph { target, free_edge_limit, format } => graph(target, *free_edge_limit, *format, &mut out),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { error, .. })
            if error.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(Failure { code, error }) => {
            eprintln!("ribbonry: {error:#}");
            ExitCode::from(code)
        }
    }
}
