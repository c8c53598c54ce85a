//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 for bad
//! flags, unparsable values and I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::ifs::{ifs_for_case, preset, word_points, Preset};
use crate::kiko::{kiko_image_cloud, KikoParams};
use crate::numerics::{parse_complex, Complex, RationalAngle};
use crate::pointset::{build_cloud, CaseId, Subset};
use crate::presets::{figure, figures};
use crate::radix::{all_four, represent, GaussianInt, UnitDigit};
use crate::raster::{rasterize, write_pgm, RasterConfig};
use crate::verify::{standard_suite, VerifyReport};

#[derive(Debug, Parser)]
#[command(
    name = "revolving",
    version,
    about = "Revolving digit sets, their function systems, and numerical checks"
)]
pub struct Cli {
    /// worker threads, 0 = one per core
    #[arg(long, global = true, env = "REVOLVING_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a point cloud file
    Generate(GenerateArgs),
    /// Rasterize a bundled figure to PGM
    Render(RenderArgs),
    /// Run the numerical check suite
    Verify(VerifyArgs),
    /// Base-(1+i) representations of a Gaussian integer
    Represent(RepresentArgs),
    /// Dyadic samples of the two-branch functional equation
    Kiko(KikoArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// 1, 2 or 3
    #[arg(long, conflicts_with_all = ["preset", "figure"], requires_all = ["alpha", "theta"])]
    pub case: Option<u8>,

    /// contraction factor, "RE,IM"
    #[arg(long, allow_hyphen_values = true, requires = "case")]
    pub alpha: Option<String>,

    /// rotation angle as a fraction of a full turn, "Q/P"
    #[arg(long, allow_hyphen_values = true, requires = "case")]
    pub theta: Option<String>,

    #[arg(long, default_value_t = 14)]
    pub depth: usize,

    /// `full` or `one` (first non-zero digit fixed to 1)
    #[arg(long, default_value = "full")]
    pub subset: String,

    /// word images of 0 under the case's function system instead of digit sums
    #[arg(long, requires = "case")]
    pub ifs: bool,

    /// word images of 0 under `levy` or `dragon-tile`
    #[arg(long, conflicts_with = "figure")]
    pub preset: Option<String>,

    /// a bundled figure name
    #[arg(long)]
    pub figure: Option<String>,

    /// output file; standard output if omitted
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, required_unless_present = "list_figures")]
    pub figure: Option<String>,

    /// print the figure names and exit
    #[arg(long)]
    pub list_figures: bool,

    /// image width and height in pixels
    #[arg(long, default_value_t = 512)]
    pub size: usize,

    #[arg(long, default_value_t = 14)]
    pub depth: usize,

    /// light points on a dark background
    #[arg(long)]
    pub invert: bool,

    #[arg(short, long, required_unless_present = "list_figures")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// run every check (the default)
    #[arg(long)]
    pub all: bool,

    /// only run checks whose name starts with this
    #[arg(long, conflicts_with = "all")]
    pub check: Option<String>,

    #[arg(long, default_value_t = 10)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    /// Gaussian integer, e.g. "-5+33i"
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,

    /// print only the representation anchored at this unit: 1, -1, i or -i
    #[arg(long, allow_hyphen_values = true)]
    pub anchor: Option<String>,
}

#[derive(Debug, Args)]
pub struct KikoArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,

    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,

    /// dyadic level d; samples f(k/2^d) for k = 0..=2^d
    #[arg(long, default_value_t = 12)]
    pub depth: usize,

    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

enum Outcome {
    Done,
    ChecksFailed,
}

pub fn run(cli: Cli) -> u8 {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::ChecksFailed) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Render(a) => render(a),
        Command::Verify(a) => verify(a),
        Command::Represent(a) => represent_cmd(a),
        Command::Kiko(a) => kiko(a),
    }
}

fn emit(cloud: &PointCloud, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            let f = io::BufWriter::new(fs::File::create(path)?);
            cloud.write_to(f)?;
        }
        None => {
            let out = io::stdout().lock();
            cloud.write_to(io::BufWriter::new(out))?;
        }
    }
    Ok(())
}

fn generate(a: GenerateArgs) -> Result<Outcome> {
    let zero = Complex::new(0.0, 0.0);
    let cloud = if let Some(name) = &a.figure {
        figure(name)?.cloud(a.depth)?
    } else if let Some(name) = &a.preset {
        let p: Preset = name.parse()?;
        word_points(&preset(p)?, a.depth, zero)?
    } else if let Some(n) = a.case {
        let case = CaseId::from_number(n)?;
        let alpha = parse_complex(a.alpha.as_deref().unwrap_or_default())?;
        let angle: RationalAngle = a.theta.as_deref().unwrap_or_default().parse()?;
        if a.ifs {
            word_points(&ifs_for_case(case, alpha, angle)?, a.depth, zero)?
        } else {
            build_cloud(case, alpha, angle, a.depth, a.subset.parse::<Subset>()?)?
        }
    } else {
        return Err(Error::invalid(
            "one of --case, --preset or --figure is required",
        ));
    };
    emit(&cloud, a.output.as_deref())?;
    Ok(Outcome::Done)
}

fn render(a: RenderArgs) -> Result<Outcome> {
    if a.list_figures {
        let mut out = io::stdout().lock();
        for f in figures() {
            writeln!(out, "{}", f.name)?;
        }
        return Ok(Outcome::Done);
    }
    let (Some(name), Some(path)) = (a.figure, a.output) else {
        return Err(Error::invalid("--figure and --output are required"));
    };
    let cloud = figure(&name)?.cloud(a.depth)?;
    let cfg = RasterConfig {
        invert: a.invert,
        ..RasterConfig::square(a.size)
    };
    write_pgm(&rasterize(&cloud, &cfg)?, path)?;
    Ok(Outcome::Done)
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let reports: Vec<VerifyReport> = standard_suite(a.depth)?
        .into_iter()
        .filter(|r| a.check.as_deref().is_none_or(|c| r.name.starts_with(c)))
        .collect();
    if reports.is_empty() {
        return Err(Error::invalid("no check matches the given name"));
    }
    let mut out = io::stdout().lock();
    for r in &reports {
        for line in r.lines() {
            writeln!(out, "{line}")?;
        }
    }
    let failed = reports.iter().filter(|r| !r.pass()).count();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", reports.len());
        return Ok(Outcome::ChecksFailed);
    }
    Ok(Outcome::Done)
}

fn represent_cmd(a: RepresentArgs) -> Result<Outcome> {
    let z: GaussianInt = a.z.parse()?;
    let mut out = io::stdout().lock();
    match a.anchor {
        Some(s) => {
            let anchor: UnitDigit = s.parse()?;
            writeln!(out, "{}", represent(z, anchor)?)?;
        }
        None => {
            for r in all_four(z)? {
                writeln!(out, "{r}")?;
            }
        }
    }
    Ok(Outcome::Done)
}

fn kiko(a: KikoArgs) -> Result<Outcome> {
    let p = KikoParams::new(parse_complex(&a.alpha)?, parse_complex(&a.gamma)?)?;
    emit(&kiko_image_cloud(&p, a.depth)?, a.output.as_deref())?;
    Ok(Outcome::Done)
}
