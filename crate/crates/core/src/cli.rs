//! Command-line front end: spec ingestion, one subcommand per analysis,
//! deterministic runs, and file outputs.
//!
//! Identical invocations produce byte-identical outputs regardless of
//! host thread count; all randomness flows from the explicit `--seed`
//! (default 0).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::examples;
use crate::perfectness::{perfectness_profile, ProfileEntry};
use crate::semigroup::{
    backward_orbit_cloud, render_cloud, repelling_cloud, self_similarity_defect,
    forward_invariant_escape_region, JuliaApproximation, SemigroupSpec, Window,
};
use crate::sphere::{PointCloud, SpherePoint};

#[derive(Parser, Debug)]
#[command(
    name = "rsdyn",
    version,
    about = "Julia sets of rational semigroups: Lipschitz bounds, limit-set clouds, and uniform-perfectness diagnostics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spherical Lipschitz constant of each generator and their sup.
    Lip {
        /// Spec file path or built-in example name (e.g. cantor, schottky:4).
        #[arg(long)]
        spec: String,
        /// Relative accuracy of the sup search.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Approximate J(G) by repelling fixed points or a backward orbit.
    Cloud {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        gen: CloudArgs,
        #[arg(long, value_enum, default_value_t = CloudFormat::Text)]
        format: CloudFormat,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rasterize a cloud file to a binary PPM (P5) density image.
    Render {
        /// Cloud file (text `re im` lines or the JSON cloud form).
        #[arg(long)]
        cloud: PathBuf,
        /// Window as x_min,x_max,y_min,y_max.
        #[arg(long, value_parser = parse_window, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        window: Window,
        #[arg(long, default_value_t = 512)]
        width: usize,
        #[arg(long, default_value_t = 512)]
        height: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Maximum separating-annulus moduli over a descending list of floors.
    Perfectness {
        /// Spec source for generating the cloud (omit when --cloud is given).
        #[arg(long)]
        spec: Option<String>,
        /// Read the cloud from a file instead of generating it.
        #[arg(long)]
        cloud: Option<PathBuf>,
        #[command(flatten)]
        gen: CloudArgs,
        /// Descending scale floors, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        floors: Vec<f64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Hausdorff defect of a cloud against its generator pullbacks.
    Selfsim {
        #[arg(long)]
        spec: String,
        /// Read the cloud from a file instead of generating it.
        #[arg(long)]
        cloud: Option<PathBuf>,
        #[command(flatten)]
        gen: CloudArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Smallest certified radius R with |g(z)| > |z| on |z| ≥ R for every
    /// generator, or "absent".
    Escape {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 16.0)]
        r_max: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Built-in example systems.
    Examples {
        #[command(subcommand)]
        cmd: ExamplesCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExamplesCmd {
    /// List the built-in example names.
    List,
    /// Emit the spec JSON of a built-in example.
    Dump {
        name: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CloudArgs {
    /// Cloud construction method.
    #[arg(long, value_enum, default_value_t = MethodArg::Repelling)]
    pub method: MethodArg,
    /// Maximum word length for the repelling method.
    #[arg(long, default_value_t = 6)]
    pub max_word_len: usize,
    /// Sample count for the backward method.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Discarded leading steps of each backward-walk chunk.
    #[arg(long, default_value_t = 30)]
    pub burn_in: usize,
    /// RNG seed; all randomness flows from here.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Starting point of the backward walk: `re,im` or `inf`.
    #[arg(long, value_parser = parse_point, default_value = "0.5,0.1", allow_hyphen_values = true)]
    pub seed_point: SpherePoint,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum MethodArg {
    Repelling,
    Backward,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum CloudFormat {
    Text,
    Json,
}

fn parse_point(s: &str) -> std::result::Result<SpherePoint, String> {
    if s.trim() == "inf" {
        return Ok(SpherePoint::Infinity);
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `re,im` or `inf`, got {s:?}"));
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let im: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err("coordinates must be finite".into());
    }
    Ok(SpherePoint::finite(re, im))
}

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    let v: Vec<&str> = s.split(',').collect();
    if v.len() != 4 {
        return Err(format!("expected x_min,x_max,y_min,y_max, got {s:?}"));
    }
    let mut nums = [0.0; 4];
    for (slot, part) in nums.iter_mut().zip(&v) {
        *slot = part.trim().parse().map_err(|e| format!("{e}"))?;
    }
    Window::new(nums[0], nums[1], nums[2], nums[3]).map_err(|e| e.to_string())
}

/// Read a spec from a JSON file, or fall back to a built-in example name.
pub fn load_spec(source: &str) -> Result<SemigroupSpec> {
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    Ok(examples::by_name(source)?.spec)
}

fn load_cloud(path: &Path) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        PointCloud::from_text(&text)
    }
}

fn generate_cloud(spec: &SemigroupSpec, gen: &CloudArgs) -> Result<JuliaApproximation> {
    match gen.method {
        MethodArg::Repelling => repelling_cloud(spec, gen.max_word_len),
        MethodArg::Backward => {
            backward_orbit_cloud(spec, gen.seed_point, gen.samples, gen.burn_in, gen.seed)
        }
    }
}

fn emit(bytes: &[u8], out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(bytes)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct LipEntry {
    label: String,
    lip: f64,
}

#[derive(Serialize)]
struct LipReport {
    generators: Vec<LipEntry>,
    sup: f64,
}

#[derive(Serialize)]
struct CloudFile<'a> {
    method: &'a str,
    spec_hash: &'a str,
    params: &'a std::collections::BTreeMap<String, String>,
    points: &'a [SpherePoint],
}

#[derive(Serialize)]
struct EscapeReport {
    escape_radius: Option<f64>,
}

#[derive(Serialize)]
struct DefectReport {
    defect: f64,
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Lip { spec, tol, out } => {
            if !(tol > 0.0) {
                return Err(Error::invalid("tol must be positive"));
            }
            let spec = load_spec(&spec)?;
            let generators: Vec<LipEntry> = spec
                .generators()
                .iter()
                .enumerate()
                .map(|(i, g)| LipEntry {
                    label: spec.label(i),
                    lip: g.lipschitz_constant(tol),
                })
                .collect();
            let sup = generators.iter().map(|e| e.lip).fold(0.0, f64::max);
            let report = LipReport { generators, sup };
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(text.as_bytes(), &out)
        }
        Command::Cloud {
            spec,
            gen,
            format,
            out,
        } => {
            let spec = load_spec(&spec)?;
            let approx = generate_cloud(&spec, &gen)?;
            let bytes = match format {
                CloudFormat::Text => approx.cloud.to_text().into_bytes(),
                CloudFormat::Json => {
                    let file = CloudFile {
                        method: approx.cloud.method_tag.as_str(),
                        spec_hash: &approx.spec_hash,
                        params: &approx.params,
                        points: &approx.cloud.points,
                    };
                    let mut text = serde_json::to_string_pretty(&file)?;
                    text.push('\n');
                    text.into_bytes()
                }
            };
            emit(&bytes, &out)
        }
        Command::Render {
            cloud,
            window,
            width,
            height,
            out,
        } => {
            let cloud = load_cloud(&cloud)?;
            let raster = render_cloud(&cloud, window, width, height)?;
            emit(&raster.to_ppm(), &out)
        }
        Command::Perfectness {
            spec,
            cloud,
            gen,
            floors,
            out,
        } => {
            let cloud = match (&cloud, &spec) {
                (Some(path), _) => load_cloud(path)?,
                (None, Some(source)) => generate_cloud(&load_spec(source)?, &gen)?.cloud,
                (None, None) => {
                    return Err(Error::invalid("perfectness needs --cloud or --spec"))
                }
            };
            let profile: Vec<ProfileEntry> = perfectness_profile(&cloud, &floors)?;
            let mut text = serde_json::to_string_pretty(&profile)?;
            text.push('\n');
            emit(text.as_bytes(), &out)
        }
        Command::Selfsim {
            spec,
            cloud,
            gen,
            out,
        } => {
            let spec = load_spec(&spec)?;
            let cloud = match &cloud {
                Some(path) => load_cloud(path)?,
                None => generate_cloud(&spec, &gen)?.cloud,
            };
            let defect = self_similarity_defect(&spec, &cloud)?;
            let mut text = serde_json::to_string_pretty(&DefectReport { defect })?;
            text.push('\n');
            emit(text.as_bytes(), &out)
        }
        Command::Escape { spec, r_max, out } => {
            let spec = load_spec(&spec)?;
            let escape_radius = forward_invariant_escape_region(&spec, r_max);
            let mut text = serde_json::to_string_pretty(&EscapeReport { escape_radius })?;
            text.push('\n');
            emit(text.as_bytes(), &out)
        }
        Command::Examples { cmd } => match cmd {
            ExamplesCmd::List => {
                let mut text = String::new();
                for name in examples::EXAMPLE_NAMES {
                    text.push_str(name);
                    text.push('\n');
                }
                emit(text.as_bytes(), &None)
            }
            ExamplesCmd::Dump { name, out } => {
                let cfg = examples::by_name(&name)?;
                let mut text = serde_json::to_string_pretty(&cfg.spec)?;
                text.push('\n');
                emit(text.as_bytes(), &out)
            }
        },
    }
}
