//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code:
//! 0 success, 1 verification failure, 2 input error, 3 size-limit refusal.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::arith::{self, Vector};
use crate::arrangement::{Arrangement, SignVector};
use crate::cells::{classify_chamber, enumerate_chambers, faces_of_chamber, Boundedness, CellComplex, Chamber, Face};
use crate::cones::{metric_project, ProjectionResult};
use crate::error::{Error, Result};
use crate::gen::{self, GeneratorKind, GeneratorSpec};
use crate::mc;
use crate::poset::{absolute_coefficients, char_poly_from_poset, char_poly_level_with, intersection_poset, CharPoly};
use crate::verify::{random_points, run_suite, SuiteOptions, SuiteReport, Verifier};

#[derive(Debug, Parser)]
#[command(name = "hypar", version, about = "Exact computations on affine hyperplane arrangements")]
pub struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial (or level-j polynomial) and its absolute coefficients.
    Charpoly {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Chambers with interior witnesses and boundedness.
    Chambers {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Faces of one chamber, or of the whole arrangement.
    Faces {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        chamber: Option<String>,
    },
    /// Metric projection of a point onto a chamber.
    Project {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        chamber: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Face-count profile phi_k and exceptional-set membership at a point.
    Phi {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Check the identities on one or more arrangement files or directories.
    Verify {
        #[arg(short, long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        /// Number of seeded random test points.
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check this point instead of random ones (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
        /// Also check every level j < d.
        #[arg(long)]
        all: bool,
    },
    /// Generate an arrangement as JSON.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Line count (dihedral) or hyperplane count (random).
        #[arg(short = 'm', long = "count")]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo conic intrinsic volumes of a linear arrangement.
    Intrinsic {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value_t = 4.0)]
        z: f64,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerificationFailure(_) | Error::StatisticalFailure(_) | Error::Inconsistent(_) => 1,
        Error::SizeLimit { .. } => 3,
        _ => 2,
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_arrangement(path: &Path) -> Result<Arrangement> {
    let text = fs::read_to_string(path)?;
    Arrangement::from_json_str(&text)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct CharPolyOut<'a> {
    level: usize,
    #[serde(flatten)]
    poly: &'a CharPoly,
    a: Vec<i64>,
}

#[derive(Serialize)]
struct ChamberOut {
    signs: String,
    witness: Vec<String>,
    boundedness: Boundedness,
}

#[derive(Serialize)]
struct FaceOut {
    signs: String,
    dim: usize,
    witness: Vec<String>,
}

#[derive(Serialize)]
struct PhiOut {
    point: Vec<String>,
    phi: Vec<usize>,
    projection_counts: Vec<usize>,
    a: Vec<i64>,
    exceptional: Vec<bool>,
    per_chamber: std::collections::BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct VerifyOut {
    file: String,
    passed: bool,
    #[serde(flatten)]
    report: SuiteReport,
}

fn strings(v: &[arith::Rational]) -> Vec<String> {
    v.iter().map(arith::format_rational).collect()
}

fn chamber_out(arr: &Arrangement, c: &Chamber) -> ChamberOut {
    ChamberOut { signs: c.signs.to_string(), witness: strings(&c.witness), boundedness: classify_chamber(arr, c) }
}

fn face_out(f: &Face) -> FaceOut {
    FaceOut { signs: f.signs.to_string(), dim: f.dim, witness: strings(&f.relint_witness) }
}

fn find_chamber(arr: &Arrangement, signs: &str) -> Result<Chamber> {
    let s: SignVector = signs.parse()?;
    if s.len() != arr.len() {
        return Err(Error::DimensionMismatch { expected: arr.len(), found: s.len() });
    }
    enumerate_chambers(arr)?
        .into_iter()
        .find(|c| c.signs == s)
        .ok_or_else(|| Error::NotAChamber(signs.to_string()))
}

fn expand_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)?
                .map(|e| e.map(|e| e.path()))
                .collect::<std::io::Result<Vec<_>>>()?
                .into_iter()
                .filter(|f| f.extension().is_some_and(|e| e == "json"))
                .collect();
            inner.sort();
            files.extend(inner);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let json = cli.json;
    match &cli.command {
        Command::Charpoly { input, level } => {
            let arr = read_arrangement(input)?;
            let poset = intersection_poset(&arr);
            let j = level.unwrap_or(arr.dim());
            if j > arr.dim() {
                return Err(Error::BadParams(format!("level {j} exceeds dimension {}", arr.dim())));
            }
            let poly = if j == arr.dim() { char_poly_from_poset(&poset) } else { char_poly_level_with(&arr, &poset, j)? };
            let a = absolute_coefficients(&poly);
            if json {
                emit(out, &CharPolyOut { level: j, poly: &poly, a })?;
            } else {
                writeln!(out, "chi(t) = {poly}")?;
                writeln!(out, "coeffs: {}", join(&poly.coeffs))?;
                writeln!(out, "a: {}", join(&a))?;
            }
        }
        Command::Chambers { input } => {
            let arr = read_arrangement(input)?;
            let chambers: Vec<ChamberOut> = enumerate_chambers(&arr)?.iter().map(|c| chamber_out(&arr, c)).collect();
            if json {
                emit(out, &chambers)?;
            } else {
                writeln!(out, "chambers: {}", chambers.len())?;
                for c in &chambers {
                    let b = serde_json::to_value(c.boundedness).map_err(|e| Error::Parse(e.to_string()))?;
                    writeln!(out, "{} ({}) {}", c.signs, c.witness.join(", "), b.as_str().unwrap_or_default())?;
                }
            }
        }
        Command::Faces { input, chamber } => {
            let arr = read_arrangement(input)?;
            let faces: Vec<Face> = match chamber {
                Some(s) => faces_of_chamber(&arr, &find_chamber(&arr, s)?)?,
                None => CellComplex::build(&arr)?.faces,
            };
            let faces: Vec<FaceOut> = faces.iter().map(face_out).collect();
            if json {
                emit(out, &faces)?;
            } else {
                let mut counts = vec![0; arr.dim() + 1];
                faces.iter().for_each(|f| counts[f.dim] += 1);
                writeln!(out, "faces by dimension: {}", join(&counts))?;
                for f in &faces {
                    writeln!(out, "{} dim {} ({})", f.signs, f.dim, f.witness.join(", "))?;
                }
            }
        }
        Command::Project { input, chamber, point } => {
            let arr = read_arrangement(input)?;
            let x = arith::parse_point(point)?;
            arr.check_point(&x)?;
            let c = find_chamber(&arr, chamber)?;
            let r: ProjectionResult = metric_project(&arr, &c, &x)?;
            if json {
                emit(out, &r)?;
            } else {
                writeln!(out, "point: {}", arith::format_point(&r.point))?;
                writeln!(out, "face: {}", r.face.signs)?;
                writeln!(out, "k: {}", r.k)?;
            }
        }
        Command::Phi { input, point } => {
            let arr = read_arrangement(input)?;
            let x = arith::parse_point(point)?;
            arr.check_point(&x)?;
            let v = Verifier::new(&arr)?;
            let p = v.phi(&x)?;
            let exceptional = (0..=arr.dim()).map(|k| v.in_exceptional(k, &x).map(|r| r.member)).collect::<Result<Vec<_>>>()?;
            let o = PhiOut {
                point: strings(&x),
                phi: p.counts,
                projection_counts: p.projection_counts,
                a: absolute_coefficients(v.char_poly()),
                exceptional,
                per_chamber: p.per_chamber,
            };
            if json {
                emit(out, &o)?;
            } else {
                writeln!(out, "phi: {}", join(&o.phi))?;
                writeln!(out, "a: {}", join(&o.a))?;
                writeln!(out, "projection counts: {}", join(&o.projection_counts))?;
                writeln!(out, "exceptional: {}", join(&o.exceptional))?;
                for (s, k) in &o.per_chamber {
                    writeln!(out, "{s} {k}")?;
                }
            }
        }
        Command::Verify { input, points, seed, point, all } => {
            let mut reports = Vec::new();
            let mut ok = true;
            for file in expand_inputs(input)? {
                let arr = read_arrangement(&file)?;
                let pts: Vec<Vector> = if point.is_empty() {
                    random_points(arr.dim(), *points, *seed)
                } else {
                    point.iter().map(|p| arith::parse_point(p)).collect::<Result<_>>()?
                };
                for x in &pts {
                    arr.check_point(x)?;
                }
                let v = Verifier::new(&arr)?;
                let opts = SuiteOptions { points: pts, all_levels: *all, mcmullen_points: 100, seed: *seed };
                let report = run_suite(&v, &opts)?;
                ok &= report.passed();
                if !json {
                    writeln!(out, "{}: {}", file.display(), if report.passed() { "pass" } else { "FAIL" })?;
                    for c in &report.checks {
                        writeln!(out, "  {} {}: {}", if c.passed { "ok" } else { "FAIL" }, c.check, c.detail)?;
                    }
                }
                reports.push(VerifyOut { file: file.display().to_string(), passed: report.passed(), report });
            }
            if json {
                emit(out, &reports)?;
            }
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Gen { kind, dim, count, seed, output } => {
            let kind: GeneratorKind = kind.parse()?;
            let arr = gen::generate(&GeneratorSpec { kind, dim: *dim, count: *count, seed: *seed })?;
            let text = arr.to_json_string();
            match output {
                Some(p) => fs::write(p, text + "\n")?,
                None => writeln!(out, "{text}")?,
            }
        }
        Command::Intrinsic { input, samples, seed, level, z } => {
            let arr = read_arrangement(input)?;
            let r = mc::verify_klivans_swartz(&arr, *samples, *seed, *level, *z)?;
            if json {
                emit(out, &r)?;
            } else {
                let e = &r.estimate;
                writeln!(out, "samples: {} seed: {} level: {} resampled: {}", e.samples, e.seed, e.level, e.resampled)?;
                writeln!(out, "a: {}", join(&r.a))?;
                writeln!(out, "aggregate: {}", join(&e.aggregate))?;
                for c in &e.cells {
                    let nu: Vec<String> = c.nu.iter().map(|v| format!("{v:.4}")).collect();
                    let se: Vec<String> = c.std_errors.iter().map(|v| format!("{v:.4}")).collect();
                    writeln!(out, "{} nu: {} se: {}", c.signs, nu.join(" "), se.join(" "))?;
                }
                writeln!(out, "band checks: {} within {}·SE", r.band_checks.len(), r.z)?;
            }
        }
    }
    Ok(0)
}
