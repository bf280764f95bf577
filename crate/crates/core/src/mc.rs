//! Monte Carlo estimates of conic intrinsic volumes of the chambers (or of
//! the `j`-dimensional faces) of a linear arrangement.

use std::thread;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::arith::{self, Rational, Vector};
use crate::arrangement::Arrangement;
use crate::cones::PreparedCell;
use crate::error::{Error, Result};
use crate::verify::Verifier;

const CHUNK: usize = 2048;
const SCALE: f64 = 9_007_199_254_740_992.0; // 2^53

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellEstimate {
    pub signs: String,
    pub dim: usize,
    pub counts: Vec<u64>,
    pub nu: Vec<f64>,
    pub std_errors: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntrinsicEstimate {
    pub samples: usize,
    pub seed: u64,
    pub level: usize,
    pub cells: Vec<CellEstimate>,
    /// `Σ_P` of the counts, per `k`.
    pub aggregate_counts: Vec<u64>,
    /// `Σ_P ν̂_k(P)`.
    pub aggregate: Vec<f64>,
    /// Draws that landed in an exceptional set and were replaced.
    pub resampled: u64,
    /// Kept samples whose per-sample cell counts differed from `a_{kj}`.
    pub mismatched_samples: u64,
}

/// Gaussian direction rounded to a grid of mesh `2^-53`, then scaled by
/// `2^53`; projection dimensions onto cones are scale invariant.
fn draw<R: Rng>(d: usize, rng: &mut R) -> Vector {
    (0..d)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            Rational::from_integer(BigInt::from((g * SCALE).round() as i64))
        })
        .collect()
}

struct ChunkResult {
    counts: Vec<Vec<u64>>,
    resampled: u64,
    mismatched: u64,
}

fn run_chunk(v: &Verifier, cells: &[PreparedCell], a: &[i64], j: usize, n: usize, seed: u64, chunk: u64) -> Result<ChunkResult> {
    let d = v.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut counts = vec![vec![0u64; j + 1]; cells.len()];
    let mut resampled = 0;
    let mut mismatched = 0;
    let mut tally = vec![0i64; j + 1];
    for _ in 0..n {
        let x = loop {
            let x = draw(d, &mut rng);
            if !v.in_any_exceptional(j, &x) {
                break x;
            }
            resampled += 1;
        };
        tally.iter_mut().for_each(|t| *t = 0);
        for (c, cell) in cells.iter().enumerate() {
            let k = cell.dim_of(&x)?;
            counts[c][k] += 1;
            tally[k] += 1;
        }
        if tally != a {
            mismatched += 1;
        }
    }
    Ok(ChunkResult { counts, resampled, mismatched })
}

/// Estimates `ν_k(P)` for every chamber (`level = None`) or every `P ∈ R_j(A)`.
pub fn estimate_level(arr: &Arrangement, samples: usize, seed: u64, level: Option<usize>) -> Result<IntrinsicEstimate> {
    let v = Verifier::new(arr)?;
    estimate_with(&v, samples, seed, level)
}

pub fn estimate_intrinsic_volumes(arr: &Arrangement, samples: usize, seed: u64) -> Result<IntrinsicEstimate> {
    estimate_level(arr, samples, seed, None)
}

/// As [`estimate_level`], reusing a prepared verifier.
pub fn estimate_with(v: &Verifier, samples: usize, seed: u64, level: Option<usize>) -> Result<IntrinsicEstimate> {
    if !v.arrangement().is_linear() {
        return Err(Error::NotLinear);
    }
    if samples == 0 {
        return Err(Error::BadParams("need at least one sample".into()));
    }
    let j = level.unwrap_or(v.dim());
    let cells = v.level_cells(j)?;
    let a = v.level_coefficients(j)?;
    let chunks: Vec<(u64, usize)> = (0..samples.div_ceil(CHUNK))
        .map(|c| (c as u64, CHUNK.min(samples - c * CHUNK)))
        .collect();
    let workers = thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(chunks.len());
    let results: Vec<Result<ChunkResult>> = if workers <= 1 {
        chunks.iter().map(|&(c, n)| run_chunk(v, cells, &a, j, n, seed, c)).collect()
    } else {
        let mut slots: Vec<Option<Result<ChunkResult>>> = (0..chunks.len()).map(|_| None).collect();
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let chunks = &chunks;
                    let a = &a;
                    s.spawn(move || {
                        chunks
                            .iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(i, &(c, n))| (i, run_chunk(v, cells, a, j, n, seed, c)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots.into_iter().map(|r| r.expect("chunk result")).collect()
    };
    let mut counts = vec![vec![0u64; j + 1]; cells.len()];
    let mut resampled = 0;
    let mut mismatched_samples = 0;
    for r in results {
        let r = r?;
        for (acc, part) in counts.iter_mut().zip(&r.counts) {
            for (x, y) in acc.iter_mut().zip(part) {
                *x += y;
            }
        }
        resampled += r.resampled;
        mismatched_samples += r.mismatched;
    }
    let n = samples as f64;
    let mut aggregate_counts = vec![0u64; j + 1];
    for c in &counts {
        for (acc, x) in aggregate_counts.iter_mut().zip(c) {
            *acc += x;
        }
    }
    let aggregate = aggregate_counts.iter().map(|&c| c as f64 / n).collect();
    let cells = cells
        .iter()
        .zip(counts)
        .map(|(cell, counts)| {
            let nu: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
            let std_errors = nu.iter().map(|&p| (p * (1.0 - p) / n).sqrt()).collect();
            CellEstimate { signs: cell.cell().signs.to_string(), dim: cell.cell().dim, counts, nu, std_errors }
        })
        .collect();
    Ok(IntrinsicEstimate { samples, seed, level: j, cells, aggregate_counts, aggregate, resampled, mismatched_samples })
}

/// Exact intrinsic volumes of a cell that is an orthant times a linear
/// space, i.e. whose facet normals (within its own span) are pairwise
/// orthogonal; `None` for any other cell.
pub fn orthant_intrinsic_volumes(arr: &Arrangement, cell: &PreparedCell) -> Option<Vec<f64>> {
    let p = cell.cell();
    let j = p.dim;
    let spanning = arith::null_space(
        &p.zero_set.iter().map(|&i| arr.hyperplane(i).normal().to_vec()).collect::<Vec<_>>(),
        arr.dim(),
    );
    let span = arith::OrthoProjector::new(&spanning, arr.dim());
    let normals: Vec<Vector> = cell
        .faces()
        .filter(|f| f.dim + 1 == j)
        .map(|f| {
            let i = *f.zero_set.iter().find(|i| !p.zero_set.contains(i)).expect("facet adds an equation");
            span.project(arr.hyperplane(i).normal())
        })
        .collect();
    let zero = arith::int(0);
    for (a, n) in normals.iter().enumerate() {
        if normals[a + 1..].iter().any(|m| arith::dot(n, m) != zero) {
            return None;
        }
    }
    let r = normals.len();
    let lineality = j - r;
    let mut nu = vec![0.0; j + 1];
    for (i, slot) in nu.iter_mut().enumerate().skip(lineality) {
        *slot = binomial(r, i - lineality) / 2f64.powi(r as i32);
    }
    Some(nu)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandCheck {
    pub cell: String,
    pub k: usize,
    pub estimate: f64,
    pub expected: f64,
    pub std_error: f64,
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KlivansSwartzReport {
    pub a: Vec<i64>,
    pub estimate: IntrinsicEstimate,
    /// Aggregate standard error per `k`, from the per-cell errors.
    pub aggregate_std_errors: Vec<f64>,
    pub z: f64,
    pub band_checks: Vec<BandCheck>,
}

/// `|ν̂ - ν| ≤ z·SE` for one entry.
pub fn within_band(estimate: f64, expected: f64, std_error: f64, z: f64) -> bool {
    (estimate - expected).abs() <= z * std_error + 1e-12
}

/// Checks that the cell counts sum to `a_{kj}` at every kept sample, that
/// the aggregate lies in the `z` band around `a_{kj}`, and that every
/// orthant-shaped cell's estimate lies in the band around its exact values.
pub fn verify_klivans_swartz(
    arr: &Arrangement,
    samples: usize,
    seed: u64,
    level: Option<usize>,
    z: f64,
) -> Result<KlivansSwartzReport> {
    let v = Verifier::new(arr)?;
    let estimate = estimate_with(&v, samples, seed, level)?;
    let j = estimate.level;
    let a = v.level_coefficients(j)?;
    if estimate.mismatched_samples > 0 {
        return Err(Error::VerificationFailure(format!(
            "{} of {samples} samples had cell counts different from a = {a:?}",
            estimate.mismatched_samples
        )));
    }
    let aggregate_std_errors: Vec<f64> = (0..=j)
        .map(|k| estimate.cells.iter().map(|c| c.std_errors[k].powi(2)).sum::<f64>().sqrt())
        .collect();
    for k in 0..=j {
        if !within_band(estimate.aggregate[k], a[k] as f64, aggregate_std_errors[k], z) {
            return Err(Error::StatisticalFailure(format!(
                "aggregate nu_{k} = {} vs a_{k} = {}, margin {} > {z} * {}",
                estimate.aggregate[k],
                a[k],
                (estimate.aggregate[k] - a[k] as f64).abs(),
                aggregate_std_errors[k]
            )));
        }
    }
    let mut band_checks = Vec::new();
    for (cell, est) in v.level_cells(j)?.iter().zip(&estimate.cells) {
        if let Some(exact) = orthant_intrinsic_volumes(arr, cell) {
            for k in 0..=j {
                band_checks.push(BandCheck {
                    cell: est.signs.clone(),
                    k,
                    estimate: est.nu[k],
                    expected: exact[k],
                    std_error: est.std_errors[k],
                    within: within_band(est.nu[k], exact[k], est.std_errors[k], z),
                });
            }
        }
    }
    if let Some(b) = band_checks.iter().find(|b| !b.within) {
        return Err(Error::StatisticalFailure(format!(
            "cell {} nu_{} = {} vs exact {}, margin {} > {z} * {}",
            b.cell,
            b.k,
            b.estimate,
            b.expected,
            (b.estimate - b.expected).abs(),
            b.std_error
        )));
    }
    Ok(KlivansSwartzReport { a, estimate, aggregate_std_errors, z, band_checks })
}
