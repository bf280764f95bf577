//! Machine checks of the projection-count identities: `φ_k`, exceptional
//! sets, the level-`j` version, the dual-cone count for linear
//! arrangements, the alternating face identity, Zaslavsky's counts and
//! reflection-group orbits.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{self, Rational, Vector};
use crate::arrangement::{canonicalize, Arrangement, Hyperplane, SignVector};
use crate::cells::{classify_chamber, is_relatively_bounded, Boundedness, CellComplex};
use crate::cones::{cone_generators, PreparedCell};
use crate::error::{Error, Result};
use crate::exact_int::{self, IntPoint, IntRow};
use crate::gen::{self, GeneratorKind, GeneratorSpec};
use crate::poset::{absolute_coefficients, char_poly_from_poset, char_poly_level_with, CharPoly, Flat};

fn ser_point<S: serde::Serializer>(p: &Vector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(arith::format_rational))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiProfile {
    /// `φ_k(x)`: faces `F` of chambers `P` with `x ∈ F + N_F(P)`, by `dim F`.
    pub counts: Vec<usize>,
    /// Chambers by `dim(x, P)`; agrees with `counts` at every `k` with
    /// `x ∉ E_k` and always sums to the number of chambers.
    pub projection_counts: Vec<usize>,
    /// Chamber sign string to `dim(x, P)`.
    pub per_chamber: BTreeMap<String, usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `x ∈ L_{k-1} + L^⊥`.
    Lower,
    /// `x ∈ L_{k+1}^⊥ + L`.
    Upper,
}

/// A pair of flats certifying membership, each given by the indices of the
/// hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalWitness {
    pub kind: WitnessKind,
    pub flat: Vec<usize>,
    pub other: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    pub k: usize,
    pub member: bool,
    pub witnesses: Vec<ExceptionalWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MainReport {
    #[serde(serialize_with = "ser_point")]
    pub point: Vector,
    pub a: Vec<i64>,
    pub phi: Vec<usize>,
    pub exceptional: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelReport {
    pub j: usize,
    #[serde(serialize_with = "ser_point")]
    pub point: Vector,
    pub a: Vec<i64>,
    pub counts: Vec<usize>,
    pub exceptional: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualConeReport {
    #[serde(serialize_with = "ser_point")]
    pub point: Vector,
    pub a0: i64,
    pub count: usize,
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McMullenReport {
    pub chamber: String,
    #[serde(serialize_with = "ser_point")]
    pub point: Vector,
    pub boundedness: Boundedness,
    pub counts: Vec<usize>,
    pub alternating_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZaslavskyReport {
    pub dim: usize,
    pub rank: usize,
    pub chambers: usize,
    pub chi_at_minus_one: i64,
    pub bounded: usize,
    pub relatively_bounded: usize,
    pub chi_at_one: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitReport {
    pub kind: String,
    pub dim: usize,
    #[serde(serialize_with = "ser_point")]
    pub point: Vector,
    pub group_order: usize,
    pub counts: Vec<usize>,
    pub a: Vec<i64>,
    pub exceptional: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub normal_space_points: usize,
    pub boundary_points: usize,
}

fn fail(msg: String) -> Error {
    Error::VerificationFailure(msg)
}

struct LevelData {
    poly: CharPoly,
    cells: Vec<PreparedCell>,
}

/// Everything the checks need for one arrangement, computed once.
pub struct Verifier {
    complex: CellComplex,
    poly: CharPoly,
    chambers: Vec<PreparedCell>,
    /// Per `k`: (flat, lower flat) pairs with the lower flat of dim `k-1`.
    lower: Vec<Vec<(usize, usize)>>,
    /// Per `k`: (flat, upper flat) pairs with the upper flat of dim `k+1`.
    upper: Vec<Vec<(usize, usize)>>,
    levels: Vec<OnceLock<LevelData>>,
    /// Per `k`: the hyperplanes making up the lower and upper parts of `E_k`.
    components: Vec<[ExceptionalComponents; 2]>,
    boundedness: Vec<Boundedness>,
    /// Per chamber, facet inequalities `<t, v> <= 0` of `C°` (linear only).
    polar: OnceLock<Vec<Vec<Vector>>>,
}

/// The hyperplanes `L_{k-1} + L^⊥` (or `L_{k+1}^⊥ + L`) over all pairs.
struct ExceptionalComponents {
    hyperplanes: Vec<Hyperplane>,
    rows: Option<Vec<IntRow>>,
}

impl ExceptionalComponents {
    fn new(mut hyperplanes: Vec<Hyperplane>) -> Self {
        hyperplanes.sort();
        hyperplanes.dedup();
        let rows = exact_int::hyperplane_rows(&hyperplanes);
        ExceptionalComponents { hyperplanes, rows }
    }

    fn contains(&self, x: &[Rational], ix: Option<&IntPoint>) -> bool {
        if let (Some(rows), Some(ix)) = (&self.rows, ix) {
            if let Some(hit) = exact_int::on_any(rows, ix) {
                return hit;
            }
        }
        self.hyperplanes.iter().any(|h| h.contains(x))
    }
}

/// The hyperplane through `through` with normal `proj_dir(y)`, where `y` is
/// the normal of a hyperplane containing `inner` but not `outer`; `dir` is
/// the direction space of `outer`.
fn component(arr: &Arrangement, inner: &Flat, outer: &Flat, through: &Flat) -> Result<Hyperplane> {
    let i = *inner
        .containing()
        .iter()
        .find(|i| !outer.containing().contains(i))
        .expect("inner flat is strictly smaller");
    let n = outer.project_direction(arr.hyperplane(i).normal());
    let c = arith::dot(&n, through.point());
    canonicalize(&n, &c)
}

impl Verifier {
    pub fn new(arr: &Arrangement) -> Result<Self> {
        let complex = CellComplex::build(arr)?;
        let poly = char_poly_from_poset(&complex.poset);
        let chambers = complex
            .chambers
            .iter()
            .enumerate()
            .map(|(c, ch)| {
                let faces: Vec<_> = complex.chamber_faces[c].iter().map(|&f| complex.faces[f].clone()).collect();
                PreparedCell::new(arr, &ch.as_face(arr.dim()), &faces)
            })
            .collect::<Result<Vec<_>>>()?;
        let d = arr.dim();
        let flats = complex.poset.flats();
        let mut lower = vec![Vec::new(); d + 1];
        let mut upper = vec![Vec::new(); d + 1];
        for (i, l) in flats.iter().enumerate() {
            for (o, other) in flats.iter().enumerate() {
                if other.dim() + 1 == l.dim() && other.is_subset_of(l) {
                    lower[l.dim()].push((i, o));
                }
                if other.dim() == l.dim() + 1 && l.is_subset_of(other) {
                    upper[l.dim()].push((i, o));
                }
            }
        }
        let mut components = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let lo = lower[k]
                .iter()
                .map(|&(l, o)| component(arr, &flats[o], &flats[l], &flats[o]))
                .collect::<Result<Vec<_>>>()?;
            let up = upper[k]
                .iter()
                .map(|&(l, o)| component(arr, &flats[l], &flats[o], &flats[l]))
                .collect::<Result<Vec<_>>>()?;
            components.push([ExceptionalComponents::new(lo), ExceptionalComponents::new(up)]);
        }
        let boundedness = complex.chambers.iter().map(|c| classify_chamber(arr, c)).collect();
        Ok(Verifier {
            components,
            boundedness,
            polar: OnceLock::new(),
            complex,
            poly,
            chambers,
            lower,
            upper,
            levels: (0..=d).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.complex.arrangement
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn char_poly(&self) -> &CharPoly {
        &self.poly
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// Prepared projection data for chamber `c`.
    pub fn chamber(&self, c: usize) -> &PreparedCell {
        &self.chambers[c]
    }

    fn flat(&self, i: usize) -> &Flat {
        &self.complex.poset.flats()[i]
    }

    fn level(&self, j: usize) -> Result<&LevelData> {
        if j > self.dim() {
            return Err(Error::BadParams(format!("level {j} exceeds dimension {}", self.dim())));
        }
        if let Some(level) = self.levels[j].get() {
            return Ok(level);
        }
        let poly = char_poly_level_with(self.arrangement(), &self.complex.poset, j)?;
        let cells = if j == self.dim() {
            self.chambers.clone()
        } else {
            self.complex
                .rj(j)
                .into_iter()
                .map(|g| PreparedCell::from_complex(&self.complex, g))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(self.levels[j].get_or_init(|| LevelData { poly, cells }))
    }

    /// Prepared cells of `R_j(A)` (the chambers when `j = d`).
    pub fn level_cells(&self, j: usize) -> Result<&[PreparedCell]> {
        Ok(&self.level(j)?.cells)
    }

    /// Whether `x ∈ E_{kj}` for some `k ≤ j`.
    pub fn in_any_exceptional(&self, j: usize, x: &[Rational]) -> bool {
        let ix = exact_int::int_point(x);
        (0..=j).any(|k| self.exceptional_with(k, j, x, ix.as_ref()))
    }

    /// Absolute coefficients `a_{kj}` of the level-`j` polynomial.
    pub fn level_coefficients(&self, j: usize) -> Result<Vec<i64>> {
        Ok(absolute_coefficients(&self.level(j)?.poly))
    }

    pub fn phi(&self, x: &[Rational]) -> Result<PhiProfile> {
        self.arrangement().check_point(x)?;
        let d = self.dim();
        let mut per_chamber = BTreeMap::new();
        for (c, cell) in self.chambers.iter().enumerate() {
            per_chamber.insert(self.complex.chambers[c].signs.to_string(), cell.dim_of(x)?);
        }
        let (counts, projection_counts) = sum_cells(&self.chambers, d, x)?;
        Ok(PhiProfile { counts, projection_counts, per_chamber })
    }

    fn collect_witnesses(&self, k: usize, with_upper: bool, x: &[Rational], all: bool) -> Vec<ExceptionalWitness> {
        let mut out = Vec::new();
        if k > 0 {
            for &(l, lo) in &self.lower[k] {
                let (fl, flo) = (self.flat(l), self.flat(lo));
                if flo.contains_point(&fl.project(x)) {
                    out.push(ExceptionalWitness {
                        kind: WitnessKind::Lower,
                        flat: fl.containing().to_vec(),
                        other: flo.containing().to_vec(),
                    });
                    if !all {
                        return out;
                    }
                }
            }
        }
        if with_upper {
            for &(l, up) in &self.upper[k] {
                let (fl, fup) = (self.flat(l), self.flat(up));
                let v = fup.project_direction(&arith::sub(x, fl.point()));
                if fl.contains_direction(&v) {
                    out.push(ExceptionalWitness {
                        kind: WitnessKind::Upper,
                        flat: fl.containing().to_vec(),
                        other: fup.containing().to_vec(),
                    });
                    if !all {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// Membership of `x` in `E_k`, with every certifying flat pair.
    pub fn in_exceptional(&self, k: usize, x: &[Rational]) -> Result<ExceptionalReport> {
        self.in_exceptional_level(k, self.dim(), x)
    }

    /// Membership of `x` in `E_{kj}`.
    pub fn in_exceptional_level(&self, k: usize, j: usize, x: &[Rational]) -> Result<ExceptionalReport> {
        self.arrangement().check_point(x)?;
        if k > j || j > self.dim() {
            return Err(Error::BadParams(format!("need k <= j <= d, got k={k}, j={j}")));
        }
        let witnesses = self.collect_witnesses(k, k < j, x, true);
        Ok(ExceptionalReport { k, member: !witnesses.is_empty(), witnesses })
    }

    fn is_exceptional(&self, k: usize, j: usize, x: &[Rational]) -> bool {
        self.exceptional_with(k, j, x, exact_int::int_point(x).as_ref())
    }

    fn exceptional_with(&self, k: usize, j: usize, x: &[Rational], ix: Option<&IntPoint>) -> bool {
        let [lo, up] = &self.components[k];
        lo.contains(x, ix) || (k < j && up.contains(x, ix))
    }

    /// `E_k` as a list of affine hyperplanes: `L_{k-1} + L^⊥` and
    /// `L_{k+1}^⊥ + L` over all flat pairs, deduplicated.
    pub fn exceptional_hyperplanes(&self, k: usize, j: usize) -> Vec<Hyperplane> {
        let [lo, up] = &self.components[k];
        let mut out = lo.hyperplanes.clone();
        if k < j {
            out.extend(up.hyperplanes.iter().cloned());
        }
        out
    }

    /// `φ_k(x) = a_k` off `E_k` and `φ_k(x) ≥ a_k` everywhere, with the
    /// projection count cross-checked against the indicator sum.
    pub fn verify_theorem_main(&self, x: &[Rational]) -> Result<MainReport> {
        let a = absolute_coefficients(&self.poly);
        let profile = self.phi(x)?;
        let exceptional: Vec<bool> = (0..=self.dim()).map(|k| self.is_exceptional(k, self.dim(), x)).collect();
        check_counts(&profile.counts, &profile.projection_counts, &a, &exceptional, x, "phi")?;
        Ok(MainReport { point: x.to_vec(), a, phi: profile.counts, exceptional })
    }

    /// The level-`j` identity for every `k ≤ j`.
    pub fn verify_theorem_j_level(&self, j: usize, x: &[Rational]) -> Result<LevelReport> {
        self.arrangement().check_point(x)?;
        let level = self.level(j)?;
        let a = absolute_coefficients(&level.poly);
        let (mut counts, mut projected) = sum_cells(&level.cells, self.dim(), x)?;
        counts.truncate(j + 1);
        projected.truncate(j + 1);
        let exceptional: Vec<bool> = (0..=j).map(|k| self.is_exceptional(k, j, x)).collect();
        check_counts(&counts, &projected, &a, &exceptional, x, &format!("level {j} count"))?;
        Ok(LevelReport { j, point: x.to_vec(), a, counts, exceptional })
    }

    fn require_linear(&self) -> Result<()> {
        if self.arrangement().is_linear() {
            Ok(())
        } else {
            Err(Error::NotLinear)
        }
    }

    /// Outward normals of every constraint of chamber `c`; their positive
    /// hull is `C°` for a linear arrangement.
    fn polar_generators(&self, c: usize) -> Vec<Vector> {
        let signs = &self.complex.chambers[c].signs;
        self.arrangement()
            .hyperplanes()
            .iter()
            .enumerate()
            .map(|(i, h)| arith::scale(h.normal(), &arith::int(-signs.get(i) as i64)))
            .collect()
    }

    /// `x ∈ E_0^*`, the union of `L^⊥` over flats `L ≠ {0}`.
    pub fn in_polar_exceptional(&self, x: &[Rational]) -> Result<bool> {
        self.require_linear()?;
        self.arrangement().check_point(x)?;
        Ok(self
            .complex
            .poset
            .flats()
            .iter()
            .filter(|l| l.dim() > 0)
            .any(|l| arith::is_zero_vec(&l.project_direction(x))))
    }

    /// Number of chambers `C` with `x ∈ C°`.
    pub fn polar_count(&self, x: &[Rational]) -> Result<usize> {
        self.require_linear()?;
        self.arrangement().check_point(x)?;
        Ok(self.polar_halfspaces().iter().filter(|ts| in_halfspaces(ts, x)).count())
    }

    /// `C°` is the polar of `C`, so its facet normals generate `C`.
    fn polar_halfspaces(&self) -> &[Vec<Vector>] {
        self.polar.get_or_init(|| {
            (0..self.complex.chambers.len()).map(|c| cone_generators(&self.polar_generators(c), self.dim())).collect()
        })
    }

    /// `Σ_C 1_{C°}(x) = a_0` off `E_0^*`, `≥ a_0` on it.
    pub fn verify_prop_k0(&self, x: &[Rational]) -> Result<DualConeReport> {
        let count = self.polar_count(x)?;
        let exceptional = self.in_polar_exceptional(x)?;
        let a0 = absolute_coefficients(&self.poly)[0];
        let ok = if exceptional { count as i64 >= a0 } else { count as i64 == a0 };
        if !ok {
            return Err(fail(format!(
                "dual-cone count {count} vs a_0={a0} at x={} (exceptional={exceptional})",
                arith::PointDisplay(x)
            )));
        }
        Ok(DualConeReport { point: x.to_vec(), a0, count, exceptional })
    }

    /// For full-rank linear arrangements every point lies in some `C°`.
    pub fn verify_polar_cover(&self, points: &[Vector]) -> Result<()> {
        self.require_linear()?;
        if self.arrangement().rank() != self.dim() {
            return Err(Error::BadParams("cover check needs a full-rank arrangement".into()));
        }
        for x in points {
            if self.polar_count(x)? == 0 {
                return Err(fail(format!("{} lies in no polar chamber cone", arith::PointDisplay(x))));
            }
        }
        Ok(())
    }

    /// For full-rank linear arrangements: random points of each `L^⊥`
    /// (`L ≠ {0}`) lie on some `∂(C°)`, and random points of each facet of
    /// each `C°` lie in some `L^⊥`.
    pub fn verify_boundary_identity(&self, samples: usize, seed: u64) -> Result<BoundaryReport> {
        self.require_linear()?;
        let d = self.dim();
        if self.arrangement().rank() != d {
            return Err(Error::BadParams("boundary check needs a full-rank arrangement".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chamber_rays = self.polar_halfspaces();
        let on_some_boundary = |x: &[Rational]| {
            chamber_rays
                .iter()
                .any(|ts| in_halfspaces(ts, x) && ts.iter().any(|g| arith::dot(g, x) == arith::int(0)))
        };
        let mut normal_space_points = 0;
        for l in self.complex.poset.flats().iter().filter(|l| l.dim() > 0) {
            let perp = arith::null_space(l.directions(), d);
            for _ in 0..samples {
                let x = random_combination(&perp, d, &mut rng, false);
                if !on_some_boundary(&x) {
                    return Err(fail(format!(
                        "{} lies in L^perp for L={:?} but on no polar boundary",
                        arith::PointDisplay(&x),
                        l.containing()
                    )));
                }
                normal_space_points += 1;
            }
        }
        let mut boundary_points = 0;
        for (c, rays) in chamber_rays.iter().enumerate() {
            let gens = self.polar_generators(c);
            for g in rays {
                let facet: Vec<Vector> =
                    gens.iter().filter(|v| arith::dot(v, g) == arith::int(0)).cloned().collect();
                for _ in 0..samples {
                    let x = random_combination(&facet, d, &mut rng, true);
                    let hit = self
                        .complex
                        .poset
                        .flats()
                        .iter()
                        .filter(|l| l.dim() > 0)
                        .any(|l| arith::is_zero_vec(&l.project_direction(&x)));
                    if !hit {
                        return Err(fail(format!(
                            "{} lies on a polar boundary but in no L^perp",
                            arith::PointDisplay(&x)
                        )));
                    }
                    boundary_points += 1;
                }
            }
        }
        Ok(BoundaryReport { normal_space_points, boundary_points })
    }

    /// The alternating identity for chamber `c` at `x`.
    pub fn verify_mcmullen(&self, c: usize, x: &[Rational]) -> Result<McMullenReport> {
        self.arrangement().check_point(x)?;
        let chamber = &self.complex.chambers[c];
        let boundedness = self.boundedness[c];
        let expected = match boundedness {
            Boundedness::Bounded => 1,
            Boundedness::UnboundedLineFree => 0,
            Boundedness::HasLine => return Err(Error::HasLine),
        };
        let counts = self.chambers[c].indicator_counts(x, false);
        let alternating_sum: i64 =
            counts.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        if alternating_sum != expected {
            return Err(fail(format!(
                "alternating sum {alternating_sum} (expected {expected}) for chamber {} at x={}",
                chamber.signs,
                arith::PointDisplay(x)
            )));
        }
        Ok(McMullenReport {
            chamber: chamber.signs.to_string(),
            point: x.to_vec(),
            boundedness,
            counts,
            alternating_sum,
        })
    }

    /// Test points for the alternating identity on chamber `c`: every
    /// vertex, midpoints between face witnesses, points pushed outside
    /// through each facet, and random points, `n` in total at least.
    pub fn mcmullen_points(&self, c: usize, n: usize, seed: u64) -> Vec<Vector> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let faces: Vec<&crate::cells::Face> =
            self.complex.chamber_faces[c].iter().map(|&f| &self.complex.faces[f]).collect();
        let mut pts: Vec<Vector> = Vec::new();
        let half = arith::ratio(1, 2);
        for f in &faces {
            pts.push(f.relint_witness.clone());
        }
        let vertices: Vec<&Vector> = faces.iter().filter(|f| f.dim == 0).map(|f| &f.relint_witness).collect();
        for (i, u) in vertices.iter().enumerate() {
            for w in &vertices[i + 1..] {
                pts.push(arith::scale(&arith::add(u, w), &half));
            }
        }
        let interior = &self.complex.chambers[c].witness;
        for f in faces.iter().filter(|f| f.dim + 1 == self.dim()) {
            // reflect the interior witness through the facet point
            let out = arith::sub(&arith::scale(&f.relint_witness, &arith::int(2)), interior);
            pts.push(out);
        }
        while pts.len() < n {
            pts.push(random_point(self.dim(), &mut rng));
        }
        pts
    }

    pub fn verify_zaslavsky(&self) -> Result<ZaslavskyReport> {
        let arr = self.arrangement();
        let d = self.dim();
        let rank = arr.rank();
        let chambers = self.complex.chambers.len();
        let sign = |e: usize| if e % 2 == 0 { 1 } else { -1 };
        let chi_at_minus_one = sign(d) * self.poly.eval(-1);
        let chi_at_one = sign(rank) * self.poly.eval(1);
        let bounded = self.boundedness.iter().filter(|&&b| b == Boundedness::Bounded).count();
        let relatively_bounded = self.complex.chambers.iter().filter(|c| is_relatively_bounded(arr, c)).count();
        let report = ZaslavskyReport { dim: d, rank, chambers, chi_at_minus_one, bounded, relatively_bounded, chi_at_one };
        if chambers as i64 != chi_at_minus_one {
            return Err(fail(format!("{chambers} chambers but (-1)^d chi(-1) = {chi_at_minus_one}")));
        }
        if rank == d {
            if bounded as i64 != chi_at_one {
                return Err(fail(format!("{bounded} bounded chambers but (-1)^rank chi(1) = {chi_at_one}")));
            }
            let a = absolute_coefficients(&self.poly);
            let alt: i64 = a.iter().enumerate().map(|(k, &v)| sign(k) * v).sum();
            if alt != bounded as i64 {
                return Err(fail(format!("{bounded} bounded chambers but alternating sum of a_k = {alt}")));
            }
        } else {
            if bounded != 0 {
                return Err(fail(format!("rank {rank} < {d} yet {bounded} chambers are bounded")));
            }
            if relatively_bounded as i64 != chi_at_one {
                return Err(fail(format!(
                    "{relatively_bounded} chambers bounded modulo lineality but (-1)^rank chi(1) = {chi_at_one}"
                )));
            }
        }
        Ok(report)
    }
}

/// Indicator sums and projection-dimension histogram over `cells`.
fn sum_cells(cells: &[PreparedCell], d: usize, x: &[Rational]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut counts = vec![0; d + 1];
    let mut projected = vec![0; d + 1];
    for cell in cells {
        projected[cell.dim_of(x)?] += 1;
        for (k, n) in cell.indicator_counts(x, true).into_iter().enumerate() {
            counts[k] += n;
        }
    }
    Ok((counts, projected))
}

/// `counts_k ≥ a_k` everywhere; off the exceptional set also
/// `counts_k = a_k` and the projection histogram agrees.
fn check_counts(
    counts: &[usize],
    projected: &[usize],
    a: &[i64],
    exceptional: &[bool],
    x: &[Rational],
    what: &str,
) -> Result<()> {
    for k in 0..counts.len() {
        if !exceptional[k] && counts[k] != projected[k] {
            return Err(fail(format!(
                "indicator sum {} but {} cells project {k}-dimensionally at x={}",
                counts[k],
                projected[k],
                arith::PointDisplay(x)
            )));
        }
        let (c, ak) = (counts[k] as i64, a[k]);
        if c < ak || (!exceptional[k] && c != ak) {
            return Err(fail(format!(
                "{what}_{k}(x) = {c} but a_{k} = {ak} at x={} (exceptional={})",
                arith::PointDisplay(x),
                exceptional[k]
            )));
        }
    }
    Ok(())
}

fn in_halfspaces(ts: &[Vector], x: &[Rational]) -> bool {
    ts.iter().all(|t| !arith::dot(t, x).is_positive())
}

fn random_point<R: Rng>(d: usize, rng: &mut R) -> Vector {
    (0..d)
        .map(|_| {
            let q = 2 * rng.gen_range(0..8) + 1;
            arith::ratio(rng.gen_range(-40..=40), q)
        })
        .collect()
}

fn random_combination<R: Rng>(gens: &[Vector], d: usize, rng: &mut R, positive: bool) -> Vector {
    let mut x = arith::zeros(d);
    for g in gens {
        let c = if positive { rng.gen_range(1..=9) } else { rng.gen_range(-9..=9) };
        arith::axpy(&mut x, &arith::ratio(c, 2 * rng.gen_range(0..4) + 1), g);
    }
    x
}

/// `n` seeded rational points with odd denominators and small numerators.
pub fn random_points(d: usize, n: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_point(d, &mut rng)).collect()
}

/// `n` seeded points lying in some `L^⊥` for a flat `L ≠ {0}` of a linear
/// arrangement.
pub fn polar_exceptional_points(v: &Verifier, n: usize, seed: u64) -> Result<Vec<Vector>> {
    v.require_linear()?;
    let d = v.dim();
    let flats: Vec<&Flat> = v.complex.poset.flats().iter().filter(|l| l.dim() > 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let l = flats[rng.gen_range(0..flats.len())];
            random_combination(&arith::null_space(l.directions(), d), d, &mut rng, false)
        })
        .collect())
}

pub fn phi(arr: &Arrangement, x: &[Rational]) -> Result<PhiProfile> {
    Verifier::new(arr)?.phi(x)
}

pub fn in_exceptional(arr: &Arrangement, k: usize, x: &[Rational]) -> Result<ExceptionalReport> {
    Verifier::new(arr)?.in_exceptional(k, x)
}

pub fn verify_theorem_main(arr: &Arrangement, x: &[Rational]) -> Result<MainReport> {
    Verifier::new(arr)?.verify_theorem_main(x)
}

pub fn verify_theorem_j_level(arr: &Arrangement, j: usize, x: &[Rational]) -> Result<LevelReport> {
    Verifier::new(arr)?.verify_theorem_j_level(j, x)
}

pub fn verify_prop_k0(arr: &Arrangement, x: &[Rational]) -> Result<DualConeReport> {
    if !arr.is_linear() {
        return Err(Error::NotLinear);
    }
    Verifier::new(arr)?.verify_prop_k0(x)
}

pub fn verify_zaslavsky(arr: &Arrangement) -> Result<ZaslavskyReport> {
    Verifier::new(arr)?.verify_zaslavsky()
}

/// The alternating identity for the chamber with sign vector `signs`.
pub fn verify_mcmullen(arr: &Arrangement, signs: &SignVector, x: &[Rational]) -> Result<McMullenReport> {
    let v = Verifier::new(arr)?;
    let c = v.complex.chamber_index(signs).ok_or_else(|| Error::NotAChamber(signs.to_string()))?;
    v.verify_mcmullen(c, x)
}

/// Counts group elements `g` of type A, B or D by `dim(gx, C)` for the
/// fundamental chamber `C` and compares them with the absolute
/// coefficients off the exceptional sets. Since `g ↦ g⁻¹C` runs over all
/// chambers, the counts must equal the chamber projection histogram.
pub fn verify_orbit_reflection(kind: GeneratorKind, dim: usize, x: &[Rational]) -> Result<OrbitReport> {
    let group = gen::reflection_group(kind, dim)?;
    let arr = gen::generate(&GeneratorSpec::new(kind, dim))?;
    let v = Verifier::new(&arr)?;
    arr.check_point(x)?;
    let base = gen::fundamental_point(dim);
    let c = v
        .complex
        .locate(&base)?
        .ok_or_else(|| Error::Inconsistent("fundamental point is not interior".into()))?;
    let cell = &v.chambers[c];
    let mut counts = vec![0; dim + 1];
    for g in &group {
        counts[cell.dim_of(&g.apply(x))?] += 1;
    }
    let profile = v.phi(x)?;
    if profile.projection_counts != counts {
        return Err(fail(format!(
            "orbit counts {counts:?} differ from the chamber projection counts {:?}",
            profile.projection_counts
        )));
    }
    if group.len() != v.complex.chambers.len() {
        return Err(fail(format!(
            "group of order {} but {} chambers",
            group.len(),
            v.complex.chambers.len()
        )));
    }
    let a = absolute_coefficients(&v.poly);
    let exceptional: Vec<bool> = (0..=dim).map(|k| v.is_exceptional(k, dim, x)).collect();
    check_counts(&profile.counts, &counts, &a, &exceptional, x, "orbit count")?;
    Ok(OrbitReport {
        kind: kind.to_string(),
        dim,
        point: x.to_vec(),
        group_order: group.len(),
        counts,
        a,
        exceptional,
    })
}

/// One named check of a suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record<T>(&mut self, check: impl Into<String>, r: Result<T>, detail: impl FnOnce(&T) -> String) -> Result<()> {
        let check = check.into();
        match r {
            Ok(v) => {
                self.checks.push(CheckOutcome { check, passed: true, detail: detail(&v) });
                Ok(())
            }
            Err(Error::VerificationFailure(m)) => {
                self.checks.push(CheckOutcome { check, passed: false, detail: m });
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub points: Vec<Vector>,
    /// Run the level-`j` identity for every `j`, not only `j = d`.
    pub all_levels: bool,
    pub mcmullen_points: usize,
    pub seed: u64,
}

/// Runs every applicable check on one arrangement.
pub fn run_suite(v: &Verifier, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    let d = v.dim();
    report.record("zaslavsky", v.verify_zaslavsky(), |z| {
        format!("{} chambers, {} bounded, {} relatively bounded", z.chambers, z.bounded, z.relatively_bounded)
    })?;
    let pts = &opts.points;
    report.record("main", pts.iter().map(|x| v.verify_theorem_main(x)).collect::<Result<Vec<_>>>(), |r| {
        format!("{} points, {} with some exceptional k", r.len(), r.iter().filter(|m| m.exceptional.contains(&true)).count())
    })?;
    if opts.all_levels {
        for j in 0..d {
            report.record(
                format!("level {j}"),
                pts.iter().map(|x| v.verify_theorem_j_level(j, x)).collect::<Result<Vec<_>>>(),
                |r| format!("{} points", r.len()),
            )?;
        }
    }
    for c in 0..v.complex.chambers.len() {
        if v.boundedness[c] == Boundedness::HasLine {
            continue;
        }
        let sample = v.mcmullen_points(c, opts.mcmullen_points, opts.seed ^ c as u64);
        report.record(
            format!("alternating {}", v.complex.chambers[c].signs),
            sample.iter().map(|x| v.verify_mcmullen(c, x)).collect::<Result<Vec<_>>>(),
            |r| format!("{} points", r.len()),
        )?;
    }
    if v.arrangement().is_linear() {
        report.record("dual cones", pts.iter().map(|x| v.verify_prop_k0(x)).collect::<Result<Vec<_>>>(), |r| {
            format!("{} points", r.len())
        })?;
        if v.arrangement().rank() == d && d > 0 {
            report.record("dual cover", v.verify_polar_cover(pts), |_| format!("{} points", pts.len()))?;
            report.record("boundary identity", v.verify_boundary_identity(3, opts.seed), |b| {
                format!("{} normal-space points, {} boundary points", b.normal_space_points, b.boundary_points)
            })?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::vector;
    use crate::arrangement::Hyperplane;

    fn axes() -> Arrangement {
        gen::generate(&GeneratorSpec::new(GeneratorKind::Boolean, 2)).unwrap()
    }

    #[test]
    fn axes_phi() {
        let v = Verifier::new(&axes()).unwrap();
        assert_eq!(v.phi(&vector(&[3, 4])).unwrap().counts, vec![1, 2, 1]);
        let p = v.phi(&vector(&[0, 4])).unwrap();
        assert_eq!(p.counts, vec![2, 4, 2]);
        assert_eq!(p.projection_counts, vec![2, 2, 0]);
        assert_eq!(v.phi(&vector(&[0, 0])).unwrap().counts, vec![4, 8, 4]);
    }

    #[test]
    fn axes_exceptional() {
        let v = Verifier::new(&axes()).unwrap();
        assert!(v.in_exceptional(1, &vector(&[0, 4])).unwrap().member);
        assert!(!v.in_exceptional(0, &vector(&[3, 4])).unwrap().member);
        assert!(v.in_exceptional(0, &vector(&[0, 4])).unwrap().member);
        assert!(v.in_exceptional(2, &vector(&[0, 4])).unwrap().member);
        let e = Verifier::new(&Arrangement::empty(3)).unwrap();
        for k in 0..3 {
            assert!(!e.in_exceptional(k, &vector(&[1, 2, 3])).unwrap().member);
        }
    }

    #[test]
    fn exceptional_forms_agree() {
        for spec in [
            GeneratorSpec::new(GeneratorKind::TypeB, 3),
            GeneratorSpec::new(GeneratorKind::Triangle, 2),
            GeneratorSpec::random(3, 5, 11),
        ] {
            let v = Verifier::new(&gen::generate(&spec).unwrap()).unwrap();
            let d = v.dim();
            let mut pts = random_points(d, 60, 2);
            pts.extend(v.complex().faces.iter().map(|f| f.relint_witness.clone()));
            for x in &pts {
                for j in 0..=d {
                    for k in 0..=j {
                        let direct = v.in_exceptional_level(k, j, x).unwrap().member;
                        let comps = v.exceptional_hyperplanes(k, j).iter().any(|h| h.contains(x));
                        assert_eq!(direct, comps);
                        assert_eq!(direct, v.is_exceptional(k, j, x));
                    }
                }
            }
        }
    }

    #[test]
    fn main_and_levels() {
        let v = Verifier::new(&axes()).unwrap();
        assert_eq!(v.verify_theorem_main(&vector(&[3, 4])).unwrap().phi, vec![1, 2, 1]);
        assert!(v.verify_theorem_main(&vector(&[0, 0])).is_ok());
        assert_eq!(v.verify_theorem_j_level(1, &vector(&[3, 4])).unwrap().counts, vec![2, 2]);
        assert_eq!(v.verify_theorem_j_level(0, &vector(&[3, 4])).unwrap().counts, vec![1]);
        let pair = gen::generate(&GeneratorSpec::new(GeneratorKind::ParallelPair, 2)).unwrap();
        let r = verify_theorem_main(&pair, &[arith::ratio(1, 3), arith::ratio(5, 7)]).unwrap();
        assert_eq!(r.phi, vec![0, 2, 1]);
    }

    #[test]
    fn dual_cones() {
        let v = Verifier::new(&axes()).unwrap();
        assert_eq!(v.verify_prop_k0(&vector(&[3, 4])).unwrap().count, 1);
        assert_eq!(v.verify_prop_k0(&vector(&[0, 4])).unwrap().count, 2);
        let line = Arrangement::new(2, vec![Hyperplane::linear(&[1, 1]).unwrap()]).unwrap();
        assert_eq!(verify_prop_k0(&line, &vector(&[1, 3])).unwrap().count, 0);
        assert!(matches!(
            verify_prop_k0(&gen::generate(&GeneratorSpec::new(GeneratorKind::Triangle, 2)).unwrap(), &vector(&[1, 1])),
            Err(Error::NotLinear)
        ));
        assert!(v.verify_boundary_identity(3, 1).is_ok());
    }

    #[test]
    fn alternating_identity() {
        let tri = gen::generate(&GeneratorSpec::new(GeneratorKind::Triangle, 2)).unwrap();
        let v = Verifier::new(&tri).unwrap();
        let c = v.complex().chamber_index(&"++-".parse().unwrap()).unwrap();
        for x in v.mcmullen_points(c, 30, 5) {
            assert_eq!(v.verify_mcmullen(c, &x).unwrap().alternating_sum, 1);
        }
        let q: SignVector = "++".parse().unwrap();
        assert_eq!(verify_mcmullen(&axes(), &q, &vector(&[5, 5])).unwrap().alternating_sum, 0);
        assert_eq!(verify_mcmullen(&axes(), &q, &vector(&[0, 0])).unwrap().alternating_sum, 0);
        let one = Arrangement::new(2, vec![Hyperplane::linear(&[1, 0]).unwrap()]).unwrap();
        assert!(matches!(verify_mcmullen(&one, &"+".parse().unwrap(), &vector(&[1, 1])), Err(Error::HasLine)));
    }

    #[test]
    fn zaslavsky_counts() {
        let z = verify_zaslavsky(&axes()).unwrap();
        assert_eq!((z.chambers, z.bounded, z.chi_at_one), (4, 0, 0));
        let tri = gen::generate(&GeneratorSpec::new(GeneratorKind::Triangle, 2)).unwrap();
        let z = verify_zaslavsky(&tri).unwrap();
        assert_eq!((z.chambers, z.bounded), (7, 1));
        let z = verify_zaslavsky(&Arrangement::empty(3)).unwrap();
        assert_eq!((z.chambers, z.bounded, z.relatively_bounded, z.chi_at_one), (1, 0, 1, 1));
        let z = verify_zaslavsky(&Arrangement::empty(0)).unwrap();
        assert_eq!((z.chambers, z.bounded), (1, 1));
    }

    #[test]
    fn orbits() {
        let r = verify_orbit_reflection(GeneratorKind::TypeB, 2, &vector(&[2, 5])).unwrap();
        assert_eq!(r.counts, vec![3, 4, 1]);
        let r = verify_orbit_reflection(GeneratorKind::BraidA, 3, &vector(&[1, 5, 2])).unwrap();
        assert_eq!(r.counts, vec![0, 2, 3, 1]);
        assert!(verify_orbit_reflection(GeneratorKind::Dihedral, 2, &vector(&[1, 2])).is_err());
    }
}
