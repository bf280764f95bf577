//! Tangent and normal cones, cone membership, and exact metric projection
//! onto chambers and lower dimensional cells.
//!
//! Projection is done face by face: the candidate point is the orthogonal
//! projection of `x` onto `aff F`, and the face is accepted when that point
//! lies in `relint F` and `x - π` lies in `N_F(P)`. Exactly one face accepts;
//! anything else is reported as [`Error::Inconsistent`].

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{self, OrthoProjector, Rational, Vector};
use crate::arrangement::{sign_vector, Arrangement, SignVector};
use crate::cells::{faces_of_chamber, in_closed_cell, CellComplex, Chamber, Face};
use crate::error::{Error, Result};
use crate::exact_int::{self, IntAffine, IntCone, IntPoint, IntRow};
use crate::lp::{self, Constraint};

/// Polyhedral cone in generator form `pos(generators)` and/or halfspace form
/// `{u : <h, u> <= 0 for all h}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cone {
    pub ambient_dim: usize,
    pub generators: Option<Vec<Vector>>,
    pub halfspaces: Option<Vec<Vector>>,
}

impl Cone {
    pub fn from_generators(ambient_dim: usize, generators: Vec<Vector>) -> Self {
        Cone { ambient_dim, generators: Some(generators), halfspaces: None }
    }

    pub fn from_halfspaces(ambient_dim: usize, halfspaces: Vec<Vector>) -> Self {
        Cone { ambient_dim, generators: None, halfspaces: Some(halfspaces) }
    }

    /// Polar cone. Swaps the two forms: the dual of `pos(G)` is
    /// `{z : <g, z> <= 0}` and vice versa.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_dim: self.ambient_dim,
            generators: self.halfspaces.clone(),
            halfspaces: self.generators.clone(),
        }
    }

    /// Exact membership, using whichever form is present.
    pub fn contains(&self, v: &[Rational]) -> bool {
        if let Some(hs) = &self.halfspaces {
            return hs.iter().all(|h| !arith::dot(h, v).is_positive());
        }
        in_cone(self, v)
    }

    /// Adds the missing generator form by ray enumeration.
    pub fn with_generators(mut self) -> Cone {
        if self.generators.is_none() {
            let hs = self.halfspaces.as_ref().expect("cone has some form");
            self.generators = Some(cone_generators(hs, self.ambient_dim));
        }
        self
    }

    /// Adds the missing halfspace form (generators of the dual cone).
    pub fn with_halfspaces(mut self) -> Cone {
        if self.halfspaces.is_none() {
            let gs = self.generators.as_ref().expect("cone has some form");
            self.halfspaces = Some(cone_generators(gs, self.ambient_dim));
        }
        self
    }

    /// Mutual containment of the two forms. Requires both.
    pub fn forms_agree(&self) -> bool {
        let (Some(gs), Some(hs)) = (&self.generators, &self.halfspaces) else {
            return false;
        };
        let gen_in_h = gs
            .iter()
            .all(|g| hs.iter().all(|h| !arith::dot(h, g).is_positive()));
        let h_cone = Cone::from_halfspaces(self.ambient_dim, hs.clone()).with_generators();
        let h_in_gen = h_cone
            .generators
            .as_ref()
            .unwrap()
            .iter()
            .all(|r| in_cone(self, r));
        gen_in_h && h_in_gen
    }
}

/// Generators of `{u : <h, u> <= 0 for h in rows}`: a basis of the lineality
/// space with both signs, plus the extreme rays of the pointed part found by
/// brute force over tight row subsets.
pub fn cone_generators(rows: &[Vector], d: usize) -> Vec<Vector> {
    let lineality = arith::null_space(rows, d);
    let mut gens: Vec<Vector> = Vec::new();
    for l in &lineality {
        gens.push(l.clone());
        gens.push(arith::neg(l));
    }
    let pointed_dim = d - lineality.len();
    if pointed_dim == 0 {
        return gens;
    }
    let need = pointed_dim - 1;
    let mut rays: Vec<Vector> = Vec::new();
    let mut subset = Vec::new();
    ray_walk(rows, d, &lineality, need, 0, &mut subset, &mut rays);
    gens.extend(rays);
    gens
}

fn ray_walk(
    rows: &[Vector],
    d: usize,
    lineality: &[Vector],
    need: usize,
    start: usize,
    subset: &mut Vec<usize>,
    rays: &mut Vec<Vector>,
) {
    let mut eqs: Vec<Vector> = subset.iter().map(|&i| rows[i].clone()).collect();
    eqs.extend(lineality.iter().cloned());
    if arith::rank(&eqs, d) < subset.len() + lineality.len() {
        return;
    }
    if subset.len() == need {
        let ns = arith::null_space(&eqs, d);
        debug_assert_eq!(ns.len(), 1);
        for cand in [ns[0].clone(), arith::neg(&ns[0])] {
            if rows.iter().all(|h| !arith::dot(h, &cand).is_positive())
                && !rays.iter().any(|r| same_ray(r, &cand))
            {
                rays.push(cand);
            }
        }
        return;
    }
    for i in start..rows.len() {
        subset.push(i);
        ray_walk(rows, d, lineality, need, i + 1, subset, rays);
        subset.pop();
    }
}

fn same_ray(a: &[Rational], b: &[Rational]) -> bool {
    let Some(k) = a.iter().position(|v| !v.is_zero()) else {
        return arith::is_zero_vec(b);
    };
    if b[k].is_zero() || a[k].is_positive() != b[k].is_positive() {
        return false;
    }
    let s = &b[k] / &a[k];
    arith::scale(a, &s) == b
}

/// `v ∈ pos(generators)`, decided exactly. The zero cone contains only 0.
pub fn in_cone(cone: &Cone, v: &[Rational]) -> bool {
    let gs = cone.generators.as_ref().expect("in_cone needs the generator form");
    in_pos_hull(gs, v)
}

pub fn in_pos_hull(gs: &[Vector], v: &[Rational]) -> bool {
    if gs.is_empty() {
        return arith::is_zero_vec(v);
    }
    let d = v.len();
    let n = gs.len();
    let mut cons = Vec::with_capacity(n + d);
    for i in 0..n {
        let mut row = arith::zeros(n);
        row[i] = -Rational::from_integer(1.into());
        cons.push(Constraint::le(row, Rational::zero()));
    }
    for k in 0..d {
        let row: Vector = gs.iter().map(|g| g[k].clone()).collect();
        cons.push(Constraint::eq(row, v[k].clone()));
    }
    lp::feasible(n, &cons).is_some()
}

/// `pos(gens)` stored by its facet inequalities `<t, v> <= 0`, with `t`
/// running over the generators of the dual cone.
#[derive(Clone, Debug)]
struct PosHull {
    halfspaces: Vec<Vector>,
}

impl PosHull {
    fn new(gens: Vec<Vector>, d: usize) -> Self {
        PosHull { halfspaces: cone_generators(&gens, d) }
    }

    fn contains(&self, v: &[Rational]) -> bool {
        self.halfspaces.iter().all(|t| !arith::dot(t, v).is_positive())
    }
}

fn check_face_of(face: &Face, cell: &Face) -> Result<()> {
    if face.signs.len() != cell.signs.len() || !face.signs.refines(&cell.signs) {
        return Err(Error::FaceNotOfChamber {
            face: face.signs.to_string(),
            cell: cell.signs.to_string(),
        });
    }
    Ok(())
}

/// Halfspace normals of `T_F(P)`: equalities of `P` give both signs, the
/// remaining constraints active at `F` give the outward normal `-s_i y_i`.
fn tangent_rows(arr: &Arrangement, cell: &Face, face: &Face) -> Vec<Vector> {
    let mut rows = Vec::new();
    for &i in &face.zero_set {
        let y = arr.hyperplane(i).normal();
        match cell.signs.get(i) {
            0 => {
                rows.push(y.to_vec());
                rows.push(arith::neg(y));
            }
            s if s > 0 => rows.push(arith::neg(y)),
            _ => rows.push(y.to_vec()),
        }
    }
    rows
}

/// `T_F(P)` in halfspace form, for `P` any cell of the arrangement.
pub fn tangent_cone_of_cell(arr: &Arrangement, cell: &Face, face: &Face) -> Result<Cone> {
    check_face_of(face, cell)?;
    Ok(Cone::from_halfspaces(arr.dim(), tangent_rows(arr, cell, face)))
}

/// `N_F(P)` in generator form, for `P` any cell of the arrangement.
pub fn normal_cone_of_cell(arr: &Arrangement, cell: &Face, face: &Face) -> Result<Cone> {
    check_face_of(face, cell)?;
    Ok(Cone::from_generators(arr.dim(), tangent_rows(arr, cell, face)))
}

pub fn tangent_cone(arr: &Arrangement, chamber: &Chamber, face: &Face) -> Result<Cone> {
    tangent_cone_of_cell(arr, &chamber.as_face(arr.dim()), face)
}

/// Positive hull of the outward normals active at `F`.
pub fn normal_cone(arr: &Arrangement, chamber: &Chamber, face: &Face) -> Result<Cone> {
    normal_cone_of_cell(arr, &chamber.as_face(arr.dim()), face)
}

/// Projection data for one face of a cell.
#[derive(Clone, Debug)]
struct PreparedFace {
    face: Face,
    origin: Vector,
    affine: OrthoProjector,
    normal: PosHull,
    fast: Option<(IntAffine, IntCone)>,
}

impl PreparedFace {
    fn new(arr: &Arrangement, cell: &Face, face: &Face) -> Self {
        let d = arr.dim();
        let normals: Vec<Vector> = face.zero_set.iter().map(|&i| arr.hyperplane(i).normal().to_vec()).collect();
        let dirs = arith::null_space(&normals, d);
        let affine = OrthoProjector::new(&dirs, d);
        let normal = PosHull::new(tangent_rows(arr, cell, face), d);
        let fast = IntAffine::new(&affine, &face.relint_witness, d)
            .zip(IntCone::new(&normal.halfspaces));
        PreparedFace { face: face.clone(), origin: face.relint_witness.clone(), affine, normal, fast }
    }

    /// Relint/closed test with the `i128` path when possible. Returns the
    /// projected point on acceptance.
    fn test(
        &self,
        arr: &Arrangement,
        rows: Option<&[IntRow]>,
        x: &[Rational],
        ix: Option<&IntPoint>,
        closed: bool,
        positive: bool,
    ) -> Option<Vector> {
        if let (Some(rows), Some(ix), Some((aff, cone))) = (rows, ix, &self.fast) {
            if let Some(r) = exact_int::face_test(rows, aff, cone, self.face.signs.signs(), ix, closed, positive) {
                return r.map(|(p, den)| exact_int::to_rational_point(&p, den));
            }
        }
        let pi = self.project_affine(x);
        let sign_ok = if closed {
            in_closed_cell(arr, &self.face.signs, &pi)
        } else {
            sign_vector(arr, &pi).map(|s| s == self.face.signs).unwrap_or(false)
        };
        if !sign_ok {
            return None;
        }
        let r = arith::sub(x, &pi);
        let r = if positive { r } else { arith::neg(&r) };
        self.normal.contains(&r).then_some(pi)
    }

    fn project_affine(&self, x: &[Rational]) -> Vector {
        let v = arith::sub(x, &self.origin);
        arith::add(&self.origin, &self.affine.project(&v))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionResult {
    #[serde(serialize_with = "ser_point")]
    pub point: Vector,
    #[serde(serialize_with = "ser_face")]
    pub face: Face,
    pub k: usize,
}

fn ser_point<S: serde::Serializer>(p: &Vector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(arith::format_rational))
}

fn ser_face<S: serde::Serializer>(f: &Face, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.signs.to_string())
}

/// A cell with everything needed for repeated projection queries.
#[derive(Clone, Debug)]
pub struct PreparedCell {
    arrangement: Arrangement,
    rows: Option<Vec<IntRow>>,
    cell: Face,
    /// Ascending dimension, then sign vector.
    faces: Vec<PreparedFace>,
}

impl PreparedCell {
    /// `faces` must be all faces of `cell` (including the cell itself).
    pub fn new(arr: &Arrangement, cell: &Face, faces: &[Face]) -> Result<Self> {
        let mut fs: Vec<&Face> = faces.iter().collect();
        fs.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.signs.cmp(&b.signs)));
        let faces = fs
            .into_iter()
            .map(|f| {
                check_face_of(f, cell)?;
                Ok(PreparedFace::new(arr, cell, f))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PreparedCell { arrangement: arr.clone(), rows: exact_int::int_rows(arr), cell: cell.clone(), faces })
    }

    pub fn from_chamber(arr: &Arrangement, chamber: &Chamber) -> Result<Self> {
        let faces = faces_of_chamber(arr, chamber)?;
        Self::new(arr, &chamber.as_face(arr.dim()), &faces)
    }

    /// Prepared cell for face `g` of a built complex.
    pub fn from_complex(complex: &CellComplex, g: usize) -> Result<Self> {
        let faces: Vec<Face> = complex
            .faces_of_face(g)
            .into_iter()
            .map(|i| complex.faces[i].clone())
            .collect();
        Self::new(&complex.arrangement, &complex.faces[g], &faces)
    }

    pub fn cell(&self) -> &Face {
        &self.cell
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().map(|f| &f.face)
    }

    /// Metric projection with the unique-acceptance check.
    pub fn project(&self, x: &[Rational]) -> Result<ProjectionResult> {
        self.arrangement.check_point(x)?;
        let ix = exact_int::int_point(x);
        let mut accepted: Option<(usize, Vector)> = None;
        for (idx, pf) in self.faces.iter().enumerate() {
            let Some(pi) = pf.test(&self.arrangement, self.rows.as_deref(), x, ix.as_ref(), false, true) else {
                continue;
            };
            if let Some((prev, _)) = &accepted {
                return Err(Error::Inconsistent(format!(
                    "faces {} and {} both accept {}",
                    self.faces[*prev].face.signs,
                    pf.face.signs,
                    arith::PointDisplay(x)
                )));
            }
            accepted = Some((idx, pi));
        }
        let (idx, point) = accepted.ok_or_else(|| {
            Error::Inconsistent(format!(
                "no face of {} accepts {}",
                self.cell.signs,
                arith::PointDisplay(x)
            ))
        })?;
        let face = self.faces[idx].face.clone();
        Ok(ProjectionResult { point, k: face.dim, face })
    }

    /// `dim(x, P)`.
    pub fn dim_of(&self, x: &[Rational]) -> Result<usize> {
        Ok(self.project(x)?.k)
    }

    /// `1_{F ± N_F(P)}(x)` for the face with the given sign vector.
    pub fn indicator(&self, face: &SignVector, x: &[Rational], positive: bool) -> Result<bool> {
        let pf = self
            .faces
            .iter()
            .find(|f| &f.face.signs == face)
            .ok_or_else(|| Error::FaceNotOfChamber {
                face: face.to_string(),
                cell: self.cell.signs.to_string(),
            })?;
        Ok(pf.test(&self.arrangement, self.rows.as_deref(), x, exact_int::int_point(x).as_ref(), true, positive).is_some())
    }

    /// Per-dimension count of faces `F` with `x ∈ F + N_F(P)` (slow path,
    /// sums every indicator).
    pub fn indicator_counts(&self, x: &[Rational], positive: bool) -> Vec<usize> {
        let mut counts = vec![0; self.arrangement.dim() + 1];
        let ix = exact_int::int_point(x);
        for pf in &self.faces {
            if pf.test(&self.arrangement, self.rows.as_deref(), x, ix.as_ref(), true, positive).is_some() {
                counts[pf.face.dim] += 1;
            }
        }
        counts
    }
}

/// `π_P(x)` together with its face and `dim(x, P)`.
pub fn metric_project(arr: &Arrangement, chamber: &Chamber, x: &[Rational]) -> Result<ProjectionResult> {
    PreparedCell::from_chamber(arr, chamber)?.project(x)
}

/// `1_{F + N_F(P)}(x)` (or `F - N_F(P)` when `positive` is false). `F + N`
/// is an orthogonal sum, so `x` belongs to it iff its projection onto
/// `aff F` lies in `F` and the residual lies in `±N_F(P)`.
pub fn indicator_f_plus_n(
    arr: &Arrangement,
    chamber: &Chamber,
    face: &Face,
    x: &[Rational],
    positive: bool,
) -> Result<bool> {
    arr.check_point(x)?;
    let cell = chamber.as_face(arr.dim());
    check_face_of(face, &cell)?;
    let pf = PreparedFace::new(arr, &cell, face);
    Ok(pf.test(arr, None, x, None, true, positive).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::vector;
    use crate::arrangement::Hyperplane;
    use crate::cells::enumerate_chambers;

    fn axes() -> Arrangement {
        Arrangement::new(2, vec![Hyperplane::linear(&[1, 0]).unwrap(), Hyperplane::linear(&[0, 1]).unwrap()])
            .unwrap()
    }

    fn quadrant(a: &Arrangement) -> (Chamber, Vec<Face>) {
        let c = enumerate_chambers(a).unwrap().into_iter().find(|c| c.signs.to_string() == "++").unwrap();
        let fs = faces_of_chamber(a, &c).unwrap();
        (c, fs)
    }

    fn face<'a>(fs: &'a [Face], s: &str) -> &'a Face {
        fs.iter().find(|f| f.signs.to_string() == s).unwrap()
    }

    #[test]
    fn tangent_and_normal_cones() {
        let a = axes();
        let (q, fs) = quadrant(&a);
        let origin = face(&fs, "00");
        let t = tangent_cone(&a, &q, origin).unwrap();
        assert!(t.contains(&vector(&[1, 2])));
        assert!(!t.contains(&vector(&[-1, 2])));
        let n = normal_cone(&a, &q, origin).unwrap();
        assert_eq!(n.generators.clone().unwrap(), vec![vector(&[-1, 0]), vector(&[0, -1])]);

        let ray = face(&fs, "+0");
        let t = tangent_cone(&a, &q, ray).unwrap();
        assert!(t.contains(&vector(&[-5, 1])));
        assert!(!t.contains(&vector(&[0, -1])));
        assert_eq!(normal_cone(&a, &q, ray).unwrap().generators.unwrap(), vec![vector(&[0, -1])]);

        let top = face(&fs, "++");
        assert!(tangent_cone(&a, &q, top).unwrap().contains(&vector(&[-3, -3])));
        assert!(normal_cone(&a, &q, top).unwrap().generators.unwrap().is_empty());

        let other = Face { signs: "-0".parse().unwrap(), ..ray.clone() };
        assert!(matches!(normal_cone(&a, &q, &other), Err(Error::FaceNotOfChamber { .. })));
    }

    #[test]
    fn cone_membership() {
        let c = Cone::from_generators(2, vec![vector(&[-1, 0]), vector(&[0, -1])]);
        assert!(in_cone(&c, &vector(&[-1, -1])));
        assert!(!in_cone(&c, &vector(&[1, 0])));
        let zero = Cone::from_generators(2, vec![]);
        assert!(in_cone(&zero, &vector(&[0, 0])));
        assert!(!in_cone(&zero, &vector(&[0, 1])));
        // dependent generators go through the LP
        let c3 = Cone::from_generators(2, vec![vector(&[1, 0]), vector(&[1, 1]), vector(&[0, 1])]);
        assert!(in_cone(&c3, &vector(&[2, 3])));
        assert!(!in_cone(&c3, &vector(&[-1, 3])));
    }

    #[test]
    fn projections_on_quadrant() {
        let a = axes();
        let (q, _) = quadrant(&a);
        let r = metric_project(&a, &q, &vector(&[-1, -2])).unwrap();
        assert_eq!((r.point.clone(), r.k), (vector(&[0, 0]), 0));
        let r = metric_project(&a, &q, &vector(&[-1, 2])).unwrap();
        assert_eq!((r.point.clone(), r.k), (vector(&[0, 2]), 1));
        assert_eq!(r.face.signs.to_string(), "0+");
        let r = metric_project(&a, &q, &vector(&[1, 2])).unwrap();
        assert_eq!((r.point.clone(), r.k), (vector(&[1, 2]), 2));
    }

    #[test]
    fn indicators_on_quadrant() {
        let a = axes();
        let (q, fs) = quadrant(&a);
        let origin = face(&fs, "00");
        assert!(indicator_f_plus_n(&a, &q, origin, &vector(&[-3, -1]), true).unwrap());
        assert!(!indicator_f_plus_n(&a, &q, origin, &vector(&[-3, -1]), false).unwrap());
        assert!(indicator_f_plus_n(&a, &q, origin, &vector(&[3, 1]), false).unwrap());
        let ray = face(&fs, "+0");
        assert!(indicator_f_plus_n(&a, &q, ray, &vector(&[2, -5]), true).unwrap());
        assert!(!indicator_f_plus_n(&a, &q, ray, &vector(&[-2, -5]), true).unwrap());
    }

    #[test]
    fn duality_round_trip() {
        let a = axes();
        let (q, fs) = quadrant(&a);
        let c = tangent_cone(&a, &q, face(&fs, "00")).unwrap();
        let cc = c.dual().with_halfspaces().dual().with_halfspaces();
        assert!(cc.forms_agree());
        let gens = c.clone().with_generators().generators.unwrap();
        assert_eq!(gens.len(), 2);
        // half-plane has a lineality line
        let h = Cone::from_halfspaces(2, vec![vector(&[0, -1])]).with_generators();
        assert_eq!(h.generators.as_ref().unwrap().len(), 3);
        assert!(h.with_halfspaces().forms_agree());
    }
}
