//! Chambers, faces and the face sets `R_j(A)`.
//!
//! Sign conventions: a chamber is identified by the signs `s_i` of the
//! residuals `<x, y_i> - c_i` at its interior points, so it is the set
//! `{x : s_i (<x, y_i> - c_i) >= 0}` and its outward normal at hyperplane `i`
//! is `-s_i y_i`. A face zeroes the entries of its equality set.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{self, Rational, Vector};
use crate::arrangement::{sign_vector, Arrangement, SignVector};
use crate::error::{Error, Result};
use crate::lp::{self, Constraint};
use crate::poset::{intersection_poset, Flat, IntersectionPoset, DEFAULT_SIZE_CAP};

/// A closed chamber, given by its zero-free sign vector and an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub signs: SignVector,
    pub witness: Vector,
}

impl Chamber {
    /// The chamber as its own top-dimensional face.
    pub fn as_face(&self, dim: usize) -> Face {
        Face {
            chamber_signs: self.signs.clone(),
            zero_set: Vec::new(),
            signs: self.signs.clone(),
            dim,
            relint_witness: self.witness.clone(),
        }
    }
}

/// A face of the arrangement's cell decomposition. `signs` determines the
/// face; `chamber_signs` records one chamber it was found in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub chamber_signs: SignVector,
    pub zero_set: Vec<usize>,
    pub signs: SignVector,
    pub dim: usize,
    pub relint_witness: Vector,
}

impl Face {
    /// `self` is a face of the closed cell `other`.
    pub fn is_face_of(&self, other: &Face) -> bool {
        self.signs.refines(&other.signs)
    }
}

/// Strict constraint `s (<x, y> - c) > 0`.
fn side(arr: &Arrangement, i: usize, s: i8) -> Constraint {
    let h = arr.hyperplane(i);
    let sr = if s > 0 { -Rational::one() } else { Rational::one() };
    Constraint::lt(arith::scale(h.normal(), &sr), h.offset() * &sr)
}

fn on(arr: &Arrangement, i: usize) -> Constraint {
    let h = arr.hyperplane(i);
    Constraint::eq(h.normal().to_vec(), h.offset().clone())
}

/// Constraints whose solution set is the relative interior of the cell with
/// sign vector `signs`.
pub fn relint_constraints(arr: &Arrangement, signs: &SignVector) -> Vec<Constraint> {
    (0..arr.len())
        .map(|i| match signs.get(i) {
            0 => on(arr, i),
            s => side(arr, i, s),
        })
        .collect()
}

/// Constraints describing the closed cell with sign vector `signs`.
pub fn closed_constraints(arr: &Arrangement, signs: &SignVector) -> Vec<Constraint> {
    relint_constraints(arr, signs)
        .into_iter()
        .map(|mut c| {
            if c.rel == lp::Relation::Lt {
                c.rel = lp::Relation::Le;
            }
            c
        })
        .collect()
}

/// All chambers, sorted by sign vector. A depth-first walk over sign
/// prefixes: a prefix is extended only while its strict system stays
/// feasible. The sign a known witness already realises needs no LP.
pub fn enumerate_chambers(arr: &Arrangement) -> Result<Vec<Chamber>> {
    if arr.len() > DEFAULT_SIZE_CAP {
        return Err(Error::SizeLimit { m: arr.len(), cap: DEFAULT_SIZE_CAP });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(arr.len());
    let mut constraints = Vec::with_capacity(arr.len());
    chamber_walk(arr, &mut prefix, &mut constraints, arith::zeros(arr.dim()), &mut out);
    out.sort_by(|a: &Chamber, b| a.signs.cmp(&b.signs));
    Ok(out)
}

fn chamber_walk(
    arr: &Arrangement,
    prefix: &mut Vec<i8>,
    constraints: &mut Vec<Constraint>,
    witness: Vector,
    out: &mut Vec<Chamber>,
) {
    let i = prefix.len();
    if i == arr.len() {
        out.push(Chamber { signs: SignVector(prefix.clone()), witness });
        return;
    }
    let own = arith::sign_of(&arr.hyperplane(i).residual(&witness));
    for s in [-1i8, 1] {
        constraints.push(side(arr, i, s));
        let w = if s == own {
            Some(witness.clone())
        } else {
            lp::feasible(arr.dim(), constraints)
        };
        if let Some(w) = w {
            prefix.push(s);
            chamber_walk(arr, prefix, constraints, w, out);
            prefix.pop();
        }
        constraints.pop();
    }
}

/// Faces of a chamber, sorted by dimension then sign vector.
pub fn faces_of_chamber(arr: &Arrangement, chamber: &Chamber) -> Result<Vec<Face>> {
    let poset = intersection_poset(arr);
    faces_of_chamber_with(arr, &poset, chamber)
}

/// Every face zero set is the containing set of some flat, so only those
/// candidates are tested; a flat gives a face iff equality on its
/// containing set together with the chamber's strict signs elsewhere is
/// feasible. The face then has the flat's dimension.
pub fn faces_of_chamber_with(
    arr: &Arrangement,
    poset: &IntersectionPoset,
    chamber: &Chamber,
) -> Result<Vec<Face>> {
    faces_cached(arr, poset, chamber, &mut HashMap::new())
}

/// Face search sharing feasibility results between chambers; neighbouring
/// chambers propose the same candidate sign vectors.
fn faces_cached(
    arr: &Arrangement,
    poset: &IntersectionPoset,
    chamber: &Chamber,
    cache: &mut HashMap<SignVector, Option<Vector>>,
) -> Result<Vec<Face>> {
    if chamber.signs.len() != arr.len() || chamber.signs.has_zero() {
        return Err(Error::NotAChamber(chamber.signs.to_string()));
    }
    let mut faces = Vec::new();
    for flat in poset.flats() {
        let mut signs = chamber.signs.clone();
        for &i in flat.containing() {
            signs.0[i] = 0;
        }
        let witness = cache
            .entry(signs.clone())
            .or_insert_with(|| face_witness(arr, flat, &signs))
            .clone();
        if let Some(w) = witness {
            faces.push(Face {
                chamber_signs: chamber.signs.clone(),
                zero_set: flat.containing().to_vec(),
                signs,
                dim: flat.dim(),
                relint_witness: w,
            });
        }
    }
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.signs.cmp(&b.signs)));
    Ok(faces)
}

/// A point of the face on `flat` with the given signs. Works in the flat's
/// coordinates `x = p + D u`, so only the strict rows remain.
fn face_witness(arr: &Arrangement, flat: &Flat, signs: &SignVector) -> Option<Vector> {
    let p = flat.point();
    if sign_vector(arr, p).is_ok_and(|s| &s == signs) {
        return Some(p.to_vec());
    }
    let dirs = flat.directions();
    if dirs.is_empty() {
        return None;
    }
    let cons: Vec<Constraint> = (0..arr.len())
        .filter(|&i| signs.get(i) != 0)
        .map(|i| {
            let h = arr.hyperplane(i);
            // s (<y, p + D u> - c) > 0  <=>  -s <D^T y, u> < s (<y, p> - c)
            let s = arith::int(signs.get(i) as i64);
            let coeffs: Vector = dirs.iter().map(|v| -&s * arith::dot(h.normal(), v)).collect();
            Constraint::lt(coeffs, &s * h.residual(p))
        })
        .collect();
    let u = lp::feasible(dirs.len(), &cons)?;
    let mut x = p.to_vec();
    for (ui, v) in u.iter().zip(dirs) {
        arith::axpy(&mut x, ui, v);
    }
    Some(x)
}

/// `R_j(A)`: the `j`-dimensional faces of all chambers, deduplicated.
pub fn enumerate_rj(arr: &Arrangement, j: usize) -> Result<Vec<Face>> {
    let complex = CellComplex::build(arr)?;
    Ok(complex.rj(j).into_iter().map(|i| complex.faces[i].clone()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundedness {
    Bounded,
    UnboundedLineFree,
    HasLine,
}

/// Recession cone `{u : s_i <u, y_i> >= 0}` against the lineality space
/// `{u : <u, y_i> = 0}`.
pub fn classify_chamber(arr: &Arrangement, chamber: &Chamber) -> Boundedness {
    if arr.rank() < arr.dim() {
        return Boundedness::HasLine;
    }
    if recession_exceeds_lineality(arr, &chamber.signs) {
        Boundedness::UnboundedLineFree
    } else {
        Boundedness::Bounded
    }
}

/// Bounded modulo the lineality space (bounded in the essentialisation).
pub fn is_relatively_bounded(arr: &Arrangement, chamber: &Chamber) -> bool {
    !recession_exceeds_lineality(arr, &chamber.signs)
}

/// Whether some recession direction has `Σ s_i <u, y_i> >= 1`. Such a `u`
/// exists iff the recession cone is strictly larger than the lineality
/// space.
fn recession_exceeds_lineality(arr: &Arrangement, signs: &SignVector) -> bool {
    let d = arr.dim();
    let mut cons = Vec::with_capacity(arr.len() + 1);
    let mut total = arith::zeros(d);
    for i in 0..arr.len() {
        let y = arr.hyperplane(i).normal();
        let sy = if signs.get(i) > 0 { y.to_vec() } else { arith::neg(y) };
        cons.push(Constraint::le(arith::neg(&sy), Rational::zero()));
        total = arith::add(&total, &sy);
    }
    cons.push(Constraint::le(arith::neg(&total), -Rational::one()));
    lp::feasible(d, &cons).is_some()
}

/// The full cell decomposition of an arrangement, built once and shared by
/// the projection and verification code.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub arrangement: Arrangement,
    pub poset: IntersectionPoset,
    pub chambers: Vec<Chamber>,
    /// Every face of every chamber, deduplicated, sorted by dim then signs.
    pub faces: Vec<Face>,
    /// For each chamber, indices into `faces` of its faces.
    pub chamber_faces: Vec<Vec<usize>>,
}

impl CellComplex {
    pub fn build(arr: &Arrangement) -> Result<Self> {
        let poset = intersection_poset(arr);
        let chambers = enumerate_chambers(arr)?;
        let mut all: Vec<Face> = Vec::new();
        let mut per: Vec<Vec<SignVector>> = Vec::with_capacity(chambers.len());
        let mut cache = HashMap::new();
        for c in &chambers {
            let fs = faces_cached(arr, &poset, c, &mut cache)?;
            per.push(fs.iter().map(|f| f.signs.clone()).collect());
            all.extend(fs);
        }
        all.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.signs.cmp(&b.signs)));
        all.dedup_by(|a, b| a.signs == b.signs);
        let index: HashMap<&SignVector, usize> =
            all.iter().enumerate().map(|(i, f)| (&f.signs, i)).collect();
        let chamber_faces = per
            .iter()
            .map(|ss| ss.iter().map(|s| index[s]).collect())
            .collect();
        Ok(CellComplex { arrangement: arr.clone(), poset, chambers, faces: all, chamber_faces })
    }

    pub fn dim(&self) -> usize {
        self.arrangement.dim()
    }

    /// Indices of the `j`-dimensional faces.
    pub fn rj(&self, j: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == j).collect()
    }

    /// Indices of the faces of face `g` (including `g` itself).
    pub fn faces_of_face(&self, g: usize) -> Vec<usize> {
        let gs = &self.faces[g].signs;
        (0..self.faces.len()).filter(|&i| self.faces[i].signs.refines(gs)).collect()
    }

    pub fn chamber_index(&self, signs: &SignVector) -> Option<usize> {
        self.chambers.binary_search_by(|c| c.signs.cmp(signs)).ok()
    }

    pub fn face_index(&self, signs: &SignVector) -> Option<usize> {
        self.faces.iter().position(|f| &f.signs == signs)
    }

    /// Index of the chamber containing `x` in its interior, if any.
    pub fn locate(&self, x: &[Rational]) -> Result<Option<usize>> {
        let s = sign_vector(&self.arrangement, x)?;
        Ok(self.chamber_index(&s))
    }

    pub fn bounded_chambers(&self) -> usize {
        self.chambers
            .iter()
            .filter(|c| classify_chamber(&self.arrangement, c) == Boundedness::Bounded)
            .count()
    }

    /// Face count per dimension of chamber `c`.
    pub fn f_vector(&self, c: usize) -> Vec<usize> {
        let mut v = vec![0; self.dim() + 1];
        for &f in &self.chamber_faces[c] {
            v[self.faces[f].dim] += 1;
        }
        v
    }
}

/// Whether `x` lies in the closed cell with the given signs.
pub fn in_closed_cell(arr: &Arrangement, signs: &SignVector, x: &[Rational]) -> bool {
    arr.hyperplanes().iter().enumerate().all(|(i, h)| {
        let r = arith::sign_of(&h.residual(x));
        match signs.get(i) {
            0 => r == 0,
            s => r == 0 || r == s,
        }
    })
}
