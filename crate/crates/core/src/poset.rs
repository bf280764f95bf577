//! The intersection poset `L(A)`, restrictions `A^L` and characteristic
//! polynomials.
//!
//! Two independent routes compute `χ_A`: the Whitney subset sum (reference)
//! and the Möbius recursion over the enumerated poset. They must agree on
//! every input.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{self, AffineSolution, OrthoProjector, Rational, Vector};
use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};

/// Refuse subset enumeration above this many hyperplanes.
pub const DEFAULT_SIZE_CAP: usize = 24;

/// A nonempty intersection of hyperplanes of an arrangement.
#[derive(Clone, Debug)]
pub struct Flat {
    point: Vector,
    directions: Vec<Vector>,
    /// Every hyperplane containing the flat, ascending.
    containing: Vec<usize>,
    projector: OrthoProjector,
}

impl Flat {
    fn from_solution(arr: &Arrangement, sol: AffineSolution) -> Self {
        let d = arr.dim();
        let projector = OrthoProjector::new(&sol.directions, d);
        let directions = projector.basis().to_vec();
        let containing = (0..arr.len())
            .filter(|&i| {
                let h = arr.hyperplane(i);
                h.contains(&sol.point)
                    && directions.iter().all(|u| arith::dot(u, h.normal()).is_zero())
            })
            .collect();
        Flat { point: sol.point, directions, containing, projector }
    }

    /// The whole ambient space of `arr`.
    pub fn ambient(arr: &Arrangement) -> Self {
        let sol = arr.solve_indices(&[]).expect("empty intersection is the ambient space");
        Self::from_solution(arr, sol)
    }

    /// The intersection of the given hyperplanes, `None` if empty.
    pub fn intersection(arr: &Arrangement, indices: &[usize]) -> Option<Self> {
        arr.solve_indices(indices).map(|sol| Self::from_solution(arr, sol))
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    /// Orthogonal (unnormalised) basis of the direction space.
    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    pub fn containing(&self) -> &[usize] {
        &self.containing
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        let v = arith::sub(x, &self.point);
        self.projector.contains(&v)
    }

    /// Direction vector lies in the direction space.
    pub fn contains_direction(&self, v: &[Rational]) -> bool {
        self.projector.contains(v)
    }

    /// Exact affine-hull containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Flat) -> bool {
        other.contains_point(&self.point)
            && self.directions.iter().all(|u| other.contains_direction(u))
    }

    /// Orthogonal projection of `x` onto the flat.
    pub fn project(&self, x: &[Rational]) -> Vector {
        let v = arith::sub(x, &self.point);
        arith::add(&self.point, &self.projector.project(&v))
    }

    /// Projection of a vector onto the direction space.
    pub fn project_direction(&self, v: &[Rational]) -> Vector {
        self.projector.project(v)
    }

    /// Coordinates of `x`'s projection in the orthogonal frame of the flat.
    pub fn coordinates(&self, x: &[Rational]) -> Vector {
        self.projector.coordinates(&arith::sub(x, &self.point))
    }
}

impl PartialEq for Flat {
    fn eq(&self, other: &Self) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }
}

/// All flats of an arrangement, ordered by decreasing dimension (so index 0
/// is the ambient space) and then by containing set.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    dim: usize,
    flats: Vec<Flat>,
}

impl IntersectionPoset {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Flats of dimension `j`, i.e. `L_j(A)`.
    pub fn of_dim(&self, j: usize) -> impl Iterator<Item = (usize, &Flat)> {
        self.flats.iter().enumerate().filter(move |(_, f)| f.dim() == j)
    }

    /// Number of flats in each dimension `0..=d`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut c = vec![0; self.dim + 1];
        for f in &self.flats {
            c[f.dim()] += 1;
        }
        c
    }

    /// Index of the flat with the given containing set.
    pub fn find_by_containing(&self, containing: &[usize]) -> Option<usize> {
        self.flats.iter().position(|f| f.containing == containing)
    }

    /// Index of the flat equal to `flat`, by mutual containment.
    pub fn find(&self, flat: &Flat) -> Option<usize> {
        self.flats.iter().position(|f| f == flat)
    }

    /// Möbius function `μ(R^d, F)` for every flat, by the recursion
    /// `μ(F) = -Σ_{G ⊋ F} μ(G)`.
    pub fn moebius(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.flats.len()];
        for i in 0..self.flats.len() {
            if self.flats[i].containing.is_empty() {
                mu[i] = 1;
                continue;
            }
            let ci = &self.flats[i].containing;
            let s: i64 = (0..i)
                .filter(|&g| {
                    let cg = &self.flats[g].containing;
                    cg.len() < ci.len() && cg.iter().all(|h| ci.binary_search(h).is_ok())
                })
                .map(|g| mu[g])
                .sum();
            mu[i] = -s;
        }
        mu
    }
}

/// Enumerates `L(A)` by repeatedly intersecting known flats with
/// hyperplanes; each flat is recorded once, keyed by its (complete)
/// containing set.
pub fn intersection_poset(arr: &Arrangement) -> IntersectionPoset {
    let mut seen: BTreeMap<Vec<usize>, Flat> = BTreeMap::new();
    let top = Flat::ambient(arr);
    let mut frontier = vec![top.clone()];
    seen.insert(top.containing.clone(), top);
    while let Some(flat) = frontier.pop() {
        let sol = AffineSolution { point: flat.point.clone(), directions: flat.directions.clone() };
        for i in 0..arr.len() {
            if flat.containing.binary_search(&i).is_ok() {
                continue;
            }
            let Some(next) = intersect(&sol, arr.hyperplane(i)) else {
                continue;
            };
            let f = Flat::from_solution(arr, next);
            if !seen.contains_key(&f.containing) {
                seen.insert(f.containing.clone(), f.clone());
                frontier.push(f);
            }
        }
    }
    let mut flats: Vec<Flat> = seen.into_values().collect();
    flats.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.containing.cmp(&b.containing)));
    IntersectionPoset { dim: arr.dim(), flats }
}

/// Intersects an affine subspace `p + span(D)` with a hyperplane.
fn intersect(sol: &AffineSolution, h: &Hyperplane) -> Option<AffineSolution> {
    let g: Vec<Rational> = sol.directions.iter().map(|u| arith::dot(u, h.normal())).collect();
    let r = -h.residual(&sol.point);
    let Some(k) = g.iter().position(|v| !v.is_zero()) else {
        return if r.is_zero() { Some(sol.clone()) } else { None };
    };
    let mut point = sol.point.clone();
    arith::axpy(&mut point, &(&r / &g[k]), &sol.directions[k]);
    let directions = sol
        .directions
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != k)
        .map(|(l, u)| {
            let mut w = u.clone();
            arith::axpy(&mut w, &-(&g[l] / &g[k]), &sol.directions[k]);
            w
        })
        .collect();
    Some(AffineSolution { point, directions })
}

/// Integer polynomial `Σ c_k t^k` of nominal degree `degree`, with the
/// absolute-coefficient view `a_k = (-1)^{degree-k} c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    pub degree: usize,
    /// Low to high, length `degree + 1`.
    pub coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn zero(degree: usize) -> Self {
        CharPoly { degree, coeffs: vec![0; degree + 1] }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut p = Self::zero(degree);
        p.coeffs[degree] = 1;
        p
    }

    /// Polynomial from integer roots: `Π (t - r)` times `t^extra`.
    pub fn from_roots(roots: &[i64], extra: usize) -> Self {
        let mut c = vec![1i64];
        for &r in roots {
            let mut next = vec![0i64; c.len() + 1];
            for (k, &v) in c.iter().enumerate() {
                next[k + 1] += v;
                next[k] -= r * v;
            }
            c = next;
        }
        let mut coeffs = vec![0i64; extra];
        coeffs.extend(c);
        CharPoly { degree: coeffs.len() - 1, coeffs }
    }

    /// `a_k = (-1)^{degree-k} c_k`.
    pub fn abs(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if (self.degree - k) % 2 == 0 { c } else { -c })
            .collect()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * t + c)
    }

    fn add_term(&mut self, k: usize, v: i64) {
        self.coeffs[k] += v;
    }

    fn add_assign(&mut self, other: &CharPoly) {
        for (k, &v) in other.coeffs.iter().enumerate() {
            self.coeffs[k] += v;
        }
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, m) => write!(f, "{m}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Whitney subset sum with the default size cap.
pub fn char_poly_whitney(arr: &Arrangement) -> Result<CharPoly> {
    char_poly_whitney_capped(arr, DEFAULT_SIZE_CAP)
}

/// `Σ_{B ⊆ A, ∩B ≠ ∅} (-1)^{#B} t^{dim ∩B}`. Subsets are walked depth first
/// and a branch is cut as soon as its intersection is empty, since every
/// superset is then empty as well.
pub fn char_poly_whitney_capped(arr: &Arrangement, cap: usize) -> Result<CharPoly> {
    if arr.len() > cap {
        return Err(Error::SizeLimit { m: arr.len(), cap });
    }
    let mut poly = CharPoly::zero(arr.dim());
    let top = arr.solve_indices(&[]).expect("ambient space");
    whitney_walk(arr, 0, &top, 0, &mut poly);
    Ok(poly)
}

fn whitney_walk(arr: &Arrangement, next: usize, sol: &AffineSolution, size: usize, poly: &mut CharPoly) {
    if next == arr.len() {
        poly.add_term(sol.dim(), if size % 2 == 0 { 1 } else { -1 });
        return;
    }
    whitney_walk(arr, next + 1, sol, size, poly);
    if let Some(inner) = intersect(sol, arr.hyperplane(next)) {
        whitney_walk(arr, next + 1, &inner, size + 1, poly);
    }
}

/// `Σ_F μ(R^d, F) t^{dim F}` over the intersection poset.
pub fn char_poly_moebius(arr: &Arrangement) -> CharPoly {
    char_poly_from_poset(&intersection_poset(arr))
}

pub fn char_poly_from_poset(poset: &IntersectionPoset) -> CharPoly {
    let mu = poset.moebius();
    let mut poly = CharPoly::zero(poset.dim);
    for (f, m) in poset.flats.iter().zip(mu) {
        poly.add_term(f.dim(), m);
    }
    poly
}

/// A restricted arrangement together with the frame used for coordinates.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub arrangement: Arrangement,
    /// Origin of the frame (a point of the flat).
    pub origin: Vector,
    /// Orthogonal basis of the flat; coordinate `u` means `origin + Σ u_k b_k`.
    pub basis: Vec<Vector>,
}

impl Restriction {
    /// Ambient point of frame coordinates `u`.
    pub fn lift(&self, u: &[Rational]) -> Vector {
        let mut x = self.origin.clone();
        for (c, b) in u.iter().zip(&self.basis) {
            arith::axpy(&mut x, c, b);
        }
        x
    }
}

/// `A^L = {H ∩ L : H ∩ L ∉ {∅, L}}`, written in the orthogonal frame of `L`
/// with coinciding traces merged.
pub fn restriction(arr: &Arrangement, flat: &Flat) -> Result<Arrangement> {
    Ok(restriction_with_frame(arr, flat)?.arrangement)
}

pub fn restriction_with_frame(arr: &Arrangement, flat: &Flat) -> Result<Restriction> {
    if flat.ambient_dim() != arr.dim() {
        return Err(Error::DimensionMismatch { expected: arr.dim(), found: flat.ambient_dim() });
    }
    // The flat must be the intersection of the hyperplanes containing it.
    let containing: Vec<usize> = (0..arr.len())
        .filter(|&i| {
            let h = arr.hyperplane(i);
            h.contains(flat.point())
                && flat.directions().iter().all(|u| arith::dot(u, h.normal()).is_zero())
        })
        .collect();
    match Flat::intersection(arr, &containing) {
        Some(hull) if hull.dim() == flat.dim() => {}
        _ => return Err(Error::FlatNotInPoset),
    }
    let basis = flat.directions().to_vec();
    let origin = flat.point().to_vec();
    let mut hs = Vec::new();
    for h in arr.hyperplanes() {
        let normal: Vector = basis.iter().map(|b| arith::dot(b, h.normal())).collect();
        if arith::is_zero_vec(&normal) {
            // H ⊇ L or H ∩ L = ∅: both excluded.
            continue;
        }
        let offset = -h.residual(&origin);
        hs.push(Hyperplane::new(normal, offset)?);
    }
    let arrangement = Arrangement::dedup(flat.dim(), hs)?;
    Ok(Restriction { arrangement, origin, basis })
}

/// `χ_{A,j}(t) = Σ_{L ∈ L_j(A)} χ_{A^L}(t)`, reported with nominal degree `j`
/// so that `abs()` yields `a_{kj}`.
pub fn char_poly_level(arr: &Arrangement, j: usize) -> Result<CharPoly> {
    let poset = intersection_poset(arr);
    char_poly_level_with(arr, &poset, j)
}

pub fn char_poly_level_with(arr: &Arrangement, poset: &IntersectionPoset, j: usize) -> Result<CharPoly> {
    if j > arr.dim() {
        return Err(Error::DimensionMismatch { expected: arr.dim(), found: j });
    }
    let mut total = CharPoly::zero(j);
    for (_, flat) in poset.of_dim(j) {
        let sub = restriction(arr, flat)?;
        total.add_assign(&char_poly_whitney(&sub)?);
    }
    Ok(total)
}

/// Absolute coefficients `a_k`, checked nonnegative.
pub fn absolute_coefficients(poly: &CharPoly) -> Vec<i64> {
    let a = poly.abs();
    debug_assert!(a.iter().all(|v| !v.is_negative()));
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::vector;

    fn arr(dim: usize, hs: &[(&[i64], i64)]) -> Arrangement {
        Arrangement::new(dim, hs.iter().map(|(n, c)| Hyperplane::from_ints(n, *c).unwrap()).collect())
            .unwrap()
    }

    fn axes() -> Arrangement {
        arr(2, &[(&[1, 0], 0), (&[0, 1], 0)])
    }

    fn braid3() -> Arrangement {
        arr(3, &[(&[1, -1, 0], 0), (&[1, 0, -1], 0), (&[0, 1, -1], 0)])
    }

    #[test]
    fn poset_shapes() {
        assert_eq!(intersection_poset(&axes()).counts_by_dim(), vec![1, 2, 1]);
        let parallel = arr(2, &[(&[1, 0], 0), (&[1, 0], 1)]);
        assert_eq!(intersection_poset(&parallel).counts_by_dim(), vec![0, 2, 1]);
        let p = intersection_poset(&braid3());
        assert_eq!(p.counts_by_dim(), vec![0, 1, 3, 1]);
        let line = p.of_dim(1).next().unwrap().1;
        assert_eq!(line.containing(), &[0, 1, 2]);
        assert!(line.contains_point(&vector(&[5, 5, 5])));
    }

    #[test]
    fn whitney_examples() {
        assert_eq!(char_poly_whitney(&axes()).unwrap().abs(), vec![1, 2, 1]);
        assert_eq!(char_poly_whitney(&Arrangement::empty(3)).unwrap(), CharPoly::monomial(3));
        let parallel = arr(2, &[(&[1, 0], 0), (&[1, 0], 1)]);
        let p = char_poly_whitney(&parallel).unwrap();
        assert_eq!(p.coeffs, vec![0, -2, 1]);
        assert_eq!(p.abs(), vec![0, 2, 1]);
        assert_eq!(char_poly_whitney(&braid3()).unwrap(), CharPoly::from_roots(&[0, 1, 2], 0));
    }

    #[test]
    fn size_cap() {
        let hs: Vec<(&[i64], i64)> = (0..5).map(|c| (&[1i64][..], c)).collect();
        let a = arr(1, &hs);
        assert!(matches!(char_poly_whitney_capped(&a, 4), Err(Error::SizeLimit { m: 5, cap: 4 })));
        assert_eq!(char_poly_whitney_capped(&a, 5).unwrap().coeffs, vec![-5, 1]);
    }

    #[test]
    fn moebius_matches_whitney_on_examples() {
        for a in [axes(), braid3(), Arrangement::empty(3), arr(2, &[(&[1, 0], 0), (&[1, 0], 1)])] {
            assert_eq!(char_poly_moebius(&a), char_poly_whitney(&a).unwrap());
        }
    }

    #[test]
    fn restrictions() {
        let a = axes();
        let p = intersection_poset(&a);
        let x1_axis = Flat::intersection(&a, &[1]).unwrap();
        let r = restriction(&a, &x1_axis).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.len(), 1);
        assert_eq!(r.hyperplane(0).offset(), &arith::int(0));
        assert_eq!(restriction(&a, &p.flats()[0]).unwrap().len(), 2);

        let b = braid3();
        let l = Flat::intersection(&b, &[0]).unwrap();
        let rb = restriction(&b, &l).unwrap();
        assert_eq!(rb.dim(), 2);
        assert_eq!(rb.len(), 1, "x1=x3 and x2=x3 coincide on x1=x2");

        let not_flat = Flat::intersection(&arr(2, &[(&[1, 1], 0)]), &[0]).unwrap();
        assert!(matches!(restriction(&a, &not_flat), Err(Error::FlatNotInPoset)));
    }

    #[test]
    fn level_polynomials() {
        let a = axes();
        assert_eq!(char_poly_level(&a, 2).unwrap(), char_poly_whitney(&a).unwrap());
        let l1 = char_poly_level(&a, 1).unwrap();
        assert_eq!(l1.coeffs, vec![-2, 2]);
        assert_eq!(l1.abs(), vec![2, 2]);
        let l0 = char_poly_level(&a, 0).unwrap();
        assert_eq!(l0.abs(), vec![1]);
    }

    #[test]
    fn display() {
        assert_eq!(CharPoly::from_roots(&[1, 1], 0).to_string(), "t^2 - 2t + 1");
        assert_eq!(CharPoly::from_roots(&[0, 1, 2], 0).to_string(), "t^3 - 3t^2 + 2t");
        assert_eq!(CharPoly::zero(2).to_string(), "0");
    }
}
