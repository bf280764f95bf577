#![allow(dead_code)]

use hypar::arith::{self, Rational, Vector};
use hypar::arrangement::{sign_vector, Arrangement, Hyperplane};
use hypar::cells::{in_closed_cell, CellComplex};
use hypar::cones::{cone_generators, in_pos_hull, normal_cone, tangent_cone, PreparedCell};
use hypar::gen::{generate, GeneratorKind, GeneratorSpec};
use hypar::poset::CharPoly;
use proptest::prelude::*;

pub fn named(kind: GeneratorKind, dim: usize) -> (String, GeneratorSpec) {
    (format!("{kind} d={dim}"), GeneratorSpec::new(kind, dim))
}

/// The test corpus: small reflection arrangements, two affine examples and
/// twenty seeded random ones.
pub fn corpus_specs() -> Vec<(String, GeneratorSpec)> {
    let mut specs = Vec::new();
    for d in 1..=4 {
        specs.push(named(GeneratorKind::Boolean, d));
    }
    for n in 2..=4 {
        specs.push(named(GeneratorKind::BraidA, n));
    }
    for d in 2..=3 {
        specs.push(named(GeneratorKind::TypeB, d));
        specs.push(named(GeneratorKind::TypeD, d));
    }
    specs.push(named(GeneratorKind::ParallelPair, 2));
    specs.push(named(GeneratorKind::Triangle, 2));
    for seed in 0..20u64 {
        let d = 2 + (seed % 2) as usize;
        let m = 3 + (seed % 4) as usize;
        specs.push((format!("random d={d} m={m} seed={seed}"), GeneratorSpec::random(d, m, seed)));
    }
    specs
}

pub fn corpus() -> Vec<(String, Arrangement)> {
    corpus_specs().into_iter().map(|(name, spec)| (name, generate(&spec).unwrap())).collect()
}

/// `Π (t - r) · t^extra`, coefficients from `t^0` up.
pub fn poly_from_roots(roots: &[i64], extra: usize) -> Vec<i64> {
    let mut c = vec![1i64];
    for &r in roots {
        let mut next = vec![0i64; c.len() + 1];
        for (i, &v) in c.iter().enumerate() {
            next[i] += v;
            next[i + 1] -= r * v;
        }
        c = next;
    }
    c.extend(std::iter::repeat(0).take(extra));
    c.reverse();
    c
}

/// Closed-form χ for the reflection families.
pub fn closed_form(kind: GeneratorKind, d: usize) -> Option<Vec<i64>> {
    let odd: Vec<i64> = (1..=d as i64).map(|i| 2 * i - 1).collect();
    Some(match kind {
        GeneratorKind::Boolean => poly_from_roots(&vec![1; d], 0),
        GeneratorKind::BraidA => poly_from_roots(&(1..d as i64).collect::<Vec<_>>(), 1),
        GeneratorKind::TypeB => poly_from_roots(&odd, 0),
        GeneratorKind::TypeD => {
            let mut roots = odd[..d - 1].to_vec();
            roots.push(d as i64 - 1);
            poly_from_roots(&roots, 0)
        }
        _ => return None,
    })
}

pub fn coeffs(p: &CharPoly) -> Vec<i64> {
    p.coeffs.clone()
}

/// `|coefficient of t^k|` for `k = 0..=d`.
pub fn abs_by_degree(c: &[i64]) -> Vec<i64> {
    c.iter().map(|v| v.abs()).collect()
}

/// A random arrangement in dimension 2 or 3 with up to four hyperplanes,
/// a point with odd denominators and a chamber selector.
pub fn case_strategy() -> impl Strategy<Value = (Arrangement, Vector, usize)> {
    (2usize..=3)
        .prop_flat_map(|d| {
            let plane = (prop::collection::vec(-2i64..=2, d), -2i64..=2);
            let point = prop::collection::vec((-20i64..=20, 0i64..5), d);
            (Just(d), prop::collection::vec(plane, 1..=4), point, any::<usize>())
        })
        .prop_filter_map("degenerate hyperplanes", |(d, planes, point, pick)| {
            let hs: Vec<Hyperplane> = planes
                .iter()
                .filter(|(n, _)| n.iter().any(|&v| v != 0))
                .map(|(n, c)| Hyperplane::from_ints(n, *c).unwrap())
                .collect();
            if hs.is_empty() {
                return None;
            }
            let arr = Arrangement::dedup(d, hs).ok()?;
            let x = point.iter().map(|&(p, q)| arith::ratio(p, 2 * q + 1)).collect();
            Some((arr, x, pick))
        })
}

pub fn pick_cell(arr: &Arrangement, pick: usize) -> (CellComplex, usize, PreparedCell) {
    let complex = CellComplex::build(arr).unwrap();
    let c = pick % complex.chambers.len();
    let cell = PreparedCell::from_chamber(arr, &complex.chambers[c]).unwrap();
    (complex, c, cell)
}

/// Projecting the projection gives it back, on the same face.
pub fn check_idempotent(arr: &Arrangement, x: &[Rational], pick: usize) -> Result<(), String> {
    let (_, _, cell) = pick_cell(arr, pick);
    let p = cell.project(x).map_err(|e| e.to_string())?;
    let q = cell.project(&p.point).map_err(|e| e.to_string())?;
    if q.point != p.point || q.face.signs != p.face.signs {
        return Err(format!("projection moved: {:?} -> {:?}", p.point, q.point));
    }
    Ok(())
}

/// The projection is no farther than 200 sampled points of the chamber.
pub fn check_minimal(arr: &Arrangement, x: &[Rational], pick: usize) -> Result<(), String> {
    let (complex, c, cell) = pick_cell(arr, pick);
    let signs = &complex.chambers[c].signs;
    let p = cell.project(x).map_err(|e| e.to_string())?;
    if !in_closed_cell(arr, signs, &p.point) {
        return Err("projection outside the chamber".into());
    }
    let best = arith::dist_sq(x, &p.point);
    let witnesses: Vec<&Vector> = complex.chamber_faces[c].iter().map(|&f| &complex.faces[f].relint_witness).collect();
    let mut seed = pick as u64 | 1;
    let mut next = |n: i64| {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed % n as u64) as i64
    };
    let mut tried = 0;
    while tried < 200 {
        // convex combination of two face witnesses, pushed along a random
        // direction and kept only if it stays in the chamber
        let a = witnesses[next(witnesses.len() as i64) as usize];
        let b = witnesses[next(witnesses.len() as i64) as usize];
        let t = arith::ratio(next(9), 8);
        let mut z = arith::add(&arith::scale(a, &(Rational::from_integer(1.into()) - &t)), &arith::scale(b, &t));
        let dir: Vector = (0..arr.dim()).map(|_| arith::ratio(next(21) - 10, 3)).collect();
        let step = arith::add(&z, &dir);
        if in_closed_cell(arr, signs, &step) {
            z = step;
        }
        if !in_closed_cell(arr, signs, &z) {
            continue;
        }
        tried += 1;
        if arith::dist_sq(x, &z) < best {
            return Err(format!("{z:?} is closer than the projection"));
        }
    }
    Ok(())
}

/// Exactly one face contains the projection in its relative interior, and
/// the reported face is that one.
pub fn check_unique_face(arr: &Arrangement, x: &[Rational], pick: usize) -> Result<(), String> {
    let (_, _, cell) = pick_cell(arr, pick);
    let p = cell.project(x).map_err(|e| e.to_string())?;
    let s = sign_vector(arr, &p.point).map_err(|e| e.to_string())?;
    let hits = cell.faces().filter(|f| f.signs == s).count();
    if hits != 1 || p.face.signs != s {
        return Err(format!("{hits} faces hold the projection in their relative interior"));
    }
    if p.k != p.face.dim {
        return Err("k differs from the face dimension".into());
    }
    Ok(())
}

/// `N°° = N` and `N° = T` for every face of the chamber.
pub fn check_dual_involution(arr: &Arrangement, pick: usize) -> Result<(), String> {
    let (complex, c, _) = pick_cell(arr, pick);
    let chamber = &complex.chambers[c];
    let d = arr.dim();
    for &f in &complex.chamber_faces[c] {
        let face = &complex.faces[f];
        let n = normal_cone(arr, chamber, face).unwrap().with_generators();
        let t = tangent_cone(arr, chamber, face).unwrap().with_generators();
        let n_gens = n.generators.clone().unwrap();
        let polar_gens = cone_generators(&n_gens, d);
        let double_gens = cone_generators(&polar_gens, d);
        let t_gens = t.generators.clone().unwrap();
        let same = |a: &[Vector], b: &[Vector]| {
            a.iter().all(|g| in_pos_hull(b, g)) && b.iter().all(|g| in_pos_hull(a, g))
        };
        if !same(&double_gens, &n_gens) {
            return Err(format!("N°° != N at face {}", face.signs));
        }
        if !same(&polar_gens, &t_gens) {
            return Err(format!("N° != T at face {}", face.signs));
        }
    }
    Ok(())
}

/// The chambers' projection dimensions at `x` form a histogram summing to
/// the chamber count.
pub fn check_histogram(arr: &Arrangement, x: &[Rational]) -> Result<(), String> {
    let complex = CellComplex::build(arr).unwrap();
    let mut hist = vec![0usize; arr.dim() + 1];
    for ch in &complex.chambers {
        let cell = PreparedCell::from_chamber(arr, ch).unwrap();
        hist[cell.dim_of(x).map_err(|e| e.to_string())?] += 1;
    }
    let profile = hypar::verify::phi(arr, x).map_err(|e| e.to_string())?;
    if profile.projection_counts != hist {
        return Err(format!("histogram {hist:?} vs {:?}", profile.projection_counts));
    }
    if hist.iter().sum::<usize>() != complex.chambers.len() {
        return Err(format!("histogram {hist:?} does not sum to {}", complex.chambers.len()));
    }
    for (k, (&phi, &h)) in profile.counts.iter().zip(&hist).enumerate() {
        if phi < h {
            return Err(format!("phi_{k} = {phi} below histogram {h}"));
        }
    }
    Ok(())
}
