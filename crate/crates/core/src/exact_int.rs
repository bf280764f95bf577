//! Exact `i128` evaluation of the projection tests. Every quantity is a
//! rational with a common positive denominator cleared; any overflow
//! returns `None` and callers fall back to big rationals.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::arith::{self, OrthoProjector, Rational};
use crate::arrangement::{Arrangement, Hyperplane};

/// `x = num / den` with `den > 0`.
#[derive(Clone, Debug)]
pub(crate) struct IntPoint {
    pub num: Vec<i128>,
    pub den: i128,
}

/// Clears denominators of `values`; `None` if the result leaves `i128`.
fn scaled(values: &[&Rational]) -> Option<(Vec<i128>, i128)> {
    let mut den = num_bigint::BigInt::one();
    for v in values {
        den = den.lcm(v.denom());
    }
    let nums = values
        .iter()
        .map(|v| (v.numer() * (&den / v.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some((nums, den.to_i128()?))
}

pub(crate) fn int_point(x: &[Rational]) -> Option<IntPoint> {
    let refs: Vec<&Rational> = x.iter().collect();
    let (num, den) = scaled(&refs)?;
    Some(IntPoint { num, den })
}

fn dot(a: &[i128], b: &[i128]) -> Option<i128> {
    let mut s: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        s = s.checked_add(x.checked_mul(*y)?)?;
    }
    Some(s)
}

/// Hyperplane `<y, z> = c` as `(y, c_num, c_den)`.
#[derive(Clone, Debug)]
pub(crate) struct IntRow {
    normal: Vec<i128>,
    c_num: i128,
    c_den: i128,
}

pub(crate) fn int_rows(arr: &Arrangement) -> Option<Vec<IntRow>> {
    hyperplane_rows(arr.hyperplanes())
}

pub(crate) fn hyperplane_rows(hs: &[Hyperplane]) -> Option<Vec<IntRow>> {
    hs.iter()
        .map(|h| {
            let normal = h.normal().iter().map(|v| v.to_integer().to_i128()).collect::<Option<Vec<_>>>()?;
            Some(IntRow { normal, c_num: h.offset().numer().to_i128()?, c_den: h.offset().denom().to_i128()? })
        })
        .collect()
}

/// Sign of `<y, z> - c` at `z = p / den` (`den > 0`).
fn row_sign(row: &IntRow, p: &[i128], den: i128) -> Option<i8> {
    let lhs = row.c_den.checked_mul(dot(&row.normal, p)?)?;
    let rhs = row.c_num.checked_mul(den)?;
    Some(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    })
}

/// Whether `x` lies on any of the hyperplanes.
pub(crate) fn on_any(rows: &[IntRow], x: &IntPoint) -> Option<bool> {
    for row in rows {
        if row_sign(row, &x.num, x.den)? == 0 {
            return Some(true);
        }
    }
    Some(false)
}

/// The affine map `x ↦ (A x + b) / m` projecting onto an affine subspace.
#[derive(Clone, Debug)]
pub(crate) struct IntAffine {
    a: Vec<Vec<i128>>,
    b: Vec<i128>,
    m: i128,
}

impl IntAffine {
    pub fn new(proj: &OrthoProjector, origin: &[Rational], d: usize) -> Option<Self> {
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| proj.project(&arith::unit(d, j))).collect();
        let shift = arith::sub(origin, &proj.project(origin));
        let mut all: Vec<&Rational> = Vec::with_capacity(d * d + d);
        for i in 0..d {
            for col in &cols {
                all.push(&col[i]);
            }
        }
        all.extend(shift.iter());
        let (nums, m) = scaled(&all)?;
        let a = (0..d).map(|i| nums[i * d..(i + 1) * d].to_vec()).collect();
        let b = nums[d * d..].to_vec();
        Some(IntAffine { a, b, m })
    }

    /// Numerator of the projected point; its denominator is `m * x.den`.
    fn apply(&self, x: &IntPoint) -> Option<(Vec<i128>, i128)> {
        let p = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, b)| dot(row, &x.num)?.checked_add(b.checked_mul(x.den)?))
            .collect::<Option<Vec<_>>>()?;
        Some((p, self.m.checked_mul(x.den)?))
    }
}

/// A cone `{v : <t, v> <= 0}` with integer rows `t`.
#[derive(Clone, Debug)]
pub(crate) struct IntCone {
    rows: Vec<Vec<i128>>,
}

impl IntCone {
    /// Rows are rescaled by positive factors to clear denominators.
    pub fn new(rows: &[Vec<Rational>]) -> Option<Self> {
        let rows = rows
            .iter()
            .map(|r| scaled(&r.iter().collect::<Vec<_>>()).map(|(nums, _)| nums))
            .collect::<Option<Vec<_>>>()?;
        Some(IntCone { rows })
    }

    /// Whether `r` (up to a positive scale) lies in the cone.
    fn contains(&self, r: &[i128]) -> Option<bool> {
        for t in &self.rows {
            if dot(t, r)? > 0 {
                return Some(false);
            }
        }
        Some(true)
    }
}

/// Tests a face: projects `x` onto its affine hull, checks the sign pattern
/// (exact for `relint`, compatible for the closed face) and that `±(x - π)`
/// lies in the normal cone. Returns the projected point's numerator and
/// denominator on acceptance.
pub(crate) fn face_test(
    rows: &[IntRow],
    affine: &IntAffine,
    cone: &IntCone,
    signs: &[i8],
    x: &IntPoint,
    closed: bool,
    positive: bool,
) -> Option<Option<(Vec<i128>, i128)>> {
    let (p, den) = affine.apply(x)?;
    for (row, &s) in rows.iter().zip(signs) {
        let t = row_sign(row, &p, den)?;
        let ok = if closed { t == 0 || t == s } else { t == s };
        if !ok {
            return Some(None);
        }
    }
    // x - π = (m x.num - p) / (m x.den)
    let r = x
        .num
        .iter()
        .zip(&p)
        .map(|(xi, pi)| {
            let v = affine.m.checked_mul(*xi)?.checked_sub(*pi)?;
            if positive {
                Some(v)
            } else {
                v.checked_neg()
            }
        })
        .collect::<Option<Vec<_>>>()?;
    Some(if cone.contains(&r)? { Some((p, den)) } else { None })
}

pub(crate) fn to_rational_point(p: &[i128], den: i128) -> Vec<Rational> {
    p.iter().map(|&v| Rational::new(v.into(), den.into())).collect()
}
