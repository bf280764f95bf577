//! Exact rational scalars and the small dense linear algebra the rest of the
//! crate is built on. Vectors are plain `Vec<Rational>`; nothing here ever
//! rounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A point or direction in `Q^d`.
pub type Vector = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&v| int(v)).collect()
}

pub fn zeros(d: usize) -> Vector {
    vec![Rational::zero(); d]
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let int_part = |t: &str| -> Result<BigInt, Error> {
        let t = t.trim();
        if t.is_empty() || t.contains('.') || t.contains('e') || t.contains('E') {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p = int_part(p)?;
            let q = int_part(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(int_part(s)?)),
    }
}

/// Parses a comma separated list of rationals, e.g. `"3,-1/2"`. The empty
/// string is the point of `Q^0`.
pub fn parse_point(s: &str) -> Result<Vector, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical text form: `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_point(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// `Display` adapter for a point, `(a, b, c)`.
pub struct PointDisplay<'a>(pub &'a [Rational]);

impl fmt::Display for PointDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(q))?;
        }
        write!(f, ")")
    }
}

pub fn sign_of(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `a += s * b`
pub fn axpy(a: &mut [Rational], s: &Rational, b: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += s * y;
        }
    }
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}

pub fn dist_sq(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        let t = x - y;
        acc += &t * &t;
    }
    acc
}

/// Row echelon data of a linear system.
#[derive(Clone, Debug)]
struct Echelon {
    /// Reduced rows (augmented, last column is the right hand side).
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    consistent: bool,
}

/// Gauss-Jordan elimination of `[A | b]` with `n` unknowns.
fn reduce(mut rows: Vec<Vector>, n: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let consistent = rows[r..].iter().all(|row| row[n].is_zero());
    rows.truncate(r);
    Echelon { rows, pivots, consistent }
}

/// Solution set of an affine linear system `A x = b`: a particular solution
/// and a basis of the null space of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub point: Vector,
    pub directions: Vec<Vector>,
}

impl AffineSolution {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }
}

/// Solves `A x = b` over `Q^n`; `None` when inconsistent.
pub fn solve_affine_system(a: &[Vector], b: &[Rational], n: usize) -> Option<AffineSolution> {
    if a.is_empty() {
        return Some(AffineSolution {
            point: zeros(n),
            directions: (0..n).map(|i| unit(n, i)).collect(),
        });
    }
    let rows = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = reduce(rows, n);
    if !ech.consistent {
        return None;
    }
    let mut point = zeros(n);
    for (row, &col) in ech.rows.iter().zip(&ech.pivots) {
        point[col] = row[n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut v = zeros(n);
            v[f] = Rational::one();
            for (row, &col) in ech.rows.iter().zip(&ech.pivots) {
                v[col] = -row[f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { point, directions })
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

/// Rank of a list of vectors of common length `n`.
pub fn rank(vectors: &[Vector], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows = vectors
        .iter()
        .map(|v| {
            let mut r = v.clone();
            r.push(Rational::zero());
            r
        })
        .collect();
    reduce(rows, n).pivots.len()
}

/// Basis of `{x : <v, x> = 0 for all v in vectors}`.
pub fn null_space(vectors: &[Vector], n: usize) -> Vec<Vector> {
    let zero = zeros(vectors.len());
    solve_affine_system(vectors, &zero, n)
        .expect("homogeneous systems are consistent")
        .directions
}

/// Orthogonal (not normalised) basis of the span, dropping dependent vectors.
pub fn gram_schmidt(vectors: &[Vector]) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    let mut norms: Vec<Rational> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (b, nb) in basis.iter().zip(&norms) {
            let c = dot(&w, b) / nb;
            axpy(&mut w, &-c, b);
        }
        if !is_zero_vec(&w) {
            norms.push(norm_sq(&w));
            basis.push(w);
        }
    }
    basis
}

/// Orthogonal projector onto the span of an orthogonal basis.
#[derive(Clone, Debug)]
pub struct OrthoProjector {
    basis: Vec<Vector>,
    norms: Vec<Rational>,
    n: usize,
}

impl OrthoProjector {
    pub fn new(spanning: &[Vector], n: usize) -> Self {
        let basis = gram_schmidt(spanning);
        let norms = basis.iter().map(|b| norm_sq(b)).collect();
        OrthoProjector { basis, norms, n }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn project(&self, v: &[Rational]) -> Vector {
        let mut out = zeros(self.n);
        for (b, nb) in self.basis.iter().zip(&self.norms) {
            let c = dot(v, b) / nb;
            axpy(&mut out, &c, b);
        }
        out
    }

    /// Coordinates of the projection of `v` in the orthogonal basis.
    pub fn coordinates(&self, v: &[Rational]) -> Vector {
        self.basis
            .iter()
            .zip(&self.norms)
            .map(|(b, nb)| dot(v, b) / nb)
            .collect()
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.project(v) == v
    }
}

/// Dense rational matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }
}

/// Left inverse `(G^T G)^{-1} G^T` of a matrix with linearly independent
/// columns `g_1..g_r` (given as vectors). Returns `None` if dependent.
pub fn left_inverse(columns: &[Vector], n: usize) -> Option<Matrix> {
    let r = columns.len();
    if rank(columns, n) < r {
        return None;
    }
    // Solve (G^T G) X = G^T column by column via one augmented reduction.
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let mut row: Vector = (0..r).map(|j| dot(&columns[i], &columns[j])).collect();
        row.extend(columns[i].iter().cloned());
        rows.push(row);
    }
    // reduce() only handles one rhs column; do the elimination by hand.
    for col in 0..r {
        let p = (col..r).find(|&i| !rows[i][col].is_zero())?;
        rows.swap(col, p);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    let out: Vec<Vector> = rows.into_iter().map(|row| row[r..].to_vec()).collect();
    Some(Matrix::from_rows(&out, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&ratio(-4, 6)), "-2/3");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(parse_point("3,-1/2").unwrap(), vec![int(3), ratio(-1, 2)]);
        assert_eq!(parse_point("").unwrap(), Vec::<Rational>::new());
    }

    #[test]
    fn solve_and_null_space() {
        // x + y = 2, x - y = 0
        let a = vec![vector(&[1, 1]), vector(&[1, -1])];
        let s = solve_affine_system(&a, &[int(2), int(0)], 2).unwrap();
        assert_eq!(s.point, vector(&[1, 1]));
        assert_eq!(s.dim(), 0);

        let a = vec![vector(&[1, 0]), vector(&[1, 0])];
        assert!(solve_affine_system(&a, &[int(0), int(1)], 2).is_none());

        let ns = null_space(&[vector(&[1, 1, 0])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(dot(v, &vector(&[1, 1, 0])), int(0));
        }
    }

    #[test]
    fn projector_is_orthogonal() {
        let p = OrthoProjector::new(&[vector(&[1, 1, 0]), vector(&[2, 2, 0]), vector(&[0, 1, 1])], 3);
        assert_eq!(p.dim(), 2);
        let v = vector(&[3, -1, 4]);
        let pv = p.project(&v);
        let r = sub(&v, &pv);
        for b in p.basis() {
            assert_eq!(dot(&r, b), int(0));
        }
        assert_eq!(p.project(&pv), pv);
    }

    #[test]
    fn left_inverse_recovers_coefficients() {
        let g = vec![vector(&[1, 0, 1]), vector(&[0, 2, 1])];
        let li = left_inverse(&g, 3).unwrap();
        let v = add(&scale(&g[0], &int(3)), &scale(&g[1], &ratio(-1, 2)));
        assert_eq!(li.mul_vec(&v), vec![int(3), ratio(-1, 2)]);
        assert!(left_inverse(&[vector(&[1, 1]), vector(&[2, 2])], 2).is_none());
    }
}
