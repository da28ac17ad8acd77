//! Exact linear algebra over the rationals.
//!
//! Everything here works on dense coordinate vectors of [`Scalar`]s. Subspaces
//! are kept in reduced row-echelon form, so two subspaces are equal exactly
//! when their `Subspace` values compare equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += c * x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

pub fn scaled(c: &Scalar, x: &[Scalar]) -> Vector {
    if c.is_zero() {
        return zero_vec(x.len());
    }
    x.iter()
        .map(|xi| if xi.is_zero() { Scalar::zero() } else { c * xi })
        .collect()
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            s += a * b;
        }
    }
    s
}

/// Generalized binomial coefficient `C(m, j) = m(m-1)...(m-j+1)/j!`, any integer `m`.
pub fn binomial(m: i64, j: i64) -> Scalar {
    if j < 0 {
        return Scalar::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(m - i);
        den *= BigInt::from(i + 1);
    }
    Scalar::new(num, den)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Formats a rational as `p/q`, dropping `/1`.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Scalar::new(n, d))
}

pub fn fmt_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_scalar).collect();
    format!("[{}]", parts.join(","))
}

/// Sparse rational matrix. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_dense().iter().map(|r| fmt_vector(r)).collect();
        write!(f, "Matrix{}x{}[{}]", self.rows, self.cols, rows.join(";"))
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from dense rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(cols, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        let mut d = vec![zero_vec(self.cols); self.rows];
        for (&(i, j), x) in &self.entries {
            d[i][j] = x.clone();
        }
        d
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        let mut out = zero_vec(self.rows);
        for (&(i, j), x) in &self.entries {
            if !v[j].is_zero() {
                out[i] += x * &v[j];
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut dense = vec![zero_vec(other.cols); self.rows];
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                dense[i][j] += a * b;
            }
        }
        Matrix::from_rows(other.cols, &dense)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (&(i, j), x) in &self.entries {
            t.set(j, i, x.clone());
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form of dense rows; returns the nonzero rows and pivots.
fn rref_dense(mut rows: Vec<Vector>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rref(m: &Matrix) -> Rref {
    let (rows, pivots) = rref_dense(m.to_dense(), m.cols);
    let rank = pivots.len();
    let mut reduced = Matrix::zeros(m.rows, m.cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            reduced.set(i, j, x.clone());
        }
    }
    Rref { reduced, pivots, rank }
}

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|r| fmt_vector(r)).collect();
        write!(f, "Subspace(n={}, [{}])", self.ambient_dim, rows.join(", "))
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: (0..n).map(|i| unit_vec(n, i)).collect(),
            pivots: (0..n).collect(),
        }
    }

    pub fn span(n: usize, vectors: &[Vector]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), n, "vector length does not match ambient dimension");
        }
        let (basis, pivots) = rref_dense(vectors.to_vec(), n);
        Subspace {
            ambient_dim: n,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the pivot columns; zero iff `v` lies in the subspace.
    /// The map is linear and its kernel is exactly this subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                axpy(&mut r, &f, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    /// Adds `v` to the span, keeping canonical form. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.basis.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dims(self.ambient_dim, other.ambient_dim)?;
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b);
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        intersect(self, other)
    }

    /// Standard basis vectors at the non-pivot columns: a complement of this subspace.
    pub fn complement_basis(&self) -> Vec<Vector> {
        (0..self.ambient_dim)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .map(|c| unit_vec(self.ambient_dim, c))
            .collect()
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Null space of `m`, in canonical form.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.cols;
    let (rows, pivots) = rref_dense(m.to_dense(), n);
    let mut vecs = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vec(n);
        v[free] = Scalar::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        vecs.push(v);
    }
    Subspace::span(n, &vecs)
}

/// Kernel of the matrix whose rows are `rows`, computed incrementally so that
/// long redundant constraint lists stay cheap.
pub fn kernel_of_rows<I: IntoIterator<Item = Vector>>(n: usize, rows: I) -> Subspace {
    let mut row_space = Subspace::zero(n);
    for r in rows {
        if row_space.dim() == n {
            break;
        }
        row_space.insert(&r);
    }
    let m = Matrix::from_rows(n, row_space.basis());
    kernel(&m)
}

pub fn membership(s: &Subspace, v: &[Scalar]) -> Result<Option<Vector>> {
    check_dims(s.ambient_dim, v.len())?;
    Ok(s.coordinates(v))
}

/// `a ∩ b`, via the kernel of the stacked system `Σ xᵢaᵢ − Σ yⱼbⱼ = 0`.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_dims(a.ambient_dim, b.ambient_dim)?;
    let n = a.ambient_dim;
    let (ka, kb) = (a.dim(), b.dim());
    if ka == 0 || kb == 0 {
        return Ok(Subspace::zero(n));
    }
    // Columns: coefficients on a's basis then b's basis; rows: ambient coordinates.
    let mut stacked = Matrix::zeros(n, ka + kb);
    for (j, v) in a.basis.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            stacked.set(i, j, x.clone());
        }
    }
    for (j, v) in b.basis.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            stacked.set(i, ka + j, -x.clone());
        }
    }
    let ker = kernel(&stacked);
    let vecs: Vec<Vector> = ker
        .basis()
        .iter()
        .map(|coef| {
            let mut v = zero_vec(n);
            for (c, basis_vec) in coef[..ka].iter().zip(&a.basis) {
                axpy(&mut v, c, basis_vec);
            }
            v
        })
        .collect();
    Ok(Subspace::span(n, &vecs))
}

/// Solves for coordinates with respect to a fixed, linearly independent list of
/// vectors (not necessarily echelon).
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    n: usize,
    k: usize,
    /// Echelon rows of the vectors, each paired with the combination producing it.
    rows: Vec<(Vector, Vector)>,
    pivots: Vec<usize>,
}

impl CoordinateSolver {
    pub fn new(n: usize, vectors: &[Vector]) -> Result<Self> {
        let k = vectors.len();
        let augmented: Vec<Vector> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut r = v.clone();
                r.extend(unit_vec(k, i));
                r
            })
            .collect();
        let (rows, pivots) = rref_dense(augmented, n + k);
        if pivots.iter().filter(|&&p| p < n).count() != k {
            return Err(Error::Integrity("coordinate basis is linearly dependent".into()));
        }
        let rows = rows.into_iter().map(|r| (r[..n].to_vec(), r[n..].to_vec())).collect();
        Ok(CoordinateSolver { n, k, rows, pivots })
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn solve(&self, v: &[Scalar]) -> Option<Vector> {
        debug_assert_eq!(v.len(), self.n);
        let mut rest = v.to_vec();
        let mut coords = zero_vec(self.k);
        for ((row, combo), &p) in self.rows.iter().zip(&self.pivots) {
            if !rest[p].is_zero() {
                let c = rest[p].clone();
                axpy(&mut coords, &c, combo);
                axpy(&mut rest, &-c, row);
            }
        }
        is_zero_vec(&rest).then_some(coords)
    }
}

/// Exact rank of a list of vectors.
pub fn rank_of(n: usize, vectors: &[Vector]) -> usize {
    Subspace::span(n, vectors).dim()
}

pub fn abs_max_height(v: &[Scalar]) -> BigInt {
    v.iter()
        .map(|x| x.numer().abs().max(x.denom().clone()))
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let r = rref(&Matrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!((r.rank, r.pivots.clone()), (1, vec![0]));
        assert_eq!(r.reduced.get(0, 1), q(2));

        let id = Matrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);

        let r = rref(&Matrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert_eq!(r.reduced, Matrix::identity(2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::zeros(2, 2)), Subspace::full(2));
        assert_eq!(kernel(&Matrix::identity(2)), Subspace::zero(2));
        let k = kernel(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, Subspace::span(2, &[v(&[1, -1])]));
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::span(2, &[v(&[1, 0])]);
        assert_eq!(membership(&s, &v(&[3, 0])).unwrap(), Some(v(&[3])));
        assert_eq!(membership(&s, &v(&[0, 1])).unwrap(), None);
        assert!(matches!(
            membership(&s, &v(&[1, 0, 0])),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));

        // Coordinates relative to the original (non-echelon) spanning list.
        let solver = CoordinateSolver::new(2, &[v(&[1, 1]), v(&[0, 2])]).unwrap();
        assert_eq!(solver.solve(&v(&[2, 4])), Some(v(&[2, 1])));
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(2, &[v(&[1, 2])]);
        assert_eq!(intersect(&a, &a).unwrap(), a);
        let b = Subspace::span(2, &[v(&[1, 0])]);
        assert_eq!(intersect(&a, &b).unwrap(), Subspace::zero(2));
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(intersect(&a, &b).unwrap(), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert!(intersect(&a, &Subspace::zero(2)).is_err());
    }

    #[test]
    fn insert_keeps_canonical_form() {
        let mut s = Subspace::zero(3);
        assert!(s.insert(&v(&[0, 2, 4])));
        assert!(s.insert(&v(&[1, 1, 1])));
        assert!(!s.insert(&v(&[1, 3, 5])));
        assert_eq!(s, Subspace::span(3, &[v(&[1, 1, 1]), v(&[0, 1, 2])]));
    }

    #[test]
    fn scalar_format_round_trip() {
        for (s, x) in [("3", q(3)), ("-1/2", frac(-1, 2)), ("0", q(0))] {
            assert_eq!(fmt_scalar(&x), s);
            assert_eq!(parse_scalar(s), Some(x));
        }
        assert_eq!(parse_scalar("2/4"), Some(frac(1, 2)));
        assert_eq!(parse_scalar("1/0"), None);
    }
}
