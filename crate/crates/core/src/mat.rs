//! Dense exact rational matrices.
//!
//! Everything downstream (hom spaces, tensor products over an algebra,
//! coherence cells) reduces to the operations here: reduced row echelon
//! form, kernels, solving, cokernels and Kronecker products. Results are
//! deterministic and bit-identical across runs: pivots are always the
//! first nonzero entry in a column, quotient bases always complement the
//! echelon pivots, and kernel bases are re-echelonised.
//!
//! Corpus dimensions are at most in the low hundreds, so dense storage
//! with entry-level zero skipping is the right trade-off; there is no
//! modular or fraction-free acceleration on purpose.

use crate::error::{Error, Result};
use crate::scalar::{rat, scalar_from_str, scalar_to_string, Scalar};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Index;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// A linear subspace of `Q^ambient_dim`, stored as a reduced row echelon
/// basis (rows independent, pivot columns strictly increasing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Mat,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// True if `v` lies in the span of the basis.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut m = self.basis.clone();
        m.push_row(v.to_vec());
        m.rank() == self.dim()
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Mat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Convenience for tests and small fixed matrices.
    pub fn from_int_rows(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// A single row vector as a 1×n matrix.
    pub fn row_matrix(v: Vec<Scalar>) -> Mat {
        let cols = v.len();
        Mat { rows: 1, cols, entries: v }
    }

    /// A single column vector as an n×1 matrix.
    pub fn col_matrix(v: Vec<Scalar>) -> Mat {
        let rows = v.len();
        Mat { rows, cols: 1, entries: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Scalar::zero(); self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() && !v[k].is_zero() {
                    out[i] = &out[i] + &(a * &v[k]);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(Scalar::zero(), |acc, i| acc + self.at(i, i))
    }

    /// Kronecker product in lexicographic order: the `(i, k)`-th basis
    /// vector of the product maps to index `i * other.rows + k`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        for i in 0..other.rows {
            m.push_row(other.row_vec(i));
        }
        m
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// The row space is preserved; pivot entries are 1 with zeros above
    /// and below.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).recip();
            if !inv.is_one() {
                for j in col..self.cols {
                    if !self.at(row, j).is_zero() {
                        let v = self.at(row, j) * &inv;
                        self.set(row, j, v);
                    }
                }
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        if !self.at(row, j).is_zero() {
                            let v = self.at(r, j) - &factor * self.at(row, j);
                            self.set(r, j, v);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the right null space `{v : self v = 0}`, re-echelonised so
    /// downstream identifications are deterministic.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, Scalar::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                let coeff = r.at(prow, fc);
                if !coeff.is_zero() {
                    basis.set(k, pc, -coeff);
                }
            }
        }
        let (echelon, _) = basis.rref();
        Subspace { ambient_dim: self.cols, basis: echelon }
    }

    /// One particular solution of `self · x = rhs` (matrix right-hand
    /// sides allowed), with free coordinates set to zero; this is the
    /// echelon-minimal representative.
    pub fn solve(&self, rhs: &Mat) -> Result<Mat> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // A pivot in the rhs block means the system is inconsistent.
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.at(prow, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// Cokernel of `self` as a map into `Q^rows`: a projection onto the
    /// quotient by the column space and a section of it, with
    /// `proj ∘ self = 0` and `proj ∘ section = id` exactly. The quotient
    /// basis is the complement of the echelon pivots of the column space.
    pub fn cokernel(&self) -> (Mat, Mat) {
        let (rel, pivots) = self.transpose().rref();
        let dim = self.rows;
        let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
        let qdim = free.len();
        let mut proj = Mat::zeros(qdim, dim);
        for (q, &fc) in free.iter().enumerate() {
            proj.set(q, fc, Scalar::one());
        }
        // e_{pivot j} ≡ -Σ_{free c} rel[j][c] e_c modulo the column space.
        for (j, &pc) in pivots.iter().enumerate() {
            for (q, &fc) in free.iter().enumerate() {
                let coeff = rel.at(j, fc);
                if !coeff.is_zero() {
                    let v = proj.at(q, pc) - coeff;
                    proj.set(q, pc, v);
                }
            }
        }
        let mut section = Mat::zeros(dim, qdim);
        for (q, &fc) in free.iter().enumerate() {
            section.set(fc, q, Scalar::one());
        }
        (proj, section)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::Singular);
        }
        Ok(Mat::from_fn(n, n, |i, j| r.at(i, n + j).clone()))
    }

    /// Row-major flattening of the matrix.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    /// Rebuilds a `rows × cols` matrix from its row-major flattening.
    pub fn unflatten(rows: usize, cols: usize, v: &[Scalar]) -> Mat {
        assert_eq!(v.len(), rows * cols);
        Mat { rows, cols, entries: v.to_vec() }
    }
}

/// Incrementally maintained reduced row echelon basis of a subspace.
///
/// Inserting vectors one by one yields exactly the unique RREF of their
/// span, so identifications built on top of it never depend on insertion
/// order beyond the span itself.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonSpan {
    pub fn new(cols: usize) -> EchelonSpan {
        EchelonSpan { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current rows (forward elimination only).
    pub fn reduce(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&factor * r);
                    }
                }
            }
        }
    }

    /// Inserts `v`; returns `true` when the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        // Back-eliminate the new pivot from the existing rows.
        for row in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = &*x - &(&factor * r);
                    }
                }
            }
        }
        let at = self.pivots.iter().position(|&p| p > pivot).unwrap_or(self.pivots.len());
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` is outside
    /// the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut check = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if !c.is_zero() {
                for (x, r) in check.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(c * r);
                    }
                }
            }
        }
        if check.iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn basis_matrix(&self) -> Mat {
        Mat::from_rows(self.rows.clone())
    }

    /// Projection onto, and section of, the quotient of the ambient space
    /// by this span; the quotient basis is the complement of the pivots.
    /// `proj ∘ section = id` and `proj` kills the span, exactly.
    pub fn quotient_maps(&self) -> (Mat, Mat) {
        let dim = self.cols;
        let free: Vec<usize> = (0..dim).filter(|c| !self.pivots.contains(c)).collect();
        let qdim = free.len();
        let mut proj = Mat::zeros(qdim, dim);
        for (q, &fc) in free.iter().enumerate() {
            proj.set(q, fc, Scalar::one());
        }
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            for (q, &fc) in free.iter().enumerate() {
                if !row[fc].is_zero() {
                    let v = proj.at(q, pc) - &row[fc];
                    proj.set(q, pc, v);
                }
            }
        }
        let mut section = Mat::zeros(dim, qdim);
        for (q, &fc) in free.iter().enumerate() {
            section.set(fc, q, Scalar::one());
        }
        (proj, section)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.at(i, j)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| scalar_to_string(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = ser.serialize_struct("Mat", 3)?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("cols", &self.cols)?;
        let strings: Vec<String> = self.entries.iter().map(scalar_to_string).collect();
        s.serialize_field("entries", &strings)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<String>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom("entry count does not match dimensions"));
        }
        let entries = raw
            .entries
            .iter()
            .map(|s| scalar_from_str(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Mat { rows: raw.rows, cols: raw.cols, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    #[test]
    fn rref_identity() {
        let (r, pivots) = Mat::identity(3).rref();
        assert!(r.is_identity());
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_int_rows(&[&[1, 2], &[2, 4]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_zero() {
        let (r, pivots) = Mat::zeros(2, 3).rref();
        assert!(r.is_zero());
        assert!(pivots.is_empty());
    }

    #[test]
    fn kernel_identity_trivial() {
        assert_eq!(Mat::identity(4).kernel_basis().dim(), 0);
    }

    #[test]
    fn kernel_rank_one() {
        let m = Mat::from_int_rows(&[&[1, 2], &[2, 4]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains(&[rat(-2), rat(1)]));
    }

    #[test]
    fn kernel_zero_map() {
        assert_eq!(Mat::zeros(2, 3).kernel_basis().dim(), 3);
    }

    #[test]
    fn solve_identity() {
        let rhs = Mat::from_int_rows(&[&[3], &[5]]);
        assert_eq!(Mat::identity(2).solve(&rhs).unwrap(), rhs);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Mat::from_int_rows(&[&[1, 2], &[2, 4]]);
        let x = m.solve(&Mat::from_int_rows(&[&[1], &[2]])).unwrap();
        assert_eq!(x, Mat::from_int_rows(&[&[1], &[0]]));
        assert!(matches!(
            m.solve(&Mat::from_int_rows(&[&[1], &[0]])),
            Err(Error::NoSolution)
        ));
    }

    #[test]
    fn cokernel_zero_map() {
        let (proj, section) = Mat::zeros(3, 2).cokernel();
        assert!(proj.is_identity());
        assert!(proj.mul(&section).is_identity());
    }

    #[test]
    fn cokernel_surjective() {
        let (proj, _) = Mat::identity(3).cokernel();
        assert_eq!(proj.rows(), 0);
    }

    #[test]
    fn cokernel_diagonal_line() {
        let m = Mat::from_int_rows(&[&[1], &[1]]);
        let (proj, section) = m.cokernel();
        assert_eq!(proj.rows(), 1);
        assert!(proj.mul(&m).is_zero());
        assert!(proj.mul(&section).is_identity());
    }

    #[test]
    fn kron_units() {
        let a = Mat::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.kron(&Mat::identity(1)), a);
        assert_eq!(Mat::identity(2).kron(&Mat::identity(3)), Mat::identity(6));
        assert_eq!(
            Mat::from_int_rows(&[&[2]]).kron(&Mat::from_int_rows(&[&[3]])),
            Mat::from_int_rows(&[&[6]])
        );
    }

    #[test]
    fn inverse_small() {
        let m = Mat::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Mat::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn solve_rational_entries() {
        let m = Mat::from_rows(vec![vec![ratio(1, 2), rat(1)], vec![rat(0), ratio(-2, 3)]]);
        let rhs = Mat::from_int_rows(&[&[1], &[2]]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.mul(&x), rhs);
    }

    #[test]
    fn echelon_span_matches_rref() {
        let m = Mat::from_int_rows(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5], &[2, 0, 7]]);
        let mut span = EchelonSpan::new(3);
        for i in 0..m.rows() {
            span.insert(m.row_vec(i));
        }
        let (r, pivots) = m.rref();
        assert_eq!(span.pivots(), &pivots[..]);
        for (i, _) in pivots.iter().enumerate() {
            assert_eq!(span.basis_matrix().row_vec(i), r.row_vec(i));
        }
        let coords = span.coords(&[rat(2), rat(4), rat(6)]).unwrap();
        let rebuilt = span.basis_matrix().transpose().mul_vec(&coords);
        assert_eq!(rebuilt, vec![rat(2), rat(4), rat(6)]);
    }

    #[test]
    fn quotient_maps_complement_pivots() {
        let mut span = EchelonSpan::new(3);
        span.insert(vec![rat(1), rat(1), rat(0)]);
        let (proj, section) = span.quotient_maps();
        assert_eq!(proj.rows(), 2);
        assert!(proj.mul(&section).is_identity());
        assert!(proj.mul_vec(&[rat(1), rat(1), rat(0)]).iter().all(num::Zero::is_zero));
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c)
                .prop_map(move |v| Mat::from_fn(r, c, |i, j| rat(v[i * c + j])))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_mat()) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        }

        #[test]
        fn cokernel_laws(m in small_mat()) {
            let (proj, section) = m.cokernel();
            prop_assert!(proj.mul(&m).is_zero());
            prop_assert!(proj.rows() == 0 || proj.mul(&section).is_identity());
            prop_assert_eq!(proj.rows(), m.rows() - m.rank());
        }

        #[test]
        fn kron_multiplicative(a in small_mat(), b in small_mat(), c in small_mat(), d in small_mat()) {
            // Shapes must compose; rebuild c, d to match.
            let c = Mat::from_fn(a.cols(), c.cols(), |i, j| c.at(i % c.rows(), j).clone());
            let d = Mat::from_fn(b.cols(), d.cols(), |i, j| d.at(i % d.rows(), j).clone());
            prop_assert_eq!(
                a.kron(&b).mul(&c.kron(&d)),
                a.mul(&c).kron(&b.mul(&d))
            );
        }

        #[test]
        fn rref_idempotent(m in small_mat()) {
            let (r, p) = m.rref();
            let (r2, p2) = r.rref();
            prop_assert_eq!(r, r2);
            prop_assert_eq!(p, p2);
        }

        #[test]
        fn serde_round_trip(m in small_mat()) {
            let json = serde_json::to_string(&m).unwrap();
            let back: Mat = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(m, back);
        }
    }
}
