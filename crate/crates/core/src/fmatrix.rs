//! Dense matrices over a [`Field`] with exact Gaussian elimination.
//!
//! Entries are stored row-major as packed field values. Grid cells `(i, j)`
//! of an `m x n` array map to the flat column `i * n + j`, which is also the
//! ordering produced by [`FMatrix::kron`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Embedding, Field, FieldElement, FieldSpec, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error(transparent)]
    Gf(#[from] GfError),
}

pub type Result<T> = std::result::Result<T, MatrixError>;

#[derive(Clone, Debug)]
pub struct FMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PartialEq for FMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for FMatrix {}

impl FMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_raw(field: &Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v >= field.order()) {
            return Err(GfError::InvalidElement(format!("raw value {bad}")).into());
        }
        Ok(FMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from raw rows; every row must have `cols` entries.
    pub fn from_raw_rows(field: &Field, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(MatrixError::ShapeMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_raw(field, rows.len(), cols, data)
    }

    pub fn from_elements(field: &Field, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut raw = Vec::with_capacity(rows.len());
        for r in rows {
            let mut out = Vec::with_capacity(r.len());
            for e in r {
                if e.field() != field {
                    return Err(MatrixError::FieldMismatch);
                }
                out.push(e.raw());
            }
            raw.push(out);
        }
        Self::from_raw_rows(field, cols, &raw)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn raw_data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.field.order());
        self.data[i * self.cols + j] = v;
    }

    pub fn element(&self, i: usize, j: usize) -> FieldElement {
        self.field
            .from_raw(self.get(i, j))
            .expect("entries are always reduced")
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_field(&self, other: &FMatrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &FMatrix) -> Result<FMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> FMatrix {
        let mut m = self.clone();
        for v in &mut m.data {
            *v = self.field.mul(*v, c);
        }
        m
    }

    /// Kronecker product; block `(i, j)` is `A[i][j] * B`.
    pub fn kron(&self, other: &FMatrix) -> Result<FMatrix> {
        self.check_field(other)?;
        let f = &self.field;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = FMatrix::zeros(f, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let r = i * other.rows + k;
                        let c = j * other.cols + l;
                        out.data[r * cols + c] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Columns indexed by `set`, in ascending index order.
    pub fn restrict_cols(&self, set: &[usize]) -> Result<FMatrix> {
        let mut idx = set.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&j| j >= self.cols) {
            return Err(MatrixError::IndexOutOfRange {
                index: bad,
                bound: self.cols,
            });
        }
        Ok(self.select_cols_unchecked(&idx))
    }

    /// Columns in exactly the given order.
    pub(crate) fn select_cols_unchecked(&self, idx: &[usize]) -> FMatrix {
        let mut out = FMatrix::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + c] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Result<FMatrix> {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            if i >= self.rows {
                return Err(MatrixError::IndexOutOfRange {
                    index: i,
                    bound: self.rows,
                });
            }
            data.extend_from_slice(self.row(i));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        })
    }

    /// Permutes columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<FMatrix> {
        if perm.len() != self.cols {
            return Err(MatrixError::ShapeMismatch("permutation length".into()));
        }
        Ok(self.select_cols_unchecked(perm))
    }

    pub fn vstack(&self, other: &FMatrix) -> Result<FMatrix> {
        self.check_field(other)?;
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(MatrixError::ShapeMismatch(format!(
                "stacking {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    /// Maps every entry through an embedding into a larger field.
    pub fn embed(&self, e: &Embedding) -> Result<FMatrix> {
        if e.source() != &self.field {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(FMatrix {
            field: e.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| e.apply_raw(v)).collect(),
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// In-place elimination; returns pivot columns. With `full`, entries above
    /// pivots are cleared too and pivots are scaled to 1.
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = f.mul(self.data[idx], inv);
            }
            let start = if full { 0 } else { r + 1 };
            for i in start..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = f.mul(factor, self.data[r * cols + j]);
                    let idx = i * cols + j;
                    self.data[idx] = f.sub(self.data[idx], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{v : M v^T = 0}` as rows; `cols - rank` of them.
    pub fn right_kernel(&self) -> FMatrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut out = FMatrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * self.cols + fc] = 1;
            for (pi, &pc) in pivots.iter().enumerate() {
                out.data[k * self.cols + pc] = f.neg(r.get(pi, fc));
            }
        }
        out
    }

    /// Basis of `{x : x M = 0}` as rows.
    pub fn left_kernel(&self) -> FMatrix {
        self.transpose().right_kernel()
    }

    /// The first rows (in order) that are linearly independent of the rows
    /// before them. Always full row rank.
    pub fn row_basis(&self) -> FMatrix {
        let mut basis = EchelonBasis::new(&self.field, self.cols);
        let mut keep = Vec::new();
        for i in 0..self.rows {
            if basis.insert(self.row(i)) {
                keep.push(i);
            }
        }
        self.select_rows(&keep).expect("indices in range")
    }

    pub fn same_row_space(&self, other: &FMatrix) -> Result<bool> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Ok(false);
        }
        let ra = self.rank();
        if ra != other.rank() {
            return Ok(false);
        }
        Ok(self.vstack(other)?.rank() == ra)
    }

    /// Solves `M x = b`; returns one solution or `None` if inconsistent.
    pub fn solve_right(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(MatrixError::ShapeMismatch("right-hand side length".into()));
        }
        let cols = self.cols + 1;
        let mut aug = FMatrix::zeros(&self.field, self.rows, cols);
        for i in 0..self.rows {
            aug.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            aug.data[i * cols + self.cols] = b[i];
        }
        let pivots = aug.eliminate(true);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `x M = b`.
    pub fn solve_left(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        self.transpose().solve_right(b)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            field: self.field.spec(),
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|&v| self.field.unpack(v)).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let field = Field::from_spec(&json.field)?;
        Self::from_coeff_rows(&field, json.rows, json.cols, &json.entries)
    }

    pub(crate) fn from_coeff_rows(
        field: &Field,
        rows: usize,
        cols: usize,
        entries: &[Vec<Vec<u64>>],
    ) -> Result<Self> {
        if entries.len() != rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} rows listed, {rows} declared",
                entries.len()
            )));
        }
        let mut raw = Vec::with_capacity(rows);
        for r in entries {
            let packed: std::result::Result<Vec<u64>, GfError> =
                r.iter().map(|c| field.pack(c)).collect();
            raw.push(packed?);
        }
        Self::from_raw_rows(field, cols, &raw)
    }
}

/// JSON form: `{"rows":r,"cols":c,"field":{...},"entries":[[...],...]}` with
/// each element written as its coefficient array.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    pub entries: Vec<Vec<Vec<u64>>>,
}

impl Serialize for FMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(d)?;
        FMatrix::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// Incrementally grown row-echelon basis.
///
/// Each stored row is monic at its pivot and vanishes at the pivots of the
/// rows stored before it, so a single forward pass reduces a new vector.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    len: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(field: &Field, len: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row).skip(*piv) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the current span; reports whether it was.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(r[piv]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push((piv, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> FMatrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..f.order())).collect();
        FMatrix::from_raw(f, r, c, data).unwrap()
    }

    /// Low-rank matrices so rank deficiency is exercised.
    fn random_low_rank(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> FMatrix {
        let k = rng.gen_range(0..=r.min(c));
        let a = random_matrix(f, r, k, rng);
        let b = random_matrix(f, k, c, rng);
        if k == 0 {
            FMatrix::zeros(f, r, c)
        } else {
            a.mul(&b).unwrap()
        }
    }

    #[test]
    fn rank_examples() {
        let f2 = make_field(2, 1, None).unwrap();
        assert_eq!(FMatrix::identity(&f2, 3).rank(), 3);
        let ones = FMatrix::from_raw(&f2, 2, 2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(ones.rank(), 1);
    }

    #[test]
    fn kron_examples() {
        let f2 = make_field(2, 1, None).unwrap();
        let i2 = FMatrix::identity(&f2, 2);
        assert_eq!(i2.kron(&i2).unwrap(), FMatrix::identity(&f2, 4));
        let a = FMatrix::from_raw(&f2, 1, 2, vec![1, 1]).unwrap();
        let b = FMatrix::from_raw(&f2, 1, 2, vec![1, 0]).unwrap();
        assert_eq!(a.kron(&b).unwrap().raw_data(), &[1, 0, 1, 0]);
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(
            a.kron(&FMatrix::identity(&f3, 1)).unwrap_err(),
            MatrixError::FieldMismatch
        );
    }

    #[test]
    fn restrict_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        let i3 = FMatrix::identity(&f5, 3);
        assert_eq!(i3.restrict_cols(&[0, 1, 2]).unwrap(), i3);
        let empty = i3.restrict_cols(&[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (3, 0));
        let m = FMatrix::from_raw(&f5, 1, 3, vec![1, 2, 3]).unwrap();
        assert_eq!(m.restrict_cols(&[2, 0]).unwrap().raw_data(), &[1, 3]);
        assert!(matches!(
            m.restrict_cols(&[3]),
            Err(MatrixError::IndexOutOfRange { index: 3, bound: 3 })
        ));
    }

    #[test]
    fn kernel_examples() {
        let f2 = make_field(2, 1, None).unwrap();
        let k = FMatrix::identity(&f2, 4).right_kernel();
        assert_eq!((k.rows(), k.cols()), (0, 4));
        let m = FMatrix::from_raw(&f2, 1, 2, vec![1, 1]).unwrap();
        assert_eq!(m.right_kernel().raw_data(), &[1, 1]);
    }

    #[test]
    fn random_kernels_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fields = [
            make_field(2, 1, None).unwrap(),
            make_field(3, 1, None).unwrap(),
            make_field(2, 4, None).unwrap(),
            make_field(13, 1, None).unwrap(),
            make_field(3, 2, None).unwrap(),
        ];
        for t in 0..500 {
            let f = &fields[t % fields.len()];
            let r = rng.gen_range(0..7);
            let c = rng.gen_range(0..8);
            let m = random_low_rank(f, r, c, &mut rng);
            let k = m.right_kernel();
            assert_eq!(k.rows(), c - m.rank());
            assert_eq!(k.rank(), k.rows());
            if r > 0 && k.rows() > 0 {
                assert!(m.mul(&k.transpose()).unwrap().is_zero());
            }
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn kron_rank_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = make_field(2, 3, None).unwrap();
        for _ in 0..100 {
            let a = random_low_rank(&f, rng.gen_range(1..4), rng.gen_range(1..5), &mut rng);
            let b = random_low_rank(&f, rng.gen_range(1..4), rng.gen_range(1..5), &mut rng);
            assert_eq!(a.kron(&b).unwrap().rank(), a.rank() * b.rank());
        }
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let f = make_field(3, 1, None).unwrap();
        for _ in 0..50 {
            let a = random_matrix(&f, 2, rng.gen_range(1..3), &mut rng);
            let b = random_matrix(&f, rng.gen_range(1..3), 2, &mut rng);
            let c = random_matrix(&f, 2, 2, &mut rng);
            let left = a.kron(&b).unwrap().kron(&c).unwrap();
            let right = a.kron(&b.kron(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn restriction_rank_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = make_field(5, 1, None).unwrap();
        for _ in 0..200 {
            let m = random_low_rank(&f, 4, 6, &mut rng);
            let set: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.5)).collect();
            let r = m.restrict_cols(&set).unwrap().rank();
            assert!(r <= m.rank().min(set.len()));
        }
    }

    #[test]
    fn elimination_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = make_field(2, 5, None).unwrap();
        let m = random_low_rank(&f, 5, 7, &mut rng);
        assert_eq!(m.rref(), m.rref());
    }

    #[test]
    fn solve_and_row_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = make_field(7, 1, None).unwrap();
        for _ in 0..100 {
            let m = random_low_rank(&f, 4, 5, &mut rng);
            let x: Vec<u64> = (0..4).map(|_| rng.gen_range(0..7)).collect();
            let b = m.left_mul_vec(&x).unwrap();
            let y = m.solve_left(&b).unwrap().expect("consistent");
            assert_eq!(m.left_mul_vec(&y).unwrap(), b);
            let basis = m.row_basis();
            assert_eq!(basis.rows(), m.rank());
            assert!(basis.same_row_space(&m).unwrap());
        }
        let z = FMatrix::zeros(&f, 2, 2);
        assert_eq!(z.solve_right(&[1, 0]).unwrap(), None);
    }

    #[test]
    fn json_roundtrip() {
        let f = make_field(2, 3, None).unwrap();
        let m = FMatrix::from_raw(&f, 2, 2, vec![1, 2, 3, 7]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains(r#""entries":[[[1,0,0],[0,1,0]],[[1,1,0],[1,1,1]]]"#));
        let back: FMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
