//! Linear codes: constructions, transforms and erasure correctability.
//!
//! A [`LinearCode`] is the row span of a full-rank generator matrix. Index
//! sets are 0-based positions; for grid codes position `i * n + j` is cell
//! `(i, j)`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{binomial, complement, Combinations};
use crate::fmatrix::{FMatrix, MatrixError};
use crate::gf::{Field, FieldElement, FieldSpec, GfError};

mod grid;

pub use grid::{grid_code, tensor_product_code, GridCode};

/// Default cap on `C(n, k)` for [`is_mds`].
pub const MDS_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("codes are over different fields")]
    FieldMismatch,
    #[error("generator has rank {rank} but {rows} rows")]
    NotFullRank { rank: usize, rows: usize },
    #[error("invalid dimension k={k} for length n={n}")]
    InvalidDimension { n: usize, k: usize },
    #[error("evaluation points are not pairwise distinct")]
    DuplicateEvaluationPoints,
    #[error("length {n} exceeds field order {order}")]
    FieldTooSmall { n: usize, order: u64 },
    #[error("locators are linearly dependent over the subfield")]
    DependentLocators,
    #[error("length {n} exceeds extension degree {s}")]
    LengthExceedsExtensionDegree { n: usize, s: usize },
    #[error("index set has size {got}, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("{count} subsets exceed the enumeration cap {cap}")]
    TooLargeToEnumerate { count: u128, cap: u128 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("erasures are not uniquely decodable")]
    AmbiguousErasure(Box<(Vec<FieldElement>, Vec<FieldElement>)>),
    #[error("received symbols are not consistent with any codeword")]
    InconsistentWord,
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("inner code dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Gf(#[from] GfError),
}

impl From<MatrixError> for CodeError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::FieldMismatch => CodeError::FieldMismatch,
            MatrixError::ShapeMismatch(s) => CodeError::ShapeMismatch(s),
            MatrixError::IndexOutOfRange { index, bound } => {
                CodeError::IndexOutOfRange { index, bound }
            }
            MatrixError::Gf(g) => CodeError::Gf(g),
        }
    }
}

pub type Result<T> = std::result::Result<T, CodeError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: FMatrix,
}

impl LinearCode {
    /// Wraps a generator, which must have full row rank.
    pub fn new(gen: FMatrix) -> Result<Self> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(CodeError::NotFullRank {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(LinearCode { gen })
    }

    /// The row span of an arbitrary matrix.
    pub fn from_span(m: &FMatrix) -> Self {
        LinearCode { gen: m.row_basis() }
    }

    pub fn whole_space(field: &Field, n: usize) -> Self {
        LinearCode {
            gen: FMatrix::identity(field, n),
        }
    }

    pub fn zero_code(field: &Field, n: usize) -> Self {
        LinearCode {
            gen: FMatrix::zeros(field, 0, n),
        }
    }

    /// A uniformly random `k`-dimensional code (random generator, resampled
    /// until full rank).
    pub fn random<R: Rng + ?Sized>(field: &Field, n: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k > n {
            return Err(CodeError::InvalidDimension { n, k });
        }
        loop {
            let data = (0..n * k).map(|_| rng.gen_range(0..field.order())).collect();
            let gen = FMatrix::from_raw(field, k, n, data)?;
            if gen.rank() == k {
                return Ok(LinearCode { gen });
            }
        }
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn generator(&self) -> &FMatrix {
        &self.gen
    }

    /// Generator of the dual code, i.e. a parity-check matrix of `self`.
    pub fn parity_check(&self) -> FMatrix {
        self.gen.right_kernel()
    }

    pub fn encode(&self, message: &[u64]) -> Result<Vec<u64>> {
        Ok(self.gen.left_mul_vec(message)?)
    }

    pub fn contains(&self, word: &[u64]) -> bool {
        if word.len() != self.n() {
            return false;
        }
        let mut b = crate::fmatrix::EchelonBasis::new(self.field(), self.n());
        for i in 0..self.k() {
            b.insert(self.gen.row(i));
        }
        b.contains(word)
    }

    /// Same set of codewords.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field() == other.field()
            && self.n() == other.n()
            && self.k() == other.k()
            && self.gen.same_row_space(&other.gen).unwrap_or(false)
    }

    /// Code with positions reordered: position `j` of the result is position
    /// `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        Ok(LinearCode {
            gen: self.gen.permute_cols(perm)?,
        })
    }

    pub fn to_json(&self) -> CodeJson {
        let f = self.field();
        CodeJson {
            n: self.n(),
            k: self.k(),
            field: f.spec(),
            gen: (0..self.k())
                .map(|i| self.gen.row(i).iter().map(|&v| f.unpack(v)).collect())
                .collect(),
            topo: None,
            h_global: None,
        }
    }

    pub fn from_json(json: &CodeJson) -> Result<Self> {
        let field = Field::from_spec(&json.field)?;
        let gen = FMatrix::from_coeff_rows(&field, json.k, json.n, &json.gen)?;
        LinearCode::new(gen)
    }
}

/// `{"n":…,"k":…,"field":{…},"gen":[[…]]}`; grid codes also carry `topo`
/// and `h_global`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub k: usize,
    pub field: FieldSpec,
    pub gen: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topo: Option<crate::topology::GridTopology>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_global: Option<Vec<Vec<Vec<u64>>>>,
}

fn check_indices(n: usize, set: &[usize]) -> Result<()> {
    match set.iter().find(|&&i| i >= n) {
        Some(&index) => Err(CodeError::IndexOutOfRange { index, bound: n }),
        None => Ok(()),
    }
}

/// Reed–Solomon code with Vandermonde generator `G[i][j] = evals[j]^i`.
pub fn rs_code(field: &Field, n: usize, k: usize, evals: &[FieldElement]) -> Result<LinearCode> {
    if n as u64 > field.order() {
        return Err(CodeError::FieldTooSmall {
            n,
            order: field.order(),
        });
    }
    if k > n || evals.len() != n {
        return Err(CodeError::InvalidDimension { n, k });
    }
    if evals.iter().any(|e| e.field() != field) {
        return Err(CodeError::FieldMismatch);
    }
    let mut pts: Vec<u64> = evals.iter().map(FieldElement::raw).collect();
    pts.sort_unstable();
    if pts.windows(2).any(|w| w[0] == w[1]) {
        return Err(CodeError::DuplicateEvaluationPoints);
    }
    let mut gen = FMatrix::zeros(field, k, n);
    for (j, e) in evals.iter().enumerate() {
        let mut acc = 1u64;
        for i in 0..k {
            gen.set(i, j, acc);
            acc = field.mul(acc, e.raw());
        }
    }
    LinearCode::new(gen)
}

/// Generalized Reed–Solomon code with random distinct points and random
/// nonzero column multipliers.
pub fn random_grs<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<LinearCode> {
    if n as u64 > field.order() {
        return Err(CodeError::FieldTooSmall {
            n,
            order: field.order(),
        });
    }
    let mut pts: Vec<u64> = Vec::with_capacity(n);
    while pts.len() < n {
        let v = rng.gen_range(0..field.order());
        if !pts.contains(&v) {
            pts.push(v);
        }
    }
    let evals: Vec<FieldElement> = pts.iter().map(|&v| field.from_raw(v).unwrap()).collect();
    let rs = rs_code(field, n, k, &evals)?;
    let mut gen = rs.gen;
    for j in 0..n {
        let c = rng.gen_range(1..field.order());
        for i in 0..k {
            let v = field.mul(gen.get(i, j), c);
            gen.set(i, j, v);
        }
    }
    Ok(LinearCode { gen })
}

/// `k x n` Moore matrix with row `i` holding `g_j^(q^i)`.
pub fn moore_matrix(field: &Field, g: &[u64], k: usize) -> Result<FMatrix> {
    let mut m = FMatrix::zeros(field, k, g.len());
    for (j, &gj) in g.iter().enumerate() {
        let mut v = gj;
        for i in 0..k {
            m.set(i, j, v);
            v = field.frobenius_raw(v, 1)?;
        }
    }
    Ok(m)
}

/// Whether `g` is linearly independent over the designated subfield, via
/// nonsingularity of the square Moore matrix.
pub fn independent_over_subfield(field: &Field, g: &[u64]) -> Result<bool> {
    Ok(moore_matrix(field, g, g.len())?.rank() == g.len())
}

/// Gabidulin code `Gab(n, k, g)` over GF(q^s), `q` the designated subfield.
pub fn gabidulin(field: &Field, n: usize, k: usize, g: &[FieldElement]) -> Result<LinearCode> {
    let s = field
        .extension_over_subfield()
        .ok_or(GfError::NoDesignatedSubfield)? as usize;
    if n > s {
        return Err(CodeError::LengthExceedsExtensionDegree { n, s });
    }
    if k > n || g.len() != n {
        return Err(CodeError::InvalidDimension { n, k });
    }
    if g.iter().any(|e| e.field() != field) {
        return Err(CodeError::FieldMismatch);
    }
    let raw: Vec<u64> = g.iter().map(FieldElement::raw).collect();
    if !independent_over_subfield(field, &raw)? {
        return Err(CodeError::DependentLocators);
    }
    LinearCode::new(moore_matrix(field, &raw, k)?)
}

pub fn dual(c: &LinearCode) -> LinearCode {
    LinearCode {
        gen: c.parity_check(),
    }
}

/// Codewords vanishing on `set`, restricted to the remaining positions.
pub fn shorten(c: &LinearCode, set: &[usize]) -> Result<LinearCode> {
    check_indices(c.n(), set)?;
    let rest = complement(c.n(), set);
    let on_set = c.gen.restrict_cols(set)?;
    let coeffs = if on_set.cols() == 0 {
        FMatrix::identity(c.field(), c.k())
    } else {
        on_set.left_kernel()
    };
    if coeffs.rows() == 0 {
        return Ok(LinearCode::zero_code(c.field(), rest.len()));
    }
    let words = coeffs.mul(&c.gen)?;
    LinearCode::new(words.restrict_cols(&rest)?)
}

/// All codewords with the positions in `set` deleted.
pub fn puncture(c: &LinearCode, set: &[usize]) -> Result<LinearCode> {
    check_indices(c.n(), set)?;
    let rest = complement(c.n(), set);
    Ok(LinearCode::from_span(&c.gen.restrict_cols(&rest)?))
}

/// Whether the erasure pattern `erased` is uniquely recoverable.
///
/// Primary test: the generator restricted to the surviving positions keeps
/// rank `k`. Debug builds cross-check that the code shortened on the
/// surviving positions is zero.
///
/// # Panics
/// If an index is `>= n`.
pub fn corrects(c: &LinearCode, erased: &[usize]) -> bool {
    assert!(
        erased.iter().all(|&i| i < c.n()),
        "erasure index out of range"
    );
    let rest = complement(c.n(), erased);
    let ok = c.gen.select_cols_unchecked(&rest).rank() == c.k();
    debug_assert_eq!(
        ok,
        shorten(c, &rest).map(|s| s.k() == 0).unwrap_or(false),
        "puncturing and shortening criteria disagree"
    );
    ok
}

pub fn is_information_set(c: &LinearCode, set: &[usize]) -> Result<bool> {
    check_indices(c.n(), set)?;
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != c.k() {
        return Err(CodeError::WrongSize {
            expected: c.k(),
            got: s.len(),
        });
    }
    Ok(c.gen.select_cols_unchecked(&s).rank() == c.k())
}

/// Every `k`-subset of positions is an information set.
pub fn is_mds(c: &LinearCode) -> Result<bool> {
    is_mds_capped(c, MDS_ENUMERATION_CAP)
}

pub fn is_mds_capped(c: &LinearCode, cap: u128) -> Result<bool> {
    let count = binomial(c.n(), c.k());
    if count > cap {
        return Err(CodeError::TooLargeToEnumerate { count, cap });
    }
    Ok(Combinations::new(c.n(), c.k()).all(|s| c.gen.select_cols_unchecked(&s).rank() == c.k()))
}

/// `<G_col ⊗ G_row>`.
pub fn product_code(col: &LinearCode, row: &LinearCode) -> Result<LinearCode> {
    Ok(LinearCode {
        gen: col.gen.kron(&row.gen)?,
    })
}

/// Recovers a codeword from a received word with `None` at erased positions.
///
/// Fails with [`CodeError::AmbiguousErasure`] carrying two distinct
/// completions when the pattern is not correctable.
pub fn erasure_decode(c: &LinearCode, word: &[Option<FieldElement>]) -> Result<Vec<FieldElement>> {
    if word.len() != c.n() {
        return Err(CodeError::ShapeMismatch(format!(
            "word of length {} for a length-{} code",
            word.len(),
            c.n()
        )));
    }
    let f = c.field();
    let mut known = Vec::new();
    let mut values = Vec::new();
    for (i, w) in word.iter().enumerate() {
        if let Some(e) = w {
            if e.field() != f {
                return Err(CodeError::FieldMismatch);
            }
            known.push(i);
            values.push(e.raw());
        }
    }
    let sub = c.gen.select_cols_unchecked(&known);
    let to_elements = |v: Vec<u64>| -> Vec<FieldElement> {
        v.into_iter().map(|x| f.from_raw(x).unwrap()).collect()
    };
    let msg = if sub.cols() == 0 {
        vec![0u64; c.k()]
    } else {
        sub.solve_left(&values)?.ok_or(CodeError::InconsistentWord)?
    };
    let first = c.encode(&msg)?;
    let ambiguity = if sub.cols() == 0 {
        FMatrix::identity(f, c.k())
    } else {
        sub.left_kernel()
    };
    if ambiguity.rows() == 0 {
        return Ok(to_elements(first));
    }
    let shifted: Vec<u64> = msg
        .iter()
        .zip(ambiguity.row(0))
        .map(|(&a, &b)| f.add(a, b))
        .collect();
    let second = c.encode(&shifted)?;
    Err(CodeError::AmbiguousErasure(Box::new((
        to_elements(first),
        to_elements(second),
    ))))
}
