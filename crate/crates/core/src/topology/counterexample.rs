//! The regular but never-correctable 16-cell pattern of `T_{5x5}(2,2,0)` and
//! the explicit nonzero product-code word supported on it.

use std::collections::BTreeSet;

use super::grid::check_perm;
use super::{ErasurePattern, Result, TopologyError};
use crate::codes::{is_mds, LinearCode};
use crate::fmatrix::FMatrix;
use crate::gf::{Field, FieldElement};

/// 0-based cells of the base pattern.
pub const COUNTEREXAMPLE_CELLS: [(usize, usize); 16] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 0),
    (1, 1),
    (1, 2),
    (2, 0),
    (2, 1),
    (2, 2),
    (3, 0),
    (3, 3),
    (3, 4),
    (4, 0),
    (4, 3),
    (4, 4),
];

/// Base cell `(i, j)` placed at `(row_perm[i], col_perm[j])`.
pub fn counterexample_pattern(row_perm: &[usize], col_perm: &[usize]) -> Result<ErasurePattern> {
    check_perm(row_perm, 5)?;
    check_perm(col_perm, 5)?;
    ErasurePattern::new(
        5,
        5,
        COUNTEREXAMPLE_CELLS
            .iter()
            .map(|&(i, j)| (row_perm[i], col_perm[j])),
    )
}

fn permutations5() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut p = [0, 1, 2, 3, 4];
    heap(5, &mut p, &mut out);
    out.sort_unstable();
    out
}

fn heap(k: usize, p: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
    if k == 1 {
        out.push(*p);
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// Distinct row/column permutations of the base pattern, sorted.
pub fn counterexample_orbit() -> Vec<ErasurePattern> {
    let perms = permutations5();
    let mut set = BTreeSet::new();
    for r in &perms {
        for c in &perms {
            set.insert(counterexample_pattern(r, c).expect("valid permutations"));
        }
    }
    set.into_iter().collect()
}

/// Permutations mapping the base pattern onto `e`, if `e` is in the orbit.
pub fn find_counterexample_perms(e: &ErasurePattern) -> Option<(Vec<usize>, Vec<usize>)> {
    if e.shape() != (5, 5) || e.len() != 16 {
        return None;
    }
    let target = e.row_masks();
    let perms = permutations5();
    for c in &perms {
        let mut base = [0u64; 5];
        for &(i, j) in &COUNTEREXAMPLE_CELLS {
            base[i] |= 1 << c[j];
        }
        // row i of the base must land on a target row with the same mask
        let mut r = [usize::MAX; 5];
        let mut used = [false; 5];
        let mut ok = true;
        for i in 0..5 {
            match (0..5).find(|&t| !used[t] && target[t] == base[i]) {
                Some(t) => {
                    used[t] = true;
                    r[i] = t;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some((r.to_vec(), c.to_vec()));
        }
    }
    None
}

/// One labelled stage of the construction, in base coordinates. `None`
/// entries are erased cells not yet filled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelStep {
    pub label: char,
    pub description: &'static str,
    pub cells: Vec<Vec<Option<u64>>>,
}

struct Systematic {
    /// `P[r][c]`, parity part of `[I_3 | P]`.
    parity: [[u64; 2]; 3],
    /// `(1, w2, w3, 0, 0)` is a codeword.
    weight3: [u64; 2],
}

fn systematic(code: &LinearCode) -> Result<Systematic> {
    let f = code.field();
    let (r, pivots) = code.generator().rref();
    if pivots != [0, 1, 2] {
        return Err(TopologyError::NotMds);
    }
    let mut parity = [[0u64; 2]; 3];
    for (i, row) in parity.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = r.get(i, 3 + c);
        }
    }
    let m = FMatrix::from_raw(f, 2, 2, vec![parity[1][0], parity[1][1], parity[2][0], parity[2][1]])?;
    let rhs = [f.neg(parity[0][0]), f.neg(parity[0][1])];
    let w = m.solve_left(&rhs)?.ok_or(TopologyError::NotMds)?;
    Ok(Systematic {
        parity,
        weight3: [w[0], w[1]],
    })
}

/// Nonzero `5 x 5` array supported exactly on the (permuted) base pattern,
/// with every row in `row` and every column in `col`.
///
/// `gamma2` is the value at base cell `(1, 0)`; the array is linear in it.
pub fn kernel_codeword(
    col: &LinearCode,
    row: &LinearCode,
    gamma2: &FieldElement,
    row_perm: &[usize],
    col_perm: &[usize],
) -> Result<FMatrix> {
    kernel_codeword_traced(col, row, gamma2, row_perm, col_perm).map(|(m, _)| m)
}

/// [`kernel_codeword`] together with the intermediate arrays of steps
/// (a) to (g).
pub fn kernel_codeword_traced(
    col: &LinearCode,
    row: &LinearCode,
    gamma2: &FieldElement,
    row_perm: &[usize],
    col_perm: &[usize],
) -> Result<(FMatrix, Vec<KernelStep>)> {
    check_perm(row_perm, 5)?;
    check_perm(col_perm, 5)?;
    let f = col.field().clone();
    if row.field() != &f || gamma2.field() != &f {
        return Err(TopologyError::Code(crate::codes::CodeError::FieldMismatch));
    }
    if (col.n(), col.k(), row.n(), row.k()) != (5, 3, 5, 3) || !is_mds(col)? || !is_mds(row)? {
        return Err(TopologyError::NotMds);
    }
    if gamma2.is_zero() {
        return Err(TopologyError::ZeroGamma);
    }
    // the base construction runs on the codes seen through the permutations
    let row_base = row.permute(col_perm)?;
    let col_base = col.permute(row_perm)?;
    let rs = systematic(&row_base)?;
    let cs = systematic(&col_base)?;
    let [a2, a3] = rs.weight3;
    let [g2, g3] = cs.weight3;
    let scale = f.div(gamma2.raw(), g2).ok_or(TopologyError::NotMds)?;
    let mul = |x: u64, y: u64| f.mul(x, y);
    let s = |x: u64| f.mul(scale, x);

    let mut grid: Vec<Vec<Option<u64>>> = vec![vec![Some(0); 5]; 5];
    for &(i, j) in &COUNTEREXAMPLE_CELLS {
        grid[i][j] = None;
    }
    let mut steps = Vec::new();
    let mut record = |label: char, description: &'static str, grid: &Vec<Vec<Option<u64>>>| {
        steps.push(KernelStep {
            label,
            description,
            cells: grid.clone(),
        })
    };

    grid[1][0] = Some(s(g2));
    record('a', "fix the entry at row 2, column 1", &grid);

    grid[1][1] = Some(s(mul(g2, a2)));
    grid[1][2] = Some(s(mul(g2, a3)));
    record('b', "row 2 is a multiple of the weight-3 row codeword", &grid);

    grid[0][1] = Some(s(a2));
    grid[0][2] = Some(s(a3));
    grid[2][1] = Some(s(mul(g3, a2)));
    grid[2][2] = Some(s(mul(g3, a3)));
    record('c', "columns 2 and 3 are multiples of the weight-3 column codeword", &grid);

    grid[2][0] = Some(s(g3));
    record('d', "row 3 starts with the third column-codeword symbol", &grid);

    let p = &rs.parity;
    let q = &cs.parity;
    let enc_row = |c: usize| f.add(mul(a2, p[1][c]), mul(a3, p[2][c]));
    let enc_col = |c: usize| f.add(mul(g2, q[1][c]), mul(g3, q[2][c]));
    grid[0][3] = Some(s(enc_row(0)));
    grid[0][4] = Some(s(enc_row(1)));
    grid[3][0] = Some(s(enc_col(0)));
    grid[4][0] = Some(s(enc_col(1)));
    record('e', "encode row 1 and column 1 systematically", &grid);

    for c in 0..2 {
        // parity relations of the weight-3 codewords
        debug_assert_eq!(enc_row(c), f.neg(p[0][c]));
        debug_assert_eq!(enc_col(c), f.neg(q[0][c]));
    }
    grid[0][3] = Some(s(f.neg(p[0][0])));
    grid[0][4] = Some(s(f.neg(p[0][1])));
    grid[3][0] = Some(s(f.neg(q[0][0])));
    grid[4][0] = Some(s(f.neg(q[0][1])));
    record('f', "substitute the parity relations", &grid);

    for (r, qc) in [(3, q[0][0]), (4, q[0][1])] {
        grid[r][3] = Some(s(f.neg(mul(qc, p[0][0]))));
        grid[r][4] = Some(s(f.neg(mul(qc, p[0][1]))));
    }
    record('g', "rows 4 and 5 are multiples of the first systematic row", &grid);

    let mut out = FMatrix::zeros(&f, 5, 5);
    for i in 0..5 {
        for j in 0..5 {
            out.set(row_perm[i], col_perm[j], grid[i][j].expect("all cells filled"));
        }
    }
    Ok((out, steps))
}

/// Outcome of checking a kernel array against a code pair and a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    pub nonzero: bool,
    /// Zero at every non-erased cell.
    pub vanishes_off_pattern: bool,
    /// Nonzero at every erased cell.
    pub support_is_pattern: bool,
    pub rows_in_row_code: bool,
    pub cols_in_col_code: bool,
}

impl KernelCheck {
    /// A valid uncorrectability witness.
    pub fn is_witness(&self) -> bool {
        self.nonzero && self.vanishes_off_pattern && self.rows_in_row_code && self.cols_in_col_code
    }

    pub fn all(&self) -> bool {
        self.is_witness() && self.support_is_pattern
    }
}

pub fn verify_kernel_array(
    col: &LinearCode,
    row: &LinearCode,
    array: &FMatrix,
    pattern: &ErasurePattern,
) -> KernelCheck {
    let (m, n) = pattern.shape();
    assert_eq!((array.rows(), array.cols()), (m, n), "array shape");
    let hr = row.parity_check();
    let hc = col.parity_check();
    let annihilates = |h: &FMatrix, v: &[u64]| {
        (0..h.rows()).all(|r| dot(h.field(), h.row(r), v) == 0)
    };
    let mut check = KernelCheck {
        nonzero: !array.is_zero(),
        vanishes_off_pattern: true,
        support_is_pattern: true,
        rows_in_row_code: (0..m).all(|i| annihilates(&hr, array.row(i))),
        cols_in_col_code: (0..n).all(|j| annihilates(&hc, &array.col(j))),
    };
    for i in 0..m {
        for j in 0..n {
            let zero = array.get(i, j) == 0;
            if pattern.contains((i, j)) {
                check.support_is_pattern &= !zero;
            } else {
                check.vanishes_off_pattern &= zero;
            }
        }
    }
    check
}

fn dot(f: &Field, a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}
