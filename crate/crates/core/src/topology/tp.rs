//! Tensor-product codes and the duality with grid codes.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{ErasurePattern, Result, TopologyError};
use crate::codes::{corrects, dual, tensor_product_code, LinearCode};
use crate::combinatorics::{binomial, Combinations};
use crate::par::Execution;

/// Whether `e` is correctable in the dual of `c`, i.e. the columns of the
/// generator of `c` indexed by `e` are linearly independent.
///
/// # Panics
/// If an index is `>= n`.
pub fn dual_correctable(c: &LinearCode, e: &[usize]) -> bool {
    assert!(e.iter().all(|&i| i < c.n()), "erasure index out of range");
    let mut idx = e.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let ok = c.generator().restrict_cols(&idx).expect("in range").rank() == idx.len();
    debug_assert_eq!(ok, corrects(&dual(c), &idx));
    ok
}

/// Outcome of comparing the maximal correctable patterns of a TP code with
/// the complements of a topology's maximal correctable patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TpReport {
    pub n: usize,
    pub k: usize,
    /// `(m-a)(n-b)`, the size of a maximal TP-correctable pattern.
    pub maximal_size: usize,
    pub tp_maximal_count: usize,
    pub complement_count: usize,
    /// Every maximal TP-correctable pattern is a complement of a listed pattern.
    pub subset_holds: bool,
    pub violations: usize,
    /// The dual of the TP code corrects every listed pattern.
    pub dual_is_mr: bool,
    pub all_complements_correctable: bool,
    pub equality: bool,
    /// No redundancy (`a = m` or `b = n`): everything is correctable.
    pub vacuous: bool,
}

/// Compares `TP(col, row)` against `emax0`, the maximal correctable
/// patterns of `T_{m x n}(a, b, 0)` for `col = [m, a]`, `row = [n, b]`.
pub fn tp_correctable_check(
    col: &LinearCode,
    row: &LinearCode,
    emax0: &[ErasurePattern],
    exec: Execution,
) -> Result<TpReport> {
    let tp = tensor_product_code(col, row)?;
    let (m, n) = (col.n(), row.n());
    let size = (m - col.k()) * (n - row.k());
    if size == 0 {
        return Ok(TpReport {
            n: tp.n(),
            k: tp.k(),
            maximal_size: 0,
            tp_maximal_count: 1,
            complement_count: 0,
            subset_holds: true,
            violations: 0,
            dual_is_mr: true,
            all_complements_correctable: true,
            equality: true,
            vacuous: true,
        });
    }
    let count = binomial(m * n, size);
    if count > super::ENUMERATION_CAP {
        return Err(TopologyError::EnumerationTooLarge {
            count,
            cap: super::ENUMERATION_CAP,
        });
    }
    for e in emax0 {
        if e.shape() != (m, n) {
            return Err(TopologyError::ShapeMismatch {
                expected: (m, n),
                got: e.shape(),
            });
        }
    }
    let complements: BTreeSet<Vec<usize>> = emax0.iter().map(|e| e.complement_indices()).collect();
    let candidates: Vec<Vec<usize>> = Combinations::new(m * n, size).collect();
    let flags = exec.map(&candidates, |s| corrects(&tp, s));
    let tp_maximal: BTreeSet<Vec<usize>> = candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(s, ok)| ok.then_some(s))
        .collect();
    let violations = tp_maximal.iter().filter(|s| !complements.contains(*s)).count();
    let tp_dual = dual(&tp);
    let dual_is_mr = exec.all(emax0, |e| corrects(&tp_dual, &e.indices()));
    let all_complements_correctable = complements.iter().all(|s| tp_maximal.contains(s));
    Ok(TpReport {
        n: tp.n(),
        k: tp.k(),
        maximal_size: size,
        tp_maximal_count: tp_maximal.len(),
        complement_count: complements.len(),
        subset_holds: violations == 0,
        violations,
        dual_is_mr,
        all_complements_correctable,
        equality: tp_maximal == complements,
        vacuous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{rs_code, LinearCode};
    use crate::combinatorics::Combinations;
    use crate::gf::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_and_mds_dual_examples() {
        let f8 = make_field(2, 3, None).unwrap();
        let pts: Vec<_> = (1..=5).map(|v| f8.from_raw(v).unwrap()).collect();
        let c = rs_code(&f8, 5, 3, &pts).unwrap();
        assert!(dual_correctable(&c, &[]));
        // the dual of c is [5,2] MDS: any 3 erasures correctable, 4 not
        let d = dual(&c);
        for e in Combinations::new(5, 2) {
            assert!(dual_correctable(&d, &e));
        }
        for e in Combinations::new(5, 3) {
            assert!(!dual_correctable(&d, &e));
        }
    }

    #[test]
    fn agrees_with_correcting_in_the_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = make_field(3, 1, None).unwrap();
        for _ in 0..1000 {
            let n = rng.gen_range(1..=7);
            let k = rng.gen_range(0..=n);
            let c = LinearCode::random(&f, n, k, &mut rng).unwrap();
            let e: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            assert_eq!(dual_correctable(&c, &e), corrects(&dual(&c), &e));
        }
    }

    #[test]
    fn degenerate_whole_space_column_code() {
        let f = make_field(2, 2, None).unwrap();
        let col = LinearCode::whole_space(&f, 3);
        let row = LinearCode::whole_space(&f, 2);
        let r = tp_correctable_check(&col, &row, &[], Execution::Sequential).unwrap();
        assert!(r.vacuous && r.equality);
        assert_eq!(r.k, 6);
    }
}
