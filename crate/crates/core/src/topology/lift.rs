//! Carrying uncorrectable patterns to larger grids.

use super::regular::is_regular;
use super::{ErasurePattern, GridTopology, Result, TopologyError};

/// A lifted pattern with its target topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifted {
    pub pattern: ErasurePattern,
    pub topology: GridTopology,
    /// Padding was requested but broke regularity, so the unpadded pattern
    /// was returned.
    pub padding_fell_back: bool,
}

/// Rebinds `e` from `base` to an `(m+δ) x (n+γ)` grid with the same `a, b`.
///
/// With `pad_to_maximal`, each new row gets its `b` leftmost cells and each
/// new column its `a` topmost cells erased, which brings the pattern to the
/// maximal size of the target when `e` was maximal.
pub fn lift_extend(
    e: &ErasurePattern,
    base: &GridTopology,
    delta: usize,
    gamma: usize,
    pad_to_maximal: bool,
) -> Result<Lifted> {
    check_base(e, base)?;
    let (m, n) = (base.m + delta, base.n + gamma);
    let topology = GridTopology::new(m, n, base.a, base.b, 0)?;
    let plain = e.rebind(m, n)?;
    if !pad_to_maximal || delta + gamma == 0 {
        return Ok(Lifted {
            pattern: plain,
            topology,
            padding_fell_back: false,
        });
    }
    let mut cells: Vec<(usize, usize)> = plain.cells().to_vec();
    for i in base.m..m {
        cells.extend((0..base.b.min(n)).map(|j| (i, j)));
    }
    for j in base.n..n {
        cells.extend((0..base.a.min(m)).map(|i| (i, j)));
    }
    let padded = ErasurePattern::new(m, n, cells)?;
    if is_regular(&topology, &padded) {
        Ok(Lifted {
            pattern: padded,
            topology,
            padding_fell_back: false,
        })
    } else {
        Ok(Lifted {
            pattern: plain,
            topology,
            padding_fell_back: true,
        })
    }
}

/// `e` plus `δ` fully erased new rows and `γ` fully erased new columns, for
/// the topology with parameters `(a+δ, b+γ)`.
///
/// # Panics
/// If a regular input yields a non-regular output.
pub fn lift_puncture(
    e: &ErasurePattern,
    base: &GridTopology,
    delta: usize,
    gamma: usize,
) -> Result<Lifted> {
    check_base(e, base)?;
    let (m, n) = (base.m + delta, base.n + gamma);
    let topology = GridTopology::new(m, n, base.a + delta, base.b + gamma, 0)?;
    let mut cells: Vec<(usize, usize)> = e.cells().to_vec();
    for i in 0..m {
        for j in 0..n {
            if i >= base.m || j >= base.n {
                cells.push((i, j));
            }
        }
    }
    let pattern = ErasurePattern::new(m, n, cells)?;
    assert!(
        !is_regular(base, e) || is_regular(&topology, &pattern),
        "lifting by erased rows and columns lost regularity"
    );
    Ok(Lifted {
        pattern,
        topology,
        padding_fell_back: false,
    })
}

fn check_base(e: &ErasurePattern, base: &GridTopology) -> Result<()> {
    if e.shape() != (base.m, base.n) {
        return Err(TopologyError::ShapeMismatch {
            expected: (base.m, base.n),
            got: e.shape(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{counterexample_pattern, max_pattern_size};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ID: [usize; 5] = [0, 1, 2, 3, 4];

    #[test]
    fn identity_lifts() {
        let base = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        let e = counterexample_pattern(&ID, &ID).unwrap();
        assert_eq!(lift_extend(&e, &base, 0, 0, true).unwrap().pattern, e);
        assert_eq!(lift_puncture(&e, &base, 0, 0).unwrap().pattern, e);
    }

    #[test]
    fn counterexample_lifts_are_regular_and_maximal() {
        let base = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        let e = counterexample_pattern(&ID, &ID).unwrap();
        let ext = lift_extend(&e, &base, 1, 1, true).unwrap();
        assert!(!ext.padding_fell_back);
        assert!(is_regular(&ext.topology, &ext.pattern));
        assert_eq!(ext.pattern.len(), max_pattern_size(&ext.topology));
        let pun = lift_puncture(&e, &base, 1, 1).unwrap();
        assert_eq!((pun.topology.a, pun.topology.b), (3, 3));
        assert!(is_regular(&pun.topology, &pun.pattern));
        assert_eq!(pun.pattern.len(), max_pattern_size(&pun.topology));
    }

    #[test]
    fn random_regular_patterns_stay_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut seen = 0;
        while seen < 100 {
            let (m, n) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
            let (a, b) = (rng.gen_range(0..m.min(3)), rng.gen_range(0..n.min(3)));
            let base = GridTopology::new(m, n, a, b, 0).unwrap();
            let cells: Vec<(usize, usize)> = (0..m * n)
                .filter(|_| rng.gen_bool(0.3))
                .map(|c| (c / n, c % n))
                .collect();
            let e = ErasurePattern::new(m, n, cells).unwrap();
            if !is_regular(&base, &e) {
                continue;
            }
            seen += 1;
            let (d, g) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            let ext = lift_extend(&e, &base, d, g, false).unwrap();
            assert!(is_regular(&ext.topology, &ext.pattern));
            let padded = lift_extend(&e, &base, d, g, true).unwrap();
            assert!(is_regular(&padded.topology, &padded.pattern));
            let pun = lift_puncture(&e, &base, d, g).unwrap();
            assert!(is_regular(&pun.topology, &pun.pattern));
        }
    }
}
