use super::{ErasurePattern, GridTopology};

/// `n*a + m*b - a*b`, the size of a largest regular pattern.
pub fn max_pattern_size(topo: &GridTopology) -> usize {
    topo.n * topo.a + topo.m * topo.b - topo.a * topo.b
}

/// Whether every subgrid `U x V` with `|U| = u >= a`, `|V| = v >= b` holds at
/// most `v*a + u*b - a*b` erased cells. `h` plays no role.
///
/// # Panics
/// If the pattern shape differs from the topology.
pub fn is_regular(topo: &GridTopology, e: &ErasurePattern) -> bool {
    assert_eq!(e.shape(), (topo.m, topo.n), "pattern shape mismatch");
    is_regular_masks(topo.m, topo.n, topo.a, topo.b, &e.row_masks())
}

/// Row-mask form of [`is_regular`]: bit `j` of `rows[i]` marks cell `(i, j)`.
///
/// For each row set `U` only the densest `v` columns matter, so columns are
/// sorted by their count inside `U` and prefix sums are compared with the
/// bound.
pub fn is_regular_masks(m: usize, n: usize, a: usize, b: usize, rows: &[u64]) -> bool {
    assert!(m < 32, "too many rows for subset iteration");
    let mut counts = vec![0usize; n];
    for u_set in 0u32..(1u32 << m) {
        let u = u_set.count_ones() as usize;
        if u < a {
            continue;
        }
        counts.iter_mut().for_each(|c| *c = 0);
        let mut total = 0usize;
        for (i, &mask) in rows.iter().enumerate() {
            if u_set >> i & 1 == 1 {
                let mut bits = mask;
                while bits != 0 {
                    counts[bits.trailing_zeros() as usize] += 1;
                    bits &= bits - 1;
                }
                total += mask.count_ones() as usize;
            }
        }
        // cheapest test first: all columns
        if total > n * a + (u - a) * b {
            return false;
        }
        counts.sort_unstable_by(|x, y| y.cmp(x));
        let mut prefix = 0usize;
        for (v, &c) in counts.iter().enumerate() {
            if v >= b && prefix > v * a + (u - a) * b {
                return false;
            }
            prefix += c;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::counterexample_pattern;
    use proptest::prelude::*;

    /// Direct double loop over all row and column subsets.
    fn brute(m: usize, n: usize, a: usize, b: usize, rows: &[u64]) -> bool {
        for us in 0u64..1 << m {
            let u = us.count_ones() as usize;
            if u < a {
                continue;
            }
            for vs in 0u64..1 << n {
                let v = vs.count_ones() as usize;
                if v < b {
                    continue;
                }
                let mut cnt = 0;
                for i in 0..m {
                    if us >> i & 1 == 1 {
                        cnt += (rows[i] & vs).count_ones() as usize;
                    }
                }
                if cnt + a * b > v * a + u * b {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn examples() {
        let t = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        assert!(is_regular(&t, &ErasurePattern::empty(5, 5)));
        let ce = counterexample_pattern(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4]).unwrap();
        assert!(is_regular(&t, &ce));
        let block = ErasurePattern::new(5, 5, (0..3).flat_map(|i| (0..3).map(move |j| (i, j)))).unwrap();
        assert!(!is_regular(&t, &block));
        assert_eq!(max_pattern_size(&t), 16);
        assert_eq!(max_pattern_size(&GridTopology::new(4, 4, 1, 1, 0).unwrap()), 7);
        assert_eq!(max_pattern_size(&GridTopology::new(3, 5, 0, 2, 0).unwrap()), 6);
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            m in 1usize..=5,
            n in 1usize..=5,
            a in 0usize..3,
            b in 0usize..3,
            seed in any::<u64>(),
        ) {
            prop_assume!(a < m && b < n);
            let rows: Vec<u64> = (0..m)
                .map(|i| seed.rotate_left(7 * i as u32) & ((1u64 << n) - 1))
                .collect();
            prop_assert_eq!(is_regular_masks(m, n, a, b, &rows), brute(m, n, a, b, &rows));
        }

        #[test]
        fn subsets_of_regular_are_regular(seed in any::<u64>(), drop in 0usize..25) {
            let rows: Vec<u64> = (0..5).map(|i| (seed >> (5 * i)) & 31).collect();
            if is_regular_masks(5, 5, 2, 2, &rows) {
                let mut smaller = rows.clone();
                smaller[drop / 5] &= !(1u64 << (drop % 5));
                prop_assert!(is_regular_masks(5, 5, 2, 2, &smaller));
            }
        }
    }
}
