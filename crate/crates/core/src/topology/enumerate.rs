use super::regular::{is_regular_masks, max_pattern_size};
use super::{ErasurePattern, GridTopology, Result, TopologyError};
use crate::combinatorics::binomial;
use crate::par::Execution;

/// Default cap on the number of candidate subsets.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// All regular patterns with exactly `max_pattern_size` cells, in
/// lexicographic order of their flat index sets.
pub fn enumerate_regular_max(topo: &GridTopology, exec: Execution) -> Result<Vec<ErasurePattern>> {
    enumerate_regular_max_capped(topo, exec, ENUMERATION_CAP)
}

pub fn enumerate_regular_max_capped(
    topo: &GridTopology,
    exec: Execution,
    cap: u128,
) -> Result<Vec<ErasurePattern>> {
    let cells = topo.cells();
    let size = max_pattern_size(topo);
    let count = binomial(cells, size);
    if count > cap || topo.n > 64 || topo.m >= 32 {
        return Err(TopologyError::EnumerationTooLarge { count, cap });
    }
    if size == 0 {
        return Ok(vec![ErasurePattern::empty(topo.m, topo.n)]);
    }
    let found = exec.flat_map_range(cells, |first| {
        let mut out = Vec::new();
        let mut rows = vec![0u64; topo.m];
        rows[first / topo.n] |= 1 << (first % topo.n);
        let mut search = Dfs {
            topo,
            size,
            rows,
            out: &mut out,
        };
        search.go(first + 1, 1);
        out
    });
    Ok(found
        .into_iter()
        .map(|rows| ErasurePattern::from_row_masks(topo.m, topo.n, &rows))
        .collect())
}

struct Dfs<'a> {
    topo: &'a GridTopology,
    size: usize,
    rows: Vec<u64>,
    out: &'a mut Vec<Vec<u64>>,
}

impl Dfs<'_> {
    fn go(&mut self, next: usize, chosen: usize) {
        let t = self.topo;
        if chosen == self.size {
            if is_regular_masks(t.m, t.n, t.a, t.b, &self.rows) {
                self.out.push(self.rows.clone());
            }
            return;
        }
        let cells = t.m * t.n;
        let remaining = self.size - chosen;
        for c in next..=cells - remaining {
            let (i, j) = (c / t.n, c % t.n);
            self.rows[i] |= 1 << j;
            if row_ok(t, self.rows[i]) {
                self.go(c + 1, chosen + 1);
            }
            self.rows[i] &= !(1 << j);
        }
    }
}

/// Single-row necessary condition (`U` a single row when `a <= 1`).
fn row_ok(t: &GridTopology, mask: u64) -> bool {
    if t.a > 1 {
        return true;
    }
    // u = 1, v = n: count <= n*a + b - a*b
    let bound = t.n * t.a + (1 - t.a) * t.b;
    (mask.count_ones() as usize) <= bound
}

/// Whether some regular pattern smaller than `max_pattern_size` admits no
/// regular one-cell extension. Only decided for grids of at most 16 cells.
pub fn smaller_maximal_regular_exists(topo: &GridTopology) -> Option<bool> {
    let cells = topo.cells();
    if cells > 16 {
        return None;
    }
    let size = max_pattern_size(topo);
    let masks_of = |set: u32| -> Vec<u64> {
        (0..topo.m)
            .map(|i| ((set >> (i * topo.n)) as u64) & ((1u64 << topo.n) - 1))
            .collect()
    };
    let regular = |set: u32| is_regular_masks(topo.m, topo.n, topo.a, topo.b, &masks_of(set));
    for set in 0u32..(1u32 << cells) {
        if (set.count_ones() as usize) >= size || !regular(set) {
            continue;
        }
        let extendable = (0..cells).any(|c| set >> c & 1 == 0 && regular(set | 1 << c));
        if !extendable {
            return Some(true);
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::is_regular;

    #[test]
    fn small_examples() {
        let t = GridTopology::new(2, 2, 1, 1, 0).unwrap();
        let all = enumerate_regular_max(&t, Execution::Sequential).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|e| e.len() == 3));
        let t = GridTopology::new(1, 2, 0, 1, 0).unwrap();
        assert_eq!(enumerate_regular_max(&t, Execution::default()).unwrap().len(), 2);
    }

    #[test]
    fn matches_filtering_all_subsets() {
        for (m, n, a, b) in [(3, 3, 1, 1), (3, 4, 1, 2), (4, 4, 1, 1), (3, 4, 0, 2), (2, 4, 0, 1)] {
            let t = GridTopology::new(m, n, a, b, 0).unwrap();
            let size = max_pattern_size(&t);
            let expected: Vec<ErasurePattern> = crate::combinatorics::Combinations::new(m * n, size)
                .map(|s| ErasurePattern::from_indices(m, n, &s).unwrap())
                .filter(|e| is_regular(&t, e))
                .collect();
            let seq = enumerate_regular_max(&t, Execution::Sequential).unwrap();
            assert_eq!(seq, expected, "{t}");
            assert_eq!(enumerate_regular_max(&t, Execution::default()).unwrap(), seq);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        assert!(matches!(
            enumerate_regular_max_capped(&t, Execution::Sequential, 1000),
            Err(TopologyError::EnumerationTooLarge { count: 2_042_975, cap: 1000 })
        ));
    }

    #[test]
    fn no_small_maximal_patterns_on_tiny_grids() {
        for (m, n, a, b) in [(2, 2, 1, 1), (3, 3, 1, 1), (2, 3, 0, 1), (4, 4, 1, 1)] {
            let t = GridTopology::new(m, n, a, b, 0).unwrap();
            assert_eq!(smaller_maximal_regular_exists(&t), Some(false), "{t}");
        }
        let big = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        assert_eq!(smaller_maximal_regular_exists(&big), None);
    }
}
