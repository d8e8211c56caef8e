use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Result, TopologyError};

/// `T_{m x n}(a, b, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridTopology {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub h: usize,
}

impl GridTopology {
    pub fn new(m: usize, n: usize, a: usize, b: usize, h: usize) -> Result<Self> {
        if m <= a || n <= b {
            return Err(TopologyError::InvalidTopology(format!(
                "need m > a and n > b, got {m}x{n} with a={a}, b={b}"
            )));
        }
        let (ra, rb) = (m - a, n - b);
        let bound = ra * rb - ra.max(rb);
        if h > bound {
            return Err(TopologyError::InvalidTopology(format!(
                "h={h} exceeds (m-a)(n-b) - max(m-a, n-b) = {bound}"
            )));
        }
        Ok(GridTopology { m, n, a, b, h })
    }

    pub fn cells(&self) -> usize {
        self.m * self.n
    }

    /// Same shape and local parameters with `h = 0`.
    pub fn without_global(&self) -> Self {
        GridTopology { h: 0, ..*self }
    }

    /// Dimension of an MR code of the topology.
    pub fn mr_dimension(&self) -> usize {
        (self.m - self.a) * (self.n - self.b) - self.h
    }
}

impl fmt::Display for GridTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}:{},{},{}", self.m, self.n, self.a, self.b, self.h)
    }
}

impl FromStr for GridTopology {
    type Err = TopologyError;

    /// `MxN:a,b,h`; a missing `h` means 0.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || TopologyError::Parse(s.to_string());
        let (shape, params) = s.trim().split_once(':').ok_or_else(bad)?;
        let (m, n) = shape.split_once(['x', 'X']).ok_or_else(bad)?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let (a, b, h) = match nums.as_slice() {
            [a, b] => (*a, *b, 0),
            [a, b, h] => (*a, *b, *h),
            _ => return Err(bad()),
        };
        let m = m.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        GridTopology::new(m, n, a, b, h)
    }
}

/// A set of erased cells of an `m x n` grid, kept sorted row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ErasurePattern {
    m: usize,
    n: usize,
    cells: Vec<(usize, usize)>,
}

impl ErasurePattern {
    /// 0-based cells; duplicates are merged.
    pub fn new(m: usize, n: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut cells: Vec<(usize, usize)> = cells.into_iter().collect();
        if let Some(&(row, col)) = cells.iter().find(|&&(r, c)| r >= m || c >= n) {
            return Err(TopologyError::CellOutOfRange { row, col, m, n });
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(ErasurePattern { m, n, cells })
    }

    pub fn empty(m: usize, n: usize) -> Self {
        ErasurePattern {
            m,
            n,
            cells: Vec::new(),
        }
    }

    /// From flat indices `i * n + j`.
    pub fn from_indices(m: usize, n: usize, idx: &[usize]) -> Result<Self> {
        if let Some(&i) = idx.iter().find(|&&i| i >= m * n) {
            return Err(TopologyError::CellOutOfRange {
                row: i / n.max(1),
                col: i % n.max(1),
                m,
                n,
            });
        }
        Self::new(m, n, idx.iter().map(|&i| (i / n, i % n)))
    }

    pub fn from_row_masks(m: usize, n: usize, masks: &[u64]) -> Self {
        let mut cells = Vec::new();
        for (i, &mask) in masks.iter().enumerate().take(m) {
            for j in 0..n {
                if mask >> j & 1 == 1 {
                    cells.push((i, j));
                }
            }
        }
        ErasurePattern { m, n, cells }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: (usize, usize)) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// Flat indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        self.cells.iter().map(|&(i, j)| i * self.n + j).collect()
    }

    /// Non-erased flat indices in ascending order.
    pub fn complement_indices(&self) -> Vec<usize> {
        crate::combinatorics::complement(self.m * self.n, &self.indices())
    }

    pub fn complement(&self) -> Self {
        Self::from_indices(self.m, self.n, &self.complement_indices()).expect("in range")
    }

    /// Bit `j` of entry `i` is set iff `(i, j)` is erased. Requires `n <= 64`.
    pub fn row_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "row masks need n <= 64");
        let mut masks = vec![0u64; self.m];
        for &(i, j) in &self.cells {
            masks[i] |= 1 << j;
        }
        masks
    }

    /// Same cells in a larger grid.
    pub fn rebind(&self, m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, self.cells.iter().copied())
    }

    pub fn union(&self, other: &ErasurePattern) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(TopologyError::ShapeMismatch {
                expected: self.shape(),
                got: other.shape(),
            });
        }
        Self::new(
            self.m,
            self.n,
            self.cells.iter().chain(other.cells.iter()).copied(),
        )
    }

    pub fn is_subset_of(&self, other: &ErasurePattern) -> bool {
        self.shape() == other.shape() && self.cells.iter().all(|&c| other.contains(c))
    }

    /// Cell `(i, j)` moved to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        check_perm(row_perm, self.m)?;
        check_perm(col_perm, self.n)?;
        Self::new(
            self.m,
            self.n,
            self.cells.iter().map(|&(i, j)| (row_perm[i], col_perm[j])),
        )
    }

    pub fn to_json(&self) -> PatternJson {
        PatternJson {
            m: self.m,
            n: self.n,
            cells: self.cells.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
    }

    pub fn from_json(json: &PatternJson) -> Result<Self> {
        let mut cells = Vec::with_capacity(json.cells.len());
        for &[r, c] in &json.cells {
            if r == 0 || c == 0 {
                return Err(TopologyError::Parse(format!("cell [{r},{c}] is not 1-based")));
            }
            cells.push((r - 1, c - 1));
        }
        Self::new(json.m, json.n, cells)
    }

    /// Compact `r,c;r,c;…` form with 1-based coordinates.
    pub fn cell_string(&self) -> String {
        self.cells
            .iter()
            .map(|&(i, j)| format!("{},{}", i + 1, j + 1))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Inverse of [`cell_string`](Self::cell_string).
    pub fn parse_cells(m: usize, n: usize, s: &str) -> Result<Self> {
        let bad = || TopologyError::Parse(s.to_string());
        let mut cells = Vec::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let (r, c) = part.split_once(',').ok_or_else(bad)?;
            let r: usize = r.trim().parse().map_err(|_| bad())?;
            let c: usize = c.trim().parse().map_err(|_| bad())?;
            if r == 0 || c == 0 {
                return Err(bad());
            }
            cells.push((r - 1, c - 1));
        }
        Self::new(m, n, cells)
    }
}

pub(crate) fn check_perm(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(TopologyError::NotPermutation(len));
    }
    for &p in perm {
        if p >= len || seen[p] {
            return Err(TopologyError::NotPermutation(len));
        }
        seen[p] = true;
    }
    Ok(())
}

/// `{"m":5,"n":5,"cells":[[1,2],…]}` with 1-based cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub m: usize,
    pub n: usize,
    pub cells: Vec<[usize; 2]>,
}

impl Serialize for ErasurePattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ErasurePattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PatternJson::deserialize(d)?;
        ErasurePattern::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_validation() {
        assert!(GridTopology::new(5, 5, 2, 2, 0).is_ok());
        assert!(GridTopology::new(2, 4, 0, 1, 1).is_ok());
        assert!(GridTopology::new(2, 2, 2, 0, 0).is_err());
        assert!(GridTopology::new(3, 3, 1, 1, 3).is_err());
        assert!(GridTopology::new(3, 3, 1, 1, 2).is_ok());
    }

    #[test]
    fn topology_parse_roundtrip() {
        let t: GridTopology = "5x5:2,2,0".parse().unwrap();
        assert_eq!(t, GridTopology::new(5, 5, 2, 2, 0).unwrap());
        assert_eq!(t.to_string().parse::<GridTopology>().unwrap(), t);
        assert_eq!("4x4:1,1".parse::<GridTopology>().unwrap().h, 0);
        assert!("5x5".parse::<GridTopology>().is_err());
        assert!("5y5:1,1,0".parse::<GridTopology>().is_err());
    }

    #[test]
    fn pattern_sorted_and_json_one_based() {
        let e = ErasurePattern::new(2, 3, [(1, 2), (0, 1), (1, 2)]).unwrap();
        assert_eq!(e.cells(), &[(0, 1), (1, 2)]);
        assert_eq!(e.indices(), vec![1, 5]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"m":2,"n":3,"cells":[[1,2],[2,3]]}"#);
        let back: ErasurePattern = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(ErasurePattern::new(2, 3, [(2, 0)]).is_err());
        assert_eq!(e.complement().len(), 4);
        assert_eq!(ErasurePattern::from_row_masks(2, 3, &e.row_masks()), e);
    }

    #[test]
    fn permutation_checks() {
        let e = ErasurePattern::new(2, 2, [(0, 0)]).unwrap();
        assert_eq!(e.permuted(&[1, 0], &[0, 1]).unwrap().cells(), &[(1, 0)]);
        assert!(e.permuted(&[0, 0], &[0, 1]).is_err());
    }
}
