//! Subset enumeration helpers.

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `k`-subsets of `0..n` as sorted index vectors, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `0..n` minus the (sorted or unsorted) indices in `set`.
pub fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &i in set {
        if i < n {
            mark[i] = true;
        }
    }
    (0..n).filter(|&i| !mark[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomial() {
        for n in 0..9 {
            for k in 0..=n + 1 {
                assert_eq!(Combinations::new(n, k).count() as u128, binomial(n, k), "{n} {k}");
            }
        }
        assert_eq!(binomial(25, 16), 2_042_975);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn complement_basic() {
        assert_eq!(complement(5, &[3, 0]), vec![1, 2, 4]);
    }
}
