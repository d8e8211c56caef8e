//! Certificate search: a pattern is `Correctable` once some sampled MDS
//! product code corrects it, and `ProvenUncorrectable` when a nonzero
//! product-code word supported inside it is exhibited.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::counterexample::{find_counterexample_perms, kernel_codeword, verify_kernel_array};
use super::regular::is_regular;
use super::{ErasurePattern, GridTopology, Result, TopologyError};
use crate::codes::{corrects, product_code, random_grs, GridCode, LinearCode};
use crate::fmatrix::FMatrix;
use crate::gf::Field;
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictStatus {
    Correctable,
    NoCertificateFound,
    ProvenUncorrectable,
}

impl VerdictStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictStatus::Correctable => "Correctable",
            VerdictStatus::NoCertificateFound => "NoCertificateFound",
            VerdictStatus::ProvenUncorrectable => "ProvenUncorrectable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A code of the topology correcting the pattern.
    Code(Box<GridCode>),
    /// A nonzero codeword of `col ⊗ row` vanishing off the pattern.
    Kernel {
        array: FMatrix,
        col: LinearCode,
        row: LinearCode,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    status: VerdictStatus,
    certificate: Option<Certificate>,
    trials_used: usize,
}

impl Verdict {
    /// Checks that `code` corrects `e`.
    pub fn correctable(code: GridCode, e: &ErasurePattern, trials_used: usize) -> Result<Self> {
        if !corrects(code.code(), &e.indices()) {
            return Err(TopologyError::UnsoundCertificate(
                "code does not correct the pattern".into(),
            ));
        }
        Ok(Verdict {
            status: VerdictStatus::Correctable,
            certificate: Some(Certificate::Code(Box::new(code))),
            trials_used,
        })
    }

    /// Checks that `array` is a nonzero `col ⊗ row` word vanishing off `e`.
    pub fn proven_uncorrectable(
        array: FMatrix,
        col: LinearCode,
        row: LinearCode,
        e: &ErasurePattern,
        trials_used: usize,
    ) -> Result<Self> {
        if !verify_kernel_array(&col, &row, &array, e).is_witness() {
            return Err(TopologyError::UnsoundCertificate(
                "kernel array is not a witness".into(),
            ));
        }
        Ok(Verdict {
            status: VerdictStatus::ProvenUncorrectable,
            certificate: Some(Certificate::Kernel { array, col, row }),
            trials_used,
        })
    }

    pub fn no_certificate(trials_used: usize) -> Self {
        Verdict {
            status: VerdictStatus::NoCertificateFound,
            certificate: None,
            trials_used,
        }
    }

    pub fn status(&self) -> VerdictStatus {
        self.status
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    pub fn trials_used(&self) -> usize {
        self.trials_used
    }
}

/// Compact per-pattern record for censuses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub status: VerdictStatus,
    pub trials_used: usize,
    /// `trial:<i>`, `kernel:orbit` or `kernel:shortening`; empty when none.
    pub certificate_ref: String,
}

/// A random `[m, m-a]` and `[n, n-b]` MDS pair (generalized Reed–Solomon).
pub fn random_mds_pair<R: Rng + ?Sized>(
    topo: &GridTopology,
    field: &Field,
    rng: &mut R,
) -> Result<(LinearCode, LinearCode)> {
    let needed = topo.m.max(topo.n);
    if (field.order() as u128) < needed as u128 {
        return Err(TopologyError::FieldTooSmallForMDS {
            order: field.order(),
            needed,
        });
    }
    let col = random_grs(field, topo.m, topo.m - topo.a, rng)?;
    let row = random_grs(field, topo.n, topo.n - topo.b, rng)?;
    Ok((col, row))
}

struct Trial {
    col: LinearCode,
    row: LinearCode,
    product: LinearCode,
}

enum Decision {
    Trial(usize),
    Orbit(Vec<usize>, Vec<usize>),
    Shortening,
    Open,
}

/// Pre-sampled MDS pairs for one `(topology, field, trials, seed)` setting.
///
/// Trial `i` draws from stream `i` of a ChaCha8 generator keyed by `seed`,
/// so every verdict is a pure function of the pattern and the settings.
pub struct CertificateSearch {
    topo: GridTopology,
    field: Field,
    seed: u64,
    trials: Vec<Trial>,
    /// Pair used for kernel certificates, independent of `trials`.
    witness_pair: Trial,
}

impl CertificateSearch {
    pub fn new(topo: &GridTopology, field: &Field, trials: usize, seed: u64) -> Result<Self> {
        if topo.h != 0 {
            return Err(TopologyError::InvalidTopology(
                "certificate search runs on topologies with h = 0".into(),
            ));
        }
        let make = |i: u64| -> Result<Trial> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let (col, row) = random_mds_pair(topo, field, &mut rng)?;
            let product = product_code(&col, &row)?;
            Ok(Trial { col, row, product })
        };
        let list = (0..trials as u64).map(make).collect::<Result<Vec<_>>>()?;
        Ok(CertificateSearch {
            topo: *topo,
            field: field.clone(),
            seed,
            trials: list,
            witness_pair: make(u64::MAX)?,
        })
    }

    pub fn topology(&self) -> &GridTopology {
        &self.topo
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> usize {
        self.trials.len()
    }

    /// The code pair of trial `i`.
    pub fn trial_codes(&self, i: usize) -> Option<(&LinearCode, &LinearCode)> {
        self.trials.get(i).map(|t| (&t.col, &t.row))
    }

    fn check_shape(&self, e: &ErasurePattern) -> Result<()> {
        if e.shape() != (self.topo.m, self.topo.n) {
            return Err(TopologyError::ShapeMismatch {
                expected: (self.topo.m, self.topo.n),
                got: e.shape(),
            });
        }
        Ok(())
    }

    fn decide(&self, e: &ErasurePattern) -> Decision {
        if !is_regular(&self.topo, e) {
            return Decision::Shortening;
        }
        let idx = e.indices();
        if let Some(t) = self.trials.iter().position(|t| corrects(&t.product, &idx)) {
            return Decision::Trial(t);
        }
        let t = &self.topo;
        if (t.m, t.n, t.a, t.b) == (5, 5, 2, 2) {
            if let Some((r, c)) = find_counterexample_perms(e) {
                return Decision::Orbit(r, c);
            }
        }
        Decision::Open
    }

    fn trials_used(&self, d: &Decision) -> usize {
        match d {
            Decision::Trial(t) => t + 1,
            Decision::Shortening => 0,
            _ => self.trials.len(),
        }
    }

    fn kernel_array(&self, e: &ErasurePattern, d: &Decision) -> Result<FMatrix> {
        let w = &self.witness_pair;
        match d {
            Decision::Orbit(r, c) => kernel_codeword(&w.col, &w.row, &self.field.one_element(), r, c),
            _ => {
                let g = w.product.generator();
                let kept = g.restrict_cols(&e.complement_indices())?;
                let coeffs = if kept.cols() == 0 {
                    FMatrix::identity(&self.field, g.rows())
                } else {
                    kept.left_kernel()
                };
                if coeffs.rows() == 0 {
                    return Err(TopologyError::UnsoundCertificate(
                        "witness code corrects a non-regular pattern".into(),
                    ));
                }
                let word = g.left_mul_vec(coeffs.row(0))?;
                Ok(FMatrix::from_raw(&self.field, self.topo.m, self.topo.n, word)?)
            }
        }
    }

    pub fn classify(&self, e: &ErasurePattern) -> Result<Verdict> {
        self.check_shape(e)?;
        let d = self.decide(e);
        let used = self.trials_used(&d);
        match &d {
            Decision::Trial(t) => {
                let tr = &self.trials[*t];
                Verdict::correctable(GridCode::product(&tr.col, &tr.row)?, e, used)
            }
            Decision::Orbit(..) | Decision::Shortening => {
                let w = &self.witness_pair;
                let array = self.kernel_array(e, &d)?;
                Verdict::proven_uncorrectable(array, w.col.clone(), w.row.clone(), e, used)
            }
            Decision::Open => Ok(Verdict::no_certificate(used)),
        }
    }

    /// Like [`classify`](Self::classify) but keeps only a reference to the
    /// certificate. Kernel certificates are still built and verified.
    pub fn summarize(&self, e: &ErasurePattern) -> Result<VerdictSummary> {
        self.check_shape(e)?;
        let d = self.decide(e);
        let used = self.trials_used(&d);
        let (status, certificate_ref) = match &d {
            Decision::Trial(t) => (VerdictStatus::Correctable, format!("trial:{t}")),
            Decision::Orbit(..) | Decision::Shortening => {
                let array = self.kernel_array(e, &d)?;
                let w = &self.witness_pair;
                if !verify_kernel_array(&w.col, &w.row, &array, e).is_witness() {
                    return Err(TopologyError::UnsoundCertificate(
                        "kernel array is not a witness".into(),
                    ));
                }
                let tag = if matches!(d, Decision::Orbit(..)) {
                    "kernel:orbit"
                } else {
                    "kernel:shortening"
                };
                (VerdictStatus::ProvenUncorrectable, tag.to_string())
            }
            Decision::Open => (VerdictStatus::NoCertificateFound, String::new()),
        };
        Ok(VerdictSummary {
            status,
            trials_used: used,
            certificate_ref,
        })
    }
}

/// Classifies one pattern of an `h = 0` topology.
///
/// Regular patterns are tested against `trials` random MDS product codes;
/// members of the `T_{5x5}(2,2,0)` counterexample orbit are then proven
/// uncorrectable. Non-regular patterns are proven uncorrectable directly.
pub fn classify_pattern(
    topo: &GridTopology,
    e: &ErasurePattern,
    field: &Field,
    trials: usize,
    seed: u64,
) -> Result<Verdict> {
    CertificateSearch::new(topo, field, trials, seed)?.classify(e)
}

/// Summaries for many patterns, in input order.
pub fn classify_all(
    search: &CertificateSearch,
    patterns: &[ErasurePattern],
    exec: Execution,
) -> Result<Vec<VerdictSummary>> {
    exec.map(patterns, |e| search.summarize(e)).into_iter().collect()
}

/// Whether `code` corrects every listed pattern.
pub fn is_mr(code: &LinearCode, emax: &[ErasurePattern], exec: Execution) -> bool {
    exec.all(emax, |e| corrects(code, &e.indices()))
}

/// First trial product code correcting all of `emax`, with its trial index.
pub fn find_mr_code(
    search: &CertificateSearch,
    emax: &[ErasurePattern],
    exec: Execution,
) -> Result<Option<(GridCode, usize)>> {
    for (i, t) in search.trials.iter().enumerate() {
        if is_mr(&t.product, emax, exec) {
            return Ok(Some((GridCode::product(&t.col, &t.row)?, i)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::topology::{counterexample_pattern, enumerate_regular_max};

    #[test]
    fn empty_pattern_needs_one_trial() {
        let t = GridTopology::new(4, 4, 1, 1, 0).unwrap();
        let f = make_field(2, 8, None).unwrap();
        let v = classify_pattern(&t, &ErasurePattern::empty(4, 4), &f, 20, 0).unwrap();
        assert_eq!(v.status(), VerdictStatus::Correctable);
        assert_eq!(v.trials_used(), 1);
    }

    #[test]
    fn counterexample_is_proven() {
        let t = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        let f = make_field(2, 8, None).unwrap();
        let e = counterexample_pattern(&[3, 1, 4, 0, 2], &[2, 0, 1, 4, 3]).unwrap();
        let v = classify_pattern(&t, &e, &f, 5, 1).unwrap();
        assert_eq!(v.status(), VerdictStatus::ProvenUncorrectable);
        assert!(matches!(v.certificate(), Some(Certificate::Kernel { .. })));
    }

    #[test]
    fn non_regular_is_proven_by_shortening() {
        let t = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        let f = make_field(2, 8, None).unwrap();
        let block = ErasurePattern::new(5, 5, (0..3).flat_map(|i| (0..3).map(move |j| (i, j)))).unwrap();
        let search = CertificateSearch::new(&t, &f, 3, 0).unwrap();
        assert_eq!(search.classify(&block).unwrap().status(), VerdictStatus::ProvenUncorrectable);
        assert_eq!(search.summarize(&block).unwrap().certificate_ref, "kernel:shortening");
    }

    #[test]
    fn four_by_four_all_correctable_and_monotone() {
        let t = GridTopology::new(4, 4, 1, 1, 0).unwrap();
        let f = make_field(2, 8, None).unwrap();
        let search = CertificateSearch::new(&t, &f, 20, 0).unwrap();
        let all = enumerate_regular_max(&t, Execution::default()).unwrap();
        let sums = classify_all(&search, &all, Execution::default()).unwrap();
        assert!(sums.iter().all(|s| s.status == VerdictStatus::Correctable));
        for e in all.iter().step_by(97) {
            let v = search.classify(e).unwrap();
            let Some(Certificate::Code(code)) = v.certificate() else {
                panic!("expected a code certificate")
            };
            let idx = e.indices();
            for drop in 0..idx.len() {
                let mut sub = idx.clone();
                sub.remove(drop);
                assert!(corrects(code.code(), &sub));
            }
        }
        let (mr, _) = find_mr_code(&search, &all, Execution::default()).unwrap().unwrap();
        assert!(is_mr(mr.code(), &all, Execution::Sequential));
        let none = CertificateSearch::new(&t, &f, 0, 0).unwrap();
        assert!(find_mr_code(&none, &all, Execution::Sequential).unwrap().is_none());
        assert!(is_mr(mr.code(), &[], Execution::Sequential));
    }

    #[test]
    fn deterministic_given_seed() {
        let t = GridTopology::new(3, 4, 1, 2, 0).unwrap();
        let f = make_field(2, 6, None).unwrap();
        let all = enumerate_regular_max(&t, Execution::Sequential).unwrap();
        let a = classify_all(&CertificateSearch::new(&t, &f, 4, 7).unwrap(), &all, Execution::Sequential).unwrap();
        let b = classify_all(&CertificateSearch::new(&t, &f, 4, 7).unwrap(), &all, Execution::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn field_too_small() {
        let t = GridTopology::new(5, 5, 2, 2, 0).unwrap();
        let f = make_field(2, 2, None).unwrap();
        assert!(matches!(
            CertificateSearch::new(&t, &f, 1, 0),
            Err(TopologyError::FieldTooSmallForMDS { order: 4, needed: 5 })
        ));
    }
}
