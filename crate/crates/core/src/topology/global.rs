//! Global parities on top of an MR code via a Gabidulin inner code.

use std::collections::BTreeSet;

use super::{ErasurePattern, GridTopology, Result, TopologyError};
use crate::codes::{gabidulin, rs_code, CodeError, LinearCode};
use crate::combinatorics::Combinations;
use crate::fmatrix::{EchelonBasis, FMatrix};
use crate::gf::{make_field, Embedding, Field, FieldElement};

/// Every `E' ∪ I` with `E'` from `emax0` and `I` an `h`-subset of the cells
/// outside `E'`, in generation order and with repetitions.
pub fn emax_global_raw(emax0: &[ErasurePattern], topo: &GridTopology) -> Result<Vec<ErasurePattern>> {
    let mut out = Vec::new();
    for e in emax0 {
        if e.shape() != (topo.m, topo.n) {
            return Err(TopologyError::ShapeMismatch {
                expected: (topo.m, topo.n),
                got: e.shape(),
            });
        }
        let free = e.complement_indices();
        for pick in Combinations::new(free.len(), topo.h) {
            let mut idx = e.indices();
            idx.extend(pick.iter().map(|&p| free[p]));
            out.push(ErasurePattern::from_indices(topo.m, topo.n, &idx)?);
        }
    }
    Ok(out)
}

/// [`emax_global_raw`] deduplicated and sorted.
pub fn emax_global(emax0: &[ErasurePattern], topo: &GridTopology) -> Result<Vec<ErasurePattern>> {
    let set: BTreeSet<ErasurePattern> = emax_global_raw(emax0, topo)?.into_iter().collect();
    Ok(set.into_iter().collect())
}

/// `m` diagonal copies of an `[n, n-b]` Reed–Solomon generator with
/// evaluation points `0, 1, …, n-1` (packed values).
pub fn pmds_block_code(m: usize, n: usize, b: usize, field: &Field) -> Result<LinearCode> {
    if b > n {
        return Err(CodeError::InvalidDimension { n, k: 0 }.into());
    }
    if n as u64 > field.order() {
        return Err(CodeError::FieldTooSmall {
            n,
            order: field.order(),
        }
        .into());
    }
    let pts: Vec<FieldElement> = (0..n as u64).map(|v| field.from_raw(v)).collect::<std::result::Result<_, _>>()?;
    let rs = rs_code(field, n, n - b, &pts)?;
    let gen = FMatrix::identity(field, m).kron(rs.generator())?;
    Ok(LinearCode::new(gen)?)
}

/// Extension field `GF(q^s)` of `fq` with `fq` as designated subfield.
pub fn extension_field(fq: &Field, s: usize) -> Result<Field> {
    let t = fq.degree();
    let big = make_field(fq.characteristic(), t * s as u32, None)?;
    Ok(big.with_subfield_degree(t)?)
}

/// `<G_in · G_out>` where `G_out` generates `c_out` (an MR code of
/// `topo` without global parities, over `GF(q)`) lifted to `GF(q^k)`, and
/// `G_in` generates the `[k, k-h]` Gabidulin code with locators
/// `1, x, …, x^(k-1)`.
pub fn add_global_redundancy(c_out: &LinearCode, topo: &GridTopology) -> Result<LinearCode> {
    let k = c_out.k();
    let local = (topo.m - topo.a) * (topo.n - topo.b);
    if k != local || c_out.n() != topo.cells() {
        return Err(CodeError::DimensionMismatch(format!(
            "outer code is [{}, {}], topology needs [{}, {}]",
            c_out.n(),
            k,
            topo.cells(),
            local
        ))
        .into());
    }
    if topo.h > k {
        return Err(CodeError::DimensionMismatch(format!("h={} exceeds k={k}", topo.h)).into());
    }
    let fq = c_out.field();
    let big = extension_field(fq, k)?;
    let x = if big.degree() == 1 { 1 } else { big.characteristic() };
    let mut locators = Vec::with_capacity(k);
    let mut acc = 1u64;
    for _ in 0..k {
        locators.push(big.from_raw(acc)?);
        acc = big.mul(acc, x);
    }
    let inner = gabidulin(&big, k, k - topo.h, &locators)?;
    let lifted = c_out.generator().embed(&Embedding::new(fq, &big)?)?;
    Ok(LinearCode::new(inner.generator().mul(&lifted)?)?)
}

/// Rows completing a parity-check matrix of `outer` to one of `code`
/// (a subcode of `outer`); these are the global parity rows.
pub fn global_parity_rows(outer: &LinearCode, code: &LinearCode) -> Result<FMatrix> {
    if outer.field() != code.field() {
        return Err(CodeError::FieldMismatch.into());
    }
    let f = code.field();
    let mut basis = EchelonBasis::new(f, code.n());
    let local = outer.parity_check();
    for i in 0..local.rows() {
        basis.insert(local.row(i));
    }
    let full = code.parity_check();
    let mut extra = Vec::new();
    for i in 0..full.rows() {
        if basis.insert(full.row(i)) {
            extra.push(full.row(i).to_vec());
        }
    }
    Ok(FMatrix::from_raw_rows(f, code.n(), &extra)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{corrects, is_information_set, is_mds, puncture};
    use crate::par::Execution;
    use crate::topology::enumerate_regular_max;

    #[test]
    fn emax_global_counts() {
        let t0 = GridTopology::new(2, 4, 0, 1, 0).unwrap();
        let emax0 = enumerate_regular_max(&t0, Execution::Sequential).unwrap();
        assert_eq!(emax0.len(), 16);
        assert_eq!(emax_global(&emax0, &t0).unwrap(), emax0);
        let t1 = GridTopology::new(2, 4, 0, 1, 1).unwrap();
        let raw = emax_global_raw(&emax0, &t1).unwrap();
        assert_eq!(raw.len(), 96);
        assert!(raw.iter().all(|e| e.len() == 3));
        let dedup = emax_global(&emax0, &t1).unwrap();
        assert_eq!(dedup.len(), 48);
    }

    #[test]
    fn pmds_block_examples() {
        let f8 = make_field(2, 3, None).unwrap();
        let single = pmds_block_code(1, 4, 1, &f8).unwrap();
        assert!(is_mds(&single).unwrap());
        let c = pmds_block_code(2, 4, 1, &f8).unwrap();
        assert_eq!((c.n(), c.k()), (8, 6));
        let mut count = 0;
        for r0 in 0..5 {
            for r1 in 0..5 {
                let mut e = Vec::new();
                if r0 < 4 {
                    e.push(r0);
                }
                if r1 < 4 {
                    e.push(4 + r1);
                }
                assert!(corrects(&c, &e));
                count += 1;
            }
        }
        assert_eq!(count, 25);
        assert!(!corrects(&c, &[0, 1]));
        // all of block 1 and none of block 2 is not an information set
        assert!(!is_information_set(&c, &[0, 1, 2, 3, 5, 6]).unwrap_or(true));
    }

    #[test]
    fn global_redundancy_on_small_grid() {
        let f8 = make_field(2, 3, None).unwrap();
        let t0 = GridTopology::new(2, 4, 0, 1, 0).unwrap();
        let t1 = GridTopology::new(2, 4, 0, 1, 1).unwrap();
        let c_out = pmds_block_code(2, 4, 1, &f8).unwrap();
        let zero_h = add_global_redundancy(&c_out, &t0).unwrap();
        let lifted = LinearCode::new(
            c_out.generator().embed(&Embedding::new(&f8, zero_h.field()).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(zero_h.same_code(&lifted));

        let code = add_global_redundancy(&c_out, &t1).unwrap();
        assert_eq!(code.k(), 5);
        assert_eq!(code.field().order(), 1 << 18);
        let emax0 = enumerate_regular_max(&t0, Execution::Sequential).unwrap();
        for e in emax_global_raw(&emax0, &t1).unwrap() {
            assert!(corrects(&code, &e.indices()));
        }
        for e in &emax0 {
            let r = puncture(&code, &e.indices()).unwrap();
            assert_eq!((r.n(), r.k()), (6, 5));
            assert!(is_mds(&r).unwrap());
        }
        let h = global_parity_rows(&lifted, &code).unwrap();
        assert_eq!(h.rows(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        let f8 = make_field(2, 3, None).unwrap();
        let t = GridTopology::new(2, 4, 0, 2, 1).unwrap();
        let c_out = pmds_block_code(2, 4, 1, &f8).unwrap();
        assert!(matches!(
            add_global_redundancy(&c_out, &t),
            Err(TopologyError::Code(CodeError::DimensionMismatch(_)))
        ));
    }
}
