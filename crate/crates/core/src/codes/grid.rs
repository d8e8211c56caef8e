use super::{dual, product_code, CodeError, CodeJson, LinearCode, Result};
use crate::fmatrix::FMatrix;
use crate::topology::GridTopology;

/// A code of the topology `T_{m x n}(a, b, h)`: the kernel of the local
/// parity checks of `col ⊗ row` stacked over `h` global parity rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCode {
    topo: GridTopology,
    col: LinearCode,
    row: LinearCode,
    h_global: FMatrix,
    code: LinearCode,
}

impl GridCode {
    /// The plain product code (`h = 0`).
    pub fn product(col: &LinearCode, row: &LinearCode) -> Result<Self> {
        let h = FMatrix::zeros(col.field(), 0, col.n() * row.n());
        grid_code(col, row, &h)
    }

    pub fn topology(&self) -> &GridTopology {
        &self.topo
    }

    pub fn col_code(&self) -> &LinearCode {
        &self.col
    }

    pub fn row_code(&self) -> &LinearCode {
        &self.row
    }

    pub fn h_global(&self) -> &FMatrix {
        &self.h_global
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// Parity-check matrix of `col ⊗ row`.
    pub fn local_parity_check(&self) -> FMatrix {
        self.col
            .generator()
            .kron(self.row.generator())
            .expect("same field")
            .right_kernel()
    }

    pub fn to_json(&self) -> CodeJson {
        let mut json = self.code.to_json();
        let f = self.code.field();
        json.topo = Some(self.topo);
        json.h_global = Some(
            (0..self.h_global.rows())
                .map(|i| self.h_global.row(i).iter().map(|&v| f.unpack(v)).collect())
                .collect(),
        );
        json
    }
}

/// Builds the grid code for `col` (`[m, m-a]`), `row` (`[n, n-b]`) and an
/// `h x mn` global parity block.
pub fn grid_code(col: &LinearCode, row: &LinearCode, h_global: &FMatrix) -> Result<GridCode> {
    if col.field() != row.field() || col.field() != h_global.field() {
        return Err(CodeError::FieldMismatch);
    }
    let (m, n) = (col.n(), row.n());
    if h_global.cols() != m * n && h_global.rows() > 0 {
        return Err(CodeError::ShapeMismatch(format!(
            "global parity block has {} columns, grid has {} cells",
            h_global.cols(),
            m * n
        )));
    }
    let topo = GridTopology::new(m, n, m - col.k(), n - row.k(), h_global.rows())
        .map_err(|e| CodeError::InvalidTopology(e.to_string()))?;
    let product = product_code(col, row)?;
    let code = if h_global.rows() == 0 {
        product
    } else {
        let stacked = dual(&product).generator().vstack(h_global)?;
        LinearCode {
            gen: stacked.right_kernel(),
        }
    };
    Ok(GridCode {
        topo,
        col: col.clone(),
        row: row.clone(),
        h_global: if h_global.rows() == 0 {
            FMatrix::zeros(col.field(), 0, m * n)
        } else {
            h_global.clone()
        },
        code,
    })
}

/// `<H_col ⊗ H_row>^⊥` for a `[m, a]` column code and `[n, b]` row code.
pub fn tensor_product_code(col: &LinearCode, row: &LinearCode) -> Result<LinearCode> {
    if col.field() != row.field() {
        return Err(CodeError::FieldMismatch);
    }
    let checks = col.parity_check().kron(&row.parity_check())?;
    let checks = if checks.rows() == 0 {
        FMatrix::zeros(col.field(), 0, col.n() * row.n())
    } else {
        checks
    };
    Ok(LinearCode {
        gen: checks.right_kernel(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{corrects, rs_code};
    use crate::gf::{make_field, Field, FieldElement};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rs(f: &Field, n: usize, k: usize, pts: &[u64]) -> LinearCode {
        let e: Vec<FieldElement> = pts.iter().map(|&v| f.from_raw(v).unwrap()).collect();
        rs_code(f, n, k, &e).unwrap()
    }

    #[test]
    fn h_zero_is_product() {
        let f = make_field(2, 3, None).unwrap();
        let c = rs(&f, 4, 3, &[1, 2, 3, 4]);
        let r = rs(&f, 5, 3, &[1, 2, 3, 4, 5]);
        let g = GridCode::product(&c, &r).unwrap();
        assert!(g.code().same_code(&product_code(&c, &r).unwrap()));
        assert_eq!(
            (g.topology().a, g.topology().b, g.topology().h),
            (1, 2, 0)
        );
    }

    #[test]
    fn redundant_global_row_keeps_dimension() {
        let f = make_field(2, 3, None).unwrap();
        let c = rs(&f, 3, 2, &[1, 2, 3]);
        let r = rs(&f, 3, 2, &[1, 2, 3]);
        let base = GridCode::product(&c, &r).unwrap();
        let local = base.local_parity_check();
        let dup = local.select_rows(&[0]).unwrap();
        let g = grid_code(&c, &r, &dup).unwrap();
        assert_eq!(g.code().k(), base.code().k());
    }

    #[test]
    fn random_global_rows_drop_dimension() {
        let f = make_field(2, 10, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = rs(&f, 4, 3, &[1, 2, 3, 4]);
        let r = rs(&f, 4, 3, &[5, 6, 7, 8]);
        for h in 0..=6 {
            let data = (0..h * 16).map(|_| rng.gen_range(0..f.order())).collect();
            let hg = FMatrix::from_raw(&f, h, 16, data).unwrap();
            let g = grid_code(&c, &r, &hg).unwrap();
            assert_eq!(g.code().k(), 9 - h);
        }
        let bad = FMatrix::zeros(&f, 1, 15);
        assert!(matches!(grid_code(&c, &r, &bad), Err(CodeError::ShapeMismatch(_))));
    }

    #[test]
    fn tensor_product_dimensions_and_dual() {
        let f = make_field(2, 4, None).unwrap();
        let whole = LinearCode::whole_space(&f, 3);
        let row = rs(&f, 4, 2, &[1, 2, 3, 4]);
        let tp = tensor_product_code(&whole, &row).unwrap();
        assert!(tp.same_code(&LinearCode::whole_space(&f, 12)));
        assert!(corrects(&tp, &[]));

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let col = LinearCode::random(&f, 4, 1, &mut rng).unwrap();
            let row = LinearCode::random(&f, 4, 1, &mut rng).unwrap();
            let tp = tensor_product_code(&col, &row).unwrap();
            assert_eq!((tp.n(), tp.k()), (16, 7));
            let expected = product_code(
                &LinearCode::from_span(&col.parity_check()),
                &LinearCode::from_span(&row.parity_check()),
            )
            .unwrap();
            assert!(dual(&tp).same_code(&expected));
        }
    }
}
