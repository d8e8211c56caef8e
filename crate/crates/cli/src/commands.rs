use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mrgrid::codes::{
    corrects, dual, is_mds_capped, product_code, puncture, random_grs, CodeJson, LinearCode,
};
use mrgrid::gf::Embedding;
use mrgrid::topology::{
    add_global_redundancy, classify_all, counterexample_orbit, counterexample_pattern,
    emax_global_raw, enumerate_regular_max, find_mr_code, global_parity_rows, is_mr, is_regular,
    kernel_codeword_traced, lift_extend, lift_puncture, max_pattern_size, pmds_block_code,
    smaller_maximal_regular_exists, tp_correctable_check, verify_kernel_array, CertificateSearch,
    ErasurePattern, GridTopology, PatternJson, VerdictStatus,
};
use mrgrid::{Execution, Field};

use crate::parse::{parse_field, parse_shape};

pub struct Context {
    pub exec: Execution,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Context {
    pub fn new(jobs: Option<usize>) -> Result<Self> {
        #[cfg(feature = "parallel")]
        {
            match jobs {
                Some(0) => bail!("--jobs must be positive"),
                Some(1) => Ok(Context {
                    exec: Execution::Sequential,
                    pool: None,
                }),
                Some(n) => Ok(Context {
                    exec: Execution::Parallel,
                    pool: Some(rayon::ThreadPoolBuilder::new().num_threads(n).build()?),
                }),
                None => Ok(Context {
                    exec: Execution::Parallel,
                    pool: None,
                }),
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = jobs;
            Ok(Context {
                exec: Execution::Sequential,
            })
        }
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(f);
        }
        f()
    }
}

/// Compact JSON with sorted keys.
fn canonical(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string(&serde_json::to_value(value)?)?)
}

/// Indented JSON with sorted keys.
fn canonical_pretty(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(&serde_json::to_value(value)?)?)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Census {
    topology: GridTopology,
    max_pattern_size: usize,
    count: usize,
    /// Cells as `r,c;r,c;…`, 1-based.
    patterns: Vec<String>,
    /// Positions in `patterns` of the 5x5 counterexample orbit.
    orbit_ids: Vec<usize>,
    smaller_maximal_regular: Option<bool>,
}

impl Census {
    fn build(topo: &GridTopology, exec: Execution) -> Result<Self> {
        let topo = topo.without_global();
        let all = enumerate_regular_max(&topo, exec)?;
        let orbit_ids = if (topo.m, topo.n, topo.a, topo.b) == (5, 5, 2, 2) {
            let orbit: BTreeSet<ErasurePattern> = counterexample_orbit().into_iter().collect();
            all.iter()
                .enumerate()
                .filter(|(_, e)| orbit.contains(*e))
                .map(|(i, _)| i)
                .collect()
        } else {
            Vec::new()
        };
        Ok(Census {
            topology: topo,
            max_pattern_size: max_pattern_size(&topo),
            count: all.len(),
            patterns: all.iter().map(ErasurePattern::cell_string).collect(),
            orbit_ids,
            smaller_maximal_regular: smaller_maximal_regular_exists(&topo),
        })
    }

    fn patterns(&self) -> Result<Vec<ErasurePattern>> {
        self.patterns
            .iter()
            .map(|s| ErasurePattern::parse_cells(self.topology.m, self.topology.n, s).map_err(Into::into))
            .collect()
    }
}

fn cache_path(topo: &GridTopology) -> Option<PathBuf> {
    let dir = std::env::var_os("MRGRID_CACHE")?;
    Some(PathBuf::from(dir).join(format!(
        "census-{}x{}-{}-{}.json",
        topo.m, topo.n, topo.a, topo.b
    )))
}

fn load_census(path: &Path) -> Result<Census> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The census for `topo`, reusing `MRGRID_CACHE` when possible.
fn census_for(topo: &GridTopology, exec: Execution) -> Result<Census> {
    let base = topo.without_global();
    if let Some(path) = cache_path(&base) {
        if let Ok(c) = load_census(&path) {
            if c.topology == base {
                return Ok(c);
            }
        }
        let c = Census::build(&base, exec)?;
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, canonical(&c)?)?;
        return Ok(c);
    }
    Census::build(&base, exec)
}

pub fn enumerate(ctx: &Context, topo: &str, out: Option<&Path>) -> Result<bool> {
    let topo: GridTopology = topo.parse()?;
    let census = census_for(&topo, ctx.exec)?;
    write_out(out, &(canonical(&census)? + "\n"))?;
    eprintln!(
        "{}: {} regular patterns of size {}",
        census.topology, census.count, census.max_pattern_size
    );
    let mut ok = true;
    if (topo.m, topo.n, topo.a, topo.b) == (5, 5, 2, 2) {
        eprintln!("counterexample orbit members flagged: {}", census.orbit_ids.len());
        ok &= census.orbit_ids.len() == 450;
    }
    if census.smaller_maximal_regular == Some(true) {
        eprintln!("note: maximal regular patterns of smaller size exist");
    }
    Ok(ok)
}

#[derive(Serialize)]
struct VerdictRow<'a> {
    pattern_id: usize,
    cells: &'a str,
    regular: bool,
    verdict: &'static str,
    trials: usize,
    certificate_ref: &'a str,
    seed: u64,
}

pub fn classify(
    ctx: &Context,
    topo: &str,
    field: &str,
    trials: usize,
    seed: u64,
    census_in: Option<&Path>,
    out: Option<&Path>,
) -> Result<bool> {
    let topo: GridTopology = topo.parse()?;
    let field = parse_field(field)?;
    let census = match census_in {
        Some(p) => load_census(p)?,
        None => census_for(&topo, ctx.exec)?,
    };
    if (census.topology.m, census.topology.n) != (topo.m, topo.n) {
        bail!("census is for {}, not {}", census.topology, topo);
    }
    let patterns = census.patterns()?;
    let search = CertificateSearch::new(&topo, &field, trials, seed)?;
    let sums = classify_all(&search, &patterns, ctx.exec)?;

    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record([
        "pattern_id",
        "cells",
        "regular",
        "verdict",
        "trials",
        "certificate_ref",
        "seed",
    ])?;
    for (i, (e, s)) in patterns.iter().zip(&sums).enumerate() {
        w.serialize(VerdictRow {
            pattern_id: i,
            cells: &census.patterns[i],
            regular: is_regular(&topo, e),
            verdict: s.status.as_str(),
            trials: s.trials_used,
            certificate_ref: &s.certificate_ref,
            seed,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow!("csv: {e}"))?;
    write_out(out, std::str::from_utf8(&bytes)?)?;

    let count = |st: VerdictStatus| sums.iter().filter(|s| s.status == st).count();
    eprintln!(
        "{topo}: {} patterns, {} correctable, {} proven uncorrectable, {} without certificate",
        sums.len(),
        count(VerdictStatus::Correctable),
        count(VerdictStatus::ProvenUncorrectable),
        count(VerdictStatus::NoCertificateFound)
    );
    Ok(true)
}

fn coeff_matrix(field: &Field, m: &mrgrid::FMatrix) -> Vec<Vec<Vec<u64>>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&v| field.unpack(v)).collect())
        .collect()
}

pub fn counterexample(field: &str, seed: u64, pairs: usize, out: Option<&Path>) -> Result<bool> {
    let field = parse_field(field)?;
    if field.order() < 5 {
        bail!("field {field} is too small for [5,3] MDS codes");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::with_capacity(pairs);
    let mut valid = 0;
    for index in 0..pairs {
        let col = random_grs(&field, 5, 3, &mut rng)?;
        let row = random_grs(&field, 5, 3, &mut rng)?;
        let mut rp: Vec<usize> = (0..5).collect();
        let mut cp: Vec<usize> = (0..5).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let gamma2 = field.from_raw(rng.gen_range(1..field.order()))?;
        let pattern = counterexample_pattern(&rp, &cp)?;
        let (array, steps) = kernel_codeword_traced(&col, &row, &gamma2, &rp, &cp)?;
        let check = verify_kernel_array(&col, &row, &array, &pattern);
        let uncorrectable = !corrects(&product_code(&col, &row)?, &pattern.indices());
        let ok = check.all() && uncorrectable;
        valid += ok as usize;
        let steps: Vec<Value> = steps
            .iter()
            .map(|s| {
                json!({
                    "label": s.label.to_string(),
                    "description": s.description,
                    "cells": s.cells.iter().map(|r| r.iter().map(|c| c.map(|v| field.unpack(v))).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        results.push(json!({
            "index": index,
            "row_perm": rp.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "col_perm": cp.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "pattern": pattern.to_json(),
            "gamma2": gamma2.coeffs(),
            "col_gen": coeff_matrix(&field, col.generator()),
            "row_gen": coeff_matrix(&field, row.generator()),
            "steps": steps,
            "array": coeff_matrix(&field, &array),
            "checks": {
                "nonzero": check.nonzero,
                "vanishes_off_pattern": check.vanishes_off_pattern,
                "support_is_pattern": check.support_is_pattern,
                "rows_in_row_code": check.rows_in_row_code,
                "cols_in_col_code": check.cols_in_col_code,
                "product_code_fails_to_correct": uncorrectable,
            },
            "valid": ok,
        }));
    }
    let report = json!({
        "field": field.spec(),
        "seed": seed,
        "pairs": pairs,
        "valid": valid,
        "results": results,
    });
    write_out(out, &(canonical_pretty(&report)? + "\n"))?;
    eprintln!("{valid}/{pairs} valid kernel witnesses over {field}");
    Ok(valid == pairs)
}

/// Patterns of the `h = 0` census that receive a certificate.
fn certified_emax(
    ctx: &Context,
    topo: &GridTopology,
    field: &Field,
    trials: usize,
    seed: u64,
) -> Result<(Vec<ErasurePattern>, usize)> {
    let base = topo.without_global();
    let census = census_for(&base, ctx.exec)?;
    let patterns = census.patterns()?;
    let search = CertificateSearch::new(&base, field, trials, seed)?;
    let sums = classify_all(&search, &patterns, ctx.exec)?;
    let open = sums
        .iter()
        .filter(|s| s.status == VerdictStatus::NoCertificateFound)
        .count();
    let emax = patterns
        .into_iter()
        .zip(&sums)
        .filter(|(_, s)| s.status == VerdictStatus::Correctable)
        .map(|(e, _)| e)
        .collect();
    Ok((emax, open))
}

#[allow(clippy::too_many_arguments)]
pub fn construct(
    ctx: &Context,
    topo: &str,
    base: &str,
    field: &str,
    trials: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let topo: GridTopology = topo.parse()?;
    let c_out = if base == "pmds" {
        if topo.a != 0 {
            bail!("the pmds base needs a = 0");
        }
        pmds_block_code(topo.m, topo.n, topo.b, &parse_field(field)?)?
    } else {
        let text = fs::read_to_string(base).with_context(|| format!("reading {base}"))?;
        LinearCode::from_json(&serde_json::from_str::<CodeJson>(&text)?)?
    };
    let search_field = parse_field("2^13")?;
    let (emax0, open) = certified_emax(ctx, &topo, &search_field, trials, seed)?;
    let base_is_mr = is_mr(&c_out, &emax0, ctx.exec);

    let code = add_global_redundancy(&c_out, &topo)?;
    let lifted = LinearCode::new(c_out.generator().embed(&Embedding::new(c_out.field(), code.field())?)?)?;
    let h_global = global_parity_rows(&lifted, &code)?;
    let patterns = emax_global_raw(&emax0, &topo)?;
    let flags = ctx.exec.map(&patterns, |e| corrects(&code, &e.indices()));
    let corrected = flags.iter().filter(|&&f| f).count();
    let unique: BTreeSet<&ErasurePattern> = patterns.iter().collect();
    let restrictions_mds = emax0.iter().all(|e| {
        puncture(&code, &e.indices())
            .ok()
            .and_then(|r| is_mds_capped(&r, 1_000_000).ok().map(|m| m && r.n() - r.k() == topo.h))
            .unwrap_or(false)
    });
    let expected = topo.mr_dimension();

    let mut code_json = code.to_json();
    code_json.topo = Some(topo);
    code_json.h_global = Some(coeff_matrix(code.field(), &h_global));
    let matrix: Vec<Value> = patterns
        .iter()
        .zip(&flags)
        .map(|(e, &f)| json!({"cells": e.cell_string(), "corrected": f}))
        .collect();
    let ok = base_is_mr && corrected == patterns.len() && code.k() == expected && restrictions_mds;
    let report = json!({
        "topology": topo,
        "base": base,
        "base_field": c_out.field().spec(),
        "base_is_mr": base_is_mr,
        "base_patterns": emax0.len(),
        "base_patterns_without_certificate": open,
        "dimension": code.k(),
        "expected_dimension": expected,
        "patterns_raw": patterns.len(),
        "patterns_unique": unique.len(),
        "corrected": corrected,
        "restrictions_mds": restrictions_mds,
        "global_rows": h_global.rows(),
        "code": code_json,
        "matrix": matrix,
        "verified": ok,
    });
    write_out(out, &(canonical_pretty(&report)? + "\n"))?;
    eprintln!(
        "{topo}: dimension {} (expected {expected}), {corrected}/{} patterns corrected, base MR: {base_is_mr}",
        code.k(),
        patterns.len()
    );
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
pub fn tp(
    ctx: &Context,
    topo: &str,
    field: &str,
    trials: usize,
    seed: u64,
    random_instance: bool,
    out: Option<&Path>,
) -> Result<bool> {
    let (m, n, a, b, _) = parse_shape(topo)?;
    if a > m || b > n {
        bail!("need a <= m and b <= n");
    }
    let field = parse_field(field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    if a == m || b == n {
        let col = if a == m {
            LinearCode::whole_space(&field, m)
        } else {
            LinearCode::random(&field, m, a, &mut rng)?
        };
        let row = if b == n {
            LinearCode::whole_space(&field, n)
        } else {
            LinearCode::random(&field, n, b, &mut rng)?
        };
        let report = tp_correctable_check(&col, &row, &[], ctx.exec)?;
        let doc = json!({"shape": [m, n, a, b], "mode": "vacuous", "seed": seed, "report": report});
        write_out(out, &(canonical_pretty(&doc)? + "\n"))?;
        eprintln!("vacuous case: the tensor-product code is the whole space");
        return Ok(report.subset_holds);
    }

    let grid = GridTopology::new(m, n, a, b, 0)?;
    let (emax0, _) = certified_emax(ctx, &grid, &field, trials, seed)?;
    let (col, row, mode, trial) = if random_instance {
        let col = LinearCode::random(&field, m, a, &mut rng)?;
        let row = LinearCode::random(&field, n, b, &mut rng)?;
        (col, row, "random", None)
    } else {
        let search = CertificateSearch::new(&grid, &field, trials, seed)?;
        match find_mr_code(&search, &emax0, ctx.exec)? {
            Some((mr, t)) => (dual(mr.col_code()), dual(mr.row_code()), "mr-certificate", Some(t)),
            None => {
                let doc = json!({"topology": grid, "mode": "mr-certificate", "certificate_trial": null, "seed": seed});
                write_out(out, &(canonical_pretty(&doc)? + "\n"))?;
                eprintln!("no MR certificate within {trials} trials");
                return Ok(false);
            }
        }
    };
    let report = tp_correctable_check(&col, &row, &emax0, ctx.exec)?;
    let doc = json!({
        "topology": grid,
        "field": field.spec(),
        "mode": mode,
        "certificate_trial": trial,
        "seed": seed,
        "report": report,
    });
    write_out(out, &(canonical_pretty(&doc)? + "\n"))?;
    eprintln!(
        "{grid} ({mode}): subset {}, equality {}, dual MR {}",
        report.subset_holds, report.equality, report.dual_is_mr
    );
    Ok(report.subset_holds && (random_instance || report.equality))
}

pub fn lift(
    pattern: Option<&Path>,
    topo: &str,
    puncture_mode: bool,
    delta: usize,
    gamma: usize,
    pad: bool,
    out: Option<&Path>,
) -> Result<bool> {
    let base: GridTopology = topo.parse()?;
    let e = match pattern {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ErasurePattern::from_json(&serde_json::from_str::<PatternJson>(&text)?)?
        }
        None => counterexample_pattern(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4])?,
    };
    let lifted = if puncture_mode {
        lift_puncture(&e, &base, delta, gamma)?
    } else {
        lift_extend(&e, &base, delta, gamma, pad)?
    };
    let regular = is_regular(&lifted.topology, &lifted.pattern);
    let doc = json!({
        "mode": if puncture_mode { "puncture" } else { "extend" },
        "delta": delta,
        "gamma": gamma,
        "padded": pad && !puncture_mode && !lifted.padding_fell_back,
        "padding_fell_back": lifted.padding_fell_back,
        "topology": lifted.topology,
        "pattern": lifted.pattern.to_json(),
        "regular": regular,
    });
    write_out(out, &(canonical_pretty(&doc)? + "\n"))?;
    eprintln!(
        "lifted to {} with {} cells, regular: {regular}",
        lifted.topology,
        lifted.pattern.len()
    );
    Ok(regular && !lifted.padding_fell_back)
}
