use anyhow::{anyhow, bail, Context, Result};
use mrgrid::{make_field, Field};

/// `p^d` or `p^d:hex`, where `hex` is the modulus packed as an integer
/// whose base-`p` digits are the coefficients (lowest degree first). A bare
/// `p` means `p^1`.
pub fn parse_field(s: &str) -> Result<Field> {
    let (body, hex) = match s.split_once(':') {
        Some((b, h)) => (b, Some(h)),
        None => (s, None),
    };
    let (p, d) = match body.split_once('^') {
        Some((p, d)) => (p.trim().parse::<u64>()?, d.trim().parse::<u32>()?),
        None => (body.trim().parse::<u64>()?, 1),
    };
    let modulus = match hex {
        None => None,
        Some(h) => {
            let h = h.trim().trim_start_matches("0x");
            let mut v = u64::from_str_radix(h, 16).with_context(|| format!("bad modulus {h:?}"))?;
            let mut coeffs = Vec::new();
            while v > 0 {
                coeffs.push(v % p.max(2));
                v /= p.max(2);
            }
            if coeffs.len() != d as usize + 1 {
                bail!("modulus {h:?} does not have degree {d}");
            }
            Some(coeffs)
        }
    };
    make_field(p, d, modulus.as_deref()).map_err(|e| anyhow!("field {s:?}: {e}"))
}

/// `MxN:a,b[,h]` without topology validation.
pub fn parse_shape(s: &str) -> Result<(usize, usize, usize, usize, usize)> {
    let bad = || anyhow!("cannot parse topology {s:?}");
    let (shape, params) = s.split_once(':').ok_or_else(bad)?;
    let (m, n) = shape.split_once(['x', 'X']).ok_or_else(bad)?;
    let nums: Vec<usize> = params
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    let (a, b, h) = match nums.as_slice() {
        [a, b] => (*a, *b, 0),
        [a, b, h] => (*a, *b, *h),
        _ => return Err(bad()),
    };
    Ok((m.trim().parse()?, n.trim().parse()?, a, b, h))
}
