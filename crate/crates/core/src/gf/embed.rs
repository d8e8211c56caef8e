//! Embedding GF(q) into the designated subfield of GF(q^s).

use super::{Field, FieldElement, GfError, Result};

/// A fixed injective ring homomorphism from a field `GF(p^t)` into a field
/// whose designated subfield has degree `t`.
///
/// The image of the generator `x` is the smallest (by packed value) root of
/// the source modulus inside the target's subfield, so the map only depends
/// on the pair of fields.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `x^i`, `i < deg(source)`.
    powers: Vec<u64>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        if source.characteristic() != target.characteristic() {
            return Err(GfError::IncompatibleSubfield);
        }
        let t = match target.subfield_degree() {
            Some(t) => t,
            None if source.degree() == 1 => 1,
            None => return Err(GfError::IncompatibleSubfield),
        };
        if t != source.degree() {
            return Err(GfError::IncompatibleSubfield);
        }
        let root = if source.degree() == 1 {
            0
        } else {
            let modulus = source.modulus();
            subfield_elements(target, t)
                .into_iter()
                .filter(|&y| eval_prime_poly(target, modulus, y) == 0)
                .min()
                .ok_or(GfError::IncompatibleSubfield)?
        };
        let mut powers = Vec::with_capacity(source.degree() as usize);
        let mut acc = 1u64;
        for _ in 0..source.degree() {
            powers.push(acc);
            acc = target.mul(acc, root);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply_raw(&self, v: u64) -> u64 {
        self.source
            .unpack(v)
            .iter()
            .zip(&self.powers)
            .fold(0u64, |acc, (&c, &pw)| {
                self.target.add(acc, self.target.mul(c, pw))
            })
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.source {
            return Err(GfError::FieldMismatch);
        }
        self.target.from_raw(self.apply_raw(x.raw()))
    }
}

/// Embeds a single element; builds the embedding for `(x.field(), target)`.
pub fn embed(x: &FieldElement, target: &Field) -> Result<FieldElement> {
    Embedding::new(x.field(), target)?.apply(x)
}

/// Evaluates a polynomial with GF(p) coefficients at `y`.
fn eval_prime_poly(field: &Field, coeffs: &[u64], y: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| field.add(field.mul(acc, y), c))
}

/// All elements of the degree-`t` subfield of `field`.
///
/// The trace onto the subfield is GF(p)-linear and surjective, so the traces
/// of the power basis span the subfield over GF(p); we pick `t` independent
/// ones and enumerate their GF(p)-combinations.
fn subfield_elements(field: &Field, t: u32) -> Vec<u64> {
    let p = field.characteristic();
    let q = p.pow(t);
    let s = field.degree() / t;
    let trace = |y: u64| {
        let mut acc = 0u64;
        let mut z = y;
        for _ in 0..s {
            acc = field.add(acc, z);
            z = field.pow(z, q);
        }
        acc
    };

    // GF(p)-independent traces, kept in reduced form for the span test.
    let mut basis: Vec<u64> = Vec::new();
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut xj = 1u64;
    for _ in 0..field.degree() {
        let tr = trace(xj);
        xj = field.mul(xj, x_value(field));
        let mut v = field.unpack(tr);
        for (piv, row) in &echelon {
            let f = v[*piv];
            if f != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = super::poly::sub_mod_p(*a, super::poly::mul_mod_p(f, b, p), p);
                }
            }
        }
        if let Some(piv) = v.iter().position(|&c| c != 0) {
            let inv = super::poly::inv_mod_p(v[piv], p);
            for c in v.iter_mut() {
                *c = super::poly::mul_mod_p(*c, inv, p);
            }
            echelon.push((piv, v));
            basis.push(tr);
            if basis.len() == t as usize {
                break;
            }
        }
    }

    let mut out = Vec::with_capacity(q as usize);
    for combo in 0..q {
        let mut c = combo;
        let mut y = 0u64;
        for &b in &basis {
            y = field.add(y, field.mul(c % p, b));
            c /= p;
        }
        out.push(y);
    }
    out
}

/// Packed value of the polynomial `x`.
fn x_value(field: &Field) -> u64 {
    if field.degree() == 1 {
        // GF(p) has no `x`; any generator of the additive span works
        1
    } else {
        field.characteristic()
    }
}
