//! Exact arithmetic in finite fields GF(p^d).
//!
//! A [`Field`] is built from a prime `p`, a degree `d` and a monic irreducible
//! modulus. Elements are stored packed as base-`p` integers, so the
//! coefficient of `x^i` contributes `c_i * p^i`; for `p = 2` this is the usual
//! bit-packed representation. Fields of order up to 2^16 use log/exp tables,
//! larger binary fields use shift-and-add multiplication, and everything else
//! falls back to schoolbook polynomial arithmetic.
//!
//! Extension towers are flattened: GF(q^s) with `q = p^t` is the field
//! GF(p^(t*s)) carrying a designated subfield degree `t`, which drives
//! [`Field::frobenius`] and [`Embedding`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod embed;
pub(crate) mod poly;

pub use embed::{embed, Embedding};

const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u64>),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{d} does not fit in 64 bits")]
    FieldTooLarge { p: u64, d: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field has no designated subfield")]
    NoDesignatedSubfield,
    #[error("subfield degree {sub} does not divide extension degree {degree}")]
    InvalidSubfieldDegree { sub: u32, degree: u32 },
    #[error("source field is not the designated subfield of the target")]
    IncompatibleSubfield,
    #[error("invalid element: {0}")]
    InvalidElement(String),
}

pub type Result<T> = std::result::Result<T, GfError>;

/// Serializable description of a field: `{"p":2,"d":3,"modulus":[1,1,0,1]}`.
///
/// The modulus is little-endian and includes the leading 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub d: u32,
    pub modulus: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield_degree: Option<u32>,
}

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct Core {
    p: u64,
    d: u32,
    modulus: Vec<u64>,
    order: u64,
    /// Low `d` bits of the modulus, used by the binary kernel.
    reduce_bits: u64,
    tables: Option<Tables>,
}

/// A finite field. Cheap to clone; arithmetic tables are shared.
#[derive(Clone)]
pub struct Field {
    core: Arc<Core>,
    subfield_degree: Option<u32>,
}

/// Builds GF(p^d). Without a modulus the lexicographically smallest monic
/// irreducible polynomial of degree `d` is used, ordering candidates by their
/// packed value.
pub fn make_field(p: u64, d: u32, modulus: Option<&[u64]>) -> Result<Field> {
    Field::new(p, d, modulus)
}

impl Field {
    pub fn new(p: u64, d: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !poly::is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        if d == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = p.checked_pow(d).ok_or(GfError::FieldTooLarge { p, d })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d as usize + 1 || m[d as usize] != 1 {
                    return Err(GfError::InvalidModulus(format!(
                        "expected {} little-endian coefficients ending in 1, got {:?}",
                        d + 1,
                        m
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(GfError::InvalidModulus(format!(
                        "coefficients must lie in [0, {})",
                        p
                    )));
                }
                if !poly::is_irreducible(m, p) {
                    return Err(GfError::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, d),
        };
        let reduce_bits = if p == 2 {
            modulus[..d as usize]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let mut core = Core {
            p,
            d,
            modulus,
            order,
            reduce_bits,
            tables: None,
        };
        if d > 1 && order <= TABLE_LIMIT {
            core.tables = Some(build_tables(&core));
        }
        Ok(Field {
            core: Arc::new(core),
            subfield_degree: None,
        })
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let f = Field::new(spec.p, spec.d, Some(&spec.modulus))?;
        match spec.subfield_degree {
            Some(t) => f.with_subfield_degree(t),
            None => Ok(f),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.core.p,
            d: self.core.d,
            modulus: self.core.modulus.clone(),
            subfield_degree: self.subfield_degree,
        }
    }

    /// Marks GF(p^t) as the designated subfield `F_q` of this field.
    pub fn with_subfield_degree(&self, t: u32) -> Result<Self> {
        if t == 0 || !self.core.d.is_multiple_of(t) {
            return Err(GfError::InvalidSubfieldDegree {
                sub: t,
                degree: self.core.d,
            });
        }
        Ok(Field {
            core: Arc::clone(&self.core),
            subfield_degree: Some(t),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.core.p
    }

    pub fn degree(&self) -> u32 {
        self.core.d
    }

    pub fn order(&self) -> u64 {
        self.core.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.core.modulus
    }

    pub fn subfield_degree(&self) -> Option<u32> {
        self.subfield_degree
    }

    /// Order `q` of the designated subfield.
    pub fn subfield_order(&self) -> Option<u64> {
        self.subfield_degree.map(|t| self.core.p.pow(t))
    }

    /// Extension degree `s` over the designated subfield.
    pub fn extension_over_subfield(&self) -> Option<u32> {
        self.subfield_degree.map(|t| self.core.d / t)
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        let value = self.pack(coeffs)?;
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    pub fn from_raw(&self, value: u64) -> Result<FieldElement> {
        if value >= self.core.order {
            return Err(GfError::InvalidElement(format!(
                "raw value {value} out of range for order {}",
                self.core.order
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    pub fn zero_element(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one_element(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 1,
        }
    }

    /// Packs little-endian coefficients into the raw representation.
    pub fn pack(&self, coeffs: &[u64]) -> Result<u64> {
        let p = self.core.p;
        if coeffs.len() > self.core.d as usize {
            return Err(GfError::InvalidElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.core.d
            )));
        }
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(GfError::InvalidElement(format!(
                    "coefficient {c} not reduced mod {p}"
                )));
            }
            value = value * p + c;
        }
        Ok(value)
    }

    /// Exactly `d` little-endian coefficients.
    pub fn unpack(&self, mut value: u64) -> Vec<u64> {
        let p = self.core.p;
        (0..self.core.d)
            .map(|_| {
                let c = value % p;
                value /= p;
                c
            })
            .collect()
    }

    // Raw arithmetic on packed values. Callers guarantee operands are < order.

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let c = &self.core;
        if c.p == 2 {
            a ^ b
        } else if c.d == 1 {
            poly::add_mod_p(a, b, c.p)
        } else {
            self.digitwise(a, b, poly::add_mod_p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let c = &self.core;
        if c.p == 2 {
            a ^ b
        } else if c.d == 1 {
            poly::sub_mod_p(a, b, c.p)
        } else {
            self.digitwise(a, b, poly::sub_mod_p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let c = &self.core;
        if c.d == 1 {
            return poly::mul_mod_p(a, b, c.p);
        }
        if let Some(t) = &c.tables {
            return t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize];
        }
        slow_mul(c, a, b)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let c = &self.core;
        if let Some(t) = &c.tables {
            let n = c.order - 1;
            let l = t.log[a as usize] as u64;
            return Some(t.exp[((n - l) % n) as usize]);
        }
        Some(self.pow(a, c.order - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^(q^i)` on a raw value, with `q` the designated subfield order.
    pub fn frobenius_raw(&self, x: u64, i: u64) -> Result<u64> {
        let q = self.subfield_order().ok_or(GfError::NoDesignatedSubfield)?;
        let s = self.extension_over_subfield().unwrap() as u64;
        let mut y = x;
        for _ in 0..(i % s) {
            y = self.pow(y, q);
        }
        Ok(y)
    }

    fn digitwise(&self, mut a: u64, mut b: u64, op: fn(u64, u64, u64) -> u64) -> u64 {
        let p = self.core.p;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.core.d {
            out += op(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }
}

fn slow_mul(c: &Core, a: u64, b: u64) -> u64 {
    if c.p == 2 {
        let d = c.d;
        let top = 1u64 << (d - 1);
        let mask = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
        let (mut a, mut b, mut r) = (a, b, 0u64);
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            let carry = a & top;
            a = (a << 1) & mask;
            if carry != 0 {
                a ^= c.reduce_bits;
            }
        }
        r
    } else {
        let p = c.p;
        let unpack = |mut v: u64| -> Vec<u64> {
            let mut out = Vec::with_capacity(c.d as usize);
            for _ in 0..c.d {
                out.push(v % p);
                v /= p;
            }
            out
        };
        let prod = poly::rem(&poly::mul(&unpack(a), &unpack(b), p), &c.modulus, p);
        prod.iter().rev().fold(0u64, |acc, &x| acc * p + x)
    }
}

fn slow_pow(c: &Core, a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(c, acc, base);
        }
        base = slow_mul(c, base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(c: &Core) -> Tables {
    let n = c.order - 1;
    let factors = poly::prime_factors(n);
    let generator = (2..c.order)
        .find(|&g| factors.iter().all(|&r| slow_pow(c, g, n / r) != 1))
        .unwrap_or(1);
    let mut exp = vec![0u64; 2 * n as usize];
    let mut log = vec![0u32; c.order as usize];
    let mut x = 1u64;
    for i in 0..n as usize {
        exp[i] = x;
        exp[i + n as usize] = x;
        log[x as usize] = i as u32;
        x = slow_mul(c, x, generator);
    }
    Tables { exp, log }
}

fn smallest_irreducible(p: u64, d: u32) -> Vec<u64> {
    let count = p.pow(d);
    for lower in 0..count {
        if d > 1 && lower % p == 0 {
            continue;
        }
        let mut f = Vec::with_capacity(d as usize + 1);
        let mut v = lower;
        for _ in 0..d {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.core, &other.core)
            || (self.core.p == other.core.p
                && self.core.d == other.core.d
                && self.core.modulus == other.core.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.core.p.hash(state);
        self.core.d.hash(state);
        self.core.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.core.p, self.core.d, self.core.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.core.p, self.core.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element bound to its field. Mixing fields is an error, never a coercion.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw(&self) -> u64 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.unpack(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn with(&self, value: u64) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let v = self
            .field
            .div(self.value, other.value)
            .ok_or(GfError::DivisionByZero)?;
        Ok(self.with(v))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.field.inv(self.value).ok_or(GfError::DivisionByZero)?;
        Ok(self.with(v))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    /// `x^(q^i)` where `q` is the order of the designated subfield.
    pub fn frobenius(&self, i: u64) -> Result<Self> {
        Ok(self.with(self.field.frobenius_raw(self.value, i)?))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

/// `x^(q^i)`; see [`FieldElement::frobenius`].
pub fn frobenius(x: &FieldElement, i: u64) -> Result<FieldElement> {
    x.frobenius(i)
}
