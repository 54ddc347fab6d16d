//! Prime field arithmetic with single-word residues and Barrett reduction.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus, `2^31 - 1`.
pub const MAX_MODULUS: u32 = (1 << 31) - 1;

/// The prime field `F_p`, carrying the precomputed Barrett constant.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u32,
    barrett: u64,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl std::hash::Hash for PrimeField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_MODULUS || !is_prime(p as u64) {
            return Err(Error::usage(format!("modulus {p} is not a prime in [2, 2^31-1]")));
        }
        Ok(PrimeField { p, barrett: u64::MAX / p as u64 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces `x < 2^62` modulo `p`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        let quot = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - quot * self.p as u64;
        if r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::Arithmetic("inversion of zero".into()));
        }
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }

    /// Maps a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement { value: self.from_i64(v), field: *self }
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

/// Binary and unary operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl FieldElement {
    pub fn new(value: i64, field: PrimeField) -> Self {
        field.element(value)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::usage(format!(
                "modulus mismatch: {} vs {}",
                self.field.p, other.field.p
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { value: self.field.add(self.value, other.value), field: self.field })
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { value: self.field.mul(self.value, other.value), field: self.field })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { value: self.field.neg(self.value), field: self.field }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement { value: self.field.inv(self.value)?, field: self.field })
    }
}

/// Dispatches a single field operation; unary operations ignore `b`.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Neg => Ok(a.neg()),
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
