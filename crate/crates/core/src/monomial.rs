//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of ring variables (including auxiliary elimination variables).
pub const MAX_VARS: usize = 12;

/// Length of an order key: two block degrees plus one slot per variable.
pub const KEY_LEN: usize = MAX_VARS + 2;

/// An exponent vector over at most [`MAX_VARS`] variables.
///
/// Exponents are `u16`; multiplication checks for overflow.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8, degree: 0 }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::usage(format!("at most {MAX_VARS} variables supported")));
        }
        let mut m = Self::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e)
                .map_err(|_| Error::Arithmetic(format!("exponent {e} exceeds u16")))?;
            m.degree += e;
        }
        Ok(m)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        out.degree = self.degree + other.degree;
        Some(out)
    }

    pub fn checked_pow(&self, n: u32) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] = u16::try_from(self.exps[i] as u64 * n as u64).ok()?;
        }
        out.degree = self.degree.checked_mul(n)?;
        Some(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree {
            return false;
        }
        self.exps[..self.nvars as usize]
            .iter()
            .zip(&other.exps[..self.nvars as usize])
            .all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..self.nvars as usize {
            out.exps[i] -= self.exps[i];
        }
        out.degree -= self.degree;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.degree = deg;
        out
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Bitmask of variables with positive exponent.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for i in 0..self.nvars as usize {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Inserts `count` zero exponents in front of the existing variables.
    pub fn prepend_vars(&self, count: usize) -> Monomial {
        let n = self.nvars as usize;
        assert!(n + count <= MAX_VARS, "at most {MAX_VARS} variables supported");
        let mut out = Monomial::one(n + count);
        out.exps[count..count + n].copy_from_slice(&self.exps[..n]);
        out.degree = self.degree;
        out
    }

    /// Removes the first `count` variables; their exponents must be zero.
    pub fn drop_leading_vars(&self, count: usize) -> Monomial {
        let n = self.nvars as usize;
        debug_assert!(self.exps[..count].iter().all(|&e| e == 0));
        let mut out = Monomial::one(n - count);
        out.exps[..n - count].copy_from_slice(&self.exps[count..n]);
        out.degree = out.exps.iter().map(|&e| e as u32).sum();
        out
    }

    /// Appends `count` zero exponents after the existing variables.
    pub fn extend_vars(&self, count: usize) -> Monomial {
        let n = self.nvars as usize;
        assert!(n + count <= MAX_VARS, "at most {MAX_VARS} variables supported");
        let mut out = *self;
        out.nvars = (n + count) as u8;
        out
    }

    /// Lexicographically comparable key realising `order`.
    pub fn order_key(&self, order: MonomialOrder) -> [u32; KEY_LEN] {
        let n = self.nvars as usize;
        let mut key = [0u32; KEY_LEN];
        match order {
            MonomialOrder::Lex => {
                for (k, &x) in key.iter_mut().zip(&self.exps[..n]) {
                    *k = x as u32;
                }
            }
            MonomialOrder::Grevlex => {
                key[0] = self.degree;
                for j in 0..n {
                    key[1 + j] = u16::MAX as u32 - self.exps[n - 1 - j] as u32;
                }
            }
            MonomialOrder::Elimination { block } => {
                let k = block.min(n);
                key[0] = self.exps[..k].iter().map(|&e| e as u32).sum();
                for j in 0..k {
                    key[1 + j] = u16::MAX as u32 - self.exps[k - 1 - j] as u32;
                }
                key[1 + k] = self.degree - key[0];
                for j in 0..n - k {
                    key[2 + k + j] = u16::MAX as u32 - self.exps[n - 1 - j] as u32;
                }
            }
        }
        key
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// A multiplicative total order with `1` minimal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Block order: the first `block` variables are eliminated. Each block
    /// is compared by grevlex.
    Elimination { block: usize },
}

fn grevlex_block(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.nvars as usize;
        match *self {
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for i in (0..n).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps[..n].cmp(&b.exps[..n]),
            MonomialOrder::Elimination { block } => {
                let k = block.min(n);
                grevlex_block(&a.exps[..k], &b.exps[..k])
                    .then_with(|| grevlex_block(&a.exps[k..n], &b.exps[k..n]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination { block } => format!("elim{block}"),
        }
    }
}

/// Compares two monomials of equal length under `order`.
pub fn order_compare(m1: &Monomial, m2: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if m1.nvars != m2.nvars {
        return Err(Error::usage(format!(
            "monomial length mismatch: {} vs {}",
            m1.nvars, m2.nvars
        )));
    }
    Ok(order.cmp(m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn examples() {
        let ord = |a: &[u32], b: &[u32], o| order_compare(&mono(a), &mono(b), o).unwrap();
        assert_eq!(ord(&[2, 0], &[1, 1], MonomialOrder::Grevlex), Ordering::Greater);
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination { block: 1 }] {
            assert_eq!(ord(&[3, 1], &[3, 1], o), Ordering::Equal);
        }
        assert_eq!(ord(&[0, 5], &[1, 0], MonomialOrder::Lex), Ordering::Less);
        assert!(order_compare(&mono(&[1]), &mono(&[1, 0]), MonomialOrder::Lex).is_err());
    }

    #[test]
    fn grevlex_tie_break_is_reverse_lex() {
        // x*z < y^2 in grevlex on (x, y, z)
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn elimination_ranks_first_block_above_everything() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 2, 0]), &mono(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn overflow_is_detected() {
        let big = mono(&[60000]);
        assert!(big.checked_mul(&big).is_none());
        assert!(big.checked_pow(2).is_none());
        assert!(Monomial::from_exponents(&[70000]).is_err());
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..=4).prop_map(|block| MonomialOrder::Elimination { block }),
        ]
    }

    fn monos() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 4).prop_map(|v| mono(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn order_is_total_and_multiplicative(o in orders(), a in monos(), b in monos(), c in monos()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            if ab == Ordering::Equal {
                prop_assert_eq!(a, b);
            }
            if ab != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
            prop_assert_eq!(o.cmp(&a.checked_mul(&c).unwrap(), &b.checked_mul(&c).unwrap()), ab);
            prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
            prop_assert_eq!(a.order_key(o).cmp(&b.order_key(o)), ab);
        }
    }
}
