//! Heap-driven multivariate division against a set of monic divisors.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, KEY_LEN};

pub(crate) type Terms = Vec<(Monomial, u32)>;

#[derive(PartialEq, Eq)]
struct Entry {
    key: [u32; KEY_LEN],
    mono: Monomial,
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse accumulator: coefficients in a hash map, pending monomials in a max-heap.
pub(crate) struct Accumulator {
    field: PrimeField,
    order: MonomialOrder,
    coeffs: FxHashMap<Monomial, u32>,
    heap: BinaryHeap<Entry>,
}

impl Accumulator {
    pub fn new(field: PrimeField, order: MonomialOrder) -> Self {
        Accumulator { field, order, coeffs: FxHashMap::default(), heap: BinaryHeap::new() }
    }

    #[inline]
    pub fn add(&mut self, mono: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        match self.coeffs.get_mut(&mono) {
            Some(v) => {
                *v = self.field.add(*v, c);
                if *v == 0 {
                    self.coeffs.remove(&mono);
                }
            }
            None => {
                self.coeffs.insert(mono, c);
                self.heap.push(Entry { key: mono.order_key(self.order), mono });
            }
        }
    }

    /// Removes and returns the largest live term.
    pub fn pop(&mut self) -> Option<(Monomial, u32)> {
        while let Some(Entry { mono, .. }) = self.heap.pop() {
            if let Some(c) = self.coeffs.remove(&mono) {
                return Some((mono, c));
            }
        }
        None
    }
}

/// A monic divisor with cached leading data.
pub(crate) struct Divisor<'a> {
    pub lead: Monomial,
    pub mask: u32,
    pub tail: &'a [(Monomial, u32)],
}

impl<'a> Divisor<'a> {
    pub fn new(terms: &'a [(Monomial, u32)]) -> Self {
        debug_assert_eq!(terms[0].1, 1, "divisors must be monic");
        Divisor { lead: terms[0].0, mask: terms[0].0.support_mask(), tail: &terms[1..] }
    }
}

#[inline]
pub(crate) fn find_divisor(divisors: &[Divisor<'_>], m: &Monomial) -> Option<usize> {
    let mask = m.support_mask();
    divisors
        .iter()
        .position(|d| d.mask & !mask == 0 && d.lead.divides(m))
}

/// Full normal form of the accumulated polynomial; output sorted descending.
pub(crate) fn reduce_accumulated(mut acc: Accumulator, divisors: &[Divisor<'_>]) -> Result<Terms> {
    let field = acc.field;
    let mut out = Vec::new();
    while let Some((m, c)) = acc.pop() {
        match find_divisor(divisors, &m) {
            Some(k) => {
                let d = &divisors[k];
                let shift = d.lead.quotient_of(&m).expect("divisible");
                let factor = field.neg(c);
                for (t, tc) in d.tail {
                    let prod = t.checked_mul(&shift).ok_or_else(|| Error::Arithmetic("exponent overflow".into()))?;
                    acc.add(prod, field.mul(factor, *tc));
                }
            }
            None => out.push((m, c)),
        }
    }
    Ok(out)
}

pub(crate) fn normal_form_terms(
    terms: &[(Monomial, u32)],
    divisors: &[Divisor<'_>],
    field: PrimeField,
    order: MonomialOrder,
) -> Result<Terms> {
    let mut acc = Accumulator::new(field, order);
    for &(m, c) in terms {
        acc.add(m, c);
    }
    reduce_accumulated(acc, divisors)
}

pub(crate) fn make_monic(terms: &mut Terms, field: PrimeField) {
    if let Some(&(_, lc)) = terms.first() {
        if lc != 1 {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for t in terms.iter_mut() {
                t.1 = field.mul(t.1, inv);
            }
        }
    }
}
