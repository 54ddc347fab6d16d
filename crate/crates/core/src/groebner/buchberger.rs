//! Buchberger's algorithm with the Gebauer-Moeller pair criteria.

use std::sync::Arc;

use log::trace;

use super::reduce::{make_monic, normal_form_terms, Accumulator, Divisor, Terms};
use super::{GroebnerBasis, Limits};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    field: PrimeField,
    order: MonomialOrder,
    limits: Limits,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lead(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn divisors(&self) -> Vec<Divisor<'_>> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| Divisor::new(p))
            .collect()
    }

    fn s_polynomial(&self, pair: &Pair) -> Result<Terms> {
        let mut acc = Accumulator::new(self.field, self.order);
        let overflow = || Error::Arithmetic("exponent overflow".into());
        let ti = self.lead(pair.i).quotient_of(&pair.lcm).expect("lcm");
        let tj = self.lead(pair.j).quotient_of(&pair.lcm).expect("lcm");
        for (m, c) in &self.polys[pair.i][1..] {
            acc.add(m.checked_mul(&ti).ok_or_else(overflow)?, *c);
        }
        for (m, c) in &self.polys[pair.j][1..] {
            acc.add(m.checked_mul(&tj).ok_or_else(overflow)?, self.field.neg(*c));
        }
        let divisors = self.divisors();
        super::reduce::reduce_accumulated(acc, &divisors)
    }

    /// Inserts a new monic, fully reduced element and updates the pair set.
    fn update(&mut self, h: Terms) -> Result<()> {
        let hn = self.polys.len();
        if hn >= self.limits.max_basis {
            return Err(Error::Resource(format!(
                "basis size cap of {} reached",
                self.limits.max_basis
            )));
        }
        let lead_h = h[0].0;
        self.polys.push(h);
        self.active.push(true);

        let mut candidates: Vec<Pair> = (0..hn)
            .filter(|&g| self.active[g])
            .map(|g| Pair { i: g, j: hn, lcm: self.lead(g).lcm(&lead_h) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(pair) = candidates.pop() {
            let coprime = self.lead(pair.i).coprime(&lead_h);
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|other| other.lcm.divides(&pair.lcm));
            if coprime || !dominated {
                kept.push(pair);
            }
        }
        let new_pairs: Vec<Pair> =
            kept.into_iter().filter(|p| !self.lead(p.i).coprime(&lead_h)).collect();

        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !(lead_h.divides(&p.lcm)
                    && self.lead(p.i).lcm(&lead_h) != p.lcm
                    && self.lead(p.j).lcm(&lead_h) != p.lcm)
            })
            .collect();
        self.pairs.extend(new_pairs);
        if self.pairs.len() > self.limits.max_pairs {
            return Err(Error::Resource(format!(
                "pair queue cap of {} reached",
                self.limits.max_pairs
            )));
        }

        for g in 0..hn {
            if self.active[g] && lead_h.divides(self.lead(g)) {
                self.active[g] = false;
            }
        }
        Ok(())
    }

    /// Normal strategy: smallest lcm degree, then smallest lcm in the order.
    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
pub fn groebner_basis(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: MonomialOrder,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    let field = *ring.field();
    let mut input: Vec<Terms> = Vec::new();
    for g in gens {
        g.check_ring(&Polynomial::zero(ring))?;
        let mut t = g.with_order(order).into_terms();
        if t.is_empty() {
            continue;
        }
        make_monic(&mut t, field);
        input.push(t);
    }
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then_with(|| a.len().cmp(&b.len())));

    let mut state = State {
        field,
        order,
        limits: limits.clone(),
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for t in input {
        let divisors = state.divisors();
        let mut h = normal_form_terms(&t, &divisors, field, order)?;
        drop(divisors);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h, field);
        if h[0].0.is_one() {
            return Ok(GroebnerBasis::unit(ring, order));
        }
        state.update(h)?;
    }

    let mut steps = 0usize;
    while let Some(pair) = state.select() {
        steps += 1;
        let mut h = state.s_polynomial(&pair)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h, field);
        if h[0].0.is_one() {
            return Ok(GroebnerBasis::unit(ring, order));
        }
        trace!("pair ({}, {}) -> new element of degree {}", pair.i, pair.j, h[0].0.degree());
        state.update(h)?;
    }
    trace!("buchberger: {steps} pairs, {} elements generated", state.polys.len());

    let minimal: Vec<Terms> = state
        .polys
        .into_iter()
        .zip(state.active)
        .filter_map(|(p, a)| a.then_some(p))
        .collect();
    interreduce(ring, minimal, order)
}

/// Turns a minimal Groebner basis (monic, no leading term dividing another)
/// into the reduced one.
pub(crate) fn interreduce(ring: &Arc<Ring>, minimal: Vec<Terms>, order: MonomialOrder) -> Result<GroebnerBasis> {
    let field = *ring.field();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<Divisor<'_>> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, p)| Divisor::new(p))
            .collect();
        let mut tail = normal_form_terms(&g[1..], &others, field, order)?;
        let mut full = Vec::with_capacity(tail.len() + 1);
        full.push(g[0]);
        full.append(&mut tail);
        reduced.push(Polynomial::from_sorted(ring, order, full));
    }
    Ok(GroebnerBasis::from_reduced(ring, order, reduced))
}

/// Removes elements whose leading monomial is divisible by another's, then interreduces.
pub(crate) fn minimize_and_reduce(ring: &Arc<Ring>, gb: Vec<Polynomial>, order: MonomialOrder) -> Result<GroebnerBasis> {
    let field = *ring.field();
    let mut polys: Vec<Terms> = gb
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut t = p.with_order(order).into_terms();
            make_monic(&mut t, field);
            t
        })
        .collect();
    polys.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    polys.dedup_by(|a, b| a[0].0 == b[0].0);
    if polys.first().is_some_and(|p| p[0].0.is_one()) {
        return Ok(GroebnerBasis::unit(ring, order));
    }
    let leads: Vec<Monomial> = polys.iter().map(|p| p[0].0).collect();
    let minimal: Vec<Terms> = polys
        .into_iter()
        .enumerate()
        .filter(|(k, p)| !leads.iter().enumerate().any(|(i, l)| i != *k && l.divides(&p[0].0)))
        .map(|(_, p)| p)
        .collect();
    interreduce(ring, minimal, order)
}
