//! Groebner bases and the ideal-theoretic toolbox built on them.

mod buchberger;
pub mod cache;
mod ideal;
mod reduce;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, Polynomial, Ring};

pub use buchberger::groebner_basis;
pub use cache::{BasisStore, MemoryStore, StoredBasis};
pub use ideal::{
    artinian_length, frobenius_power, ideal_op, jacobian_ideal, krull_dimension, IdealOp,
};
pub use ideal::Ideal;

pub(crate) use buchberger::minimize_and_reduce;

/// Caps that turn runaway computations into [`Error::Resource`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of polynomials ever added to the basis.
    pub max_basis: usize,
    /// Maximum length of the critical-pair queue.
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: 50_000, max_pairs: 2_000_000 }
    }
}

/// The reduced Groebner basis of an ideal for one monomial order.
///
/// Elements are monic and sorted ascending by leading monomial, so two
/// bases of the same ideal compare equal element by element.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.order == other.order && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub(crate) fn from_reduced(ring: &Arc<Ring>, order: MonomialOrder, mut elements: Vec<Polynomial>) -> Self {
        elements.sort_by(|a, b| {
            order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        GroebnerBasis { ring: ring.clone(), order, elements }
    }

    pub(crate) fn unit(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        GroebnerBasis { ring: ring.clone(), order, elements: vec![Polynomial::one(ring).with_order(order)] }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.first().is_some_and(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub(crate) fn to_stored(&self) -> StoredBasis {
        StoredBasis {
            p: self.ring.p(),
            nvars: self.ring.nvars(),
            order: self.order,
            elements: self
                .elements
                .iter()
                .map(|g| g.terms().iter().map(|(m, c)| (*c, m.exponents().to_vec())).collect())
                .collect(),
        }
    }

    pub(crate) fn from_stored(ring: &Arc<Ring>, stored: &StoredBasis) -> Result<Self> {
        if stored.p != ring.p() || stored.nvars != ring.nvars() {
            return Err(Error::usage("stored basis does not match ring"));
        }
        let mut elements = Vec::with_capacity(stored.elements.len());
        for el in &stored.elements {
            let terms = el
                .iter()
                .map(|(c, e)| {
                    let e: Vec<u32> = e.iter().map(|&x| x as u32).collect();
                    Ok((Monomial::from_exponents(&e)?, *c))
                })
                .collect::<Result<Vec<_>>>()?;
            if terms.iter().any(|(m, _)| m.nvars() != ring.nvars()) {
                return Err(Error::usage("stored basis has wrong exponent length"));
            }
            elements.push(Polynomial::from_terms(ring, stored.order, terms));
        }
        Ok(GroebnerBasis::from_reduced(ring, stored.order, elements))
    }
}

/// Remainder of `f` modulo a reduced basis; no remainder term is divisible
/// by any leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if !same_ring(f.ring(), &basis.ring) {
        return Err(Error::usage("normal_form: polynomial and basis live in different rings"));
    }
    let order = basis.order;
    let divisors: Vec<reduce::Divisor<'_>> =
        basis.elements.iter().map(|g| reduce::Divisor::new(g.terms())).collect();
    let terms = reduce::normal_form_terms(f.terms(), &divisors, *basis.ring.field(), order)?;
    Ok(Polynomial::from_sorted(&basis.ring, order, terms))
}

/// Shared configuration for Groebner computations: resource caps plus an
/// optional content-addressed basis store.
#[derive(Clone)]
pub struct Engine {
    pub limits: Limits,
    store: Option<Arc<dyn BasisStore>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { limits: Limits::default(), store: Some(Arc::new(MemoryStore::default())) }
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("limits", &self.limits).field("cached", &self.store.is_some()).finish()
    }
}

impl Engine {
    pub fn new(limits: Limits, store: Option<Arc<dyn BasisStore>>) -> Self {
        Engine { limits, store }
    }

    pub fn uncached() -> Self {
        Engine { limits: Limits::default(), store: None }
    }

    pub fn store(&self) -> Option<&Arc<dyn BasisStore>> {
        self.store.as_ref()
    }

    /// Reduced basis of `⟨gens⟩`, served from the store when possible.
    pub fn basis(&self, ring: &Arc<Ring>, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
        let Some(store) = &self.store else {
            return groebner_basis(ring, gens, order, &self.limits);
        };
        let key = cache::digest(ring, gens, order);
        if let Some(stored) = store.load(&key) {
            match GroebnerBasis::from_stored(ring, &stored) {
                Ok(gb) => return Ok(gb),
                Err(e) => log::warn!("discarding unusable cache entry {key}: {e}"),
            }
        }
        let gb = groebner_basis(ring, gens, order, &self.limits)?;
        store.store(&key, &gb.to_stored());
        Ok(gb)
    }
}

/// Reduced Groebner basis of `ideal` for `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, engine: &Engine) -> Result<GroebnerBasis> {
    engine.basis(ideal.ring(), ideal.generators(), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, vars: &[&str]) -> (Arc<Ring>, Vec<Polynomial>) {
        let r = Ring::new(p, vars).unwrap();
        let v = (0..vars.len()).map(|i| Polynomial::var(&r, i)).collect();
        (r, v)
    }

    #[test]
    fn monomial_ideal_is_already_reduced() {
        let (r, v) = ring(7, &["x", "y"]);
        let gb = groebner_basis(&r, &v, MonomialOrder::Grevlex, &Limits::default()).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.elements().contains(&v[0]) && gb.elements().contains(&v[1]));
    }

    #[test]
    fn principal_ideal_is_made_monic() {
        let (r, v) = ring(5, &["x", "y"]);
        let f = &(&v[0] * &v[1]).scale(3) + &Polynomial::constant(&r, 2);
        let gb = groebner_basis(&r, std::slice::from_ref(&f), MonomialOrder::Grevlex, &Limits::default()).unwrap();
        assert_eq!(gb.elements(), &[f.scale(2)]);
    }

    #[test]
    fn normal_form_examples() {
        let (r, v) = ring(7, &["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let g = &(x * x) - y;
        let gb = groebner_basis(&r, std::slice::from_ref(&g), MonomialOrder::Grevlex, &Limits::default()).unwrap();
        let f = &(x * x) * y;
        let nf = normal_form(&f, &gb).unwrap();
        assert_eq!(nf, y * y);
        assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
        assert!(normal_form(&(&g * x), &gb).unwrap().is_zero());
        let other = Ring::new(7, &["a", "b"]).unwrap();
        assert!(normal_form(&Polynomial::var(&other, 0), &gb).is_err());
    }

    #[test]
    fn twisted_example_membership() {
        let (r, v) = ring(7, &["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let one = Polynomial::one(&r);
        let gens = [&(x * x) - y, &(x * y) - &one];
        let gb = groebner_basis(&r, &gens, MonomialOrder::Grevlex, &Limits::default()).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(gb.contains(&(&x.pow(3).unwrap() - &one)).unwrap());
        assert!(!gb.contains(&(x + y)).unwrap());
    }

    #[test]
    fn resource_cap_is_reported() {
        let (r, v) = ring(32003, &["x", "y", "z"]);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let gens = [&(x * y) - &(z * z), &(&(y * y) * z) - &x.pow(3).unwrap(), &(x * z) + &(y * y)];
        let tight = Limits { max_basis: 2, max_pairs: 10 };
        let err = groebner_basis(&r, &gens, MonomialOrder::Lex, &tight).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }
}
