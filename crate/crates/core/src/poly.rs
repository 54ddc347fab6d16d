//! Sparse multivariate polynomials over `F_p`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Polynomial ring `F_p[x_1, ..., x_n]` with a fixed, ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(p: u32, vars: &[&str]) -> Result<Arc<Ring>> {
        Self::from_names(p, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(p: u32, vars: Vec<String>) -> Result<Arc<Ring>> {
        let field = PrimeField::new(p)?;
        if vars.len() > MAX_VARS {
            return Err(Error::usage(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::usage(format!("duplicate variable name {v}")));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Ring with fresh variables inserted before the existing ones.
    pub fn with_prepended(&self, names: &[&str]) -> Result<Arc<Ring>> {
        let mut vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        Ring::from_names(self.p(), vars)
    }

    /// Ring with fresh variables appended after the existing ones.
    pub fn with_appended(&self, names: &[String]) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().cloned());
        Ring::from_names(self.p(), vars)
    }

    /// Ring with the variable at `index` removed.
    pub fn without_var(&self, index: usize) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.remove(index);
        Ring::from_names(self.p(), vars)
    }
}

/// A polynomial in canonical form: terms sorted strictly descending under
/// its order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    order: MonomialOrder,
    terms: Vec<(Monomial, u32)>,
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), order: MonomialOrder::Grevlex, terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let v = ring.field.from_i64(c);
        let mut p = Self::zero(ring);
        if v != 0 {
            p.terms.push((Monomial::one(ring.nvars()), v));
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        assert!(index < ring.nvars());
        Self::term(ring, Monomial::var(ring.nvars(), index), 1)
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let mut p = Self::zero(ring);
        let c = c % ring.p();
        if c != 0 {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(
        ring: &Arc<Ring>,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Self {
        let field = ring.field;
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.modulus());
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), order, terms }
    }

    /// Wraps terms already sorted strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, order: MonomialOrder, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), order, terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    /// Number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|(t, _)| t == m).map_or(0, |t| t.1)
    }

    /// Re-sorts the terms under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), order, terms }
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::usage(format!(
                "ring mismatch: {:?} over F_{} vs {:?} over F_{}",
                self.ring.vars,
                self.ring.p(),
                other.ring.vars,
                other.ring.p()
            )));
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, scale: u32) -> Polynomial {
        let field = self.ring.field;
        let order = self.order;
        let other = other.with_order(order);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let c = field.mul(b[j].1, scale);
                    if c != 0 {
                        out.push((b[j].0, c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a[i].1, field.mul(b[j].1, scale));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().filter_map(|&(m, c)| {
            let c = field.mul(c, scale);
            (c != 0).then_some((m, c))
        }));
        Polynomial { ring: self.ring.clone(), order, terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, 1))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, self.ring.p() - 1))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field;
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or_else(overflow)?;
                let e = acc.entry(m).or_insert(0);
                *e = field.add(*e, field.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| self.order.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: self.ring.clone(), order: self.order, terms })
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, n: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring).with_order(self.order);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = self.ring.field;
        let c = c % field.modulus();
        if c == 0 {
            return Polynomial { terms: Vec::new(), ..self.clone() };
        }
        let terms = self.terms.iter().map(|&(m, a)| (m, field.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), order: self.order, terms }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.p() - 1)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Result<Polynomial> {
        let field = self.ring.field;
        let c = c % field.modulus();
        if c == 0 {
            return Ok(Polynomial { terms: Vec::new(), ..self.clone() });
        }
        let terms = self
            .terms
            .iter()
            .map(|&(t, a)| Ok((t.checked_mul(m).ok_or_else(overflow)?, field.mul(a, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), order: self.order, terms })
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if lc != 1 => self.scale(self.ring.field.inv(lc).expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let field = self.ring.field;
        let terms = self.terms.iter().filter_map(|&(m, c)| {
            let e = m.exponent(index);
            if e == 0 {
                return None;
            }
            let c = field.mul(c, e % field.modulus());
            let m = Monomial::var(m.nvars(), index).quotient_of(&m).expect("divisible");
            Some((m, c))
        });
        Polynomial::from_terms(&self.ring, self.order, terms.collect::<Vec<_>>())
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let field = self.ring.field;
        assert_eq!(point.len(), self.ring.nvars());
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = (0..m.nvars()).fold(*c, |v, i| field.mul(v, field.pow(point[i], m.exponent(i) as u64)));
            field.add(acc, v)
        })
    }

    /// Substitutes `images[i]` for variable `i`; the images fix the target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::usage("substitution needs one image per variable"));
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .ok_or_else(|| Error::usage("substitution into a ring with no variables"))?;
        for img in images {
            if !same_ring(&img.ring, &target) {
                return Err(Error::usage("substitution images live in different rings"));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|img| vec![Polynomial::one(&target), img.clone()]).collect();
        let mut out = Polynomial::zero(&target).with_order(self.order);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, *c as i64);
            for i in 0..m.nvars() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.try_mul(&powers[i][e])?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Drops every term with some exponent `>= q`, i.e. reduces modulo the
    /// bracket power `(x_1^q, ..., x_n^q)`.
    pub fn truncate_below(&self, q: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents().iter().all(|&e| (e as u32) < q))
            .copied()
            .collect();
        Polynomial { ring: self.ring.clone(), order: self.order, terms }
    }

    /// Moves into `target`, which must have `count` extra variables in front.
    pub fn prepend_vars(&self, target: &Arc<Ring>, count: usize) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars() + count);
        let terms = self.terms.iter().map(|&(m, c)| (m.prepend_vars(count), c));
        Polynomial::from_terms(target, self.order, terms.collect::<Vec<_>>())
    }

    /// Moves into `target` obtained by appending variables.
    pub fn extend_vars(&self, target: &Arc<Ring>) -> Polynomial {
        let extra = target.nvars() - self.ring.nvars();
        let terms = self.terms.iter().map(|&(m, c)| (m.extend_vars(extra), c)).collect();
        Polynomial::from_sorted(target, self.order, terms).with_order(self.order)
    }

    /// Drops the first `count` variables, which must not occur.
    pub fn drop_leading_vars(&self, target: &Arc<Ring>, count: usize) -> Polynomial {
        let terms = self.terms.iter().map(|&(m, c)| (m.drop_leading_vars(count), c));
        Polynomial::from_terms(target, MonomialOrder::Grevlex, terms.collect::<Vec<_>>())
    }

    /// Moves into `target`, this ring with variable `index` removed; the
    /// variable must not occur.
    pub fn remove_var(&self, target: &Arc<Ring>, index: usize) -> Result<Polynomial> {
        if self.involves_var(index) || target.nvars() + 1 != self.ring.nvars() {
            return Err(Error::usage(format!("cannot remove variable {index} from {self}")));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            let exps: Vec<u32> =
                (0..self.ring.nvars()).filter(|&i| i != index).map(|i| m.exponent(i)).collect();
            terms.push((Monomial::from_exponents(&exps)?, c));
        }
        Ok(Polynomial::from_terms(target, self.order, terms))
    }

    pub fn involves_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(index) > 0)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        let order = self.order;
        let divisor = divisor.with_order(order).monic_with_factor();
        let (divisor, lc) = divisor;
        let field = self.ring.field;
        let lead = *divisor.leading_monomial().ok_or_else(|| Error::Arithmetic("division by zero".into()))?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(&(m, c)) = rem.terms.first() {
            let Some(t) = lead.quotient_of(&m) else {
                return Ok(None);
            };
            quot.push((t, c));
            let sub = divisor.mul_monomial(&t, c)?;
            rem = rem.merge(&sub, field.modulus() - 1);
        }
        let inv = field.inv(lc)?;
        Ok(Some(Polynomial::from_terms(&self.ring, order, quot).scale(inv)))
    }

    fn monic_with_factor(&self) -> (Polynomial, u32) {
        let lc = self.leading_coefficient().unwrap_or(1);
        (self.monic(), lc)
    }

    /// Deterministic text form used for content digests.
    pub fn canonical_string(&self) -> String {
        let p = self.with_order(MonomialOrder::Grevlex);
        let mut s = String::new();
        for (m, c) in &p.terms {
            s.push_str(&format!("{c}@{:?};", m.exponents()));
        }
        s
    }

    pub fn coefficient_element(&self, m: &Monomial) -> FieldElement {
        FieldElement::new(self.coefficient(m) as i64, self.ring.field)
    }
}

fn overflow() -> Error {
    Error::Arithmetic("exponent overflow".into())
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.terms.len() == other.terms.len()
            && self.terms == other.with_order(self.order).terms
    }
}

impl Eq for Polynomial {}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on ring mismatch or exponent overflow; use the `try_` form to recover.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.p();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if p > 2 && *c > p / 2 { (true, p - c) } else { (false, *c) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if mag != 1 || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, name) in self.ring.vars.iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Operations accepted by [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Pow(u64),
}

/// Dispatches one polynomial operation; `Pow` ignores `g`.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => f.try_add(g),
        PolyOp::Mul => f.try_mul(g),
        PolyOp::Pow(n) => f.pow(n),
    }
}
