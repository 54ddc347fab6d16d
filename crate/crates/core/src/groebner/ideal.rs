use std::sync::{Arc, OnceLock};

use super::{minimize_and_reduce, Engine, GroebnerBasis};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, Polynomial, Ring};

/// A finitely generated ideal with a lazily computed grevlex basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    grevlex: OnceLock<GroebnerBasis>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.generators.iter().map(|g| g.to_string())).finish()
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::usage("ideal generator lives in a different ring"));
            }
            if !g.is_zero() {
                gens.push(g.with_order(MonomialOrder::Grevlex));
            }
        }
        Ok(Ideal { ring: ring.clone(), generators: gens, grevlex: OnceLock::new() })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), grevlex: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::from_basis(GroebnerBasis::unit(ring, MonomialOrder::Grevlex))
    }

    /// `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        let gb = GroebnerBasis::from_reduced(ring, MonomialOrder::Grevlex, gens);
        Self::from_basis(gb)
    }

    /// `(x_1^q, ..., x_n^q)`.
    pub fn bracket_maximal(ring: &Arc<Ring>, q: u32) -> Result<Self> {
        let gens = (0..ring.nvars())
            .map(|i| {
                let m = Monomial::var(ring.nvars(), i)
                    .checked_pow(q)
                    .ok_or_else(|| Error::Arithmetic("exponent overflow".into()))?;
                Ok(Polynomial::term(ring, m, 1))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_basis(GroebnerBasis::from_reduced(ring, MonomialOrder::Grevlex, gens)))
    }

    /// Wraps a reduced grevlex basis.
    pub fn from_basis(gb: GroebnerBasis) -> Self {
        debug_assert_eq!(gb.order(), MonomialOrder::Grevlex);
        let ring = gb.ring().clone();
        let generators = gb.elements().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal { ring, generators, grevlex: cell }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced grevlex basis, computed on first use.
    pub fn groebner(&self, engine: &Engine) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.grevlex.get() {
            return Ok(gb);
        }
        let gb = engine.basis(&self.ring, &self.generators, MonomialOrder::Grevlex)?;
        let _ = self.grevlex.set(gb);
        Ok(self.grevlex.get().expect("just set"))
    }

    pub fn is_unit(&self, engine: &Engine) -> Result<bool> {
        if self.generators.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.groebner(engine)?.is_unit())
    }

    pub fn contains(&self, f: &Polynomial, engine: &Engine) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        self.groebner(engine)?.contains(f)
    }

    pub fn is_subset_of(&self, other: &Ideal, engine: &Engine) -> Result<bool> {
        self.check_ring(other)?;
        let gb = other.groebner(engine)?;
        for g in &self.generators {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal, engine: &Engine) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner(engine)? == other.groebner(engine)?)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::usage("ideals live in different rings"));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.try_mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `J ∩ K` as the `t`-free part of `⟨t·J + (1 − t)·K⟩` under an elimination order.
    pub fn intersect(&self, other: &Ideal, engine: &Engine) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit(engine)? {
            return Ok(other.clone());
        }
        if other.is_unit(engine)? {
            return Ok(self.clone());
        }
        let ring = &self.ring;
        let t_ring = ring.with_prepended(&["_t"])?;
        let t = Polynomial::var(&t_ring, 0);
        let one_minus_t = &Polynomial::one(&t_ring) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(t.try_mul(&g.prepend_vars(&t_ring, 1))?);
        }
        for g in &other.generators {
            gens.push(one_minus_t.try_mul(&g.prepend_vars(&t_ring, 1))?);
        }
        let gb = engine.basis(&t_ring, &gens, MonomialOrder::Elimination { block: 1 })?;
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| !g.involves_var(0))
            .map(|g| g.drop_leading_vars(ring, 1))
            .collect();
        Ok(Ideal::from_basis(GroebnerBasis::from_reduced(ring, MonomialOrder::Grevlex, kept)))
    }

    /// `(J : h) = (J ∩ ⟨h⟩) / h`.
    pub fn colon_element(&self, h: &Polynomial, engine: &Engine) -> Result<Ideal> {
        h.check_ring(&Polynomial::zero(&self.ring))?;
        if h.is_zero() || self.contains(h, engine)? {
            return Ok(Ideal::unit(&self.ring));
        }
        if h.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![h.clone()])?;
        let meet = self.intersect(&principal, engine)?;
        let mut quotients = Vec::with_capacity(meet.generators.len());
        for g in &meet.generators {
            let q = g
                .div_exact(h)?
                .ok_or_else(|| Error::Arithmetic("intersection element not divisible by h".into()))?;
            quotients.push(q);
        }
        // Dividing a basis of J ∩ ⟨h⟩ by h yields a (non-reduced) basis of J : h.
        let gb = minimize_and_reduce(&self.ring, quotients, MonomialOrder::Grevlex)?;
        Ok(Ideal::from_basis(gb))
    }

    /// `(J : K) = ⋂_{h ∈ gens K} (J : h)`.
    pub fn colon(&self, other: &Ideal, engine: &Engine) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for h in &other.generators {
            let part = self.colon_element(h, engine)?;
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part, engine)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// The extension `I·S[new vars]` into a ring with appended variables.
    pub fn extend_to(&self, target: &Arc<Ring>) -> Result<Ideal> {
        if target.nvars() < self.ring.nvars() || target.vars()[..self.ring.nvars()] != *self.ring.vars() {
            return Err(Error::usage("target ring must extend the source ring's variables"));
        }
        let gens = self.generators.iter().map(|g| g.extend_vars(target)).collect();
        Ideal::new(target, gens)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
    Colon,
}

pub fn ideal_op(j: &Ideal, k: &Ideal, op: IdealOp, engine: &Engine) -> Result<Ideal> {
    match op {
        IdealOp::Sum => j.sum(k),
        IdealOp::Product => j.product(k),
        IdealOp::Intersect => j.intersect(k, engine),
        IdealOp::Colon => j.colon(k, engine),
    }
}

/// Returns `e` with `q = p^e`, or a usage error.
pub(crate) fn frobenius_exponent(p: u32, q: u64) -> Result<u32> {
    let mut e = 0;
    let mut v = q;
    while v > 1 && v.is_multiple_of(p as u64) {
        v /= p as u64;
        e += 1;
    }
    if v != 1 {
        return Err(Error::usage(format!("{q} is not a power of the characteristic {p}")));
    }
    Ok(e)
}

/// Bracket power `I^{[q]} = ⟨g^q : g ∈ gens(I)⟩`.
pub fn frobenius_power(ideal: &Ideal, q: u64) -> Result<Ideal> {
    frobenius_exponent(ideal.ring.p(), q)?;
    let gens = ideal.generators.iter().map(|g| g.pow(q)).collect::<Result<Vec<_>>>()?;
    Ideal::new(&ideal.ring, gens)
}

/// Dimension of `S/I` as the largest variable set independent modulo the
/// grevlex initial ideal.
pub fn krull_dimension(ideal: &Ideal, engine: &Engine) -> Result<usize> {
    let gb = ideal.groebner(engine)?;
    if gb.is_unit() {
        return Err(Error::EmptyScheme);
    }
    let masks: Vec<u32> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
    let n = ideal.ring.nvars();
    let best = (0u32..1 << n)
        .filter(|&u| masks.iter().all(|&m| m & !u != 0))
        .map(|u| u.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// `dim_k S/I`, counted as standard monomials of the grevlex basis.
pub fn artinian_length(ideal: &Ideal, engine: &Engine) -> Result<u64> {
    let gb = ideal.groebner(engine)?;
    if gb.is_unit() {
        return Ok(0);
    }
    let leads = gb.leading_monomials();
    let n = ideal.ring.nvars();
    for i in 0..n {
        if !leads.iter().any(|m| m.support_mask() == 1 << i) {
            return Err(Error::NotArtinian { variable: ideal.ring.vars()[i].clone() });
        }
    }
    let gens: Vec<Vec<u16>> = leads.iter().map(|m| m.exponents().to_vec()).collect();
    Ok(count_standard(&gens, n))
}

/// Standard monomials in the first `k` variables of the monomial ideal
/// spanned by `gens` (each containing a pure power of every variable).
fn count_standard(gens: &[Vec<u16>], k: usize) -> u64 {
    if gens.iter().any(|g| g[..k].iter().all(|&e| e == 0)) {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    let v = k - 1;
    let bound = gens
        .iter()
        .filter(|g| g[..v].iter().all(|&e| e == 0))
        .map(|g| g[v])
        .min()
        .expect("pure power present");
    let mut cuts: Vec<u16> = gens.iter().map(|g| g[v]).filter(|&e| e < bound).collect();
    cuts.push(0);
    cuts.sort_unstable();
    cuts.dedup();
    let mut total = 0;
    for (idx, &lo) in cuts.iter().enumerate() {
        let hi = cuts.get(idx + 1).copied().unwrap_or(bound);
        let slice: Vec<Vec<u16>> = gens.iter().filter(|g| g[v] <= lo).map(|g| g[..v].to_vec()).collect();
        total += count_standard(&slice, v) * (hi - lo) as u64;
    }
    total
}

fn determinant(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][col].try_mul(&determinant(&minor)?)?;
        acc = if col % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
    }
    Ok(acc)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// `I` plus the `c×c` minors of the Jacobian of its generators, `c = codim I`.
pub fn jacobian_ideal(ideal: &Ideal, engine: &Engine) -> Result<Ideal> {
    let ring = ideal.ring.clone();
    let n = ring.nvars();
    let codim = n - krull_dimension(ideal, engine)?;
    if codim == 0 {
        return Ok(Ideal::unit(&ring));
    }
    let gens = ideal.generators();
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect();
    let mut out: Vec<Polynomial> = gens.to_vec();
    for rows in subsets(gens.len(), codim) {
        for cols in subsets(n, codim) {
            let sub: Vec<Vec<Polynomial>> =
                rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let det = determinant(&sub)?;
            if !det.is_zero() {
                out.push(det);
            }
        }
    }
    Ideal::new(&ring, out)
}
