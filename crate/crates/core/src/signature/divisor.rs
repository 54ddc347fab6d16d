use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use crate::rational::Exact;

/// How `(q-1)Δ` or `qΔ` is rounded to an integral divisor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    /// `⌈(q − 1)Δ⌉`, the defining convention.
    #[default]
    CeilQm1,
    /// `⌊qΔ⌋`.
    FloorQ,
}

impl Rounding {
    pub fn name(&self) -> &'static str {
        match self {
            Rounding::CeilQm1 => "ceil_qm1",
            Rounding::FloorQ => "floor_q",
        }
    }

    /// Rounded multiplicity of a term with coefficient `t`.
    pub fn round(&self, t: Exact, q: u64) -> u64 {
        let (n, d) = (t.numer() as i128, t.denom() as i128);
        let q = q as i128;
        let v = match self {
            Rounding::CeilQm1 => ((q - 1) * n + d - 1).div_euclid(d),
            Rounding::FloorQ => (q * n).div_euclid(d),
        };
        v.max(0) as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorTerm {
    pub coefficient: Exact,
    pub element: Polynomial,
}

/// `Δ = Σ t_i · div(g_i)` with `t_i ≥ 0` rational, denominators prime to `p`.
///
/// Rounding is applied term by term, so the `g_i` are expected to cut out
/// distinct prime divisors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorSpec {
    terms: Vec<DivisorTerm>,
}

impl DivisorSpec {
    pub fn empty() -> Self {
        DivisorSpec::default()
    }

    pub fn new(ring: &Arc<Ring>, terms: Vec<(Exact, Polynomial)>) -> Result<Self> {
        let p = ring.p() as i64;
        let mut out = Vec::with_capacity(terms.len());
        for (t, g) in terms {
            g.check_ring(&Polynomial::zero(ring))?;
            if t.numer() < 0 {
                return Err(Error::usage(format!("divisor coefficient {t} is negative")));
            }
            if t.denom() % p == 0 {
                return Err(Error::usage(format!("divisor coefficient {t}: denominator divisible by p = {p}")));
            }
            if g.is_zero() {
                return Err(Error::usage("divisor of the zero element"));
            }
            out.push(DivisorTerm { coefficient: t, element: g });
        }
        Ok(DivisorSpec { terms: out })
    }

    pub fn terms(&self) -> &[DivisorTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient.numer() == 0)
    }

    pub fn rounded_multiplicities(&self, q: u64, rounding: Rounding) -> Vec<u64> {
        self.terms.iter().map(|t| rounding.round(t.coefficient, q)).collect()
    }

    /// `h_e = ∏ g_i^{n_i}` encoding the rounded divisor; `1` for the empty divisor.
    pub fn multiplier(&self, ring: &Arc<Ring>, q: u64, rounding: Rounding) -> Result<Polynomial> {
        let mut h = Polynomial::one(ring);
        for (term, n) in self.terms.iter().zip(self.rounded_multiplicities(q, rounding)) {
            if n > 0 {
                h = h.try_mul(&term.element.pow(n)?)?;
            }
        }
        Ok(h)
    }

    /// Applies `g ↦ g(images)` to every element.
    pub fn map_elements(&self, f: impl Fn(&Polynomial) -> Result<Polynomial>) -> Result<DivisorSpec> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(DivisorTerm { coefficient: t.coefficient, element: f(&t.element)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorSpec { terms })
    }

    /// Pull-back along `A → A[w_1, ..., w_δ]`.
    pub fn extend_to(&self, target: &Arc<Ring>) -> Result<DivisorSpec> {
        self.map_elements(|g| Ok(g.extend_vars(target)))
    }

    /// Same divisor written in coordinates centred at `point`.
    pub fn translate(&self, ring: &Arc<Ring>, point: &[u32]) -> Result<DivisorSpec> {
        let images = super::presentation::shift_images(ring, point);
        self.map_elements(|g| g.substitute(&images))
    }
}
