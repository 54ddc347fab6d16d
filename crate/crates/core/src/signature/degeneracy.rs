use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{artinian_length, frobenius_power, Engine, Ideal};
use crate::poly::Polynomial;
use crate::rational::Exact;

use super::divisor::{DivisorSpec, Rounding};
use super::presentation::RingPresentation;

/// One finite-level estimate `s_e = ℓ_e / q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureSample {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub estimate: Exact,
    pub rounding: Rounding,
    /// Set when `s_e = 0`, i.e. the pair is not even F-pure at this level.
    pub zero: bool,
}

pub(crate) fn checked_q(p: u32, e: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(e)
        .filter(|&q| q <= u16::MAX as u64)
        .ok_or_else(|| Error::Resource(format!("q = {p}^{e} exceeds the supported exponent range")))
}

/// `(I^{[q]} : I)` in the ambient polynomial ring.
pub fn fedder_ideal(p: &RingPresentation, e: u32, engine: &Engine) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::usage("e must be positive"));
    }
    let q = checked_q(p.p(), e)?;
    let ideal = p.ideal();
    let ring = p.ring();
    let gens: Vec<&Polynomial> = ideal.generators().iter().collect();
    match gens.as_slice() {
        [] => Ok(Ideal::unit(ring)),
        [f] => Ideal::new(ring, vec![f.pow(q - 1)?]),
        _ => frobenius_power(ideal, q)?.colon(ideal, engine),
    }
}

/// Preimage in `S` of `I_e(R, D_e)`: `(m^{[q]} : (I^{[q]} : I)·h_e)`.
pub fn degeneracy_ideal(
    p: &RingPresentation,
    e: u32,
    delta: &DivisorSpec,
    rounding: Rounding,
    engine: &Engine,
) -> Result<Ideal> {
    let fedder = fedder_ideal(p, e, engine)?;
    let q = checked_q(p.p(), e)?;
    let h = multiplier_checked(p, delta, q, rounding, engine)?;
    let bracket = Ideal::bracket_maximal(p.ring(), q as u32)?;
    // m^{[q]} is monomial, so each generator can be cut down modulo it first.
    let products = fedder
        .generators()
        .iter()
        .map(|k| Ok(k.try_mul(&h)?.truncate_below(q as u32)))
        .collect::<Result<Vec<_>>>()?;
    let nonzero: Vec<Polynomial> = products.into_iter().filter(|k| !k.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Ideal::unit(p.ring()));
    }
    bracket.colon(&Ideal::new(p.ring(), nonzero)?, engine)
}

/// `h_e`, rejecting divisors whose multiplier vanishes on `V(I)`.
pub(crate) fn multiplier_checked(
    p: &RingPresentation,
    delta: &DivisorSpec,
    q: u64,
    rounding: Rounding,
    engine: &Engine,
) -> Result<Polynomial> {
    for term in delta.terms() {
        if p.ideal().contains(&term.element, engine)? {
            return Err(Error::DegenerateDivisor(format!("{} lies in the defining ideal", term.element)));
        }
    }
    delta.multiplier(p.ring(), q, rounding)
}

pub fn signature_estimate(
    p: &RingPresentation,
    e: u32,
    delta: &DivisorSpec,
    engine: &Engine,
) -> Result<SignatureSample> {
    signature_estimate_with(p, e, delta, Rounding::CeilQm1, engine)
}

pub fn signature_estimate_with(
    p: &RingPresentation,
    e: u32,
    delta: &DivisorSpec,
    rounding: Rounding,
    engine: &Engine,
) -> Result<SignatureSample> {
    let q = checked_q(p.p(), e)?;
    let ideal = degeneracy_ideal(p, e, delta, rounding, engine)?;
    let length = artinian_length(&ideal, engine)?;
    let rank = frobenius_rank(p, e)?;
    let estimate = Exact::new(
        i64::try_from(length).map_err(|_| Error::Resource("length overflows i64".into()))?,
        i64::try_from(rank).map_err(|_| Error::Resource("rank overflows i64".into()))?,
    );
    Ok(SignatureSample { e, q, length, estimate, rounding, zero: length == 0 })
}

/// Generic rank `q^d` of `R^{1/q}` over a perfect residue field.
pub fn frobenius_rank(p: &RingPresentation, e: u32) -> Result<u64> {
    (p.p() as u64)
        .checked_pow(e * p.dimension() as u32)
        .ok_or_else(|| Error::Resource(format!("rank {}^({e}·{}) overflows", p.p(), p.dimension())))
}

/// Fedder-style test: `(I^{[p]} : I) ⊄ m^{[p]}`.
pub fn f_purity_test(p: &RingPresentation, engine: &Engine) -> Result<bool> {
    let ideal = degeneracy_ideal(p, 1, &DivisorSpec::empty(), Rounding::CeilQm1, engine)?;
    Ok(!ideal.is_unit(engine)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn a1(p: u32) -> (RingPresentation, Engine) {
        let e = Engine::default();
        let r = Ring::new(p, &["x", "y", "z"]).unwrap();
        let v: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        let f = &(&v[0] * &v[1]) - &(&v[2] * &v[2]);
        (RingPresentation::from_generators(&r, vec![f], &e).unwrap(), e)
    }

    // ℓ(S/(M : K)) = q^n − ℓ(S/(M + K)) for Gorenstein Artinian S/M.
    fn dual_length(p: &RingPresentation, e: u32, h: &Polynomial, engine: &Engine) -> u64 {
        let q = checked_q(p.p(), e).unwrap();
        let fedder = fedder_ideal(p, e, engine).unwrap();
        let m = Ideal::bracket_maximal(p.ring(), q as u32).unwrap();
        let k = Ideal::new(p.ring(), fedder.generators().iter().map(|g| g * h).collect()).unwrap();
        q.pow(p.nvars() as u32) - artinian_length(&m.sum(&k).unwrap(), engine).unwrap()
    }

    #[test]
    fn polynomial_ring_is_regular() {
        let e = Engine::default();
        for p in [2, 3, 5] {
            let r = Ring::new(p, &["x", "y"]).unwrap();
            let pres = RingPresentation::polynomial_ring(&r);
            for k in 1..=2 {
                let q = checked_q(p, k).unwrap();
                let d = degeneracy_ideal(&pres, k, &DivisorSpec::empty(), Rounding::CeilQm1, &e).unwrap();
                assert!(d.same_ideal(&Ideal::bracket_maximal(&r, q as u32).unwrap(), &e).unwrap());
                let s = signature_estimate(&pres, k, &DivisorSpec::empty(), &e).unwrap();
                assert_eq!(s.estimate, Exact::integer(1));
                assert_eq!(s.length, q * q);
            }
            assert!(f_purity_test(&pres, &e).unwrap());
        }
    }

    #[test]
    fn a1_estimates_match_duality() {
        let (pres, e) = a1(3);
        let one = Polynomial::one(pres.ring());
        for k in 1..=3 {
            let s = signature_estimate(&pres, k, &DivisorSpec::empty(), &e).unwrap();
            assert_eq!(s.length, dual_length(&pres, k, &one, &e));
            assert!(s.estimate > Exact::integer(0) && s.estimate < Exact::integer(1));
        }
        let s1 = signature_estimate(&pres, 1, &DivisorSpec::empty(), &e).unwrap();
        assert_eq!(s1.estimate, Exact::new(5, 9));
    }

    #[test]
    fn fedder_ideal_examples() {
        let (pres, e) = a1(3);
        let f = &pres.ideal().generators()[0];
        let fed = fedder_ideal(&pres, 1, &e).unwrap();
        assert!(fed.contains(&f.pow(2).unwrap(), &e).unwrap());
        let zero = RingPresentation::polynomial_ring(pres.ring());
        assert!(fedder_ideal(&zero, 1, &e).unwrap().is_unit(&e).unwrap());
        assert!(f_purity_test(&pres, &e).unwrap());
    }

    #[test]
    fn fedder_ideal_of_complete_intersection_contains_product() {
        let e = Engine::default();
        let r = Ring::new(2, &["x", "y", "z"]).unwrap();
        let v: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        let (f, g) = (&v[0] * &v[1], &(&v[2] * &v[2]) - &(&v[0] * &v[1]));
        let pres = RingPresentation::from_generators(&r, vec![f.clone(), g.clone()], &e).unwrap();
        let fed = fedder_ideal(&pres, 1, &e).unwrap();
        assert!(fed.contains(&(&f * &g), &e).unwrap());
        assert!(!fed.contains(&f, &e).unwrap());
    }

    #[test]
    fn non_reduced_double_line_is_not_f_pure() {
        let e = Engine::default();
        let r = Ring::new(2, &["x", "y"]).unwrap();
        let x = Polynomial::var(&r, 0);
        let pres = RingPresentation::from_generators(&r, vec![&x * &x], &e).unwrap();
        assert!(!f_purity_test(&pres, &e).unwrap());
    }

    #[test]
    fn divisor_lowers_estimate_and_degenerate_divisor_is_rejected() {
        let (pres, e) = a1(3);
        let z = Polynomial::var(pres.ring(), 2);
        let half = DivisorSpec::new(pres.ring(), vec![(Exact::new(1, 2), z.clone())]).unwrap();
        let whole = DivisorSpec::new(pres.ring(), vec![(Exact::integer(1), z.clone())]).unwrap();
        for k in 1..=2 {
            let s0 = signature_estimate(&pres, k, &DivisorSpec::empty(), &e).unwrap().estimate;
            let s1 = signature_estimate(&pres, k, &half, &e).unwrap();
            let s2 = signature_estimate(&pres, k, &whole, &e).unwrap().estimate;
            assert!(s2 <= s1.estimate && s1.estimate <= s0);
            let q = checked_q(3, k).unwrap();
            let h = half.multiplier(pres.ring(), q, Rounding::CeilQm1).unwrap();
            assert_eq!(s1.length, dual_length(&pres, k, &h, &e));
        }
        let f = pres.ideal().generators()[0].clone();
        let bad = DivisorSpec::new(pres.ring(), vec![(Exact::new(1, 2), f)]).unwrap();
        assert!(matches!(signature_estimate(&pres, 1, &bad, &e), Err(Error::DegenerateDivisor(_))));
    }

    #[test]
    fn frobenius_rank_examples() {
        let (pres, _) = a1(3);
        assert_eq!(frobenius_rank(&pres, 1).unwrap(), 9);
        assert_eq!(frobenius_rank(&pres, 0).unwrap(), 1);
        let poly = RingPresentation::polynomial_ring(pres.ring());
        assert_eq!(frobenius_rank(&poly, 2).unwrap(), 729);
    }
}
