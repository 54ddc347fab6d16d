//! Splitting decided by finite-dimensional linear algebra, without Groebner bases.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

use super::degeneracy::checked_q;
use super::divisor::{DivisorSpec, Rounding};
use super::presentation::RingPresentation;

const MAX_VARS: usize = 3;
const MAX_DEGREE: u32 = 12;
const MAX_UNKNOWNS: usize = 5000;

/// All exponent vectors in `n` variables of total degree `<= bound`, graded.
fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::from_exponents(cur).expect("bounded exponents"));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, bound, &mut vec![0; n], &mut out);
    out.sort_by_key(|m| m.degree());
    out
}

fn index_of(monomials: &[Monomial]) -> FxHashMap<Monomial, usize> {
    monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

/// Truncation `(I^{[q]} : I)_{≤ D}` as a spanning list of polynomials.
///
/// For homogeneous `I` the colon is graded, so truncating by degree loses
/// nothing; for principal `I = (f)` the colon is `(f^{q-1})` and the bound
/// covers that generator.
fn colon_truncation(p: &RingPresentation, q: u64, bound: u32) -> Result<Vec<Polynomial>> {
    let ring = p.ring();
    let field = *ring.field();
    let n = ring.nvars();
    let gens = p.ideal().generators();
    let unknowns = monomials_up_to(n, bound);
    if gens.is_empty() {
        return Ok(unknowns.iter().map(|m| Polynomial::term(ring, *m, 1)).collect());
    }
    let powers = gens.iter().map(|g| g.pow(q)).collect::<Result<Vec<_>>>()?;

    // Unknowns: coefficients of u, then for each (j, k) the coefficients c of
    // x^β g_k^q. Equations: u·g_j − Σ_k Σ_β c_{j,k,β} x^β g_k^q = 0 for each j.
    let mut columns: Vec<FxHashMap<usize, u32>> = Vec::new();
    let mut row_offset = Vec::with_capacity(gens.len());
    let mut row_index = Vec::with_capacity(gens.len());
    let mut height = 0;
    for g in gens {
        let rows = monomials_up_to(n, bound + g.total_degree());
        row_offset.push(height);
        height += rows.len();
        row_index.push(index_of(&rows));
    }
    for u in &unknowns {
        let mut col = FxHashMap::default();
        for (j, g) in gens.iter().enumerate() {
            for (m, c) in g.terms() {
                let prod = u.checked_mul(m).ok_or_else(|| Error::Resource("exponent overflow".into()))?;
                col.insert(row_offset[j] + row_index[j][&prod], *c);
            }
        }
        columns.push(col);
    }
    for (j, g) in gens.iter().enumerate() {
        let top = bound + g.total_degree();
        for gq in &powers {
            let dq = gq.total_degree();
            if dq > top {
                continue;
            }
            for beta in monomials_up_to(n, top - dq) {
                let mut col = FxHashMap::default();
                for (m, c) in gq.terms() {
                    let prod = beta.checked_mul(m).ok_or_else(|| Error::Resource("exponent overflow".into()))?;
                    col.insert(row_offset[j] + row_index[j][&prod], field.neg(*c));
                }
                columns.push(col);
            }
        }
    }
    if columns.len() > MAX_UNKNOWNS {
        return Err(Error::OracleScope(format!(
            "{} unknowns exceed the oracle budget of {MAX_UNKNOWNS}",
            columns.len()
        )));
    }
    let dense: Vec<Vec<u32>> = columns
        .iter()
        .map(|col| {
            let mut v = vec![0u32; height];
            for (&r, &c) in col {
                v[r] = c;
            }
            v
        })
        .collect();
    let basis = kernel(field, &dense, height);
    let mut out = Vec::new();
    for v in basis {
        let terms: Vec<(Monomial, u32)> =
            unknowns.iter().zip(&v).filter(|(_, &c)| c != 0).map(|(m, &c)| (*m, c)).collect();
        if !terms.is_empty() {
            out.push(Polynomial::from_terms(ring, Default::default(), terms));
        }
    }
    Ok(out)
}

fn check_guard(p: &RingPresentation, e: u32, a: &Polynomial, h: &Polynomial) -> Result<()> {
    let scope = |msg: String| Err(Error::OracleScope(msg));
    if p.nvars() > MAX_VARS {
        return scope(format!("{} variables exceed the oracle limit of {MAX_VARS}", p.nvars()));
    }
    if e != 1 {
        return scope(format!("the oracle handles e = 1 only, got e = {e}"));
    }
    let gens = p.ideal().generators();
    let degrees = gens.iter().map(|g| g.total_degree()).chain([a.total_degree(), h.total_degree()]);
    if let Some(d) = degrees.into_iter().find(|&d| d > MAX_DEGREE) {
        return scope(format!("degree {d} exceeds the oracle limit of {MAX_DEGREE}"));
    }
    if gens.len() > 1 && !gens.iter().all(|g| g.is_homogeneous()) {
        return scope("non-principal ideals must be homogeneous for the oracle".into());
    }
    Ok(())
}

/// Whether `R → R^{1/q}(D_e)`, `1 ↦ a^{1/q}`, splits at the origin.
///
/// Decided as: some `u ∈ (I^{[q]} : I)` has `a·h_e·u ∉ m^{[q]}`, with the
/// colon replaced by its degree truncation obtained from a kernel computation.
pub fn splitting_oracle(p: &RingPresentation, e: u32, a: &Polynomial, delta: &DivisorSpec) -> Result<bool> {
    let q = checked_q(p.p(), e)?;
    let h = delta.multiplier(p.ring(), q, Rounding::CeilQm1)?;
    check_guard(p, e, a, &h)?;
    let n = p.nvars() as u32;
    let max_gen = p.ideal().generators().iter().map(|g| g.total_degree()).max().unwrap_or(0);
    let bound = (n * (q as u32 - 1)).max((q as u32 - 1) * max_gen);
    let ah = a.try_mul(&h)?;
    if ah.truncate_below(q as u32).is_zero() {
        return Ok(false);
    }
    for u in colon_truncation(p, q, bound)? {
        if !ah.try_mul(&u)?.truncate_below(q as u32).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every monomial with all exponents `< q`: the panel on which oracle and
/// colon formula are compared.
pub fn exhaustive_panel(p: &RingPresentation, q: u64) -> Vec<Polynomial> {
    let n = p.nvars();
    let mut out = Vec::new();
    let total = (q as usize).pow(n as u32);
    for mut code in 0..total {
        let exps: Vec<u32> = (0..n)
            .map(|_| {
                let d = (code % q as usize) as u32;
                code /= q as usize;
                d
            })
            .collect();
        out.push(Polynomial::term(p.ring(), Monomial::from_exponents(&exps).expect("small exponents"), 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Engine;
    use crate::poly::Ring;
    use crate::signature::degeneracy_ideal;

    #[test]
    fn regular_ring_splits_unit() {
        let r = Ring::new(3, &["x", "y", "z"]).unwrap();
        let p = RingPresentation::polynomial_ring(&r);
        assert!(splitting_oracle(&p, 1, &Polynomial::one(&r), &DivisorSpec::empty()).unwrap());
        let x3 = Polynomial::var(&r, 0).pow(3).unwrap();
        assert!(!splitting_oracle(&p, 1, &x3, &DivisorSpec::empty()).unwrap());
    }

    #[test]
    fn a1_panel_agrees_with_colon_formula() {
        let e = Engine::default();
        let r = Ring::new(3, &["x", "y", "z"]).unwrap();
        let v: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        let f = &(&v[0] * &v[1]) - &(&v[2] * &v[2]);
        let p = RingPresentation::from_generators(&r, vec![f], &e).unwrap();
        let d = degeneracy_ideal(&p, 1, &DivisorSpec::empty(), Rounding::CeilQm1, &e).unwrap();
        let panel = exhaustive_panel(&p, 3);
        assert_eq!(panel.len(), 27);
        let mut split = 0;
        for a in &panel {
            let verdict = splitting_oracle(&p, 1, a, &DivisorSpec::empty()).unwrap();
            assert_eq!(verdict, !d.contains(a, &e).unwrap(), "disagreement at {a}");
            split += verdict as usize;
        }
        // a·f^2 keeps x^2y^2 or xyz^2 modulo m^[3] exactly for a ∈ {1, x, y, z, xy, z^2}
        assert_eq!(split, 6);
    }

    #[test]
    fn guard_rejects_large_instances() {
        let e = Engine::default();
        let r = Ring::new(3, &["x", "y", "z"]).unwrap();
        let p = RingPresentation::polynomial_ring(&r);
        let one = Polynomial::one(&r);
        assert!(matches!(splitting_oracle(&p, 2, &one, &DivisorSpec::empty()), Err(Error::OracleScope(_))));
        let r4 = Ring::new(2, &["a", "b", "c", "d"]).unwrap();
        let p4 = RingPresentation::polynomial_ring(&r4);
        let one4 = Polynomial::one(&r4);
        assert!(matches!(splitting_oracle(&p4, 1, &one4, &DivisorSpec::empty()), Err(Error::OracleScope(_))));
        let v: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        let gens = vec![&v[0] - &(&v[1] * &v[1]), &v[2] * &v[0]];
        let bent = RingPresentation::from_generators(&r, gens, &e).unwrap();
        assert!(matches!(splitting_oracle(&bent, 1, &one, &DivisorSpec::empty()), Err(Error::OracleScope(_))));
    }
}
