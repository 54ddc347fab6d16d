use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, Engine, Ideal};
use crate::poly::{Polynomial, Ring};

/// `S/I` localized at the origin of `S = F_p[x_1, ..., x_n]`.
///
/// The distinguished maximal ideal is always `(x_1, ..., x_n)`; other
/// rational points are handled by [`translate_point`].
#[derive(Clone, Debug)]
pub struct RingPresentation {
    ring: Arc<Ring>,
    ideal: Ideal,
    dimension: usize,
}

impl RingPresentation {
    /// Validates `I ⊆ m` and `I ≠ (1)` and caches `dim S/I`. Primality of `I`
    /// is assumed, not checked.
    pub fn new(ideal: Ideal, engine: &Engine) -> Result<Self> {
        let ring = ideal.ring().clone();
        let origin = vec![0u32; ring.nvars()];
        if let Some(g) = ideal.generators().iter().find(|g| g.evaluate(&origin) != 0) {
            return Err(Error::usage(format!("generator {g} does not vanish at the distinguished point")));
        }
        let dimension = krull_dimension(&ideal, engine)?;
        Ok(RingPresentation { ring, ideal, dimension })
    }

    pub fn from_generators(ring: &Arc<Ring>, gens: Vec<Polynomial>, engine: &Engine) -> Result<Self> {
        Self::new(Ideal::new(ring, gens)?, engine)
    }

    /// `S/I` localized at the rational point `point ∈ V(I)`, translated to the origin.
    pub fn at_point(ideal: Ideal, point: &[u32], engine: &Engine) -> Result<Self> {
        let ring = ideal.ring().clone();
        let dimension = krull_dimension(&ideal, engine)?;
        translate_point(&RingPresentation { ring, ideal, dimension }, point, engine)
    }

    /// The polynomial ring itself, `I = (0)`.
    pub fn polynomial_ring(ring: &Arc<Ring>) -> Self {
        RingPresentation { ring: ring.clone(), ideal: Ideal::zero(ring), dimension: ring.nvars() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn maximal_ideal(&self) -> Ideal {
        Ideal::maximal(&self.ring)
    }

    /// `R = A[w_1, ..., w_δ]`: the same ideal in a ring with `delta` fresh variables appended.
    pub fn adjoin_variables(&self, delta: usize) -> Result<RingPresentation> {
        let names = fresh_names(&self.ring, delta);
        let target = self.ring.with_appended(&names)?;
        Ok(RingPresentation {
            ideal: self.ideal.extend_to(&target)?,
            dimension: self.dimension + delta,
            ring: target,
        })
    }
}

fn fresh_names(ring: &Ring, count: usize) -> Vec<String> {
    (1..=count)
        .map(|i| {
            let mut name = format!("w{i}");
            while ring.var_index(&name).is_some() {
                name.push('_');
            }
            name
        })
        .collect()
}

/// Images `x_i ↦ x_i + a_i` realising the translation of `point` to the origin.
pub(crate) fn shift_images(ring: &Arc<Ring>, point: &[u32]) -> Vec<Polynomial> {
    (0..ring.nvars())
        .map(|i| &Polynomial::var(ring, i) + &Polynomial::constant(ring, point[i] as i64))
        .collect()
}

/// Moves the rational point `point ∈ V(I)` to the origin.
pub fn translate_point(
    presentation: &RingPresentation,
    point: &[u32],
    engine: &Engine,
) -> Result<RingPresentation> {
    let ring = &presentation.ring;
    if point.len() != ring.nvars() {
        return Err(Error::usage(format!(
            "point has {} coordinates, ring has {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    let point: Vec<u32> = point.iter().map(|&a| a % ring.p()).collect();
    if let Some(g) = presentation.ideal.generators().iter().find(|g| g.evaluate(&point) != 0) {
        return Err(Error::usage(format!("point {point:?} is not on the variety: {g} does not vanish")));
    }
    if point.iter().all(|&a| a == 0) {
        return Ok(presentation.clone());
    }
    let images = shift_images(ring, &point);
    let gens = presentation
        .ideal
        .generators()
        .iter()
        .map(|g| g.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(ring, gens)?;
    let dimension = if presentation.ideal.is_zero() { ring.nvars() } else { krull_dimension(&ideal, engine)? };
    Ok(RingPresentation { ring: ring.clone(), ideal, dimension })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_examples() {
        let e = Engine::default();
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let parabola = RingPresentation::from_generators(&r, vec![&y - &(&x * &x)], &e).unwrap();
        let same = translate_point(&parabola, &[0, 0], &e).unwrap();
        assert_eq!(same.ideal().generators(), parabola.ideal().generators());

        let moved = translate_point(&parabola, &[1, 1], &e).unwrap();
        let expect = &(&y - &x.scale(2)) - &(&x * &x);
        assert!(moved.ideal().same_ideal(&Ideal::new(&r, vec![expect]).unwrap(), &e).unwrap());
        assert!(moved.ideal().generators().iter().all(|g| g.evaluate(&[0, 0]) == 0));
        assert_eq!(moved.dimension(), 1);

        assert!(matches!(translate_point(&parabola, &[1, 2], &e), Err(Error::Usage(_))));
    }

    #[test]
    fn generators_must_vanish_at_origin() {
        let e = Engine::default();
        let r = Ring::new(3, &["x"]).unwrap();
        let g = &Polynomial::var(&r, 0) + &Polynomial::one(&r);
        assert!(RingPresentation::from_generators(&r, vec![g], &e).is_err());
    }

    #[test]
    fn adjoined_variables_avoid_name_clashes() {
        let r = Ring::new(3, &["x", "w1"]).unwrap();
        let p = RingPresentation::polynomial_ring(&r).adjoin_variables(2).unwrap();
        assert_eq!(p.ring().vars(), &["x", "w1", "w1_", "w2"]);
        assert_eq!(p.dimension(), 4);
    }
}
