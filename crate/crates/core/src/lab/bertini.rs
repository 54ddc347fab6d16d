use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{jacobian_ideal, krull_dimension, Engine, Ideal};
use crate::poly::Polynomial;
use crate::rational::Exact;
use crate::signature::{signature_estimate, DivisorSpec, RingPresentation};

use super::experiments::convergence_check;
use super::report::{ExperimentKind, ExperimentReport, HyperplaneRecord, HyperplaneSample, SlicePoint, SliceStatus};

const MAX_ENUMERATION_P: u32 = 7;
const MAX_ENUMERATION_VARS: usize = 4;

pub const RATIONAL_SAMPLING_CAVEAT: &str = "hyperplanes and points are F_p-rational; at small p such samples \
may systematically miss the behaviour of truly general hyperplanes";

fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Seeded affine hyperplanes `Σ c_i x_i = c_0` over `F_p` with `c ≠ 0`.
pub fn hyperplane_sample(seed: u64, count: usize, n: usize, p: u32, through: Option<&[u32]>) -> Vec<HyperplaneSample> {
    (0..count as u64)
        .map(|index| {
            let mut rng = rng_for(seed, index);
            let coefficients = loop {
                let c: Vec<u32> = (0..n).map(|_| rng.random_range(0..p)).collect();
                if c.iter().any(|&x| x != 0) {
                    break c;
                }
            };
            let constant = match through {
                Some(point) => coefficients
                    .iter()
                    .zip(point)
                    .fold(0u64, |acc, (&c, &a)| (acc + c as u64 * (a % p) as u64) % p as u64) as u32,
                None => rng.random_range(0..p),
            };
            HyperplaneSample { index, seed, coefficients, constant }
        })
        .collect()
}

/// Every point of `F_p^n` on which all `polys` vanish, in lexicographic order.
pub fn rational_points(polys: &[Polynomial], n: usize, p: u32) -> Result<Vec<Vec<u32>>> {
    if p > MAX_ENUMERATION_P || n > MAX_ENUMERATION_VARS {
        return Err(Error::usage(format!(
            "point enumeration needs p ≤ {MAX_ENUMERATION_P} and at most {MAX_ENUMERATION_VARS} variables"
        )));
    }
    let total = (p as usize).pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut point = vec![0u32; n];
        for slot in point.iter_mut().rev() {
            *slot = (rest % p as usize) as u32;
            rest /= p as usize;
        }
        if polys.iter().all(|g| g.evaluate(&point) == 0) {
            out.push(point);
        }
    }
    Ok(out)
}

/// Dimension of the singular locus, `None` when it is empty.
fn singular_dimension(ideal: &Ideal, engine: &Engine) -> Result<Option<usize>> {
    match krull_dimension(&jacobian_ideal(ideal, engine)?, engine) {
        Ok(d) => Ok(Some(d)),
        Err(Error::EmptyScheme) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The slice `X ∩ H` presented in the `n − 1` coordinates left after solving
/// `ℓ = 0` for its last variable with nonzero coefficient.
struct Slice {
    eliminated: usize,
    ideal: Ideal,
    divisor: DivisorSpec,
}

fn build_slice(x: &RingPresentation, delta: &DivisorSpec, h: &HyperplaneSample) -> Result<Slice> {
    let ring = x.ring();
    let field = ring.field();
    let k = h.coefficients.iter().rposition(|&c| c != 0).expect("nonzero hyperplane");
    let inv = field.inv(h.coefficients[k])?;
    // x_k = c_k^{-1} (c_0 − Σ_{i≠k} c_i x_i)
    let mut solved = Polynomial::constant(ring, field.mul(inv, h.constant) as i64);
    for (i, &c) in h.coefficients.iter().enumerate() {
        if i != k && c != 0 {
            solved = solved.try_sub(&Polynomial::var(ring, i).scale(field.mul(inv, c)))?;
        }
    }
    let images: Vec<Polynomial> =
        (0..ring.nvars()).map(|i| if i == k { solved.clone() } else { Polynomial::var(ring, i) }).collect();
    let target = ring.without_var(k)?;
    let restrict = |g: &Polynomial| g.substitute(&images)?.remove_var(&target, k);
    let gens = x.ideal().generators().iter().map(restrict).collect::<Result<Vec<_>>>()?;
    Ok(Slice { eliminated: k, ideal: Ideal::new(&target, gens)?, divisor: delta.map_elements(restrict)? })
}

pub struct BertiniParams {
    pub lambda: Exact,
    pub e: u32,
    pub seed: u64,
    pub count: usize,
    /// Smooth rational points sampled per slice in addition to the singular ones.
    pub smooth_points: usize,
    /// Defaults to `C/p^e` with `C` fitted by [`convergence_check`] up to `e + 1`.
    pub tolerance: Option<Exact>,
}

impl BertiniParams {
    pub fn new(lambda: Exact, e: u32, seed: u64, count: usize) -> Self {
        BertiniParams { lambda, e, seed, count, smooth_points: 2, tolerance: None }
    }
}

struct Context<'a> {
    x: &'a RingPresentation,
    delta: &'a DivisorSpec,
    params: &'a BertiniParams,
    tolerance: Exact,
    sing_x: Option<usize>,
    engine: &'a Engine,
}

fn examine(ctx: &Context, h: HyperplaneSample) -> Result<HyperplaneRecord> {
    let record = |status, detail: String, points| HyperplaneRecord {
        sample: h.clone(),
        status,
        detail,
        points,
        min_slice: None,
        part1: false,
        part2: false,
    };
    let slice = build_slice(ctx.x, ctx.delta, &h)?;
    let engine = ctx.engine;
    let dim_y = match krull_dimension(&slice.ideal, engine) {
        Ok(d) => d,
        Err(Error::EmptyScheme) => return Ok(record(SliceStatus::EmptySlice, "slice ideal is the unit ideal".into(), vec![])),
        Err(e) => return Err(e),
    };
    for term in slice.divisor.terms() {
        if term.element.is_zero() || slice.ideal.contains(&term.element, engine)? {
            return Ok(record(
                SliceStatus::DivisorDegenerates,
                format!("{} restricts into the slice ideal", term.element),
                vec![],
            ));
        }
    }
    let expected_dim = ctx.x.dimension().checked_sub(1);
    let sing_y = singular_dimension(&slice.ideal, engine)?;
    let transverse = Some(dim_y) == expected_dim
        && match (ctx.sing_x, sing_y) {
            (_, None) => true,
            (Some(sx), Some(sy)) => sy < sx,
            (None, Some(_)) => false,
        };
    if !transverse {
        return Ok(record(
            SliceStatus::NonTransverse,
            format!("dim Y = {dim_y}, dim Sing Y = {sing_y:?}, dim Sing X = {:?}", ctx.sing_x),
            vec![],
        ));
    }

    let n_y = slice.ideal.ring().nvars();
    let p = ctx.x.p();
    let points = rational_points(slice.ideal.generators(), n_y, p)?;
    if points.is_empty() {
        return Ok(record(SliceStatus::EmptySlice, "no F_p-rational points".into(), vec![]));
    }
    let jac = jacobian_ideal(&slice.ideal, engine)?;
    let (singular, smooth): (Vec<_>, Vec<_>) =
        points.into_iter().partition(|pt| jac.generators().iter().all(|g| g.evaluate(pt) == 0));
    let mut rng = rng_for(ctx.params.seed ^ 0x9e37_79b9_7f4a_7c15, h.index);
    let mut chosen_smooth: Vec<usize> =
        sample_indices(&mut rng, smooth.len(), ctx.params.smooth_points.min(smooth.len())).into_vec();
    chosen_smooth.sort_unstable();

    let lift = |pt: &[u32]| -> Vec<u32> {
        // recover the eliminated coordinate from ℓ = 0
        let field = ctx.x.ring().field();
        let k = slice.eliminated;
        let mut full: Vec<u32> = pt.to_vec();
        full.insert(k, 0);
        let rest = h
            .coefficients
            .iter()
            .zip(&full)
            .fold(0u32, |acc, (&c, &a)| field.add(acc, field.mul(c, a)));
        full[k] = field.mul(field.inv(h.coefficients[k]).expect("nonzero"), field.sub(h.constant, rest));
        full
    };

    let mut out_points = Vec::new();
    let selected = singular
        .iter()
        .map(|pt| (pt, true))
        .chain(chosen_smooth.iter().map(|&i| (&smooth[i], false)));
    for (pt, is_singular) in selected {
        let y = RingPresentation::at_point(slice.ideal.clone(), pt, engine)?;
        let delta_y = slice.divisor.translate(slice.ideal.ring(), pt)?;
        let slice_sample = signature_estimate(&y, ctx.params.e, &delta_y, engine)?;
        let full = lift(pt);
        let x_here = RingPresentation::at_point(ctx.x.ideal().clone(), &full, engine)?;
        let delta_x = ctx.delta.translate(ctx.x.ring(), &full)?;
        let upstream = signature_estimate(&x_here, ctx.params.e, &delta_x, engine)?;
        let on_divisor = ctx.delta.terms().iter().any(|t| t.element.evaluate(&full) == 0);
        out_points.push(SlicePoint {
            coordinates: full,
            singular: is_singular,
            on_divisor,
            slice: slice_sample,
            upstream,
        });
    }

    let threshold = ctx.params.lambda - ctx.tolerance;
    let min_slice = out_points.iter().map(|pt| pt.slice.estimate).min();
    let part1 = min_slice.is_some_and(|m| m > threshold);
    let part2 = out_points
        .iter()
        .filter(|pt| pt.upstream.estimate > ctx.params.lambda)
        .all(|pt| pt.slice.estimate > threshold);
    Ok(HyperplaneRecord {
        sample: h,
        status: SliceStatus::Ok,
        detail: format!("dim Y = {dim_y}, dim Sing Y = {sing_y:?}"),
        points: out_points,
        min_slice,
        part1,
        part2,
    })
}

/// Slices `X` by seeded hyperplanes and compares slice estimates at rational
/// points against `λ` and against the estimates on `X` at the same points.
pub fn bertini_experiment(
    x: &RingPresentation,
    delta: &DivisorSpec,
    params: &BertiniParams,
    engine: &Engine,
) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(ExperimentKind::Bertini, "", x.p());
    report.seed = Some(params.seed);
    report.parameter("lambda", params.lambda);
    report.parameter("e", params.e);
    report.parameter("samples", params.count);
    report.parameter("smooth_points", params.smooth_points);
    report.notes.push(RATIONAL_SAMPLING_CAVEAT.to_string());
    if x.p() > MAX_ENUMERATION_P || x.nvars() > MAX_ENUMERATION_VARS {
        return Err(Error::usage(format!(
            "bertini needs p ≤ {MAX_ENUMERATION_P} and at most {MAX_ENUMERATION_VARS} variables"
        )));
    }
    if x.dimension() == 0 {
        return Err(Error::usage("cannot slice a zero-dimensional scheme"));
    }

    let tolerance = match params.tolerance {
        Some(t) => t,
        None => {
            let conv = report.time("convergence", || {
                convergence_check(x, delta, params.e + 1, Exact::integer(2), engine)
            })?;
            let c = conv.decay_constant.unwrap_or_default();
            report.decay_constant = Some(c);
            c / Exact::integer((x.p() as i64).pow(params.e))
        }
    };
    report.parameter("tolerance", tolerance);
    let sing_x = singular_dimension(x.ideal(), engine)?;

    let ctx = Context { x, delta, params, tolerance, sing_x, engine };
    let samples = hyperplane_sample(params.seed, params.count, x.nvars(), x.p(), None);
    let start = std::time::Instant::now();
    let records: Vec<HyperplaneRecord> =
        samples.into_par_iter().map(|h| examine(&ctx, h)).collect::<Result<Vec<_>>>()?;
    report.record("slices", start.elapsed());

    let pool: Vec<&HyperplaneRecord> = records.iter().filter(|r| r.status == SliceStatus::Ok).collect();
    let excluded = records.len() - pool.len();
    let hits1 = pool.iter().filter(|r| r.part1).count();
    let hits2 = pool.iter().filter(|r| r.part2).count();
    let fraction = |hits: usize| {
        if pool.is_empty() {
            Exact::integer(1)
        } else {
            Exact::new(hits as i64, pool.len() as i64)
        }
    };
    let (part1, part2) = (fraction(hits1), fraction(hits2));
    report.diagnostic("part1_fraction", params.e, part1);
    report.diagnostic("part2_fraction", params.e, part2);
    if pool.is_empty() {
        report.notes.push("no usable hyperplane: every sample was excluded".into());
    }
    report.verdict(
        "part1",
        part1 == Exact::integer(1),
        format!("min slice s_e > λ − tol on {hits1} of {} usable hyperplanes ({excluded} excluded)", pool.len()),
    );
    report.verdict(
        "part2",
        part2 >= Exact::new(9, 10),
        format!("locus containment on {hits2} of {} usable hyperplanes, 90% required", pool.len()),
    );
    let smooth_ok = pool
        .iter()
        .flat_map(|r| &r.points)
        .filter(|pt| !pt.singular && !pt.on_divisor)
        .all(|pt| pt.slice.estimate == Exact::integer(1));
    report.verdict("smooth_points_regular", smooth_ok, "smooth slice points off the divisor have s_e = 1");
    for r in records.iter().filter(|r| r.status == SliceStatus::DivisorDegenerates) {
        report.notes.push(format!("hyperplane {} excluded: {}", r.sample.index, r.detail));
    }
    report.hyperplanes = records;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn hyperplanes_are_deterministic_and_nonzero() {
        let a = hyperplane_sample(7, 10, 4, 3, None);
        assert_eq!(a, hyperplane_sample(7, 10, 4, 3, None));
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|h| h.coefficients.len() == 4 && h.coefficients.iter().any(|&c| c != 0)));
        assert!(a.iter().all(|h| h.coefficients.iter().all(|&c| c < 3)));
        let through = hyperplane_sample(7, 5, 3, 5, Some(&[0, 0, 0]));
        assert!(through.iter().all(|h| h.constant == 0));
        let at = hyperplane_sample(1, 5, 2, 5, Some(&[1, 2]));
        assert!(at.iter().all(|h| (h.coefficients[0] + 2 * h.coefficients[1]) % 5 == h.constant));
    }

    #[test]
    fn smooth_fixture_slices_are_regular() {
        let e = Engine::default();
        let r = Ring::new(3, &["x", "y", "z"]).unwrap();
        let x = RingPresentation::from_generators(&r, vec![Polynomial::var(&r, 0)], &e).unwrap();
        let params = BertiniParams::new(Exact::new(9, 10), 1, 3, 6);
        let report = bertini_experiment(&x, &DivisorSpec::empty(), &params, &e).unwrap();
        assert!(report.passed(), "{report:#?}");
        for h in report.hyperplanes.iter().filter(|h| h.status == SliceStatus::Ok) {
            assert!(h.points.iter().all(|pt| pt.slice.estimate == Exact::integer(1)));
        }
    }
}
