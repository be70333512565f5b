//! Seeded property suite for a [`LocalAugmentedRack`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{
    check_module_axioms, rack_differential_1_symmetric, ActionModule, RackCochainFn,
};
use crate::error::{Error, Result};
use crate::linalg::matrix::{max_abs, max_abs_diff, vec_scale, vec_sub, FMatrix};

use super::augmented::{delta2, LocalAugmentedRack, LocalRackElement};
use super::chart::GroupElement;

pub const TOL_RACK: f64 = 1e-9;
pub const TOL_POINTED: f64 = 1e-12;
pub const TOL_DERIVED: f64 = 2e-9;
pub const TOL_DELTA: f64 = 1e-5;
pub const TOL_TANGENT: f64 = 1e-4;
pub const TOL_MODULE: f64 = 1e-10;
pub const TOL_QUADRATURE: f64 = 1e-12;
pub const INJECTIVE_INPUT_SEPARATION: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Passes when the value is at most the tolerance.
    AtMost,
    /// Passes when the value exceeds the tolerance.
    Above,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub evaluated: usize,
    pub skipped: usize,
}

impl PropertyResult {
    fn new(name: &'static str, tolerance: f64, bound: Bound) -> Self {
        let value = match bound {
            Bound::AtMost => 0.0,
            Bound::Above => f64::INFINITY,
        };
        PropertyResult {
            name,
            value,
            tolerance,
            bound,
            evaluated: 0,
            skipped: 0,
        }
    }

    fn record(&mut self, r: Result<f64>) -> Result<()> {
        match r {
            Ok(v) => {
                self.value = match self.bound {
                    Bound::AtMost => self.value.max(v),
                    Bound::Above => self.value.min(v),
                };
                if v.is_nan() {
                    self.value = f64::NAN;
                }
                self.evaluated += 1;
                Ok(())
            }
            Err(Error::OutOfChart { .. }) => {
                self.skipped += 1;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    pub fn passes(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.tolerance,
            Bound::Above => self.value > self.tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub samples: usize,
    pub seed: u64,
    /// Number of triples for the cocycle identities.
    pub triples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 200,
            seed: 0,
            triples: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub properties: Vec<PropertyResult>,
    /// Samples drawn for the rack axioms.
    pub samples: usize,
    /// Samples for which some rack-axiom evaluation left the chart.
    pub skipped_samples: usize,
}

impl SuiteReport {
    pub fn passes(&self) -> bool {
        self.properties.iter().all(PropertyResult::passes)
    }

    pub fn skipped_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.skipped_samples as f64 / self.samples as f64
        }
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Draws `log g` with `||g - I||_1 < radius / 4`, by rejection.
pub fn sample_log(rack: &LocalAugmentedRack, rng: &mut impl Rng) -> Vec<f64> {
    let chart = rack.chart();
    let k = chart.g0_dim();
    let bound = chart.radius() / 4.0;
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let size = chart.algebra_matrix(&v).norm1().max(1.0);
        let x = vec_scale(&v, rng.gen_range(0.0..1.0) * bound / size);
        if chart.distance(&chart.exp_matrix(&x)) < bound {
            return x;
        }
    }
}

pub fn sample_element(rack: &LocalAugmentedRack, rng: &mut impl Rng) -> Result<LocalRackElement> {
    let x = sample_log(rack, rng);
    let a: Vec<f64> = (0..rack.center_dim())
        .map(|_| rng.gen_range(-1.0..=1.0))
        .collect();
    rack.element(&x, &a)
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

fn is_nilpotent_case(rack: &LocalAugmentedRack) -> bool {
    rack.chart().is_unipotent()
        && rack.center_action().is_nilpotent()
        && rack.hom_action().is_nilpotent()
}

/// Runs every property on seeded samples. Samples whose evaluation leaves the
/// chart are counted as skipped, never as failures.
pub fn run_suite(rack: &LocalAugmentedRack, opts: &SuiteOptions) -> Result<SuiteReport> {
    let elems = sample_elements(rack, opts.samples, opts.seed)?;
    let t = opts.triples.min(elems.len());
    let (mut props, skipped_samples) = rack_axioms(rack, &elems)?;
    props.extend(cocycle_identities(rack, &elems, t)?);
    props.extend(module_properties(rack, &elems, t)?);
    props.extend(round_trips(rack)?);
    props.extend(quadrature_stability(rack, &elems, t)?);
    props.extend(lie_properties(rack, &elems, t)?);
    Ok(SuiteReport {
        properties: props,
        samples: elems.len(),
        skipped_samples,
    })
}

pub fn sample_elements(
    rack: &LocalAugmentedRack,
    count: usize,
    seed: u64,
) -> Result<Vec<LocalRackElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_element(rack, &mut rng)).collect()
}

fn triple(elems: &[LocalRackElement], i: usize) -> (&GroupElement, &GroupElement, &GroupElement) {
    let n = elems.len();
    (&elems[i].g, &elems[(i + 1) % n].g, &elems[(i + 2) % n].g)
}

/// Self-distributivity and pointedness on consecutive triples, injectivity of
/// `u ▷ -` for the first ten samples. Also returns the number of triples skipped.
pub fn rack_axioms(
    rack: &LocalAugmentedRack,
    elems: &[LocalRackElement],
) -> Result<(Vec<PropertyResult>, usize)> {
    let one = rack.one();
    let n = elems.len();
    let mut props = Vec::new();
    let mut skipped_samples = 0;

    let mut sd = PropertyResult::new("self_distributivity", TOL_RACK, Bound::AtMost);
    let mut pointed = PropertyResult::new("pointedness", TOL_POINTED, Bound::AtMost);
    for i in 0..n {
        let (u, v, w) = (&elems[i], &elems[(i + 1) % n], &elems[(i + 2) % n]);
        let lhs = rack
            .rack_product(v, w)
            .and_then(|vw| rack.rack_product(u, &vw));
        let rhs = rack.rack_product(u, v).and_then(|uv| {
            rack.rack_product(u, w)
                .and_then(|uw| rack.rack_product(&uv, &uw))
        });
        let r = lhs.and_then(|l| rhs.map(|r| l.distance(&r)));
        if matches!(r, Err(Error::OutOfChart { .. })) {
            skipped_samples += 1;
        }
        sd.record(r)?;
        pointed.record(rack.rack_product(u, &one).map(|p| p.distance(&one)))?;
        pointed.record(rack.rack_product(&one, u).map(|p| p.distance(u)))?;
    }
    props.push(sd);
    props.push(pointed);

    let mut inj = PropertyResult::new("injectivity", TOL_POINTED, Bound::Above);
    for u in elems.iter().take(10) {
        let outs: Vec<Option<LocalRackElement>> = elems
            .iter()
            .map(|v| match rack.rack_product(u, v) {
                Ok(o) => Ok(Some(o)),
                Err(Error::OutOfChart { .. }) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        for a in 0..n {
            for b in a + 1..n {
                if let (Some(oa), Some(ob)) = (&outs[a], &outs[b]) {
                    if elems[a].distance(&elems[b]) > INJECTIVE_INPUT_SEPARATION {
                        inj.record(Ok(oa.distance(ob)))?;
                    }
                }
            }
        }
    }
    props.push(inj);
    Ok((props, skipped_samples))
}

/// Rack cocycle, ghost identity, derived relation and action compatibility on `t` triples.
pub fn cocycle_identities(
    rack: &LocalAugmentedRack,
    elems: &[LocalRackElement],
    t: usize,
) -> Result<Vec<PropertyResult>> {
    let n = elems.len();
    let mut cocycle = PropertyResult::new("rack_cocycle", TOL_RACK, Bound::AtMost);
    let mut ghost = PropertyResult::new("ghost_identity", TOL_RACK, Bound::AtMost);
    let mut derived = PropertyResult::new("derived_relation", TOL_DERIVED, Bound::AtMost);
    let mut compat = PropertyResult::new(
        "action_compatibility",
        rack.config().tol_identity,
        Bound::AtMost,
    );
    for i in 0..t {
        let (g, h, k) = triple(elems, i);
        cocycle.record(rack.rack_cocycle_defect(g, h, k).map(|d| max_abs(&d)))?;
        ghost.record(rack.ghost_identity_defect(g, h, k).map(|d| max_abs(&d)))?;
        derived.record(rack.derived_relation_defect(g, h, k).map(|d| max_abs(&d)))?;
        let w = &elems[(i + 3) % n];
        let r = rack
            .augmented_action(h, w)
            .and_then(|hw| rack.augmented_action(g, &hw))
            .and_then(|l| {
                let gh = rack.chart().mul(g, h)?;
                Ok(l.distance(&rack.augmented_action(&gh, w)?))
            });
        compat.record(r)?;
    }
    Ok(vec![cocycle, ghost, derived, compat])
}

/// Module axioms of the center and the rack cocycle property of `I¹(tau ω)`.
pub fn module_properties(
    rack: &LocalAugmentedRack,
    elems: &[LocalRackElement],
    t: usize,
) -> Result<Vec<PropertyResult>> {
    let mut module = PropertyResult::new("module_axioms", TOL_MODULE, Bound::AtMost);
    let center = rack.center_action();
    let phi = |x: &GroupElement| -> Result<FMatrix> { Ok(center.exp(x.log())) };
    let sym = ActionModule::symmetric(center.dim(), phi);
    let anti = ActionModule::anti_symmetric(center.dim(), phi);
    for i in 0..t {
        let (g, h, k) = triple(elems, i);
        let s = [(g.clone(), h.clone(), k.clone())];
        for r in [
            check_module_axioms(rack.chart(), &sym, &s),
            check_module_axioms(rack.chart(), &anti, &s),
        ] {
            module.record(r.map(|rep| {
                let m0 = if rep.m0_min_abs_det > TOL_MODULE {
                    0.0
                } else {
                    f64::INFINITY
                };
                rep.m1.max(rep.m2).max(rep.m3).max(rep.m4).max(m0)
            }))?;
        }
    }

    let mut i1 = PropertyResult::new("i1_rack_cocycle", TOL_RACK, Bound::AtMost);
    let f1 = RackCochainFn::new(1, |a: &[GroupElement]| rack.i1_tau_omega(&a[0]));
    let hom = rack.hom_action();
    for i in 0..t {
        let (g, h, _) = triple(elems, i);
        let act = |x: &GroupElement| -> Result<FMatrix> { Ok(hom.exp(x.log())) };
        i1.record(
            rack_differential_1_symmetric(rack.chart(), act, &f1, g, h).map(|d| max_abs(&d)),
        )?;
    }
    Ok(vec![module, i1])
}

/// `delta2(I²(ω)) = ω` and the tangent bracket, on basis vectors.
pub fn round_trips(rack: &LocalAugmentedRack) -> Result<Vec<PropertyResult>> {
    let k = rack.g0_dim();
    let mut left_inverse = PropertyResult::new("delta2_left_inverse", TOL_DELTA, Bound::AtMost);
    for a in 0..k {
        for b in 0..k {
            let (x, y) = (unit(k, a), unit(k, b));
            let d = delta2(|g, h| rack.i2(g, h), rack.chart(), &x, &y, rack.config());
            left_inverse.record(d.map(|d| max_abs_diff(&d, &rack.omega_f64(&x, &y))))?;
        }
    }

    let dim = rack.extension().parent().dim();
    let parent = rack.extension().parent();
    let mut tangent = PropertyResult::new("tangent_bracket", TOL_TANGENT, Bound::AtMost);
    for a in 0..dim {
        for b in 0..dim {
            let (x, y) = (unit(dim, a), unit(dim, b));
            let r = rack
                .tangent_bracket(&x, &y)
                .map(|v| max_abs_diff(&v, &parent.bracket_f64(&x, &y)));
            tangent.record(r)?;
        }
    }
    Ok(vec![left_inverse, tangent])
}

/// Order `k` against order `2k` quadrature for `I²`; empty unless every
/// integrand is polynomial.
pub fn quadrature_stability(
    rack: &LocalAugmentedRack,
    elems: &[LocalRackElement],
    t: usize,
) -> Result<Vec<PropertyResult>> {
    let mut props = Vec::new();
    if is_nilpotent_case(rack) {
        let mut cfg = rack.config().clone();
        cfg.quad = crate::linalg::quadrature::QuadratureRule::gauss_legendre(2 * cfg.quad.order())?;
        let doubled = rack.with_config(cfg)?;
        let mut quad = PropertyResult::new("quadrature_stability", TOL_QUADRATURE, Bound::AtMost);
        for i in 0..t {
            let (g, h, _) = triple(elems, i);
            let r = rack
                .i2(g, h)
                .and_then(|a| Ok(max_abs_diff(&a, &doubled.i2(g, h)?)));
            quad.record(r)?;
        }
        props.push(quad);
    }
    Ok(props)
}

/// Group associativity, conjugation against the rack product and the relation
/// between `I²` and `ι²`; empty unless the input is Lie.
pub fn lie_properties(
    rack: &LocalAugmentedRack,
    elems: &[LocalRackElement],
    t: usize,
) -> Result<Vec<PropertyResult>> {
    let n = elems.len();
    let mut props = Vec::new();
    if rack.require_lie().is_ok() {
        let mut assoc = PropertyResult::new("group_associativity", TOL_RACK, Bound::AtMost);
        let mut conj = PropertyResult::new("group_conjugation", TOL_RACK, Bound::AtMost);
        let mut rel = PropertyResult::new("iota2_relation", TOL_RACK, Bound::AtMost);
        for i in 0..t {
            let (u, v, w) = (&elems[i], &elems[(i + 1) % n], &elems[(i + 2) % n]);
            let r = rack
                .group_mul(u, v)
                .and_then(|uv| rack.group_mul(&uv, w))
                .and_then(|l| {
                    let vw = rack.group_mul(v, w)?;
                    Ok(l.distance(&rack.group_mul(u, &vw)?))
                });
            assoc.record(r)?;
            let r = rack
                .group_conj(u, v)
                .and_then(|c| Ok(c.distance(&rack.rack_product(u, v)?)));
            conj.record(r)?;
            let r = rack.chart().conjugate(&u.g, &v.g).and_then(|gh| {
                let want = vec_sub(&rack.iota2(&u.g, &v.g)?, &rack.iota2(&gh, &u.g)?);
                Ok(max_abs_diff(&rack.i2(&u.g, &v.g)?, &want))
            });
            rel.record(r)?;
        }
        props.extend([assoc, conj, rel]);
    }
    Ok(props)
}
