use crate::cohomology::{
    check_lie_cocycle, hom_representation, rack_differential_2_antisymmetric, tau, Cochain,
    PointedRack, RackCochainFn,
};
use crate::error::{Error, Result};
use crate::leibniz::{canonical_extension, CentralExtensionData, LeibnizAlgebra};
use crate::linalg::matrix::{vec_add, vec_scale, vec_sub, FMatrix};

use super::chart::{GroupElement, LocalGroupChart, ModuleAction};
use super::config::IntegratorConfig;
use super::paths::{dexp, path_frame};

/// A point `(g, a)` of `G0 × a`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalRackElement {
    pub g: GroupElement,
    pub a: Vec<f64>,
}

impl LocalRackElement {
    /// Sup-distance of the group matrices and center parts.
    pub fn distance(&self, other: &LocalRackElement) -> f64 {
        let dg = self.g.matrix().max_abs_diff(other.g.matrix());
        let da = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        dg.max(da)
    }
}

/// The local augmented Lie rack `G0 ×_{I²(ω)} a` integrating a Leibniz algebra.
#[derive(Clone, Debug)]
pub struct LocalAugmentedRack {
    ext: CentralExtensionData,
    chart: LocalGroupChart,
    center: ModuleAction,
    hom: ModuleAction,
    omega: Cochain,
    tau_omega: Cochain,
    lie_cocycle: Option<Error>,
    cfg: IntegratorConfig,
}

impl LocalAugmentedRack {
    pub fn new(alg: &LeibnizAlgebra, cfg: IntegratorConfig) -> Result<Self> {
        Self::from_extension(canonical_extension(alg), cfg)
    }

    pub fn from_extension(ext: CentralExtensionData, cfg: IntegratorConfig) -> Result<Self> {
        let chart = LocalGroupChart::new(&ext, cfg.chart_radius)?;
        let rep = ext.center_representation();
        let center = ModuleAction::new(ext.center_dim(), ext.rho());
        let hom_rep = hom_representation(ext.g0(), &rep)?;
        let hom = ModuleAction::new(hom_rep.carrier_dim(), hom_rep.left());
        let omega = ext.omega().clone();
        let tau_omega = if ext.g0_dim() == 0 {
            Cochain::zero(1, 0, 0)
        } else {
            tau(&omega)?
        };
        let lie_cocycle = if ext.parent().is_lie() {
            check_lie_cocycle(ext.g0(), ext.rho(), &omega).err()
        } else {
            Some(Error::NotLie)
        };
        Ok(LocalAugmentedRack {
            ext,
            chart,
            center,
            hom,
            omega,
            tau_omega,
            lie_cocycle,
            cfg,
        })
    }

    /// The same rack evaluated with another configuration.
    pub fn with_config(&self, cfg: IntegratorConfig) -> Result<Self> {
        Self::from_extension(self.ext.clone(), cfg)
    }

    pub fn extension(&self) -> &CentralExtensionData {
        &self.ext
    }

    pub fn chart(&self) -> &LocalGroupChart {
        &self.chart
    }

    pub fn config(&self) -> &IntegratorConfig {
        &self.cfg
    }

    pub fn g0_dim(&self) -> usize {
        self.ext.g0_dim()
    }

    pub fn center_dim(&self) -> usize {
        self.ext.center_dim()
    }

    pub fn center_action(&self) -> &ModuleAction {
        &self.center
    }

    pub fn hom_action(&self) -> &ModuleAction {
        &self.hom
    }

    pub fn omega_f64(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.omega.eval_f64(&[x, y])
    }

    pub fn exp(&self, x: &[f64]) -> Result<GroupElement> {
        self.chart.exp(x)
    }

    pub fn element(&self, x: &[f64], a: &[f64]) -> Result<LocalRackElement> {
        if a.len() != self.center_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.center_dim(),
                found: a.len(),
            });
        }
        Ok(LocalRackElement {
            g: self.chart.exp(x)?,
            a: a.to_vec(),
        })
    }

    pub fn one(&self) -> LocalRackElement {
        LocalRackElement {
            g: self.chart.identity(),
            a: vec![0.0; self.center_dim()],
        }
    }

    /// `g.b` on the center: `phi_g = exp(rho_{log g})`.
    pub fn phi(&self, g: &GroupElement) -> FMatrix {
        self.center.exp(g.log())
    }

    /// `∫_0^1 exp(s A_X) beta(X) ds` with `X = log g`: the path integral of the
    /// equivariant 1-form of `beta` along `s -> exp(s X)`.
    pub fn i1(&self, beta: &Cochain, action: &ModuleAction, g: &GroupElement) -> Result<Vec<f64>> {
        check_one_cochain(beta, self.g0_dim(), action.dim())?;
        let x = g.log();
        let v = beta.eval_f64(&[x]);
        Ok(self
            .cfg
            .quad
            .integrate_01(|s| action.exp(&vec_scale(x, s)).mul_vec(&v)))
    }

    /// Same integral, with the left logarithmic derivative and the point of the
    /// path both recomputed from matrices at each node.
    pub fn i1_general(
        &self,
        beta: &Cochain,
        action: &ModuleAction,
        g: &GroupElement,
    ) -> Result<Vec<f64>> {
        check_one_cochain(beta, self.g0_dim(), action.dim())?;
        let x = g.log();
        self.cfg.quad.try_integrate_01(|s| {
            let (p, theta) = path_frame(&self.chart, x, s)?;
            Ok(action.exp(p.log()).mul_vec(&beta.eval_f64(&[&theta])))
        })
    }

    /// `I¹(tau(ω))(g)` in `Hom(g0, a)`, index `j * dim a + k`.
    pub fn i1_tau_omega(&self, g: &GroupElement) -> Result<Vec<f64>> {
        if self.cfg.general_path {
            self.i1_general(&self.tau_omega, &self.hom, g)
        } else {
            self.i1(&self.tau_omega, &self.hom, g)
        }
    }

    fn apply_hom(&self, alpha: &[f64], y: &[f64]) -> Vec<f64> {
        let m = self.center_dim();
        let mut out = vec![0.0; m];
        for (j, yj) in y.iter().enumerate() {
            for k in 0..m {
                out[k] += yj * alpha[j * m + k];
            }
        }
        out
    }

    /// `I²(ω)(g, h)`: the path integral of the equivariant form of `I¹(tau ω)(g)`
    /// along `t -> exp(t log(g▷h))`.
    pub fn i2(&self, g: &GroupElement, h: &GroupElement) -> Result<Vec<f64>> {
        let gh = self.chart.conjugate(g, h)?;
        let alpha = self.i1_tau_omega(g)?;
        let y = gh.log();
        if self.cfg.general_path {
            self.cfg.quad.try_integrate_01(|t| {
                let (p, theta) = path_frame(&self.chart, y, t)?;
                Ok(self.phi(&p).mul_vec(&self.apply_hom(&alpha, &theta)))
            })
        } else {
            let v = self.apply_hom(&alpha, y);
            Ok(self
                .cfg
                .quad
                .integrate_01(|t| self.center.exp(&vec_scale(y, t)).mul_vec(&v)))
        }
    }

    /// `(g, a) ▷ (h, b) = (g▷h, g.b + I²(ω)(g, h))`.
    pub fn rack_product(
        &self,
        u: &LocalRackElement,
        v: &LocalRackElement,
    ) -> Result<LocalRackElement> {
        self.augmented_action(&u.g, v)
    }

    /// `rho(g, (h, b)) = (g▷h, g.b + I²(ω)(g, h))`.
    pub fn augmented_action(
        &self,
        g: &GroupElement,
        v: &LocalRackElement,
    ) -> Result<LocalRackElement> {
        let gh = self.chart.conjugate(g, &v.g)?;
        let a = vec_add(&self.phi(g).mul_vec(&v.a), &self.i2(g, &v.g)?);
        Ok(LocalRackElement { g: gh, a })
    }

    /// `g.I²(h,k) - I²(gh,k) + I²(g,h▷k)`.
    pub fn ghost_identity_defect(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        k: &GroupElement,
    ) -> Result<Vec<f64>> {
        let gh = self.chart.mul(g, h)?;
        let hk = self.chart.conjugate(h, k)?;
        let a = self.phi(g).mul_vec(&self.i2(h, k)?);
        let b = self.i2(&gh, k)?;
        let c = self.i2(g, &hk)?;
        Ok(vec_add(&vec_sub(&a, &b), &c))
    }

    /// `I²(ω)` as a rack 2-cochain on the chart.
    pub fn i2_cochain(&self) -> RackCochainFn<'_, GroupElement> {
        RackCochainFn::new(2, move |args: &[GroupElement]| self.i2(&args[0], &args[1]))
    }

    /// `d_R I²(ω)(g, h, k)` for the anti-symmetric module `a`.
    pub fn rack_cocycle_defect(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        k: &GroupElement,
    ) -> Result<Vec<f64>> {
        let f = self.i2_cochain();
        rack_differential_2_antisymmetric(
            &self.chart,
            |x: &GroupElement| Ok(self.phi(x)),
            &f,
            g,
            h,
            k,
        )
    }

    /// `d_R I²(g,h,k) - (b(g,h,k) - b(g▷h,g,k))` where `b` is the ghost combination.
    pub fn derived_relation_defect(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        k: &GroupElement,
    ) -> Result<Vec<f64>> {
        let d = self.rack_cocycle_defect(g, h, k)?;
        let gh = self.chart.conjugate(g, h)?;
        let b1 = self.ghost_identity_defect(g, h, k)?;
        let b2 = self.ghost_identity_defect(&gh, g, k)?;
        Ok(vec_sub(&d, &vec_sub(&b1, &b2)))
    }

    /// The bracket recovered at `(1, 0)`: the mixed second difference of
    /// `(exp(s x0), s xa) ▷ (exp(t y0), t yb)`, returned in the coordinates of `g`.
    pub fn tangent_bracket(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        let n = self.ext.parent().dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let proj = self.ext.projection().to_f64();
        let cproj = self.ext.center_projection().to_f64();
        let (x0, xa) = (proj.mul_vec(x), cproj.mul_vec(x));
        let (y0, yb) = (proj.mul_vec(y), cproj.mul_vec(y));
        let k = self.g0_dim();
        let f = |s: f64, t: f64| -> Result<Vec<f64>> {
            let u = self.element(&vec_scale(&x0, s), &vec_scale(&xa, s))?;
            let v = self.element(&vec_scale(&y0, t), &vec_scale(&yb, t))?;
            let w = self.rack_product(&u, &v)?;
            Ok([w.g.log(), &w.a[..]].concat())
        };
        let d = mixed_difference(f, self.cfg.fd_step)?;
        Ok(self.ext.join_f64(&d[..k], &d[k..]))
    }

    /// Errors unless the parent algebra is Lie and `ω` is an alternating Lie cocycle.
    pub fn require_lie(&self) -> Result<()> {
        match &self.lie_cocycle {
            None => Ok(()),
            Some(e) => Err(e.clone()),
        }
    }

    /// `ι²(ω)(g, h)`: the integral of the equivariant 2-form of `ω` over the
    /// 2-simplex `(t, s) -> exp(t log(g exp(s log h)) + s log(g exp((1-t) log h)))`,
    /// whose boundary is `γ_g - γ_{gh} + g γ_h`.
    pub fn iota2(&self, g: &GroupElement, h: &GroupElement) -> Result<Vec<f64>> {
        self.require_lie()?;
        let hl = h.log();
        let quad = &self.cfg.quad;
        let point = |p: f64| self.chart.mul(g, &self.chart.exp(&vec_scale(hl, p))?);
        let dexp_inv = |z: &[f64], v: &[f64]| -> Result<Vec<f64>> {
            let d = dexp(&self.chart.ad_g0(z));
            let col = FMatrix::from_cols(v.len(), &[v.to_vec()]);
            Ok(d.solve(&col)?.col(0))
        };
        let outer = |s: f64| -> Result<Vec<f64>> {
            let a = point(s)?;
            let a_log = a.log().to_vec();
            let a_dot = dexp_inv(&a_log, hl)?;
            let inner = |u: f64| -> Result<Vec<f64>> {
                let t = (1.0 - s) * u;
                let b = point(1.0 - t)?;
                let b_log = b.log().to_vec();
                let b_dot = vec_scale(&dexp_inv(&b_log, hl)?, -1.0);
                let z = vec_add(&vec_scale(&a_log, t), &vec_scale(&b_log, s));
                let zt = vec_add(&a_log, &vec_scale(&b_dot, s));
                let zs = vec_add(&vec_scale(&a_dot, t), &b_log);
                let d = dexp(&self.chart.ad_g0(&z));
                let p = self.chart.exp(&z)?;
                let w = self.omega.eval_f64(&[&d.mul_vec(&zt), &d.mul_vec(&zs)]);
                Ok(vec_scale(&self.phi(&p).mul_vec(&w), 1.0 - s))
            };
            quad.try_integrate_01(inner)
        };
        quad.try_integrate_01(outer)
    }

    /// Group law of the Lie case: `(g,a)(h,b) = (gh, a + g.b + ι²(ω)(g,h))`.
    pub fn group_mul(
        &self,
        u: &LocalRackElement,
        v: &LocalRackElement,
    ) -> Result<LocalRackElement> {
        let gh = self.chart.mul(&u.g, &v.g)?;
        let a = vec_add(
            &vec_add(&u.a, &self.phi(&u.g).mul_vec(&v.a)),
            &self.iota2(&u.g, &v.g)?,
        );
        Ok(LocalRackElement { g: gh, a })
    }

    pub fn group_inverse(&self, u: &LocalRackElement) -> Result<LocalRackElement> {
        let gi = self.chart.inverse(&u.g)?;
        let c = vec_add(&u.a, &self.iota2(&u.g, &gi)?);
        let a = vec_scale(&self.phi(&gi).mul_vec(&c), -1.0);
        Ok(LocalRackElement { g: gi, a })
    }

    /// `u v u^{-1}` in the Lie case.
    pub fn group_conj(
        &self,
        u: &LocalRackElement,
        v: &LocalRackElement,
    ) -> Result<LocalRackElement> {
        let uv = self.group_mul(u, v)?;
        self.group_mul(&uv, &self.group_inverse(u)?)
    }
}

fn check_one_cochain(beta: &Cochain, d: usize, m: usize) -> Result<()> {
    if beta.degree() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: beta.degree(),
        });
    }
    if beta.domain_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: beta.domain_dim(),
        });
    }
    if beta.coeff_dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: beta.coeff_dim(),
        });
    }
    Ok(())
}

/// `[f(h,h) - f(h,-h) - f(-h,h) + f(-h,-h)] / 4h²`.
pub fn mixed_difference(f: impl Fn(f64, f64) -> Result<Vec<f64>>, h: f64) -> Result<Vec<f64>> {
    let pp = f(h, h)?;
    let pm = f(h, -h)?;
    let mp = f(-h, h)?;
    let mm = f(-h, -h)?;
    let num = vec_add(&vec_sub(&vec_sub(&pp, &pm), &mp), &mm);
    Ok(vec_scale(&num, 1.0 / (4.0 * h * h)))
}

/// Second mixed derivative at the origin of `(s, t) -> f(exp(s x), exp(t y))`.
pub fn delta2(
    f: impl Fn(&GroupElement, &GroupElement) -> Result<Vec<f64>>,
    chart: &LocalGroupChart,
    x: &[f64],
    y: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Vec<f64>> {
    mixed_difference(
        |s, t| f(&chart.exp(&vec_scale(x, s))?, &chart.exp(&vec_scale(y, t))?),
        cfg.fd_step,
    )
}

impl PointedRack for LocalAugmentedRack {
    type Elem = LocalRackElement;

    fn one(&self) -> LocalRackElement {
        LocalAugmentedRack::one(self)
    }

    fn conj(&self, x: &LocalRackElement, y: &LocalRackElement) -> Result<LocalRackElement> {
        self.rack_product(x, y)
    }
}
