use crate::error::{Error, Result};
use crate::linalg::quadrature::{QuadratureRule, DEFAULT_ORDER};

pub const DEFAULT_CHART_RADIUS: f64 = 0.5;
pub const DEFAULT_FD_STEP: f64 = 1e-3;
pub const DEFAULT_TOL_IDENTITY: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub quad: QuadratureRule,
    pub fd_step: f64,
    pub tol_identity: f64,
    pub chart_radius: f64,
    /// Evaluate path integrals through explicit matrix paths and logarithmic
    /// derivatives instead of the closed form along `exp(s X)`. Slow; for cross-checks.
    pub general_path: bool,
}

impl IntegratorConfig {
    pub fn new(quad_order: usize, chart_radius: f64, fd_step: f64) -> Result<Self> {
        if quad_order < 3 {
            return Err(Error::InvalidConfig(format!(
                "quadrature order must be at least 3, got {quad_order}"
            )));
        }
        if !(chart_radius > 0.0 && chart_radius.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "chart radius must be positive, got {chart_radius}"
            )));
        }
        if !(fd_step > 0.0 && fd_step < chart_radius / 4.0) {
            return Err(Error::InvalidConfig(format!(
                "finite-difference step must lie in (0, {}), got {fd_step}",
                chart_radius / 4.0
            )));
        }
        Ok(IntegratorConfig {
            quad: QuadratureRule::gauss_legendre(quad_order)?,
            fd_step,
            tol_identity: DEFAULT_TOL_IDENTITY,
            chart_radius,
            general_path: false,
        })
    }

    pub fn with_general_path(mut self, on: bool) -> Self {
        self.general_path = on;
        self
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig::new(DEFAULT_ORDER, DEFAULT_CHART_RADIUS, DEFAULT_FD_STEP)
            .expect("defaults are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let d = IntegratorConfig::default();
        assert_eq!(d.quad.order(), 8);
        assert_eq!(d.fd_step, 1e-3);
        assert_eq!(d.tol_identity, 1e-9);
        assert_eq!(d.chart_radius, 0.5);
        assert!(IntegratorConfig::new(2, 0.5, 1e-3).is_err());
        assert!(IntegratorConfig::new(8, 0.5, 0.2).is_err());
        assert!(IntegratorConfig::new(8, -1.0, 1e-3).is_err());
        assert!(IntegratorConfig::new(8, 0.5, 0.0).is_err());
    }
}
