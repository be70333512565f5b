//! Gauss–Legendre quadrature on the unit interval.

use crate::error::Error;

pub const DEFAULT_ORDER: usize = 8;

/// A `k`-point Gauss–Legendre rule mapped to `[0, 1]`. Exact for polynomials of
/// degree at most `2k - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn gauss_legendre(order: usize) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::InvalidConfig(
                "quadrature order must be positive".into(),
            ));
        }
        let k = order;
        let mut nodes = vec![0.0; k];
        let mut weights = vec![0.0; k];
        // Roots are symmetric about zero; compute the non-negative half by Newton's method.
        for i in 0..k.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(k, x);
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(k, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // Map [-1, 1] to [0, 1].
            nodes[i] = 0.5 * (1.0 - x);
            nodes[k - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[k - 1 - i] = 0.5 * w;
        }
        Ok(QuadratureRule { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate_scalar(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// Integrates a vector-valued function over `[0, 1]`, componentwise.
    pub fn integrate_01(&self, f: impl Fn(f64) -> Vec<f64>) -> Vec<f64> {
        self.try_integrate_01(|t| Ok::<_, Error>(f(t)))
            .expect("infallible integrand")
    }

    pub fn try_integrate_01<E>(
        &self,
        f: impl Fn(f64) -> Result<Vec<f64>, E>,
    ) -> Result<Vec<f64>, E> {
        let mut acc: Option<Vec<f64>> = None;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(t)?;
            match acc.as_mut() {
                None => acc = Some(v.into_iter().map(|x| w * x).collect()),
                Some(a) => {
                    assert_eq!(a.len(), v.len(), "integrand changed dimension");
                    for (ai, vi) in a.iter_mut().zip(v) {
                        *ai += w * vi;
                    }
                }
            }
        }
        Ok(acc.unwrap_or_default())
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::gauss_legendre(DEFAULT_ORDER).expect("default order is positive")
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
