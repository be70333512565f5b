use crate::error::Result;
use crate::linalg::expm::expm;
use crate::linalg::matrix::FMatrix;

use super::chart::{GroupElement, LocalGroupChart};

/// `(1 - e^{-A}) / A`, read off the upper-right block of `exp [[-A, I], [0, 0]]`.
pub fn dexp(ad: &FMatrix) -> FMatrix {
    let k = ad.rows();
    let mut big = FMatrix::zeros(2 * k, 2 * k);
    (-ad).write_block(&mut big, 0, 0);
    FMatrix::identity(k).write_block(&mut big, 0, k);
    expm(&big).block(0, k, k, k)
}

/// The point `exp(s M)` of the straight path in the Lie algebra together with its
/// left logarithmic derivative `gamma(s)^{-1} gamma'(s)`, both computed from
/// matrices alone. `gamma'(s)` is the upper-right block of `exp [[sM, M], [0, sM]]`.
pub fn path_frame(chart: &LocalGroupChart, x: &[f64], s: f64) -> Result<(GroupElement, Vec<f64>)> {
    let m = chart.algebra_matrix(x);
    let n = m.rows();
    let sm = m.scale(&s);
    let mut big = FMatrix::zeros(2 * n, 2 * n);
    sm.write_block(&mut big, 0, 0);
    m.write_block(&mut big, 0, n);
    sm.write_block(&mut big, n, n);
    let e = expm(&big);
    let gamma = e.block(0, 0, n, n);
    let deriv = e.block(0, n, n, n);
    let theta = gamma.inverse()?.matmul(&deriv);
    let g = chart.from_matrix(gamma)?;
    Ok((g, chart.coords(&theta)))
}
