//! Matrix exponential and logarithm.
//!
//! Exact inputs whose relevant part is nilpotent get the finite power series in
//! rational arithmetic. Everything else goes through binary floats: diagonal
//! Padé with scaling and squaring for `exp`, inverse scaling and squaring
//! (Denman–Beavers square roots) plus the Mercator series for `log`.

use num_traits::One;

use super::matrix::{FMatrix, QMatrix};
use super::rational::{rat, Rational};
use crate::error::Error;

/// Result of a matrix function on exact input.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluated {
    /// Finite series summed in rational arithmetic.
    Exact(QMatrix),
    /// Float evaluation. `fallback` is set when nilpotency detection failed on
    /// exact input and the float path was taken instead.
    Approximate { value: FMatrix, fallback: bool },
}

impl Evaluated {
    pub fn to_f64(&self) -> FMatrix {
        match self {
            Evaluated::Exact(m) => m.to_f64(),
            Evaluated::Approximate { value, .. } => value.clone(),
        }
    }

    pub fn exact(&self) -> Option<&QMatrix> {
        match self {
            Evaluated::Exact(m) => Some(m),
            Evaluated::Approximate { .. } => None,
        }
    }

    pub fn fell_back(&self) -> bool {
        matches!(self, Evaluated::Approximate { fallback: true, .. })
    }
}

const PADE_ORDER: usize = 8;

fn pade_coefficients() -> [f64; PADE_ORDER + 1] {
    let fact = |n: usize| (1..=n).fold(1.0f64, |a, k| a * k as f64);
    let p = PADE_ORDER;
    let mut c = [0.0; PADE_ORDER + 1];
    for (j, cj) in c.iter_mut().enumerate() {
        *cj = fact(2 * p - j) * fact(p) / (fact(2 * p) * fact(j) * fact(p - j));
    }
    c
}

/// Exponential of a float matrix via [8/8] Padé with scaling and squaring.
pub fn expm(m: &FMatrix) -> FMatrix {
    assert!(m.is_square(), "matrix exponential needs a square matrix");
    let n = m.rows();
    let norm = m.norm1();
    if norm == 0.0 {
        return FMatrix::identity(n);
    }
    // [8/8] Padé is accurate to roundoff for norms up to about 1.5; scale to 0.5.
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let a = m.scale(&(0.5f64).powi(squarings as i32));
    let c = pade_coefficients();
    let mut num = FMatrix::zeros(n, n);
    let mut den = FMatrix::zeros(n, n);
    let mut power = FMatrix::identity(n);
    for (j, cj) in c.iter().enumerate() {
        let term = power.scale(cj);
        num = &num + &term;
        den = if j % 2 == 0 {
            &den + &term
        } else {
            &den - &term
        };
        power = power.matmul(&a);
    }
    let mut r = den
        .solve(&num)
        .expect("Padé denominator is well conditioned after scaling");
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    r
}

/// Truncated series `sum_{j<d} m^j / j!` for a float matrix known to satisfy `m^d = 0`.
pub fn expm_nilpotent(m: &FMatrix, d: usize) -> FMatrix {
    let n = m.rows();
    let mut out = FMatrix::identity(n);
    let mut term = FMatrix::identity(n);
    for j in 1..d {
        term = term.matmul(m).scale(&(1.0 / j as f64));
        out = &out + &term;
    }
    out
}

/// Exponential of an exact matrix: exact when nilpotent, float fallback otherwise.
pub fn expm_exact(m: &QMatrix) -> Evaluated {
    assert!(m.is_square(), "matrix exponential needs a square matrix");
    match m.nilpotency_index() {
        Some(d) => {
            let n = m.rows();
            let mut out = QMatrix::identity(n);
            let mut term = QMatrix::identity(n);
            for j in 1..d {
                term = term
                    .matmul(m)
                    .scale(&Rational::new(1.into(), (j as i64).into()));
                out = &out + &term;
            }
            Evaluated::Exact(out)
        }
        None => Evaluated::Approximate {
            value: expm(&m.to_f64()),
            fallback: true,
        },
    }
}

fn check_chart(distance: f64) -> Result<(), Error> {
    if distance < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfChart {
            norm: distance,
            radius: 1.0,
        })
    }
}

/// Principal logarithm of a float matrix with `||m - I||_1 < 1`.
pub fn logm(m: &FMatrix) -> Result<FMatrix, Error> {
    assert!(m.is_square(), "matrix logarithm needs a square matrix");
    let n = m.rows();
    let id = FMatrix::identity(n);
    check_chart((m - &id).norm1())?;
    let mut x = m.clone();
    let mut roots = 0u32;
    while (&x - &id).norm1() > 0.25 {
        x = sqrtm_denman_beavers(&x)?;
        roots += 1;
    }
    let e = &x - &id;
    let mut out = FMatrix::zeros(n, n);
    let mut power = e.clone();
    for k in 1..200 {
        let term = power.scale(&(if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64));
        out = &out + &term;
        if term.max_abs() < 1e-18 {
            break;
        }
        power = power.matmul(&e);
    }
    Ok(out.scale(&(2f64).powi(roots as i32)))
}

/// Finite Mercator series for a float matrix with `(m - I)^d = 0`.
pub fn logm_unipotent(m: &FMatrix, d: usize) -> FMatrix {
    let n = m.rows();
    let e = m - &FMatrix::identity(n);
    let mut out = FMatrix::zeros(n, n);
    let mut power = FMatrix::identity(n);
    for k in 1..d.max(1) {
        power = power.matmul(&e);
        out = &out + &power.scale(&(if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64));
    }
    out
}

fn sqrtm_denman_beavers(m: &FMatrix) -> Result<FMatrix, Error> {
    let n = m.rows();
    let mut y = m.clone();
    let mut z = FMatrix::identity(n);
    for _ in 0..100 {
        let yi = y.inverse()?;
        let zi = z.inverse()?;
        let y_next = (&y + &zi).scale(&0.5);
        let z_next = (&z + &yi).scale(&0.5);
        let delta = y_next.max_abs_diff(&y);
        y = y_next;
        z = z_next;
        if delta <= 1e-16 * y.max_abs().max(1.0) {
            break;
        }
    }
    Ok(y)
}

/// Logarithm of an exact matrix. Exact whenever `m - I` is nilpotent (the
/// series is then finite and no norm restriction applies); otherwise the float
/// path with its `||m - I||_1 < 1` chart condition, checked exactly.
pub fn logm_exact(m: &QMatrix) -> Result<Evaluated, Error> {
    assert!(m.is_square(), "matrix logarithm needs a square matrix");
    let n = m.rows();
    let e = m - &QMatrix::identity(n);
    if let Some(d) = e.nilpotency_index() {
        let mut out = QMatrix::zeros(n, n);
        let mut power = QMatrix::identity(n);
        for k in 1..d.max(1) {
            power = power.matmul(&e);
            let sign = if k % 2 == 1 { rat(1) } else { rat(-1) };
            out = &out + &power.scale(&(sign / rat(k as i64)));
        }
        return Ok(Evaluated::Exact(out));
    }
    let dist = e.norm1();
    if dist >= Rational::one() {
        return Err(Error::OutOfChart {
            norm: super::rational::to_f64(&dist),
            radius: 1.0,
        });
    }
    Ok(Evaluated::Approximate {
        value: logm(&m.to_f64())?,
        fallback: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ratio;

    fn q(rows: Vec<Vec<Rational>>) -> QMatrix {
        QMatrix::from_rows(rows)
    }

    fn shift3() -> QMatrix {
        q(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
        ])
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(
            expm_exact(&QMatrix::zeros(3, 3)),
            Evaluated::Exact(QMatrix::identity(3))
        );
        assert_eq!(expm(&FMatrix::zeros(2, 2)), FMatrix::identity(2));
        assert_eq!(
            expm_exact(&QMatrix::zeros(2, 2)).exact().unwrap(),
            &QMatrix::identity(2)
        );
    }

    #[test]
    fn exp_of_shift_truncates() {
        let expected = q(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(1), rat(1), rat(0)],
            vec![ratio(1, 2), rat(1), rat(1)],
        ]);
        assert_eq!(expm_exact(&shift3()), Evaluated::Exact(expected));
    }

    #[test]
    fn log_inverts_exp_exactly_on_nilpotent() {
        let e = expm_exact(&shift3());
        let l = logm_exact(e.exact().unwrap()).unwrap();
        assert_eq!(l, Evaluated::Exact(shift3()));
        assert_eq!(
            logm_exact(&QMatrix::identity(4)).unwrap(),
            Evaluated::Exact(QMatrix::zeros(4, 4))
        );
    }

    #[test]
    fn log_rejects_far_from_identity() {
        let m = q(vec![vec![ratio(5, 2), rat(0)], vec![rat(0), rat(1)]]);
        assert!(matches!(logm_exact(&m), Err(Error::OutOfChart { .. })));
        assert!(matches!(logm(&m.to_f64()), Err(Error::OutOfChart { .. })));
    }

    #[test]
    fn non_nilpotent_exact_input_falls_back() {
        let m = q(vec![vec![rat(1), rat(0)], vec![rat(0), rat(2)]]);
        let e = expm_exact(&m);
        assert!(e.fell_back());
        let v = e.to_f64();
        assert!((v[(0, 0)] - 1f64.exp()).abs() < 1e-14 * 1f64.exp());
        assert!((v[(1, 1)] - 2f64.exp()).abs() < 1e-14 * 2f64.exp());
    }

    #[test]
    fn float_exp_matches_rotation() {
        let t = 2.7f64;
        let m = FMatrix::from_rows(vec![vec![0.0, -t], vec![t, 0.0]]);
        let e = expm(&m);
        let r = FMatrix::from_rows(vec![vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]);
        assert!(e.max_abs_diff(&r) < 1e-13);
    }

    #[test]
    fn float_log_round_trip() {
        let m = FMatrix::from_rows(vec![
            vec![0.1, -0.3, 0.05],
            vec![0.2, 0.0, 0.1],
            vec![-0.1, 0.15, -0.2],
        ]);
        let g = expm(&m);
        let l = logm(&g).unwrap();
        assert!(l.max_abs_diff(&m) < 1e-12);
        let back = expm(&l);
        assert!(back.max_abs_diff(&g) <= 1e-10 * g.max_abs());
    }

    #[test]
    fn unipotent_float_log() {
        let n = shift3().to_f64().scale(&0.3);
        let g = expm_nilpotent(&n, 3);
        assert!(logm_unipotent(&g, 3).max_abs_diff(&n) < 1e-15);
        assert!(logm(&g).unwrap().max_abs_diff(&n) < 1e-13);
    }
}
