use num_traits::Zero;

use crate::error::{Error, Result};
use crate::leibniz::{Flavor, LeibnizAlgebra, Representation};
use crate::linalg::matrix::QMatrix;
use crate::linalg::rational::{self, Rational};

use super::cochain::{Cochain, MultiIndex};

/// The Leibniz coboundary `dL: CL^n(g, M) -> CL^{n+1}(g, M)`.
///
/// For `n >= 1`, on `(x_0, ..., x_n)`:
/// `sum_{i<n} (-1)^i [x_i, w(.., x̂_i, ..)]_L + (-1)^{n-1} [w(x_0..x_{n-1}), x_n]_R
///  + sum_{i<j} (-1)^{i+1} w(.., x̂_i, .., x_{j-1}, [x_i, x_j], x_{j+1}, ..)`.
///
/// In degree 0, `dL b(x) = -[b, x]_R`, which is `[x, b]_L` on symmetric modules.
pub fn leibniz_differential(
    alg: &LeibnizAlgebra,
    rep: &Representation,
    w: &Cochain,
) -> Result<Cochain> {
    let d = alg.dim();
    let m = rep.carrier_dim();
    if w.domain_dim() != d || rep.domain_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: w.domain_dim(),
        });
    }
    if w.coeff_dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: w.coeff_dim(),
        });
    }
    let n = w.degree();
    if n == 0 {
        let b = w.at(&[]);
        return Ok(Cochain::from_fn(1, d, m, |x| {
            rep.right()[x[0]]
                .mul_vec(b)
                .into_iter()
                .map(|v| -v)
                .collect()
        }));
    }
    Ok(Cochain::from_fn(n + 1, d, m, |x| {
        let mut out = vec![Rational::zero(); m];
        for i in 0..n {
            let rest: Vec<usize> = x
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &v)| v)
                .collect();
            let v = rep.left()[x[i]].mul_vec(w.at(&rest));
            add_signed(&mut out, &v, i % 2 == 0);
        }
        let v = rep.right()[x[n]].mul_vec(w.at(&x[..n]));
        add_signed(&mut out, &v, (n - 1) % 2 == 0);
        for i in 0..=n {
            for j in i + 1..=n {
                let br = alg.structure(x[i], x[j]);
                let positive = (i + 1) % 2 == 0;
                let mut args: Vec<usize> = x
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, &v)| v)
                    .collect();
                // x_j sits at position j - 1 once x_i is removed.
                for (k, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    args[j - 1] = k;
                    let v: Vec<Rational> = w.at(&args).iter().map(|a| a * c).collect();
                    add_signed(&mut out, &v, positive);
                }
            }
        }
        out
    }))
}

fn add_signed(out: &mut [Rational], v: &[Rational], positive: bool) {
    for (o, x) in out.iter_mut().zip(v) {
        if positive {
            *o += x;
        } else {
            *o -= x;
        }
    }
}

/// Curries the last slot: `tau(w)(x_1..x_{n-1})(x_n) = w(x_1..x_n)`. The
/// result has coefficients in `Hom(g, M)`, index `j * dim M + k` holding the
/// `k`-th coordinate of the image of `e_j`.
pub fn tau(w: &Cochain) -> Result<Cochain> {
    if w.degree() == 0 {
        return Err(Error::InvalidConfig(
            "tau needs a cochain of degree at least 1".into(),
        ));
    }
    // The dense layout already puts the last argument next to the coefficient index.
    Cochain::new(
        w.degree() - 1,
        w.domain_dim(),
        w.domain_dim() * w.coeff_dim(),
        w.values().to_vec(),
    )
}

pub fn tau_inverse(w: &Cochain, coeff_dim: usize) -> Result<Cochain> {
    let d = w.domain_dim();
    if w.coeff_dim() != d * coeff_dim {
        return Err(Error::DimensionMismatch {
            expected: d * coeff_dim,
            found: w.coeff_dim(),
        });
    }
    Cochain::new(w.degree() + 1, d, coeff_dim, w.values().to_vec())
}

/// The symmetric representation of a Lie algebra on `Hom(g, M)`:
/// `(x.a)(y) = x.(a(y)) - a([x, y])`.
pub fn hom_representation(alg: &LeibnizAlgebra, rep: &Representation) -> Result<Representation> {
    if !alg.is_lie() {
        return Err(Error::NotLie);
    }
    let d = alg.dim();
    let m = rep.carrier_dim();
    let left = (0..d)
        .map(|x| {
            let mut a = QMatrix::zeros(d * m, d * m);
            let lx = &rep.left()[x];
            for j in 0..d {
                for k in 0..m {
                    for kk in 0..m {
                        if !lx[(k, kk)].is_zero() {
                            a[(j * m + k, j * m + kk)] += &lx[(k, kk)];
                        }
                    }
                    for (jj, c) in alg.structure(x, j).iter().enumerate() {
                        if !c.is_zero() {
                            a[(j * m + k, jj * m + k)] -= c;
                        }
                    }
                }
            }
            a
        })
        .collect();
    let lie_rep = Representation::symmetric_on(alg, d * m, left)?;
    debug_assert_eq!(lie_rep.flavor(), Flavor::Symmetric);
    Ok(lie_rep)
}

/// The whole map `dL^n` as a matrix on the flattened cochain space.
pub fn differential_matrix(
    alg: &LeibnizAlgebra,
    rep: &Representation,
    degree: usize,
) -> Result<QMatrix> {
    let d = alg.dim();
    let m = rep.carrier_dim();
    let src = d.pow(degree as u32) * m;
    let dst = d.pow(degree as u32 + 1) * m;
    let mut out = QMatrix::zeros(dst, src);
    for c in 0..src {
        let mut values = vec![Rational::zero(); src];
        values[c] = rational::rat(1);
        let img = leibniz_differential(alg, rep, &Cochain::new(degree, d, m, values)?)?;
        for (r, v) in img.values().iter().enumerate() {
            out[(r, c)] = v.clone();
        }
    }
    Ok(out)
}

/// Checks that `w` is an alternating Lie 2-cocycle of a Lie algebra with values
/// in a module given by `rho` (one matrix per basis element):
/// `rho_x w(y,z) - rho_y w(x,z) + rho_z w(x,y) - w([x,y],z) + w([x,z],y) - w([y,z],x) = 0`.
pub fn check_lie_cocycle(alg: &LeibnizAlgebra, rho: &[QMatrix], w: &Cochain) -> Result<()> {
    if !alg.is_lie() {
        return Err(Error::NotLie);
    }
    if w.degree() != 2 {
        return Err(Error::NotLieCocycle("degree is not 2"));
    }
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let s: Vec<Rational> = w
                .at(&[i, j])
                .iter()
                .zip(w.at(&[j, i]))
                .map(|(a, b)| a + b)
                .collect();
            if !rational::is_zero_vec(&s) {
                return Err(Error::NotLieCocycle("not alternating"));
            }
        }
    }
    for idx in MultiIndex::new(3, d) {
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        let ev = |a: &[Rational], b: usize| w.eval(&[a, &crate::leibniz::unit(d, b)]);
        let mut out = rho[x].mul_vec(w.at(&[y, z]));
        add_signed(&mut out, &rho[y].mul_vec(w.at(&[x, z])), false);
        add_signed(&mut out, &rho[z].mul_vec(w.at(&[x, y])), true);
        add_signed(&mut out, &ev(alg.structure(x, y), z), false);
        add_signed(&mut out, &ev(alg.structure(x, z), y), true);
        add_signed(&mut out, &ev(alg.structure(y, z), x), false);
        if !rational::is_zero_vec(&out) {
            return Err(Error::NotLieCocycle("cocycle identity fails"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::leibniz::{canonical_extension, unit};
    use crate::linalg::rational::rat;

    #[test]
    fn dim5_omega_is_cocycle() {
        let ext = canonical_extension(&corpus::dim5());
        let rep = ext.center_representation();
        let d = leibniz_differential(ext.g0(), &rep, ext.omega()).unwrap();
        assert_eq!(d.degree(), 3);
        assert!(d.is_zero());
    }

    #[test]
    fn zero_cochain_maps_to_zero() {
        let ext = canonical_extension(&corpus::dim5());
        let rep = ext.center_representation();
        for n in 0..3 {
            let z = Cochain::zero(n, 2, 3);
            assert!(leibniz_differential(ext.g0(), &rep, &z).unwrap().is_zero());
        }
    }

    #[test]
    fn degree_one_example() {
        // alpha(e1) = e3, alpha(e2) = 0 in center coordinates (e3, e4, e5).
        let ext = canonical_extension(&corpus::dim5());
        let rep = ext.center_representation();
        let alpha = Cochain::from_fn(1, 2, 3, |i| {
            if i[0] == 0 {
                unit(3, 0)
            } else {
                vec![rat(0); 3]
            }
        });
        let d = leibniz_differential(ext.g0(), &rep, &alpha).unwrap();
        assert_eq!(d.at(&[0, 0]), unit(3, 1).as_slice());
        // dL alpha(x, y) = rho_x(alpha(y)) on an abelian g0
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(
                    d.at(&[x, y]),
                    ext.rho()[x].mul_vec(alpha.at(&[y])).as_slice()
                );
            }
        }
    }

    #[test]
    fn tau_round_trip_and_chain_map() {
        let ext = canonical_extension(&corpus::dim5());
        let w = ext.omega();
        let t = tau(w).unwrap();
        assert_eq!(t.degree(), 1);
        assert_eq!(t.coeff_dim(), 6);
        assert_eq!(&tau_inverse(&t, 3).unwrap(), w);
        // tau(w)(x)(y) = w(x, y)
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(&t.at(&[x])[y * 3..y * 3 + 3], w.at(&[x, y]));
            }
        }
        let rep = ext.center_representation();
        let hom = hom_representation(ext.g0(), &rep).unwrap();
        let lhs = tau(&leibniz_differential(ext.g0(), &rep, w).unwrap()).unwrap();
        let rhs = leibniz_differential(ext.g0(), &hom, &t).unwrap();
        assert_eq!(lhs, rhs);
        assert!(rhs.is_zero());
    }

    #[test]
    fn hom_rep_by_definition() {
        // Heisenberg Lie algebra acting on itself; entrywise (x.a)(y) = [x, a(y)] - a([x, y]).
        let h = corpus::heisenberg();
        let rep = Representation::symmetric(&h, (0..3).map(|i| h.left_mult(i)).collect()).unwrap();
        let hom = hom_representation(&h, &rep).unwrap();
        assert_eq!(hom.carrier_dim(), 9);
        for x in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    // a = elementary map e_j -> e_k
                    let mut a = vec![rat(0); 9];
                    a[j * 3 + k] = rat(1);
                    let got = hom.left()[x].mul_vec(&a);
                    for y in 0..3 {
                        let ay = &a[y * 3..y * 3 + 3];
                        let xay = h.bracket(&unit(3, x), ay).unwrap();
                        let xy = h.bracket(&unit(3, x), &unit(3, y)).unwrap();
                        let a_xy: Vec<Rational> = (0..3)
                            .map(|kk| (0..3).map(|jj| &xy[jj] * &a[jj * 3 + kk]).sum())
                            .collect();
                        let want: Vec<Rational> =
                            xay.iter().zip(&a_xy).map(|(p, q)| p - q).collect();
                        assert_eq!(&got[y * 3..y * 3 + 3], want.as_slice());
                    }
                }
            }
        }
    }

    #[test]
    fn hom_rep_needs_lie() {
        let g = corpus::dim5();
        let rep = Representation::trivial(&g, 1);
        assert_eq!(hom_representation(&g, &rep).unwrap_err(), Error::NotLie);
    }

    #[test]
    fn trivial_hom_rep_on_abelian() {
        let a = LeibnizAlgebra::abelian(2);
        let hom = hom_representation(&a, &Representation::trivial(&a, 3)).unwrap();
        assert!(hom.left().iter().all(|m| m.is_zero()));
    }

    #[test]
    fn heisenberg_area_form_is_lie_cocycle() {
        let ext = canonical_extension(&corpus::heisenberg());
        assert!(check_lie_cocycle(ext.g0(), ext.rho(), ext.omega()).is_ok());
        let dim5 = canonical_extension(&corpus::dim5());
        assert_eq!(
            check_lie_cocycle(dim5.g0(), dim5.rho(), dim5.omega()).unwrap_err(),
            Error::NotLieCocycle("not alternating")
        );
    }
}
