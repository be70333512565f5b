use num_traits::Zero;

use crate::cohomology::Cochain;
use crate::linalg::matrix::{row_space_basis, rref, QMatrix};
use crate::linalg::rational::Rational;

use super::algebra::{unit, LeibnizAlgebra};
use super::representation::Representation;

/// The canonical abelian extension `Z_L(g) -> g -> g0` in chosen coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralExtensionData {
    parent: LeibnizAlgebra,
    center_basis: Vec<Vec<Rational>>,
    complement_basis: Vec<Vec<Rational>>,
    g0: LeibnizAlgebra,
    rho: Vec<QMatrix>,
    omega: Cochain,
    section: QMatrix,
    projection: QMatrix,
    center_inclusion: QMatrix,
    center_projection: QMatrix,
    ad_matrices: Vec<QMatrix>,
}

/// Splits `g` along its left center. The center basis is the reduced echelon
/// basis of `Z_L(g)`; the complement is spanned by the standard basis vectors
/// at the non-pivot columns.
pub fn canonical_extension(alg: &LeibnizAlgebra) -> CentralExtensionData {
    let n = alg.dim();
    let center = alg.left_center();
    let center_basis = if center.is_empty() {
        Vec::new()
    } else {
        row_space_basis(&QMatrix::from_rows(center))
    };
    let pivots = if center_basis.is_empty() {
        Vec::new()
    } else {
        rref(&QMatrix::from_rows(center_basis.clone())).1
    };
    let complement_idx: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let complement_basis: Vec<Vec<Rational>> = complement_idx.iter().map(|&i| unit(n, i)).collect();
    let k = complement_basis.len();
    let m = center_basis.len();

    let section = QMatrix::from_cols(n, &complement_basis);
    let center_inclusion = QMatrix::from_cols(n, &center_basis);
    let mut full = QMatrix::zeros(n, n);
    section.write_block(&mut full, 0, 0);
    center_inclusion.write_block(&mut full, 0, k);
    let inv = full.inverse().expect("complement and center span g");
    let projection = inv.block(0, 0, k, n);
    let center_projection = inv.block(k, 0, m, n);

    let lift = |i: usize| section.col(i);
    let mut g0_brackets = Vec::new();
    let mut omega_vals = Vec::with_capacity(k * k * m);
    for i in 0..k {
        for j in 0..k {
            let b = alg.bracket(&lift(i), &lift(j)).expect("dims match");
            g0_brackets.push((i, j, projection.mul_vec(&b)));
            omega_vals.extend(center_projection.mul_vec(&b));
        }
    }
    let names: Vec<String> = complement_idx
        .iter()
        .map(|&i| alg.basis_names()[i].clone())
        .collect();
    let g0 = LeibnizAlgebra::from_brackets(names, &g0_brackets)
        .expect("quotient by the left center is Lie");
    let omega = Cochain::new(2, k, m, omega_vals).expect("shape");
    let ad_matrices: Vec<QMatrix> = (0..k).map(|i| alg.ad_left(&lift(i))).collect();
    let rho = ad_matrices
        .iter()
        .map(|a| center_projection.matmul(a).matmul(&center_inclusion))
        .collect();

    CentralExtensionData {
        parent: alg.clone(),
        center_basis,
        complement_basis,
        g0,
        rho,
        omega,
        section,
        projection,
        center_inclusion,
        center_projection,
        ad_matrices,
    }
}

impl CentralExtensionData {
    pub fn parent(&self) -> &LeibnizAlgebra {
        &self.parent
    }

    pub fn center_basis(&self) -> &[Vec<Rational>] {
        &self.center_basis
    }

    pub fn complement_basis(&self) -> &[Vec<Rational>] {
        &self.complement_basis
    }

    pub fn g0(&self) -> &LeibnizAlgebra {
        &self.g0
    }

    pub fn g0_dim(&self) -> usize {
        self.complement_basis.len()
    }

    pub fn center_dim(&self) -> usize {
        self.center_basis.len()
    }

    /// `rho[i]` is the action of the `i`-th basis vector of `g0` on the center.
    pub fn rho(&self) -> &[QMatrix] {
        &self.rho
    }

    pub fn rho_of(&self, x: &[Rational]) -> QMatrix {
        let m = self.center_dim();
        QMatrix::combination(x, &self.rho, (m, m))
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    /// `g0 -> g`, columns are the complement basis.
    pub fn section(&self) -> &QMatrix {
        &self.section
    }

    pub fn projection(&self) -> &QMatrix {
        &self.projection
    }

    pub fn center_inclusion(&self) -> &QMatrix {
        &self.center_inclusion
    }

    pub fn center_projection(&self) -> &QMatrix {
        &self.center_projection
    }

    /// `ad_L(section e_i)` in `End(g)`: the faithful matrix realization of `g0`.
    pub fn ad_matrices(&self) -> &[QMatrix] {
        &self.ad_matrices
    }

    /// Matrices of `ad` in `g0` itself.
    pub fn ad_g0(&self) -> Vec<QMatrix> {
        (0..self.g0_dim()).map(|i| self.g0.left_mult(i)).collect()
    }

    /// The center as an anti-symmetric `g0`-module.
    pub fn center_representation(&self) -> Representation {
        Representation::anti_symmetric_on(&self.g0, self.center_dim(), self.rho.clone())
            .expect("rho is a Lie representation of g0")
    }

    /// The center as a symmetric `g0`-module.
    pub fn center_representation_symmetric(&self) -> Representation {
        Representation::symmetric_on(&self.g0, self.center_dim(), self.rho.clone())
            .expect("rho is a Lie representation of g0")
    }

    /// Splits a vector of `g` into `(g0 part, center part)`.
    pub fn split(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        (
            self.projection.mul_vec(v),
            self.center_projection.mul_vec(v),
        )
    }

    /// `section x + inclusion a`.
    pub fn join(&self, x: &[Rational], a: &[Rational]) -> Vec<Rational> {
        let s = self.section.mul_vec(x);
        let c = self.center_inclusion.mul_vec(a);
        s.iter().zip(&c).map(|(p, q)| p + q).collect()
    }

    pub fn join_f64(&self, x: &[f64], a: &[f64]) -> Vec<f64> {
        let s = self.section.to_f64().mul_vec(x);
        let c = self.center_inclusion.to_f64().mul_vec(a);
        s.iter().zip(&c).map(|(p, q)| p + q).collect()
    }

    /// The bracket of `g0 ⊕_ω Z_L(g)`: `([x,y], rho_x b + ω(x,y))`.
    pub fn extension_bracket(
        &self,
        (x, _a): (&[Rational], &[Rational]),
        (y, b): (&[Rational], &[Rational]),
    ) -> (Vec<Rational>, Vec<Rational>) {
        let xy = self.g0.bracket(x, y).expect("dims match");
        let mut c = self.rho_of(x).mul_vec(b);
        for (ci, w) in c.iter_mut().zip(self.omega.eval(&[x, y])) {
            *ci += w;
        }
        (xy, c)
    }

    /// Whether `section ∘ projection + inclusion ∘ center_projection = id`.
    pub fn splits_identity(&self) -> bool {
        let n = self.parent.dim();
        let a = self.section.matmul(&self.projection);
        let b = self.center_inclusion.matmul(&self.center_projection);
        &a + &b == QMatrix::identity(n)
    }

    pub fn is_zero_omega(&self) -> bool {
        self.omega.values().iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::leibniz_differential;
    use crate::corpus;
    use crate::linalg::rational::{is_zero_vec, rat};

    #[test]
    fn dim5_extension() {
        let ext = canonical_extension(&corpus::dim5());
        assert_eq!(ext.center_basis(), &[unit(5, 2), unit(5, 3), unit(5, 4)]);
        assert_eq!(ext.complement_basis(), &[unit(5, 0), unit(5, 1)]);
        assert!(ext.g0().is_lie());
        assert!(ext.g0().tensor().iter().all(Zero::is_zero));
        // rho_x = [[0,0,0],[x1,0,0],[x2,x1,0]]
        let r1 = QMatrix::from_rows(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
        ]);
        let r2 = QMatrix::from_rows(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(0)],
            vec![rat(1), rat(0), rat(0)],
        ]);
        assert_eq!(ext.rho(), &[r1, r2]);
        // omega(x, y) = (x1 (y1 + y2), x2 (y1 + y2), 0)
        for (x1, x2, y1, y2) in [(1, 0, 1, 0), (2, -3, 5, 7), (0, 1, -1, 4)] {
            let w = ext
                .omega()
                .eval(&[&[rat(x1), rat(x2)], &[rat(y1), rat(y2)]]);
            assert_eq!(w, vec![rat(x1 * (y1 + y2)), rat(x2 * (y1 + y2)), rat(0)]);
        }
        assert!(ext.splits_identity());
    }

    #[test]
    fn abelian_extension_is_degenerate() {
        let ext = canonical_extension(&LeibnizAlgebra::abelian(3));
        assert_eq!(ext.g0_dim(), 0);
        assert_eq!(ext.center_dim(), 3);
        assert!(ext.omega().values().is_empty());
        assert!(ext.splits_identity());
    }

    #[test]
    fn heisenberg_area_form() {
        let ext = canonical_extension(&corpus::heisenberg());
        assert_eq!(ext.g0_dim(), 2);
        assert!(ext.g0().tensor().iter().all(Zero::is_zero));
        assert!(ext.rho().iter().all(|m| m.is_zero()));
        for (x1, x2, y1, y2) in [(1, 0, 0, 1), (2, 3, -1, 5)] {
            let w = ext
                .omega()
                .eval(&[&[rat(x1), rat(x2)], &[rat(y1), rat(y2)]]);
            assert_eq!(w, vec![rat(x1 * y2 - x2 * y1)]);
        }
    }

    #[test]
    fn round_trip_bracket_on_corpus() {
        for (name, g) in corpus::test_corpus() {
            let ext = canonical_extension(&g);
            assert!(ext.splits_identity(), "{name}");
            assert!(ext.g0().is_lie(), "{name}");
            let n = g.dim();
            for i in 0..n {
                for j in 0..n {
                    let (x, a) = ext.split(&unit(n, i));
                    let (y, b) = ext.split(&unit(n, j));
                    let (z, c) = ext.extension_bracket((&x, &a), (&y, &b));
                    assert_eq!(
                        ext.join(&z, &c),
                        g.structure(i, j).to_vec(),
                        "{name} ({i},{j})"
                    );
                }
            }
            for (i, r) in ext.rho().iter().enumerate() {
                for (k, zb) in ext.center_basis().iter().enumerate() {
                    let lifted = ext.section().col(i);
                    let direct = ext
                        .center_projection()
                        .mul_vec(&g.bracket(&lifted, zb).unwrap());
                    assert_eq!(direct, r.col(k), "{name}");
                }
            }
            let rep = ext.center_representation();
            let d = leibniz_differential(ext.g0(), &rep, ext.omega()).unwrap();
            assert!(is_zero_vec(d.values()), "{name}");
        }
    }
}
