use crate::error::{Error, Result};
use crate::linalg::matrix::QMatrix;
use crate::linalg::rational::Rational;

use super::algebra::LeibnizAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Symmetric,
    AntiSymmetric,
    General,
}

/// A Leibniz representation: `left[i]` is `m -> [e_i, m]_L`, `right[i]` is
/// `m -> [m, e_i]_R`, both as `carrier x carrier` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    carrier_dim: usize,
    left: Vec<QMatrix>,
    right: Vec<QMatrix>,
    flavor: Flavor,
}

impl Representation {
    pub fn general(alg: &LeibnizAlgebra, left: Vec<QMatrix>, right: Vec<QMatrix>) -> Result<Self> {
        let c = carrier_of(&left);
        Self::build(alg, c, left, right, Flavor::General)
    }

    pub fn symmetric(alg: &LeibnizAlgebra, left: Vec<QMatrix>) -> Result<Self> {
        Self::symmetric_on(alg, carrier_of(&left), left)
    }

    pub fn anti_symmetric(alg: &LeibnizAlgebra, left: Vec<QMatrix>) -> Result<Self> {
        Self::anti_symmetric_on(alg, carrier_of(&left), left)
    }

    /// Like [`Representation::symmetric`] with an explicit carrier dimension,
    /// needed when `alg` is zero-dimensional.
    pub fn symmetric_on(
        alg: &LeibnizAlgebra,
        carrier_dim: usize,
        left: Vec<QMatrix>,
    ) -> Result<Self> {
        let right = left.iter().map(|m| -m).collect();
        Self::build(alg, carrier_dim, left, right, Flavor::Symmetric)
    }

    pub fn anti_symmetric_on(
        alg: &LeibnizAlgebra,
        carrier_dim: usize,
        left: Vec<QMatrix>,
    ) -> Result<Self> {
        let right = vec![QMatrix::zeros(carrier_dim, carrier_dim); left.len()];
        Self::build(alg, carrier_dim, left, right, Flavor::AntiSymmetric)
    }

    /// `g` acting on itself: `[x, m]_L = [x, m]`, `[m, y]_R = [m, y]`.
    pub fn adjoint(alg: &LeibnizAlgebra) -> Self {
        let n = alg.dim();
        let left = (0..n).map(|i| alg.left_mult(i)).collect();
        let right = (0..n).map(|i| alg.right_mult(i)).collect();
        Self::build(alg, n, left, right, Flavor::General)
            .expect("adjoint action satisfies the axioms")
    }

    pub fn trivial(alg: &LeibnizAlgebra, carrier_dim: usize) -> Self {
        let zero = vec![QMatrix::zeros(carrier_dim, carrier_dim); alg.dim()];
        Representation {
            carrier_dim,
            left: zero.clone(),
            right: zero,
            flavor: Flavor::Symmetric,
        }
    }

    fn build(
        alg: &LeibnizAlgebra,
        carrier_dim: usize,
        left: Vec<QMatrix>,
        right: Vec<QMatrix>,
        flavor: Flavor,
    ) -> Result<Self> {
        for v in [&left, &right] {
            if v.len() != alg.dim() {
                return Err(Error::DimensionMismatch {
                    expected: alg.dim(),
                    found: v.len(),
                });
            }
            for m in v {
                if m.rows() != carrier_dim || m.cols() != carrier_dim {
                    return Err(Error::DimensionMismatch {
                        expected: carrier_dim,
                        found: m.rows().max(m.cols()),
                    });
                }
            }
        }
        let rep = Representation {
            carrier_dim,
            left,
            right,
            flavor,
        };
        rep.check_axioms(alg)?;
        Ok(rep)
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    pub fn domain_dim(&self) -> usize {
        self.left.len()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn left(&self) -> &[QMatrix] {
        &self.left
    }

    pub fn right(&self) -> &[QMatrix] {
        &self.right
    }

    pub fn left_of(&self, x: &[Rational]) -> QMatrix {
        let c = self.carrier_dim;
        QMatrix::combination(x, &self.left, (c, c))
    }

    pub fn right_of(&self, y: &[Rational]) -> QMatrix {
        let c = self.carrier_dim;
        QMatrix::combination(y, &self.right, (c, c))
    }

    /// Checks (LLM), (LML), (MLL) on all basis triples `(e_i, e_j, m_k)`.
    pub fn check_axioms(&self, alg: &LeibnizAlgebra) -> Result<()> {
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let xy = alg.structure(i, j);
                let (li, lj, ri, rj) =
                    (&self.left[i], &self.left[j], &self.right[i], &self.right[j]);
                let lxy = self.left_of(xy);
                let rxy = self.right_of(xy);
                // (LLM) [x,[y,m]] = [[x,y],m] + [y,[x,m]]
                let llm = &(&(li * lj) - &lxy) - &(lj * li);
                // (LML) [x,[m,y]] = [[x,m],y] + [m,[x,y]]
                let lml = &(&(li * rj) - &(rj * li)) - &rxy;
                // (MLL) [m,[x,y]] = [[m,x],y] + [x,[m,y]]
                let mll = &(&rxy - &(rj * ri)) - &(li * rj);
                for (axiom, d) in [("LLM", llm), ("LML", lml), ("MLL", mll)] {
                    if let Some(k) = first_nonzero_col(&d) {
                        return Err(Error::RepresentationAxiom {
                            axiom,
                            at: (i, j, k),
                        });
                    }
                }
            }
        }
        if self.flavor == Flavor::Symmetric
            && self
                .left
                .iter()
                .zip(&self.right)
                .any(|(l, r)| !(l + r).is_zero())
        {
            return Err(Error::InvalidConfig(
                "symmetric representation needs right = -left".into(),
            ));
        }
        if self.flavor == Flavor::AntiSymmetric && self.right.iter().any(|r| !r.is_zero()) {
            return Err(Error::InvalidConfig(
                "anti-symmetric representation needs right = 0".into(),
            ));
        }
        Ok(())
    }
}

fn carrier_of(left: &[QMatrix]) -> usize {
    left.first().map_or(0, |m| m.rows())
}

fn first_nonzero_col(m: &QMatrix) -> Option<usize> {
    (0..m.cols()).find(|&k| (0..m.rows()).any(|r| m[(r, k)] != Rational::from_integer(0.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::rational::rat;

    #[test]
    fn adjoint_is_valid_on_corpus() {
        for (name, g) in corpus::test_corpus() {
            let r = Representation::adjoint(&g);
            assert_eq!(r.carrier_dim(), g.dim(), "{name}");
        }
    }

    #[test]
    fn sym_and_antisym_of_lie_rep() {
        let h = corpus::heisenberg();
        let ad: Vec<QMatrix> = (0..3).map(|i| h.left_mult(i)).collect();
        assert!(Representation::symmetric(&h, ad.clone()).is_ok());
        assert!(Representation::anti_symmetric(&h, ad).is_ok());
    }

    #[test]
    fn rejects_broken_action() {
        let h = corpus::heisenberg();
        // e1 and e2 acting by commuting matrices while [e1,e2] = e3 acts by zero is fine;
        // non-commuting ones break (LLM).
        let a = QMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]]);
        let b = QMatrix::from_rows(vec![vec![rat(0), rat(0)], vec![rat(1), rat(0)]]);
        let z = QMatrix::zeros(2, 2);
        let err = Representation::anti_symmetric(&h, vec![a, b, z]).unwrap_err();
        assert!(matches!(
            err,
            Error::RepresentationAxiom { axiom: "LLM", .. }
        ));
    }

    #[test]
    fn flavors() {
        let g = corpus::dim5();
        let t = Representation::trivial(&g, 2);
        assert_eq!(t.flavor(), Flavor::Symmetric);
        assert!(t.check_axioms(&g).is_ok());
        assert_eq!(Representation::adjoint(&g).flavor(), Flavor::General);
    }
}
