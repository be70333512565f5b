use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::{nullspace, rank, row_space_basis, QMatrix};
use crate::linalg::rational::{self, Rational};

/// A finite-dimensional left Leibniz algebra given by structure constants
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizAlgebra {
    names: Vec<String>,
    c: Vec<Rational>,
}

impl LeibnizAlgebra {
    /// Builds the algebra and checks the left Leibniz identity on all `n^3`
    /// basis triples. `c` is laid out as `c[(i * n + j) * n + k]`.
    pub fn new(names: Vec<String>, c: Vec<Rational>) -> Result<Self> {
        let alg = Self::new_unchecked(names, c)?;
        if let Some((triple, defect)) = alg.first_identity_failure() {
            return Err(Error::LeibnizIdentity {
                triple,
                defect: defect.iter().map(rational::format_rational).collect(),
            });
        }
        Ok(alg)
    }

    /// Same as [`LeibnizAlgebra::new`] without the identity check. Only shape is validated.
    pub fn new_unchecked(names: Vec<String>, c: Vec<Rational>) -> Result<Self> {
        let n = names.len();
        if c.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n,
                found: c.len(),
            });
        }
        Ok(LeibnizAlgebra { names, c })
    }

    /// Builds from a list of nonzero brackets `(i, j, [e_i, e_j])`; omitted pairs bracket to zero.
    pub fn from_brackets(
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<Rational>)],
    ) -> Result<Self> {
        Self::new(
            names.clone(),
            Self::tensor_from_brackets(names.len(), brackets)?,
        )
    }

    pub fn from_brackets_unchecked(
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<Rational>)],
    ) -> Result<Self> {
        Self::new_unchecked(
            names.clone(),
            Self::tensor_from_brackets(names.len(), brackets)?,
        )
    }

    fn tensor_from_brackets(
        n: usize,
        brackets: &[(usize, usize, Vec<Rational>)],
    ) -> Result<Vec<Rational>> {
        let mut c = vec![Rational::zero(); n * n * n];
        for (i, j, v) in brackets {
            if *i >= n || *j >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: (*i).max(*j) + 1,
                });
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            for (k, x) in v.iter().enumerate() {
                c[(i * n + j) * n + k] = x.clone();
            }
        }
        Ok(c)
    }

    pub fn abelian(n: usize) -> Self {
        LeibnizAlgebra {
            names: default_names(n),
            c: vec![Rational::zero(); n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn tensor(&self) -> &[Rational] {
        &self.c
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim();
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        unit(self.dim(), i)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (o, cij) in out.iter_mut().zip(self.structure(i, j)) {
                    if !cij.is_zero() {
                        *o += &f * cij;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn bracket_f64(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let f = x[i] * y[j];
                if f == 0.0 {
                    continue;
                }
                for (o, cij) in out.iter_mut().zip(self.structure(i, j)) {
                    *o += f * rational::to_f64(cij);
                }
            }
        }
        out
    }

    /// `[x,[y,z]] - [[x,y],z] - [y,[x,z]]`.
    pub fn leibniz_defect(
        &self,
        x: &[Rational],
        y: &[Rational],
        z: &[Rational],
    ) -> Result<Vec<Rational>> {
        let a = self.bracket(x, &self.bracket(y, z)?)?;
        let b = self.bracket(&self.bracket(x, y)?, z)?;
        let c = self.bracket(y, &self.bracket(x, z)?)?;
        Ok(a.iter()
            .zip(&b)
            .zip(&c)
            .map(|((a, b), c)| a - b - c)
            .collect())
    }

    /// First basis triple (lexicographic) where the Leibniz identity fails.
    pub fn first_identity_failure(&self) -> Option<((usize, usize, usize), Vec<Rational>)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = self
                        .leibniz_defect(&unit(n, i), &unit(n, j), &unit(n, k))
                        .expect("basis vectors have the right length");
                    if !rational::is_zero_vec(&d) {
                        return Some(((i, j, k), d));
                    }
                }
            }
        }
        None
    }

    pub fn is_lie(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.structure(i, j)
                    .iter()
                    .zip(self.structure(j, i))
                    .all(|(a, b)| (a + b).is_zero())
            })
        })
    }

    /// Matrix of `ad_L(e_i) = [e_i, -]`.
    pub fn left_mult(&self, i: usize) -> QMatrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.structure(i, j).to_vec()).collect();
        QMatrix::from_cols(n, &cols)
    }

    /// Matrix of `m -> [m, e_j]`.
    pub fn right_mult(&self, j: usize) -> QMatrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|i| self.structure(i, j).to_vec()).collect();
        QMatrix::from_cols(n, &cols)
    }

    /// Matrix of `ad_L(x) = [x, -]` for an arbitrary vector.
    pub fn ad_left(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim();
        let mats: Vec<QMatrix> = (0..n).map(|i| self.left_mult(i)).collect();
        QMatrix::combination(x, &mats, (n, n))
    }

    /// Exact basis of the left center `Z_L(g) = { x : [x, y] = 0 for all y }`,
    /// the kernel of the flattened map `x -> [x, -]`.
    pub fn left_center(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        // Row (j, k), column i: coefficient of e_k in [e_i, e_j].
        let mut m = QMatrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, v) in self.structure(i, j).iter().enumerate() {
                    m[(j * n + k, i)] = v.clone();
                }
            }
        }
        nullspace(&m)
    }

    /// Basis of the two-sided ideal generated by all squares `[x, x]`, by
    /// saturation: start from `[e_i, e_i]` and `[e_i + e_j, e_i + e_j]`, then
    /// close under left and right bracketing with basis vectors (breadth first,
    /// left before right) until the span stops growing.
    pub fn squares_ideal(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut span: Vec<Vec<Rational>> = Vec::new();
        let mut frontier: Vec<Vec<Rational>> = Vec::new();
        let push =
            |v: Vec<Rational>, span: &mut Vec<Vec<Rational>>, frontier: &mut Vec<Vec<Rational>>| {
                if rational::is_zero_vec(&v) {
                    return;
                }
                let before = span.len();
                let mut trial = span.clone();
                trial.push(v.clone());
                if rank(&QMatrix::from_rows(trial.clone())) > before {
                    span.push(v.clone());
                    frontier.push(v);
                }
            };
        for i in 0..n {
            for j in i..n {
                let mut x = unit(n, i);
                if j != i {
                    x[j] += rational::rat(1);
                }
                let sq = self.bracket(&x, &x).expect("dims match");
                push(sq, &mut span, &mut frontier);
            }
        }
        while !frontier.is_empty() {
            let current = std::mem::take(&mut frontier);
            for v in current {
                for i in 0..n {
                    let e = unit(n, i);
                    let left = self.bracket(&e, &v).expect("dims match");
                    push(left, &mut span, &mut frontier);
                    let right = self.bracket(&v, &e).expect("dims match");
                    push(right, &mut span, &mut frontier);
                }
            }
        }
        if span.is_empty() {
            return Vec::new();
        }
        row_space_basis(&QMatrix::from_rows(span))
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = rational::rat(1);
    v
}

/// Whether every vector of `sub` lies in the span of `space` (exact).
pub fn span_contains(space: &[Vec<Rational>], sub: &[Vec<Rational>]) -> bool {
    if sub.is_empty() {
        return true;
    }
    if space.is_empty() {
        return sub.iter().all(|v| rational::is_zero_vec(v));
    }
    let r = rank(&QMatrix::from_rows(space.to_vec()));
    let mut all = space.to_vec();
    all.extend(sub.iter().cloned());
    rank(&QMatrix::from_rows(all)) == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::rational::rat;

    fn span_equal(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
        span_contains(a, b) && span_contains(b, a)
    }

    fn units(n: usize, idx: &[usize]) -> Vec<Vec<Rational>> {
        idx.iter().map(|&i| unit(n, i)).collect()
    }

    #[test]
    fn dim5_brackets() {
        let g = corpus::dim5();
        assert_eq!(g.bracket(&unit(5, 0), &unit(5, 1)).unwrap(), unit(5, 2));
        assert!(rational::is_zero_vec(
            &g.bracket(&unit(5, 2), &unit(5, 0)).unwrap()
        ));
        let zero = vec![rat(0); 5];
        let y: Vec<Rational> = (1..=5).map(rat).collect();
        assert!(rational::is_zero_vec(&g.bracket(&zero, &y).unwrap()));
        assert!(g.bracket(&zero[..4], &y).is_err());
    }

    #[test]
    fn defects() {
        let g = corpus::dim5();
        assert!(rational::is_zero_vec(
            &g.leibniz_defect(&unit(5, 0), &unit(5, 1), &unit(5, 2))
                .unwrap()
        ));
        let a = LeibnizAlgebra::abelian(3);
        assert!(a.first_identity_failure().is_none());
    }

    #[test]
    fn bad_algebra_defect_by_hand() {
        // [e1,e1] = e2, [e2,e1] = e1. With x = y = z = e1:
        // [e1,[e1,e1]] = [e1,e2] = 0, [[e1,e1],e1] = [e2,e1] = e1, [e1,[e1,e1]] = 0,
        // so the defect is 0 - e1 - 0 = -e1.
        let bad = corpus::non_leibniz_unchecked();
        let d = bad
            .leibniz_defect(&unit(2, 0), &unit(2, 0), &unit(2, 0))
            .unwrap();
        assert_eq!(d, vec![rat(-1), rat(0)]);
        let names = bad.basis_names().to_vec();
        match LeibnizAlgebra::new(names, bad.tensor().to_vec()) {
            Err(Error::LeibnizIdentity { triple, .. }) => assert_eq!(triple, (0, 0, 0)),
            other => panic!("expected identity failure, got {other:?}"),
        }
    }

    #[test]
    fn lie_verdicts() {
        assert!(!corpus::dim5().is_lie());
        assert!(LeibnizAlgebra::abelian(3).is_lie());
        assert!(corpus::heisenberg().is_lie());
    }

    #[test]
    fn left_centers() {
        assert!(span_equal(
            &corpus::dim5().left_center(),
            &units(5, &[2, 3, 4])
        ));
        assert!(span_equal(
            &LeibnizAlgebra::abelian(3).left_center(),
            &units(3, &[0, 1, 2])
        ));
        assert!(span_equal(
            &corpus::heisenberg().left_center(),
            &units(3, &[2])
        ));
    }

    #[test]
    fn squares_ideals() {
        assert!(span_equal(
            &corpus::dim5().squares_ideal(),
            &units(5, &[2, 3, 4])
        ));
        assert!(corpus::heisenberg().squares_ideal().is_empty());
        let sq = LeibnizAlgebra::from_brackets(default_names(2), &[(0, 0, vec![rat(0), rat(1)])])
            .unwrap();
        assert!(span_equal(&sq.squares_ideal(), &units(2, &[1])));
    }

    #[test]
    fn center_vectors_annihilate_and_contain_squares() {
        for (name, g) in corpus::test_corpus() {
            let z = g.left_center();
            for v in &z {
                for j in 0..g.dim() {
                    assert!(
                        rational::is_zero_vec(&g.bracket(v, &unit(g.dim(), j)).unwrap()),
                        "{name}"
                    );
                }
            }
            assert!(span_contains(&z, &g.squares_ideal()), "{name}");
        }
    }
}
