use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rational::{self, Rational};

/// A multilinear map `g^{⊗n} -> M` stored densely: the value on
/// `(e_{i1}, ..., e_{in})` is the slice at offset `((i1 * d + i2) * d + ...) * m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: usize,
    domain_dim: usize,
    coeff_dim: usize,
    values: Vec<Rational>,
}

impl Cochain {
    pub fn new(
        degree: usize,
        domain_dim: usize,
        coeff_dim: usize,
        values: Vec<Rational>,
    ) -> Result<Self> {
        let expected = domain_dim.pow(degree as u32) * coeff_dim;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(Cochain {
            degree,
            domain_dim,
            coeff_dim,
            values,
        })
    }

    pub fn zero(degree: usize, domain_dim: usize, coeff_dim: usize) -> Self {
        let len = domain_dim.pow(degree as u32) * coeff_dim;
        Cochain {
            degree,
            domain_dim,
            coeff_dim,
            values: vec![Rational::zero(); len],
        }
    }

    /// Builds from a function of the basis multi-index.
    pub fn from_fn(
        degree: usize,
        domain_dim: usize,
        coeff_dim: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Rational>,
    ) -> Self {
        let mut values = Vec::with_capacity(domain_dim.pow(degree as u32) * coeff_dim);
        for idx in MultiIndex::new(degree, domain_dim) {
            let v = f(&idx);
            assert_eq!(v.len(), coeff_dim, "cochain value has the wrong length");
            values.extend(v);
        }
        Cochain {
            degree,
            domain_dim,
            coeff_dim,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeff_dim
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.values)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.degree);
        idx.iter().fold(0, |acc, &i| acc * self.domain_dim + i) * self.coeff_dim
    }

    /// Value on a tuple of basis vectors.
    pub fn at(&self, idx: &[usize]) -> &[Rational] {
        let o = self.offset(idx);
        &self.values[o..o + self.coeff_dim]
    }

    /// Value on arbitrary vectors, by multilinear expansion.
    pub fn eval(&self, args: &[&[Rational]]) -> Vec<Rational> {
        assert_eq!(args.len(), self.degree, "wrong number of cochain arguments");
        let mut out = vec![Rational::zero(); self.coeff_dim];
        for idx in MultiIndex::new(self.degree, self.domain_dim) {
            let mut w = Rational::from_integer(1.into());
            for (a, &i) in args.iter().zip(&idx) {
                if a[i].is_zero() {
                    w = Rational::zero();
                    break;
                }
                w *= &a[i];
            }
            if w.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.at(&idx)) {
                *o += &w * v;
            }
        }
        out
    }

    pub fn eval_f64(&self, args: &[&[f64]]) -> Vec<f64> {
        assert_eq!(args.len(), self.degree, "wrong number of cochain arguments");
        let mut out = vec![0.0; self.coeff_dim];
        for idx in MultiIndex::new(self.degree, self.domain_dim) {
            let w: f64 = args.iter().zip(&idx).map(|(a, &i)| a[i]).product();
            if w == 0.0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.at(&idx)) {
                *o += w * rational::to_f64(v);
            }
        }
        out
    }

    pub fn scaled_sum(&self, k: &Rational, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree
            || self.domain_dim != other.domain_dim
            || self.coeff_dim != other.coeff_dim
        {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: other.values.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + k * b)
            .collect();
        Ok(Cochain {
            values,
            ..self.clone()
        })
    }
}

/// Row-major iteration over `{0..d}^n`.
pub struct MultiIndex {
    d: usize,
    cur: Option<Vec<usize>>,
}

impl MultiIndex {
    pub fn new(n: usize, d: usize) -> Self {
        let cur = if n > 0 && d == 0 {
            None
        } else {
            Some(vec![0; n])
        };
        MultiIndex { d, cur }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                self.cur = None;
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.d {
                self.cur = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}
