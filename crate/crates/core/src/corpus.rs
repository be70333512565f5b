//! Built-in algebras and a seeded generator of random nilpotent extensions.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{differential_matrix, Cochain};
use crate::leibniz::{default_names, LeibnizAlgebra, Representation};
use crate::linalg::matrix::{nullspace, QMatrix};
use crate::linalg::rational::{rat, Rational};

pub const BUILTIN_NAMES: [&str; 3] = ["dim5", "heisenberg", "abelian3"];

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

/// `[e1,e1] = [e1,e2] = e3`, `[e2,e1] = [e2,e2] = [e1,e3] = e4`, `[e1,e4] = [e2,e3] = e5`.
pub fn dim5() -> LeibnizAlgebra {
    let e3 = v(&[0, 0, 1, 0, 0]);
    let e4 = v(&[0, 0, 0, 1, 0]);
    let e5 = v(&[0, 0, 0, 0, 1]);
    LeibnizAlgebra::from_brackets(
        default_names(5),
        &[
            (0, 0, e3.clone()),
            (0, 1, e3),
            (1, 0, e4.clone()),
            (1, 1, e4.clone()),
            (0, 2, e4),
            (0, 3, e5.clone()),
            (1, 2, e5),
        ],
    )
    .expect("valid Leibniz algebra")
}

/// `[e1,e2] = e3 = -[e2,e1]`.
pub fn heisenberg() -> LeibnizAlgebra {
    LeibnizAlgebra::from_brackets(
        default_names(3),
        &[(0, 1, v(&[0, 0, 1])), (1, 0, v(&[0, 0, -1]))],
    )
    .expect("valid Lie algebra")
}

pub fn abelian3() -> LeibnizAlgebra {
    LeibnizAlgebra::abelian(3)
}

/// Filiform Lie algebra: `[e1,e2] = e3`, `[e1,e3] = e4`.
pub fn filiform4() -> LeibnizAlgebra {
    LeibnizAlgebra::from_brackets(
        default_names(4),
        &[
            (0, 1, v(&[0, 0, 1, 0])),
            (1, 0, v(&[0, 0, -1, 0])),
            (0, 2, v(&[0, 0, 0, 1])),
            (2, 0, v(&[0, 0, 0, -1])),
        ],
    )
    .expect("valid Lie algebra")
}

/// `[e1,e1] = e2`.
pub fn square2() -> LeibnizAlgebra {
    LeibnizAlgebra::from_brackets(default_names(2), &[(0, 0, v(&[0, 1]))])
        .expect("valid Leibniz algebra")
}

/// A non-nilpotent Leibniz algebra: `g0` is the affine Lie algebra
/// `[e1,e2] = e2` acting on `e3` by `[e1,e3] = e3`.
pub fn affine3() -> LeibnizAlgebra {
    LeibnizAlgebra::from_brackets(
        default_names(3),
        &[
            (0, 1, v(&[0, 1, 0])),
            (1, 0, v(&[0, -1, 0])),
            (0, 2, v(&[0, 0, 1])),
        ],
    )
    .expect("valid Leibniz algebra")
}

/// The unchecked 2-dimensional structure `[e1,e1] = e2`, `[e2,e1] = e1`, which
/// violates the Leibniz identity.
pub fn non_leibniz_unchecked() -> LeibnizAlgebra {
    LeibnizAlgebra::from_brackets_unchecked(
        default_names(2),
        &[(0, 0, v(&[0, 1])), (1, 0, v(&[1, 0]))],
    )
    .expect("shape is fine")
}

pub fn builtin(name: &str) -> Option<LeibnizAlgebra> {
    match name {
        "dim5" => Some(dim5()),
        "heisenberg" => Some(heisenberg()),
        "abelian3" => Some(abelian3()),
        _ => None,
    }
}

/// Named algebras used across the test suites.
pub fn test_corpus() -> Vec<(String, LeibnizAlgebra)> {
    let mut out: Vec<(String, LeibnizAlgebra)> = vec![
        ("dim5".into(), dim5()),
        ("heisenberg".into(), heisenberg()),
        ("abelian3".into(), abelian3()),
        ("filiform4".into(), filiform4()),
        ("square2".into(), square2()),
        ("affine3".into(), affine3()),
    ];
    out.extend(random_corpus(0, 10));
    out
}

/// `count` random Leibniz algebras of dimension at most 5, reproducible from `seed`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<(String, LeibnizAlgebra)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| (format!("random{i}"), random_extension(&mut rng)))
        .collect()
}

/// A random extension `g0 ⊕_ω a` with nilpotent `rho`: `g0` is abelian of
/// dimension 1 or 2 (with `rho` built from polynomials in a shift matrix) or
/// the Heisenberg algebra (with trivial `rho`); `ω` is a random integer
/// combination of a basis of Leibniz 2-cocycles.
pub fn random_extension(rng: &mut impl Rng) -> LeibnizAlgebra {
    loop {
        let heis = rng.gen_bool(0.3);
        let (g0, k, m) = if heis {
            (heisenberg(), 3, rng.gen_range(1..=2))
        } else {
            let k = rng.gen_range(1..=2);
            (LeibnizAlgebra::abelian(k), k, rng.gen_range(1..=3))
        };
        let rho: Vec<QMatrix> = if heis {
            vec![QMatrix::zeros(m, m); k]
        } else {
            let shift = shift_matrix(m);
            (0..k)
                .map(|_| {
                    let a = rat(rng.gen_range(-2..=2));
                    let b = rat(rng.gen_range(-1..=1));
                    &shift.scale(&a) + &shift.matmul(&shift).scale(&b)
                })
                .collect()
        };
        let rep = Representation::anti_symmetric_on(&g0, m, rho.clone())
            .expect("commuting nilpotent family");
        let d2 = differential_matrix(&g0, &rep, 2).expect("shapes agree");
        let cocycles = nullspace(&d2);
        if cocycles.is_empty() {
            continue;
        }
        let mut w = vec![Rational::zero(); k * k * m];
        for c in &cocycles {
            let t = rat(rng.gen_range(-2..=2));
            for (wi, ci) in w.iter_mut().zip(c) {
                *wi += &t * ci;
            }
        }
        if w.iter().all(Zero::is_zero) {
            continue;
        }
        let omega = Cochain::new(2, k, m, w).expect("shape");
        let n = k + m;
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in 0..n {
                let mut val = vec![Rational::zero(); n];
                if j < k {
                    for (t, c) in g0.structure(i, j).iter().enumerate() {
                        val[t] = c.clone();
                    }
                    for (t, c) in omega.at(&[i, j]).iter().enumerate() {
                        val[k + t] = c.clone();
                    }
                } else {
                    for t in 0..m {
                        val[k + t] = rho[i][(t, j - k)].clone();
                    }
                }
                if val.iter().any(|x| !x.is_zero()) {
                    brackets.push((i, j, val));
                }
            }
        }
        let alg = LeibnizAlgebra::from_brackets(default_names(n), &brackets)
            .expect("extension of a Lie algebra by a cocycle is Leibniz");
        if alg.left_center().len() < n {
            return alg;
        }
    }
}

fn shift_matrix(m: usize) -> QMatrix {
    let mut s = QMatrix::zeros(m, m);
    for i in 1..m {
        s[(i, i - 1)] = rat(1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_corpus_is_reproducible_and_valid() {
        let a = random_corpus(7, 10);
        let b = random_corpus(7, 10);
        assert_eq!(a, b);
        for (_, g) in &a {
            assert!(g.dim() <= 5);
            assert!(g.first_identity_failure().is_none());
        }
    }

    #[test]
    fn builtins() {
        for name in BUILTIN_NAMES {
            assert!(builtin(name).is_some());
        }
        assert!(builtin("nope").is_none());
        assert!(affine3().left_center().len() == 1);
    }
}
