use crate::cohomology::PointedRack;
use crate::error::{Error, Result};
use crate::leibniz::CentralExtensionData;
use crate::linalg::expm::{expm, expm_nilpotent, logm, logm_unipotent};
use crate::linalg::matrix::{rank, FMatrix, QMatrix};

/// Length `d` such that every product of `d` matrices from the family
/// vanishes, found by tracking the exact span of words of each length.
pub fn family_nilpotency(mats: &[QMatrix]) -> Option<usize> {
    let Some(first) = mats.first() else {
        return Some(1);
    };
    let n = first.rows();
    if n == 0 {
        return Some(1);
    }
    let mut words: Vec<QMatrix> = span_basis(mats.to_vec());
    for len in 1..=n + 1 {
        if words.is_empty() {
            return Some(len);
        }
        let next: Vec<QMatrix> = mats
            .iter()
            .flat_map(|a| words.iter().map(move |w| a.matmul(w)))
            .collect();
        words = span_basis(next);
    }
    None
}

fn span_basis(mats: Vec<QMatrix>) -> Vec<QMatrix> {
    let mut basis: Vec<QMatrix> = Vec::new();
    let mut rows: Vec<Vec<_>> = Vec::new();
    for m in mats {
        if m.is_zero() {
            continue;
        }
        rows.push(m.data().to_vec());
        if rank(&QMatrix::from_rows(rows.clone())) > basis.len() {
            basis.push(m);
        } else {
            rows.pop();
        }
    }
    basis
}

/// A linear action of `g0` given by one matrix per basis element, exponentiated
/// by the finite series when the family is nilpotent.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    dim: usize,
    gens: Vec<FMatrix>,
    nilpotency: Option<usize>,
}

impl ModuleAction {
    pub fn new(dim: usize, gens: &[QMatrix]) -> Self {
        ModuleAction {
            dim,
            gens: gens.iter().map(QMatrix::to_f64).collect(),
            nilpotency: family_nilpotency(gens),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency.is_some()
    }

    pub fn generator(&self, x: &[f64]) -> FMatrix {
        FMatrix::combination(x, &self.gens, (self.dim, self.dim))
    }

    /// `exp(A_x)`.
    pub fn exp(&self, x: &[f64]) -> FMatrix {
        let a = self.generator(x);
        match self.nilpotency {
            Some(d) => expm_nilpotent(&a, d),
            None => expm(&a),
        }
    }
}

/// An element of `G0 ⊂ Aut(g)` together with its logarithm in `g0` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    log: Vec<f64>,
    mat: FMatrix,
}

impl GroupElement {
    pub fn log(&self) -> &[f64] {
        &self.log
    }

    pub fn matrix(&self) -> &FMatrix {
        &self.mat
    }
}

/// The exponential chart of `G0 = exp(ad_L(g0))` around the identity.
///
/// Membership is `||g - I||_1 < radius`. When `ad_L(g0)` is a nilpotent family
/// the group is unipotent, exp and log are global and finite, and every element
/// is accepted.
#[derive(Clone, Debug)]
pub struct LocalGroupChart {
    n: usize,
    ad: ModuleAction,
    ad_g0: ModuleAction,
    gram_inv: FMatrix,
    radius: f64,
}

impl LocalGroupChart {
    pub fn new(ext: &CentralExtensionData, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "chart radius must be positive, got {radius}"
            )));
        }
        let n = ext.parent().dim();
        let ad = ModuleAction::new(n, ext.ad_matrices());
        let ad_g0 = ModuleAction::new(ext.g0_dim(), &ext.ad_g0());
        let k = ext.g0_dim();
        let mut gram = FMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = frobenius(&ad.gens[i], &ad.gens[j]);
            }
        }
        let gram_inv = gram.inverse()?;
        Ok(LocalGroupChart {
            n,
            ad,
            ad_g0,
            gram_inv,
            radius,
        })
    }

    pub fn g0_dim(&self) -> usize {
        self.ad_g0.dim()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_unipotent(&self) -> bool {
        self.ad.is_nilpotent()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            log: vec![0.0; self.g0_dim()],
            mat: FMatrix::identity(self.n),
        }
    }

    pub fn distance(&self, m: &FMatrix) -> f64 {
        (m - &FMatrix::identity(self.n)).norm1()
    }

    pub fn check(&self, m: &FMatrix) -> Result<()> {
        if self.is_unipotent() {
            return Ok(());
        }
        let d = self.distance(m);
        if d < self.radius {
            Ok(())
        } else {
            Err(Error::OutOfChart {
                norm: d,
                radius: self.radius,
            })
        }
    }

    /// `exp(sum x_i ad_L(e_i))`.
    pub fn exp(&self, x: &[f64]) -> Result<GroupElement> {
        let g = self.exp_unchecked(x);
        self.check(&g.mat)?;
        Ok(g)
    }

    /// `exp(sum x_i ad_L(e_i))` without the chart check.
    pub fn exp_matrix(&self, x: &[f64]) -> FMatrix {
        self.ad.exp(x)
    }

    fn exp_unchecked(&self, x: &[f64]) -> GroupElement {
        assert_eq!(
            x.len(),
            self.g0_dim(),
            "g0 coordinates have the wrong length"
        );
        GroupElement {
            log: x.to_vec(),
            mat: self.ad.exp(x),
        }
    }

    /// Coordinates of an element of `ad_L(g0) ⊂ End(g)`, by least squares.
    pub fn coords(&self, m: &FMatrix) -> Vec<f64> {
        let b: Vec<f64> = self.ad.gens.iter().map(|a| frobenius(a, m)).collect();
        self.gram_inv.mul_vec(&b)
    }

    pub fn algebra_matrix(&self, x: &[f64]) -> FMatrix {
        self.ad.generator(x)
    }

    /// `ad_x` on `g0` itself.
    pub fn ad_g0(&self, x: &[f64]) -> FMatrix {
        self.ad_g0.generator(x)
    }

    /// Reads a group element off its matrix via the matrix logarithm.
    pub fn from_matrix(&self, m: FMatrix) -> Result<GroupElement> {
        self.check(&m)?;
        let l = if self.is_unipotent() {
            logm_unipotent(&m, self.n + 1)
        } else {
            logm(&m)?
        };
        let log = self.coords(&l);
        Ok(GroupElement { log, mat: m })
    }

    /// `Ad_g` on `g0`, as `exp(ad_{g0}(log g))`.
    pub fn adjoint(&self, g: &GroupElement) -> FMatrix {
        self.ad_g0.exp(&g.log)
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        let x: Vec<f64> = g.log.iter().map(|v| -v).collect();
        self.exp(&x)
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.from_matrix(g.mat.matmul(&h.mat))
    }

    /// `g h g^{-1}`. The logarithm is `Ad_g(log h)`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let ginv = self.exp_unchecked(&g.log.iter().map(|v| -v).collect::<Vec<_>>());
        let mat = g.mat.matmul(&h.mat).matmul(&ginv.mat);
        self.check(&mat)?;
        Ok(GroupElement {
            log: self.adjoint(g).mul_vec(&h.log),
            mat,
        })
    }

    /// `gamma_g(s) = exp(s log g)`.
    pub fn canonical_path(&self, g: &GroupElement, s: f64) -> Result<GroupElement> {
        let x: Vec<f64> = g.log.iter().map(|v| s * v).collect();
        self.exp(&x)
    }
}

fn frobenius(a: &FMatrix, b: &FMatrix) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x * y).sum()
}

impl PointedRack for LocalGroupChart {
    type Elem = GroupElement;

    fn one(&self) -> GroupElement {
        self.identity()
    }

    fn conj(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.conjugate(x, y)
    }
}
