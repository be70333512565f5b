use crate::error::Result;
use crate::linalg::matrix::{max_abs, FMatrix};

/// A pointed (local) rack whose product may fail outside its domain.
pub trait PointedRack {
    type Elem: Clone;

    fn one(&self) -> Self::Elem;

    fn conj(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
}

/// A rack module: families of linear maps `phi_{x,y}` and `psi_{x,y}` on a
/// float vector space.
pub trait RackModule<X: PointedRack> {
    fn dim(&self) -> usize;

    fn phi(&self, rack: &X, x: &X::Elem, y: &X::Elem) -> Result<FMatrix>;

    fn psi(&self, rack: &X, x: &X::Elem, y: &X::Elem) -> Result<FMatrix>;
}

/// `phi_{x,y} = rho_x`, with `psi_{x,y} = id - rho_{x▷y}` (symmetric) or `0` (anti-symmetric).
pub struct ActionModule<F> {
    dim: usize,
    symmetric: bool,
    action: F,
}

impl<F> ActionModule<F> {
    pub fn symmetric(dim: usize, action: F) -> Self {
        ActionModule {
            dim,
            symmetric: true,
            action,
        }
    }

    pub fn anti_symmetric(dim: usize, action: F) -> Self {
        ActionModule {
            dim,
            symmetric: false,
            action,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

impl<X, F> RackModule<X> for ActionModule<F>
where
    X: PointedRack,
    F: Fn(&X::Elem) -> Result<FMatrix>,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn phi(&self, _rack: &X, x: &X::Elem, _y: &X::Elem) -> Result<FMatrix> {
        (self.action)(x)
    }

    fn psi(&self, rack: &X, x: &X::Elem, y: &X::Elem) -> Result<FMatrix> {
        if self.symmetric {
            let r = (self.action)(&rack.conj(x, y)?)?;
            Ok(&FMatrix::identity(self.dim) - &r)
        } else {
            Ok(FMatrix::zeros(self.dim, self.dim))
        }
    }
}

/// A rack cochain `X^n -> A`, given by its evaluator.
pub struct RackCochainFn<'a, E> {
    arity: usize,
    eval: Box<dyn Fn(&[E]) -> Result<Vec<f64>> + Send + Sync + 'a>,
}

impl<'a, E> RackCochainFn<'a, E> {
    pub fn new(arity: usize, eval: impl Fn(&[E]) -> Result<Vec<f64>> + Send + Sync + 'a) -> Self {
        RackCochainFn {
            arity,
            eval: Box::new(eval),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, args: &[E]) -> Result<Vec<f64>> {
        assert_eq!(
            args.len(),
            self.arity,
            "wrong number of rack cochain arguments"
        );
        (self.eval)(args)
    }
}

/// Right-nested chain `x_1 ▷ (x_2 ▷ (... ▷ x_k))`.
fn chain<X: PointedRack>(rack: &X, xs: &[&X::Elem]) -> Result<X::Elem> {
    let (last, rest) = xs.split_last().expect("non-empty chain");
    let mut acc = (*last).clone();
    for x in rest.iter().rev() {
        acc = rack.conj(x, &acc)?;
    }
    Ok(acc)
}

fn add_scaled(acc: &mut [f64], v: &[f64], k: f64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += k * b;
    }
}

/// The rack coboundary in compact form for general `n`:
///
/// `sum_{i=1..n} (-1)^{i-1} ( phi_{x_1▷..▷x_i, x_1▷..x̂_i..▷x_{n+1}} f(.., x̂_i, ..)
///   - f(x_1, .., x_{i-1}, x_i▷x_{i+1}, .., x_i▷x_{n+1}) )
///   + (-1)^n psi_{x_1▷..▷x_n, x_1▷..▷x_{n-1}▷x_{n+1}} f(x_1, .., x_n)`.
pub fn rack_differential_eval<X: PointedRack, M: RackModule<X>>(
    rack: &X,
    module: &M,
    f: &RackCochainFn<'_, X::Elem>,
    args: &[X::Elem],
) -> Result<Vec<f64>> {
    let n = f.arity();
    assert_eq!(
        args.len(),
        n + 1,
        "d_R of an n-cochain takes n + 1 arguments"
    );
    let mut out = vec![0.0; module.dim()];
    for i in 0..n {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let first: Vec<&X::Elem> = args[..=i].iter().collect();
        let hatted: Vec<X::Elem> = args
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, a)| a.clone())
            .collect();
        let all_but_i: Vec<&X::Elem> = hatted.iter().collect();
        let phi = module.phi(rack, &chain(rack, &first)?, &chain(rack, &all_but_i)?)?;
        add_scaled(&mut out, &phi.mul_vec(&f.eval(&hatted[..n])?), sign);
        let mut moved: Vec<X::Elem> = args[..i].to_vec();
        for a in &args[i + 1..] {
            moved.push(rack.conj(&args[i], a)?);
        }
        add_scaled(&mut out, &f.eval(&moved)?, -sign);
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let first: Vec<&X::Elem> = args[..n].iter().collect();
    let mut second: Vec<&X::Elem> = args[..n.saturating_sub(1)].iter().collect();
    second.push(&args[n]);
    let psi = module.psi(rack, &chain(rack, &first)?, &chain(rack, &second)?)?;
    add_scaled(&mut out, &psi.mul_vec(&f.eval(&args[..n])?), sign);
    Ok(out)
}

/// Degree-1 coboundary for a symmetric module, in the form
/// `g.f(h) - f(g▷h) - (g▷h).f(g) + f(g)`.
pub fn rack_differential_1_symmetric<X: PointedRack>(
    rack: &X,
    action: impl Fn(&X::Elem) -> Result<FMatrix>,
    f: &RackCochainFn<'_, X::Elem>,
    g: &X::Elem,
    h: &X::Elem,
) -> Result<Vec<f64>> {
    let gh = rack.conj(g, h)?;
    let fg = f.eval(std::slice::from_ref(g))?;
    let mut out = action(g)?.mul_vec(&f.eval(std::slice::from_ref(h))?);
    add_scaled(&mut out, &f.eval(std::slice::from_ref(&gh))?, -1.0);
    add_scaled(&mut out, &action(&gh)?.mul_vec(&fg), -1.0);
    add_scaled(&mut out, &fg, 1.0);
    Ok(out)
}

/// Degree-2 coboundary for an anti-symmetric module, in the form
/// `g.f(h,k) - f(g▷h, g▷k) - (g▷h).f(g,k) + f(g, h▷k)`.
pub fn rack_differential_2_antisymmetric<X: PointedRack>(
    rack: &X,
    action: impl Fn(&X::Elem) -> Result<FMatrix>,
    f: &RackCochainFn<'_, X::Elem>,
    g: &X::Elem,
    h: &X::Elem,
    k: &X::Elem,
) -> Result<Vec<f64>> {
    let gh = rack.conj(g, h)?;
    let gk = rack.conj(g, k)?;
    let hk = rack.conj(h, k)?;
    let mut out = action(g)?.mul_vec(&f.eval(&[h.clone(), k.clone()])?);
    add_scaled(&mut out, &f.eval(&[gh.clone(), gk])?, -1.0);
    add_scaled(
        &mut out,
        &action(&gh)?.mul_vec(&f.eval(&[g.clone(), k.clone()])?),
        -1.0,
    );
    add_scaled(&mut out, &f.eval(&[g.clone(), hk])?, 1.0);
    Ok(out)
}

/// Largest defect per module axiom over the samples.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleAxiomReport {
    /// Smallest `|det phi|` seen; `(M0)` holds when it is bounded away from zero.
    pub m0_min_abs_det: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub samples: usize,
}

impl ModuleAxiomReport {
    pub const TOLERANCE: f64 = 1e-10;

    pub fn passes(&self) -> bool {
        self.m0_min_abs_det > Self::TOLERANCE
            && [self.m1, self.m2, self.m3, self.m4]
                .iter()
                .all(|&d| d <= Self::TOLERANCE)
    }
}

/// Evaluates `(M0)`–`(M4)` on each sampled triple `(x, y, z)`.
pub fn check_module_axioms<X: PointedRack, M: RackModule<X>>(
    rack: &X,
    module: &M,
    samples: &[(X::Elem, X::Elem, X::Elem)],
) -> Result<ModuleAxiomReport> {
    let one = rack.one();
    let mut r = ModuleAxiomReport {
        m0_min_abs_det: f64::INFINITY,
        m1: 0.0,
        m2: 0.0,
        m3: 0.0,
        m4: 0.0,
        samples: 0,
    };
    let dim = module.dim();
    for (x, y, z) in samples {
        let yz = rack.conj(y, z)?;
        let xy = rack.conj(x, y)?;
        let xz = rack.conj(x, z)?;
        let phi_x_yz = module.phi(rack, x, &yz)?;
        let phi_y_z = module.phi(rack, y, z)?;
        let phi_xy_xz = module.phi(rack, &xy, &xz)?;
        let phi_x_z = module.phi(rack, x, z)?;
        let phi_x_y = module.phi(rack, x, y)?;
        let psi_y_z = module.psi(rack, y, z)?;
        let psi_xy_xz = module.psi(rack, &xy, &xz)?;
        let psi_x_yz = module.psi(rack, x, &yz)?;
        let psi_x_z = module.psi(rack, x, z)?;
        let psi_x_y = module.psi(rack, x, y)?;

        r.m0_min_abs_det = r.m0_min_abs_det.min(det(&phi_x_y).abs());
        let m1 = phi_x_yz
            .matmul(&phi_y_z)
            .max_abs_diff(&phi_xy_xz.matmul(&phi_x_z));
        let m2 = phi_x_yz
            .matmul(&psi_y_z)
            .max_abs_diff(&psi_xy_xz.matmul(&phi_x_y));
        let m3 =
            psi_x_yz.max_abs_diff(&(&phi_xy_xz.matmul(&psi_x_z) + &psi_xy_xz.matmul(&psi_x_y)));
        let id = FMatrix::identity(dim);
        let m4 = module
            .phi(rack, &one, y)?
            .max_abs_diff(&id)
            .max(max_abs(module.psi(rack, x, &one)?.data()));
        r.m1 = r.m1.max(m1);
        r.m2 = r.m2.max(m2);
        r.m3 = r.m3.max(m3);
        r.m4 = r.m4.max(m4);
        r.samples += 1;
    }
    Ok(r)
}

/// Determinant by elimination with partial pivoting.
fn det(m: &FMatrix) -> f64 {
    let n = m.rows();
    let mut a = m.clone();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[(i, c)].abs().total_cmp(&a[(j, c)].abs()))
            .expect("non-empty");
        if a[(p, c)] == 0.0 {
            return 0.0;
        }
        if p != c {
            for k in 0..n {
                let t = a[(c, k)];
                a[(c, k)] = a[(p, k)];
                a[(p, k)] = t;
            }
            d = -d;
        }
        d *= a[(c, c)];
        for r in c + 1..n {
            let f = a[(r, c)] / a[(c, c)];
            for k in c..n {
                let v = a[(c, k)];
                a[(r, k)] -= f * v;
            }
        }
    }
    d
}
