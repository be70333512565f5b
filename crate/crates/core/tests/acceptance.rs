//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leibrack::cohomology::{hom_representation, leibniz_differential, tau, tau_inverse, Cochain};
use leibrack::corpus;
use leibrack::integration::{
    cocycle_identities, lie_properties, rack_axioms, round_trips, sample_elements,
    IntegratorConfig, LocalAugmentedRack, PropertyResult,
};
use leibrack::leibniz::{canonical_extension, unit, LeibnizAlgebra, Representation};
use leibrack::linalg::matrix::{max_abs_diff, QMatrix};
use leibrack::linalg::quadrature::QuadratureRule;
use leibrack::linalg::rational::{rat, ratio, to_f64, Rational};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn rack(alg: &LeibnizAlgebra) -> LocalAugmentedRack {
    LocalAugmentedRack::new(alg, IntegratorConfig::default()).expect("valid rack")
}

/// Worst property among `props`, as text; `None` if every one passes.
fn first_failure(props: &[PropertyResult]) -> Option<String> {
    props
        .iter()
        .find(|p| !p.passes() || p.evaluated == 0)
        .map(|p| {
            format!(
                "{} = {:e} (tolerance {:e}, evaluated {})",
                p.name, p.value, p.tolerance, p.evaluated
            )
        })
}

fn worst(props: &[PropertyResult]) -> String {
    props
        .iter()
        .map(|p| format!("{} {:.1e}", p.name, p.value))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Rational point with coordinates `p / 1000` and Euclidean norm at most 0.25.
fn small_point(rng: &mut ChaCha8Rng) -> [Rational; 2] {
    loop {
        let p: [i64; 2] = [rng.gen_range(-250..=250), rng.gen_range(-250..=250)];
        if p[0] * p[0] + p[1] * p[1] <= 250 * 250 {
            return [ratio(p[0], 1000), ratio(p[1], 1000)];
        }
    }
}

fn f64s(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

fn q(rows: Vec<Vec<Rational>>) -> QMatrix {
    QMatrix::from_rows(rows)
}

/// `rho_x = [[0,0,0],[x1,0,0],[x2,x1,0]]` on the center of the dimension-5 algebra.
fn rho5(x: &[Rational]) -> QMatrix {
    let z = rat(0);
    q(vec![
        vec![z.clone(), z.clone(), z.clone()],
        vec![x[0].clone(), z.clone(), z.clone()],
        vec![x[1].clone(), x[0].clone(), z],
    ])
}

/// `ω(x,y) = (x1(y1+y2), x2(y1+y2), 0)`.
fn omega5(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let s = &y[0] + &y[1];
    vec![&x[0] * &s, &x[1] * &s, rat(0)]
}

/// `∫_0^1 exp(sN) ds = sum_j N^j / (j+1)!`, exactly, for nilpotent `N`.
fn integrated_exp(n: &QMatrix) -> QMatrix {
    let mut acc = QMatrix::identity(n.rows());
    let mut term = QMatrix::identity(n.rows());
    let mut fact = rat(1);
    for j in 1..=n.rows() {
        term = term.matmul(n);
        fact = fact * rat(j as i64 + 1);
        acc = &acc + &term.scale(&(rat(1) / fact.clone()));
    }
    acc
}

fn criterion_1() -> Outcome {
    let g = corpus::dim5();
    let ext = canonical_extension(&g);
    let want_center: Vec<Vec<Rational>> = (2..5).map(|i| unit(5, i)).collect();
    let center_ok = g.left_center() == want_center && ext.center_basis() == want_center.as_slice();
    let g0 = ext.g0();
    let g0_ok = g0.dim() == 2 && g0.is_lie() && g0.tensor().iter().all(Zero::is_zero);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut rho_ok = true;
    let mut omega_ok = true;
    for _ in 0..20 {
        let x = [
            ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
            ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
        ];
        let y = [
            ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
            ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
        ];
        rho_ok &= ext.rho_of(&x) == rho5(&x);
        omega_ok &= ext.omega().eval(&[&x, &y]) == omega5(&x, &y);
    }
    outcome(
        center_ok && g0_ok && rho_ok && omega_ok,
        format!("center {center_ok}, g0 abelian of dim 2 {g0_ok}, rho {rho_ok}, omega {omega_ok} (exact)"),
    )
}

fn criterion_2() -> Outcome {
    let r = rack(&corpus::dim5());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = f64s(&small_point(&mut rng));
        let g = r.exp(&a).expect("in chart");
        let got = r.i1_tau_omega(&g).expect("in chart");
        let (a1, a2) = (a[0], a[1]);
        let rows = [a1, 0.5 * a1 * a1 + a2, a1 * a2 + a1 * a1 * a1 / 6.0];
        for (k, want) in rows.iter().enumerate() {
            for j in 0..2 {
                worst = worst.max((got[j * 3 + k] - want).abs());
            }
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max entry deviation {worst:.2e} over 20 points (tolerance 1e-10)"),
    )
}

fn criterion_3() -> Outcome {
    let r = rack(&corpus::dim5());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut vs_closed = 0.0f64;
    let mut vs_symbolic = 0.0f64;
    let mut closed_mismatches = 0;
    for _ in 0..20 {
        let a = small_point(&mut rng);
        let b = small_point(&mut rng);
        // Closed form.
        let (a1, a2, b1, b2) = (&a[0], &a[1], &b[0], &b[1]);
        let s = b1 + b2;
        let half = ratio(1, 2);
        let closed = vec![
            a1 * &s,
            (&half * b1 * a1 + a2 + &half * a1 * a1) * &s,
            (a1 * a2
                + a1 * a1 * a1 / rat(6)
                + b1 * a1 * a1 / rat(4)
                + b2 * a1 / rat(2)
                + b1 * a2 / rat(2)
                + b1 * b1 * a1 / rat(6))
                * &s,
        ];
        // Symbolic iterated integration: the inner integral gives the Hom-valued
        // matrix ∫ exp(s rho_a) [ω(a, e_1) | ω(a, e_2)] ds, the outer one applies
        // ∫ exp(t rho_b) dt to its value on b (g0 is abelian, so log(a▷b) = b).
        let omega_a = QMatrix::from_cols(3, &[omega5(&a, &unit(2, 0)), omega5(&a, &unit(2, 1))]);
        let alpha = integrated_exp(&rho5(&a)).matmul(&omega_a);
        let symbolic = integrated_exp(&rho5(&b)).mul_vec(&alpha.mul_vec(&b));
        if symbolic != closed {
            closed_mismatches += 1;
        }
        let g = r.exp(&f64s(&a)).expect("in chart");
        let h = r.exp(&f64s(&b)).expect("in chart");
        let got = r.i2(&g, &h).expect("in chart");
        vs_closed = vs_closed.max(max_abs_diff(&got, &f64s(&closed)));
        vs_symbolic = vs_symbolic.max(max_abs_diff(&got, &f64s(&symbolic)));
    }
    let ok = vs_symbolic <= 1e-9 && (vs_closed <= 1e-9 || closed_mismatches > 0);
    outcome(
        ok,
        format!(
            "max deviation from closed form f {vs_closed:.2e}, from symbolic oracle {vs_symbolic:.2e} (tolerance 1e-9); \
             closed form f differs from the symbolic oracle at {closed_mismatches} of 20 points"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut algs = vec![
        ("dim5".to_string(), corpus::dim5()),
        ("heisenberg".to_string(), corpus::heisenberg()),
    ];
    algs.extend(corpus::random_corpus(0, 10));
    let mut worst_value = 0.0f64;
    for (name, g) in &algs {
        let ext = canonical_extension(g);
        let nilpotent = ext.rho().iter().all(|m| m.nilpotency_index().is_some());
        if !nilpotent {
            return outcome(false, format!("{name}: rho is not nilpotent"));
        }
        let props = round_trips(&rack(g)).expect("round trips evaluate");
        let p = props
            .iter()
            .find(|p| p.name == "delta2_left_inverse")
            .expect("present");
        if !p.passes() {
            return outcome(false, format!("{name}: {:e} > {:e}", p.value, p.tolerance));
        }
        worst_value = worst_value.max(p.value);
    }
    outcome(
        true,
        format!(
            "{} algebras, max |delta2(I2) - omega| {worst_value:.2e} (tolerance 1e-5)",
            algs.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let corpus = corpus::test_corpus();
    let (mut sd, mut pointed, mut sep, mut skipped_total) = (0.0f64, 0.0f64, f64::INFINITY, 0);
    for (name, g) in &corpus {
        let r = rack(g);
        let elems = sample_elements(&r, 200, 0).expect("sampling");
        let (props, skipped) = rack_axioms(&r, &elems).expect("rack axioms evaluate");
        if let Some(f) = first_failure(&props) {
            return outcome(false, format!("{name}: {f}"));
        }
        sd = sd.max(props[0].value);
        pointed = pointed.max(props[1].value);
        sep = sep.min(props[2].value);
        skipped_total += skipped;
    }
    outcome(
        true,
        format!(
            "{} algebras x 200 samples: self-distributivity {sd:.1e}, pointedness {pointed:.1e} (tolerances 1e-9, 1e-12), \
             smallest output separation {sep:.1e}, skipped {skipped_total}",
            corpus.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut summary = Vec::new();
    for (name, g) in [
        ("dim5", corpus::dim5()),
        ("heisenberg", corpus::heisenberg()),
        ("affine3", corpus::affine3()),
        ("filiform4", corpus::filiform4()),
    ] {
        let r = rack(&g);
        let elems = sample_elements(&r, 100, 6).expect("sampling");
        let props = cocycle_identities(&r, &elems, 100).expect("identities evaluate");
        if let Some(f) = first_failure(&props) {
            return outcome(false, format!("{name}: {f}"));
        }
        summary.push(format!("{name} [{}]", worst(&props[..3])));
    }
    outcome(true, format!("100 triples each: {}", summary.join("; ")))
}

fn random_cochain(rng: &mut ChaCha8Rng, degree: usize, d: usize, m: usize) -> Cochain {
    let len = d.pow(degree as u32) * m;
    Cochain::new(
        degree,
        d,
        m,
        (0..len)
            .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
            .collect(),
    )
    .expect("shape")
}

fn criterion_7() -> Outcome {
    let mut reps: Vec<(LeibnizAlgebra, Representation)> = Vec::new();
    let mut lie_reps: Vec<(LeibnizAlgebra, Representation)> = Vec::new();
    for (_, g) in corpus::test_corpus() {
        if g.dim() <= 4 {
            reps.push((g.clone(), Representation::adjoint(&g)));
            reps.push((g.clone(), Representation::trivial(&g, 2)));
        }
        let ext = canonical_extension(&g);
        if ext.g0_dim() > 0 {
            reps.push((ext.g0().clone(), ext.center_representation_symmetric()));
            lie_reps.push((ext.g0().clone(), ext.center_representation()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut dd_fail, mut chain_fail, mut tau_fail) = (0, 0, 0);
    for i in 0..50 {
        let (g, rep) = &reps[rng.gen_range(0..reps.len())];
        let w = random_cochain(&mut rng, i % 3, g.dim(), rep.carrier_dim());
        let dw = leibniz_differential(g, rep, &w).expect("shapes");
        if !leibniz_differential(g, rep, &dw).expect("shapes").is_zero() {
            dd_fail += 1;
        }
        let (h, arep) = &lie_reps[rng.gen_range(0..lie_reps.len())];
        let w = random_cochain(&mut rng, 2, h.dim(), arep.carrier_dim());
        let hom = hom_representation(h, arep).expect("Lie input");
        let lhs = tau(&leibniz_differential(h, arep, &w).expect("shapes")).expect("degree 3");
        let rhs = leibniz_differential(h, &hom, &tau(&w).expect("degree 2")).expect("shapes");
        if lhs != rhs {
            chain_fail += 1;
        }
        let degree = 1 + i % 3;
        let w = random_cochain(&mut rng, degree, h.dim(), arep.carrier_dim());
        if tau_inverse(&tau(&w).expect("degree >= 1"), arep.carrier_dim()).expect("shapes") != w {
            tau_fail += 1;
        }
    }
    outcome(
        dd_fail + chain_fail + tau_fail == 0,
        format!("50 cochains each: dL.dL failures {dd_fail}, chain-map failures {chain_fail}, tau round-trip failures {tau_fail}"),
    )
}

fn criterion_8() -> Outcome {
    let r = rack(&corpus::heisenberg());
    let elems = sample_elements(&r, 100, 8).expect("sampling");
    let props = lie_properties(&r, &elems, 100).expect("Lie properties evaluate");
    if props.len() != 3 {
        return outcome(false, "Lie specialization did not run");
    }
    if let Some(f) = first_failure(&props) {
        return outcome(false, f);
    }
    let mut analytic = 0.0f64;
    for w in elems.windows(2) {
        let (g, h) = (w[0].g.log(), w[1].g.log());
        let want = 0.5 * (g[0] * h[1] - g[1] * h[0]);
        let got = r.iota2(&w[0].g, &w[1].g).expect("in chart")[0];
        analytic = analytic.max((got - want).abs());
    }
    outcome(
        analytic <= 1e-9,
        format!(
            "{}, iota2 vs analytic {analytic:.1e} (tolerance 1e-9)",
            worst(&props)
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut worst_value = 0.0f64;
    let corpus = corpus::test_corpus();
    for (name, g) in &corpus {
        let props = round_trips(&rack(g)).expect("round trips evaluate");
        let p = props
            .iter()
            .find(|p| p.name == "tangent_bracket")
            .expect("present");
        if !p.passes() || p.evaluated != g.dim() * g.dim() {
            return outcome(
                false,
                format!("{name}: {:e} (tolerance {:e})", p.value, p.tolerance),
            );
        }
        worst_value = worst_value.max(p.value);
    }
    outcome(
        true,
        format!(
            "{} algebras, max bracket deviation {worst_value:.2e} (tolerance 1e-4)",
            corpus.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let r8 = rack(&corpus::dim5());
    let mut cfg = IntegratorConfig::default();
    cfg.quad = QuadratureRule::gauss_legendre(16).expect("order 16");
    let r16 = r8.with_config(cfg).expect("valid config");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = vec![(vec![1.0, 0.0], vec![1.0, 0.0])];
    for _ in 0..20 {
        pairs.push((f64s(&small_point(&mut rng)), f64s(&small_point(&mut rng))));
    }
    let mut worst_value = 0.0f64;
    for (a, b) in &pairs {
        let (g, h) = (r8.exp(a).expect("in chart"), r8.exp(b).expect("in chart"));
        let d = max_abs_diff(
            &r8.i2(&g, &h).expect("in chart"),
            &r16.i2(&g, &h).expect("in chart"),
        );
        worst_value = worst_value.max(d);
    }
    outcome(
        worst_value <= 1e-12,
        format!(
            "{} pairs, max |I2_8 - I2_16| {worst_value:.2e} (tolerance 1e-12)",
            pairs.len()
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (usize, &'static str, fn() -> Outcome, Option<u64>);
    let criteria: [Criterion; 10] = [
        (
            1,
            "exact analysis of the dimension-5 algebra",
            criterion_1,
            Some(1),
        ),
        (2, "I1 closed form", criterion_2, Some(1)),
        (3, "I2 closed form", criterion_3, Some(5)),
        (4, "delta2 is a left inverse of I2", criterion_4, Some(30)),
        (5, "rack axioms", criterion_5, Some(60)),
        (6, "cocycle identities", criterion_6, None),
        (7, "chain-level algebra", criterion_7, None),
        (8, "Lie specialization", criterion_8, None),
        (9, "tangent round trip", criterion_9, None),
        (10, "quadrature exactness", criterion_10, None),
    ];
    let mut failures = 0;
    for (n, title, run, limit) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |s| elapsed < Duration::from_secs(s));
        let ok = o.ok && in_time;
        if !ok {
            failures += 1;
        }
        let budget = limit.map_or(String::new(), |s| format!(", budget {s}s"));
        println!(
            "criterion {n:>2} {}: {title} [{:.2}s{budget}] {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
