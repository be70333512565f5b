use std::fmt::Write as _;

use serde::Serialize;

use leibrack::integration::{Bound, PropertyResult};
use leibrack::linalg::matrix::QMatrix;
use leibrack::linalg::rational::{format_rational, to_f64, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub algebra: AlgebraSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
    pub checks: Vec<Check>,
    pub values: Vec<NamedValue>,
    pub notes: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub basis: Vec<String>,
    pub leibniz: bool,
    pub lie: bool,
    pub left_center: Vec<Vec<String>>,
    pub squares_ideal: Vec<Vec<String>>,
    pub squares_ideal_in_center: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub g0_dim: usize,
    pub center_dim: usize,
    pub center_basis: Vec<Vec<String>>,
    pub complement_basis: Vec<Vec<String>>,
    pub g0_brackets: Vec<Vec<Vec<String>>>,
    /// One matrix per basis element of `g0`, rows of exact entries.
    pub rho: Vec<Vec<Vec<String>>>,
    pub rho_float: Vec<Vec<Vec<f64>>>,
    /// `omega[i][j]` is `ω(e_i, e_j)` in center coordinates.
    pub omega: Vec<Vec<Vec<String>>>,
    pub omega_float: Vec<Vec<Vec<f64>>>,
    pub omega_is_cocycle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub chart_radius: f64,
    pub quad_order: usize,
    pub fd_step: f64,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sampling {
    pub drawn: usize,
    pub skipped: usize,
    pub skipped_fraction: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` when the value is not a finite number.
    pub value: Option<f64>,
    pub tolerance: f64,
    pub bound: &'static str,
    pub evaluated: usize,
    pub skipped: usize,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64, evaluated: usize) -> Self {
        Check {
            name: name.into(),
            value: value.is_finite().then_some(value),
            tolerance,
            bound: "at_most",
            evaluated,
            skipped: 0,
            pass: value <= tolerance,
        }
    }

    /// An exact yes/no check, reported as defect 0 or 1 with tolerance 0.
    pub fn exact(name: impl Into<String>, holds: bool) -> Self {
        Check::at_most(name, if holds { 0.0 } else { 1.0 }, 0.0, 1)
    }
}

impl From<&PropertyResult> for Check {
    fn from(p: &PropertyResult) -> Self {
        Check {
            name: p.name.to_string(),
            value: p.value.is_finite().then_some(p.value),
            tolerance: p.tolerance,
            bound: match p.bound {
                Bound::AtMost => "at_most",
                Bound::Above => "above",
            },
            evaluated: p.evaluated,
            skipped: p.skipped,
            pass: p.passes(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: Vec<f64>,
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| rational_strings(r)).collect()
}

pub fn matrix_floats(m: &QMatrix) -> Vec<Vec<f64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(to_f64).collect())
        .collect()
}

fn fmt_vec(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let a = &self.algebra;
        let _ = writeln!(
            s,
            "{}: dimension {} [{}]",
            self.command,
            a.dim,
            a.basis.join(", ")
        );
        let _ = writeln!(s, "  leibniz: {}  lie: {}", a.leibniz, a.lie);
        let center: Vec<String> = a.left_center.iter().map(|v| fmt_vec(v)).collect();
        let _ = writeln!(s, "  left center: span{{{}}}", center.join(", "));
        let sq: Vec<String> = a.squares_ideal.iter().map(|v| fmt_vec(v)).collect();
        let _ = writeln!(
            s,
            "  squares ideal: span{{{}}} (inside center: {})",
            sq.join(", "),
            a.squares_ideal_in_center
        );
        if let Some(e) = &self.extension {
            let comp: Vec<String> = e.complement_basis.iter().map(|v| fmt_vec(v)).collect();
            let _ = writeln!(
                s,
                "  g0: dimension {}, complement span{{{}}}",
                e.g0_dim,
                comp.join(", ")
            );
            for (i, m) in e.rho.iter().enumerate() {
                let rows: Vec<String> = m.iter().map(|r| fmt_vec(r)).collect();
                let _ = writeln!(s, "  rho(e{}) = [{}]", i + 1, rows.join(", "));
            }
            for (i, row) in e.omega.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(s, "  omega(e{}, e{}) = {}", i + 1, j + 1, fmt_vec(v));
                }
            }
            let _ = writeln!(s, "  omega is a cocycle: {}", e.omega_is_cocycle);
        }
        if let Some(c) = &self.config {
            let _ = writeln!(
                s,
                "  config: chart radius {}, quadrature order {}, fd step {}, seed {}, samples {}",
                c.chart_radius, c.quad_order, c.fd_step, c.seed, c.samples
            );
        }
        if let Some(sm) = &self.sampling {
            let _ = writeln!(s, "  samples: {} drawn, {} skipped", sm.drawn, sm.skipped);
        }
        for c in &self.checks {
            let v = c.value.map_or("n/a".to_string(), |v| format!("{v:.3e}"));
            let rel = if c.bound == "above" { ">" } else { "<=" };
            let _ = writeln!(
                s,
                "  [{}] {}: {v} ({rel} {:e}; {} evaluated, {} skipped)",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.tolerance,
                c.evaluated,
                c.skipped
            );
        }
        for v in &self.values {
            let parts: Vec<String> = v.value.iter().map(|x| format!("{x:.12}")).collect();
            let _ = writeln!(s, "  {} = ({})", v.name, parts.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        let _ = writeln!(s, "  verdict: {}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}
