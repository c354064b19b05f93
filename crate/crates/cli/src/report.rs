//! Machine-readable report model and its text rendering.
//!
//! Polynomial strings use variable `t` for the Laurent ring and `a` for
//! elements of a root-class quotient, highest-degree term first. Struct
//! field order fixes the JSON key order, so reports are byte-identical
//! across runs once the timing field is suppressed.

use alexmod::obstruction::{Decomposition, KnotFiltration};
use alexmod::poly::Poly;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub mode: &'static str,
    pub knots: Vec<KnotReport>,
}

#[derive(Serialize)]
pub struct KnotReport {
    pub name: String,
    pub genus: usize,
    pub alexander: String,
    pub unit: UnitRecord,
    pub root_classes: Vec<RootClassReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<ClassFiltrationReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<DecompEntry>>,
    /// Summand-by-summand form over the complex numbers, one summand per
    /// root of each factor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct UnitRecord {
    pub sign: i8,
    pub t_power: usize,
}

#[derive(Serialize)]
pub struct RootClassReport {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Serialize)]
pub struct ClassFiltrationReport {
    pub factor: String,
    pub multiplicity: u32,
    pub branches: Vec<BranchReport>,
}

#[derive(Serialize)]
pub struct BranchReport {
    pub modulus: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub splits: Vec<String>,
    pub levels: Vec<LevelReport>,
    pub exponents: Vec<u32>,
}

#[derive(Serialize)]
pub struct LevelReport {
    pub n: u32,
    pub solution_dim: usize,
    pub phi1_dim: usize,
    pub cocycle_dim: usize,
}

#[derive(Serialize)]
pub struct DecompEntry {
    pub factor: String,
    pub exponents: Vec<u32>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub invariant_factors: Vec<String>,
    pub decomposition: Vec<DecompEntry>,
}

#[derive(Serialize)]
pub struct RepReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub mode: &'static str,
    pub knot: String,
    pub level: u32,
    pub trials: u32,
    pub seed: u64,
    pub classes: Vec<RepClassReport>,
}

#[derive(Serialize)]
pub struct RepClassReport {
    pub factor: String,
    pub branches: Vec<RepBranchReport>,
}

#[derive(Serialize)]
pub struct RepBranchReport {
    pub modulus: String,
    pub solutions: Vec<RepSolutionReport>,
}

#[derive(Serialize)]
pub struct RepSolutionReport {
    pub index: usize,
    /// Values on the module generators: `2g` rows of length `n - 1`.
    pub phi: Vec<Vec<String>>,
    /// Image of the element `(e_1 + ... + e_2g) t`, an `n x n` matrix.
    pub matrix: Vec<Vec<String>>,
    pub homomorphism: HomReport,
}

#[derive(Serialize)]
pub struct HomReport {
    pub passed: bool,
    pub trials: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn decomp_entries(d: &Decomposition) -> Vec<DecompEntry> {
    d.entries()
        .iter()
        .map(|(f, exps)| DecompEntry {
            factor: f.to_string(),
            exponents: exps.clone(),
        })
        .collect()
}

pub fn filtration_reports(out: &KnotFiltration) -> Vec<ClassFiltrationReport> {
    out.classes
        .iter()
        .map(|c| ClassFiltrationReport {
            factor: c.factor.to_string(),
            multiplicity: c.multiplicity,
            branches: c
                .branches
                .iter()
                .map(|b| BranchReport {
                    modulus: b.modulus.to_string(),
                    splits: b
                        .splits
                        .iter()
                        .map(|s| format!("{} = ({}) * ({})", s.parent, s.factors.0, s.factors.1))
                        .collect(),
                    levels: b
                        .levels
                        .iter()
                        .map(|l| LevelReport {
                            n: l.n,
                            solution_dim: l.solution_dim,
                            phi1_dim: l.phi1_dim,
                            cocycle_dim: l.cocycle_dim(),
                        })
                        .collect(),
                    exponents: b.exponents.clone(),
                })
                .collect(),
        })
        .collect()
}

/// Labels for the complex roots of a factor: a lone root is `a`, a
/// self-reciprocal quadratic pairs `a` with `a^-1`, anything else is
/// numbered.
fn root_labels(factor: &Poly) -> Vec<String> {
    let deg = factor.degree().unwrap_or(0);
    match deg {
        1 => vec!["a".to_string()],
        2 if factor.reversed().monic() == factor.monic() => {
            vec!["a".to_string(), "a^-1".to_string()]
        }
        _ => (1..=deg).map(|i| format!("a_{i}")).collect(),
    }
}

/// The summand-by-summand display over the complex numbers: every root of a
/// factor contributes the same exponent multiset.
pub fn complex_summands(entries: &[(Poly, Vec<u32>)]) -> String {
    let mut parts = Vec::new();
    for (factor, exps) in entries {
        for label in root_labels(factor) {
            for q in exps {
                if *q == 1 {
                    parts.push(format!("L/(t - {label})"));
                } else {
                    parts.push(format!("L/(t - {label})^{q}"));
                }
            }
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" (+) ")
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for k in &report.knots {
        let _ = writeln!(out, "{}  (genus {})", k.name, k.genus);
        let _ = writeln!(out, "  alexander: {}", k.alexander);
        let _ = writeln!(
            out,
            "  unit: sign {}, t-power {}",
            if k.unit.sign >= 0 { "+1" } else { "-1" },
            k.unit.t_power
        );
        if k.root_classes.is_empty() {
            let _ = writeln!(out, "  root classes: none (trivial module)");
        } else {
            let _ = writeln!(out, "  root classes:");
            for rc in &k.root_classes {
                let _ = writeln!(out, "    {}  (multiplicity {})", rc.factor, rc.multiplicity);
            }
        }
        if let Some(filtration) = &k.filtration {
            for class in filtration {
                for branch in &class.branches {
                    let _ = writeln!(out, "  filtration at {}:", branch.modulus);
                    for split in &branch.splits {
                        let _ = writeln!(out, "    split: {split}");
                    }
                    let _ = writeln!(out, "    n    solution_dim  phi1_dim  cocycle_dim");
                    for l in &branch.levels {
                        let _ = writeln!(
                            out,
                            "    {:<4} {:<13} {:<9} {}",
                            l.n, l.solution_dim, l.phi1_dim, l.cocycle_dim
                        );
                    }
                }
            }
        }
        if let Some(decomposition) = &k.decomposition {
            for e in decomposition {
                let _ = writeln!(out, "  decomposition: {}  ->  {:?}", e.factor, e.exponents);
            }
        }
        if let Some(form) = &k.complex_form {
            let _ = writeln!(out, "  over C: {form}");
        }
        if let Some(oracle) = &k.oracle {
            let _ = writeln!(
                out,
                "  oracle invariant factors: [{}]",
                oracle.invariant_factors.join(", ")
            );
            for e in &oracle.decomposition {
                let _ = writeln!(out, "  oracle: {}  ->  {:?}", e.factor, e.exponents);
            }
        }
        if let Some(agreement) = k.agreement {
            let _ = writeln!(out, "  agreement: {agreement}");
        }
        if let Some(ms) = k.timing_ms {
            let _ = writeln!(out, "  timing: {ms} ms");
        }
    }
    out
}

pub fn render_rep_text(report: &RepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}  level {}  ({} trials, seed {})",
        report.knot, report.level, report.trials, report.seed
    );
    for class in &report.classes {
        for branch in &class.branches {
            let _ = writeln!(out, "  modulus: {}", branch.modulus);
            for sol in &branch.solutions {
                let _ = writeln!(out, "  solution {}:", sol.index);
                let _ = writeln!(out, "    phi rows (values on the module generators):");
                for row in &sol.phi {
                    let _ = writeln!(out, "      [{}]", row.join(", "));
                }
                let _ = writeln!(out, "    image of (e_1 + ... + e_2g) t:");
                for row in &sol.matrix {
                    let _ = writeln!(out, "      [{}]", row.join(", "));
                }
                let _ = writeln!(
                    out,
                    "    homomorphism check: {} ({} trials)",
                    if sol.homomorphism.passed {
                        "passed"
                    } else {
                        "FAILED"
                    },
                    sol.homomorphism.trials
                );
                if let Some(w) = &sol.homomorphism.witness {
                    let _ = writeln!(out, "    witness: {w}");
                }
            }
        }
    }
    out
}
