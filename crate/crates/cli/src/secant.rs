use std::fmt::Write as _;

use anyhow::{bail, Result};
use serde::Serialize;

use chss::decompose::{IrrepRow, IrrepSum, Settings};
use chss::rootsys::RootDatum;
use chss::weyman::{CaseRun, Catalog, DesingConfig};

use crate::manifest::RunManifest;

#[derive(Debug, Clone, Serialize)]
pub struct Source {
    /// `Λ^p gr ξ` summand contributing `H^j`.
    pub p: usize,
    pub j: usize,
    pub levi_weight: String,
    pub module: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub generators: Vec<IrrepRow>,
    pub raw: Vec<IrrepRow>,
    pub cancelled: Vec<IrrepRow>,
    pub sources: Vec<Source>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradingRow {
    pub node: usize,
    pub piece: usize,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub degree: usize,
    pub defect: Vec<IrrepRow>,
    pub defect_matches_generators: bool,
    pub euler_match: bool,
    pub surjective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub description: String,
    pub max_degree: usize,
    pub generator_degrees: Vec<usize>,
    pub degrees: Vec<DegreeRow>,
    pub notes: Vec<String>,
    pub twist_checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
}

impl CaseReport {
    fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.defect_matches_generators && c.euler_match && c.surjective)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SecantReport {
    pub manifest: RunManifest,
    pub passed: bool,
    pub cases: Vec<CaseReport>,
}

/// Resolve a case name, or a family name together with `--n`.
pub fn resolve<'a>(catalog: &'a Catalog, name: &str, n: Option<usize>) -> Result<Vec<&'a DesingConfig>> {
    if name.eq_ignore_ascii_case("all") {
        return Ok(catalog.cases.iter().collect());
    }
    let key = match n {
        Some(n) => format!("{name}:{n}"),
        None => name.to_string(),
    };
    match catalog.find(&key) {
        Some(c) => Ok(vec![c]),
        None => {
            let mut names: Vec<String> = catalog.names().into_iter().map(String::from).collect();
            let mut families: Vec<(String, Vec<String>)> = Vec::new();
            for c in &catalog.cases {
                names.extend(c.aliases.iter().filter(|a| !a.contains(':')).cloned());
                for a in &c.aliases {
                    if let Some((family, n)) = a.split_once(':') {
                        match families.iter_mut().find(|(f, _)| f == family) {
                            Some((_, ns)) => ns.push(n.to_string()),
                            None => families.push((family.to_string(), vec![n.to_string()])),
                        }
                    }
                }
            }
            names.extend(families.into_iter().map(|(f, ns)| format!("{f} --n {{{}}}", ns.join(","))));
            bail!("unknown case '{key}'; available: {}, all", names.join(", "))
        }
    }
}

fn rows(g: &RootDatum, s: &IrrepSum) -> Vec<IrrepRow> {
    s.rows(g)
}

pub fn run_case(config: &DesingConfig, max_degree: Option<usize>, check: bool, settings: Settings) -> Result<CaseReport> {
    let max_degree = max_degree.unwrap_or(config.max_degree);
    let mut run = CaseRun::new(config, settings)?;
    let report = run.ideal_generators(max_degree)?;
    let g = run.prep.group.clone();
    let degrees: Vec<DegreeRow> = report
        .degrees
        .iter()
        .map(|d| DegreeRow {
            degree: d.degree,
            generators: rows(&g, &d.generators),
            raw: rows(&g, &d.raw),
            cancelled: rows(&g, &d.cancelled),
            sources: d
                .sources
                .iter()
                .map(|(w, levi)| Source {
                    p: d.degree,
                    j: d.degree - 1,
                    levi_weight: g.format_weight(levi),
                    module: g.format_weight(w),
                })
                .collect(),
        })
        .collect();
    let grading = match &config.grading {
        Some(spec) => Some(GradingRow {
            node: spec.node,
            piece: spec.piece,
            value: run.prep.piece_grade(spec.component, spec.node, spec.piece)?.to_string(),
        }),
        None => None,
    };
    let mut checks = Vec::new();
    if check {
        for d in 1..=max_degree {
            let e = run.exactness_check(d)?;
            let s = run.surjectivity_check(d)?;
            let gens = &report.degree(d).expect("every degree is reported").generators;
            checks.push(CheckRow {
                degree: d,
                defect: rows(&g, &e.defect),
                defect_matches_generators: e.defect == *gens,
                euler_match: e.euler_match,
                surjective: s.holds,
            });
        }
    }
    Ok(CaseReport {
        case: config.name.clone(),
        description: config.description.clone(),
        max_degree,
        generator_degrees: report.generator_degrees(),
        degrees,
        notes: report.notes,
        twist_checks: run.twist_checks(),
        grading,
        checks,
    })
}

pub fn run(
    manifest: RunManifest,
    configs: &[&DesingConfig],
    max_degree: Option<usize>,
    check: bool,
    settings: Settings,
) -> Result<SecantReport> {
    let mut cases = configs
        .iter()
        .map(|c| run_case(c, max_degree, check, settings))
        .collect::<Result<Vec<_>>>()?;
    cases.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(SecantReport {
        manifest,
        passed: cases.iter().all(CaseReport::passed),
        cases,
    })
}

fn module_list(rows: &[IrrepRow]) -> String {
    if rows.is_empty() {
        return "∅".into();
    }
    rows.iter()
        .map(|r| if r.mult == 1 { r.label.clone() } else { format!("{}×{}", r.mult, r.label) })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl SecantReport {
    pub fn to_text(&self) -> String {
        let mut s = self.manifest.text_header();
        s.push('\n');
        for c in &self.cases {
            let _ = writeln!(s, "\n{}: {}", c.case, c.description);
            let degs: Vec<String> = c.generator_degrees.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(s, "  generator degrees: {}", if degs.is_empty() { "none".into() } else { degs.join(", ") });
            for d in &c.degrees {
                let _ = writeln!(s, "  degree {:>2}: {}", d.degree, module_list(&d.generators));
                for src in &d.sources {
                    let _ = writeln!(s, "      (p={}, j={}) {} from {}", src.p, src.j, src.module, src.levi_weight);
                }
                if !d.cancelled.is_empty() {
                    let _ = writeln!(s, "      cancelled: {}", module_list(&d.cancelled));
                }
            }
            if let Some(gr) = &c.grading {
                let _ = writeln!(s, "  Z_{}(piece {}) = {}", gr.node, gr.piece, gr.value);
            }
            let _ = writeln!(s, "  twists checked against the grading element: {}", c.twist_checks);
            for n in &c.notes {
                let _ = writeln!(s, "  note: {n}");
            }
            if !c.checks.is_empty() {
                let _ = writeln!(s, "  degree  defect = generators  euler  surjective");
                for k in &c.checks {
                    let _ = writeln!(
                        s,
                        "  {:>6}  {:<19}  {:<5}  {}",
                        k.degree, k.defect_matches_generators, k.euler_match, k.surjective
                    );
                }
            }
        }
        let _ = writeln!(s, "\n{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}
