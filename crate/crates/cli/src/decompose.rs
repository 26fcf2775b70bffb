use std::fmt::Write as _;

use anyhow::{bail, Result};
use num_bigint::BigInt;
use serde::Serialize;

use chss::decompose::{Engine, IrrepRow, Settings};

use crate::construction::{construction_character, Request};
use crate::manifest::RunManifest;

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub manifest: RunManifest,
    pub group: String,
    pub construction: String,
    pub dim: String,
    pub summands: Vec<IrrepRow>,
}

pub fn run(manifest: RunManifest, req: &Request, settings: Settings) -> Result<DecomposeReport> {
    let g = req.group.datum()?;
    let engine = Engine::new(&g, settings);
    let ch = construction_character(&engine, req, settings.exec)?;
    let sum = engine.peel(&ch)?;
    let dim = BigInt::from(ch.dim());
    if sum.dim(&g) != dim {
        bail!(chss::Error::consistency(format!(
            "summands have total dimension {}, the character has {dim}",
            sum.dim(&g)
        )));
    }
    Ok(DecomposeReport {
        manifest,
        group: req.group.to_string(),
        construction: req.construction.to_string(),
        dim: dim.to_string(),
        summands: sum.rows(&g),
    })
}

impl DecomposeReport {
    pub fn to_text(&self) -> String {
        let mut s = self.manifest.text_header();
        let _ = writeln!(s, "\n{} for {}, dim {}", self.construction, self.group, self.dim);
        let width = self.summands.iter().map(|r| r.label.chars().count()).max().unwrap_or(6).max(6);
        let _ = writeln!(s, "  {:<width$}  {:>5}  {:>12}", "module", "mult", "dim");
        for r in &self.summands {
            let pad = width - r.label.chars().count();
            let _ = writeln!(s, "  {}{}  {:>5}  {:>12}", r.label, " ".repeat(pad), r.mult, r.dim);
        }
        s
    }
}
