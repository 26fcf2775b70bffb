use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use chss::coordring::oracle_equivalence;
use chss::tensorlab::{
    build_hwv_prop_gkv, determinant, ideal_containment, ks_basis, ks_identity_check, numbering_schemes,
    pfaffian_inclusion, rho_map, rho_on_highest_weight, segre_cubic_blocks, vanish_on_secant, ExteriorTensor, Q,
    SecantVariety,
};
use chss::Exec;

use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Pfaffian,
    RhoMaps,
    KsIdentity,
    VanishG37,
    SegreBlocks,
    CoordringOracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub manifest: RunManifest,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Suite-specific witnesses.
    pub data: Value,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = self.manifest.text_header();
        s.push('\n');
        for c in &self.checks {
            let _ = writeln!(s, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

/// Parameters shared by the suites.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub seed: u64,
    pub trials: usize,
    pub cap: u64,
    pub exec: Exec,
    pub dims: (usize, usize),
    pub containment: bool,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

#[allow(clippy::needless_range_loop)]
fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> (ExteriorTensor, Vec<Vec<Q>>) {
    let mut t = ExteriorTensor::zero(2, n);
    let mut m = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = Q::from_integer(rng.gen_range(-9i64..=9).into());
            t.add_term(&[i, j], c.clone());
            m[j][i] = -c.clone();
            m[i][j] = c;
        }
    }
    (t, m)
}

fn pfaffian(p: Params) -> Result<(Vec<Check>, Value)> {
    let pf = pfaffian_inclusion();
    let lead = pf.coeff(&[vec![0, 1], vec![2, 3], vec![4, 5]]);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut squares_ok = 0;
    for _ in 0..p.trials {
        let (t, m) = random_skew(&mut rng, 6);
        let v = pf.evaluate(&t);
        squares_ok += usize::from(&v * &v == determinant(m));
    }
    let rank_two: Vec<bool> = (0..p.trials)
        .map(|_| {
            let vs: Vec<Vec<Q>> = (0..2)
                .map(|_| (0..6).map(|_| Q::from_integer(rng.gen_range(-9i64..=9).into())).collect())
                .collect();
            pf.evaluate(&ExteriorTensor::decomposable(6, &vs)).is_zero()
        })
        .collect();
    let checks = vec![
        check("term count", pf.len() == 15, format!("{} terms", pf.len())),
        check("identity matching coefficient", lead == Q::from_integer(1.into()), format!("{lead}")),
        check("highest weight", pf.is_highest_weight(), "killed by every E_{i,i+1}"),
        check(
            "Pf² = det",
            squares_ok == p.trials,
            format!("{squares_ok}/{} random skew forms", p.trials),
        ),
        check(
            "zero on rank-2 forms",
            rank_two.iter().all(|&b| b),
            format!("{}/{} decomposable forms", rank_two.iter().filter(|&&b| b).count(), p.trials),
        ),
    ];
    Ok((checks, json!({ "element": pf })))
}

fn rho_maps(p: Params) -> Result<(Vec<Check>, Value)> {
    let schemes = numbering_schemes();
    let mut checks = Vec::new();
    let mut data = Vec::new();
    for s in &schemes {
        let lambda = s.weight();
        let n = lambda.length();
        let v = rho_on_highest_weight(s, n)?;
        let want = lambda.to_gl(n)?;
        let weight = v.weight();
        let ok = !v.is_zero() && weight.as_ref() == Some(&want) && v.is_highest_weight();
        checks.push(check(
            &format!("ρ({}) on highest weight input", s.name),
            ok,
            format!(
                "dim W = {n}, {} terms, weight {:?}, λ(D) = {}",
                v.len(),
                weight.unwrap_or_default(),
                lambda.exponent_notation()
            ),
        ));
        data.push(json!({ "scheme": s.name, "n": n, "weight": want, "terms": v.len() }));
    }
    let d2 = schemes.iter().find(|s| s.name == "D2").expect("D2 is built in");
    let out = rho_map(d2, &[ExteriorTensor::top(8, 8), ExteriorTensor::top(3, 8), ExteriorTensor::top(1, 8)])?;
    let c = out.coeff(&[vec![0, 1, 2], vec![0, 1, 2], vec![0, 3, 4], vec![5, 6, 7]]);
    checks.push(check(
        "ρ(D2) coefficient of (e1e2e3)²(e1e4e5)(e6e7e8)",
        !c.is_zero(),
        format!("{c}"),
    ));
    if p.containment {
        let d1 = &schemes[0];
        for (name, n) in [("D2", 8), ("D3", 9), ("D4", 9)] {
            let target = schemes.iter().find(|s| s.name == name).expect("built in");
            let r = ideal_containment(d1, target, n, p.exec)?;
            checks.push(check(
                &format!("ρ({name}) in the ideal of ρ(D1)"),
                r.contained,
                format!("dim W = {n}, degree {}, span rank {} of {} products", r.degree, r.span_rank, r.candidates),
            ));
            data.push(serde_json::to_value(&r)?);
        }
    }
    Ok((checks, Value::Array(data)))
}

fn ks_identity(p: Params) -> Result<(Vec<Check>, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut checks = Vec::new();
    let mut data = Vec::new();
    for n in 1..=4usize {
        let basis = ks_basis(n);
        let expected = n * (n * n - 1) / 3;
        let samples: Vec<(Vec<Q>, Vec<Q>)> = (0..p.trials)
            .map(|_| {
                let mut v = || (0..n).map(|_| Q::from_integer(rng.gen_range(-9i64..=9).into())).collect();
                (v(), v())
            })
            .collect();
        let holding = basis.iter().filter(|r| ks_identity_check(r, &samples)).count();
        checks.push(check(
            &format!("dim A = {n}"),
            basis.len() == expected && holding == basis.len(),
            format!(
                "kernel basis of size {} (expected {expected}), identity holds on {holding}",
                basis.len()
            ),
        ));
        data.push(json!({ "dim": n, "basis_size": basis.len(), "holding": holding }));
    }
    Ok((checks, Value::Array(data)))
}

fn vanish_g37(p: Params) -> Result<(Vec<Check>, Value)> {
    let h = build_hwv_prop_gkv(3, 7)?;
    let r = vanish_on_secant(&h.first, SecantVariety::Grass { k: 3, n: 7 }, p.trials, p.seed, p.exec)?;
    let checks = vec![
        check(
            "S_{3,1⁶} cubic on σ(G(3,7))",
            r.vanishes(),
            format!("{}/{} secant points give zero", r.zero_evaluations, r.trials),
        ),
        check(
            "nonzero off the secant variety",
            r.generic_witness.is_some(),
            match &r.generic_witness {
                Some((i, v)) => format!("generic point {i} gives {v}"),
                None => "no generic point gave a nonzero value".into(),
            },
        ),
    ];
    Ok((checks, serde_json::to_value(&r)?))
}

fn segre_blocks(p: Params) -> Result<(Vec<Check>, Value)> {
    let (a, b) = p.dims;
    let r = segre_cubic_blocks(a, b, p.seed);
    let mut checks: Vec<Check> = r
        .blocks
        .iter()
        .map(|(block, rank, expected)| {
            check(
                &format!("{block:?} block"),
                *rank as u64 == *expected,
                format!("projector rank {rank}, GL×GL dimension {expected}"),
            )
        })
        .collect();
    let sum: usize = r.blocks.iter().map(|b| b.1).sum();
    checks.push(check("blocks fill S³(A⊗B)", sum == r.total_dim, format!("{sum} of {}", r.total_dim)));
    checks.push(check(
        "π_S(K_S(A)⊗K_S(B)) is the mixed block",
        r.mixed_image_in_block && r.mixed_image_rank as u64 == r.blocks[1].2,
        format!("image rank {}", r.mixed_image_rank),
    ));
    checks.push(check(
        "projector algebra",
        r.idempotent && r.orthogonal && r.sums_to_identity,
        format!("idempotent {}, orthogonal {}, sum to identity {}", r.idempotent, r.orthogonal, r.sums_to_identity),
    ));
    Ok((checks, serde_json::to_value(&r)?))
}

fn coordring_oracle(p: Params) -> Result<(Vec<Check>, Value)> {
    let r = oracle_equivalence(8, &[2, 3], 3, 3, p.cap, p.exec)?;
    let checks = vec![check(
        "closed forms against the weight-basis oracle",
        r.passed(),
        format!(
            "{} Grassmannian cases, {} Segre cases ({} clamped or degree-mismatched), {} mismatches",
            r.grass_checked,
            r.segre_checked,
            r.segre_adjusted,
            r.mismatches.len()
        ),
    )];
    Ok((checks, serde_json::to_value(&r)?))
}

pub fn run(manifest: RunManifest, suite: Suite, params: Params) -> Result<VerifyReport> {
    let (checks, data) = match suite {
        Suite::Pfaffian => pfaffian(params)?,
        Suite::RhoMaps => rho_maps(params)?,
        Suite::KsIdentity => ks_identity(params)?,
        Suite::VanishG37 => vanish_g37(params)?,
        Suite::SegreBlocks => segre_blocks(params)?,
        Suite::CoordringOracle => coordring_oracle(params)?,
    };
    Ok(VerifyReport {
        manifest,
        suite,
        passed: checks.iter().all(|c| c.passed),
        checks,
        data,
    })
}
