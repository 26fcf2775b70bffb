//! One line per acceptance criterion. Criterion 1 is reported but not
//! enforced: the expected list contains S_{2²,1⁵}, which is inconsistent with
//! dim S³(Λ³K⁷) = 7770; the computed summand is S_{2³,1³}.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use chss::bott::{bott, BottResult};
use chss::decompose::{decompose_tensor, Engine, Settings};
use chss::partitions::{lr_coefficient, lr_product, Partition};
use chss::rootsys::{Family, RootDatum};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn chss(args: &[&str]) -> (Value, Duration, bool) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_chss"))
        .args(args)
        .arg("--json")
        .env_remove("CHSS_CAP")
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|_| {
        Value::String(String::from_utf8_lossy(&out.stderr).into_owned())
    });
    (doc, elapsed, out.status.success())
}

fn partitions_of(rows: &Value, factor: usize) -> Vec<(Vec<u64>, u64)> {
    rows.as_array()
        .into_iter()
        .flatten()
        .map(|r| {
            let p = r["partition"][factor].as_array().map(|v| v.iter().map(|x| x.as_u64().unwrap()).collect());
            (p.unwrap_or_default(), r["mult"].as_u64().unwrap())
        })
        .collect()
}

fn degree(case: &Value, d: u64) -> &Value {
    case["degrees"]
        .as_array()
        .and_then(|ds| ds.iter().find(|x| x["degree"] == d))
        .map(|x| &x["generators"])
        .unwrap_or(&Value::Null)
}

fn is_empty(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.is_empty())
}

fn c1_plethysm() -> Outcome {
    let (doc, t, ok) = chss(&["decompose", "sym", "3", "wedge", "3", "gl", "7"]);
    let got: BTreeSet<(Vec<u64>, u64)> = partitions_of(&doc["summands"], 0).into_iter().collect();
    let want: BTreeSet<(Vec<u64>, u64)> = [
        vec![3, 3, 3],
        vec![3, 2, 2, 1, 1],
        vec![2, 2, 1, 1, 1, 1, 1],
        vec![3, 1, 1, 1, 1, 1, 1],
    ]
    .into_iter()
    .map(|p| (p, 1))
    .collect();
    let extra: Vec<_> = got.difference(&want).map(|x| &x.0).collect();
    let missing: Vec<_> = want.difference(&got).map(|x| &x.0).collect();
    outcome(
        ok && got == want && t < Duration::from_secs(10),
        format!(
            "{:.2?}; computed has {extra:?} where the expected list has {missing:?} (total dim {})",
            t, doc["dim"]
        ),
    )
}

fn c2_g37() -> Outcome {
    let (doc, _, ok) = chss(&["secant-ideal", "G37", "--max-degree", "4"]);
    let case = &doc["cases"][0];
    let d3 = partitions_of(degree(case, 3), 0);
    let pass = ok && d3 == vec![(vec![3, 1, 1, 1, 1, 1, 1], 1)] && is_empty(degree(case, 4));
    outcome(pass, format!("degree 3: {d3:?}, degree 4 empty: {}", is_empty(degree(case, 4))))
}

fn c3_rank_varieties() -> Outcome {
    let start = Instant::now();
    let mut all = true;
    let mut notes = Vec::new();
    for n in 5u64..=9 {
        let lo = n.div_ceil(2);
        let hi = 2 * n / 3;
        let max = (hi + 1).to_string();
        let ns = n.to_string();
        let (doc, _, ok) = chss(&["secant-ideal", "PAxG2n", "--n", &ns, "--max-degree", &max]);
        let case = &doc["cases"][0];
        let degs: Vec<u64> = case["generator_degrees"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|x| x.as_u64().unwrap())
            .collect();
        let mut good = ok && degs == (lo..=hi).collect::<Vec<_>>();
        for d in lo..=hi {
            let a: Vec<u64> = [n - d, 2 * d - n].into_iter().filter(|&x| x > 0).collect();
            let b: Vec<u64> = std::iter::repeat_n(2, (2 * d - n) as usize)
                .chain(std::iter::repeat_n(1, (2 * n - 2 * d) as usize))
                .collect();
            let gens = degree(case, d);
            good &= partitions_of(gens, 0) == vec![(a, 1)] && partitions_of(gens, 1) == vec![(b, 1)];
        }
        all &= good;
        notes.push(format!("n={n}: {degs:?}{}", if good { "" } else { " MISMATCH" }));
    }
    let t = start.elapsed();
    outcome(all && t < Duration::from_secs(60), format!("{}; {:.2?}", notes.join(", "), t))
}

fn c4_spinor() -> Outcome {
    let (doc, t, ok) = chss(&["secant-ideal", "S7", "--max-degree", "5"]);
    let case = &doc["cases"][0];
    let d4 = degree(case, 4);
    let weight = &d4[0]["weight"];
    let pass = ok
        && d4.as_array().is_some_and(|a| a.len() == 1 && a[0]["mult"] == 1)
        && *weight == serde_json::json!([0, 0, 0, 1, 0, 0, 0])
        && is_empty(degree(case, 3))
        && is_empty(degree(case, 5))
        && t < Duration::from_secs(600);
    outcome(pass, format!("degree 4: {}, {:.2?}", d4[0]["label"], t))
}

fn catalog_run() -> (Value, bool) {
    let (doc, _, ok) = chss(&["secant-ideal", "all", "--check", "--max-degree", "5"]);
    (doc, ok)
}

fn c5_grading(doc: &Value, ok: bool) -> Outcome {
    let cases = doc["cases"].as_array().cloned().unwrap_or_default();
    let graded: Vec<(String, String)> = cases
        .iter()
        .filter(|c| c.get("grading").is_some())
        .map(|c| (c["case"].as_str().unwrap().to_string(), c["grading"]["value"].as_str().unwrap().to_string()))
        .collect();
    let twists: u64 = cases.iter().map(|c| c["twist_checks"].as_u64().unwrap()).sum();
    let pass = ok
        && graded.len() == 2
        && graded.iter().all(|g| g.1 == "-1/3")
        && cases.iter().all(|c| c["twist_checks"].as_u64().unwrap() > 0);
    outcome(pass, format!("{graded:?}; {twists} integral twists over {} cases", cases.len()))
}

fn c6_vectors() -> Outcome {
    let mut details = Vec::new();
    let mut all = true;
    for args in [
        vec!["verify", "pfaffian"],
        vec!["verify", "rho-maps"],
        vec!["verify", "ks-identity"],
        vec!["verify", "vanish-g37", "--trials", "50"],
    ] {
        let (doc, _, ok) = chss(&args);
        let pass = ok && doc["passed"] == true;
        all &= pass;
        details.push(format!("{} {}", args[1], if pass { "ok" } else { "FAIL" }));
    }
    let (pf, _, _) = chss(&["verify", "pfaffian"]);
    let terms = pf["checks"][0]["detail"].as_str().unwrap_or("").to_string();
    all &= terms == "15 terms";
    details.push(terms);
    outcome(all, details.join(", "))
}

fn c7_oracles() -> Outcome {
    let (doc, _, ok) = chss(&["verify", "coordring-oracle"]);
    outcome(ok && doc["passed"] == true, doc["checks"][0]["detail"].as_str().unwrap_or("").to_string())
}

fn groups() -> Vec<RootDatum> {
    let mut g: Vec<RootDatum> = [(Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::E, 6)]
        .iter()
        .map(|&(f, r)| RootDatum::simple_group(f, r).unwrap())
        .collect();
    g.push(RootDatum::gl(3).unwrap());
    g.push(RootDatum::gl(4).unwrap());
    g
}

fn random_dominant(g: &RootDatum, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let n = g.components()[0].coord_len();
    let mut w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..3)).collect();
    if g.active_nodes().len() < n {
        w.sort_unstable_by(|a, b| b.cmp(a));
    }
    w
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn c8_properties() -> Outcome {
    let mut failures = Vec::new();
    // LR symmetry and conjugation, exhaustive over |μ| + |ν| <= 10
    let mut lr_pairs = 0;
    for total in 0..=10u32 {
        for a in 0..=total {
            for mu in Partition::all_of_size(a) {
                for nu in Partition::all_of_size(total - a) {
                    let mut x = lr_product(&mu, &nu);
                    let mut y = lr_product(&nu, &mu);
                    x.sort();
                    y.sort();
                    if x != y {
                        failures.push(format!("LR symmetry {mu:?} {nu:?}"));
                    }
                    for (lambda, c) in &x {
                        if lr_coefficient(&lambda.conjugate(), &mu.conjugate(), &nu.conjugate()) != *c {
                            failures.push(format!("LR conjugation {lambda:?} {mu:?} {nu:?}"));
                        }
                    }
                    lr_pairs += 1;
                }
            }
        }
    }
    // dimension conservation and peeling on 500 seeded cases
    let gs = groups();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let settings = Settings::default();
    let mut cases = 0;
    while cases < 500 {
        let g = &gs[rng.gen_range(0..gs.len())];
        let lambda = random_dominant(g, &mut rng);
        let dl = g.weyl_dim(&lambda).unwrap();
        let e = Engine::new(g, settings);
        let op = rng.gen_range(0..3);
        let d = rng.gen_range(2..4u64);
        let result = match op {
            0 => {
                let mu = random_dominant(g, &mut rng);
                let dm = g.weyl_dim(&mu).unwrap();
                if &dl * &dm > BigInt::from(50_000) {
                    continue;
                }
                decompose_tensor(g, &lambda, &mu, settings).map(|s| (s.dim(g), &dl * &dm))
            }
            _ => {
                let n: u64 = match u64::try_from(&dl) {
                    Ok(n) if n <= 30 => n,
                    _ => continue,
                };
                let ch = e.irrep_character(&lambda).unwrap();
                let (ch, want) = if op == 1 {
                    (ch.sym_power(d as usize, settings.exec), binom(n + d - 1, d))
                } else {
                    (ch.ext_power(d as usize, settings.exec), binom(n, d))
                };
                if ch.has_negative() {
                    failures.push(format!("negative character multiplicity for {lambda:?}"));
                }
                e.peel(&ch).map(|s| (s.dim(g), want))
            }
        };
        match result {
            Ok((got, want)) if got == want => {}
            Ok((got, want)) => failures.push(format!("dimension {got} != {want} for {lambda:?}")),
            Err(err) => failures.push(format!("{err} for {lambda:?}")),
        }
        cases += 1;
    }
    // Bott in degree 0 on dominant weights, reflection involution
    let mut bott_cases = 0;
    for g in &gs {
        for _ in 0..50 {
            let lambda = random_dominant(g, &mut rng);
            let marked: Vec<usize> = g.active_nodes().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let want = BottResult::Cohomology { degree: 0, weight: lambda.clone() };
            if bott(g, &marked, &lambda).ok() != Some(want) {
                failures.push(format!("Bott degree 0 for {lambda:?}"));
            }
            let v: Vec<i64> = (0..lambda.len()).map(|_| rng.gen_range(-6..7)).collect();
            for &i in g.active_nodes() {
                let mut x = v.clone();
                g.reflect(i, &mut x);
                g.reflect(i, &mut x);
                if x != v {
                    failures.push(format!("reflection {i} on {v:?}"));
                }
            }
            bott_cases += 1;
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{lr_pairs} LR pairs, {cases} decompositions, {bott_cases} Bott/reflection cases, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn c9_exactness(doc: &Value, ok: bool) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for case in doc["cases"].as_array().into_iter().flatten() {
        for k in case["checks"].as_array().into_iter().flatten() {
            let d = k["degree"].as_u64().unwrap();
            let gens_empty = is_empty(degree(case, d));
            if is_empty(&k["defect"]) != gens_empty || k["euler_match"] != true || k["surjective"] != true {
                bad.push(format!("{} degree {d}", case["case"]));
            }
            checked += 1;
        }
    }
    outcome(ok && bad.is_empty() && checked > 0, format!("{checked} (case, degree) pairs, mismatches {bad:?}"))
}

fn main() -> ExitCode {
    let (catalog, catalog_ok) = catalog_run();
    let results = [
        ("1", "plethysm S³(Λ³K⁷)", c1_plethysm(), false),
        ("2", "G(3,7) ideal", c2_g37(), true),
        ("3", "rank-variety family n = 5..9", c3_rank_varieties(), true),
        ("4", "spinor D7", c4_spinor(), true),
        ("5", "grading element and twists", c5_grading(&catalog, catalog_ok), true),
        ("6", "explicit-vector suites", c6_vectors(), true),
        ("7", "coordinate-ring oracles", c7_oracles(), true),
        ("8", "property suites", c8_properties(), true),
        ("9", "complex exactness", c9_exactness(&catalog, catalog_ok), true),
    ];
    let mut enforced_failure = false;
    for (id, name, o, enforced) in &results {
        let tag = match (o.passed, enforced) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (known, not enforced)",
        };
        println!("criterion {id} [{name}]: {tag}: {}", o.detail);
        enforced_failure |= *enforced && !o.passed;
    }
    if enforced_failure {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
