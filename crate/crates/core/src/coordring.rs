//! Multiplicities of `H`-invariants in `K[G]^H` for `G/H` the orbit of a
//! general secant point, with brute-force oracles over weight bases.

use std::collections::HashMap;

use serde::Serialize;

use crate::decompose::{plethysm_sym_of_schur, Settings};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Exec};
use crate::partitions::{lr_coefficient, lr_product, schur_dim, Partition};

/// `dim (S_λ W*)^H = Σ_{r,s} c^λ_{(r^k),(s^k)}` for `σ(G(k, W))`,
/// `dim W = 2k`, summing over `r, s <= bound`.
pub fn grass_invariant_mult(lambda: &Partition, k: usize, bound: u32) -> u64 {
    let mut total = 0;
    for r in 0..=bound {
        for s in 0..=bound {
            if (r + s) as usize * k == lambda.size() as usize {
                total += lr_coefficient(lambda, &Partition::rectangle(r, k), &Partition::rectangle(s, k));
            }
        }
    }
    total
}

/// The closed form for `Seg(P¹ × ⋯ × P¹)`, with the conditions under which
/// it was adjusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SegreMult {
    pub value: u64,
    /// `min a - max b + 1 <= 0` and the value was clamped to zero.
    pub clamped: bool,
    /// The factors have different degrees `a_j + b_j`; the central torus of
    /// `H` then acts by a nontrivial character and there are no invariants.
    pub degree_mismatch: bool,
}

/// `dim (S_{a_1,b_1}A_1 ⊗ ⋯ ⊗ S_{a_k,b_k}A_k)^H = min a_j - max b_j + 1`.
pub fn segre_p1_mult(a: &[u32], b: &[u32]) -> Result<SegreMult> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::usage("a and b must be nonempty and of equal length"));
    }
    if let Some(j) = (0..a.len()).find(|&j| a[j] < b[j]) {
        return Err(Error::usage(format!("({},{}) is not a partition in factor {}", a[j], b[j], j + 1)));
    }
    let raw = *a.iter().min().expect("nonempty") as i64 - *b.iter().max().expect("nonempty") as i64 + 1;
    let clamped = raw <= 0;
    let degree_mismatch = a.iter().zip(b).any(|(x, y)| x + y != a[0] + b[0]);
    Ok(SegreMult {
        value: if clamped || degree_mismatch { 0 } else { raw as u64 },
        clamped,
        degree_mismatch,
    })
}

/// Inputs to the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantCase {
    /// `S_λ W`, `dim W = 2k`, invariants of `SL(E) × SL(F)`, `W = E ⊕ F`.
    Grass { lambda: Partition, k: usize },
    /// `⊗ S_{a_j,b_j} A_j`, `dim A_j = 2`, invariants of the diagonal torus
    /// `{s_1⋯s_k = t_1⋯t_k = 1}`.
    Segre { a: Vec<u32>, b: Vec<u32> },
}

/// Weight multiplicities of `S_λ K^n` from semistandard tableaux.
pub fn ssyt_weights(lambda: &Partition, n: usize, cap: u64) -> Result<HashMap<Vec<i64>, u64>> {
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &l)| (0..l).map(move |c| (r, c))).collect();
    let mut filling = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; shape.len()];
    let mut out: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut count = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        n: usize,
        filling: &mut Vec<Vec<usize>>,
        w: &mut Vec<i64>,
        out: &mut HashMap<Vec<i64>, u64>,
        count: &mut u64,
        cap: u64,
    ) -> Result<()> {
        if i == cells.len() {
            *count += 1;
            if *count > cap {
                return Err(Error::CapExceeded {
                    what: "semistandard tableaux".into(),
                    size: *count,
                    cap,
                });
            }
            *out.entry(w.clone()).or_insert(0) += 1;
            return Ok(());
        }
        let (r, c) = cells[i];
        let lo = {
            let left = if c > 0 { filling[r][c - 1] } else { 0 };
            let up = if r > 0 { filling[r - 1][c] + 1 } else { 0 };
            left.max(up)
        };
        for v in lo..n {
            filling[r][c] = v;
            w[v] += 1;
            rec(i + 1, cells, n, filling, w, out, count, cap)?;
            w[v] -= 1;
        }
        Ok(())
    }
    rec(0, &cells, n, &mut filling, &mut vec![0; n], &mut out, &mut count, cap)?;
    Ok(out)
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(left: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            cur.push(x);
            rec(left, cur, out);
            cur.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Count invariants directly from weight bases.
///
/// Grassmannian: the `GL(E)×GL(F)` multiplicity of `det_E^r ⊗ det_F^s` is
/// `Σ_{w} sgn(w) mult(μ + ρ - wρ)` over `S_k × S_k`, with weight
/// multiplicities from tableaux. Segre: count weight vectors
/// `e_j^{i_j+b_j} f_j^{a_j-i_j}` whose `e`- and `f`-exponents agree across
/// all factors.
pub fn brute_force_invariants(case: &InvariantCase, cap: u64) -> Result<u64> {
    match case {
        InvariantCase::Grass { lambda, k } => {
            let k = *k;
            if lambda.length() > 2 * k {
                return Ok(0);
            }
            let weights = ssyt_weights(lambda, 2 * k, cap)?;
            let perms = permutations(k);
            let size = lambda.size() as usize;
            let mut total = 0i64;
            for r in 0..=size / k {
                let s_total = size - r * k;
                if !s_total.is_multiple_of(k) {
                    continue;
                }
                let s = s_total / k;
                let mut m = 0i64;
                for (p1, s1) in &perms {
                    for (p2, s2) in &perms {
                        let mut w = Vec::with_capacity(2 * k);
                        for i in 0..k {
                            w.push(r as i64 + (k - 1 - i) as i64 - (k - 1 - p1[i]) as i64);
                        }
                        for i in 0..k {
                            w.push(s as i64 + (k - 1 - i) as i64 - (k - 1 - p2[i]) as i64);
                        }
                        m += s1 * s2 * weights.get(&w).copied().unwrap_or(0) as i64;
                    }
                }
                if m < 0 {
                    return Err(Error::consistency(format!("negative multiplicity {m} in the oracle")));
                }
                total += m;
            }
            Ok(total as u64)
        }
        InvariantCase::Segre { a, b } => {
            if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x < y) {
                return Err(Error::usage("invalid Segre weights"));
            }
            let space: u64 = a.iter().zip(b).map(|(x, y)| (x - y + 1) as u64).product();
            if space > cap {
                return Err(Error::CapExceeded {
                    what: "Segre weight basis".into(),
                    size: space,
                    cap,
                });
            }
            let mut count = 0;
            let mut idx = vec![0u32; a.len()];
            loop {
                let e0 = idx[0] + b[0];
                let f0 = a[0] - idx[0];
                if (0..a.len()).all(|j| idx[j] + b[j] == e0 && a[j] - idx[j] == f0) {
                    count += 1;
                }
                let mut j = 0;
                loop {
                    if j == a.len() {
                        return Ok(count);
                    }
                    idx[j] += 1;
                    if idx[j] <= a[j] - b[j] {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
            }
        }
    }
}

/// A disagreement between a closed form and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub case: InvariantCase,
    pub formula: u64,
    pub oracle: u64,
}

/// Exhaustive comparison of the closed forms with the brute-force oracle.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub max_size: u32,
    pub grass_ks: Vec<usize>,
    pub max_a: u32,
    pub max_factors: usize,
    pub grass_checked: usize,
    pub segre_checked: usize,
    /// Segre cases where the closed form was clamped or had mismatched degrees.
    pub segre_adjusted: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare `grass_invariant_mult` with the oracle for all `|λ| <= max_size`,
/// `ℓ(λ) <= 2k`, `k ∈ grass_ks`, and `segre_p1_mult` for all `1..=max_factors`
/// factors with `b_j <= a_j <= max_a`.
pub fn oracle_equivalence(
    max_size: u32,
    grass_ks: &[usize],
    max_a: u32,
    max_factors: usize,
    cap: u64,
    exec: Exec,
) -> Result<OracleReport> {
    let mut grass: Vec<InvariantCase> = Vec::new();
    for &k in grass_ks {
        for size in 0..=max_size {
            for lambda in Partition::all_of_size(size) {
                if lambda.length() <= 2 * k {
                    grass.push(InvariantCase::Grass { lambda, k });
                }
            }
        }
    }
    let factor: Vec<(u32, u32)> = (0..=max_a).flat_map(|a| (0..=a).map(move |b| (a, b))).collect();
    let mut segre: Vec<InvariantCase> = Vec::new();
    for k in 1..=max_factors {
        let mut idx = vec![0usize; k];
        'outer: loop {
            segre.push(InvariantCase::Segre {
                a: idx.iter().map(|&i| factor[i].0).collect(),
                b: idx.iter().map(|&i| factor[i].1).collect(),
            });
            for j in 0..k {
                idx[j] += 1;
                if idx[j] < factor.len() {
                    continue 'outer;
                }
                idx[j] = 0;
            }
            break;
        }
    }
    let compare = |case: &InvariantCase| -> Result<(Option<OracleMismatch>, bool)> {
        let (formula, adjusted) = match case {
            InvariantCase::Grass { lambda, k } => (grass_invariant_mult(lambda, *k, lambda.size()), false),
            InvariantCase::Segre { a, b } => {
                let m = segre_p1_mult(a, b)?;
                (m.value, m.clamped || m.degree_mismatch)
            }
        };
        let oracle = brute_force_invariants(case, cap)?;
        let mismatch = (formula != oracle).then(|| OracleMismatch {
            case: case.clone(),
            formula,
            oracle,
        });
        Ok((mismatch, adjusted))
    };
    let results: Vec<Result<(Option<OracleMismatch>, bool)>> =
        map_collect(exec, &grass, compare).into_iter().chain(map_collect(exec, &segre, compare)).collect();
    let mut mismatches = Vec::new();
    let mut segre_adjusted = 0;
    for r in results {
        let (m, adjusted) = r?;
        mismatches.extend(m);
        segre_adjusted += adjusted as usize;
    }
    Ok(OracleReport {
        max_size,
        grass_ks: grass_ks.to_vec(),
        max_a,
        max_factors,
        grass_checked: grass.len(),
        segre_checked: segre.len(),
        segre_adjusted,
        mismatches,
    })
}

/// One entry of the bidegree table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidegreeEntry {
    pub partition: Partition,
    pub mult: u64,
    /// `dim S_λ W'`, `dim W' = 2k`: the multiplicity of `(S_λ W)*` in
    /// `K[R_{2k}(Λ^k W)]`.
    pub scaling: String,
}

/// The summands of `S_{(r^k)}W ⊗ S_{(s^k)}W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bidegree {
    pub r: u32,
    pub s: u32,
    pub entries: Vec<BidegreeEntry>,
}

/// `K[SL(W)]^H = ⊕_{r,s} S_{(r^k)}W ⊗ S_{(s^k)}W`, decomposed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidegreeTable {
    pub k: usize,
    pub rows: Vec<Bidegree>,
}

impl BidegreeTable {
    pub fn new(k: usize, max_degree: u32) -> Self {
        let mut rows = Vec::new();
        for r in 0..=max_degree {
            for s in 0..=max_degree - r {
                let entries: Vec<BidegreeEntry> = lr_product(&Partition::rectangle(r, k), &Partition::rectangle(s, k))
                    .into_iter()
                    .map(|(p, m)| BidegreeEntry {
                        scaling: schur_dim(&p, 2 * k).to_string(),
                        partition: p,
                        mult: m,
                    })
                    .collect();
                rows.push(Bidegree { r, s, entries });
            }
        }
        BidegreeTable { k, rows }
    }

    /// Every `(r,s)` entry occurs in `S^r(Λ^k W) ⊗ S^s(Λ^k W)` with at least
    /// its multiplicity, `dim W = 2k`.
    pub fn get(&self, r: u32, s: u32) -> Option<&[BidegreeEntry]> {
        self.rows.iter().find(|b| b.r == r && b.s == s).map(|b| b.entries.as_slice())
    }

    pub fn check_generation(&self, settings: Settings) -> Result<Vec<((u32, u32), bool)>> {
        let n = 2 * self.k;
        let mut sym: HashMap<u32, Vec<(Partition, u64)>> = HashMap::new();
        let max = self.rows.iter().map(|b| b.r.max(b.s)).max().unwrap_or(0);
        for d in 0..=max {
            sym.insert(d, plethysm_sym_of_schur(&Partition::column(self.k as u32), n, d as usize, None, settings)?);
        }
        let mut out = Vec::new();
        for Bidegree { r, s, entries } in &self.rows {
            let mut avail: HashMap<Partition, u64> = HashMap::new();
            for (p, m) in &sym[r] {
                for (q, m2) in &sym[s] {
                    for (x, c) in lr_product(p, q) {
                        if x.length() <= n {
                            *avail.entry(x).or_insert(0) += m * m2 * c;
                        }
                    }
                }
            }
            let ok = entries
                .iter()
                .filter(|e| e.partition.length() <= n)
                .all(|e| avail.get(&e.partition).copied().unwrap_or(0) >= e.mult);
            out.push(((*r, *s), ok));
        }
        Ok(out)
    }
}
