//! Bott's algorithm for irreducible homogeneous bundles on `G/P`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::decompose::{Character, Engine, IrrepRow, IrrepSum, Settings};
use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::rootsys::RootDatum;

/// Cohomology of an irreducible bundle: zero, or one module in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BottResult {
    Zero,
    Cohomology { degree: usize, weight: Vec<i64> },
}

/// Bott's algorithm together with the simple reflections applied, in order.
pub fn bott_with_chain(g: &RootDatum, marked: &[usize], lambda: &[i64]) -> Result<(BottResult, Vec<usize>)> {
    if let Some(&i) = g
        .active_nodes()
        .iter()
        .find(|&&i| !marked.contains(&i) && g.pair(i, lambda) < 0)
    {
        return Err(Error::usage(format!(
            "{} is negative on unmarked node {}; not an irreducible bundle weight",
            g.format_weight(lambda),
            i + 1
        )));
    }
    let mut v: Vec<i64> = lambda.iter().zip(g.rho()).map(|(a, b)| a + b).collect();
    if g.is_singular(&v) {
        return Ok((BottResult::Zero, Vec::new()));
    }
    let mut chain = Vec::new();
    while let Some(&i) = g.active_nodes().iter().find(|&&i| g.pair(i, &v) < 0) {
        g.reflect(i, &mut v);
        chain.push(i);
    }
    for (x, r) in v.iter_mut().zip(g.rho()) {
        *x -= r;
    }
    Ok((
        BottResult::Cohomology {
            degree: chain.len(),
            weight: v,
        },
        chain,
    ))
}

/// Bott's algorithm: `lambda + rho` singular gives zero, otherwise reflect to
/// the dominant chamber and count the steps.
///
/// `marked` lists the 0-based global nodes defining the parabolic; `lambda`
/// must be dominant on all other nodes.
pub fn bott(g: &RootDatum, marked: &[usize], lambda: &[i64]) -> Result<BottResult> {
    bott_with_chain(g, marked, lambda).map(|r| r.0)
}

/// One irreducible Levi summand of `Λ^p gr(ξ)` and its cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleSummand {
    pub p: usize,
    /// How many factors come from each piece of `gr(ξ)`.
    pub pieces: Vec<usize>,
    pub levi_weight: Vec<i64>,
    pub mult: u64,
    pub result: BottResult,
}

/// `H^j(B, Λ^p gr ξ)` for a range of `p`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    /// `(p, j) -> module`.
    pub cells: BTreeMap<(usize, usize), IrrepSum>,
    pub summands: Vec<BundleSummand>,
}

impl CohomologyTable {
    pub fn get(&self, p: usize, j: usize) -> IrrepSum {
        self.cells.get(&(p, j)).cloned().unwrap_or_default()
    }

    /// Sum over `j` of `H^j(Λ^{i+j})`.
    pub fn resolution_term(&self, i: usize) -> IrrepSum {
        let mut out = IrrepSum::new();
        for ((p, j), s) in &self.cells {
            if *p == i + j {
                out.extend(s);
            }
        }
        out
    }

    /// `sum_j (-1)^j dim H^j(Λ^p)`.
    pub fn euler_characteristic(&self, g: &RootDatum, p: usize) -> BigInt {
        self.cells
            .iter()
            .filter(|((q, _), _)| *q == p)
            .map(|((_, j), s)| if j % 2 == 0 { s.dim(g) } else { -s.dim(g) })
            .fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn to_json(&self, g: &RootDatum) -> serde_json::Value {
        let mut rows: BTreeMap<String, BTreeMap<String, Vec<IrrepRow>>> = BTreeMap::new();
        for ((p, j), s) in &self.cells {
            rows.entry(p.to_string()).or_default().insert(j.to_string(), s.rows(g));
        }
        serde_json::to_value(rows).expect("serializable")
    }
}

/// Cohomology of `Λ^p` of a bundle whose associated graded has the given
/// Levi-module pieces, for each `p` in `p_range`.
///
/// Each `Λ^p(⊕ P_i)` is expanded as `⊕ ⊗_i Λ^{k_i} P_i`, every tensor product
/// is decomposed over the Levi (weights stay in full coordinates, so marked
/// twists are exact), and Bott's algorithm runs on each irreducible summand.
pub fn bundle_cohomology_table(
    g: &RootDatum,
    marked: &[usize],
    pieces: &[Character],
    p_range: std::ops::RangeInclusive<usize>,
    settings: Settings,
) -> Result<CohomologyTable> {
    let levi = g.levi(marked);
    let engine = Engine::new(&levi, settings);
    let max_p = *p_range.end();
    let powers: Vec<Vec<Character>> = pieces
        .iter()
        .map(|c| c.power_series(max_p.min(c.dim() as usize), true, settings.exec))
        .collect();
    let mut table = CohomologyTable::default();
    for p in p_range {
        let splits = compositions(p, &powers.iter().map(|v| v.len() - 1).collect::<Vec<_>>());
        let results: Vec<Result<Vec<BundleSummand>>> = map_collect(settings.exec, &splits, |ks| {
            let mut ch = Character::trivial(g.dim());
            for (k, pw) in ks.iter().zip(&powers) {
                ch = ch.mul(&pw[*k], crate::exec::Exec::Sequential);
            }
            let sum = engine.peel(&ch)?;
            sum.iter()
                .map(|(w, m)| {
                    Ok(BundleSummand {
                        p,
                        pieces: ks.clone(),
                        levi_weight: w.clone(),
                        mult: *m,
                        result: bott(g, marked, w)?,
                    })
                })
                .collect()
        });
        for r in results {
            for s in r? {
                if let BottResult::Cohomology { degree, weight } = &s.result {
                    table.cells.entry((p, *degree)).or_default().insert(weight.clone(), s.mult);
                }
                table.summands.push(s);
            }
        }
    }
    Ok(table)
}

/// All `(k_1..k_r)` with `sum = total` and `k_i <= caps[i]`.
pub fn compositions(total: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(i: usize, left: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left.min(caps[i]) {
            cur.push(k);
            rec(i + 1, left - k, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, total, caps, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Component;

    #[test]
    fn dominant_is_borel_weil() {
        let g = RootDatum::gl(5).unwrap();
        let r = bott(&g, &[3], &[2, 1, 1, 0, 0]).unwrap();
        assert_eq!(r, BottResult::Cohomology { degree: 0, weight: vec![2, 1, 1, 0, 0] });
    }

    #[test]
    fn singular_gives_zero() {
        let g = RootDatum::gl(4).unwrap();
        // (0,0,0 | 1) + rho = (3,2,1,1)
        assert_eq!(bott(&g, &[2], &[0, 0, 0, 1]).unwrap(), BottResult::Zero);
    }

    #[test]
    fn gl_reflection_chain_counts_inversions() {
        let g = RootDatum::gl(4).unwrap();
        // (0,0,0 | 3) + rho = (3,2,1,3) -> singular; (0,0,0|4) + rho = (3,2,1,4) -> 3 inversions
        let (r, chain) = bott_with_chain(&g, &[2], &[0, 0, 0, 4]).unwrap();
        assert_eq!(r, BottResult::Cohomology { degree: 3, weight: vec![1, 1, 1, 1] });
        assert_eq!(chain.len(), 3);
    }

    #[test]
    fn rejects_non_levi_dominant() {
        let g = RootDatum::gl(4).unwrap();
        assert!(bott(&g, &[2], &[0, 1, 0, 0]).is_err());
    }

    #[test]
    fn rank_variety_n5_generator() {
        // GL2 x GL5, bundle weight (2,1 | 2,1,0,0 | 3) on P(A*) x G(4,B*).
        let g = RootDatum::new(vec![Component::Gl { n: 2 }, Component::Gl { n: 5 }]).unwrap();
        let r = bott(&g, &[0, 4], &[2, 1, 2, 1, 0, 0, 3]).unwrap();
        assert_eq!(
            r,
            BottResult::Cohomology {
                degree: 2,
                weight: vec![2, 1, 2, 1, 1, 1, 1]
            }
        );
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(2, &[1, 2]), vec![vec![0, 2], vec![1, 1]]);
        assert_eq!(compositions(0, &[3, 3]).len(), 1);
    }
}
