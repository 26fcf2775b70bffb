use std::collections::BTreeMap;

use serde::Serialize;

use super::linalg::EchelonBasis;
use super::{q, sort_sign, subsets, ExteriorTensor, Monomial, PolyElement, Q};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Exec};
use crate::partitions::Partition;

/// A numbering scheme: a tableau with entries `1..=d`, each used `mult`
/// times, weakly increasing along rows and strictly down columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumberingScheme {
    pub name: String,
    rows: Vec<Vec<usize>>,
    d: usize,
    mult: usize,
}

impl NumberingScheme {
    pub fn new(name: &str, rows: Vec<Vec<usize>>, mult: usize) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.is_empty()) {
            return Err(Error::usage("numbering scheme needs nonempty rows"));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::usage("row lengths must be nonincreasing"));
        }
        if rows.iter().any(|r| r.windows(2).any(|w| w[0] > w[1])) {
            return Err(Error::usage("rows must be weakly increasing"));
        }
        for i in 1..rows.len() {
            for (j, &x) in rows[i].iter().enumerate() {
                if rows[i - 1][j] >= x {
                    return Err(Error::usage("columns must be strictly increasing"));
                }
            }
        }
        let d = *rows.iter().flatten().max().expect("nonempty");
        for s in 1..=d {
            let c = rows.iter().flatten().filter(|&&x| x == s).count();
            if c != mult {
                return Err(Error::usage(format!("entry {s} occurs {c} times, expected {mult}")));
            }
        }
        Ok(NumberingScheme {
            name: name.to_string(),
            rows,
            d,
            mult,
        })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Number of distinct entries, the polynomial degree of the image.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Row lengths: the exterior degrees of the domain factors.
    pub fn domain_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    /// `λ(D)`: the column lengths, the highest weight of the module.
    pub fn weight(&self) -> Partition {
        Partition::new(self.domain_degrees().iter().map(|&x| x as i64))
            .expect("row lengths form a partition")
            .conjugate()
    }

    /// `e_{i,s}`: how many boxes of row `i` hold `s` (`s` 1-based).
    fn counts(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| (1..=self.d).map(|s| r.iter().filter(|&&x| x == s).count()).collect())
            .collect()
    }

    /// Koszul sign of reordering the factors `Λ^{e_{i,s}}` from row-major
    /// to entry-major order.
    fn koszul_sign(&self) -> i64 {
        let e = self.counts();
        let order: Vec<(usize, usize)> = (0..self.rows.len()).flat_map(|i| (0..self.d).map(move |s| (i, s))).collect();
        let mut sign = 1i64;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                let (ia, sa) = order[a];
                let (ib, sb) = order[b];
                // after the reordering, (ib, sb) comes before (ia, sa) iff sb < sa
                if sb < sa && (e[ia][sa] * e[ib][sb]) % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        sign
    }
}

/// The four schemes producing the generators of the rank-variety ideals of
/// `Λ³K⁷`, `Λ³K⁸` and `Λ³K⁹`.
pub fn numbering_schemes() -> Vec<NumberingScheme> {
    let mk = |name: &str, rows: Vec<Vec<usize>>| NumberingScheme::new(name, rows, 3).expect("valid scheme");
    vec![
        mk("D1", vec![vec![1, 1, 1, 2, 2, 3, 3], vec![2], vec![3]]),
        mk("D2", vec![vec![1, 1, 1, 2, 2, 3, 3, 4], vec![2, 4, 4], vec![3]]),
        mk("D3", vec![vec![1, 1, 1, 2, 2, 3, 3, 4, 4], vec![2], vec![3], vec![4]]),
        mk("D4", vec![vec![1, 1, 1, 2, 2, 3, 3, 4, 5], vec![2, 4, 4, 5], vec![3, 5]]),
    ]
}

/// Ordered splits of a sorted index set into consecutive groups of the given
/// sizes (the coproduct `Λ^a → ⊗ Λ^{a_s}`), with shuffle signs.
fn splits(idx: &[usize], sizes: &[usize]) -> Vec<(Vec<Vec<usize>>, i64)> {
    fn rec(left: &[usize], sizes: &[usize], cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&k, rest)) = sizes.split_first() else {
            out.push(cur.clone());
            return;
        };
        let pos: Vec<usize> = (0..left.len()).collect();
        for pick in subsets(left.len(), k) {
            let chosen: Vec<usize> = pick.iter().map(|&p| left[p]).collect();
            let remaining: Vec<usize> = pos.iter().filter(|p| !pick.contains(p)).map(|&p| left[p]).collect();
            cur.push(chosen);
            rec(&remaining, rest, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(idx, sizes, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|parts| {
            let mut perm: Vec<usize> = parts.iter().flatten().copied().collect();
            let s = sort_sign(&mut perm).expect("distinct");
            (parts, s as i64)
        })
        .collect()
}

/// `ρ(D)`: coproduct on each row, wedge the pieces with equal entry across
/// rows (in increasing row order, with the Koszul sign of the reordering),
/// then multiply in the symmetric algebra.
pub fn rho_map(scheme: &NumberingScheme, inputs: &[ExteriorTensor]) -> Result<PolyElement> {
    let degs = scheme.domain_degrees();
    if inputs.len() != degs.len() {
        return Err(Error::usage(format!(
            "{} takes {} factors, got {}",
            scheme.name,
            degs.len(),
            inputs.len()
        )));
    }
    for (i, (t, &k)) in inputs.iter().zip(&degs).enumerate() {
        if t.degree() != k {
            return Err(Error::usage(format!(
                "factor {} of {} must lie in Λ^{k}, got Λ^{}",
                i + 1,
                scheme.name,
                t.degree()
            )));
        }
    }
    let n = inputs.iter().map(|t| t.dim()).max().unwrap_or(0);
    let counts = scheme.counts();
    let ksign = scheme.koszul_sign();
    let mut out = PolyElement::zero(scheme.mult, n, scheme.d);

    // per row: list of (pieces per entry, coefficient)
    let row_options: Vec<Vec<(Vec<Vec<usize>>, Q)>> = inputs
        .iter()
        .zip(&counts)
        .map(|(t, sizes)| {
            let mut opts = Vec::new();
            for (idx, c) in t.terms() {
                for (parts, s) in splits(idx, sizes) {
                    opts.push((parts, c * q(s)));
                }
            }
            opts
        })
        .collect();

    let mut choice = vec![0usize; row_options.len()];
    if row_options.iter().any(|o| o.is_empty()) {
        return Ok(out);
    }
    loop {
        let mut coeff = q(ksign);
        let mut factors: Vec<Vec<usize>> = vec![Vec::with_capacity(scheme.mult); scheme.d];
        for (r, &c) in choice.iter().enumerate() {
            let (parts, x) = &row_options[r][c];
            coeff *= x;
            for (s, piece) in parts.iter().enumerate() {
                factors[s].extend_from_slice(piece);
            }
        }
        out.add_product(&factors, coeff);
        // odometer
        let mut r = choice.len();
        loop {
            if r == 0 {
                return Ok(out);
            }
            r -= 1;
            choice[r] += 1;
            if choice[r] < row_options[r].len() {
                break;
            }
            choice[r] = 0;
        }
    }
}

/// `ρ(D)` on `e_1∧…∧e_{d'_1} ⊗ e_1∧…∧e_{d'_2} ⊗ …` in `Λ^• K^n`.
pub fn rho_on_highest_weight(scheme: &NumberingScheme, n: usize) -> Result<PolyElement> {
    let inputs: Vec<ExteriorTensor> = scheme
        .domain_degrees()
        .iter()
        .map(|&k| {
            if k > n {
                Err(Error::domain(format!("{} needs dim W >= {k}", scheme.name)))
            } else {
                Ok(ExteriorTensor::top(k, n))
            }
        })
        .collect::<Result<_>>()?;
    rho_map(scheme, &inputs)
}

/// Outcome of an ideal-membership test for a highest weight vector.
#[derive(Debug, Clone, Serialize)]
pub struct ContainmentReport {
    pub scheme: String,
    pub n: usize,
    pub degree: usize,
    pub weight: Vec<i64>,
    /// Number of products `g · m` spanning the ideal in this weight space.
    pub candidates: usize,
    pub span_rank: usize,
    pub contained: bool,
}

/// Monomials of `S^e(Λ^k K^n)` of weight `w` (as multisets of sorted tuples).
fn weight_monomials(n: usize, k: usize, e: usize, w: &[i64]) -> Vec<Monomial> {
    fn rec(
        cands: &[Vec<usize>],
        start: usize,
        left: usize,
        w: &mut Vec<i64>,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            if w.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..cands.len() {
            let c = &cands[i];
            if c.iter().all(|&j| w[j] > 0) {
                for &j in c {
                    w[j] -= 1;
                }
                cur.push(c.clone());
                rec(cands, i, left - 1, w, cur, out);
                cur.pop();
                for &j in c {
                    w[j] += 1;
                }
            }
        }
    }
    let cands = subsets(n, k);
    let mut out = Vec::new();
    rec(&cands, 0, e, &mut w.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Is the highest weight vector of `ρ(target)` in the ideal generated by the
/// image of `ρ(generator)` in `S^•(Λ^k K^n)`?
///
/// The generator module is spanned by `ρ(generator)` on basis inputs; the
/// ideal's weight space is spanned by products of those with monomials of
/// complementary weight. Equivariance makes a highest-weight check suffice.
pub fn ideal_containment(
    generator: &NumberingScheme,
    target: &NumberingScheme,
    n: usize,
    exec: Exec,
) -> Result<ContainmentReport> {
    let vector = rho_on_highest_weight(target, n)?;
    let mu = vector
        .weight()
        .ok_or_else(|| Error::consistency(format!("ρ({}) vanished on the highest weight input", target.name)))?;
    let k = generator.mult;
    let e = target
        .degree()
        .checked_sub(generator.degree())
        .ok_or_else(|| Error::usage("target degree below generator degree"))?;

    // generator inputs by weight: each row uses a subset of [n]
    let degs = generator.domain_degrees();
    let mut inputs: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &dk in &degs {
        let subs = subsets(n, dk);
        inputs = inputs
            .into_iter()
            .flat_map(|p| {
                subs.iter().map(move |s| {
                    let mut p = p.clone();
                    p.push(s.clone());
                    p
                })
            })
            .collect();
    }
    let admissible: Vec<(Vec<Vec<usize>>, Vec<i64>)> = inputs
        .into_iter()
        .filter_map(|rows| {
            let mut w = vec![0i64; n];
            for r in &rows {
                for &i in r {
                    w[i] += 1;
                }
            }
            w.iter().zip(&mu).all(|(a, b)| a <= b).then_some((rows, w))
        })
        .collect();
    let products: Vec<Result<Vec<PolyElement>>> = map_collect(exec, &admissible, |(rows, w)| {
        let ins: Vec<ExteriorTensor> = rows.iter().map(|r| ExteriorTensor::basis(n, r)).collect();
        let g = rho_map(generator, &ins)?;
        if g.is_zero() {
            return Ok(Vec::new());
        }
        let rest: Vec<i64> = mu.iter().zip(w).map(|(a, b)| a - b).collect();
        Ok(weight_monomials(n, k, e, &rest)
            .into_iter()
            .map(|m| {
                let mut mono = PolyElement::zero(k, n, e);
                mono.add_product(&m, q(1));
                g.mul(&mono)
            })
            .collect())
    });
    let mut basis: EchelonBasis<Monomial> = EchelonBasis::new();
    let mut candidates = 0;
    for r in products {
        for p in r? {
            candidates += 1;
            basis.insert(p.terms().map(|(m, c)| (m.clone(), c.clone())).collect::<BTreeMap<_, _>>());
        }
    }
    let contained = basis.contains(vector.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
    Ok(ContainmentReport {
        scheme: target.name.clone(),
        n,
        degree: target.degree(),
        weight: mu,
        candidates,
        span_rank: basis.rank(),
        contained,
    })
}
