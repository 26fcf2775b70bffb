//! Partitions, Littlewood–Richardson coefficients and Schur functor dimensions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::Weight;

/// A weakly decreasing sequence of nonnegative integers, trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validate and normalize.
    pub fn new(parts: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut out = Vec::new();
        for p in parts {
            if p < 0 {
                return Err(Error::domain(format!("negative part {p} in partition")));
            }
            out.push(p as u32);
        }
        if out.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("{out:?} is not weakly decreasing")));
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Ok(Partition(out))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(k)` for row mode, `(1^k)` for column mode.
    pub fn row(k: u32) -> Self {
        Partition(if k == 0 { vec![] } else { vec![k] })
    }

    pub fn column(k: u32) -> Self {
        Partition(vec![1; k as usize])
    }

    /// `(r^k)`.
    pub fn rectangle(r: u32, k: usize) -> Self {
        Partition(if r == 0 { vec![] } else { vec![r; k] })
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition((1..=first).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// `lambda contains mu` as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.length() <= self.length() && mu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// The `GL(n)` weight padded with zeros.
    pub fn to_gl(&self, n: usize) -> Result<Vec<i64>> {
        if self.length() > n {
            return Err(Error::domain(format!(
                "partition {self} has length {} > {n}; the Schur functor vanishes",
                self.length()
            )));
        }
        Ok((0..n).map(|i| self.part(i) as i64).collect())
    }

    /// `(p1-p2) omega_1 + ... + (p_{n-1}-p_n) omega_{n-1}` for `SL(n)`.
    pub fn to_weight(&self, n: usize) -> Result<Weight> {
        Weight::gl(self.to_gl(n)?).gl_to_fundamental()
    }

    /// Exponent notation, e.g. `2²,1⁴`; the empty partition prints as `0`.
    pub fn exponent_notation(&self) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        let mut groups = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == v {
                j += 1;
            }
            let count = j - i;
            groups.push(if count == 1 {
                v.to_string()
            } else {
                format!("{v}{}", superscript(count))
            });
            i = j;
        }
        groups.join(",")
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of `n` with at most `len` parts.
    pub fn all_of_size_len(n: u32, len: usize) -> Vec<Partition> {
        Self::all_of_size(n).into_iter().filter(|p| p.length() <= len).collect()
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn from_superscript(c: char) -> Option<u32> {
    match c {
        '⁰' => Some(0),
        '¹' => Some(1),
        '²' => Some(2),
        '³' => Some(3),
        '⁴' => Some(4),
        '⁵' => Some(5),
        '⁶' => Some(6),
        '⁷' => Some(7),
        '⁸' => Some(8),
        '⁹' => Some(9),
        _ => None,
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.exponent_notation())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1^6`, `(3,1⁶)`, `[3,1,1]`, `2^2 1^4`, `0` and `()`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let mut parts: Vec<i64> = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (base, exp) = if let Some((b, e)) = tok.split_once('^') {
                let e: usize = e
                    .parse()
                    .map_err(|_| Error::usage(format!("bad exponent in '{tok}'")))?;
                (b.to_string(), e)
            } else if let Some(pos) = tok.find(|c| from_superscript(c).is_some()) {
                let e = tok[pos..]
                    .chars()
                    .map(|c| from_superscript(c).ok_or_else(|| Error::usage(format!("bad exponent in '{tok}'"))))
                    .try_fold(0usize, |acc, d| d.map(|d| acc * 10 + d as usize))?;
                (tok[..pos].to_string(), e)
            } else {
                (tok.to_string(), 1)
            };
            let v: i64 = base
                .parse()
                .map_err(|_| Error::usage(format!("bad partition part '{tok}'")))?;
            parts.extend(std::iter::repeat_n(v, exp));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

type LrKey = (Partition, Partition, Partition);
static LR_CACHE: Lazy<Mutex<HashMap<LrKey, u64>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Littlewood–Richardson coefficient `c^lambda_{mu,nu}` by enumeration of
/// LR tableaux of shape `lambda/mu` and content `nu`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&v) = LR_CACHE.lock().unwrap().get(&key) {
        return v;
    }
    let v = count_lr_tableaux(lambda, mu, nu);
    LR_CACHE.lock().unwrap().insert(key, v);
    v
}

fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // Cells in reading order: rows top to bottom, each row right to left.
    let mut cells = Vec::new();
    for r in 0..lambda.length() {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let rows = lambda.length();
    let width = lambda.part(0) as usize;
    let mut grid = vec![vec![u32::MAX; width]; rows];
    let mut count = vec![0u32; nu.length()];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        mu: &Partition,
        nu: &Partition,
        grid: &mut Vec<Vec<u32>>,
        count: &mut Vec<u32>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        // Row: value <= right neighbour (already filled, if in the skew shape).
        let hi = if c + 1 < grid[r].len() && grid[r][c + 1] != u32::MAX {
            grid[r][c + 1]
        } else {
            u32::MAX
        };
        // Column: value > the one above, if that cell is in the skew shape.
        let lo = if r > 0 && (c as u32) >= mu.part(r - 1) {
            grid[r - 1][c] + 1
        } else {
            0
        };
        let mut total = 0;
        let top = (nu.length() as u32).min(hi.saturating_add(1));
        for v in lo..top {
            let vi = v as usize;
            if count[vi] >= nu.part(vi) {
                continue;
            }
            if vi > 0 && count[vi] + 1 > count[vi - 1] {
                continue;
            }
            count[vi] += 1;
            grid[r][c] = v;
            total += rec(idx + 1, cells, mu, nu, grid, count);
            grid[r][c] = u32::MAX;
            count[vi] -= 1;
        }
        total
    }
    rec(0, &cells, mu, nu, &mut grid, &mut count)
}

/// All `lambda` with `c^lambda_{mu,nu} > 0`, with multiplicities.
pub fn lr_product(mu: &Partition, nu: &Partition) -> Vec<(Partition, u64)> {
    // Every constituent is obtained from mu by adding nu.size() boxes.
    let mut shapes = vec![mu.clone()];
    for _ in 0..nu.size() {
        let mut next: Vec<Partition> = shapes.iter().flat_map(add_box).collect();
        next.sort();
        next.dedup();
        shapes = next;
    }
    shapes
        .into_iter()
        .filter_map(|l| {
            let c = lr_coefficient(&l, mu, nu);
            (c > 0).then_some((l, c))
        })
        .collect()
}

fn add_box(p: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for r in 0..=p.length() {
        if r == 0 || p.part(r - 1) > p.part(r) {
            let mut v: Vec<u32> = p.0.clone();
            if r == v.len() {
                v.push(1);
            } else {
                v[r] += 1;
            }
            out.push(Partition(v));
        }
    }
    out
}

/// Which Pieri rule to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieriMode {
    /// Add a horizontal strip (tensor with `S^k`).
    Row,
    /// Add a vertical strip (tensor with `Λ^k`).
    Column,
}

/// Partitions obtained from `lambda` by adding a `k`-box horizontal (row mode)
/// or vertical (column mode) strip, in decreasing lexicographic order.
pub fn pieri(lambda: &Partition, k: u32, mode: PieriMode) -> Vec<Partition> {
    match mode {
        PieriMode::Row => {
            let mut out = Vec::new();
            let n = lambda.length() + 1;
            let mut cur = vec![0u32; n];
            fn rec(i: usize, left: u32, lambda: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
                if i == cur.len() {
                    if left == 0 {
                        let mut v: Vec<u32> = cur.clone();
                        while v.last() == Some(&0) {
                            v.pop();
                        }
                        out.push(Partition(v));
                    }
                    return;
                }
                // New part i lies between lambda_i and lambda_{i-1} (unbounded for i = 0).
                let base = lambda.part(i);
                let cap = if i == 0 { base + left } else { lambda.part(i - 1).min(base + left) };
                for v in (base..=cap).rev() {
                    cur[i] = v;
                    rec(i + 1, left - (v - base), lambda, cur, out);
                }
            }
            rec(0, k, lambda, &mut cur, &mut out);
            out
        }
        PieriMode::Column => {
            let mut out: Vec<Partition> = pieri(&lambda.conjugate(), k, PieriMode::Row)
                .into_iter()
                .map(|p| p.conjugate())
                .collect();
            out.sort_by(|a, b| b.cmp(a));
            out
        }
    }
}

/// `dim S_pi K^n` by the hook-content formula; zero when `length(pi) > n`.
pub fn schur_dim(pi: &Partition, n: usize) -> BigInt {
    if pi.length() > n {
        return BigInt::from(0);
    }
    let conj = pi.conjugate();
    let mut q = Ratio::<BigInt>::one();
    for (r, &row) in pi.0.iter().enumerate() {
        for c in 0..row as usize {
            let content = n as i64 + c as i64 - r as i64;
            let hook = (row as i64 - c as i64) + (conj.part(c) as i64 - r as i64) - 1;
            q *= Ratio::new(BigInt::from(content), BigInt::from(hook));
        }
    }
    q.to_integer()
}

/// `schur_dim` as `u64`, saturating.
pub fn schur_dim_u64(pi: &Partition, n: usize) -> u64 {
    schur_dim(pi, n).to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Partition {
        Partition::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2, 1]).conjugate(), p(&[3, 2]));
    }

    #[test]
    fn normalizes_and_rejects() {
        assert_eq!(p(&[2, 1, 0, 0]).parts(), &[2, 1]);
        assert!(Partition::new([1, 2]).is_err());
        assert!(Partition::new([-1]).is_err());
    }

    #[test]
    fn weight_dictionary() {
        assert_eq!(p(&[2, 2]).to_weight(4).unwrap().coords, vec![0, 2, 0]);
        assert_eq!(p(&[1]).to_weight(3).unwrap().coords, vec![1, 0]);
        let w = p(&[3, 1, 1, 1, 1, 1, 1]).to_weight(7).unwrap();
        assert_eq!(w.coords, vec![2, 0, 0, 0, 0, 0]);
        assert!(p(&[1, 1, 1]).to_weight(2).is_err());
    }

    #[test]
    fn notation_round_trip() {
        let q = p(&[3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(q.exponent_notation(), "3,2²,1⁴");
        assert_eq!(q.exponent_notation().parse::<Partition>().unwrap(), q);
        assert_eq!("3,1^6".parse::<Partition>().unwrap(), p(&[3, 1, 1, 1, 1, 1, 1]));
        assert_eq!("[2,1]".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(serde_json::to_string(&q).unwrap(), "[3,2,2,1,1,1,1]");
    }

    #[test]
    fn small_lr() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[3]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2, 2]), &p(&[2, 2]), &Partition::empty()), 1);
        assert_eq!(lr_coefficient(&p(&[3]), &p(&[1, 1]), &p(&[1])), 0);
    }

    #[test]
    fn pieri_rules() {
        assert_eq!(pieri(&p(&[1]), 1, PieriMode::Row), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(
            pieri(&p(&[2, 1]), 2, PieriMode::Column),
            vec![p(&[3, 2]), p(&[3, 1, 1]), p(&[2, 2, 1]), p(&[2, 1, 1, 1])]
        );
        assert_eq!(pieri(&Partition::empty(), 4, PieriMode::Row), vec![p(&[4])]);
    }

    #[test]
    fn dims() {
        assert_eq!(schur_dim_u64(&p(&[1, 1, 1]), 7), 35);
        assert_eq!(schur_dim_u64(&p(&[2, 1]), 2), 2);
        assert_eq!(schur_dim_u64(&p(&[1, 1, 1]), 2), 0);
        assert_eq!(schur_dim_u64(&p(&[3, 1, 1, 1, 1, 1, 1]), 7), 28);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }
}
