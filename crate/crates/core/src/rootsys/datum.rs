use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::rational::common_denominator;
use super::{build_root_system, gl_is_dominant, positive_root_coefficients, Family, RootSystem};
use crate::error::{Error, Result};

/// One factor of a reductive group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Component {
    /// Simply connected simple group, weights in fundamental coordinates.
    Simple { family: Family, rank: usize },
    /// `GL(n)`, weights as integer `n`-vectors.
    #[serde(rename = "GL")]
    Gl { n: usize },
}

impl Component {
    pub fn coord_len(&self) -> usize {
        match self {
            Component::Simple { rank, .. } => *rank,
            Component::Gl { n } => *n,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Component::Simple { rank, .. } => *rank,
            Component::Gl { n } => n - 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Component::Simple { family, rank } => format!("{}{}", family.letter(), rank),
            Component::Gl { n } => format!("GL{n}"),
        }
    }

    /// The simple root system underlying the derived group (`A_{n-1}` for `GL(n)`).
    pub fn root_system(&self) -> Result<RootSystem> {
        match self {
            Component::Simple { family, rank } => build_root_system(*family, *rank),
            Component::Gl { n } => build_root_system(Family::A, n - 1),
        }
    }
}

/// A positive root with its coroot functional precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    pub coords: Vec<i64>,
    pub height: i64,
    /// `<lambda, beta^vee> = coroot_num . lambda / coroot_den`.
    coroot_num: Vec<i64>,
    coroot_den: i64,
}

impl PositiveRoot {
    pub fn pairing(&self, lambda: &[i64]) -> i64 {
        let n: i64 = self.coroot_num.iter().zip(lambda).map(|(a, b)| a * b).sum();
        n / self.coroot_den
    }

    /// Exact test for `<lambda, beta^vee> = 0` that also works for rational
    /// numerators.
    pub fn pairing_is_zero(&self, lambda: &[i64]) -> bool {
        self.coroot_num.iter().zip(lambda).map(|(a, b)| a * b).sum::<i64>() == 0
    }
}

/// Root datum of a product of `GL`s and simple groups, possibly restricted to a
/// Levi subgroup (a subset of active simple roots in the same coordinates).
///
/// Weights of every Levi of the datum live in the same coordinate space, which
/// is what lets marked-node twists be carried through character arithmetic
/// instead of being reconstructed afterwards.
#[derive(Debug, Clone)]
pub struct RootDatum {
    components: Vec<Component>,
    coord_offsets: Vec<usize>,
    node_offsets: Vec<usize>,
    dim: usize,
    /// Active (unmarked) global nodes, 0-based, increasing.
    active: Vec<usize>,
    simple: Vec<Vec<i64>>,
    coroot: Vec<Vec<i64>>,
    /// Inner product on coordinates scaled by a common integer.
    gram: Vec<Vec<i64>>,
    rho: Vec<i64>,
    positive: Vec<PositiveRoot>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && self.active == other.active
    }
}

impl RootDatum {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Config("a group needs at least one factor".into()));
        }
        let dim: usize = components.iter().map(Component::coord_len).sum();
        let mut coord_offsets = Vec::new();
        let mut node_offsets = Vec::new();
        let (mut co, mut no) = (0, 0);
        let mut simple = Vec::new();
        let mut coroot = Vec::new();
        let mut rho = vec![0i64; dim];
        // Per-component rational Gram blocks, merged with a common scale below.
        let mut blocks: Vec<Vec<Vec<Ratio<i64>>>> = Vec::new();
        for comp in &components {
            coord_offsets.push(co);
            node_offsets.push(no);
            match comp {
                Component::Gl { n } => {
                    if *n < 1 {
                        return Err(Error::Config("GL(0) is not a group".into()));
                    }
                    for i in 0..n - 1 {
                        let mut a = vec![0i64; dim];
                        a[co + i] = 1;
                        a[co + i + 1] = -1;
                        simple.push(a.clone());
                        coroot.push(a);
                    }
                    for i in 0..*n {
                        rho[co + i] = (*n - 1 - i) as i64;
                    }
                    blocks.push(
                        (0..*n)
                            .map(|i| {
                                (0..*n)
                                    .map(|j| Ratio::from_integer(i64::from(i == j)))
                                    .collect()
                            })
                            .collect(),
                    );
                }
                Component::Simple { family, rank } => {
                    let rs = build_root_system(*family, *rank)?;
                    for i in 0..*rank {
                        let mut a = vec![0i64; dim];
                        let mut c = vec![0i64; dim];
                        a[co..co + *rank].copy_from_slice(&rs.cartan()[i][..*rank]);
                        c[co + i] = 1;
                        simple.push(a);
                        coroot.push(c);
                        rho[co + i] = 1;
                    }
                    blocks.push(
                        (0..*rank)
                            .map(|i| {
                                (0..*rank)
                                    .map(|j| rs.inv_cartan()[i][j] * rs.root_len2()[j] / 2)
                                    .collect()
                            })
                            .collect(),
                    );
                }
            }
            co += comp.coord_len();
            no += comp.node_count();
        }
        let scale = blocks
            .iter()
            .fold(1i64, |acc, b| num_integer::lcm(acc, common_denominator(b)));
        let mut gram = vec![vec![0i64; dim]; dim];
        for (b, &off) in blocks.iter().zip(&coord_offsets) {
            for (i, row) in b.iter().enumerate() {
                for (j, q) in row.iter().enumerate() {
                    gram[off + i][off + j] = (*q * scale).to_integer();
                }
            }
        }
        let mut datum = RootDatum {
            components,
            coord_offsets,
            node_offsets,
            dim,
            active: (0..no).collect(),
            simple,
            coroot,
            gram,
            rho,
            positive: Vec::new(),
        };
        datum.positive = datum.compute_positive_roots();
        Ok(datum)
    }

    pub fn simple_group(family: Family, rank: usize) -> Result<Self> {
        Self::new(vec![Component::Simple { family, rank }])
    }

    pub fn gl(n: usize) -> Result<Self> {
        Self::new(vec![Component::Gl { n }])
    }

    fn compute_positive_roots(&self) -> Vec<PositiveRoot> {
        let r = self.active.len();
        let cartan: Vec<Vec<i64>> = self
            .active
            .iter()
            .map(|&i| self.active.iter().map(|&j| dot(&self.coroot[j], &self.simple[i])).collect())
            .collect();
        positive_root_coefficients(&cartan)
            .into_iter()
            .map(|c| {
                let mut coords = vec![0i64; self.dim];
                for (k, &ck) in c.iter().enumerate() {
                    for (x, s) in coords.iter_mut().zip(&self.simple[self.active[k]]) {
                        *x += ck * s;
                    }
                }
                let g_beta: Vec<i64> = (0..self.dim).map(|i| dot(&self.gram[i], &coords)).collect();
                let norm = dot(&g_beta, &coords);
                let coroot_num: Vec<i64> = g_beta.iter().map(|x| 2 * x).collect();
                let _ = r;
                PositiveRoot {
                    height: c.iter().sum(),
                    coords,
                    coroot_num,
                    coroot_den: norm,
                }
            })
            .collect()
    }

    /// The Levi subgroup obtained by removing the given global nodes (0-based).
    pub fn levi(&self, marked: &[usize]) -> RootDatum {
        let mut out = self.clone();
        out.active.retain(|n| !marked.contains(n));
        out.positive = out.compute_positive_roots();
        out
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn active_nodes(&self) -> &[usize] {
        &self.active
    }

    pub fn is_full(&self) -> bool {
        self.active.len() == self.node_offsets.last().copied().unwrap_or(0)
            + self.components.last().map(Component::node_count).unwrap_or(0)
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    pub fn simple_root(&self, node: usize) -> &[i64] {
        &self.simple[node]
    }

    pub fn coord_range(&self, component: usize) -> std::ops::Range<usize> {
        let o = self.coord_offsets[component];
        o..o + self.components[component].coord_len()
    }

    /// Global 0-based node index of 1-based node `node` in `component`.
    pub fn global_node(&self, component: usize, node: usize) -> Result<usize> {
        let comp = self
            .components
            .get(component)
            .ok_or_else(|| Error::Config(format!("no group factor {component}")))?;
        if node == 0 || node > comp.node_count() {
            return Err(Error::Config(format!("node {node} out of range for {}", comp.label())));
        }
        Ok(self.node_offsets[component] + node - 1)
    }

    /// Which component owns a global node, and its 1-based local index.
    pub fn locate_node(&self, global: usize) -> (usize, usize) {
        let c = self.node_offsets.iter().rposition(|&o| o <= global).unwrap_or(0);
        // Skip over components without nodes (e.g. GL(1)).
        let mut c = c;
        while self.components[c].node_count() == 0 || global >= self.node_offsets[c] + self.components[c].node_count() {
            c += 1;
        }
        (c, global - self.node_offsets[c] + 1)
    }

    pub fn pair(&self, node: usize, lambda: &[i64]) -> i64 {
        dot(&self.coroot[node], lambda)
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        self.active.iter().all(|&i| self.pair(i, lambda) >= 0)
    }

    pub fn reflect(&self, node: usize, lambda: &mut [i64]) {
        let k = self.pair(node, lambda);
        if k != 0 {
            for (x, a) in lambda.iter_mut().zip(&self.simple[node]) {
                *x -= k * a;
            }
        }
    }

    /// Move `lambda` to the dominant chamber, always reflecting in the smallest
    /// active node with negative pairing. Returns the number of reflections.
    pub fn to_dominant(&self, lambda: &mut [i64]) -> usize {
        let mut steps = 0;
        while let Some(&i) = self.active.iter().find(|&&i| self.pair(i, lambda) < 0) {
            self.reflect(i, lambda);
            steps += 1;
        }
        steps
    }

    /// Scaled inner product; only ratios of these values are meaningful.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for i in 0..self.dim {
            if a[i] == 0 {
                continue;
            }
            let row: i128 = self.gram[i].iter().zip(b).map(|(g, x)| (*g as i128) * (*x as i128)).sum();
            s += a[i] as i128 * row;
        }
        s
    }

    /// True iff `v` is orthogonal to some positive root.
    pub fn is_singular(&self, v: &[i64]) -> bool {
        self.positive.iter().any(|b| b.pairing_is_zero(v))
    }

    /// Signed Weyl dimension polynomial `prod (lambda + rho, beta) / (rho, beta)`.
    pub fn weyl_dim_signed(&self, lambda: &[i64]) -> BigInt {
        let shifted: Vec<i64> = lambda.iter().zip(&self.rho).map(|(a, b)| a + b).collect();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for b in &self.positive {
            num *= BigInt::from(dot(&b.coroot_num, &shifted));
            den *= BigInt::from(dot(&b.coroot_num, &self.rho));
        }
        let q = Ratio::new(num, den);
        debug_assert!(q.is_integer());
        q.to_integer()
    }

    pub fn weyl_dim(&self, lambda: &[i64]) -> Result<BigInt> {
        if !self.is_dominant(lambda) {
            return Err(Error::usage(format!("weight {lambda:?} is not dominant")));
        }
        Ok(self.weyl_dim_signed(lambda).abs())
    }

    /// Weyl orbit of a dominant weight.
    pub fn orbit(&self, dominant: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(dominant.to_vec());
        let mut stack = vec![dominant.to_vec()];
        while let Some(w) = stack.pop() {
            for &i in &self.active {
                if self.pair(i, &w) > 0 {
                    let mut v = w.clone();
                    self.reflect(i, &mut v);
                    if seen.insert(v.clone()) {
                        stack.push(v);
                    }
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Coordinates of the `component` factor in its own fundamental basis
    /// (differences for `GL`).
    pub fn component_fundamental(&self, component: usize, lambda: &[i64]) -> Vec<i64> {
        let c = &lambda[self.coord_range(component)];
        match self.components[component] {
            Component::Simple { .. } => c.to_vec(),
            Component::Gl { .. } => c.windows(2).map(|w| w[0] - w[1]).collect(),
        }
    }

    /// Human-readable weight: GL factors as sequences, simple factors as `[..]`.
    pub fn format_weight(&self, lambda: &[i64]) -> String {
        self.components
            .iter()
            .enumerate()
            .map(|(k, comp)| {
                let c = &lambda[self.coord_range(k)];
                match comp {
                    Component::Gl { .. } if gl_is_dominant(c) && c.last().is_some_and(|&x| x >= 0) => {
                        crate::partitions::Partition::new(c.to_vec())
                            .map(|p| format!("S{}", p.exponent_notation()))
                            .unwrap_or_else(|_| format!("{c:?}"))
                    }
                    Component::Gl { .. } => format!(
                        "({})",
                        c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    ),
                    Component::Simple { .. } => format!(
                        "V[{}]",
                        c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    ),
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }

    /// Height of `lambda - mu` when it lies in the root lattice of the active
    /// nodes; used to order weights for Freudenthal recursion.
    pub fn height_functional(&self) -> Vec<Ratio<i64>> {
        // A functional f with f(alpha_i) = 1 for every active node: f = sum of
        // fundamental coweights. Solved as a least-structure combination: use
        // the coroot pairing of rho-like vectors where available.
        let mut f = vec![Ratio::from_integer(0); self.dim];
        for (k, comp) in self.components.iter().enumerate() {
            let r = self.coord_range(k);
            match comp {
                Component::Gl { n } => {
                    for (i, x) in f[r].iter_mut().enumerate() {
                        *x = Ratio::from_integer((*n - 1 - i) as i64);
                    }
                }
                Component::Simple { family, rank } => {
                    let rs = build_root_system(*family, *rank).expect("validated");
                    // f(omega_j) = sum_i inv_cartan[j][i]
                    for (j, x) in f[r].iter_mut().enumerate() {
                        *x = (0..*rank).map(|i| rs.inv_cartan()[j][i]).sum();
                    }
                }
            }
        }
        f
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn gl_roots_and_dims() {
        let g = RootDatum::gl(4).unwrap();
        assert_eq!(g.positive_roots().len(), 6);
        assert_eq!(g.weyl_dim(&[1, 1, 0, 0]).unwrap().to_u64(), Some(6));
        assert_eq!(g.weyl_dim(&[2, 1, 0, 0]).unwrap().to_u64(), Some(20));
        assert!(g.is_singular(&[3, 2, 2, 0]));
    }

    #[test]
    fn product_and_levi() {
        let g = RootDatum::new(vec![
            Component::Gl { n: 2 },
            Component::Simple { family: Family::D, rank: 5 },
        ])
        .unwrap();
        assert_eq!(g.dim(), 7);
        assert_eq!(g.positive_roots().len(), 1 + 20);
        let node = g.global_node(1, 1).unwrap();
        assert_eq!(node, 1);
        assert_eq!(g.locate_node(node), (1, 1));
        let l = g.levi(&[node]);
        // GL2 x D4 x GL1 center
        assert_eq!(l.positive_roots().len(), 1 + 12);
        assert!(l.is_dominant(&[1, 0, -1, 0, 0, 1, 0]));
        assert!(!g.is_dominant(&[1, 0, -1, 0, 0, 1, 0]));
    }

    #[test]
    fn datum_dim_matches_root_system() {
        let e6 = RootDatum::simple_group(Family::E, 6).unwrap();
        assert_eq!(e6.weyl_dim(&[1, 0, 0, 0, 0, 0]).unwrap().to_u64(), Some(27));
        let b3 = RootDatum::simple_group(Family::B, 3).unwrap();
        assert_eq!(b3.weyl_dim(&[0, 0, 1]).unwrap().to_u64(), Some(8));
        assert_eq!(b3.weyl_dim(&[1, 0, 0]).unwrap().to_u64(), Some(7));
    }

    #[test]
    fn orbit_sizes() {
        let a2 = RootDatum::simple_group(Family::A, 2).unwrap();
        assert_eq!(a2.orbit(&[1, 1]).len(), 6);
        let d6 = RootDatum::simple_group(Family::D, 6).unwrap();
        assert_eq!(d6.orbit(&[0, 0, 0, 0, 0, 1]).len(), 32);
    }
}
