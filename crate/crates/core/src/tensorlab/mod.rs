//! Exact multilinear algebra over the rationals.
//!
//! Indices are 0-based internally; `e_0` prints as `e1`.

mod ks;
mod linalg;
mod numbering;
mod pfaffian;
mod secant;
mod segre;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

pub use ks::{ks_basis, ks_identity_check, pi_s_a, KsElement};
pub use linalg::{determinant, EchelonBasis};
pub use numbering::{
    ideal_containment, numbering_schemes, rho_map, rho_on_highest_weight, ContainmentReport, NumberingScheme,
};
pub use pfaffian::{build_hwv_prop_gkv, pfaffian_inclusion, HwvConstruction};
pub use secant::{spinor_coordinates, vanish_on_secant, SecantVariety, VanishReport};
pub use segre::{pi_s, segre_cubic_blocks, Block, SegreBlocks};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Sort `idx` in place and return the sign of the sorting permutation, or
/// `None` if an index repeats.
pub fn sort_sign(idx: &mut [usize]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn fmt_wedge(f: &mut fmt::Formatter<'_>, idx: &[usize]) -> fmt::Result {
    let parts: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
    write!(f, "{}", parts.join("∧"))
}

/// An element of `Λ^k K^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorTensor {
    k: usize,
    n: usize,
    terms: BTreeMap<Vec<usize>, Q>,
}

impl ExteriorTensor {
    pub fn zero(k: usize, n: usize) -> Self {
        ExteriorTensor {
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `e_{i_1} ∧ ... ∧ e_{i_k}` in the given order.
    pub fn basis(n: usize, idx: &[usize]) -> Self {
        let mut t = Self::zero(idx.len(), n);
        t.add_term(idx, q(1));
        t
    }

    /// `e_0 ∧ ... ∧ e_{k-1}`.
    pub fn top(k: usize, n: usize) -> Self {
        Self::basis(n, &(0..k).collect::<Vec<_>>())
    }

    /// `v_1 ∧ ... ∧ v_k` expanded into Plücker coordinates.
    pub fn decomposable(n: usize, vectors: &[Vec<Q>]) -> Self {
        let k = vectors.len();
        let mut t = Self::zero(k, n);
        for s in subsets(n, k) {
            let m: Vec<Vec<Q>> = vectors.iter().map(|v| s.iter().map(|&j| v[j].clone()).collect()).collect();
            let d = linalg::determinant(m);
            if !d.is_zero() {
                t.terms.insert(s, d);
            }
        }
        t
    }

    /// Add `c · e_{idx}`, sorting the indices with sign.
    pub fn add_term(&mut self, idx: &[usize], c: Q) {
        debug_assert!(idx.iter().all(|&i| i < self.n));
        let mut key = idx.to_vec();
        let Some(s) = sort_sign(&mut key) else { return };
        let c = if s < 0 { -c } else { c };
        add_entry(&mut self.terms, key, c);
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, idx: &[usize]) -> Q {
        let mut key = idx.to_vec();
        match sort_sign(&mut key) {
            None => Q::zero(),
            Some(s) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(Q::zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ExteriorTensor) -> ExteriorTensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_entry(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn wedge(&self, other: &ExteriorTensor) -> ExteriorTensor {
        let mut out = Self::zero(self.k + other.k, self.n.max(other.n));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                out.add_term(&idx, x * y);
            }
        }
        out
    }
}

impl fmt::Display for ExteriorTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·")?;
            fmt_wedge(f, k)?;
        }
        Ok(())
    }
}

impl Serialize for ExteriorTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExteriorTensor", 3)?;
        st.serialize_field("degree", &self.k)?;
        st.serialize_field("dim", &self.n)?;
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(k, c)| TermJson {
                indices: vec![k.iter().map(|i| i + 1).collect()],
                coeff: c.to_string(),
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[derive(Serialize)]
struct TermJson {
    indices: Vec<Vec<usize>>,
    coeff: String,
}

fn add_entry<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Monomial key: a sorted multiset of sorted `k`-index tuples.
pub type Monomial = Vec<Vec<usize>>;

/// An element of `S^d(Λ^k K^n)`, i.e. a degree-`d` polynomial on `Λ^k K^{n*}`
/// in Plücker coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyElement {
    k: usize,
    n: usize,
    d: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl PolyElement {
    pub fn zero(k: usize, n: usize, d: usize) -> Self {
        PolyElement {
            k,
            n,
            d,
            terms: BTreeMap::new(),
        }
    }

    /// Add `c · x_1 ⋯ x_d` where each factor is a wedge given by unsorted indices.
    pub fn add_product(&mut self, factors: &[Vec<usize>], c: Q) {
        debug_assert_eq!(factors.len(), self.d);
        let mut sign = 1i8;
        let mut key: Vec<Vec<usize>> = Vec::with_capacity(factors.len());
        for f in factors {
            let mut f = f.clone();
            match sort_sign(&mut f) {
                None => return,
                Some(s) => sign *= s,
            }
            key.push(f);
        }
        key.sort();
        add_entry(&mut self.terms, key, if sign < 0 { -c } else { c });
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn wedge_degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial given as unsorted factors.
    pub fn coeff(&self, factors: &[Vec<usize>]) -> Q {
        let mut p = PolyElement::zero(self.k, self.n, factors.len());
        p.add_product(factors, q(1));
        match p.terms.into_iter().next() {
            None => Q::zero(),
            Some((key, s)) => self.terms.get(&key).map(|c| c * s).unwrap_or_else(Q::zero),
        }
    }

    pub fn add(&self, other: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        out.add_assign_scaled(other, &q(1));
        out
    }

    pub fn add_assign_scaled(&mut self, other: &PolyElement, c: &Q) {
        for (k, x) in &other.terms {
            add_entry(&mut self.terms, k.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> PolyElement {
        let mut out = PolyElement::zero(self.k, self.n, self.d);
        out.add_assign_scaled(self, c);
        out
    }

    /// Product in the symmetric algebra.
    pub fn mul(&self, other: &PolyElement) -> PolyElement {
        let mut out = PolyElement::zero(self.k, self.n.max(other.n), self.d + other.d);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut key: Monomial = a.iter().chain(b).cloned().collect();
                key.sort();
                add_entry(&mut out.terms, key, x * y);
            }
        }
        out
    }

    /// The linear form `x_{idx}` as a degree-one element.
    pub fn linear(n: usize, idx: &[usize]) -> PolyElement {
        let mut p = PolyElement::zero(idx.len(), n, 1);
        p.add_product(&[idx.to_vec()], q(1));
        p
    }

    /// `gl_n` weight of a monomial: how often each basis vector occurs.
    pub fn monomial_weight(n: usize, m: &Monomial) -> Vec<i64> {
        let mut w = vec![0i64; n];
        for f in m {
            for &i in f {
                w[i] += 1;
            }
        }
        w
    }

    /// The common weight of all terms, or `None` if the element is zero or
    /// not a weight vector.
    pub fn weight(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| Self::monomial_weight(self.n, m));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// `E_{ij}` acting as a derivation: every occurrence of `e_j` becomes `e_i`.
    pub fn apply_e(&self, i: usize, j: usize) -> PolyElement {
        let mut out = PolyElement::zero(self.k, self.n, self.d);
        for (m, c) in &self.terms {
            for pos in 0..m.len() {
                if let Some(slot) = m[pos].iter().position(|&x| x == j) {
                    let mut factors = m.clone();
                    factors[pos][slot] = i;
                    out.add_product(&factors, c.clone());
                }
            }
        }
        out
    }

    /// Killed by every simple raising operator `E_{i,i+1}`.
    pub fn is_highest_weight(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| self.apply_e(i, i + 1).is_zero())
    }

    /// Evaluate at a point of `Λ^k K^n`.
    pub fn evaluate(&self, point: &ExteriorTensor) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for f in m {
                match point.terms.get(f) {
                    Some(x) => v *= x,
                    None => {
                        v = Q::zero();
                        break;
                    }
                }
            }
            total += v;
        }
        total
    }

    /// Largest absolute coefficient, as a quick nonzero witness.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(b.0.cmp(a.0)))
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}·")?;
            }
            for factor in m {
                write!(f, "(")?;
                fmt_wedge(f, factor)?;
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl Serialize for PolyElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolyElement", 4)?;
        st.serialize_field("degree", &self.d)?;
        st.serialize_field("wedge_degree", &self.k)?;
        st.serialize_field("dim", &self.n)?;
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                indices: m.iter().map(|f| f.iter().map(|i| i + 1).collect()).collect(),
                coeff: c.to_string(),
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_sign(&mut v), Some(1));
        let mut v = vec![1, 0];
        assert_eq!(sort_sign(&mut v), Some(-1));
        let mut v = vec![1, 1];
        assert_eq!(sort_sign(&mut v), None);
    }

    #[test]
    fn wedge_anticommutes() {
        let a = ExteriorTensor::basis(4, &[0]);
        let b = ExteriorTensor::basis(4, &[1]);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        assert_eq!(ab.coeff(&[0, 1]), q(1));
        assert_eq!(ba.coeff(&[0, 1]), q(-1));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn decomposable_is_minors() {
        let v1 = vec![q(1), q(2), q(0)];
        let v2 = vec![q(0), q(1), q(3)];
        let t = ExteriorTensor::decomposable(3, &[v1, v2]);
        assert_eq!(t.coeff(&[0, 1]), q(1));
        assert_eq!(t.coeff(&[0, 2]), q(3));
        assert_eq!(t.coeff(&[1, 2]), q(6));
    }

    #[test]
    fn derivation_action() {
        // E_{01} (e2 ∧ e3)^2 = 2 (e1∧e3)(e2∧e3)
        let mut p = PolyElement::zero(2, 3, 2);
        p.add_product(&[vec![1, 2], vec![1, 2]], q(1));
        let r = p.apply_e(0, 1);
        assert_eq!(r.coeff(&[vec![0, 2], vec![1, 2]]), q(2));
        assert_eq!(r.len(), 1);
        assert_eq!(p.weight(), Some(vec![0, 2, 2]));
    }

    #[test]
    fn serializes_one_based() {
        let t = ExteriorTensor::basis(3, &[1, 0]);
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["terms"][0]["indices"][0], serde_json::json!([1, 2]));
        assert_eq!(v["terms"][0]["coeff"], "-1");
    }
}
