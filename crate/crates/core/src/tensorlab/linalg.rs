use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::{One, Zero};

use super::Q;

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Basis of the null space of a dense matrix (rows are equations).
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Incrementally built row-echelon basis of sparse vectors with exact
/// coefficients. Pivots are chosen on the smallest column of each reduced
/// vector, which keeps fill-in low for the monomial-indexed systems here.
#[derive(Debug, Clone)]
pub struct EchelonBasis<K: Ord + Clone + Hash> {
    rows: Vec<BTreeMap<K, Q>>,
    pivot_of: HashMap<K, usize>,
}

impl<K: Ord + Clone + Hash> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }
}

impl<K: Ord + Clone + Hash> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: BTreeMap<K, Q>) -> BTreeMap<K, Q> {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.iter().find(|(k, _)| self.pivot_of.contains_key(*k)),
                Some(c) => v
                    .range::<K, _>((std::ops::Bound::Excluded(c), std::ops::Bound::Unbounded))
                    .find(|(k, _)| self.pivot_of.contains_key(*k)),
            };
            let Some((k, c)) = next.map(|(k, c)| (k.clone(), c.clone())) else {
                return v;
            };
            let row = &self.rows[self.pivot_of[&k]];
            for (rk, rc) in row {
                let t = &c * rc;
                let e = v.entry(rk.clone()).or_insert_with(Q::zero);
                *e -= t;
                if e.is_zero() {
                    v.remove(rk);
                }
            }
            cursor = Some(k);
        }
    }

    /// Insert `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: BTreeMap<K, Q>) -> bool {
        let v = self.reduce(v);
        let Some((pk, pc)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = pc.recip();
        let v: BTreeMap<K, Q> = v.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.pivot_of.insert(pk, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: BTreeMap<K, Q>) -> bool {
        self.reduce(v).is_empty()
    }
}
