use num_traits::Zero;
use serde::Serialize;

use super::linalg::nullspace;
use super::{q, Q};
use crate::error::{Error, Result};

/// An element of `A^{⊗3}`, stored as `r[a][b][c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsElement {
    n: usize,
    r: Vec<Q>,
}

impl Serialize for KsElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(usize, usize, usize, String)> = (0..self.n)
            .flat_map(|a| (0..self.n).flat_map(move |b| (0..self.n).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| !self.get(a, b, c).is_zero())
            .map(|(a, b, c)| (a + 1, b + 1, c + 1, self.get(a, b, c).to_string()))
            .collect();
        entries.serialize(s)
    }
}

impl KsElement {
    pub fn zero(n: usize) -> Self {
        KsElement {
            n,
            r: vec![Q::zero(); n * n * n],
        }
    }

    /// Build from a coefficient function without validating membership in `K_S`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> Q) -> Self {
        let mut t = Self::zero(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t.r[(a * n + b) * n + c] = f(a, b, c);
                }
            }
        }
        t
    }

    /// Checked constructor: symmetric in the first two slots with vanishing
    /// full symmetrization.
    pub fn new(n: usize, f: impl Fn(usize, usize, usize) -> Q) -> Result<Self> {
        let t = Self::from_fn(n, f);
        if !t.is_valid() {
            return Err(Error::domain("tensor does not lie in K_S(A)"));
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Q {
        self.r[(a * self.n + b) * self.n + c].clone()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n;
        let sym12 = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.get(a, b, c) == self.get(b, a, c))));
        sym12 && pi_s_a(self).iter().all(|x| x.is_zero())
    }

    /// `R(u, v, w) = Σ r_abc u_a v_b w_c`.
    pub fn eval(&self, u: &[Q], v: &[Q], w: &[Q]) -> Q {
        let n = self.n;
        let mut s = Q::zero();
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = self.get(a, b, c);
                    if !x.is_zero() {
                        s += x * &u[a] * &v[b] * &w[c];
                    }
                }
            }
        }
        s
    }
}

/// Unnormalized symmetrization `Σ_σ a_{σ(1)}⊗a_{σ(2)}⊗a_{σ(3)}` in `A^{⊗3}`.
pub fn pi_s_a(t: &KsElement) -> Vec<Q> {
    let n = t.n;
    let mut out = vec![Q::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let perms = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
                out[(a * n + b) * n + c] = perms.iter().map(|&(x, y, z)| t.get(x, y, z)).sum();
            }
        }
    }
    out
}

/// A basis of `K_S(A) = ker(S²A⊗A → S³A)`, `dim A = n`.
pub fn ks_basis(n: usize) -> Vec<KsElement> {
    // unknowns r[a][b][c] with a <= b
    let mut var = std::collections::BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            for c in 0..n {
                let k = var.len();
                var.insert((a, b, c), k);
            }
        }
    }
    let idx = |a: usize, b: usize, c: usize| var[&(a.min(b), a.max(b), c)];
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let mut row = vec![Q::zero(); var.len()];
                for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    row[idx(x, y, z)] += q(1);
                }
                rows.push(row);
            }
        }
    }
    nullspace(&rows, var.len())
        .into_iter()
        .map(|v| KsElement::from_fn(n, |a, b, c| v[idx(a, b, c)].clone()))
        .collect()
}

/// `R(u,v,u) = -½ R(u,u,v)` for all `u, v`.
///
/// Both sides are quadratic in `u`; the identity is checked in polarized form
/// `R(u,v,w) + R(w,v,u) = -½ (R(u,w,v) + R(w,u,v))` on all basis triples,
/// which is exact, and additionally on the supplied sample pairs.
pub fn ks_identity_check(r: &KsElement, samples: &[(Vec<Q>, Vec<Q>)]) -> bool {
    let n = r.n;
    let half = Q::new(1.into(), 2.into());
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let lhs = r.get(u, v, w) + r.get(w, v, u);
                let rhs = -(r.get(u, w, v) + r.get(w, u, v)) * &half;
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    samples.iter().all(|(u, v)| r.eval(u, v, u) == -(r.eval(u, u, v) * &half))
}
