use std::collections::HashMap;

use num_integer::binomial;

use crate::exec::{map_collect, map_reduce, Exec};

/// A virtual character: finitely supported map from weights to integer
/// multiplicities. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Character {
    terms: HashMap<Vec<i64>, i128>,
}

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    /// Character of the trivial one-dimensional module in `dim` coordinates.
    pub fn trivial(dim: usize) -> Self {
        let mut c = Self::new();
        c.add_term(vec![0; dim], 1);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<i64>, i128)>) -> Self {
        let mut c = Self::new();
        for (w, m) in terms {
            c.add_term(w, m);
        }
        c
    }

    pub fn add_term(&mut self, w: Vec<i64>, m: i128) {
        self.add_term_ref(&w, m);
    }

    fn add_term_ref(&mut self, w: &[i64], m: i128) {
        if m == 0 {
            return;
        }
        if let Some(e) = self.terms.get_mut(w) {
            *e += m;
            if *e == 0 {
                self.terms.remove(w);
            }
        } else {
            self.terms.insert(w.to_vec(), m);
        }
    }

    pub fn get(&self, w: &[i64]) -> i128 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &i128)> {
        self.terms.iter()
    }

    /// Terms in sorted weight order.
    pub fn sorted_terms(&self) -> Vec<(Vec<i64>, i128)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, m)| (w.clone(), *m)).collect();
        v.sort();
        v
    }

    /// Sum of multiplicities, i.e. the (virtual) dimension.
    pub fn dim(&self) -> i128 {
        self.terms.values().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.terms.values().any(|&m| m < 0)
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Character, scale: i128) {
        for (w, m) in &other.terms {
            self.add_term_ref(w, scale * m);
        }
    }

    pub fn scaled(&self, scale: i128) -> Character {
        let mut c = Character::new();
        c.add_scaled(self, scale);
        c
    }

    /// Translate every weight by `shift`.
    pub fn shifted(&self, shift: &[i64]) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(w, m)| (w.iter().zip(shift).map(|(a, b)| a + b).collect(), *m))
                .collect(),
        }
    }

    /// Character of the dual module.
    pub fn dual(&self) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(w, m)| (w.iter().map(|x| -x).collect(), *m))
                .collect(),
        }
    }

    /// Adams operation: every weight multiplied by `k`.
    pub fn adams(&self, k: i64) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .map(|(w, m)| (w.iter().map(|x| k * x).collect(), *m))
                .collect(),
        }
    }

    /// Character of the tensor product.
    pub fn mul(&self, other: &Character, exec: Exec) -> Character {
        let (outer, inner) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let items: Vec<(&Vec<i64>, &i128)> = outer.terms.iter().collect();
        let inner: Vec<(&Vec<i64>, &i128)> = inner.terms.iter().collect();
        map_reduce(
            exec,
            &items,
            Character::new,
            |acc, (w, m)| {
                let mut buf = vec![0i64; w.len()];
                for (v, n) in &inner {
                    for ((b, x), y) in buf.iter_mut().zip(w.iter()).zip(v.iter()) {
                        *b = x + y;
                    }
                    acc.add_term_ref(&buf, **m * **n);
                }
            },
            Character::merge,
        )
    }

    fn merge(mut a: Character, b: Character) -> Character {
        if a.len() < b.len() {
            return Character::merge(b, a);
        }
        for (w, m) in b.terms {
            a.add_term_ref(&w, m);
        }
        a
    }

    /// Characters of `Λ^0 .. Λ^max_degree` (when `exterior`) or
    /// `S^0 .. S^max_degree` of a genuine character, via the generating function
    /// `prod_w (1 + t x^w)^{m_w}` resp. `prod_w (1 - t x^w)^{-m_w}`.
    pub fn power_series(&self, max_degree: usize, exterior: bool, exec: Exec) -> Vec<Character> {
        let dim = self.terms.keys().next().map_or(0, Vec::len);
        let mut levels: Vec<Character> = (0..=max_degree).map(|_| Character::new()).collect();
        levels[0] = Character::trivial(dim);
        for (w, m) in self.sorted_terms() {
            assert!(m > 0, "power series of a virtual character");
            let m = m as u64;
            let degrees: Vec<usize> = (1..=max_degree).collect();
            let increments: Vec<Character> = map_collect(exec, &degrees, |&k| {
                let mut inc = Character::new();
                let top = if exterior { k.min(m as usize) } else { k };
                for j in 1..=top {
                    let coeff = if exterior {
                        binomial(m, j as u64)
                    } else {
                        binomial(m + j as u64 - 1, j as u64)
                    } as i128;
                    let shift: Vec<i64> = w.iter().map(|x| x * j as i64).collect();
                    inc.add_scaled(&levels[k - j].shifted(&shift), coeff);
                }
                inc
            });
            for (k, inc) in degrees.into_iter().zip(increments) {
                levels[k] = Character::merge(std::mem::take(&mut levels[k]), inc);
            }
        }
        levels
    }

    pub fn ext_power(&self, k: usize, exec: Exec) -> Character {
        self.power_series(k, true, exec).pop().expect("nonempty")
    }

    pub fn sym_power(&self, k: usize, exec: Exec) -> Character {
        self.power_series(k, false, exec).pop().expect("nonempty")
    }

    /// `Λ^k` by Newton's identity `k e_k = sum_i (-1)^{i-1} psi^i e_{k-i}`.
    /// Independent of [`Character::power_series`]; used as its cross-check.
    pub fn ext_power_newton(&self, k: usize, exec: Exec) -> Character {
        let dim = self.terms.keys().next().map_or(0, Vec::len);
        let mut e = vec![Character::trivial(dim)];
        for n in 1..=k {
            let mut acc = Character::new();
            for i in 1..=n {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                acc.add_scaled(&self.adams(i as i64).mul(&e[n - i], exec), sign);
            }
            e.push(acc.exact_div(n as i128));
        }
        e.pop().expect("nonempty")
    }

    /// `S^k` by `k h_k = sum_i psi^i h_{k-i}`.
    pub fn sym_power_newton(&self, k: usize, exec: Exec) -> Character {
        let dim = self.terms.keys().next().map_or(0, Vec::len);
        let mut h = vec![Character::trivial(dim)];
        for n in 1..=k {
            let mut acc = Character::new();
            for i in 1..=n {
                acc.add_scaled(&self.adams(i as i64).mul(&h[n - i], exec), 1);
            }
            h.push(acc.exact_div(n as i128));
        }
        h.pop().expect("nonempty")
    }

    fn exact_div(self, d: i128) -> Character {
        Character {
            terms: self
                .terms
                .into_iter()
                .map(|(w, m)| {
                    assert_eq!(m % d, 0, "inexact Newton division");
                    (w, m / d)
                })
                .collect(),
        }
    }

    /// Keep only the terms whose weight satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(&[i64]) -> bool) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, m)| (w.clone(), *m))
                .collect(),
        }
    }
}
