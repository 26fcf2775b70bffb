use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::Ratio;

use super::{Character, IrrepSum, Settings};
use crate::error::{Error, Result};
use crate::rootsys::RootDatum;

/// Dominant part of the weight system of an irreducible module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantWeights {
    /// `(weight, multiplicity)` sorted by increasing depth below the highest weight.
    pub weights: Vec<(Vec<i64>, i128)>,
}

/// Weight multiset of an irreducible module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    pub weights: BTreeMap<Vec<i64>, u64>,
    pub total: u64,
}

/// Character computations over one root datum, with a cache of dominant
/// weight systems.
pub struct Engine<'a> {
    datum: &'a RootDatum,
    settings: Settings,
    cache: Mutex<HashMap<Vec<i64>, Arc<DominantWeights>>>,
    /// Scaled `(mu, rho)`, the peeling order key, for each positive root.
    rho: Vec<i64>,
}

impl<'a> Engine<'a> {
    pub fn new(datum: &'a RootDatum, settings: Settings) -> Self {
        Engine {
            datum,
            settings,
            cache: Mutex::new(HashMap::new()),
            rho: datum.rho().to_vec(),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum
    }

    pub fn settings(&self) -> Settings {
        self.settings
    }

    fn height_key(&self, w: &[i64]) -> i128 {
        self.datum.inner(w, &self.rho)
    }

    /// Dominant weights of `V_lambda` with multiplicities (Freudenthal).
    pub fn dominant_weights(&self, lambda: &[i64]) -> Result<Arc<DominantWeights>> {
        if let Some(d) = self.cache.lock().unwrap().get(lambda) {
            return Ok(d.clone());
        }
        let d = Arc::new(self.freudenthal(lambda)?);
        self.cache.lock().unwrap().insert(lambda.to_vec(), d.clone());
        Ok(d)
    }

    fn freudenthal(&self, lambda: &[i64]) -> Result<DominantWeights> {
        let g = self.datum;
        if !g.is_dominant(lambda) {
            return Err(Error::usage(format!("{} is not dominant", g.format_weight(lambda))));
        }
        // Dominant weights below lambda: closed under subtracting positive roots
        // while staying dominant. Track depth = height of lambda - mu.
        let mut depth: HashMap<Vec<i64>, i64> = HashMap::new();
        depth.insert(lambda.to_vec(), 0);
        let mut frontier = vec![lambda.to_vec()];
        while let Some(mu) = frontier.pop() {
            let d = depth[&mu];
            for b in g.positive_roots() {
                let nu: Vec<i64> = mu.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
                if g.is_dominant(&nu) && !depth.contains_key(&nu) {
                    depth.insert(nu.clone(), d + b.height);
                    frontier.push(nu);
                }
            }
            if depth.len() as u64 > self.settings.cap {
                return Err(Error::CapExceeded {
                    what: format!("dominant weights of {}", g.format_weight(lambda)),
                    size: depth.len() as u64,
                    cap: self.settings.cap,
                });
            }
        }
        let mut order: Vec<(Vec<i64>, i64)> = depth.into_iter().collect();
        order.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));

        let shifted = |w: &[i64]| -> Vec<i64> { w.iter().zip(g.rho()).map(|(a, b)| a + b).collect() };
        let lr = shifted(lambda);
        let norm_l = g.inner(&lr, &lr);
        let mut mult: HashMap<Vec<i64>, i128> = HashMap::new();
        let mut out = Vec::with_capacity(order.len());
        for (mu, d) in order {
            let m = if d == 0 {
                1
            } else {
                let mut num = 0i128;
                for b in g.positive_roots() {
                    let mut nu = mu.clone();
                    loop {
                        for (x, y) in nu.iter_mut().zip(&b.coords) {
                            *x += y;
                        }
                        let mut rep = nu.clone();
                        g.to_dominant(&mut rep);
                        match mult.get(&rep) {
                            Some(&mnu) => num += mnu * g.inner(&nu, &b.coords),
                            None => break,
                        }
                    }
                }
                let mr = shifted(&mu);
                let den = norm_l - g.inner(&mr, &mr);
                let q = Ratio::new(2 * num, den);
                if !q.is_integer() {
                    return Err(Error::consistency(format!(
                        "non-integral Freudenthal multiplicity at {}",
                        g.format_weight(&mu)
                    )));
                }
                q.to_integer()
            };
            if m > 0 {
                mult.insert(mu.clone(), m);
                out.push((mu, m));
            }
        }
        Ok(DominantWeights { weights: out })
    }

    /// Full character of `V_lambda`.
    pub fn irrep_character(&self, lambda: &[i64]) -> Result<Character> {
        let dom = self.dominant_weights(lambda)?;
        let mut c = Character::new();
        for (mu, m) in &dom.weights {
            for w in self.datum.orbit(mu) {
                c.add_term(w, *m);
            }
            if c.len() as u64 > self.settings.cap {
                return Err(Error::CapExceeded {
                    what: format!("weight system of {}", self.datum.format_weight(lambda)),
                    size: c.len() as u64,
                    cap: self.settings.cap,
                });
            }
        }
        Ok(c)
    }

    pub fn weight_system(&self, lambda: &[i64]) -> Result<WeightMultiset> {
        let c = self.irrep_character(lambda)?;
        let weights: BTreeMap<Vec<i64>, u64> = c.iter().map(|(w, m)| (w.clone(), *m as u64)).collect();
        let total = weights.values().sum();
        Ok(WeightMultiset { weights, total })
    }

    /// Character of a direct sum of irreducibles.
    pub fn sum_character(&self, sum: &IrrepSum) -> Result<Character> {
        let mut c = Character::new();
        for (w, m) in sum.iter() {
            c.add_scaled(&self.irrep_character(w)?, *m as i128);
        }
        Ok(c)
    }

    /// Decompose a genuine character into irreducibles by repeatedly removing
    /// the highest remaining dominant weight.
    pub fn peel(&self, ch: &Character) -> Result<IrrepSum> {
        let mut dom: HashMap<Vec<i64>, i128> = ch
            .iter()
            .filter(|(w, _)| self.datum.is_dominant(w))
            .map(|(w, m)| (w.clone(), *m))
            .collect();
        let mut out = IrrepSum::new();
        while !dom.is_empty() {
            let top = dom
                .keys()
                .max_by(|a, b| self.height_key(a).cmp(&self.height_key(b)).then_with(|| a.cmp(b)))
                .cloned()
                .expect("nonempty");
            let m = dom[&top];
            if m < 0 {
                return Err(Error::consistency(format!(
                    "negative multiplicity {m} for {} while peeling",
                    self.datum.format_weight(&top)
                )));
            }
            out.insert(top.clone(), m as u64);
            for (mu, k) in &self.dominant_weights(&top)?.weights {
                let e = dom.entry(mu.clone()).or_insert(0);
                *e -= m * k;
                if *e == 0 {
                    dom.remove(mu);
                }
            }
        }
        Ok(out)
    }

    /// Decompose `V_lambda ⊗ V_mu` by Brauer–Klimyk.
    pub fn tensor(&self, lambda: &[i64], mu: &[i64]) -> Result<IrrepSum> {
        let g = self.datum;
        let (big, small) = if self.weyl_dim_hint(lambda) >= self.weyl_dim_hint(mu) {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        if !g.is_dominant(big) {
            return Err(Error::usage(format!("{} is not dominant", g.format_weight(big))));
        }
        let ch = self.irrep_character(small)?;
        let mut acc: HashMap<Vec<i64>, i128> = HashMap::new();
        for (nu, m) in ch.iter() {
            let mut v: Vec<i64> = big.iter().zip(nu).zip(g.rho()).map(|((a, b), r)| a + b + r).collect();
            if g.is_singular(&v) {
                continue;
            }
            let steps = g.to_dominant(&mut v);
            for (x, r) in v.iter_mut().zip(g.rho()) {
                *x -= r;
            }
            let sign = if steps.is_multiple_of(2) { 1 } else { -1 };
            *acc.entry(v).or_insert(0) += sign * m;
        }
        let mut out = IrrepSum::new();
        for (w, m) in acc {
            if m < 0 {
                return Err(Error::consistency(format!(
                    "negative Brauer–Klimyk multiplicity at {}",
                    g.format_weight(&w)
                )));
            }
            if m > 0 {
                out.insert(w, m as u64);
            }
        }
        Ok(out)
    }

    fn weyl_dim_hint(&self, w: &[i64]) -> num_bigint::BigInt {
        self.datum.weyl_dim_signed(w)
    }

    /// Tensor product of two direct sums.
    pub fn tensor_sums(&self, a: &IrrepSum, b: &IrrepSum) -> Result<IrrepSum> {
        let mut out = IrrepSum::new();
        for (x, m) in a.iter() {
            for (y, n) in b.iter() {
                for (z, k) in self.tensor(x, y)?.iter() {
                    out.insert(z.clone(), m * n * k);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootDatum};

    #[test]
    fn sl3_adjoint() {
        let g = RootDatum::simple_group(Family::A, 2).unwrap();
        let e = Engine::new(&g, Settings::default());
        let ws = e.weight_system(&[1, 1]).unwrap();
        assert_eq!(ws.total, 8);
        assert_eq!(ws.weights.len(), 7);
        assert_eq!(ws.weights[&vec![0, 0]], 2);
    }

    #[test]
    fn half_spin_d6() {
        let g = RootDatum::simple_group(Family::D, 6).unwrap();
        let e = Engine::new(&g, Settings::default());
        let ws = e.weight_system(&[0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(ws.total, 32);
        assert!(ws.weights.values().all(|&m| m == 1));
    }

    #[test]
    fn sl2_triple() {
        let g = RootDatum::simple_group(Family::A, 1).unwrap();
        let e = Engine::new(&g, Settings::default());
        let ws = e.weight_system(&[2]).unwrap();
        let got: Vec<_> = ws.weights.into_iter().collect();
        assert_eq!(got, vec![(vec![-2], 1), (vec![0], 1), (vec![2], 1)]);
    }

    #[test]
    fn clebsch_gordan_and_peeling_agree() {
        let g = RootDatum::simple_group(Family::A, 1).unwrap();
        let e = Engine::new(&g, Settings::default());
        let t = e.tensor(&[1], &[1]).unwrap();
        assert_eq!(t.sorted(), vec![(vec![0], 1), (vec![2], 1)]);
        let ch = e.irrep_character(&[3]).unwrap().mul(&e.irrep_character(&[2]).unwrap(), Default::default());
        assert_eq!(e.peel(&ch).unwrap(), e.tensor(&[3], &[2]).unwrap());
    }

    #[test]
    fn e6_minuscule_and_adjoint() {
        let g = RootDatum::simple_group(Family::E, 6).unwrap();
        let e = Engine::new(&g, Settings::default());
        assert_eq!(e.weight_system(&[1, 0, 0, 0, 0, 0]).unwrap().total, 27);
        assert_eq!(e.weight_system(&[0, 1, 0, 0, 0, 0]).unwrap().total, 78);
    }

    #[test]
    fn cap_is_enforced() {
        let g = RootDatum::simple_group(Family::A, 3).unwrap();
        let e = Engine::new(&g, Settings { cap: 3, ..Settings::default() });
        assert!(matches!(e.weight_system(&[2, 1, 2]), Err(Error::CapExceeded { .. })));
    }
}
