use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{q, subsets, ExteriorTensor, PolyElement, Q};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Exec};

/// Varieties whose secant points can be sampled exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SecantVariety {
    /// `G(k, n)` in Plücker coordinates on `Λ^k K^n`.
    Grass { k: usize, n: usize },
    /// `Seg(PA × PB)` in `A⊗B`, coordinates `a·dim_b + b`.
    SegreSegre { dim_a: usize, dim_b: usize },
    /// The spinor variety of `D_n` in the half-spin module `Λ^{even} K^n`,
    /// coordinates indexed by [`spinor_coordinates`].
    Spinor { n: usize },
}

/// Even subsets of `0..n`, by size and then lexicographically: the
/// coordinates of `Λ^{even} K^n`.
pub fn spinor_coordinates(n: usize) -> Vec<Vec<usize>> {
    (0..=n).step_by(2).flat_map(|k| subsets(n, k)).collect()
}

/// Pfaffian of the principal submatrix of a skew matrix on `idx`.
fn pfaffian(m: &[Vec<Q>], idx: &[usize]) -> Q {
    if idx.is_empty() {
        return q(1);
    }
    let mut total = Q::zero();
    for j in 1..idx.len() {
        let c = &m[idx[0]][idx[j]];
        if c.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(t, _)| t + 1 != j).map(|(_, &x)| x).collect();
        let term = c * pfaffian(m, &rest);
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

impl SecantVariety {
    fn ambient(&self) -> (usize, usize) {
        match *self {
            SecantVariety::Grass { k, n } => (k, n),
            SecantVariety::SegreSegre { dim_a, dim_b } => (1, dim_a * dim_b),
            SecantVariety::Spinor { n } => (1, 1 << (n - 1)),
        }
    }

    fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
        (0..n).map(|_| q(rng.gen_range(-9..=9))).collect()
    }

    /// A point of the affine cone over the variety.
    pub fn cone_point(&self, rng: &mut ChaCha8Rng) -> ExteriorTensor {
        match *self {
            SecantVariety::Grass { k, n } => {
                let vs: Vec<Vec<Q>> = (0..k).map(|_| Self::random_vector(rng, n)).collect();
                ExteriorTensor::decomposable(n, &vs)
            }
            SecantVariety::SegreSegre { dim_a, dim_b } => {
                let a = Self::random_vector(rng, dim_a);
                let b = Self::random_vector(rng, dim_b);
                let mut t = ExteriorTensor::zero(1, dim_a * dim_b);
                for i in 0..dim_a {
                    for j in 0..dim_b {
                        t.add_term(&[i * dim_b + j], &a[i] * &b[j]);
                    }
                }
                t
            }
            SecantVariety::Spinor { n } => {
                // the pure spinor exp(ω) of a skew matrix ω, scaled
                let mut m = vec![vec![Q::zero(); n]; n];
                for i in 0..n {
                    for j in i + 1..n {
                        let c = q(rng.gen_range(-9..=9));
                        m[j][i] = -c.clone();
                        m[i][j] = c;
                    }
                }
                let scale = q(rng.gen_range(1..=9));
                let mut t = ExteriorTensor::zero(1, 1 << (n - 1));
                for (i, idx) in spinor_coordinates(n).iter().enumerate() {
                    t.add_term(&[i], &scale * pfaffian(&m, idx));
                }
                t
            }
        }
    }

    /// A point of the secant variety: the sum of two points of the cone.
    pub fn secant_point(&self, rng: &mut ChaCha8Rng) -> ExteriorTensor {
        let x = self.cone_point(rng);
        x.add(&self.cone_point(rng))
    }

    /// A point with independent coordinates in every basis direction.
    pub fn generic_point(&self, rng: &mut ChaCha8Rng) -> ExteriorTensor {
        let (k, n) = self.ambient();
        let mut t = ExteriorTensor::zero(k, n);
        for s in subsets(n, k) {
            t.add_term(&s, q(rng.gen_range(-9..=9)));
        }
        t
    }
}

/// Evaluations of a polynomial at seeded secant points, plus a search for a
/// nonvanishing point off the variety.
#[derive(Debug, Clone, Serialize)]
pub struct VanishReport {
    pub variety: SecantVariety,
    pub seed: u64,
    pub trials: usize,
    pub zero_evaluations: usize,
    /// First secant point with a nonzero value, if any.
    pub counterexample: Option<ExteriorTensor>,
    /// Index of the first generic point with a nonzero value, and the value.
    pub generic_witness: Option<(usize, String)>,
}

impl VanishReport {
    pub fn vanishes(&self) -> bool {
        self.zero_evaluations == self.trials
    }
}

/// Evaluate `p` at `trials` points `x₁ + x₂` with `x_i` on the cone over
/// the variety, integer coordinates drawn from `[-9, 9]` by a ChaCha stream
/// seeded with `seed`.
pub fn vanish_on_secant(
    p: &PolyElement,
    variety: SecantVariety,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<VanishReport> {
    if let SecantVariety::Spinor { n } = variety {
        if !(2..=12).contains(&n) {
            return Err(Error::usage(format!("spinor variety of D_{n} is outside 2..=12")));
        }
    }
    let (k, n) = variety.ambient();
    if p.wedge_degree() != k || p.dim() > n {
        return Err(Error::usage(format!(
            "polynomial on Λ^{} K^{} does not match the variety's ambient Λ^{k} K^{n}",
            p.wedge_degree(),
            p.dim()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<ExteriorTensor> = (0..trials).map(|_| variety.secant_point(&mut rng)).collect();
    let values: Vec<Q> = map_collect(exec, &points, |x| p.evaluate(x));
    let zero_evaluations = values.iter().filter(|v| v.is_zero()).count();
    let counterexample = values.iter().position(|v| !v.is_zero()).map(|i| points[i].clone());
    let mut generic_witness = None;
    for i in 0..trials.max(1) {
        let x = variety.generic_point(&mut rng);
        let v = p.evaluate(&x);
        if !v.is_zero() {
            generic_witness = Some((i, v.to_string()));
            break;
        }
    }
    Ok(VanishReport {
        variety,
        seed,
        trials,
        zero_evaluations,
        counterexample,
        generic_witness,
    })
}
