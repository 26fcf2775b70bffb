use serde::Serialize;

use super::{Character, Engine, IrrepSum, Settings};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rootsys::RootDatum;

/// `V_lambda ⊗ V_mu`.
pub fn decompose_tensor(g: &RootDatum, lambda: &[i64], mu: &[i64], settings: Settings) -> Result<IrrepSum> {
    Engine::new(g, settings).tensor(lambda, mu)
}

/// `S^d V_lambda`.
pub fn sym_power(g: &RootDatum, lambda: &[i64], d: usize, settings: Settings) -> Result<IrrepSum> {
    let e = Engine::new(g, settings);
    let ch = e.irrep_character(lambda)?.sym_power(d, settings.exec);
    e.peel(&ch)
}

/// `Λ^d V_lambda`.
pub fn ext_power(g: &RootDatum, lambda: &[i64], d: usize, settings: Settings) -> Result<IrrepSum> {
    let e = Engine::new(g, settings);
    let ch = e.irrep_character(lambda)?.ext_power(d, settings.exec);
    e.peel(&ch)
}

/// Character of `S_pi K^n`.
pub fn schur_character(pi: &Partition, n: usize, settings: Settings) -> Result<Character> {
    let g = RootDatum::gl(n)?;
    Engine::new(&g, settings).irrep_character(&pi.to_gl(n)?)
}

/// `S^d(S_pi K^n)` as a list of partitions with multiplicities, optionally
/// restricted to partitions of length at most `length_filter`.
pub fn plethysm_sym_of_schur(
    pi: &Partition,
    n: usize,
    d: usize,
    length_filter: Option<usize>,
    settings: Settings,
) -> Result<Vec<(Partition, u64)>> {
    let g = RootDatum::gl(n)?;
    let e = Engine::new(&g, settings);
    let ch = e.irrep_character(&pi.to_gl(n)?)?.sym_power(d, settings.exec);
    let sum = e.peel(&ch)?;
    let mut out = Vec::new();
    for (w, m) in sum.iter() {
        let p = Partition::new(w.iter().copied())?;
        if length_filter.is_none_or(|l| p.length() <= l) {
            out.push((p, *m));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// One summand `S_alpha A ⊗ S_nu U` of `Λ^d(A ⊗ (U ⊕ K))` with `dim A = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyTerm {
    /// Number of height-two columns of the `U ⊕ K` partition.
    pub a: u32,
    /// Number of height-one columns.
    pub b: u32,
    /// `(a+b, a)`, the partition on `A`.
    pub a_partition: Partition,
    /// The partition on `U`.
    pub u_partition: Partition,
    /// Number of boxes carried by the trivial line `K`.
    pub k_degree: u32,
}

/// Two-step Cauchy expansion: first `Λ^d(A⊗W) = ⊕ S_{(a+b,a)}A ⊗ S_{2^a,1^b}W`,
/// then `S_{2^a,1^b}(U⊕K)` split along horizontal strips. Terms whose
/// `U`-partition is longer than `dim_u` are dropped.
pub fn cauchy_ext_two_step(d: u32, dim_u: usize) -> Vec<CauchyTerm> {
    let mut out = Vec::new();
    for a in (0..=d / 2).rev() {
        let b = d - 2 * a;
        let a_partition = Partition::new([(a + b) as i64, a as i64]).expect("valid");
        let shape = |twos: u32, ones: u32| {
            Partition::new(std::iter::repeat_n(2, twos as usize).chain(std::iter::repeat_n(1, ones as usize)))
                .expect("valid")
        };
        let mut candidates = vec![(shape(a, b), 0)];
        if b >= 1 {
            candidates.push((shape(a, b - 1), 1));
        }
        if a >= 1 {
            candidates.push((shape(a - 1, b + 1), 1));
            candidates.push((shape(a - 1, b), 2));
        }
        for (u_partition, k_degree) in candidates {
            if u_partition.length() <= dim_u {
                out.push(CauchyTerm {
                    a,
                    b,
                    a_partition: a_partition.clone(),
                    u_partition,
                    k_degree,
                });
            }
        }
    }
    out
}

/// The functor `F`: reinterpret Levi highest weights as `g`-highest weights.
pub fn induced_functor_f(g: &RootDatum, levi_sum: &IrrepSum) -> Result<IrrepSum> {
    let mut out = IrrepSum::new();
    for (w, m) in levi_sum.iter() {
        if !g.is_dominant(w) {
            return Err(Error::domain(format!(
                "{} is not dominant for the full group; F is undefined there",
                g.format_weight(w)
            )));
        }
        out.insert(w.clone(), *m);
    }
    Ok(out)
}

/// Restriction of `V_lambda` from `g` to a Levi subgroup in the same coordinates.
pub fn branch_to_levi(g: &RootDatum, levi: &RootDatum, lambda: &[i64], settings: Settings) -> Result<IrrepSum> {
    let ch = Engine::new(g, settings).irrep_character(lambda)?;
    Engine::new(levi, settings).peel(&ch)
}
