//! Characters and decompositions into irreducibles.
//!
//! Every decomposition follows the same pattern: build an exact character,
//! then peel off irreducibles from the top using Freudenthal weight systems.

mod character;
mod ops;
mod weights;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

pub use character::Character;
pub use ops::{
    branch_to_levi, cauchy_ext_two_step, decompose_tensor, ext_power, induced_functor_f, plethysm_sym_of_schur,
    schur_character, sym_power, CauchyTerm,
};
pub use weights::{DominantWeights, Engine, WeightMultiset};

use crate::exec::Exec;
use crate::partitions::Partition;
use crate::rootsys::{Component, RootDatum};

/// Default cap on the number of distinct weights held for one module.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Resource and scheduling knobs shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub cap: u64,
    pub exec: Exec,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            cap: DEFAULT_CAP,
            exec: Exec::default(),
        }
    }
}

/// Direct sum of irreducibles: dominant highest weight to multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepSum {
    terms: BTreeMap<Vec<i64>, u64>,
}

impl IrrepSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Vec<i64>) -> Self {
        let mut s = Self::new();
        s.insert(w, 1);
        s
    }

    /// Add `m` copies of `V_w`.
    pub fn insert(&mut self, w: Vec<i64>, m: u64) {
        if m > 0 {
            *self.terms.entry(w).or_insert(0) += m;
        }
    }

    pub fn extend(&mut self, other: &IrrepSum) {
        for (w, m) in other.iter() {
            self.insert(w.clone(), *m);
        }
    }

    /// Remove up to `m` copies; returns how many were removed.
    pub fn remove(&mut self, w: &[i64], m: u64) -> u64 {
        let Some(e) = self.terms.get_mut(w) else {
            return 0;
        };
        let k = (*e).min(m);
        *e -= k;
        if *e == 0 {
            self.terms.remove(w);
        }
        k
    }

    pub fn mult(&self, w: &[i64]) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &u64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sorted(&self) -> Vec<(Vec<i64>, u64)> {
        self.terms.iter().map(|(w, m)| (w.clone(), *m)).collect()
    }

    /// Total dimension.
    pub fn dim(&self, g: &RootDatum) -> BigInt {
        self.terms
            .iter()
            .map(|(w, m)| g.weyl_dim_signed(w) * BigInt::from(*m))
            .sum()
    }

    /// Keep only the summands satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(&[i64]) -> bool) -> IrrepSum {
        IrrepSum {
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, m)| (w.clone(), *m)).collect(),
        }
    }

    /// Multiset difference `self - other`, or `None` if `other` is not contained.
    pub fn checked_sub(&self, other: &IrrepSum) -> Option<IrrepSum> {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            if out.remove(w, *m) != *m {
                return None;
            }
        }
        Some(out)
    }

    /// Positive part of `self - other`.
    pub fn saturating_sub(&self, other: &IrrepSum) -> IrrepSum {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.remove(w, *m);
        }
        out
    }

    pub fn contains_sum(&self, other: &IrrepSum) -> bool {
        other.iter().all(|(w, m)| self.mult(w) >= *m)
    }

    /// JSON-friendly rows with dimensions and, for `GL` factors, partitions.
    pub fn rows(&self, g: &RootDatum) -> Vec<IrrepRow> {
        self.terms
            .iter()
            .map(|(w, m)| IrrepRow {
                weight: w.clone(),
                partition: gl_partitions(g, w),
                label: g.format_weight(w),
                mult: *m,
                dim: g.weyl_dim_signed(w).to_string(),
            })
            .collect()
    }
}

/// One summand of an [`IrrepSum`] prepared for display or serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrepRow {
    pub weight: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Partition>>,
    pub label: String,
    pub mult: u64,
    pub dim: String,
}

/// Per-factor partitions when every factor is a `GL` and every block is a
/// partition.
fn gl_partitions(g: &RootDatum, w: &[i64]) -> Option<Vec<Partition>> {
    g.components()
        .iter()
        .enumerate()
        .map(|(k, c)| match c {
            Component::Gl { .. } => Partition::new(w[g.coord_range(k)].iter().copied()).ok(),
            Component::Simple { .. } => None,
        })
        .collect()
}
