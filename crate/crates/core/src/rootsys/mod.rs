//! Root systems of types A through E, weights, and the Weyl dimension formula.
//!
//! Cartan matrices follow Bourbaki node numbering with the convention
//! `cartan[i][j] = <alpha_i, alpha_j^vee>`, so row `i` is the simple root
//! `alpha_i` written in fundamental-weight coordinates.

mod datum;
pub mod rational;

pub use datum::{Component, PositiveRoot, RootDatum};

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use rational::{mat_inverse, Q64};

/// Cartan type family. `F`, `G` and `E8` are not representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            _ => None,
        }
    }
}

/// A simple root system with exact Cartan data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    inv_cartan: Vec<Vec<Q64>>,
    /// Squared root lengths, normalized so long roots have length 2.
    root_len2: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
}

/// Coordinate basis of a [`Weight`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Coefficients on the fundamental weights of the root system.
    Fundamental,
    /// A `GL(n)` weight: an integer `n`-vector, dominant iff weakly decreasing.
    Gl(usize),
}

/// An integral weight with its coordinate basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
    pub basis: Basis,
}

impl Weight {
    pub fn fundamental(coords: impl Into<Vec<i64>>) -> Self {
        Weight {
            coords: coords.into(),
            basis: Basis::Fundamental,
        }
    }

    pub fn gl(coords: impl Into<Vec<i64>>) -> Self {
        let coords = coords.into();
        Weight {
            basis: Basis::Gl(coords.len()),
            coords,
        }
    }

    /// `omega_i` (1-based) of a rank-`rank` system.
    pub fn omega(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i - 1] = 1;
        Weight::fundamental(c)
    }

    /// Drop the trace part of a `GL(n)` weight, giving `A_{n-1}` fundamental coordinates.
    pub fn gl_to_fundamental(&self) -> Result<Weight> {
        match self.basis {
            Basis::Gl(_) => Ok(Weight::fundamental(
                self.coords.windows(2).map(|w| w[0] - w[1]).collect::<Vec<_>>(),
            )),
            Basis::Fundamental => Err(Error::usage("weight is already in the fundamental basis")),
        }
    }

    /// Restore a `GL(n)` weight from `A_{n-1}` coordinates with last entry `last`.
    pub fn fundamental_to_gl(&self, last: i64) -> Result<Weight> {
        match self.basis {
            Basis::Fundamental => {
                let n = self.coords.len() + 1;
                let mut out = vec![last; n];
                for i in (0..n - 1).rev() {
                    out[i] = out[i + 1] + self.coords[i];
                }
                Ok(Weight::gl(out))
            }
            Basis::Gl(_) => Err(Error::usage("weight is already a GL weight")),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match self.basis {
            Basis::Fundamental => write!(f, "[{body}]"),
            Basis::Gl(_) => write!(f, "({body})"),
        }
    }
}

/// Set of marked nodes `J` defining the parabolic `P_J` (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicMarking {
    marked: Vec<usize>,
}

impl ParabolicMarking {
    pub fn new(rank: usize, nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut marked: Vec<usize> = nodes.into_iter().collect();
        marked.sort_unstable();
        marked.dedup();
        if marked.is_empty() {
            return Err(Error::usage("a parabolic marking needs at least one node"));
        }
        if let Some(&bad) = marked.iter().find(|&&i| i == 0 || i > rank) {
            return Err(Error::usage(format!("node {bad} out of range 1..={rank}")));
        }
        Ok(ParabolicMarking { marked })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.marked
    }

    pub fn contains(&self, node: usize) -> bool {
        self.marked.binary_search(&node).is_ok()
    }
}

fn chain(rank: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        c[i][i] = 2;
        if i + 1 < rank {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

fn connect(c: &mut [Vec<i64>], i: usize, j: usize) {
    c[i - 1][j - 1] = -1;
    c[j - 1][i - 1] = -1;
}

/// Build the Bourbaki-numbered root system of the given type.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let unsupported = Err(Error::UnsupportedType {
        family: family.letter(),
        rank,
    });
    let (cartan, root_len2) = match family {
        Family::A if (1..=9).contains(&rank) => (chain(rank), vec![2; rank]),
        Family::B if (2..=8).contains(&rank) => {
            let mut c = chain(rank);
            c[rank - 2][rank - 1] = -2;
            let mut l = vec![2; rank];
            l[rank - 1] = 1;
            (c, l)
        }
        Family::C if (2..=8).contains(&rank) => {
            let mut c = chain(rank);
            c[rank - 1][rank - 2] = -2;
            let mut l = vec![1; rank];
            l[rank - 1] = 2;
            (c, l)
        }
        Family::D if (3..=8).contains(&rank) => {
            let mut c = chain(rank - 1);
            for row in c.iter_mut() {
                row.push(0);
            }
            c.push(vec![0; rank]);
            c[rank - 1][rank - 1] = 2;
            connect(&mut c, rank - 2, rank);
            (c, vec![2; rank])
        }
        Family::E if rank == 6 || rank == 7 => {
            let mut c = vec![vec![0i64; rank]; rank];
            for (i, row) in c.iter_mut().enumerate() {
                row[i] = 2;
            }
            connect(&mut c, 1, 3);
            connect(&mut c, 3, 4);
            connect(&mut c, 2, 4);
            for k in 4..rank {
                connect(&mut c, k, k + 1);
            }
            (c, vec![2; rank])
        }
        _ => return unsupported,
    };
    let rational: Vec<Vec<Q64>> = cartan
        .iter()
        .map(|r| r.iter().map(|&x| Q64::from_integer(x)).collect())
        .collect();
    let inv_cartan = mat_inverse(&rational)
        .ok_or_else(|| Error::consistency("singular Cartan matrix"))?;
    let positive_roots = positive_root_coefficients(&cartan);
    Ok(RootSystem {
        family,
        rank,
        cartan,
        inv_cartan,
        root_len2,
        positive_roots,
    })
}

/// Positive roots as simple-root coefficient vectors, ordered by height.
///
/// `cartan[i][j] = <alpha_i, alpha_j^vee>`. Uses root strings: `beta + alpha_i`
/// is a root iff `p - <beta, alpha_i^vee> > 0`, where `p` is the largest `k`
/// with `beta - k alpha_i` a root.
pub(crate) fn positive_root_coefficients(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

impl RootSystem {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inv_cartan(&self) -> &[Vec<Q64>] {
        &self.inv_cartan
    }

    pub fn root_len2(&self) -> &[i64] {
        &self.root_len2
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    /// Simple root `alpha_i` (1-based) in fundamental coordinates.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        self.cartan[i - 1].clone()
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        match w.basis {
            Basis::Fundamental if w.coords.len() == self.rank => Ok(()),
            Basis::Fundamental => Err(Error::usage(format!(
                "weight {w} has {} coordinates, {} expects {}",
                w.coords.len(),
                self.name(),
                self.rank
            ))),
            Basis::Gl(n) if self.family == Family::A && n == self.rank + 1 && w.coords.len() == n => {
                Ok(())
            }
            Basis::Gl(n) => Err(Error::usage(format!(
                "GL({n}) weight is incompatible with {}",
                self.name()
            ))),
        }
    }

    /// True iff `w` is dominant (nonnegative fundamental coordinates, or weakly
    /// decreasing in the GL basis).
    pub fn is_dominant(&self, w: &Weight) -> Result<bool> {
        self.check_weight(w)?;
        Ok(match w.basis {
            Basis::Fundamental => w.coords.iter().all(|&c| c >= 0),
            Basis::Gl(_) => gl_is_dominant(&w.coords),
        })
    }

    /// `s_i(w) = w - <w, alpha_i^vee> alpha_i`, in the basis of `w`.
    pub fn simple_reflection(&self, i: usize, w: &Weight) -> Result<Weight> {
        self.check_weight(w)?;
        if i == 0 || i > self.rank {
            return Err(Error::usage(format!("reflection index {i} out of range")));
        }
        let mut out = w.clone();
        match w.basis {
            Basis::Fundamental => {
                let k = w.coords[i - 1];
                for (o, a) in out.coords.iter_mut().zip(&self.cartan[i - 1]) {
                    *o -= k * a;
                }
            }
            Basis::Gl(_) => out.coords.swap(i - 1, i),
        }
        Ok(out)
    }

    /// `2 (lambda, beta)` for a fundamental-coordinate weight and a root given in
    /// simple-root coordinates.
    fn pair2(&self, lambda: &[i64], beta: &[i64]) -> i64 {
        (0..self.rank)
            .map(|j| beta[j] * lambda[j] * self.root_len2[j])
            .sum()
    }

    /// Signed Weyl dimension polynomial at `lambda` (fundamental coordinates).
    /// Zero iff `lambda + rho` is singular.
    pub fn weyl_dim_signed(&self, lambda: &[i64]) -> BigInt {
        let shifted: Vec<i64> = lambda.iter().map(|c| c + 1).collect();
        let ones = vec![1i64; self.rank];
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for beta in &self.positive_roots {
            num *= self.pair2(&shifted, beta);
            den *= self.pair2(&ones, beta);
        }
        let q = Ratio::new(num, den);
        debug_assert!(q.is_integer());
        q.to_integer()
    }

    /// Dimension of the irreducible module with dominant highest weight `w`.
    pub fn weyl_dim(&self, w: &Weight) -> Result<BigInt> {
        if !self.is_dominant(w)? {
            return Err(Error::usage(format!("weyl_dim needs a dominant weight, got {w}")));
        }
        let fund = match w.basis {
            Basis::Fundamental => w.clone(),
            Basis::Gl(_) => w.gl_to_fundamental()?,
        };
        Ok(self.weyl_dim_signed(&fund.coords).abs())
    }

    /// Eigenvalue of the grading element `Z_{i0}` (1-based) on a weight given by
    /// its fundamental coordinates: the coefficient of `alpha_{i0}` in `lambda`.
    pub fn grading_element_eval(&self, i0: usize, lambda: &[i64]) -> Q64 {
        lambda
            .iter()
            .enumerate()
            .map(|(j, &l)| self.inv_cartan[j][i0 - 1] * l)
            .fold(Q64::zero(), |a, b| a + b)
    }

    /// Solve for the `omega_{i0}` coefficient of a weight whose other coordinates
    /// are fixed and whose `Z_{i0}` eigenvalue must equal `grade`.
    ///
    /// Fails when the solution is not an integer, which signals an inconsistent
    /// Levi embedding.
    pub fn solve_twist(&self, i0: usize, lambda: &[i64], grade: Q64) -> Result<i64> {
        let mut rest = lambda.to_vec();
        rest[i0 - 1] = 0;
        let partial = self.grading_element_eval(i0, &rest);
        let coeff = (grade - partial) / self.inv_cartan[i0 - 1][i0 - 1];
        if coeff.is_integer() {
            Ok(coeff.to_integer())
        } else {
            Err(Error::consistency(format!(
                "non-integral twist {coeff} on node {i0} of {} (grade {grade})",
                self.name()
            )))
        }
    }
}

/// Weakly decreasing test for GL weights.
pub fn gl_is_dominant(coords: &[i64]) -> bool {
    coords.windows(2).all(|w| w[0] >= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_cartans() {
        assert_eq!(build_root_system(Family::A, 1).unwrap().cartan(), &[vec![2]]);
        assert_eq!(
            build_root_system(Family::A, 2).unwrap().cartan(),
            &[vec![2, -1], vec![-1, 2]]
        );
    }

    #[test]
    fn d7_fork_and_inverse() {
        let rs = build_root_system(Family::D, 7).unwrap();
        let c = rs.cartan();
        assert_eq!(c[4][5], -1);
        assert_eq!(c[4][6], -1);
        assert_eq!(c[5][6], 0);
        for i in 0..7 {
            for j in 0..7 {
                let s: Q64 = (0..7).map(|k| rs.inv_cartan()[k][j] * c[i][k]).sum();
                assert_eq!(s, if i == j { Q64::one() } else { Q64::zero() });
            }
        }
    }

    #[test]
    fn cartan_inverse_is_exact_everywhere() {
        let mut types = vec![(Family::E, 6), (Family::E, 7)];
        for r in 1..=9 {
            types.push((Family::A, r));
        }
        for r in 2..=8 {
            types.push((Family::B, r));
            types.push((Family::C, r));
        }
        for r in 3..=8 {
            types.push((Family::D, r));
        }
        for (f, r) in types {
            let rs = build_root_system(f, r).unwrap();
            for i in 0..r {
                assert_eq!(rs.cartan()[i][i], 2);
                for j in 0..r {
                    if i != j {
                        assert!(rs.cartan()[i][j] <= 0);
                    }
                    let s: Q64 = (0..r).map(|k| rs.inv_cartan()[k][j] * rs.cartan()[i][k]).sum();
                    assert_eq!(s, if i == j { Q64::one() } else { Q64::zero() });
                }
            }
        }
    }

    #[test]
    fn rejects_unsupported() {
        assert!(build_root_system(Family::E, 8).is_err());
        assert!(build_root_system(Family::D, 2).is_err());
        assert!(build_root_system(Family::A, 10).is_err());
    }

    #[test]
    fn root_counts() {
        let counts = [
            (Family::A, 5, 15),
            (Family::B, 3, 9),
            (Family::C, 4, 16),
            (Family::D, 7, 42),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
        ];
        for (f, r, n) in counts {
            assert_eq!(build_root_system(f, r).unwrap().positive_roots().len(), n);
        }
    }

    #[test]
    fn dominance_examples() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert!(a2.is_dominant(&Weight::fundamental([1, 0])).unwrap());
        assert!(!a2.is_dominant(&Weight::fundamental([-1, 2])).unwrap());
        let a3 = build_root_system(Family::A, 3).unwrap();
        assert!(a3.is_dominant(&Weight::gl([3, 1, 1, 0])).unwrap());
        assert!(a3.is_dominant(&Weight::fundamental([1, 0])).is_err());
    }

    #[test]
    fn reflections() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        let w = a2.simple_reflection(1, &Weight::fundamental([1, 0])).unwrap();
        assert_eq!(w.coords, vec![-1, 1]);
        let a2gl = a2.simple_reflection(1, &Weight::gl([5, 2, 1])).unwrap();
        assert_eq!(a2gl.coords, vec![2, 5, 1]);
    }

    #[test]
    fn weyl_dims() {
        for n in 2..=10u64 {
            let rs = build_root_system(Family::A, n as usize - 1).unwrap();
            for k in 1..n {
                let d = rs.weyl_dim(&Weight::omega(n as usize - 1, k as usize)).unwrap();
                assert_eq!(d.to_u64().unwrap(), binom(n, k));
            }
        }
        let d7 = build_root_system(Family::D, 7).unwrap();
        assert_eq!(d7.weyl_dim(&Weight::omega(7, 4)).unwrap().to_u64(), Some(1001));
        assert_eq!(binom(14, 4), 1001);
        let d6 = build_root_system(Family::D, 6).unwrap();
        assert_eq!(d6.weyl_dim(&Weight::omega(6, 6)).unwrap().to_u64(), Some(32));
        let e6 = build_root_system(Family::E, 6).unwrap();
        assert_eq!(e6.weyl_dim(&Weight::omega(6, 1)).unwrap().to_u64(), Some(27));
        assert_eq!(e6.weyl_dim(&Weight::omega(6, 2)).unwrap().to_u64(), Some(78));
        let e7 = build_root_system(Family::E, 7).unwrap();
        assert_eq!(e7.weyl_dim(&Weight::omega(7, 7)).unwrap().to_u64(), Some(56));
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert_eq!(b3.weyl_dim(&Weight::omega(3, 3)).unwrap().to_u64(), Some(8));
        let c3 = build_root_system(Family::C, 3).unwrap();
        assert_eq!(c3.weyl_dim(&Weight::omega(3, 3)).unwrap().to_u64(), Some(14));
        assert!(a2_nondominant_rejected());
    }

    fn a2_nondominant_rejected() -> bool {
        let a2 = build_root_system(Family::A, 2).unwrap();
        a2.weyl_dim(&Weight::fundamental([-1, 0])).is_err()
    }

    #[test]
    fn gl_weyl_dim_matches_fundamental() {
        let a6 = build_root_system(Family::A, 6).unwrap();
        let gl = Weight::gl([3, 1, 1, 1, 1, 1, 1]);
        let fund = gl.gl_to_fundamental().unwrap();
        assert_eq!(fund.coords, vec![2, 0, 0, 0, 0, 0]);
        assert_eq!(a6.weyl_dim(&gl).unwrap(), a6.weyl_dim(&fund).unwrap());
        assert_eq!(fund.fundamental_to_gl(1).unwrap(), gl);
    }

    #[test]
    fn grading_element_values() {
        // G(2,6) case: base A5/P4, gr(xi) piece of highest weight w1 - w4 + w5.
        let a5 = build_root_system(Family::A, 5).unwrap();
        assert_eq!(a5.grading_element_eval(4, &[1, 0, 0, -1, 1]), Q64::new(-1, 3));
        // OP2 case: base E6/P6, piece w2 - w6.
        let e6 = build_root_system(Family::E, 6).unwrap();
        assert_eq!(e6.grading_element_eval(6, &[0, 1, 0, 0, 0, -1]), Q64::new(-1, 3));
        // Single coordinate.
        assert_eq!(e6.grading_element_eval(6, &[0, 0, 0, 0, 0, 1]), e6.inv_cartan()[5][5]);
    }

    #[test]
    fn twist_solver() {
        let a5 = build_root_system(Family::A, 5).unwrap();
        assert_eq!(a5.solve_twist(4, &[1, 0, 0, 99, 1], Q64::new(-1, 3)).unwrap(), -1);
        assert!(a5.solve_twist(4, &[1, 0, 0, 0, 1], Q64::new(1, 7)).is_err());
    }

    #[test]
    fn marking_validation() {
        assert!(ParabolicMarking::new(3, []).is_err());
        assert!(ParabolicMarking::new(3, [4]).is_err());
        assert_eq!(ParabolicMarking::new(3, [2, 1, 2]).unwrap().nodes(), &[1, 2]);
    }
}
