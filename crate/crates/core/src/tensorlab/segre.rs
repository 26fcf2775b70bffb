use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::EchelonBasis;
use super::{ks_basis, q, KsElement, Monomial, PolyElement, Q};
use crate::partitions::{schur_dim_u64, Partition};

/// The three `GL(A)×GL(B)` blocks of `S³(A⊗B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    /// `Λ³A ⊗ Λ³B`
    Wedge,
    /// `π_S(K_S(A) ⊗ K_S(B)) ≅ S_{21}A ⊗ S_{21}B`
    Mixed,
    /// `S³A ⊗ S³B`
    Sym,
}

/// Exact block decomposition of `S³(A⊗B)`.
#[derive(Debug, Clone, Serialize)]
pub struct SegreBlocks {
    pub dim_a: usize,
    pub dim_b: usize,
    pub total_dim: usize,
    /// `(block, rank of its projector, expected GL×GL dimension)`.
    pub blocks: Vec<(Block, usize, u64)>,
    /// Rank of `π_S(K_S(A) ⊗ K_S(B))`.
    pub mixed_image_rank: usize,
    /// `π_S(K_S(A)⊗K_S(B))` is fixed by the mixed projector.
    pub mixed_image_in_block: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sums_to_identity: bool,
    pub seed: u64,
}

impl SegreBlocks {
    pub fn passed(&self) -> bool {
        self.blocks.iter().map(|b| b.1).sum::<usize>() == self.total_dim
            && self.blocks.iter().all(|b| b.1 as u64 == b.2)
            && self.mixed_image_rank as u64 == self.blocks[1].2
            && self.mixed_image_in_block
            && self.idempotent
            && self.orthogonal
            && self.sums_to_identity
    }
}

fn pair_index(a: usize, b: usize, dim_b: usize) -> usize {
    a * dim_b + b
}

/// The six permutations of three slots with their signs.
const S3: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
];

/// Apply `Σ_σ c(σ) σ_A` (a class function on `S_3` acting on the `A` slots)
/// to an element of `S³(A⊗B)` stored as cubics in the `dim_a·dim_b` variables.
fn apply_class(p: &PolyElement, dim_a: usize, dim_b: usize, c: impl Fn(usize) -> Q) -> PolyElement {
    let mut out = PolyElement::zero(1, dim_a * dim_b, 3);
    for (m, x) in p.terms() {
        let pairs: Vec<(usize, usize)> = m.iter().map(|f| (f[0] / dim_b, f[0] % dim_b)).collect();
        for (i, (perm, _)) in S3.iter().enumerate() {
            let w = c(i);
            if w.is_zero() {
                continue;
            }
            let factors: Vec<Vec<usize>> = (0..3)
                .map(|t| vec![pair_index(pairs[perm[t]].0, pairs[t].1, dim_b)])
                .collect();
            out.add_product(&factors, x * w);
        }
    }
    out
}

fn project(p: &PolyElement, dim_a: usize, dim_b: usize, block: Block) -> PolyElement {
    let sixth = Q::new(1.into(), 6.into());
    let third = Q::new(1.into(), 3.into());
    match block {
        Block::Sym => apply_class(p, dim_a, dim_b, |_| sixth.clone()),
        Block::Wedge => apply_class(p, dim_a, dim_b, |i| &sixth * q(S3[i].1)),
        // (2/6)(2·e - (123) - (132))
        Block::Mixed => apply_class(p, dim_a, dim_b, |i| match i {
            0 => &third * q(2),
            1 | 2 => -third.clone(),
            _ => Q::zero(),
        }),
    }
}

/// Averaged diagonal symmetrization
/// `a₁⊗a₂⊗a₃⊗b₁⊗b₂⊗b₃ ↦ 1/6 Σ_σ (a_{σ1}⊗b_{σ1})(a_{σ2}⊗b_{σ2})(a_{σ3}⊗b_{σ3})`,
/// which as a cubic is the monomial `(a₁b₁)(a₂b₂)(a₃b₃)`.
pub fn pi_s(alpha: &KsElement, beta: &KsElement) -> PolyElement {
    let (na, nb) = (alpha.dim(), beta.dim());
    let mut out = PolyElement::zero(1, na * nb, 3);
    for a1 in 0..na {
        for a2 in 0..na {
            for a3 in 0..na {
                let x = alpha.get(a1, a2, a3);
                if x.is_zero() {
                    continue;
                }
                for b1 in 0..nb {
                    for b2 in 0..nb {
                        for b3 in 0..nb {
                            let y = beta.get(b1, b2, b3);
                            if y.is_zero() {
                                continue;
                            }
                            let f = vec![
                                vec![pair_index(a1, b1, nb)],
                                vec![pair_index(a2, b2, nb)],
                                vec![pair_index(a3, b3, nb)],
                            ];
                            out.add_product(&f, &x * &y);
                        }
                    }
                }
            }
        }
    }
    out
}

fn as_map(p: &PolyElement) -> BTreeMap<Monomial, Q> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn rank_of(vs: impl IntoIterator<Item = PolyElement>) -> usize {
    let mut b: EchelonBasis<Monomial> = EchelonBasis::new();
    for v in vs {
        b.insert(as_map(&v));
    }
    b.rank()
}

fn random_cubic(rng: &mut ChaCha8Rng, basis: &[PolyElement]) -> PolyElement {
    let mut p = basis[0].scaled(&Q::zero());
    for m in basis {
        let c: i64 = rng.gen_range(-9..=9);
        p.add_assign_scaled(m, &q(c));
    }
    p
}

/// Decompose `S³(A⊗B)` with exact `S_3` idempotents acting on the `A`
/// factor, and compare with `π_S(K_S(A)⊗K_S(B))`.
pub fn segre_cubic_blocks(dim_a: usize, dim_b: usize, seed: u64) -> SegreBlocks {
    let n = dim_a * dim_b;
    let monomials: Vec<PolyElement> = {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let mut p = PolyElement::zero(1, n, 3);
                    p.add_product(&[vec![i], vec![j], vec![k]], q(1));
                    out.push(p);
                }
            }
        }
        out
    };
    let order = [Block::Wedge, Block::Mixed, Block::Sym];
    let expected = |b: Block| {
        let shape = match b {
            Block::Wedge => Partition::column(3),
            Block::Mixed => Partition::new([2, 1]).expect("valid"),
            Block::Sym => Partition::row(3),
        };
        schur_dim_u64(&shape, dim_a) * schur_dim_u64(&shape, dim_b)
    };
    let blocks: Vec<(Block, usize, u64)> = order
        .iter()
        .map(|&b| (b, rank_of(monomials.iter().map(|m| project(m, dim_a, dim_b, b))), expected(b)))
        .collect();

    let mixed: Vec<PolyElement> = ks_basis(dim_a)
        .iter()
        .flat_map(|x| ks_basis(dim_b).into_iter().map(move |y| pi_s(x, &y)))
        .collect();
    let mixed_image_rank = rank_of(mixed.iter().cloned());
    let mixed_image_in_block = mixed.iter().all(|p| project(p, dim_a, dim_b, Block::Mixed) == *p);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idempotent = true;
    let mut orthogonal = true;
    let mut sums_to_identity = true;
    for _ in 0..3 {
        let p = random_cubic(&mut rng, &monomials);
        let parts: Vec<PolyElement> = order.iter().map(|&b| project(&p, dim_a, dim_b, b)).collect();
        for (i, &b) in order.iter().enumerate() {
            idempotent &= project(&parts[i], dim_a, dim_b, b) == parts[i];
            for (j, &c) in order.iter().enumerate() {
                if i != j {
                    orthogonal &= project(&parts[i], dim_a, dim_b, c).is_zero();
                }
            }
        }
        sums_to_identity &= parts.iter().fold(p.scaled(&q(-1)), |acc, x| acc.add(x)).is_zero();
    }
    SegreBlocks {
        dim_a,
        dim_b,
        total_dim: monomials.len(),
        blocks,
        mixed_image_rank,
        mixed_image_in_block,
        idempotent,
        orthogonal,
        sums_to_identity,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let r = segre_cubic_blocks(2, 2, 1);
        assert_eq!(r.total_dim, 20);
        let dims: Vec<usize> = r.blocks.iter().map(|b| b.1).collect();
        assert_eq!(dims, vec![0, 4, 16]);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn three_by_three() {
        let r = segre_cubic_blocks(3, 3, 7);
        assert_eq!(r.total_dim, 165);
        assert_eq!(r.blocks[0].1, 1);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn mixed_shapes() {
        assert!(segre_cubic_blocks(2, 3, 3).passed());
    }
}
