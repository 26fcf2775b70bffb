use serde::Serialize;

use super::{q, PolyElement};
use crate::error::{Error, Result};

/// Perfect matchings of `0..n` as pair lists, pairs sorted internally and by
/// first element, with the sign of the concatenated permutation.
fn matchings(n: usize) -> Vec<(Vec<(usize, usize)>, i64)> {
    fn rec(free: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<(Vec<(usize, usize)>, i64)>) {
        if free.is_empty() {
            let mut perm: Vec<usize> = cur.iter().flat_map(|&(a, b)| [a, b]).collect();
            let sign = super::sort_sign(&mut perm).expect("distinct");
            out.push((cur.clone(), sign as i64));
            return;
        }
        let a = free[0];
        for i in 1..free.len() {
            let b = free[i];
            let rest: Vec<usize> = free[1..].iter().copied().filter(|&x| x != b).collect();
            cur.push((a, b));
            rec(&rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// `f_1 ∧ ... ∧ f_6 ↦ Σ sgn(σ) (f_{σ1}∧f_{σ2})(f_{σ3}∧f_{σ4})(f_{σ5}∧f_{σ6})`
/// with `f_i = e_i`, inside `S³(Λ²K⁶)`.
pub fn pfaffian_inclusion() -> PolyElement {
    let mut p = PolyElement::zero(2, 6, 3);
    for (m, s) in matchings(6) {
        let factors: Vec<Vec<usize>> = m.iter().map(|&(a, b)| vec![a, b]).collect();
        p.add_product(&factors, q(s));
    }
    p
}

/// The highest weight vectors of `S³(Λ^k K^m)` built from the Pfaffian.
#[derive(Debug, Clone, Serialize)]
pub struct HwvConstruction {
    pub k: usize,
    pub m: usize,
    /// `2ω_{k-2} + ω_{k+4}`, i.e. `(3^{k-2}, 1^6)`.
    pub first: PolyElement,
    pub first_weight: Vec<i64>,
    /// `ω_{k-4} + 2ω_{k+2}`, i.e. `(3^{k-4}, 2^6)`, present when `k >= 4`.
    pub mirror: Option<PolyElement>,
    pub mirror_weight: Option<Vec<i64>>,
}

/// Wedge every Pfaffian factor `f_i ∧ f_j` (with `f` spanning
/// `e_{k-1}..e_{k+4}`) with `e_1 ∧ ... ∧ e_{k-2}`. The mirror module uses the
/// complementary 4-wedges of the six `f`'s, spanning `e_{k-3}..e_{k+2}`,
/// wedged with `e_1 ∧ ... ∧ e_{k-4}`.
pub fn build_hwv_prop_gkv(k: usize, m: usize) -> Result<HwvConstruction> {
    if k < 2 || m < k + 4 {
        return Err(Error::domain(format!(
            "need k >= 2 and m >= k+4 for V_(2ω_(k-2)+ω_(k+4)) in S³(Λ^k K^m); got k={k}, m={m}"
        )));
    }
    let pm = matchings(6);
    let mut first = PolyElement::zero(k, m, 3);
    let head: Vec<usize> = (0..k - 2).collect();
    for (pairs, s) in &pm {
        let factors: Vec<Vec<usize>> = pairs
            .iter()
            .map(|&(a, b)| head.iter().copied().chain([a + k - 2, b + k - 2]).collect())
            .collect();
        first.add_product(&factors, q(*s));
    }
    let mut weight = vec![0i64; m];
    for w in weight.iter_mut().take(k - 2) {
        *w = 3;
    }
    for w in weight.iter_mut().skip(k - 2).take(6) {
        *w = 1;
    }
    let (mirror, mirror_weight) = if k >= 4 {
        let head: Vec<usize> = (0..k - 4).collect();
        let mut p = PolyElement::zero(k, m, 3);
        for (pairs, s) in &pm {
            let mut sign = *s;
            let factors: Vec<Vec<usize>> = pairs
                .iter()
                .map(|&(a, b)| {
                    let comp: Vec<usize> = (0..6).filter(|&x| x != a && x != b).collect();
                    // f_a ∧ f_b ∧ f_comp = ± f_1 ∧ ... ∧ f_6
                    let mut perm: Vec<usize> = [a, b].into_iter().chain(comp.iter().copied()).collect();
                    sign *= super::sort_sign(&mut perm).expect("distinct") as i64;
                    head.iter().copied().chain(comp.iter().map(|&c| c + k - 4)).collect()
                })
                .collect();
            p.add_product(&factors, q(sign));
        }
        let mut w = vec![0i64; m];
        for x in w.iter_mut().take(k - 4) {
            *x = 3;
        }
        for x in w.iter_mut().skip(k - 4).take(6) {
            *x = 2;
        }
        (Some(p), Some(w))
    } else {
        (None, None)
    };
    Ok(HwvConstruction {
        k,
        m,
        first,
        first_weight: weight,
        mirror,
        mirror_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorlab::{ExteriorTensor, Q};
    use num_traits::Zero;

    /// Pfaffian by expansion along the first row.
    fn pf(a: &[Vec<Q>]) -> Q {
        let n = a.len();
        if n == 0 {
            return q(1);
        }
        let mut total = Q::zero();
        for j in 1..n {
            let keep: Vec<usize> = (1..n).filter(|&x| x != j).collect();
            let minor: Vec<Vec<Q>> = keep.iter().map(|&r| keep.iter().map(|&c| a[r][c].clone()).collect()).collect();
            let sign = if j % 2 == 1 { q(1) } else { q(-1) };
            total += sign * &a[0][j] * pf(&minor);
        }
        total
    }

    fn skew_point(vals: &[i64]) -> (ExteriorTensor, Vec<Vec<Q>>) {
        let mut t = ExteriorTensor::zero(2, 6);
        let mut a = vec![vec![Q::zero(); 6]; 6];
        let mut it = vals.iter();
        for i in 0..6 {
            for j in i + 1..6 {
                let v = q(*it.next().unwrap());
                t.add_term(&[i, j], v.clone());
                a[i][j] = v.clone();
                a[j][i] = -v;
            }
        }
        (t, a)
    }

    #[test]
    fn fifteen_terms_identity_plus_one() {
        let p = pfaffian_inclusion();
        assert_eq!(p.len(), 15);
        assert_eq!(p.coeff(&[vec![0, 1], vec![2, 3], vec![4, 5]]), q(1));
        assert!(p.is_highest_weight());
        assert_eq!(p.weight(), Some(vec![1; 6]));
    }

    #[test]
    fn evaluates_to_pfaffian() {
        let p = pfaffian_inclusion();
        let samples: [[i64; 15]; 3] = [
            [1, 2, -3, 4, 5, -6, 7, 8, 9, -1, 2, 3, 4, -5, 6],
            [3, 0, 1, -2, 2, 5, -1, 0, 4, 7, -3, 2, 1, 1, -9],
            [-4, 6, 2, 2, 8, -7, 3, 1, -2, 5, 9, -6, 0, 4, 3],
        ];
        for s in samples {
            let (t, a) = skew_point(&s);
            assert_eq!(p.evaluate(&t), pf(&a));
        }
        // a rank-two form u ∧ v
        let u: Vec<Q> = [1, 2, 0, -1, 3, 5].iter().map(|&x| q(x)).collect();
        let v: Vec<Q> = [0, 1, 4, 2, -2, 1].iter().map(|&x| q(x)).collect();
        assert!(p.evaluate(&ExteriorTensor::decomposable(6, &[u, v])).is_zero());
    }

    #[test]
    fn g37_vector() {
        let h = build_hwv_prop_gkv(3, 7).unwrap();
        assert_eq!(h.first.weight(), Some(vec![3, 1, 1, 1, 1, 1, 1]));
        assert!(h.first.is_highest_weight());
        assert!(h.mirror.is_none());
        assert!(!h.first.is_zero());
    }

    #[test]
    fn mirror_module() {
        let h = build_hwv_prop_gkv(4, 8).unwrap();
        assert!(h.first.is_highest_weight());
        let mirror = h.mirror.unwrap();
        assert_eq!(mirror.weight(), h.mirror_weight);
        assert!(mirror.is_highest_weight());
        assert_eq!(h.mirror_weight.unwrap(), vec![2, 2, 2, 2, 2, 2, 0, 0]);
    }

    #[test]
    fn range_checked() {
        assert!(build_hwv_prop_gkv(3, 6).is_err());
    }
}
