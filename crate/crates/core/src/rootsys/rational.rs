//! Small exact-rational helpers for Cartan data.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q64 = Ratio<i64>;

/// Gauss-Jordan inverse over any exact field; `None` if singular.
pub fn mat_inverse<T>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>>
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Mul<Output = T> + std::ops::Div<Output = T>,
{
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].clone() - f.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
                }
            }
        }
    }
    Some(inv)
}

/// Least common multiple of the denominators of a rational matrix.
pub fn common_denominator(m: &[Vec<Q64>]) -> i64 {
    m.iter()
        .flatten()
        .fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()))
}
