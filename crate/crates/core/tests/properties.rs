use num_bigint::BigInt;
use num_integer::binomial;
use proptest::prelude::*;

use chss::bott::{bott, BottResult};
use chss::decompose::{decompose_tensor, Engine, Settings};
use chss::partitions::{lr_coefficient, lr_product, Partition};
use chss::rootsys::{Family, RootDatum};

fn groups() -> Vec<RootDatum> {
    let simple = [
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::B, 3),
        (Family::C, 3),
        (Family::D, 4),
        (Family::E, 6),
    ];
    let mut out: Vec<RootDatum> = simple.iter().map(|&(f, r)| RootDatum::simple_group(f, r).unwrap()).collect();
    out.push(RootDatum::gl(3).unwrap());
    out.push(RootDatum::gl(4).unwrap());
    out
}

/// A dominant weight with small entries.
fn dominant(g: &RootDatum, raw: &[u8]) -> Vec<i64> {
    let n = g.components()[0].coord_len();
    let mut w: Vec<i64> = (0..n).map(|i| (raw[i % raw.len()] % 3) as i64).collect();
    if g.is_full() && g.active_nodes().len() < n {
        // GL: sort into a weakly decreasing sequence
        w.sort_unstable_by(|a, b| b.cmp(a));
    }
    assert!(g.is_dominant(&w), "{w:?}");
    w
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0i64..5, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lr_symmetry_and_conjugation(mu in partition(), nu in partition()) {
        prop_assume!(mu.size() + nu.size() <= 10);
        let prod = lr_product(&mu, &nu);
        let mut swapped = lr_product(&nu, &mu);
        let mut sorted = prod.clone();
        sorted.sort();
        swapped.sort();
        prop_assert_eq!(&sorted, &swapped);
        let (mc, nc) = (mu.conjugate(), nu.conjugate());
        for (lambda, c) in &prod {
            prop_assert_eq!(lr_coefficient(lambda, &mu, &nu), *c);
            prop_assert_eq!(lr_coefficient(&lambda.conjugate(), &mc, &nc), *c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dimension_conservation(gi in 0usize..9, op in 0usize..3, a in prop::collection::vec(any::<u8>(), 4), b in prop::collection::vec(any::<u8>(), 4), d in 2usize..4) {
        let g = &groups()[gi];
        let settings = Settings::default();
        let lambda = dominant(g, &a);
        let dim_l = g.weyl_dim(&lambda).unwrap();
        let e = Engine::new(g, settings);
        let (ch, expected) = match op {
            0 => {
                let mu = dominant(g, &b);
                let dim_m = g.weyl_dim(&mu).unwrap();
                prop_assume!(&dim_l * &dim_m <= BigInt::from(50_000));
                let sum = decompose_tensor(g, &lambda, &mu, settings).unwrap();
                prop_assert_eq!(sum.dim(g), &dim_l * &dim_m);
                return Ok(());
            }
            1 => {
                let dl: u64 = dim_l.clone().try_into().unwrap();
                prop_assume!(dl <= 30);
                (e.irrep_character(&lambda).unwrap().sym_power(d, settings.exec), BigInt::from(binomial(dl + d as u64 - 1, d as u64)))
            }
            _ => {
                let dl: u64 = dim_l.clone().try_into().unwrap();
                prop_assume!(dl <= 40);
                (e.irrep_character(&lambda).unwrap().ext_power(d, settings.exec), BigInt::from(binomial(dl, d as u64)))
            }
        };
        prop_assert!(!ch.has_negative());
        prop_assert_eq!(BigInt::from(ch.dim()), expected.clone());
        // peeling leaves no negative remainder and reassembles the character
        let sum = e.peel(&ch).unwrap();
        prop_assert_eq!(sum.dim(g), expected);
        prop_assert_eq!(e.sum_character(&sum).unwrap(), ch);
    }

    #[test]
    fn bott_degree_zero_on_dominant(gi in 0usize..9, a in prop::collection::vec(any::<u8>(), 4), mask in any::<u8>()) {
        let g = &groups()[gi];
        let lambda = dominant(g, &a);
        let marked: Vec<usize> = g.active_nodes().iter().copied().filter(|&i| mask & (1 << i) != 0).collect();
        prop_assert_eq!(
            bott(g, &marked, &lambda).unwrap(),
            BottResult::Cohomology { degree: 0, weight: lambda }
        );
    }

    #[test]
    fn reflection_involution(gi in 0usize..9, w in prop::collection::vec(-6i64..7, 4), node in any::<usize>()) {
        let g = &groups()[gi];
        let n = g.components()[0].coord_len();
        let v: Vec<i64> = (0..n).map(|i| w[i % w.len()]).collect();
        let i = g.active_nodes()[node % g.active_nodes().len()];
        let mut x = v.clone();
        g.reflect(i, &mut x);
        prop_assert_eq!(g.pair(i, &x), -g.pair(i, &v));
        g.reflect(i, &mut x);
        prop_assert_eq!(x, v);
    }
}
