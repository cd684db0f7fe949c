mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::oracles::{random_symmetric, sdic_replay};
use tabimage::{random_ordering, sdic_ordering, CorrMatrix};

fn to_corr(c: &[Vec<f64>]) -> CorrMatrix {
    CorrMatrix::from_entries(c.len(), c.iter().flatten().copied().collect()).unwrap()
}

#[test]
fn matches_naive_replay_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5d1c);
    for trial in 0..500 {
        let n = 1 + trial % 12;
        let c = random_symmetric(n, &mut rng);
        let got = sdic_ordering(&to_corr(&c)).unwrap();
        assert_eq!(got.as_slice(), sdic_replay(&c).as_slice(), "trial {trial}, n {n}");
    }
}

#[test]
fn replay_reproduces_worked_examples() {
    let mk = |pairs: &[((usize, usize), f64)]| {
        let mut c = vec![vec![0.0; 4]; 4];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for &((i, j), v) in pairs {
            c[i][j] = v;
            c[j][i] = v;
        }
        c
    };
    let a = mk(&[((0, 1), 0.9), ((0, 2), 0.1), ((0, 3), -0.3), ((1, 2), 0.5), ((1, 3), -0.2), ((2, 3), 0.4)]);
    let b = mk(&[((1, 3), 0.8), ((0, 2), 0.6), ((0, 1), -0.1), ((0, 3), -0.2), ((1, 2), -0.3), ((2, 3), -0.5)]);
    assert_eq!(sdic_replay(&a), vec![0, 1, 2, 3]);
    assert_eq!(sdic_replay(&b), vec![1, 3, 0, 2]);
    assert_eq!(sdic_ordering(&to_corr(&a)).unwrap().as_slice(), &[0, 1, 2, 3]);
    assert_eq!(sdic_ordering(&to_corr(&b)).unwrap().as_slice(), &[1, 3, 0, 2]);
}

#[test]
fn handles_large_feature_counts() {
    // 784 features, mostly zero rows (as for blank MNIST border pixels).
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 784;
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        if i % 3 == 0 {
            continue;
        }
        c[i][i] = 1.0;
        for j in i + 1..n {
            if j % 3 != 0 {
                let v: f64 = rand::Rng::random_range(&mut rng, -1.0..1.0);
                c[i][j] = v;
                c[j][i] = v;
            }
        }
    }
    let got = sdic_ordering(&to_corr(&c)).unwrap();
    assert_eq!(got.as_slice(), sdic_replay(&c).as_slice());
}

proptest! {
    #[test]
    fn first_pair_is_maximal(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_symmetric(n, &mut rng);
        let order = sdic_ordering(&to_corr(&c)).unwrap();
        let (i, j) = (order.as_slice()[0], order.as_slice()[1]);
        prop_assert!(i < j);
        for a in 0..n {
            for b in a + 1..n {
                prop_assert!(c[a][b] <= c[i][j]);
                if c[a][b] == c[i][j] {
                    prop_assert!((i, j) <= (a, b));
                }
            }
        }
    }

    #[test]
    fn sdic_output_is_permutation(seed in any::<u64>(), n in 1usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_symmetric(n, &mut rng);
        let mut order = sdic_ordering(&to_corr(&c)).unwrap().as_slice().to_vec();
        order.sort_unstable();
        prop_assert_eq!(order, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn random_ordering_is_seeded_permutation(n in 1usize..300, seed in any::<u64>()) {
        let a = random_ordering(n, seed).unwrap();
        prop_assert_eq!(&a, &random_ordering(n, seed).unwrap());
        let mut sorted = a.as_slice().to_vec();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
    }
}
