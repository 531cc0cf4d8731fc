use proptest::prelude::*;

use coclass_core::linalg::{
    fp_kernel, fp_rank, fp_solve, hnf, lattice_contains, lattice_from_columns, snf, FpMatrix, IntMatrix,
};

fn square(n: usize, range: i128) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, n * n).prop_map(move |v| {
        let rows: Vec<Vec<i128>> = v.chunks(n).map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&rows)
    })
}

/// A product of elementary column operations and sign flips.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i128..=3, any::<bool>()), 1..8).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, k, flip) in ops {
            let mut e = IntMatrix::identity(n);
            if i != j {
                e[(i, j)] = k;
            } else if flip {
                e[(i, i)] = -1;
            }
            u = u.mul(&e).unwrap();
        }
        u
    })
}

fn is_hermite(h: &IntMatrix) -> bool {
    let n = h.rows();
    (0..n).all(|r| {
        (0..r).all(|c| h[(r, c)] == 0)
            && h[(r, r)] > 0
            && (r + 1..n).all(|c| (0..h[(r, r)]).contains(&h[(r, c)]))
    })
}

proptest! {
    #[test]
    fn hnf_is_canonical(a in square(3, 6), u in unimodular(3)) {
        prop_assume!(a.det().unwrap() != 0);
        let (h, v) = hnf(&a).unwrap();
        prop_assert_eq!(&a.mul(&v).unwrap(), &h);
        prop_assert_eq!(v.det().unwrap().abs(), 1);
        prop_assert!(is_hermite(&h));
        let (h2, _) = hnf(&a.mul(&u).unwrap()).unwrap();
        prop_assert_eq!(h, h2);
    }

    #[test]
    fn snf_divisibility_and_determinant(a in square(3, 8)) {
        let (d, s, t) = snf(&a).unwrap();
        prop_assert_eq!(&s.mul(&a).unwrap().mul(&t).unwrap(), &d);
        prop_assert_eq!(s.det().unwrap().abs(), 1);
        prop_assert_eq!(t.det().unwrap().abs(), 1);
        let diag: Vec<i128> = (0..3).map(|i| d[(i, i)]).collect();
        for r in 0..3 {
            for c in 0..3 {
                if r != c {
                    prop_assert_eq!(d[(r, c)], 0);
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(w[0] >= 0);
            prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        }
        prop_assert_eq!(diag.iter().product::<i128>(), a.det().unwrap().abs());
    }

    #[test]
    fn lattice_membership_matches_adjugate(
        a in square(3, 5),
        v in prop::collection::vec(-20i128..=20, 3),
    ) {
        let det = a.det().unwrap();
        prop_assume!(det != 0);
        let lattice = lattice_from_columns(&a).unwrap();
        let adj_v = a.adjugate().unwrap().mul_vec(&v).unwrap();
        let expected = adj_v.iter().all(|x| x % det == 0);
        prop_assert_eq!(lattice_contains(&lattice, &v).unwrap(), expected);
        let image = a.mul_vec(&v).unwrap();
        prop_assert!(lattice_contains(&lattice, &image).unwrap());
        prop_assert_eq!(lattice.determinant(), det.abs());
    }

    #[test]
    fn fp_rank_nullity_and_solve(
        p in prop::sample::select(vec![2u8, 3, 5, 7]),
        rows in 1usize..7,
        cols in 1usize..7,
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = FpMatrix::random(p, rows, cols, &mut rng).unwrap();
        let k = fp_kernel(&a);
        prop_assert_eq!(fp_rank(&a) + k.cols(), cols);
        prop_assert!(a.mul(&k).unwrap().is_zero());
        let x = FpMatrix::random(p, cols, 1, &mut rng).unwrap().column_vec(0);
        let b = a.mul_vec(&x).unwrap();
        let y = fp_solve(&a, &b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
    }
}
