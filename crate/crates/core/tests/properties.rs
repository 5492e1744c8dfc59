use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use crossrc_core::comparison::{cuntz_leq_fd, RankVector};
use crossrc_core::group::{build_group, GroupTable};
use crossrc_core::linalg::{cut_down, exact_rank, ExactMatrix, Identification, Permutation};
use crossrc_core::scalar::{self, rat, Scalar};
use crossrc_core::seq::{generate_stages, next_d};

fn scan_next_d(m: u64, q: &BigRational) -> BigInt {
    // smallest k ≥ 1 with 1 − m/(k + m) > q
    let mut k = BigInt::one();
    loop {
        let u = BigRational::one() - BigRational::new(BigInt::from(m), &k + BigInt::from(m));
        if &u > q {
            return k;
        }
        k += 1;
    }
}

fn gaussian_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec((-3i64..=3, -3i64..=3), rows * cols).prop_map(move |v| {
        ExactMatrix::from_fn(rows, cols, |i, j| {
            let (a, b) = v[i * cols + j];
            scalar::gauss(a, b)
        })
    })
}

fn nonneg_rational() -> impl Strategy<Value = BigRational> {
    (0i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn diagonal_psd(k: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(nonneg_rational(), k)
        .prop_map(|d| ExactMatrix::diagonal(&d.into_iter().map(scalar::real).collect::<Vec<_>>()))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_image(v).unwrap())
}

fn table_of(g: &GroupTable) -> (Vec<String>, Vec<Vec<usize>>) {
    (g.elements().to_vec(), g.table().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn next_d_matches_scan(m in 1u64..12, num in 1i64..200, extra in 1i64..200) {
        let q = rat(num, num + extra);
        prop_assert_eq!(next_d(m, &q).unwrap(), scan_next_d(m, &q));
    }

    #[test]
    fn ledger_invariants(m in 2u64..9, num in 1i64..50, extra in 1i64..50) {
        let target = rat(num, num + extra);
        let ledger = generate_stages(m, &target, 4).unwrap();
        prop_assert!(ledger.is_self_consistent());
        let mut prev = BigRational::one();
        for n in 1..=4 {
            let u = ledger.u(n);
            prop_assert!(u > target && u <= prev);
            prop_assert_eq!(u.clone(), BigRational::new(ledger.s(n), ledger.r(n)));
            prev = u;
        }
    }

    #[test]
    fn corrupted_cayley_table_is_rejected(
        spec in prop::sample::select(vec!["Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8"]),
        cell in 0usize..64,
        shift in 1usize..8,
    ) {
        let g = build_group(spec).unwrap();
        let (elements, mut mul) = table_of(&g);
        let n = elements.len();
        let (i, j) = ((cell / n) % n, cell % n);
        mul[i][j] = (mul[i][j] + 1 + shift % (n - 1)) % n;
        prop_assert!(GroupTable::from_table("bad", elements, mul).is_err());
    }

    #[test]
    fn relabeled_table_is_accepted(spec in prop::sample::select(vec!["Z4", "S3", "Q8"]), p in permutation(8)) {
        let g = build_group(spec).unwrap();
        let n = g.order();
        let image: Vec<usize> = p.image().iter().copied().filter(|&x| x < n).collect();
        let (elements, mul) = table_of(&g);
        let mut inv = vec![0; n];
        for (k, &x) in image.iter().enumerate() {
            inv[x] = k;
        }
        let new_elements: Vec<String> = (0..n).map(|k| elements[image[k]].clone()).collect();
        let new_mul: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| inv[mul[image[a]][image[b]]]).collect())
            .collect();
        let h = GroupTable::from_table("relabeled", new_elements, new_mul).unwrap();
        prop_assert_eq!(h.order(), n);
        prop_assert_eq!(h.is_abelian(), g.is_abelian());
    }

    #[test]
    fn cut_down_composes(d in diagonal_psd(5), e1 in nonneg_rational(), e2 in nonneg_rational()) {
        let once = cut_down(&d, &(&e1 + &e2)).unwrap();
        let first = cut_down(&d, &e1).unwrap();
        let twice = cut_down(first.exact().unwrap(), &e2).unwrap();
        prop_assert_eq!(once.exact().unwrap(), twice.exact().unwrap());
        prop_assert!(exact_rank(once.exact().unwrap()) <= exact_rank(&d));
    }

    #[test]
    fn cuntz_preorder_and_sums(
        a in proptest::collection::vec(0usize..5, 3),
        b in proptest::collection::vec(0usize..5, 3),
        c in proptest::collection::vec(0usize..5, 3),
    ) {
        let sizes = vec![4, 4, 4];
        let rv = |r: &Vec<usize>| RankVector::new(r.clone(), sizes.clone()).unwrap();
        let (a, b, c) = (rv(&a), rv(&b), rv(&c));
        prop_assert!(cuntz_leq_fd(&a, &a).unwrap());
        if cuntz_leq_fd(&a, &b).unwrap() && cuntz_leq_fd(&b, &c).unwrap() {
            prop_assert!(cuntz_leq_fd(&a, &c).unwrap());
        }
        if cuntz_leq_fd(&a, &b).unwrap() {
            prop_assert!(cuntz_leq_fd(&a.direct_sum(&c), &b.direct_sum(&c)).unwrap());
        }
    }

    #[test]
    fn permutation_conjugation_matches_products(p in permutation(5), a in gaussian_matrix(5, 5)) {
        let m = p.to_matrix();
        prop_assert_eq!(p.conjugate(&a), &(&m * &a) * &m.adjoint());
        prop_assert_eq!(p.compose(&p.inverse()), Permutation::identity(5));
    }

    #[test]
    fn identifications_are_star_homomorphisms(
        a in gaussian_matrix(2, 2), b in gaussian_matrix(3, 3),
        c in gaussian_matrix(2, 2), d in gaussian_matrix(3, 3),
    ) {
        let s = Identification::sigma(2, 3);
        let ab = s.apply_pair(&a, &b).unwrap();
        let cd = s.apply_pair(&c, &d).unwrap();
        prop_assert_eq!(&ab * &cd, s.apply_pair(&(&a * &c), &(&b * &d)).unwrap());
        prop_assert_eq!(ab.adjoint(), s.apply_pair(&a.adjoint(), &b.adjoint()).unwrap());
    }

    #[test]
    fn psi_sigma_agrees_with_phi_theta(
        a in gaussian_matrix(2, 2), b in gaussian_matrix(2, 2), c in gaussian_matrix(2, 2),
    ) {
        let (nu, n) = (2, 2);
        let lhs = Identification::psi(nu, n)
            .apply_pair(&a, &Identification::sigma(nu, n).apply_pair(&b, &c).unwrap())
            .unwrap();
        let rhs = Identification::phi(nu, n)
            .apply_pair(&Identification::theta(nu).apply_pair(&a, &b).unwrap(), &c)
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_rank_of_product_is_bounded(a in gaussian_matrix(4, 3), b in gaussian_matrix(3, 4)) {
        let ab = &a * &b;
        prop_assert!(exact_rank(&ab) <= exact_rank(&a).min(exact_rank(&b)));
        prop_assert_eq!(exact_rank(&a), exact_rank(&a.adjoint()));
    }
}

#[test]
fn zero_matrix_has_rank_zero() {
    assert_eq!(exact_rank(&ExactMatrix::zeros(3, 3)), 0);
    assert!(Scalar::zero().is_zero());
}
