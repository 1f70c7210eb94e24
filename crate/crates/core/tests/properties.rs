mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use qcatalan::exactnum::{binomial, rat};
use qcatalan::family::{Catalan, Family, MCatalan, SecondCatalan};
use qcatalan::moments::{central_moment, dist_summary};
use qcatalan::polyq::{
    gaussian_binomial, poly_div_exact, poly_mul, q_catalan, q_catalan_general, q_catalan_second,
    IntPoly,
};
use qcatalan::shape::{interior_positive, interior_unimodal, min_logconcave_t, shape_report};

fn nonneg_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(0i64..50, 1..max_len).prop_map(|mut c| {
        let last = c.len() - 1;
        c[last] = c[last].max(1);
        IntPoly::from_i64s(&c)
    })
}

proptest! {
    #[test]
    fn division_undoes_multiplication(p in nonneg_poly(12), d in nonneg_poly(8)) {
        let prod = poly_mul(&p, &d);
        prop_assert_eq!(poly_div_exact(&prod, &d).unwrap(), p);
    }

    #[test]
    fn sparse_factor_ops_match_convolution(p in nonneg_poly(12), a in 1usize..9) {
        let mut fast = p.clone();
        fast.mul_one_minus_qpow(a);
        let mut factor = vec![0i64; a + 1];
        factor[0] = 1;
        factor[a] = -1;
        prop_assert_eq!(&fast, &poly_mul(&p, &IntPoly::from_i64s(&factor)));
        fast.div_one_minus_qpow(a).unwrap();
        prop_assert_eq!(fast, p);
    }

    #[test]
    fn shape_invariant_under_reversal(c in prop::collection::vec(0i64..30, 3..20)) {
        let mut full = c.clone();
        full.extend(c.iter().rev().skip(1));
        let pal = IntPoly::from_i64s(&full);
        prop_assume!(pal.degree() == Some(full.len() - 1) && pal.degree().unwrap() >= 2);
        let rev = pal.reversed();
        prop_assert_eq!(interior_unimodal(&pal).unwrap(), interior_unimodal(&rev).unwrap());
        prop_assert_eq!(min_logconcave_t(&pal), min_logconcave_t(&rev));
        prop_assert_eq!(min_logconcave_t(&pal), common::brute_min_logconcave_t(&pal));
    }

    #[test]
    fn logconcave_scan_matches_brute_force(c in prop::collection::vec(0i64..40, 3..30)) {
        let p = IntPoly::from_i64s(&c);
        prop_assume!(p.degree().is_some());
        prop_assert_eq!(min_logconcave_t(&p), common::brute_min_logconcave_t(&p));
        if p.degree().unwrap() >= 2 {
            let interior = &p.coeffs()[1..p.degree().unwrap()];
            prop_assert_eq!(interior_unimodal(&p).unwrap().0, common::brute_unimodal(interior));
        }
    }

    #[test]
    fn positive_logconcave_is_unimodal(c in prop::collection::vec(1i64..60, 3..25)) {
        let p = IntPoly::from_i64s(&c);
        if min_logconcave_t(&p) == Some(0) && interior_positive(&p) {
            prop_assert!(interior_unimodal(&p).unwrap().0);
        }
    }
}

#[test]
fn gaussian_binomial_matches_q_factorials() {
    for n in 0..=12u32 {
        for k in 0..=n {
            let den = poly_mul(&common::q_factorial(k), &common::q_factorial(n - k));
            let want = poly_div_exact(&common::q_factorial(n), &den).unwrap();
            let got = gaussian_binomial(n, k).unwrap();
            assert_eq!(got, want, "n={n} k={k}");
            assert!(got.is_palindromic());
            assert_eq!(got.degree(), Some((k * (n - k)) as usize));
            assert_eq!(got.eval_at_one(), binomial(n as u64, k as u64));
        }
    }
}

#[test]
fn q_catalan_matches_naive_quotient_of_factorials() {
    for n in 1..=10 {
        assert_eq!(q_catalan(n).unwrap(), common::naive_q_catalan(n), "n={n}");
    }
}

#[test]
fn masses_and_palindromy() {
    for n in 1..=30u32 {
        let c = q_catalan(n).unwrap();
        assert!(c.is_palindromic());
        assert_eq!(c.eval_at_one(), binomial(2 * n as u64, n as u64) / (n + 1));

        let c2 = q_catalan_second(n).unwrap();
        assert!(c2.is_palindromic());
        assert_eq!(c2.degree(), Some(((n - 1) * (n - 1)) as usize));
        assert_eq!(c2.eval_at_one(), c.eval_at_one());

        assert_eq!(q_catalan_general(n, 2).unwrap(), c);
        for m in 3..=5u32 {
            let g = q_catalan_general(n, m).unwrap();
            assert!(g.is_palindromic() && g.is_nonnegative());
            let mass = binomial((m * n) as u64, n as u64) / BigInt::from((m - 1) * n + 1);
            assert_eq!(g.eval_at_one(), mass, "n={n} m={m}");
        }
    }
}

#[test]
fn power_sum_is_twelve_times_variance() {
    for n in 2..=60u32 {
        let spec = Catalan.spec(n).unwrap();
        let var = rat(n * (n - 1) * (n + 1), 6);
        assert_eq!(
            rat(spec.power_sum_diff(1), 1),
            var * rat(12, 1),
            "n={n}"
        );
    }
}

#[test]
fn palindromic_moments() {
    let families: Vec<Box<dyn Family>> = vec![
        Box::new(Catalan),
        Box::new(SecondCatalan),
        Box::new(MCatalan::new(3).unwrap()),
    ];
    for f in &families {
        for n in [2u32, 5, 9, 14] {
            let p = f.poly(n).unwrap();
            let s = dist_summary(&p).unwrap();
            assert_eq!(s.mean, rat(s.degree as i64, 2));
            for r in [1, 3, 5, 7] {
                assert_eq!(central_moment(&p, r).unwrap(), rat(0, 1), "{} n={n} r={r}", f.label());
            }
        }
    }
}

#[test]
fn shape_report_invariants_on_families() {
    for n in 2..=40u32 {
        let p = q_catalan(n).unwrap();
        let r = shape_report(&p, n, "catalan").unwrap();
        if let Some(v) = r.first_unimodality_violation {
            assert!(!r.interior_unimodal && (1..r.degree).contains(&v));
        }
        if let Some(t) = r.min_logconcave_t {
            assert!(2 * t < r.degree);
        }
    }
}
