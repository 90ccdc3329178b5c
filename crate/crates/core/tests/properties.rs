use abelsolve::arith::{modulo, pow};
use abelsolve::modular::modular_snf;
use abelsolve::oracle::{brute_force_solve, EnumerationBudget};
use abelsolve::primary::canonical_primary_form;
use abelsolve::snf::{smith_normal_form, solve_diophantine};
use abelsolve::strategy::{solutions_agree, solve, Strategy as Method};
use abelsolve::{FgAbelianGroup, Homomorphism, Matrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max: usize, range: i64) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(m, n)| {
        prop::collection::vec(prop::collection::vec(-range..=range, n), m).prop_map(|rows| Matrix::from_rows(&rows))
    })
}

fn prime_power_orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((prop::sample::select(vec![2i64, 3, 5]), 1u32..=2), 1..=3)
        .prop_map(|v| v.into_iter().map(|(p, e)| p.pow(e)).collect())
        .prop_filter("small enough to enumerate", |o: &Vec<i64>| o.iter().product::<i64>() <= 4096)
}

/// A finite problem: source orders, target orders, raw entries, rhs seed.
fn finite_problem() -> impl Strategy<Value = (Homomorphism, Vec<i64>)> {
    (prime_power_orders(), prime_power_orders()).prop_flat_map(|(src, tgt)| {
        let (n, m) = (src.len(), tgt.len());
        (prop::collection::vec(prop::collection::vec(0i64..100, n), m), prop::collection::vec(0i64..100, m)).prop_map(
            move |(raw, b)| {
                let g = FgAbelianGroup::new(src.clone()).unwrap();
                let h = FgAbelianGroup::new(tgt.clone()).unwrap();
                // scale each entry up to the nearest well-defined multiple
                let rows: Vec<Vec<i64>> = raw
                    .iter()
                    .zip(&tgt)
                    .map(|(r, &q)| r.iter().zip(&src).map(|(x, &o)| x * (q / num_integer::gcd(q, o))).collect())
                    .collect();
                (Homomorphism::new(g, h, Matrix::from_rows(&rows)).unwrap(), b)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_invariants(a in small_matrix(5, 30)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.left.mul(&a).mul(&s.right), s.d_matrix());
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(s.right.determinant().abs().is_one());
        prop_assert!(s.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        if a.rows() == a.cols() {
            let prod: BigInt = s.diagonal.iter().product();
            let det = a.determinant().abs();
            prop_assert_eq!(if s.rank() == a.rows() { prod } else { BigInt::zero() }, det);
        }
    }

    #[test]
    fn snf_is_idempotent_on_diagonal(a in small_matrix(4, 12)) {
        let d = smith_normal_form(&a);
        prop_assert_eq!(smith_normal_form(&d.d_matrix()).diagonal, d.diagonal);
    }

    #[test]
    fn diophantine_particulars_verify(a in small_matrix(4, 9), seed in prop::collection::vec(-5i64..=5, 4)) {
        let x: Vec<BigInt> = seed.iter().take(a.cols()).map(|&v| BigInt::from(v)).chain(std::iter::repeat(BigInt::zero())).take(a.cols()).collect();
        let b = a.mul_vec(&x);
        let sol = solve_diophantine(&a, &b).unwrap();
        let p = sol.particular().expect("b is in the image");
        prop_assert_eq!(a.mul_vec(p.exponents()), b);
        for k in sol.kernel() {
            prop_assert!(a.mul_vec(k.exponents()).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn modular_snf_invariants(a in small_matrix(5, 200), p in prop::sample::select(vec![2u64, 3, 5, 7]), ell in 1u32..=4) {
        let q = pow(p, ell);
        let s = modular_snf(&a, p, ell).unwrap();
        let mut lhs = s.left.mul(&a).mul(&s.right);
        lhs.reduce_all(&q);
        prop_assert_eq!(lhs, s.d_matrix());
        prop_assert!(s.valuations.windows(2).all(|w| w[0] <= w[1]));
        let pb = BigInt::from(p);
        prop_assert!(!modulo(&s.left.determinant(), &pb).is_zero());
        prop_assert!(!modulo(&s.right.determinant(), &pb).is_zero());
    }

    #[test]
    fn primary_form_round_trip(orders in prop::collection::vec(0i64..=60, 1..=4), xs in prop::collection::vec(-100i64..100, 4)) {
        let g = FgAbelianGroup::new(orders.clone()).unwrap();
        let form = canonical_primary_form(&g).unwrap();
        let x: Vec<BigInt> = g.reduce(&xs.iter().take(orders.len()).map(|&v| BigInt::from(v)).collect::<Vec<_>>());
        prop_assert_eq!(g.reduce(&form.from_primary(&form.to_primary(&x))), x);
        prop_assert_eq!(form.group().order(), g.order());
    }

    #[test]
    fn strategies_agree_with_oracle((hom, b) in finite_problem()) {
        let b = hom.target().element(&b).unwrap();
        let o = brute_force_solve(&hom, &b, EnumerationBudget::default()).unwrap();
        for st in [Method::Snf, Method::SnfHybrid, Method::Block, Method::Hensel, Method::Auto] {
            let s = solve(&hom, &b, st).unwrap();
            prop_assert!(solutions_agree(&hom, &b, &o.solution, &s).unwrap(), "{} on {:?}", st, hom);
        }
    }

    #[test]
    fn solution_set_is_a_coset((hom, b) in finite_problem(), shift in prop::collection::vec(0i64..50, 3)) {
        // b + φ(y) is solvable with a particular differing by y modulo the kernel
        let y: Vec<BigInt> = shift.iter().take(hom.source().rank()).map(|&v| BigInt::from(v)).collect();
        let y = hom.source().element(&y).unwrap();
        let b = hom.target().element(&b).unwrap();
        let b2 = &b + &hom.apply(&y).unwrap();
        let s1 = solve(&hom, &b, Method::Auto).unwrap();
        let s2 = solve(&hom, &b2, Method::Auto).unwrap();
        prop_assert_eq!(s1.is_solvable(), s2.is_solvable());
        if let (Some(x1), Some(x2)) = (s1.particular(), s2.particular()) {
            let diff = x2 - &(x1 + &y);
            prop_assert!(abelsolve::snf::subgroup_contains(hom.source(), s1.kernel(), &diff).unwrap());
        }
        prop_assert!(s1.verifies(&hom, &b) && s2.verifies(&hom, &b2));
    }
}
