mod common;

use common::*;
use exactsum_core::arith::{factor_linear, int, rational_pow};
use exactsum_core::closed_form::{assemble, psi_closed};
use exactsum_core::numeric::polygamma_rational;
use exactsum_core::oracle::{partial_sum_bracket, quad_alternating_general, quad_general, quad_two_param};
use exactsum_core::{
    decompose, engine, Factor, FactorList, Polynomial, PrecisionPolicy, Rational, Sign, SumSpec,
    SymbolicValue,
};
use num_traits::Zero;
use proptest::prelude::*;

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

fn rational(max_den: i64, range: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den, -range * max_den..=range * max_den)
        .prop_map(|(d, n)| Rational::new(n.into(), d.into()))
}

fn shift(max_den: i64) -> impl Strategy<Value = Rational> {
    rational(max_den, 4).prop_filter("negative integer", |a| !(a.is_integer() && *a < int(0)))
}

fn factor_list(max_den: i64) -> impl Strategy<Value = FactorList> {
    proptest::collection::vec((shift(max_den), 1u32..=3), 1..=4)
        .prop_filter_map("duplicate shift", |fs| {
            FactorList::new(fs.into_iter().map(|(a, m)| Factor::new(a, m)).collect()).ok()
        })
}

fn sum_spec(sign: Sign) -> impl Strategy<Value = SumSpec> {
    let gap = if sign == Sign::Plain { 2 } else { 1 };
    factor_list(6)
        .prop_filter("degree", move |fl| fl.degree() >= gap)
        .prop_flat_map(move |fl| {
            let qdeg = fl.degree() - gap;
            (Just(fl), proptest::collection::vec(-5i64..=5, qdeg + 1))
        })
        .prop_map(move |(fl, q)| SumSpec::new(Polynomial::from_ints(&q), fl, sign).unwrap())
}

fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(rational(3, 5), 1..=max_deg + 1).prop_map(Polynomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn factoring_recovers_the_factors(fl in factor_list(6), lead in 1i64..=7) {
        let p = fl.expand().scale(&int(lead));
        prop_assert_eq!(factor_linear(&p).unwrap(), fl);
    }

    #[test]
    fn gcd_divides_both(a in poly(4), b in poly(4), c in poly(2)) {
        prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
        let (pa, pb) = (&a * &c, &b * &c);
        let g = Polynomial::gcd(&pa, &pb);
        prop_assert!(pa.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(pb.div_rem(&g).unwrap().1.is_zero());
        // c divides the gcd
        prop_assert!(g.div_rem(&c).unwrap().1.is_zero());
    }

    #[test]
    fn decomposition_recombines(s in sum_spec(Sign::Plain)) {
        let pf = decompose(&s).unwrap();
        prop_assert_eq!(pf.recombine(), s.rational_function());
    }

    #[test]
    fn simple_pole_coefficients_cancel(s in sum_spec(Sign::Plain)) {
        prop_assert!(decompose(&s).unwrap().simple_pole_sum().is_zero());
    }

    #[test]
    fn assemble_ignores_order(
        terms in proptest::collection::vec((rational(4, 3), 0u32..=3, shift(6)), 1..6),
        seed in any::<u64>(),
    ) {
        let terms: Vec<_> = terms.into_iter().filter(|(_, _, a)| !a.is_zero()).collect();
        let mut shuffled = terms.clone();
        let n = shuffled.len();
        if n > 1 {
            shuffled.rotate_left((seed as usize) % n);
            shuffled.swap(0, n - 1);
        }
        prop_assert_eq!(assemble(&terms).unwrap(), assemble(&shuffled).unwrap());
    }

    #[test]
    fn closed_form_matches_numeric(o in 0u32..=3, d in 1i64..=6, k in -18i64..36) {
        let a = Rational::new(k.into(), d.into());
        prop_assume!(!(a.is_integer() && a <= int(0)));
        let exact = psi_closed(o, &a).unwrap().to_numeric(&policy());
        let direct = polygamma_rational(o, &a, &policy()).unwrap();
        prop_assert!((&exact - &direct).abs() < policy().tolerance(3));
    }

    #[test]
    fn recurrence_is_exact(o in 0u32..=4, a in rational(6, 5)) {
        prop_assume!(!(a.is_integer() && a <= int(0)));
        let lhs = psi_closed(o, &(&a + int(1))).unwrap();
        let mut rhs = psi_closed(o, &a).unwrap();
        let sign = if o % 2 == 0 { 1 } else { -1 };
        let step = Rational::from_integer(exactsum_core::arith::factorial(o) * sign)
            / rational_pow(&a, o as i32 + 1);
        rhs.add_assign(&SymbolicValue::rational(step), &int(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn telescoping_both_orientations(den in 1i64..=4, num in 1i64..20, k in 1u32..=5) {
        let a = Rational::new(num.into(), den.into());
        let b = &a + int(k as i64);
        let r = engine::sum_plain(&engine::two_param_spec(&a, &b).unwrap(), &policy()).unwrap();
        prop_assert_eq!(&r.exact, &engine::telescope(&a, k).unwrap());
        // the same pair read from the larger shift: 1/((n+b)(n+b-k))
        prop_assert_eq!(engine::telescope(&(&b - int(k as i64)), k).unwrap(), r.exact);
    }

    #[test]
    fn exact_and_numeric_agree(s in sum_spec(Sign::Plain)) {
        let r = engine::sum_plain(&s, &policy()).unwrap();
        prop_assert!(r.coherence_gap(&policy()) < policy().tolerance(3));
        prop_assert_eq!(r.fully_reduced, r.exact.residuals().next().is_none());
    }

    #[test]
    fn alternating_exact_and_numeric_agree(s in sum_spec(Sign::Alternating)) {
        let r = engine::sum_alternating(&s, &policy()).unwrap();
        prop_assert!(r.coherence_gap(&policy()) < policy().tolerance(3));
    }

    #[test]
    fn bracket_holds_engine_value(s in sum_spec(Sign::Plain)) {
        let r = engine::sum_plain(&s, &policy()).unwrap();
        let b = partial_sum_bracket(&s, 2_000, &policy()).unwrap();
        prop_assert!(b.contains_within(&r.numeric, &policy().tolerance(0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn quadrature_matches_engine(s in sum_spec(Sign::Plain)) {
        prop_assume!(s.factors().iter().all(|f| f.shift > int(-1)));
        let r = engine::sum_plain(&s, &policy()).unwrap();
        let q = quad_general(&r.pf, &policy()).unwrap();
        prop_assert!(close(&q, &r.numeric, 1e-12), "{} vs {}", q, r.numeric);
    }

    #[test]
    fn substitution_equivalence(a in shift(4), b in shift(4)) {
        prop_assume!(a != b && a > int(-1) && b > int(-1));
        let s = engine::two_param_spec(&a, &b).unwrap();
        let t_domain = quad_two_param(&a, &b, &policy()).unwrap();
        let x_domain = quad_general(&decompose(&s).unwrap(), &policy()).unwrap();
        prop_assert!(close(&t_domain, &x_domain, 2e-15));
    }
}

/// The alternating reduction checked against quadrature at 50 digits, well
/// past the 1e-20 needed, and against a partial-sum bracket.
#[test]
fn alternating_reduction_grid() {
    let wide = PrecisionPolicy::new(50);
    for a in ["0", "1/2", "1", "3/2", "-1/4"] {
        for j in 1..=3u32 {
            let s = spec(Polynomial::one(), &[(r(a), j)], Sign::Alternating);
            let res = engine::sum_alternating(&s, &wide).unwrap();
            let q = quad_alternating_general(&res.pf, &wide).unwrap();
            assert!(close(&q, &res.numeric, 1e-20), "a = {a}, j = {j}");
            let b = partial_sum_bracket(&s, 10_000, &wide).unwrap();
            assert!(b.contains(&res.numeric), "a = {a}, j = {j}");
        }
    }
}

#[test]
fn alternating_basel() {
    let r = engine::sum_alternating(&alternating(&[("0", 2)]), &policy()).unwrap();
    assert_eq!(r.exact.render(), "(1/12)*pi^2");
}

#[test]
fn cotangent_family_beyond_minus_one() {
    // a = 5/3: the shift -5/3 is below -1, handled through the recurrence
    let a = r("5/3");
    let s = engine::two_param_spec(&a, &-&a).unwrap();
    let res = engine::sum_plain(&s, &policy()).unwrap();
    let w = policy().working_digits();
    let ab = bf(&a, w);
    let pi = lit(PI, w);
    let expected = &(&ab.recip() - &(&pi * &(&pi * &ab).cot())) / &ab.mul_pow2(1);
    assert!(close(&res.numeric, &expected, 1e-27));
    assert!(quad_general(&res.pf, &policy()).is_err());
    let b = partial_sum_bracket(&s, 10_000, &policy()).unwrap();
    assert!(b.contains(&res.numeric));
}

#[test]
fn zeta_reference_sanity() {
    let z2 = zeta_reference(2, 50);
    let pi = lit(PI, 50);
    assert!(close(&z2, &(&pi.square() / &exactsum_core::BigFloat::from_int(6, 50)), 1e-45));
}
