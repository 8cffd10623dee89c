use downup::algebra::{Algebra, AlgebraParams, PBWElement};
use downup::classify::{compute_s, distinctive_reduce, holds, is_distinctive, verify_minimal, RelationGroup, SOptions};
use downup::cli::{parse_element, Expr};
use downup::modules::{universal_weight_window, Weight};
use downup::poly::{BiPoly, UniPoly};
use downup::scalar::{k, kq, CyclotomicScalar, OrderValue};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: [u32; 6] = [1, 3, 4, 5, 8, 12];

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar_in(n: u32) -> impl Strategy<Value = CyclotomicScalar> {
    prop::collection::vec(small_rational(), 1..=4).prop_map(move |cs| {
        cs.into_iter().enumerate().fold(CyclotomicScalar::zero(), |acc, (i, c)| {
            &acc + &CyclotomicScalar::zeta_pow(n, i as i64).scale_rational(&c)
        })
    })
}

fn scalar() -> impl Strategy<Value = CyclotomicScalar> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(scalar_in)
}

fn params() -> impl Strategy<Value = AlgebraParams> {
    let z = |n, e| CyclotomicScalar::zeta_pow(n, e);
    let nonzero = prop::sample::select(vec![k(1), k(-1), k(2), kq(1, 3), kq(-3, 2), z(3, 1), z(4, 1), z(12, 5)]);
    let coeff = prop::sample::select(vec![k(0), k(1), k(-2), kq(1, 2), z(3, 2), z(4, 3)]);
    (nonzero.clone(), nonzero, coeff.clone(), prop::collection::vec(coeff, 0..=3))
        .prop_map(|(r, s, g, phi)| AlgebraParams::new(UniPoly::from_coeffs(phi), r, s, g, 12).unwrap())
}

fn element(max_deg: u32) -> impl Strategy<Value = PBWElement> {
    let coeff = prop::sample::select(vec![k(1), k(-1), k(3), kq(1, 2), CyclotomicScalar::zeta(3)]);
    prop::collection::vec((0..=max_deg, 0..=max_deg, 0..=max_deg, coeff), 0..=3).prop_map(move |ts| {
        let mut x = PBWElement::zero();
        for (i, j, kk, c) in ts {
            if i + j + kk <= max_deg {
                x.add_term(i, j, kk, c);
            }
        }
        x
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::U),
        Just(Expr::D),
        Just(Expr::H),
        Just(Expr::BigH),
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Num(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        (1u32..13).prop_map(Expr::Zeta),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws((a, b) in prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (scalar_in(n), scalar_in(n)))) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).try_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn lift_then_descend(a in scalar(), mult in 1u32..4) {
        let m = a.conductor() * mult;
        prop_assert_eq!(a.lift(m).descend(a.conductor()).unwrap(), a);
    }

    #[test]
    fn order_of_powers(n in prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 10, 12]), e in 0i64..24) {
        let z = CyclotomicScalar::zeta_pow(n, e);
        let OrderValue::Finite(o) = z.order().unwrap() else { panic!("root of unity") };
        for kk in 1..=o {
            prop_assert_eq!(z.powu(kk).order().unwrap(), OrderValue::Finite(o / o.gcd(&kk)));
        }
    }

    #[test]
    fn parse_print_round_trip(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_element(&printed).unwrap(), e);
    }

    #[test]
    fn associativity(p in params(), x in element(2), y in element(2), z in element(2)) {
        let a = Algebra::new(p);
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }

    #[test]
    fn homogeneous_components(p in params(), x in element(3)) {
        let a = Algebra::new(p);
        let parts = x.homogeneous_decomposition();
        prop_assert_eq!(parts.len(), x.length());
        let mut sum = PBWElement::zero();
        for (g, c) in &parts {
            prop_assert_eq!(c.homogeneous_degree(), Some(*g));
            let gf = a.to_graded_form(c).unwrap();
            prop_assert_eq!(&a.from_graded_form(&gf), c);
            sum = &sum + c;
        }
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn relation_group_of_rational_powers(base in 2i64..6, i in -4i64..5, j in -4i64..5) {
        prop_assume!(i != 0 && j != 0);
        let b = k(base);
        let (r, s) = (b.pow(i).unwrap(), b.pow(j).unwrap());
        let res = compute_s(&r, &s, &SOptions::default()).unwrap();
        let (n, m) = res.group.generator().unwrap();
        prop_assert!(holds(&r, &s, n, m));
        prop_assert!(verify_minimal(&r, &s, &res.group));
        // r^j = s^i always, so (j, i) lies in S
        prop_assert!(res.group.contains(j, i));
    }

    #[test]
    fn distinctive_reduction(
        terms in prop::collection::vec((0u32..5, 0u32..5, -3i64..4), 1..6),
        gen in prop::sample::select(vec![
            RelationGroup::SameSign { n: 2, m: 1 },
            RelationGroup::SameSign { n: 3, m: 2 },
            RelationGroup::SameSign { n: 2, m: 0 },
            RelationGroup::OppositeSign { n: 1, m: 2 },
        ]),
    ) {
        let mut g = BiPoly::zero();
        for (i, j, c) in terms {
            g.add_term(i, j, k(c));
        }
        let out = distinctive_reduce(&g, &gen, &k(3)).unwrap();
        prop_assert!(is_distinctive(&out.exponents(), &gen));
    }

    #[test]
    fn universal_window_relations(p in params(), l in scalar_in(12), b in scalar_in(12)) {
        let m = universal_weight_window(&p, &Weight::new(l, b), (-6, 6));
        prop_assert!(m.relations_hold(), "{}", m.report(3));
    }
}
