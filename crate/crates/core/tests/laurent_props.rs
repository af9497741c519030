use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use ribbonpoly::{Poly, Poly64, Rational, VarSet};

fn xyz() -> VarSet {
    VarSet::las_vergnas()
}

prop_compose! {
    fn laurent()(terms in prop::collection::vec(
        (prop::array::uniform3(-3i32..=3), -5i64..=5), 0..6,
    )) -> Poly {
        Poly::from_terms(&xyz(), terms.into_iter().map(|(e, c)| (e.to_vec(), BigInt::from(c)))).unwrap()
    }
}

prop_compose! {
    /// A unit of the Laurent ring: a signed monomial.
    fn unit()(exps in prop::array::uniform3(-2i32..=2), neg in any::<bool>()) -> Poly {
        Poly::monomial(&xyz(), &exps, BigInt::from(if neg { -1 } else { 1 })).unwrap()
    }
}

prop_compose! {
    fn polynomial()(terms in prop::collection::vec(
        (prop::array::uniform3(0i32..=2), -4i64..=4), 0..4,
    )) -> Poly {
        Poly::from_terms(&xyz(), terms.into_iter().map(|(e, c)| (e.to_vec(), BigInt::from(c)))).unwrap()
    }
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(
        (1i64..=7, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| {
            Rational::new(BigInt::from(if neg { -n } else { n }), BigInt::from(d))
        }),
        3,
    )
}

fn substitution(subs: &[Poly; 3]) -> Vec<(&'static str, Poly)> {
    vec![
        ("x", subs[0].clone()),
        ("y", subs[1].clone()),
        ("z", subs[2].clone()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        let zero = Poly::zero(&xyz());
        let one = Poly::one(&xyz());
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
    }

    #[test]
    fn text_round_trip(a in laurent()) {
        let text = a.to_string();
        let back = Poly::parse(&text, &xyz()).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in laurent(), b in laurent(), subs in prop::array::uniform3(unit()),
    ) {
        let s = substitution(&subs);
        let v = xyz();
        let sa = a.substitute(&v, &s).unwrap();
        let sb = b.substitute(&v, &s).unwrap();
        prop_assert_eq!((&a + &b).substitute(&v, &s).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).substitute(&v, &s).unwrap(), &sa * &sb);
    }

    #[test]
    fn polynomial_substitution_is_a_homomorphism(
        a in polynomial(), b in polynomial(), subs in prop::array::uniform3(polynomial()),
    ) {
        let s = substitution(&subs);
        let v = xyz();
        let sa = a.substitute(&v, &s).unwrap();
        let sb = b.substitute(&v, &s).unwrap();
        prop_assert_eq!((&a * &b).substitute(&v, &s).unwrap(), &sa * &sb);
        prop_assert_eq!((&a - &b).substitute(&v, &s).unwrap(), &sa - &sb);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), p in point()) {
        let ea = a.evaluate(&p).unwrap();
        let eb = b.evaluate(&p).unwrap();
        prop_assert_eq!((&a * &b).evaluate(&p).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).evaluate(&p).unwrap(), &ea + &eb);
    }

    #[test]
    fn fixed_width_agrees_with_bignum(a in laurent(), b in laurent()) {
        let narrow = |p: &Poly| {
            Poly64::from_terms(
                &xyz(),
                p.terms().map(|(e, c)| (e.to_vec(), c.to_string().parse::<i64>().unwrap())),
            )
            .unwrap()
        };
        let prod = narrow(&a).checked_mul(&narrow(&b)).unwrap();
        prop_assert_eq!(prod.to_string(), (&a * &b).to_string());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in polynomial(), k in 0u32..4) {
        let v = xyz();
        let factor = (&Poly::var(&v, "y").unwrap() - &Poly::one(&v)).pow(k).unwrap();
        let prod = &a * &factor;
        prop_assert_eq!(prod.div_exact_var_minus_one("y", k).unwrap(), a);
    }
}

#[test]
fn coefficient_sum_is_evaluation_at_one() {
    let p = Poly::parse("(x+y^-1)^3*(z-2)", &xyz()).unwrap();
    let ones = vec![Rational::from_integer(BigInt::from(1)); 3];
    assert_eq!(
        Rational::from_integer(p.coefficient_sum().unwrap()),
        p.evaluate(&ones).unwrap()
    );
    assert!(!p.coefficient_sum().unwrap().is_zero());
}
