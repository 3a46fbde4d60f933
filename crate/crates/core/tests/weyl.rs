mod common;

use common::{ring, weyl};
use logdiv_core::weyl::{apply_operator, apply_to_rational_power, Exponent, LeftIdeal, WeylContext, WeylElement};
use logdiv_core::{Budget, Polynomial};
use proptest::prelude::*;

fn ctx() -> WeylContext {
    WeylContext::new(&ring(2)).unwrap()
}

#[test]
fn generator_relations() {
    let c = ctx();
    for i in 0..2 {
        for j in 0..2 {
            let dx = WeylElement::d(&c, i).commutator(&WeylElement::x(&c, j)).unwrap();
            assert_eq!(dx, if i == j { WeylElement::one(&c) } else { WeylElement::zero(&c) });
            assert!(WeylElement::x(&c, i).commutator(&WeylElement::x(&c, j)).unwrap().is_zero());
            assert!(WeylElement::d(&c, i).commutator(&WeylElement::d(&c, j)).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associativity(a in weyl(ctx(), 3, 3, 3), b in weyl(ctx(), 3, 3, 3), c in weyl(ctx(), 3, 3, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn order_and_symbol_are_multiplicative(a in weyl(ctx(), 3, 3, 3), b in weyl(ctx(), 3, 3, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = &a * &b;
        prop_assert_eq!(ab.order().unwrap(), a.order().unwrap() + b.order().unwrap());
        prop_assert_eq!(ab.principal_symbol().unwrap(), &a.principal_symbol().unwrap() * &b.principal_symbol().unwrap());
        let br = a.commutator(&b).unwrap();
        if let Some(o) = br.order() {
            prop_assert!(o + 1 <= a.order().unwrap() + b.order().unwrap());
        }
    }

    #[test]
    fn product_acts_as_composition(a in weyl(ctx(), 2, 2, 2), b in weyl(ctx(), 2, 2, 2), k in -2i64..=2) {
        let f = Polynomial::parse("x1^2 + x1*x2 + 1", &ring(2)).unwrap();
        let e = Exponent::Integer(k);
        let ab = apply_to_rational_power(&(&a * &b), &f, &e).unwrap();
        let comp = apply_operator(&a, &f, &e, &apply_to_rational_power(&b, &f, &e).unwrap()).unwrap();
        prop_assert_eq!(&ab.numerator * &f.pow(comp.drop), &comp.numerator * &f.pow(ab.drop));
    }

    #[test]
    fn left_ideal_contains_left_multiples(g in weyl(ctx(), 2, 1, 1), h in weyl(ctx(), 2, 2, 2)) {
        prop_assume!(!g.is_zero());
        let c = ctx();
        let ideal = LeftIdeal::new(&c, vec![g.clone(), WeylElement::d(&c, 0)]).unwrap();
        prop_assert!(ideal.contains(&(&h * &g), &Budget::unlimited()).unwrap());
    }
}

#[test]
fn euler_operator_kills_inverse() {
    let c = ctx();
    let p = WeylElement::parse("x1*dx1 + 1", &c).unwrap();
    let f = Polynomial::parse("x1", &ring(2)).unwrap();
    assert!(apply_to_rational_power(&p, &f, &Exponent::Integer(-1)).unwrap().is_zero());
    assert!(!apply_to_rational_power(&p, &f, &Exponent::Integer(1)).unwrap().is_zero());
    assert_eq!(WeylElement::parse("dx1*x1", &c).unwrap(), p);
}
