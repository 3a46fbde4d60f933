#![allow(dead_code)]

use logdiv_core::poly::rat;
use logdiv_core::weyl::{WeylContext, WeylElement};
use logdiv_core::{Monomial, Polynomial, VariableContext};
use proptest::prelude::*;

/// Exponent vector with total degree at most `max_deg`.
pub fn exponents(n: usize, max_deg: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_deg, n).prop_map(move |mut e| {
        while e.iter().sum::<u32>() > max_deg {
            let i = e.iter().position(|&x| x > 0).unwrap();
            e[i] -= 1;
        }
        e
    })
}

pub fn polynomial(ring: VariableContext, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let n = ring.len();
    prop::collection::vec((exponents(n, max_deg), -5i64..=5), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(&ring, terms.into_iter().map(|(e, c)| (Monomial::new(e), rat(c)))))
}

pub fn nonzero_polynomial(ring: VariableContext, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    polynomial(ring, max_terms.max(1), max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Weyl element of degree at most `deg` in x and order at most `ord`.
pub fn weyl(ctx: WeylContext, max_terms: usize, deg: u32, ord: u32) -> impl Strategy<Value = WeylElement> {
    let n = ctx.n();
    prop::collection::vec((exponents(n, deg), exponents(n, ord), -4i64..=4), 1..=max_terms).prop_map(move |terms| {
        WeylElement::from_terms(
            &ctx,
            terms.into_iter().map(|(a, b, c)| {
                let mut e = a;
                e.extend(b);
                (e, rat(c))
            }),
        )
    })
}

pub fn ring(n: usize) -> VariableContext {
    VariableContext::numbered("x", n)
}
