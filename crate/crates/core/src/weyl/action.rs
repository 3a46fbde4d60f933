//! Action of Weyl operators on `g * f^e` for a polynomial `f` and an exponent
//! that is an integer or a parameter.

use std::collections::HashMap;

use super::WeylElement;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Integer(i64),
    /// The parameter with this index in the Weyl context.
    Symbolic(usize),
}

/// `numerator * f^(e - drop)`, with the numerator in `Q[x, params]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAction {
    pub numerator: Polynomial,
    pub drop: u32,
}

impl PowerAction {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

/// Applies `p` to `g * f^(e - drop)`. The result always has exponent drop
/// `drop + order(p)`, so composing actions matches multiplying operators.
pub fn apply_operator(p: &WeylElement, f: &Polynomial, e: &Exponent, g: &PowerAction) -> Result<PowerAction> {
    let ctx = p.context();
    if ctx.dt_index().map_or(false, |dt| p.terms().any(|(m, _)| m[dt] > 0)) {
        return Err(Error::Invalid("cannot apply an operator involving dt".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = ctx.coefficient_ring();
    let n = ctx.n();
    let f = embed_into(f, ring)?;
    let g0 = embed_into(&g.numerator, ring)?;
    let expo = match e {
        Exponent::Integer(k) => Polynomial::constant(ring, Rational::from_integer((*k).into())),
        Exponent::Symbolic(j) => {
            if *j >= ctx.params().len() {
                return Err(Error::Invalid("exponent parameter out of range".into()));
            }
            Polynomial::var(ring, n + j)
        }
    };
    let grads: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
    let order = p.order().unwrap_or(0);

    // derivs[b] = numerator of ∂^b (g f^(e-drop)) with drop + |b|.
    let mut derivs: HashMap<Vec<u32>, Polynomial> = HashMap::new();
    derivs.insert(vec![0; n], g0.clone());
    fn derive(
        b: &[u32],
        derivs: &mut HashMap<Vec<u32>, Polynomial>,
        f: &Polynomial,
        grads: &[Polynomial],
        expo: &Polynomial,
        base_drop: u32,
    ) -> Polynomial {
        if let Some(h) = derivs.get(b) {
            return h.clone();
        }
        let i = b.iter().position(|&x| x > 0).unwrap();
        let mut prev = b.to_vec();
        prev[i] -= 1;
        let h = derive(&prev, derivs, f, grads, expo, base_drop);
        let cur_drop: u32 = base_drop + prev.iter().sum::<u32>();
        // ∂_i(h f^(e-d)) = (∂_i h * f + (e - d) h ∂_i f) f^(e-d-1)
        let shift = expo - &Polynomial::constant(f.ring(), Rational::from_integer(cur_drop.into()));
        let out = &(&h.derivative(i) * f) + &(&(&shift * &h) * &grads[i]);
        derivs.insert(b.to_vec(), out.clone());
        out
    }

    let mut fpow: Vec<Polynomial> = vec![Polynomial::one(ring)];
    for k in 1..=order as usize {
        let next = &fpow[k - 1] * &f;
        fpow.push(next);
    }
    let mut total = Polynomial::zero(ring);
    for (m, c) in p.terms() {
        let b = &m[n..2 * n];
        let h = derive(b, &mut derivs, &f, &grads, &expo, g.drop);
        let ob: u32 = b.iter().sum();
        let mut mult = vec![0u32; ring.len()];
        mult[..n].copy_from_slice(&m[..n]);
        for j in 0..ctx.params().len() {
            mult[n + j] = m[ctx.param_index(j)];
        }
        let term = (&h * &fpow[(order - ob) as usize]).mul_monomial(&Monomial::new(mult), c);
        total = &total + &term;
    }
    Ok(PowerAction { numerator: total, drop: g.drop + order })
}

/// `p` applied to `f^e`.
pub fn apply_to_rational_power(p: &WeylElement, f: &Polynomial, e: &Exponent) -> Result<PowerAction> {
    let ring = p.context().coefficient_ring();
    apply_operator(p, f, e, &PowerAction { numerator: Polynomial::one(ring), drop: 0 })
}

fn embed_into(p: &Polynomial, ring: &crate::poly::VariableContext) -> Result<Polynomial> {
    if p.ring() == ring {
        return Ok(p.clone());
    }
    let map: Vec<usize> = p
        .ring()
        .names()
        .iter()
        .map(|name| ring.index_of(name).ok_or_else(|| Error::RingMismatch(format!("`{name}` is not a coefficient variable"))))
        .collect::<Result<_>>()?;
    Ok(p.remap(ring, &map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VariableContext;
    use crate::weyl::WeylContext;

    #[test]
    fn inverse_of_x() {
        let vars = VariableContext::new(&["x"]).unwrap();
        let c = WeylContext::new(&vars).unwrap();
        let p = WeylElement::parse("x*dx + 1", &c).unwrap();
        let f = Polynomial::parse("x", &vars).unwrap();
        assert!(apply_to_rational_power(&p, &f, &Exponent::Integer(-1)).unwrap().is_zero());
    }

    #[test]
    fn cusp_symbolic() {
        let vars = VariableContext::new(&["x", "y"]).unwrap();
        let c = WeylContext::with_params(&vars, &["s"]).unwrap();
        let f = Polynomial::parse("x^2 - y^3", &vars).unwrap();
        let ring = c.coefficient_ring();
        let r = apply_to_rational_power(&WeylElement::parse("dx", &c).unwrap(), &f, &Exponent::Symbolic(0)).unwrap();
        assert_eq!(r.drop, 1);
        assert_eq!(r.numerator, Polynomial::parse("2*s*x", ring).unwrap());
        let euler = WeylElement::parse("3*x*dx + 2*y*dy", &c).unwrap();
        let r = apply_to_rational_power(&euler, &f, &Exponent::Symbolic(0)).unwrap();
        assert_eq!(r.numerator, Polynomial::parse("6*s*(x^2 - y^3)", ring).unwrap());
        let ann = WeylElement::parse("3*x*dx + 2*y*dy - 6*s", &c).unwrap();
        assert!(apply_to_rational_power(&ann, &f, &Exponent::Symbolic(0)).unwrap().is_zero());
    }

    #[test]
    fn module_action() {
        let vars = VariableContext::new(&["x", "y"]).unwrap();
        let c = WeylContext::with_params(&vars, &["s"]).unwrap();
        let f = Polynomial::parse("x^2 - y^3 + x*y", &vars).unwrap();
        let p = WeylElement::parse("x*dy^2 + s*dx", &c).unwrap();
        let q = WeylElement::parse("y*dx*dy - 2", &c).unwrap();
        let e = Exponent::Symbolic(0);
        let direct = apply_to_rational_power(&(&p * &q), &f, &e).unwrap();
        let nested = apply_operator(&p, &f, &e, &apply_to_rational_power(&q, &f, &e).unwrap()).unwrap();
        assert_eq!(direct, nested);
    }
}
