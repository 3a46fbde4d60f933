use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, parse, Monomial, Rational, TermOrder, VariableContext};
use crate::error::{Error, Result};

/// A polynomial with rational coefficients over a fixed variable context.
///
/// Terms are stored sparsely with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: VariableContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &VariableContext) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &VariableContext) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &VariableContext, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn var(ring: &VariableContext, i: usize) -> Self {
        let mut p = Polynomial::zero(ring);
        p.terms.insert(Monomial::var(ring.len(), i), Rational::one());
        p
    }

    pub fn monomial(ring: &VariableContext, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ring.len());
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: &VariableContext, terms: I) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(text: &str, ring: &VariableContext) -> Result<Self> {
        parse::parse_polynomial(text, ring)
    }

    pub fn ring(&self) -> &VariableContext {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &TermOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0.exponents(), a.0.exponents()));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self, ord: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0.exponents(), b.0.exponents()))
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[var]).max()
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.len(), self.ring.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e > 0 {
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                out.add_term(Monomial::new(exps), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Replaces variable `var` by `value` (which must live in the same ring).
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, value.ring);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            out = &out + &powers[e].mul_monomial(&Monomial::new(exps), c);
        }
        out
    }

    /// Re-expresses the polynomial in `target`; variable `i` goes to `map[i]`.
    /// Variables that do not occur may be mapped anywhere.
    pub fn remap(&self, target: &VariableContext, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exps[map[i]] += e;
                }
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Embeds into a ring whose first variables coincide with this ring's.
    pub fn embed(&self, target: &VariableContext) -> Polynomial {
        let map: Vec<usize> = (0..self.nvars()).collect();
        self.remap(target, &map)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.ring, divisor.ring);
        if divisor.is_zero() {
            return None;
        }
        let ord = TermOrder::DegRevLex;
        let (dm, dc) = divisor.leading_term(&ord).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term(&ord).map(|(m, c)| (m.clone(), c.clone())) {
            let q = dm.quotient_of(&m)?;
            let qc = c / &dc;
            rem = &rem - &divisor.mul_monomial(&q, &qc);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Splits into `(content, primitive)` where the primitive part has coprime
    /// integer coefficients and a positive leading coefficient (degrevlex).
    pub fn primitive_part(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let n = (c * Rational::from_integer(den.clone())).to_integer();
            num = num.gcd(&n);
        }
        let mut content = Rational::new(num, den);
        let (_, lc) = self.leading_term(&TermOrder::DegRevLex).unwrap();
        if lc.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn monic(&self, ord: &TermOrder) -> Polynomial {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    pub fn is_homogeneous_linear(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 1)
    }

    pub fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring, other.ring)))
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names();
        let terms = self.sorted_terms(&TermOrder::DegRevLex);
        write_terms(f, terms.into_iter().map(|(m, c)| (c.clone(), monomial_string(m.exponents(), names))))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x1^2*x3`, empty for the unit monomial.
pub(crate) fn monomial_string(exps: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, name) in exps.iter().zip(names) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Writes `c1*m1 + c2*m2 - ...` in the order given.
pub(crate) fn write_terms<W: fmt::Write>(f: &mut W, terms: impl Iterator<Item = (Rational, String)>) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{}", fmt_rational(&abs))?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}*{mono}", fmt_rational(&abs))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ring2() -> VariableContext {
        VariableContext::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn exact_division() {
        let r = ring2();
        let f = Polynomial::parse("x^2 - y^2", &r).unwrap();
        let g = Polynomial::parse("x - y", &r).unwrap();
        assert_eq!(f.div_exact(&g).unwrap(), Polynomial::parse("x + y", &r).unwrap());
        assert!(f.div_exact(&Polynomial::parse("x + 2*y", &r).unwrap()).is_none());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let r = ring2();
        let f = Polynomial::parse("-1/2*x + 3/4*y", &r).unwrap();
        let (c, p) = f.primitive_part();
        assert_eq!(p.to_string(), "2*x - 3*y");
        assert_eq!(c, crate::poly::ratio(-1, 4));
    }

    #[test]
    fn display_format() {
        let r = ring2();
        let f = Polynomial::parse("y^3*(-1) + x^2 + 7/2", &r).unwrap();
        assert_eq!(f.to_string(), "-y^3 + x^2 + 7/2");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn substitution_and_derivative() {
        let r = ring2();
        let f = Polynomial::parse("x^2*y + y", &r).unwrap();
        assert_eq!(f.derivative(0).to_string(), "2*x*y");
        let g = f.substitute(1, &Polynomial::constant(&r, rat(2)));
        assert_eq!(g.to_string(), "2*x^2 + 2");
    }
}
