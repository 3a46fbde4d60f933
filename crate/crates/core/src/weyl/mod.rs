//! The rational Weyl algebra `A_n` with optional commuting parameters.
//!
//! Elements are stored in normal order: every monomial is
//! `x^a s^c ∂^b ∂t^e`, where `s` ranges over the parameters and `∂t` is an
//! optional extra operator satisfying `∂t s = (s - 1) ∂t` for one chosen
//! parameter `s`. That last relation is what the Briançon-Maisonobe
//! annihilator computation needs; everything else is central.
//!
//! Exponent vectors are laid out as `[x_1..x_n, ∂_1..∂_n, params.., ∂t]`.

mod action;
mod ideal;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::parse::{self, ExprAlgebra};
use crate::poly::{polynomial_write_terms, Monomial, Polynomial, Rational, TermOrder, VariableContext};

pub use action::{apply_operator, apply_to_rational_power, Exponent, PowerAction};
pub use ideal::{is_left_groebner_basis, left_groebner_basis, left_normal_form, LeftIdeal};

#[derive(PartialEq, Eq, Debug)]
struct ContextInner {
    vars: VariableContext,
    params: Vec<String>,
    shift: Option<usize>,
    /// Coefficient ring `Q[x, params]` used for operator actions.
    coeff_ring: VariableContext,
    /// `Q[x, xi, params]` for principal symbols.
    symbol_ring: VariableContext,
    display: Vec<String>,
}

/// Describes a Weyl algebra: position variables, parameters and the optional
/// shift operator.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylContext(Arc<ContextInner>);

impl fmt::Debug for WeylContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{:?}", self.0.display)
    }
}

impl WeylContext {
    pub fn new(vars: &VariableContext) -> Result<Self> {
        Self::build(vars, &[] as &[&str], None)
    }

    pub fn with_params<S: AsRef<str>>(vars: &VariableContext, params: &[S]) -> Result<Self> {
        Self::build(vars, params, None)
    }

    /// Adds the operator `dt` with `dt * params[shift] = (params[shift] - 1) * dt`.
    pub fn with_shift<S: AsRef<str>>(vars: &VariableContext, params: &[S], shift: usize) -> Result<Self> {
        if shift >= params.len() {
            return Err(Error::Invalid("shift parameter out of range".into()));
        }
        Self::build(vars, params, Some(shift))
    }

    fn build<S: AsRef<str>>(vars: &VariableContext, params: &[S], shift: Option<usize>) -> Result<Self> {
        let params: Vec<String> = params.iter().map(|p| p.as_ref().to_string()).collect();
        let n = vars.len();
        let mut display: Vec<String> = vars.names().to_vec();
        display.extend(vars.names().iter().map(|v| format!("d{v}")));
        display.extend(params.iter().cloned());
        if shift.is_some() {
            display.push("dt".into());
        }
        // Rejects clashes such as a variable literally named `dx`.
        VariableContext::new(&display)?;
        let coeff_ring = vars.extend(&params)?;
        let xi: Vec<String> = (1..=n).map(|i| format!("xi{i}")).collect();
        let mut sym_names: Vec<String> = vars.names().to_vec();
        sym_names.extend(xi);
        sym_names.extend(params.iter().cloned());
        let symbol_ring = VariableContext::new(&sym_names)?;
        Ok(WeylContext(Arc::new(ContextInner { vars: vars.clone(), params, shift, coeff_ring, symbol_ring, display })))
    }

    pub fn vars(&self) -> &VariableContext {
        &self.0.vars
    }

    /// Number of position variables.
    pub fn n(&self) -> usize {
        self.0.vars.len()
    }

    pub fn params(&self) -> &[String] {
        &self.0.params
    }

    pub fn has_shift(&self) -> bool {
        self.0.shift.is_some()
    }

    /// Length of exponent vectors.
    pub fn len(&self) -> usize {
        2 * self.n() + self.0.params.len() + usize::from(self.has_shift())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x_index(&self, i: usize) -> usize {
        i
    }

    pub fn d_index(&self, i: usize) -> usize {
        self.n() + i
    }

    pub fn param_index(&self, j: usize) -> usize {
        2 * self.n() + j
    }

    pub fn dt_index(&self) -> Option<usize> {
        self.0.shift.map(|_| self.len() - 1)
    }

    pub fn param_by_name(&self, name: &str) -> Option<usize> {
        self.0.params.iter().position(|p| p == name)
    }

    pub fn coefficient_ring(&self) -> &VariableContext {
        &self.0.coeff_ring
    }

    pub fn symbol_ring(&self) -> &VariableContext {
        &self.0.symbol_ring
    }

    /// Display names of the exponent slots.
    pub fn slot_names(&self) -> &[String] {
        &self.0.display
    }

    /// Exponent slots of `x_i` and `∂_i` for the listed variables.
    pub fn pair_slots(&self, vars: &[usize]) -> Vec<usize> {
        vars.iter().flat_map(|&i| [self.x_index(i), self.d_index(i)]).collect()
    }

    /// Slots belonging to a valid elimination block: `x_i` appears exactly
    /// when `∂_i` does. Parameters and `dt` may appear alone.
    pub fn validate_block(&self, block: &[usize]) -> Result<()> {
        let n = self.n();
        for &b in block {
            if b >= self.len() {
                return Err(Error::InvalidBlock(format!("slot {b} out of range")));
            }
            if b < 2 * n {
                let partner = if b < n { b + n } else { b - n };
                if !block.contains(&partner) {
                    return Err(Error::InvalidBlock(format!(
                        "`{}` eliminated without `{}`",
                        self.0.display[b], self.0.display[partner]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Products of two normally ordered monomials.
    pub(crate) fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Vec<(Vec<u32>, Rational)> {
        let n = self.n();
        let len = self.len();
        let mut base = vec![0u32; len];
        for i in 0..len {
            base[i] = a[i] + b[i];
        }
        // Leibniz: ∂^p x^q = sum_k k! C(p,k) C(q,k) x^(q-k) ∂^(p-k).
        let mut factors: Vec<(usize, Vec<(u32, BigInt)>)> = Vec::new();
        for i in 0..n {
            let (p, q) = (a[n + i], b[i]);
            if p > 0 && q > 0 {
                let mut opts = Vec::new();
                let mut c = BigInt::one();
                for k in 0..=p.min(q) {
                    if k > 0 {
                        // c_k = c_{k-1} * (p-k+1)(q-k+1)/k
                        c = c * BigInt::from(p - k + 1) * BigInt::from(q - k + 1) / BigInt::from(k);
                    }
                    opts.push((k, c.clone()));
                }
                factors.push((i, opts));
            }
        }
        // ∂t^e s^c = (s - e)^c ∂t^e = sum_j C(c,j) (-e)^(c-j) s^j ∂t^e.
        let mut shift_opts: Option<(usize, Vec<(u32, BigInt)>)> = None;
        if let (Some(sh), Some(dt)) = (self.0.shift, self.dt_index()) {
            let slot = self.param_index(sh);
            let (e, c) = (a[dt], b[slot]);
            if e > 0 && c > 0 {
                let mut opts = Vec::new();
                let neg_e = -BigInt::from(e);
                for j in 0..=c {
                    let coef = binomial(c, j) * num_traits::pow(neg_e.clone(), (c - j) as usize);
                    opts.push((c - j, coef));
                }
                shift_opts = Some((slot, opts));
            }
        }
        let mut out: Vec<(Vec<u32>, BigInt)> = vec![(base, BigInt::one())];
        for (i, opts) in &factors {
            let mut next = Vec::with_capacity(out.len() * opts.len());
            for (e, c) in &out {
                for (k, ck) in opts {
                    let mut e2 = e.clone();
                    e2[*i] -= k;
                    e2[n + *i] -= k;
                    next.push((e2, c * ck));
                }
            }
            out = next;
        }
        if let Some((slot, opts)) = shift_opts {
            let mut next = Vec::with_capacity(out.len() * opts.len());
            for (e, c) in &out {
                for (drop, ck) in &opts {
                    let mut e2 = e.clone();
                    e2[slot] -= drop;
                    next.push((e2, c * ck));
                }
            }
            out = next;
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, Rational::from_integer(c))).collect()
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// A normally ordered element of a Weyl algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    ctx: WeylContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl WeylElement {
    pub fn zero(ctx: &WeylContext) -> Self {
        WeylElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &WeylContext, c: Rational) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(Monomial::one(ctx.len()), c);
        e
    }

    pub fn one(ctx: &WeylContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    fn slot(ctx: &WeylContext, slot: usize) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(Monomial::var(ctx.len(), slot), Rational::one());
        e
    }

    pub fn x(ctx: &WeylContext, i: usize) -> Self {
        Self::slot(ctx, ctx.x_index(i))
    }

    pub fn d(ctx: &WeylContext, i: usize) -> Self {
        Self::slot(ctx, ctx.d_index(i))
    }

    pub fn param(ctx: &WeylContext, j: usize) -> Self {
        Self::slot(ctx, ctx.param_index(j))
    }

    pub fn dt(ctx: &WeylContext) -> Self {
        Self::slot(ctx, ctx.dt_index().expect("context has no shift operator"))
    }

    /// Builds an element from normally ordered `(exponents, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(ctx: &WeylContext, terms: I) -> Self {
        let mut e = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.len(), ctx.len());
            e.add_term(Monomial::new(m), c);
        }
        e
    }

    /// A multiplication operator given by a polynomial in `x` and the
    /// parameters (over [`WeylContext::coefficient_ring`]) or in `x` alone.
    pub fn from_polynomial(ctx: &WeylContext, p: &Polynomial) -> Result<Self> {
        let ring = p.ring();
        let map: Vec<usize> = ring
            .names()
            .iter()
            .map(|name| {
                if let Some(i) = ctx.vars().index_of(name) {
                    Ok(ctx.x_index(i))
                } else if let Some(j) = ctx.param_by_name(name) {
                    Ok(ctx.param_index(j))
                } else {
                    Err(Error::RingMismatch(format!("`{name}` is not a variable of the Weyl algebra")))
                }
            })
            .collect::<Result<_>>()?;
        let mut e = Self::zero(ctx);
        for (m, c) in p.terms() {
            let mut exps = vec![0u32; ctx.len()];
            for (k, &x) in m.exponents().iter().enumerate() {
                exps[map[k]] += x;
            }
            e.add_term(Monomial::new(exps), c.clone());
        }
        Ok(e)
    }

    pub fn parse(text: &str, ctx: &WeylContext) -> Result<Self> {
        let e = parse::parse_expr(text)?;
        parse::evaluate(&e, &WeylElement::zero(ctx))
    }

    pub fn context(&self) -> &WeylContext {
        &self.ctx
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

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.exponents(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial::new(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        WeylElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn check_same_context(&self, other: &WeylElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)))
        }
    }

    pub fn try_mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same_context(other)?;
        let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for (m, k) in self.ctx.mul_monomials(a.exponents(), b.exponents()) {
                    *acc.entry(m).or_insert_with(Rational::zero) += &c * k;
                }
            }
        }
        Ok(WeylElement::from_terms(&self.ctx, acc))
    }

    /// `PQ - QP`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement> {
        Ok(&self.try_mul(other)? - &other.try_mul(self)?)
    }

    /// Total degree in `∂_1..∂_n` (the shift operator is not counted);
    /// `None` for zero.
    pub fn order(&self) -> Option<u32> {
        let n = self.ctx.n();
        self.terms.keys().map(|m| m.exponents()[n..2 * n].iter().sum()).max()
    }

    /// Top-order part with `∂_i` replaced by `xi_i`.
    pub fn principal_symbol(&self) -> Result<Polynomial> {
        let ord = self.order().ok_or(Error::ZeroPolynomial)?;
        if self.ctx.has_shift() && self.terms.keys().any(|m| m.exponents()[self.ctx.len() - 1] > 0) {
            return Err(Error::Invalid("principal symbol of an element involving dt".into()));
        }
        let n = self.ctx.n();
        let ring = self.ctx.symbol_ring();
        let mut p = Polynomial::zero(ring);
        for (m, c) in &self.terms {
            let e = m.exponents();
            if e[n..2 * n].iter().sum::<u32>() == ord {
                // Symbol ring layout [x, xi, params] matches [x, ∂, params].
                p.add_term(Monomial::new(e[..ring.len()].to_vec()), c.clone());
            }
        }
        Ok(p)
    }

    /// Leading term under `ord` on the full exponent vector.
    pub fn leading_term(&self, ord: &TermOrder) -> Option<(&[u32], &Rational)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0.exponents(), b.0.exponents())).map(|(m, c)| (m.exponents(), c))
    }

    /// Scales so the leading coefficient under `ord` is 1.
    pub fn monic(&self, ord: &TermOrder) -> WeylElement {
        match self.leading_term(ord) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Replaces the parameters by the given values and maps into `target`,
    /// which must have the same position variables and no parameters.
    pub fn specialize(&self, values: &[Rational], target: &WeylContext) -> Result<WeylElement> {
        let n = self.ctx.n();
        if values.len() != self.ctx.params().len() || target.vars() != self.ctx.vars() || !target.params().is_empty() {
            return Err(Error::RingMismatch("specialization target does not match".into()));
        }
        if let Some(dt) = self.ctx.dt_index() {
            if self.terms.keys().any(|m| m.exponents()[dt] > 0) {
                return Err(Error::Invalid("cannot specialize an element involving dt".into()));
            }
        }
        let mut out = WeylElement::zero(target);
        for (m, c) in &self.terms {
            let e = m.exponents();
            let mut coef = c.clone();
            for (j, v) in values.iter().enumerate() {
                coef *= num_traits::pow(v.clone(), e[self.ctx.param_index(j)] as usize);
            }
            out.add_term(Monomial::new(e[..2 * n].to_vec()), coef);
        }
        Ok(out)
    }

    /// Maps into another context by variable and parameter names. Slots
    /// missing from `target` (parameters, `dt`) must not occur.
    pub fn embed(&self, target: &WeylContext) -> Result<WeylElement> {
        let n = self.ctx.n();
        let mut map: Vec<Option<usize>> = vec![None; self.ctx.len()];
        for i in 0..n {
            if let Some(j) = target.vars().index_of(self.ctx.vars().name(i)) {
                map[self.ctx.x_index(i)] = Some(target.x_index(j));
                map[self.ctx.d_index(i)] = Some(target.d_index(j));
            }
        }
        for (k, p) in self.ctx.params().iter().enumerate() {
            map[self.ctx.param_index(k)] = target.param_by_name(p).map(|j| target.param_index(j));
        }
        if let Some(dt) = self.ctx.dt_index() {
            map[dt] = target.dt_index();
        }
        let mut out = WeylElement::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (k, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let slot = map[k].ok_or_else(|| {
                    Error::RingMismatch(format!("`{}` does not exist in the target algebra", self.ctx.slot_names()[k]))
                })?;
                e[slot] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    fn monomial_string(&self, exps: &[u32]) -> String {
        let names = self.ctx.slot_names();
        let n = self.ctx.n();
        // Normal order for display: x, params, ∂, dt.
        let mut idx: Vec<usize> = (0..n).collect();
        idx.extend(2 * n..2 * n + self.ctx.params().len());
        idx.extend(n..2 * n);
        if let Some(dt) = self.ctx.dt_index() {
            idx.push(dt);
        }
        let mut parts = Vec::new();
        for i in idx {
            match exps[i] {
                0 => {}
                1 => parts.push(names[i].clone()),
                e => parts.push(format!("{}^{e}", names[i])),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = TermOrder::DegRevLex;
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| ord.cmp(b.0.exponents(), a.0.exponents()));
        polynomial_write_terms(f, terms.into_iter().map(|(m, c)| (c.clone(), self.monomial_string(m.exponents()))))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> std::ops::Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &'a WeylElement) -> WeylElement {
        assert!(self.ctx == rhs.ctx, "context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &'a WeylElement) -> WeylElement {
        assert!(self.ctx == rhs.ctx, "context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &'a WeylElement) -> WeylElement {
        self.try_mul(rhs).expect("context mismatch")
    }
}

impl std::ops::Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Rational::one())
    }
}

impl ExprAlgebra for WeylElement {
    fn from_integer(&self, n: &BigInt) -> Self {
        WeylElement::constant(&self.ctx, Rational::from_integer(n.clone()))
    }
    fn ident(&self, name: &str, _pos: usize) -> Result<Self> {
        match self.ctx.slot_names().iter().position(|s| s == name) {
            Some(slot) => Ok(WeylElement::slot(&self.ctx, slot)),
            None => Err(Error::UnknownVariable(name.to_string())),
        }
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }
    fn scale(&self, c: &Rational) -> Self {
        WeylElement::scale(self, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ctx(names: &[&str]) -> WeylContext {
        WeylContext::new(&VariableContext::new(names).unwrap()).unwrap()
    }

    fn w(text: &str, c: &WeylContext) -> WeylElement {
        WeylElement::parse(text, c).unwrap()
    }

    #[test]
    fn basic_commutation() {
        let c = ctx(&["x"]);
        assert_eq!(w("dx*x", &c), w("x*dx + 1", &c));
        assert_eq!(w("(x*dx)*(x*dx)", &c), w("x^2*dx^2 + x*dx", &c));
        assert_eq!(&w("x*dx + 3", &c) * &WeylElement::one(&c), w("x*dx + 3", &c));
        assert_eq!(w("dx^2*x^2", &c), w("x^2*dx^2 + 4*x*dx + 2", &c));
    }

    #[test]
    fn generators_commute_as_expected() {
        let c = ctx(&["x", "y"]);
        let one = WeylElement::one(&c);
        let zero = WeylElement::zero(&c);
        for i in 0..2 {
            for j in 0..2 {
                let di = WeylElement::d(&c, i);
                let xj = WeylElement::x(&c, j);
                assert_eq!(di.commutator(&xj).unwrap(), if i == j { one.clone() } else { zero.clone() });
                assert!(WeylElement::x(&c, i).commutator(&xj).unwrap().is_zero());
                assert!(di.commutator(&WeylElement::d(&c, j)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn display_is_normally_ordered() {
        let c = ctx(&["x", "y"]);
        assert_eq!(w("dx*x", &c).to_string(), "x*dx + 1");
        assert_eq!(w("3*x*dx + 2*y*dy", &c).to_string(), "3*x*dx + 2*y*dy");
        assert!(WeylElement::parse("dz", &c).is_err());
    }

    #[test]
    fn symbols_and_order() {
        let c = ctx(&["x", "y"]);
        let p = w("x*dx*x + 1", &c);
        assert_eq!(p.order(), Some(1));
        assert_eq!(p.principal_symbol().unwrap().to_string(), "x^2*xi1");
        assert_eq!(w("dx*dy + x*dx", &c).principal_symbol().unwrap().to_string(), "xi1*xi2");
        assert_eq!(w("3*x*dx + 2*y*dy", &c).principal_symbol().unwrap().to_string(), "3*x*xi1 + 2*y*xi2");
        assert!(WeylElement::zero(&c).principal_symbol().is_err());
    }

    #[test]
    fn shift_relation() {
        let vars = VariableContext::new(&["x"]).unwrap();
        let c = WeylContext::with_shift(&vars, &["s"], 0).unwrap();
        assert_eq!(w("dt*s", &c), w("s*dt - dt", &c));
        assert_eq!(w("dt^2*s^2", &c), w("(s-2)^2*dt^2", &c));
        assert_eq!(w("s*x", &c), w("x*s", &c));
        assert_eq!(w("dt*x", &c), w("x*dt", &c));
    }

    #[test]
    fn specialize_and_embed() {
        let vars = VariableContext::new(&["x"]).unwrap();
        let cs = WeylContext::with_params(&vars, &["s"]).unwrap();
        let c = WeylContext::new(&vars).unwrap();
        let p = w("x*dx - s", &cs);
        assert_eq!(p.specialize(&[rat(-1)], &c).unwrap(), w("x*dx + 1", &c));
        assert_eq!(w("x*dx", &c).embed(&cs).unwrap(), w("x*dx", &cs));
    }

    #[test]
    fn name_clash_rejected() {
        assert!(WeylContext::new(&VariableContext::new(&["x", "dx"]).unwrap()).is_err());
    }
}
