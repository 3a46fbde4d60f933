//! Annihilators of `f^s` and `1/f`, the order-one candidate ideal, and the
//! search for operators separating the two.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg;
use crate::logder::LogDerivationBasis;
use crate::poly::{homogeneity_lattice, Polynomial, Rational, TermOrder, VariableContext};
use crate::weyl::{apply_to_rational_power, Exponent, LeftIdeal, WeylContext, WeylElement};

/// Name for the symbolic exponent that does not clash with the variables.
pub fn parameter_name(vars: &VariableContext) -> String {
    let mut name = "s".to_string();
    while vars.index_of(&name).is_some() || vars.names().iter().any(|v| format!("d{v}") == name) {
        name.push('_');
    }
    name
}

/// `⟨δ_1 + α_1, ..., δ_n + α_n⟩`; every generator is checked to kill `1/f`.
pub fn order_one_annihilator(f: &Polynomial, basis: &LogDerivationBasis) -> Result<LeftIdeal> {
    let ctx = WeylContext::new(f.ring())?;
    let mut gens = Vec::with_capacity(basis.n());
    for d in &basis.derivations {
        let op = &d.to_weyl(&ctx)? + &WeylElement::from_polynomial(&ctx, &d.cofactor)?;
        if !apply_to_rational_power(&op, f, &Exponent::Integer(-1))?.is_zero() {
            return Err(Error::Certificate(format!("{op} does not annihilate 1/f")));
        }
        gens.push(op);
    }
    LeftIdeal::new(&ctx, gens)
}

/// Generators of `Ann(f^s)` in `A_n[s]`.
///
/// Uses `⟨s + f ∂t, ∂_i + f_i ∂t⟩` in the algebra with `∂t s = (s - 1) ∂t`
/// and eliminates `∂t`. Each generator is checked to annihilate `f^s`.
pub fn annihilator_fs(f: &Polynomial, budget: &Budget) -> Result<LeftIdeal> {
    if f.is_constant() {
        return Err(Error::Invalid("annihilator of a constant".into()));
    }
    let vars = f.ring();
    let s = parameter_name(vars);
    let shifted = WeylContext::with_shift(vars, &[s.as_str()], 0)?;
    let target = WeylContext::with_params(vars, &[s.as_str()])?;
    let dt = WeylElement::dt(&shifted);
    let mut gens = vec![&WeylElement::param(&shifted, 0) + &(&WeylElement::from_polynomial(&shifted, f)? * &dt)];
    for i in 0..f.nvars() {
        let fi = WeylElement::from_polynomial(&shifted, &f.derivative(i))?;
        gens.push(&WeylElement::d(&shifted, i) + &(&fi * &dt));
    }
    let ideal = LeftIdeal::new(&shifted, gens)?;
    let elim = ideal.eliminate(&[shifted.dt_index().unwrap()], budget)?;
    let mut out = Vec::new();
    for g in elim.generators() {
        let g = g.embed(&target)?;
        if !apply_to_rational_power(&g, f, &Exponent::Symbolic(0))?.is_zero() {
            return Err(Error::Certificate(format!("{g} does not annihilate f^s")));
        }
        out.push(g);
    }
    LeftIdeal::new(&target, out)
}

/// `Ann(f^s)` specialized at `s = -1`; valid when the b-function has no
/// integer root below `-1`. Every generator is checked against `1/f`.
pub fn specialize_at_minus_one(f: &Polynomial, ann_fs: &LeftIdeal) -> Result<LeftIdeal> {
    let ctx = WeylContext::new(f.ring())?;
    let minus_one = -Rational::from_integer(1.into());
    let mut gens: Vec<WeylElement> = Vec::new();
    for g in ann_fs.generators() {
        let h = g.specialize(&[minus_one.clone()], &ctx)?;
        if h.is_zero() || gens.contains(&h) {
            continue;
        }
        if !apply_to_rational_power(&h, f, &Exponent::Integer(-1))?.is_zero() {
            return Err(Error::Certificate(format!("{h} does not annihilate 1/f")));
        }
        gens.push(h);
    }
    LeftIdeal::new(&ctx, gens)
}

/// An operator that kills `1/f` but does not lie in the candidate ideal.
#[derive(Clone, Debug)]
pub struct Witness {
    pub operator: WeylElement,
    /// Its nonzero normal form modulo the candidate's degrevlex Groebner basis.
    pub normal_form: WeylElement,
}

impl Witness {
    /// Re-checks both properties.
    pub fn verify(&self, f: &Polynomial, candidate: &LeftIdeal, budget: &Budget) -> Result<bool> {
        let kills = apply_to_rational_power(&self.operator, f, &Exponent::Integer(-1))?.is_zero();
        let nf = candidate.normal_form(&self.operator, &TermOrder::DegRevLex, budget)?;
        Ok(kills && !nf.is_zero() && nf == self.normal_form)
    }
}

/// Relation between the candidate ideal and `Ann(1/f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equality {
    Equal,
    Proper,
    Unknown,
}

/// Two-way membership between the candidate and the full annihilator.
/// Returns the relation and, for proper containment, a witness.
pub fn compare_annihilators(
    candidate: &LeftIdeal,
    full: &LeftIdeal,
    budget: &Budget,
) -> Result<(Equality, Option<Witness>)> {
    let missing = full.non_members(candidate, budget)?;
    if !missing.is_empty() {
        return Err(Error::Certificate(format!("candidate generator {} is not in Ann(1/f)", missing[0].0)));
    }
    let extra = candidate.non_members(full, budget)?;
    match extra.into_iter().next() {
        None => Ok((Equality::Equal, None)),
        Some((operator, normal_form)) => Ok((Equality::Proper, Some(Witness { operator, normal_form }))),
    }
}

/// Searches operators of order `<= max_order` and coefficient degree
/// `<= max_degree` annihilating `1/f` for one outside `candidate`.
///
/// Operators are grouped by their weight under the homogeneity lattice of
/// `f`; `Ann(1/f)` is graded, so each class is solved separately.
pub fn search_witness(
    f: &Polynomial,
    candidate: &LeftIdeal,
    max_order: u32,
    max_degree: u32,
    budget: &Budget,
) -> Result<Option<Witness>> {
    let ctx = candidate.context().clone();
    let n = f.nvars();
    let lattice = homogeneity_lattice(f)?;
    let ord = TermOrder::DegRevLex;
    let gb = candidate.left_groebner(&ord, budget)?;
    for k in 1..=max_order {
        for dmax in 0..=max_degree {
            // Monomials x^a ∂^b with |b| <= k, |a| <= dmax.
            let mut classes: BTreeMap<Vec<Rational>, Vec<Vec<u32>>> = BTreeMap::new();
            for b in exponent_vectors(n, k) {
                for a in exponent_vectors(n, dmax) {
                    let b = b.clone();
                    let weight: Vec<Rational> = lattice
                        .iter()
                        .map(|w| {
                            (0..n)
                                .map(|i| &w[i] * Rational::from_integer((a[i] as i64 - b[i] as i64).into()))
                                .sum()
                        })
                        .collect();
                    let mut exps = a.clone();
                    exps.extend(b);
                    classes.entry(weight).or_default().push(exps);
                }
            }
            for monos in classes.values() {
                budget.tick_n(monos.len() as u64)?;
                if let Some(w) = solve_class(f, &ctx, monos, k, &gb, &ord, budget)? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

fn solve_class(
    f: &Polynomial,
    ctx: &WeylContext,
    monos: &[Vec<u32>],
    order: u32,
    gb: &[WeylElement],
    ord: &TermOrder,
    budget: &Budget,
) -> Result<Option<Witness>> {
    // Column j: numerator of x^a ∂^b (1/f) brought to the common drop `order`.
    let mut fpow = vec![Polynomial::one(ctx.coefficient_ring())];
    let fe = f.embed(ctx.coefficient_ring());
    for i in 1..=order as usize {
        let next = &fpow[i - 1] * &fe;
        fpow.push(next);
    }
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(monos.len());
    for m in monos {
        let op = WeylElement::from_terms(ctx, [(m.clone(), Rational::from_integer(1.into()))]);
        let r = apply_to_rational_power(&op, f, &Exponent::Integer(-1))?;
        let num = &r.numerator * &fpow[(order - r.drop) as usize];
        let mut col = Vec::new();
        for (mono, c) in num.terms() {
            let next = index.len();
            let row = *index.entry(mono.exponents().to_vec()).or_insert(next);
            col.push((row, c.clone()));
        }
        columns.push(col);
    }
    // Transpose to equation rows.
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); index.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (r, c) in col {
            rows[r].push((j, c));
        }
    }
    let kernel = linalg::nullspace_sparse(rows, monos.len());
    for v in kernel {
        let op = WeylElement::from_terms(
            ctx,
            monos.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c)),
        );
        let nf = crate::weyl::left_normal_form(&op, gb, ord, budget)?;
        if !nf.is_zero() {
            return Ok(Some(Witness { operator: op, normal_form: nf }));
        }
    }
    Ok(None)
}

/// All exponent vectors of length `n` with entries summing to at most `d`.
fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}
