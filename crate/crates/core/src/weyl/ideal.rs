use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::{WeylContext, WeylElement};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::engine::{row_from_map, sort_row, Algebra, Engine, Row, Term};
use crate::poly::{Rational, TermOrder};

pub(crate) struct WeylAlgebra<'a>(pub &'a WeylContext);

impl Algebra for WeylAlgebra<'_> {
    fn is_commutative(&self) -> bool {
        false
    }

    fn mul_left(&self, exps: &[u32], coeff: &Rational, row: &[Term], ord: &TermOrder) -> Row {
        let mut acc: HashMap<(usize, Vec<u32>), Rational> = HashMap::with_capacity(row.len() * 2);
        for t in row {
            let c = coeff * &t.coeff;
            for (m, k) in self.0.mul_monomials(exps, &t.exps) {
                *acc.entry((t.comp, m)).or_insert_with(Rational::zero) += &c * k;
            }
        }
        row_from_map(acc, ord)
    }
}

pub(crate) fn element_to_row(p: &WeylElement, ord: &TermOrder) -> Row {
    let mut row: Row = p.terms().map(|(e, c)| Term { comp: 0, exps: e.to_vec(), coeff: c.clone() }).collect();
    sort_row(&mut row, ord);
    row
}

pub(crate) fn row_to_element(row: &[Term], ctx: &WeylContext) -> WeylElement {
    WeylElement::from_terms(ctx, row.iter().map(|t| (t.exps.clone(), t.coeff.clone())))
}

fn check_order(ctx: &WeylContext, ord: &TermOrder) -> Result<()> {
    ord.validate(ctx.len())?;
    if !ord.is_well_order() {
        return Err(Error::InvalidOrder("order is not compatible with the Weyl algebra".into()));
    }
    if let TermOrder::Elimination { block } = ord {
        ctx.validate_block(block)?;
    }
    Ok(())
}

/// Left Groebner basis (reduced, monic) of the left ideal generated by `gens`.
pub fn left_groebner_basis(ctx: &WeylContext, gens: &[WeylElement], ord: &TermOrder, budget: &Budget) -> Result<Vec<WeylElement>> {
    check_order(ctx, ord)?;
    for g in gens {
        if g.context() != ctx {
            return Err(Error::RingMismatch("generator outside the Weyl algebra".into()));
        }
    }
    let rows: Vec<Row> = gens.iter().filter(|g| !g.is_zero()).map(|g| element_to_row(g, ord)).collect();
    let alg = WeylAlgebra(ctx);
    let gb = Engine::new(&alg, ord, budget).groebner(rows)?;
    Ok(gb.iter().map(|r| row_to_element(r, ctx)).collect())
}

/// Remainder of `p` under left division by `basis`.
pub fn left_normal_form(p: &WeylElement, basis: &[WeylElement], ord: &TermOrder, budget: &Budget) -> Result<WeylElement> {
    let ctx = p.context();
    let rows: Vec<Row> = basis.iter().filter(|g| !g.is_zero()).map(|g| element_to_row(g, ord)).collect();
    let refs: Vec<&Row> = rows.iter().collect();
    let alg = WeylAlgebra(ctx);
    let r = Engine::new(&alg, ord, budget).reduce(element_to_row(p, ord), &refs, true)?;
    Ok(row_to_element(&r, ctx))
}

/// Re-checks that every left S-pair of `basis` reduces to zero.
pub fn is_left_groebner_basis(basis: &[WeylElement], ord: &TermOrder) -> bool {
    let Some(first) = basis.first() else { return true };
    let rows: Vec<Row> = basis.iter().map(|g| element_to_row(g, ord)).collect();
    let budget = Budget::unlimited();
    let alg = WeylAlgebra(first.context());
    Engine::new(&alg, ord, &budget).check_s_pairs(&rows).expect("unlimited budget")
}

/// A left ideal of a Weyl algebra with cached left Groebner bases.
#[derive(Debug)]
pub struct LeftIdeal {
    ctx: WeylContext,
    generators: Vec<WeylElement>,
    cache: Mutex<Vec<(TermOrder, Arc<Vec<WeylElement>>)>>,
}

impl Clone for LeftIdeal {
    fn clone(&self) -> Self {
        LeftIdeal {
            ctx: self.ctx.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl LeftIdeal {
    pub fn new(ctx: &WeylContext, generators: Vec<WeylElement>) -> Result<Self> {
        for g in &generators {
            if g.context() != ctx {
                return Err(Error::RingMismatch("generator outside the Weyl algebra".into()));
            }
        }
        Ok(LeftIdeal { ctx: ctx.clone(), generators, cache: Mutex::new(Vec::new()) })
    }

    pub fn context(&self) -> &WeylContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn left_groebner(&self, ord: &TermOrder, budget: &Budget) -> Result<Arc<Vec<WeylElement>>> {
        if let Some((_, gb)) = self.cache.lock().unwrap().iter().find(|(o, _)| o == ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(left_groebner_basis(&self.ctx, &self.generators, ord, budget)?);
        self.cache.lock().unwrap().push((ord.clone(), gb.clone()));
        Ok(gb)
    }

    pub fn normal_form(&self, p: &WeylElement, ord: &TermOrder, budget: &Budget) -> Result<WeylElement> {
        let gb = self.left_groebner(ord, budget)?;
        left_normal_form(p, &gb, ord, budget)
    }

    /// Membership test under degrevlex.
    pub fn contains(&self, p: &WeylElement, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(p, &TermOrder::DegRevLex, budget)?.is_zero())
    }

    /// Generators of `other` that are not members of `self`, with their
    /// nonzero normal forms.
    pub fn non_members(&self, other: &LeftIdeal, budget: &Budget) -> Result<Vec<(WeylElement, WeylElement)>> {
        let ord = TermOrder::DegRevLex;
        let mut out = Vec::new();
        for g in other.generators() {
            let r = self.normal_form(g, &ord, budget)?;
            if !r.is_zero() {
                out.push((g.clone(), r));
            }
        }
        Ok(out)
    }

    /// Two-way membership.
    pub fn same_ideal(&self, other: &LeftIdeal, budget: &Budget) -> Result<bool> {
        Ok(self.non_members(other, budget)?.is_empty() && other.non_members(self, budget)?.is_empty())
    }

    /// Intersection with the subalgebra not involving the given exponent
    /// slots, read off a left Groebner basis for a block order.
    pub fn eliminate(&self, block: &[usize], budget: &Budget) -> Result<LeftIdeal> {
        self.ctx.validate_block(block)?;
        if block.is_empty() {
            return Ok(self.clone());
        }
        let ord = TermOrder::eliminating(block);
        let gb = self.left_groebner(&ord, budget)?;
        let kept: Vec<WeylElement> = gb
            .iter()
            .filter(|g| g.terms().all(|(e, _)| block.iter().all(|&b| e[b] == 0)))
            .cloned()
            .collect();
        LeftIdeal::new(&self.ctx, kept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VariableContext;

    fn ctx(names: &[&str]) -> WeylContext {
        WeylContext::new(&VariableContext::new(names).unwrap()).unwrap()
    }

    fn w(text: &str, c: &WeylContext) -> WeylElement {
        WeylElement::parse(text, c).unwrap()
    }

    #[test]
    fn single_generator() {
        let c = ctx(&["x"]);
        let ideal = LeftIdeal::new(&c, vec![w("x*dx + 1", &c)]).unwrap();
        let gb = ideal.left_groebner(&TermOrder::DegRevLex, &Budget::unlimited()).unwrap();
        assert_eq!(gb.as_slice(), &[w("x*dx + 1", &c)]);
        assert!(ideal.contains(&w("dx*x", &c), &Budget::unlimited()).unwrap());
        assert!(!ideal.contains(&w("dx", &c), &Budget::unlimited()).unwrap());
    }

    #[test]
    fn derivatives_ideal() {
        let c = ctx(&["x1", "x2"]);
        let ideal = LeftIdeal::new(&c, vec![w("dx1", &c), w("dx2", &c)]).unwrap();
        assert!(ideal.contains(&w("x1*dx1", &c), &Budget::unlimited()).unwrap());
        assert!(!ideal.contains(&w("dx1*x1", &c), &Budget::unlimited()).unwrap());
    }

    #[test]
    fn noncommutative_s_pairs() {
        // <x, dx> is the whole algebra: dx*x - x*dx = 1.
        let c = ctx(&["x"]);
        let ideal = LeftIdeal::new(&c, vec![w("x", &c), w("dx", &c)]).unwrap();
        let gb = ideal.left_groebner(&TermOrder::DegRevLex, &Budget::unlimited()).unwrap();
        assert_eq!(gb.as_slice(), &[WeylElement::one(&c)]);
    }

    #[test]
    fn groebner_property_holds() {
        let c = ctx(&["x", "y"]);
        let gens = vec![w("x*dx + y*dy + 2", &c), w("y^2*dx - x*dy", &c)];
        for ord in [TermOrder::DegRevLex, TermOrder::Lex] {
            let gb = left_groebner_basis(&c, &gens, &ord, &Budget::unlimited()).unwrap();
            assert!(is_left_groebner_basis(&gb, &ord));
            for g in &gens {
                assert!(left_normal_form(g, &gb, &ord, &Budget::unlimited()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn elimination_blocks() {
        let vars = VariableContext::new(&["x"]).unwrap();
        let cs = WeylContext::with_params(&vars, &["s"]).unwrap();
        let ideal = LeftIdeal::new(&cs, vec![w("s - x", &cs)]).unwrap();
        let b = Budget::unlimited();
        assert!(ideal.eliminate(&[cs.param_index(0)], &b).unwrap().generators().is_empty());
        assert_eq!(ideal.eliminate(&[], &b).unwrap().generators(), ideal.generators());
        assert!(ideal.eliminate(&[cs.x_index(0)], &b).is_err());
        let c = ctx(&["x"]);
        let bad = LeftIdeal::new(&c, vec![w("x", &c)]).unwrap();
        assert!(bad.left_groebner(&TermOrder::WeightedDegRevLex(vec![1, -1]), &b).is_err());
    }
}
