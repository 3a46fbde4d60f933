use std::sync::{Arc, Mutex};


use super::engine::{sort_row, Commutative, Engine, Row, Term};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, TermOrder, VariableContext};

pub(crate) fn poly_to_row(p: &Polynomial, comp: usize, ord: &TermOrder) -> Row {
    let mut row: Row = p
        .terms()
        .map(|(m, c)| Term { comp, exps: m.exponents().to_vec(), coeff: c.clone() })
        .collect();
    sort_row(&mut row, ord);
    row
}

pub(crate) fn row_to_poly(row: &[Term], ring: &VariableContext) -> Polynomial {
    Polynomial::from_terms(ring, row.iter().map(|t| (Monomial::new(t.exps.clone()), t.coeff.clone())))
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Polynomial], ord: &TermOrder, budget: &Budget) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = first.ring().clone();
    ord.validate(ring.len())?;
    if !ord.is_well_order() {
        return Err(Error::InvalidOrder("not a well-order".into()));
    }
    for g in gens {
        g.check_same_ring(first)?;
    }
    let rows: Vec<Row> = gens.iter().filter(|g| !g.is_zero()).map(|g| poly_to_row(g, 0, ord)).collect();
    let engine = Engine::new(&Commutative, ord, budget);
    let basis = engine.groebner(rows)?;
    Ok(basis.iter().map(|r| row_to_poly(r, &ring)).collect())
}

/// Remainder of `p` on division by `basis`, which should be a Groebner basis
/// for `ord`.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], ord: &TermOrder) -> Polynomial {
    let rows: Vec<Row> = basis.iter().filter(|g| !g.is_zero()).map(|g| poly_to_row(g, 0, ord)).collect();
    let refs: Vec<&Row> = rows.iter().collect();
    let budget = Budget::unlimited();
    let engine = Engine::new(&Commutative, ord, &budget);
    let r = engine.reduce(poly_to_row(p, 0, ord), &refs, true).expect("unlimited budget");
    row_to_poly(&r, p.ring())
}

/// Re-checks the Buchberger criterion on `basis`.
pub fn is_groebner_basis(basis: &[Polynomial], ord: &TermOrder) -> bool {
    let rows: Vec<Row> = basis.iter().filter(|g| !g.is_zero()).map(|g| poly_to_row(g, 0, ord)).collect();
    let budget = Budget::unlimited();
    Engine::new(&Commutative, ord, &budget).check_s_pairs(&rows).expect("unlimited budget")
}

/// Krull dimension of `k[x]/I` where `I` is generated by the monomials
/// `leads`: the largest set of variables containing the support of no
/// generator. Returns -1 for the unit ideal.
pub fn monomial_ideal_dimension(leads: &[Monomial], nvars: usize) -> i64 {
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = leads.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    assert!(nvars < 64, "too many variables for the independent-set search");
    let mut best = 0i64;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as i64;
        if size <= best {
            continue;
        }
        // `set` is independent when no generator's support lies inside it.
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// Krull dimension of `ring / <gens>`; -1 for the unit ideal.
pub fn quotient_dimension(gens: &[Polynomial], ring: &VariableContext, budget: &Budget) -> Result<i64> {
    let ord = TermOrder::DegRevLex;
    let gb = groebner_basis(gens, &ord, budget)?;
    let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial(&ord).cloned()).collect();
    Ok(monomial_ideal_dimension(&leads, ring.len()))
}

/// An ideal of a commutative polynomial ring with cached Groebner bases.
#[derive(Debug)]
pub struct Ideal {
    ring: VariableContext,
    generators: Vec<Polynomial>,
    cache: Mutex<Vec<(TermOrder, Arc<Vec<Polynomial>>)>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), cache: Mutex::new(self.cache.lock().unwrap().clone()) }
    }
}

impl Ideal {
    pub fn new(ring: &VariableContext, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch("ideal generator outside the ring".into()));
            }
        }
        Ok(Ideal { ring: ring.clone(), generators, cache: Mutex::new(Vec::new()) })
    }

    pub fn ring(&self) -> &VariableContext {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner_basis(&self, ord: &TermOrder, budget: &Budget) -> Result<Arc<Vec<Polynomial>>> {
        if let Some((_, gb)) = self.cache.lock().unwrap().iter().find(|(o, _)| o == ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(&self.generators, ord, budget)?);
        self.cache.lock().unwrap().push((ord.clone(), gb.clone()));
        Ok(gb)
    }

    pub fn normal_form(&self, p: &Polynomial, ord: &TermOrder, budget: &Budget) -> Result<Polynomial> {
        let gb = self.groebner_basis(ord, budget)?;
        Ok(normal_form(p, &gb, ord))
    }

    pub fn contains(&self, p: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(p, &TermOrder::DegRevLex, budget)?.is_zero())
    }

    pub fn quotient_dimension(&self, budget: &Budget) -> Result<i64> {
        let ord = TermOrder::DegRevLex;
        let gb = self.groebner_basis(&ord, budget)?;
        let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial(&ord).cloned()).collect();
        Ok(monomial_ideal_dimension(&leads, self.ring.len()))
    }

    /// Generators of `I ∩ k[remaining variables]` via a block order.
    pub fn eliminate(&self, vars: &[usize], budget: &Budget) -> Result<Vec<Polynomial>> {
        let ord = TermOrder::eliminating(vars);
        let gb = self.groebner_basis(&ord, budget)?;
        Ok(gb
            .iter()
            .filter(|g| g.terms().all(|(m, _)| vars.iter().all(|&v| m.exponents()[v] == 0)))
            .cloned()
            .collect())
    }

    /// Two-way membership check.
    pub fn same_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        for g in self.generators() {
            if !other.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
