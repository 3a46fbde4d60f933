
use super::comm::{poly_to_row, row_to_poly};
use super::engine::{sort_row, Commutative, Engine, Row, Term};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, TermOrder, VariableContext};

/// Element of a free module `R^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement(pub Vec<Polynomial>);

impl FreeModuleElement {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_zero())
    }

    /// `sum_i self_i * g_i`.
    pub fn dot(&self, g: &[Polynomial]) -> Polynomial {
        let ring = g[0].ring();
        self.0.iter().zip(g).fold(Polynomial::zero(ring), |acc, (a, b)| &acc + &(a * b))
    }
}

/// Generators of `{s : sum s_i g_i = 0}`.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    pub tuple: Vec<Polynomial>,
    pub generators: Vec<FreeModuleElement>,
}

impl SyzygyModule {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

fn vector_to_row(v: &[Polynomial], offset: usize, ord: &TermOrder) -> Row {
    let mut row: Row = Vec::new();
    for (i, p) in v.iter().enumerate() {
        row.extend(poly_to_row(p, i + offset, ord));
    }
    sort_row(&mut row, ord);
    row
}

fn row_to_vector(row: &[Term], rank: usize, offset: usize, ring: &VariableContext) -> Vec<Polynomial> {
    (0..rank)
        .map(|i| {
            let part: Vec<Term> = row.iter().filter(|t| t.comp == i + offset).cloned().collect();
            row_to_poly(&part, ring)
        })
        .collect()
}

/// Reduced Groebner basis (position over term, earlier components larger) of
/// the submodule of `R^r` generated by `elems`.
pub fn module_groebner_basis(elems: &[Vec<Polynomial>], ord: &TermOrder, budget: &Budget) -> Result<Vec<Vec<Polynomial>>> {
    let Some(first) = elems.first() else { return Ok(Vec::new()) };
    let rank = first.len();
    let ring = first[0].ring().clone();
    let rows: Vec<Row> = elems.iter().map(|v| vector_to_row(v, 0, ord)).filter(|r| !r.is_empty()).collect();
    let gb = Engine::new(&Commutative, ord, budget).groebner(rows)?;
    Ok(gb.iter().map(|r| row_to_vector(r, rank, 0, &ring)).collect())
}

pub fn module_normal_form(v: &[Polynomial], basis: &[Vec<Polynomial>], ord: &TermOrder) -> Vec<Polynomial> {
    let rank = v.len();
    let ring = v[0].ring().clone();
    let rows: Vec<Row> = basis.iter().map(|b| vector_to_row(b, 0, ord)).filter(|r| !r.is_empty()).collect();
    let refs: Vec<&Row> = rows.iter().collect();
    let budget = Budget::unlimited();
    let r = Engine::new(&Commutative, ord, &budget).reduce(vector_to_row(v, 0, ord), &refs, true).expect("unlimited budget");
    row_to_vector(&r, rank, 0, &ring)
}

/// Syzygies of `g` from a module Groebner basis of the rows `(g_i | e_i)`
/// under position-over-term: the basis elements whose leading term leaves
/// component 0 have vanishing first coordinate and generate the syzygies.
/// Every generator is checked by substitution.
pub fn syzygies(g: &[Polynomial], ord: &TermOrder, budget: &Budget) -> Result<SyzygyModule> {
    if g.is_empty() {
        return Err(Error::Invalid("syzygies of an empty tuple".into()));
    }
    let ring = g[0].ring().clone();
    for p in g {
        p.check_same_ring(&g[0])?;
    }
    let r = g.len();
    let rows: Vec<Row> = g
        .iter()
        .enumerate()
        .map(|(i, gi)| {
            let mut row = poly_to_row(gi, 0, ord);
            row.push(Term { comp: i + 1, exps: vec![0; ring.len()], coeff: num_traits::One::one() });
            sort_row(&mut row, ord);
            row
        })
        .collect();
    let gb = Engine::new(&Commutative, ord, budget).groebner(rows)?;
    let mut generators = Vec::new();
    for row in gb.iter().filter(|row| row[0].comp >= 1) {
        if row.iter().any(|t| t.comp == 0) {
            return Err(Error::Certificate("syzygy row with nonzero first component".into()));
        }
        let s = FreeModuleElement(row_to_vector(row, r, 1, &ring));
        if !s.dot(g).is_zero() {
            return Err(Error::Certificate("syzygy does not substitute to zero".into()));
        }
        generators.push(s);
    }
    Ok(SyzygyModule { tuple: g.to_vec(), generators })
}
