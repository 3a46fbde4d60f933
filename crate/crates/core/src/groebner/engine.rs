//! Generic Buchberger algorithm over algebras with a PBW-type monomial basis.
//!
//! Elements are rows of terms sorted from the largest term down. A term
//! carries a module component; components compare position-over-term with
//! smaller indices larger, so ideals simply use component 0. The only thing
//! an algebra contributes is left multiplication by a monomial, which for
//! the algebras used here always has the commutative product as its leading
//! monomial with coefficient 1.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::Result;
use crate::poly::{Rational, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub exps: Vec<u32>,
    pub coeff: Rational,
}

pub(crate) type Row = Vec<Term>;

pub(crate) trait Algebra {
    fn is_commutative(&self) -> bool;

    /// `coeff * x^exps * row`, sorted under `ord`.
    fn mul_left(&self, exps: &[u32], coeff: &Rational, row: &[Term], ord: &TermOrder) -> Row;
}

pub(crate) struct Commutative;

impl Algebra for Commutative {
    fn is_commutative(&self) -> bool {
        true
    }

    fn mul_left(&self, exps: &[u32], coeff: &Rational, row: &[Term], _ord: &TermOrder) -> Row {
        row.iter()
            .map(|t| Term {
                comp: t.comp,
                exps: t.exps.iter().zip(exps).map(|(a, b)| a + b).collect(),
                coeff: &t.coeff * coeff,
            })
            .collect()
    }
}

#[inline]
pub(crate) fn cmp_key(ord: &TermOrder, ca: usize, a: &[u32], cb: usize, b: &[u32]) -> Ordering {
    cb.cmp(&ca).then_with(|| ord.cmp(a, b))
}

pub(crate) fn cmp_term(ord: &TermOrder, a: &Term, b: &Term) -> Ordering {
    cmp_key(ord, a.comp, &a.exps, b.comp, &b.exps)
}

/// Collects `(comp, exps) -> coeff` into a sorted row, dropping zeros.
pub(crate) fn row_from_map(map: HashMap<(usize, Vec<u32>), Rational>, ord: &TermOrder) -> Row {
    let mut row: Row = map
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((comp, exps), coeff)| Term { comp, exps, coeff })
        .collect();
    sort_row(&mut row, ord);
    row
}

pub(crate) fn sort_row(row: &mut Row, ord: &TermOrder) {
    row.sort_by(|a, b| cmp_term(ord, b, a));
}

/// `a - b` for sorted rows.
pub(crate) fn sub_rows(a: &[Term], b: &[Term], ord: &TermOrder) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp_term(ord, &a[i], &b[j]) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { comp: b[j].comp, exps: b[j].exps.clone(), coeff: -&b[j].coeff });
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].coeff - &b[j].coeff;
                if !c.is_zero() {
                    out.push(Term { comp: a[i].comp, exps: a[i].exps.clone(), coeff: c });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|t| Term { comp: t.comp, exps: t.exps.clone(), coeff: -&t.coeff }));
    out
}

pub(crate) fn make_monic(row: &mut Row) {
    if let Some(first) = row.first() {
        if !first.coeff.is_one() {
            let inv = first.coeff.recip();
            for t in row.iter_mut() {
                t.coeff *= &inv;
            }
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn single_component(r: &Row) -> bool {
    r.iter().all(|t| t.comp == r[0].comp)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Vec<u32>,
}

pub(crate) struct Engine<'a, A: Algebra> {
    pub alg: &'a A,
    pub ord: &'a TermOrder,
    pub budget: &'a Budget,
}

impl<'a, A: Algebra> Engine<'a, A> {
    pub fn new(alg: &'a A, ord: &'a TermOrder, budget: &'a Budget) -> Self {
        Engine { alg, ord, budget }
    }

    fn find_reducer<'b>(&self, t: &Term, basis: &[&'b Row]) -> Option<&'b Row> {
        let mut best: Option<&Row> = None;
        for g in basis {
            let lead = &g[0];
            if lead.comp == t.comp && divides(&lead.exps, &t.exps) {
                if best.map_or(true, |b| g.len() < b.len()) {
                    best = Some(g);
                }
            }
        }
        best
    }

    /// Reduces `p` modulo `basis`: only the leading term when `full` is false,
    /// otherwise every term.
    pub fn reduce(&self, p: Row, basis: &[&Row], full: bool) -> Result<Row> {
        let mut done: Row = Vec::new();
        let mut p = p;
        let mut start = 0;
        while start < p.len() {
            let t = &p[start];
            match self.find_reducer(t, basis) {
                Some(g) => {
                    self.budget.tick()?;
                    let lead = &g[0];
                    let q: Vec<u32> = t.exps.iter().zip(&lead.exps).map(|(a, b)| a - b).collect();
                    let c = &t.coeff / &lead.coeff;
                    let prod = self.alg.mul_left(&q, &c, g, self.ord);
                    p = sub_rows(&p[start..], &prod, self.ord);
                    start = 0;
                }
                None => {
                    if !full {
                        done.extend(p.drain(start..));
                        return Ok(done);
                    }
                    done.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Ok(done)
    }

    pub fn spoly(&self, f: &Row, g: &Row) -> Row {
        let (lf, lg) = (&f[0], &g[0]);
        let l = lcm(&lf.exps, &lg.exps);
        let qf: Vec<u32> = l.iter().zip(&lf.exps).map(|(a, b)| a - b).collect();
        let qg: Vec<u32> = l.iter().zip(&lg.exps).map(|(a, b)| a - b).collect();
        let a = self.alg.mul_left(&qf, &lf.coeff.recip(), f, self.ord);
        let b = self.alg.mul_left(&qg, &lg.coeff.recip(), g, self.ord);
        sub_rows(&a, &b, self.ord)
    }

    /// Reduced Groebner basis of the module generated by `gens`, monic,
    /// sorted by increasing leading term.
    pub fn groebner(&self, gens: Vec<Row>) -> Result<Vec<Row>> {
        let mut polys: Vec<Row> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for g in gens {
            let h = {
                let basis: Vec<&Row> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
                self.reduce(g, &basis, true)?
            };
            if !h.is_empty() {
                self.insert(h, &mut polys, &mut active, &mut pairs);
            }
        }
        while !pairs.is_empty() {
            let mut best = 0;
            for k in 1..pairs.len() {
                let (a, b) = (&pairs[k], &pairs[best]);
                let o = cmp_key(self.ord, a.comp, &a.lcm, b.comp, &b.lcm).then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
                if o == Ordering::Less {
                    best = k;
                }
            }
            let pair = pairs.swap_remove(best);
            let s = self.spoly(&polys[pair.i], &polys[pair.j]);
            let h = {
                let basis: Vec<&Row> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
                self.reduce(s, &basis, true)?
            };
            if !h.is_empty() {
                self.insert(h, &mut polys, &mut active, &mut pairs);
            }
        }
        let mut basis: Vec<Row> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        basis.sort_by(|a, b| cmp_term(self.ord, &a[0], &b[0]));
        self.interreduce(basis)
    }

    fn interreduce(&self, basis: Vec<Row>) -> Result<Vec<Row>> {
        let mut out: Vec<Row> = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let others: Vec<&Row> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, r)| r).collect();
            let head = basis[k][0].clone();
            let tail = self.reduce(basis[k][1..].to_vec(), &others, true)?;
            let mut row = Vec::with_capacity(tail.len() + 1);
            row.push(head);
            row.extend(tail);
            make_monic(&mut row);
            out.push(row);
        }
        Ok(out)
    }

    /// Gebauer-Moeller update; the product criterion is only used for
    /// commutative algebras and rows living in a single component.
    fn insert(&self, mut h: Row, polys: &mut Vec<Row>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>) {
        make_monic(&mut h);
        let commutative = self.alg.is_commutative();
        let hi = polys.len();
        let (hc, hl) = (h[0].comp, h[0].exps.clone());
        let h_single = single_component(&h);

        let cands: Vec<(usize, Vec<u32>, bool)> = (0..polys.len())
            .filter(|&g| active[g] && polys[g][0].comp == hc)
            .map(|g| {
                let gl = &polys[g][0].exps;
                (g, lcm(&hl, gl), commutative && h_single && single_component(&polys[g]) && coprime(&hl, gl))
            })
            .collect();
        let mut kept: Vec<(usize, Vec<u32>, bool)> = Vec::new();
        for (idx, cand) in cands.iter().enumerate() {
            let dominated = cands[idx + 1..].iter().any(|c| divides(&c.1, &cand.1))
                || kept.iter().any(|c| divides(&c.1, &cand.1));
            if cand.2 || !dominated {
                kept.push(cand.clone());
            }
        }
        pairs.retain(|p| {
            if p.comp != hc || !divides(&hl, &p.lcm) {
                return true;
            }
            let li = lcm(&polys[p.i][0].exps, &hl);
            let lj = lcm(&polys[p.j][0].exps, &hl);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, cop) in kept {
            if !cop {
                pairs.push(Pair { i: g, j: hi, comp: hc, lcm: l });
            }
        }
        for g in 0..polys.len() {
            if active[g] && polys[g][0].comp == hc && divides(&hl, &polys[g][0].exps) {
                active[g] = false;
            }
        }
        polys.push(h);
        active.push(true);
    }

    /// Post-hoc Buchberger criterion: every S-pair reduces to zero.
    pub fn check_s_pairs(&self, basis: &[Row]) -> Result<bool> {
        let refs: Vec<&Row> = basis.iter().collect();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if basis[i][0].comp != basis[j][0].comp {
                    continue;
                }
                let s = self.spoly(&basis[i], &basis[j]);
                if !self.reduce(s, &refs, false)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
