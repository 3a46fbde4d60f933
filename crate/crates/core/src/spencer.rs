//! The D-linearized logarithmic Spencer complex of a free divisor, its graded
//! Koszul shadow, and the Koszul freeness test.
//!
//! Index tuples are 1-based and strictly increasing, so `e_{13}` is `[1, 3]`.
//! The differential `ε_{-p}` sends `e_i` (i in Λ_p) to
//!
//! ```text
//! sum_k (-1)^(k-1) δ_{i_k} e_{i(^k)}
//!   + sum_{l<m} (-1)^(l+m) sum_{q not in i(^l,m)} (-1)^σ(q; i(^l,m)) α_q^{i_l i_m} e_{i(^l,m)(v q)}
//! ```

use std::fmt;

use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, monomial_ideal_dimension};
use crate::linalg;
use crate::logder::LogDerivationBasis;
use crate::poly::{find_positive_grading, Monomial, Polynomial, Rational, TermOrder, VariableContext, WeightVector};
use crate::weyl::{WeylContext, WeylElement};

/// Λ_p: strictly increasing `p`-tuples in `1..=n`, lexicographically.
pub fn lambda(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, p, &mut Vec::new(), &mut out);
    out
}

/// `i(^k)`: drop the `k`-th entry (1-based).
pub fn hat(i: &[usize], k: usize) -> Vec<usize> {
    let mut out = i.to_vec();
    out.remove(k - 1);
    out
}

/// `i(^k,l) = i(^k)(^(l-1))` for `k < l`.
pub fn hat2(i: &[usize], k: usize, l: usize) -> Vec<usize> {
    hat(&hat(i, k), l - 1)
}

/// `σ(q; i)`: the largest position `j` with `i_j < q`, or 0.
pub fn sigma(q: usize, i: &[usize]) -> usize {
    i.iter().rposition(|&x| x < q).map_or(0, |j| j + 1)
}

/// `i(v q)`: insert `q` (not in `i`) right after position `σ(q; i)`.
pub fn check(i: &[usize], q: usize) -> Vec<usize> {
    let mut out = i.to_vec();
    out.insert(sigma(q, i), q);
    out
}

fn tuple_name(i: &[usize]) -> String {
    i.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
}

/// Symbols appearing in a differential entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    /// `δ_i`.
    Delta(usize),
    /// `α_k^{ij}`, always with `i < j`.
    Alpha { k: usize, i: usize, j: usize },
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Delta(i) => write!(f, "delta{i}"),
            Token::Alpha { k, i, j } => write!(f, "alpha{k}^{{{i},{j}}}"),
        }
    }
}

/// A signed sum of tokens, kept in order of first appearance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalEntry(pub Vec<(i64, Token)>);

impl FormalEntry {
    fn push(&mut self, sign: i64, t: Token) {
        if let Some(slot) = self.0.iter_mut().find(|(_, x)| *x == t) {
            slot.0 += sign;
        } else {
            self.0.push((sign, t));
        }
        self.0.retain(|(c, _)| *c != 0);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FormalEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, t)) in self.0.iter().enumerate() {
            let mag = c.abs();
            let body = if mag == 1 { t.to_string() } else { format!("{mag}*{t}") };
            match (k, *c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// The Spencer differentials with symbolic δ and α.
#[derive(Clone, Debug)]
pub struct FormalSpencer {
    pub n: usize,
    /// `bases[p]` is Λ_p.
    pub bases: Vec<Vec<Vec<usize>>>,
    /// `differentials[p-1][r][c]` is the coefficient of `bases[p-1][c]` in
    /// `ε_{-p}(bases[p][r])`.
    pub differentials: Vec<Vec<Vec<FormalEntry>>>,
}

impl FormalSpencer {
    pub fn new(n: usize) -> Self {
        let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| lambda(n, p)).collect();
        let mut differentials = Vec::with_capacity(n);
        for p in 1..=n {
            let src = &bases[p];
            let dst = &bases[p - 1];
            let pos = |t: &[usize]| dst.iter().position(|d| d.as_slice() == t).expect("index tuple in range");
            let mut mat = vec![vec![FormalEntry::default(); dst.len()]; src.len()];
            for (r, i) in src.iter().enumerate() {
                for k in 1..=p {
                    let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
                    mat[r][pos(&hat(i, k))].push(sign, Token::Delta(i[k - 1]));
                }
                for l in 1..=p {
                    for m in (l + 1)..=p {
                        let base = hat2(i, l, m);
                        let outer = if (l + m) % 2 == 0 { 1 } else { -1 };
                        for q in 1..=n {
                            if base.contains(&q) {
                                continue;
                            }
                            let inner = if sigma(q, &base) % 2 == 0 { 1 } else { -1 };
                            let target = check(&base, q);
                            mat[r][pos(&target)].push(outer * inner, Token::Alpha { k: q, i: i[l - 1], j: i[m - 1] });
                        }
                    }
                }
            }
            differentials.push(mat);
        }
        FormalSpencer { n, bases, differentials }
    }

    /// `ε_{-p}(e_i)` as `(entry) e_j + ...` over the nonzero entries.
    pub fn image_string(&self, p: usize, i: &[usize]) -> String {
        let r = self.bases[p].iter().position(|x| x.as_slice() == i).expect("tuple in Λ_p");
        let parts: Vec<String> = self.differentials[p - 1][r]
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(c, e)| {
                let target = &self.bases[p - 1][c];
                if target.is_empty() {
                    format!("({e})")
                } else {
                    format!("({e}) e{}", tuple_name(target))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Ranks and differentials of the Spencer complex as Weyl-operator matrices.
#[derive(Clone, Debug)]
pub struct SpencerComplex {
    pub n: usize,
    pub context: WeylContext,
    pub bases: Vec<Vec<Vec<usize>>>,
    /// `differentials[p-1][r][c]`: coefficient of `bases[p-1][c]` in `ε_{-p}(bases[p][r])`.
    pub differentials: Vec<Vec<Vec<WeylElement>>>,
}

impl SpencerComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    /// `ε_{-p+1} ∘ ε_{-p}`, entry `(r, c)`. Left-module maps compose as
    /// matrix products with the first map's entries on the left.
    pub fn composite(&self, p: usize) -> Vec<Vec<WeylElement>> {
        let a = &self.differentials[p - 1];
        let b = &self.differentials[p - 2];
        let rows = a.len();
        let cols = b[0].len();
        let mid = b.len();
        let mut out = vec![vec![WeylElement::zero(&self.context); cols]; rows];
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = WeylElement::zero(&self.context);
                for k in 0..mid {
                    if a[r][k].is_zero() || b[k][c].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&a[r][k] * &b[k][c]);
                }
                out[r][c] = acc;
            }
        }
        out
    }

    /// Checks `d ∘ d = 0` in every degree.
    pub fn verify_complex(&self) -> Result<()> {
        for p in 2..=self.n {
            let comp = self.composite(p);
            for (r, row) in comp.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        return Err(Error::Certificate(format!(
                            "d∘d ≠ 0 at e{} -> e{}: {e}",
                            tuple_name(&self.bases[p][r]),
                            tuple_name(&self.bases[p - 2][c])
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Largest operator order among the differential entries.
    pub fn max_entry_order(&self) -> u32 {
        self.differentials.iter().flatten().flatten().filter_map(|e| e.order()).max().unwrap_or(0)
    }

    /// Order-one symbols of the entries: the associated graded complex for
    /// the order filtration.
    pub fn graded_shadow(&self) -> Result<GradedKoszulComplex> {
        let ring = self.context.symbol_ring().clone();
        let mut diffs = Vec::with_capacity(self.n);
        for mat in &self.differentials {
            let mut m = Vec::with_capacity(mat.len());
            for row in mat {
                let mut r = Vec::with_capacity(row.len());
                for e in row {
                    if e.order() == Some(1) {
                        r.push(e.principal_symbol()?);
                    } else {
                        r.push(Polynomial::zero(&ring));
                    }
                }
                m.push(r);
            }
            diffs.push(m);
        }
        Ok(GradedKoszulComplex { n: self.n, ring, bases: self.bases.clone(), differentials: diffs })
    }

    pub fn image_string(&self, p: usize, i: &[usize]) -> String {
        let r = self.bases[p].iter().position(|x| x.as_slice() == i).expect("tuple in Λ_p");
        let parts: Vec<String> = self.differentials[p - 1][r]
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(c, e)| {
                let target = &self.bases[p - 1][c];
                if target.is_empty() {
                    format!("({e})")
                } else {
                    format!("({e}) e{}", tuple_name(target))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Substitutes the δ and α of `basis` into the formal differentials and
/// verifies `d ∘ d = 0`.
pub fn build_spencer(basis: &LogDerivationBasis) -> Result<SpencerComplex> {
    let n = basis.n();
    let ctx = WeylContext::new(basis.f.ring())?;
    let deltas: Vec<WeylElement> = basis.derivations.iter().map(|d| d.to_weyl(&ctx)).collect::<Result<_>>()?;
    let complex = instantiate(n, &ctx, &deltas, |k, i, j| basis.structure_constant(i - 1, j - 1, k - 1))?;
    complex.verify_complex()?;
    Ok(complex)
}

/// The Spencer complex of the coordinate fields `∂_1, ..., ∂_n`.
pub fn classical_spencer(n: usize) -> Result<SpencerComplex> {
    if n == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let vars = VariableContext::numbered("x", n);
    let ctx = WeylContext::new(&vars)?;
    let deltas: Vec<WeylElement> = (0..n).map(|i| WeylElement::d(&ctx, i)).collect();
    let zero = Polynomial::zero(&vars);
    let complex = instantiate(n, &ctx, &deltas, |_, _, _| zero.clone())?;
    complex.verify_complex()?;
    Ok(complex)
}

fn instantiate(
    n: usize,
    ctx: &WeylContext,
    deltas: &[WeylElement],
    alpha: impl Fn(usize, usize, usize) -> Polynomial,
) -> Result<SpencerComplex> {
    let formal = FormalSpencer::new(n);
    let mut diffs = Vec::with_capacity(n);
    for mat in &formal.differentials {
        let mut m = Vec::with_capacity(mat.len());
        for row in mat {
            let mut r = Vec::with_capacity(row.len());
            for entry in row {
                let mut e = WeylElement::zero(ctx);
                for (c, t) in &entry.0 {
                    let val = match t {
                        Token::Delta(i) => deltas[i - 1].clone(),
                        Token::Alpha { k, i, j } => WeylElement::from_polynomial(ctx, &alpha(*k, *i, *j))?,
                    };
                    e = &e + &val.scale(&Rational::from_integer((*c).into()));
                }
                r.push(e);
            }
            m.push(r);
        }
        diffs.push(m);
    }
    Ok(SpencerComplex { n, context: ctx.clone(), bases: formal.bases, differentials: diffs })
}

/// A Koszul-type complex of free `Q[x, ξ]`-modules.
#[derive(Clone, Debug)]
pub struct GradedKoszulComplex {
    pub n: usize,
    pub ring: VariableContext,
    pub bases: Vec<Vec<Vec<usize>>>,
    pub differentials: Vec<Vec<Vec<Polynomial>>>,
}

impl GradedKoszulComplex {
    /// The Koszul complex on `symbols`: `e_i -> sum_k (-1)^(k-1) σ_{i_k} e_{i(^k)}`.
    pub fn on(symbols: &[Polynomial]) -> Self {
        let n = symbols.len();
        let ring = symbols[0].ring().clone();
        let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| lambda(n, p)).collect();
        let mut diffs = Vec::with_capacity(n);
        for p in 1..=n {
            let mut m = vec![vec![Polynomial::zero(&ring); bases[p - 1].len()]; bases[p].len()];
            for (r, i) in bases[p].iter().enumerate() {
                for k in 1..=p {
                    let target = hat(i, k);
                    let c = bases[p - 1].iter().position(|t| *t == target).unwrap();
                    let s = &symbols[i[k - 1] - 1];
                    m[r][c] = if (k - 1) % 2 == 0 { s.clone() } else { -s };
                }
            }
            diffs.push(m);
        }
        GradedKoszulComplex { n, ring, bases, differentials: diffs }
    }

    /// Symbols `σ_i` read off `ε_{-1}`.
    pub fn symbols(&self) -> Vec<Polynomial> {
        self.differentials[0].iter().map(|row| row[0].clone()).collect()
    }

    /// Homology dimensions of the truncated graded pieces.
    ///
    /// The grading is a strictly positive weight on `x, ξ` making every symbol
    /// homogeneous; `e_i` carries the sum of its symbols' degrees, so the
    /// differentials preserve degree. Entry `[p-1][d]` is `dim H_p` in degree
    /// `d` for `p = 1..n`, `d = 0..=truncation`. Returns `None` when no such
    /// grading exists.
    pub fn homology_ranks(&self, truncation: u32) -> Option<KoszulHomology> {
        let symbols = self.symbols();
        let nonzero: Vec<Polynomial> = symbols.iter().filter(|s| !s.is_zero()).cloned().collect();
        let grading = find_positive_grading(&nonzero).ok()??;
        let w: Vec<u32> = grading
            .weights()
            .iter()
            .map(|x| x.to_integer().try_into().ok())
            .collect::<Option<Vec<u32>>>()?;
        let deg_of = |p: &Polynomial| -> u32 {
            p.terms().next().map_or(0, |(m, _)| m.exponents().iter().zip(&w).map(|(e, x)| e * x).sum())
        };
        let sym_deg: Vec<u32> = symbols.iter().map(deg_of).collect();
        let e_deg = |i: &[usize]| -> u32 { i.iter().map(|&k| sym_deg[k - 1]).sum() };
        let mut ranks = vec![vec![0usize; truncation as usize + 1]; self.n];
        for d in 0..=truncation {
            // Basis of (K_p)_d for every p.
            let pieces: Vec<Vec<(usize, Vec<u32>)>> = (0..=self.n)
                .map(|p| {
                    let mut v = Vec::new();
                    for (idx, i) in self.bases[p].iter().enumerate() {
                        let ed = e_deg(i);
                        if ed <= d {
                            for m in monomials_of_weight(&w, d - ed) {
                                v.push((idx, m));
                            }
                        }
                    }
                    v
                })
                .collect();
            let rank_of = |p: usize| -> usize {
                // d_p : (K_p)_d -> (K_{p-1})_d
                let target = &pieces[p - 1];
                let index: std::collections::HashMap<(usize, Vec<u32>), usize> =
                    target.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect();
                let mut rows = Vec::with_capacity(pieces[p].len());
                for (idx, m) in &pieces[p] {
                    let mut row: Vec<(usize, Rational)> = Vec::new();
                    for (c, entry) in self.differentials[p - 1][*idx].iter().enumerate() {
                        for (em, ec) in entry.terms() {
                            let prod: Vec<u32> = em.exponents().iter().zip(m).map(|(a, b)| a + b).collect();
                            let col = index[&(c, prod)];
                            row.push((col, ec.clone()));
                        }
                    }
                    row.sort_by_key(|(c, _)| *c);
                    rows.push(row);
                }
                linalg::rank(rows.into_iter().map(merge_row))
            };
            let ranks_d: Vec<usize> = (1..=self.n).map(rank_of).collect();
            for p in 1..=self.n {
                let dim = pieces[p].len();
                let ker = dim - ranks_d[p - 1];
                let im = if p < self.n { ranks_d[p] } else { 0 };
                ranks[p - 1][d as usize] = ker - im;
            }
        }
        Some(KoszulHomology { grading, truncation, ranks })
    }
}

fn merge_row(row: Vec<(usize, Rational)>) -> linalg::SparseRow {
    let mut out: linalg::SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Exponent vectors of weighted degree exactly `d`.
fn monomials_of_weight(w: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= left {
            cur.push(e);
            rec(w, i + 1, left - e * w[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(w, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Truncated homology of a graded Koszul complex.
#[derive(Clone, Debug)]
pub struct KoszulHomology {
    pub grading: WeightVector,
    pub truncation: u32,
    /// `ranks[p-1][d] = dim H_p` in degree `d`.
    pub ranks: Vec<Vec<usize>>,
}

impl KoszulHomology {
    /// No homology in positive homological degree up to the truncation.
    pub fn is_exact(&self) -> bool {
        self.ranks.iter().flatten().all(|&r| r == 0)
    }
}

/// Outcome of the Koszul freeness test.
#[derive(Clone, Debug)]
pub struct KoszulVerdict {
    pub koszul: bool,
    /// Krull dimension of `Q[x, ξ] / <σ(δ_1), ..., σ(δ_n)>`.
    pub dimension: i64,
    pub expected: usize,
    pub symbols: Vec<Polynomial>,
    /// Leading monomials of a Groebner basis of the symbol ideal.
    pub initial_ideal: Vec<Polynomial>,
}

/// The symbols form a regular sequence exactly when the symbol ideal has
/// codimension `n` in the `2n`-dimensional ring `Q[x, ξ]`.
pub fn koszul_test(basis: &LogDerivationBasis, budget: &Budget) -> Result<KoszulVerdict> {
    koszul_test_ordered(basis, &TermOrder::DegRevLex, budget)
}

/// As [`koszul_test`], reading the initial ideal off a Groebner basis for
/// `ord`; the dimension does not depend on the order.
pub fn koszul_test_ordered(basis: &LogDerivationBasis, ord: &TermOrder, budget: &Budget) -> Result<KoszulVerdict> {
    let ctx = WeylContext::new(basis.f.ring())?;
    let symbols: Vec<Polynomial> = basis
        .derivations
        .iter()
        .map(|d| d.to_weyl(&ctx)?.principal_symbol())
        .collect::<Result<_>>()?;
    koszul_test_symbols_ordered(&symbols, basis.n(), ord, budget)
}

pub fn koszul_test_symbols(symbols: &[Polynomial], n: usize, budget: &Budget) -> Result<KoszulVerdict> {
    koszul_test_symbols_ordered(symbols, n, &TermOrder::DegRevLex, budget)
}

pub fn koszul_test_symbols_ordered(symbols: &[Polynomial], n: usize, ord: &TermOrder, budget: &Budget) -> Result<KoszulVerdict> {
    let ring = symbols[0].ring().clone();
    let gb = groebner_basis(symbols, ord, budget)?;
    let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial(ord).cloned()).collect();
    let dimension = monomial_ideal_dimension(&leads, ring.len());
    let initial_ideal = leads.into_iter().map(|m| Polynomial::monomial(&ring, m, Rational::from_integer(1.into()))).collect();
    Ok(KoszulVerdict { koszul: dimension == n as i64, dimension, expected: n, symbols: symbols.to_vec(), initial_ideal })
}

/// Default truncation degree: twice the largest symbol degree plus `n`.
pub fn default_truncation(shadow: &GradedKoszulComplex) -> u32 {
    let max_deg = shadow.symbols().iter().filter_map(|s| s.total_degree()).max().unwrap_or(1);
    2 * max_deg + shadow.n as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_combinatorics() {
        assert_eq!(lambda(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(hat(&[1, 2, 3], 2), vec![1, 3]);
        assert_eq!(hat2(&[1, 2, 3], 1, 3), vec![2]);
        assert_eq!(sigma(1, &[2, 3]), 0);
        assert_eq!(sigma(3, &[1, 4]), 1);
        assert_eq!(check(&[1, 4], 3), vec![1, 3, 4]);
        assert_eq!(check(&[], 2), vec![2]);
    }

    #[test]
    fn formal_low_dimensions() {
        let f1 = FormalSpencer::new(1);
        assert_eq!(f1.image_string(1, &[1]), "(delta1)");
        let f2 = FormalSpencer::new(2);
        assert_eq!(f2.image_string(2, &[1, 2]), "(-delta2 - alpha1^{1,2}) e1 + (delta1 - alpha2^{1,2}) e2");
    }

    #[test]
    fn classical_complexes() {
        let c2 = classical_spencer(2).unwrap();
        assert_eq!(c2.image_string(2, &[1, 2]), "(-dx2) e1 + (dx1) e2");
        assert_eq!(c2.ranks(), vec![1, 2, 1]);
        let c3 = classical_spencer(3).unwrap();
        let shadow = c3.graded_shadow().unwrap();
        let h = shadow.homology_ranks(4).unwrap();
        assert!(h.is_exact(), "{:?}", h.ranks);
    }

    #[test]
    fn non_regular_sequence_has_homology() {
        let r = VariableContext::new(&["a", "b"]).unwrap();
        let s = vec![Polynomial::parse("a", &r).unwrap(), Polynomial::parse("a*b", &r).unwrap()];
        let k = GradedKoszulComplex::on(&s);
        let h = k.homology_ranks(3).unwrap();
        assert!(!h.is_exact());
    }
}
