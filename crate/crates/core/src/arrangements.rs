//! Central hyperplane arrangements: intersection lattice, Möbius function,
//! characteristic and Poincaré polynomials.
//!
//! The Poincaré polynomial gives the Betti numbers of the complement, i.e.
//! the dimensions of the graded pieces of the Brieskorn algebra.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lct::Verdict;
use crate::linalg::{sparse_from_dense, Echelon, SparseRow};
use crate::poly::{fmt_rational, Monomial, Polynomial, Rational, VariableContext};

/// A reduced central arrangement: nonzero, pairwise non-proportional
/// linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ring: VariableContext,
    forms: Vec<Vec<Rational>>,
}

fn rref_key(rows: &[Vec<Rational>]) -> Vec<(usize, SparseRow)> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(sparse_from_dense(r));
    }
    e.into_rref().into_iter().collect()
}

impl Arrangement {
    pub fn new(ring: &VariableContext, forms: Vec<Vec<Rational>>) -> Result<Self> {
        let n = ring.len();
        for (j, h) in forms.iter().enumerate() {
            if h.len() != n {
                return Err(Error::Invalid(format!("hyperplane {} has {} coefficients, expected {n}", j + 1, h.len())));
            }
            if h.iter().all(|c| c.is_zero()) {
                return Err(Error::Invalid(format!("hyperplane {} is the zero form", j + 1)));
            }
        }
        for a in 0..forms.len() {
            for b in a + 1..forms.len() {
                if rref_key(&[forms[a].clone()]) == rref_key(&[forms[b].clone()]) {
                    return Err(Error::Invalid(format!("hyperplanes {} and {} are proportional", a + 1, b + 1)));
                }
            }
        }
        Ok(Arrangement { ring: ring.clone(), forms })
    }

    /// From homogeneous linear polynomials.
    pub fn from_polynomials(ring: &VariableContext, polys: &[Polynomial]) -> Result<Self> {
        let mut forms = Vec::with_capacity(polys.len());
        for p in polys {
            if p.ring() != ring {
                return Err(Error::RingMismatch(format!("{p} is not in the arrangement ring")));
            }
            if !p.is_homogeneous_linear() {
                return Err(Error::Invalid(format!("{p} is not a homogeneous linear form")));
            }
            forms.push((0..ring.len()).map(|i| p.coefficient(&Monomial::var(ring.len(), i))).collect());
        }
        Arrangement::new(ring, forms)
    }

    /// One linear form per line; blank lines and lines starting with `#` are
    /// skipped. Variables are inferred when `ring` is `None`.
    pub fn parse(text: &str, ring: Option<&VariableContext>) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let ring = match ring {
            Some(r) => r.clone(),
            None => VariableContext::infer(&lines.join(" + "))?,
        };
        let polys = lines.iter().map(|l| Polynomial::parse(l, &ring)).collect::<Result<Vec<_>>>()?;
        Arrangement::from_polynomials(&ring, &polys)
    }

    /// Coordinate hyperplanes `x1, ..., xn`.
    pub fn boolean(n: usize) -> Self {
        let ring = VariableContext::numbered("x", n);
        let forms = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
            .collect();
        Arrangement { ring, forms }
    }

    /// `x_i - x_j` for `i < j` in `n` variables.
    pub fn braid(n: usize) -> Self {
        let ring = VariableContext::numbered("x", n);
        let mut forms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut h = vec![Rational::zero(); n];
                h[i] = Rational::from_integer(1.into());
                h[j] = Rational::from_integer((-1).into());
                forms.push(h);
            }
        }
        Arrangement { ring, forms }
    }

    pub fn ring(&self) -> &VariableContext {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.ring.len()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[Vec<Rational>] {
        &self.forms
    }

    pub fn form(&self, j: usize) -> Polynomial {
        let n = self.dimension();
        Polynomial::from_terms(&self.ring, self.forms[j].iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
    }

    /// Product of the forms.
    pub fn defining_polynomial(&self) -> Polynomial {
        (0..self.len()).fold(Polynomial::one(&self.ring), |acc, j| &acc * &self.form(j))
    }

    /// `A` without hyperplane `j`.
    pub fn deletion(&self, j: usize) -> Self {
        let mut forms = self.forms.clone();
        forms.remove(j);
        Arrangement { ring: self.ring.clone(), forms }
    }

    /// The arrangement induced on hyperplane `j`, in coordinates obtained by
    /// solving `h_j = 0` for its first variable with nonzero coefficient.
    pub fn restriction(&self, j: usize) -> Result<Self> {
        let h = &self.forms[j];
        let p = h.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let names: Vec<String> = self.ring.names().iter().enumerate().filter(|(i, _)| *i != p).map(|(_, s)| s.clone()).collect();
        let ring = VariableContext::new(&names)?;
        let mut keys: Vec<Vec<(usize, SparseRow)>> = Vec::new();
        let mut forms = Vec::new();
        for (i, g) in self.forms.iter().enumerate() {
            if i == j {
                continue;
            }
            let r = &g[p] / &h[p];
            let reduced: Vec<Rational> = (0..g.len()).filter(|&k| k != p).map(|k| &g[k] - &r * &h[k]).collect();
            if reduced.iter().all(|c| c.is_zero()) {
                continue;
            }
            let key = rref_key(&[reduced.clone()]);
            if !keys.contains(&key) {
                keys.push(key);
                forms.push(reduced);
            }
        }
        Arrangement::new(&ring, forms)
    }

    pub fn intersection_lattice(&self) -> IntersectionLattice {
        IntersectionLattice::new(self)
    }

    pub fn poincare_polynomial(&self) -> Vec<i64> {
        self.intersection_lattice().poincare_polynomial()
    }

    /// Constant verdict: the comparison theorem holds for every hyperplane
    /// arrangement.
    pub fn lct_oracle(&self) -> Verdict {
        Verdict::Holds
    }
}

/// An intersection of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub codim: usize,
    /// Zero-based indices of the hyperplanes containing the flat.
    pub hyperplanes: Vec<usize>,
    /// Reduced row echelon basis of the defining forms.
    #[serde(serialize_with = "serialize_rows")]
    pub equations: Vec<Vec<Rational>>,
    pub mobius: i64,
}

fn serialize_rows<S: serde::Serializer>(rows: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
    serde::Serialize::serialize(&strings, s)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionLattice {
    pub dimension: usize,
    /// Sorted by codimension, then by hyperplane sets.
    pub flats: Vec<Flat>,
}

impl IntersectionLattice {
    fn new(a: &Arrangement) -> Self {
        let n = a.dimension();
        let mut by_key: BTreeMap<Vec<(usize, SparseRow)>, Vec<usize>> = BTreeMap::new();
        by_key.insert(Vec::new(), Vec::new());
        let mut levels: Vec<Vec<(Vec<(usize, SparseRow)>, Vec<usize>)>> = vec![vec![(Vec::new(), Vec::new())]];
        loop {
            let mut next: BTreeMap<Vec<(usize, SparseRow)>, Vec<usize>> = BTreeMap::new();
            for (key, set) in levels.last().unwrap() {
                for (j, h) in a.forms.iter().enumerate() {
                    if set.contains(&j) {
                        continue;
                    }
                    let mut rows: Vec<Vec<Rational>> = key.iter().map(|(_, r)| dense(r, n)).collect();
                    rows.push(h.clone());
                    let k = rref_key(&rows);
                    if next.contains_key(&k) {
                        continue;
                    }
                    let closure: Vec<usize> = (0..a.len())
                        .filter(|&i| {
                            let mut e = Echelon::new();
                            for (_, r) in &k {
                                e.insert(r.clone());
                            }
                            e.insert(sparse_from_dense(&a.forms[i])).is_none()
                        })
                        .collect();
                    next.insert(k, closure);
                }
            }
            if next.is_empty() {
                break;
            }
            for (k, s) in &next {
                by_key.insert(k.clone(), s.clone());
            }
            levels.push(next.into_iter().collect());
        }
        let mut flats: Vec<Flat> = Vec::new();
        for (codim, level) in levels.iter().enumerate() {
            let mut level: Vec<&(Vec<(usize, SparseRow)>, Vec<usize>)> = level.iter().collect();
            level.sort_by(|a, b| a.1.cmp(&b.1));
            for (key, set) in level {
                let mobius = if codim == 0 {
                    1
                } else {
                    -flats.iter().filter(|f| f.codim < codim && f.hyperplanes.iter().all(|h| set.contains(h))).map(|f| f.mobius).sum::<i64>()
                };
                flats.push(Flat { codim, hyperplanes: set.clone(), equations: key.iter().map(|(_, r)| dense(r, n)).collect(), mobius });
            }
        }
        IntersectionLattice { dimension: n, flats }
    }

    pub fn rank(&self) -> usize {
        self.flats.iter().map(|f| f.codim).max().unwrap_or(0)
    }

    /// Number of flats of each codimension.
    pub fn flat_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.rank() + 1];
        for f in &self.flats {
            out[f.codim] += 1;
        }
        out
    }

    /// `sum |μ(X)| t^codim(X)`, coefficients from `t^0` up.
    pub fn poincare_polynomial(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.rank() + 1];
        for f in &self.flats {
            out[f.codim] += f.mobius.abs();
        }
        out
    }

    /// `sum μ(X) t^dim(X)`, coefficients from `t^0` up.
    pub fn characteristic_polynomial(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.dimension + 1];
        for f in &self.flats {
            out[self.dimension - f.codim] += f.mobius;
        }
        out
    }
}

fn dense(row: &SparseRow, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

/// `(1 + t)^n` coefficients.
pub fn binomial_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![0i64; row.len() + 1];
        for (i, c) in row.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        row = next;
    }
    row
}

/// Human-readable `1 + 3*t + 2*t^2`.
pub fn polynomial_in_t(coeffs: &[i64]) -> String {
    crate::liecoh::poincare_string(coeffs)
}
