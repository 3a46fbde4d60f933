//! Global b-functions: minimal polynomial of `s` modulo `Ann(f^s) + A_n[s] f`
//! and an independent functional-equation solver.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::annihilator::parameter_name;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseRow};
use crate::poly::{fmt_rational, homogeneity_lattice, Polynomial, Rational, TermOrder};
use crate::weyl::{apply_operator, left_groebner_basis, left_normal_form, Exponent, LeftIdeal, PowerAction, WeylContext, WeylElement};

/// A monic univariate polynomial in `s`, with its rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFunction {
    /// Coefficients from the constant term up; the last one is 1.
    pub coefficients: Vec<Rational>,
    /// Rational roots with multiplicities, ascending.
    pub roots: Vec<(Rational, u32)>,
    /// Monic factor left after removing the rational roots (`[1]` when `b`
    /// splits over the rationals).
    pub cofactor: Vec<Rational>,
}

impl BFunction {
    pub fn from_coefficients(coefficients: Vec<Rational>) -> Result<Self> {
        let coefficients = trim(coefficients);
        let Some(lead) = coefficients.last().cloned() else { return Err(Error::ZeroPolynomial) };
        let coefficients: Vec<Rational> = coefficients.iter().map(|c| c / &lead).collect();
        let (roots, cofactor) = rational_roots(&coefficients);
        Ok(BFunction { coefficients, roots, cofactor })
    }

    /// `prod (s - r)^m` over the given roots.
    pub fn from_roots(roots: &[(Rational, u32)]) -> Self {
        let mut c = vec![Rational::one()];
        for (r, m) in roots {
            for _ in 0..*m {
                c = poly_mul(&c, &[-r.clone(), Rational::one()]);
            }
        }
        BFunction::from_coefficients(c).expect("nonzero")
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn evaluate(&self, s: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * s + c)
    }

    pub fn splits(&self) -> bool {
        self.cofactor.len() == 1
    }

    /// Integer roots strictly below `-1`.
    pub fn integer_roots_below_minus_one(&self) -> Vec<Rational> {
        let m1 = -Rational::one();
        self.roots.iter().filter(|(r, _)| r.is_integer() && *r < m1).map(|(r, _)| r.clone()).collect()
    }

    /// Whether the root multiset is invariant under `r -> -2 - r`.
    pub fn roots_symmetric_about_minus_one(&self) -> bool {
        let two = Rational::from_integer(2.into());
        let mirrored: BTreeMap<Rational, u32> = self.roots.iter().map(|(r, m)| (-&two - r, *m)).collect();
        let original: BTreeMap<Rational, u32> = self.roots.iter().cloned().collect();
        self.splits() && mirrored == original
    }

    /// Factored form such as `(s + 1)^2*(s + 5/6)`.
    pub fn factored(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (r, m) in self.roots.iter().rev() {
            let lin = if r.is_zero() {
                var.to_string()
            } else if r.is_negative() {
                format!("({var} + {})", fmt_rational(&-r))
            } else {
                format!("({var} - {})", fmt_rational(r))
            };
            parts.push(if *m == 1 { lin } else { format!("{lin}^{m}") });
        }
        if !self.splits() {
            parts.push(format!("({})", poly_string(&self.cofactor, var)));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn expanded(&self, var: &str) -> String {
        poly_string(&self.coefficients, var)
    }
}

impl fmt::Display for BFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factored("s"))
    }
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    c
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_string(c: &[Rational], var: &str) -> String {
    let mut terms: Vec<(Rational, String)> = Vec::new();
    for (k, x) in c.iter().enumerate().rev() {
        if x.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push((x.clone(), mono));
    }
    let mut out = String::new();
    crate::poly::polynomial_write_terms(&mut out, terms.into_iter()).expect("write to string");
    out
}

/// Divides by `(s - r)`; `None` if `r` is not a root.
fn deflate(c: &[Rational], r: &Rational) -> Option<Vec<Rational>> {
    let n = c.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut acc = Rational::zero();
    for k in (0..=n).rev() {
        acc = &acc * r + &c[k];
        if k > 0 {
            q[k - 1] = acc.clone();
        }
    }
    if acc.is_zero() {
        Some(q)
    } else {
        None
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let Some(m) = n.to_u64() else { return Vec::new() };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    out
}

/// Rational roots (rational root theorem) and the remaining monic factor.
fn rational_roots(monic: &[Rational]) -> (Vec<(Rational, u32)>, Vec<Rational>) {
    let mut c = monic.to_vec();
    let mut roots: Vec<(Rational, u32)> = Vec::new();
    // Zero roots first.
    let mut zero_mult = 0;
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if c.len() > 1 {
        let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut cands: Vec<Rational> = Vec::new();
        for p in divisors(&ints[0]) {
            for q in divisors(ints.last().unwrap()) {
                let r = Rational::new(p.clone(), q);
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            let mut m = 0;
            while c.len() > 1 {
                match deflate(&c, &r) {
                    Some(q) => {
                        c = q;
                        m += 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                roots.push((r, m));
            }
        }
    }
    roots.sort();
    let lead = c.last().cloned().unwrap_or_else(Rational::one);
    (roots, c.iter().map(|x| x / &lead).collect())
}

/// Minimal polynomial of `s` modulo `ann_fs + A_n[s] f`, i.e. the monic
/// generator of the elimination ideal `(Ann(f^s) + f) ∩ Q[s]`.
pub fn bfunction_from_annihilator(f: &Polynomial, ann_fs: &LeftIdeal, budget: &Budget, max_degree: usize) -> Result<BFunction> {
    let ctx = ann_fs.context();
    let mut gens = ann_fs.generators().to_vec();
    gens.push(WeylElement::from_polynomial(ctx, f)?);
    let ord = TermOrder::DegRevLex;
    let gb = left_groebner_basis(ctx, &gens, &ord, budget)?;
    let s = WeylElement::param(ctx, 0);
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let offset = 1usize << 40;
    let mut ech = Echelon::new();
    let mut power = WeylElement::one(ctx);
    for k in 0..=max_degree {
        let nf = left_normal_form(&power, &gb, &ord, budget)?;
        let mut row: SparseRow = nf
            .terms()
            .map(|(m, c)| {
                let next = index.len();
                (*index.entry(m.to_vec()).or_insert(next), c.clone())
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row.push((offset + k, Rational::one()));
        let reduced = ech.reduce(row);
        if reduced.first().map_or(false, |(c, _)| *c >= offset) {
            // Dependency: sum_j c_j s^j lies in the ideal.
            let mut coeffs = vec![Rational::zero(); k + 1];
            for (c, v) in &reduced {
                coeffs[c - offset] = v.clone();
            }
            return BFunction::from_coefficients(coeffs);
        }
        ech.insert(reduced);
        power = &power * &s;
    }
    Err(Error::Invalid(format!("no b-function of degree <= {max_degree}")))
}

/// Solution of the functional equation `P f^(s+1) = b(s) f^s`.
#[derive(Clone, Debug)]
pub struct FunctionalEquation {
    pub b: BFunction,
    pub operator: WeylElement,
}

/// Finds the monic `b` of least degree (at most `bound`) admitting an
/// operator `P` of order at most `bound` whose coefficients have degree at
/// most `bound` in `x` and in `s`. `P` is restricted to the weight class of
/// `-deg f` under the homogeneity lattice of `f`, which loses no solutions.
pub fn bfunction_oracle(f: &Polynomial, bound: u32, budget: &Budget) -> Result<Option<FunctionalEquation>> {
    let n = f.nvars();
    let vars = f.ring();
    let sname = parameter_name(vars);
    let ctx = WeylContext::with_params(vars, &[sname.as_str()])?;
    let ring = ctx.coefficient_ring().clone();
    let lattice = homogeneity_lattice(f)?;
    let e0: Vec<u32> = f.terms().next().unwrap().0.exponents().to_vec();
    let fdeg: Vec<Rational> = lattice
        .iter()
        .map(|w| (0..n).map(|i| &w[i] * Rational::from_integer(e0[i].into())).sum())
        .collect();
    // Operator monomials x^a s^c ∂^b in the right weight class.
    let mut monos: Vec<Vec<u32>> = Vec::new();
    for b in exps_upto(n, bound) {
        for a in exps_upto(n, bound) {
            let ok = lattice.iter().zip(&fdeg).all(|(w, d)| {
                let wt: Rational = (0..n).map(|i| &w[i] * Rational::from_integer((a[i] as i64 - b[i] as i64).into())).sum();
                wt == -d
            });
            if !ok {
                continue;
            }
            for c in 0..=bound {
                let mut e = a.clone();
                e.extend(b.iter().copied());
                e.push(c);
                monos.push(e);
            }
        }
    }
    budget.tick_n(monos.len() as u64)?;
    let fe = f.embed(&ring);
    let mut fpow = vec![Polynomial::one(&ring)];
    for i in 1..=bound as usize {
        let next = &fpow[i - 1] * &fe;
        fpow.push(next);
    }
    let start = PowerAction { numerator: fe.clone(), drop: 0 };
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut add_column = |poly: &Polynomial, index: &mut HashMap<Vec<u32>, usize>| {
        let mut col = Vec::new();
        for (m, c) in poly.terms() {
            let next = index.len();
            col.push((*index.entry(m.exponents().to_vec()).or_insert(next), c.clone()));
        }
        columns.push(col);
    };
    for m in &monos {
        budget.tick()?;
        let op = WeylElement::from_terms(&ctx, [(m.clone(), Rational::one())]);
        let r = apply_operator(&op, f, &Exponent::Symbolic(0), &start)?;
        let num = &r.numerator * &fpow[(bound - r.drop) as usize];
        add_column(&num, &mut index);
    }
    // Columns for -s^j f^bound, j = 0..=bound.
    let s = Polynomial::var(&ring, n);
    let mut sp = fpow[bound as usize].clone();
    let mut b_cols = Vec::new();
    for _ in 0..=bound {
        b_cols.push(-&sp);
        sp = &sp * &s;
    }
    let np = monos.len();
    for (k, target) in b_cols.iter().enumerate() {
        // Unknowns: P coefficients, then b_0..b_{k-1}; b_k = 1 moves to the
        // right-hand side.
        let mut index_k = index.clone();
        let mut cols: Vec<Vec<(usize, Rational)>> = columns.clone();
        for bc in &b_cols[..k] {
            let mut col = Vec::new();
            for (m, c) in bc.terms() {
                let next = index_k.len();
                col.push((*index_k.entry(m.exponents().to_vec()).or_insert(next), c.clone()));
            }
            cols.push(col);
        }
        let ncols = cols.len();
        let mut rhs: Vec<(usize, Rational)> = Vec::new();
        for (m, c) in target.terms() {
            let next = index_k.len();
            rhs.push((*index_k.entry(m.exponents().to_vec()).or_insert(next), -c.clone()));
        }
        let mut rows: Vec<SparseRow> = vec![Vec::new(); index_k.len()];
        for (j, col) in cols.iter().enumerate() {
            for (r, c) in col {
                rows[*r].push((j, c.clone()));
            }
        }
        for (r, c) in rhs {
            rows[r].push((ncols, c));
        }
        budget.tick_n(rows.len() as u64)?;
        if let Some(sol) = linalg::solve_sparse(rows, ncols) {
            let mut coeffs: Vec<Rational> = sol[np..].to_vec();
            coeffs.push(Rational::one());
            let operator = WeylElement::from_terms(
                &ctx,
                monos.iter().zip(&sol[..np]).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
            );
            return Ok(Some(FunctionalEquation { b: BFunction::from_coefficients(coeffs)?, operator }));
        }
    }
    Ok(None)
}

/// Checks `P f^(s+1) = b(s) f^s` exactly.
pub fn verify_functional_equation(f: &Polynomial, eq: &FunctionalEquation) -> Result<bool> {
    let ctx = eq.operator.context();
    let ring = ctx.coefficient_ring();
    let fe = f.embed(ring);
    let r = apply_operator(&eq.operator, f, &Exponent::Symbolic(0), &PowerAction { numerator: fe.clone(), drop: 0 })?;
    let n = f.nvars();
    let s = Polynomial::var(ring, n);
    let mut b = Polynomial::zero(ring);
    let mut sp = Polynomial::one(ring);
    for c in &eq.b.coefficients {
        b = &b + &sp.scale(c);
        sp = &sp * &s;
    }
    let mut rhs = b;
    for _ in 0..r.drop {
        rhs = &rhs * &fe;
    }
    Ok(r.numerator == rhs)
}

fn exps_upto(n: usize, d: u32) -> Vec<Vec<u32>> {
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
