//! Chevalley-Eilenberg cohomology of the Lie algebra of a linear free
//! divisor.
//!
//! When every basis field has linear coefficients the brackets close with
//! constant structure constants. The Betti numbers of the resulting Lie
//! algebra agree with those of the complement for reductive linear free
//! divisors; reductivity itself is not decided here.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};
use crate::logder::LogDerivationBasis;
use crate::poly::Rational;

/// Statement attached to every cohomology report.
pub const REDUCTIVE_CAVEAT: &str =
    "Lie algebra cohomology equals the cohomology of the complement only for reductive linear free divisors; reductivity is not checked";

/// Finite-dimensional Lie algebra given by `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Checks antisymmetry and the Jacobi identity.
    pub fn new(structure: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let g = LieAlgebra::unchecked(structure)?;
        g.check_antisymmetry()?;
        if let Some((i, j, k)) = g.jacobi_failure() {
            return Err(Error::Certificate(format!("Jacobi identity fails for (e{}, e{}, e{})", i + 1, j + 1, k + 1)));
        }
        Ok(g)
    }

    /// Only shape checks; lets tests build corrupted algebras.
    pub fn unchecked(structure: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = structure.len();
        if structure.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Invalid("structure constants must form an m x m x m array".into()));
        }
        Ok(LieAlgebra { dim, c: structure })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, c: vec![vec![vec![Rational::zero(); dim]; dim]; dim] }
    }

    /// From sparse brackets `(i, j, [(k, c)])`, zero-based, `i < j`.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self> {
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, v) in brackets {
            for (k, x) in v {
                if *i >= dim || *j >= dim || *k >= dim {
                    return Err(Error::Invalid("bracket index out of range".into()));
                }
                c[*i][*j][*k] += x;
                c[*j][*i][*k] -= x;
            }
        }
        LieAlgebra::new(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|x| x.is_zero())
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if self.c[i][j][k] != -&self.c[j][i][k] {
                        return Err(Error::Certificate(format!("bracket is not antisymmetric at (e{}, e{})", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let a = xi * yj;
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &a * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// First basis triple violating Jacobi, if any.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let m = self.dim;
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    if (0..m).any(|l| !(&t1[l] + &t2[l] + &t3[l]).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Result of reading a Lie algebra off a Saito basis.
#[derive(Clone, Debug)]
pub enum WeightZero {
    Linear(LieAlgebra),
    NotLinear { reason: String },
}

/// The Lie algebra spanned by a basis of linear vector fields, with
/// structure constants `α_k^{ij}`.
pub fn weight_zero_fields(basis: &LogDerivationBasis) -> WeightZero {
    for (i, d) in basis.derivations.iter().enumerate() {
        for (j, c) in d.coefficients.iter().enumerate() {
            if !c.is_zero() && !c.is_homogeneous_linear() {
                let name = &basis.f.ring().names()[j];
                return WeightZero::NotLinear { reason: format!("coefficient of d{name} in field {} is {c}, not a linear form", i + 1) };
            }
        }
    }
    let m = basis.n();
    let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            for k in 0..m {
                let a = basis.structure_constant(i, j, k);
                match a.constant_value() {
                    Some(v) => c[i][j][k] = v,
                    None => {
                        return WeightZero::NotLinear { reason: format!("structure function {a} is not constant") };
                    }
                }
            }
        }
    }
    match LieAlgebra::new(c) {
        Ok(g) => WeightZero::Linear(g),
        Err(e) => WeightZero::NotLinear { reason: e.to_string() },
    }
}

/// Betti numbers of the Chevalley-Eilenberg complex with trivial
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub dimension: usize,
    pub betti: Vec<usize>,
    /// `ranks[k]` is the rank of `d_k: Λ^k -> Λ^{k+1}`.
    pub ranks: Vec<usize>,
}

impl CohomologyTable {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// `sum b_k t^k`, e.g. `1 + 3*t + 3*t^2 + t^3`.
    pub fn poincare_string(&self) -> String {
        poincare_string(&self.betti.iter().map(|&b| b as i64).collect::<Vec<_>>())
    }
}

pub(crate) fn poincare_string(coeffs: &[i64]) -> String {
    let mut parts = Vec::new();
    for (k, &b) in coeffs.iter().enumerate() {
        if b == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let text = match (b, mono.is_empty()) {
            (_, true) => b.abs().to_string(),
            (1 | -1, false) => mono,
            _ => format!("{}*{mono}", b.abs()),
        };
        if parts.is_empty() {
            parts.push(if b < 0 { format!("-{text}") } else { text });
        } else {
            parts.push(format!("{} {text}", if b < 0 { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Increasing `k`-subsets of `0..m` in lexicographic order.
pub(crate) fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Matrix of `d_k` with rows indexed by `(k+1)`-subsets and columns by
/// `k`-subsets, using
/// `dω(x_0..x_k) = sum_{a<b} (-1)^{a+b} ω([x_a, x_b], x_0..^a..^b..x_k)`.
pub fn ce_differential(g: &LieAlgebra, k: usize) -> Vec<SparseRow> {
    let m = g.dim;
    let cols = subsets(m, k);
    let col_index: std::collections::HashMap<Vec<usize>, usize> = cols.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut rows = Vec::new();
    for j in subsets(m, k + 1) {
        let mut row: std::collections::BTreeMap<usize, Rational> = std::collections::BTreeMap::new();
        for a in 0..j.len() {
            for b in a + 1..j.len() {
                let sign_ab = if (a + b) % 2 == 0 { Rational::one() } else { -Rational::one() };
                let rest: Vec<usize> = j.iter().enumerate().filter(|(t, _)| *t != a && *t != b).map(|(_, &v)| v).collect();
                for l in 0..m {
                    let c = &g.c[j[a]][j[b]][l];
                    if c.is_zero() || rest.contains(&l) {
                        continue;
                    }
                    // ω_I(e_l, rest) = sign of sorting (l, rest) into I.
                    let pos = rest.iter().filter(|&&r| r < l).count();
                    let mut set = rest.clone();
                    set.insert(pos, l);
                    let sign = if pos % 2 == 0 { Rational::one() } else { -Rational::one() };
                    *row.entry(col_index[&set]).or_insert_with(Rational::zero) += &sign_ab * c * sign;
                }
            }
        }
        rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }
    rows
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Exact Betti numbers. Verifies `d ∘ d = 0` on the way.
pub fn chevalley_eilenberg_cohomology(g: &LieAlgebra) -> Result<CohomologyTable> {
    if let Some((i, j, k)) = g.jacobi_failure() {
        return Err(Error::Certificate(format!("Jacobi identity fails for (e{}, e{}, e{})", i + 1, j + 1, k + 1)));
    }
    let m = g.dim;
    let mut ranks = Vec::with_capacity(m + 1);
    let mut prev: Option<Vec<SparseRow>> = None;
    for k in 0..=m {
        let d = ce_differential(g, k);
        if let Some(p) = &prev {
            if !composite_is_zero(&d, p, binomial(m, k - 1)) {
                return Err(Error::Certificate(format!("d_{k} d_{} is not zero", k - 1)));
            }
        }
        ranks.push(linalg::rank(d.iter().cloned()));
        prev = Some(d);
    }
    let betti = (0..=m)
        .map(|k| binomial(m, k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    Ok(CohomologyTable { dimension: m, betti, ranks })
}

/// `outer * inner == 0` where `inner` maps `ncols`-dimensional space.
fn composite_is_zero(outer: &[SparseRow], inner: &[SparseRow], ncols: usize) -> bool {
    for row in outer {
        let mut acc = vec![Rational::zero(); ncols];
        for (mid, x) in row {
            for (c, y) in &inner[*mid] {
                acc[*c] += x * y;
            }
        }
        if acc.iter().any(|v| !v.is_zero()) {
            return false;
        }
    }
    true
}

/// Structure constants as strings `[e_i, e_j] = ...` for reports.
pub fn bracket_table(g: &LieAlgebra) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..g.dim {
        for j in i + 1..g.dim {
            let terms: Vec<(Rational, String)> = (0..g.dim)
                .filter(|&k| !g.c[i][j][k].is_zero())
                .map(|k| (g.c[i][j][k].clone(), format!("e{}", k + 1)))
                .collect();
            if terms.is_empty() {
                continue;
            }
            let mut rhs = String::new();
            crate::poly::polynomial_write_terms(&mut rhs, terms.into_iter()).expect("write to string");
            out.push(format!("[e{}, e{}] = {rhs}", i + 1, j + 1));
        }
    }
    out
}
