use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{fmt_rational, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::linalg;

/// One rational weight per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn from_integers(w: &[i64]) -> Self {
        WeightVector(w.iter().map(|&x| super::rat(x)).collect())
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, exps: &[u32]) -> Rational {
        self.0.iter().zip(exps).map(|(w, &e)| w * Rational::from_integer(BigInt::from(e))).sum()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|w| w.is_positive())
    }

    /// Rescales to coprime integers (direction preserved).
    pub fn normalized(&self) -> WeightVector {
        let mut den = BigInt::one();
        for w in &self.0 {
            den = den.lcm(w.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|w| (w * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        WeightVector(ints.into_iter().map(|x| Rational::new(x, g.clone())).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rational).collect()
    }
}

impl Serialize for WeightVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(Rational),
    /// Occurring weighted degrees with their term counts, ascending.
    Inhomogeneous(Vec<(Rational, usize)>),
}

pub fn weighted_degree(p: &Polynomial, w: &WeightVector) -> Result<WeightedDegree> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut degs: Vec<(Rational, usize)> = Vec::new();
    for (m, _) in p.terms() {
        let d = w.dot(m.exponents());
        match degs.iter_mut().find(|(x, _)| *x == d) {
            Some((_, n)) => *n += 1,
            None => degs.push((d, 1)),
        }
    }
    degs.sort();
    if degs.len() == 1 {
        Ok(WeightedDegree::Homogeneous(degs.pop().unwrap().0))
    } else {
        Ok(WeightedDegree::Inhomogeneous(degs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Positivity {
    /// All weights > 0.
    Strict,
    /// All weights >= 0, and the polynomial has positive weighted degree.
    Weak,
}

/// Basis of the space of weight vectors for which `p` is homogeneous.
pub fn homogeneity_lattice(p: &Polynomial) -> Result<Vec<Vec<Rational>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.nvars();
    let exps: Vec<&[u32]> = p.terms().map(|(m, _)| m.exponents()).collect();
    let rows: Vec<Vec<Rational>> = exps[1..]
        .iter()
        .map(|e| (0..n).map(|i| super::rat(e[i] as i64 - exps[0][i] as i64)).collect())
        .collect();
    Ok(linalg::nullspace(&rows, n))
}

/// Weight vector making `p` quasihomogeneous with the requested positivity.
///
/// The homogeneity equations are solved exactly; a positive point is then
/// searched for by enumerating the vertices of the (pointed) polyhedron
/// `{w in solutions : w_i >= 1}` (strict) or `{w_i >= 0, deg_w p = 1}` (weak)
/// and keeping one minimizing the weight sum. The result is scaled to coprime
/// integers.
pub fn find_quasihomogeneous_weights(p: &Polynomial, positivity: Positivity) -> Result<Option<WeightVector>> {
    let basis = homogeneity_lattice(p)?;
    let n = p.nvars();
    let k = basis.len();
    if k == 0 || n == 0 {
        return Ok(None);
    }
    let e0: Vec<u32> = p.terms().next().unwrap().0.exponents().to_vec();
    let deg_row: Vec<Rational> = basis
        .iter()
        .map(|b| b.iter().zip(&e0).map(|(x, &e)| x * Rational::from_integer(BigInt::from(e))).sum())
        .collect();
    let deg = match positivity {
        Positivity::Strict => None,
        Positivity::Weak => Some(deg_row),
    };
    Ok(best_vertex(&basis, n, deg).map(|w| WeightVector(w).normalized()))
}

/// Strictly positive weights making every polynomial in `polys`
/// quasihomogeneous (each with its own degree).
pub fn find_positive_grading(polys: &[Polynomial]) -> Result<Option<WeightVector>> {
    let Some(first) = polys.first() else { return Ok(None) };
    let n = first.nvars();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in polys {
        let exps: Vec<&[u32]> = p.terms().map(|(m, _)| m.exponents()).collect();
        for e in exps.iter().skip(1) {
            rows.push((0..n).map(|i| super::rat(e[i] as i64 - exps[0][i] as i64)).collect());
        }
    }
    let basis = linalg::nullspace(&rows, n);
    if basis.is_empty() || n == 0 {
        return Ok(None);
    }
    Ok(best_vertex(&basis, n, None).map(|w| WeightVector(w).normalized()))
}

/// Vertex of `{w in span(basis) : w_i >= 1}` (or, with `deg_row`,
/// `{w_i >= 0, deg = 1}`) minimizing the weight sum, ties broken
/// lexicographically.
fn best_vertex(basis: &[Vec<Rational>], n: usize, deg_row: Option<Vec<Rational>>) -> Option<Vec<Rational>> {
    let k = basis.len();
    // w = sum_j lambda_j basis[j]; row i of `coord` expresses w_i in lambda.
    let coord: Vec<Vec<Rational>> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let weak = deg_row.is_some();
    let active = if weak { k - 1 } else { k };
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for subset in combinations(n, active) {
        let mut rows: Vec<Vec<Rational>> = subset.iter().map(|&i| coord[i].clone()).collect();
        let mut rhs: Vec<Rational> = vec![if weak { Rational::zero() } else { Rational::one() }; subset.len()];
        if let Some(d) = &deg_row {
            rows.push(d.clone());
            rhs.push(Rational::one());
        }
        if linalg::rank_dense(&rows) < k {
            continue;
        }
        let Some(lambda) = linalg::solve(&rows, &rhs) else { continue };
        let w: Vec<Rational> = coord.iter().map(|r| r.iter().zip(&lambda).map(|(a, b)| a * b).sum()).collect();
        let feasible = if weak { w.iter().all(|x| !x.is_negative()) } else { w.iter().all(|x| *x >= Rational::one()) };
        if !feasible {
            continue;
        }
        let obj: Rational = w.iter().sum();
        let better = match &best {
            None => true,
            Some((bo, bw)) => obj < *bo || (obj == *bo && w < *bw),
        };
        if better {
            best = Some((obj, w));
        }
    }
    best.map(|(_, w)| w)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, VariableContext};

    fn poly(text: &str) -> Polynomial {
        Polynomial::parse(text, &VariableContext::infer(text).unwrap()).unwrap()
    }

    #[test]
    fn cusp_degree() {
        let p = poly("x^2 - y^3");
        assert_eq!(weighted_degree(&p, &WeightVector::from_integers(&[3, 2])).unwrap(), WeightedDegree::Homogeneous(rat(6)));
    }

    #[test]
    fn inhomogeneous_degrees() {
        let p = poly("x + y^2");
        assert_eq!(
            weighted_degree(&p, &WeightVector::from_integers(&[1, 1])).unwrap(),
            WeightedDegree::Inhomogeneous(vec![(rat(1), 1), (rat(2), 1)])
        );
    }

    #[test]
    fn monomial_degree() {
        let p = poly("x1*x2*x3");
        assert_eq!(weighted_degree(&p, &WeightVector::from_integers(&[1, 1, 1])).unwrap(), WeightedDegree::Homogeneous(rat(3)));
    }

    #[test]
    fn zero_rejected() {
        let r = VariableContext::new(&["x"]).unwrap();
        assert_eq!(weighted_degree(&Polynomial::zero(&r), &WeightVector::from_integers(&[1])), Err(Error::ZeroPolynomial));
        assert_eq!(find_quasihomogeneous_weights(&Polynomial::zero(&r), Positivity::Strict), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn strict_weights() {
        assert_eq!(find_quasihomogeneous_weights(&poly("x^2 - y^3"), Positivity::Strict).unwrap(), Some(WeightVector::from_integers(&[3, 2])));
        assert_eq!(find_quasihomogeneous_weights(&poly("x1*x2"), Positivity::Strict).unwrap(), Some(WeightVector::from_integers(&[1, 1])));
    }

    #[test]
    fn f34_has_no_positive_weights() {
        // w3 = w2 - w1 and 3 w1 = 4 w2 force w3 < 0.
        let p = poly("(x1^3 - x2^4)*(x1*x3 + x2)");
        assert_eq!(find_quasihomogeneous_weights(&p, Positivity::Strict).unwrap(), None);
        assert_eq!(find_quasihomogeneous_weights(&p, Positivity::Weak).unwrap(), None);
        let lattice = homogeneity_lattice(&p).unwrap();
        assert_eq!(lattice.len(), 1);
        let w = WeightVector(lattice[0].clone()).normalized();
        let w = if w.0[0].is_negative() { WeightVector(w.0.iter().map(|x| -x).collect()) } else { w };
        assert_eq!(w, WeightVector::from_integers(&[4, 3, -1]));
    }

    #[test]
    fn weak_weights_allow_zero() {
        // x*(y + 1) is not strictly quasihomogeneous, weakly with w = (1, 0).
        let p = poly("x*y + x");
        assert_eq!(find_quasihomogeneous_weights(&p, Positivity::Strict).unwrap(), None);
        assert_eq!(find_quasihomogeneous_weights(&p, Positivity::Weak).unwrap(), Some(WeightVector::from_integers(&[1, 0])));
    }

    #[test]
    fn inhomogeneous_has_none() {
        assert_eq!(find_quasihomogeneous_weights(&poly("x + x^2"), Positivity::Weak).unwrap(), None);
    }
}
