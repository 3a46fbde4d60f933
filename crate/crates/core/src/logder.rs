//! Logarithmic derivations, Saito matrices and freeness certificates.

use std::fmt;

use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{module_groebner_basis, module_normal_form, syzygies, Ideal};
use crate::poly::{weighted_degree, Monomial, Polynomial, Rational, TermOrder, WeightVector, WeightedDegree};
use crate::weyl::{WeylContext, WeylElement};

/// A vector field `sum a_i ∂_i` together with its cofactor `α`, so that
/// `δ(f) = α f` for the divisor it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub coefficients: Vec<Polynomial>,
    pub cofactor: Polynomial,
}

impl Derivation {
    pub fn new(coefficients: Vec<Polynomial>, cofactor: Polynomial) -> Self {
        Derivation { coefficients, cofactor }
    }

    /// `δ(g)`.
    pub fn apply(&self, g: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(g.ring());
        for (i, a) in self.coefficients.iter().enumerate() {
            if !a.is_zero() {
                out = &out + &(a * &g.derivative(i));
            }
        }
        out
    }

    /// Checks `δ(f) = α f` exactly.
    pub fn certify(&self, f: &Polynomial) -> bool {
        self.apply(f) == &self.cofactor * f
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|a| a.is_zero())
    }

    /// Coefficients of `[self, other]`.
    pub fn bracket(&self, other: &Derivation) -> Vec<Polynomial> {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| &self.apply(b) - &other.apply(a))
            .collect()
    }

    /// Largest total degree of a coefficient.
    pub fn degree(&self) -> u32 {
        self.coefficients.iter().filter_map(|a| a.total_degree()).max().unwrap_or(0)
    }

    /// The derivation as a first-order Weyl operator `sum a_i ∂_i`.
    pub fn to_weyl(&self, ctx: &WeylContext) -> Result<WeylElement> {
        let mut out = WeylElement::zero(ctx);
        for (i, a) in self.coefficients.iter().enumerate() {
            let ai = WeylElement::from_polynomial(ctx, a)?;
            out = &out + &(&ai * &WeylElement::d(ctx, i));
        }
        Ok(out)
    }

    fn sort_key(&self) -> (u32, usize, Vec<String>) {
        let pivot = self.coefficients.iter().position(|a| !a.is_zero()).unwrap_or(usize::MAX);
        (self.degree(), pivot, self.coefficients.iter().map(|a| a.to_string()).collect())
    }

    /// Scales to primitive integer coefficients with a positive leading
    /// coefficient in the first nonzero component.
    fn normalized(&self) -> Derivation {
        let Some(first) = self.coefficients.iter().find(|a| !a.is_zero()) else { return self.clone() };
        // Content of the whole vector: gcd of numerators over lcm of
        // denominators.
        let mut nums = num_bigint::BigInt::zero();
        let mut dens = num_bigint::BigInt::one();
        for a in &self.coefficients {
            for (_, c) in a.terms() {
                nums = num_integer::Integer::gcd(&nums, c.numer());
                dens = num_integer::Integer::lcm(&dens, c.denom());
            }
        }
        let mut scale = Rational::new(dens, nums);
        let lead = first.leading_term(&TermOrder::DegRevLex).map(|(_, c)| c.clone()).unwrap();
        if lead < Rational::zero() {
            scale = -scale;
        }
        Derivation {
            coefficients: self.coefficients.iter().map(|a| a.scale(&scale)).collect(),
            cofactor: self.cofactor.scale(&scale),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (a, name) in self.coefficients.iter().zip(names) {
            if a.is_zero() {
                continue;
            }
            let text = a.to_string();
            let piece = if a.is_constant() {
                match text.as_str() {
                    "1" => format!("d{name}"),
                    "-1" => format!("-d{name}"),
                    _ => format!("{text}*d{name}"),
                }
            } else if a.len() == 1 {
                format!("{text}*d{name}")
            } else {
                format!("({text})*d{name}")
            };
            parts.push(piece);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coefficients.first() {
            Some(a) => write!(f, "{}", self.display_with(a.ring().names())),
            None => write!(f, "0"),
        }
    }
}

/// Greatest common divisor, monic under degrevlex, via `<a> ∩ <b>`.
pub fn polynomial_gcd(a: &Polynomial, b: &Polynomial, budget: &Budget) -> Result<Polynomial> {
    a.check_same_ring(b)?;
    let ord = TermOrder::DegRevLex;
    if a.is_zero() {
        return Ok(b.monic(&ord));
    }
    if b.is_zero() {
        return Ok(a.monic(&ord));
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(a.ring()));
    }
    let ring = a.ring().extend(&["gcd_t"])?;
    let t = Polynomial::var(&ring, ring.len() - 1);
    let ae = a.embed(&ring);
    let be = b.embed(&ring);
    let one_minus_t = &Polynomial::one(&ring) - &t;
    let ideal = Ideal::new(&ring, vec![&t * &ae, &one_minus_t * &be])?;
    let elim = ideal.eliminate(&[ring.len() - 1], budget)?;
    let lcm = elim
        .into_iter()
        .min_by_key(|g| g.total_degree())
        .ok_or_else(|| Error::Invalid("empty intersection".into()))?;
    let back: Vec<usize> = (0..a.nvars()).collect();
    let lcm = lcm.remap(a.ring(), &back_map(&back, ring.len()));
    let prod = a * b;
    let g = prod.div_exact(&lcm).ok_or_else(|| Error::Certificate("lcm does not divide the product".into()))?;
    Ok(g.monic(&ord))
}

/// Index map dropping trailing auxiliary variables (they must not occur).
fn back_map(keep: &[usize], len: usize) -> Vec<usize> {
    let mut map: Vec<usize> = keep.to_vec();
    map.resize(len, usize::MAX);
    map
}

/// Rejects `f` with a repeated factor; `gcd(f, ∂f) = 1` exactly when `f` is
/// squarefree in characteristic zero.
pub fn check_squarefree(f: &Polynomial, budget: &Budget) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        if g.is_constant() {
            break;
        }
        g = polynomial_gcd(&g, &f.derivative(i), budget)?;
    }
    if g.is_constant() {
        Ok(())
    } else {
        Err(Error::NotSquarefree { factor: g.to_string() })
    }
}

/// Generators of `Der(-log f)` from the syzygies of `(f_x1, ..., f_xn, f)`,
/// pruned to an irredundant set and normalized.
pub fn logarithmic_derivations(f: &Polynomial, budget: &Budget) -> Result<Vec<Derivation>> {
    if f.is_constant() {
        return Err(Error::Invalid("logarithmic derivations of a constant".into()));
    }
    check_squarefree(f, budget)?;
    let n = f.nvars();
    let mut tuple: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
    tuple.push(f.clone());
    let syz = syzygies(&tuple, &TermOrder::DegRevLex, budget)?;
    let mut gens: Vec<Derivation> = syz
        .generators
        .into_iter()
        .map(|s| {
            let mut v = s.0;
            let b = v.pop().unwrap();
            Derivation::new(v, -&b).normalized()
        })
        .collect();
    gens.sort_by_key(|d| d.sort_key());
    gens.dedup();
    let gens = prune(gens, budget)?;
    for d in &gens {
        if !d.certify(f) {
            return Err(Error::Certificate(format!("derivation {d} is not logarithmic")));
        }
    }
    Ok(gens)
}

fn as_vector(d: &Derivation) -> Vec<Polynomial> {
    let mut v = d.coefficients.clone();
    v.push(d.cofactor.clone());
    v
}

/// Drops generators lying in the module spanned by the others, largest first.
fn prune(mut gens: Vec<Derivation>, budget: &Budget) -> Result<Vec<Derivation>> {
    let ord = TermOrder::DegRevLex;
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        if gens.len() <= 1 {
            break;
        }
        let others: Vec<Vec<Polynomial>> =
            gens.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, d)| as_vector(d)).collect();
        let gb = module_groebner_basis(&others, &ord, budget)?;
        if module_normal_form(&as_vector(&gens[i]), &gb, &ord).iter().all(|p| p.is_zero()) {
            gens.remove(i);
        }
    }
    Ok(gens)
}

/// Whether `d` lies in the module generated by `gens`.
pub fn derivation_in_span(d: &Derivation, gens: &[Derivation], budget: &Budget) -> Result<bool> {
    let ord = TermOrder::DegRevLex;
    let vecs: Vec<Vec<Polynomial>> = gens.iter().map(as_vector).collect();
    let gb = module_groebner_basis(&vecs, &ord, budget)?;
    Ok(module_normal_form(&as_vector(d), &gb, &ord).iter().all(|p| p.is_zero()))
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    let ring = m[0][0].ring().clone();
    fn rec(m: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], ring: &crate::poly::VariableContext) -> Polynomial {
        if rows.len() == 1 {
            return m[rows[0]][cols[0]].clone();
        }
        let r = rows[0];
        let mut acc = Polynomial::zero(ring);
        for (k, &c) in cols.iter().enumerate() {
            if m[r][c].is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = rec(m, &rows[1..], &sub_cols, ring);
            let term = &m[r][c] * &minor;
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    rec(m, &idx, &idx, &ring)
}

/// `adj(m)` with `m * adj(m) = det(m) * I`.
pub fn adjugate(m: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    if n == 1 {
        return vec![vec![Polynomial::one(&ring)]];
    }
    let mut adj = vec![vec![Polynomial::zero(&ring); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Polynomial>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = determinant(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    adj
}

/// A certified basis of `Der(-log f)`.
#[derive(Clone, Debug)]
pub struct LogDerivationBasis {
    pub f: Polynomial,
    pub derivations: Vec<Derivation>,
    /// Row `i` lists the coefficients of `δ_i`.
    pub saito: Vec<Vec<Polynomial>>,
    pub determinant: Polynomial,
    /// `det = unit * f`.
    pub unit: Rational,
    /// `structure[i][j][k]` for `i < j`: `[δ_i, δ_j] = sum_k structure[i][j][k] δ_k`.
    pub structure: Vec<Vec<Vec<Polynomial>>>,
}

impl LogDerivationBasis {
    pub fn n(&self) -> usize {
        self.derivations.len()
    }

    pub fn cofactors(&self) -> Vec<Polynomial> {
        self.derivations.iter().map(|d| d.cofactor.clone()).collect()
    }

    /// `α_k^{ij}`, zero-based, antisymmetric in `i, j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Polynomial {
        if i < j {
            self.structure[i][j][k].clone()
        } else if i > j {
            -&self.structure[j][i][k]
        } else {
            Polynomial::zero(self.f.ring())
        }
    }

    /// Re-verifies every certificate: cofactors, determinant identity and
    /// bracket closure.
    pub fn verify(&self) -> bool {
        let n = self.n();
        if !self.derivations.iter().all(|d| d.certify(&self.f)) {
            return false;
        }
        if determinant(&self.saito) != self.f.scale(&self.unit) || self.unit.is_zero() {
            return false;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let br = self.derivations[i].bracket(&self.derivations[j]);
                for c in 0..n {
                    let mut rhs = Polynomial::zero(self.f.ring());
                    for k in 0..n {
                        rhs = &rhs + &(&self.structure[i][j][k] * &self.derivations[k].coefficients[c]);
                    }
                    if rhs != br[c] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Outcome of the Saito criterion search.
#[derive(Clone, Debug)]
pub enum Freeness {
    Free(Box<LogDerivationBasis>),
    /// No `n`-subset of the generators has determinant `unit * f`; carries
    /// the nonzero determinant of least degree seen, if any.
    NotDetected { best_determinant: Option<Polynomial> },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free(_))
    }

    pub fn basis(&self) -> Option<&LogDerivationBasis> {
        match self {
            Freeness::Free(b) => Some(b),
            Freeness::NotDetected { .. } => None,
        }
    }
}

fn constant_ratio(det: &Polynomial, f: &Polynomial) -> Option<Rational> {
    let ord = TermOrder::DegRevLex;
    let (m, c) = det.leading_term(&ord)?;
    let (mf, cf) = f.leading_term(&ord)?;
    if m != mf {
        return None;
    }
    let u = c / cf;
    if *det == f.scale(&u) {
        Some(u)
    } else {
        None
    }
}

/// Searches `n`-subsets of `gens` (in order) for one whose Saito matrix has
/// determinant equal to a nonzero constant times `f`.
pub fn saito_freeness_test(f: &Polynomial, gens: &[Derivation]) -> Result<Freeness> {
    let n = f.nvars();
    let mut best: Option<Polynomial> = None;
    let mut found: Option<(Vec<Derivation>, Polynomial, Rational)> = None;
    if gens.len() >= n {
        let mut combo: Vec<usize> = (0..n).collect();
        loop {
            let rows: Vec<Vec<Polynomial>> = combo.iter().map(|&i| gens[i].coefficients.clone()).collect();
            let det = determinant(&rows);
            if let Some(u) = constant_ratio(&det, f) {
                found = Some((combo.iter().map(|&i| gens[i].clone()).collect(), det, u));
                break;
            }
            if !det.is_zero() && best.as_ref().map_or(true, |b| det.total_degree() < b.total_degree()) {
                best = Some(det);
            }
            if !next_combination(&mut combo, gens.len()) {
                break;
            }
        }
    }
    let Some((derivations, det, unit)) = found else {
        return Ok(Freeness::NotDetected { best_determinant: best });
    };
    let saito: Vec<Vec<Polynomial>> = derivations.iter().map(|d| d.coefficients.clone()).collect();
    let structure = structure_constants(f, &derivations, &saito, &det)?;
    let basis = LogDerivationBasis { f: f.clone(), derivations, saito, determinant: det, unit, structure };
    if !basis.verify() {
        return Err(Error::Certificate("Saito basis failed verification".into()));
    }
    Ok(Freeness::Free(Box::new(basis)))
}

/// Advances `combo` to the next `k`-subset of `0..m` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], m: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < m - k + i {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves `[δ_i, δ_j] = sum_k α_k δ_k` through the adjugate of the Saito
/// matrix; the division by the determinant must be exact.
fn structure_constants(
    f: &Polynomial,
    ders: &[Derivation],
    saito: &[Vec<Polynomial>],
    det: &Polynomial,
) -> Result<Vec<Vec<Vec<Polynomial>>>> {
    let n = ders.len();
    let ring = f.ring().clone();
    let adj = adjugate(saito);
    let mut out = vec![vec![vec![Polynomial::zero(&ring); n]; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let br = ders[i].bracket(&ders[j]);
            // α A = br, so α = br adj(A) / det.
            for k in 0..n {
                let mut num = Polynomial::zero(&ring);
                for (c, b) in br.iter().enumerate() {
                    num = &num + &(b * &adj[c][k]);
                }
                let a = num.div_exact(det).ok_or_else(|| {
                    Error::Certificate(format!("bracket [δ{},δ{}] not in the span of the basis", i + 1, j + 1))
                })?;
                out[i][j][k] = a;
            }
        }
    }
    Ok(out)
}

/// Computes generators and runs the Saito search.
pub fn free_basis(f: &Polynomial, budget: &Budget) -> Result<Freeness> {
    let gens = logarithmic_derivations(f, budget)?;
    saito_freeness_test(f, &gens)
}

/// `E = sum w_i x_i ∂_i` with `E(f) = deg_w(f) f`, checked exactly.
pub fn euler_field(f: &Polynomial, w: &WeightVector) -> Result<Derivation> {
    let d = match weighted_degree(f, w)? {
        WeightedDegree::Homogeneous(d) => d,
        WeightedDegree::Inhomogeneous(_) => return Err(Error::NotHomogeneous),
    };
    let ring = f.ring();
    let coefficients: Vec<Polynomial> = w
        .weights()
        .iter()
        .enumerate()
        .map(|(i, wi)| Polynomial::monomial(ring, Monomial::var(ring.len(), i), wi.clone()))
        .collect();
    let e = Derivation::new(coefficients, Polynomial::constant(ring, d));
    if !e.certify(f) {
        return Err(Error::Certificate("Euler field identity failed".into()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, VariableContext};

    fn ring(names: &[&str]) -> VariableContext {
        VariableContext::new(names).unwrap()
    }

    fn p(text: &str, r: &VariableContext) -> Polynomial {
        Polynomial::parse(text, r).unwrap()
    }

    #[test]
    fn gcd_and_squarefree() {
        let r = ring(&["x", "y"]);
        let b = Budget::unlimited();
        let g = polynomial_gcd(&p("x^2*y - y^3", &r), &p("x*y + y^2", &r), &b).unwrap();
        assert_eq!(g, p("x*y + y^2", &r));
        assert!(check_squarefree(&p("x^2 - y^3", &r), &b).is_ok());
        match check_squarefree(&p("x^2*y", &r), &b) {
            Err(Error::NotSquarefree { factor }) => assert_eq!(factor, "x"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normal_crossing_pair() {
        let r = ring(&["x", "y"]);
        let f = p("x*y", &r);
        let gens = logarithmic_derivations(&f, &Budget::unlimited()).unwrap();
        let shown: Vec<String> = gens.iter().map(|d| d.to_string()).collect();
        assert!(shown.contains(&"x*dx".to_string()) && shown.contains(&"y*dy".to_string()), "{shown:?}");
        let free = saito_freeness_test(&f, &gens).unwrap();
        let basis = free.basis().unwrap();
        assert_eq!(basis.determinant, f);
        assert!(basis.structure[0][1].iter().all(|a| a.is_zero()));
        assert_eq!(basis.cofactors(), vec![p("1", &r), p("1", &r)]);
    }

    #[test]
    fn cusp_basis() {
        let r = ring(&["x", "y"]);
        let f = p("x^2 - y^3", &r);
        let gens = logarithmic_derivations(&f, &Budget::unlimited()).unwrap();
        assert_eq!(gens.len(), 2);
        let euler = Derivation::new(vec![p("3*x", &r), p("2*y", &r)], p("6", &r));
        let other = Derivation::new(vec![p("3*y^2", &r), p("2*x", &r)], p("0", &r));
        for d in [&euler, &other] {
            assert!(derivation_in_span(d, &gens, &Budget::unlimited()).unwrap());
        }
        let basis = saito_freeness_test(&f, &[euler, other]).unwrap();
        let basis = basis.basis().unwrap();
        assert_eq!(basis.determinant, f.scale(&rat(6)));
        assert!(basis.verify());
    }

    #[test]
    fn not_free_in_three_space() {
        // A cone over a smooth conic times nothing: x^2 + y^2 + z^2 is not free.
        let r = ring(&["x", "y", "z"]);
        let f = p("x^2 + y^2 + z^2", &r);
        let free = free_basis(&f, &Budget::unlimited()).unwrap();
        assert!(!free.is_free());
    }

    #[test]
    fn euler_fields() {
        let r = ring(&["x", "y"]);
        let e = euler_field(&p("x^2 - y^3", &r), &WeightVector::from_integers(&[3, 2])).unwrap();
        assert_eq!(e.to_string(), "3*x*dx + 2*y*dy");
        assert_eq!(e.cofactor, p("6", &r));
        assert!(euler_field(&p("x^2 - y^3", &r), &WeightVector::from_integers(&[1, 1])).is_err());
    }

    #[test]
    fn combinations() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
