//! Exact multivariate polynomials over the rationals.

mod monomial;
mod order;
pub mod parse;
mod polynomial;
mod weights;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use monomial::Monomial;
pub use order::TermOrder;
pub use polynomial::Polynomial;
pub(crate) use polynomial::write_terms as polynomial_write_terms;
pub use weights::{find_positive_grading, find_quasihomogeneous_weights, homogeneity_lattice, weighted_degree, Positivity, WeightVector, WeightedDegree};

use crate::error::{Error, Result};

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The ordered list of variable names a polynomial lives over.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableContext(Arc<Vec<String>>);

impl VariableContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(Error::Invalid(format!("`{name}` is not a valid variable name")));
            }
            if out.iter().any(|n| n == name) {
                return Err(Error::Invalid(format!("duplicate variable `{name}`")));
            }
            out.push(name.to_string());
        }
        Ok(VariableContext(Arc::new(out)))
    }

    /// `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        VariableContext(Arc::new((1..=n).map(|i| format!("{prefix}{i}")).collect()))
    }

    /// Context made of the identifiers occurring in `text`, in natural order
    /// (`x2` before `x10`).
    pub fn infer(text: &str) -> Result<Self> {
        let mut names = parse::identifiers(text)?;
        names.sort_by(|a, b| natural_cmp(a, b));
        names.dedup();
        VariableContext::new(&names)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new context with `extra` appended after the existing variables.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut names: Vec<String> = self.0.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        VariableContext::new(&names)
    }
}

impl fmt::Debug for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

/// Compares identifiers treating maximal digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    fn chunks(s: &str) -> Vec<(bool, String)> {
        let mut out: Vec<(bool, String)> = Vec::new();
        for c in s.chars() {
            let digit = c.is_ascii_digit();
            match out.last_mut() {
                Some((d, buf)) if *d == digit => buf.push(c),
                _ => out.push((digit, c.to_string())),
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(cb.iter()) {
        let ord = if *da && *db {
            let ta = sa.trim_start_matches('0');
            let tb = sb.trim_start_matches('0');
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        } else {
            sa.cmp(sb)
        };
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order_of_names() {
        let ctx = VariableContext::infer("x10 + x2*x1 - y").unwrap();
        assert_eq!(ctx.names(), &["x1", "x2", "x10", "y"]);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(VariableContext::new(&["1x"]).is_err());
        assert!(VariableContext::new(&["x", "x"]).is_err());
    }
}
