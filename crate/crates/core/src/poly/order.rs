use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::Rational;
use crate::error::{Error, Result};

/// Monomial orders on exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    /// Weighted degree first, ties broken by degrevlex. Weights are stored as
    /// integers (rational input is scaled by the common denominator).
    WeightedDegRevLex(Vec<i64>),
    /// Block order: the listed variables are compared first (degrevlex on the
    /// block), then degrevlex on the remaining variables.
    Elimination { block: Vec<usize> },
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::DegRevLex
    }
}

impl TermOrder {
    pub fn weighted(weights: &[Rational]) -> Result<Self> {
        let mut lcm = num_bigint::BigInt::from(1);
        for w in weights {
            lcm = lcm.lcm(w.denom());
        }
        let ints = weights
            .iter()
            .map(|w| {
                (w * Rational::from_integer(lcm.clone()))
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidOrder("weight too large".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TermOrder::WeightedDegRevLex(ints))
    }

    /// Eliminates the first `split` variables.
    pub fn block(split: usize) -> Self {
        TermOrder::Elimination { block: (0..split).collect() }
    }

    pub fn eliminating(vars: &[usize]) -> Self {
        let mut block = vars.to_vec();
        block.sort_unstable();
        block.dedup();
        TermOrder::Elimination { block }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "lex" => Ok(TermOrder::Lex),
            "degrevlex" | "grevlex" | "drl" => Ok(TermOrder::DegRevLex),
            other => Err(Error::InvalidOrder(format!("unknown order `{other}` (expected lex or degrevlex)"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::DegRevLex => "degrevlex".into(),
            TermOrder::WeightedDegRevLex(w) => format!("weighted{w:?}"),
            TermOrder::Elimination { block } => format!("elim{block:?}"),
        }
    }

    /// True when every monomial is greater than 1, which is what both the
    /// commutative and the Weyl engines need.
    pub fn is_well_order(&self) -> bool {
        match self {
            TermOrder::WeightedDegRevLex(w) => w.iter().all(|x| !x.is_negative()),
            _ => true,
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            TermOrder::WeightedDegRevLex(w) if w.len() != nvars => {
                Err(Error::InvalidOrder(format!("{} weights for {} variables", w.len(), nvars)))
            }
            TermOrder::WeightedDegRevLex(w) if w.iter().any(|x| x.is_negative()) => {
                Err(Error::InvalidOrder("negative weights do not give a well-order".into()))
            }
            TermOrder::Elimination { block } if block.iter().any(|&i| i >= nvars) => {
                Err(Error::InvalidOrder("block index out of range".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::WeightedDegRevLex(w) => {
                let wa: i64 = a.iter().zip(w).map(|(e, x)| *e as i64 * x).sum();
                let wb: i64 = b.iter().zip(w).map(|(e, x)| *e as i64 * x).sum();
                wa.cmp(&wb).then_with(|| degrevlex(a, b))
            }
            TermOrder::Elimination { block } => {
                let da: u32 = block.iter().map(|&i| a[i]).sum();
                let db: u32 = block.iter().map(|&i| b[i]).sum();
                da.cmp(&db)
                    .then_with(|| revlex_on(a, b, block.iter().copied()))
                    .then_with(|| {
                        let rest = (0..a.len()).filter(|i| block.binary_search(i).is_err());
                        let ra: u32 = rest.clone().map(|i| a[i]).sum();
                        let rb: u32 = rest.clone().map(|i| b[i]).sum();
                        ra.cmp(&rb).then_with(|| revlex_on(a, b, rest))
                    })
            }
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex_on(a, b, 0..a.len()))
}

/// Reverse-lexicographic tie break: the last differing variable decides, and
/// a smaller exponent there means a larger monomial.
fn revlex_on(a: &[u32], b: &[u32], idx: impl DoubleEndedIterator<Item = usize>) -> Ordering {
    for i in idx.rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}
