//! Named example divisors and seeded random plane curves.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::budget::Budget;
use crate::logder::check_squarefree;
use crate::poly::{find_quasihomogeneous_weights, Polynomial, Positivity, VariableContext};

/// A named example with the properties it is known to have.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub variables: Vec<String>,
    pub text: String,
    pub free: bool,
    /// Quasihomogeneous with strictly positive weights.
    pub strictly_quasihomogeneous: bool,
    pub linear: bool,
}

impl Example {
    pub fn ring(&self) -> VariableContext {
        VariableContext::new(&self.variables).expect("valid corpus variables")
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::parse(&self.text, &self.ring()).expect("valid corpus polynomial")
    }
}

fn vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `x1 ... xr` in `n` variables.
pub fn normal_crossing(r: usize, n: usize) -> Example {
    assert!(1 <= r && r <= n);
    let text = (1..=r).map(|i| format!("x{i}")).collect::<Vec<_>>().join("*");
    Example {
        name: format!("normal crossing r={r} n={n}"),
        variables: vars("x", n),
        text,
        free: true,
        strictly_quasihomogeneous: true,
        linear: r == n,
    }
}

pub fn cusp() -> Example {
    Example {
        name: "cusp".into(),
        variables: vec!["x".into(), "y".into()],
        text: "x^2 - y^3".into(),
        free: true,
        strictly_quasihomogeneous: true,
        linear: false,
    }
}

/// `(x1^p - x2^q) prod_{i=3}^n (x1 x_i + x2)`.
pub fn fpq(p: u32, q: u32, n: usize) -> Example {
    assert!(n >= 3);
    let mut text = format!("(x1^{p} - x2^{q})");
    for i in 3..=n {
        text.push_str(&format!("*(x1*x{i} + x2)"));
    }
    Example {
        name: format!("f_{{{p},{q}}} n={n}"),
        variables: vars("x", n),
        text,
        free: true,
        strictly_quasihomogeneous: false,
        linear: false,
    }
}

/// Free but not Koszul.
pub fn four_lines_with_twist() -> Example {
    Example {
        name: "x1 x2 (x1 + x2) (x1 + x2 x3)".into(),
        variables: vars("x", 3),
        text: "x1*x2*(x1 + x2)*(x1 + x2*x3)".into(),
        free: true,
        strictly_quasihomogeneous: false,
        linear: false,
    }
}

/// A linear free divisor with a nonabelian Lie algebra.
pub fn conic_and_tangent() -> Example {
    Example {
        name: "x (y^2 - x z)".into(),
        variables: vec!["x".into(), "y".into(), "z".into()],
        text: "x*(y^2 - x*z)".into(),
        free: true,
        strictly_quasihomogeneous: true,
        linear: true,
    }
}

/// Reduced weighted homogeneous plane curve with random weights and
/// coefficients. Every reduced plane curve germ is free; the grading makes
/// the computed generators of `Der(-log f)` contain a global basis.
/// Deterministic in `seed`.
pub fn random_plane_curve(seed: u64) -> Example {
    const WEIGHTS: [(u32, u32); 5] = [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2)];
    let ring = VariableContext::new(&["x", "y"]).expect("valid names");
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let (a, b) = WEIGHTS[rng.gen_range(0..WEIGHTS.len())];
        let d = rng.gen_range(3..=9);
        let monos: Vec<(u32, u32)> =
            (0..=d).flat_map(|i| (0..=d).map(move |j| (i, j))).filter(|&(i, j)| a * i + b * j == d && i + j <= 6).collect();
        if monos.len() < 2 {
            continue;
        }
        let mut terms = Vec::new();
        for &(i, j) in &monos {
            if rng.gen_bool(0.8) {
                let c: i64 = rng.gen_range(1..=3);
                let c = if rng.gen_bool(0.5) { c } else { -c };
                terms.push(format!("{c}*x^{i}*y^{j}"));
            }
        }
        if terms.len() < 2 {
            continue;
        }
        let f = Polynomial::parse(&terms.join(" + "), &ring).expect("generated polynomial parses");
        if f.total_degree().unwrap_or(0) < 2 || check_squarefree(&f, &Budget::unlimited()).is_err() {
            continue;
        }
        let strict = find_quasihomogeneous_weights(&f, Positivity::Strict).ok().flatten().is_some();
        return Example {
            name: format!("random plane curve seed={seed}"),
            variables: vec!["x".into(), "y".into()],
            text: f.to_string(),
            free: true,
            strictly_quasihomogeneous: strict,
            linear: false,
        };
    }
}

/// The fixed corpus used by the acceptance checks.
pub fn named() -> Vec<Example> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for r in 1..=n {
            out.push(normal_crossing(r, n));
        }
    }
    out.push(cusp());
    out.push(fpq(3, 4, 3));
    out.push(four_lines_with_twist());
    out.push(conic_and_tangent());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses_and_flags_match() {
        for e in named() {
            let f = e.polynomial();
            let strict = find_quasihomogeneous_weights(&f, Positivity::Strict).unwrap().is_some();
            assert_eq!(strict, e.strictly_quasihomogeneous, "{}", e.name);
        }
    }

    #[test]
    fn random_curves_are_deterministic_and_reduced() {
        for seed in 0..5 {
            let a = random_plane_curve(seed);
            assert_eq!(a.text, random_plane_curve(seed).text);
            assert!(check_squarefree(&a.polynomial(), &Budget::unlimited()).is_ok());
        }
        assert_ne!(random_plane_curve(1).text, random_plane_curve(2).text);
    }
}
