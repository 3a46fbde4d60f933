use std::path::PathBuf;

use logdiv_core::arrangements::{polynomial_in_t, Arrangement};
use logdiv_core::lct::{
    annihilator_inverse, bfunction_oracle, compare_with_inverse, lct_verdict, order_one_annihilator, verify_functional_equation,
    BFunctionSummary, Equality, LctOptions, OracleStatus,
};
use logdiv_core::liecoh::{bracket_table, chevalley_eilenberg_cohomology, weight_zero_fields, WeightZero, REDUCTIVE_CAVEAT};
use logdiv_core::logder::{free_basis, logarithmic_derivations, saito_freeness_test, Freeness, LogDerivationBasis};
use logdiv_core::poly::{fmt_rational, homogeneity_lattice, rat, weighted_degree, WeightedDegree};
use logdiv_core::poly::{find_quasihomogeneous_weights, Positivity};
use logdiv_core::spencer::{build_spencer, default_truncation, koszul_test_ordered, FormalSpencer, GradedKoszulComplex};
use logdiv_core::{Error, Polynomial, Result, VariableContext};
use serde_json::{json, Map, Value};

use crate::{Input, Job, Outcome};

fn read_text(inline: Option<&str>, file: Option<&PathBuf>) -> Result<String> {
    match (inline, file) {
        (Some(t), None) => Ok(t.to_string()),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display()))),
        (Some(_), Some(_)) => Err(Error::Syntax { pos: 0, msg: "give the input inline or with --file, not both".into() }),
        (None, None) => Err(Error::Syntax { pos: 0, msg: "missing input".into() }),
    }
}

fn ring(vars: Option<&str>, text: &str) -> Result<VariableContext> {
    match vars {
        Some(v) => VariableContext::new(&v.split(',').map(str::trim).filter(|s| !s.is_empty()).collect::<Vec<_>>()),
        None => VariableContext::infer(text),
    }
}

pub fn read_polynomial(i: &Input, input: &mut Map<String, Value>) -> Result<Polynomial> {
    let text = read_text(i.polynomial.as_deref(), i.file.as_ref())?;
    let text = text.trim();
    let r = ring(i.vars.as_deref(), text)?;
    let f = Polynomial::parse(text, &r)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    input.insert("polynomial".into(), json!(f.to_string()));
    input.insert("variables".into(), json!(r.names()));
    Ok(f)
}

pub fn read_arrangement(
    forms: Option<&str>,
    file: Option<&PathBuf>,
    vars: Option<&str>,
    boolean: Option<usize>,
    braid: Option<usize>,
    input: &mut Map<String, Value>,
) -> Result<Arrangement> {
    let a = match (boolean, braid) {
        (Some(n), _) => Arrangement::boolean(n),
        (_, Some(n)) => Arrangement::braid(n),
        _ => {
            let text = read_text(forms, file)?.replace(';', "\n");
            let r = match vars {
                Some(v) => Some(ring(Some(v), "")?),
                None => None,
            };
            Arrangement::parse(&text, r.as_ref())?
        }
    };
    input.insert("variables".into(), json!(a.ring().names()));
    input.insert("hyperplanes".into(), json!((0..a.len()).map(|j| a.form(j).to_string()).collect::<Vec<_>>()));
    Ok(a)
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn basis_json(b: &LogDerivationBasis) -> Value {
    let names = b.f.ring().names().to_vec();
    let fields: Vec<Value> = b
        .derivations
        .iter()
        .map(|d| json!({"derivation": d.display_with(&names), "cofactor": d.cofactor.to_string(), "certified": d.certify(&b.f)}))
        .collect();
    let mut brackets = Vec::new();
    for i in 0..b.n() {
        for j in i + 1..b.n() {
            let c: Vec<String> = (0..b.n()).map(|k| b.structure_constant(i, j, k).to_string()).collect();
            if c.iter().any(|s| s != "0") {
                brackets.push(json!({"i": i + 1, "j": j + 1, "coefficients": c}));
            }
        }
    }
    json!({
        "fields": fields,
        "determinant": b.determinant.to_string(),
        "unit": fmt_rational(&b.unit),
        "brackets": brackets,
        "verified": b.verify(),
    })
}

fn require_free(f: &Polynomial, job: &Job, out: &mut Map<String, Value>) -> Result<LogDerivationBasis> {
    match free_basis(f, &job.budget.fresh()).map_err(|e| e.in_stage("logder"))? {
        Freeness::Free(b) => {
            out.insert("free".into(), json!(true));
            out.insert("basis".into(), basis_json(&b));
            Ok(*b)
        }
        Freeness::NotDetected { best_determinant } => {
            out.insert("free".into(), json!(false));
            Err(Error::Invalid(format!(
                "no Saito basis among the logarithmic derivations (best determinant {})",
                best_determinant.map_or("0".into(), |d| d.to_string())
            )))
        }
    }
}

pub fn derlog(f: &Polynomial, job: &Job, out: &mut Map<String, Value>) -> Result<Outcome> {
    let names = f.ring().names().to_vec();
    let gens = logarithmic_derivations(f, &job.budget.fresh()).map_err(|e| e.in_stage("logder"))?;
    out.insert(
        "generators".into(),
        json!(gens.iter().map(|d| json!({"derivation": d.display_with(&names), "cofactor": d.cofactor.to_string()})).collect::<Vec<_>>()),
    );
    match saito_freeness_test(f, &gens)? {
        Freeness::Free(b) => {
            out.insert("free".into(), json!(true));
            out.insert("basis".into(), basis_json(&b));
        }
        Freeness::NotDetected { best_determinant } => {
            out.insert("free".into(), json!(false));
            // det = f * u with u(0) != 0 means a basis of the germ at the origin.
            let origin = vec![rat(0); f.nvars()];
            let local = best_determinant
                .as_ref()
                .and_then(|d| d.div_exact(f))
                .map_or(false, |u| u.evaluate(&origin) != rat(0));
            out.insert("free_at_origin".into(), json!(local));
            out.insert("best_determinant".into(), json!(best_determinant.map(|d| d.to_string())));
        }
    }
    Ok(Outcome::Ok)
}

pub fn weights(f: &Polynomial, out: &mut Map<String, Value>) -> Result<Outcome> {
    let lattice = homogeneity_lattice(f)?;
    out.insert(
        "homogeneity_lattice".into(),
        json!(lattice.iter().map(|v| v.iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    for (key, pos) in [("strict", Positivity::Strict), ("weak", Positivity::Weak)] {
        let entry = match find_quasihomogeneous_weights(f, pos)? {
            Some(w) => {
                let degree = match weighted_degree(f, &w)? {
                    WeightedDegree::Homogeneous(d) => fmt_rational(&d),
                    WeightedDegree::Inhomogeneous(_) => return Err(Error::Certificate("solver weights are not homogeneous".into())),
                };
                json!({"weights": w.to_strings(), "degree": degree})
            }
            None => Value::Null,
        };
        out.insert(key.into(), entry);
    }
    Ok(Outcome::Ok)
}

pub fn koszul(f: &Polynomial, job: &Job, out: &mut Map<String, Value>) -> Result<Outcome> {
    let b = require_free(f, job, out)?;
    let k = koszul_test_ordered(&b, &job.order, &job.budget.fresh()).map_err(|e| e.in_stage("koszul"))?;
    out.insert("koszul".into(), json!(k.koszul));
    out.insert("dimension".into(), json!(k.dimension));
    out.insert("expected_dimension".into(), json!(k.expected));
    out.insert("symbols".into(), json!(strings(&k.symbols)));
    out.insert("initial_ideal".into(), json!(strings(&k.initial_ideal)));
    if let Some(t) = job.truncation {
        out.insert("homology".into(), homology_json(&GradedKoszulComplex::on(&k.symbols), t));
    }
    Ok(Outcome::Ok)
}

fn homology_json(shadow: &GradedKoszulComplex, truncation: u32) -> Value {
    match shadow.homology_ranks(truncation) {
        Some(h) => json!({
            "grading": h.grading.to_strings(),
            "truncation": h.truncation,
            "ranks": h.ranks,
            "exact": h.is_exact(),
        }),
        None => Value::Null,
    }
}

pub fn spencer(f: &Polynomial, job: &Job, out: &mut Map<String, Value>) -> Result<Outcome> {
    let b = require_free(f, job, out)?;
    let sp = build_spencer(&b)?;
    sp.verify_complex()?;
    out.insert("n".into(), json!(sp.n));
    out.insert("ranks".into(), json!(sp.ranks()));
    out.insert("d_squared_zero".into(), json!(true));
    out.insert("max_entry_order".into(), json!(sp.max_entry_order()));
    let mut diffs = Vec::new();
    for p in 1..=sp.n {
        let images: Vec<Value> = sp.bases[p]
            .iter()
            .map(|i| json!({"source": format!("e{}", i.iter().map(|k| k.to_string()).collect::<String>()), "image": sp.image_string(p, i)}))
            .collect();
        diffs.push(json!({"p": p, "images": images}));
    }
    out.insert("differentials".into(), json!(diffs));
    let shadow = sp.graded_shadow()?;
    let t = job.truncation.unwrap_or_else(|| default_truncation(&shadow));
    out.insert("graded_homology".into(), homology_json(&shadow, t));
    Ok(Outcome::Ok)
}

pub fn spencer_symbolic(n: usize, out: &mut Map<String, Value>) -> Result<Outcome> {
    if n == 0 || n > 6 {
        return Err(Error::Invalid("symbolic Spencer complex needs 1 <= n <= 6".into()));
    }
    let fs = FormalSpencer::new(n);
    let mut diffs = Vec::new();
    for p in 1..=n {
        let images: Vec<Value> = fs.bases[p]
            .iter()
            .map(|i| json!({"source": format!("e{}", i.iter().map(|k| k.to_string()).collect::<String>()), "image": fs.image_string(p, i)}))
            .collect();
        diffs.push(json!({"p": p, "images": images}));
    }
    out.insert("n".into(), json!(n));
    out.insert("differentials".into(), json!(diffs));
    Ok(Outcome::Ok)
}

pub fn ann(f: &Polynomial, job: &Job, out: &mut Map<String, Value>) -> Result<Outcome> {
    let candidate = match free_basis(f, &job.budget.fresh()).map_err(|e| e.in_stage("logder"))? {
        Freeness::Free(b) => {
            out.insert("free".into(), json!(true));
            let c = order_one_annihilator(f, &b)?;
            out.insert("candidate".into(), json!(strings(c.generators())));
            Some(c)
        }
        Freeness::NotDetected { .. } => {
            out.insert("free".into(), json!(false));
            None
        }
    };
    let inv = annihilator_inverse(f, &job.budget.fresh(), 64)?;
    out.insert("annihilator_fs".into(), json!(strings(inv.ann_fs.generators())));
    out.insert("bfunction".into(), json!(inv.b.factored("s")));
    out.insert("complete".into(), json!(inv.complete));
    out.insert("full".into(), json!(strings(inv.full.generators())));
    let gb = inv.full.left_groebner(&job.order, &job.budget.fresh()).map_err(|e| e.in_stage("groebner"))?;
    out.insert("groebner_basis".into(), json!(strings(&gb)));
    if let Some(c) = &candidate {
        let (eq, w) = compare_with_inverse(c, &inv, &job.budget.fresh()).map_err(|e| e.in_stage("annihilator-compare"))?;
        out.insert("equality".into(), serde_json::to_value(eq).expect("serializable"));
        if let Some(w) = w {
            let verified = w.verify(f, c, &job.budget.fresh())?;
            if !verified {
                return Err(Error::Certificate("witness failed re-verification".into()));
            }
            out.insert("witness".into(), json!({"operator": w.operator.to_string(), "normal_form": w.normal_form.to_string()}));
        }
        if eq == Equality::Unknown {
            out.insert("note".into(), json!("b-function has integer roots below -1; equality not certified"));
        }
    }
    Ok(Outcome::Ok)
}

pub fn bfun(f: &Polynomial, oracle_bound: Option<u32>, job: &Job, out: &mut Map<String, Value>) -> Result<Outcome> {
    if f.is_constant() {
        return Err(Error::Invalid("b-function of a constant".into()));
    }
    let inv = annihilator_inverse(f, &job.budget.fresh(), 64)?;
    let b = &inv.b;
    let bound = oracle_bound.unwrap_or_else(|| (b.degree() as u32).min(4));
    let mut oracle = json!({"bound": bound});
    let status = if oracle_bound.is_none() && b.degree() > 4 {
        OracleStatus::Skipped
    } else {
        match bfunction_oracle(f, bound, &job.budget.fresh()) {
            Ok(Some(eq)) => {
                if !verify_functional_equation(f, &eq)? {
                    return Err(Error::Certificate("functional equation does not hold".into()));
                }
                oracle["b"] = json!(eq.b.factored("s"));
                oracle["operator"] = json!(eq.operator.to_string());
                if eq.b == *b {
                    OracleStatus::Confirmed
                } else if eq.b.degree() <= b.degree() {
                    return Err(Error::Certificate(format!("oracle gives {} but elimination gives {}", eq.b, b)));
                } else {
                    OracleStatus::Unconfirmed
                }
            }
            Ok(None) => OracleStatus::Unconfirmed,
            Err(e) if e.is_timeout() => OracleStatus::Timeout,
            Err(e) => return Err(e),
        }
    };
    oracle["status"] = serde_json::to_value(status).expect("serializable");
    let summary = BFunctionSummary::new(b, status, bound);
    let mut v = serde_json::to_value(&summary).expect("serializable");
    v["oracle"] = oracle;
    if let Value::Object(m) = v {
        out.extend(m);
    }
    Ok(if status == OracleStatus::Timeout { Outcome::Partial(vec!["bfunction-oracle".into()]) } else { Outcome::Ok })
}

pub fn lct(f: &Polynomial, opts: &LctOptions, job: &Job, out: &mut Map<String, Value>) -> Result<Outcome> {
    let report = lct_verdict(f, &job.budget, opts)?;
    if let Value::Object(m) = serde_json::to_value(&report).expect("serializable") {
        out.extend(m);
    }
    Ok(if report.timeouts.is_empty() { Outcome::Ok } else { Outcome::Partial(report.timeouts.clone()) })
}

pub fn liecoh(f: &Polynomial, job: &Job, out: &mut Map<String, Value>) -> Result<Outcome> {
    let b = require_free(f, job, out)?;
    match weight_zero_fields(&b) {
        WeightZero::Linear(g) => {
            let table = chevalley_eilenberg_cohomology(&g)?;
            out.insert("linear".into(), json!(true));
            out.insert("dimension".into(), json!(g.dim()));
            out.insert("brackets".into(), json!(bracket_table(&g)));
            out.insert("betti".into(), json!(table.betti));
            out.insert("differential_ranks".into(), json!(table.ranks));
            out.insert("poincare".into(), json!(table.poincare_string()));
            out.insert("euler_characteristic".into(), json!(table.euler_characteristic()));
            out.insert("caveat".into(), json!(REDUCTIVE_CAVEAT));
        }
        WeightZero::NotLinear { reason } => {
            out.insert("linear".into(), json!(false));
            out.insert("reason".into(), json!(reason));
        }
    }
    Ok(Outcome::Ok)
}

pub fn arrangement(a: &Arrangement, out: &mut Map<String, Value>) -> Result<Outcome> {
    let lattice = a.intersection_lattice();
    let p = lattice.poincare_polynomial();
    out.insert("dimension".into(), json!(a.dimension()));
    out.insert("defining_polynomial".into(), json!(a.defining_polynomial().to_string()));
    out.insert("flat_counts".into(), json!(lattice.flat_counts()));
    out.insert("flats".into(), serde_json::to_value(&lattice.flats).expect("serializable"));
    out.insert("poincare".into(), json!(p));
    out.insert("poincare_polynomial".into(), json!(polynomial_in_t(&p)));
    out.insert("characteristic".into(), json!(lattice.characteristic_polynomial()));
    out.insert("brieskorn_dimensions".into(), json!(p));
    out.insert("lct_oracle".into(), serde_json::to_value(a.lct_oracle()).expect("serializable"));
    Ok(Outcome::Ok)
}
