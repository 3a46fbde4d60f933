use logdiv_core::corpus::{self, Example};
use logdiv_core::lct::{
    annihilator_fs, bfunction_from_annihilator, bfunction_oracle, lct_verdict, order_one_annihilator, verify_functional_equation,
    Equality, LctOptions, LctReport, Quasihomogeneity, Verdict,
};
use logdiv_core::logder::{free_basis, Freeness};
use logdiv_core::poly::rat;
use logdiv_core::weyl::{apply_to_rational_power, Exponent};
use logdiv_core::Budget;

/// Free examples whose full pipeline is fast.
fn quick_corpus() -> Vec<Example> {
    let mut out: Vec<Example> = corpus::named().into_iter().filter(|e| e.free && !e.name.starts_with("f_")).collect();
    out.extend((0..3).map(corpus::random_plane_curve));
    out
}

/// The rules a report must obey whatever the budget.
fn check_monotone(r: &LctReport) {
    match r.verdict {
        Verdict::Holds => {
            assert_eq!(r.free, Some(true));
            let equal = r.koszul == Some(true) && r.annihilator.as_ref().map(|a| a.equality) == Some(Equality::Equal);
            let shortcut = matches!(r.quasihomogeneous, Quasihomogeneity::Strict { .. }) && !r.caveats.is_empty();
            assert!(equal || shortcut, "{}: holds without a certificate", r.polynomial);
        }
        Verdict::Fails => {
            assert_eq!(r.free, Some(true));
            assert_eq!(r.koszul, Some(true));
            let a = r.annihilator.as_ref().unwrap();
            assert_eq!(a.equality, Equality::Proper);
            assert!(a.witness.as_ref().unwrap().verified);
            assert!(r.witness.is_some());
        }
        Verdict::Undetermined => {}
    }
}

#[test]
fn candidate_lies_in_the_annihilator() {
    let mut all = quick_corpus();
    all.push(corpus::fpq(3, 4, 3));
    for e in all {
        let f = e.polynomial();
        let Freeness::Free(b) = free_basis(&f, &Budget::unlimited()).unwrap() else { panic!("{} not free", e.name) };
        let cand = order_one_annihilator(&f, &b).unwrap();
        for g in cand.generators() {
            assert!(apply_to_rational_power(g, &f, &Exponent::Integer(-1)).unwrap().is_zero(), "{}: {g}", e.name);
        }
    }
}

#[test]
fn bfunctions_vanish_at_minus_one_and_match_the_oracle() {
    for e in quick_corpus() {
        let f = e.polynomial();
        let ann = annihilator_fs(&f, &Budget::unlimited()).unwrap();
        let b = bfunction_from_annihilator(&f, &ann, &Budget::unlimited(), 64).unwrap();
        assert_eq!(b.evaluate(&rat(-1)), rat(0), "{}", e.name);
        for (root, _) in &b.roots {
            assert_eq!(b.evaluate(root), rat(0));
        }
        if b.degree() <= 3 {
            let eq = bfunction_oracle(&f, b.degree() as u32, &Budget::unlimited()).unwrap().expect("oracle terminates");
            assert!(verify_functional_equation(&f, &eq).unwrap());
            assert_eq!(eq.b.coefficients, b.coefficients, "{}", e.name);
        }
    }
}

#[test]
fn verdicts_respect_their_certificates() {
    for e in quick_corpus() {
        let r = lct_verdict(&e.polynomial(), &Budget::unlimited(), &LctOptions::default()).unwrap();
        check_monotone(&r);
        if e.strictly_quasihomogeneous {
            assert_eq!(r.verdict, Verdict::Holds, "{}", e.name);
        }
    }
}

#[test]
fn small_budgets_never_overclaim() {
    let mut all = quick_corpus();
    all.push(corpus::fpq(3, 4, 3));
    for e in all {
        for steps in [1, 30, 500, 5_000] {
            let r = lct_verdict(&e.polynomial(), &Budget::new(steps), &LctOptions::default()).unwrap();
            check_monotone(&r);
        }
    }
}

#[test]
fn normal_crossing_annihilators_are_generated_in_order_one() {
    for (r, n) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
        let rep = lct_verdict(&corpus::normal_crossing(r, n).polynomial(), &Budget::unlimited(), &LctOptions::default()).unwrap();
        assert_eq!(rep.annihilator.unwrap().equality, Equality::Equal);
        let b = rep.b.unwrap();
        assert_eq!(b.roots, vec![(rat(-1), r as u32)]);
    }
}
