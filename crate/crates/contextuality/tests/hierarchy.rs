//! Moment problems, the consistent-exclusivity levels and perfection.

use contextuality::catalog;
use contextuality::certificate::Certificate;
use contextuality::exact::Rational;
use contextuality::hierarchy::{self, CeVerdict, PerfectionVerdict, Verdict, DEFAULT_TOL};
use contextuality::models::{self, ProbModel};
use contextuality::scenario::{self, Scenario};
use num_traits::One;

fn boxes() -> (Scenario, Vec<(String, ProbModel)>) {
    catalog::bell_boxes().unwrap()
}

fn pick<'a>(b: &'a [(String, ProbModel)], name: &str) -> &'a ProbModel {
    &b.iter().find(|(n, _)| n == name).unwrap().1
}

#[test]
fn first_level_moment_orders() {
    let tri = catalog::triangle().scenario;
    assert_eq!(hierarchy::build_moment_problem(&tri, None, 1).unwrap().order(), 4);
    let (s, _) = boxes();
    assert_eq!(hierarchy::build_moment_problem(&s, None, 1).unwrap().order(), 17);
}

#[test]
fn triangle_violates_ce1() {
    let e = catalog::triangle();
    let (ok, cert) = hierarchy::ce_level(&e.scenario, e.model("half").unwrap(), 1).unwrap();
    assert!(!ok);
    match cert {
        Certificate::IndependentSet { level, tuples, weight } => {
            assert_eq!(level, 1);
            assert_eq!(weight, "3/2");
            let mut names: Vec<String> = tuples.into_iter().flatten().collect();
            names.sort();
            assert_eq!(names, ["v1", "v2", "v3"]);
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn pr_box_ce_levels() {
    let (s, b) = boxes();
    let pr = pick(&b, "pr-box");
    assert!(hierarchy::ce_level(&s, pr, 1).unwrap().0);
    assert!(!hierarchy::ce_level(&s, pr, 2).unwrap().0);
}

#[test]
fn ce_infinity_verdicts() {
    let (s, b) = boxes();
    let ts = hierarchy::ce_infinity(&s, pick(&b, "tsirelson-box"), 2, 1e-5).unwrap();
    assert_eq!(ts.verdict, CeVerdict::In);
    let pr = hierarchy::ce_infinity(&s, pick(&b, "pr-box"), 3, DEFAULT_TOL).unwrap();
    assert_eq!((pr.verdict, pr.powers_checked), (CeVerdict::Out, 2));
    let e = catalog::triangle();
    let tri = hierarchy::ce_infinity(&e.scenario, e.model("half").unwrap(), 3, DEFAULT_TOL).unwrap();
    assert_eq!((tri.verdict, tri.powers_checked), (CeVerdict::Out, 1));
}

#[test]
fn extended_consistent_exclusivity() {
    let (s, b) = boxes();
    assert_eq!(hierarchy::ece_membership(&s, pick(&b, "pr-box"), DEFAULT_TOL).unwrap().verdict, Verdict::Out);
    assert_eq!(hierarchy::ece_membership(&s, pick(&b, "det-0110"), DEFAULT_TOL).unwrap().verdict, Verdict::In);
    let ap4 = catalog::antiprism(4).unwrap();
    let r = hierarchy::ece_membership(&ap4.scenario, ap4.model("unique").unwrap(), DEFAULT_TOL).unwrap();
    assert_eq!(r.verdict, Verdict::Out);
}

#[test]
fn ap4_first_level_is_empty() {
    let ap4 = catalog::antiprism(4).unwrap();
    let r = hierarchy::q_membership(&ap4.scenario, ap4.model("unique").unwrap(), 1, DEFAULT_TOL).unwrap();
    assert_eq!(r.verdict, Verdict::Out);
}

#[test]
fn single_edge_indicator_optimizes_to_one() {
    let s = scenario::literal("edge", &["a", "b"], &[&["a", "b"]]);
    let c = vec![Rational::one(), Rational::from_integer(0.into())];
    let r = hierarchy::q1_optimize(&s, &c).unwrap();
    assert!((r.value - 1.0).abs() < 1e-5, "{}", r.value);
}

#[test]
fn classical_models_pass_the_theta_test() {
    for n in [4, 5, 6] {
        let s = catalog::circular(n).unwrap().scenario;
        for d in models::enumerate_deterministic(&s).unwrap() {
            assert_eq!(hierarchy::q1_membership_theta(&s, &d, DEFAULT_TOL).unwrap().verdict, Verdict::In);
        }
    }
}

#[test]
fn perfection_verdicts() {
    let tri = hierarchy::perfection_report(&catalog::triangle().scenario, 9).unwrap();
    assert_eq!(tri.no_graph_perfect, PerfectionVerdict::Perfect);
    let mat5 = hierarchy::perfection_report(&catalog::matching(5).unwrap().scenario, 9).unwrap();
    assert!(matches!(mat5.no_graph_perfect, PerfectionVerdict::NotPerfect { ref hole, .. } if hole.len() == 5));
}
