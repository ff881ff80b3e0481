//! Facts about the catalog entries.

use contextuality::catalog;
use contextuality::exact::{frac, Rational};
use contextuality::error::Error;
use contextuality::hierarchy::{self, PerfectionVerdict};
use contextuality::models;
use contextuality::polytope;
use num_traits::{One, Zero};

fn objective(s: &contextuality::scenario::Scenario, ids: &[&str]) -> Vec<Rational> {
    s.vertices().iter().map(|v| if ids.contains(&v.as_str()) { Rational::one() } else { Rational::zero() }).collect()
}

#[test]
fn circular_family() {
    let d3 = catalog::circular(3).unwrap().scenario;
    assert_eq!((d3.num_vertices(), d3.num_edges()), (6, 3));
    let d4 = catalog::circular(4).unwrap().scenario;
    assert!(polytope::extremal_models(&d4).unwrap().iter().all(|e| e.is_deterministic));
    let d5 = catalog::circular(5).unwrap().scenario;
    let vs: Vec<&str> = d5.vertices().iter().filter(|v| v.starts_with('v')).map(String::as_str).collect();
    assert_eq!(polytope::optimize_classical(&d5, &objective(&d5, &vs)).unwrap().0, contextuality::exact::int(2));
    let (restricted, _) = d5.induced_by_ids(&vs).unwrap();
    assert_eq!(restricted.num_edges(), 5);
    let ext = polytope::extremal_models(&restricted).unwrap();
    assert_eq!(ext.len(), 1);
    assert!(ext[0].model.weights().iter().all(|w| *w == frac(1, 2)));
}

#[test]
fn antiprism_family() {
    let ap5 = catalog::antiprism(5).unwrap();
    let ext = polytope::extremal_models(&ap5.scenario).unwrap();
    assert_eq!(ext.len(), 1);
    assert!(!polytope::is_classical(&ap5.scenario, &ext[0].model).unwrap().0);
    let ap6 = catalog::antiprism(6).unwrap().scenario;
    assert_eq!(polytope::g_dimension(&ap6).unwrap(), 2);
    let ext = polytope::extremal_models(&ap6).unwrap();
    assert_eq!(ext.len(), 3);
    assert!(ext.iter().all(|e| e.is_deterministic));
}

#[test]
fn antiprism_four_is_outside_q1() {
    let e = catalog::antiprism(4).unwrap();
    let p = e.model("unique").unwrap();
    let t = hierarchy::q1_membership_theta(&e.scenario, p, hierarchy::DEFAULT_TOL).unwrap();
    assert!((t.theta - (2.0 + 2f64.sqrt()) / 3.0).abs() < 1e-5);
    let anti = e.scenario.non_orthogonality_graph().complement();
    let theta = contextuality::graphs::lovasz_theta(&anti, &Default::default()).unwrap().value;
    assert!((theta - (8.0 - 4.0 * 2f64.sqrt())).abs() < 1e-5);
}

#[test]
fn duals_and_kochen_specker() {
    let mat5 = catalog::matching(5).unwrap().scenario;
    let petersen = mat5.non_orthogonality_graph();
    assert!((0..10).all(|v| petersen.degree(v) == 3));
    assert_eq!(contextuality::graphs::alpha(&petersen).unwrap().value, contextuality::exact::int(4));
    let rook = catalog::rook_graph();
    assert!((0..9).all(|v| rook.degree(v) == 4));
    let ks = catalog::ks_18();
    assert!(ks.scenario.edges().iter().all(|e| e.len() == 4));
    assert!(models::enumerate_deterministic(&ks.scenario).unwrap().is_empty());
}

#[test]
fn bell_boxes() {
    let (s, boxes) = catalog::bell_boxes().unwrap();
    let pr = &boxes[0].1;
    assert!(!polytope::is_classical(&s, pr).unwrap().0);
    let det = models::enumerate_deterministic(&s).unwrap();
    assert_eq!(det.len(), 16);
    let mut from_boxes: Vec<_> = boxes.iter().filter(|(_, p)| p.is_deterministic()).map(|(_, p)| p.weights().to_vec()).collect();
    let mut enumerated: Vec<_> = det.iter().map(|p| p.weights().to_vec()).collect();
    from_boxes.sort();
    enumerated.sort();
    assert_eq!(from_boxes, enumerated);
    let ts = &boxes[1].1;
    assert_eq!(ts.metadata.get("approximate").map(String::as_str), Some("true"));
}

#[test]
fn csw_transfer_of_single_edge() {
    let s = contextuality::scenario::literal("e", &["a", "b"], &[&["a", "b"]]);
    let t = catalog::csw_transfer(&s).unwrap();
    assert_eq!(t.num_vertices(), 3);
    assert_eq!(t.edges()[0].len(), 3);
}

#[test]
fn yan_extension_rejects_degenerate_labelings() {
    let s = contextuality::scenario::literal("edgeless", &["a", "b"], &[&["a", "b"]]);
    let labels = vec![vec![1.0, 0.0]; 2];
    // NO(s) has no edges, so no measurement of the extension covers `a`.
    assert!(catalog::yan_extension(&s, &labels, &[1.0, 0.0], 1000).is_err());
    let pent = catalog::pentagon().scenario;
    let (labels, psi) = catalog::pentagon_umbrella();
    assert!(catalog::yan_extension(&pent, &labels, &psi, 1000).is_ok());
    let same = vec![labels[0].clone(); 5];
    assert!(matches!(catalog::yan_extension(&pent, &same, &psi, 1000), Err(Error::LabelingNotOrthogonal(..))));
}

#[test]
fn special_scenarios() {
    let all = catalog::special_scenarios();
    assert_eq!(all.len(), 9);
    assert!(!polytope::allows_general(&all[0].scenario).0);
    let (g, gp) = catalog::gadgets();
    let w = |s: &contextuality::scenario::Scenario, v: &str| polytope::optimize_general(s, &objective(s, &[v])).unwrap().0;
    assert!(w(&g.scenario, "w'").is_zero());
    assert!(w(&g.scenario, "w") > Rational::zero());
    assert!(w(&gp.scenario, "w").is_zero());
}

#[test]
fn imperfect_but_classical() {
    let e = catalog::imperfect_classical();
    let r = hierarchy::perfection_report(&e.scenario, 9).unwrap();
    assert!(matches!(r.no_graph_perfect, PerfectionVerdict::NotPerfect { .. }));
    for x in polytope::extremal_models(&e.scenario).unwrap() {
        assert!(x.is_deterministic);
    }
    let tri = hierarchy::perfection_report(&catalog::triangle().scenario, 9).unwrap();
    assert_eq!(tri.no_graph_perfect, PerfectionVerdict::Perfect);
}

#[test]
fn j12_counts() {
    let e = catalog::j_scenario(12).unwrap();
    let s = &e.scenario;
    assert_eq!(s.num_vertices(), 220);
    assert_eq!(s.num_edges(), 5775);
    assert!(s.edges().iter().all(|e| e.len() == 12));
    assert_eq!(s.non_orthogonality_graph().num_edges(), 11880);
}
