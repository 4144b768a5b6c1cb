use std::sync::Arc;

use cayley_drg::catalog;
use cayley_drg::diffsets::{find_forbidden_subgroup, is_difference_set, right_translate_witness};
use cayley_drg::search::{
    connection_set_matches, nonexistence_certificate, search, Certificate, ConnectionTarget, Limits, SearchFamily, SearchTask,
};

#[test]
fn suetake_class_is_rediscovered() {
    let (h, d) = catalog::suetake().unwrap();
    let n = find_forbidden_subgroup(&h, &d).unwrap().into_value().unwrap();
    let h = Arc::new(h);
    let task = SearchTask::new(Arc::clone(&h), SearchFamily::RelativeDifferenceSet { forbidden: n, k: 12, mu: 4 }).with_jobs(4);
    let out = search(&task).unwrap();
    assert!(out.exhausted);
    assert!(out.solutions.iter().any(|s| right_translate_witness(&h, &d, s).is_some()));
}

fn group(spec: &str) -> Arc<cayley_drg::group::GroupTable> {
    Arc::new(cayley_drg::group::make_group(&spec.parse().unwrap()).unwrap())
}

#[test]
fn dicyclic_groups_have_no_nontrivial_bipartite_diameter_three_sets() {
    for spec in ["Q12", "Q20"] {
        let task = SearchTask::new(group(spec), SearchFamily::ConnectionSet(ConnectionTarget::NontrivialBipartiteDiameter3));
        match nonexistence_certificate(&task).unwrap() {
            Certificate::NoSolution { space_bound, .. } => assert!(space_bound > 0),
            other => panic!("{spec}: {other:?}"),
        }
    }
}

#[test]
fn order_sixteen_parts_carry_difference_sets() {
    for e in catalog::designs16().unwrap() {
        let h = e.cayley.part_subgroup().unwrap();
        let (part, _) = e.cayley.group().subgroup_table(&h).unwrap();
        let part = Arc::new(part);
        let out = search(&SearchTask::new(Arc::clone(&part), SearchFamily::DifferenceSet { k: 6, mu: 2 }).with_jobs(2)).unwrap();
        assert!(out.exhausted);
        assert!(!out.solutions.is_empty(), "{}", e.name);
        let w = cayley_drg::bridge::bridge_extract(&e.cayley).unwrap();
        assert!(is_difference_set(&w.part, &w.d).unwrap().holds());
    }
}

#[test]
fn dihedral_sixteen_has_no_sixteen_six_two_set() {
    let cert = nonexistence_certificate(&SearchTask::new(group("D16"), SearchFamily::DifferenceSet { k: 6, mu: 2 })).unwrap();
    assert!(matches!(cert, Certificate::NoSolution { .. }));
}

#[test]
fn heawood_array_on_dihedral_fourteen() {
    let array = cayley_drg::IntersectionArray::new(vec![3, 2, 2], vec![1, 1, 3]).unwrap();
    let g = group("D14");
    let out = search(&SearchTask::new(Arc::clone(&g), SearchFamily::ConnectionSet(ConnectionTarget::Array(array.clone())))).unwrap();
    assert!(out.exhausted && !out.solutions.is_empty());
    for s in &out.solutions {
        assert!(connection_set_matches(&g, s, &ConnectionTarget::Array(array.clone())).unwrap());
    }
}

#[test]
fn node_budget_stops_early() {
    let (h, _) = catalog::suetake().unwrap();
    let task = SearchTask::new(Arc::new(h), SearchFamily::PartialGeometric { k: 12, alpha: 44, beta: 33 })
        .with_limits(Limits { max_nodes: Some(1000), ..Limits::default() });
    let out = search(&task).unwrap();
    assert!(!out.exhausted);
}
