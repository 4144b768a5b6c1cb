use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use cayley_drg::bridge::{bridge_construct_dih, bridge_extract};
use cayley_drg::catalog;
use cayley_drg::cayley::build_cayley;
use cayley_drg::designs::development;
use cayley_drg::diffsets::{difference_profile, is_difference_set, right_translate_witness};
use cayley_drg::group::{make_group, GroupSpec, GroupTable};
use cayley_drg::search::{is_translate_minimal, search, SearchFamily, SearchTask};
use cayley_drg::spectrum::{self, annihilated_by, array_polynomial, Factor};

fn small_spec() -> impl Strategy<Value = GroupSpec> {
    let leaf = prop_oneof![
        (1usize..=30).prop_map(GroupSpec::Cyclic),
        (1usize..=15).prop_map(GroupSpec::Dihedral),
        (1usize..=8).prop_map(GroupSpec::Dicyclic),
        (3u32..=5).prop_map(GroupSpec::Semidihedral),
        (1u32..=5).prop_map(|e| GroupSpec::ElementaryAbelian(2, e)),
        (1u32..=3).prop_map(|e| GroupSpec::ElementaryAbelian(3, e)),
    ];
    prop_oneof![
        3 => leaf,
        1 => ((1usize..=6), (1usize..=6)).prop_map(|(a, b)| GroupSpec::product(GroupSpec::Cyclic(a), GroupSpec::Cyclic(b))),
        1 => (1usize..=12).prop_map(|n| GroupSpec::dih(GroupSpec::Cyclic(n))),
        1 => ((1usize..=4), (1usize..=4)).prop_map(|(a, b)| GroupSpec::dih(GroupSpec::product(GroupSpec::Cyclic(a), GroupSpec::Cyclic(b)))),
    ]
}

/// A group together with a random subset, given as a bitmask over its elements.
fn group_and_subset() -> impl Strategy<Value = (Arc<GroupTable>, Vec<usize>)> {
    (small_spec(), any::<u64>(), any::<u64>()).prop_map(|(spec, lo, hi)| {
        let g = Arc::new(make_group(&spec).unwrap());
        let bits = |x: usize| if x < 64 { lo >> x & 1 == 1 } else { hi >> (x % 64) & 1 == 1 };
        let d: Vec<usize> = g.elements().filter(|&x| bits(x)).collect();
        (g, d)
    })
}

fn inverse_closure(g: &GroupTable, d: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = d
        .iter()
        .flat_map(|&x| [x, g.inv(x)])
        .filter(|&x| x != g.identity())
        .collect();
    s.into_iter().collect()
}

/// A group, a difference set in it, and its `(n, k, μ)`.
type KnownSet = (Arc<GroupTable>, Vec<usize>, (usize, usize, usize));

/// Known difference sets, to be moved around by translation.
fn known_difference_sets() -> Vec<KnownSet> {
    let mut out = Vec::new();
    for q in [2, 3, 4, 5] {
        let (h, d) = catalog::singer(q).unwrap();
        out.push((Arc::new(h), d, (q * q + q + 1, q + 1, 1)));
    }
    for e in catalog::designs16().unwrap() {
        let w = bridge_extract(&e.cayley).unwrap();
        out.push((Arc::clone(&w.part), w.d.clone(), (16, 6, 2)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_groups_satisfy_axioms(spec in small_spec()) {
        let g = make_group(&spec).unwrap();
        prop_assert_eq!(Some(g.order()), spec.order());
        g.verify_axioms_exhaustive().unwrap();
    }

    #[test]
    fn spec_display_parses_back(spec in small_spec()) {
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<GroupSpec>().unwrap(), spec);
    }

    #[test]
    fn labels_parse_back(spec in small_spec()) {
        let g = make_group(&spec).unwrap();
        for x in g.elements() {
            prop_assert_eq!(g.parse_element(g.label(x)).unwrap(), x);
        }
    }

    #[test]
    fn right_translation_is_an_automorphism((g, d) in group_and_subset(), pick in any::<usize>()) {
        let s = inverse_closure(&g, &d);
        let cay = build_cayley(Arc::clone(&g), &s).unwrap();
        prop_assert!(cay.right_translation_preserves_edges(pick % g.order()));
    }

    #[test]
    fn profile_invariants((g, d) in group_and_subset()) {
        let p = difference_profile(&g, &d).unwrap();
        let k = p.k();
        prop_assert_eq!(p.diff[g.identity()], k);
        prop_assert_eq!(p.reverse[g.identity()], k);
        prop_assert_eq!(p.diff.iter().sum::<usize>(), k * k);
        prop_assert_eq!(p.reverse.iter().sum::<usize>(), k * k);
        prop_assert_eq!(p.triple.iter().sum::<usize>(), k * k * k);
        // x = d1 d2^-1 exactly when x^-1 = d2 d1^-1.
        for x in g.elements() {
            prop_assert_eq!(p.diff[x], p.diff[g.inv(x)]);
        }
        // d1 d2^-1 over D equals d1^-1 d2 over D^-1.
        let q = difference_profile(&g, &g.inverse_set(&d)).unwrap();
        prop_assert_eq!(&p.diff, &q.reverse);
    }

    #[test]
    fn translation_preserves_profiles((g, d) in group_and_subset(), pick in any::<usize>()) {
        let h = pick % g.order();
        let p = difference_profile(&g, &d).unwrap();
        let q = difference_profile(&g, &g.right_translate(&d, h)).unwrap();
        prop_assert_eq!(p.diff, q.diff);
    }

    #[test]
    fn difference_set_complement_and_inverse(index in 0usize..7, pick in any::<usize>()) {
        let sets = known_difference_sets();
        let (h, d, (n, k, mu)) = &sets[index % sets.len()];
        let d = h.right_translate(d, pick % h.order());
        let complement: Vec<usize> = h.elements().filter(|x| !d.contains(x)).collect();
        let c = is_difference_set(h, &complement).unwrap().into_value().unwrap();
        prop_assert_eq!((c.n, c.k, c.mu), (*n, n - k, n - 2 * k + mu));
        let i = is_difference_set(h, &h.inverse_set(&d)).unwrap().into_value().unwrap();
        prop_assert_eq!((i.n, i.k, i.mu), (*n, *k, *mu));
    }

    #[test]
    fn bridge_round_trip_on_translates(q in prop::sample::select(vec![2usize, 3, 4]), pick in any::<usize>()) {
        let (h, d) = catalog::singer(q).unwrap();
        let d = h.right_translate(&d, pick % h.order());
        let w = bridge_extract(&bridge_construct_dih(&h, &d).unwrap().cayley).unwrap();
        let extracted: Vec<usize> = w.d.iter().map(|&x| w.embedding[x]).collect();
        prop_assert!(right_translate_witness(&h, &d, &extracted).is_some());
    }

    #[test]
    fn cycle_shell_sizes_sum_to_order(n in 3usize..40) {
        let g = Arc::new(make_group(&GroupSpec::Cyclic(n)).unwrap());
        let cay = build_cayley(g, &[1, n - 1]).unwrap();
        let array = cay.intersection_array().unwrap().unwrap();
        let ks = array.k_sequence().unwrap();
        prop_assert_eq!(ks.iter().sum::<u64>(), n as u64);
        prop_assert_eq!(array.vertex_count().unwrap(), n as u64);
        let shells = cay.shells().unwrap();
        prop_assert_eq!(shells.iter().map(|s| s.len() as u64).collect::<Vec<_>>(), ks);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn canonical_search_covers_reference(choice in 0usize..8) {
        let cases: [(&str, usize, usize); 8] = [
            ("Z7", 3, 1),
            ("Z7", 4, 2),
            ("Z11", 5, 2),
            ("Z13", 4, 1),
            ("Z15", 7, 3),
            ("Z4xZ4", 6, 2),
            ("Q16", 6, 2),
            ("D16", 6, 2),
        ];
        let (spec, k, mu) = cases[choice];
        let g = Arc::new(make_group(&spec.parse::<GroupSpec>().unwrap()).unwrap());
        let family = SearchFamily::DifferenceSet { k, mu };
        let pruned = search(&SearchTask::new(Arc::clone(&g), family.clone())).unwrap();
        let reference = search(&SearchTask::new(Arc::clone(&g), family).without_canonical_pruning()).unwrap();
        prop_assert!(pruned.exhausted && reference.exhausted);
        for s in &pruned.solutions {
            prop_assert!(reference.solutions.contains(s));
        }
        let right_only = g.is_abelian();
        for s in &reference.solutions {
            let covered = pruned.solutions.iter().any(|c| {
                right_translate_witness(&g, c, s).is_some()
                    || (!right_only && g.elements().any(|x| {
                        let mut l = g.left_translate(x, s);
                        l.sort_unstable();
                        right_translate_witness(&g, c, &l).is_some()
                    }))
            });
            prop_assert!(covered, "{:?} is not a translate of an emitted set", s);
        }
        for s in &pruned.solutions {
            prop_assert!(is_translate_minimal(&g, s, right_only));
        }
    }

    #[test]
    fn search_is_deterministic_across_jobs(choice in 0usize..3, jobs in 2usize..6) {
        let cases: [(&str, usize, usize); 3] = [("Z13", 4, 1), ("Z4xZ4", 6, 2), ("Z2xZ2xZ2xZ2", 6, 2)];
        let (spec, k, mu) = cases[choice];
        let g = Arc::new(make_group(&spec.parse::<GroupSpec>().unwrap()).unwrap());
        let family = SearchFamily::DifferenceSet { k, mu };
        let one = search(&SearchTask::new(Arc::clone(&g), family.clone()).with_jobs(1)).unwrap();
        let many = search(&SearchTask::new(g, family).with_jobs(jobs)).unwrap();
        prop_assert_eq!(one.solutions, many.solutions);
        prop_assert_eq!(one.nodes, many.nodes);
    }

    #[test]
    fn antipodal_classes_come_from_a_subgroup(q in prop::sample::select(vec![3usize, 5, 7])) {
        let (h, d, n) = catalog::ag_minus_parallel(q).unwrap();
        let b = bridge_construct_dih(&h, &d).unwrap();
        let classes = b.cayley.antipodal(4).unwrap().unwrap();
        let shells = b.cayley.shells().unwrap();
        let mut fourth = shells[4].clone();
        fourth.push(b.cayley.group().identity());
        fourth.sort_unstable();
        let class = classes.iter().find(|c| c.contains(&b.cayley.group().identity())).unwrap();
        let mut class = class.clone();
        class.sort_unstable();
        prop_assert_eq!(&class, &fourth);
        prop_assert_eq!(class.len(), n.order());
    }

    #[test]
    fn partial_geometric_incidence_graphs_have_five_eigenvalues(which in 0usize..4) {
        let (h, d) = match which {
            0 => catalog::vls().unwrap(),
            1 => catalog::suetake().unwrap(),
            2 => { let (h, d, _) = catalog::ag_minus_parallel(5).unwrap(); (h, d) }
            _ => catalog::singer(3).unwrap(),
        };
        let dev = development(&h, &d).unwrap();
        let p = dev.is_partial_geometric().into_value().unwrap();
        let g = dev.incidence_graph();
        // N N^T N = (2k-1+β-α) N + α J, so the spectrum lies in {0, ±k, ±√(2k-1+β-α)}.
        let c = (2 * p.k + p.beta - 1 - p.alpha) as i64;
        let k = p.k as i64;
        prop_assert!(spectrum::annihilates(&g, &[Factor::Linear(0), Factor::Quadratic(k * k), Factor::Quadratic(c)]));
        let b = bridge_construct_dih(&h, &d).unwrap();
        let array = b.cayley.intersection_array().unwrap().unwrap();
        let poly = array_polynomial(&array);
        prop_assert!(poly.len() <= 6);
        prop_assert!(annihilated_by(b.cayley.graph(), &poly));
    }
}
