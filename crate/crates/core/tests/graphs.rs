mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unnet::connectivity::{is_k_connected, vertex_connectivity};
use unnet::construct::{join_graphs, join_unns, maximal_unn_subgraph, JoinSpec};
use unnet::graph::Graph;
use unnet::random::{random_distinct, random_graph, random_unn};
use unnet::unn::is_unn_naive;

fn fixture(name: &str) -> Graph {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    Graph::parse_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn fixtures_parse_to_the_expected_graphs() {
    assert_eq!(fixture("line4.txt"), Graph::path(4));
    assert_eq!(fixture("k4.txt"), Graph::complete(4));
    assert_eq!(fixture("k22.txt"), Graph::complete_bipartite(2, 2));
    assert_eq!(fixture("star4.txt"), Graph::star(4));
    assert_eq!(fixture("k5.txt"), Graph::complete(5));
}

#[test]
fn unn_is_not_monotone_under_adding_edges() {
    let g = Graph::path(4);
    let mut g1 = g.clone();
    g1.add_edge(3, 0).unwrap();
    let mut g2 = g1.clone();
    g2.add_edge(0, 2).unwrap();
    g2.add_edge(1, 3).unwrap();
    assert_eq!(g2, Graph::complete(4));
    assert!(is_unn_naive(&g).unwrap().is_unn);
    // the 4-cycle is K_{2,2} with parts {0,2} and {1,3}
    assert_eq!(is_unn_naive(&g1).unwrap().witness, Some((0, 2)));
    assert!(is_unn_naive(&g2).unwrap().is_unn);
}

#[test]
fn flow_connectivity_matches_vertex_cut_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..600 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(n, rng.gen_range(0.2..0.9), &mut rng);
        let kappa = vertex_connectivity(&g).unwrap();
        assert_eq!(kappa, common::brute_kappa(&g), "{g:?}");
        assert!(is_k_connected(&g, kappa));
        assert!(!is_k_connected(&g, kappa + 1));
    }
}

#[test]
fn joins_of_unns_with_minimum_degree_two_stay_unns() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 300 {
        let (Some(left), Some(right)) = (random_unn(rng.gen_range(3..=10), &mut rng), random_unn(rng.gen_range(3..=10), &mut rng))
        else {
            continue;
        };
        if (0..left.n()).any(|v| left.degree(v) < 2) || (0..right.n()).any(|v| right.degree(v) < 2) {
            continue;
        }
        let m = rng.gen_range(1..=left.n().min(right.n()));
        let pairs: Vec<_> = random_distinct(left.n(), m, &mut rng).into_iter().zip(random_distinct(right.n(), m, &mut rng)).collect();
        let h = join_unns(&JoinSpec { left, right, pairs }).expect("min degree two rules out cross twins");
        assert!(is_unn_naive(&h).unwrap().is_unn);
        checked += 1;
    }
}

#[test]
fn low_degree_vertices_can_become_twins_across_a_join() {
    // K2 + K2 joined crosswise is the 4-cycle
    let h = join_graphs(&Graph::complete(2), &Graph::complete(2), &[(0, 1), (1, 0)]);
    assert_eq!(is_unn_naive(&h).unwrap().witness, Some((0, 2)));
    // K1 joined to one end of K2: the K1 vertex and the far end of K2 both see {1}
    let h = join_graphs(&Graph::new(1), &Graph::complete(2), &[(0, 0)]);
    assert!(!is_unn_naive(&h).unwrap().is_unn);
}

#[test]
fn extracting_from_the_star_fixture() {
    let r = maximal_unn_subgraph(&fixture("star4.txt")).unwrap();
    assert_eq!(r.kept_vertices, vec![0, 1]);
    assert_eq!(r.excluded.len(), 3);
}

#[test]
fn inducing_the_kept_vertices_can_create_twins() {
    // BFS from 0 gives the tree 0-1, 0-2, 1-3, 2-4, so every vertex is
    // kept. With all original edges, leaves 3 and 4 both see {1, 2}.
    let g = Graph::from_edges(5, false, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (1, 4), (2, 3)]).unwrap();
    let r = maximal_unn_subgraph(&g).unwrap();
    let kept: std::collections::BTreeSet<_> = r.kept_vertices.iter().copied().collect();
    let (induced, _) = g.induced_subgraph(&kept);
    assert!(!is_unn_naive(&induced).unwrap().is_unn);
    assert!(is_unn_naive(&r.kept).unwrap().is_unn);
}
