mod common;

use std::collections::BTreeSet;

use artin_core::graph::{
    blocks, check_hypothesis, cycle_rank, full_subgraph, hypothesis_witness, is_connected, is_dominant, HypothesisMode,
    VertexSet,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn hypothesis_agrees_with_cycle_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..300 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.15..0.7);
        let g = random_graph(&mut rng, n, density, &[2, 3, 4, 5, 6]);
        let simple = check_hypothesis(&g, HypothesisMode::SimpleCycle);
        let strict = check_hypothesis(&g, HypothesisMode::Strict);
        assert_eq!(simple, !has_even_heavy_cycle(&g), "round {round}: {g:?}");
        assert_eq!(strict, !has_heavy_cycle(&g), "round {round}: {g:?}");
        assert!(!strict || simple);
        if let Some(c) = hypothesis_witness(&g, HypothesisMode::SimpleCycle) {
            assert_eq!(c.len() % 2, 0);
            assert_eq!(c.iter().collect::<BTreeSet<_>>().len(), c.len());
            for k in 0..c.len() {
                assert!(g.label(c[k], c[(k + 1) % c.len()]).unwrap() > 2);
            }
        }
    }
}

#[test]
fn blocks_partition_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let n = rng.gen_range(1..=9);
        let density = rng.gen_range(0.1..0.8);
        let g = random_graph(&mut rng, n, density, &[2, 4]);
        let bs = blocks(&g);
        let mut all: Vec<(usize, usize)> = bs.iter().flat_map(|b| b.edges.clone()).collect();
        all.sort();
        let expected: Vec<(usize, usize)> = g.edges().map(|(e, _)| e).collect();
        assert_eq!(all, expected);
        for b in &bs {
            // Removing any single vertex keeps a non-bridge block connected.
            if b.edges.len() > 1 {
                for &x in &b.vertices {
                    let rest: VertexSet = b.vertices.iter().copied().filter(|&y| y != x).collect();
                    let sub = full_subgraph(&g.filter_edges(|e, _| b.edges.contains(&e)), &rest).unwrap();
                    assert!(bfs_connected(&sub));
                }
            }
        }
    }
}

#[test]
fn connectivity_and_subgraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.gen_range(0..=8);
        let density = rng.gen_range(0.1..0.6);
        let g = random_graph(&mut rng, n, density, &[2, 4, 6]);
        assert_eq!(is_connected(&g), bfs_connected(&g));
        let s: VertexSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let once = full_subgraph(&g, &s).unwrap();
        let again = full_subgraph(&once, &once.all_vertices()).unwrap();
        assert_eq!(once, again);
        let adj = g.adjacency();
        let expected = (0..n).all(|x| s.contains(x) || adj[x].iter().any(|&y| s.contains(y)));
        assert_eq!(is_dominant(&g, &s).unwrap(), expected);
        assert_eq!(cycle_rank(&g) + g.num_vertices(), g.num_edges() + g.num_components());
    }
}

#[test]
fn fixtures() {
    let f1 = fixture(F1);
    assert_eq!(cycle_rank(&f1), 3);
    assert_eq!(blocks(&f1).len(), 1);
    assert_eq!(cycle_rank(&fixture(F2)), 1);
    assert_eq!(cycle_rank(&fixture(F5)), 0);
    let f4 = fixture(F4);
    assert!(!check_hypothesis(&f4, HypothesisMode::SimpleCycle));
    assert!(!check_hypothesis(&f4, HypothesisMode::Strict));
    assert!(check_hypothesis(&fixture(F5), HypothesisMode::Strict));
    let w = hypothesis_witness(&f1, HypothesisMode::SimpleCycle).unwrap();
    let names: Vec<&str> = w.iter().map(|&i| f1.name(i)).collect();
    assert_eq!(names, vec!["v", "u", "s", "w"]);
}
