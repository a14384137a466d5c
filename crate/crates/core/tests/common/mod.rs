#![allow(dead_code)]

use std::sync::Arc;

use artin_core::character::Character;
use artin_core::graph::{parse_graph, LabeledGraph};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

pub const F1: &str = "v v\nv s\nv u\nv w\ne v s 2\ne u w 2\ne u v 4\ne v w 4\ne w s 4\ne s u 6\n";
pub const F2: &str = "v u\nv v\nv w\ne u v 4\ne v w 6\ne w u 3\n";
pub const F3: &str = "v a\nv b\ne a b 4\n";
pub const F4: &str = "v a\nv b\nv c\nv d\ne a b 4\ne b c 4\ne c d 4\ne d a 4\n";
pub const F5: &str = "v a\nv b\nv c\ne a b 4\ne b c 4\n";

pub fn fixture(text: &str) -> Arc<LabeledGraph> {
    Arc::new(parse_graph(text).unwrap())
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64, labels: &[u32]) -> LabeledGraph {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let l = labels[rng.gen_range(0..labels.len())];
                edges.push((names[i].clone(), names[j].clone(), l));
            }
        }
    }
    LabeledGraph::from_parts(&names, &edges).unwrap()
}

/// Rational character with numerators in [−5, 5] and denominators ≤ 4,
/// biased towards zeros and cancelling neighbours so that dead edges and
/// vanishing sets actually occur. Odd-labeled edges are respected.
pub fn random_character<R: Rng>(rng: &mut R, g: &Arc<LabeledGraph>) -> Character {
    let n = g.num_vertices();
    let adj = g.adjacency();
    loop {
        let mut values: Vec<Option<BigRational>> = vec![None; n];
        for i in 0..n {
            if values[i].is_some() {
                continue;
            }
            let assigned: Vec<usize> = adj[i].iter().copied().filter(|&j| values[j].is_some()).collect();
            let roll: f64 = rng.gen();
            let q = if roll < 0.15 {
                BigRational::from_integer(0.into())
            } else if roll < 0.5 && !assigned.is_empty() {
                let j = assigned[rng.gen_range(0..assigned.len())];
                -values[j].clone().unwrap()
            } else {
                let num: i64 = rng.gen_range(-5..=5);
                let den: i64 = rng.gen_range(1..=4);
                BigRational::new(num.into(), den.into())
            };
            // Spread the value across the odd-labeled class of i.
            let mut stack = vec![i];
            while let Some(x) = stack.pop() {
                if values[x].is_some() {
                    continue;
                }
                values[x] = Some(q.clone());
                for &y in &adj[x] {
                    if g.label(x, y).unwrap() % 2 == 1 {
                        stack.push(y);
                    }
                }
            }
        }
        let values: Vec<BigRational> = values.into_iter().map(Option::unwrap).collect();
        if let Ok(chi) = Character::new(g.clone(), values) {
            return chi;
        }
    }
}

/// Every simple cycle (length ≥ 3) as a vertex list starting at its minimum,
/// each cycle reported once per direction.
pub fn simple_cycles(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    fn walk(adj: &[Vec<usize>], start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for &y in &adj[last] {
            if y == start && path.len() >= 3 {
                out.push(path.clone());
            } else if y > start && !on[y] {
                on[y] = true;
                path.push(y);
                walk(adj, start, path, on, out);
                path.pop();
                on[y] = false;
            }
        }
    }
    for s in 0..g.num_vertices() {
        let mut on = vec![false; g.num_vertices()];
        on[s] = true;
        walk(&adj, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

pub fn has_even_heavy_cycle(g: &LabeledGraph) -> bool {
    simple_cycles(&g.filter_edges(|_, l| l > 2))
        .iter()
        .any(|c| c.len() % 2 == 0)
}

pub fn has_heavy_cycle(g: &LabeledGraph) -> bool {
    !simple_cycles(&g.filter_edges(|_, l| l > 2)).is_empty()
}

/// Breadth-first connectivity, independent of the library's component code.
pub fn bfs_connected(g: &LabeledGraph) -> bool {
    let n = g.num_vertices();
    if n <= 1 {
        return true;
    }
    let adj = g.adjacency();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Living subgraph connectivity and dominance, recomputed from the values
/// with a union-find instead of the library's subgraph machinery.
pub fn oracle_in(chi: &Character) -> bool {
    let g = chi.carrier();
    let v = chi.values();
    let n = g.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for ((i, j), l) in g.edges() {
        let dead = l > 2 && l % 2 == 0 && (&v[i] + &v[j]).is_zero();
        if !v[i].is_zero() && !v[j].is_zero() && !dead {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let support: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
    let roots: std::collections::BTreeSet<usize> = support.iter().map(|&i| find(&mut parent, i)).collect();
    let adj = g.adjacency();
    let dominant = (0..n).all(|x| !v[x].is_zero() || adj[x].iter().any(|&y| !v[y].is_zero()));
    roots.len() <= 1 && dominant
}
