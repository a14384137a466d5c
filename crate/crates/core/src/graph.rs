//! Labeled simplicial graphs and the structural tests run on them.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: label {label} on edge {a}-{b} is smaller than 2")]
    LabelTooSmall {
        line: usize,
        a: String,
        b: String,
        label: u64,
    },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: String },
    #[error("line {line}: duplicate edge {a}-{b}")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("line {line}: duplicate vertex {vertex}")]
    DuplicateVertex { line: usize, vertex: String },
    #[error("line {line}: undeclared vertex {vertex}")]
    Undeclared { line: usize, vertex: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

/// Finite simplicial graph whose edges carry integer labels ≥ 2.
///
/// Vertices keep their declaration order; an edge is stored once under its
/// (smaller index, larger index) key.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), u32>,
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.named_edges().collect::<Vec<_>>())
            .finish()
    }
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl LabeledGraph {
    pub fn new() -> Self {
        LabeledGraph {
            vertices: Vec::new(),
            index: HashMap::new(),
            edges: BTreeMap::new(),
        }
    }

    /// Builds a graph from names and `(a, b, label)` triples.
    pub fn from_parts<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, u32)]) -> Result<Self, GraphError> {
        let mut g = LabeledGraph::new();
        for (i, v) in vertices.iter().enumerate() {
            g.add_vertex(v.as_ref(), i + 1)?;
        }
        for (i, (a, b, label)) in edges.iter().enumerate() {
            g.add_edge(a.as_ref(), b.as_ref(), u64::from(*label), i + 1)?;
        }
        Ok(g)
    }

    fn add_vertex(&mut self, name: &str, line: usize) -> Result<usize, GraphError> {
        if !is_identifier(name) {
            return Err(GraphError::Syntax {
                line,
                message: format!("invalid vertex name `{name}`"),
            });
        }
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex {
                line,
                vertex: name.to_string(),
            });
        }
        let i = self.vertices.len();
        self.vertices.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    fn add_edge(&mut self, a: &str, b: &str, label: u64, line: usize) -> Result<(), GraphError> {
        let lookup = |name: &str| {
            self.index.get(name).copied().ok_or_else(|| GraphError::Undeclared {
                line,
                vertex: name.to_string(),
            })
        };
        let (i, j) = (lookup(a)?, lookup(b)?);
        if i == j {
            return Err(GraphError::Loop {
                line,
                vertex: a.to_string(),
            });
        }
        if label < 2 {
            return Err(GraphError::LabelTooSmall {
                line,
                a: a.to_string(),
                b: b.to_string(),
                label,
            });
        }
        let label = u32::try_from(label).map_err(|_| GraphError::Syntax {
            line,
            message: format!("label {label} is too large"),
        })?;
        let key = (i.min(j), i.max(j));
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge {
                line,
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        self.edges.insert(key, label);
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Edges as `((i, j), label)` with `i < j`, in key order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.edges.iter().map(|(&k, &l)| (k, l))
    }

    pub fn named_edges(&self) -> impl Iterator<Item = (&str, &str, u32)> + '_ {
        self.edges
            .iter()
            .map(|(&(i, j), &l)| (self.vertices[i].as_str(), self.vertices[j].as_str(), l))
    }

    pub fn label(&self, i: usize, j: usize) -> Option<u32> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in self.edges.keys() {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_even(&self) -> bool {
        self.edges.values().all(|l| l % 2 == 0)
    }

    /// Same vertices, keeping only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut((usize, usize), u32) -> bool) -> LabeledGraph {
        LabeledGraph {
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            edges: self
                .edges
                .iter()
                .filter(|(&k, &l)| keep(k, l))
                .map(|(&k, &l)| (k, l))
                .collect(),
        }
    }

    pub fn without_edges(&self, removed: &[(usize, usize)]) -> LabeledGraph {
        let removed: BTreeSet<(usize, usize)> = removed.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        self.filter_edges(|k, _| !removed.contains(&k))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect::<Result<BTreeSet<_>, _>>()
            .map(VertexSet)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.vertices.len()).collect())
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.0.iter().find(|&&i| i >= self.vertices.len()) {
            Some(i) => Err(GraphError::UnknownVertex(format!("#{i}"))),
            None => Ok(()),
        }
    }

    /// Connected-component id per vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for start in 0..self.vertices.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn num_components(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }
}

impl Default for LabeledGraph {
    fn default() -> Self {
        LabeledGraph::new()
    }
}

/// Subset of a carrier graph's vertices, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub BTreeSet<usize>);

impl VertexSet {
    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// A parsed `.artin` document: the graph plus any `c` character lines.
#[derive(Clone, Debug)]
pub struct ArtinDocument {
    pub graph: LabeledGraph,
    pub character: Vec<(String, BigRational)>,
}

pub fn parse_artin(text: &str) -> Result<ArtinDocument, GraphError> {
    let mut graph = LabeledGraph::new();
    let mut character = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: &str| GraphError::Syntax {
            line,
            message: message.to_string(),
        };
        match fields.as_slice() {
            ["v", name] => {
                graph.add_vertex(name, line)?;
            }
            ["e", a, b, label] => {
                let label: u64 = label
                    .parse()
                    .map_err(|_| syntax(&format!("edge label `{label}` is not a non-negative integer")))?;
                graph.add_edge(a, b, label, line)?;
            }
            ["c", name, value] => {
                if graph.index_of(name).is_none() {
                    return Err(GraphError::Undeclared {
                        line,
                        vertex: name.to_string(),
                    });
                }
                let q = parse_rational(value).ok_or_else(|| syntax(&format!("invalid rational `{value}`")))?;
                character.push((name.to_string(), q));
            }
            ["v", ..] => return Err(syntax("expected `v <name>`")),
            ["e", ..] => return Err(syntax("expected `e <name> <name> <label>`")),
            ["c", ..] => return Err(syntax("expected `c <name> <rational>`")),
            [other, ..] => return Err(syntax(&format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    Ok(ArtinDocument { graph, character })
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    parse_artin(text).map(|doc| doc.graph)
}

/// Writes a graph back in `.artin` syntax.
pub fn format_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for v in &g.vertices {
        out.push_str(&format!("v {v}\n"));
    }
    for (a, b, l) in g.named_edges() {
        out.push_str(&format!("e {a} {b} {l}\n"));
    }
    out
}

/// Full subgraph on `s`; vertices keep the carrier's relative order.
pub fn full_subgraph(g: &LabeledGraph, s: &VertexSet) -> Result<LabeledGraph, GraphError> {
    g.check_set(s)?;
    let mut sub = LabeledGraph::new();
    let mut remap = HashMap::new();
    for i in s.iter() {
        remap.insert(i, sub.vertices.len());
        sub.index.insert(g.vertices[i].clone(), sub.vertices.len());
        sub.vertices.push(g.vertices[i].clone());
    }
    for (&(i, j), &l) in &g.edges {
        if let (Some(&a), Some(&b)) = (remap.get(&i), remap.get(&j)) {
            sub.edges.insert((a.min(b), a.max(b)), l);
        }
    }
    Ok(sub)
}

/// Empty and single-vertex graphs count as connected.
pub fn is_connected(g: &LabeledGraph) -> bool {
    g.num_components() <= 1
}

/// Every vertex outside `s` has a neighbour inside `s`.
pub fn is_dominant(g: &LabeledGraph, s: &VertexSet) -> Result<bool, GraphError> {
    g.check_set(s)?;
    let adj = g.adjacency();
    Ok((0..g.num_vertices()).all(|x| s.contains(x) || adj[x].iter().any(|&y| s.contains(y))))
}

pub fn cycle_rank(g: &LabeledGraph) -> usize {
    g.num_edges() + g.num_components() - g.num_vertices()
}

/// One biconnected component: a bridge or a 2-connected piece.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    pub edges: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
}

impl Block {
    fn from_edges(mut edges: Vec<(usize, usize)>) -> Block {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Block {
            edges,
            vertices: vertices.into_iter().collect(),
        }
    }

    pub fn is_single_edge(&self) -> bool {
        self.edges.len() == 1
    }

    /// A 2-connected block with as many edges as vertices is a cycle.
    pub fn is_cycle(&self) -> bool {
        self.edges.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

/// Biconnected components (Tarjan), sorted by edge list.
pub fn blocks(g: &LabeledGraph) -> Vec<Block> {
    let n = g.num_vertices();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // Frames: (vertex, parent, next neighbour position).
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (x, parent, ref mut pos)) = frames.last_mut() {
            if *pos < adj[x].len() {
                let y = adj[x][*pos];
                *pos += 1;
                if disc[y] == usize::MAX {
                    stack.push((x, y));
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    frames.push((y, x, 0));
                } else if y != parent && disc[y] < disc[x] {
                    stack.push((x, y));
                    low[x] = low[x].min(disc[y]);
                }
                continue;
            }
            frames.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[x]);
            if low[x] >= disc[parent] {
                let mut edges = Vec::new();
                while let Some(e) = stack.pop() {
                    edges.push(e);
                    if e == (parent, x) {
                        break;
                    }
                }
                out.push(Block::from_edges(edges));
            }
        }
    }
    out.sort();
    out
}

/// How "closed reduced path" in the hypothesis is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisMode {
    /// No even simple cycle among edges with label > 2.
    #[default]
    SimpleCycle,
    /// No cycle at all among edges with label > 2.
    Strict,
}

impl HypothesisMode {
    pub fn name(self) -> &'static str {
        match self {
            HypothesisMode::SimpleCycle => "simple-cycle",
            HypothesisMode::Strict => "strict",
        }
    }
}

impl fmt::Display for HypothesisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HypothesisMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "simple-cycle" => Ok(HypothesisMode::SimpleCycle),
            "strict" => Ok(HypothesisMode::Strict),
            other => Err(format!("unknown mode `{other}` (expected simple-cycle or strict)")),
        }
    }
}

/// Subgraph of edges with label > 2.
pub fn heavy_subgraph(g: &LabeledGraph) -> LabeledGraph {
    g.filter_edges(|_, l| l > 2)
}

pub fn check_hypothesis(g: &LabeledGraph, mode: HypothesisMode) -> bool {
    hypothesis_witness(g, mode).is_none()
}

/// A cycle of the label > 2 subgraph violating the hypothesis, if any.
///
/// In simple-cycle mode the witness is an even simple cycle; in strict mode
/// it is any simple cycle. Cycles are rotated to start at their smallest
/// vertex and to continue towards the smaller of its two cycle neighbours.
pub fn hypothesis_witness(g: &LabeledGraph, mode: HypothesisMode) -> Option<Vec<usize>> {
    let h = heavy_subgraph(g);
    let bs = blocks(&h);
    let cycle = match mode {
        HypothesisMode::Strict => bs.iter().find(|b| !b.is_single_edge()).map(block_cycle),
        HypothesisMode::SimpleCycle => bs.iter().find_map(|b| {
            if b.is_single_edge() || (b.is_cycle() && b.edges.len() % 2 == 1) {
                None
            } else if b.is_cycle() {
                Some(block_cycle(b))
            } else {
                Some(even_cycle_in_theta(b))
            }
        }),
    }?;
    Some(canonical_cycle(&cycle))
}

pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let next = cycle[(start + 1) % n];
    let prev = cycle[(start + n - 1) % n];
    if next <= prev {
        (0..n).map(|k| cycle[(start + k) % n]).collect()
    } else {
        (0..n).map(|k| cycle[(start + n - k) % n]).collect()
    }
}

fn block_adjacency(b: &Block) -> BTreeMap<usize, Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(x, y) in &b.edges {
        adj.entry(x).or_default().push(y);
        adj.entry(y).or_default().push(x);
    }
    adj
}

/// Any simple cycle of a 2-connected block: a tree path closed by a back edge.
fn block_cycle(b: &Block) -> Vec<usize> {
    let adj = block_adjacency(b);
    let root = b.vertices[0];
    let mut parent: BTreeMap<usize, usize> = BTreeMap::from([(root, root)]);
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if y == parent[&x] {
                continue;
            }
            if parent.contains_key(&y) {
                // Back edge: walk both tree paths up to the common ancestor.
                return close_cycle(&parent, x, y);
            }
            parent.insert(y, x);
            stack.push(y);
        }
    }
    unreachable!("2-connected block without a cycle")
}

fn path_to_root(parent: &BTreeMap<usize, usize>, mut x: usize) -> Vec<usize> {
    let mut path = vec![x];
    while parent[&x] != x {
        x = parent[&x];
        path.push(x);
    }
    path
}

fn close_cycle(parent: &BTreeMap<usize, usize>, x: usize, y: usize) -> Vec<usize> {
    let px = path_to_root(parent, x);
    let py = path_to_root(parent, y);
    let on_py: BTreeSet<usize> = py.iter().copied().collect();
    let cut = px.iter().position(|v| on_py.contains(v)).unwrap();
    let meet = px[cut];
    let mut cycle: Vec<usize> = px[..=cut].to_vec();
    let tail: Vec<usize> = py.iter().copied().take_while(|&v| v != meet).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}

/// Even cycle in a 2-connected block that is not itself a cycle.
///
/// Take a cycle C and an ear P between two vertices of C. The two arcs of C
/// and P are three internally disjoint paths; two of them share a parity.
fn even_cycle_in_theta(b: &Block) -> Vec<usize> {
    let adj = block_adjacency(b);
    let cycle = block_cycle(b);
    let pos: BTreeMap<usize, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = cycle.len();
    let on_cycle = |v: usize| pos.contains_key(&v);
    let is_cycle_edge = |a: usize, b: usize| {
        let (i, j) = (pos[&a], pos[&b]);
        (i + 1) % k == j || (j + 1) % k == i
    };
    let mut ear: Option<Vec<usize>> = None;
    'search: for &x in &cycle {
        for &y in &adj[&x] {
            if on_cycle(y) {
                if !is_cycle_edge(x, y) {
                    ear = Some(vec![x, y]);
                    break 'search;
                }
                continue;
            }
            // Breadth-first search from y avoiding x until C is reached.
            let mut from: BTreeMap<usize, usize> = BTreeMap::from([(y, y)]);
            let mut queue = VecDeque::from([y]);
            while let Some(z) = queue.pop_front() {
                if on_cycle(z) {
                    let mut path = vec![z];
                    let mut cur = z;
                    while cur != y {
                        cur = from[&cur];
                        path.push(cur);
                    }
                    path.push(x);
                    path.reverse();
                    ear = Some(path);
                    break 'search;
                }
                for &w in &adj[&z] {
                    if w != x && !from.contains_key(&w) {
                        from.insert(w, z);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let ear = ear.expect("2-connected block that is not a cycle has an ear");
    let i = pos[&ear[0]];
    let j = pos[ear.last().unwrap()];
    // Arc A runs forward along C from i to j, arc B backward.
    let arc_a: Vec<usize> = (0..).map(|d| cycle[(i + d) % k]).take((j + k - i) % k + 1).collect();
    let arc_b: Vec<usize> = (0..)
        .map(|d| cycle[(i + k - d) % k])
        .take((i + k - j) % k + 1)
        .collect();
    let ear_len = ear.len() - 1;
    let (a_len, b_len) = (arc_a.len() - 1, arc_b.len() - 1);
    let join = |p: &[usize], q: &[usize]| -> Vec<usize> {
        // p runs i..j, q runs i..j; close as p then q reversed.
        let mut c = p.to_vec();
        c.extend(q[1..q.len() - 1].iter().rev());
        c
    };
    if (a_len + b_len) % 2 == 0 {
        join(&arc_a, &arc_b)
    } else if (a_len + ear_len).is_multiple_of(2) {
        join(&arc_a, &ear)
    } else {
        join(&arc_b, &ear)
    }
}
