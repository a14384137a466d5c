//! The modules K_T of a labeled bipartite forest, their realization through
//! the Koszul complex, and the specialization that certifies that K_T is not
//! finitely generated over ℤKer(χ).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{vars, Cyclotomic, CyclotomicField, Field, LaurentPoly, PolyMatrix, Ring, Vars};
use crate::character::{dead_edges, living_subgraph, Character};
use crate::graph::LabeledGraph;
use crate::koszul::KoszulElement;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KtError {
    #[error("vertex {0} appears more than once in the forest")]
    RepeatedVertex(String),
    #[error("edge {0}-{1} does not join the V side to the W side")]
    NotBipartite(String, String),
    #[error("edge {0}-{1} appears twice")]
    RepeatedEdge(String, String),
    #[error("edge {0}-{1} has m = {2}; every tree edge needs m >= 2")]
    SmallLabel(String, String, u32),
    #[error("tree edges contain a cycle through {0}-{1}")]
    Cycle(String, String),
    #[error("basepoint {0} is not a vertex of the forest")]
    UnknownBasepoint(String),
    #[error("component of {0} has {1} basepoints")]
    Basepoints(String, usize),
    #[error("character has no value at {0}")]
    MissingValue(String),
    #[error("character vanishes at {0}")]
    ZeroValue(String),
    #[error("character has {0}={1} and {2}={3}, but tree edges need opposite values")]
    NotOpposite(String, i64, String, i64),
    #[error("specialization of {0} is inconsistent")]
    Inconsistent(String),
    #[error("graph has an odd label; the construction needs an even Artin group")]
    NotEven,
    #[error("dead edges contain a cycle through {0}-{1}")]
    DeadCycle(String, String),
    #[error("no dead edges: the living subgraph is connected")]
    NoDeadEdges,
    #[error("dead edge {0}-{1} lies inside one living component")]
    DeadEdgeInsideComponent(String, String),
    #[error("living components cannot be split into two sides along dead edges (components: {0})")]
    NoBipartition(String),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("character value at {0} does not fit in 64 bits")]
    Overflow(String),
}

/// A forest on V ∪ W whose edges join V to W and carry m ≥ 2 (label 2m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteForest {
    v_side: Vec<String>,
    w_side: Vec<String>,
    /// (index in V, index in W, m).
    edges: Vec<(usize, usize, u32)>,
    /// One vertex per component, as an index into `vertices()`.
    basepoints: Vec<usize>,
}

impl BipartiteForest {
    pub fn new<S: AsRef<str>>(v_side: &[S], w_side: &[S], edges: &[(S, S, u32)]) -> Result<Self, KtError> {
        let v_side: Vec<String> = v_side.iter().map(|s| s.as_ref().to_string()).collect();
        let w_side: Vec<String> = w_side.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for name in v_side.iter().chain(&w_side) {
            if !seen.insert(name.clone()) {
                return Err(KtError::RepeatedVertex(name.clone()));
            }
        }
        let nv = v_side.len();
        let mut parent: Vec<usize> = (0..nv + w_side.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut out = Vec::new();
        let mut pairs = BTreeSet::new();
        for (a, b, m) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let (vi, wi) = match (
                v_side.iter().position(|x| x == a),
                w_side.iter().position(|x| x == b),
                v_side.iter().position(|x| x == b),
                w_side.iter().position(|x| x == a),
            ) {
                (Some(v), Some(w), _, _) => (v, w),
                (_, _, Some(v), Some(w)) => (v, w),
                _ => return Err(KtError::NotBipartite(a.into(), b.into())),
            };
            if *m < 2 {
                return Err(KtError::SmallLabel(a.into(), b.into(), *m));
            }
            if !pairs.insert((vi, wi)) {
                return Err(KtError::RepeatedEdge(a.into(), b.into()));
            }
            let (x, y) = (find(&mut parent, vi), find(&mut parent, nv + wi));
            if x == y {
                return Err(KtError::Cycle(a.into(), b.into()));
            }
            parent[x] = y;
            out.push((vi, wi, *m));
        }
        let mut forest = BipartiteForest {
            v_side,
            w_side,
            edges: out,
            basepoints: Vec::new(),
        };
        forest.basepoints = forest.components().iter().map(|c| c[0]).collect();
        Ok(forest)
    }

    /// Replaces the default basepoints (first vertex of each component).
    pub fn with_basepoints<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self, KtError> {
        let all = self.vertices();
        let idx = names
            .iter()
            .map(|n| {
                all.iter()
                    .position(|v| v == n.as_ref())
                    .ok_or_else(|| KtError::UnknownBasepoint(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut chosen = Vec::new();
        for comp in self.components() {
            let hits: Vec<usize> = comp.iter().copied().filter(|v| idx.contains(v)).collect();
            if hits.len() != 1 {
                return Err(KtError::Basepoints(all[comp[0]].clone(), hits.len()));
            }
            chosen.push(hits[0]);
        }
        self.basepoints = chosen;
        Ok(self)
    }

    /// V then W.
    pub fn vertices(&self) -> Vec<String> {
        self.v_side.iter().chain(&self.w_side).cloned().collect()
    }

    pub fn v_side(&self) -> &[String] {
        &self.v_side
    }

    pub fn w_side(&self) -> &[String] {
        &self.w_side
    }

    /// Tree edges as (V name, W name, m).
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u32)> + '_ {
        self.edges
            .iter()
            .map(|&(v, w, m)| (self.v_side[v].as_str(), self.w_side[w].as_str(), m))
    }

    pub fn basepoints(&self) -> Vec<String> {
        let all = self.vertices();
        self.basepoints.iter().map(|&b| all[b].clone()).collect()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let nv = self.v_side.len();
        let mut adj = vec![Vec::new(); nv + self.w_side.len()];
        for &(v, w, m) in &self.edges {
            adj[v].push((nv + w, m));
            adj[nv + w].push((v, m));
        }
        adj
    }

    /// Components as sorted vertex-index lists, ordered by smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut out = Vec::new();
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn num_generators(&self) -> usize {
        self.v_side.len() * self.w_side.len()
    }
}

/// Generators indexed by pairs (v, w) and relation rows over ℤ[vertices^{±1}].
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation {
    pub vars: Vars,
    pub generators: Vec<(String, String)>,
    pub rows: Vec<Vec<LaurentPoly<BigInt>>>,
}

impl ModulePresentation {
    pub fn generator_names(&self, prefix: &str) -> Vec<String> {
        self.generators
            .iter()
            .map(|(v, w)| format!("{prefix}_{{{v},{w}}}"))
            .collect()
    }

    /// Normal form for comparing presentations: variables and generators
    /// sorted by name, zero rows dropped, each row scaled by ±1 so that its
    /// first nonzero entry has positive leading coefficient, rows sorted and
    /// deduplicated.
    pub fn canonical(&self) -> ModulePresentation {
        let mut names = self.vars.to_vec();
        names.sort();
        let target = vars(&names);
        let mut order: Vec<usize> = (0..self.generators.len()).collect();
        order.sort_by(|&a, &b| self.generators[a].cmp(&self.generators[b]));
        let mut rows: Vec<Vec<LaurentPoly<BigInt>>> = self
            .rows
            .iter()
            .filter(|row| row.iter().any(|e| !e.is_zero()))
            .map(|row| {
                let row: Vec<LaurentPoly<BigInt>> = order
                    .iter()
                    .map(|&c| row[c].reorder_vars(&target).expect("same variable names"))
                    .collect();
                let first = row.iter().find(|e| !e.is_zero()).unwrap();
                let (_, negated) = first.sign_normalized();
                if negated {
                    row.into_iter().map(|e| -e).collect()
                } else {
                    row
                }
            })
            .collect();
        let key = |row: &Vec<LaurentPoly<BigInt>>| row.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        rows.sort_by_key(key);
        rows.dedup_by(|a, b| key(a) == key(b));
        ModulePresentation {
            vars: target,
            generators: order.iter().map(|&c| self.generators[c].clone()).collect(),
            rows,
        }
    }
}

/// 1 + q + … + q^{m−1} for the monomial q = x_a·x_b.
fn cyclotomic_sum(vs: &Vars, a: usize, b: usize, m: u32) -> LaurentPoly<BigInt> {
    let q = &LaurentPoly::var(vs, &(), a) * &LaurentPoly::var(vs, &(), b);
    let mut acc = LaurentPoly::zero(vs, &());
    let mut power = LaurentPoly::one(vs, &());
    for _ in 0..m {
        acc = acc + &power;
        power = &power * &q;
    }
    acc
}

fn var_minus_one(vs: &Vars, i: usize) -> LaurentPoly<BigInt> {
    &LaurentPoly::var(vs, &(), i) - &LaurentPoly::one(vs, &())
}

pub fn build_kt(t: &BipartiteForest) -> ModulePresentation {
    let vs = vars(&t.vertices());
    let (nv, nw) = (t.v_side.len(), t.w_side.len());
    let gen = |v: usize, w: usize| v * nw + w;
    let zero_row = || vec![LaurentPoly::zero(&vs, &()); nv * nw];
    let mut rows = Vec::new();
    for &(v, w, m) in &t.edges {
        let mut row = zero_row();
        row[gen(v, w)] = cyclotomic_sum(&vs, v, nv + w, m);
        rows.push(row);
    }
    for v in 0..nv {
        for s in v + 1..nv {
            for w in 0..nw {
                let mut row = zero_row();
                row[gen(v, w)] = var_minus_one(&vs, s);
                row[gen(s, w)] = -var_minus_one(&vs, v);
                rows.push(row);
            }
        }
    }
    for v in 0..nv {
        for w in 0..nw {
            for s in w + 1..nw {
                let mut row = zero_row();
                row[gen(v, w)] = var_minus_one(&vs, nv + s);
                row[gen(v, s)] = -var_minus_one(&vs, nv + w);
                rows.push(row);
            }
        }
    }
    let generators = (0..nv)
        .flat_map(|v| (0..nw).map(move |w| (v, w)))
        .map(|(v, w)| (t.v_side[v].clone(), t.w_side[w].clone()))
        .collect();
    ModulePresentation {
        vars: vs,
        generators,
        rows,
    }
}

/// Side (0 or 1) of every vertex of `g` for the two-sided construction, and
/// the dead-edge forest joining the sides.
#[derive(Clone, Debug)]
pub struct Gamma0Split {
    pub side: Vec<u8>,
    pub forest: BipartiteForest,
}

/// Splits the living components of χ into two sides joined only by dead
/// edges. Without an explicit `first_side`, the sides are the 2-coloring of
/// the graph whose nodes are living components and whose edges are dead
/// edges, with the first vertex on side 0.
pub fn gamma0_split(g: &LabeledGraph, chi: &Character, first_side: Option<&[String]>) -> Result<Gamma0Split, KtError> {
    if !g.is_even() {
        return Err(KtError::NotEven);
    }
    if let Some(i) = chi.values().iter().position(Zero::is_zero) {
        return Err(KtError::ZeroValue(g.name(i).to_string()));
    }
    let dead = dead_edges(chi);
    if dead.is_empty() {
        return Err(KtError::NoDeadEdges);
    }
    let n = g.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(i, j) in &dead {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a == b {
            return Err(KtError::DeadCycle(g.name(i).into(), g.name(j).into()));
        }
        parent[a] = b;
    }
    // The living subgraph has the same vertex order as g here.
    let comp = living_subgraph(chi).components();
    for &(i, j) in &dead {
        if comp[i] == comp[j] {
            return Err(KtError::DeadEdgeInsideComponent(g.name(i).into(), g.name(j).into()));
        }
    }
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    let describe = || {
        let mut groups = vec![Vec::new(); ncomp];
        for (i, &c) in comp.iter().enumerate() {
            groups[c].push(g.name(i).to_string());
        }
        groups
            .iter()
            .map(|grp| format!("{{{}}}", grp.join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let comp_side: Vec<u8> = match first_side {
        Some(names) => {
            let chosen: BTreeSet<&str> = names.iter().map(String::as_str).collect();
            for name in &chosen {
                if g.index_of(name).is_none() {
                    return Err(KtError::InvalidBipartition(format!("unknown vertex {name}")));
                }
            }
            let mut sides = vec![None; ncomp];
            for i in 0..n {
                let s = u8::from(!chosen.contains(g.name(i)));
                match sides[comp[i]] {
                    None => sides[comp[i]] = Some(s),
                    Some(t) if t != s => {
                        return Err(KtError::InvalidBipartition(format!(
                            "living component of {} is split between the sides",
                            g.name(i)
                        )))
                    }
                    _ => {}
                }
            }
            sides.into_iter().map(Option::unwrap).collect()
        }
        None => {
            let mut adj = vec![Vec::new(); ncomp];
            for &(i, j) in &dead {
                adj[comp[i]].push(comp[j]);
                adj[comp[j]].push(comp[i]);
            }
            let mut sides: Vec<Option<u8>> = vec![None; ncomp];
            for start in 0..ncomp {
                if sides[start].is_some() {
                    continue;
                }
                sides[start] = Some(0);
                let mut queue = VecDeque::from([start]);
                while let Some(c) = queue.pop_front() {
                    let s = sides[c].unwrap();
                    for &d in &adj[c] {
                        match sides[d] {
                            None => {
                                sides[d] = Some(1 - s);
                                queue.push_back(d);
                            }
                            Some(t) if t == s => return Err(KtError::NoBipartition(describe())),
                            _ => {}
                        }
                    }
                }
            }
            sides.into_iter().map(Option::unwrap).collect()
        }
    };
    let side: Vec<u8> = (0..n).map(|i| comp_side[comp[i]]).collect();
    let mut edges = Vec::new();
    for &(i, j) in &dead {
        if side[i] == side[j] {
            return Err(KtError::InvalidBipartition(format!(
                "dead edge {}-{} does not cross the sides",
                g.name(i),
                g.name(j)
            )));
        }
        let (v, w) = if side[i] == 0 { (i, j) } else { (j, i) };
        let label = g.label(i, j).unwrap();
        edges.push((g.name(v).to_string(), g.name(w).to_string(), label / 2));
    }
    let v_side: Vec<String> = (0..n)
        .filter(|&i| side[i] == 0)
        .map(|i| g.name(i).to_string())
        .collect();
    let w_side: Vec<String> = (0..n)
        .filter(|&i| side[i] == 1)
        .map(|i| g.name(i).to_string())
        .collect();
    let forest = BipartiteForest::new(&v_side, &w_side, &edges)?;
    Ok(Gamma0Split { side, forest })
}

/// The presentation of G₀′/G₀″ obtained from the Koszul complex of the
/// two-sided graph: generators e_v ∧ e_w with v on side 0 and w on side 1,
/// one cyclotomic relation per dead edge, and the images of d₃ of all
/// triples after killing wedges of same-side pairs.
pub fn build_gamma0_presentation(
    g: &LabeledGraph,
    chi: &Character,
    first_side: Option<&[String]>,
) -> Result<ModulePresentation, KtError> {
    let split = gamma0_split(g, chi, first_side)?;
    let side = &split.side;
    let n = g.num_vertices();
    let vs = vars(g.vertices());
    let left: Vec<usize> = (0..n).filter(|&i| side[i] == 0).collect();
    let right: Vec<usize> = (0..n).filter(|&i| side[i] == 1).collect();
    let gen_index: BTreeMap<(usize, usize), usize> = left
        .iter()
        .flat_map(|&v| right.iter().map(move |&w| (v, w)))
        .enumerate()
        .map(|(k, p)| (p, k))
        .collect();
    let ngen = gen_index.len();
    let zero_row = || vec![LaurentPoly::zero(&vs, &()); ngen];

    let mut rows = Vec::new();
    for (i, j) in dead_edges(chi) {
        let (v, w) = if side[i] == 0 { (i, j) } else { (j, i) };
        let mut row = zero_row();
        row[gen_index[&(v, w)]] = cyclotomic_sum(&vs, v, w, g.label(i, j).unwrap() / 2);
        rows.push(row);
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let d3 = KoszulElement::basis(&vs, &[a, b, c]).differential();
                let mut row = zero_row();
                for (wedge, coeff) in d3.terms() {
                    let (p, q) = (wedge[0], wedge[1]);
                    if side[p] == side[q] {
                        continue;
                    }
                    // e_q ∧ e_p = −e_p ∧ e_q when p sits on side 1.
                    let (v, w, c) = if side[p] == 0 {
                        (p, q, coeff.clone())
                    } else {
                        (q, p, -coeff)
                    };
                    let k = gen_index[&(v, w)];
                    row[k] = &row[k] + &c;
                }
                rows.push(row);
            }
        }
    }
    let generators = left
        .iter()
        .flat_map(|&v| {
            right
                .iter()
                .map(move |&w| (g.name(v).to_string(), g.name(w).to_string()))
        })
        .collect();
    Ok(ModulePresentation {
        vars: vs,
        generators,
        rows,
    })
}

/// λ for every tree edge, μ for every vertex, and the specialized matrix.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub field: Arc<CyclotomicField>,
    /// (V name, W name, exponent k with λ = ζ_M^k).
    pub roots: Vec<(String, String, u64)>,
    /// μ(q) = coefficient · x^exponent, per vertex of the forest.
    pub images: BTreeMap<String, (Cyclotomic, i64)>,
    pub matrix: PolyMatrix<Cyclotomic>,
}

fn lcm_of(ms: impl Iterator<Item = u32>) -> u64 {
    ms.fold(1u64, |acc, m| acc.lcm(&u64::from(m)))
}

/// Maps each relation of `p` into ℚ(ζ_M)[x^{±1}]: basepoints go to x^{χ(b)},
/// and along a tree edge μ(neighbour) = λ · μ(current)⁻¹.
pub fn mu_specialize(
    p: &ModulePresentation,
    t: &BipartiteForest,
    chi: &BTreeMap<String, i64>,
) -> Result<Specialization, KtError> {
    let names = t.vertices();
    let mut values = Vec::with_capacity(names.len());
    for v in &names {
        let x = *chi.get(v).ok_or_else(|| KtError::MissingValue(v.clone()))?;
        if x == 0 {
            return Err(KtError::ZeroValue(v.clone()));
        }
        values.push(x);
    }
    let nv = t.v_side.len();
    for &(v, w, _) in &t.edges {
        if values[v] != -values[nv + w] {
            return Err(KtError::NotOpposite(
                names[v].clone(),
                values[v],
                names[nv + w].clone(),
                values[nv + w],
            ));
        }
    }
    let order = lcm_of(t.edges.iter().map(|e| e.2));
    let field = CyclotomicField::new(order);
    let lambda = |m: u32| {
        let k = order / u64::from(m);
        (k, Cyclotomic::zeta_pow(&field, k as i64))
    };
    let adj = t.adjacency();
    let mut images: Vec<Option<(Cyclotomic, i64)>> = vec![None; names.len()];
    for &b in &t.basepoints {
        images[b] = Some((Cyclotomic::one(&field), values[b]));
        let mut queue = VecDeque::from([b]);
        while let Some(x) = queue.pop_front() {
            let (cx, ex) = images[x].clone().unwrap();
            for &(y, m) in &adj[x] {
                let inv = cx.inv().ok_or_else(|| KtError::Inconsistent(names[x].clone()))?;
                let candidate = (lambda(m).1.mul(&inv), -ex);
                match &images[y] {
                    None => {
                        if candidate.1 != values[y] {
                            return Err(KtError::Inconsistent(names[y].clone()));
                        }
                        images[y] = Some(candidate);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != candidate => {
                        return Err(KtError::Inconsistent(names[y].clone()));
                    }
                    _ => {}
                }
            }
        }
    }
    let images: BTreeMap<String, (Cyclotomic, i64)> = names
        .iter()
        .cloned()
        .zip(images.into_iter().map(Option::unwrap))
        .collect();

    let x = vars(&["x"]);
    let subst: Vec<(Cyclotomic, Vec<i64>)> = p
        .vars
        .iter()
        .map(|v| {
            images
                .get(v)
                .map(|(c, e)| (c.clone(), vec![*e]))
                .ok_or_else(|| KtError::MissingValue(v.clone()))
        })
        .collect::<Result<_, _>>()?;
    let rows = p
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let q = e.map_coeffs(&(), |c: &BigInt| BigRational::from_integer(c.clone()));
                    q.substitute_monomials(&x, &field, &subst, |c| Cyclotomic::from_rational(&field, c.clone()))
                        .expect("images are units")
                })
                .collect()
        })
        .collect();
    let matrix = PolyMatrix::new(&x, &field, p.generators.len(), rows).expect("rectangular by construction");
    let roots = t
        .edges
        .iter()
        .map(|&(v, w, m)| (t.v_side[v].clone(), t.w_side[w].clone(), lambda(m).0))
        .collect();
    Ok(Specialization {
        field,
        roots,
        images,
        matrix,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    NotFinitelyGenerated,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "M")]
    pub order: u64,
    /// "(v,w)" ↦ "zeta^k".
    pub roots: BTreeMap<String, String>,
    /// Basepoint ↦ χ(basepoint).
    pub basepoints: BTreeMap<String, i64>,
    pub generators: usize,
    pub rank: usize,
    pub conclusion: Conclusion,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.conclusion {
            Conclusion::NotFinitelyGenerated => write!(
                f,
                "NOT f.g. over ZKer(chi): rank {} < {} generators",
                self.rank, self.generators
            ),
            Conclusion::Inconclusive => write!(f, "inconclusive: rank {} = {} generators", self.rank, self.generators),
        }
    }
}

pub fn certify_not_finitely_generated(
    t: &BipartiteForest,
    chi: &BTreeMap<String, i64>,
) -> Result<Certificate, KtError> {
    let special = mu_specialize(&build_kt(t), t, chi)?;
    let rank = special.matrix.rank();
    let generators = t.num_generators();
    Ok(Certificate {
        order: special.field.order(),
        roots: special
            .roots
            .iter()
            .map(|(v, w, k)| (format!("({v},{w})"), format!("zeta^{k}")))
            .collect(),
        basepoints: t.basepoints().into_iter().map(|b| (b.clone(), chi[&b])).collect(),
        generators,
        rank,
        conclusion: if rank < generators {
            Conclusion::NotFinitelyGenerated
        } else {
            Conclusion::Inconclusive
        },
    })
}

/// Primitive integer multiple of χ as a name ↦ value map.
pub fn integral_values(chi: &Character) -> Result<BTreeMap<String, i64>, KtError> {
    let carrier = chi.carrier();
    chi.integral()
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            let name = carrier.name(i).to_string();
            n.to_i64().map(|x| (name.clone(), x)).ok_or(KtError::Overflow(name))
        })
        .collect()
}

/// Builds the dead-edge forest of χ and certifies it.
pub fn certify_character(
    g: &LabeledGraph,
    chi: &Character,
    first_side: Option<&[String]>,
) -> Result<(Gamma0Split, Certificate), KtError> {
    let split = gamma0_split(g, chi, first_side)?;
    let values = integral_values(chi)?;
    let cert = certify_not_finitely_generated(&split.forest, &values)?;
    Ok((split, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::parse_character;
    use crate::graph::parse_graph;

    fn chi(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn presentations() {
        let t = BipartiteForest::new(&["v"], &["w"], &[("v", "w", 2)]).unwrap();
        let p = build_kt(&t);
        assert_eq!(p.generator_names("f"), vec!["f_{v,w}"]);
        assert_eq!(p.rows.len(), 1);
        assert_eq!(p.rows[0][0].to_string(), "v*w + 1");

        let t = BipartiteForest::new(&["a", "c"], &["b"], &[("a", "b", 2), ("c", "b", 2)]).unwrap();
        let p = build_kt(&t);
        assert_eq!(p.rows.len(), 3);
        assert_eq!(p.rows[2][0].to_string(), "c - 1");
        assert_eq!(p.rows[2][1].to_string(), "-a + 1");

        let t = BipartiteForest::new(&["v"], &["w"], &[]).unwrap();
        assert!(build_kt(&t).rows.is_empty());
    }

    #[test]
    fn forest_validation() {
        assert!(matches!(
            BipartiteForest::new(
                &["a", "c"],
                &["b", "d"],
                &[("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)]
            ),
            Err(KtError::Cycle(..))
        ));
        assert!(matches!(
            BipartiteForest::new(&["a", "c"], &["b"], &[("a", "c", 2)]),
            Err(KtError::NotBipartite(..))
        ));
        assert!(matches!(
            BipartiteForest::new(&["a"], &["b"], &[("a", "b", 1)]),
            Err(KtError::SmallLabel(..))
        ));
    }

    #[test]
    fn certificates() {
        let t = BipartiteForest::new(&["v"], &["w"], &[("v", "w", 2)]).unwrap();
        let c = certify_not_finitely_generated(&t, &chi(&[("v", 1), ("w", -1)])).unwrap();
        assert_eq!((c.rank, c.generators), (0, 1));
        assert_eq!(c.conclusion, Conclusion::NotFinitelyGenerated);

        let t = BipartiteForest::new(&["a", "c"], &["b"], &[("a", "b", 2), ("c", "b", 2)]).unwrap();
        let values = chi(&[("a", 1), ("b", -1), ("c", 1)]);
        let special = mu_specialize(&build_kt(&t), &t, &values).unwrap();
        assert_eq!(special.matrix.rows()[0][0].to_string(), "0");
        assert_eq!(special.matrix.rows()[2][0].to_string(), "x - 1");
        assert_eq!(special.matrix.rows()[2][1].to_string(), "-x + 1");
        let c = certify_not_finitely_generated(&t, &values).unwrap();
        assert_eq!((c.rank, c.generators), (1, 2));
        assert_eq!(c.to_string(), "NOT f.g. over ZKer(chi): rank 1 < 2 generators");

        let t = BipartiteForest::new(&["v"], &["w"], &[("v", "w", 3)]).unwrap();
        let c = certify_not_finitely_generated(&t, &chi(&[("v", 2), ("w", -2)])).unwrap();
        assert_eq!((c.order, c.rank), (3, 0));

        assert!(matches!(
            certify_not_finitely_generated(&t, &chi(&[("v", 2), ("w", 2)])),
            Err(KtError::NotOpposite(..))
        ));
    }

    #[test]
    fn gamma0_matches_kt() {
        let f5 = Arc::new(parse_graph("v a\nv b\nv c\ne a b 4\ne b c 4").unwrap());
        let x = parse_character(f5.clone(), "a=1,b=-1,c=1").unwrap();
        let g0 = build_gamma0_presentation(&f5, &x, None).unwrap();
        let t = BipartiteForest::new(&["a", "c"], &["b"], &[("a", "b", 2), ("c", "b", 2)]).unwrap();
        assert_eq!(g0.canonical(), build_kt(&t).canonical());

        let f4 = Arc::new(parse_graph("v a\nv b\nv c\nv d\ne a b 4\ne b c 4\ne c d 4\ne d a 4").unwrap());
        let x = parse_character(f4.clone(), "a=1,b=-1,c=1,d=-1").unwrap();
        assert!(matches!(
            build_gamma0_presentation(&f4, &x, None),
            Err(KtError::DeadCycle(..))
        ));
    }
}
