//! The complement of Σ¹ as a finite union of rational subspheres.
//!
//! A piece is the set of characters on which a list of linear forms vanishes.
//! Two families occur:
//!
//! * dominance pieces: χ vanishes on a closed neighbourhood N[x];
//! * disconnection pieces: χ vanishes on a set Y₁ and, for a split of the
//!   remaining vertices into two nonempty sides whose crossing edges all have
//!   even label > 2, χ(u) + χ(v) = 0 on every crossing edge uv.
//!
//! A disconnection piece is kept only when its generic point is nonzero on
//! every vertex outside Y₁; otherwise it is a degenerate copy of a piece with
//! a larger Y₁.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algebra::{format_rational, parse_rational};
use crate::character::Character;
use crate::graph::LabeledGraph;

/// Vertex count above which the enumeration is refused.
pub const MAX_VERTICES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyhedronError {
    #[error("graph has {0} vertices; the enumeration supports at most {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("character lives on a different graph")]
    CarrierMismatch,
    #[error("malformed polyhedron document: {0}")]
    Format(String),
}

/// A rational linear form on the vertex values, stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(pub Vec<BigRational>);

impl LinearForm {
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![BigRational::zero(); n];
        c[i] = BigRational::one();
        LinearForm(c)
    }

    pub fn edge_sum(n: usize, i: usize, j: usize) -> Self {
        let mut c = vec![BigRational::zero(); n];
        c[i] = BigRational::one();
        c[j] = BigRational::one();
        LinearForm(c)
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(values)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    /// Vanishing on the closed neighbourhood of `vertex`.
    Dominance { vertex: usize, zero_set: Vec<usize> },
    /// Vanishing on `zero_set` and cancelling across `edges`.
    Disconnection {
        zero_set: Vec<usize>,
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSphere {
    pub forms: Vec<LinearForm>,
    pub origin: Origin,
}

impl SubSphere {
    pub fn rank(&self) -> usize {
        row_echelon(&self.forms).len()
    }

    pub fn contains(&self, values: &[BigRational]) -> bool {
        self.forms.iter().all(|f| f.eval(values).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalPolyhedron {
    vertices: Vec<String>,
    pieces: Vec<SubSphere>,
}

/// Reduced row echelon form of the span of `forms` (zero rows dropped).
pub fn row_echelon(forms: &[LinearForm]) -> Vec<LinearForm> {
    let mut rows: Vec<Vec<BigRational>> = forms.iter().map(|f| f.0.clone()).collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.into_iter().map(LinearForm).collect()
}

fn in_span(echelon: &[LinearForm], form: &LinearForm) -> bool {
    let mut rows = echelon.to_vec();
    rows.push(form.clone());
    row_echelon(&rows).len() == echelon.len()
}

/// Solution set of `a` lies inside that of `b`: every form of `b` is in the
/// span of the forms of `a`.
pub fn subsphere_contained(a: &SubSphere, b: &SubSphere) -> bool {
    let ea = row_echelon(&a.forms);
    b.forms.iter().all(|f| in_span(&ea, f))
}

fn closed_neighbourhood(g: &LabeledGraph, x: usize) -> Vec<usize> {
    let mut n: Vec<usize> = g.adjacency()[x].clone();
    n.push(x);
    n.sort_unstable();
    n
}

pub fn dominance_pieces(g: &LabeledGraph) -> Vec<SubSphere> {
    let n = g.num_vertices();
    (0..n)
        .filter_map(|x| {
            let nb = closed_neighbourhood(g, x);
            (nb.len() < n).then(|| SubSphere {
                forms: nb.iter().map(|&y| LinearForm::unit(n, y)).collect(),
                origin: Origin::Dominance {
                    vertex: x,
                    zero_set: nb,
                },
            })
        })
        .collect()
}

fn removable(label: u32) -> bool {
    label > 2 && label.is_multiple_of(2)
}

/// Disconnection pieces for one zero set, deduplicated by crossing edges.
fn pieces_for_zero_set(g: &LabeledGraph, zero: u64) -> Vec<SubSphere> {
    let n = g.num_vertices();
    let rest: Vec<usize> = (0..n).filter(|&i| zero & (1 << i) == 0).collect();
    if rest.len() < 2 {
        return Vec::new();
    }
    let inner: Vec<((usize, usize), u32)> = g
        .edges()
        .filter(|&((i, j), _)| zero & (1 << i) == 0 && zero & (1 << j) == 0)
        .collect();
    let zero_set: Vec<usize> = (0..n).filter(|&i| zero & (1 << i) != 0).collect();
    let zero_forms: Vec<LinearForm> = zero_set.iter().map(|&y| LinearForm::unit(n, y)).collect();

    let mut cuts: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    // Sides are subsets of `rest` containing rest[0], excluding all of it.
    let k = rest.len();
    for mask in 0u64..(1 << (k - 1)) {
        let side = |v: usize| -> bool {
            let pos = rest.binary_search(&v).unwrap();
            pos == 0 || mask & (1 << (pos - 1)) != 0
        };
        if mask == (1 << (k - 1)) - 1 {
            continue;
        }
        let mut crossing = Vec::new();
        let mut ok = true;
        for &((i, j), label) in &inner {
            if side(i) != side(j) {
                if !removable(label) {
                    ok = false;
                    break;
                }
                crossing.push((i, j));
            }
        }
        if ok {
            cuts.insert(crossing);
        }
    }

    cuts.into_iter()
        .filter_map(|edges| {
            let mut forms = zero_forms.clone();
            forms.extend(edges.iter().map(|&(i, j)| LinearForm::edge_sum(n, i, j)));
            let echelon = row_echelon(&forms);
            let degenerate = rest.iter().any(|&y| in_span(&echelon, &LinearForm::unit(n, y)));
            (!degenerate).then(|| SubSphere {
                forms,
                origin: Origin::Disconnection {
                    zero_set: zero_set.clone(),
                    edges,
                },
            })
        })
        .collect()
}

fn check_size(g: &LabeledGraph) -> Result<(), PolyhedronError> {
    if g.num_vertices() > MAX_VERTICES {
        Err(PolyhedronError::TooLarge(g.num_vertices()))
    } else {
        Ok(())
    }
}

/// Zero sets ordered by size, then by bitmask.
fn zero_sets(n: usize) -> Vec<u64> {
    let mut all: Vec<u64> = (0..1u64 << n).collect();
    all.sort_by_key(|m| (m.count_ones(), *m));
    all
}

pub fn disconnection_pieces(g: &LabeledGraph) -> Result<Vec<SubSphere>, PolyhedronError> {
    check_size(g)?;
    let per_set: Vec<Vec<SubSphere>> = zero_sets(g.num_vertices())
        .into_par_iter()
        .map(|z| pieces_for_zero_set(g, z))
        .collect();
    Ok(prune(per_set.into_iter().flatten().collect()))
}

/// Every candidate piece, before containment pruning.
pub fn unpruned_pieces(g: &LabeledGraph) -> Result<Vec<SubSphere>, PolyhedronError> {
    check_size(g)?;
    let mut all = dominance_pieces(g);
    let per_set: Vec<Vec<SubSphere>> = zero_sets(g.num_vertices())
        .into_par_iter()
        .map(|z| pieces_for_zero_set(g, z))
        .collect();
    all.extend(per_set.into_iter().flatten());
    Ok(all)
}

/// Keeps, in order of decreasing dimension, each piece not inside an
/// already kept one. Ties keep the input order.
fn prune(pieces: Vec<SubSphere>) -> Vec<SubSphere> {
    let mut ranked: Vec<(usize, Vec<LinearForm>, SubSphere)> = pieces
        .into_par_iter()
        .map(|p| {
            let e = row_echelon(&p.forms);
            (e.len(), e, p)
        })
        .collect();
    ranked.sort_by_key(|(r, _, _)| *r);
    let mut kept: Vec<(Vec<LinearForm>, SubSphere)> = Vec::new();
    for (_, echelon, piece) in ranked {
        let covered = kept.iter().any(|(_, k)| k.forms.iter().all(|f| in_span(&echelon, f)));
        if !covered {
            kept.push((echelon, piece));
        }
    }
    kept.into_iter().map(|(_, p)| p).collect()
}

pub fn complement_polyhedron(g: &LabeledGraph) -> Result<SphericalPolyhedron, PolyhedronError> {
    Ok(SphericalPolyhedron {
        vertices: g.vertices().to_vec(),
        pieces: prune(unpruned_pieces(g)?),
    })
}

/// The union of every candidate piece, kept for cross-checking the pruning.
pub fn complement_polyhedron_unpruned(g: &LabeledGraph) -> Result<SphericalPolyhedron, PolyhedronError> {
    Ok(SphericalPolyhedron {
        vertices: g.vertices().to_vec(),
        pieces: unpruned_pieces(g)?,
    })
}

pub fn polyhedron_contains(p: &SphericalPolyhedron, chi: &Character) -> Result<bool, PolyhedronError> {
    if chi.carrier().vertices() != p.vertices.as_slice() {
        return Err(PolyhedronError::CarrierMismatch);
    }
    Ok(p.pieces.iter().any(|s| s.contains(chi.values())))
}

impl SphericalPolyhedron {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn pieces(&self) -> &[SubSphere] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    fn names(&self, idx: &[usize]) -> Vec<Value> {
        idx.iter().map(|&i| json!(self.vertices[i])).collect()
    }

    pub fn to_json(&self) -> Value {
        let pieces: Vec<Value> = self
            .pieces
            .iter()
            .map(|piece| {
                let forms: Vec<Value> = piece
                    .forms
                    .iter()
                    .map(|f| {
                        let entries: Map<String, Value> =
                            f.0.iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(i, c)| (self.vertices[i].clone(), json!(format_rational(c))))
                                .collect();
                        Value::Object(entries)
                    })
                    .collect();
                let origin = match &piece.origin {
                    Origin::Dominance { vertex, zero_set } => json!({
                        "kind": "dominance",
                        "vertex": self.vertices[*vertex],
                        "zero_set": self.names(zero_set),
                    }),
                    Origin::Disconnection { zero_set, edges } => json!({
                        "kind": "disconnection",
                        "zero_set": self.names(zero_set),
                        "edges": edges
                            .iter()
                            .map(|&(i, j)| json!([self.vertices[i], self.vertices[j]]))
                            .collect::<Vec<_>>(),
                    }),
                };
                json!({ "forms": forms, "origin": origin })
            })
            .collect();
        json!({ "pieces": pieces })
    }

    /// Reads the document written by `to_json`, resolving names against `g`.
    pub fn from_json(value: &Value, g: &LabeledGraph) -> Result<Self, PolyhedronError> {
        let bad = |m: &str| PolyhedronError::Format(m.to_string());
        let n = g.num_vertices();
        let index = |v: &Value| -> Result<usize, PolyhedronError> {
            let name = v.as_str().ok_or_else(|| bad("vertex names must be strings"))?;
            g.index_of(name)
                .ok_or_else(|| PolyhedronError::Format(format!("unknown vertex {name}")))
        };
        let list = |v: &Value, key: &str| -> Result<Vec<Value>, PolyhedronError> {
            v.get(key)
                .and_then(Value::as_array)
                .cloned()
                .ok_or_else(|| PolyhedronError::Format(format!("missing array `{key}`")))
        };
        let mut pieces = Vec::new();
        for piece in list(value, "pieces")? {
            let mut forms = Vec::new();
            for f in list(&piece, "forms")? {
                let obj = f.as_object().ok_or_else(|| bad("forms must be objects"))?;
                let mut coeffs = vec![BigRational::zero(); n];
                for (name, c) in obj {
                    let i = index(&json!(name))?;
                    let text = c.as_str().ok_or_else(|| bad("coefficients must be strings"))?;
                    coeffs[i] = parse_rational(text).ok_or_else(|| bad("invalid rational coefficient"))?;
                }
                forms.push(LinearForm(coeffs));
            }
            let origin = piece.get("origin").ok_or_else(|| bad("missing origin"))?;
            let zero_set = list(origin, "zero_set")?
                .iter()
                .map(index)
                .collect::<Result<Vec<_>, _>>()?;
            let origin = match origin.get("kind").and_then(Value::as_str) {
                Some("dominance") => Origin::Dominance {
                    vertex: index(origin.get("vertex").ok_or_else(|| bad("missing vertex"))?)?,
                    zero_set,
                },
                Some("disconnection") => {
                    let mut edges = Vec::new();
                    for e in list(origin, "edges")? {
                        let pair = e
                            .as_array()
                            .filter(|p| p.len() == 2)
                            .ok_or_else(|| bad("edges are pairs"))?;
                        edges.push((index(&pair[0])?, index(&pair[1])?));
                    }
                    Origin::Disconnection { zero_set, edges }
                }
                _ => return Err(bad("unknown origin kind")),
            };
            pieces.push(SubSphere { forms, origin });
        }
        Ok(SphericalPolyhedron {
            vertices: g.vertices().to_vec(),
            pieces,
        })
    }
}

impl fmt::Display for SphericalPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return writeln!(f, "empty complement: Sigma^1 is the whole character sphere");
        }
        for (k, piece) in self.pieces.iter().enumerate() {
            let forms: Vec<String> = piece
                .forms
                .iter()
                .map(|form| {
                    let terms: Vec<String> = form
                        .0
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| {
                            if c.is_one() {
                                format!("chi({})", self.vertices[i])
                            } else {
                                format!("{}*chi({})", format_rational(c), self.vertices[i])
                            }
                        })
                        .collect();
                    format!("{} = 0", terms.join(" + "))
                })
                .collect();
            let forms = if forms.is_empty() {
                "whole sphere".to_string()
            } else {
                forms.join(", ")
            };
            writeln!(f, "piece {}: {}", k + 1, forms)?;
        }
        Ok(())
    }
}

/// Forms keyed by vertex name, for comparisons in tests and reports.
pub fn named_forms(p: &SphericalPolyhedron, piece: &SubSphere) -> Vec<BTreeMap<String, BigRational>> {
    piece
        .forms
        .iter()
        .map(|f| {
            f.0.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (p.vertices[i].clone(), c.clone()))
                .collect()
        })
        .collect()
}
