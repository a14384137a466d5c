//! Rational characters and the subgraphs they cut out.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{format_rational, parse_rational};
use crate::graph::{full_subgraph, LabeledGraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} assigned twice")]
    Repeated(String),
    #[error("malformed character entry `{0}` (expected name=rational)")]
    Syntax(String),
    #[error("character vanishes on every vertex")]
    AllZero,
    #[error("edge {a}-{b} has odd label {label} but values {va} and {vb} differ")]
    OddEdgeMismatch {
        a: String,
        b: String,
        label: u32,
        va: String,
        vb: String,
    },
    #[error("expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },
}

/// A nonzero character of the Artin group on `carrier`, given by its values
/// on the vertices (in carrier order).
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    carrier: Arc<LabeledGraph>,
    values: Vec<BigRational>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({self})")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .carrier
            .vertices()
            .iter()
            .zip(&self.values)
            .map(|(v, q)| format!("{v}={}", format_rational(q)))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl Character {
    pub fn new(carrier: Arc<LabeledGraph>, values: Vec<BigRational>) -> Result<Self, CharacterError> {
        if values.len() != carrier.num_vertices() {
            return Err(CharacterError::Arity {
                expected: carrier.num_vertices(),
                found: values.len(),
            });
        }
        if values.iter().all(Zero::is_zero) {
            return Err(CharacterError::AllZero);
        }
        for ((i, j), label) in carrier.edges() {
            if label % 2 == 1 && values[i] != values[j] {
                return Err(CharacterError::OddEdgeMismatch {
                    a: carrier.name(i).to_string(),
                    b: carrier.name(j).to_string(),
                    label,
                    va: format_rational(&values[i]),
                    vb: format_rational(&values[j]),
                });
            }
        }
        Ok(Character { carrier, values })
    }

    pub fn from_integers(carrier: Arc<LabeledGraph>, values: &[i64]) -> Result<Self, CharacterError> {
        let values = values.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        Character::new(carrier, values)
    }

    /// Named assignments; unnamed vertices get 0.
    pub fn from_pairs<S: AsRef<str>>(
        carrier: Arc<LabeledGraph>,
        pairs: &[(S, BigRational)],
    ) -> Result<Self, CharacterError> {
        let mut values = vec![BigRational::zero(); carrier.num_vertices()];
        let mut seen = vec![false; carrier.num_vertices()];
        for (name, q) in pairs {
            let name = name.as_ref();
            let i = carrier
                .index_of(name)
                .ok_or_else(|| CharacterError::UnknownVertex(name.to_string()))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(CharacterError::Repeated(name.to_string()));
            }
            values[i] = q.clone();
        }
        Character::new(carrier, values)
    }

    pub fn carrier(&self) -> &Arc<LabeledGraph> {
        &self.carrier
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &BigRational {
        &self.values[i]
    }

    pub fn support(&self) -> VertexSet {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|q| !q.is_zero())
    }

    pub fn negated(&self) -> Character {
        self.scaled(&-BigRational::one())
    }

    /// Multiplies every value by a nonzero rational.
    pub fn scaled(&self, r: &BigRational) -> Character {
        assert!(!r.is_zero(), "scaling a character by zero");
        Character {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(|q| q * r).collect(),
        }
    }

    /// Positive multiple whose first nonzero value is ±1.
    pub fn canonical(&self) -> Character {
        let first = self.values.iter().find(|q| !q.is_zero()).unwrap();
        self.scaled(&first.abs().recip())
    }

    /// Positive multiple with coprime integer values.
    pub fn integral(&self) -> Vec<BigInt> {
        let lcm = self.values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = self.values.iter().map(|q| (q * &lcm).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        ints.into_iter().map(|n| n / &gcd).collect()
    }
}

/// Parses `name=p/q,name=p,...`; whitespace around entries is ignored.
pub fn parse_character(carrier: Arc<LabeledGraph>, text: &str) -> Result<Character, CharacterError> {
    let mut pairs = Vec::new();
    for entry in text.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| CharacterError::Syntax(entry.to_string()))?;
        let q = parse_rational(value).ok_or_else(|| CharacterError::Syntax(entry.to_string()))?;
        pairs.push((name.trim().to_string(), q));
    }
    Character::from_pairs(carrier, &pairs)
}

/// Full subgraph on the support of χ.
pub fn lf_subgraph(chi: &Character) -> LabeledGraph {
    full_subgraph(&chi.carrier, &chi.support()).expect("support lies in the carrier")
}

/// Edges with even label > 2 whose endpoint values cancel, as carrier index pairs.
pub fn dead_edges(chi: &Character) -> Vec<(usize, usize)> {
    chi.carrier
        .edges()
        .filter(|&((i, j), label)| is_dead(label, &chi.values[i], &chi.values[j]))
        .map(|(e, _)| e)
        .collect()
}

pub fn is_dead(label: u32, a: &BigRational, b: &BigRational) -> bool {
    label > 2 && label.is_multiple_of(2) && (a + b).is_zero()
}

/// L_F(χ) without its dead edges. Vertex set equals that of `lf_subgraph`.
pub fn living_subgraph(chi: &Character) -> LabeledGraph {
    let lf = lf_subgraph(chi);
    lf.filter_edges(|(i, j), label| {
        let vi = &chi.values[chi.carrier.index_of(lf.name(i)).unwrap()];
        let vj = &chi.values[chi.carrier.index_of(lf.name(j)).unwrap()];
        !is_dead(label, vi, vj)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn g(text: &str) -> Arc<LabeledGraph> {
        Arc::new(parse_graph(text).unwrap())
    }

    fn f1() -> Arc<LabeledGraph> {
        g("v v\nv s\nv u\nv w\ne v s 2\ne u w 2\ne u v 4\ne v w 4\ne w s 4\ne s u 6")
    }

    #[test]
    fn parsing() {
        let f3 = g("v a\nv b\ne a b 4");
        let chi = parse_character(f3.clone(), "a=1,b=-1").unwrap();
        assert_eq!(chi.to_string(), "a=1,b=-1");
        assert_eq!(parse_character(f3.clone(), "a=1/2").unwrap().to_string(), "a=1/2,b=0");
        assert_eq!(
            parse_character(f3.clone(), "c=1"),
            Err(CharacterError::UnknownVertex("c".into()))
        );
        assert_eq!(parse_character(f3.clone(), "a=0"), Err(CharacterError::AllZero));
        assert!(matches!(
            parse_character(f3.clone(), "a=x"),
            Err(CharacterError::Syntax(_))
        ));
        assert!(matches!(
            parse_character(f3, "a=1,a=2"),
            Err(CharacterError::Repeated(_))
        ));
        let f2 = g("v u\nv v\nv w\ne u v 4\ne v w 6\ne w u 3");
        assert!(matches!(
            parse_character(f2.clone(), "u=1,v=2"),
            Err(CharacterError::OddEdgeMismatch { .. })
        ));
        assert!(parse_character(f2, "u=1,w=1,v=-1").is_ok());
    }

    #[test]
    fn derived_subgraphs() {
        let f1 = f1();
        let chi = parse_character(f1.clone(), "v=1,s=1,u=-1,w=-1").unwrap();
        assert_eq!(lf_subgraph(&chi), *f1);
        let dead: Vec<(&str, &str)> = dead_edges(&chi)
            .into_iter()
            .map(|(i, j)| (f1.name(i), f1.name(j)))
            .collect();
        assert_eq!(dead, vec![("v", "u"), ("v", "w"), ("s", "u"), ("s", "w")]);
        let l = living_subgraph(&chi);
        assert_eq!(l.named_edges().collect::<Vec<_>>(), vec![("v", "s", 2), ("u", "w", 2)]);

        let f5 = g("v a\nv b\nv c\ne a b 4\ne b c 4");
        let chi = Character::from_integers(f5, &[1, 0, 1]).unwrap();
        let lf = lf_subgraph(&chi);
        assert_eq!(lf.vertices(), ["a", "c"]);
        assert_eq!(lf.num_edges(), 0);
    }

    #[test]
    fn scaling_and_representatives() {
        let f3 = g("v a\nv b\ne a b 4");
        let chi = parse_character(f3, "a=-3/2,b=9/4").unwrap();
        assert_eq!(chi.canonical().to_string(), "a=-1,b=3/2");
        assert_eq!(chi.integral(), vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(dead_edges(&chi), dead_edges(&chi.negated()));
    }
}
