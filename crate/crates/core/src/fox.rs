//! Free-group words, the integral group ring ℤF, Fox derivatives and
//! Jacobians of Artin presentations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{vars, LaurentPoly, Vars};
use crate::graph::{is_identifier, LabeledGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoxError {
    #[error("word syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("even-commutator relator needs an even label, got {0}")]
    OddCommutator(u32),
    #[error("relator label must be at least 2, got {0}")]
    LabelTooSmall(u32),
    #[error("generator {0} is not a vertex of the graph")]
    UnknownGenerator(String),
}

/// One letter x or x⁻¹.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

impl Letter {
    fn inverted(&self) -> Letter {
        Letter {
            generator: self.generator.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(name: &str) -> Self {
        FreeWord(vec![Letter {
            generator: name.to_string(),
            inverse: false,
        }])
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|last| last.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.0.iter().chain(&other.0).cloned())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(Letter::inverted).collect())
    }

    pub fn pow(&self, e: i64) -> FreeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// [a, b] = a⁻¹b⁻¹ab.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(|l| l.generator.as_str())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = &self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == *l {
                j += 1;
            }
            let e = (j - i) as i64 * if l.inverse { -1 } else { 1 };
            parts.push(if e == 1 {
                l.generator.clone()
            } else {
                format!("{}^{}", l.generator, e)
            });
            i = j;
        }
        f.write_str(&parts.join(" "))
    }
}

/// Parses words such as `a b^-1 a^2`, `(x y)^-2`, `[x, y]` or `1`.
pub fn parse_word(text: &str) -> Result<FreeWord, FoxError> {
    let mut p = WordParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(w)
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn error(&self, message: &str) -> FoxError {
        FoxError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace() || *c == b'*')
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<FreeWord, FoxError> {
        let mut w = FreeWord::identity();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<FreeWord, FoxError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                w
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                FreeWord::commutator(&a, &b)
            }
            Some(b'1') => {
                self.pos += 1;
                FreeWord::identity()
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                debug_assert!(is_identifier(name));
                FreeWord::generator(name)
            }
            _ => return Err(self.error("expected generator, `(`, `[` or `1`")),
        };
        if self.src.get(self.pos) != Some(&b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let e: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected integer exponent"))?;
        Ok(base.pow(e))
    }

    fn expect(&mut self, c: u8) -> Result<(), FoxError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }
}

/// A finite ℤ-combination of reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement(BTreeMap<FreeWord, BigInt>);

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement(BTreeMap::new())
    }

    pub fn one() -> Self {
        GroupRingElement::word(FreeWord::identity())
    }

    pub fn word(w: FreeWord) -> Self {
        GroupRingElement::term(w, BigInt::one())
    }

    pub fn term(w: FreeWord, c: BigInt) -> Self {
        let mut e = GroupRingElement::zero();
        e.add_term(w, &c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FreeWord, i64)>) -> Self {
        let mut e = GroupRingElement::zero();
        for (w, c) in terms {
            e.add_term(w, &BigInt::from(c));
        }
        e
    }

    fn add_term(&mut self, w: FreeWord, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(w) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> + '_ {
        self.0.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Left multiplication by a word.
    pub fn left_mul_word(&self, w: &FreeWord) -> Self {
        let mut out = GroupRingElement::zero();
        for (u, c) in &self.0 {
            out.add_term(w.mul(u), c);
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*({w})")?;
            }
        }
        Ok(())
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, other: &GroupRingElement) -> GroupRingElement {
        self + &(-other)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement(self.0.iter().map(|(w, c)| (w.clone(), -c)).collect())
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.0 {
            for (v, b) in &other.0 {
                out.add_term(u.mul(v), &(a * b));
            }
        }
        out
    }
}

/// ∂w/∂x, accumulated left to right: a letter x at prefix p contributes p,
/// a letter x⁻¹ contributes −p·x⁻¹.
pub fn fox_derivative(w: &FreeWord, x: &str) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix: Vec<Letter> = Vec::new();
    for l in w.letters() {
        if l.generator == x {
            if l.inverse {
                let mut p = prefix.clone();
                p.push(l.clone());
                out.add_term(FreeWord::from_letters(p), &-BigInt::one());
            } else {
                out.add_term(FreeWord::from_letters(prefix.clone()), &BigInt::one());
            }
        }
        prefix.push(l.clone());
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RelatorForm {
    /// (uvu…)ₙ (vuv…)ₙ⁻¹.
    Standard,
    /// [(uv)^m, u] for n = 2m.
    #[default]
    EvenCommutator,
}

fn alternating(u: &str, v: &str, n: u32) -> FreeWord {
    FreeWord::from_letters((0..n).map(|i| Letter {
        generator: if i % 2 == 0 { u } else { v }.to_string(),
        inverse: false,
    }))
}

pub fn artin_relator(u: &str, v: &str, n: u32, form: RelatorForm) -> Result<FreeWord, FoxError> {
    if n < 2 {
        return Err(FoxError::LabelTooSmall(n));
    }
    match form {
        RelatorForm::Standard => Ok(alternating(u, v, n).mul(&alternating(v, u, n).inverse())),
        RelatorForm::EvenCommutator => {
            if n % 2 == 1 {
                return Err(FoxError::OddCommutator(n));
            }
            let uv = alternating(u, v, 2);
            Ok(FreeWord::commutator(&uv.pow(i64::from(n / 2)), &FreeWord::generator(u)))
        }
    }
}

/// Generators and relators of the Artin group on `g`: one relator per edge,
/// in commutator form for even labels and standard form for odd ones.
pub fn artin_presentation(g: &LabeledGraph) -> (Vec<String>, Vec<FreeWord>) {
    let relators = g
        .named_edges()
        .map(|(a, b, n)| {
            let form = if n % 2 == 0 {
                RelatorForm::EvenCommutator
            } else {
                RelatorForm::Standard
            };
            artin_relator(a, b, n, form).expect("graph labels are at least 2")
        })
        .collect();
    (g.vertices().to_vec(), relators)
}

/// Vertices grouped by odd-labeled paths; each class is one variable of the
/// abelianization, named after its first vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    vertices: Vec<String>,
    class_of: Vec<usize>,
    vars: Vars,
}

impl AbelianizationMap {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn num_classes(&self) -> usize {
        self.vars.len()
    }

    /// Classes as lists of vertex names, in order of first vertex.
    pub fn classes(&self) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new(); self.vars.len()];
        for (v, &c) in self.vertices.iter().zip(&self.class_of) {
            out[c].push(v.clone());
        }
        out
    }

    pub fn class_of(&self, generator: &str) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v == generator)
            .map(|i| self.class_of[i])
    }

    /// The image of a word in the free abelian group, as an exponent vector.
    pub fn exponents(&self, w: &FreeWord) -> Result<Vec<i64>, FoxError> {
        let mut e = vec![0i64; self.vars.len()];
        for l in w.letters() {
            let c = self
                .class_of(&l.generator)
                .ok_or_else(|| FoxError::UnknownGenerator(l.generator.clone()))?;
            e[c] += if l.inverse { -1 } else { 1 };
        }
        Ok(e)
    }
}

pub fn abelianization_map(g: &LabeledGraph) -> AbelianizationMap {
    let n = g.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for ((i, j), label) in g.edges() {
        if label % 2 == 1 {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut names = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for i in 0..n {
        let root = find(&mut parent, i);
        let next = class_id.len();
        let c = *class_id.entry(root).or_insert_with(|| {
            names.push(g.name(i).to_string());
            next
        });
        class_of.push(c);
    }
    AbelianizationMap {
        vertices: g.vertices().to_vec(),
        class_of,
        vars: vars(&names),
    }
}

pub fn abelianize(e: &GroupRingElement, m: &AbelianizationMap) -> Result<LaurentPoly<BigInt>, FoxError> {
    let terms = e
        .terms()
        .map(|(w, c)| Ok((m.exponents(w)?, c.clone())))
        .collect::<Result<Vec<_>, FoxError>>()?;
    Ok(LaurentPoly::from_terms(&m.vars, &(), terms))
}

/// Abelianized Fox Jacobian: rows are relators, columns generators.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianMatrix {
    pub generators: Vec<String>,
    pub rows: Vec<Vec<LaurentPoly<BigInt>>>,
    pub vars: Vars,
}

pub fn jacobian(
    generators: &[String],
    relators: &[FreeWord],
    m: &AbelianizationMap,
) -> Result<JacobianMatrix, FoxError> {
    let rows = relators
        .par_iter()
        .map(|r| {
            generators
                .iter()
                .map(|x| abelianize(&fox_derivative(r, x), m))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(JacobianMatrix {
        generators: generators.to_vec(),
        rows,
        vars: m.vars.clone(),
    })
}

impl JacobianMatrix {
    /// Σₓ entry(r, x)·(x̄ − 1) for each row r.
    pub fn boundary_images(&self, m: &AbelianizationMap) -> Vec<LaurentPoly<BigInt>> {
        let one = LaurentPoly::one(&self.vars, &());
        let xs: Vec<LaurentPoly<BigInt>> = self
            .generators
            .iter()
            .map(|x| {
                let c = m.class_of(x).expect("generator in the map");
                &LaurentPoly::var(&self.vars, &(), c) - &one
            })
            .collect();
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&xs)
                    .fold(LaurentPoly::zero(&self.vars, &()), |acc, (e, x)| acc + e * x)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn w(s: &str) -> FreeWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn word_arithmetic() {
        assert!(w("x x^-1").is_empty());
        assert_eq!(w("x y").inverse(), w("y^-1 x^-1"));
        assert_eq!(w("[x, y]"), w("x^-1 y^-1 x y"));
        assert_eq!(w("[x,y]").len(), 4);
        assert_eq!(w("a b^-1 a a").to_string(), "a b^-1 a^2");
        assert_eq!(w("(x y)^-2").to_string(), "y^-1 x^-1 y^-1 x^-1");
        assert_eq!(FreeWord::identity().to_string(), "1");
        assert!(parse_word("x^").is_err());
        assert!(parse_word("[x y]").is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(fox_derivative(&w("x"), "x"), GroupRingElement::one());
        assert_eq!(
            fox_derivative(&w("x^-1"), "x"),
            GroupRingElement::from_terms([(w("x^-1"), -1)])
        );
        let d = fox_derivative(&w("[x,y]"), "x");
        let expected = GroupRingElement::from_terms([(w("x^-1 y^-1"), 1), (w("x^-1"), -1)]);
        assert_eq!(d, expected);
        assert_eq!(d.num_terms(), 2);
        assert_eq!(d.to_string(), "-x^-1 + x^-1 y^-1");
    }

    #[test]
    fn relators() {
        assert_eq!(
            artin_relator("u", "v", 2, RelatorForm::Standard).unwrap(),
            w("u v u^-1 v^-1")
        );
        assert_eq!(
            artin_relator("u", "v", 4, RelatorForm::EvenCommutator).unwrap(),
            w("v^-1 u^-1 v^-1 u^-1 v u v u")
        );
        assert_eq!(
            artin_relator("u", "v", 3, RelatorForm::Standard).unwrap(),
            w("u v u v^-1 u^-1 v^-1")
        );
        assert_eq!(
            artin_relator("u", "v", 3, RelatorForm::EvenCommutator),
            Err(FoxError::OddCommutator(3))
        );
    }

    #[test]
    fn abelianization() {
        let f2 = parse_graph("v u\nv v\nv w\ne u v 4\ne v w 6\ne w u 3").unwrap();
        let m = abelianization_map(&f2);
        assert_eq!(
            m.classes(),
            vec![vec!["u".to_string(), "w".to_string()], vec!["v".to_string()]]
        );
        let p = abelianize(&GroupRingElement::word(w("u w")), &m).unwrap();
        assert_eq!(p.to_string(), "u^2");
        let comm = abelianize(&GroupRingElement::word(w("[u,v]")), &m).unwrap();
        assert!(comm.is_one());
        assert!(abelianize(&GroupRingElement::word(w("z")), &m).is_err());
    }

    #[test]
    fn commutator_jacobian_row() {
        let g = parse_graph("v x\nv y\ne x y 2").unwrap();
        let m = abelianization_map(&g);
        let j = jacobian(&["x".into(), "y".into()], &[w("[x,y]")], &m).unwrap();
        assert_eq!(j.rows[0][0].to_string(), "-x^-1 + x^-1*y^-1");
        assert_eq!(j.rows[0][1].to_string(), "y^-1 - x^-1*y^-1");
        assert!(j.boundary_images(&m).iter().all(LaurentPoly::is_zero));
        let empty = jacobian(&["x".into()], &[], &m).unwrap();
        assert!(empty.rows.is_empty());
    }
}
