//! Buchberger's algorithm over a field, and unit-ideal tests in Laurent rings.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::coeff::{Field, Fp};
use super::laurent::{LaurentPoly, Vars};

/// Name of the auxiliary variable used to saturate by the variable product.
pub const SATURATION_VAR: &str = "_sat";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GRevLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)),
            MonomialOrder::GRevLex => degree(a).cmp(&degree(b)).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GRevLex => "grevlex",
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn degree(m: &[u32]) -> u64 {
    m.iter().map(|&e| e as u64).sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Polynomial with terms sorted from largest to smallest in a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C: Field> {
    terms: Vec<(Vec<u32>, C)>,
}

impl<C: Field> Poly<C> {
    /// Converts a Laurent polynomial with non-negative exponents.
    pub fn from_laurent(p: &LaurentPoly<C>, order: MonomialOrder) -> Option<Self> {
        let mut terms = Vec::with_capacity(p.num_terms());
        for (e, c) in p.terms() {
            let e: Option<Vec<u32>> = e.iter().map(|&k| u32::try_from(k).ok()).collect();
            terms.push((e?, c.clone()));
        }
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Some(Poly { terms })
    }

    pub fn to_laurent(&self, vars: &Vars, ctx: &C::Ctx) -> LaurentPoly<C> {
        LaurentPoly::from_terms(
            vars,
            ctx,
            self.terms
                .iter()
                .map(|(e, c)| (e.iter().map(|&k| k as i64).collect(), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&[u32]> {
        self.terms.first().map(|(e, _)| e.as_slice())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&k| k == 0)
    }

    fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().and_then(|(_, c)| c.inv()) {
            for (_, c) in self.terms.iter_mut() {
                *c = c.mul(&inv);
            }
        }
        self
    }

    /// self − c·x^m·other, merging in the given order.
    fn sub_scaled(&self, c: &C, m: &[u32], other: &Poly<C>, order: MonomialOrder) -> Poly<C> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| -> (Vec<u32>, C) {
            let (e, x) = &other.terms[k];
            (e.iter().zip(m).map(|(a, b)| a + b).collect(), x.mul(c))
        };
        let mut pending = if j < other.terms.len() { Some(shifted(j)) } else { None };
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some((ea, ca)), Some((eb, cb))) => match order.compare(ea, eb) {
                    Ordering::Greater => {
                        out.push((ea.clone(), ca.clone()));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((eb.clone(), cb.neg()));
                        j += 1;
                        pending = (j < other.terms.len()).then(|| shifted(j));
                    }
                    Ordering::Equal => {
                        let d = ca.sub(cb);
                        if !d.is_zero() {
                            out.push((ea.clone(), d));
                        }
                        i += 1;
                        j += 1;
                        pending = (j < other.terms.len()).then(|| shifted(j));
                    }
                },
                (Some((ea, ca)), None) => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                (None, Some((eb, cb))) => {
                    out.push((eb.clone(), cb.neg()));
                    j += 1;
                    pending = (j < other.terms.len()).then(|| shifted(j));
                }
                (None, None) => unreachable!(),
            }
        }
        Poly { terms: out }
    }
}

/// Full normal form of `f` with respect to `basis` (all terms reduced).
pub fn reduce<C: Field>(f: &Poly<C>, basis: &[Poly<C>], order: MonomialOrder) -> Poly<C> {
    let mut rem: Vec<(Vec<u32>, C)> = Vec::new();
    let mut p = f.clone();
    while let Some((lm, lc)) = p.terms.first().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gm| divides(gm, &lm)));
        match divisor {
            Some(g) => {
                let (gm, gc) = &g.terms[0];
                let c = lc.div(gc).expect("leading coefficient is nonzero");
                let m = quotient(&lm, gm);
                p = p.sub_scaled(&c, &m, g, order);
            }
            None => {
                rem.push(p.terms.remove(0));
            }
        }
    }
    Poly { terms: rem }
}

/// The S-polynomial of `f` and `g`.
pub fn s_polynomial<C: Field>(f: &Poly<C>, g: &Poly<C>, order: MonomialOrder) -> Poly<C> {
    let (fm, fc) = &f.terms[0];
    let (gm, gc) = &g.terms[0];
    let l = lcm(fm, gm);
    let fi = fc.inv().expect("nonzero");
    let scaled_f = Poly {
        terms: f
            .terms
            .iter()
            .map(|(e, c)| {
                let e: Vec<u32> = e.iter().zip(&quotient(&l, fm)).map(|(a, b)| a + b).collect();
                (e, c.mul(&fi))
            })
            .collect(),
    };
    let gi = gc.inv().expect("nonzero");
    scaled_f.sub_scaled(&gi, &quotient(&l, gm), g, order)
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
///
/// Pairs are processed smallest-lcm first; pairs with coprime leading
/// monomials and pairs caught by the chain criterion are skipped.
pub fn buchberger<C: Field>(gens: &[Poly<C>], order: MonomialOrder) -> Vec<Poly<C>> {
    let mut basis: Vec<Poly<C>> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis, order);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.iter().any(|g| g.is_constant()) {
        return vec![basis.into_iter().find(|g| g.is_constant()).unwrap()];
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    loop {
        if pairs.is_empty() {
            break;
        }
        // Normal selection strategy.
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lcm(
                    basis[a.0].leading_monomial().unwrap(),
                    basis[a.1].leading_monomial().unwrap(),
                );
                let lb = lcm(
                    basis[b.0].leading_monomial().unwrap(),
                    basis[b.1].leading_monomial().unwrap(),
                );
                order.compare(&la, &lb)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        done.insert((i, j));
        let mi = basis[i].leading_monomial().unwrap().to_vec();
        let mj = basis[j].leading_monomial().unwrap().to_vec();
        let l = lcm(&mi, &mj);
        if mi.iter().zip(&mj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].leading_monomial().unwrap(), &l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return vec![r];
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.push((k, n));
        }
    }
    reduced_basis(basis, order)
}

fn reduced_basis<C: Field>(basis: Vec<Poly<C>>, order: MonomialOrder) -> Vec<Poly<C>> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<Poly<C>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let gm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != i && divides(hm, gm) && (hm != gm || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly<C>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly<C>> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let head = Poly {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = Poly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let mut g = head;
        g.terms.extend(reduce(&tail, &others, order).terms);
        reduced.push(g.monic());
    }
    reduced.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}

/// Outcome of a Laurent unit-ideal computation.
#[derive(Clone, Debug)]
pub struct UnitIdealResult<C: Field> {
    pub unit: bool,
    /// Variables of the saturated system (input variables plus the auxiliary one).
    pub vars: Vars,
    pub basis: Vec<LaurentPoly<C>>,
}

/// Decides whether `gens` generate the unit ideal of the Laurent ring
/// F[x₁^{±1}, …, xₙ^{±1}].
///
/// Each generator is moved into the polynomial ring by a monomial unit, the
/// relation 1 − T·x₁⋯xₙ is adjoined, and the ideal is unit exactly when the
/// reduced Gröbner basis of the extended system is {1}.
pub fn is_unit_ideal_laurent<C: Field>(
    gens: &[LaurentPoly<C>],
    ctx: &C::Ctx,
    vars: &Vars,
    order: MonomialOrder,
) -> UnitIdealResult<C> {
    let mut ext_names = vars.to_vec();
    ext_names.push(SATURATION_VAR.to_string());
    let ext: Vars = Arc::new(ext_names);
    let n = vars.len();
    let mut polys = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        let normalized = g.normalize_monomial_content();
        let lifted = LaurentPoly::from_terms(
            &ext,
            ctx,
            normalized.terms().map(|(e, c)| {
                let mut e = e.clone();
                e.push(0);
                (e, c.clone())
            }),
        );
        polys.push(Poly::from_laurent(&lifted, order).expect("non-negative after normalization"));
    }
    let sat = vec![1i64; n + 1];
    let relation = LaurentPoly::from_terms(&ext, ctx, [(vec![0; n + 1], C::one(ctx)), (sat, C::one(ctx).neg())]);
    polys.push(Poly::from_laurent(&relation, order).unwrap());
    let gb = buchberger(&polys, order);
    let unit = gb.len() == 1 && gb[0].is_constant();
    UnitIdealResult {
        unit,
        basis: gb.iter().map(|g| g.to_laurent(&ext, ctx)).collect(),
        vars: ext,
    }
}

/// The primes used for the modular re-runs of a rational unit-ideal test.
pub const CHECK_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

/// Unit-ideal decision over ℚ together with re-runs over small prime fields.
#[derive(Clone, Debug)]
pub struct UnitIdealEvidence {
    pub rational: UnitIdealResult<BigRational>,
    /// `None` when some coefficient's denominator vanishes modulo p.
    pub modular: Vec<(u64, Option<bool>)>,
}

pub fn unit_ideal_evidence(gens: &[LaurentPoly<BigRational>], vars: &Vars, order: MonomialOrder) -> UnitIdealEvidence {
    let rational = is_unit_ideal_laurent(gens, &(), vars, order);
    let modular = CHECK_PRIMES
        .iter()
        .map(|&p| {
            let reduced: Option<Vec<LaurentPoly<Fp>>> = gens
                .iter()
                .map(|g| {
                    let reducible = g.terms().all(|(_, c)| Fp::from_rational(c, p).is_some());
                    reducible.then(|| g.map_coeffs(&p, |c| Fp::from_rational(c, p).unwrap()))
                })
                .collect();
            (p, reduced.map(|gs| is_unit_ideal_laurent(&gs, &p, vars, order).unit))
        })
        .collect();
    UnitIdealEvidence { rational, modular }
}
