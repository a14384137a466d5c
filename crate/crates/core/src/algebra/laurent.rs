//! Sparse multivariate Laurent polynomials over an arbitrary coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::coeff::{Field, Ring};
use super::AlgebraError;

/// Shared, ordered variable list.
pub type Vars = Arc<Vec<String>>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// A Laurent polynomial: a finite map from exponent vectors in ℤⁿ to nonzero
/// coefficients. Terms are kept in lexicographic order of exponent vectors.
#[derive(Clone)]
pub struct LaurentPoly<C: Ring> {
    vars: Vars,
    ctx: C::Ctx,
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn zero(vars: &Vars, ctx: &C::Ctx) -> Self {
        LaurentPoly {
            vars: Arc::clone(vars),
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        let ctx = c.context();
        let exps = vec![0; vars.len()];
        Self::monomial(vars, &ctx, exps, c)
    }

    pub fn one(vars: &Vars, ctx: &C::Ctx) -> Self {
        Self::constant(vars, C::one(ctx))
    }

    pub fn monomial(vars: &Vars, ctx: &C::Ctx, exps: Vec<i64>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars, ctx);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable with index `i`, raised to the power `e`.
    pub fn var_pow(vars: &Vars, ctx: &C::Ctx, i: usize, e: i64) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = e;
        Self::monomial(vars, ctx, exps, C::one(ctx))
    }

    pub fn var(vars: &Vars, ctx: &C::Ctx, i: usize) -> Self {
        Self::var_pow(vars, ctx, i, 1)
    }

    /// Builds from (exponents, coefficient) pairs, merging repeats.
    pub fn from_terms<I>(vars: &Vars, ctx: &C::Ctx, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
    {
        let mut p = Self::zero(vars, ctx);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &C)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i64]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(|| C::zero(&self.ctx))
    }

    /// `Some((exponents, coefficient))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        match self.as_monomial() {
            Some((e, c)) => e.iter().all(|&x| x == 0) && c.is_one(),
            None => false,
        }
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &C)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing_term(&self) -> Option<(&Vec<i64>, &C)> {
        self.terms.iter().next()
    }

    fn add_term(&mut self, exps: Vec<i64>, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.vars == other.vars && self.ctx == other.ctx
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            });
        }
        if self.ctx != other.ctx {
            return Err(AlgebraError::DomainMismatch);
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Self) {
        if let Err(e) = self.ensure_compatible(other) {
            panic!("{e}");
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero(&self.vars, &self.ctx);
        for (e, x) in &self.terms {
            let y = x.mul(c);
            if !y.is_zero() {
                p.terms.insert(e.clone(), y);
            }
        }
        p
    }

    /// Multiplies by the unit x^shift.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let mut p = Self::zero(&self.vars, &self.ctx);
        for (e, x) in &self.terms {
            let moved = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            p.terms.insert(moved, x.clone());
        }
        p
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![0; self.vars.len()];
        let mut first = true;
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(e) {
                if first || x < *m {
                    *m = x;
                }
            }
            first = false;
        }
        mins
    }

    /// Componentwise minimum and maximum exponents over all terms.
    pub fn exponent_bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.vars.len();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for e in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        if self.terms.is_empty() {
            lo = vec![0; n];
            hi = vec![0; n];
        }
        (lo, hi)
    }

    /// Multiplies by the minimal monomial that clears all negative exponents
    /// and returns the result together with the applied shift.
    pub fn clear_denominators(&self) -> (Self, Vec<i64>) {
        let shift: Vec<i64> = self.min_exponents().iter().map(|&m| (-m).max(0)).collect();
        (self.shift(&shift), shift)
    }

    /// Divides out the largest monomial factor, so that every variable has
    /// minimal exponent zero. Generates the same ideal in the Laurent ring.
    pub fn normalize_monomial_content(&self) -> Self {
        let shift: Vec<i64> = self.min_exponents().iter().map(|&m| -m).collect();
        self.shift(&shift)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars, &self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Changes the coefficient ring, dropping terms that map to zero.
    pub fn map_coeffs<D: Ring>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut p = LaurentPoly::zero(&self.vars, ctx);
        for (e, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                p.terms.insert(e.clone(), d);
            }
        }
        p
    }

    /// Re-expresses the polynomial over a variable list that contains all of
    /// this polynomial's variables, possibly in a different order.
    pub fn reorder_vars(&self, target: &Vars) -> Result<Self, AlgebraError> {
        let mut positions = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            let pos = target
                .iter()
                .position(|t| t == v)
                .ok_or_else(|| AlgebraError::UnknownVariable(v.clone()))?;
            positions.push(pos);
        }
        let mut p = Self::zero(target, &self.ctx);
        for (e, c) in &self.terms {
            let mut moved = vec![0; target.len()];
            for (&pos, &x) in positions.iter().zip(e) {
                moved[pos] = x;
            }
            p.terms.insert(moved, c.clone());
        }
        Ok(p)
    }

    /// The polynomial with coefficients negated when its leading coefficient
    /// prints as negative, together with whether a flip happened.
    pub fn sign_normalized(&self) -> (Self, bool) {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => (-self, true),
            _ => (self.clone(), false),
        }
    }
}

impl<C: Field> LaurentPoly<C> {
    /// Substitutes for every variable a coefficient times a monomial in the
    /// target variables. `embed` carries the coefficients across.
    pub fn substitute_monomials<D: Field>(
        &self,
        target: &Vars,
        ctx: &D::Ctx,
        images: &[(D, Vec<i64>)],
        embed: impl Fn(&C) -> D,
    ) -> Result<LaurentPoly<D>, AlgebraError> {
        if images.len() != self.vars.len() {
            return Err(AlgebraError::SubstitutionArity {
                expected: self.vars.len(),
                found: images.len(),
            });
        }
        let mut out = LaurentPoly::zero(target, ctx);
        for (e, c) in &self.terms {
            let mut coeff = embed(c);
            let mut exps = vec![0i64; target.len()];
            for ((img_c, img_e), &k) in images.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                let base = if k < 0 {
                    img_c.inv().ok_or(AlgebraError::NotInvertible)?
                } else {
                    img_c.clone()
                };
                for _ in 0..k.unsigned_abs() {
                    coeff = coeff.mul(&base);
                }
                for (x, &y) in exps.iter_mut().zip(img_e) {
                    *x += k * y;
                }
            }
            out.add_term(exps, &coeff);
        }
        Ok(out)
    }

    /// Evaluates at a point of (F^×)ⁿ.
    pub fn evaluate(&self, point: &[C]) -> Result<C, AlgebraError> {
        let empty = Arc::new(Vec::new());
        let images: Vec<(C, Vec<i64>)> = point.iter().map(|c| (c.clone(), Vec::new())).collect();
        let p = self.substitute_monomials(&empty, &self.ctx, &images, |c| c.clone())?;
        Ok(p.coefficient(&[]))
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` when
    /// the divisor does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.assert_compatible(divisor);
        let (lead_e, lead_c) = divisor.leading_term()?;
        let lead_inv = lead_c.inv()?;
        if self.is_zero() {
            return Some(Self::zero(&self.vars, &self.ctx));
        }
        // Degrees in each variable add under multiplication, so every
        // quotient exponent lies in a finite box; leaving it means no division.
        let (a_min, a_max) = self.exponent_bounds();
        let (b_min, b_max) = divisor.exponent_bounds();
        let lo: Vec<i64> = a_min.iter().zip(&b_min).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = a_max.iter().zip(&b_max).map(|(a, b)| a - b).collect();
        let mut quotient = Self::zero(&self.vars, &self.ctx);
        let mut rem = self.clone();
        while let Some((re, rc)) = rem.leading_term() {
            let qe: Vec<i64> = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let inside = qe.iter().zip(lo.iter().zip(&hi)).all(|(x, (l, h))| l <= x && x <= h);
            if !inside {
                return None;
            }
            let qc = rc.mul(&lead_inv);
            let q = Self::monomial(&self.vars, &self.ctx, qe.clone(), qc.clone());
            rem = &rem - &(divisor * &q);
            quotient.add_term(qe, &qc);
        }
        Some(quotient)
    }
}

impl<C: Ring> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<C: Ring> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<C: Ring> fmt::Display for LaurentPoly<C> {
    /// Expanded form `c1*m1 + c2*m2 - …`, largest exponent vector first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let atomic = c.is_atomic();
            let neg = atomic && c.is_negative();
            let shown = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(&k, _)| k != 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let coeff = if atomic {
                shown.to_string()
            } else {
                format!("({shown})")
            };
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if shown.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Ring> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.assert_compatible(rhs);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c);
        }
        p
    }
}

impl<C: Ring> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.assert_compatible(rhs);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), &c.neg());
        }
        p
    }
}

impl<C: Ring> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.assert_compatible(rhs);
        let mut p = LaurentPoly::zero(&self.vars, &self.ctx);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, &ca.mul(cb));
            }
        }
        p
    }
}

impl<C: Ring> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = c.neg();
        }
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Ring> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: Self) -> LaurentPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Ring> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Ring> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn difference_of_squares() {
        let vs = vars(&["u"]);
        let u = LaurentPoly::<BigInt>::var(&vs, &(), 0);
        let ui = LaurentPoly::<BigInt>::var_pow(&vs, &(), 0, -1);
        let p = &(&u + &ui) * &(&u - &ui);
        let expected = &LaurentPoly::var_pow(&vs, &(), 0, 2) - &LaurentPoly::var_pow(&vs, &(), 0, -2);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "u^2 - u^-2");
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn monomial_substitution_cancels() {
        // 1 + u v with u -> -x^-1, v -> x.
        let src = vars(&["u", "v"]);
        let tgt = vars(&["x"]);
        let p = &LaurentPoly::<BigRational>::one(&src, &()) + &LaurentPoly::monomial(&src, &(), vec![1, 1], q(1));
        let images = vec![(q(-1), vec![-1]), (q(1), vec![1])];
        let s = p.substitute_monomials(&tgt, &(), &images, |c| c.clone()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn exact_division() {
        let vs = vars(&["x", "y"]);
        let x = LaurentPoly::<BigRational>::var(&vs, &(), 0);
        let y = LaurentPoly::<BigRational>::var_pow(&vs, &(), 1, -2);
        let one = LaurentPoly::one(&vs, &());
        let a = &(&x + &y) * &(&(&x * &y) - &one);
        assert_eq!(a.exact_div(&(&x + &y)).unwrap(), &(&x * &y) - &one);
        assert!(x.exact_div(&(&x + &one)).is_none());
        assert!((&x + &one).exact_div(&(&x - &one)).is_none());
    }

    #[test]
    fn clearing_negative_exponents() {
        let vs = vars(&["a", "b"]);
        let p = LaurentPoly::<BigInt>::from_terms(
            &vs,
            &(),
            [(vec![-2, 1], BigInt::from(3)), (vec![1, -1], BigInt::from(-1))],
        );
        let (cleared, shift) = p.clear_denominators();
        assert_eq!(shift, vec![2, 1]);
        assert!(cleared.terms().all(|(e, _)| e.iter().all(|&k| k >= 0)));
    }

    #[test]
    fn reorder_variables() {
        let ab = vars(&["a", "b"]);
        let ba = vars(&["b", "a", "c"]);
        let p = LaurentPoly::<BigInt>::monomial(&ab, &(), vec![2, -1], BigInt::from(5));
        let r = p.reorder_vars(&ba).unwrap();
        assert_eq!(r.coefficient(&[-1, 2, 0]), BigInt::from(5));
    }
}
