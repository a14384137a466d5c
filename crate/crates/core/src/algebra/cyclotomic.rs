//! The cyclotomic fields ℚ(ζ_M) = ℚ[t]/Φ_M(t).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::{format_rational, Field, Ring};

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
type UPoly = Vec<BigRational>;

fn qz() -> BigRational {
    <BigRational as Zero>::zero()
}

fn q1() -> BigRational {
    <BigRational as One>::one()
}

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn upoly_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(qz);
        let y = b.get(i).cloned().unwrap_or_else(qz);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![qz(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
fn upoly_divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.clone();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![qz(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Φ_M by dividing t^M − 1 by Φ_d for every proper divisor d of M.
pub fn cyclotomic_polynomial(order: u64) -> Vec<BigRational> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut cache: Vec<Option<UPoly>> = vec![None; order as usize + 1];
    phi(order, &mut cache)
}

fn phi(order: u64, cache: &mut Vec<Option<UPoly>>) -> UPoly {
    if let Some(p) = &cache[order as usize] {
        return p.clone();
    }
    let mut p = vec![qz(); order as usize + 1];
    p[0] = -q1();
    p[order as usize] = q1();
    for d in 1..order {
        if order.is_multiple_of(d) {
            let q = phi(d, cache);
            let (quot, rem) = upoly_divrem(&p, &q);
            debug_assert!(rem.is_empty());
            p = quot;
        }
    }
    cache[order as usize] = Some(p.clone());
    p
}

/// ℚ(ζ_M) presented as ℚ[t]/Φ_M.
#[derive(PartialEq, Eq, Debug)]
pub struct CyclotomicField {
    order: u64,
    modulus: UPoly,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Arc<Self> {
        Arc::new(CyclotomicField {
            order,
            modulus: cyclotomic_polynomial(order),
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(M), the degree of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of Φ_M, lowest degree first.
    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    fn reduce(&self, p: &UPoly) -> UPoly {
        upoly_divrem(p, &self.modulus).1
    }
}

/// An element of ℚ(ζ_M), stored reduced modulo Φ_M.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coords: UPoly,
}

impl Cyclotomic {
    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut coords = vec![q];
        trim(&mut coords);
        Cyclotomic {
            field: Arc::clone(field),
            coords,
        }
    }

    /// ζ_M^k for any integer k.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let m = field.order as i64;
        let e = k.rem_euclid(m) as usize;
        let mut p = vec![qz(); e + 1];
        p[e] = q1();
        Cyclotomic {
            field: Arc::clone(field),
            coords: field.reduce(&p),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coordinates in the power basis 1, ζ, …, ζ^{φ(M)−1}.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one(&self.field);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    fn with(&self, coords: UPoly) -> Self {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coords,
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coords == other.coords
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({})", self.field.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = Signed::is_negative(c);
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = One::is_one(&abs);
            match (k, unit) {
                (0, _) => write!(f, "{}", format_rational(&abs))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", format_rational(&abs))?,
            }
            match k {
                0 => {}
                1 => write!(f, "zeta")?,
                _ => write!(f, "zeta^{k}")?,
            }
        }
        Ok(())
    }
}

impl Ring for Cyclotomic {
    type Ctx = Arc<CyclotomicField>;

    fn zero(ctx: &Self::Ctx) -> Self {
        Cyclotomic {
            field: Arc::clone(ctx),
            coords: Vec::new(),
        }
    }
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(BigInt::from(n)))
    }
    fn context(&self) -> Self::Ctx {
        Arc::clone(&self.field)
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let neg: UPoly = other.coords.iter().map(|c| -c).collect();
        self.with(upoly_sub(&self.coords, &neg))
    }
    fn sub(&self, other: &Self) -> Self {
        self.with(upoly_sub(&self.coords, &other.coords))
    }
    fn mul(&self, other: &Self) -> Self {
        self.with(self.field.reduce(&upoly_mul(&self.coords, &other.coords)))
    }
    fn neg(&self) -> Self {
        self.with(self.coords.iter().map(|c| -c).collect())
    }
    fn is_negative(&self) -> bool {
        self.coords.last().is_some_and(Signed::is_negative)
    }
    fn is_atomic(&self) -> bool {
        self.coords.iter().filter(|c| !Zero::is_zero(*c)).count() <= 1
    }
}

impl Field for Cyclotomic {
    /// Extended Euclid against Φ_M.
    fn inv(&self) -> Option<Self> {
        if self.coords.is_empty() {
            return None;
        }
        // Invariant: s_i * self ≡ r_i (mod Φ_M).
        let (mut r0, mut r1) = (self.field.modulus.clone(), self.coords.clone());
        let (mut s0, mut s1): (UPoly, UPoly) = (Vec::new(), vec![q1()]);
        while !r1.is_empty() {
            let (q, r) = upoly_divrem(&r0, &r1);
            let s = upoly_sub(&s0, &upoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_M is irreducible, so the gcd r0 is a nonzero constant.
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        let coords: UPoly = s0.iter().map(|x| x * &c).collect();
        Some(self.with(self.field.reduce(&coords)))
    }
}
