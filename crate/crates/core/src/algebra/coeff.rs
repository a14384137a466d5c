//! Coefficient domains: ℤ, ℚ, 𝔽_p and (in `cyclotomic`) ℚ(ζ_M).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring whose elements know which concrete ring they live in.
///
/// The context carries runtime parameters (the prime of 𝔽_p, the cyclotomic
/// modulus); for ℤ and ℚ it is `()`.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn context(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.context())
    }

    /// True when the element prints with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }

    /// True when the printed form is a single atom (no `+`/`-` inside).
    fn is_atomic(&self) -> bool {
        true
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl Ring for BigInt {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        <BigInt as Zero>::zero()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        BigInt::from(n)
    }
    fn context(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Ring for BigRational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn context(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Element of the prime field 𝔽_p (p < 2³¹).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Reduces a rational number modulo p; `None` when p divides the denominator.
    pub fn from_rational(q: &BigRational, modulus: u64) -> Option<Fp> {
        let p = BigInt::from(modulus);
        let num = q.numer().mod_floor(&p).to_i64()?;
        let den = q.denom().mod_floor(&p).to_i64()?;
        let den = Fp::new(den, modulus);
        let inv = den.inv()?;
        Some(Fp::new(num, modulus).mul(&inv))
    }

    fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    type Ctx = u64;

    fn zero(ctx: &u64) -> Self {
        Fp::new(0, *ctx)
    }
    fn from_i64(ctx: &u64, n: i64) -> Self {
        Fp::new(n, *ctx)
    }
    fn context(&self) -> u64 {
        self.modulus
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Fp {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp {
            value: (self.value * other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

/// Canonical embedding of integers into any ring.
pub fn embed_int<C: Ring>(ctx: &C::Ctx, n: &BigInt) -> C {
    match n.to_i64() {
        Some(small) => C::from_i64(ctx, small),
        None => {
            // Horner in base 2^32.
            let (sign, digits) = n.to_u32_digits();
            let base = C::from_i64(ctx, 1i64 << 32);
            let mut acc = C::zero(ctx);
            for d in digits.iter().rev() {
                acc = acc.mul(&base).add(&C::from_i64(ctx, *d as i64));
            }
            if sign == num_bigint::Sign::Minus {
                acc.neg()
            } else {
                acc
            }
        }
    }
}

/// Embedding ℚ → F for fields of characteristic zero.
pub fn embed_rational<F: Field>(ctx: &F::Ctx, q: &BigRational) -> F {
    let num: F = embed_int(ctx, q.numer());
    let den: F = embed_int(ctx, q.denom());
    num.div(&den).expect("denominator is nonzero in characteristic zero")
}

/// Parses `p`, `-p`, or `p/q` (q > 0).
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return None;
            }
            d.parse().ok()?
        }
        None => <BigInt as One>::one(),
    };
    if Zero::is_zero(&den) {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Exact `p/q` string, or `p` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_and_reduction() {
        for p in [2u64, 3, 5, 7, 11] {
            for a in 1..p as i64 {
                let x = Fp::new(a, p);
                assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Fp::from_rational(&half, 7).unwrap().value(), 4);
        assert!(Fp::from_rational(&half, 2).is_none());
        assert_eq!(Fp::new(-1, 5).value(), 4);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-4").unwrap(), BigRational::from_integer((-4).into()));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("1/-2").is_none());
        assert!(parse_rational("x").is_none());
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
    }

    #[test]
    fn big_integers_embed() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q: BigRational = embed_int(&(), &n);
        assert_eq!(q, BigRational::from_integer(n.clone()));
        let neg: BigInt = -n.clone();
        let q: BigRational = embed_int(&(), &neg);
        assert_eq!(q, BigRational::from_integer(neg));
    }
}
