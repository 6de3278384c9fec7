use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Default prime for point sampling.
pub const DEFAULT_PRIME: u32 = 10007;

/// A validated prime modulus below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(PolyError::BadModulus(p));
        }
        Ok(Modulus(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The residue class of an arbitrary integer.
    pub fn elem(self, v: i64) -> Scalar {
        let p = self.0 as i64;
        Scalar::Residue {
            value: v.rem_euclid(p) as u32,
            modulus: self,
        }
    }

    pub fn zero(self) -> Scalar {
        self.elem(0)
    }

    pub fn one(self) -> Scalar {
        self.elem(1)
    }
}

impl Default for Modulus {
    fn default() -> Self {
        Modulus(DEFAULT_PRIME)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// An element of the ground field: an exact rational, or a residue modulo a
/// prime.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed by
/// `BigRational`). Arithmetic between a rational and a residue maps the
/// rational into the prime field first; this is the canonical ring map
/// `Z[1/den] -> F_p` and panics if the denominator is divisible by `p`.
/// Combining residues of two different primes is a programming error and
/// panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: Modulus },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn modulus(&self) -> Option<Modulus> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { modulus, .. } => Some(*modulus),
        }
    }

    /// Reduce into `F_p`. Fails if a denominator is divisible by `p`.
    pub fn reduce(&self, m: Modulus) -> Result<Scalar, PolyError> {
        match self {
            Scalar::Residue { modulus, .. } if *modulus == m => Ok(self.clone()),
            Scalar::Residue { modulus, .. } => Err(PolyError::MixedModuli(modulus.get(), m.get())),
            Scalar::Rational(r) => {
                let p = BigInt::from(m.get());
                let num = r.numer().mod_floor(&p).to_u64().unwrap();
                let den = r.denom().mod_floor(&p).to_u64().unwrap();
                if den == 0 {
                    return Err(PolyError::NotInvertible);
                }
                let inv = pow_mod(den, m.get() as u64 - 2, m.get() as u64);
                Ok(Scalar::Residue {
                    value: (num * inv % m.get() as u64) as u32,
                    modulus: m,
                })
            }
        }
    }

    pub fn inverse(&self) -> Result<Scalar, PolyError> {
        if self.is_zero() {
            return Err(PolyError::NotInvertible);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => {
                let p = modulus.get() as u64;
                Scalar::Residue {
                    value: pow_mod(*value as u64, p - 2, p) as u32,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = match self {
            Scalar::Rational(_) => Scalar::one(),
            Scalar::Residue { modulus, .. } => modulus.one(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The rational value, if this is a rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Integer value of a rational with denominator 1, or of a residue's
    /// representative in `[0, p)`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }

    /// True for a negative rational. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    fn combine(
        &self,
        other: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        r: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(q(a, b)),
            _ => {
                let m = self.modulus().or(other.modulus()).unwrap();
                let a = self.reduce(m).expect("scalar not representable in prime field");
                let b = other.reduce(m).expect("scalar not representable in prime field");
                match (a, b) {
                    (Scalar::Residue { value: x, .. }, Scalar::Residue { value: y, .. }) => Scalar::Residue {
                        value: r(x as u64, y as u64, m.get() as u64) as u32,
                        modulus: m,
                    },
                    _ => unreachable!(),
                }
            }
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.combine(o, |a, b| a + b, |x, y, p| (x + y) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.combine(o, |a, b| a - b, |x, y, p| (x + p - y) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.combine(o, |a, b| a * b, |x, y, p| x * y % p)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inverse().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus.get() - value) % modulus.get(),
                modulus: *modulus,
            },
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{}", value),
        }
    }
}

impl FromStr for Scalar {
    type Err = PolyError;

    /// Parses `a` or `a/b` as a rational.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PolyError::Parse(format!("bad number `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar::Rational(BigRational::from_integer(n)))
            }
        }
    }
}
