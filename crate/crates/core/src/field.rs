//! Scalar fields for exact computation.
//!
//! Every algorithm in this crate is written against the [`Field`] trait.
//! The shipped implementation is the prime field [`Fp`], whose modulus is a
//! const parameter so that reduction compiles to multiply-shift sequences.

use std::fmt;
use std::hash::Hash;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use rand::Rng;

/// An exact commutative field with canonical integer representatives.
pub trait Field:
    Copy
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + Product
    + Send
    + Sync
    + 'static
{
    /// Characteristic of the field (0 is never used here).
    const CHARACTERISTIC: u64;

    /// Multiplicative inverse, `None` for zero.
    fn inv(self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Canonical representative in `[0, p)`.
    fn to_u64(self) -> u64;

    /// A uniformly distributed element.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

/// Compile-time primality check used by the supported-modulus table.
pub const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `F_P`, stored as its canonical representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const PRIME: () = assert!(is_prime(P as u64) && P > 2, "modulus must be an odd prime");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME;
        Fp((v % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u32> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u32> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u32> Sum for Fp<P> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<const P: u32> Product for Fp<P> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u32> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P as u64;

    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat: a^(p-2) = a^-1
            Some(Field::pow(self, P as u64 - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v.rem_euclid(P as i64) as u64)
    }

    fn to_u64(self) -> u64 {
        self.0 as u64
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// Moduli for which [`with_prime_field!`](crate::with_prime_field) has an instantiation.
pub const SUPPORTED_PRIMES: &[u32] = &[101, 103, 1009, 10007, 32003, 65521];

/// Runs `$body` with `$F` bound to `Fp<p>` for a runtime modulus `p`.
///
/// Evaluates to `Err(Error::Config(..))` for moduli outside
/// [`SUPPORTED_PRIMES`]; `$body` must itself evaluate to a `Result`.
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $F:ident => $body:expr) => {
        match $p {
            101 => {
                type $F = $crate::Fp<101>;
                $body
            }
            103 => {
                type $F = $crate::Fp<103>;
                $body
            }
            1009 => {
                type $F = $crate::Fp<1009>;
                $body
            }
            10007 => {
                type $F = $crate::Fp<10007>;
                $body
            }
            32003 => {
                type $F = $crate::Fp<32003>;
                $body
            }
            65521 => {
                type $F = $crate::Fp<65521>;
                $body
            }
            other => Err($crate::Error::Config(format!(
                "field characteristic {other} is not one of the supported primes {:?}",
                $crate::field::SUPPORTED_PRIMES
            ))
            .into()),
        }
    };
}
