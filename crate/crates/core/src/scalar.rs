//! Field scalars for the generic linear algebra.
//!
//! The linear algebra in [`crate::linalg`] is generic over any exact
//! field: arbitrary-precision rationals for the lattice and quiver
//! computations, and odd prime fields for the character-table solver.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::Rat;

/// An exact field. Every operation must be exact; types implementing
/// this trait are forbidden from rounding.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse. Panics on zero; callers guard.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.clone() * rhs.inv()
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        use num_traits::Inv;
        Inv::inv(self)
    }
}

/// Element of the prime field F_p with a runtime modulus.
///
/// The modulus is carried in the element so that `Fp` satisfies the
/// context-free operator traits; mixing moduli is a programming error.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus > 1 && modulus < (1 << 31));
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp::new((value.rem_euclid(m)) as u64, modulus)
    }

    fn join(a: u64, b: u64) -> u64 {
        // Zero/One are constructed modulus-less (modulus 0); adopt the
        // other operand's modulus.
        if a == 0 {
            b
        } else {
            a
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp::new(1, self.modulus.max(2));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
    // The default is_one compares against the modulus-free constant and
    // would never match a bound element.
    fn is_one(&self) -> bool {
        self.value == 1
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        if m == 0 {
            return Fp {
                value: self.value + rhs.value,
                modulus: 0,
            };
        }
        Fp::new((self.value % m + rhs.value % m) % m, m)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        if m == 0 {
            return Fp {
                value: self.value - rhs.value,
                modulus: 0,
            };
        }
        Fp::new((self.value % m + m - rhs.value % m) % m, m)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        if m == 0 {
            return Fp {
                value: self.value * rhs.value,
                modulus: 0,
            };
        }
        Fp::new(
            ((self.value % m) as u128 * (rhs.value % m) as u128 % m as u128) as u64,
            m,
        )
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            debug_assert_eq!(self.value, 0);
            return self;
        }
        Fp::new(self.modulus - self.value % self.modulus, self.modulus)
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv()
    }
}

impl Field for Fp {
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_p");
        // Fermat: p is prime.
        self.pow(self.modulus - 2)
    }
}

/// Balanced lift of a residue to the integer of least absolute value.
pub fn balanced_lift(a: u64, p: u64) -> i64 {
    if a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// Rational reconstruction of a residue modulo `p`: the unique n/d with
/// |n|, d <= sqrt(p/2), if it exists.
pub fn rational_reconstruct(a: u64, p: u64) -> Option<(i64, i64)> {
    let bound = ((p / 2) as f64).sqrt() as i64;
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if num_integer::gcd(n.abs(), d) != 1 {
        return None;
    }
    Some((n, d))
}

/// Smallest prime `p` with `p >= lower` and `p % modulus == residue`.
pub fn next_prime_in_class(lower: u64, residue: u64, modulus: u64) -> u64 {
    let mut p = lower.max(2);
    let rem = p % modulus;
    if rem != residue % modulus {
        p += (residue % modulus + modulus - rem) % modulus;
    }
    loop {
        if is_prime(p) {
            return p;
        }
        p += modulus;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let p = 17;
        let a = Fp::new(12, p);
        let b = Fp::new(9, p);
        assert_eq!((a + b).value, 4);
        assert_eq!((a - b).value, 3);
        assert_eq!((a * b).value, 108 % 17);
        assert_eq!((a * a.inv()).value, 1);
        assert_eq!((-a).value, 5);
    }

    #[test]
    fn fp_zero_one_identity() {
        let p = 101;
        let a = Fp::new(55, p);
        assert_eq!(a + Fp::zero(), a);
        assert_eq!(a * Fp::one(), a);
    }

    #[test]
    fn reconstruct_small_rationals() {
        let p = 1_000_003u64;
        // 3/7 mod p
        let seven_inv = Fp::new(7, p).inv().value;
        let a = (3 * seven_inv) % p;
        assert_eq!(rational_reconstruct(a, p), Some((3, 7)));
        assert_eq!(rational_reconstruct(5, p), Some((5, 1)));
        let neg2 = p - 2;
        assert_eq!(rational_reconstruct(neg2, p), Some((-2, 1)));
    }

    #[test]
    fn prime_search() {
        assert_eq!(next_prime_in_class(3, 1, 4), 5);
        assert_eq!(next_prime_in_class(20, 1, 12), 37);
        assert!(is_prime(661));
        assert!(!is_prime(1));
    }
}
