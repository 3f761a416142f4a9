//! Exact linear algebra over the prime field GF(p).
//!
//! Everything in this module is small and dense: vectors and matrices carry
//! their modulus, arithmetic is table-free modular arithmetic on `u8`
//! entries, and all algorithms are plain Gaussian elimination. Subspaces are
//! kept in reduced row-echelon canonical form so that equal spans compare
//! equal byte-wise.

mod matrix;
mod streams;
mod subspace;

pub use matrix::{FpMatrix, FpVector};
pub use streams::{
    count_invertible, gaussian_binomial, InvertibleStream, SubspaceStream,
};
pub use subspace::Subspace;

/// Primality test for the small moduli this crate works with.
pub fn is_prime(p: u8) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u16;
    while d * d <= p as u16 {
        if p as u16 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn add_mod(a: u8, b: u8, p: u8) -> u8 {
    let s = a as u16 + b as u16;
    (s % p as u16) as u8
}

#[inline]
pub(crate) fn sub_mod(a: u8, b: u8, p: u8) -> u8 {
    let s = a as i16 - b as i16;
    s.rem_euclid(p as i16) as u8
}

#[inline]
pub(crate) fn mul_mod(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

#[inline]
pub(crate) fn neg_mod(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse mod p. Panics for a ≡ 0.
pub(crate) fn inv_mod(a: u8, p: u8) -> u8 {
    let a = a % p;
    assert!(a != 0, "zero has no inverse mod {p}");
    // p is tiny; a linear scan beats anything clever.
    for x in 1..p {
        if mul_mod(a, x, p) == 1 {
            return x;
        }
    }
    unreachable!("{p} is not prime")
}

/// A scalar in GF(p).
///
/// The value is kept reduced and the modulus is validated to be prime at
/// construction. Containers (`FpVector`, `FpMatrix`) store bare `u8` entries
/// with one shared modulus; this type exists for element-level access and
/// arithmetic at the API boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u8,
    modulus: u8,
}

impl Fp {
    pub fn new(value: u64, modulus: u8) -> Self {
        assert!(is_prime(modulus), "modulus {modulus} is not prime");
        Fp {
            value: (value % modulus as u64) as u8,
            modulus,
        }
    }

    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn add(self, other: Fp) -> Fp {
        assert_eq!(self.modulus, other.modulus);
        Fp {
            value: add_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn sub(self, other: Fp) -> Fp {
        assert_eq!(self.modulus, other.modulus);
        Fp {
            value: sub_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn mul(self, other: Fp) -> Fp {
        assert_eq!(self.modulus, other.modulus);
        Fp {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: neg_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self) -> Fp {
        Fp {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}
