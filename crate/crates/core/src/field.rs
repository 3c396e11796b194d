//! Arithmetic in the prime field GF(p).
//!
//! Coefficients are stored as plain `u32` residues in `[0, p)`; the [`Field`]
//! value carries the modulus and performs every operation. The prime must fit
//! in 31 bits so that products fit in a `u64`.

use crate::error::AlgebraError;

/// A field element: an integer residue in `[0, p)` for the session prime.
pub type FieldScalar = u32;

/// Default modulus: the largest prime below 2^16.
pub const DEFAULT_PRIME: u32 = 65521;

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Field {
    p: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_PRIME }
    }
}

impl Field {
    /// Creates GF(p). Rejects composite moduli, 2, and anything that does not
    /// fit in 31 bits.
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(&self, v: i64) -> FieldScalar {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldScalar) -> FieldScalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: FieldScalar, mut exp: u64) -> FieldScalar {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FieldScalar) -> FieldScalar {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        self.from_i64(t0)
    }

    /// Symmetric representative in `(-p/2, p/2]`, used by the text printer.
    pub fn to_signed(&self, a: FieldScalar) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
