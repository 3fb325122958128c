use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic.
pub const DEFAULT_PRIME: u32 = 32003;

/// An element of `F_p`, always kept in `0..p`.
pub type Scalar = u32;

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as Scalar
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(self, a: Scalar, b: Scalar, c: Scalar) -> Scalar {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as Scalar
    }

    pub fn pow(self, mut base: Scalar, mut exp: u64) -> Scalar {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: Scalar) -> Scalar {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, odd: bool) -> Scalar {
        if odd {
            self.neg(1)
        } else {
            1 % self.p
        }
    }

    /// Symmetric representative in `(-p/2, p/2]`, for display.
    pub fn to_signed(self, a: Scalar) -> i64 {
        if a as u64 > self.p as u64 / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn inverse_and_signs() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.sign(true), 6);
        assert_eq!(f.to_signed(6), -1);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.sign(true), 1);
    }
}
