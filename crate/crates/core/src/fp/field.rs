use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime `p < 2^16`, so that a product of two residues fits in 32 bits and
/// a sum of `2^32` such products fits in 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const DEFAULT: Prime = Prime(101);

    pub fn new(p: u32) -> Result<Self> {
        if p < (1 << 16) && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::BadPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn mul(self, x: u32, y: u32) -> u32 {
        ((u64::from(x) * u64::from(y)) % u64::from(self.0)) as u32
    }

    pub fn add(self, x: u32, y: u32) -> u32 {
        ((u64::from(x) + u64::from(y)) % u64::from(self.0)) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, x: u32) -> u32 {
        debug_assert!(!x.is_multiple_of(self.0), "zero has no inverse");
        self.pow(x, self.0 - 2)
    }
}

impl Default for Prime {
    fn default() -> Self {
        Prime::DEFAULT
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
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
    fn primality() {
        for p in [2, 3, 5, 101, 65521] {
            assert!(Prime::new(p).is_ok(), "{p}");
        }
        for p in [0, 1, 4, 100, 65535, 65537] {
            assert!(Prime::new(p).is_err(), "{p}");
        }
    }

    #[test]
    fn inverses() {
        let p = Prime::new(101).unwrap();
        for x in 1..101 {
            assert_eq!(p.mul(x, p.inv(x)), 1);
        }
        let q = Prime::new(2).unwrap();
        assert_eq!(q.inv(1), 1);
    }
}
