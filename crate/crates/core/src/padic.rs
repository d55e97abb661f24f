//! Base-`p` digit arithmetic: expansions, `p`-length and primitive pairs.
//!
//! Digit sequences are stored least-significant first, so index `i` holds the
//! coefficient of `p^i`. The canonical form has no trailing zero digits and
//! the empty sequence encodes `0`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A prime number, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^k`, or `None` on overflow.
    pub fn checked_pow(self, k: u32) -> Option<u64> {
        self.0.checked_pow(k)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Prime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let p: u64 = s
            .trim()
            .parse()
            .map_err(|e| format!("invalid integer {s:?}: {e}"))?;
        Prime::new(p).map_err(|e| e.to_string())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Canonical base-`p` expansion of a nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digits {
    base: Prime,
    digits: Vec<u64>,
}

impl Digits {
    pub fn new(base: Prime, mut n: u64) -> Self {
        let p = base.get();
        let mut digits = Vec::new();
        while n > 0 {
            digits.push(n % p);
            n /= p;
        }
        Digits { base, digits }
    }

    /// Builds an expansion from explicit digits (least-significant first),
    /// stripping trailing zeros.
    pub fn from_digits(base: Prime, mut digits: Vec<u64>) -> Result<Self> {
        let p = base.get();
        if let Some(&digit) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::InvalidDigit { base: p, digit });
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let out = Digits { base, digits };
        out.checked_value().ok_or(Error::Overflow("digit reconstruction"))?;
        Ok(out)
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at position `i`; zero past the top digit.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn len_p(&self) -> i64 {
        self.digits.len() as i64 - 1
    }

    pub fn value(&self) -> u64 {
        self.checked_value()
            .expect("canonical digits always fit in u64")
    }

    fn checked_value(&self) -> Option<u64> {
        let p = self.base.get();
        self.digits
            .iter()
            .rev()
            .try_fold(0u64, |acc, &d| acc.checked_mul(p)?.checked_add(d))
    }
}

pub fn digits(p: Prime, n: u64) -> Digits {
    Digits::new(p, n)
}

/// Index of the highest nonzero base-`p` digit of `n`; `-1` for `n = 0`.
pub fn len_p(p: Prime, mut n: u64) -> i64 {
    let mut len = -1;
    while n > 0 {
        n /= p.get();
        len += 1;
    }
    len
}

/// The primitive of `(r, s)`: both weights with their common high digits
/// removed.
///
/// `m` is the highest digit position at which `r` and `s` differ. When
/// `r = s` there is no such position and the pair is `(0, 0)` with
/// `epsilon = r` and `m = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimitivePair {
    pub r_hat: u64,
    pub s_hat: u64,
    pub epsilon: u64,
    pub m: i64,
}

impl PrimitivePair {
    pub fn is_trivial(&self) -> bool {
        self.m < 0
    }
}

pub fn primitive_pair(p: Prime, r: u64, s: u64) -> PrimitivePair {
    let base = p.get();
    let (mut a, mut b) = (r, s);
    let mut m = -1i64;
    let mut i = 0i64;
    while a > 0 || b > 0 {
        if a % base != b % base {
            m = i;
        }
        a /= base;
        b /= base;
        i += 1;
    }
    if m < 0 {
        return PrimitivePair {
            r_hat: 0,
            s_hat: 0,
            epsilon: r,
            m,
        };
    }
    // p^(m+1) may exceed u64 only when nothing lies above position m.
    let (r_hat, s_hat) = match p.checked_pow(m as u32 + 1) {
        Some(modulus) => (r % modulus, s % modulus),
        None => (r, s),
    };
    PrimitivePair {
        r_hat,
        s_hat,
        epsilon: r - r_hat,
        m,
    }
}

pub fn epsilon(p: Prime, r: u64, s: u64) -> u64 {
    primitive_pair(p, r, s).epsilon
}
