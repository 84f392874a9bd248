//! Arithmetic in Z/p^eZ and in quadratic extensions of it.

mod elem;
mod ext;
mod symbols;

pub use elem::{half_power, Elem};
pub use ext::{ext_arith, sqrt_in_ext, ExtOp, QuadExtElem};
pub use symbols::{jacobi_symbol, legendre_symbol, sqrt_mod_p, sqrt_mod_pe};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::primes::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("operands belong to different rings")]
    DomainMismatch,
    #[error("invalid modulus p={p}, e={e}: {reason}")]
    InvalidModulus { p: u64, e: u32, reason: &'static str },
    #[error("{0} is a square modulo p and cannot generate a quadratic extension")]
    ResidueRadicand(u64),
}

/// Largest admissible prime (exclusive) for each exponent.
pub const fn prime_cap(e: u32) -> u64 {
    match e {
        1 => 1 << 40,
        2 => 1 << 31,
        3 => 1 << 21,
        _ => 0,
    }
}

/// The modulus p^e with p ≥ 5 prime and e ∈ {1, 2, 3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    e: u32,
    pe: u64,
    // floor(2^64 / pe) when pe < 2^32, zero otherwise
    barrett: u64,
}

impl Modulus {
    pub fn new(p: u64, e: u32) -> Result<Self, ArithError> {
        if !(1..=3).contains(&e) {
            return Err(ArithError::InvalidModulus { p, e, reason: "exponent must be 1, 2 or 3" });
        }
        if p < 5 || !is_prime(p) {
            return Err(ArithError::InvalidModulus { p, e, reason: "p must be a prime at least 5" });
        }
        if p >= prime_cap(e) {
            return Err(ArithError::InvalidModulus { p, e, reason: "p exceeds the word-size cap for this exponent" });
        }
        let pe = p.pow(e);
        let barrett = if pe < (1 << 32) { u64::MAX / pe } else { 0 };
        Ok(Modulus { p, e, pe, barrett })
    }

    pub fn prime(p: u64) -> Result<Self, ArithError> {
        Modulus::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn pe(&self) -> u64 {
        self.pe
    }

    /// Same prime, different exponent.
    pub fn with_exponent(&self, e: u32) -> Result<Self, ArithError> {
        Modulus::new(self.p, e)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.pe {
            s - self.pe
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.pe - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.pe - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.barrett != 0 {
            let x = a * b;
            let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
            let r = x - q * self.pe;
            if r >= self.pe {
                r - self.pe
            } else {
                r
            }
        } else {
            ((a as u128 * b as u128) % self.pe as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.pe;
        base %= self.pe;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse modulo p by extended gcd, then Newton lifting to p^e.
    pub fn inv(&self, a: u64) -> Result<u64, ArithError> {
        let a = a % self.pe;
        let x0 = inv_mod_prime(a % self.p, self.p).ok_or(ArithError::NotInvertible { value: a, modulus: self.pe })?;
        let mut x = x0;
        let mut precision = 1;
        while precision < self.e {
            // x ← x(2 − a·x) doubles the number of correct p-adic digits
            let ax = self.mul(a, x);
            x = self.mul(x, self.sub(2 % self.pe, ax));
            precision *= 2;
        }
        Ok(x)
    }

    /// Reduce a signed integer into [0, pe).
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.pe as i64) as u64
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.pe as i128) as u64
    }

    /// Symmetric representative in (−pe/2, pe/2].
    pub fn signed(&self, v: u64) -> i64 {
        if v > self.pe / 2 {
            v as i64 - self.pe as i64
        } else {
            v as i64
        }
    }

    pub fn residue(&self, v: i64) -> Residue {
        Residue { value: self.reduce_i64(v), m: *self }
    }

    pub fn zero(&self) -> Residue {
        Residue { value: 0, m: *self }
    }

    pub fn one(&self) -> Residue {
        Residue { value: 1, m: *self }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

fn inv_mod_prime(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// An element of Z/p^eZ, stored as its least nonnegative representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    m: Modulus,
}

impl Residue {
    pub fn new(v: i64, m: Modulus) -> Self {
        m.residue(v)
    }

    pub fn from_raw(v: u64, m: Modulus) -> Self {
        Residue { value: v % m.pe, m }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn signed(&self) -> i64 {
        self.m.signed(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, exp: u64) -> Residue {
        Residue { value: self.m.pow(self.value, exp), m: self.m }
    }

    pub fn inv(&self) -> Result<Residue, ArithError> {
        Ok(Residue { value: self.m.inv(self.value)?, m: self.m })
    }

    /// The same integer read modulo p^e' for e' ≤ e.
    pub fn reduce_to(&self, m: Modulus) -> Residue {
        assert_eq!(m.p, self.m.p, "reduce_to needs the same prime");
        assert!(m.e <= self.m.e, "reduce_to cannot raise the exponent");
        Residue { value: self.value % m.pe, m }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        assert_eq!(self.m, rhs.m, "residues modulo different moduli");
        Residue { value: self.m.add(self.value, rhs.value), m: self.m }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        assert_eq!(self.m, rhs.m, "residues modulo different moduli");
        Residue { value: self.m.sub(self.value, rhs.value), m: self.m }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        assert_eq!(self.m, rhs.m, "residues modulo different moduli");
        Residue { value: self.m.mul(self.value, rhs.value), m: self.m }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue { value: self.m.neg(self.value), m: self.m }
    }
}

pub fn mod_pow(base: Residue, exp: u64) -> Residue {
    base.pow(exp)
}

pub fn mod_inv(a: Residue) -> Result<Residue, ArithError> {
    a.inv()
}

/// num/den reduced modulo p^e.
pub fn rational_residue(num: i64, den: i64, m: Modulus) -> Result<Residue, ArithError> {
    let d = m.residue(den).inv()?;
    Ok(m.residue(num) * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(p: u64, e: u32) -> Modulus {
        Modulus::new(p, e).unwrap()
    }

    #[test]
    fn pow_examples() {
        assert_eq!(mod_pow(md(11, 1).residue(2), 10).value(), 1);
        assert_eq!(mod_pow(md(7, 1).residue(3), 5).value(), 5);
        assert_eq!(mod_pow(md(13, 3).residue(9), 0).value(), 1);
    }

    #[test]
    fn inverse_examples() {
        let m = md(5, 2);
        assert_eq!(mod_inv(m.residue(1)).unwrap().value(), 1);
        assert_eq!(mod_inv(m.residue(2)).unwrap().value(), 13);
        assert_eq!(mod_inv(m.residue(5)), Err(ArithError::NotInvertible { value: 5, modulus: 25 }));
    }

    #[test]
    fn inverse_lifts_to_cube() {
        let m = md(101, 3);
        for a in [2i64, 3, 100, 1234, 99999] {
            let r = m.residue(a);
            assert_eq!((r * r.inv().unwrap()).value(), 1);
        }
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rational_residue(1, 2, md(7, 1)).unwrap().value(), 4);
        assert_eq!(rational_residue(0, 3, md(7, 1)).unwrap().value(), 0);
        assert_eq!(rational_residue(5, 4, md(11, 1)).unwrap().value(), 4);
        assert!(rational_residue(1, 14, md(7, 2)).is_err());
    }

    #[test]
    fn caps_enforced() {
        assert!(Modulus::new(3, 1).is_err());
        assert!(Modulus::new(15, 1).is_err());
        assert!(Modulus::new(2_097_169, 3).is_err());
        assert!(Modulus::new(2_097_143, 3).is_ok());
        assert!(Modulus::new(2_097_143, 2).is_ok());
        assert!(Modulus::new(7, 4).is_err());
    }

    #[test]
    fn barrett_matches_wide_product() {
        let m = md(46_337, 2);
        let pe = m.pe() as u128;
        for (a, b) in [(m.pe() - 1, m.pe() - 1), (123_456_789, 987_654_321 % m.pe()), (0, 5)] {
            assert_eq!(m.mul(a, b) as u128, a as u128 * b as u128 % pe);
        }
        let big = md(1_000_000_007, 2);
        let (a, b) = (big.pe() - 3, big.pe() - 7);
        assert_eq!(big.mul(a, b) as u128, a as u128 * b as u128 % big.pe() as u128);
    }

    #[test]
    fn signed_representative() {
        let m = md(7, 1);
        assert_eq!(m.signed(6), -1);
        assert_eq!(m.signed(3), 3);
        assert_eq!(m.signed(4), -3);
    }
}
