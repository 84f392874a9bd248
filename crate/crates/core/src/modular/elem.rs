use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ArithError, Modulus, Residue};

/// A ring element that the polynomial and sum evaluators can work over:
/// either a plain residue or an element of a quadratic extension.
pub trait Elem:
    Copy
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn modulus(&self) -> Modulus;

    /// The integer `v` embedded in the same ring as `self`.
    fn lift(&self, v: i64) -> Self;

    /// Multiply by a base-ring scalar given as a raw residue.
    fn scale(&self, r: u64) -> Self;

    fn is_zero(&self) -> bool;

    fn inv(&self) -> Result<Self, ArithError>;

    /// The value as a base-ring residue, if it lies in the base ring.
    fn base_part(&self) -> Option<Residue>;

    fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.lift(1);
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl Elem for Residue {
    fn modulus(&self) -> Modulus {
        Residue::modulus(self)
    }

    fn lift(&self, v: i64) -> Self {
        Residue::modulus(self).residue(v)
    }

    fn scale(&self, r: u64) -> Self {
        let m = Residue::modulus(self);
        Residue::from_raw(m.mul(self.value(), r % m.pe()), m)
    }

    fn is_zero(&self) -> bool {
        Residue::is_zero(self)
    }

    fn inv(&self) -> Result<Self, ArithError> {
        Residue::inv(self)
    }

    fn base_part(&self) -> Option<Residue> {
        Some(*self)
    }

    fn pow(&self, exp: u64) -> Self {
        Residue::pow(self, exp)
    }
}

/// z^((p−1)/2): the Euler-criterion power.
pub fn half_power<E: Elem>(z: E) -> E {
    let p = z.modulus().p();
    z.pow((p - 1) / 2)
}
