use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{jacobi_symbol, sqrt_mod_pe, ArithError, Elem, Modulus, Residue};

/// a + b·ω with ω² = d, over Z/p^eZ.
///
/// When b ≠ 0 the radicand d is a non-residue mod p, so at e = 1 this is the
/// field F_{p²}. Elements with b = 0 form the base ring and combine with
/// elements of any radicand; the result inherits the radicand of whichever
/// operand has b ≠ 0.
#[derive(Debug, Clone, Copy)]
pub struct QuadExtElem {
    a: u64,
    b: u64,
    d: u64,
    m: Modulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtOp {
    Add,
    Sub,
    Mul,
}

impl QuadExtElem {
    pub fn new(a: Residue, b: Residue, d: Residue) -> Result<Self, ArithError> {
        let m = a.modulus();
        if b.modulus() != m || d.modulus() != m {
            return Err(ArithError::DomainMismatch);
        }
        if !b.is_zero() && jacobi_symbol((d.value() % m.p()) as i64, m.p()) != -1 {
            return Err(ArithError::ResidueRadicand(d.value()));
        }
        Ok(QuadExtElem { a: a.value(), b: b.value(), d: d.value(), m })
    }

    /// Embed a base-ring residue.
    pub fn from_base(a: Residue) -> Self {
        QuadExtElem { a: a.value(), b: 0, d: 0, m: a.modulus() }
    }

    /// ω itself, for a non-residue radicand d.
    pub fn generator(d: Residue) -> Result<Self, ArithError> {
        let m = d.modulus();
        QuadExtElem::new(m.zero(), m.one(), d)
    }

    pub fn a(&self) -> Residue {
        Residue::from_raw(self.a, self.m)
    }

    pub fn b(&self) -> Residue {
        Residue::from_raw(self.b, self.m)
    }

    pub fn d(&self) -> Residue {
        Residue::from_raw(self.d, self.m)
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn is_base(&self) -> bool {
        self.b == 0
    }

    pub fn conj(&self) -> Self {
        QuadExtElem { b: self.m.neg(self.b), ..*self }
    }

    /// a² − d·b².
    pub fn norm(&self) -> Residue {
        let m = self.m;
        let v = m.sub(m.mul(self.a, self.a), m.mul(self.d, m.mul(self.b, self.b)));
        Residue::from_raw(v, m)
    }

    fn radicand_with(&self, other: &Self) -> Result<u64, ArithError> {
        if self.m != other.m {
            return Err(ArithError::DomainMismatch);
        }
        match (self.b == 0, other.b == 0) {
            (true, true) => Ok(if self.d != 0 { self.d } else { other.d }),
            (false, true) => Ok(self.d),
            (true, false) => Ok(other.d),
            (false, false) if self.d == other.d => Ok(self.d),
            _ => Err(ArithError::DomainMismatch),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ArithError> {
        let d = self.radicand_with(o)?;
        let m = self.m;
        Ok(QuadExtElem { a: m.add(self.a, o.a), b: m.add(self.b, o.b), d, m })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ArithError> {
        let d = self.radicand_with(o)?;
        let m = self.m;
        Ok(QuadExtElem { a: m.sub(self.a, o.a), b: m.sub(self.b, o.b), d, m })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ArithError> {
        let d = self.radicand_with(o)?;
        let m = self.m;
        let bb = m.mul(m.mul(self.b, o.b), d);
        let a = m.add(m.mul(self.a, o.a), bb);
        let b = m.add(m.mul(self.a, o.b), m.mul(self.b, o.a));
        Ok(QuadExtElem { a, b, d, m })
    }
}

impl PartialEq for QuadExtElem {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m && self.a == o.a && self.b == o.b && (self.b == 0 || self.d == o.d)
    }
}

impl Eq for QuadExtElem {}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl Add for QuadExtElem {
    type Output = QuadExtElem;
    fn add(self, o: Self) -> Self {
        self.checked_add(&o).expect("quadratic extension operands are incompatible")
    }
}

impl Sub for QuadExtElem {
    type Output = QuadExtElem;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(&o).expect("quadratic extension operands are incompatible")
    }
}

impl Mul for QuadExtElem {
    type Output = QuadExtElem;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(&o).expect("quadratic extension operands are incompatible")
    }
}

impl Neg for QuadExtElem {
    type Output = QuadExtElem;
    fn neg(self) -> Self {
        QuadExtElem { a: self.m.neg(self.a), b: self.m.neg(self.b), ..self }
    }
}

impl Elem for QuadExtElem {
    fn modulus(&self) -> Modulus {
        self.m
    }

    fn lift(&self, v: i64) -> Self {
        QuadExtElem { a: self.m.reduce_i64(v), b: 0, d: self.d, m: self.m }
    }

    fn scale(&self, r: u64) -> Self {
        let m = self.m;
        let r = r % m.pe();
        QuadExtElem { a: m.mul(self.a, r), b: m.mul(self.b, r), ..*self }
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm().inv().map_err(|_| ArithError::NotInvertible { value: self.a, modulus: self.m.pe() })?;
        Ok(self.conj().scale(n.value()))
    }

    fn base_part(&self) -> Option<Residue> {
        if self.b == 0 {
            Some(self.a())
        } else {
            None
        }
    }
}

/// Checked field operation; fails with DomainMismatch for incompatible operands.
pub fn ext_arith(x: QuadExtElem, y: QuadExtElem, op: ExtOp) -> Result<QuadExtElem, ArithError> {
    match op {
        ExtOp::Add => x.checked_add(&y),
        ExtOp::Sub => x.checked_sub(&y),
        ExtOp::Mul => x.checked_mul(&y),
    }
}

/// A square root of `a` in the base ring when one exists, otherwise ω with
/// ω² = a. Over Z/p^eZ with e > 1 the radicand must be zero or a unit.
pub fn sqrt_in_ext(a: Residue) -> Result<QuadExtElem, ArithError> {
    let m = a.modulus();
    if a.is_zero() {
        return Ok(QuadExtElem::from_base(a));
    }
    if a.value().is_multiple_of(m.p()) {
        return Err(ArithError::NotInvertible { value: a.value(), modulus: m.pe() });
    }
    match sqrt_mod_pe(a) {
        Some(r) => Ok(QuadExtElem::from_base(r)),
        None => QuadExtElem::generator(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Modulus {
        Modulus::prime(7).unwrap()
    }

    fn el(a: i64, b: i64, d: i64, m: Modulus) -> QuadExtElem {
        QuadExtElem::new(m.residue(a), m.residue(b), m.residue(d)).unwrap()
    }

    #[test]
    fn identity_and_generator() {
        let m = f7();
        let z = el(2, 5, 3, m);
        assert_eq!(z * z.lift(1), z);
        let w = el(0, 1, 3, m);
        assert_eq!(w * w, QuadExtElem::from_base(m.residue(3)));
    }

    #[test]
    fn frobenius_example() {
        let m = f7();
        let z = el(1, 1, 3, m);
        assert_eq!(z.pow(7), el(1, 6, 3, m));
    }

    #[test]
    fn sqrt_in_ext_examples() {
        let m = f7();
        assert_eq!(sqrt_in_ext(m.residue(0)).unwrap(), QuadExtElem::from_base(m.zero()));
        assert_eq!(sqrt_in_ext(m.residue(2)).unwrap(), QuadExtElem::from_base(m.residue(3)));
        let w = sqrt_in_ext(m.residue(3)).unwrap();
        assert_eq!((w.a().value(), w.b().value(), w.d().value()), (0, 1, 3));
    }

    #[test]
    fn half_power_examples() {
        let m = f7();
        assert_eq!(crate::modular::half_power(QuadExtElem::from_base(m.one())), QuadExtElem::from_base(m.one()));
        assert_eq!(crate::modular::half_power(QuadExtElem::from_base(m.residue(3))).a().value(), 6);
        assert_eq!(crate::modular::half_power(el(0, 1, 3, m)), el(0, 3, 3, m));
    }

    #[test]
    fn mismatch_detected() {
        let m = f7();
        let x = el(1, 1, 3, m);
        let y = el(1, 1, 5, m);
        assert_eq!(ext_arith(x, y, ExtOp::Mul), Err(ArithError::DomainMismatch));
        let q = Modulus::prime(11).unwrap();
        let z = QuadExtElem::from_base(q.one());
        assert_eq!(ext_arith(x, z, ExtOp::Add), Err(ArithError::DomainMismatch));
    }

    #[test]
    fn residue_radicand_rejected() {
        let m = f7();
        assert_eq!(QuadExtElem::new(m.zero(), m.one(), m.residue(2)), Err(ArithError::ResidueRadicand(2)));
    }

    #[test]
    fn inverse_in_field() {
        let m = Modulus::prime(11).unwrap();
        let z = el(4, 9, 2, m);
        assert_eq!(z * z.inv().unwrap(), z.lift(1));
    }

    #[test]
    fn works_modulo_prime_square() {
        let m = Modulus::new(7, 2).unwrap();
        let w = sqrt_in_ext(m.residue(3)).unwrap();
        assert_eq!(w * w, w.lift(3));
        let r = sqrt_in_ext(m.residue(2)).unwrap();
        assert_eq!(r * r, r.lift(2));
    }
}
