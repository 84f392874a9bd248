//! Binomial coefficients modulo p^e with their p-adic valuation tracked,
//! and the binomial sums built from them.

use crate::context::PrimeCtx;
use crate::modular::{ArithError, Elem, Modulus, Residue};

/// p^val · unit with p ∤ unit.
///
/// The unit is kept exactly even when val ≥ e so that quotients stay
/// correct; [`PUnit::normalized`] gives the (val, 1) display form and
/// [`PUnit::reconstruct`] maps such values to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PUnit {
    val: u32,
    unit: Residue,
}

impl PUnit {
    pub fn one(m: Modulus) -> Self {
        PUnit { val: 0, unit: m.one() }
    }

    /// Factor a positive integer.
    pub fn from_int(mut n: u64, m: Modulus) -> Self {
        assert!(n > 0, "zero has no p-adic unit part");
        let mut val = 0;
        while n.is_multiple_of(m.p()) {
            n /= m.p();
            val += 1;
        }
        PUnit { val, unit: Residue::from_raw(n, m) }
    }

    pub fn val(&self) -> u32 {
        self.val
    }

    pub fn unit(&self) -> Residue {
        self.unit
    }

    pub fn mul(&self, o: &PUnit) -> PUnit {
        PUnit { val: self.val + o.val, unit: self.unit * o.unit }
    }

    /// Exact quotient; None when the divisor carries more powers of p.
    pub fn div(&self, o: &PUnit) -> Option<PUnit> {
        let val = self.val.checked_sub(o.val)?;
        let inv = o.unit.inv().expect("p-adic units are invertible");
        Some(PUnit { val, unit: self.unit * inv })
    }

    /// The represented value modulo p^e.
    pub fn reconstruct(&self) -> Residue {
        let m = self.unit.modulus();
        if self.val >= m.e() {
            m.zero()
        } else {
            self.unit * m.residue(m.p().pow(self.val) as i64)
        }
    }

    /// (val, 1) once the value vanishes modulo p^e, unchanged otherwise.
    pub fn normalized(&self) -> PUnit {
        let m = self.unit.modulus();
        if self.val >= m.e() {
            PUnit { val: self.val, unit: m.one() }
        } else {
            *self
        }
    }
}

/// n! as p^val · unit. The sums only need n ≤ 3(p−1), but any n works.
pub fn factorial_punit(n: u64, m: Modulus) -> PUnit {
    let p = m.p();
    let mut unit = 1u64;
    let mut val = 0;
    for i in 1..=n {
        let mut j = i;
        while j % p == 0 {
            j /= p;
            val += 1;
        }
        unit = m.mul(unit, j % m.pe());
    }
    PUnit { val, unit: Residue::from_raw(unit, m) }
}

/// C(n, k) as p^val · unit, for 0 ≤ k ≤ n.
pub fn binom_punit(n: u64, k: u64, m: Modulus) -> PUnit {
    assert!(k <= n, "binom_punit needs k ≤ n");
    let num = factorial_punit(n, m);
    let den = factorial_punit(k, m).mul(&factorial_punit(n - k, m));
    num.div(&den).expect("binomial coefficients are integers")
}

/// Batch inverses of 1..n modulo p^e, n < p.
fn inverses_upto(n: u64, m: Modulus) -> Vec<u64> {
    let mut prefix = vec![1u64; n as usize + 1];
    for i in 1..=n as usize {
        prefix[i] = m.mul(prefix[i - 1], i as u64);
    }
    let mut inv = vec![0u64; n as usize + 1];
    let mut running = m.inv(prefix[n as usize]).expect("1..n are units when n < p");
    for i in (1..=n as usize).rev() {
        inv[i] = m.mul(running, prefix[i - 1]);
        running = m.mul(running, i as u64);
    }
    inv
}

/// C(2k,k)²C(3k,k) and C(2k,k)C(3k,k) modulo p^e for 0 ≤ k < p, built by
/// term ratios with valuations carried separately.
pub fn central_tables(m: Modulus) -> crate::context::CentralTables {
    let p = m.p();
    let n = p as usize;
    let inv = inverses_upto(p - 1, m);
    let mut squared = vec![0u64; n];
    let mut pair = vec![0u64; n];
    let (mut sq, mut pr) = (PUnit::one(m), PUnit::one(m));
    squared[0] = 1;
    pair[0] = 1;
    for k in 0..n - 1 {
        let kk = k as u64;
        let f1 = PUnit::from_int(3 * kk + 1, m);
        let f2 = PUnit::from_int(3 * kk + 2, m);
        let f3 = PUnit::from_int(2 * kk + 1, m);
        let ik = inv[k + 1];
        let ik2 = m.mul(ik, ik);
        let step = f1.mul(&f2);
        // C(2k,k)C(3k,k) ratio: 3(3k+1)(3k+2)/(k+1)²
        pr = pr.mul(&step);
        pr.unit = pr.unit * Residue::from_raw(m.mul(3, ik2), m);
        // C(2k,k)²C(3k,k) ratio: 6(2k+1)(3k+1)(3k+2)/(k+1)³
        sq = sq.mul(&step).mul(&f3);
        sq.unit = sq.unit * Residue::from_raw(m.mul(6, m.mul(ik2, ik)), m);
        squared[k + 1] = sq.reconstruct().value();
        pair[k + 1] = pr.reconstruct().value();
    }
    crate::context::CentralTables { squared, pair }
}

/// Σ_{k<len} coeffs[k]·x^k by Horner's rule.
pub fn horner<E: Elem>(coeffs: &[u64], x: E) -> E {
    let one = x.lift(1);
    let mut acc = x.lift(0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + one.scale(c);
    }
    acc
}

/// Σ_{k<len} (a·k + b)·coeffs[k]·x^k.
fn horner_weighted(coeffs: &[u64], a: i64, b: i64, x: Residue) -> Residue {
    let m = x.modulus();
    let mut acc = m.zero();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        let w = m.reduce_i128(a as i128 * k as i128 + b as i128);
        acc = acc * x + Residue::from_raw(m.mul(w, c), m);
    }
    acc
}

fn inverse_of(m_val: i64, md: Modulus) -> Result<Residue, ArithError> {
    md.residue(m_val).inv()
}

/// Σ_{k=0}^{p−1} C(2k,k)²C(3k,k)·m^{−k} modulo p^e.
pub fn sum_central(m_val: i64, md: Modulus) -> Result<Residue, ArithError> {
    let y = inverse_of(m_val, md)?;
    Ok(horner(&central_tables(md).squared, y))
}

/// Σ_{k=0}^{p−1} (a·k + b)·C(2k,k)²C(3k,k)·m^{−k} modulo p^e.
pub fn sum_central_weighted(a: i64, b: i64, m_val: i64, md: Modulus) -> Result<Residue, ArithError> {
    let y = inverse_of(m_val, md)?;
    Ok(horner_weighted(&central_tables(md).squared, a, b, y))
}

/// Σ_{k=0}^{p−1} C(2k,k)C(3k,k)·x^k over Z/p^eZ or an extension of it.
pub fn sum_pair<E: Elem>(x: E) -> E {
    horner(&central_tables(x.modulus()).pair, x)
}

/// Whether Σ C(2k,k)²C(3k,k)(x(1−27x))^k ≡ (Σ C(2k,k)C(3k,k)x^k)² mod p².
pub fn check_thm21(x: Residue) -> bool {
    let md = x.modulus();
    assert_eq!(md.e(), 2, "the identity is stated modulo p²");
    let t = central_tables(md);
    let y = x * (md.one() - md.residue(27) * x);
    let rhs = horner(&t.pair, x);
    horner(&t.squared, y) == rhs * rhs
}

impl PrimeCtx {
    pub fn sum_central(&self, m_val: i64, e: u32) -> Result<Residue, ArithError> {
        let md = self.modulus(e)?;
        let y = inverse_of(m_val, md)?;
        Ok(horner(&self.tables(e)?.squared, y))
    }

    pub fn sum_central_weighted(&self, a: i64, b: i64, m_val: i64, e: u32) -> Result<Residue, ArithError> {
        let md = self.modulus(e)?;
        let y = inverse_of(m_val, md)?;
        Ok(horner_weighted(&self.tables(e)?.squared, a, b, y))
    }

    /// Σ_{k=0}^{upto} C(2k,k)C(3k,k)·x^k, with `upto` < p.
    pub fn sum_pair<E: Elem>(&self, x: E, upto: u64) -> Result<E, ArithError> {
        let t = self.tables(x.modulus().e())?;
        Ok(horner(&t.pair[..=upto as usize], x))
    }

    /// Σ_{k=0}^{p−1} C(2k,k)²C(3k,k)·y^k (no inversion of y).
    pub fn sum_squared_at<E: Elem>(&self, y: E) -> Result<E, ArithError> {
        Ok(horner(&self.tables(y.modulus().e())?.squared, y))
    }

    pub fn check_thm21(&self, x: Residue) -> Result<bool, ArithError> {
        let md = self.modulus(2)?;
        let t = self.tables(2)?;
        let x = Residue::from_raw(x.value(), md);
        let y = x * (md.one() - md.residue(27) * x);
        let rhs = horner(&t.pair, x);
        Ok(horner(&t.squared, y) == rhs * rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(p: u64, e: u32) -> Modulus {
        Modulus::new(p, e).unwrap()
    }

    #[test]
    fn factorial_examples() {
        let m = md(5, 2);
        assert_eq!(factorial_punit(0, m), PUnit::one(m));
        let f = factorial_punit(5, m);
        assert_eq!((f.val(), f.unit().value()), (1, 24));
        let m = md(7, 2);
        let f = factorial_punit(10, m);
        assert_eq!((f.val(), f.unit().value()), (1, (3_628_800 / 7) % 49));
    }

    #[test]
    fn binomial_examples() {
        let m = md(5, 2);
        let c = binom_punit(6, 3, m);
        assert_eq!((c.val(), c.unit().value()), (1, 4));
        let c = binom_punit(7, 0, m);
        assert_eq!((c.val(), c.unit().value()), (0, 1));
        let c = binom_punit(10, 5, md(7, 2));
        assert_eq!((c.val(), c.unit().value()), (1, 36));
    }

    #[test]
    fn vanishing_value_normalizes() {
        let m = md(5, 1);
        let c = binom_punit(8, 4, m);
        assert_eq!(c.val(), 1);
        assert_eq!(c.reconstruct().value(), 0);
        assert_eq!(c.normalized().unit().value(), 1);
    }

    #[test]
    fn central_sum_examples() {
        assert_eq!(sum_central(8, md(11, 1)).unwrap().value(), 3);
        assert_eq!(sum_central(8, md(5, 2)).unwrap().value(), 0);
        assert_eq!(sum_central(64, md(7, 2)).unwrap().value(), 0);
        assert!(sum_central(14, md(7, 1)).is_err());
    }

    #[test]
    fn weighted_sum_examples() {
        let m = md(7, 3);
        assert_eq!(sum_central_weighted(9, 1, -8640, m).unwrap().value(), 336);
        assert_eq!(sum_central_weighted(15, 2, 1458, m).unwrap().value(), 329);
        assert_eq!(sum_central_weighted(0, 1, 8, m).unwrap(), sum_central(8, m).unwrap());
    }

    #[test]
    fn pair_sum_examples() {
        let m = md(5, 1);
        assert_eq!(sum_pair(m.zero()).value(), 1);
        assert_eq!(sum_pair(m.one()).value(), 2);
    }

    #[test]
    fn square_identity_small() {
        let m = md(7, 2);
        assert!(check_thm21(m.zero()));
        assert!(check_thm21(m.residue(3)));
        let ctx = PrimeCtx::new(7).unwrap();
        assert!(ctx.check_thm21(m.residue(3)).unwrap());
    }
}
