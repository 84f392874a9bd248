use super::{Modulus, Residue};

/// Jacobi symbol (a/n) for odd n ≥ 1, by the binary reciprocity algorithm.
pub fn jacobi_symbol(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd denominator");
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre_symbol(a: i64, p: u64) -> i8 {
    jacobi_symbol(a, p)
}

/// Square root modulo p by Tonelli–Shanks, normalized to [0, (p−1)/2].
pub fn sqrt_mod_p(a: Residue) -> Option<Residue> {
    let m = a.modulus();
    assert_eq!(m.e(), 1, "sqrt_mod_p works over the prime field");
    let p = m.p();
    let a = a.value();
    if a == 0 {
        return Some(m.zero());
    }
    if jacobi_symbol(a as i64, p) != 1 {
        return None;
    }
    let r = tonelli_shanks(a, m);
    let r = r.min(p - r);
    Some(Residue::from_raw(r, m))
}

fn tonelli_shanks(a: u64, m: Modulus) -> u64 {
    let p = m.p();
    if p % 4 == 3 {
        return m.pow(a, (p + 1) / 4);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while jacobi_symbol(z as i64, p) != -1 {
        z += 1;
    }
    let mut c = m.pow(z, q);
    let mut x = m.pow(a, q.div_ceil(2));
    let mut t = m.pow(a, q);
    let mut k = s;
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = m.mul(t2, t2);
            i += 1;
        }
        let b = m.pow(c, 1 << (k - i - 1));
        x = m.mul(x, b);
        c = m.mul(b, b);
        t = m.mul(t, c);
        k = i;
    }
    x
}

/// Square root modulo p^e of zero or of a unit, lifted by Hensel's lemma and
/// normalized to [0, (p^e−1)/2]. Non-unit nonzero radicands give None.
pub fn sqrt_mod_pe(a: Residue) -> Option<Residue> {
    let m = a.modulus();
    if a.is_zero() {
        return Some(m.zero());
    }
    if a.value().is_multiple_of(m.p()) {
        return None;
    }
    let m1 = m.with_exponent(1).ok()?;
    let r0 = sqrt_mod_p(a.reduce_to(m1))?;
    let mut r = Residue::from_raw(r0.value(), m);
    for _ in 1..m.e() {
        // r ← r − (r² − a)/(2r)
        let two_r = (r + r).inv().ok()?;
        r = r - (r * r - a) * two_r;
    }
    let v = r.value().min(m.pe() - r.value());
    Some(Residue::from_raw(v, m))
}
