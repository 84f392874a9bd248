//! Legendre, Deuring and Jacobi polynomials evaluated modulo p.

use crate::context::PrimeCtx;
use crate::modular::{legendre_symbol, Elem, Residue};

/// How [`legendre_poly_with`] evaluates P_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegendreMethod {
    /// The explicit finite sum, Horner in t².
    ExplicitSum,
    /// (k+1)P_{k+1} = (2k+1)tP_k − kP_{k−1}; needs n < p.
    Recurrence,
}

/// c_k = C(n,k)(−1)^k C(2n−2k, n) mod p for k = 0..=[n/2].
pub fn legendre_coeffs(ctx: &PrimeCtx, n: u64) -> Vec<u64> {
    let m = ctx.field();
    (0..=n / 2)
        .map(|k| {
            let c = m.mul(ctx.binom_mod_p(n, k), ctx.binom_mod_p(2 * n - 2 * k, n));
            if k % 2 == 1 {
                m.neg(c)
            } else {
                c
            }
        })
        .collect()
}

fn explicit_sum<E: Elem>(ctx: &PrimeCtx, n: u64, coeffs: &[u64], t: E) -> E {
    let m = ctx.field();
    let s = t * t;
    let one = t.lift(1);
    let mut acc = t.lift(0);
    for &c in coeffs {
        acc = acc * s + one.scale(c);
    }
    if n % 2 == 1 {
        acc = acc * t;
    }
    let half_n = m.pow(m.inv(2).expect("p is odd"), n);
    acc.scale(half_n)
}

/// P_n(t) mod p by the explicit sum.
pub fn legendre_poly<E: Elem>(ctx: &PrimeCtx, n: u64, t: E) -> E {
    legendre_poly_with(ctx, n, t, LegendreMethod::ExplicitSum)
}

pub fn legendre_poly_with<E: Elem>(ctx: &PrimeCtx, n: u64, t: E, method: LegendreMethod) -> E {
    match method {
        LegendreMethod::ExplicitSum => {
            if n == ctx.p() / 3 {
                explicit_sum(ctx, n, ctx.third_degree_coeffs(), t)
            } else {
                explicit_sum(ctx, n, &legendre_coeffs(ctx, n), t)
            }
        }
        LegendreMethod::Recurrence => {
            assert!(n < ctx.p(), "the three-term recurrence divides by k+1 ≤ n");
            let (mut prev, mut cur) = (t.lift(1), t);
            if n == 0 {
                return prev;
            }
            for k in 1..n {
                let next = (t * cur).scale(2 * k + 1) - prev.scale(k);
                prev = cur;
                cur = next.scale(ctx.inv_small(k + 1));
            }
            cur
        }
    }
}

/// P_{[p/3]}(t), the polynomial appearing in every check.
pub fn legendre_third<E: Elem>(ctx: &PrimeCtx, t: E) -> E {
    legendre_poly(ctx, ctx.p() / 3, t)
}

/// W_n(x) = Σ C(n,k)² x^k mod p.
pub fn deuring_poly<E: Elem>(ctx: &PrimeCtx, n: u64, x: E) -> E {
    let m = ctx.field();
    let one = x.lift(1);
    let mut acc = x.lift(0);
    for k in (0..=n).rev() {
        let c = ctx.binom_mod_p(n, k);
        acc = acc * x + one.scale(m.mul(c, c));
    }
    acc
}

/// α(α−1)…(α−r+1)/r! mod p for 0 ≤ r < p.
pub fn gen_binom(ctx: &PrimeCtx, alpha: Residue, r: u64) -> Residue {
    let m = ctx.field();
    assert!(r < m.p(), "r! must be invertible");
    let mut acc = m.one();
    for i in 0..r {
        acc = acc * (alpha - m.residue(i as i64));
    }
    acc * Residue::from_raw(ctx.inv_factorial(r), m)
}

/// C(a, r) for r = 0..=k.
fn gen_binom_row(ctx: &PrimeCtx, a: Residue, k: u64) -> Vec<Residue> {
    let m = ctx.field();
    let mut row = Vec::with_capacity(k as usize + 1);
    let mut c = m.one();
    row.push(c);
    for r in 0..k {
        c = c * (a - m.residue(r as i64)) * Residue::from_raw(ctx.inv_small(r + 1), m);
        row.push(c);
    }
    row
}

/// P_k^{(α,β)}(x) = 2^{−k} Σ_r C(k+α, r) C(k+β, k−r) (x−1)^{k−r} (x+1)^r mod p.
pub fn jacobi_pk(ctx: &PrimeCtx, k: u64, alpha: Residue, beta: Residue, x: Residue) -> Residue {
    let m = ctx.field();
    assert!(k < m.p(), "degree must be below p");
    let kk = m.residue(k as i64);
    let ca = gen_binom_row(ctx, kk + alpha, k);
    let cb = gen_binom_row(ctx, kk + beta, k);
    let (xm, xp) = (x - m.one(), x + m.one());
    let mut pow_m = vec![m.one(); k as usize + 1];
    let mut pow_p = vec![m.one(); k as usize + 1];
    for i in 1..=k as usize {
        pow_m[i] = pow_m[i - 1] * xm;
        pow_p[i] = pow_p[i - 1] * xp;
    }
    let mut acc = m.zero();
    for r in 0..=k as usize {
        let j = k as usize - r;
        acc = acc + ca[r] * cb[j] * pow_m[j] * pow_p[r];
    }
    acc * m.residue(2).inv().expect("p is odd").pow(k)
}

/// J_p(t) = 1728^{[p/12]} P_{[p/12]}^{(α,β)}(1 − t/864),
/// α = −(p/3)/3, β = −(−1/p)/2.
pub fn jacobi_jp(ctx: &PrimeCtx, t: Residue) -> Residue {
    let m = ctx.field();
    let p = m.p();
    let k = p / 12;
    let inv = |d: i64| m.residue(d).inv().expect("p > 3");
    let alpha = m.residue(-(legendre_symbol(p as i64, 3) as i64)) * inv(3);
    let beta = m.residue(-(legendre_symbol(-1, p) as i64)) * inv(2);
    let x = m.one() - t * inv(864);
    m.residue(1728).pow(k) * jacobi_pk(ctx, k, alpha, beta, x)
}

/// The correction factor in the Deuring–Jacobi congruence, by p mod 12.
pub fn u_p(ctx: &PrimeCtx, x: Residue) -> Residue {
    let m = ctx.field();
    let lin = m.residue(-3) * (x - m.residue(24));
    let quad = x * x - m.residue(36) * x + m.residue(216);
    match ctx.p() % 12 {
        1 => m.one(),
        5 => lin,
        7 => quad,
        _ => lin * quad,
    }
}

fn inv54<E: Elem>(t: E) -> u64 {
    t.modulus().inv(54).expect("p > 3")
}

/// Σ_{k=0}^{[p/3]} C(2k,k)C(3k,k)((1−t)/54)^k.
pub fn truncated_sum_13<E: Elem>(ctx: &PrimeCtx, t: E) -> E {
    let x = (t.lift(1) - t).scale(inv54(t));
    ctx.sum_pair(x, ctx.p() / 3).expect("e = 1 tables are always available")
}

/// The same sum carried to k = p − 1.
pub fn full_sum_13<E: Elem>(ctx: &PrimeCtx, t: E) -> E {
    let x = (t.lift(1) - t).scale(inv54(t));
    ctx.sum_pair(x, ctx.p() - 1).expect("e = 1 tables are always available")
}
