//! Cubic character sums, half-power sums and point counts for
//! y² = x³ + mx + n, plus the congruences built on them.

use thiserror::Error;

use crate::context::PrimeCtx;
use crate::modular::{half_power, legendre_symbol, Elem, Residue};
use crate::poly::{deuring_poly, jacobi_jp, legendre_third, u_p};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular cubic: 4m³+27n² ≡ 0 mod {0}")]
    Singular(u64),
    #[error("coefficients are not in the prime field")]
    NotPrimeField,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

/// x³ + m·x + n over F_p or a quadratic extension of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCurve<E> {
    pub m: E,
    pub n: E,
}

impl<E: Elem> CubicCurve<E> {
    pub fn new(m: E, n: E) -> Self {
        assert_eq!(m.modulus(), n.modulus(), "coefficients from different rings");
        assert_eq!(m.modulus().e(), 1, "curves live over the prime field");
        CubicCurve { m, n }
    }

    pub fn p(&self) -> u64 {
        self.m.modulus().p()
    }

    /// 4m³ + 27n².
    pub fn discriminant(&self) -> E {
        (self.m * self.m * self.m).scale(4) + (self.n * self.n).scale(27)
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn eval(&self, x: E) -> E {
        (x * x + self.m) * x + self.n
    }

    /// Both coefficients as raw prime-field residues, if they are.
    pub fn prime_coeffs(&self) -> Option<(u64, u64)> {
        Some((self.m.base_part()?.value(), self.n.base_part()?.value()))
    }
}

/// Σ_x (x³+mx+n / p) as an exact integer, using the context's χ table.
///
/// f is stepped by finite differences: f(0) = n, Δf(0) = m+1, Δ²f(x) = 6x+6.
pub fn char_sum_raw(ctx: &PrimeCtx, m: u64, n: u64) -> i64 {
    let f = ctx.field();
    let chi = ctx.chi_table();
    let (mut val, mut d1, mut d2) = (n % f.p(), f.add(m % f.p(), 1), 6 % f.p());
    let six = d2;
    let mut acc = 0i64;
    for _ in 0..f.p() {
        acc += chi[val as usize] as i64;
        val = f.add(val, d1);
        d1 = f.add(d1, d2);
        d2 = f.add(d2, six);
    }
    acc
}

/// Exact character sum for a prime-field curve.
pub fn char_sum_cubic<E: Elem>(ctx: &PrimeCtx, c: &CubicCurve<E>) -> Result<i64, CurveError> {
    let (m, n) = c.prime_coeffs().ok_or(CurveError::NotPrimeField)?;
    Ok(char_sum_raw(ctx, m, n))
}

/// Σ_x f(x)^((p−1)/2) in the coefficients' ring. Prime-field curves take
/// the χ-table path; others power each term.
pub fn half_power_sum<E: Elem>(ctx: &PrimeCtx, c: &CubicCurve<E>) -> E {
    match c.prime_coeffs() {
        Some((m, n)) => c.m.lift(char_sum_raw(ctx, m, n)),
        None => half_power_sum_direct(c),
    }
}

/// Σ_x f(x)^((p−1)/2) by powering every term.
pub fn half_power_sum_direct<E: Elem>(c: &CubicCurve<E>) -> E {
    let mut acc = c.m.lift(0);
    let mut x = c.m.lift(0);
    let one = c.m.lift(1);
    for _ in 0..c.p() {
        acc = acc + half_power(c.eval(x));
        x = x + one;
    }
    acc
}

/// #E(F_p) = p + 1 + Σ χ(f(x)).
pub fn point_count<E: Elem>(ctx: &PrimeCtx, c: &CubicCurve<E>) -> Result<i64, CurveError> {
    Ok(c.p() as i64 + 1 + char_sum_cubic(ctx, c)?)
}

/// Affine solutions of y² = f(x) counted pair by pair, plus the point at infinity.
pub fn naive_point_count(c: &CubicCurve<Residue>) -> u64 {
    let m = c.m.modulus();
    let p = m.p();
    let mut count = 1;
    for x in 0..p {
        let fx = c.eval(m.residue(x as i64)).value();
        for y in 0..p {
            if m.mul(y, y) == fx {
                count += 1;
            }
        }
    }
    count
}

/// Shorthand for the curve with integer coefficients reduced mod p.
pub fn curve(ctx: &PrimeCtx, m: i64, n: i64) -> CubicCurve<Residue> {
    CubicCurve::new(ctx.residue(m), ctx.residue(n))
}

/// The curve attached to t: m = 3(4t−5), n = 2(2t²−14t+11).
pub fn t_curve<E: Elem>(t: E) -> CubicCurve<E> {
    let m = (t.scale(4) - t.lift(5)).scale(3);
    let n = ((t * t).scale(2) - t.scale(14) + t.lift(11)).scale(2);
    CubicCurve::new(m, n)
}

/// The mirrored curve: m = −3(4t+5), n = 2(2t²+14t+11).
pub fn t_curve_mirror<E: Elem>(t: E) -> CubicCurve<E> {
    let m = -(t.scale(4) + t.lift(5)).scale(3);
    let n = ((t * t).scale(2) + t.scale(14) + t.lift(11)).scale(2);
    CubicCurve::new(m, n)
}

/// Scaling by a: both the half-power congruence and, for p ∤ a, the exact
/// symbol identity Σχ(x³+a²mx+a³n) = (a/p)Σχ(x³+mx+n).
pub fn check_scaling_lemma41(ctx: &PrimeCtx, a: Residue, m: Residue, n: Residue) -> bool {
    let scaled = CubicCurve::new(a * a * m, a * a * a * n);
    let plain = CubicCurve::new(m, n);
    let lhs = half_power_sum(ctx, &scaled);
    let rhs = half_power(a) * half_power_sum(ctx, &plain);
    if lhs != rhs {
        return false;
    }
    let s_scaled = char_sum_raw(ctx, scaled.m.value(), scaled.n.value());
    let s_plain = char_sum_raw(ctx, m.value(), n.value());
    s_scaled == ctx.chi(a.value()) as i64 * s_plain
}

/// The half-power scaling congruence with coefficients in an extension.
pub fn check_scaling_ext<E: Elem>(a: E, m: E, n: E) -> bool {
    let scaled = CubicCurve::new(a * a * m, a * a * a * n);
    half_power_sum_direct(&scaled) == half_power(a) * half_power_sum_direct(&CubicCurve::new(m, n))
}

/// P_{[p/3]}(t) ≡ −(p/3)·Σχ(t-curve) mod p.
pub fn check_thm31(ctx: &PrimeCtx, t: Residue) -> bool {
    let s = char_sum_cubic(ctx, &t_curve(t)).expect("prime-field curve");
    let sign = -(legendre_symbol(ctx.p() as i64, 3) as i64);
    legendre_third(ctx, t) == ctx.residue(sign * s)
}

/// Σχ(t-curve) = (p/3)·Σχ(mirror curve) as integers, for p ≥ 17.
pub fn check_cor32(ctx: &PrimeCtx, t: Residue) -> Result<bool, CurveError> {
    if ctx.p() < 17 {
        return Err(CurveError::Precondition("exact equality needs p ≥ 17"));
    }
    let a = char_sum_cubic(ctx, &t_curve(t))?;
    let b = char_sum_cubic(ctx, &t_curve_mirror(t))?;
    Ok(a == legendre_symbol(ctx.p() as i64, 3) as i64 * b)
}

/// |Σχ(f)| ≤ 2√p, tested as S² ≤ 4p.
pub fn check_weil(ctx: &PrimeCtx, c: &CubicCurve<Residue>) -> Result<bool, CurveError> {
    if c.is_singular() {
        return Err(CurveError::Singular(c.p()));
    }
    let s = char_sum_cubic(ctx, c)?;
    Ok((s * s) as u64 <= 4 * c.p())
}

/// Right side of Morton's congruence for Σχ(x³+mx+n) mod p.
pub fn morton_rhs(ctx: &PrimeCtx, m: Residue, n: Residue) -> Result<Residue, CurveError> {
    let f = ctx.field();
    let p = f.p();
    let disc = CubicCurve::new(m, n).discriminant();
    if disc.is_zero() {
        return Err(CurveError::Singular(p));
    }
    let mut rhs = f.residue(-1);
    if legendre_symbol(p as i64, 3) == -1 {
        if m.is_zero() {
            return Err(CurveError::Precondition("p ∤ m when (p/3) = −1"));
        }
        rhs = rhs * f.residue(-48) * m;
    }
    if legendre_symbol(-1, p) == -1 {
        if n.is_zero() {
            return Err(CurveError::Precondition("p ∤ n when (−1/p) = −1"));
        }
        rhs = rhs * f.residue(864) * n;
    }
    rhs = rhs * (f.residue(-16) * disc).pow(p / 12);
    let arg = f.residue(256 * 27) * m * m * m * disc.inv().expect("nonzero mod p");
    Ok(rhs * jacobi_jp(ctx, arg))
}

/// Σχ(x³+mx+n) ≡ morton_rhs(m, n) mod p.
pub fn check_morton33(ctx: &PrimeCtx, m: Residue, n: Residue) -> Result<bool, CurveError> {
    let rhs = morton_rhs(ctx, m, n)?;
    let s = char_sum_raw(ctx, m.value(), n.value());
    Ok(ctx.residue(s) == rhs)
}

/// W_{[p/3]}(1 − x/27) ≡ u_p(x)(x−27)^{[p/12]} J_p(x(x−24)³/(x−27)) mod p.
pub fn check_bm6(ctx: &PrimeCtx, x: Residue) -> Result<bool, CurveError> {
    let f = ctx.field();
    let p = f.p();
    let shifted = x - f.residue(27);
    let inv = shifted.inv().map_err(|_| CurveError::Precondition("x ≢ 27 mod p"))?;
    let lhs = deuring_poly(ctx, p / 3, f.one() - x * f.residue(27).inv().expect("p > 3"));
    let y = x - f.residue(24);
    let rhs = u_p(ctx, x) * shifted.pow(p / 12) * jacobi_jp(ctx, x * y * y * y * inv);
    Ok(lhs == rhs)
}
