//! Exact integer and rational oracles: the convolution identity for the
//! binomial sums, its three-term recurrence and both WZ certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Σ_k C(2k,k)²C(3k,k)C(k,m−k)(−27)^{m−k}
    Left,
    /// Σ_k A(k)A(m−k) with A(k) = C(2k,k)C(3k,k)
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// C(n, k); zero outside 0 ≤ k ≤ n.
pub fn exact_binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

/// C(2k,k)C(3k,k) for k = 0..=n by the ratio 3(3k+1)(3k+2)/(k+1)².
pub fn pair_terms(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a = BigInt::one();
    out.push(a.clone());
    for k in 0..n as i64 {
        a = a * big(3 * (3 * k + 1) * (3 * k + 2)) / big((k + 1) * (k + 1));
        out.push(a.clone());
    }
    out
}

/// The summand F(m, k) of the chosen side; zero off its support.
pub fn summand(side: Side, m: i64, k: i64) -> BigInt {
    if k < 0 || k > m {
        return BigInt::zero();
    }
    match side {
        Side::Left => {
            let r = m - k;
            if r > k {
                return BigInt::zero();
            }
            let c = exact_binom(2 * k, k);
            c.clone() * c * exact_binom(3 * k, k) * exact_binom(k, r) * big(-27).pow(r as u32)
        }
        Side::Right => {
            let a = |j: i64| exact_binom(2 * j, j) * exact_binom(3 * j, j);
            a(k) * a(m - k)
        }
    }
}

/// The exact value of one side at m.
///
/// The left side runs over k ≥ ⌈m/2⌉ with term ratio
/// 6(2k+1)(3k+1)(3k+2)/(k+1)³ · (k+1)(m−k)/((2k−m+1)(2k−m+2)) · (−1/27).
pub fn lemma21_side(m: u64, side: Side) -> BigInt {
    let m = m as i64;
    match side {
        Side::Left => {
            let k0 = (m + 1) / 2;
            let mut term = summand(Side::Left, m, k0);
            let mut acc = term.clone();
            for k in k0..m {
                let num = big(6 * (2 * k + 1) * (3 * k + 1) * (3 * k + 2)) * big(m - k);
                let den = big((k + 1) * (k + 1)) * big((2 * k - m + 1) * (2 * k - m + 2)) * big(-27);
                term = term * num / den;
                acc += &term;
            }
            acc
        }
        Side::Right => {
            let a = pair_terms(m as usize);
            (0..=m as usize).map(|k| &a[k] * &a[m as usize - k]).sum()
        }
    }
}

/// Values of one side for m = 0..=upto.
pub fn lemma21_values(upto: u64, side: Side) -> Vec<BigInt> {
    (0..=upto).map(|m| lemma21_side(m, side)).collect()
}

pub fn rec_a(m: i64) -> BigInt {
    big(81 * (m + 1) * (3 * m + 2) * (3 * m + 4))
}

pub fn rec_b(m: i64) -> BigInt {
    big(-3 * (2 * m + 3) * (9 * m * m + 27 * m + 22))
}

pub fn rec_c(m: i64) -> BigInt {
    big((m + 2).pow(3))
}

/// a(m)S(m) + b(m)S(m+1) + c(m)S(m+2).
pub fn recurrence_residual(m: u64, s0: &BigInt, s1: &BigInt, s2: &BigInt) -> BigInt {
    let m = m as i64;
    rec_a(m) * s0 + rec_b(m) * s1 + rec_c(m) * s2
}

pub fn check_recurrence(side: Side, m: u64) -> bool {
    let s: Vec<BigInt> = (m..=m + 2).map(|j| lemma21_side(j, side)).collect();
    recurrence_residual(m, &s[0], &s[1], &s[2]).is_zero()
}

/// The certificate R(m, k), or None at a pole.
pub fn certificate(side: Side, m: i64, k: i64) -> Option<BigRational> {
    let (d1, d2) = (m - k + 1, m - k + 2);
    if d1 == 0 || d2 == 0 {
        return None;
    }
    let k2 = k * k;
    Some(match side {
        Side::Left => rat(
            big(-729 * k2) * big(m + 2) * big(m - 2 * k) * big(m - 2 * k + 1),
            big(d1 * d2),
        ),
        Side::Right => rat(
            big(9 * k2) * big(3 * m - 3 * k + 1) * big(3 * m - 3 * k + 2) * big(9 * m * m - 9 * m * k + 30 * m - 14 * k + 24),
            big(d1 * d1) * big(d2 * d2),
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WzOutcome {
    pub holds: bool,
    pub checked: Vec<u64>,
    /// k where R(m,k) or R(m,k+1) has a pole.
    pub poles: Vec<u64>,
    pub first_failure: Option<u64>,
}

/// a(m)F(m,k) + b(m)F(m+1,k) + c(m)F(m+2,k) = G(m,k+1) − G(m,k) with
/// G = R·F, at every k in range away from poles.
pub fn check_wz_certificate(side: Side, m: u64, ks: std::ops::RangeInclusive<u64>) -> WzOutcome {
    let mi = m as i64;
    let mut out = WzOutcome { holds: true, checked: vec![], poles: vec![], first_failure: None };
    for k in ks {
        let ki = k as i64;
        let (Some(r0), Some(r1)) = (certificate(side, mi, ki), certificate(side, mi, ki + 1)) else {
            out.poles.push(k);
            continue;
        };
        let lhs = rec_a(mi) * summand(side, mi, ki) + rec_b(mi) * summand(side, mi + 1, ki) + rec_c(mi) * summand(side, mi + 2, ki);
        let g1 = r1 * BigRational::from_integer(summand(side, mi, ki + 1));
        let g0 = r0 * BigRational::from_integer(summand(side, mi, ki));
        out.checked.push(k);
        if BigRational::from_integer(lhs) != g1 - g0 {
            out.holds = false;
            out.first_failure.get_or_insert(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(exact_binom(9, 0), big(1));
        assert_eq!(exact_binom(6, 3), big(20));
        assert_eq!(exact_binom(12, 4), big(495));
        assert_eq!(exact_binom(3, 5), big(0));
    }

    #[test]
    fn side_values() {
        let expect = [1, 12, 216, 4440, 97560, 2231712];
        for (m, &v) in expect.iter().enumerate() {
            assert_eq!(lemma21_side(m as u64, Side::Left), big(v), "left m={m}");
            assert_eq!(lemma21_side(m as u64, Side::Right), big(v), "right m={m}");
        }
    }

    #[test]
    fn left_ratio_matches_direct_sum() {
        for m in 0..40i64 {
            let direct: BigInt = (0..=m).map(|k| summand(Side::Left, m, k)).sum();
            assert_eq!(lemma21_side(m as u64, Side::Left), direct);
        }
    }

    #[test]
    fn recurrence_at_zero() {
        assert_eq!(recurrence_residual(0, &big(1), &big(12), &big(216)), big(0));
        assert!(check_recurrence(Side::Left, 0));
        assert!(check_recurrence(Side::Right, 7));
    }

    #[test]
    fn certificate_point() {
        let w = check_wz_certificate(Side::Left, 3, 1..=1);
        assert!(w.holds);
        assert_eq!(w.checked, vec![1]);
    }

    #[test]
    fn certificates_hold_off_poles() {
        for side in [Side::Left, Side::Right] {
            for m in 0..15u64 {
                let w = check_wz_certificate(side, m, 0..=m + 2);
                assert!(w.holds, "{side} m={m}");
                assert_eq!(w.poles, vec![m, m + 1, m + 2]);
            }
        }
    }
}
