//! Property suites over ranges of primes, each reporting how many cases it
//! checked and the first violation it met.

use congruence_core::binomial::binom_punit;
use congruence_core::curve::{check_weil, naive_point_count, point_count, CubicCurve};
use congruence_core::exact::exact_binom;
use congruence_core::modular::{half_power, jacobi_symbol, legendre_symbol, sqrt_in_ext, sqrt_mod_p, sqrt_mod_pe, Elem, QuadExtElem};
use congruence_core::poly::{deuring_poly, legendre_poly, legendre_third};
use congruence_core::primes::primes_in;
use congruence_core::quadform::{cornacchia, represent_exhaustive, Scale};
use congruence_core::{Modulus, PrimeCtx};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl PropertyResult {
    pub fn ok(&self) -> bool {
        self.violations == 0 && self.checked > 0
    }
}

struct Counter {
    res: PropertyResult,
}

impl Counter {
    fn new(name: &'static str) -> Self {
        Counter { res: PropertyResult { name, checked: 0, violations: 0, first_violation: None } }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.res.checked += 1;
        if !ok {
            self.res.violations += 1;
            if self.res.first_violation.is_none() {
                self.res.first_violation = Some(what());
            }
        }
    }
}

fn rng(seed: u64, p: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn ctx(p: u64) -> PrimeCtx {
    PrimeCtx::new(p).expect("sweep primes are in range")
}

fn non_residue(p: u64) -> i64 {
    (2..p as i64).find(|&d| legendre_symbol(d, p) == -1).expect("odd primes have non-residues")
}

fn random_ext(r: &mut ChaCha8Rng, m: Modulus, d: i64) -> QuadExtElem {
    let p = m.p();
    let (a, b) = (r.random_range(0..p) as i64, r.random_range(0..p) as i64);
    QuadExtElem::new(m.residue(a), m.residue(b), m.residue(d)).expect("non-residue radicand")
}

/// Euler's criterion against the symbol, plus jacobi = legendre at primes.
pub fn euler_symbol(seed: u64) -> PropertyResult {
    let mut c = Counter::new("euler criterion vs symbol (200 samples/prime, p ≤ 1000)");
    for p in primes_in(5..=1000) {
        let m = Modulus::prime(p).unwrap();
        let mut r = rng(seed, p);
        for _ in 0..200 {
            let a = r.random_range(1..p);
            let l = legendre_symbol(a as i64, p);
            let e = m.residue(a as i64).pow((p - 1) / 2);
            c.check(e == m.residue(l as i64) && jacobi_symbol(a as i64, p) == l, || format!("p={p} a={a} symbol={l} power={e}"));
        }
    }
    c.res
}

/// Square roots: existence iff residue, canonical half, and Hensel lifts at e = 2, 3.
pub fn sqrt_roundtrip(seed: u64) -> PropertyResult {
    let mut c = Counter::new("square-root roundtrip (p ≤ 1000; lifts at e=2,3)");
    for p in primes_in(5..=1000) {
        let mut r = rng(seed, p);
        for e in 1..=3u32 {
            let Ok(m) = Modulus::new(p, e) else { continue };
            for _ in 0..20 {
                let a = m.residue(r.random_range(1..m.pe()) as i64);
                if a.value() % p == 0 {
                    continue;
                }
                let root = sqrt_mod_pe(a);
                let residue = legendre_symbol((a.value() % p) as i64, p) == 1;
                let ok = match root {
                    Some(x) => residue && x * x == a && x.value() <= (m.pe() - 1) / 2,
                    None => !residue,
                };
                c.check(ok, || format!("p={p} e={e} a={a} root={root:?}"));
                if e == 1 {
                    c.check(sqrt_mod_p(a) == root, || format!("p={p} a={a}: field and lifted roots differ"));
                }
                let w = sqrt_in_ext(a).expect("unit radicand");
                c.check(w * w == QuadExtElem::from_base(a), || format!("p={p} e={e} a={a}: ({w})² ≠ a"));
            }
        }
    }
    c.res
}

/// z^p = conj(z) in F_p(√d), and half_power(z)² = z^(p−1).
pub fn frobenius(seed: u64) -> PropertyResult {
    let mut c = Counter::new("frobenius conjugation (p ≤ 1000)");
    for p in primes_in(5..=1000) {
        let m = Modulus::prime(p).unwrap();
        let d = non_residue(p);
        let mut r = rng(seed, p);
        for _ in 0..10 {
            let z = random_ext(&mut r, m, d);
            c.check(z.pow(p) == z.conj(), || format!("p={p} z={z}: z^p ≠ conj"));
            let h = half_power(z);
            c.check(h * h == z.pow(p - 1), || format!("p={p} z={z}: half power squared"));
        }
    }
    c.res
}

/// Reconstructed PUnit binomials against exact big integers.
pub fn punit_oracle() -> PropertyResult {
    let mut c = Counter::new("binomial PUnit vs exact oracle (p ≤ 50, n ≤ 150, e ≤ 3)");
    let exact: Vec<Vec<BigInt>> = (0..=150i64).map(|n| (0..=n).map(|k| exact_binom(n, k)).collect()).collect();
    for p in primes_in(5..=50) {
        for e in 1..=3u32 {
            let m = Modulus::new(p, e).unwrap();
            let pe = BigInt::from(m.pe());
            for n in 0..=150u64 {
                for k in 0..=n {
                    let want = &exact[n as usize][k as usize] % &pe;
                    let got = binom_punit(n, k, m).reconstruct();
                    c.check(BigInt::from(got.value()) == want, || format!("p={p} e={e} C({n},{k}) gave {got}, want {want}"));
                }
            }
        }
    }
    c.res
}

/// P_n(−t) = (−1)^n P_n(t) over F_p and F_p(√d).
pub fn parity(seed: u64) -> PropertyResult {
    let mut c = Counter::new("legendre parity (n ≤ 60, p ≤ 500, base and extension)");
    for p in primes_in(5..=500) {
        let cx = ctx(p);
        let m = cx.field();
        let d = non_residue(p);
        let mut r = rng(seed, p);
        for _ in 0..5 {
            let n = r.random_range(0..=60.min(p - 1));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let t = m.residue(r.random_range(0..p) as i64);
            let (a, b) = (legendre_poly(&cx, n, -t), legendre_poly(&cx, n, t));
            c.check(a == b.scale(m.residue(sign).value()), || format!("p={p} n={n} t={t}"));
            let z = random_ext(&mut r, m, d);
            let (a, b) = (legendre_poly(&cx, n, -z), legendre_poly(&cx, n, z));
            c.check(a == b.scale(m.residue(sign).value()), || format!("p={p} n={n} t={z}"));
        }
    }
    c.res
}

/// W_n(x) = (1−x)^n P_n((1+x)/(1−x)).
pub fn deuring(seed: u64) -> PropertyResult {
    let mut c = Counter::new("deuring identity (p ≤ 500)");
    for p in primes_in(5..=500) {
        let cx = ctx(p);
        let m = cx.field();
        let mut r = rng(seed, p);
        for _ in 0..5 {
            let n = r.random_range(0..p);
            let x = m.residue(r.random_range(0..p) as i64);
            if x == m.one() {
                continue;
            }
            let arg = (m.one() + x) * (m.one() - x).inv().unwrap();
            let rhs = (m.one() - x).pow(n) * legendre_poly(&cx, n, arg);
            c.check(deuring_poly(&cx, n, x) == rhs, || format!("p={p} n={n} x={x}"));
        }
    }
    c.res
}

/// W_[p/3]((t−1)/(t+1)) = (2/(t+1))^[p/3] P_[p/3](t).
pub fn scaled_form(seed: u64) -> PropertyResult {
    let mut c = Counter::new("scaled deuring form at n = [p/3] (p ≤ 1000)");
    for p in primes_in(5..=1000) {
        let cx = ctx(p);
        let m = cx.field();
        let n = p / 3;
        let mut r = rng(seed, p);
        for _ in 0..5 {
            let t = m.residue(r.random_range(0..p) as i64);
            if t == -m.one() {
                continue;
            }
            let inv = (t + m.one()).inv().unwrap();
            let lhs = deuring_poly(&cx, n, (t - m.one()) * inv);
            let rhs = (m.residue(2) * inv).pow(n) * legendre_third(&cx, t);
            c.check(lhs == rhs, || format!("p={p} t={t}"));
        }
    }
    c.res
}

/// |Σχ(f)| ≤ 2√p on random nonsingular curves.
pub fn weil(seed: u64, per_prime: usize, up_to: u64) -> PropertyResult {
    let mut c = Counter::new("weil bound (500 random curves/prime)");
    for p in primes_in(5..=up_to) {
        let cx = ctx(p);
        let m = cx.field();
        let mut r = rng(seed, p);
        let mut done = 0;
        while done < per_prime {
            let cv = CubicCurve::new(m.residue(r.random_range(0..p) as i64), m.residue(r.random_range(0..p) as i64));
            if cv.is_singular() {
                continue;
            }
            done += 1;
            c.check(check_weil(&cx, &cv).unwrap(), || format!("p={p} m={} n={}", cv.m, cv.n));
        }
    }
    c.res
}

/// Point counts from the character sum against pair-by-pair enumeration, every curve.
pub fn point_count_naive() -> PropertyResult {
    let mut c = Counter::new("point count vs naive enumeration (all curves, p ≤ 61)");
    for p in primes_in(5..=61) {
        let cx = ctx(p);
        let m = cx.field();
        for a in 0..p {
            for b in 0..p {
                let cv = CubicCurve::new(m.residue(a as i64), m.residue(b as i64));
                let fast = point_count(&cx, &cv).expect("prime-field curve");
                let slow = naive_point_count(&cv) as i64;
                c.check(fast == slow, || format!("p={p} m={a} n={b}: {fast} vs {slow}"));
            }
        }
    }
    c.res
}

/// Forms x² + b·y² used by the checks.
pub const FORMS: [(u64, Scale); 12] = [
    (2, Scale::P),
    (3, Scale::P),
    (6, Scale::P),
    (15, Scale::P),
    (11, Scale::FourP),
    (27, Scale::FourP),
    (51, Scale::FourP),
    (75, Scale::FourP),
    (123, Scale::FourP),
    (267, Scale::FourP),
    (3, Scale::FourP),
    (15, Scale::FourP),
];

pub fn cornacchia_search(up_to: u64) -> PropertyResult {
    let mut c = Counter::new("cornacchia vs exhaustive search (p ≤ 10^4)");
    for p in primes_in(5..=up_to) {
        for (b, scale) in FORMS {
            if b % p == 0 {
                continue;
            }
            let fast = cornacchia(p, b, scale).map(|r| (r.x, r.y));
            let slow = represent_exhaustive(p, 1, b, scale).map(|r| (r.x, r.y));
            c.check(fast == slow, || format!("p={p} form x^2+{b}y^2={scale}: {fast:?} vs {slow:?}"));
        }
    }
    c.res
}

/// Every suite at the published sizes.
pub fn all(seed: u64) -> Vec<PropertyResult> {
    vec![
        euler_symbol(seed),
        sqrt_roundtrip(seed),
        frobenius(seed),
        punit_oracle(),
        parity(seed),
        deuring(seed),
        scaled_form(seed),
        weil(seed, 500, 1000),
        point_count_naive(),
        cornacchia_search(10_000),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_keeps_first_violation() {
        let mut c = Counter::new("t");
        c.check(true, || "a".into());
        c.check(false, || "b".into());
        c.check(false, || "c".into());
        assert_eq!((c.res.checked, c.res.violations), (3, 2));
        assert_eq!(c.res.first_violation.as_deref(), Some("b"));
        assert!(!c.res.ok());
    }

    #[test]
    fn nothing_checked_is_not_ok() {
        assert!(!Counter::new("empty").res.ok());
    }

    #[test]
    fn seeds_are_per_prime() {
        assert_ne!(rng(1, 5).random::<u64>(), rng(1, 7).random::<u64>());
        assert_eq!(rng(1, 5).random::<u64>(), rng(1, 5).random::<u64>());
    }

    #[test]
    fn small_suites() {
        assert!(weil(3, 5, 60).ok());
        assert!(cornacchia_search(500).ok());
        assert_eq!(non_residue(7), 3);
    }
}
