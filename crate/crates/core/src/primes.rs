//! Primality and prime enumeration.

use std::ops::RangeInclusive;

/// Deterministic Miller–Rabin for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const SEGMENT: u64 = 1 << 15;

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sieve = vec![true; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Primes in `range` in ascending order, by a segmented sieve.
pub fn prime_stream(range: RangeInclusive<u64>) -> PrimeStream {
    let (lo, hi) = (*range.start(), *range.end());
    let root = (hi as f64).sqrt() as u64 + 1;
    PrimeStream { base: small_primes(root), next: lo.max(2), hi, buffer: Vec::new(), pos: 0 }
}

/// Iterator over primes, sieving one segment at a time.
pub struct PrimeStream {
    base: Vec<u64>,
    next: u64,
    hi: u64,
    buffer: Vec<u64>,
    pos: usize,
}

impl PrimeStream {
    fn fill(&mut self) -> bool {
        while self.next <= self.hi {
            let start = self.next;
            let end = (start.saturating_add(SEGMENT - 1)).min(self.hi);
            let mut marks = vec![true; (end - start + 1) as usize];
            for &q in &self.base {
                if q * q > end {
                    break;
                }
                let first = (start.div_ceil(q) * q).max(q * q);
                let mut j = first;
                while j <= end {
                    marks[(j - start) as usize] = false;
                    j += q;
                }
            }
            self.buffer = marks
                .iter()
                .enumerate()
                .filter(|(_, &keep)| keep)
                .map(|(i, _)| start + i as u64)
                .filter(|&n| n >= 2)
                .collect();
            self.pos = 0;
            self.next = match end.checked_add(1) {
                Some(n) => n,
                None => {
                    self.hi = 0;
                    u64::MAX
                }
            };
            if !self.buffer.is_empty() {
                return true;
            }
        }
        false
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos >= self.buffer.len() && !self.fill() {
            return None;
        }
        let p = self.buffer[self.pos];
        self.pos += 1;
        Some(p)
    }
}

pub fn primes_in(range: RangeInclusive<u64>) -> Vec<u64> {
    prime_stream(range).collect()
}
