//! Per-prime tables shared by every evaluation at that prime.

use std::sync::OnceLock;

use crate::binomial::central_tables;
use crate::modular::{ArithError, Modulus, Residue};

/// Binomial-sum coefficients modulo p^e for k < p:
/// `squared[k]` = C(2k,k)²C(3k,k), `pair[k]` = C(2k,k)C(3k,k).
#[derive(Debug, Clone)]
pub struct CentralTables {
    pub squared: Vec<u64>,
    pub pair: Vec<u64>,
}

pub struct PrimeCtx {
    m: [Modulus; 3],
    chi: Vec<i8>,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
    tables: [OnceLock<CentralTables>; 3],
    third_coeffs: OnceLock<Vec<u64>>,
}

impl PrimeCtx {
    /// Context for a prime within the e = 1 cap. Exponents whose cap is
    /// exceeded are unavailable through [`PrimeCtx::modulus`].
    pub fn new(p: u64) -> Result<Self, ArithError> {
        let m1 = Modulus::new(p, 1)?;
        if p > 1 << 26 {
            return Err(ArithError::InvalidModulus { p, e: 1, reason: "per-prime tables are limited to p < 2^26" });
        }
        let m2 = Modulus::new(p, 2).unwrap_or(m1);
        let m3 = Modulus::new(p, 3).unwrap_or(m1);
        let n = p as usize;

        let mut chi = vec![-1i8; n];
        chi[0] = 0;
        let mut sq = 0u64;
        for x in 0..(p - 1) / 2 {
            // (x+1)² = x² + 2x + 1
            sq = m1.add(sq, m1.add(m1.add(x, x), 1));
            chi[sq as usize] = 1;
        }

        let mut fact = vec![1u64; n];
        for i in 1..n {
            fact[i] = m1.mul(fact[i - 1], i as u64);
        }
        let mut inv_fact = vec![1u64; n];
        inv_fact[n - 1] = m1.inv(fact[n - 1])?;
        for i in (1..n).rev() {
            inv_fact[i - 1] = m1.mul(inv_fact[i], i as u64);
        }

        Ok(PrimeCtx {
            m: [m1, m2, m3],
            chi,
            fact,
            inv_fact,
            tables: [OnceLock::new(), OnceLock::new(), OnceLock::new()],
            third_coeffs: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.m[0].p()
    }

    pub fn field(&self) -> Modulus {
        self.m[0]
    }

    pub fn modulus(&self, e: u32) -> Result<Modulus, ArithError> {
        let m = self.m[(e as usize).clamp(1, 3) - 1];
        if m.e() == e {
            Ok(m)
        } else {
            self.m[0].with_exponent(e)
        }
    }

    pub fn residue(&self, v: i64) -> Residue {
        self.m[0].residue(v)
    }

    /// Quadratic character of x mod p, x given as a raw residue.
    #[inline]
    pub fn chi(&self, x: u64) -> i8 {
        self.chi[x as usize]
    }

    pub fn chi_table(&self) -> &[i8] {
        &self.chi
    }

    /// Inverse of a nonzero x < p.
    pub fn inv_small(&self, x: u64) -> u64 {
        debug_assert!(x > 0 && x < self.p());
        self.m[0].mul(self.fact[x as usize - 1], self.inv_fact[x as usize])
    }

    /// n! mod p for n < p.
    pub fn factorial(&self, n: u64) -> u64 {
        self.fact[n as usize]
    }

    pub fn inv_factorial(&self, n: u64) -> u64 {
        self.inv_fact[n as usize]
    }

    /// C(n, k) mod p for any n, k ≥ 0, by Lucas' theorem.
    pub fn binom_mod_p(&self, mut n: u64, mut k: u64) -> u64 {
        let p = self.p();
        let m = self.m[0];
        let mut acc = 1u64;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = m.mul(acc, m.mul(self.fact[nd as usize], m.mul(self.inv_fact[kd as usize], self.inv_fact[(nd - kd) as usize])));
            n /= p;
            k /= p;
        }
        acc
    }

    /// Cached binomial-sum coefficients modulo p^e.
    pub fn tables(&self, e: u32) -> Result<&CentralTables, ArithError> {
        let m = self.modulus(e)?;
        Ok(self.tables[e as usize - 1].get_or_init(|| central_tables(m)))
    }

    /// Cached Legendre-polynomial coefficients for degree [p/3].
    pub fn third_degree_coeffs(&self) -> &[u64] {
        self.third_coeffs.get_or_init(|| crate::poly::legendre_coeffs(self, self.p() / 3))
    }
}

impl std::fmt::Debug for PrimeCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimeCtx").field("p", &self.p()).finish()
    }
}
