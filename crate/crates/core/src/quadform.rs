//! Representations p = a·x² + b·y² and 4p = u² + d·v².

use std::fmt;

use serde::Serialize;

use crate::modular::{sqrt_mod_p, Modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scale {
    P,
    FourP,
}

impl Scale {
    pub fn target(self, p: u64) -> u64 {
        match self {
            Scale::P => p,
            Scale::FourP => 4 * p,
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::P => "p",
            Scale::FourP => "4p",
        })
    }
}

impl std::str::FromStr for Scale {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "p" => Ok(Scale::P),
            "4p" => Ok(Scale::FourP),
            _ => Err(format!("unknown scale {s:?}; expected p or 4p")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NormRule {
    /// x ≡ 1 mod 3.
    LMod3,
    /// x ≡ 1 mod 4.
    CMod4,
    /// Sign-invariant use; coordinates kept nonnegative.
    SignFree,
}

impl fmt::Display for NormRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormRule::LMod3 => "L_mod3",
            NormRule::CMod4 => "c_mod4",
            NormRule::SignFree => "signfree",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadFormRep {
    pub x: i64,
    pub y: i64,
    pub a: u64,
    pub b: u64,
    pub scale: Scale,
    pub normalization: Option<NormRule>,
}

impl QuadFormRep {
    pub fn value(&self) -> i128 {
        self.a as i128 * (self.x as i128).pow(2) + self.b as i128 * (self.y as i128).pow(2)
    }
}

impl fmt::Display for QuadFormRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Smallest-y solution with x, y ≥ 0 by trying every y ≤ √(N/b).
pub fn represent_exhaustive(p: u64, a: u64, b: u64, scale: Scale) -> Option<QuadFormRep> {
    let target = scale.target(p);
    let mut y = 0u64;
    while b * y * y <= target {
        let rest = target - b * y * y;
        if rest.is_multiple_of(a) {
            let q = rest / a;
            let x = q.isqrt();
            if x * x == q {
                return Some(QuadFormRep { x: x as i64, y: y as i64, a, b, scale, normalization: None });
            }
        }
        y += 1;
    }
    None
}

/// Cornacchia's algorithm for x² + b·y² = p, and its 4p variant.
pub fn cornacchia(p: u64, b: u64, scale: Scale) -> Option<QuadFormRep> {
    let m = Modulus::prime(p).ok()?;
    if b.is_multiple_of(p) {
        // p | x² forces x = 0, since p² exceeds 4p.
        let target = scale.target(p);
        let y = target.is_multiple_of(b).then(|| (target / b).isqrt()).filter(|y| b * y * y == target)?;
        return Some(QuadFormRep { x: 0, y: y as i64, a: 1, b, scale, normalization: None });
    }
    let mut r0 = sqrt_mod_p(m.residue(-(b as i64)))?.value();
    let (modulus, bound) = match scale {
        Scale::P => {
            if r0 <= p / 2 {
                r0 = p - r0;
            }
            (p, p)
        }
        Scale::FourP => {
            if r0 % 2 != b % 2 {
                r0 = p - r0;
            }
            (2 * p, 4 * p)
        }
    };
    let (mut r_prev, mut r) = (modulus, r0);
    while r * r >= bound {
        (r_prev, r) = (r, r_prev % r);
    }
    let rest = bound - r * r;
    let found = if rest % b == 0 {
        let q = rest / b;
        let s = q.isqrt();
        (s * s == q).then_some(s)
    } else {
        None
    };
    match (found, scale) {
        (Some(s), _) => Some(QuadFormRep { x: r as i64, y: s as i64, a: 1, b, scale, normalization: None }),
        // With no odd solution, 4p can still come from p = x² + b·y².
        (None, Scale::FourP) => cornacchia(p, b, Scale::P).map(|r| QuadFormRep { x: 2 * r.x, y: 2 * r.y, scale, ..r }),
        (None, Scale::P) => None,
    }
}

/// Beyond this target size the search gives way to Cornacchia for a = 1.
const SEARCH_LIMIT: u64 = 1 << 36;

/// A representation of p or 4p by a·x² + b·y², with x, y ≥ 0.
///
/// Exhaustive search is the reference at desk scale; Cornacchia covers
/// a = 1 beyond it and is property-tested against the search.
pub fn represent(p: u64, a: u64, b: u64, scale: Scale) -> Option<QuadFormRep> {
    assert!(a > 0 && b > 0, "form coefficients must be positive");
    if a == 1 && scale.target(p) > SEARCH_LIMIT {
        return cornacchia(p, b, scale);
    }
    represent_exhaustive(p, a, b, scale)
}

/// Fix the sign of x so that the rule's congruence holds.
pub fn normalize(rep: QuadFormRep, rule: NormRule) -> QuadFormRep {
    let x = match rule {
        NormRule::LMod3 => {
            assert!(rep.x % 3 != 0, "L_mod3 needs 3 ∤ x");
            if rep.x.rem_euclid(3) == 1 {
                rep.x
            } else {
                -rep.x
            }
        }
        NormRule::CMod4 => {
            assert!(rep.x % 2 != 0, "c_mod4 needs x odd");
            if rep.x.rem_euclid(4) == 1 {
                rep.x
            } else {
                -rep.x
            }
        }
        NormRule::SignFree => rep.x.abs(),
    };
    QuadFormRep { x, normalization: Some(rule), ..rep }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primes_in;

    fn xy(r: Option<QuadFormRep>) -> Option<(i64, i64)> {
        r.map(|r| (r.x, r.y))
    }

    #[test]
    fn examples() {
        assert_eq!(xy(represent(7, 1, 3, Scale::P)), Some((2, 1)));
        assert_eq!(xy(represent(31, 1, 11, Scale::FourP)), Some((5, 3)));
        assert_eq!(xy(represent(31, 1, 15, Scale::P)), Some((4, 1)));
        assert_eq!(represent(5, 1, 3, Scale::P), None);
        assert_eq!(xy(represent(7, 3, 1, Scale::P)), Some((1, 2)));
    }

    #[test]
    fn normalization_examples() {
        let r = represent(7, 1, 27, Scale::FourP).unwrap();
        assert_eq!(normalize(r, NormRule::LMod3).x, 1);
        let r = represent(11, 1, 2, Scale::P).unwrap();
        assert_eq!(normalize(r, NormRule::CMod4).x, -3);
        let r = represent(31, 1, 15, Scale::P).unwrap();
        assert_eq!(normalize(r, NormRule::SignFree).x, 4);
    }

    #[test]
    fn cornacchia_agrees_with_search() {
        for p in primes_in(5..=3000) {
            for (b, scale) in [(2, Scale::P), (3, Scale::P), (6, Scale::P), (15, Scale::P), (11, Scale::FourP), (27, Scale::FourP), (75, Scale::FourP), (51, Scale::FourP), (267, Scale::FourP)] {
                if b % p == 0 {
                    continue;
                }
                let fast = cornacchia(p, b, scale).map(|r| (r.x.abs(), r.y.abs()));
                assert_eq!(fast, xy(represent_exhaustive(p, 1, b, scale)), "p={p} b={b} {scale}");
            }
        }
    }
}
