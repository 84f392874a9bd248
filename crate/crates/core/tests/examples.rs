//! Worked values for each public operation, checked through the public API.

use congruence_core::binomial::{binom_punit, factorial_punit, sum_central, sum_central_weighted, sum_pair, PUnit};
use congruence_core::curve::{char_sum_cubic, check_bm6, check_cor32, check_morton33, check_thm31, curve, naive_point_count, point_count, CurveError};
use congruence_core::exact::{check_recurrence, check_wz_certificate, exact_binom, lemma21_side, Side};
use congruence_core::modular::{
    ext_arith, half_power, jacobi_symbol, legendre_symbol, mod_inv, mod_pow, rational_residue, sqrt_in_ext, sqrt_mod_p, Elem, ExtOp,
};
use congruence_core::poly::{deuring_poly, gen_binom, jacobi_jp, legendre_poly, legendre_third, truncated_sum_13, u_p};
use congruence_core::primes::{prime_stream, primes_in};
use congruence_core::quadform::{cornacchia, normalize, represent, represent_exhaustive, NormRule, Scale};
use congruence_core::{ArithError, Modulus, PrimeCtx, QuadExtElem, Residue};
use num_bigint::BigInt;

fn md(p: u64, e: u32) -> Modulus {
    Modulus::new(p, e).unwrap()
}

fn r(v: i64, m: Modulus) -> Residue {
    m.residue(v)
}

fn ctx(p: u64) -> PrimeCtx {
    PrimeCtx::new(p).unwrap()
}

fn ext(a: i64, b: i64, d: i64, m: Modulus) -> QuadExtElem {
    QuadExtElem::new(m.residue(a), m.residue(b), m.residue(d)).unwrap()
}

#[test]
fn powers_and_inverses() {
    assert_eq!(mod_pow(r(2, md(11, 1)), 10).value(), 1);
    assert_eq!(mod_pow(r(12345, md(13, 3)), 0).value(), 1);
    assert_eq!(mod_pow(r(3, md(7, 1)), 5).value(), 5);
    assert_eq!(mod_inv(r(1, md(5, 2))).unwrap().value(), 1);
    assert_eq!(mod_inv(r(2, md(5, 2))).unwrap().value(), 13);
    assert!(matches!(mod_inv(r(5, md(5, 2))), Err(ArithError::NotInvertible { .. })));
}

#[test]
fn rational_residues() {
    assert_eq!(rational_residue(1, 2, md(7, 1)).unwrap().value(), 4);
    assert_eq!(rational_residue(0, 3, md(7, 1)).unwrap().value(), 0);
    assert_eq!(rational_residue(5, 4, md(11, 1)).unwrap().value(), 4);
    assert!(rational_residue(1, 7, md(7, 1)).is_err());
}

#[test]
fn symbols() {
    assert_eq!(legendre_symbol(1, 7), 1);
    assert_eq!(legendre_symbol(0, 7), 0);
    assert_eq!(legendre_symbol(3, 7), -1);
    assert_eq!(jacobi_symbol(17, 1), 1);
    assert_eq!(jacobi_symbol(5, 11), 1);
    assert_eq!(jacobi_symbol(7, 15), -1);
}

#[test]
fn square_roots() {
    let f7 = md(7, 1);
    assert_eq!(sqrt_mod_p(r(0, f7)).unwrap().value(), 0);
    assert_eq!(sqrt_mod_p(r(2, f7)).unwrap().value(), 3);
    assert_eq!(sqrt_mod_p(r(3, f7)), None);
    assert_eq!(sqrt_in_ext(r(0, f7)).unwrap(), QuadExtElem::from_base(r(0, f7)));
    assert_eq!(sqrt_in_ext(r(2, f7)).unwrap(), QuadExtElem::from_base(r(3, f7)));
    let w = sqrt_in_ext(r(3, f7)).unwrap();
    assert_eq!((w.a().value(), w.b().value(), w.d().value()), (0, 1, 3));
}

#[test]
fn extension_arithmetic() {
    let f7 = md(7, 1);
    let x = ext(2, 5, 3, f7);
    let one = ext(1, 0, 3, f7);
    assert_eq!(ext_arith(x, one, ExtOp::Mul).unwrap(), x);
    let w = ext(0, 1, 3, f7);
    assert_eq!(ext_arith(w, w, ExtOp::Mul).unwrap(), ext(3, 0, 3, f7));
    assert_eq!(ext(1, 1, 3, f7).pow(7), ext(1, 6, 3, f7));
    assert_eq!(ext_arith(x, x, ExtOp::Sub).unwrap(), ext(0, 0, 3, f7));
    assert!(ext_arith(x, ext(1, 1, 5, f7), ExtOp::Add).is_err());
}

#[test]
fn euler_powers() {
    let f7 = md(7, 1);
    assert_eq!(half_power(r(1, f7)).value(), 1);
    assert_eq!(half_power(r(3, f7)).value(), 6);
    assert_eq!(half_power(ext(0, 1, 3, f7)), ext(0, 3, 3, f7));
}

#[test]
fn factorials_and_binomials() {
    let m = md(5, 2);
    assert_eq!(factorial_punit(0, m), PUnit::one(m));
    let f5 = factorial_punit(5, m);
    assert_eq!((f5.val(), f5.unit().value()), (1, 24));

    let m7 = md(7, 2);
    let f10 = factorial_punit(10, m7);
    assert_eq!((f10.val(), f10.unit().value()), (1, (3_628_800u64 / 7) % 49));
    assert_eq!(f10.unit().value(), 518_400 % 49);

    let c0 = binom_punit(9, 0, m);
    assert_eq!((c0.val(), c0.unit().value()), (0, 1));
    let c63 = binom_punit(6, 3, m);
    assert_eq!((c63.val(), c63.unit().value()), (1, 4));
    let c105 = binom_punit(10, 5, m7);
    assert_eq!((c105.val(), c105.unit().value()), (1, 36));
    assert_eq!(c105.reconstruct().value(), 252 % 49);
}

#[test]
fn central_sums() {
    assert_eq!(sum_central(8, md(11, 1)).unwrap().value(), 3);
    assert_eq!(sum_central(8, md(5, 2)).unwrap().value(), 0);
    assert_eq!(sum_central(64, md(7, 2)).unwrap().value(), 0);
    assert_eq!(sum_central(64, md(31, 1)).unwrap().value(), 25);
    assert_eq!(sum_central(-192, md(7, 1)).unwrap().value(), 1);
    assert!(sum_central(11, md(11, 1)).is_err());
}

#[test]
fn weighted_sums() {
    let m = md(13, 2);
    assert_eq!(sum_central_weighted(0, 1, -96, m).unwrap(), sum_central(-96, m).unwrap());
    assert_eq!(sum_central_weighted(9, 1, -8640, md(7, 3)).unwrap().value(), 336);
    assert_eq!(sum_central_weighted(15, 2, 1458, md(7, 3)).unwrap().value(), 329);
}

#[test]
fn pair_sums() {
    let f5 = md(5, 1);
    assert_eq!(sum_pair(r(0, f5)).value(), 1);
    assert_eq!(sum_pair(r(1, f5)).value(), 2);
    let c = ctx(13);
    for x in 0..13 {
        let x = c.residue(x);
        assert_eq!(c.sum_pair(x, 13 / 3).unwrap(), sum_pair(x), "truncation at [p/3]");
    }
}

#[test]
fn pair_square_identity() {
    for (p, x) in [(7, 0), (7, 3), (11, 5), (97, 40)] {
        let c = ctx(p);
        assert!(c.check_thm21(c.residue(x)).unwrap(), "p={p} x={x}");
    }
}

#[test]
fn legendre_and_deuring() {
    let c7 = ctx(7);
    let f7 = c7.field();
    assert_eq!(legendre_poly(&c7, 9, r(1, f7)).value(), 1);
    assert_eq!(legendre_poly(&c7, 1, r(4, f7)).value(), 4);
    assert_eq!(legendre_poly(&c7, 2, r(3, f7)).value(), 6);
    assert_eq!(legendre_poly(&c7, 2, r(-1, f7)), legendre_poly(&c7, 2, r(1, f7)));

    let c11 = ctx(11);
    let f11 = c11.field();
    assert_eq!(deuring_poly(&c11, 0, r(5, f11)).value(), 1);
    assert_eq!(deuring_poly(&c11, 1, r(5, f11)).value(), 6);
    assert_eq!(deuring_poly(&c11, 2, r(3, f11)).value(), 0);
}

#[test]
fn generalized_binomial() {
    let c = ctx(7);
    let alpha = c.residue(5);
    assert_eq!(gen_binom(&c, alpha, 0).value(), 1);
    assert_eq!(gen_binom(&c, alpha, 1).value(), 5);
    assert_eq!(gen_binom(&c, alpha, 2).value(), 3);
}

#[test]
fn jp_and_up() {
    let c5 = ctx(5);
    for t in 0..5 {
        assert_eq!(jacobi_jp(&c5, c5.residue(t)).value(), 1);
    }
    assert_eq!(u_p(&c5, c5.residue(24)).value(), 0);
    assert_eq!(u_p(&ctx(7), ctx(7).residue(0)).value(), 6);
    let c13 = ctx(13);
    for x in [0, 3, 11] {
        assert_eq!(u_p(&c13, c13.residue(x)).value(), 1);
    }
    // J_p(0) ≡ (−1728)^[p/12] C(2(p−1)/3, [p/12]) at p ≡ 1 mod 3.
    for p in [13u64, 19, 31, 37, 43] {
        let c = ctx(p);
        let k = p / 12;
        let want = c.residue(-1728).pow(k) * c.residue(c.binom_mod_p(2 * (p - 1) / 3, k) as i64);
        assert_eq!(jacobi_jp(&c, c.residue(0)), want, "p={p}");
    }
}

#[test]
fn truncated_sum_matches_legendre() {
    for p in [5u64, 7, 13, 101, 997] {
        let c = ctx(p);
        assert_eq!(truncated_sum_13(&c, c.residue(1)).value(), 1);
        for t in [0, 2, 3, (p / 2) as i64, p as i64 - 1] {
            let t = c.residue(t);
            assert_eq!(truncated_sum_13(&c, t), legendre_third(&c, t), "p={p}");
        }
    }
}

#[test]
fn character_sums_and_counts() {
    let (c5, c7, c13) = (ctx(5), ctx(7), ctx(13));
    assert_eq!(char_sum_cubic(&c5, &curve(&c5, 0, 1)).unwrap(), 0);
    assert_eq!(char_sum_cubic(&c13, &curve(&c13, -3, -2)).unwrap(), -1);
    assert_eq!(char_sum_cubic(&c7, &curve(&c7, -120, 506)).unwrap(), 1);
    assert_eq!(point_count(&c5, &curve(&c5, 0, 1)).unwrap(), 6);
    assert_eq!(point_count(&c5, &curve(&c5, -1, 0)).unwrap(), 8);
    assert_eq!(naive_point_count(&curve(&c5, -1, 0)), 8);
    assert_eq!(char_sum_cubic(&c5, &curve(&c5, -1, 0)).unwrap(), 2);
}

#[test]
fn character_sum_in_extension() {
    // Base-field coefficients promoted to F_p²: the half-power sum stays in F_p.
    let c = ctx(11);
    let f = c.field();
    let m = QuadExtElem::from_base(f.residue(-2));
    let n = QuadExtElem::from_base(f.residue(7));
    let s = congruence_core::curve::half_power_sum(&c, &congruence_core::curve::CubicCurve::new(m, n));
    let exact = char_sum_cubic(&c, &curve(&c, -2, 7)).unwrap();
    assert_eq!(s.base_part(), Some(f.residue(exact)));
}

#[test]
fn curve_theorems() {
    for p in [5u64, 7, 11, 13, 101] {
        let c = ctx(p);
        assert!(check_thm31(&c, c.residue(1)));
        assert!(check_thm31(&c, c.residue(-1)));
    }
    let c = ctx(13);
    assert_eq!(char_sum_cubic(&c, &curve(&c, -27, 54)).unwrap(), -1);
    for p in [17u64, 19, 23] {
        let c = ctx(p);
        for t in 0..p as i64 {
            assert!(check_cor32(&c, c.residue(t)).unwrap(), "p={p} t={t}");
        }
    }
}

#[test]
fn morton_and_bm6() {
    let c = ctx(13);
    let f = c.field();
    assert!(matches!(check_morton33(&c, r(-3, f), r(-2, f)), Err(CurveError::Singular(13))));
    assert!(check_morton33(&c, r(1, f), r(1, f)).unwrap());
    assert!(check_bm6(&c, r(0, f)).unwrap());
    assert!(check_bm6(&c, r(27, f)).is_err());
    let c17 = ctx(17);
    assert!(check_bm6(&c17, c17.residue(24)).unwrap());
}

#[test]
fn representations() {
    let rep = represent(7, 1, 3, Scale::P).unwrap();
    assert_eq!((rep.x, rep.y), (2, 1));
    let rep = represent(31, 1, 11, Scale::FourP).unwrap();
    assert_eq!((rep.x, rep.y), (5, 3));
    let rep = represent(31, 1, 15, Scale::P).unwrap();
    assert_eq!((rep.x, rep.y), (4, 1));
    assert_eq!(represent(5, 1, 3, Scale::P), None);
    assert_eq!(represent_exhaustive(31, 1, 15, Scale::P), Some(rep));
    let rep = cornacchia(11, 11, Scale::P).unwrap();
    assert_eq!((rep.x, rep.y), (0, 1));
    let rep = cornacchia(11, 11, Scale::FourP).unwrap();
    assert_eq!((rep.x, rep.y), (0, 2));
    assert_eq!(cornacchia(11, 22, Scale::P), None);
}

#[test]
fn normalizations() {
    let l = normalize(represent(7, 1, 27, Scale::FourP).unwrap(), NormRule::LMod3);
    assert_eq!(l.x, 1);
    let c = normalize(represent(11, 1, 2, Scale::P).unwrap(), NormRule::CMod4);
    assert_eq!(c.x, -3);
    let s = normalize(represent(31, 1, 15, Scale::P).unwrap(), NormRule::SignFree);
    assert_eq!(2 * s.x * jacobi_symbol(s.x, 3) as i64, 8);
    assert_eq!(2 * -s.x * jacobi_symbol(-s.x, 3) as i64, 8);
}

#[test]
fn exact_values() {
    assert_eq!(exact_binom(7, 0), BigInt::from(1));
    assert_eq!(exact_binom(6, 3), BigInt::from(20));
    assert_eq!(exact_binom(12, 4), BigInt::from(495));
    for (m, want) in [(0u64, 1), (1, 12), (2, 216)] {
        assert_eq!(lemma21_side(m, Side::Left), BigInt::from(want));
        assert_eq!(lemma21_side(m, Side::Right), BigInt::from(want));
    }
    assert!(check_recurrence(Side::Left, 0));
    assert!(check_recurrence(Side::Right, 0));
    let w = check_wz_certificate(Side::Left, 3, 1..=1);
    assert!(w.holds && w.checked == vec![1]);
}

#[test]
fn prime_ranges() {
    assert_eq!(primes_in(5..=20), vec![5, 7, 11, 13, 17, 19]);
    assert_eq!(prime_stream(2..=10_000).count(), 1229);
    assert_eq!(primes_in(2..=10).len(), 4);
}
