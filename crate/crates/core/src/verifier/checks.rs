//! One runner per registered result.

use std::fmt::Display;

use rand::Rng;

use super::{Ambiguity, CheckSpec, Env, Halt, Kind, Run, Verdict, Witness};
use crate::binomial::binom_punit;
use crate::context::PrimeCtx;
use crate::curve::{
    char_sum_raw, check_bm6, check_cor32, check_morton33, check_scaling_ext, check_scaling_lemma41, check_thm31,
    half_power_sum, half_power_sum_direct, t_curve, CubicCurve,
};
use crate::exact::{lemma21_side, Side};
use crate::modular::{half_power, jacobi_symbol, rational_residue, sqrt_in_ext, Elem, QuadExtElem, Residue};
use crate::poly::{full_sum_13, legendre_third, truncated_sum_13};
use crate::quadform::{normalize, represent, NormRule, Scale};

// ---------------------------------------------------------------- plumbing

fn skip<T>(why: impl Into<String>) -> Result<T, Halt> {
    Err(Halt::Skip(why.into()))
}

fn broken(why: impl Display) -> Halt {
    Halt::Broken(why.to_string())
}

/// Clause evaluation: comparisons plus the values that went into them.
#[derive(Clone)]
struct Eval {
    holds: bool,
    clause: String,
    w: Witness,
}

impl Eval {
    fn new(clause: impl Into<String>) -> Self {
        Eval { holds: true, clause: clause.into(), w: Witness::new() }
    }

    fn note(&mut self, k: &str, v: impl Display) -> &mut Self {
        self.w.insert(k.to_string(), v.to_string());
        self
    }

    fn cmp<T: PartialEq + Display>(&mut self, name: &str, got: T, want: T) -> bool {
        let ok = got == want;
        self.note(name, &got);
        self.note(&format!("{name}_expected"), &want);
        if !ok {
            self.holds = false;
            let failed = match self.w.get("failed") {
                Some(f) => format!("{f},{name}"),
                None => name.to_string(),
            };
            self.note("failed", failed);
        }
        ok
    }

    fn done(self) -> Run {
        Ok(Verdict { holds: self.holds, ambiguity: Ambiguity::NotApplicable, clause: self.clause, witness: self.w })
    }
}

/// Every choice must pass; the witness is the first failing choice, or the first one.
fn all_choices(choices: Vec<Eval>) -> Run {
    let n = choices.len();
    let passing = choices.iter().filter(|c| c.holds).count();
    let mut pick = choices.iter().find(|c| !c.holds).unwrap_or(&choices[0]).clone();
    pick.note("choices_passing", format!("{passing}/{n}"));
    Ok(Verdict { holds: passing == n, ambiguity: Ambiguity::AllChoices, clause: pick.clause, witness: pick.w })
}

/// At least one choice must pass; the passing choice is recorded.
fn some_choice(choices: Vec<Eval>) -> Run {
    let n = choices.len();
    let passing: Vec<usize> = (0..n).filter(|&i| choices[i].holds).collect();
    let mut pick = choices[*passing.first().unwrap_or(&0)].clone();
    pick.note("choices_passing", format!("{}/{n}", passing.len()));
    if passing.is_empty() {
        let tried: Vec<String> = choices.iter().filter_map(|c| c.w.get("choice").cloned()).collect();
        pick.note("choices_tried", tried.join(";"));
    }
    Ok(Verdict { holds: !passing.is_empty(), ambiguity: Ambiguity::SomeChoices, clause: pick.clause, witness: pick.w })
}

fn sym3(x: i64) -> i64 {
    jacobi_symbol(x, 3) as i64
}

fn jac(a: i64, n: u64) -> i64 {
    jacobi_symbol(a, n) as i64
}

fn neg_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn base(ctx: &PrimeCtx, v: i64) -> QuadExtElem {
    QuadExtElem::from_base(ctx.residue(v))
}

/// Quadratic character of an element that lies in F_p.
fn esym(z: QuadExtElem) -> Result<i64, Halt> {
    let h = half_power(z);
    let p = z.modulus().p();
    match h.base_part().map(|r| r.value()) {
        Some(1) => Ok(1),
        Some(0) => Ok(0),
        Some(v) if v == p - 1 => Ok(-1),
        _ => Err(broken(format!("symbol of {z} is not ±1: element outside F_p"))),
    }
}

/// Both square roots of r (as an element of F_p or of F_p(√r)).
fn roots(ctx: &PrimeCtx, r: i64) -> Result<[QuadExtElem; 2], Halt> {
    if r.rem_euclid(ctx.p() as i64) == 0 {
        return skip(format!("p divides the radicand {r}"));
    }
    let w = sqrt_in_ext(ctx.residue(r)).map_err(broken)?;
    Ok([w, -w])
}

/// num/den as a residue mod p; skipped when p divides den.
fn frac(ctx: &PrimeCtx, num: i64, den: i64) -> Result<Residue, Halt> {
    rational_residue(num, den, ctx.field()).or_else(|_| skip(format!("p divides the denominator {den}")))
}

/// (x, y) with x, y ≥ 0 representing p or 4p by a·x² + b·y².
fn rep(ev: &mut Eval, p: u64, a: u64, b: u64, scale: Scale) -> Result<(i64, i64), Halt> {
    let r = represent(p, a, b, scale).ok_or_else(|| broken(format!("{scale} has no representation by {a}x^2+{b}y^2")))?;
    ev.note("form", format!("{scale}={a}x^2+{b}y^2")).note("rep", r);
    Ok((r.x, r.y))
}

fn rep_norm(ev: &mut Eval, p: u64, b: u64, scale: Scale, rule: NormRule) -> Result<(i64, i64), Halt> {
    let r = represent(p, 1, b, scale).ok_or_else(|| broken(format!("{scale} has no representation by x^2+{b}y^2")))?;
    let r = normalize(r, rule);
    ev.note("form", format!("{scale}=x^2+{b}y^2 ({rule})")).note("rep", r);
    Ok((r.x, r.y))
}

/// Σ C(2k,k)²C(3k,k) m^{−k} mod p².
fn central(ctx: &PrimeCtx, m: i64) -> Result<Residue, Halt> {
    ctx.sum_central(m, 2).or_else(|_| skip(format!("p divides m = {m}")))
}

fn sum_mod_p(ev: &mut Eval, ctx: &PrimeCtx, s: Residue, want: i64) {
    let p = ctx.p();
    ev.note("sum_mod_p2", s);
    ev.cmp("sum_mod_p", s.value() % p, want.rem_euclid(p as i64) as u64);
}

fn sum_mod_p2(ev: &mut Eval, s: Residue, want: i64) {
    let m = s.modulus();
    ev.cmp("sum_mod_p2", s.value(), m.residue(want).value());
}

/// Sampled residues: every t for p ≤ 500, otherwise 20 seeded draws.
fn t_values(env: &Env) -> Vec<i64> {
    let p = env.p();
    if p <= 500 {
        (0..p as i64).collect()
    } else {
        let mut rng = env.rng();
        (0..20).map(|_| rng.random_range(0..p) as i64).collect()
    }
}

/// Evaluate P_{[p/3]}(t(w)) against target(w) for both roots w of r.
fn p_clause(
    ctx: &PrimeCtx,
    r: i64,
    shared: &Eval,
    t_of: impl Fn(QuadExtElem) -> Result<QuadExtElem, Halt>,
    target: impl Fn(QuadExtElem) -> Result<QuadExtElem, Halt>,
) -> Run {
    let mut out = vec![];
    for w in roots(ctx, r)? {
        let mut ev = shared.clone();
        let t = t_of(w)?;
        ev.note("w", w).note("w^2", r).note("t", t).note("choice", format!("w={w}"));
        ev.cmp("P", legendre_third(ctx, t), target(w)?);
        ev.holds &= shared.holds;
        out.push(ev);
    }
    all_choices(out)
}

/// t = (num/den)·w.
fn scaled(ctx: &PrimeCtx, num: i64, den: i64) -> impl Fn(QuadExtElem) -> Result<QuadExtElem, Halt> + '_ {
    move |w| Ok(w.scale(frac(ctx, num, den)?.value()))
}

fn fixed(v: QuadExtElem) -> impl Fn(QuadExtElem) -> Result<QuadExtElem, Halt> {
    move |_| Ok(v)
}

fn p_mod(p: u64, n: u64, set: &[u64]) -> bool {
    set.contains(&(p % n))
}

const THM41_M: [i64; 9] = [8, 64, 216, -27, -192, -8640, -1728, -110_592, -27_000_000];

// ------------------------------------------------------------ binomial-sum squares

fn thm_2_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let md = ctx.modulus(2).or_else(|_| skip("p^2 exceeds the word cap"))?;
    let mut rng = env.rng();
    let mut ev = Eval::new("square identity mod p^2");
    ev.note("samples", 20);
    for _ in 0..20 {
        let x = Residue::from_raw(rng.random_range(0..md.pe()), md);
        if !ctx.check_thm21(x).map_err(broken)? {
            ev.holds = false;
            ev.note("x", x);
            let y = x * (md.one() - md.residue(27) * x);
            let rhs = ctx.sum_pair(x, ctx.p() - 1).map_err(broken)?;
            ev.note("lhs", ctx.sum_squared_at(y).map_err(broken)?).note("rhs", rhs * rhs);
            break;
        }
    }
    ev.done()
}

fn cor_2_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p() as i64;
    let md = ctx.modulus(2).or_else(|_| skip("p^2 exceeds the word cap"))?;
    let mut ms: Vec<i64> = THM41_M.to_vec();
    let mut rng = env.rng();
    while ms.len() < THM41_M.len() + 3 {
        let m = rng.random_range(1..md.pe()) as i64;
        if m % p != 0 {
            ms.push(m);
        }
    }
    let inv54 = md.inv(54).map_err(broken)?;
    let mut out = vec![];
    let mut used = vec![];
    for m in ms {
        if m % p == 0 || (m - 108) % p == 0 {
            continue;
        }
        used.push(m.to_string());
        let s = ctx.sum_central(m, 2).map_err(broken)?;
        let r = rational_residue(m - 108, m, md).map_err(broken)?;
        let w = sqrt_in_ext(r).map_err(broken)?;
        for t in [w, -w] {
            let x = (t.lift(1) - t).scale(inv54);
            let pair = ctx.sum_pair(x, ctx.p() - 1).map_err(broken)?;
            let mut ev = Eval::new("sum over m^-k equals square of the pair sum at x=(1-t)/54, t^2=1-108/m, mod p^2");
            ev.note("m", m).note("t", t).note("choice", format!("m={m},t={t}"));
            ev.cmp("sum_mod_p2", QuadExtElem::from_base(s), pair * pair);
            out.push(ev);
        }
    }
    if out.is_empty() {
        return skip("every m-value is divisible by p or ≡ 108");
    }
    let mut v = all_choices(out)?;
    v.witness.insert("m_values".into(), used.join(","));
    Ok(v)
}

fn lem_2_1(env: &Env) -> Run {
    let p = env.p();
    if p > 1000 {
        return skip("exact evaluation at m = p runs for p ≤ 1000");
    }
    let left = lemma21_side(p, Side::Left);
    let right = lemma21_side(p, Side::Right);
    let mut ev = Eval::new("both sides agree exactly at m = p");
    let md = num_bigint::BigInt::from(p);
    ev.note("m", p).note("digits", left.to_string().len());
    ev.cmp("value_mod_p", (&left % &md).to_string(), (&right % &md).to_string());
    ev.cmp("equal", left == right, true);
    ev.done()
}

// ------------------------------------------------------------ P_[p/3] and cubic character sums

fn thm_3_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let s3 = jac(ctx.p() as i64, 3);
    let ts = t_values(env);
    let mut ev = Eval::new(format!("(p/3)={s3}"));
    ev.note("t_checked", ts.len());
    for t in ts {
        let tr = ctx.residue(t);
        if !check_thm31(ctx, tr) {
            let (m, n) = { let c = t_curve(tr); (c.m, c.n) };
            ev.note("t", t);
            ev.cmp("P", legendre_third(ctx, tr), ctx.residue(-s3 * char_sum_raw(ctx, m.value(), n.value())));
            break;
        }
    }
    ev.done()
}

fn cor_3_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let s3 = jac(ctx.p() as i64, 3);
    let ts = t_values(env);
    let mut ev = Eval::new(format!("(p/3)={s3}"));
    ev.note("t_checked", ts.len());
    for t in ts {
        let tr = ctx.residue(t);
        let p = legendre_third(ctx, tr);
        let trunc = truncated_sum_13(ctx, tr);
        let full = full_sum_13(ctx, tr);
        let h = half_power_sum_direct(&t_curve(tr)).scale(ctx.residue(-s3).value());
        if !(trunc == p && p == h && h == full) {
            ev.note("t", t);
            ev.cmp("truncated_sum", trunc, p);
            ev.cmp("half_power_sum", h, p);
            ev.cmp("full_sum", full, p);
            break;
        }
    }
    ev.done()
}

fn cor_3_2(env: &Env) -> Run {
    let ctx = env.ctx;
    if ctx.p() < 17 {
        return skip("needs p ≥ 17");
    }
    let s3 = jac(ctx.p() as i64, 3);
    let ts = t_values(env);
    let mut ev = Eval::new(format!("(p/3)={s3}"));
    ev.note("t_checked", ts.len());
    for t in ts {
        let tr = ctx.residue(t);
        if !check_cor32(ctx, tr).map_err(broken)? {
            let a = t_curve(tr);
            let b = crate::curve::t_curve_mirror(tr);
            ev.note("t", t);
            ev.cmp(
                "char_sum",
                char_sum_raw(ctx, a.m.value(), a.n.value()),
                s3 * char_sum_raw(ctx, b.m.value(), b.n.value()),
            );
            break;
        }
    }
    ev.done()
}

fn cor_3_3(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let s = char_sum_raw(ctx, ctx.residue(-120).value(), ctx.residue(506).value());
    if p % 3 == 1 {
        let mut ev = Eval::new("p≡1 mod 3");
        let (l, _) = rep_norm(&mut ev, p, 27, Scale::FourP, NormRule::LMod3)?;
        ev.note("L", l);
        ev.cmp("char_sum", s, jac(2, p) * l);
        ev.done()
    } else {
        let mut ev = Eval::new("p≡2 mod 3");
        ev.cmp("char_sum", s, 0);
        ev.done()
    }
}

fn thm_3_2(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let s216 = ctx.sum_pair(frac(ctx, 1, -216)?, p / 3).map_err(broken)?;
    let s24 = ctx.sum_pair(frac(ctx, 1, 24)?, p / 3).map_err(broken)?;
    let p54 = legendre_third(ctx, frac(ctx, 5, 4)?);
    if p % 3 == 1 {
        let mut ev = Eval::new("p≡1 mod 3");
        let (l, _) = rep_norm(&mut ev, p, 27, Scale::FourP, NormRule::LMod3)?;
        let want = ctx.residue(-l);
        let binom = ctx.residue(jac(-2, p)) * Residue::from_raw(ctx.binom_mod_p(2 * (p - 1) / 3, p / 12), ctx.field());
        ev.cmp("sum_216", s216, want);
        ev.cmp("sum_24", s24, want);
        ev.cmp("P_5/4", p54, want);
        ev.cmp("binomial", binom, want);
        ev.done()
    } else {
        let mut ev = Eval::new("p≡2 mod 3");
        let z = ctx.residue(0);
        ev.cmp("sum_216", s216, z);
        ev.cmp("sum_24", s24, z);
        ev.cmp("P_5/4", p54, z);
        ev.done()
    }
}

fn eq_3_3(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let need_m = jac(p as i64, 3) == -1;
    let need_n = jac(-1, p) == -1;
    let admissible = |m: u64, n: u64| {
        let c = CubicCurve::new(ctx.residue(m as i64), ctx.residue(n as i64));
        !c.is_singular() && !(need_m && m == 0) && !(need_n && n == 0)
    };
    let mut pairs: Vec<(u64, u64)> = [(0, 1), (1, 0)].into_iter().filter(|&(m, n)| admissible(m, n)).collect();
    let mut rng = env.rng();
    let target = pairs.len() + 50;
    while pairs.len() < target {
        let (m, n) = (rng.random_range(0..p), rng.random_range(0..p));
        if admissible(m, n) {
            pairs.push((m, n));
        }
    }
    let mut ev = Eval::new(format!("(p/3)={}, (-1/p)={}", jac(p as i64, 3), jac(-1, p)));
    ev.note("pairs_checked", pairs.len());
    for (m, n) in pairs {
        let (mr, nr) = (ctx.residue(m as i64), ctx.residue(n as i64));
        if !check_morton33(ctx, mr, nr).map_err(broken)? {
            ev.note("m", m).note("n", n);
            let rhs = crate::curve::morton_rhs(ctx, mr, nr).map_err(broken)?;
            ev.cmp("char_sum_mod_p", ctx.residue(char_sum_raw(ctx, m, n)), rhs);
            break;
        }
    }
    ev.done()
}

fn eq_3_5_bm6(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let mut rng = env.rng();
    let bad = 27 % p;
    let mut ev = Eval::new(format!("p≡{} mod 12", p % 12));
    ev.note("x_checked", 50);
    for _ in 0..50 {
        let x = loop {
            let x = rng.random_range(0..p);
            if x != bad {
                break x;
            }
        };
        if !check_bm6(ctx, ctx.residue(x as i64)).map_err(broken)? {
            ev.holds = false;
            ev.note("x", x);
            break;
        }
    }
    ev.done()
}

// ------------------------------------------------------------ central sums and P_[p/3] at quadratic points

fn thm_4_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p() as i64;
    let mut ev = Eval::new("");
    let (mut squares, mut vanishing, mut skipped, mut ramified_m) = (vec![], vec![], vec![], vec![]);
    for m in THM41_M {
        if m % p == 0 {
            skipped.push(m.to_string());
            continue;
        }
        let s = central(ctx, m)?;
        let r = frac(ctx, m - 108, m)?;
        let w = sqrt_in_ext(r).map_err(broken)?;
        let (p0, p1) = (legendre_third(ctx, w), legendre_third(ctx, -w));
        let h = half_power_sum(ctx, &t_curve(w));
        let sq = p0 * p0;
        let ok_root = sq == p1 * p1;
        let ok_sum = sq.base_part().map(|b| b.value()) == Some(s.value() % ctx.p());
        let ok_h = h * h == sq;
        let zero = p0.is_zero() || h.is_zero();
        // With p | m − 108, t = √(1−108/m) is not a p-adic integer and the mod p² part has no content.
        let ramified = (m - 108) % p == 0;
        if ramified {
            ramified_m.push(m.to_string());
        }
        let ok_zero = !zero || ramified || s.is_zero();
        if zero {
            vanishing.push(m.to_string());
        } else {
            squares.push(m.to_string());
        }
        if !(ok_root && ok_sum && ok_h && ok_zero) && ev.holds {
            ev.note("m", m).note("t", w).note("w^2", r);
            ev.cmp("P(t)^2", sq, p1 * p1);
            ev.cmp("sum_mod_p", QuadExtElem::from_base(Residue::from_raw(s.value() % ctx.p(), ctx.field())), sq);
            ev.cmp("H^2", h * h, sq);
            ev.note("sum_mod_p2", s);
            if !ok_zero {
                ev.cmp("sum_mod_p2", s.value(), 0);
            }
        }
    }
    ev.clause = format!("square clause for m in [{}]; vanishing clause for m in [{}]", squares.join(","), vanishing.join(","));
    if !skipped.is_empty() {
        ev.note("m_skipped", skipped.join(","));
    }
    if !ramified_m.is_empty() {
        ev.note("m_mod_p_only", ramified_m.join(","));
    }
    let mut v = ev.done()?;
    v.ambiguity = Ambiguity::AllChoices;
    Ok(v)
}

fn thm_4_2(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let s = central(ctx, -192)?;
    if p % 3 == 1 {
        let mut ev = Eval::new("p≡1 mod 3");
        let (l, _) = rep(&mut ev, p, 1, 27, Scale::FourP)?;
        sum_mod_p(&mut ev, ctx, s, l * l);
        ev.done()
    } else {
        let mut ev = Eval::new("p≡2 mod 3");
        sum_mod_p2(&mut ev, s, 0);
        ev.done()
    }
}

fn thm_4_3(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let s = central(ctx, 8)?;
    let t_of = |w: QuadExtElem| Ok(w.inv().map_err(broken)?.scale(5));
    if p_mod(p, 8, &[1, 3]) {
        let mut ev = Eval::new(format!("p≡{} mod 8", p % 8));
        let (c, _) = rep_norm(&mut ev, p, 2, Scale::P, NormRule::CMod4)?;
        sum_mod_p(&mut ev, ctx, s, 4 * c * c);
        let sign = neg_one_pow((p / 8) as i64);
        p_clause(ctx, -2, &ev, t_of, |w| Ok(base(ctx, sign * esym(w.lift(-2) - w)? * 2 * c)))
    } else {
        let mut ev = Eval::new(format!("p≡{} mod 8", p % 8));
        sum_mod_p2(&mut ev, s, 0);
        p_clause(ctx, -2, &ev, t_of, fixed(base(ctx, 0)))
    }
}

/// (u/11)·u and the (6/p)-twisted variant of a target.
fn u11(u: i64) -> i64 {
    jac(u, 11) * u
}

fn thm_4_4(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if p == 11 {
        return skip("p ≠ 11");
    }
    let s = central(ctx, 64)?;
    if jac(p as i64, 11) == 1 {
        let mut ev = Eval::new("(p/11)=1");
        let (u, _) = rep(&mut ev, p, 1, 11, Scale::FourP)?;
        sum_mod_p(&mut ev, ctx, s, u * u);
        let s3 = jac(p as i64, 3);
        let target = |w: QuadExtElem| Ok(base(ctx, -s3 * esym(w.lift(-11) + w)? * u11(u)));
        let mut v = p_clause(ctx, -11, &ev, scaled(ctx, 1, 4), target)?;
        // Diagnostic only: the P-clause with the extra factor (6/p).
        let twist = jac(6, p);
        let agree = roots(ctx, -11)?
            .iter()
            .map(|&w| Ok(legendre_third(ctx, w.scale(frac(ctx, 1, 4)?.value())) == target(w)?.scale(ctx.residue(twist).value())))
            .collect::<Result<Vec<bool>, Halt>>()?;
        v.witness.insert("twisted_by_(6/p)_matches".into(), agree.iter().all(|&b| b).to_string());
        Ok(v)
    } else {
        let mut ev = Eval::new("(p/11)=-1");
        sum_mod_p2(&mut ev, s, 0);
        p_clause(ctx, -11, &ev, scaled(ctx, 1, 4), fixed(base(ctx, 0)))
    }
}

fn cor_4_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 8, &[1, 3]) {
        return skip("needs p≡1,3 mod 8");
    }
    let mut shared = Eval::new(format!("p≡{} mod 8", p % 8));
    let (c, d) = rep_norm(&mut shared, p, 2, Scale::P, NormRule::CMod4)?;
    let mut out = vec![];
    for dd in [d, -d] {
        let mut ev = shared.clone();
        let t = frac(ctx, 5 * dd, c)?;
        let sign = if p % 8 == 3 { neg_one_pow((dd - 1).div_euclid(2)) } else { 1 };
        ev.note("d", dd).note("t", t).note("choice", format!("d={dd}"));
        ev.cmp("P", legendre_third(ctx, t), ctx.residue(sign * sym3(c - dd) * 2 * c));
        out.push(ev);
    }
    some_choice(out)
}

fn thm_4_5(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 8, &[1, 7]) {
        return skip("needs p≡1,7 mod 8");
    }
    let s = central(ctx, 216)?;
    let mut ev = Eval::new(format!("p≡{} mod 24", p % 24));
    if p_mod(p, 24, &[1, 7]) {
        let (x, _) = rep(&mut ev, p, 1, 6, Scale::P)?;
        sum_mod_p(&mut ev, ctx, s, 4 * x * x);
        p_clause(ctx, 2, &ev, scaled(ctx, 1, 2), fixed(base(ctx, 2 * x * sym3(x))))
    } else {
        sum_mod_p2(&mut ev, s, 0);
        p_clause(ctx, 2, &ev, scaled(ctx, 1, 2), fixed(base(ctx, 0)))
    }
}

fn thm_4_6(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 5, &[1, 4]) {
        return skip("needs p≡1,4 mod 5");
    }
    let s = central(ctx, -27)?;
    let mut ev = Eval::new(format!("p≡{} mod 15", p % 15));
    if p_mod(p, 15, &[1, 4]) {
        let (x, _) = rep(&mut ev, p, 1, 15, Scale::P)?;
        sum_mod_p(&mut ev, ctx, s, 4 * x * x);
        p_clause(ctx, 5, &ev, scaled(ctx, 1, 1), fixed(base(ctx, 2 * x * sym3(x))))
    } else {
        sum_mod_p2(&mut ev, s, 0);
        p_clause(ctx, 5, &ev, scaled(ctx, 1, 1), fixed(base(ctx, 0)))
    }
}

fn eq_1_1_proved(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 5, &[1, 4]) {
        return skip("proved rows need p≡1,4 mod 5");
    }
    let s = central(ctx, -27)?;
    let mut ev = Eval::new(format!("p≡{} mod 15", p % 15));
    if p_mod(p, 15, &[1, 4]) {
        let (x, _) = rep(&mut ev, p, 1, 15, Scale::P)?;
        sum_mod_p(&mut ev, ctx, s, 4 * x * x);
    } else {
        sum_mod_p2(&mut ev, s, 0);
    }
    ev.done()
}

fn thm_4_7(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 5, &[1, 4]) {
        return skip("needs p≡1,4 mod 5");
    }
    let s = central(ctx, -8640)?;
    let mut ev = Eval::new(format!("p≡{} mod 15", p % 15));
    if p_mod(p, 15, &[1, 4]) {
        let (x, _) = rep(&mut ev, p, 1, 75, Scale::FourP)?;
        sum_mod_p(&mut ev, ctx, s, x * x);
        p_clause(ctx, 5, &ev, scaled(ctx, 9, 20), fixed(base(ctx, -sym3(x) * x)))
    } else {
        sum_mod_p2(&mut ev, s, 0);
        p_clause(ctx, 5, &ev, scaled(ctx, 9, 20), fixed(base(ctx, 0)))
    }
}

/// The three theorems at b = 17, 41, 89.
struct CmFamily {
    b: i64,
    num: i64,
    den: i64,
    m: i64,
}

const FAM17: CmFamily = CmFamily { b: 17, num: 1, den: 4, m: -1728 };
const FAM41: CmFamily = CmFamily { b: 41, num: 5, den: 32, m: -110_592 };
const FAM89: CmFamily = CmFamily { b: 89, num: 53, den: 500, m: -27_000_000 };

fn thm_cm(env: &Env, f: &CmFamily) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if p as i64 == f.b {
        return skip(format!("p ≠ {}", f.b));
    }
    if jac(f.b, p) != 1 {
        return skip(format!("needs ({}/p)=1", f.b));
    }
    let s = central(ctx, f.m)?;
    let t_of = scaled(ctx, f.num, f.den);
    if p % 3 == 1 {
        let mut ev = Eval::new("p≡1 mod 3");
        let (x, _) = rep(&mut ev, p, 1, 3 * f.b as u64, Scale::FourP)?;
        sum_mod_p(&mut ev, ctx, s, x * x);
        p_clause(ctx, f.b, &ev, t_of, fixed(base(ctx, -sym3(x) * x)))
    } else {
        let mut ev = Eval::new("p≡2 mod 3");
        sum_mod_p2(&mut ev, s, 0);
        p_clause(ctx, f.b, &ev, t_of, fixed(base(ctx, 0)))
    }
}

fn thm_4_8(env: &Env) -> Run {
    thm_cm(env, &FAM17)
}

fn thm_4_9(env: &Env) -> Run {
    thm_cm(env, &FAM41)
}

fn thm_4_10(env: &Env) -> Run {
    if env.p() <= 5 {
        return skip("needs p > 5");
    }
    thm_cm(env, &FAM89)
}

fn v2(n: i64) -> (u32, i64) {
    let a = n.trailing_zeros();
    (a, n >> a)
}

fn cor_4_2(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if p == 11 || jac(p as i64, 11) != 1 {
        return skip("needs (p/11)=1");
    }
    let mut shared = Eval::new("(p/11)=1");
    let (u0, v0) = rep(&mut shared, p, 1, 11, Scale::FourP)?;
    let half = ((p - 1) / 2) as i64;
    let two = jac(2, p);
    let mut twisted = false;
    let mut out = vec![];
    for (u, v) in [(u0, v0), (u0, -v0), (-u0, v0), (-u0, -v0)] {
        let mut ev = shared.clone();
        let t = frac(ctx, u, 4 * v)?;
        let (alpha, vodd) = v2(v);
        let (beta, wodd) = v2(u - 11 * v);
        let sign = neg_one_pow(half * ((vodd - wodd) / 2));
        let twos = if (alpha + beta) % 2 == 0 { 1 } else { two };
        ev.note("u", u).note("v", v).note("alpha", alpha).note("beta", beta).note("t", t);
        ev.note("choice", format!("u={u},v={v}"));
        let rhs = sign * twos * sym3(v - u) * u;
        let got = legendre_third(ctx, t);
        twisted |= got == ctx.residue(jac(6, p) * rhs);
        ev.cmp("P", got, ctx.residue(rhs));
        out.push(ev);
    }
    let mut v = some_choice(out)?;
    v.witness.insert("twisted_by_(6/p)_matches".into(), twisted.to_string());
    Ok(v)
}

// ------------------------------------------------------------ character-sum evaluations

fn lem_4_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let mut rng = env.rng();
    let mut ev = Eval::new("scaling by a: half-power congruence and exact symbol identity");
    let mut r = || ctx.residue(rng.random_range(0..p) as i64);
    for _ in 0..100 {
        let (a, m, n) = (r(), r(), r());
        if !check_scaling_lemma41(ctx, a, m, n) {
            ev.holds = false;
            ev.note("a", a).note("m", m).note("n", n);
            return ev.done();
        }
    }
    let d = (2..p as i64).find(|&d| jac(d, p) == -1).expect("odd primes have non-residues");
    let dr = ctx.residue(d);
    for _ in 0..5 {
        let mut e = || QuadExtElem::new(r(), r(), dr).map_err(broken);
        let (a, m, n) = (e()?, e()?, e()?);
        if !check_scaling_ext(a, m, n) {
            ev.holds = false;
            ev.note("a", a).note("m", m).note("n", n).note("w^2", d);
            return ev.done();
        }
    }
    ev.note("triples", "100 base + 5 extension");
    ev.done()
}

fn c_case(p: u64) -> String {
    format!("p≡{} mod 8", p % 8)
}

fn lem_4_2(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let s = char_sum_raw(ctx, ctx.residue(-30).value(), ctx.residue(-56).value());
    let mut ev = Eval::new(c_case(p));
    if p_mod(p, 8, &[1, 3]) {
        let (c, _) = rep_norm(&mut ev, p, 2, Scale::P, NormRule::CMod4)?;
        ev.cmp("char_sum", s, neg_one_pow((p / 8) as i64 + 1) * jac(3, p) * 2 * c);
    } else {
        ev.cmp("char_sum", s, 0);
    }
    ev.done()
}

/// Half-power sum of x³ + m(w)x + n(w) for both roots w of r.
fn ext_sum_clause(
    ctx: &PrimeCtx,
    r: i64,
    shared: &Eval,
    coeffs: impl Fn(QuadExtElem) -> (QuadExtElem, QuadExtElem),
    target: impl Fn(QuadExtElem) -> Result<QuadExtElem, Halt>,
) -> Run {
    let mut out = vec![];
    for w in roots(ctx, r)? {
        let mut ev = shared.clone();
        let (m, n) = coeffs(w);
        ev.note("w", w).note("w^2", r).note("m", m).note("n", n).note("choice", format!("w={w}"));
        ev.cmp("half_power_sum", half_power_sum(ctx, &CubicCurve::new(m, n)), target(w)?);
        out.push(ev);
    }
    all_choices(out)
}

fn lem_4_3(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let coeffs = |w: QuadExtElem| (-(w.lift(15) + w.scale(30)), w.lift(-28) + w.scale(70));
    let mut ev = Eval::new(c_case(p));
    if p_mod(p, 8, &[1, 3]) {
        let (c, _) = rep_norm(&mut ev, p, 2, Scale::P, NormRule::CMod4)?;
        let k = neg_one_pow((p / 8) as i64 + 1) * jac(3, p) * 2 * c;
        ext_sum_clause(ctx, -2, &ev, coeffs, |w| Ok(base(ctx, esym(w.lift(2) + w)? * k)))
    } else {
        ext_sum_clause(ctx, -2, &ev, coeffs, fixed(base(ctx, 0)))
    }
}

fn lem_4_4(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if p == 11 {
        return skip("p ≠ 11");
    }
    let s = char_sum_raw(ctx, ctx.residue(-264).value(), ctx.residue(1694).value());
    if jac(p as i64, 11) == 1 {
        let mut ev = Eval::new("(p/11)=1");
        let (u, _) = rep(&mut ev, p, 1, 11, Scale::FourP)?;
        ev.cmp("char_sum", s, u11(u));
        ev.note("twisted_by_(6/p)_matches", s == jac(6, p) * u11(u));
        ev.done()
    } else {
        let mut ev = Eval::new("(p/11)=-1");
        ev.cmp("char_sum", s, 0);
        ev.done()
    }
}

fn lem_4_5(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if p == 11 {
        return skip("p ≠ 11");
    }
    let coeffs = |w: QuadExtElem| ((w.lift(-5) + w).scale(12), (w.lift(11) - w.scale(4)).scale(14));
    if jac(p as i64, 11) == 1 {
        let mut ev = Eval::new("(p/11)=1");
        let (u, _) = rep(&mut ev, p, 1, 11, Scale::FourP)?;
        let target = |w: QuadExtElem| Ok(base(ctx, esym(w.lift(-22) + w.scale(2))? * u11(u)));
        let mut v = ext_sum_clause(ctx, -11, &ev, coeffs, target)?;
        let twist = ctx.residue(jac(6, p)).value();
        let agree = roots(ctx, -11)?
            .iter()
            .map(|&w| {
                let (m, n) = coeffs(w);
                Ok(half_power_sum(ctx, &CubicCurve::new(m, n)) == target(w)?.scale(twist))
            })
            .collect::<Result<Vec<bool>, Halt>>()?;
        v.witness.insert("twisted_by_(6/p)_matches".into(), agree.iter().all(|&b| b).to_string());
        Ok(v)
    } else {
        let ev = Eval::new("(p/11)=-1");
        ext_sum_clause(ctx, -11, &ev, coeffs, fixed(base(ctx, 0)))
    }
}

/// Exact character sums over both roots w ∈ F_p of r.
fn base_sum_clause(ctx: &PrimeCtx, r: i64, shared: &Eval, coeffs: impl Fn(Residue) -> (Residue, Residue), target: impl Fn(Residue) -> Result<i64, Halt>) -> Run {
    let mut out = vec![];
    for w in roots(ctx, r)? {
        let w = w.base_part().ok_or_else(|| broken(format!("{r} is not a square mod p")))?;
        let mut ev = shared.clone();
        let (m, n) = coeffs(w);
        ev.note("w", w).note("w^2", r).note("m", m).note("n", n).note("choice", format!("w={w}"));
        ev.cmp("char_sum", char_sum_raw(ctx, m.value(), n.value()), target(w)?);
        out.push(ev);
    }
    all_choices(out)
}

fn lin(ctx: &PrimeCtx, a: i64, b: i64, w: Residue) -> Residue {
    ctx.residue(a) + ctx.residue(b) * w
}

fn lem_4_6(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 8, &[1, 7]) {
        return skip("needs p≡±1 mod 8");
    }
    let coeffs = |w| (lin(ctx, -15, 6, w), lin(ctx, 24, -14, w));
    let mut ev = Eval::new(format!("p≡{} mod 24", p % 24));
    if p_mod(p, 24, &[1, 7]) {
        let (x, _) = rep(&mut ev, p, 1, 6, Scale::P)?;
        base_sum_clause(ctx, 2, &ev, coeffs, |_| Ok(2 * x * sym3(2 * x)))
    } else {
        base_sum_clause(ctx, 2, &ev, coeffs, |_| Ok(0))
    }
}

fn lem_4_7(env: &Env) -> Run {
    fifteen_lemma(env, (-15, 12), (42, -28))
}

/// Character sums over the √5 curves with value 2x(2x/3), p = x² + 15y².
fn fifteen_lemma(env: &Env, m: (i64, i64), n: (i64, i64)) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 5, &[1, 4]) {
        return skip("needs p≡±1 mod 5");
    }
    let coeffs = |w| (lin(ctx, m.0, m.1, w), lin(ctx, n.0, n.1, w));
    let mut ev = Eval::new(format!("p≡{} mod 15", p % 15));
    if p_mod(p, 15, &[1, 4]) {
        let (x, _) = rep(&mut ev, p, 1, 15, Scale::P)?;
        base_sum_clause(ctx, 5, &ev, coeffs, |_| Ok(2 * x * sym3(2 * x)))
    } else {
        base_sum_clause(ctx, 5, &ev, coeffs, |_| Ok(0))
    }
}

fn lem_4_8(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 5, &[1, 4]) {
        return skip("needs p≡±1 mod 5");
    }
    let coeffs = |w| (lin(ctx, -300, 108, w), lin(ctx, -2520, 1042, w));
    let mut ev = Eval::new(format!("p≡{} mod 15", p % 15));
    if p_mod(p, 15, &[1, 4]) {
        let (x, _) = rep(&mut ev, p, 1, 75, Scale::FourP)?;
        base_sum_clause(ctx, 5, &ev, coeffs, |w: Residue| Ok(ctx.chi((w + w).value()) as i64 * sym3(x) * x))
    } else {
        base_sum_clause(ctx, 5, &ev, coeffs, |_| Ok(0))
    }
}

// ------------------------------------------------------------ conjectures

/// w·v for the chosen root w.
fn times_root(ctx: &PrimeCtx, v: i64) -> impl Fn(QuadExtElem) -> Result<QuadExtElem, Halt> + '_ {
    move |w| Ok(w.scale(ctx.residue(v).value()))
}

fn conj_4_1(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 24, &[5, 11, 13, 19]) {
        return skip("needs p≡5,11,13,19 mod 24");
    }
    let mut ev = Eval::new(format!("p≡{} mod 24", p % 24));
    if p_mod(p, 24, &[5, 11]) {
        let (x, _) = rep(&mut ev, p, 2, 3, Scale::P)?;
        p_clause(ctx, 2, &ev, scaled(ctx, 1, 2), times_root(ctx, -2 * x * sym3(x)))
    } else {
        p_clause(ctx, 2, &ev, scaled(ctx, 1, 2), fixed(base(ctx, 0)))
    }
}

fn conj_4_2(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 15, &[2, 7, 8, 13]) {
        return skip("needs p≡2,7,8,13 mod 15");
    }
    let mut ev = Eval::new(format!("p≡{} mod 15", p % 15));
    if p_mod(p, 15, &[2, 8]) {
        let (x, _) = rep(&mut ev, p, 5, 3, Scale::P)?;
        p_clause(ctx, 5, &ev, scaled(ctx, 1, 1), times_root(ctx, 2 * x * sym3(x)))
    } else {
        p_clause(ctx, 5, &ev, scaled(ctx, 1, 1), fixed(base(ctx, 0)))
    }
}

/// Σ (a·k + b) C(2k,k)²C(3k,k) m^{−k} ≡ want mod p³.
fn weighted_cube(env: &Env, a: i64, b: i64, m: i64, want: i64, clause: String) -> Run {
    let ctx = env.ctx;
    let md = ctx.modulus(3).or_else(|_| skip("p^3 exceeds the word cap"))?;
    let s = ctx.sum_central_weighted(a, b, m, 3).or_else(|_| skip(format!("p divides m = {m}")))?;
    let mut ev = Eval::new(clause);
    ev.cmp("sum_mod_p3", s, md.residue(want));
    ev.done()
}

fn conj_4_3(env: &Env) -> Run {
    let p = env.p();
    if p <= 5 {
        return skip("needs p > 5");
    }
    let s = jac(p as i64, 15);
    weighted_cube(env, 9, 1, -8640, p as i64 * s, format!("(p/15)={s}"))
}

fn conj_4_4(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if !p_mod(p, 30, &[7, 13, 17, 23]) {
        return skip("needs p≡7,13,17,23 mod 30");
    }
    let mut ev = Eval::new(format!("p≡{} mod 30", p % 30));
    if p_mod(p, 30, &[7, 13]) {
        let (_, y) = rep(&mut ev, p, 3, 25, Scale::FourP)?;
        p_clause(ctx, 5, &ev, scaled(ctx, 9, 20), fixed(base(ctx, 5 * y * sym3(y))))
    } else {
        p_clause(ctx, 5, &ev, scaled(ctx, 9, 20), fixed(base(ctx, 0)))
    }
}

fn conj_cm(env: &Env, f: &CmFamily) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if jac(p as i64, f.b as u64) != -1 {
        return skip(format!("needs (p/{})=-1", f.b));
    }
    let t_of = scaled(ctx, f.num, f.den);
    if p % 3 == 1 {
        let ev = Eval::new("p≡1 mod 3");
        p_clause(ctx, f.b, &ev, t_of, fixed(base(ctx, 0)))
    } else {
        let mut ev = Eval::new("p≡2 mod 3");
        let (_, y) = rep(&mut ev, p, 3, f.b as u64, Scale::FourP)?;
        p_clause(ctx, f.b, &ev, t_of, times_root(ctx, -sym3(y) * y))
    }
}

fn conj_4_5(env: &Env) -> Run {
    conj_cm(env, &FAM17)
}

fn conj_4_6(env: &Env) -> Run {
    conj_cm(env, &FAM41)
}

fn conj_4_7(env: &Env) -> Run {
    if env.p() <= 5 {
        return skip("needs p > 5");
    }
    conj_cm(env, &FAM89)
}

fn conj_4_8(env: &Env) -> Run {
    fifteen_lemma(env, (-375, 132), (3234, -1540))
}

fn conj_4_9(env: &Env) -> Run {
    let p = env.p();
    if p <= 5 {
        return skip("needs p > 5");
    }
    let s = jac(p as i64, 3);
    weighted_cube(env, 33, 4, 3375, 4 * p as i64 * s, format!("(p/3)={s}"))
}

fn conj_4_10(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    if p <= 5 {
        return skip("needs p > 5");
    }
    let mut ev = Eval::new(format!("p≡{} mod 30", p % 30));
    let t_of = scaled(ctx, 11, 25);
    if p_mod(p, 30, &[1, 19]) {
        let (x, _) = rep(&mut ev, p, 1, 15, Scale::P)?;
        p_clause(ctx, 5, &ev, t_of, fixed(base(ctx, 2 * x * sym3(x))))
    } else if p_mod(p, 30, &[17, 23]) {
        let (_, y) = rep(&mut ev, p, 3, 5, Scale::P)?;
        p_clause(ctx, 5, &ev, t_of, times_root(ctx, -2 * y * sym3(y)))
    } else {
        p_clause(ctx, 5, &ev, t_of, fixed(base(ctx, 0)))
    }
}

fn conj_4_11(env: &Env) -> Run {
    let p = env.p() as i64;
    let s = neg_one_pow((p - 1) / 2);
    weighted_cube(env, 15, 2, 1458, s * 2 * p, format!("(-1)^((p-1)/2)={s}"))
}

fn conj_4_12(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let t_of = scaled(ctx, 5, 9);
    if p % 3 == 1 {
        let mut ev = Eval::new("p≡1 mod 3");
        let (x, _) = rep(&mut ev, p, 1, 3, Scale::P)?;
        let s = neg_one_pow(((p - 1) / 2) as i64);
        p_clause(ctx, 3, &ev, t_of, fixed(base(ctx, s * 2 * x * sym3(x))))
    } else {
        let ev = Eval::new("p≡2 mod 3");
        p_clause(ctx, 3, &ev, t_of, fixed(base(ctx, 0)))
    }
}

fn conj_a46(env: &Env) -> Run {
    let ctx = env.ctx;
    let p = ctx.p();
    let md = ctx.modulus(2).or_else(|_| skip("p^2 exceeds the word cap"))?;
    let x24 = rational_residue(1, 24, md).map_err(broken)?;
    let x216 = rational_residue(1, -216, md).map_err(broken)?;
    let s24 = ctx.sum_pair(x24, p - 1).map_err(broken)?;
    let s216 = ctx.sum_pair(x216, p - 1).map_err(broken)?;
    if p % 3 == 1 {
        let mut ev = Eval::new("p≡1 mod 3");
        let b = binom_punit(2 * (p - 1) / 3, (p - 1) / 3, md).reconstruct();
        ev.cmp("sum_24_mod_p2", s24, b);
        ev.cmp("sum_216_mod_p2", s216, b);
        ev.done()
    } else {
        let mut ev = Eval::new("p≡2 mod 3");
        ev.note("sum_24_mod_p2", s24).note("sum_216_mod_p2", s216);
        ev.cmp("sum_24_mod_p", s24.value() % p, 0);
        ev.cmp("sum_216_mod_p", s216.value() % p, 0);
        ev.done()
    }
}

/// One row of a mod-p² table: the clause name and the expected value.
fn table_row(env: &Env, m: i64, row: impl FnOnce(&mut Eval) -> Result<(String, i64), Halt>) -> Run {
    let s = central(env.ctx, m)?;
    let mut ev = Eval::new("");
    let (clause, want) = row(&mut ev)?;
    ev.clause = clause;
    sum_mod_p2(&mut ev, s, want);
    ev.done()
}

fn conj_a5(env: &Env) -> Run {
    let p = env.p();
    table_row(env, 8, |ev| {
        Ok(if p_mod(p, 8, &[1, 3]) {
            let (c, _) = rep(ev, p, 1, 2, Scale::P)?;
            (format!("p≡{} mod 8: 4c^2-2p", p % 8), 4 * c * c - 2 * p as i64)
        } else {
            (format!("p≡{} mod 8: 0", p % 8), 0)
        })
    })
}

fn conj_a4(env: &Env) -> Run {
    let p = env.p();
    if p == 11 {
        return skip("p ≠ 11");
    }
    table_row(env, 64, |ev| {
        Ok(if jac(p as i64, 11) == 1 {
            let (u, _) = rep(ev, p, 1, 11, Scale::FourP)?;
            ("(p/11)=1: u^2-2p".into(), u * u - 2 * p as i64)
        } else {
            ("(p/11)=-1: 0".into(), 0)
        })
    })
}

fn conj_a14(env: &Env) -> Run {
    let p = env.p();
    let pp = p as i64;
    table_row(env, 216, |ev| {
        let r = p % 24;
        Ok(if p_mod(p, 24, &[1, 7]) {
            let (x, _) = rep(ev, p, 1, 6, Scale::P)?;
            (format!("p≡{r} mod 24: 4x^2-2p"), 4 * x * x - 2 * pp)
        } else if p_mod(p, 24, &[5, 11]) {
            let (x, _) = rep(ev, p, 2, 3, Scale::P)?;
            (format!("p≡{r} mod 24: 8x^2-2p"), 8 * x * x - 2 * pp)
        } else {
            (format!("p≡{r} mod 24: 0"), 0)
        })
    })
}

fn conj_a13_full(env: &Env) -> Run {
    let p = env.p();
    if p == 5 {
        return skip("p=5 lies in no residue class of the table");
    }
    let pp = p as i64;
    table_row(env, -27, |ev| {
        let r = p % 15;
        Ok(if p_mod(p, 15, &[1, 4]) {
            let (x, _) = rep(ev, p, 1, 15, Scale::P)?;
            (format!("p≡{r} mod 15: 4x^2-2p"), 4 * x * x - 2 * pp)
        } else if p_mod(p, 15, &[2, 8]) {
            let (x, _) = rep(ev, p, 5, 3, Scale::P)?;
            (format!("p≡{r} mod 15: 20x^2-2p"), 20 * x * x - 2 * pp)
        } else {
            (format!("p≡{r} mod 15: 0"), 0)
        })
    })
}

fn conj_8640_full(env: &Env) -> Run {
    let p = env.p();
    if p <= 5 {
        return skip("needs p > 5");
    }
    let pp = p as i64;
    table_row(env, -8640, |ev| {
        let r = p % 15;
        Ok(if p_mod(p, 15, &[1, 4]) {
            let (x, _) = rep(ev, p, 1, 75, Scale::FourP)?;
            (format!("p≡{r} mod 15: x^2-2p"), x * x - 2 * pp)
        } else if p_mod(p, 15, &[7, 13]) {
            let (x, _) = rep(ev, p, 3, 25, Scale::FourP)?;
            (format!("p≡{r} mod 15: 2p-3x^2"), 2 * pp - 3 * x * x)
        } else {
            (format!("p≡{r} mod 15: 0"), 0)
        })
    })
}

fn conj_15cubed(env: &Env) -> Run {
    let p = env.p();
    if p == 5 {
        return skip("p divides 15^3");
    }
    let pp = p as i64;
    table_row(env, 3375, |ev| {
        let r = p % 15;
        Ok(if p_mod(p, 15, &[1, 4]) {
            let (x, _) = rep(ev, p, 1, 15, Scale::P)?;
            (format!("p≡{r} mod 15: 4x^2-2p"), 4 * x * x - 2 * pp)
        } else if p_mod(p, 15, &[2, 8]) {
            let (x, _) = rep(ev, p, 3, 5, Scale::P)?;
            (format!("p≡{r} mod 15: 2p-12x^2"), 2 * pp - 12 * x * x)
        } else {
            (format!("p≡{r} mod 15: 0"), 0)
        })
    })
}

fn conj_1458(env: &Env) -> Run {
    let p = env.p();
    table_row(env, 1458, |ev| {
        Ok(if p % 3 == 1 {
            let (x, _) = rep(ev, p, 1, 3, Scale::P)?;
            ("p≡1 mod 3: 4x^2-2p".into(), 4 * x * x - 2 * p as i64)
        } else {
            ("p≡2 mod 3: 0".into(), 0)
        })
    })
}

fn conj_cm_table(env: &Env, f: &CmFamily) -> Run {
    let p = env.p();
    if p as i64 == f.b {
        return skip(format!("p ≠ {}", f.b));
    }
    let pp = p as i64;
    let b = f.b as u64;
    table_row(env, f.m, |ev| {
        let (s3, sb) = (jac(pp, 3), jac(pp, b));
        let head = format!("(p/3)={s3}, (p/{b})={sb}");
        Ok(match (s3, sb) {
            (1, 1) => {
                let (x, _) = rep(ev, p, 1, 3 * b, Scale::FourP)?;
                (format!("{head}: x^2-2p"), x * x - 2 * pp)
            }
            (-1, -1) => {
                let (x, _) = rep(ev, p, 3, b, Scale::FourP)?;
                (format!("{head}: 2p-3x^2"), 2 * pp - 3 * x * x)
            }
            _ => (format!("{head}: 0"), 0),
        })
    })
}

fn conj_a20(env: &Env) -> Run {
    conj_cm_table(env, &FAM17)
}

fn conj_a22(env: &Env) -> Run {
    conj_cm_table(env, &FAM41)
}

fn conj_a23(env: &Env) -> Run {
    conj_cm_table(env, &FAM89)
}

// ------------------------------------------------------------ registry

const fn spec(id: &'static str, kind: Kind, summary: &'static str, applicability: &'static str, run: fn(&Env) -> Run) -> CheckSpec {
    CheckSpec { id, kind, summary, applicability, run }
}

use Kind::{Conjecture as Cj, Corollary as Co, Lemma as Le, Theorem as Th};

pub static REGISTRY: [CheckSpec; 54] = [
    spec("thm-2.1", Th, "Σ C(2k,k)²C(3k,k)(x(1−27x))^k ≡ (Σ C(2k,k)C(3k,k)x^k)² mod p², 20 random x mod p²", "p > 3", thm_2_1),
    spec("cor-2.1", Co, "Σ C(2k,k)²C(3k,k)/m^k ≡ (Σ C(2k,k)C(3k,k)((1−t)/54)^k)² mod p², t² = 1−108/m, both t", "p > 3; per m: p ∤ m, m ≢ 108", cor_2_1),
    spec("thm-3.1", Th, "P_[p/3](t) ≡ −(p/3) Σχ(x³+3(4t−5)x+2(2t²−14t+11)) mod p", "p > 3; all t for p ≤ 500, 20 random t above", thm_3_1),
    spec("cor-3.1", Co, "truncated pair sum ≡ P_[p/3](t) ≡ −(p/3)·half-power sum ≡ full pair sum mod p", "p > 3; all t for p ≤ 500, 20 random t above", cor_3_1),
    spec("cor-3.2", Co, "Σχ(t-curve) = (p/3)·Σχ(mirror curve) exactly", "p ≥ 17; all t for p ≤ 500, 20 random t above", cor_3_2),
    spec("cor-3.3", Co, "Σχ(x³−120x+506) = (2/p)L if p≡1 mod 3 (4p=L²+27M², L≡1 mod 3), 0 if p≡2 mod 3", "p > 3", cor_3_3),
    spec("thm-3.2", Th, "pair sums at 1/(−216), 1/24 truncated at [p/3] ≡ P_[p/3](5/4) ≡ −L ≡ (−2/p)C(2(p−1)/3,[p/12]); all 0 if p≡2 mod 3", "p > 3", thm_3_2),
    spec("thm-4.1", Th, "Σ C(2k,k)²C(3k,k)/m^k ≡ P_[p/3](t)² ≡ H(t)² mod p, t=√(1−108/m); vanishing P or H forces 0 mod p², for the nine m-values", "p > 3; per m: p ∤ m", thm_4_1),
    spec("thm-4.2", Th, "m = −192: L² mod p if p≡1 mod 3 (4p=L²+27M²), 0 mod p² if p≡2 mod 3", "p > 3", thm_4_2),
    spec("thm-4.3", Th, "P_[p/3](5/√−2) ≡ (−1)^[p/8]((−2−√−2)/p)2c and m = 8 sum ≡ 4c² (p=c²+2d², c≡1 mod 4); 0 and 0 mod p² if p≡5,7 mod 8", "p > 3; both roots of −2", thm_4_3),
    spec("thm-4.4", Th, "P_[p/3](√−11/4) ≡ −(p/3)((−11+√−11)/p)(u/11)u and m = 64 sum ≡ u² (4p=u²+11v²); 0 and 0 mod p² if (p/11)=−1", "p > 3, p ≠ 11; both roots of −11", thm_4_4),
    spec("cor-4.1", Co, "P_[p/3](5d/c) ≡ ((c−d)/3)2c, times (−1)^((d−1)/2) when p≡3 mod 8", "p≡1,3 mod 8; p=c²+2d², c≡1 mod 4; some sign of d", cor_4_1),
    spec("thm-4.5", Th, "P_[p/3](√2/2) ≡ 2x(x/3) and m = 216 sum ≡ 4x² (p=x²+6y²≡1,7 mod 24); 0 and 0 mod p² if p≡17,23 mod 24", "p≡1,7 mod 8; both roots of 2", thm_4_5),
    spec("thm-4.6", Th, "P_[p/3](√5) ≡ 2x(x/3) and m = −27 sum ≡ 4x² (p=x²+15y²≡1,4 mod 15); 0 and 0 mod p² if p≡11,14 mod 15", "p≡1,4 mod 5; both roots of 5", thm_4_6),
    spec("thm-4.7", Th, "P_[p/3](9√5/20) ≡ −(x/3)x and m = −8640 sum ≡ x² (4p=x²+75y²); 0 and 0 mod p² if p≡11,14 mod 15", "p≡1,4 mod 5; both roots of 5", thm_4_7),
    spec("thm-4.8", Th, "P_[p/3](√17/4) ≡ −(x/3)x and m = −12³ sum ≡ x² (4p=x²+51y²) if p≡1 mod 3; 0 and 0 mod p² if p≡2 mod 3", "(17/p)=1, p ≠ 17; both roots of 17", thm_4_8),
    spec("thm-4.9", Th, "P_[p/3](5√41/32) ≡ −(x/3)x and m = −48³ sum ≡ x² (4p=x²+123y²) if p≡1 mod 3; 0 and 0 mod p² if p≡2 mod 3", "(41/p)=1, p ≠ 41; both roots of 41", thm_4_9),
    spec("thm-4.10", Th, "P_[p/3](53√89/500) ≡ −(x/3)x and m = −300³ sum ≡ x² (4p=x²+267y²) if p≡1 mod 3; 0 and 0 mod p² if p≡2 mod 3", "p > 5, (89/p)=1, p ≠ 89; both roots of 89", thm_4_10),
    spec("cor-4.2", Co, "P_[p/3](u/(4v)) ≡ (−1)^((p−1)/2·(v0−w)/2)(2/p)^(α+β)((v−u)/3)u, v=2^α v0, u−11v=2^β w", "(p/11)=1; 4p=u²+11v²; some signs of u, v", cor_4_2),
    spec("lem-2.1", Le, "Σ_k C(2k,k)²C(3k,k)C(k,m−k)(−27)^(m−k) = Σ_k A(k)A(m−k), A(k)=C(2k,k)C(3k,k), exactly at m = p", "p ≤ 1000", lem_2_1),
    spec("lem-4.1", Le, "Σ(x³+a²mx+a³n)^((p−1)/2) ≡ a^((p−1)/2)Σ(x³+mx+n)^((p−1)/2); exact with symbols for integer a, m, n", "p > 3; 100 base and 5 extension triples", lem_4_1),
    spec("lem-4.2", Le, "Σχ(x³−30x−56) = (−1)^([p/8]+1)(3/p)2c if p≡1,3 mod 8 (c≡1 mod 4), 0 if p≡5,7 mod 8", "p > 3", lem_4_2),
    spec("lem-4.3", Le, "Σ(x³−(15+30√−2)x−28+70√−2)^((p−1)/2) ≡ ((2+√−2)/p)(−1)^([p/8]+1)(3/p)2c, or 0 if p≡5,7 mod 8", "p > 3; both roots of −2", lem_4_3),
    spec("lem-4.4", Le, "Σχ(x³−264x+1694) = (u/11)u if (p/11)=1 (4p=u²+11v²), 0 if (p/11)=−1", "p > 3, p ≠ 11", lem_4_4),
    spec("lem-4.5", Le, "Σ(x³+12(−5+√−11)x+14(11−4√−11))^((p−1)/2) ≡ ((−22+2√−11)/p)(u/11)u, or 0 if (p/11)=−1", "p > 3, p ≠ 11; both roots of −11", lem_4_5),
    spec("lem-4.6", Le, "Σχ(x³+(−15+6√2)x+24−14√2) = 2x(2x/3) if p≡1,7 mod 24 (p=x²+6y²), 0 if p≡17,23 mod 24", "p≡±1 mod 8; both roots of 2", lem_4_6),
    spec("lem-4.7", Le, "Σχ(x³+(−15+12√5)x+42−28√5) = 2x(2x/3) if p≡1,4 mod 15 (p=x²+15y²), 0 if p≡11,14 mod 15", "p≡±1 mod 5; both roots of 5", lem_4_7),
    spec("lem-4.8", Le, "Σχ(x³+(−300+108√5)x−2520+1042√5) = (2√5/p)(x/3)x if p≡1,4 mod 15 (4p=x²+75y²), 0 if p≡11,14 mod 15", "p≡±1 mod 5; both roots of 5", lem_4_8),
    spec("eq-3.3", Th, "Σχ(x³+mx+n) ≡ −(−48m)^((1−(p/3))/2)(864n)^((1−(−1/p))/2)(−16(4m³+27n²))^[p/12] J_p(6912m³/(4m³+27n²)) mod p", "p > 3; 50 random admissible (m, n) plus m = 0 and n = 0 when admissible", eq_3_3),
    spec("eq-3.5-bm6", Th, "W_[p/3](1−x/27) ≡ u_p(x)(x−27)^[p/12] J_p(x(x−24)³/(x−27)) mod p", "p > 3; 50 random x ≢ 27", eq_3_5_bm6),
    spec("eq-1.1-proved-part", Th, "m = −27 sum ≡ 4x² mod p (p=x²+15y²≡1,4 mod 15), 0 mod p² if p≡11,14 mod 15", "p≡1,4 mod 5", eq_1_1_proved),
    spec("conj-4.1", Cj, "P_[p/3](√2/2) ≡ 0 if p≡13,19 mod 24, −2x(x/3)√2 if p=2x²+3y²≡5,11 mod 24", "p≡5,11,13,19 mod 24; both roots of 2", conj_4_1),
    spec("conj-4.2", Cj, "P_[p/3](√5) ≡ 0 if p≡7,13 mod 15, 2x(x/3)√5 if p=5x²+3y²≡2,8 mod 15", "p≡2,7,8,13 mod 15; both roots of 5", conj_4_2),
    spec("conj-4.3", Cj, "Σ(9k+1)C(2k,k)²C(3k,k)/(−8640)^k ≡ p(p/15) mod p³", "p > 5", conj_4_3),
    spec("conj-4.4", Cj, "P_[p/3](9√5/20) ≡ 5y(y/3) if p≡7,13 mod 30 (4p=3x²+25y²), 0 if p≡17,23 mod 30", "p≡7,13,17,23 mod 30; both roots of 5", conj_4_4),
    spec("conj-4.5", Cj, "P_[p/3](√17/4) ≡ 0 if p≡1 mod 3, −(y/3)y√17 if p≡2 mod 3 (4p=3x²+17y²)", "(p/17)=−1; both roots of 17", conj_4_5),
    spec("conj-4.6", Cj, "P_[p/3](5√41/32) ≡ 0 if p≡1 mod 3, −(y/3)y√41 if p≡2 mod 3 (4p=3x²+41y²)", "(p/41)=−1; both roots of 41", conj_4_6),
    spec("conj-4.7", Cj, "P_[p/3](53√89/500) ≡ 0 if p≡1 mod 3, −(y/3)y√89 if p≡2 mod 3 (4p=3x²+89y²)", "p > 5, (p/89)=−1; both roots of 89", conj_4_7),
    spec("conj-4.8", Cj, "Σχ(x³+3(−125+44√5)x+154(21−10√5)) = 2x(2x/3) if p≡1,4 mod 15 (p=x²+15y²), 0 if p≡11,14 mod 15; constant term read as 154·(21−10√5)", "p≡±1 mod 5; both roots of 5", conj_4_8),
    spec("conj-4.9", Cj, "Σ(33k+4)C(2k,k)²C(3k,k)/15^(3k) ≡ 4p(p/3) mod p³", "p > 5", conj_4_9),
    spec("conj-4.10", Cj, "P_[p/3](11√5/25) ≡ 2x(x/3) (p=x²+15y²≡1,19 mod 30), −2y(y/3)√5 (p=3x²+5y²≡17,23 mod 30), else 0", "p > 5; both roots of 5", conj_4_10),
    spec("conj-4.11", Cj, "Σ(15k+2)C(2k,k)²C(3k,k)/1458^k ≡ (−1)^((p−1)/2)2p mod p³", "p > 3", conj_4_11),
    spec("conj-4.12", Cj, "P_[p/3](5√3/9) ≡ (−1)^((p−1)/2)2x(x/3) if p≡1 mod 3 (p=x²+3y²), 0 if p≡2 mod 3", "p > 3; both roots of 3", conj_4_12),
    spec("conj-A46", Cj, "Σ(3k)!/(24^k k!³) ≡ (p/3)Σ(3k)!/((−216)^k k!³) ≡ C(2(p−1)/3,(p−1)/3) mod p² if p≡1 mod 3; both 0 mod p if p≡2 mod 3", "p > 3", conj_a46),
    spec("conj-A5", Cj, "m = 8 sum ≡ 4c²−2p mod p² (p=c²+2d²≡1,3 mod 8), 0 mod p² if p≡5,7 mod 8", "p > 3", conj_a5),
    spec("conj-A4", Cj, "m = 64 sum ≡ u²−2p mod p² ((p/11)=1, 4p=u²+11v²), 0 mod p² if (p/11)=−1", "p > 3, p ≠ 11", conj_a4),
    spec("conj-A14", Cj, "m = 216 sum ≡ 4x²−2p (p=x²+6y²≡1,7 mod 24), 8x²−2p (p=2x²+3y²≡5,11 mod 24), else 0 mod p²", "p > 3", conj_a14),
    spec("conj-A13-full", Cj, "m = −27 sum ≡ 4x²−2p (p=x²+15y²), 20x²−2p (p=5x²+3y²), 0 mod p² if p≡7,11,13,14 mod 15", "p > 5", conj_a13_full),
    spec("conj-8640-full", Cj, "m = −8640 sum ≡ x²−2p (4p=x²+75y²), 2p−3x² (4p=3x²+25y², p≡7,13 mod 15), 0 mod p² if p≡2 mod 3", "p > 5", conj_8640_full),
    spec("conj-15cubed", Cj, "m = 15³ sum ≡ 4x²−2p (p=x²+15y²), 2p−12x² (p=3x²+5y²), 0 mod p² if p≡7,11,13,14 mod 15", "p > 5", conj_15cubed),
    spec("conj-1458", Cj, "m = 1458 sum ≡ 4x²−2p mod p² (p=x²+3y²) if p≡1 mod 3, 0 mod p² if p≡2 mod 3", "p > 3", conj_1458),
    spec("conj-A20", Cj, "m = −12³ sum ≡ x²−2p (4p=x²+51y²), 2p−3x² (4p=3x²+17y²), 0 mod p² when (p/3) ≠ (p/17)", "p > 3, p ≠ 17", conj_a20),
    spec("conj-A22", Cj, "m = −48³ sum ≡ x²−2p (4p=x²+123y²), 2p−3x² (4p=3x²+41y²), 0 mod p² when (p/3) ≠ (p/41)", "p > 3, p ≠ 41", conj_a22),
    spec("conj-A23", Cj, "m = −300³ sum ≡ x²−2p (4p=x²+267y²), 2p−3x² (4p=3x²+89y²), 0 mod p² when (p/3) ≠ (p/89)", "p > 5, p ≠ 89", conj_a23),
];

#[cfg(test)]
mod tests {
    use super::super::{run_check, Status};

    fn status(id: &str, p: u64) -> Status {
        run_check(id, p, 1).unwrap().status
    }

    #[test]
    fn spec_examples() {
        let r = run_check("thm-4.2", 7, 1).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.witness["sum_mod_p"], "1");
        let r = run_check("thm-4.2", 5, 1).unwrap();
        assert_eq!((r.status, r.witness["sum_mod_p2"].as_str()), (Status::Pass, "0"));
        let r = run_check("thm-4.4", 31, 1).unwrap();
        assert_eq!(r.witness["sum_mod_p"], "25");
        assert_eq!(r.witness["rep"], "(5,3)");
    }

    #[test]
    fn hypotheses_skip() {
        assert_eq!(status("thm-4.4", 11), Status::Skipped);
        assert_eq!(status("cor-3.2", 13), Status::Skipped);
        assert_eq!(status("thm-4.6", 7), Status::Skipped);
        assert_eq!(status("thm-4.10", 5), Status::Skipped);
        assert_eq!(status("conj-4.3", 5), Status::Skipped);
    }

    #[test]
    fn small_theorems_pass() {
        for p in [5u64, 7, 13, 17, 19, 23, 41, 43, 47, 67, 73, 97, 101, 137] {
            for id in ["thm-2.1", "cor-2.1", "thm-3.1", "cor-3.1", "cor-3.3", "thm-3.2", "thm-4.1", "thm-4.2", "thm-4.3", "lem-4.2", "lem-4.3", "lem-4.1", "eq-3.3", "eq-3.5-bm6"] {
                let r = run_check(id, p, 3).unwrap();
                assert_eq!(r.status, Status::Pass, "{id} at {p}: {:?}", r.witness);
            }
        }
    }

    #[test]
    fn conjectures_hold_small() {
        for p in [7u64, 11, 13, 17, 19, 29, 31, 37, 43, 53, 59, 61, 71, 79, 83] {
            for spec in super::REGISTRY.iter().filter(|s| s.id.starts_with("conj")) {
                let r = run_check(spec.id, p, 3).unwrap();
                assert!(matches!(r.status, Status::ConjHolds | Status::Skipped), "{} at {p}: {:?}", spec.id, r.witness);
            }
        }
    }
}
