//! Identity registry: each entry computes one side by enumeration and the
//! other from the derivative polynomials, continued fractions or Springer
//! numbers, then compares them exactly.

mod discussion;
mod report;

pub use discussion::{conjecture_pq, discussion_tables, DiscussionRow, DiscussionTables};
pub use report::{render, Format};

use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{derivative_poly, springer_numbers, DerivFlavor, DerivKind, Monomial, Poly, Var};
use crate::cfrac::{builtin_spec, expand, q_euler_number, Builtin};
use crate::error::{Error, Result};
use crate::paths::{enumerate_paths, is_fixed, weight_sum, FixedPredicate, Scheme};
use crate::sgnperm::{enumeration_limit, enumerator, PermClass, Recipe, SignRule, Stat};
use crate::snakes::{snake_sum, Flavor, PatKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Match,
    Mismatch,
    /// Equal to a registered corrected form, not to the printed one.
    MatchesAlternate,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::MatchesAlternate => "matchesAlternate",
        }
    }

    pub fn is_ok(self) -> bool {
        self != Verdict::Mismatch
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub id: String,
    pub n: usize,
    pub lhs: Poly,
    pub rhs: Poly,
    pub verdict: Verdict,
    pub note: String,
    pub millis: u64,
}

/// One side-by-side evaluation. `printed` is `None` when the printed form
/// does not evaluate at this `n`.
struct Outcome {
    lhs: Poly,
    printed: Option<Poly>,
    alternate: Option<(Poly, String)>,
    note: String,
}

impl Outcome {
    fn plain(lhs: Poly, rhs: Poly) -> Self {
        Outcome {
            lhs,
            printed: Some(rhs),
            alternate: None,
            note: String::new(),
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// A registered identity.
pub struct Identity {
    pub id: &'static str,
    pub about: &'static str,
    pub nmin: usize,
    /// Largest `n` run by [`verify_all`].
    pub cap: usize,
    run: fn(usize) -> Result<Outcome>,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("nmin", &self.nmin)
            .field("cap", &self.cap)
            .finish_non_exhaustive()
    }
}

fn sign(k: i64) -> Poly {
    if k.rem_euclid(2) == 0 {
        Poly::one()
    } else {
        -Poly::one()
    }
}

/// `(-1/q)^k`
fn neg_inv_q(k: i64) -> Poly {
    sign(k).mul_monomial(&Monomial::power(Var::Q, -(k as i32)))
}

fn int(v: BigInt) -> Poly {
    Poly::constant(v)
}

fn r_poly(n: usize) -> Poly {
    derivative_poly(DerivKind::R, n as u32, DerivFlavor::Q)
}

fn q_poly(n: usize) -> Poly {
    derivative_poly(DerivKind::Q, n as u32, DerivFlavor::Q)
}

fn t_plus(c: i64) -> Poly {
    Poly::t() + Poly::constant(c)
}

fn even(n: usize) -> bool {
    n.is_multiple_of(2)
}

fn euler(n: usize) -> Result<Poly> {
    Ok(int(springer_numbers(n as u32)?.euler))
}

fn springer(n: usize) -> Result<BigInt> {
    Ok(springer_numbers(n as u32)?.springer)
}

fn springer_d(n: usize) -> Result<BigInt> {
    Ok(springer_numbers(n as u32)?.springer_d)
}

fn half_sign(floor: bool) -> SignRule {
    if floor {
        SignRule::FloorHalfFwex
    } else {
        SignRule::CeilHalfFwex
    }
}

fn signed_b(n: usize, class: PermClass, floor: bool) -> Result<Poly> {
    enumerator(n, class, &Recipe::new().t(Stat::Neg).q(Stat::CroB).sign(half_sign(floor)))
}

fn signed_b_star(n: usize, class: PermClass, floor: bool) -> Result<Poly> {
    let rule = if floor {
        SignRule::NegInvQFloorHalfFwex
    } else {
        SignRule::NegInvQCeilHalfFwex
    };
    enumerator(n, class, &Recipe::new().t(Stat::Neg).q(Stat::CroB).sign(rule))
}

fn plain_count(n: usize, class: PermClass, floor: bool) -> Result<Poly> {
    enumerator(n, class, &Recipe::new().sign(half_sign(floor)))
}

fn eulercan1(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::A, &Recipe::new().sign(SignRule::PowExc))?;
    let rhs = if even(n) {
        Poly::zero()
    } else {
        sign((n as i64 - 1) / 2) * euler(n)?
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn eulercan2(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::AStar, &Recipe::new().sign(SignRule::PowExc))?;
    let rhs = if even(n) {
        sign(n as i64 / 2) * euler(n)?
    } else {
        Poly::zero()
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn jv1(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::A, &Recipe::new().q(Stat::Cro).sign(SignRule::PowWex))?;
    let rhs = if even(n) {
        Poly::zero()
    } else {
        sign((n as i64 + 1) / 2) * q_euler_number(n)
    };
    Ok(Outcome::plain(lhs, rhs).note("sign (-1)^wex, whereas Eulercan1 uses (-1)^exc"))
}

fn jv2(n: usize) -> Result<Outcome> {
    let r = Recipe::new().q(Stat::Cro).sign(SignRule::NegInvQWex);
    let lhs = enumerator(n, PermClass::AStar, &r)?;
    let rhs = if even(n) {
        neg_inv_q(n as i64 / 2) * q_euler_number(n)
    } else {
        Poly::zero()
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn q_euler_alt(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::AltA, &Recipe::new().q(Stat::Stat31_2))?;
    Ok(Outcome::plain(lhs, q_euler_number(n)))
}

fn sign_fwex_b_floor(n: usize) -> Result<Outcome> {
    let lhs = signed_b(n, PermClass::Bn, true)?;
    let r = r_poly(n - 1);
    let alt = if even(n) {
        sign(n as i64 / 2) * t_plus(1) * r
    } else {
        sign((n as i64 - 1) / 2) * t_plus(-1) * r
    };
    Ok(Outcome {
        lhs,
        printed: None,
        alternate: Some((
            alt,
            "printed: (-1)^{n/2}(t+1)R_{n-1} if n odd, (-1)^{(n-1)/2}(t-1)R_{n-1} if n even; \
             the sign exponents are not integers under these labels, the parity cases are swapped"
                .into(),
        )),
        note: String::new(),
    })
}

fn sign_fwex_b_ceil(n: usize) -> Result<Outcome> {
    let lhs = signed_b(n, PermClass::Bn, false)?;
    let r = r_poly(n - 1);
    let rhs = if even(n) {
        sign(n as i64 / 2) * t_plus(-1) * r
    } else {
        sign((n as i64 + 1) / 2) * t_plus(1) * r
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn sign_fwex_d(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = signed_b(n, PermClass::Dn, floor)?;
    let r = r_poly(n - 1);
    let rhs = if even(n) {
        sign(n as i64 / 2) * Poly::t() * r
    } else {
        sign((n as i64 + 1) / 2) * r
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn sign_fwex_b_star(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = signed_b_star(n, PermClass::BnStar, floor)?;
    let k = if floor { n / 2 } else { n.div_ceil(2) };
    Ok(Outcome::plain(lhs, neg_inv_q(k as i64) * q_poly(n)))
}

fn sign_fwex_d_star(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = signed_b_star(n, PermClass::DnStar, floor)?;
    let rhs = if even(n) {
        neg_inv_q(n as i64 / 2) * q_poly(n)
    } else {
        Poly::zero()
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn eval_bn(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = plain_count(n, PermClass::Bn, floor)?;
    let big = int(BigInt::from(1) << n) * euler(n)?;
    let rhs = match (floor, even(n)) {
        (true, true) => sign(n as i64 / 2) * big,
        (false, false) => sign((n as i64 + 1) / 2) * big,
        _ => Poly::zero(),
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn eval_dn(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = plain_count(n, PermClass::Dn, floor)?;
    let rhs = sign((n as i64 + 1) / 2) * int(BigInt::from(1) << (n - 1)) * euler(n)?;
    Ok(Outcome::plain(lhs, rhs))
}

fn eval_bn_star(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = plain_count(n, PermClass::BnStar, floor)?;
    let k = if floor { n / 2 } else { n.div_ceil(2) };
    Ok(Outcome::plain(lhs, sign(k as i64) * int(springer(n)?)))
}

fn eval_dn_star(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = plain_count(n, PermClass::DnStar, floor)?;
    let rhs = if even(n) {
        sign(n as i64 / 2) * int(springer(n)?)
    } else {
        Poly::zero()
    };
    Ok(Outcome::plain(lhs, rhs))
}

fn sign_sd(n: usize, floor: bool) -> Result<Outcome> {
    let lhs = plain_count(n, PermClass::Bn, floor)? - plain_count(n, PermClass::BnStar, floor)?;
    let half = n as i64 / 2;
    let rhs = match (floor, even(n)) {
        (true, true) => sign(half) * int(springer_d(n)?),
        (true, false) => sign((n as i64 + 1) / 2) * int(springer(n)?),
        (false, true) => sign(half + 1) * int(springer(n)?),
        (false, false) => sign((n as i64 + 1) / 2) * int(springer_d(n)?),
    };
    Ok(Outcome::plain(lhs, rhs).note("sum over signed permutations with a fixed point"))
}

fn snakes_q(n: usize) -> Result<Outcome> {
    let lhs = snake_sum(n, Flavor::S0, |s| {
        let q = s.total_2_31()? + s.pat_stat(PatKind::Q)?;
        Ok(Monomial::ytq(0, s.cs() as i32, q as i32))
    })?;
    Ok(Outcome::plain(lhs, q_poly(n)))
}

fn snakes_r(n: usize) -> Result<Outcome> {
    let shift = n as i32 + 1;
    let lhs = snake_sum(n + 1, Flavor::S00, move |s| {
        let q = (s.total_2_31()? + s.pat_stat(PatKind::R)?) as i32 - shift;
        Ok(Monomial::ytq(0, s.cs() as i32, q))
    })?;
    Ok(Outcome::plain(lhs, r_poly(n)).note("snakes of size n+1"))
}

fn bn_t0(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::Bn, &Recipe::type_b())?.substitute(Var::T, 0)?;
    let a = enumerator(n, PermClass::A, &Recipe::new().y(Stat::Wex).q(Stat::Cro))?;
    let rhs = a.substitute(Var::Y, Monomial::power(Var::Y, 2))?;
    Ok(Outcome::plain(lhs, rhs).note("A_n(y,q) read with y -> y^2, since fwex = 2 wex on positive windows"))
}

fn corteel(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::Bn, &Recipe::type_b())?;
    Ok(Outcome::plain(lhs, weight_sum(Scheme::M, n)).note("aggregate form: rho(M_n)"))
}

fn b_cf(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::Bn, &Recipe::type_b())?;
    let mut s = expand(&builtin_spec(Builtin::B), n);
    Ok(Outcome::plain(lhs, s.coeffs.swap_remove(n)))
}

fn no_xing(n: usize) -> Result<Outcome> {
    let lhs = enumerator(n, PermClass::BnStar, &Recipe::type_b())?;
    Ok(Outcome::plain(lhs, weight_sum(Scheme::Mstar, n)).note("aggregate form: rho(Mstar_n)"))
}

fn qr_cf(n: usize, kind: DerivKind) -> Result<Outcome> {
    let which = if kind == DerivKind::Q { Builtin::Q } else { Builtin::R };
    let mut s = expand(&builtin_spec(which), n);
    Ok(Outcome::plain(s.coeffs.swap_remove(n), derivative_poly(kind, n as u32, DerivFlavor::Q)))
}

fn flajolet(n: usize, scheme: Scheme, kind: DerivKind) -> Result<Outcome> {
    let lhs = weight_sum(scheme, n);
    Ok(Outcome::plain(lhs, derivative_poly(kind, n as u32, DerivFlavor::Q)))
}

fn fixed_sum(n: usize, pred: FixedPredicate, kind: DerivKind) -> Result<Outcome> {
    let mut lhs = Poly::zero();
    for p in enumerate_paths(pred.ambient(), n)? {
        if is_fixed(&p, pred)? {
            lhs += p.weight_poly();
        }
    }
    let rhs = Poly::monomial(Monomial::power(Var::Y, n as i32)) * derivative_poly(kind, n as u32, DerivFlavor::Q);
    Ok(Outcome::plain(lhs, rhs))
}

macro_rules! identity {
    ($id:expr, $about:expr, $nmin:expr, $cap:expr, $run:expr) => {
        Identity {
            id: $id,
            about: $about,
            nmin: $nmin,
            cap: $cap,
            run: $run,
        }
    };
}

static REGISTRY: &[Identity] = &[
    identity!("Eulercan1", "sum over S_n of (-1)^exc", 1, 9, eulercan1),
    identity!("Eulercan2", "sum over derangements of (-1)^exc", 1, 9, eulercan2),
    identity!("JV1", "sum over S_n of (-1)^wex q^cro", 1, 8, jv1),
    identity!("JV2", "sum over derangements of (-1/q)^wex q^cro", 1, 8, jv2),
    identity!("eq:En-alt", "E_n(q) as q^(31-2) over alternating permutations", 1, 8, q_euler_alt),
    identity!("thm:signFwexB.i", "B_n, (-1)^floor(fwex/2) t^neg q^cro_B", 1, 7, sign_fwex_b_floor),
    identity!("thm:signFwexB.ii", "B_n, (-1)^ceil(fwex/2) t^neg q^cro_B", 1, 7, sign_fwex_b_ceil),
    identity!("thm:signFwexD.floor", "D_n, floor half-sign", 1, 7, |n| sign_fwex_d(n, true)),
    identity!("thm:signFwexD.ceil", "D_n, ceil half-sign", 1, 7, |n| sign_fwex_d(n, false)),
    identity!("thm:signFwexB*.i", "B*_n, (-1/q)^floor(fwex/2)", 1, 7, |n| sign_fwex_b_star(n, true)),
    identity!("thm:signFwexB*.ii", "B*_n, (-1/q)^ceil(fwex/2)", 1, 7, |n| sign_fwex_b_star(n, false)),
    identity!("thm:signFwexD*.floor", "D*_n, floor", 1, 7, |n| sign_fwex_d_star(n, true)),
    identity!("thm:signFwexD*.ceil", "D*_n, ceil", 1, 7, |n| sign_fwex_d_star(n, false)),
    identity!("cor:(-1)-eval-Bn.i", "B_n at t=q=1, floor", 1, 7, |n| eval_bn(n, true)),
    identity!("cor:(-1)-eval-Bn.ii", "B_n at t=q=1, ceil", 1, 7, |n| eval_bn(n, false)),
    identity!("cor:(-1)-eval-Bn.iii.floor", "D_n at t=q=1, floor", 1, 7, |n| eval_dn(n, true)),
    identity!("cor:(-1)-eval-Bn.iii.ceil", "D_n at t=q=1, ceil", 1, 7, |n| eval_dn(n, false)),
    identity!("cor:(-1)-eval-Bn*.i", "B*_n at t=q=1, floor", 1, 7, |n| eval_bn_star(n, true)),
    identity!("cor:(-1)-eval-Bn*.ii", "B*_n at t=q=1, ceil", 1, 7, |n| eval_bn_star(n, false)),
    identity!("cor:(-1)-eval-Bn*.iii.floor", "D*_n at t=q=1, floor", 1, 7, |n| eval_dn_star(n, true)),
    identity!("cor:(-1)-eval-Bn*.iii.ceil", "D*_n at t=q=1, ceil", 1, 7, |n| eval_dn_star(n, false)),
    identity!("cor:sign-S_n^D.i", "B_n - B*_n, floor", 1, 7, |n| sign_sd(n, true)),
    identity!("cor:sign-S_n^D.ii", "B_n - B*_n, ceil", 1, 7, |n| sign_sd(n, false)),
    identity!("thm:T*->snake-0", "S0_n with t^cs q^(2-31 + pat_Q)", 1, 7, snakes_q),
    identity!("thm:T->snakes-00", "S00_(n+1) with t^cs q^(2-31 + pat_R - n - 1)", 1, 6, snakes_r),
    identity!("eq:Bn-t0", "B_n(y,0,q) against A_n", 1, 7, bn_t0),
    identity!("thm:Corteel", "B_n(y,t,q) against the M_n path sum", 1, 7, corteel),
    identity!("thm:B-enumerator-cf", "B_n(y,t,q) against its J-fraction", 1, 6, b_cf),
    identity!("lem:no-xing", "B*_n(y,t,q) against the Mstar_n path sum", 1, 7, no_xing),
    identity!("thm:QR-CF.Q", "Q_n J-fraction against the operator form", 1, 10, |n| qr_cf(n, DerivKind::Q)),
    identity!("thm:QR-CF.R", "R_n J-fraction against the operator form", 1, 10, |n| qr_cf(n, DerivKind::R)),
    identity!("thm:Flajolet.Tstar", "Tstar_n path sum against Q_n", 1, 10, |n| flajolet(n, Scheme::Tstar, DerivKind::Q)),
    identity!("thm:Flajolet.T", "T_n path sum against R_n", 1, 10, |n| flajolet(n, Scheme::T, DerivKind::R)),
    identity!("lem:Fn=y^nRn", "fixed paths of psi1", 1, 5, |n| fixed_sum(n, FixedPredicate::F, DerivKind::R)),
    identity!("lem:Gn=y^nQn", "fixed paths of psi2", 1, 5, |n| fixed_sum(n, FixedPredicate::G, DerivKind::Q)),
];

pub fn registry() -> &'static [Identity] {
    REGISTRY
}

fn lookup(id: &str) -> Result<&'static Identity> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn judge(id: &str, n: usize, out: Outcome, millis: u64) -> IdentityCheck {
    let Outcome {
        lhs,
        printed,
        alternate,
        mut note,
    } = out;
    let (rhs, verdict) = match (printed, alternate) {
        (Some(p), _) if p == lhs => (p, Verdict::Match),
        (_, Some((alt, why))) if alt == lhs => {
            note = join_note(note, why);
            (alt, Verdict::MatchesAlternate)
        }
        (Some(p), _) => (p, Verdict::Mismatch),
        (None, Some((alt, why))) => {
            note = join_note(note, why);
            (alt, Verdict::Mismatch)
        }
        (None, None) => (Poly::zero(), Verdict::Mismatch),
    };
    IdentityCheck {
        id: id.to_string(),
        n,
        lhs,
        rhs,
        verdict,
        note,
        millis,
    }
}

fn join_note(a: String, b: String) -> String {
    if a.is_empty() {
        b
    } else {
        format!("{a}; {b}")
    }
}

/// Check one identity at one size.
pub fn verify(id: &str, n: usize) -> Result<IdentityCheck> {
    let entry = lookup(id)?;
    let limit = enumeration_limit();
    if n > limit.max(entry.cap) {
        return Err(Error::BoundExceeded { n, limit });
    }
    if n < entry.nmin {
        return Err(Error::Parse(format!("{id} starts at n = {}", entry.nmin)));
    }
    let start = Instant::now();
    let out = (entry.run)(n)?;
    Ok(judge(id, n, out, start.elapsed().as_millis() as u64))
}

/// Every `(id, n)` job with `n ≤ min(nmax, cap)`, in registry order and then
/// by `n`. Checks run in parallel; the order of the report is fixed.
pub fn verify_all(nmax: usize) -> Result<Vec<IdentityCheck>> {
    verify_selected(REGISTRY.iter().map(|e| e.id), nmax)
}

/// As [`verify_all`], restricted to the given ids.
pub fn verify_selected<'a>(ids: impl IntoIterator<Item = &'a str>, nmax: usize) -> Result<Vec<IdentityCheck>> {
    let mut jobs = Vec::new();
    for id in ids {
        let e = lookup(id)?;
        for n in e.nmin..=nmax.min(e.cap) {
            jobs.push((e.id, n));
        }
    }
    jobs.into_par_iter().map(|(id, n)| verify(id, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn swapped_parity_reports_alternate() {
        let c = verify("thm:signFwexB.i", 2).unwrap();
        assert_eq!(c.verdict, Verdict::MatchesAlternate);
        assert_eq!(c.lhs.substitute(Var::Q, 1).unwrap(), p("-2*t^2 - 2*t"));
        assert!(c.note.contains("printed"));
        assert_eq!(verify("thm:signFwexB.i", 1).unwrap().lhs, p("t - 1"));
    }

    #[test]
    fn star_base_case() {
        let c = verify("thm:signFwexB*.i", 1).unwrap();
        assert_eq!(c.verdict, Verdict::Match);
        assert_eq!(c.lhs, p("t"));
    }

    #[test]
    fn springer_evaluation() {
        let c = verify("cor:(-1)-eval-Bn*.i", 4).unwrap();
        assert_eq!(c.lhs, p("57"));
        assert_eq!(c.verdict, Verdict::Match);
    }

    #[test]
    fn unknown_and_bounds() {
        assert!(matches!(verify("nope", 2), Err(Error::UnknownIdentity(_))));
        assert!(matches!(verify("thm:signFwexB.ii", 40), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn small_sweep() {
        let all = verify_all(3).unwrap();
        let expected: usize = REGISTRY.iter().map(|e| 3usize.min(e.cap) + 1 - e.nmin).sum();
        assert_eq!(all.len(), expected);
        for c in &all {
            assert!(c.verdict.is_ok(), "{} n={} {} vs {}", c.id, c.n, c.lhs, c.rhs);
        }
    }
}
