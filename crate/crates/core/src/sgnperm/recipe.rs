use std::fmt;
use std::str::FromStr;

use super::enumerate::{check_bound, enumerate_class, par_fold, PermClass};
use super::stats;
use crate::algebra::{Monomial, Poly, PolyAccumulator};
use crate::error::{Error, Result};

/// A permutation statistic usable as an exponent source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stat {
    Fwex,
    Wex,
    Exc,
    Neg,
    /// Type-A crossings; ordinary permutations only.
    Cro,
    CroB,
    NestB,
    /// Type-A `31-2` pattern count; ordinary permutations only.
    Stat31_2,
}

impl Stat {
    pub const ALL: [Stat; 8] = [
        Stat::Fwex,
        Stat::Wex,
        Stat::Exc,
        Stat::Neg,
        Stat::Cro,
        Stat::CroB,
        Stat::NestB,
        Stat::Stat31_2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Fwex => "fwex",
            Stat::Wex => "wex",
            Stat::Exc => "exc",
            Stat::Neg => "neg",
            Stat::Cro => "cro",
            Stat::CroB => "cro_B",
            Stat::NestB => "nest_B",
            Stat::Stat31_2 => "31-2",
        }
    }

    pub fn type_a_only(self) -> bool {
        matches!(self, Stat::Cro | Stat::Stat31_2)
    }

    /// Raw evaluation; type-A-only statistics are computed as if the
    /// window were positive, callers check beforehand.
    #[inline]
    pub(crate) fn eval(self, w: &[i32]) -> u32 {
        match self {
            Stat::Fwex => stats::fwex(w),
            Stat::Wex => stats::wex(w),
            Stat::Exc => stats::exc(w),
            Stat::Neg => stats::neg(w),
            Stat::Cro => stats::cro(w),
            Stat::CroB => stats::cro_b(w),
            Stat::NestB => stats::nest_b(w),
            Stat::Stat31_2 => stats::stat31_2(w),
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Stat::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .or(match s {
                "31_2" | "stat31_2" => Some(Stat::Stat31_2),
                "croB" | "crob" => Some(Stat::CroB),
                "nestB" | "nestb" => Some(Stat::NestB),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown statistic `{s}`")))
    }
}

/// Sign factor attached to each element of a signed count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SignRule {
    #[default]
    None,
    /// `(-1)^exc`
    PowExc,
    /// `(-1)^wex`
    PowWex,
    /// `(-1)^⌊fwex/2⌋`
    FloorHalfFwex,
    /// `(-1)^⌈fwex/2⌉`
    CeilHalfFwex,
    /// `(-1/q)^⌊fwex/2⌋`
    NegInvQFloorHalfFwex,
    /// `(-1/q)^⌈fwex/2⌉`
    NegInvQCeilHalfFwex,
    /// `(-1/q)^wex`
    NegInvQWex,
}

impl SignRule {
    /// `(k, inverse_q)`: the factor is `(-1)^k`, times `q^-k` if `inverse_q`.
    #[inline]
    fn exponent(self, w: &[i32]) -> Option<(u32, bool)> {
        match self {
            SignRule::None => None,
            SignRule::PowExc => Some((stats::exc(w), false)),
            SignRule::PowWex => Some((stats::wex(w), false)),
            SignRule::FloorHalfFwex => Some((stats::fwex(w) / 2, false)),
            SignRule::CeilHalfFwex => Some((stats::fwex(w).div_ceil(2), false)),
            SignRule::NegInvQFloorHalfFwex => Some((stats::fwex(w) / 2, true)),
            SignRule::NegInvQCeilHalfFwex => Some((stats::fwex(w).div_ceil(2), true)),
            SignRule::NegInvQWex => Some((stats::wex(w), true)),
        }
    }
}

/// Weight `sign · y^a t^b q^c p^d` attached to each permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Recipe {
    pub y: Option<Stat>,
    pub t: Option<Stat>,
    pub q: Option<Stat>,
    pub p: Option<Stat>,
    pub sign: SignRule,
}

impl Recipe {
    pub fn new() -> Self {
        Self::default()
    }

    /// `y^fwex t^neg q^cro_B`.
    pub fn type_b() -> Self {
        Recipe::new().y(Stat::Fwex).t(Stat::Neg).q(Stat::CroB)
    }

    pub fn y(mut self, s: Stat) -> Self {
        self.y = Some(s);
        self
    }

    pub fn t(mut self, s: Stat) -> Self {
        self.t = Some(s);
        self
    }

    pub fn q(mut self, s: Stat) -> Self {
        self.q = Some(s);
        self
    }

    pub fn p(mut self, s: Stat) -> Self {
        self.p = Some(s);
        self
    }

    pub fn sign(mut self, rule: SignRule) -> Self {
        self.sign = rule;
        self
    }

    fn stats(&self) -> impl Iterator<Item = Stat> {
        [self.y, self.t, self.q, self.p].into_iter().flatten()
    }

    pub fn needs_type_a(&self) -> bool {
        self.stats().any(Stat::type_a_only)
    }

    /// Signed weight of one window.
    #[inline]
    pub fn weigh(&self, w: &[i32]) -> (i128, Monomial) {
        let e = |s: Option<Stat>| s.map_or(0, |s| s.eval(w) as i32);
        let mut m = Monomial::new(e(self.y), e(self.t), e(self.q), e(self.p));
        let mut sign = 1;
        if let Some((k, inv_q)) = self.sign.exponent(w) {
            if k % 2 == 1 {
                sign = -1;
            }
            if inv_q {
                m.0[2] -= k as i32;
            }
        }
        (sign, m)
    }
}

/// `Σ_{σ ∈ class_n} weight(σ)` as an exact Laurent polynomial.
pub fn enumerator(n: usize, class: PermClass, recipe: &Recipe) -> Result<Poly> {
    check_bound(n)?;
    if class.is_signed() && recipe.needs_type_a() {
        if let Some(bad) = enumerate_class(n, class)?.find(|s| !s.is_type_a()) {
            return Err(Error::NotTypeA(bad.window().to_vec()));
        }
    }
    let acc = par_fold(
        n,
        &class.constraints(),
        PolyAccumulator::new,
        |acc, w| {
            let (c, m) = recipe.weigh(w);
            acc.add(m, c);
        },
        |a, b| a.merge(b),
    )?;
    Ok(acc.into_poly())
}
