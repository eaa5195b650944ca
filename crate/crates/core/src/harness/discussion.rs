//! The open-ended comparisons: two side-by-side tables and the `(p,q)`
//! nesting conjecture. Nothing here is asserted.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{even, judge, sign, t_plus, IdentityCheck, Outcome};
use crate::algebra::{derivative_poly, DerivFlavor, DerivKind, Poly};
use crate::error::{Error, Result};
use crate::sgnperm::{enumerator, PermClass, Recipe, SignRule, Stat};
use crate::snakes::{cs_distribution, Flavor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscussionRow {
    pub n: usize,
    /// `Σ_{B_n - B*_n} (-1)^{⌊fwex/2⌋ or ⌈fwex/2⌉} t^neg`, floor for even `n`.
    pub signed: Poly,
    /// `Σ_{SD_n} t^{cs_D}`.
    pub cs_d: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscussionTables {
    pub rows: Vec<DiscussionRow>,
    pub note: String,
}

/// Rows `n = 2..=nmax` of both tables.
pub fn discussion_tables(nmax: usize) -> Result<DiscussionTables> {
    let mut rows = Vec::new();
    for n in 2..=nmax {
        let rule = if even(n) {
            SignRule::FloorHalfFwex
        } else {
            SignRule::CeilHalfFwex
        };
        let r = Recipe::new().t(Stat::Neg).sign(rule);
        let signed = enumerator(n, PermClass::Bn, &r)? - enumerator(n, PermClass::BnStar, &r)?;
        rows.push(DiscussionRow {
            n,
            signed,
            cs_d: cs_distribution(n, Flavor::SD)?,
        });
    }
    Ok(DiscussionTables {
        rows,
        note: "n = 2 signed row is 1 - 2t; the source typesetting also admits -(2t+1). \
               No relation between the tables is asserted."
            .into(),
    })
}

/// Both sides of the nesting conjecture at size `n`, under the printed
/// parity labels (sign exponent rounded down), the swapped labels, and
/// part (ii). Verdicts are reported only.
pub fn conjecture_pq(n: usize) -> Result<Vec<IdentityCheck>> {
    if n == 0 {
        return Err(Error::Parse("the conjecture starts at n = 1".into()));
    }
    let recipe = |rule| Recipe::new().t(Stat::Neg).p(Stat::NestB).q(Stat::CroB).sign(rule);
    let r = derivative_poly(DerivKind::R, n as u32 - 1, DerivFlavor::PQ);
    let k = n as i64;
    let mut out = Vec::new();

    let start = Instant::now();
    let lhs = enumerator(n, PermClass::Bn, &recipe(SignRule::FloorHalfFwex))?;
    let ms = start.elapsed().as_millis() as u64;
    let printed = if even(n) {
        sign((k - 1).div_euclid(2)) * t_plus(-1) * &r
    } else {
        sign(k / 2) * t_plus(1) * &r
    };
    let swapped = if even(n) {
        sign(k / 2) * t_plus(1) * &r
    } else {
        sign((k - 1) / 2) * t_plus(-1) * &r
    };
    let note = "conjecture; printed parity labels with sign exponents rounded down";
    out.push(judge("conj:pq.i.printed", n, Outcome::plain(lhs.clone(), printed).note(note), ms));
    let note = "conjecture; parity labels swapped as in thm:signFwexB.i";
    out.push(judge("conj:pq.i.swapped", n, Outcome::plain(lhs, swapped).note(note), ms));

    let start = Instant::now();
    let lhs = enumerator(n, PermClass::Bn, &recipe(SignRule::CeilHalfFwex))?;
    let ms = start.elapsed().as_millis() as u64;
    let rhs = if even(n) {
        sign(k / 2) * t_plus(-1) * &r
    } else {
        sign((k + 1) / 2) * t_plus(1) * &r
    };
    out.push(judge("conj:pq.ii", n, Outcome::plain(lhs, rhs).note("conjecture"), ms));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn small_rows() {
        let t = discussion_tables(3).unwrap();
        assert_eq!(t.rows[0].signed, p("1 - 2*t"));
        assert_eq!(t.rows[0].cs_d, p("t"));
        assert_eq!(t.rows[1].signed, p("6*t^2 - 3*t + 2"));
        assert_eq!(t.rows[1].cs_d, p("3*t^2 + 2*t"));
    }

    #[test]
    fn conjecture_base_case() {
        let c = conjecture_pq(1).unwrap();
        assert_eq!(c[1].lhs, p("t - 1"));
        assert_eq!(c[1].rhs, p("t - 1"));
        let two = conjecture_pq(2).unwrap();
        let at_one = two[1].lhs.substitute(Var::P, 1).unwrap().substitute(Var::Q, 1).unwrap();
        assert_eq!(at_one, p("-2*t^2 - 2*t"));
    }
}
