//! Signed permutations, their classes and statistics.

mod enumerate;
mod recipe;

pub use enumerate::{
    enumerate_class, enumerate_with, enumeration_limit, for_each_in, par_fold, Alternation, ClassIter,
    Constraints, PermClass,
};
pub use recipe::{enumerator, Recipe, SignRule, Stat};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A signed permutation in window notation `σ_1 … σ_n`.
///
/// Only the window is stored; `σ(-i) = -σ(i)` is implied.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPerm {
    window: Vec<i32>,
}

/// The statistics defined on ordinary permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeAStat {
    Exc,
    Wex,
    Cro,
    Stat31_2,
}

impl SignedPerm {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::Parse(format!(
                    "{window:?} is not a signed permutation"
                )));
            }
            seen[a] = true;
        }
        Ok(SignedPerm { window })
    }

    /// Caller guarantees the window is a signed permutation.
    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        SignedPerm { window }
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm {
            window: (1..=n as i32).collect(),
        }
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    /// `σ_i` for `1 ≤ |i| ≤ n`.
    pub fn at(&self, i: i32) -> i32 {
        let v = self.window[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn is_type_a(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    /// Absolute values, as an ordinary permutation.
    pub fn abs(&self) -> Vec<u32> {
        self.window.iter().map(|v| v.unsigned_abs()).collect()
    }

    pub fn neg(&self) -> u32 {
        stats::neg(&self.window)
    }

    pub fn exc(&self) -> u32 {
        stats::exc(&self.window)
    }

    /// `#{i : σ_i ≥ i}`.
    pub fn wex(&self) -> u32 {
        stats::wex(&self.window)
    }

    pub fn fwex(&self) -> u32 {
        stats::fwex(&self.window)
    }

    pub fn cro_b(&self) -> u32 {
        stats::cro_b(&self.window)
    }

    pub fn nest_b(&self) -> u32 {
        stats::nest_b(&self.window)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .any(|(i, &v)| v == i as i32 + 1)
    }

    /// Ordinary-permutation statistics; rejects windows with negative entries.
    pub fn stat_type_a(&self, stat: TypeAStat) -> Result<u32> {
        if !self.is_type_a() {
            return Err(Error::NotTypeA(self.window.clone()));
        }
        Ok(match stat {
            TypeAStat::Exc => self.exc(),
            TypeAStat::Wex => self.wex(),
            TypeAStat::Cro => stats::cro(&self.window),
            TypeAStat::Stat31_2 => stats::stat31_2(&self.window),
        })
    }

    pub fn cro(&self) -> Result<u32> {
        self.stat_type_a(TypeAStat::Cro)
    }

    pub fn stat31_2(&self) -> Result<u32> {
        self.stat_type_a(TypeAStat::Stat31_2)
    }
}

impl TryFrom<Vec<i32>> for SignedPerm {
    type Error = Error;
    fn try_from(w: Vec<i32>) -> Result<Self> {
        SignedPerm::new(w)
    }
}

impl From<SignedPerm> for Vec<i32> {
    fn from(s: SignedPerm) -> Vec<i32> {
        s.window
    }
}

/// Space separated window, negatives written with a minus sign.
impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts `"6 -3 -5 1"`, `"6,-3,-5,1"`, or for `n ≤ 9` the compact
/// `"6-3-51"` form where each digit is one entry.
impl FromStr for SignedPerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spaced = s.contains(|c: char| c == ',' || c.is_whitespace());
        let window: Vec<i32> = if spaced {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
                })
                .collect::<Result<_>>()?
        } else {
            let mut out = Vec::new();
            let mut neg = false;
            for c in s.chars() {
                match c {
                    '-' if !neg => neg = true,
                    d if d.is_ascii_digit() => {
                        let v = d as i32 - '0' as i32;
                        out.push(if neg { -v } else { v });
                        neg = false;
                    }
                    _ => return Err(Error::Parse(format!("bad window `{s}`"))),
                }
            }
            if neg {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            out
        };
        SignedPerm::new(window)
    }
}

/// Statistics on raw windows, shared with the enumeration hot loops.
pub(crate) mod stats {
    pub fn neg(w: &[i32]) -> u32 {
        w.iter().filter(|&&v| v < 0).count() as u32
    }

    pub fn exc(w: &[i32]) -> u32 {
        w.iter()
            .enumerate()
            .filter(|&(i, &v)| v > i as i32 + 1)
            .count() as u32
    }

    pub fn wex(w: &[i32]) -> u32 {
        w.iter()
            .enumerate()
            .filter(|&(i, &v)| v > i as i32)
            .count() as u32
    }

    pub fn fwex(w: &[i32]) -> u32 {
        2 * wex(w) + neg(w)
    }

    pub fn cro(w: &[i32]) -> u32 {
        let mut c = 0;
        for i in 1..=w.len() as i32 {
            let si = w[i as usize - 1];
            for j in i + 1..=w.len() as i32 {
                let sj = w[j as usize - 1];
                if (j <= si && si < sj) || (si < sj && sj < i) {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn stat31_2(w: &[i32]) -> u32 {
        let mut c = 0;
        for i in 0..w.len().saturating_sub(1) {
            let (hi, lo) = (w[i], w[i + 1]);
            if hi <= lo {
                continue;
            }
            c += w[i + 2..].iter().filter(|&&v| lo < v && v < hi).count() as u32;
        }
        c
    }

    pub fn cro_b(w: &[i32]) -> u32 {
        let n = w.len() as i32;
        let mut c = 0;
        for i in 1..=n {
            let si = w[i as usize - 1];
            for j in 1..=n {
                let sj = w[j as usize - 1];
                if (i < j && j <= si && si < sj)
                    || (-i < j && j <= -si && -si < sj)
                    || (i > j && j > si && si > sj)
                {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn nest_b(w: &[i32]) -> u32 {
        let n = w.len() as i32;
        let mut c = 0;
        for i in 1..=n {
            let si = w[i as usize - 1];
            for j in 1..=n {
                let sj = w[j as usize - 1];
                if (i < j && j <= sj && sj < si)
                    || (-i < j && j <= sj && sj < -si)
                    || (j > i && i > si && si > sj)
                {
                    c += 1;
                }
            }
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPerm {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(sp("6-3-514-7-2").window(), &[6, -3, -5, 1, 4, -7, -2]);
        assert_eq!(sp("6 -3 -5 1 4 -7 -2"), sp("6,-3,-5,1,4,-7,-2"));
        assert!("12 2".parse::<SignedPerm>().is_err());
        assert!("1-".parse::<SignedPerm>().is_err());
        assert_eq!(sp("3 -1 2").to_string(), "3 -1 2");
    }

    #[test]
    fn type_a_examples() {
        assert_eq!(sp("6453172").cro().unwrap(), 3);
        assert_eq!(sp("4132").stat31_2().unwrap(), 2);
        let s = sp("2413");
        assert_eq!(s.wex(), 2);
        assert_eq!(s.cro().unwrap(), 1);
        assert!(matches!(sp("-1 2").cro(), Err(Error::NotTypeA(_))));
    }

    #[test]
    fn fwex_values() {
        assert_eq!(SignedPerm::identity(5).fwex(), 10);
        assert_eq!(sp("-1").fwex(), 1);
        assert_eq!(sp("21").fwex(), 2);
    }

    #[test]
    fn crossing_example() {
        assert_eq!(sp("6-3-514-7-2").cro_b(), 8);
        assert_eq!(SignedPerm::identity(6).cro_b(), 0);
        assert_eq!(SignedPerm::identity(6).nest_b(), 0);
    }

    #[test]
    fn cro_b_agrees_with_type_a_on_positive() {
        // on ordinary permutations only the first and third clauses can fire,
        // and together they count the same pairs as cro
        for w in ["6453172", "2413", "4132", "31524"] {
            let s = sp(w);
            assert_eq!(s.cro_b(), s.cro().unwrap(), "{w}");
        }
    }
}
