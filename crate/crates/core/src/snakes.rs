//! Snakes: up-down signed permutations, with the boundary conventions that
//! feed the sign-change statistic, the cs-vector, blocks and patterns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Poly, PolyAccumulator};
use crate::error::{Error, Result};
use crate::sgnperm::{enumerate_with, par_fold, Alternation, Constraints, SignedPerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// All snakes `σ_1 > σ_2 < σ_3 > …`.
    S,
    /// Snakes with `σ_1 > 0`.
    S0,
    /// Snakes with `σ_1 > 0` and `(-1)^n σ_n < 0`.
    S00,
    /// Even-signed snakes with `σ_1 + σ_2 < 0`.
    SD,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::S, Flavor::S0, Flavor::S00, Flavor::SD];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::S => "S",
            Flavor::S0 => "S0",
            Flavor::S00 => "S00",
            Flavor::SD => "SD",
        }
    }

    pub fn constraints(self) -> Constraints {
        let mut c = Constraints {
            signed: true,
            alternation: Some(Alternation::DownFirst),
            ..Constraints::default()
        };
        match self {
            Flavor::S => {}
            Flavor::S0 => c.first_positive = true,
            Flavor::S00 => {
                c.first_positive = true;
                c.last_against_parity = true;
            }
            Flavor::SD => {
                c.even_neg = true;
                c.first_pair_negative = true;
            }
        }
        c
    }

    /// `(σ_0, σ_{n+1})`. For `SD` the left entry is a positive sentinel and
    /// there is no right entry.
    pub fn boundary(self, n: usize) -> Boundary {
        let n1 = n as i32 + 1;
        let right = if n.is_multiple_of(2) { n1 } else { -n1 };
        match self {
            Flavor::S => Boundary { sigma0: -n1, sigma_np1: Some(right) },
            Flavor::S0 => Boundary { sigma0: 0, sigma_np1: Some(right) },
            Flavor::S00 => Boundary { sigma0: 0, sigma_np1: Some(0) },
            Flavor::SD => Boundary { sigma0: n1, sigma_np1: None },
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown snake flavor `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Boundary {
    pub sigma0: i32,
    pub sigma_np1: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Snake {
    pub body: SignedPerm,
    pub flavor: Flavor,
}

/// How an entry sits between its two neighbours in `|σ|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Valley,
    DoubleAscent,
    DoubleDescent,
    Peak,
}

/// Shape of position `i` (1-based) in a boundary-extended word.
pub fn shape_at(ext: &[u32], i: usize) -> Shape {
    let (l, m, r) = (ext[i - 1], ext[i], ext[i + 1]);
    match (l > m, m > r) {
        (true, false) => Shape::Valley,
        (false, false) => Shape::DoubleAscent,
        (true, true) => Shape::DoubleDescent,
        (false, true) => Shape::Peak,
    }
}

fn is_snake_window(w: &[i32], flavor: Flavor) -> bool {
    let c = flavor.constraints();
    let n = w.len();
    if n == 0 {
        return flavor != Flavor::S00;
    }
    let mut neg = 0;
    for i in 0..n {
        let v = w[i];
        let i1 = i + 1;
        if c.first_positive && i1 == 1 && v < 0 {
            return false;
        }
        if i1 >= 2 && (i1 % 2 == 0) != (w[i - 1] > v) {
            return false;
        }
        if c.first_pair_negative && i1 == 2 && w[0] + v >= 0 {
            return false;
        }
        neg += usize::from(v < 0);
    }
    if c.even_neg && neg % 2 == 1 {
        return false;
    }
    if c.last_against_parity {
        let last = w[n - 1];
        if (if n.is_multiple_of(2) { last } else { -last }) >= 0 {
            return false;
        }
    }
    true
}

impl Snake {
    pub fn new(body: SignedPerm, flavor: Flavor) -> Result<Self> {
        if !is_snake_window(body.window(), flavor) {
            return Err(Error::NotASnake(body.window().to_vec()));
        }
        Ok(Snake { body, flavor })
    }

    pub fn from_window(w: Vec<i32>, flavor: Flavor) -> Result<Self> {
        let body = SignedPerm::new(w.clone()).map_err(|_| Error::NotASnake(w))?;
        Snake::new(body, flavor)
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn window(&self) -> &[i32] {
        self.body.window()
    }

    pub fn boundary(&self) -> Boundary {
        self.flavor.boundary(self.len())
    }

    /// `σ_0 σ_1 … σ_n σ_{n+1}` (no right entry for `SD`).
    pub fn extended(&self) -> Vec<i32> {
        let b = self.boundary();
        let mut out = Vec::with_capacity(self.len() + 2);
        out.push(b.sigma0);
        out.extend_from_slice(self.window());
        out.extend(b.sigma_np1);
        out
    }

    /// `|σ|_0 … |σ|_{n+1}`.
    pub fn abs_extended(&self) -> Vec<u32> {
        self.extended().iter().map(|v| v.unsigned_abs()).collect()
    }

    /// Sign changes along the extended word; a zero entry never changes sign.
    pub fn cs(&self) -> u32 {
        self.extended()
            .windows(2)
            .filter(|p| (p[0] as i64) * (p[1] as i64) < 0)
            .count() as u32
    }

    fn require(&self, stat: &'static str, allowed: &[Flavor]) -> Result<()> {
        if allowed.contains(&self.flavor) {
            Ok(())
        } else {
            Err(Error::FlavorUnsupported(format!("{stat} on {}", self.flavor)))
        }
    }

    /// `cs(σ, j)` for `j = 1..=n`, as a vector indexed by `j - 1`.
    pub fn cs_vector(&self) -> Result<Vec<u8>> {
        self.require("cs_vector", &[Flavor::S0, Flavor::S00])?;
        let ext = self.extended();
        let abs: Vec<u32> = ext.iter().map(|v| v.unsigned_abs()).collect();
        let n = self.len();
        let mut out = vec![0u8; n];
        for i in 1..=n {
            let changes = |a: i32, b: i32| u8::from((a as i64) * (b as i64) < 0);
            out[abs[i] as usize - 1] = match shape_at(&abs, i) {
                Shape::Valley => changes(ext[i - 1], ext[i]) + changes(ext[i], ext[i + 1]),
                Shape::DoubleAscent | Shape::DoubleDescent => 1,
                Shape::Peak => 0,
            };
        }
        Ok(out)
    }

    /// `Σ_j 2-31(|σ|, j)` over the entries `1..=n`.
    pub fn total_2_31(&self) -> Result<u32> {
        self.require("2-31", &[Flavor::S0, Flavor::S00])?;
        let ext = self.abs_extended();
        Ok((1..=self.len() as u32).map(|k| pattern_stats(&ext, k).1).sum())
    }

    pub fn pat_stat(&self, kind: PatKind) -> Result<u32> {
        let want = match kind {
            PatKind::Q => Flavor::S0,
            PatKind::R => Flavor::S00,
        };
        if self.flavor != want {
            return Err(Error::FlavorMismatch {
                stat: kind.name(),
                expected: want.name(),
                found: self.flavor.to_string(),
            });
        }
        let csv = self.cs_vector()?;
        let ext = self.abs_extended();
        let mut total: i64 = 0;
        for i in 1..=self.len() {
            let k = ext[i];
            let (a, b) = pattern_stats(&ext, k);
            let ab = (a + b) as i64;
            match shape_at(&ext, i) {
                Shape::Valley if csv[k as usize - 1] == 2 => {
                    total += match kind {
                        PatKind::Q => 2 * ab - 1,
                        PatKind::R => 2 * (ab - 1),
                    }
                }
                Shape::Valley => {}
                Shape::DoubleAscent | Shape::DoubleDescent => total += ab,
                Shape::Peak => {
                    if kind == PatKind::R {
                        total += 1;
                    }
                }
            }
        }
        u32::try_from(total)
            .map_err(|_| Error::InternalInconsistency(format!("negative {} on {self}", kind.name())))
    }
}

impl fmt::Display for Snake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.body, self.flavor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatKind {
    Q,
    R,
}

impl PatKind {
    pub fn name(self) -> &'static str {
        match self {
            PatKind::Q => "pat_Q",
            PatKind::R => "pat_R",
        }
    }
}

/// Blocks of a boundary-extended permutation restricted to `{0, …, k}`:
/// `(α, β)` with `α` the number of maximal runs of entries `≤ k` and `β`
/// the number of runs strictly right of the run holding `k` (the leftmost
/// one when `k = 0` occurs twice).
pub fn blocks(ext: &[u32], k: u32) -> (u32, u32) {
    let pos = ext.iter().position(|&v| v == k).expect("k occurs in the word");
    let mut alpha = 0;
    let mut beta = 0;
    let mut inside = false;
    for (i, &v) in ext.iter().enumerate() {
        if v <= k {
            if !inside {
                alpha += 1;
                if i > pos {
                    beta += 1;
                }
            }
            inside = true;
        } else {
            inside = false;
        }
    }
    (alpha, beta)
}

/// `(13-2, 2-31)` at the entry with value `k` of a boundary-extended word
/// `π_0 π_1 … π_n π_{n+1}`.
pub fn pattern_stats(ext: &[u32], k: u32) -> (u32, u32) {
    let i = ext.iter().position(|&v| v == k).expect("k occurs in the word");
    let n = ext.len() - 2;
    let left = (0..i.saturating_sub(1))
        .filter(|&j| ext[j] < k && k < ext[j + 1])
        .count() as u32;
    let right = (i + 1..=n)
        .filter(|&j| ext[j] > k && k > ext[j + 1])
        .count() as u32;
    (left, right)
}

/// Rebuild the snake of `flavor` (S0 or S00) with absolute values `abs` and
/// the given cs-vector.
pub fn recover_signs(abs: &[u32], csv: &[u8], flavor: Flavor) -> Result<Snake> {
    let bad = || Error::InconsistentVector {
        perm: abs.to_vec(),
        csv: csv.to_vec(),
    };
    if !matches!(flavor, Flavor::S0 | Flavor::S00) {
        return Err(Error::FlavorUnsupported(format!("recover_signs on {flavor}")));
    }
    let n = abs.len();
    if csv.len() != n || csv.iter().any(|&c| c > 2) {
        return Err(bad());
    }
    let mut seen = vec![false; n + 1];
    for &a in abs {
        if a == 0 || a as usize > n || seen[a as usize] {
            return Err(bad());
        }
        seen[a as usize] = true;
    }
    let right = match flavor {
        Flavor::S0 => n as u32 + 1,
        _ => 0,
    };
    let mut ext = Vec::with_capacity(n + 2);
    ext.push(0);
    ext.extend_from_slice(abs);
    ext.push(right);

    let mut window = Vec::with_capacity(n);
    let mut positive = true;
    for i in 1..=n {
        if i >= 2 {
            let flip = if ext[i - 1] > ext[i] {
                if ext[i] > ext[i + 1] {
                    true
                } else {
                    csv[ext[i] as usize - 1] == 2
                }
            } else if ext[i - 2] < ext[i - 1] {
                true
            } else {
                csv[ext[i - 1] as usize - 1] == 2
            };
            if flip {
                positive = !positive;
            }
        }
        let a = ext[i] as i32;
        window.push(if positive { a } else { -a });
    }
    let snake = Snake::from_window(window, flavor).map_err(|_| bad())?;
    if snake.cs_vector()? != csv {
        return Err(bad());
    }
    Ok(snake)
}

/// Stream the snakes of `flavor` and size `n` in window order.
pub fn enumerate_snakes(n: usize, flavor: Flavor) -> Result<impl Iterator<Item = Snake>> {
    let it = enumerate_with(n, flavor.constraints())?;
    Ok(it.map(move |body| Snake { body, flavor }))
}

/// `Σ weight(σ)` over the snakes of `flavor` and size `n`, folded in parallel.
pub fn snake_sum<F>(n: usize, flavor: Flavor, weight: F) -> Result<Poly>
where
    F: Fn(&Snake) -> Result<Monomial> + Sync,
{
    let acc = par_fold(
        n,
        &flavor.constraints(),
        || (PolyAccumulator::new(), None::<Error>),
        |(acc, err), w| {
            if err.is_some() {
                return;
            }
            let s = Snake {
                body: SignedPerm::from_window_unchecked(w.to_vec()),
                flavor,
            };
            match weight(&s) {
                Ok(m) => acc.add(m, 1),
                Err(e) => *err = Some(e),
            }
        },
        |(a, e), (b, f)| {
            a.merge(b);
            if e.is_none() {
                *e = f;
            }
        },
    )?;
    match acc.1 {
        Some(e) => Err(e),
        None => Ok(acc.0.into_poly()),
    }
}

/// `Σ t^cs` over a flavor.
pub fn cs_distribution(n: usize, flavor: Flavor) -> Result<Poly> {
    snake_sum(n, flavor, |s| Ok(Monomial::ytq(0, s.cs() as i32, 0)))
}
